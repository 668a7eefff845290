//! The cover matroids `M*(X~/X, rho)` on the base edge set: independence
//! oracle, bases, cyclotomic basis weights and weight polynomials.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use crate::algebra::{CycInt, MultiPoly, Ring};
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::group::{Character, GroupElement};

/// How voltages are read: through a character, or in `G` itself (the
/// untwisted matroid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    Character(Character),
    Untwisted,
}

/// Summary of one component of `X \ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Piece {
    dilated: usize,
    genus: i64,
    /// Whether some cycle has a nontrivial image.
    twisted_cycle: bool,
    /// Root-of-unity exponent of the cycle's image, for genus-one pieces
    /// under a character.
    cycle_value: Option<u64>,
}

/// Precomputed view of a spec through a twist.
struct Oracle<'a> {
    spec: &'a CoverSpec,
    moduli: Vec<u64>,
    dilated: Vec<bool>,
    image: Vec<Vec<u64>>,
}

impl<'a> Oracle<'a> {
    fn new(spec: &'a CoverSpec, twist: &Twist) -> Result<Self> {
        let group = spec.group();
        match twist {
            Twist::Character(rho) => {
                if rho.group() != group {
                    return Err(Error::ParentMismatch);
                }
                if rho.is_trivial() {
                    return Err(Error::TrivialCharacter);
                }
            }
            Twist::Untwisted => {
                if group.order() == 1 {
                    return Err(Error::TrivialCover);
                }
            }
        }
        if !cover_is_connected(spec) {
            return Err(Error::Disconnected);
        }
        let apply = |g: &GroupElement| -> Vec<u64> {
            match twist {
                Twist::Character(rho) => vec![rho.value(g)],
                Twist::Untwisted => g.0.clone(),
            }
        };
        let moduli = match twist {
            Twist::Character(rho) => vec![rho.modulus()],
            Twist::Untwisted => group.orders().to_vec(),
        };
        let dilated = spec
            .dilations()
            .iter()
            .map(|d| d.elements().iter().any(|g| apply(g).iter().any(|&x| x != 0)))
            .collect();
        let image = spec.voltages().iter().map(apply).collect();
        Ok(Oracle {
            spec,
            moduli,
            dilated,
            image,
        })
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + m - y) % m)
            .collect()
    }

    /// Components of `X \ F`, where `removed[e]` marks the edges of `F`.
    fn pieces(&self, removed: &[bool]) -> Vec<Piece> {
        let g = self.spec.base();
        let comps = g.components_without(removed);
        let n = g.num_vertices();
        let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
        for (i, e) in g.edges().iter().enumerate() {
            if !removed[i] {
                adj[e.src].push((i, e.tgt, false));
                adj[e.tgt].push((i, e.src, true));
            }
        }
        let zero = vec![0u64; self.moduli.len()];
        comps
            .iter()
            .map(|c| {
                let dilated = c.vertices.iter().filter(|&&v| self.dilated[v]).count();
                // potentials along a breadth-first tree
                let mut pot: Vec<Option<Vec<u64>>> = vec![None; n];
                let mut tree = vec![false; g.num_edges()];
                let root = c.vertices[0];
                pot[root] = Some(zero.clone());
                let mut queue = VecDeque::from([root]);
                while let Some(v) = queue.pop_front() {
                    let pv = pot[v].clone().unwrap();
                    for &(i, w, rev) in &adj[v] {
                        if pot[w].is_none() {
                            let step = if rev {
                                self.sub(&zero, &self.image[i])
                            } else {
                                self.image[i].clone()
                            };
                            pot[w] = Some(self.add(&pv, &step));
                            tree[i] = true;
                            queue.push_back(w);
                        }
                    }
                }
                let mut twisted_cycle = false;
                let mut last_value = None;
                for &i in &c.edges {
                    if tree[i] {
                        continue;
                    }
                    let e = &g.edges()[i];
                    let ps = pot[e.src].as_ref().unwrap();
                    let pt = pot[e.tgt].as_ref().unwrap();
                    let value = self.sub(&self.add(ps, &self.image[i]), pt);
                    if value.iter().any(|&x| x != 0) {
                        twisted_cycle = true;
                    }
                    last_value = Some(value);
                }
                let genus = c.genus();
                let cycle_value = if genus == 1 && self.moduli.len() == 1 {
                    last_value.map(|v| v[0])
                } else {
                    None
                };
                Piece {
                    dilated,
                    genus,
                    twisted_cycle,
                    cycle_value,
                }
            })
            .collect()
    }

    fn independent(&self, removed: &[bool]) -> bool {
        self.pieces(removed)
            .iter()
            .all(|p| p.dilated > 0 || p.twisted_cycle)
    }

    fn rank_formula(&self) -> usize {
        let g = self.spec.base();
        let genus = g.num_edges() as i64 - g.num_vertices() as i64 + 1;
        let dilated = self.dilated.iter().filter(|&&d| d).count() as i64;
        (genus - 1 + dilated) as usize
    }
}

/// True iff the total graph of the cover is connected, decided on the base:
/// the dilation groups and the Frobenius elements of a cycle basis must
/// generate `G`.
pub fn cover_is_connected(spec: &CoverSpec) -> bool {
    let base = spec.base();
    if !base.is_connected() {
        return false;
    }
    let g = spec.group();
    let n = base.num_vertices();
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (i, e) in base.edges().iter().enumerate() {
        adj[e.src].push((i, e.tgt, false));
        adj[e.tgt].push((i, e.src, true));
    }
    let mut pot: Vec<Option<GroupElement>> = vec![None; n];
    let mut tree = vec![false; base.num_edges()];
    pot[0] = Some(g.zero());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let pv = pot[v].clone().unwrap();
        for &(i, w, rev) in &adj[v] {
            if pot[w].is_none() {
                let eta = spec.voltage(i);
                let step = if rev { g.neg(eta) } else { eta.clone() };
                pot[w] = Some(g.add(&pv, &step));
                tree[i] = true;
                queue.push_back(w);
            }
        }
    }
    let mut gens: Vec<GroupElement> = spec.dilations().iter().flat_map(|d| d.generators()).collect();
    for (i, e) in base.edges().iter().enumerate() {
        if !tree[i] {
            let ps = pot[e.src].as_ref().unwrap();
            let pt = pot[e.tgt].as_ref().unwrap();
            gens.push(g.sub(&g.add(ps, spec.voltage(i)), pt));
        }
    }
    g.subgroup(&gens).map(|h| h.order() == g.order()).unwrap_or(false)
}

fn mask_of(f: &[usize], m: usize) -> Result<Vec<bool>> {
    let mut removed = vec![false; m];
    for &e in f {
        if e >= m {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        removed[e] = true;
    }
    Ok(removed)
}

/// Does every component of `X \ F` carry a twisted-dilated vertex or a
/// cycle with nontrivial twisted Frobenius element?
pub fn is_independent(spec: &CoverSpec, twist: &Twist, f: &[usize]) -> Result<bool> {
    let oracle = Oracle::new(spec, twist)?;
    Ok(oracle.independent(&mask_of(f, spec.base().num_edges())?))
}

/// Bases, rank and (under a character) per-basis weights.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedMatroid {
    pub rank: usize,
    /// Sorted edge-index lists, in lexicographic order.
    pub bases: Vec<Vec<usize>>,
    /// `w_rho(B)` for each basis; absent for the untwisted matroid.
    pub weights: Option<Vec<CycInt>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Enumerates the bases: the rank-sized independent sets.
pub fn bases(spec: &CoverSpec, twist: &Twist) -> Result<TwistedMatroid> {
    let oracle = Oracle::new(spec, twist)?;
    let m = spec.base().num_edges();
    let rank = oracle.rank_formula();
    let found: Vec<Vec<usize>> = combinations(m, rank)
        .into_par_iter()
        .filter(|f| oracle.independent(&mask_of(f, m).unwrap()))
        .collect();
    let weights = match twist {
        Twist::Character(rho) => Some(
            found
                .iter()
                .map(|b| weight_from_pieces(&oracle.pieces(&mask_of(b, m).unwrap()), rho.modulus()))
                .collect::<Result<Vec<_>>>()?,
        ),
        Twist::Untwisted => None,
    };
    Ok(TwistedMatroid {
        rank,
        bases: found,
        weights,
    })
}

fn weight_from_pieces(pieces: &[Piece], m: u64) -> Result<CycInt> {
    let mut w = CycInt::one();
    for p in pieces {
        if p.genus == 1 && p.dilated == 0 && p.twisted_cycle {
            let k = p.cycle_value.expect("genus-one piece has a cycle value");
            w = w.times(&CycInt::weight_of_root(m, k as i64));
        } else if p.genus == 0 && p.dilated == 1 {
            continue;
        } else {
            return Err(Error::NotABasis);
        }
    }
    Ok(w)
}

/// `w_rho(F)`: the product over components of `X \ F` of `|1 - rho(cycle)|^2`
/// for genus-one components and 1 for trees with one dilated vertex.
pub fn basis_weight(spec: &CoverSpec, rho: &Character, f: &[usize]) -> Result<CycInt> {
    let oracle = Oracle::new(spec, &Twist::Character(rho.clone()))?;
    let removed = mask_of(f, spec.base().num_edges())?;
    weight_from_pieces(&oracle.pieces(&removed), rho.modulus())
}

/// The weight polynomial and its value at the all-ones point.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightReport {
    pub rank: usize,
    pub bases: Vec<Vec<usize>>,
    pub weights: Vec<CycInt>,
    pub polynomial: MultiPoly<CycInt>,
    pub scalar: CycInt,
}

/// `P_rho = sum over bases B of w_rho(B) prod_{e in B} x_e`.
pub fn weight_polynomial(spec: &CoverSpec, rho: &Character) -> Result<WeightReport> {
    let tm = bases(spec, &Twist::Character(rho.clone()))?;
    let weights = tm.weights.expect("character twist has weights");
    let ids = spec.base().edge_id_list();
    let mut polynomial = MultiPoly::zero_in(&ids);
    for (b, w) in tm.bases.iter().zip(&weights) {
        let mut exps = vec![0u32; ids.len()];
        for &e in b {
            exps[e] = 1;
        }
        polynomial.add_term(exps, w.clone());
    }
    let scalar = weights.iter().fold(CycInt::zero(), |a, w| a.plus(w));
    Ok(WeightReport {
        rank: tm.rank,
        bases: tm.bases,
        weights,
        polynomial,
        scalar,
    })
}

/// Largest independent set size, by checking every subset.
pub fn brute_force_rank(spec: &CoverSpec, twist: &Twist) -> Result<usize> {
    let oracle = Oracle::new(spec, twist)?;
    let m = spec.base().num_edges();
    assert!(m < 26, "exhaustive rank check is limited to small edge sets");
    let best = (0u32..(1 << m))
        .into_par_iter()
        .filter_map(|mask| {
            let removed: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            oracle.independent(&removed).then_some(mask.count_ones() as usize)
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// Checks the basis exchange axiom exhaustively.
pub fn satisfies_exchange(bases: &[Vec<usize>]) -> bool {
    let set: HashSet<Vec<usize>> = bases.iter().cloned().collect();
    bases.par_iter().all(|b1| {
        bases.iter().all(|b2| {
            b1.iter().filter(|e| !b2.contains(e)).all(|&e| {
                b2.iter().filter(|f| !b1.contains(f)).any(|&f| {
                    let mut swapped: Vec<usize> = b1.iter().copied().filter(|&x| x != e).collect();
                    swapped.push(f);
                    swapped.sort();
                    set.contains(&swapped)
                })
            })
        })
    })
}
