//! Laplacians, critical groups, Jacobian polynomials and the pushforward
//! on Jacobians.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::modular::{det_mod, inv_mod, mul_mod, pow_mod, reconstruct_lower, LowerSet};
use crate::algebra::{smith_normal_form, Matrix, MultiPoly};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::graph::{Graph, UnionFind};

/// `Q - A`. Loops contribute nothing.
pub fn laplacian(g: &Graph) -> Matrix<BigInt> {
    let (q, a) = g.valency_adjacency();
    q.minus(&a)
}

/// The Laplacian with the row and column of vertex `root` removed.
pub fn reduced_laplacian(g: &Graph, root: usize) -> Matrix<BigInt> {
    laplacian(g).minor(root, root)
}

/// Number of spanning trees, as a cofactor of the Laplacian (0 if disconnected).
pub fn tree_count(g: &Graph) -> BigInt {
    if g.num_vertices() == 0 {
        return BigInt::zero();
    }
    reduced_laplacian(g, 0).det()
}

/// Invariant factors of the critical group, with their product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianGroup {
    pub invariant_factors: Vec<BigInt>,
    pub order: BigInt,
}

/// Critical group from the Smith form of the full Laplacian.
pub fn jacobian_group(g: &Graph) -> Result<JacobianGroup> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let snf = smith_normal_form(&laplacian(g), false);
    let invariant_factors = snf.invariant_factors();
    let order = invariant_factors.iter().fold(BigInt::one(), |a, d| a * d);
    Ok(JacobianGroup {
        invariant_factors,
        order,
    })
}

/// `J_X = sum over spanning trees T of prod_{e not in T} x_e`, by enumeration.
pub fn jacobian_polynomial(g: &Graph) -> Result<MultiPoly<BigInt>> {
    let labels: Vec<usize> = (0..g.num_edges()).collect();
    labelled_polynomial_by_enumeration(g, &labels, &g.edge_id_list())
}

/// Tree enumeration with each edge's variable replaced by its label's name.
pub fn labelled_polynomial_by_enumeration(
    g: &Graph,
    labels: &[usize],
    names: &[String],
) -> Result<MultiPoly<BigInt>> {
    let trees = g.spanning_trees()?;
    let mut counts = vec![0u32; names.len()];
    for &l in labels {
        counts[l] += 1;
    }
    let mut out = MultiPoly::zero_in(names);
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..names.len()).collect();
        idx.sort_by(|&a, &b| names[a].cmp(&names[b]));
        idx
    };
    for t in trees {
        let mut exps = counts.clone();
        for &e in &t {
            exps[labels[e]] -= 1;
        }
        out.add_term(order.iter().map(|&i| exps[i]).collect(), BigInt::one());
    }
    Ok(out)
}

/// The Jacobian polynomial of `g` with each edge variable replaced by the
/// variable of its label, computed from the weighted matrix-tree theorem.
///
/// With `y_l` the weight of every edge labelled `l`, the reduced weighted
/// Laplacian has determinant `K(y) = sum_T prod_{e in T} y_{l(e)}`, and the
/// labelled Jacobian polynomial is `x^c K(1/x)` where `c_l` counts the edges
/// labelled `l`. `K` is recovered exactly by evaluation and interpolation
/// modulo word-sized primes, with the tree count as coefficient bound.
///
/// Every spanning tree uses between `lo_l` and `rank_l` edges of label `l`,
/// so after dividing out `y^lo` the support is a box intersected with a
/// simplex. The same holds for the complementary form `x^rank K(1/x)`; the
/// smaller of the two point sets is interpolated. `K` is homogeneous, so the
/// label with the widest range is set to 1 and recovered from the degree.
pub fn labelled_polynomial(g: &Graph, labels: &[usize], names: &[String]) -> Result<MultiPoly<BigInt>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let k = names.len();
    let n = g.num_vertices();
    let mut counts = vec![0u32; k];
    for &l in labels {
        counts[l] += 1;
    }
    let rank_of = |keep: &dyn Fn(usize) -> bool| {
        let mut uf = UnionFind::new(n);
        g.edges()
            .iter()
            .enumerate()
            .filter(|&(e, edge)| keep(labels[e]) && uf.union(edge.src, edge.tgt))
            .count()
    };
    let rank: Vec<usize> = (0..k).map(|l| rank_of(&|m| m == l)).collect();
    let lo: Vec<usize> = (0..k).map(|l| n - 1 - rank_of(&|m| m != l)).collect();
    let width: Vec<usize> = (0..k).map(|l| rank[l] - lo[l]).collect();
    let tree_total = n - 1 - lo.iter().sum::<usize>();
    let complement_total = width.iter().sum::<usize>() - tree_total;

    let dropped = (0..k).max_by_key(|&l| (width[l], std::cmp::Reverse(l)));
    let free: Vec<usize> = (0..k).filter(|&l| Some(l) != dropped).collect();
    let caps: Vec<usize> = free.iter().map(|&l| width[l]).collect();
    let complement = LowerSet::count(&caps, complement_total) < LowerSet::count(&caps, tree_total);
    let set = LowerSet::new(&caps, if complement { complement_total } else { tree_total });

    let bound = tree_count(g);
    let edges: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_loop())
        .map(|(i, e)| (e.src, e.tgt, labels[i]))
        .collect();
    let slot: Vec<Option<usize>> = (0..k).map(|l| free.iter().position(|&f| f == l)).collect();
    let coeffs = reconstruct_lower(&set, &bound, |point, p| {
        // complementary form evaluates K at the reciprocal point
        let weight: Vec<u64> = (0..k)
            .map(|l| {
                slot[l].map_or(1, |i| {
                    let x = point[i] % p;
                    if complement {
                        inv_mod(x, p)
                    } else {
                        x
                    }
                })
            })
            .collect();
        let m = n - 1;
        let mut a = vec![0u64; m * m];
        // vertex 0 is deleted; vertex v > 0 sits at row v - 1
        for &(s, t, l) in &edges {
            let y = weight[l];
            if s > 0 {
                a[(s - 1) * m + (s - 1)] = (a[(s - 1) * m + (s - 1)] + y) % p;
            }
            if t > 0 {
                a[(t - 1) * m + (t - 1)] = (a[(t - 1) * m + (t - 1)] + y) % p;
            }
            if s > 0 && t > 0 {
                a[(s - 1) * m + (t - 1)] = (a[(s - 1) * m + (t - 1)] + p - y) % p;
                a[(t - 1) * m + (s - 1)] = (a[(t - 1) * m + (s - 1)] + p - y) % p;
            }
        }
        let shift = free.iter().fold(1u64, |acc, &l| {
            let x = point[slot[l].unwrap()] % p;
            if complement {
                mul_mod(acc, pow_mod(x, rank[l] as u64, p), p)
            } else {
                mul_mod(acc, inv_mod(pow_mod(x, lo[l] as u64, p), p), p)
            }
        });
        mul_mod(det_mod(a, m, p), shift, p)
    });
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by(|&a, &b| names[a].cmp(&names[b]));
        idx
    };
    let total = if complement { complement_total } else { tree_total } as u32;
    let mut out = MultiPoly::zero_in(names);
    for (key, c) in coeffs {
        let mut shifted = vec![0u32; k];
        let mut used = 0u32;
        for (i, &l) in free.iter().enumerate() {
            shifted[l] = key[i];
            used += key[i];
        }
        if let Some(d) = dropped {
            shifted[d] = total - used;
        }
        let exps: Vec<u32> = order
            .iter()
            .map(|&l| {
                if complement {
                    shifted[l] + counts[l] - rank[l] as u32
                } else {
                    counts[l] - (shifted[l] + lo[l] as u32)
                }
            })
            .collect();
        out.add_term(exps, c);
    }
    Ok(out)
}

/// The cover's Jacobian polynomial with `x_e~` specialized to `x_{p(e~)}`.
pub fn specialized_cover_polynomial(cover: &Cover) -> Result<MultiPoly<BigInt>> {
    labelled_polynomial(cover.total(), cover.edge_projection(), &cover.base().edge_id_list())
}

/// Replaces edge `e` by a path of `n_e` edges. New vertices are named
/// `"<e>~<i>"`, new edges `"<e>/<i>"`; edges with `n_e = 1` are kept.
pub fn subdivide(g: &Graph, lengths: &HashMap<String, i64>) -> Result<Graph> {
    for (e, &n) in lengths {
        g.edge_index(e)?;
        if n < 1 {
            return Err(Error::NonPositiveLength(e.clone()));
        }
    }
    let mut vertices: Vec<String> = g.vertices().to_vec();
    let mut edges = Vec::new();
    for e in g.edges() {
        let n = lengths.get(&e.id).copied().unwrap_or(1);
        let s = g.vertices()[e.src].clone();
        let t = g.vertices()[e.tgt].clone();
        if n == 1 {
            edges.push((e.id.clone(), s, t));
            continue;
        }
        let mut chain = vec![s];
        for i in 1..n {
            let v = format!("{}~{}", e.id, i);
            vertices.push(v.clone());
            chain.push(v);
        }
        chain.push(t);
        for i in 0..n as usize {
            edges.push((format!("{}/{}", e.id, i + 1), chain[i].clone(), chain[i + 1].clone()));
        }
    }
    Graph::new(vertices, edges)
}

/// Outcome of computing the induced map `Jac(X~) -> Jac(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardReport {
    pub surjective: bool,
    pub kernel_order: BigInt,
    pub image_order: BigInt,
    /// The divisor pushforward maps principal divisors to principal divisors.
    pub well_defined: bool,
}

/// Computes `p_*` on Jacobians through Smith presentations of both reduced
/// Laplacians, then measures its image inside `Jac(X)`.
pub fn pushforward_jacobian(cover: &Cover) -> Result<PushforwardReport> {
    let base = cover.base();
    let total = cover.total();
    if !base.is_connected() || !total.is_connected() {
        return Err(Error::Disconnected);
    }
    let q = 0usize;
    let q_tilde = cover.vertex_fiber(q)[0];
    let lb = reduced_laplacian(base, q);
    let lt = reduced_laplacian(total, q_tilde);
    let sb = smith_normal_form(&lb, true);
    let st = smith_normal_form(&lt, true);
    // reduced coordinates: vertex v sits at v or v - 1 after deleting the root
    let base_pos = |v: usize| if v < q { Some(v) } else if v == q { None } else { Some(v - 1) };
    let total_pos = |v: usize| {
        use std::cmp::Ordering::*;
        match v.cmp(&q_tilde) {
            Less => Some(v),
            Equal => None,
            Greater => Some(v - 1),
        }
    };
    let rb = lb.rows();
    let rt = lt.rows();
    let mut p = Matrix::<BigInt>::zeros(rb, rt);
    for v in 0..total.num_vertices() {
        if let (Some(j), Some(i)) = (total_pos(v), base_pos(cover.vertex_projection()[v])) {
            p[(i, j)] = BigInt::one();
        }
    }
    let u = sb.left.as_ref().unwrap();
    let ut_inv = st.left_inverse.as_ref().unwrap();
    let m = u.mul(&p).mul(ut_inv);
    let rows: Vec<usize> = (0..rb).filter(|&i| !sb.diagonal[i].is_one()).collect();
    let d: Vec<BigInt> = rows.iter().map(|&i| sb.diagonal[i].clone()).collect();
    // a relation of Jac(X~) must land in the relations of Jac(X)
    let well_defined = rows.iter().zip(&d).all(|(&i, di)| {
        (0..rt).all(|j| (&m[(i, j)] * &st.diagonal[j]).is_multiple_of(di))
    });
    let r = rows.len();
    let gens = Matrix::from_fn(r, rt + r, |a, b| {
        if b < rt {
            m[(rows[a], b)].clone()
        } else if b - rt == a {
            d[a].clone()
        } else {
            BigInt::zero()
        }
    });
    let index = smith_normal_form(&gens, false).nonzero_product();
    let jac_base: BigInt = d.iter().product();
    let jac_total: BigInt = st.diagonal.iter().product();
    let image_order = &jac_base / &index;
    let kernel_order = &jac_total / &image_order;
    Ok(PushforwardReport {
        surjective: index.is_one(),
        kernel_order,
        image_order,
        well_defined,
    })
}

/// Evaluates an integer polynomial at integer edge lengths; missing
/// variables default to 1.
pub fn eval_at_lengths(poly: &MultiPoly<BigInt>, lengths: &HashMap<String, i64>) -> BigInt {
    let point: HashMap<String, BigInt> = poly
        .vars()
        .iter()
        .map(|v| (v.clone(), BigInt::from(lengths.get(v).copied().unwrap_or(1))))
        .collect();
    poly.eval(&point).expect("every variable has a value")
}

/// Coefficient data of a polynomial keyed by variable name, for reports.
pub fn terms_by_name(poly: &MultiPoly<BigInt>) -> Vec<(BigInt, BTreeMap<String, u32>)> {
    poly.terms()
        .map(|(k, c)| {
            let exps = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (poly.vars()[i].clone(), e))
                .collect();
            (c.clone(), exps)
        })
        .collect()
}
