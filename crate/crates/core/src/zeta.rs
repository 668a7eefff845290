//! Zeta and L-function reciprocals from the two-term (edge matrix) and
//! three-term (Bass) determinant formulas, twisted Laplacians, expansions
//! at `s = 1`, and an explicit census of closed reduced paths.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::algebra::modular::{det_mod, pow_mod, reconstruct};
use crate::algebra::{CycInt, Matrix, MultiPoly, Ring, UniPoly};
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::Character;
use crate::jacobian::labelled_polynomial;
use crate::matroid::{cover_is_connected, weight_polynomial};

/// Largest path length the census will enumerate.
pub const MAX_CENSUS_LENGTH: usize = 12;

/// Oriented edge `2i` runs along edge `i`, `2i + 1` against it.
fn oriented_ends(g: &Graph, a: usize) -> (usize, usize) {
    let e = &g.edges()[a / 2];
    if a.is_multiple_of(2) {
        (e.src, e.tgt)
    } else {
        (e.tgt, e.src)
    }
}

/// Pairs `(a, b)` with `t(a) = s(b)` and `b` not the reverse of `a`.
fn successors(g: &Graph) -> Vec<Vec<usize>> {
    let k = 2 * g.num_edges();
    let mut starting_at: Vec<Vec<usize>> = vec![Vec::new(); g.num_vertices()];
    for b in 0..k {
        starting_at[oriented_ends(g, b).0].push(b);
    }
    (0..k)
        .map(|a| {
            starting_at[oriented_ends(g, a).1]
                .iter()
                .copied()
                .filter(|&b| b != a ^ 1)
                .collect()
        })
        .collect()
}

/// Per-edge lengths from an id-keyed table; absent edges get length 1.
pub fn length_vector(g: &Graph, lengths: &HashMap<String, i64>) -> Result<Vec<u32>> {
    for (id, &x) in lengths {
        g.edge_index(id)?;
        if x <= 0 {
            return Err(Error::NonPositiveLength(id.clone()));
        }
    }
    g.edges()
        .iter()
        .map(|e| {
            let x = lengths.get(&e.id).copied().unwrap_or(1);
            u32::try_from(x).map_err(|_| Error::NonPositiveLength(e.id.clone()))
        })
        .collect()
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn genus_of(g: &Graph) -> i64 {
    g.num_edges() as i64 - g.num_vertices() as i64 + 1
}

/// `det(I - W)` with `w_ef = s^{x_e}`, recovered from modular evaluations.
pub fn metric_zeta_reciprocal(g: &Graph, lengths: &HashMap<String, i64>) -> Result<UniPoly<BigInt>> {
    require_connected(g)?;
    let x = length_vector(g, lengths)?;
    Ok(two_term_integer(g, &x))
}

fn two_term_integer(g: &Graph, x: &[u32]) -> UniPoly<BigInt> {
    let succ = successors(g);
    let k = succ.len();
    let degree: usize = (0..k).filter(|&a| !succ[a].is_empty()).map(|a| x[a / 2] as usize).sum();
    // Hadamard: on |s| = 1 every coefficient is bounded by the product of
    // the row norms, with each entry bounded by its coefficient mass.
    let log2_bound: f64 = (0..k)
        .map(|a| {
            let mut sq = (succ[a].len() - usize::from(succ[a].contains(&a))) as f64;
            sq += if succ[a].contains(&a) { 4.0 } else { 1.0 };
            0.5 * sq.log2()
        })
        .sum();
    let bound = BigInt::from(1) << (log2_bound.ceil() as usize + 1);
    let coeffs = reconstruct(&[degree], &bound, |point, p| {
        let s = point[0] % p;
        let mut m = vec![0u64; k * k];
        for a in 0..k {
            m[a * k + a] = 1;
            let w = pow_mod(s, x[a / 2] as u64, p);
            for &b in &succ[a] {
                m[a * k + b] = (m[a * k + b] + p - w) % p;
            }
        }
        det_mod(m, k, p)
    });
    let mut dense = vec![BigInt::ZERO; degree + 1];
    for (exps, c) in coeffs {
        dense[exps[0] as usize] = c;
    }
    UniPoly::new(dense)
}

/// The two-term matrix `I - W` over `UniPoly<R>`, with `weight(a)`
/// multiplying every entry in the row of oriented edge `a`.
fn two_term_matrix<R: Ring>(g: &Graph, x: &[u32], weight: impl Fn(usize) -> R) -> Matrix<UniPoly<R>> {
    let succ = successors(g);
    let k = succ.len();
    let mut m: Matrix<UniPoly<R>> = Matrix::identity(k);
    for a in 0..k {
        let w = UniPoly::monomial(weight(a), x[a / 2] as usize);
        for &b in &succ[a] {
            m[(a, b)] = m[(a, b)].minus(&w);
        }
    }
    m
}

/// `det(I - W)` at the given lengths by fraction-free elimination; an
/// independent path to [`metric_zeta_reciprocal`] for small graphs.
pub fn metric_zeta_reciprocal_exact(g: &Graph, lengths: &HashMap<String, i64>) -> Result<UniPoly<BigInt>> {
    require_connected(g)?;
    let x = length_vector(g, lengths)?;
    Ok(two_term_matrix(g, &x, |_| BigInt::from(1)).det())
}

fn one_minus_s2<R: Ring>() -> UniPoly<R> {
    UniPoly::new(vec![R::one(), R::zero(), R::one().negate()])
}

/// `(1 - s^2)^{g-1} det(I - sA + s^2 (Q - I))`.
fn three_term<R: Ring>(q: &[i64], a: &Matrix<R>, genus: i64) -> UniPoly<R> {
    let n = q.len();
    let m = Matrix::from_fn(n, n, |i, j| {
        let diag = if i == j { R::one() } else { R::zero() };
        let sq = if i == j { R::from_i64(q[i] - 1) } else { R::zero() };
        UniPoly::new(vec![diag, a[(i, j)].negate(), sq])
    });
    let d = m.det();
    let factor = one_minus_s2::<R>();
    if genus >= 1 {
        d.times(&factor.pow((genus - 1) as u64))
    } else {
        let mut out = d;
        for _ in genus..1 {
            out = out.div_exact(&factor).expect("three-term determinant divisible by 1 - s^2");
        }
        out
    }
}

fn valencies(g: &Graph) -> Vec<i64> {
    (0..g.num_vertices()).map(|v| g.valency(v) as i64).collect()
}

/// Ihara zeta reciprocal by the three-term formula.
pub fn ihara_zeta_reciprocal(g: &Graph) -> Result<UniPoly<BigInt>> {
    require_connected(g)?;
    let (_, a) = g.valency_adjacency();
    Ok(three_term(&valencies(g), &a, genus_of(g)))
}

fn require_free(spec: &CoverSpec) -> Result<()> {
    if spec.is_free() {
        Ok(())
    } else {
        Err(Error::DilatedSpec)
    }
}

fn check_character(spec: &CoverSpec, rho: &Character) -> Result<()> {
    if rho.group() != spec.group() {
        Err(Error::ParentMismatch)
    } else {
        Ok(())
    }
}

/// `rho(eta(a))` for every oriented edge `a`.
fn oriented_values(spec: &CoverSpec, rho: &Character) -> Vec<CycInt> {
    let m = rho.modulus();
    (0..2 * spec.base().num_edges())
        .map(|a| {
            let k = rho.value(spec.voltage(a / 2)) as i64;
            CycInt::root_of_unity(m, if a % 2 == 0 { k } else { -k })
        })
        .collect()
}

/// `det(I - W_rho)` with `w_ef = s^{x_e}`, over the cyclotomic integers.
pub fn metric_l_reciprocal(
    spec: &CoverSpec,
    rho: &Character,
    lengths: &HashMap<String, i64>,
) -> Result<UniPoly<CycInt>> {
    require_free(spec)?;
    check_character(spec, rho)?;
    let g = spec.base();
    require_connected(g)?;
    let x = length_vector(g, lengths)?;
    let values = oriented_values(spec, rho);
    Ok(two_term_matrix(g, &x, |a| values[a].clone()).det())
}

/// The twisted adjacency matrix; each edge contributes once in each
/// direction, so loops add `rho + conj(rho)` on the diagonal.
fn twisted_adjacency(spec: &CoverSpec, rho: &Character) -> Matrix<CycInt> {
    let g = spec.base();
    let n = g.num_vertices();
    let mut a: Matrix<CycInt> = Matrix::zeros(n, n);
    let values = oriented_values(spec, rho);
    for (i, e) in g.edges().iter().enumerate() {
        a[(e.src, e.tgt)] = a[(e.src, e.tgt)].plus(&values[2 * i]);
        a[(e.tgt, e.src)] = a[(e.tgt, e.src)].plus(&values[2 * i + 1]);
    }
    a
}

/// Artin-Ihara L reciprocal by the three-term formula.
pub fn artin_l_reciprocal_threeterm(spec: &CoverSpec, rho: &Character) -> Result<UniPoly<CycInt>> {
    require_free(spec)?;
    check_character(spec, rho)?;
    let g = spec.base();
    require_connected(g)?;
    Ok(three_term(&valencies(g), &twisted_adjacency(spec, rho), genus_of(g)))
}

/// `L_rho = Q - A_rho`.
pub fn twisted_laplacian(spec: &CoverSpec, rho: &Character) -> Result<Matrix<CycInt>> {
    require_free(spec)?;
    check_character(spec, rho)?;
    let a = twisted_adjacency(spec, rho);
    let q = valencies(spec.base());
    let n = q.len();
    Ok(Matrix::from_fn(n, n, |i, j| {
        let d = if i == j { CycInt::integer(q[i]) } else { CycInt::zero() };
        d.minus(&a[(i, j)])
    }))
}

/// `det(Q - A_rho)` for a nontrivial character of a connected free cover.
pub fn twisted_laplacian_det(spec: &CoverSpec, rho: &Character) -> Result<CycInt> {
    let l = twisted_laplacian(spec, rho)?;
    if rho.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    if !cover_is_connected(spec) {
        return Err(Error::Disconnected);
    }
    Ok(l.det())
}

/// Order of vanishing at `s = 1` and the leading coefficient there,
/// alongside the value the class-number formulas predict.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorLeading<R> {
    pub order: usize,
    pub coefficient: R,
    pub predicted_order: usize,
    pub predicted: R,
}

impl<R: PartialEq> TaylorLeading<R> {
    pub fn holds(&self) -> bool {
        self.order == self.predicted_order && self.coefficient == self.predicted
    }
}

fn leading_at_one<R: Ring>(p: &UniPoly<R>) -> (usize, R) {
    let degree = p.degree().unwrap_or(0);
    let shifted = p.taylor_shift(degree);
    shifted
        .into_iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .unwrap_or((0, R::zero()))
}

fn signed_power_of_two(exp: i64, negative: bool) -> BigInt {
    let v = BigInt::from(1) << exp as usize;
    if negative {
        -v
    } else {
        v
    }
}

/// Leading `(s - 1)` data of the metric zeta reciprocal; the predicted
/// coefficient is `2^g (-1)^{g+1} (g - 1) J_X(lengths)`.
pub fn zeta_taylor(g: &Graph, lengths: &HashMap<String, i64>) -> Result<TaylorLeading<BigInt>> {
    require_connected(g)?;
    let genus = genus_of(g);
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let poly = metric_zeta_reciprocal(g, lengths)?;
    let (order, coefficient) = leading_at_one(&poly);
    let j = jacobian_value(g, lengths)?;
    let predicted = signed_power_of_two(genus, genus % 2 == 0) * BigInt::from(genus - 1) * j;
    Ok(TaylorLeading {
        order,
        coefficient,
        predicted_order: genus as usize,
        predicted,
    })
}

fn jacobian_value(g: &Graph, lengths: &HashMap<String, i64>) -> Result<BigInt> {
    let ids = g.edge_id_list();
    let labels: Vec<usize> = (0..ids.len()).collect();
    let j = labelled_polynomial(g, &labels, &ids)?;
    let x = length_vector(g, lengths)?;
    let point: HashMap<String, BigInt> = ids.iter().cloned().zip(x.iter().map(|&v| BigInt::from(v))).collect();
    j.eval(&point).map_err(Error::Spec)
}

/// Leading `(s - 1)` data of the metric L reciprocal at a nontrivial
/// character; predicted `2^{g-1} (-1)^{g-1} P_rho(lengths)` at order `g - 1`.
pub fn l_taylor(spec: &CoverSpec, rho: &Character, lengths: &HashMap<String, i64>) -> Result<TaylorLeading<CycInt>> {
    if rho.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let poly = metric_l_reciprocal(spec, rho, lengths)?;
    let (order, coefficient) = leading_at_one(&poly);
    let genus = genus_of(spec.base());
    let report = weight_polynomial(spec, rho)?;
    let p = eval_weight(&report.polynomial, &length_vector(spec.base(), lengths)?, spec.base())?;
    let sign = signed_power_of_two(genus - 1, (genus - 1) % 2 == 1);
    let predicted = CycInt::integer(sign).times(&p);
    Ok(TaylorLeading {
        order,
        coefficient,
        predicted_order: (genus - 1) as usize,
        predicted,
    })
}

fn eval_weight(p: &MultiPoly<CycInt>, x: &[u32], g: &Graph) -> Result<CycInt> {
    let point: HashMap<String, CycInt> = g
        .edges()
        .iter()
        .zip(x)
        .map(|(e, &v)| (e.id.clone(), CycInt::integer(v)))
        .collect();
    p.eval(&point).map_err(Error::Spec)
}

/// Counts of closed reduced tailless paths by length, `N_1 ..= N_max`,
/// found by walking every such path.
pub fn closed_path_census(g: &Graph, max_length: usize) -> Result<Vec<u64>> {
    if max_length > MAX_CENSUS_LENGTH {
        return Err(Error::BoundExceeded(max_length));
    }
    let succ = successors(g);
    let k = succ.len();
    let per_start: Vec<Vec<u64>> = (0..k)
        .into_par_iter()
        .map(|start| {
            let mut counts = vec![0u64; max_length];
            let mut stack = vec![(start, 1usize)];
            while let Some((a, len)) = stack.pop() {
                if succ[a].contains(&start) {
                    counts[len - 1] += 1;
                }
                if len < max_length {
                    stack.extend(succ[a].iter().map(|&b| (b, len + 1)));
                }
            }
            counts
        })
        .collect();
    Ok((0..max_length).map(|m| per_start.iter().map(|c| c[m]).sum()).collect())
}

/// `tr(W^m)` for `m = 1 ..= max` with `W` the unit-length edge matrix.
pub fn edge_matrix_traces(g: &Graph, max_length: usize) -> Vec<BigInt> {
    let succ = successors(g);
    let k = succ.len();
    let w = Matrix::from_fn(k, k, |a, b| if succ[a].contains(&b) { BigInt::from(1) } else { BigInt::ZERO });
    let mut power = Matrix::identity(k);
    (0..max_length)
        .map(|_| {
            power = power.mul(&w);
            (0..k).fold(BigInt::ZERO, |acc, i| acc + &power[(i, i)])
        })
        .collect()
}

/// Checks `-s p'(s) = p(s) * sum N_m s^m` through `s^max`, the logarithmic
/// derivative form of `log det(I - W)^{-1} = sum N_m s^m / m`.
pub fn census_matches_log_series(p: &UniPoly<BigInt>, census: &[u64]) -> bool {
    let max = census.len();
    let lhs: Vec<BigInt> = (0..=max).map(|k| -(p.coeff(k) * BigInt::from(k))).collect();
    (0..=max).all(|k| {
        let rhs = (1..=k).fold(BigInt::ZERO, |acc, m| acc + BigInt::from(census[m - 1]) * p.coeff(k - m));
        rhs == lhs[k]
    })
}

/// Largest coefficient magnitude, handy for reporting.
pub fn max_abs_coefficient(p: &UniPoly<BigInt>) -> BigInt {
    p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::tests::{dumbbell_spec, icosahedron_spec};
    use crate::cover::Cover;
    use crate::group::{AbelianGroup, GroupElement};
    use crate::matroid::weight_polynomial;
    use std::collections::BTreeMap;

    fn poly(c: &[i64]) -> UniPoly<BigInt> {
        UniPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn lens(pairs: &[(&str, i64)]) -> HashMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn triangle() -> Graph {
        Graph::from_strs(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")]).unwrap()
    }

    fn theta() -> Graph {
        Graph::from_strs(&["u", "v"], &[("x", "u", "v"), ("y", "u", "v"), ("z", "u", "v")]).unwrap()
    }

    fn single_loop() -> Graph {
        Graph::from_strs(&["v"], &[("e", "v", "v")]).unwrap()
    }

    fn loop_cover(n: u64, voltage: u64) -> CoverSpec {
        let mut volt = BTreeMap::new();
        volt.insert("e".to_string(), GroupElement(vec![voltage]));
        CoverSpec::new(single_loop(), AbelianGroup::cyclic(n), &BTreeMap::new(), &volt).unwrap()
    }

    fn int_poly(p: &UniPoly<CycInt>) -> UniPoly<BigInt> {
        p.map(|c| c.as_integer().expect("rational coefficient"))
    }

    #[test]
    fn triangle_zeta() {
        let g = triangle();
        // (1 - s^3)^2
        let expected = poly(&[1, 0, 0, -2, 0, 0, 1]);
        assert_eq!(metric_zeta_reciprocal(&g, &HashMap::new()).unwrap(), expected);
        assert_eq!(metric_zeta_reciprocal_exact(&g, &HashMap::new()).unwrap(), expected);
        assert_eq!(ihara_zeta_reciprocal(&g).unwrap(), expected);
    }

    #[test]
    fn subdivided_cycle() {
        let g = single_loop();
        for n in 1..6 {
            let sub = crate::jacobian::subdivide(&g, &lens(&[("e", n)])).unwrap();
            let mut c = vec![0i64; 2 * n as usize + 1];
            c[0] = 1;
            c[n as usize] = -2;
            c[2 * n as usize] = 1;
            assert_eq!(metric_zeta_reciprocal_exact(&sub, &HashMap::new()).unwrap(), poly(&c));
            assert_eq!(metric_zeta_reciprocal(&g, &lens(&[("e", n)])).unwrap(), poly(&c));
            assert_eq!(ihara_zeta_reciprocal(&sub).unwrap(), poly(&c));
        }
    }

    #[test]
    fn theta_two_and_three_term() {
        let g = theta();
        let z = metric_zeta_reciprocal(&g, &HashMap::new()).unwrap();
        assert_eq!(z.degree(), Some(6));
        assert_eq!(z, ihara_zeta_reciprocal(&g).unwrap());
        assert_eq!(z, metric_zeta_reciprocal_exact(&g, &HashMap::new()).unwrap());
    }

    #[test]
    fn theta_taylor() {
        let t = zeta_taylor(&theta(), &HashMap::new()).unwrap();
        assert_eq!((t.order, t.coefficient.clone()), (2, BigInt::from(-12)));
        assert!(t.holds());
        let t = zeta_taylor(&theta(), &lens(&[("x", 2)])).unwrap();
        assert_eq!(t.coefficient, BigInt::from(-20));
        assert!(t.holds());
        assert_eq!(zeta_taylor(&single_loop(), &HashMap::new()), Err(Error::GenusTooSmall(1)));
    }

    #[test]
    fn lengths_are_validated() {
        assert_eq!(
            metric_zeta_reciprocal(&theta(), &lens(&[("x", 0)])),
            Err(Error::NonPositiveLength("x".into()))
        );
        assert!(matches!(metric_zeta_reciprocal(&theta(), &lens(&[("w", 1)])), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn dumbbell_base_formulas_agree() {
        let g = dumbbell_spec().base().clone();
        assert_eq!(
            metric_zeta_reciprocal(&g, &HashMap::new()).unwrap(),
            ihara_zeta_reciprocal(&g).unwrap()
        );
    }

    #[test]
    fn loop_l_functions() {
        // Z/2, voltage 1: A_rho = -2, Q = 2, genus 1
        let s = loop_cover(2, 1);
        let rho = &s.group().characters()[1];
        let three = artin_l_reciprocal_threeterm(&s, rho).unwrap();
        assert_eq!(int_poly(&three), poly(&[1, 2, 1]));
        assert_eq!(metric_l_reciprocal(&s, rho, &HashMap::new()).unwrap(), three);
        assert_eq!(twisted_laplacian_det(&s, rho), Ok(CycInt::integer(4)));
        assert_eq!(CycInt::weight_of_root(2, 1), CycInt::integer(4));
        // Z/3, voltage 1: 1 + s + s^2
        let s = loop_cover(3, 1);
        let rho = &s.group().characters()[1];
        let three = artin_l_reciprocal_threeterm(&s, rho).unwrap();
        assert_eq!(int_poly(&three), poly(&[1, 1, 1]));
        assert_eq!(metric_l_reciprocal(&s, rho, &HashMap::new()).unwrap(), three);
    }

    #[test]
    fn wedge_twisted_laplacian() {
        let g = Graph::from_strs(&["v"], &[("a", "v", "v"), ("b", "v", "v")]).unwrap();
        let mut volt = BTreeMap::new();
        volt.insert("a".to_string(), GroupElement(vec![1]));
        let s = CoverSpec::new(g, AbelianGroup::cyclic(5), &BTreeMap::new(), &volt).unwrap();
        let rho = &s.group().characters()[1];
        assert_eq!(twisted_laplacian_det(&s, rho), Ok(CycInt::weight_of_root(5, 1)));
        assert_eq!(twisted_laplacian_det(&s, &s.group().characters()[0]), Err(Error::TrivialCharacter));
    }

    #[test]
    fn trivial_character_gives_zeta() {
        let (s, _) = icosahedron_spec().free_resolution();
        let rho = &s.group().characters()[0];
        let l = metric_l_reciprocal(&s, rho, &HashMap::new()).unwrap();
        assert_eq!(int_poly(&l), metric_zeta_reciprocal(s.base(), &HashMap::new()).unwrap());
        let l3 = artin_l_reciprocal_threeterm(&s, rho).unwrap();
        assert_eq!(int_poly(&l3), ihara_zeta_reciprocal(s.base()).unwrap());
    }

    #[test]
    fn dilated_specs_are_rejected() {
        let s = icosahedron_spec();
        let rho = &s.group().characters()[1];
        assert_eq!(metric_l_reciprocal(&s, rho, &HashMap::new()), Err(Error::DilatedSpec));
        assert_eq!(artin_l_reciprocal_threeterm(&s, rho), Err(Error::DilatedSpec));
        assert_eq!(twisted_laplacian_det(&s, rho), Err(Error::DilatedSpec));
    }

    #[test]
    fn icosahedron_resolution() {
        let (s, _) = icosahedron_spec().free_resolution();
        for rho in &s.group().characters()[1..] {
            let l = metric_l_reciprocal(&s, rho, &HashMap::new()).unwrap();
            assert_eq!(l, artin_l_reciprocal_threeterm(&s, rho).unwrap());
            let t = l_taylor(&s, rho, &HashMap::new()).unwrap();
            assert!(t.holds(), "{t:?}");
            let w = weight_polynomial(&s, rho).unwrap().scalar;
            assert_eq!(twisted_laplacian_det(&s, rho).unwrap(), w);
        }
    }

    #[test]
    fn dumbbell_resolution() {
        let (s, _) = dumbbell_spec().free_resolution();
        let rho = &s.group().characters()[2];
        let l = metric_l_reciprocal(&s, rho, &HashMap::new()).unwrap();
        assert_eq!(l, artin_l_reciprocal_threeterm(&s, rho).unwrap());
        let t = l_taylor(&s, rho, &HashMap::new()).unwrap();
        assert_eq!(t.order, genus_of(s.base()) as usize - 1);
        assert!(t.holds());
        let t = l_taylor(&s, rho, &lens(&[("e1", 2), ("e3", 3)])).unwrap();
        assert!(t.holds());
    }

    #[test]
    fn zeta_factors_over_characters() {
        let (s, _) = dumbbell_spec().free_resolution();
        let cover = Cover::build(&s);
        let base_lengths = lens(&[("e1", 2), ("e2", 1), ("e3", 3)]);
        let total_lengths: HashMap<String, i64> = cover
            .total()
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let base = &s.base().edges()[cover.edge_projection()[i]].id;
                (e.id.clone(), base_lengths.get(base).copied().unwrap_or(1))
            })
            .collect();
        let lhs = metric_zeta_reciprocal(cover.total(), &total_lengths).unwrap();
        let rhs = s
            .group()
            .characters()
            .iter()
            .map(|rho| metric_l_reciprocal(&s, rho, &base_lengths).unwrap())
            .fold(UniPoly::one(), |acc: UniPoly<CycInt>, l| acc.times(&l));
        assert_eq!(lhs, int_poly(&rhs));
    }

    #[test]
    fn census() {
        let t = closed_path_census(&triangle(), 9).unwrap();
        assert_eq!(t[2], 6);
        assert_eq!(t, vec![0, 0, 6, 0, 0, 6, 0, 0, 6]);
        let tree = Graph::from_strs(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).unwrap();
        assert!(closed_path_census(&tree, 8).unwrap().iter().all(|&n| n == 0));
        for g in [triangle(), theta(), single_loop(), dumbbell_spec().base().clone()] {
            let c = closed_path_census(&g, 8).unwrap();
            let traces = edge_matrix_traces(&g, 8);
            assert_eq!(c.iter().map(|&n| BigInt::from(n)).collect::<Vec<_>>(), traces);
            let p = metric_zeta_reciprocal(&g, &HashMap::new()).unwrap();
            assert!(census_matches_log_series(&p, &c));
        }
        assert_eq!(closed_path_census(&triangle(), 13), Err(Error::BoundExceeded(13)));
    }

    #[test]
    fn theta_log_series_coefficients() {
        // N_m for the theta graph from the census, checked against the
        // zeta polynomial's logarithmic derivative.
        let c = closed_path_census(&theta(), 6).unwrap();
        assert_eq!(c[0], 0);
        // two start vertices, three ways out, two distinct ways back
        assert_eq!(c[1], 12);
        let p = ihara_zeta_reciprocal(&theta()).unwrap();
        assert!(census_matches_log_series(&p, &c));
        assert!(!census_matches_log_series(&p, &[0, 13, 0, 0, 0, 0]));
    }
}
