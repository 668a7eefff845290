//! End-to-end check of the factorization of the cover's Jacobian
//! polynomial into base data: `J_X~ = (1/N) prod_v |D(v)|^{N/|D(v)|} J_X
//! prod_{rho != 1} P_rho`.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::algebra::{CycInt, MultiPoly, Ring};
use crate::cover::{Cover, CoverSpec};
use crate::error::{Error, Result};
use crate::group::Character;
use crate::jacobian::{jacobian_group, labelled_polynomial, specialized_cover_polynomial, tree_count};
use crate::matroid::{cover_is_connected, weight_polynomial, WeightReport};

/// Matroid data for one nontrivial character.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterReport {
    pub index: usize,
    pub exponents: Vec<u64>,
    pub weights: WeightReport,
}

/// Everything the verifier computed, from both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub group_order: u64,
    pub base_polynomial: MultiPoly<BigInt>,
    pub base_tree_count: BigInt,
    pub characters: Vec<CharacterReport>,
    /// Galois orbits of nontrivial characters, by index.
    pub orbits: Vec<Vec<usize>>,
    /// `prod_v |D(v)|^{N/|D(v)|}`; the prefactor is this over `N`.
    pub prefactor_numerator: BigInt,
    pub prefactor_denominator: BigInt,
    /// Right-hand side, when the character product times the prefactor is
    /// integral.
    pub rhs: Option<MultiPoly<BigInt>>,
    pub lhs: MultiPoly<BigInt>,
    pub equal: bool,
    /// `|Jac X~|` from the Smith form of the cover Laplacian.
    pub cover_jacobian_order: BigInt,
    /// `|Jac X~|` as a Laplacian cofactor.
    pub cover_tree_count: BigInt,
    /// `|Jac X~|` from the product of scalar weights.
    pub theorem_tree_count: Option<BigInt>,
}

impl VerificationReport {
    /// Polynomial identity plus agreement of all tree counts.
    pub fn holds(&self) -> bool {
        self.equal
            && self.theorem_tree_count.as_ref() == Some(&self.cover_tree_count)
            && self.cover_jacobian_order == self.cover_tree_count
    }
}

/// Groups nontrivial characters into orbits under `rho -> rho^a`, `a` a
/// unit modulo the exponent of `G`.
pub fn galois_orbits(chars: &[Character]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; chars.len()];
    let mut orbits = Vec::new();
    for rho in chars.iter().filter(|c| !c.is_trivial()) {
        if seen[rho.index()] {
            continue;
        }
        let m = rho.group().exponent() as i64;
        let mut orbit: Vec<usize> = (1..=m)
            .filter(|a| a.gcd(&m) == 1)
            .map(|a| rho.power(a).index())
            .collect();
        orbit.sort();
        orbit.dedup();
        for &i in &orbit {
            seen[i] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

fn integer_poly(p: &MultiPoly<CycInt>) -> Option<MultiPoly<BigInt>> {
    if p.terms().all(|(_, c)| c.as_integer().is_some()) {
        Some(p.map_coeffs(|c| c.as_integer().unwrap()))
    } else {
        None
    }
}

fn exact_div_poly(p: &MultiPoly<BigInt>, n: &BigInt) -> Option<MultiPoly<BigInt>> {
    let mut out = MultiPoly::zero_in(p.vars());
    for (k, c) in p.terms() {
        let (q, r) = c.div_rem(n);
        if !r.is_zero() {
            return None;
        }
        out.add_term(k.to_vec(), q);
    }
    Some(out)
}

/// Builds the cover, computes its specialized Jacobian polynomial directly,
/// assembles the factorized right-hand side from base data, and compares.
pub fn verify_main_theorem(spec: &CoverSpec) -> Result<VerificationReport> {
    let group = spec.group();
    let n = group.order();
    if n == 1 {
        return Err(Error::TrivialCover);
    }
    if !cover_is_connected(spec) {
        return Err(Error::Disconnected);
    }
    let base = spec.base();
    let ids = base.edge_id_list();
    let identity: Vec<usize> = (0..ids.len()).collect();
    let base_polynomial = labelled_polynomial(base, &identity, &ids)?;
    let base_tree_count = tree_count(base);

    let chars = group.characters();
    let characters = chars[1..]
        .par_iter()
        .map(|rho| {
            Ok(CharacterReport {
                index: rho.index(),
                exponents: rho.exponents().to_vec(),
                weights: weight_polynomial(spec, rho)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let by_index = |i: usize| &characters[i - 1];
    let orbits = galois_orbits(&chars);

    let prefactor_numerator = spec.dilations().iter().fold(BigInt::from(1), |acc, d| {
        let size = d.order();
        acc * BigInt::from(size).pow((n / size) as u32)
    });
    let prefactor_denominator = BigInt::from(n);

    // each orbit's product is fixed by the Galois group, hence integral
    let mut product = Some(MultiPoly::constant(BigInt::from(1)));
    let mut scalar_product = Some(BigInt::from(1));
    for orbit in &orbits {
        let poly = orbit
            .iter()
            .fold(MultiPoly::constant(CycInt::one()), |acc, &i| acc.times(&by_index(i).weights.polynomial));
        let scalar = orbit
            .iter()
            .fold(CycInt::one(), |acc, &i| acc.times(&by_index(i).weights.scalar));
        product = match (product, integer_poly(&poly)) {
            (Some(acc), Some(p)) => Some(acc.times(&p)),
            _ => None,
        };
        scalar_product = match (scalar_product, scalar.as_integer()) {
            (Some(acc), Some(s)) => Some(acc * s),
            _ => None,
        };
    }
    let rhs = product.and_then(|p| {
        let numerator = p
            .times(&base_polynomial)
            .times(&MultiPoly::constant(prefactor_numerator.clone()));
        exact_div_poly(&numerator, &prefactor_denominator)
    });
    let theorem_tree_count = scalar_product.and_then(|s| {
        let numerator = s * &base_tree_count * &prefactor_numerator;
        let (q, r) = numerator.div_rem(&prefactor_denominator);
        r.is_zero().then_some(q)
    });

    let cover = Cover::build(spec);
    let lhs = specialized_cover_polynomial(&cover)?;
    let cover_tree_count = tree_count(cover.total());
    let cover_jacobian_order = jacobian_group(cover.total())?.order;
    let equal = rhs.as_ref() == Some(&lhs);
    Ok(VerificationReport {
        group_order: n,
        base_polynomial,
        base_tree_count,
        characters,
        orbits,
        prefactor_numerator,
        prefactor_denominator,
        rhs,
        lhs,
        equal,
        cover_jacobian_order,
        cover_tree_count,
        theorem_tree_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::tests::{dumbbell_spec, icosahedron_spec};
    use crate::format::parse_spec;
    use crate::jacobian::labelled_polynomial_by_enumeration;

    #[test]
    fn icosahedron() {
        let r = verify_main_theorem(&icosahedron_spec()).unwrap();
        assert!(r.equal && r.holds());
        assert_eq!(r.cover_tree_count, BigInt::from(5_184_000));
        assert_eq!(r.theorem_tree_count, Some(BigInt::from(5_184_000)));
        // (1/5) * 5^1 * 1^5 * 1^5 * 5^1 = 5
        assert_eq!(r.prefactor_numerator, BigInt::from(25));
        assert_eq!(r.prefactor_denominator, BigInt::from(5));
        assert_eq!(r.orbits, vec![vec![1, 2, 3, 4]]);
        for c in &r.characters {
            let (re, _) = c.weights.scalar.to_complex();
            let sign = if c.index == 1 || c.index == 4 { -1.0 } else { 1.0 };
            assert!((re - (30.0 + sign * 6.0 * 5f64.sqrt())).abs() < 1e-9);
        }
    }

    #[test]
    fn dumbbell() {
        let r = verify_main_theorem(&dumbbell_spec()).unwrap();
        assert!(r.holds());
        assert_eq!(r.cover_tree_count, BigInt::from(960));
        assert_eq!(r.orbits, vec![vec![1, 5], vec![2, 4], vec![3]]);
    }

    #[test]
    fn theta_double_cover_against_enumeration() {
        let spec = parse_spec(include_str!("../fixtures/theta.json")).unwrap();
        let r = verify_main_theorem(&spec).unwrap();
        assert!(r.holds());
        let cover = Cover::build(&spec);
        assert_eq!((cover.total().num_vertices(), cover.total().num_edges()), (4, 6));
        let direct = labelled_polynomial_by_enumeration(
            cover.total(),
            cover.edge_projection(),
            &spec.base().edge_id_list(),
        )
        .unwrap();
        assert_eq!(r.lhs, direct);
    }

    #[test]
    fn rejects_trivial_and_disconnected() {
        let s = icosahedron_spec();
        let trivial = CoverSpec::new(
            s.base().clone(),
            crate::group::AbelianGroup::cyclic(1),
            &Default::default(),
            &Default::default(),
        )
        .unwrap();
        assert_eq!(verify_main_theorem(&trivial), Err(Error::TrivialCover));
        let split = CoverSpec::new(
            s.base().clone(),
            crate::group::AbelianGroup::cyclic(3),
            &Default::default(),
            &Default::default(),
        )
        .unwrap();
        assert_eq!(verify_main_theorem(&split), Err(Error::Disconnected));
    }

    #[test]
    fn non_cyclic_group() {
        let text = r#"{"vertices":["a","b"],
            "edges":[{"id":"p","src":"a","tgt":"b"},{"id":"q","src":"a","tgt":"b"},
                     {"id":"r","src":"a","tgt":"b"},{"id":"l","src":"b","tgt":"b"}],
            "group":{"cyclic":[2,2]},
            "dilation":{"a":[[1,1]]},
            "voltage":{"q":[1,0],"l":[0,1]}}"#;
        let r = verify_main_theorem(&parse_spec(text).unwrap()).unwrap();
        assert!(r.holds(), "{:?}", r.rhs);
        assert_eq!(r.orbits.len(), 3);
        assert!(r.cover_tree_count > BigInt::ZERO);
    }
}
