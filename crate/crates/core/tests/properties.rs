//! Randomized invariants. Each case draws a seed and builds its input from
//! the shared generators, so failures replay from the printed seed.

mod common;

use galois_trees::format::{parse_spec, serialize_spec, spec_to_doc};
use galois_trees::jacobian::{
    jacobian_group, jacobian_polynomial, labelled_polynomial, labelled_polynomial_by_enumeration,
    pushforward_jacobian, tree_count,
};
use galois_trees::{Cover, CoverSpec, Graph};
use proptest::prelude::*;
use rand::Rng;

fn invariants(g: &Graph) -> (usize, usize, Vec<String>) {
    let factors = jacobian_group(g)
        .unwrap()
        .invariant_factors
        .iter()
        .map(|d| d.to_string())
        .collect();
    (g.num_vertices(), g.num_edges(), factors)
}

fn random_graph(seed: u64) -> Graph {
    let mut rng = common::rng(seed);
    let vertices = rng.gen_range(1..=7);
    let edges = rng.gen_range(vertices - 1..=vertices + 6);
    common::multigraph(&mut rng, vertices, edges)
}

fn random_cover(seed: u64) -> CoverSpec {
    common::bounded_spec(&mut common::rng(seed), 4, 7, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interpolated_polynomial_matches_enumeration(seed in any::<u64>(), classes in 1usize..=4) {
        let g = random_graph(seed);
        let mut rng = common::rng(seed ^ 0x5eed);
        let labels: Vec<usize> = (0..g.num_edges()).map(|_| rng.gen_range(0..classes)).collect();
        let names: Vec<String> = (0..classes).map(|i| format!("y{i}")).collect();
        prop_assert_eq!(
            labelled_polynomial(&g, &labels, &names).unwrap(),
            labelled_polynomial_by_enumeration(&g, &labels, &names).unwrap()
        );
    }

    #[test]
    fn jacobian_polynomial_is_homogeneous_of_degree_genus(seed in any::<u64>()) {
        let g = random_graph(seed);
        let j = jacobian_polynomial(&g).unwrap();
        prop_assert_eq!(j.homogeneous_degree(), Some(g.genus().unwrap() as u32));
        prop_assert_eq!(j.eval_ones(), tree_count(&g));
    }

    #[test]
    fn cover_sizes_follow_the_dilations(seed in any::<u64>()) {
        let spec = random_cover(seed);
        let n = spec.group().order();
        let cover = Cover::build(&spec);
        let expected: u64 = spec.dilations().iter().map(|d| n / d.order()).sum();
        prop_assert_eq!(cover.total().num_vertices() as u64, expected);
        prop_assert_eq!(cover.total().num_edges() as u64, n * spec.base().num_edges() as u64);
        prop_assert!(cover.is_harmonic());
        prop_assert!(cover.is_connected());
    }

    #[test]
    fn spec_documents_round_trip(seed in any::<u64>()) {
        let spec = random_cover(seed);
        let back = parse_spec(&serialize_spec(&spec)).unwrap();
        prop_assert_eq!(spec_to_doc(&back), spec_to_doc(&spec));
    }

    #[test]
    fn contraction_commutes_with_building(seed in any::<u64>()) {
        let spec = random_cover(seed);
        let mut rng = common::rng(seed ^ 0xc0);
        let f: Vec<usize> = (0..spec.base().num_edges()).filter(|_| rng.gen_bool(0.3)).collect();
        let cover = Cover::build(&spec);
        let from_spec = cover.contract(&f).unwrap();
        let direct = cover.contract_total(&f).unwrap();
        prop_assert_eq!(invariants(from_spec.total()), invariants(&direct));
    }

    #[test]
    fn contracting_the_resolution_loops_recovers_the_cover(seed in any::<u64>()) {
        let spec = random_cover(seed);
        let (free, added) = spec.free_resolution();
        prop_assert!(free.is_free());
        let loops = free.base().edge_indices(&added).unwrap();
        let (back, _) = free.contract(&loops).unwrap();
        prop_assert_eq!(back.dilations(), spec.dilations());
        prop_assert_eq!(
            invariants(Cover::build(&back).total()),
            invariants(Cover::build(&spec).total())
        );
    }

    #[test]
    fn pushforward_is_surjective(seed in any::<u64>()) {
        let spec = random_cover(seed);
        let cover = Cover::build(&spec);
        let r = pushforward_jacobian(&cover).unwrap();
        prop_assert!(r.surjective && r.well_defined);
        prop_assert_eq!(&r.kernel_order * tree_count(spec.base()), tree_count(cover.total()));
    }
}
