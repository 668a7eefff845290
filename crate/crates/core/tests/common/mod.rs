//! Random graphs and cover specs shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use galois_trees::matroid::cover_is_connected;
use galois_trees::{AbelianGroup, CoverSpec, Graph, GroupElement};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Groups allowed in the randomized suites.
pub const GROUPS: &[&[i64]] = &[&[2], &[3], &[4], &[5], &[6], &[2, 2]];

/// A connected multigraph: a random spanning tree plus extra edges, loops
/// and parallel edges included. Orientations are random.
pub fn multigraph(rng: &mut impl Rng, vertices: usize, edges: usize) -> Graph {
    assert!(vertices >= 1 && edges + 1 >= vertices);
    let names: Vec<String> = (1..=vertices).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::with_capacity(edges);
    for i in 1..vertices {
        pairs.push((rng.gen_range(0..i), i));
    }
    while pairs.len() < edges {
        pairs.push((rng.gen_range(0..vertices), rng.gen_range(0..vertices)));
    }
    pairs.shuffle(rng);
    let edge_list: Vec<(String, String, String)> = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| {
            let (s, t) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            (format!("e{}", k + 1), names[s].clone(), names[t].clone())
        })
        .collect();
    Graph::new(names, edge_list).expect("generated graph is well formed")
}

/// A multigraph of exactly the given genus.
pub fn graph_of_genus(rng: &mut impl Rng, vertices: usize, genus: usize) -> Graph {
    multigraph(rng, vertices, vertices - 1 + genus)
}

fn random_element(rng: &mut impl Rng, group: &AbelianGroup) -> GroupElement {
    GroupElement(group.orders().iter().map(|&n| rng.gen_range(0..n)).collect())
}

/// Random voltages and, with probability `dilation_rate` per vertex, a
/// dilation subgroup spanned by one or two random elements. Resamples until
/// the cover is connected.
pub fn spec_on(rng: &mut impl Rng, base: &Graph, orders: &[i64], dilation_rate: f64) -> CoverSpec {
    let group = AbelianGroup::new(orders).unwrap();
    loop {
        let mut dilation = BTreeMap::new();
        for v in base.vertices() {
            if rng.gen_bool(dilation_rate) {
                let gens = rng.gen_range(1..=2);
                dilation.insert(v.clone(), (0..gens).map(|_| random_element(rng, &group)).collect());
            }
        }
        let voltage: BTreeMap<String, GroupElement> = base
            .edges()
            .iter()
            .map(|e| (e.id.clone(), random_element(rng, &group)))
            .collect();
        let spec = CoverSpec::new(base.clone(), group.clone(), &dilation, &voltage).unwrap();
        if cover_is_connected(&spec) {
            return spec;
        }
    }
}

/// A connected harmonic cover spec within the suite bounds: at most five
/// vertices, at most eight edges, group from [`GROUPS`].
pub fn bounded_spec(rng: &mut impl Rng, max_vertices: usize, max_edges: usize, max_genus: usize) -> CoverSpec {
    let orders = GROUPS.choose(rng).unwrap();
    let vertices = rng.gen_range(1..=max_vertices);
    let genus_cap = max_genus.min(max_edges + 1 - vertices);
    let genus = rng.gen_range(0..=genus_cap);
    let base = graph_of_genus(rng, vertices, genus);
    spec_on(rng, &base, orders, 0.3)
}

/// A connected free cover spec. The genus is at least the number of cyclic
/// factors, otherwise no voltage assignment reaches the whole group.
pub fn free_spec(rng: &mut impl Rng, max_vertices: usize, max_genus: usize, orders: &[i64]) -> CoverSpec {
    let vertices = rng.gen_range(1..=max_vertices);
    let genus = rng.gen_range(orders.len()..=max_genus);
    let base = graph_of_genus(rng, vertices, genus);
    spec_on(rng, &base, orders, 0.0)
}
