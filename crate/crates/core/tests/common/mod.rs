//! Seeded random hypergraphs shared by the property suites.

#![allow(dead_code)]

use hypercone::rational::ratio;
use hypercone::subsystem::party_label;
use hypercone::{Hypergraph, HypergraphBuilder};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_PARTIES: usize = 4;
pub const MAX_BULK: usize = 3;
pub const MAX_RANK: usize = 5;

/// A hypergraph on at most `max_parties` parties with at most three bulk
/// vertices, edges of size 2 to 5 and weights `p/q` with `p <= 6`, `q <= 4`.
pub fn random_graph(seed: u64, max_parties: usize) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_parties);
    graph_on(&mut rng, n)
}

/// As [`random_graph`] with the party count fixed.
pub fn random_graph_on(seed: u64, n: usize) -> Hypergraph {
    graph_on(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn graph_on(rng: &mut ChaCha8Rng, n: usize) -> Hypergraph {
    let bulk = rng.gen_range(0..=MAX_BULK);
    let mut names: Vec<String> = (0..=n).map(|p| party_label(n, p)).collect();
    names.extend((0..bulk).map(|b| format!("s{b}")));
    let mut builder = HypergraphBuilder::new(n);
    for b in 0..bulk {
        builder = builder.bulk(&format!("s{b}"));
    }
    let edges = rng.gen_range(1..=7);
    for _ in 0..edges {
        let size = rng.gen_range(2..=MAX_RANK.min(names.len()));
        let members: Vec<&str> = names.choose_multiple(rng, size).map(String::as_str).collect();
        let w = ratio(rng.gen_range(1..=6), rng.gen_range(1..=4));
        builder = builder.edge(&members, w);
    }
    builder.build().expect("generated graphs are valid")
}

/// The corpus used for the randomized checks: `count` graphs from seeds `0..count`.
pub fn corpus(count: u64, max_parties: usize) -> Vec<Hypergraph> {
    (0..count).map(|s| random_graph(s, max_parties)).collect()
}
