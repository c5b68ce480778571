//! Named networks and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::network::{validate_network, Network, RawNetwork};

/// Four vertices; `t1: {v1,v2} -> {v3}` and `t2: {v3} -> {v4}`.
pub fn ex6() -> Network {
    let raw = RawNetwork::new(["v1", "v2", "v3", "v4"])
        .relation("t1", ["v1", "v2"], ["v3"])
        .relation("t2", ["v3"], ["v4"]);
    validate_network(&raw).expect("valid fixture")
}

/// [`ex6`] with every vertex and relation name primed.
pub fn ex6_renamed() -> Network {
    let raw = RawNetwork::new(["v1'", "v2'", "v3'", "v4'"])
        .relation("t1'", ["v1'", "v2'"], ["v3'"])
        .relation("t2'", ["v3'"], ["v4'"]);
    validate_network(&raw).expect("valid fixture")
}

/// The one-edge graph `e: a -> b`.
pub fn g2() -> Network {
    let raw = RawNetwork::new(["a", "b"]).relation("e", ["a"], ["b"]);
    validate_network(&raw).expect("valid fixture")
}

/// A network with 2 to `max_vertices` vertices and 1 to `max_relations`
/// relations with random disjoint endpoints.
pub fn random_network(seed: u64, max_relations: usize, max_vertices: usize) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices.max(2));
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let m = rng.gen_range(1..=max_relations.max(1));
    let mut raw = RawNetwork::new(vertices.iter().cloned());
    for k in 0..m {
        let (source, range) = loop {
            let mut source = Vec::new();
            let mut range = Vec::new();
            for v in &vertices {
                match rng.gen_range(0..5) {
                    0 => source.push(v.clone()),
                    1 => range.push(v.clone()),
                    _ => {}
                }
            }
            if !source.is_empty() && !range.is_empty() {
                break (source, range);
            }
        };
        raw = raw.relation(format!("r{k}"), source, range);
    }
    validate_network(&raw).expect("generator respects the invariants")
}

/// A simple directed graph: no loops, no parallel edges, at least one edge.
pub fn random_graph(seed: u64, max_edges: usize, max_vertices: usize) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices.max(2));
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(&mut rng);
    let m = rng.gen_range(1..=max_edges.max(1).min(pairs.len()));
    let mut raw = RawNetwork::new(vertices.iter().cloned());
    for (k, &(a, b)) in pairs.iter().take(m).enumerate() {
        raw = raw.relation(
            format!("e{k}"),
            [vertices[a].clone()],
            [vertices[b].clone()],
        );
    }
    validate_network(&raw).expect("generator respects the invariants")
}

/// The same network with vertices and relations renamed and relations reordered.
pub fn shuffled_copy(net: &Network, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut vnames: Vec<String> = (0..net.vertices().len()).map(|i| format!("w{i}")).collect();
    vnames.shuffle(&mut rng);
    let rename = |v: &str| {
        let i = net.vertices().iter().position(|x| x == v).expect("vertex");
        vnames[i].clone()
    };
    let mut order: Vec<usize> = (0..net.relations().len()).collect();
    order.shuffle(&mut rng);
    let mut raw = RawNetwork::new(vnames.iter().cloned());
    for (k, &i) in order.iter().enumerate() {
        let r = net.relation(i);
        raw = raw.relation(
            format!("q{k}"),
            r.source
                .members()
                .iter()
                .map(|v| rename(v))
                .collect::<Vec<_>>(),
            r.range
                .members()
                .iter()
                .map(|v| rename(v))
                .collect::<Vec<_>>(),
        );
    }
    validate_network(&raw).expect("relabelling preserves validity")
}
