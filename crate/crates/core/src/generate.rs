//! Seeded random instances: complexes, graphs, signed graphs and Floer complexes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flows::{floer_boundary, FloerComplex, ObjectKind};
use crate::signed::{SignedEdge, SignedGraph};
use crate::{Rational, Result, SimplicialComplex};

/// Face closure of a few random simplices on at most `max_vertices` vertices, of dimension at
/// most `max_dim`. Vertices are relabelled `0..n` so none is missing.
pub fn random_complex(max_vertices: usize, max_dim: usize, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_vertices.max(1));
    let generators = rng.random_range(1..=n + 2);
    let mut tuples: Vec<Vec<usize>> = (0..generators)
        .map(|_| {
            let size = rng.random_range(1..=(max_dim + 1).min(n));
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(&mut rng);
            all.truncate(size);
            all
        })
        .collect();
    let covered: Vec<bool> = (0..n).map(|v| tuples.iter().any(|t| t.contains(&v))).collect();
    tuples.extend((0..n).filter(|v| !covered[*v]).map(|v| alloc::vec![v]));
    SimplicialComplex::from_maximal_simplices(&tuples, &[]).expect("generated simplices are well formed")
}

/// `G(n, p)` with every vertex present; `connected` resamples until the graph is connected.
pub fn random_graph(n: usize, p: f64, connected: bool, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut tuples: Vec<Vec<usize>> = (0..n).map(|v| alloc::vec![v]).collect();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    tuples.push(alloc::vec![u, v]);
                }
            }
        }
        let g = SimplicialComplex::from_maximal_simplices(&tuples, &[]).expect("graph is well formed");
        if !connected || g.reduced_betti(0) == 0 {
            return g;
        }
    }
}

/// Random signed graph on `n` vertices with edge probability `p`, signs fair, weights in `1..=3`
/// when `weighted`.
pub fn random_signed_graph(n: usize, p: f64, weighted: bool, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                let weight = if weighted { rng.random_range(1..=3) } else { 1 };
                let sign = if rng.random_bool(0.5) { 1 } else { -1 };
                edges.push(SignedEdge { u, v, weight: Rational::from_integer(weight), sign });
            }
        }
    }
    SignedGraph::new(n, edges).expect("generated edges are valid")
}

fn floer_candidate(rng: &mut ChaCha8Rng) -> Result<FloerComplex> {
    let mut c = FloerComplex::new();
    let count = rng.random_range(1..=6);
    let mut names: Vec<(String, ObjectKind, usize)> = Vec::new();
    for i in 0..count {
        let kind = match rng.random_range(0..4) {
            0 => ObjectKind::Orbit,
            1 => ObjectKind::Homoclinic,
            _ => ObjectKind::Point,
        };
        let index = rng.random_range(0..=2);
        let name = format!("x{i}");
        c.add_object(kind, index, &name)?;
        names.push((name, kind, index));
    }
    for (a, ka, ia) in &names {
        for (b, kb, ib) in &names {
            let admissible = match (ka, kb) {
                (ObjectKind::Point, ObjectKind::Point) => *ia == ib + 1,
                (ObjectKind::Point, _) => *ia == ib + 2,
                (_, ObjectKind::Point) => *ia == ib + 1,
                _ => *ia == ib + 1,
            };
            if admissible && rng.random_bool(0.5) {
                c.connect(a, b, rng.random_range(1..=2))?;
            }
        }
    }
    Ok(c)
}

/// A random Floer complex whose mod-2 boundary squares to zero, found by rejection.
pub fn random_floer_complex(seed: u64) -> FloerComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Ok(c) = floer_candidate(&mut rng) {
            if floer_boundary(&c).is_ok() {
                return c;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..30 {
            let c = random_complex(6, 3, seed);
            assert_eq!(c, random_complex(6, 3, seed));
            assert!(c.count(0) <= 6 && c.dim() <= 3);
            let f = random_floer_complex(seed);
            assert!(floer_boundary(&f).is_ok());
        }
        assert_eq!(random_graph(6, 0.3, true, 1).reduced_betti(0), 0);
        assert_eq!(random_signed_graph(5, 1.0, false, 2).edges().len(), 10);
    }
}
