//! Random instances and brute-force oracles shared by the integration tests.
//! The oracles here work from the definitions and do not call the rank
//! oracles or the greedy algorithm they are compared against.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wrank::linalg::BitMatrix;
use wrank::{Graph, Matroid, Subset, WeightFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_binary(rng: &mut impl Rng, n: usize) -> Matroid {
    let rows = rng.random_range(1..=4);
    let mut m = BitMatrix::zeros(rows, n);
    for r in 0..rows {
        for c in 0..n {
            m.set(r, c, rng.random_bool(0.5));
        }
    }
    Matroid::binary(m).unwrap()
}

pub fn random_graphic(rng: &mut impl Rng, n: usize) -> Matroid {
    let vertices = rng.random_range(1..=5);
    let edges = (0..n)
        .map(|_| (rng.random_range(0..vertices), rng.random_range(0..vertices)))
        .collect();
    Matroid::graphic(Graph::new(vertices, edges).unwrap()).unwrap()
}

pub fn random_matroid(rng: &mut impl Rng, max_n: usize) -> Matroid {
    let n = rng.random_range(1..=max_n);
    match rng.random_range(0..3) {
        0 => random_binary(rng, n),
        1 => random_graphic(rng, n),
        _ => Matroid::uniform(rng.random_range(0..=n), n).unwrap(),
    }
}

/// Weights `p/q` with `p ∈ 0..=12`, `q ∈ 1..=4`.
pub fn random_rational_weights(rng: &mut impl Rng, n: usize) -> WeightFunction {
    WeightFunction::new(
        (0..n)
            .map(|_| {
                BigRational::new(
                    rng.random_range(0..=12).into(),
                    rng.random_range(1..=4).into(),
                )
            })
            .collect(),
    )
    .unwrap()
}

pub fn random_integer_weights(rng: &mut impl Rng, n: usize, max: u64) -> WeightFunction {
    WeightFunction::from_integers(
        &(0..n)
            .map(|_| rng.random_range(0..=max))
            .collect::<Vec<_>>(),
    )
}

/// Independence straight from the definitions: a set of F₂ columns is
/// dependent iff some nonempty subset sums to zero; a set of edges is
/// dependent iff some nonempty subset has every vertex of even degree.
pub fn independent_by_definition(m: &Matroid, s: Subset) -> bool {
    match m {
        Matroid::Uniform { rank, .. } => s.len() <= *rank,
        Matroid::Binary(a) => s
            .subsets()
            .skip(1)
            .all(|t| (0..a.rows()).any(|r| t.elements().filter(|&c| a.get(r, c)).count() % 2 == 1)),
        Matroid::Graphic(g) => s.subsets().skip(1).all(|t| {
            let mut degree = vec![0usize; g.vertices()];
            for e in t.elements() {
                let (u, v) = g.edges()[e];
                degree[u] += 1;
                degree[v] += 1;
            }
            degree.iter().any(|d| d % 2 == 1)
        }),
    }
}

/// max over independent `I ⊆ s` of `Σ w`, by enumeration.
pub fn brute_force_weighted_rank(m: &Matroid, w: &WeightFunction, s: Subset) -> BigRational {
    s.subsets()
        .filter(|&t| independent_by_definition(m, t))
        .map(|t| {
            t.elements()
                .fold(BigRational::zero(), |acc, e| acc + w.get(e))
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Rank by enumeration of independent subsets.
pub fn brute_force_rank(m: &Matroid, s: Subset) -> usize {
    s.subsets()
        .filter(|&t| independent_by_definition(m, t))
        .map(Subset::len)
        .max()
        .unwrap_or(0)
}
