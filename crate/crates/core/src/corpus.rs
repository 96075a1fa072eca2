//! Matroids shipped with the crate.

use crate::io::MatroidFile;
use crate::matroid::{Matroid, WeightFunction};

/// `(file stem, JSON text)` for every bundled file.
pub const FILES: &[(&str, &str)] = &[
    ("triangle", include_str!("../corpus/triangle.json")),
    (
        "triangle_w123",
        include_str!("../corpus/triangle_w123.json"),
    ),
    ("figure2a", include_str!("../corpus/figure2a.json")),
    ("figure2b", include_str!("../corpus/figure2b.json")),
    ("figure2c", include_str!("../corpus/figure2c.json")),
    ("k4", include_str!("../corpus/k4.json")),
    (
        "parallel_pair",
        include_str!("../corpus/parallel_pair.json"),
    ),
    ("fano", include_str!("../corpus/fano.json")),
    ("u1_1", include_str!("../corpus/u1_1.json")),
    ("u1_2", include_str!("../corpus/u1_2.json")),
    ("u2_3", include_str!("../corpus/u2_3.json")),
    ("u2_4", include_str!("../corpus/u2_4.json")),
    ("u3_5", include_str!("../corpus/u3_5.json")),
];

pub fn file(stem: &str) -> Option<MatroidFile> {
    FILES
        .iter()
        .find(|(s, _)| *s == stem)
        .map(|(_, text)| MatroidFile::from_json(text).expect("bundled corpus parses"))
}

/// Bundled matroid and weights by file stem.
pub fn load(stem: &str) -> Option<(Matroid, WeightFunction)> {
    file(stem).map(|f| f.parts().expect("bundled corpus is valid"))
}

fn matroid(stem: &str) -> Matroid {
    load(stem).expect("bundled file exists").0
}

pub fn triangle() -> Matroid {
    matroid("triangle")
}

pub fn k4() -> Matroid {
    matroid("k4")
}

pub fn fano() -> Matroid {
    matroid("fano")
}

pub fn parallel_pair() -> Matroid {
    matroid("parallel_pair")
}

/// The triangle with every edge subdivided: a 6-cycle.
pub fn figure2_serial() -> Matroid {
    matroid("figure2b")
}

/// The triangle with every edge doubled: 6 edges on 3 vertices.
pub fn figure2_parallel() -> Matroid {
    matroid("figure2c")
}

/// Every bundled matroid, weights dropped, deduplicated.
pub fn matroids() -> Vec<(&'static str, Matroid)> {
    let mut out: Vec<(&'static str, Matroid)> = Vec::new();
    for (stem, _) in FILES {
        let m = matroid(stem);
        if !out.iter().any(|(_, x)| *x == m) {
            out.push((stem, m));
        }
    }
    out
}

/// U(r, n) for every `1 ≤ n ≤ max_n` and `0 ≤ r ≤ n`.
pub fn uniform_family(max_n: usize) -> Vec<Matroid> {
    (1..=max_n)
        .flat_map(|n| (0..=n).map(move |r| Matroid::uniform(r, n).expect("r ≤ n")))
        .collect()
}

/// Bundled matroids that have a binary representation.
pub fn binary_matroids() -> Vec<(&'static str, Matroid)> {
    matroids()
        .into_iter()
        .filter(|(_, m)| m.to_binary().is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_file_loads() {
        for (stem, _) in FILES {
            assert!(load(stem).is_some(), "{stem}");
        }
        assert!(file("missing").is_none());
    }

    #[test]
    fn distinct_matroids() {
        // triangle, triangle_w123 and figure2a share one graph
        assert_eq!(matroids().len(), FILES.len() - 2);
        assert_eq!(uniform_family(5).len(), 2 + 3 + 4 + 5 + 6);
    }
}
