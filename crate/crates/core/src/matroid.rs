//! Matroids given by a binary matrix, a graph or uniform parameters, with
//! independence, rank and circuit oracles and the weighted rank φ_w.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{gf2_rank, BitMatrix, BitVector, Gf2Basis};
use crate::setfunc::SetFunctionVector;
use crate::subset::{Subset, MAX_GROUND_SET};

/// An undirected multigraph; self-loops and parallel edges are allowed.
/// Vertices are `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::InvalidMatroid(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{vertices}"
            )));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edges in a spanning forest of the selected edges.
    pub fn forest_size(&self, s: Subset) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        s.elements()
            .filter(|&e| {
                let (u, v) = self.edges[e];
                uf.union(u, v)
            })
            .count()
    }

    /// Reduced vertex-edge incidence matrix over F₂: one row per vertex,
    /// minus the first vertex of every connected component.
    pub fn reduced_incidence(&self) -> BitMatrix {
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut seen_roots = vec![false; self.vertices];
        let mut kept = Vec::new();
        for v in 0..self.vertices {
            let root = uf.find(v);
            if seen_roots[root] {
                kept.push(v);
            } else {
                seen_roots[root] = true;
            }
        }
        let mut m = BitMatrix::zeros(kept.len(), self.edges.len());
        for (row, &vertex) in kept.iter().enumerate() {
            for (col, &(a, b)) in self.edges.iter().enumerate() {
                if a != b && (a == vertex || b == vertex) {
                    m.set(row, col, true);
                }
            }
        }
        m
    }
}

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `a` and `b` were in different components.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matroid {
    /// Column matroid of a matrix over F₂; element `i` is column `i`.
    Binary(BitMatrix),
    /// Cycle matroid; element `i` is edge `i`.
    Graphic(Graph),
    /// U(rank, size): every set of at most `rank` elements is independent.
    Uniform { rank: usize, size: usize },
}

impl Matroid {
    pub fn binary(matrix: BitMatrix) -> Result<Self> {
        let m = Matroid::Binary(matrix);
        m.check_size()?;
        Ok(m)
    }

    pub fn graphic(graph: Graph) -> Result<Self> {
        let m = Matroid::Graphic(graph);
        m.check_size()?;
        Ok(m)
    }

    pub fn uniform(rank: usize, size: usize) -> Result<Self> {
        if rank > size {
            return Err(Error::InvalidMatroid(format!(
                "uniform rank {rank} exceeds size {size}"
            )));
        }
        let m = Matroid::Uniform { rank, size };
        m.check_size()?;
        Ok(m)
    }

    fn check_size(&self) -> Result<()> {
        let n = self.len();
        if n == 0 {
            return Err(Error::InvalidMatroid("empty ground set".into()));
        }
        if n > MAX_GROUND_SET {
            return Err(Error::SizeBound {
                what: "ground set",
                actual: n,
                limit: MAX_GROUND_SET,
            });
        }
        Ok(())
    }

    /// Ground set size.
    pub fn len(&self) -> usize {
        match self {
            Matroid::Binary(m) => m.cols(),
            Matroid::Graphic(g) => g.edges.len(),
            Matroid::Uniform { size, .. } => *size,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn rank(&self, s: Subset) -> usize {
        debug_assert!(s.is_subset_of(self.ground_set()));
        match self {
            Matroid::Binary(m) => gf2_rank(&m.select_columns(s.elements()).transpose()),
            Matroid::Graphic(g) => g.forest_size(s),
            Matroid::Uniform { rank, .. } => s.len().min(*rank),
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        match self {
            Matroid::Uniform { rank, .. } => s.len() <= *rank,
            _ => self.rank(s) == s.len(),
        }
    }

    /// Finds a circuit inside the dependent set `s` by dropping elements, in
    /// ascending order, whenever the remainder stays dependent.
    pub fn find_circuit_in(&self, s: Subset) -> Option<Subset> {
        if self.is_independent(s) {
            return None;
        }
        let mut c = s;
        for e in s.elements() {
            let smaller = c.without(e);
            if !self.is_independent(smaller) {
                c = smaller;
            }
        }
        Some(c)
    }

    pub fn is_circuit(&self, s: Subset) -> bool {
        !s.is_empty()
            && !self.is_independent(s)
            && s.elements().all(|e| self.is_independent(s.without(e)))
    }

    /// All circuits, sorted ascending by bitmask.
    pub fn circuits(&self) -> Result<CircuitList> {
        let n = self.len();
        if n > MAX_GROUND_SET {
            return Err(Error::SizeBound {
                what: "ground set",
                actual: n,
                limit: MAX_GROUND_SET,
            });
        }
        let mut by_size: Vec<Vec<Subset>> = vec![Vec::new(); n + 1];
        for s in Subset::all_nonempty(n) {
            by_size[s.len()].push(s);
        }
        let mut found: Vec<Subset> = Vec::new();
        for layer in by_size {
            let mut fresh = Vec::new();
            for s in layer {
                if found.iter().any(|c| c.is_subset_of(s)) {
                    continue;
                }
                if !self.is_independent(s) {
                    fresh.push(s);
                }
            }
            found.extend(fresh);
        }
        found.sort();
        Ok(CircuitList(found))
    }

    /// Binary representation, if the matroid has one that is recognized
    /// directly from its description.
    pub fn to_binary(&self) -> Result<BitMatrix> {
        match self {
            Matroid::Binary(m) => Ok(m.clone()),
            Matroid::Graphic(g) => Ok(g.reduced_incidence()),
            &Matroid::Uniform { rank, size } => {
                if rank == 0 {
                    Ok(BitMatrix::zeros(1, size))
                } else if rank == size {
                    let mut m = BitMatrix::zeros(size, size);
                    (0..size).for_each(|i| m.set(i, i, true));
                    Ok(m)
                } else if rank == 1 {
                    BitMatrix::from_rows(size, vec![BitVector::from_bools(&vec![true; size])])
                } else if rank + 1 == size {
                    let mut m = BitMatrix::zeros(rank, size);
                    for i in 0..rank {
                        m.set(i, i, true);
                        m.set(i, size - 1, true);
                    }
                    Ok(m)
                } else {
                    Err(Error::NotBinary)
                }
            }
        }
    }

    /// φ_w(s): the largest total weight of an independent subset of `s`.
    pub fn weighted_rank(&self, w: &WeightFunction, s: Subset) -> BigRational {
        let best = self.max_weight_independent(w, s);
        w.total_of(best)
    }

    /// Greedy maximum-weight independent subset of `s`; heavier elements are
    /// tried first, ties by ascending element index.
    pub fn max_weight_independent(&self, w: &WeightFunction, s: Subset) -> Subset {
        assert_eq!(w.len(), self.len(), "weight function size mismatch");
        let order = w.descending_order(s);
        match self {
            Matroid::Binary(m) => {
                let mut basis = Gf2Basis::new();
                let mut chosen = Subset::EMPTY;
                for e in order {
                    if basis.insert(m.column(e)) {
                        chosen = chosen.with(e);
                    }
                }
                chosen
            }
            Matroid::Graphic(g) => {
                let mut uf = UnionFind::new(g.vertices);
                order
                    .into_iter()
                    .filter(|&e| uf.union(g.edges[e].0, g.edges[e].1))
                    .fold(Subset::EMPTY, Subset::with)
            }
            Matroid::Uniform { rank, .. } => order
                .into_iter()
                .take(*rank)
                .fold(Subset::EMPTY, Subset::with),
        }
    }

    /// Maximum-weight base by repeated circuit deletion: while the surviving
    /// set has a circuit, remove its lightest element. Among equally light
    /// elements the largest index goes first, so the result is the same base
    /// the greedy order produces.
    pub fn reverse_delete_base(&self, w: &WeightFunction) -> Subset {
        let mut surviving = self.ground_set();
        while let Some(c) = self.find_circuit_in(surviving) {
            let lightest = w.lightest_last(c).expect("circuits are nonempty");
            surviving = surviving.without(lightest);
        }
        surviving
    }

    /// φ_w over every nonempty subset.
    pub fn phi_vector(&self, w: &WeightFunction) -> Result<SetFunctionVector<BigRational>> {
        let n = self.len();
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: w.len(),
            });
        }
        Ok(SetFunctionVector::from_fn(n, |s| self.weighted_rank(w, s)))
    }

    pub fn rank_vector(&self) -> SetFunctionVector<BigRational> {
        SetFunctionVector::from_fn(self.len(), |s| {
            BigRational::from_integer(self.rank(s).into())
        })
    }
}

/// Circuits of a matroid, ascending by bitmask, no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitList(Vec<Subset>);

impl CircuitList {
    pub fn as_slice(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.0.iter()
    }
}

impl<'a> IntoIterator for &'a CircuitList {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Nonnegative exact weight per ground-set element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction(Vec<BigRational>);

impl WeightFunction {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(Signed::is_negative) {
            return Err(Error::InvalidWeights(format!(
                "weight of element {} is negative",
                i + 1
            )));
        }
        Ok(WeightFunction(weights))
    }

    pub fn from_integers(weights: &[u64]) -> Self {
        WeightFunction(
            weights
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn unit(n: usize) -> Self {
        WeightFunction::from_integers(&vec![1; n])
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|x| x.is_one())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, element: usize) -> &BigRational {
        &self.0[element]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn total_of(&self, s: Subset) -> BigRational {
        s.elements()
            .fold(BigRational::zero(), |acc, e| acc + &self.0[e])
    }

    /// The weights as integers, or the first element (0-based) that is not integral.
    pub fn to_integers(&self) -> std::result::Result<Vec<u64>, usize> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if x.is_integer() {
                    x.to_integer().to_u64().ok_or(i)
                } else {
                    Err(i)
                }
            })
            .collect()
    }

    /// Elements of `s` by descending weight, ties by ascending index.
    pub fn descending_order(&self, s: Subset) -> Vec<usize> {
        let mut order: Vec<usize> = s.elements().collect();
        order.sort_by(|&a, &b| match self.0[b].cmp(&self.0[a]) {
            Ordering::Equal => a.cmp(&b),
            other => other,
        });
        order
    }

    /// Minimum-weight element of `s`, ties by smallest index.
    pub fn lightest(&self, s: Subset) -> Option<usize> {
        s.elements()
            .min_by(|&a, &b| self.0[a].cmp(&self.0[b]).then(a.cmp(&b)))
    }

    /// Minimum-weight element of `s`, ties by largest index.
    pub fn lightest_last(&self, s: Subset) -> Option<usize> {
        s.elements()
            .min_by(|&a, &b| self.0[a].cmp(&self.0[b]).then(b.cmp(&a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elements(elems.iter().map(|e| e - 1))
    }

    #[test]
    fn independence_examples() {
        let tri = corpus::triangle();
        let fano = corpus::fano();
        assert!(tri.is_independent(Subset::EMPTY));
        assert!(fano.is_independent(Subset::EMPTY));
        assert!(!tri.is_independent(tri.ground_set()));
        // columns 001, 010, 011 are elements 1, 2, 3 in the corpus ordering
        assert!(!fano.is_independent(s(&[1, 2, 3])));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(corpus::triangle().rank(Subset::full(3)), 2);
        let u24 = Matroid::uniform(2, 4).unwrap();
        for t in Subset::all_nonempty(4).filter(|t| t.len() == 3) {
            assert_eq!(u24.rank(t), 2);
        }
        assert_eq!(corpus::fano().rank(Subset::full(7)), 3);
    }

    #[test]
    fn circuit_examples() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(u12.circuits().unwrap().as_slice(), &[Subset::full(2)]);
        assert_eq!(
            corpus::triangle().circuits().unwrap().as_slice(),
            &[Subset::full(3)]
        );
        let fano = corpus::fano().circuits().unwrap();
        assert_eq!(fano.iter().filter(|c| c.len() == 3).count(), 7);
        assert_eq!(fano.iter().filter(|c| c.len() == 4).count(), 7);
        assert_eq!(fano.len(), 14);
    }

    #[test]
    fn weighted_rank_examples() {
        let tri = corpus::triangle();
        assert_eq!(
            tri.weighted_rank(&WeightFunction::unit(3), Subset::EMPTY),
            q(0)
        );
        let w222 = WeightFunction::from_integers(&[2, 2, 2]);
        assert_eq!(tri.weighted_rank(&w222, Subset::full(3)), q(4));
        let w123 = WeightFunction::from_integers(&[1, 2, 3]);
        assert_eq!(tri.weighted_rank(&w123, Subset::full(3)), q(5));
    }

    #[test]
    fn reverse_delete_examples() {
        let free = Matroid::uniform(3, 3).unwrap();
        assert_eq!(
            free.reverse_delete_base(&WeightFunction::unit(3)),
            Subset::full(3)
        );
        let tri = corpus::triangle();
        let w123 = WeightFunction::from_integers(&[1, 2, 3]);
        assert_eq!(tri.reverse_delete_base(&w123), s(&[2, 3]));
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(
            u12.reverse_delete_base(&WeightFunction::from_integers(&[5, 5])),
            s(&[1])
        );
    }

    #[test]
    fn phi_vector_examples() {
        let u11 = Matroid::uniform(1, 1).unwrap();
        let v = u11.phi_vector(&WeightFunction::unit(1)).unwrap();
        assert_eq!(v.values(), &[q(1)]);

        let v = corpus::triangle()
            .phi_vector(&WeightFunction::unit(3))
            .unwrap();
        for t in Subset::all_nonempty(3) {
            let expected = if t.len() == 1 { 1 } else { 2 };
            assert_eq!(v.get(t), &q(expected), "{t}");
        }

        let c = corpus::figure2_parallel();
        let v = c.phi_vector(&WeightFunction::unit(6)).unwrap();
        assert_eq!(v.get(Subset::full(6)), &q(2));
    }

    #[test]
    fn graphic_self_loop_is_dependent() {
        let g = Graph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        let m = Matroid::graphic(g).unwrap();
        assert!(!m.is_independent(s(&[1])));
        assert_eq!(m.circuits().unwrap().as_slice(), &[s(&[1])]);
        let w = WeightFunction::from_integers(&[7, 1]);
        assert_eq!(m.weighted_rank(&w, Subset::full(2)), q(1));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Matroid::uniform(3, 2).is_err());
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
        assert!(WeightFunction::new(vec![q(-1)]).is_err());
        assert!(Matroid::uniform(0, 21).is_err());
    }

    #[test]
    fn uniform_binary_representations() {
        for (r, n) in [(0, 3), (1, 4), (3, 4), (4, 4), (2, 3)] {
            let u = Matroid::uniform(r, n).unwrap();
            let b = Matroid::binary(u.to_binary().unwrap()).unwrap();
            for t in Subset::all_nonempty(n) {
                assert_eq!(u.rank(t), b.rank(t), "U({r},{n}) {t}");
            }
        }
        assert_eq!(
            Matroid::uniform(2, 4).unwrap().to_binary(),
            Err(Error::NotBinary)
        );
    }

    #[test]
    fn graph_binary_representation_matches_rank() {
        for m in [
            corpus::k4(),
            corpus::figure2_serial(),
            corpus::figure2_parallel(),
        ] {
            let b = Matroid::binary(m.to_binary().unwrap()).unwrap();
            for t in Subset::all_nonempty(m.len()) {
                assert_eq!(m.rank(t), b.rank(t));
            }
        }
    }

    #[test]
    fn integer_weights() {
        let w = WeightFunction::new(vec![q(2), BigRational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(w.to_integers(), Err(1));
        assert_eq!(
            WeightFunction::from_integers(&[0, 3]).to_integers(),
            Ok(vec![0, 3])
        );
    }
}
