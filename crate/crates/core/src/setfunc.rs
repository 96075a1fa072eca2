//! Set functions on `{1, …, n}` as points of ℝ^(2ⁿ−1), the cone of
//! nonnegative nondecreasing submodular functions, and the extreme-point
//! test for its slice with fixed singleton values.
//!
//! The cone is described by elemental inequalities: `h_{A∪i} ≥ h_A` for
//! nonempty `A`, and `h_{A∪i} + h_{A∪j} ≥ h_{A∪i∪j} + h_A` for `i ≠ j ∉ A`.
//! Every general monotonicity or submodularity inequality is a sum of these,
//! so the polyhedron is the same as with the full list, and the tight-rank
//! vertex test is valid for any inequality description of a polyhedron.

use std::ops::{Add, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{rational_rank, RationalMatrix};
use crate::matroid::{Matroid, WeightFunction};
use crate::subset::{Subset, MAX_GROUND_SET};

/// Largest `n` for which [`gamma_polytope`] builds the constraint list.
pub const MAX_POLYTOPE_N: usize = 5;

/// A point of ℝ^(2ⁿ−1): one value per nonempty subset, ∅ is implicitly 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SetFunctionVector<T> {
    n: usize,
    values: Vec<T>,
}

impl<T> SetFunctionVector<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::SizeBound {
                what: "set function ground set",
                actual: n,
                limit: MAX_GROUND_SET,
            });
        }
        let expected = (1usize << n) - 1;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: values.len(),
            });
        }
        Ok(SetFunctionVector { n, values })
    }

    pub fn from_fn(n: usize, f: impl FnMut(Subset) -> T) -> Self {
        assert!((1..=MAX_GROUND_SET).contains(&n));
        SetFunctionVector {
            n,
            values: Subset::all_nonempty(n).map(f).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Value at a nonempty subset.
    pub fn get(&self, s: Subset) -> &T {
        assert!(!s.is_empty(), "∅ is not a stored coordinate");
        &self.values[s.bits() as usize - 1]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `(subset, value)` pairs in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (Subset::from_bits(i as u32 + 1), v))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SetFunctionVector<U> {
        SetFunctionVector {
            n: self.n,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> SetFunctionVector<T> {
    /// Value at any subset, with `h_∅ = 0`.
    pub fn at(&self, s: Subset) -> T {
        if s.is_empty() {
            T::zero()
        } else {
            self.get(s).clone()
        }
    }
}

impl SetFunctionVector<BigRational> {
    pub fn to_f64(&self) -> SetFunctionVector<f64> {
        self.map(rational_to_f64)
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Comparison `lhs ≥ rhs`, exact for rationals and with slack for floats.
pub trait Dominates: Clone + Zero + Add<Output = Self> + Sub<Output = Self> {
    fn dominates(&self, other: &Self, tolerance: f64) -> bool;
}

impl Dominates for BigRational {
    fn dominates(&self, other: &Self, _tolerance: f64) -> bool {
        self >= other
    }
}

impl Dominates for f64 {
    fn dominates(&self, other: &Self, tolerance: f64) -> bool {
        *self + tolerance >= *other
    }
}

/// Witness `v(A∪i) + v(A∪j) < v(A∪i∪j) + v(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubmodularViolation {
    pub base: Subset,
    pub i: usize,
    pub j: usize,
}

/// Witness `v(A) > v(A∪i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneViolation {
    pub base: Subset,
    pub element: usize,
}

/// Elemental submodularity check; returns the first violation in
/// (A ascending, i ascending, j ascending) order.
pub fn check_submodular<T: Dominates>(
    v: &SetFunctionVector<T>,
) -> std::result::Result<(), SubmodularViolation> {
    check_submodular_with(v, 0.0)
}

pub fn check_submodular_with<T: Dominates>(
    v: &SetFunctionVector<T>,
    tolerance: f64,
) -> std::result::Result<(), SubmodularViolation> {
    let full = Subset::full(v.n());
    for base in full.subsets() {
        let rest: Vec<usize> = full.difference(base).elements().collect();
        for (x, &i) in rest.iter().enumerate() {
            for &j in &rest[x + 1..] {
                let lhs = v.at(base.with(i)) + v.at(base.with(j));
                let rhs = v.at(base.with(i).with(j)) + v.at(base);
                if !lhs.dominates(&rhs, tolerance) {
                    return Err(SubmodularViolation { base, i, j });
                }
            }
        }
    }
    Ok(())
}

/// `v(A) ≤ v(A∪i)` for every `A` (including ∅) and `i ∉ A`.
pub fn check_monotone<T: Dominates>(
    v: &SetFunctionVector<T>,
) -> std::result::Result<(), MonotoneViolation> {
    check_monotone_with(v, 0.0)
}

pub fn check_monotone_with<T: Dominates>(
    v: &SetFunctionVector<T>,
    tolerance: f64,
) -> std::result::Result<(), MonotoneViolation> {
    let full = Subset::full(v.n());
    for base in full.subsets() {
        for element in full.difference(base).elements() {
            if !v.at(base.with(element)).dominates(&v.at(base), tolerance) {
                return Err(MonotoneViolation { base, element });
            }
        }
    }
    Ok(())
}

/// Where a constraint of the cone description comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintOrigin {
    /// `h_A ≥ 0`
    Nonnegative(Subset),
    /// `h_{A∪i} − h_A ≥ 0`, `A` nonempty
    Monotone { base: Subset, element: usize },
    /// `h_{A∪i} + h_{A∪j} − h_{A∪i∪j} − h_A ≥ 0`
    Submodular { base: Subset, i: usize, j: usize },
    /// `h_{a} = w(a)`
    Singleton(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    AtLeast,
    Equal,
}

/// `normal · h ≥ rhs` or `normal · h = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearConstraint {
    pub normal: Vec<BigRational>,
    pub sense: Sense,
    pub rhs: BigRational,
    pub origin: ConstraintOrigin,
}

impl LinearConstraint {
    fn new(
        dim: usize,
        terms: &[(Subset, i64)],
        sense: Sense,
        rhs: BigRational,
        origin: ConstraintOrigin,
    ) -> Self {
        let mut normal = vec![BigRational::zero(); dim];
        for &(s, c) in terms {
            if !s.is_empty() {
                normal[s.bits() as usize - 1] += BigRational::from_integer(c.into());
            }
        }
        debug_assert!(normal.iter().any(|x| !x.is_zero()));
        LinearConstraint {
            normal,
            sense,
            rhs,
            origin,
        }
    }

    /// `normal · v − rhs`.
    pub fn slack(&self, v: &SetFunctionVector<BigRational>) -> BigRational {
        self.normal
            .iter()
            .zip(v.values())
            .filter(|(a, _)| !a.is_zero())
            .fold(-self.rhs.clone(), |acc, (a, x)| acc + a * x)
    }

    pub fn is_satisfied(&self, v: &SetFunctionVector<BigRational>) -> bool {
        let slack = self.slack(v);
        match self.sense {
            Sense::AtLeast => !slack.is_negative(),
            Sense::Equal => slack.is_zero(),
        }
    }

    pub fn is_tight(&self, v: &SetFunctionVector<BigRational>) -> bool {
        self.slack(v).is_zero()
    }
}

/// The cone of nonnegative, nondecreasing, submodular set functions
/// intersected with the affine space `h_{a} = w(a)`.
#[derive(Clone, Debug)]
pub struct ConeDescription {
    n: usize,
    constraints: Vec<LinearConstraint>,
}

impl ConeDescription {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn count(&self, pred: impl Fn(&ConstraintOrigin) -> bool) -> usize {
        self.constraints.iter().filter(|c| pred(&c.origin)).count()
    }

    /// First violated constraint index, if any.
    pub fn first_violation(&self, v: &SetFunctionVector<BigRational>) -> Option<usize> {
        if v.n() != self.n {
            return Some(0);
        }
        self.constraints.iter().position(|c| !c.is_satisfied(v))
    }

    pub fn is_feasible(&self, v: &SetFunctionVector<BigRational>) -> bool {
        self.first_violation(v).is_none()
    }

    fn check_feasible(&self, v: &SetFunctionVector<BigRational>) -> Result<()> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: v.n(),
            });
        }
        match self.first_violation(v) {
            Some(constraint) => Err(Error::Infeasible { constraint }),
            None => Ok(()),
        }
    }
}

/// Builds the constraint list for `n ≤ 5` elements and singleton values `w`.
pub fn gamma_polytope(n: usize, w: &WeightFunction) -> Result<ConeDescription> {
    if n == 0 || n > MAX_POLYTOPE_N {
        return Err(Error::SizeBound {
            what: "polytope ground set",
            actual: n,
            limit: MAX_POLYTOPE_N,
        });
    }
    if w.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    let dim = (1usize << n) - 1;
    let full = Subset::full(n);
    let zero = BigRational::zero;
    let mut constraints = Vec::new();

    for s in Subset::all_nonempty(n) {
        constraints.push(LinearConstraint::new(
            dim,
            &[(s, 1)],
            Sense::AtLeast,
            zero(),
            ConstraintOrigin::Nonnegative(s),
        ));
    }
    for base in Subset::all_nonempty(n) {
        for element in full.difference(base).elements() {
            constraints.push(LinearConstraint::new(
                dim,
                &[(base.with(element), 1), (base, -1)],
                Sense::AtLeast,
                zero(),
                ConstraintOrigin::Monotone { base, element },
            ));
        }
    }
    for base in full.subsets() {
        let rest: Vec<usize> = full.difference(base).elements().collect();
        for (x, &i) in rest.iter().enumerate() {
            for &j in &rest[x + 1..] {
                constraints.push(LinearConstraint::new(
                    dim,
                    &[
                        (base.with(i), 1),
                        (base.with(j), 1),
                        (base.with(i).with(j), -1),
                        (base, -1),
                    ],
                    Sense::AtLeast,
                    zero(),
                    ConstraintOrigin::Submodular { base, i, j },
                ));
            }
        }
    }
    for a in 0..n {
        constraints.push(LinearConstraint::new(
            dim,
            &[(Subset::singleton(a), 1)],
            Sense::Equal,
            w.get(a).clone(),
            ConstraintOrigin::Singleton(a),
        ));
    }
    Ok(ConeDescription { n, constraints })
}

/// Outcome of the tight-constraint rank test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCertificate {
    pub is_vertex: bool,
    /// Indices of constraints with zero slack.
    pub tight: Vec<usize>,
    /// Rank of the stacked tight normals.
    pub rank: usize,
    pub dim: usize,
}

/// A feasible point is a vertex iff the normals of its tight constraints
/// span the whole space.
pub fn is_extreme_point(
    desc: &ConeDescription,
    v: &SetFunctionVector<BigRational>,
) -> Result<VertexCertificate> {
    desc.check_feasible(v)?;
    let tight: Vec<usize> = desc
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.sense == Sense::Equal || c.is_tight(v))
        .map(|(i, _)| i)
        .collect();
    let dim = v.dim();
    let rows = tight
        .iter()
        .map(|&i| desc.constraints[i].normal.clone())
        .collect();
    let rank = rational_rank(&RationalMatrix::from_rows(dim, rows)?);
    Ok(VertexCertificate {
        is_vertex: rank == dim,
        tight,
        rank,
        dim,
    })
}

/// Looks for `α ∈ (0, 1)` with `v = α·a + (1 − α)·b`. `a` and `b` must be
/// distinct feasible points of `desc`.
pub fn refute_convexity(
    desc: &ConeDescription,
    v: &SetFunctionVector<BigRational>,
    a: &SetFunctionVector<BigRational>,
    b: &SetFunctionVector<BigRational>,
) -> Result<Option<BigRational>> {
    desc.check_feasible(a)?;
    desc.check_feasible(b)?;
    if a == b {
        return Err(Error::Precondition("segment endpoints coincide".into()));
    }
    if v.n() != a.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            actual: v.n(),
        });
    }
    // v − b = α (a − b) coordinatewise
    let pivot = a
        .values()
        .iter()
        .zip(b.values())
        .position(|(x, y)| x != y)
        .expect("a ≠ b");
    let alpha =
        (&v.values()[pivot] - &b.values()[pivot]) / (&a.values()[pivot] - &b.values()[pivot]);
    if !alpha.is_positive() || alpha >= BigRational::from_integer(1.into()) {
        return Ok(None);
    }
    let on_segment = v
        .values()
        .iter()
        .zip(a.values().iter().zip(b.values()))
        .all(|(x, (p, q))| *x == &alpha * p + (BigRational::from_integer(1.into()) - &alpha) * q);
    Ok(on_segment.then_some(alpha))
}

/// Feasible points with the singleton values of `w`: the weighted ranks of
/// the loopless uniform matroids U(r, n), r ≥ 1.
pub fn uniform_anchors(w: &WeightFunction) -> Vec<SetFunctionVector<BigRational>> {
    let n = w.len();
    (1..=n)
        .map(|r| {
            Matroid::uniform(r, n)
                .and_then(|m| m.phi_vector(w))
                .expect("valid uniform matroid")
        })
        .collect()
}

/// A segment through `v` found by [`search_decomposition`].
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub a: SetFunctionVector<BigRational>,
    pub b: SetFunctionVector<BigRational>,
    pub alpha: BigRational,
}

/// Randomized falsifier for the vertex property: draws feasible `a` as a
/// random convex combination of two anchors, reflects it through `v` to
/// `b = v + t(v − a)` for random `t ∈ (0, 2]`, and asks [`refute_convexity`]
/// whether `v` lies strictly inside the segment `[a, b]`. Pairs with an
/// infeasible `b` count as samples that found nothing.
pub fn search_decomposition<R: Rng>(
    desc: &ConeDescription,
    v: &SetFunctionVector<BigRational>,
    anchors: &[SetFunctionVector<BigRational>],
    samples: usize,
    rng: &mut R,
) -> Result<Option<Decomposition>> {
    desc.check_feasible(v)?;
    if anchors.is_empty() {
        return Ok(None);
    }
    let one = BigRational::from_integer(1.into());
    for _ in 0..samples {
        let p = &anchors[rng.random_range(0..anchors.len())];
        let q = &anchors[rng.random_range(0..anchors.len())];
        let lambda = BigRational::new(rng.random_range(0..=16).into(), 16.into());
        let a = combine(p, q, &lambda);
        if a == *v || !desc.is_feasible(&a) {
            continue;
        }
        let t = BigRational::new(rng.random_range(1..=32).into(), 16.into());
        // b = (1 + t) v − t a
        let b = combine(v, &a, &(&one + &t));
        if !desc.is_feasible(&b) || a == b {
            continue;
        }
        if let Some(alpha) = refute_convexity(desc, v, &a, &b)? {
            return Ok(Some(Decomposition { a, b, alpha }));
        }
    }
    Ok(None)
}

/// `λ·p + (1 − λ)·q`.
fn combine(
    p: &SetFunctionVector<BigRational>,
    q: &SetFunctionVector<BigRational>,
    lambda: &BigRational,
) -> SetFunctionVector<BigRational> {
    let mu = BigRational::from_integer(1.into()) - lambda;
    SetFunctionVector {
        n: p.n,
        values: p
            .values
            .iter()
            .zip(&q.values)
            .map(|(x, y)| lambda * x + &mu * y)
            .collect(),
    }
}

/// `0 ≤ h_A ≤ Σ_i w(i)` for every coordinate.
pub fn within_box(v: &SetFunctionVector<BigRational>, w: &WeightFunction) -> bool {
    let total = w.total_of(Subset::full(w.len()));
    v.values().iter().all(|x| !x.is_negative() && *x <= total)
}

/// Direct check of `v(A) + v(B) ≥ v(A∪B) + v(A∩B)` over all pairs.
pub fn check_submodular_pairwise<T: Dominates>(v: &SetFunctionVector<T>, tolerance: f64) -> bool {
    let full = Subset::full(v.n());
    full.subsets().all(|a| {
        full.subsets().all(|b| {
            (v.at(a) + v.at(b)).dominates(&(v.at(a.union(b)) + v.at(a.intersection(b))), tolerance)
        })
    })
}
