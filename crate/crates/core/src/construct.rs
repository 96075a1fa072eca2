//! Explicit random variables whose joint entropies reproduce weighted ranks.
//!
//! Binary matroids: with `X` a `w_max × m` matrix of iid fair bits and `v_e`
//! the column of element `e`, element `e` carries
//! `Y_e = (X_1·v_e, …, X_{w_e}·v_e)`. Each coordinate `X_j·v_e` is the linear
//! functional with `v_e` placed in block `j` of the `w_max·m` bit space, so the
//! joint entropy of a set of elements is the F₂ rank of their stacked block
//! rows.
//!
//! Graphic matroids over ℤₖ: with `X_v` iid uniform on ℤₖ per vertex and each
//! edge oriented from its smaller to its larger endpoint, edge `u→v` carries
//! `Y_e = X_v − X_u mod k`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::dist::{EntropyValue, JointDistribution, Variable};
use crate::error::{Error, Result};
use crate::linalg::{gf2_rank, zk_image_size, BitMatrix, BitVector, ZkMatrix};
use crate::matroid::{Graph, Matroid, WeightFunction};
use crate::report::{Report, SubsetCheck};
use crate::setfunc::rational_to_f64;
use crate::subset::Subset;

/// Default cap on the bit-space dimension enumerated by brute force.
pub const DEFAULT_BINARY_CAP_BITS: usize = 16;
/// Default cap on `k^|V|` assignments enumerated by brute force.
pub const DEFAULT_ZK_CAP_ASSIGNMENTS: u64 = 1 << 20;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    Algebraic,
    BruteForce,
    #[default]
    Both,
}

impl Method {
    pub fn algebraic(self) -> bool {
        matches!(self, Method::Algebraic | Method::Both)
    }

    pub fn brute_force(self) -> bool {
        matches!(self, Method::BruteForce | Method::Both)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub tolerance: f64,
    pub method: Method,
    pub binary_cap_bits: usize,
    pub zk_cap_assignments: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: DEFAULT_TOLERANCE,
            method: Method::Both,
            binary_cap_bits: DEFAULT_BINARY_CAP_BITS,
            zk_cap_assignments: DEFAULT_ZK_CAP_ASSIGNMENTS,
        }
    }
}

/// The F₂ construction for a binary matroid with integer weights.
#[derive(Clone, Debug)]
pub struct BinaryConstruction {
    matrix: BitMatrix,
    weights: Vec<u64>,
    w_max: u64,
    blocks: Vec<Vec<BitVector>>,
    cap_bits: usize,
    distribution: OnceLock<JointDistribution>,
}

/// Assembles the block coefficient rows for every element. Graphic and
/// uniform matroids are accepted when they have a binary representation.
pub fn build_binary(m: &Matroid, w: &WeightFunction) -> Result<BinaryConstruction> {
    if w.len() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            actual: w.len(),
        });
    }
    let weights = w.to_integers().map_err(|element| Error::NonIntegerWeight {
        element: element + 1,
    })?;
    let matrix = m.to_binary()?;
    let rows = matrix.rows();
    let w_max = weights.iter().copied().max().unwrap_or(0);
    let dim = w_max as usize * rows;
    let blocks = (0..matrix.cols())
        .map(|e| {
            let column = matrix.column(e);
            (0..weights[e] as usize)
                .map(|j| {
                    let mut row = BitVector::zeros(dim);
                    for r in 0..rows {
                        if column.get(r) {
                            row.set(j * rows + r, true);
                        }
                    }
                    row
                })
                .collect()
        })
        .collect();
    Ok(BinaryConstruction {
        matrix,
        weights,
        w_max,
        blocks,
        cap_bits: DEFAULT_BINARY_CAP_BITS,
        distribution: OnceLock::new(),
    })
}

impl BinaryConstruction {
    pub fn with_brute_force_cap(mut self, bits: usize) -> Self {
        self.cap_bits = bits;
        self.distribution = OnceLock::new();
        self
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::Binary(self.matrix.clone())
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn w_max(&self) -> u64 {
        self.w_max
    }

    /// `w_max · m`.
    pub fn bit_space_dim(&self) -> usize {
        self.w_max as usize * self.matrix.rows()
    }

    /// Coefficient rows of element `e` (0-based), one per coordinate of `Y_e`.
    pub fn block_rows(&self, e: usize) -> &[BitVector] {
        &self.blocks[e]
    }

    /// Joint entropy of `{Y_e : e ∈ s}` in bits, as the rank of the stacked rows.
    pub fn algebraic_entropy(&self, s: Subset) -> EntropyValue {
        let rows: Vec<BitVector> = s
            .elements()
            .flat_map(|e| self.blocks[e].iter().cloned())
            .collect();
        let stacked =
            BitMatrix::from_rows(self.bit_space_dim(), rows).expect("rows share the bit space");
        EntropyValue::bits(gf2_rank(&stacked) as u64)
    }

    pub fn brute_force_within_cap(&self) -> bool {
        self.bit_space_dim() <= self.cap_bits
    }

    /// Exact joint pmf of `(Y_1, …, Y_n)` over all `2^dim` equally likely
    /// bit assignments. Cached after the first call.
    pub fn brute_force_distribution(&self) -> Result<&JointDistribution> {
        if let Some(d) = self.distribution.get() {
            return Ok(d);
        }
        let dim = self.bit_space_dim();
        if !self.brute_force_within_cap() {
            return Err(Error::SizeBound {
                what: "binary construction bit space",
                actual: dim,
                limit: self.cap_bits,
            });
        }
        let masks: Vec<Vec<u64>> = self
            .blocks
            .iter()
            .map(|rows| {
                rows.iter()
                    .map(|r| {
                        (0..dim)
                            .filter(|&i| r.get(i))
                            .fold(0u64, |acc, i| acc | 1 << i)
                    })
                    .collect()
            })
            .collect();
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        for x in 0u64..1 << dim {
            let outcome = masks
                .iter()
                .map(|rows| {
                    rows.iter()
                        .enumerate()
                        .fold(0u32, |acc, (j, &r)| acc | (((r & x).count_ones() & 1) << j))
                })
                .collect();
            *counts.entry(outcome).or_insert(0) += 1;
        }
        let variables = self
            .weights
            .iter()
            .enumerate()
            .map(|(e, &w)| Variable::new(format!("Y{}", e + 1), 1 << w))
            .collect();
        let d = JointDistribution::from_counts(variables, counts)?;
        Ok(self.distribution.get_or_init(|| d))
    }
}

/// Entropic-realization check: for every nonempty subset, the construction's
/// entropy equals the weighted rank.
pub fn verify_binary_entropic(
    m: &Matroid,
    w: &WeightFunction,
    opts: &VerifyOptions,
) -> Result<Report> {
    let c = build_binary(m, w)?.with_brute_force_cap(opts.binary_cap_bits);
    let mut report = Report::new("entropic");
    report.detail("bit_space_dim", c.bit_space_dim());
    let dist = if opts.method.brute_force() {
        if c.brute_force_within_cap() {
            Some(c.brute_force_distribution()?)
        } else {
            report.warnings.push(format!(
                "bit space dimension {} exceeds brute-force cap {}; algebraic only",
                c.bit_space_dim(),
                opts.binary_cap_bits
            ));
            None
        }
    } else {
        None
    };
    let run_algebraic = opts.method.algebraic() || dist.is_none();
    for s in Subset::all_nonempty(m.len()) {
        let phi = m.weighted_rank(w, s);
        let mut pass = true;
        let algebraic = run_algebraic.then(|| {
            let h = c.algebraic_entropy(s);
            pass &= h.coeff_in_base(2).as_ref() == Some(&phi);
            h.to_string()
        });
        let brute_force = dist.map(|d| {
            let h = d.entropy(s).expect("nonempty subset");
            pass &= (h - rational_to_f64(&phi)).abs() <= opts.tolerance;
            h
        });
        report.push(SubsetCheck {
            subset: s.to_hex(),
            expected: phi.to_string(),
            algebraic,
            brute_force,
            pass,
        });
    }
    Ok(report)
}

/// Outcome of deleting one element from a circuit inside a larger set.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitDeletionCheck {
    /// 0-based element removed: the lightest of the circuit.
    pub dropped: usize,
    pub algebraic_with: EntropyValue,
    pub algebraic_without: EntropyValue,
    pub brute_force: Option<(f64, f64)>,
    pub pass: bool,
}

/// Removing the lightest element of a circuit inside `superset` leaves the
/// joint entropy of `superset` unchanged.
pub fn verify_circuit_deletion(
    c: &BinaryConstruction,
    circuit: Subset,
    superset: Subset,
    tolerance: f64,
) -> Result<CircuitDeletionCheck> {
    let m = c.matroid();
    circuit.check_within(c.len())?;
    superset.check_within(c.len())?;
    if !m.is_circuit(circuit) {
        return Err(Error::NotACircuit {
            mask: circuit.bits(),
        });
    }
    if !circuit.is_subset_of(superset) {
        return Err(Error::Precondition(format!(
            "circuit {circuit} is not contained in {superset}"
        )));
    }
    let w = WeightFunction::from_integers(&c.weights);
    let dropped = w.lightest(circuit).expect("circuits are nonempty");
    let rest = superset.without(dropped);
    let algebraic_with = c.algebraic_entropy(superset);
    let algebraic_without = c.algebraic_entropy(rest);
    let mut pass = algebraic_with == algebraic_without;
    let brute_force = if c.brute_force_within_cap() {
        let d = c.brute_force_distribution()?;
        let with = d.entropy(superset)?;
        let without = if rest.is_empty() {
            0.0
        } else {
            d.entropy(rest)?
        };
        pass &= (with - without).abs() <= tolerance;
        Some((with, without))
    } else {
        None
    };
    Ok(CircuitDeletionCheck {
        dropped,
        algebraic_with,
        algebraic_without,
        brute_force,
        pass,
    })
}

/// Outcome of the entropy and independence checks on an independent set.
#[derive(Clone, Debug, PartialEq)]
pub struct IndependentSetCheck {
    pub entropy: EntropyValue,
    pub weight_sum: u64,
    /// `None` when the bit space is beyond the brute-force cap.
    pub factorizes: Option<bool>,
    pub pass: bool,
}

/// For an independent set: joint entropy equals the weight sum, and the
/// joint pmf is exactly the product of the marginals.
pub fn verify_independent_set(c: &BinaryConstruction, ind: Subset) -> Result<IndependentSetCheck> {
    ind.check_within(c.len())?;
    if !c.matroid().is_independent(ind) {
        return Err(Error::NotIndependent { mask: ind.bits() });
    }
    let entropy = c.algebraic_entropy(ind);
    let weight_sum: u64 = ind.elements().map(|e| c.weights[e]).sum();
    let mut pass = entropy == EntropyValue::bits(weight_sum);
    let factorizes = if c.brute_force_within_cap() && !ind.is_empty() {
        let f = c.brute_force_distribution()?.factorizes(ind)?;
        pass &= f;
        Some(f)
    } else {
        None
    };
    Ok(IndependentSetCheck {
        entropy,
        weight_sum,
        factorizes,
        pass,
    })
}

/// The ℤₖ construction on a graph.
#[derive(Clone, Debug)]
pub struct GraphicZkConstruction {
    graph: Graph,
    k: u64,
    matrix: ZkMatrix,
}

/// Orients each edge from its smaller to its larger endpoint and builds the
/// signed incidence matrix over ℤₖ (rows = vertices, columns = edges).
pub fn build_graphic_zk(graph: &Graph, k: u64) -> Result<GraphicZkConstruction> {
    if k < 2 {
        return Err(Error::Precondition(format!("alphabet size k = {k} < 2")));
    }
    let mut matrix = ZkMatrix::zeros(k, graph.vertices(), graph.edges().len())?;
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        if a != b {
            let (tail, head) = (a.min(b), a.max(b));
            matrix.set(head, e, 1);
            matrix.set(tail, e, -1);
        }
    }
    Ok(GraphicZkConstruction {
        graph: graph.clone(),
        k,
        matrix,
    })
}

impl GraphicZkConstruction {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matrix(&self) -> &ZkMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.graph.edges().len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.edges().is_empty()
    }

    /// `k^|V|`, saturating.
    pub fn assignment_count(&self) -> u64 {
        u32::try_from(self.graph.vertices())
            .ok()
            .and_then(|v| self.k.checked_pow(v))
            .unwrap_or(u64::MAX)
    }

    /// Joint entropy of the selected edge variables: log₂ of the image size
    /// of `X ↦ X·A_s` over ℤₖ.
    pub fn algebraic_entropy(&self, s: Subset) -> EntropyValue {
        EntropyValue::log2_of(zk_image_size(&self.matrix.select_columns(s.elements())))
    }

    /// Exact joint pmf of the edge variables over all `k^|V|` vertex assignments.
    pub fn brute_force_distribution(&self, cap_assignments: u64) -> Result<JointDistribution> {
        let total = self.assignment_count();
        if total > cap_assignments {
            return Err(Error::SizeBound {
                what: "ℤₖ construction assignments",
                actual: total.to_usize().unwrap_or(usize::MAX),
                limit: cap_assignments.to_usize().unwrap_or(usize::MAX),
            });
        }
        let nv = self.graph.vertices();
        let mut x = vec![0u64; nv];
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        for _ in 0..total {
            let y = self
                .matrix
                .left_mul(&x)
                .into_iter()
                .map(|v| v as u32)
                .collect();
            *counts.entry(y).or_insert(0) += 1;
            // odometer increment
            for digit in x.iter_mut() {
                *digit += 1;
                if *digit < self.k {
                    break;
                }
                *digit = 0;
            }
        }
        let variables = (0..self.len())
            .map(|e| Variable::new(format!("Y{}", e + 1), self.k as u32))
            .collect();
        JointDistribution::from_counts(variables, counts)
    }
}

/// For every nonempty edge subset: the entropy is `rank · log₂k`, exactly on
/// the algebraic path and within tolerance by brute force.
pub fn verify_graphic_zk(graph: &Graph, k: u64, opts: &VerifyOptions) -> Result<Report> {
    let c = build_graphic_zk(graph, k)?;
    let m = Matroid::graphic(graph.clone())?;
    let mut report = Report::new("zk");
    report.detail("k", k);
    let dist = if opts.method.brute_force() {
        if c.assignment_count() <= opts.zk_cap_assignments {
            Some(c.brute_force_distribution(opts.zk_cap_assignments)?)
        } else {
            report.warnings.push(format!(
                "k^|V| = {} exceeds brute-force cap {}; algebraic only",
                c.assignment_count(),
                opts.zk_cap_assignments
            ));
            None
        }
    } else {
        None
    };
    let run_algebraic = opts.method.algebraic() || dist.is_none();
    let log_k = (k as f64).log2();
    for s in Subset::all_nonempty(m.len()) {
        let rank = m.rank(s);
        let expected = EntropyValue::new(BigRational::from_integer(rank.into()), k)?;
        let mut pass = true;
        let algebraic = run_algebraic.then(|| {
            let h = c.algebraic_entropy(s);
            pass &= h.coeff_in_base(k) == Some(BigRational::from_integer(rank.into()));
            h.to_string()
        });
        let brute_force = dist.as_ref().map(|d| {
            let h = d.entropy(s).expect("nonempty subset");
            pass &= (h - rank as f64 * log_k).abs() <= opts.tolerance;
            h
        });
        report.push(SubsetCheck {
            subset: s.to_hex(),
            expected: expected.to_string(),
            algebraic,
            brute_force,
            pass,
        });
    }
    Ok(report)
}

/// Outcome of [`verify_circuit_uniformity`].
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitUniformity {
    pub pass: bool,
    /// Common support size, once established.
    pub k: Option<u64>,
    pub failed_step: Option<String>,
}

/// Given variables indexed by a circuit of size `m ≥ 2` whose entropy profile
/// is that of the constant weighted rank (`H(I) = |I|·w0` for proper subsets,
/// `H(all) = (m − 1)·w0`), checks the consequences: each variable is
/// determined by the others, every marginal is uniform on its support, all
/// supports share one size `k`, and `w0 = log₂k`.
///
/// A profile mismatch is reported as [`Error::Precondition`].
pub fn verify_circuit_uniformity(
    d: &JointDistribution,
    w0: f64,
    tolerance: f64,
) -> Result<CircuitUniformity> {
    let m = d.len();
    if m < 2 {
        return Err(Error::Precondition(format!("circuit of size {m} < 2")));
    }
    let full = Subset::full(m);
    for s in Subset::all_nonempty(m) {
        let expected = if s == full {
            (m - 1) as f64 * w0
        } else {
            s.len() as f64 * w0
        };
        let h = d.entropy(s)?;
        if (h - expected).abs() > tolerance {
            return Err(Error::Precondition(format!(
                "H{s} = {h}, expected {expected} for the circuit profile"
            )));
        }
    }
    let fail = |step: String, k: Option<u64>| {
        Ok(CircuitUniformity {
            pass: false,
            k,
            failed_step: Some(step),
        })
    };
    for j in 0..m {
        let h = d.conditional_entropy(Subset::singleton(j), full.without(j))?;
        if h > tolerance {
            return fail(format!("(a) H(X{} | rest) = {h} > 0", j + 1), None);
        }
    }
    let mut k = None;
    for j in 0..m {
        let u = d.is_uniform_on_support(j)?;
        if !u.uniform {
            return fail(
                format!("(b) X{} is not uniform on its support", j + 1),
                None,
            );
        }
        match k {
            None => k = Some(u.support as u64),
            Some(size) if size != u.support as u64 => {
                return fail(
                    format!(
                        "(c) support of X{} has size {}, expected {size}",
                        j + 1,
                        u.support
                    ),
                    None,
                )
            }
            _ => {}
        }
    }
    let k = k.expect("m ≥ 2");
    if (w0 - (k as f64).log2()).abs() > tolerance {
        return fail(format!("(d) w0 = {w0} differs from log2({k})"), Some(k));
    }
    Ok(CircuitUniformity {
        pass: true,
        k: Some(k),
        failed_step: None,
    })
}
