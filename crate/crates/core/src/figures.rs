//! The weight-2 triangle next to its subdivision and its doubling.

use serde::Serialize;

use crate::construct::build_binary;
use crate::corpus;
use crate::error::Result;
use crate::subset::Subset;

pub const REDUCTION_NOTE: &str =
    "replacing an integer-weight edge by a path (serial) or by parallel \
copies of unit edges changes the entropy of the construction; the weighted rank is not preserved";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureEntry {
    pub label: &'static str,
    pub description: &'static str,
    /// Exact entropy of all edge variables, in bits.
    pub algebraic: String,
    pub brute_force: f64,
}

/// Full-set entropies of the F₂ construction on (a) the weight-2 triangle,
/// (b) its subdivision and (c) its doubling.
pub fn figure2() -> Result<Vec<FigureEntry>> {
    let panels = [
        ("a", "triangle, every edge weight 2", "figure2a"),
        (
            "b",
            "serial: each edge replaced by a path of two unit edges",
            "figure2b",
        ),
        (
            "c",
            "parallel: each edge replaced by two parallel unit edges",
            "figure2c",
        ),
    ];
    panels
        .into_iter()
        .map(|(label, description, stem)| {
            let (m, w) = corpus::load(stem).expect("bundled figure");
            let c = build_binary(&m, &w)?;
            let full = Subset::full(m.len());
            let brute_force = c.brute_force_distribution()?.entropy(full)?;
            Ok(FigureEntry {
                label,
                description,
                algebraic: c.algebraic_entropy(full).to_string(),
                brute_force,
            })
        })
        .collect()
}
