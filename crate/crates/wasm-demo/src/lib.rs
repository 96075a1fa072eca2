//! Browser bindings. Every operation takes a matroid file as JSON text and
//! returns a JSON document; failures come back as `{"error": "..."}` so the
//! page never has to catch exceptions. The plain functions are the same
//! operations without the JS glue and are what the native tests call.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use wrank::construct::{build_binary, build_graphic_zk, DEFAULT_ZK_CAP_ASSIGNMENTS};
use wrank::io::{float_vector_json, rational_vector_json, set_function_json, MatroidFile};
use wrank::setfunc::{gamma_polytope, is_extreme_point, MAX_POLYTOPE_N};
use wrank::{corpus, EntropyValue, Error, Matroid, SetFunctionVector, WeightFunction};

fn parse(text: &str) -> Result<(Matroid, WeightFunction), Error> {
    MatroidFile::from_json(text)?.parts()
}

fn respond(result: Result<Value, Error>) -> String {
    let value = result.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
}

/// Weighted rank of every nonempty subset, next to the exact entropy of the
/// F₂ construction when the matroid is binary with integer weights.
pub fn weighted_rank_vector(matroid_json: &str) -> String {
    respond(parse(matroid_json).and_then(|(m, w)| {
        let mut out = json!({
            "n": m.len(),
            "rank": m.rank(m.ground_set()),
            "phi": rational_vector_json(&m.phi_vector(&w)?),
        });
        match build_binary(&m, &w) {
            Ok(c) => {
                let exact = SetFunctionVector::from_fn(m.len(), |s| c.algebraic_entropy(s));
                out["entropy"] = set_function_json(&exact, |h| Value::String(h.to_string()));
                out["bit_space_dim"] = c.bit_space_dim().into();
            }
            Err(e) => out["entropy_unavailable"] = e.to_string().into(),
        }
        Ok(out)
    }))
}

/// Tight-constraint certificate for the weighted rank as a point of the
/// polymatroid cone with the file's singleton values.
pub fn vertex_check(matroid_json: &str) -> String {
    respond(parse(matroid_json).and_then(|(m, w)| {
        if m.len() > MAX_POLYTOPE_N {
            return Err(Error::SizeBound {
                what: "ground set for the vertex check",
                actual: m.len(),
                limit: MAX_POLYTOPE_N,
            });
        }
        let phi = m.phi_vector(&w)?;
        let desc = gamma_polytope(m.len(), &w)?;
        Ok(match is_extreme_point(&desc, &phi) {
            Ok(cert) => json!({
                "feasible": true,
                "vertex": cert.is_vertex,
                "tight_constraints": cert.tight.len(),
                "tight_rank": cert.rank,
                "dimension": cert.dim,
                "constraints": desc.constraints().len(),
            }),
            Err(Error::Infeasible { constraint }) => json!({
                "feasible": false,
                "vertex": false,
                "violated_constraint": constraint,
            }),
            Err(e) => return Err(e),
        })
    }))
}

/// Entropies of the Zk difference construction on a graphic matroid, exact
/// and by enumeration when `k^|V|` is small enough.
pub fn zk_entropy_vector(matroid_json: &str, k: u64) -> String {
    respond(parse(matroid_json).and_then(|(m, _)| {
        let Matroid::Graphic(g) = &m else {
            return Err(Error::Precondition(
                "the Zk construction needs a graphic matroid".into(),
            ));
        };
        let c = build_graphic_zk(g, k)?;
        let n = m.len();
        let exact = SetFunctionVector::from_fn(n, |s| c.algebraic_entropy(s));
        let expected =
            SetFunctionVector::from_fn(n, |s| EntropyValue::log2_multiple(m.rank(s) as u64, k));
        let mut out = json!({
            "k": k,
            "entropy": set_function_json(&exact, |h| Value::String(h.to_string())),
            "rank_times_log2k": set_function_json(&expected, |h| match h {
                Ok(v) => Value::String(v.to_string()),
                Err(_) => Value::Null,
            }),
        });
        if c.assignment_count() <= DEFAULT_ZK_CAP_ASSIGNMENTS {
            let d = c.brute_force_distribution(DEFAULT_ZK_CAP_ASSIGNMENTS)?;
            out["brute_force"] = float_vector_json(&d.entropy_vector()?);
        }
        Ok(out)
    }))
}

/// `{stem: file text}` for every bundled matroid.
pub fn corpus_files() -> String {
    let map: serde_json::Map<String, Value> = corpus::FILES
        .iter()
        .map(|(stem, text)| (stem.to_string(), Value::String(text.to_string())))
        .collect();
    respond(Ok(Value::Object(map)))
}

#[wasm_bindgen(js_name = weightedRankVector)]
pub fn weighted_rank_vector_js(matroid_json: &str) -> String {
    weighted_rank_vector(matroid_json)
}

#[wasm_bindgen(js_name = vertexCheck)]
pub fn vertex_check_js(matroid_json: &str) -> String {
    vertex_check(matroid_json)
}

#[wasm_bindgen(js_name = zkEntropyVector)]
pub fn zk_entropy_vector_js(matroid_json: &str, k: u32) -> String {
    zk_entropy_vector(matroid_json, u64::from(k))
}

#[wasm_bindgen(js_name = corpusFiles)]
pub fn corpus_files_js() -> String {
    corpus_files()
}
