use serde::Serialize;

/// One subset's expected value against what each oracle produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetCheck {
    pub subset: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebraic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<f64>,
    pub pass: bool,
}

/// Result of a verifier run. Failures are content, not errors.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub claim: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<SubsetCheck>,
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl Report {
    pub fn new(claim: impl Into<String>) -> Self {
        Report {
            claim: claim.into(),
            pass: true,
            ..Default::default()
        }
    }

    pub fn push(&mut self, check: SubsetCheck) {
        if !check.pass {
            self.fail(format!("subset {}", check.subset));
        }
        self.checks.push(check);
    }

    /// Marks the report failed; the first witness is kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        if self.first_failure.is_none() {
            self.first_failure = Some(witness.into());
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.details.insert(key.to_owned(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
