use serde::{Serialize, Serializer};

fn decimal<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_decimal<S: Serializer>(v: &Option<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// One named comparison between a claim and an exhaustive computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Closed-form dual of one component against its spectrum dual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualCheck {
    pub function: String,
    pub selector: String,
    pub matches: bool,
}

/// Verification of `(G, f_1, ..., f_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedReport {
    #[serde(serialize_with = "decimal")]
    pub t: u64,
    #[serde(serialize_with = "decimal")]
    pub output_dim: u64,
    pub tails: Vec<String>,
    pub plateaued: bool,
    pub tail_plateaued: bool,
    pub iff_agrees: bool,
    /// `amplitude (as 2^s) -> number of components`, `mixed` for none
    pub amplitudes: Vec<(String, String)>,
    #[serde(serialize_with = "opt_decimal")]
    pub predicted_bent_components: Option<u64>,
    #[serde(serialize_with = "decimal")]
    pub measured_bent_components: u64,
    #[serde(serialize_with = "opt_decimal")]
    pub bent_component_bound: Option<u64>,
}

/// Inputs, predictions and exhaustively verified results of a construction.
///
/// Verified fields come from Walsh spectra and ANF computations only.
/// Integers serialize as decimal strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub family: String,
    pub field: String,
    #[serde(serialize_with = "decimal")]
    pub n: u64,
    #[serde(serialize_with = "opt_decimal")]
    pub k: Option<u64>,
    #[serde(serialize_with = "opt_decimal")]
    pub r: Option<u64>,
    #[serde(serialize_with = "decimal")]
    pub tau: u64,
    #[serde(serialize_with = "decimal")]
    pub t: u64,
    pub u: Vec<String>,
    pub poly: String,
    pub seeds: Vec<String>,
    pub predicted_class: String,
    pub verified_class: String,
    pub duals: Vec<DualCheck>,
    pub duals_match: Option<bool>,
    #[serde(serialize_with = "opt_decimal")]
    pub predicted_degree: Option<u64>,
    #[serde(serialize_with = "decimal")]
    pub measured_degree: u64,
    #[serde(serialize_with = "opt_decimal")]
    pub predicted_bent_components: Option<u64>,
    #[serde(serialize_with = "decimal")]
    pub measured_bent_components: u64,
    #[serde(serialize_with = "opt_decimal")]
    pub bent_component_bound: Option<u64>,
    pub augmented: Option<AugmentedReport>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl ConstructionReport {
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn add_dual(&mut self, function: &str, selector: String, matches: bool) {
        self.duals.push(DualCheck {
            function: function.into(),
            selector,
            matches,
        });
        self.duals_match = Some(self.duals.iter().all(|d| d.matches));
    }

    /// Every check passed and every emitted dual matched.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.duals_match != Some(false)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| {
                if c.detail.is_empty() {
                    c.name.clone()
                } else {
                    format!("{}: {}", c.name, c.detail)
                }
            })
            .collect();
        out.extend(
            self.duals
                .iter()
                .filter(|d| !d.matches)
                .map(|d| format!("dual of {} at {}", d.function, d.selector)),
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
