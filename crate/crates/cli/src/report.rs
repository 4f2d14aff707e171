use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimVerdict {
    Match,
    Mismatch,
}

/// One published value next to the recomputed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub verdict: ClaimVerdict,
}

impl Claim {
    pub fn new(
        id: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) -> Self {
        let (expected, observed) = (expected.into(), observed.into());
        let verdict = if expected == observed {
            ClaimVerdict::Match
        } else {
            ClaimVerdict::Mismatch
        };
        Self {
            id: id.into(),
            expected,
            observed,
            verdict,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub paper_claims: Vec<Claim>,
    /// Wall time, kept out of the serialized payload so output is reproducible.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            results,
            paper_claims: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn mismatches(&self) -> usize {
        self.paper_claims
            .iter()
            .filter(|c| c.verdict == ClaimVerdict::Mismatch)
            .count()
    }

    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn claims_text(&self) -> String {
        let mut out = String::new();
        for c in &self.paper_claims {
            let verdict = match c.verdict {
                ClaimVerdict::Match => "match",
                ClaimVerdict::Mismatch => "MISMATCH",
            };
            out.push_str(&format!(
                "{:<28} expected={:<24} observed={:<24} {verdict}\n",
                c.id, c.expected, c.observed
            ));
        }
        out
    }
}
