//! Deterministic run reports.
//!
//! A report is one structured document per run. The machine form (JSON) is
//! byte-identical across runs with the same command, instance, and options:
//! field order is fixed, maps are sorted, and timing never enters the
//! serialized form (the human renderer shows it separately).

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub name: String,
    /// `None` marks an informational row that never affects the exit code.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub instance_digest: String,
    pub assumptions: Vec<String>,
    pub claims: Vec<ClaimVerdict>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, seed: u64, instance_digest: String) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            instance_digest,
            assumptions: Vec::new(),
            claims: Vec::new(),
            warnings: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn assume(&mut self, note: impl Into<String>) {
        self.assumptions.push(note.into());
    }

    pub fn claim(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.claims.push(ClaimVerdict {
            name: name.into(),
            holds: Some(holds),
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn claim_with_witness(
        &mut self,
        name: impl Into<String>,
        holds: bool,
        detail: impl Into<String>,
        witness: Value,
    ) {
        self.claims.push(ClaimVerdict {
            name: name.into(),
            holds: Some(holds),
            detail: detail.into(),
            witness: Some(witness),
        });
    }

    pub fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.claims.push(ClaimVerdict {
            name: name.into(),
            holds: None,
            detail: detail.into(),
            witness: None,
        });
    }

    /// 0 when every claim holds, 1 when some claim carries a counterexample.
    pub fn exit_code(&self) -> i32 {
        if self.claims.iter().any(|c| c.holds == Some(false)) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "command: {}   seed: {}   instance: {}\n",
            self.command,
            self.seed,
            if self.instance_digest.is_empty() {
                "(none)".to_string()
            } else {
                self.instance_digest[..12.min(self.instance_digest.len())].to_string()
            }
        ));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for a in &self.assumptions {
            out.push_str(&format!("assumes: {a}\n"));
        }
        let name_width = self
            .claims
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(5);
        for c in &self.claims {
            let mark = match c.holds {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => "    ",
            };
            out.push_str(&format!("{mark} {:name_width$}  {}\n", c.name, c.detail));
            if let Some(w) = &c.witness {
                out.push_str(&format!("     {:name_width$}  witness: {w}\n", ""));
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_claims() {
        let mut r = Report::new("demo", 0, String::new());
        r.info("note", "informational");
        assert_eq!(r.exit_code(), 0);
        r.claim("good", true, "fine");
        assert_eq!(r.exit_code(), 0);
        r.claim("bad", false, "broken");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_omits_timing() {
        let mut r = Report::new("demo", 7, "abc".into());
        r.timing_ms = Some(123);
        let json = r.to_json();
        assert!(!json.contains("123"));
        assert!(json.contains("\"seed\": 7"));
        let parsed: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.timing_ms, None);
    }

    #[test]
    fn human_rendering_shows_failures() {
        let mut r = Report::new("demo", 0, String::new());
        r.claim_with_witness("thing", false, "broke", serde_json::json!({"set": [1]}));
        let text = r.render_human();
        assert!(text.contains("FAIL"));
        assert!(text.contains("witness"));
    }
}
