//! The JSON report written by `--report`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use pacres::deciders::RunReport;
use pacres::distributions::GapReport;
use pacres::resolution::SearchStats;

pub const SCHEMA: &str = "pacres-report";
pub const SCHEMA_VERSION: u32 = 1;

/// Version of every text input format the tool reads or writes.
pub const FORMAT_VERSION: u32 = 1;

/// Fields holding wall-clock measurements; they are the only fields allowed
/// to differ between reruns.
pub const TIMING_FIELDS: &[&str] = &["elapsed_ms"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub format: String,
    pub format_version: u32,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(role: &str, path: &str, format: &str, bytes: &[u8]) -> Self {
        InputDigest {
            role: role.into(),
            path: path.into(),
            format: format.into(),
            format_version: FORMAT_VERSION,
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n: usize,
    pub m: usize,
    pub mu: f64,
    pub seed: u64,
    pub provenance: String,
    pub revealed_fraction: f64,
    pub output: String,
    pub output_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub w: usize,
    pub include_wide_axioms: bool,
    pub refuted: bool,
    pub proof_size: Option<usize>,
    pub proof_width: Option<usize>,
    /// The proof in the text proof format.
    pub proof: Option<String>,
    pub stats: SearchStats,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum VerifyReport {
    Sat { satisfiable: bool, witness: Option<String> },
    Validity { exact: String, value: f64 },
    WidthRefutable { w: usize, refutable: bool },
    Params { decider: String, values: BTreeMap<String, serde_json::Value> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportBody {
    Decider(Box<RunReport>),
    Samples(SampleSummary),
    Refutation(RefutationReport),
    Audit(GapReport),
    Verify(VerifyReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    /// Effective option values, by flag name.
    pub arguments: BTreeMap<String, String>,
    pub inputs: Vec<InputDigest>,
    pub exit_code: i32,
    pub body: ReportBody,
}

impl ReportDocument {
    pub fn new(command: &str, arguments: BTreeMap<String, String>, inputs: Vec<InputDigest>, exit_code: i32, body: ReportBody) -> Self {
        ReportDocument {
            schema: SCHEMA.into(),
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            arguments,
            inputs,
            exit_code,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: ReportDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if doc.schema != SCHEMA {
            return Err(format!("not a {SCHEMA} document"));
        }
        if doc.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {}", doc.schema_version));
        }
        Ok(doc)
    }
}

/// Remove timing fields at any depth, for rerun comparisons.
pub fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for f in TIMING_FIELDS {
                map.remove(*f);
            }
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pacres::deciders::{learn_res, Overrides, RunConfig};
    use pacres::distributions::AffineSystem;
    use pacres::masking::draw_masked_samples;
    use pacres::{Clause, Cnf, Execution};

    fn decider_doc() -> ReportDocument {
        let a = AffineSystem::from_rows(4, &[(vec![0, 1], false)]).unwrap();
        let cfg = RunConfig {
            mu: 0.6,
            beta: 0.5,
            gamma: 0.1,
            eps: 0.1,
            delta: 0.1,
            p_n: 10,
            n: 4,
            overrides: Overrides { w: Some(2), m0: Some(500), m1: Some(50) },
            seed: 3,
        };
        let s = draw_masked_samples(&a, 0.6, 550, 3, Execution::default()).unwrap();
        let phi = Cnf::new(4, vec![Clause::from_dimacs(&[1, 2]), Clause::from_dimacs(&[-1, -2])]).unwrap();
        let run = learn_res(&phi, &cfg, &s.samples, Execution::default()).unwrap();
        let inputs = vec![InputDigest::new("query", "q.cnf", "dimacs", b"p cnf 4 2\n1 2 0\n-1 -2 0\n")];
        ReportDocument::new("learnres", BTreeMap::from([("mu".into(), "0.6".into())]), inputs, 0, ReportBody::Decider(Box::new(run.report)))
    }

    #[test]
    fn round_trip() {
        let doc = decider_doc();
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
        let audit = pacres::distributions::audit_correlation_gap(
            &AffineSystem::from_rows(3, &[(vec![0, 1], true)]).unwrap(),
            1,
            None,
            Execution::Sequential,
        )
        .unwrap();
        let doc = ReportDocument::new("auditgap", BTreeMap::new(), vec![], 0, ReportBody::Audit(audit));
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn rejects_other_schemas() {
        let mut v: serde_json::Value = serde_json::from_str(&decider_doc().to_json()).unwrap();
        v["schema_version"] = 99.into();
        assert!(ReportDocument::from_json(&v.to_string()).is_err());
        v["schema"] = "other".into();
        assert!(ReportDocument::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn timing_is_stripped_everywhere() {
        let mut v: serde_json::Value = serde_json::from_str(&decider_doc().to_json()).unwrap();
        assert!(v["body"].get("elapsed_ms").is_some());
        strip_timing(&mut v);
        assert!(v["body"].get("elapsed_ms").is_none());
    }
}
