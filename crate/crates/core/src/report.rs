//! Check records and the JSON report document.

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::linalg::{Matrix, Subspace};
use crate::module::Module;

pub const TOOL: &str = "recollement";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const FINITIZATION: &str = "products and coproducts are finite direct sums; classes are tested on the catalog of modules up to the dimension bound; extensions are realized only up to that bound";

fn status_str<S: Serializer>(passed: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(if *passed { "pass" } else { "fail" })
}

/// One named property, tested on a number of instances. The first failing
/// instance is kept as the counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    #[serde(rename = "status", serialize_with = "status_str")]
    pub passed: bool,
    pub instances: usize,
    pub failures: usize,
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            passed: true,
            instances: 0,
            failures: 0,
            counterexample: None,
        }
    }

    pub fn single(name: impl Into<String>, anchor: impl Into<String>, ok: bool, ce: impl FnOnce() -> Value) -> Check {
        let mut c = Check::new(name, anchor);
        c.record(ok, ce);
        c
    }

    pub fn record(&mut self, ok: bool, ce: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(ce());
            }
        }
    }

    pub fn with_prefix(mut self, prefix: &str) -> Check {
        self.name = format!("{prefix}: {}", self.name);
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub finitization: &'static str,
    pub results: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Report {
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            config,
            finitization: FINITIZATION,
            results: json!({}),
            checks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn set_result(&mut self, key: &str, value: Value) {
        if let Value::Object(m) = &mut self.results {
            m.insert(key.to_string(), value);
        }
    }

    pub fn finish(&mut self) {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        self.summary = Summary {
            checks: self.checks.len(),
            passed,
            failed: self.checks.len() - passed,
        };
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| json!(m.row(r))).collect())
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({"ambient": s.ambient(), "basis": matrix_json(s.basis())})
}

/// Enough data to rebuild the module with `Module::from_raw_parts`.
pub fn module_json(m: &Module) -> Value {
    json!({
        "dim": m.dim(),
        "action": m.action().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(field: crate::linalg::Fp, cols: usize, v: &Value) -> Option<Matrix> {
    let rows: Vec<Vec<u32>> = v
        .as_array()?
        .iter()
        .map(|r| r.as_array().map(|xs| xs.iter().filter_map(|x| x.as_u64().map(|y| y as u32)).collect()))
        .collect::<Option<_>>()?;
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    Some(Matrix::from_rows(field, cols, &rows))
}

/// Inverse of `module_json` over a given algebra.
pub fn module_from_json(algebra: &std::sync::Arc<crate::algebra::Algebra>, v: &Value) -> Option<Module> {
    let dim = v.get("dim")?.as_u64()? as usize;
    let action: Vec<Matrix> = v
        .get("action")?
        .as_array()?
        .iter()
        .map(|m| matrix_from_json(algebra.field(), dim, m))
        .collect::<Option<_>>()?;
    Module::from_raw_parts(algebra.clone(), dim, action).ok()
}
