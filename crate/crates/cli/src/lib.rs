//! JSON-in, JSON-out driver for `cocycle-core`.

pub mod error;
pub mod spec;
pub mod tasks;

use serde_json::{json, Value};

pub use error::CliError;
pub use spec::{Overrides, ProblemSpec};
pub use tasks::TASKS;

/// A finished report and whether the task succeeded.
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

impl Report {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("finite JSON");
        s.push('\n');
        s
    }
}

/// Runs `task` on the spec text (`None` means an empty spec).
pub fn run(task: &str, spec_text: Option<&str>, overrides: &Overrides) -> Result<Report, CliError> {
    let spec = match spec_text {
        Some(t) => spec::parse(t)?,
        None => ProblemSpec::empty(),
    };
    let tol = spec.tolerances(overrides)?;
    let out = match task {
        "z1" => tasks::z1(&spec, tol, overrides),
        "har" => tasks::har(&spec, tol, overrides),
        "project" => tasks::project(&spec, tol, overrides),
        "irreducible" => tasks::irreducible(&spec, tol, overrides),
        "commutant" => tasks::commutant_task(&spec, tol, overrides),
        "vndim" => tasks::vndim(&spec, tol, overrides),
        "exists" => tasks::exists(&spec, tol, overrides),
        "wreath" => tasks::wreath(&spec, tol, overrides),
        "selftest" => tasks::selftest(&spec, tol, overrides),
        other => {
            return Err(CliError::validation("cli", "run", format!("unknown task {other:?}; expected one of {}", TASKS.join(", "))))
        }
    }?;
    let mut residuals = out.residuals;
    residuals.insert("tol_rank".into(), json!(tol.rank));
    residuals.insert("tol_res".into(), json!(tol.residual));
    let mut body = out.body;
    body.insert("task".into(), json!(task));
    body.insert("seed".into(), json!(spec.seed(overrides)));
    body.insert("residuals".into(), Value::Object(residuals));
    if let Some(g) = &spec.group {
        if let Ok(model) = spec::build_group(g) {
            body.insert("group".into(), json!(model.name()));
        }
    }
    Ok(Report { json: Value::Object(body), passed: out.passed })
}
