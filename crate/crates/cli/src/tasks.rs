//! One function per task. Each returns the task-specific part of the report;
//! `run` adds the shared envelope.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use cocycle_core::affine::{
    cocycle_span, coupling_pair, exists_irreducible_affine, is_irreducible, is_separating, translate_span_sampler, AffineError,
};
use cocycle_core::cocycles::{Cocycle, CocycleError, CocycleSpace};
use cocycle_core::reps::{commutant, BlockSummary, UnitaryRep};
use cocycle_core::selftest::{run_all, SuiteConfig};
use cocycle_core::wreath::{lift_cocycle, theorem3_exists_irreducible, wreath_har_decomposition, WreathError};
use cocycle_core::{CMatrix, CVector, Tolerances, C64};

use crate::error::CliError;
use crate::spec::{build_cocycle, build_group, build_measure, build_rep, Overrides, ProblemSpec};

pub const TASKS: [&str; 9] = ["z1", "har", "project", "irreducible", "commutant", "vndim", "exists", "wreath", "selftest"];

/// Task output plus whether the task itself succeeded (only `selftest` can
/// produce a report and still fail).
pub struct TaskOutput {
    pub body: Map<String, Value>,
    pub residuals: Map<String, Value>,
    pub passed: bool,
}

impl TaskOutput {
    fn new(body: Value, residuals: Value) -> Self {
        TaskOutput { body: into_map(body), residuals: into_map(residuals), passed: true }
    }
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn vector_json(v: &CVector) -> Value {
    Value::Array(v.iter().map(|z| complex_json(*z)).collect())
}

pub fn matrix_json(m: &CMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect())).collect())
}

pub fn cocycle_json(b: &Cocycle) -> Value {
    Value::Array(b.values().iter().map(vector_json).collect())
}

fn cocycle_err(op: &'static str) -> impl Fn(CocycleError) -> CliError {
    move |e| match e {
        CocycleError::GapTooSmall { .. } => CliError::GapRefusal { module: "cocycles", op, message: e.to_string() },
        other => CliError::validation("cocycles", op, other.to_string()),
    }
}

fn affine_err(op: &'static str) -> impl Fn(AffineError) -> CliError {
    move |e| match e {
        AffineError::Cocycle(c) => cocycle_err(op)(c),
        other => CliError::validation("affine", op, other.to_string()),
    }
}

fn wreath_err(op: &'static str) -> impl Fn(WreathError) -> CliError {
    move |e| match e {
        WreathError::Cocycle(c) => cocycle_err(op)(c),
        other => CliError::validation("wreath", op, other.to_string()),
    }
}

struct Problem {
    space: CocycleSpace,
    tol: Tolerances,
}

fn problem(spec: &ProblemSpec, tol: Tolerances) -> Result<Problem, CliError> {
    let group = spec.group()?;
    let rep_spec = spec.rep.as_ref().ok_or_else(|| CliError::validation("cli", "run", "spec has no \"rep\""))?;
    let rep = build_rep(&group, rep_spec, &tol)?;
    let measure = build_measure(&group, spec.measure.as_ref())?;
    let space = CocycleSpace::new(&group, &rep, &measure, tol).map_err(cocycle_err("CocycleSpace::new"))?;
    Ok(Problem { space, tol })
}

fn spec_cocycle(spec: &ProblemSpec, space: &CocycleSpace) -> Result<Cocycle, CliError> {
    let c = spec.cocycle.as_ref().ok_or_else(|| CliError::validation("cli", "run", "spec has no \"cocycle\""))?;
    let b = build_cocycle(space.group(), space.rep(), c)?;
    space.check_cocycle(&b).map_err(cocycle_err("check_cocycle"))?;
    Ok(b)
}

fn gap_json(space: &CocycleSpace) -> Value {
    let g = space.gap().gap;
    if g.is_finite() {
        json!(g)
    } else {
        Value::Null
    }
}

fn dims_json(space: &CocycleSpace) -> Value {
    json!({
        "dim_rep": space.dim(),
        "dim_z1": space.dim_z1(),
        "dim_b1": space.dim_b1(),
        "dim_har": space.dim_har(),
        "dim_fixed": space.fixed().dim(),
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

pub fn z1(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let p = problem(spec, tol)?;
    let s = &p.space;
    let mut body = merge(dims_json(s), json!({ "all_pairs_dim_z1": s.all_pairs_dim() }));
    if o.emit_bases {
        body["z1_basis"] = Value::Array(s.z1_basis().iter().map(cocycle_json).collect());
    }
    let residuals = json!({
        "relator_residual": s.relator_residual(),
        "all_pairs_agreement": s.all_pairs_agreement(),
    });
    Ok(TaskOutput::new(body, residuals))
}

pub fn har(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let p = problem(spec, tol)?;
    let s = &p.space;
    let mut body = merge(
        dims_json(s),
        json!({
            "gap": gap_json(s),
            "gap_closed": s.gap().closed,
            "markov_eigenvalues": s.gap().eigenvalues,
        }),
    );
    if o.emit_bases {
        let b1: Vec<Value> =
            s.b1_subspace().basis().column_iter().map(|col| cocycle_json(&s.from_z1_coords(&col.into_owned()))).collect();
        body["b1_basis"] = Value::Array(b1);
        body["har_basis"] = Value::Array(s.har_basis().iter().map(cocycle_json).collect());
    }
    let residuals = json!({
        "relator_residual": s.relator_residual(),
        "orthogonality_defect": s.orthogonality_defect(),
    });
    Ok(TaskOutput::new(body, residuals))
}

pub fn project(spec: &ProblemSpec, tol: Tolerances, _o: &Overrides) -> Result<TaskOutput, CliError> {
    let p = problem(spec, tol)?;
    let s = &p.space;
    let b = spec_cocycle(spec, s)?;
    let proj = s.project_harmonic(&b).map_err(cocycle_err("project_harmonic"))?;
    let gram = s.gram_projection(&b);
    let body = merge(
        dims_json(s),
        json!({
            "harmonic": cocycle_json(&proj.harmonic),
            "v": vector_json(&proj.v),
            "gap": gap_json(s),
        }),
    );
    let residuals = json!({
        "mean_residual": proj.mean_residual,
        "fixed_component": proj.fixed_component,
        "gram_projection_agreement": (proj.harmonic.coords() - gram.coords()).norm(),
    });
    Ok(TaskOutput::new(body, residuals))
}

pub fn irreducible(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let p = problem(spec, tol)?;
    let s = &p.space;
    let b = spec_cocycle(spec, s)?;
    let cert = is_irreducible(s, &b).map_err(affine_err("is_irreducible"))?;
    let m = commutant(s.rep(), p.tol.rank);
    let separating = is_separating(&m, &cert.harmonic, p.tol.rank);
    let trials = spec.trials(o);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed(o));
    let full = translate_span_sampler(s, &b, &mut rng, trials);
    if cert.irreducible && full < trials {
        return Err(CliError::validation("affine", "translate_span_sampler", AffineError::SamplerFalsified.to_string()));
    }
    let body = json!({
        "irreducible": cert.irreducible,
        "separating": separating,
        "span_dim": cert.span_dim,
        "ambient_dim": cert.ambient_dim,
        "cocycle_span_dim": cocycle_span(s.rep(), &b, p.tol.rank).dim(),
        "harmonic": cocycle_json(&cert.harmonic),
        "sampled_translates": trials,
        "full_span_translates": full,
    });
    let residuals = json!({ "mean_residual": cert.mean_residual });
    Ok(TaskOutput::new(body, residuals))
}

fn blocks_json(blocks: &[BlockSummary]) -> Value {
    Value::Array(
        blocks
            .iter()
            .map(|b| json!({ "factor_type": b.factor_type, "factor_size": b.factor_size, "multiplicity": b.multiplicity }))
            .collect(),
    )
}

pub fn commutant_task(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let group = spec.group()?;
    let rep_spec = spec.rep.as_ref().ok_or_else(|| CliError::validation("cli", "run", "spec has no \"rep\""))?;
    let rep: UnitaryRep = build_rep(&group, rep_spec, &tol)?;
    let m = commutant(&rep, tol.rank);
    let blocks = m.center_blocks().map_err(|e| CliError::validation("reps", "center_blocks", e.to_string()))?;
    let summaries: Vec<BlockSummary> = blocks.iter().map(BlockSummary::from).collect();
    let mut body = json!({
        "dim_rep": rep.dim(),
        "dim_commutant": m.dim(),
        "dim_center": m.center().dim(),
        "is_factor": m.is_factor(),
        "blocks": blocks_json(&summaries),
    });
    if o.emit_bases {
        body["basis"] = Value::Array(m.basis().iter().map(matrix_json).collect());
    }
    let residuals = json!({ "closure_residual": m.closure_residual() });
    Ok(TaskOutput::new(body, residuals))
}

fn ratio_json(module_dim: usize, factor_size: usize) -> (Value, String) {
    let d = cocycle_core::reps::VnDimension { module_dim, factor_size };
    (json!(d.value()), d.ratio().to_string())
}

pub fn vndim(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let p = problem(spec, tol)?;
    let s = &p.space;
    let report = exists_irreducible_affine(s, spec.seed(o)).map_err(affine_err("exists_irreducible_affine"))?;
    let blocks: Vec<Value> = report
        .blocks
        .iter()
        .map(|b| {
            let (v, exact) = ratio_json(b.dim_vn.module_dim, b.dim_vn.factor_size);
            json!({
                "factor_size": b.factor_size,
                "multiplicity": b.multiplicity,
                "dim_har": b.dim_har,
                "dim_vn": v,
                "dim_vn_exact": exact,
            })
        })
        .collect();
    let mut body = merge(dims_json(s), json!({ "factor": report.factor, "blocks": blocks }));
    let mut residuals = json!({ "relator_residual": s.relator_residual() });
    if let Some(d) = report.dim_vn {
        let (v, exact) = ratio_json(d.module_dim, d.factor_size);
        body["dim_vn"] = v;
        body["dim_vn_exact"] = json!(exact);
        if s.dim_har() > 0 {
            let c = coupling_pair(s).map_err(affine_err("coupling_pair"))?;
            body["coupling"] = json!({
                "dim_m": c.dim_m.value(),
                "dim_m_exact": c.dim_m.ratio().to_string(),
                "dim_n": c.dim_n.value(),
                "dim_n_exact": c.dim_n.ratio().to_string(),
                "product": c.product,
            });
            residuals["coupling_product_defect"] = json!((c.product - 1.0).abs());
        }
    } else {
        body["dim_vn"] = Value::Null;
    }
    Ok(TaskOutput::new(body, residuals))
}

pub fn exists(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let p = problem(spec, tol)?;
    let s = &p.space;
    let r = exists_irreducible_affine(s, spec.seed(o)).map_err(affine_err("exists_irreducible_affine"))?;
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| {
            let (v, exact) = ratio_json(b.dim_vn.module_dim, b.dim_vn.factor_size);
            json!({
                "factor_size": b.factor_size,
                "multiplicity": b.multiplicity,
                "dim_har": b.dim_har,
                "dim_vn": v,
                "dim_vn_exact": exact,
                "passes": b.passes,
            })
        })
        .collect();
    let (dim_vn, dim_vn_exact) = match r.dim_vn {
        Some(d) => {
            let (v, e) = ratio_json(d.module_dim, d.factor_size);
            (v, json!(e))
        }
        None => (Value::Null, Value::Null),
    };
    let mut residuals = json!({ "relator_residual": s.relator_residual() });
    let witness = match &r.witness {
        Some(b) => {
            let cert = is_irreducible(s, b).map_err(affine_err("is_irreducible"))?;
            residuals["witness_mean_residual"] = json!(cert.mean_residual);
            cocycle_json(b)
        }
        None => Value::Null,
    };
    let body = json!({
        "exists": r.exists,
        "dim_har": r.dim_har,
        "factor": r.factor,
        "dim_vn": dim_vn,
        "dim_vn_exact": dim_vn_exact,
        "blocks": blocks,
        "witness": witness,
        "witness_tries": r.witness_tries,
        "diagnosis": r.diagnosis,
    });
    Ok(TaskOutput::new(body, residuals))
}

pub fn wreath(spec: &ProblemSpec, tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let w = spec.wreath.as_ref().ok_or_else(|| CliError::validation("cli", "run", "spec has no \"wreath\""))?;
    let base = build_group(&w.base_group)?;
    let rep = build_rep(&base, &w.rep, &tol)?;
    let mu1 = build_measure(&base, w.mu1.as_ref())?;
    let seed = spec.seed(o);
    let d = wreath_har_decomposition(&base, &rep, &mu1, w.mu2_weight_t, tol).map_err(wreath_err("wreath_har_decomposition"))?;
    let t3 = theorem3_exists_irreducible(&base, &rep, tol, seed).map_err(wreath_err("theorem3_exists_irreducible"))?;

    // Cocycle identity on sampled pairs for the lift of the witness (or of e₁).
    let v = t3.witness.clone().unwrap_or_else(|| CVector::from_fn(rep.dim(), |i, _| C64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0)));
    let lifted = lift_cocycle(&base, &rep, Cocycle::zero(rep.num_generators(), rep.dim()), v).map_err(wreath_err("lift_cocycle"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (identity, words) = lifted.identity_residual(&d.gamma, &mut rng, spec.trials(o));

    let body = json!({
        "gamma_generators": d.gamma.generators(),
        "mu2_weight_t": w.mu2_weight_t,
        "dim_rep": d.dim_rep,
        "base_dim_z1": d.base_dim_z1,
        "base_dim_b1": d.base_dim_b1,
        "base_dim_har": d.base_dim_har,
        "dim_har": d.dim_har,
        "exists": t3.exists,
        "blocks": t3.blocks.iter().map(|&(n, j)| json!({ "factor_size": n, "multiplicity": j })).collect::<Vec<_>>(),
        "witness": t3.witness.as_ref().map(vector_json),
        "witness_tries": t3.witness_tries,
        "witness_span_dim": t3.witness_span_dim,
        "gamma_span_full": t3.gamma_span_full,
        "separating": t3.separating,
    });
    let residuals = json!({
        "harmonic_residual": d.harmonic_residual,
        "span_agreement": t3.span_agreement,
        "cocycle_identity": identity,
        "word_evaluation_agreement": words,
        "sampled_pairs": spec.trials(o),
    });
    Ok(TaskOutput::new(body, residuals))
}

pub fn selftest(spec: &ProblemSpec, _tol: Tolerances, o: &Overrides) -> Result<TaskOutput, CliError> {
    let outcomes = run_all(&SuiteConfig::full(spec.seed(o)));
    for out in &outcomes {
        eprintln!("{}", out.line());
    }
    let passed = outcomes.iter().filter(|c| c.passed).count();
    // timings go to stderr only, so the report stays byte-identical across runs
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "name": c.name,
                "passed": c.passed,
                "cases": c.cases,
                "detail": c.detail,
            })
        })
        .collect();
    let worst: Vec<Value> =
        outcomes.iter().map(|c| json!({ "id": c.id, "worst_residual": c.worst_residual, "tolerance": c.tolerance })).collect();
    let mut out = TaskOutput::new(json!({ "checks": checks, "passed": passed, "total": outcomes.len() }), json!({ "checks": worst }));
    out.passed = passed == outcomes.len();
    Ok(out)
}
