//! Runtime invariant suite: the ten property checks behind the acceptance
//! criteria, parameterised so that the CLI and the test harness share them.

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::{cocycle_span, coupling_pair, exists_irreducible_affine, is_irreducible, is_separating, translate_span_sampler};
use crate::cocycles::{coboundary, evaluate, Cocycle, CocycleSpace};
use crate::groups::{Catalogue, FinMeasure, GroupModel, Letter, Word};
use crate::linalg::{c, random_gaussian_vector, CMatrix, CVector};
use crate::reps::catalogue::{random_abelian_rep, random_finite_rep, random_free_rep, s3_sign, s3_standard};
use crate::reps::{commutant, fixed_and_reduced, UnitaryRep};
use crate::wreath::{lift_cocycle, theorem3_exists_irreducible, wreath_har_decomposition};
use crate::Tolerances;

pub const FINITE_CATALOGUE: [Catalogue; 8] = [
    Catalogue::Cyclic(2),
    Catalogue::Cyclic(3),
    Catalogue::Cyclic(4),
    Catalogue::Cyclic(5),
    Catalogue::Cyclic(6),
    Catalogue::Symmetric3,
    Catalogue::Dihedral(4),
    Catalogue::Quaternion,
];

/// Sample sizes; [`SuiteConfig::full`] matches the acceptance criteria.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub reps_per_finite_group: usize,
    pub orthogonality_instances: usize,
    pub samples_per_instance: usize,
    pub sampler_translates: usize,
    pub word_pairs: usize,
    pub wreath_pairs: usize,
}

impl SuiteConfig {
    pub fn full(seed: u64) -> Self {
        SuiteConfig {
            seed,
            reps_per_finite_group: 20,
            orthogonality_instances: 100,
            samples_per_instance: 100,
            sampler_translates: 50,
            word_pairs: 1000,
            wreath_pairs: 1000,
        }
    }

    pub fn quick(seed: u64) -> Self {
        SuiteConfig {
            seed,
            reps_per_finite_group: 3,
            orthogonality_instances: 20,
            samples_per_instance: 10,
            sampler_translates: 10,
            word_pairs: 100,
            wreath_pairs: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub elapsed_secs: f64,
    pub time_limit_secs: Option<f64>,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        let limit = self.time_limit_secs.map_or(String::new(), |l| format!(" (limit {l:.0} s)"));
        let tol = if self.tolerance == 0.0 { "exact".to_string() } else { format!("tol {:.0e}", self.tolerance) };
        format!(
            "[{}] {:>2}. {}: {} cases, worst residual {:.2e} ({}), {:.2} s{}{}{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.worst_residual,
            tol,
            self.elapsed_secs,
            limit,
            if self.detail.is_empty() { "" } else { "; " },
            self.detail
        )
    }
}

/// A group, representation and measure with a label.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub group: GroupModel,
    pub rep: UnitaryRep,
    pub measure: FinMeasure,
}

impl Instance {
    pub fn new(label: impl Into<String>, group: GroupModel, rep: UnitaryRep) -> Self {
        let measure = FinMeasure::uniform_on_generators(&group).expect("generators are adapted");
        Instance { label: label.into(), group, rep, measure }
    }

    pub fn space(&self) -> Result<CocycleSpace, String> {
        CocycleSpace::new(&self.group, &self.rep, &self.measure, Tolerances::default())
            .map_err(|e| format!("{}: {e}", self.label))
    }
}

/// Catalogue instances with random representations: every finite group,
/// `F₂`, `Z` and `Z²`.
pub fn catalogue_instances<R: Rng + ?Sized>(rng: &mut R) -> Vec<Instance> {
    let mut out = Vec::new();
    for cat in FINITE_CATALOGUE {
        let g = cat.build().expect("catalogue");
        out.push(Instance::new(format!("{} random", g.name()), g, random_finite_rep(rng, cat, 4)));
    }
    let f2 = GroupModel::free(2).expect("F2");
    let sigma = random_free_rep(rng, 2, 2);
    out.push(Instance::new("F2 sigma_2", f2.clone(), sigma.clone()));
    out.push(Instance::new("F2 sigma_2 x2", f2.clone(), sigma.multiple(2)));
    out.push(Instance::new("F2 sigma_1 + trivial", f2.clone(), random_free_rep(rng, 2, 1).direct_sum(&UnitaryRep::trivial(2, 1))));
    let w = |s: &str| f2.parse_word(s).expect("word");
    let skewed = FinMeasure::from_words(
        &f2,
        &[(w("a"), 0.15), (w("a^-1"), 0.15), (w("b"), 0.1), (w("b^-1"), 0.1), (w("a b"), 0.25), (w("b^-1 a^-1"), 0.25)],
    )
    .expect("symmetric adapted");
    out.push(Instance { label: "F2 sigma_3, non-uniform mu".into(), group: f2, rep: random_free_rep(rng, 2, 3), measure: skewed });
    let z = GroupModel::free_abelian(1).expect("Z");
    out.push(Instance::new("Z character", z.clone(), random_abelian_rep(rng, 1, 1, 0.0)));
    out.push(Instance::new("Z trivial + characters", z, UnitaryRep::trivial(1, 1).direct_sum(&random_abelian_rep(rng, 1, 2, 0.0))));
    let z2 = GroupModel::free_abelian(2).expect("Z2");
    out.push(Instance::new("Z2 mixed", z2.clone(), random_abelian_rep(rng, 2, 3, 0.5)));
    out.push(Instance::new("Z2 trivial", z2, UnitaryRep::trivial(2, 2)));
    out
}

/// Instances for which the harmonic projection is nontrivial.
fn infinite_instances<R: Rng + ?Sized>(rng: &mut R) -> Vec<Instance> {
    catalogue_instances(rng).into_iter().filter(|i| i.group.order().is_none()).collect()
}

struct Tally {
    cases: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, worst: 0.0, failures: Vec::new() }
    }

    fn residual(&mut self, r: f64, tol: f64, what: impl FnOnce() -> String) {
        self.worst = self.worst.max(r);
        if !(r < tol) {
            self.failures.push(format!("{} ({r:.2e})", what()));
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, id: usize, name: &'static str, tol: f64, start: Instant, limit: Option<f64>, extra: String) -> CheckOutcome {
        let elapsed = start.elapsed().as_secs_f64();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let mut detail = extra;
        if !self.failures.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            detail.push_str(&format!("{} failures: {}", self.failures.len(), shown.join(", ")));
        }
        if !in_time {
            detail.push_str("; time limit exceeded");
        }
        CheckOutcome {
            id,
            name,
            passed: self.failures.is_empty() && in_time,
            cases: self.cases,
            worst_residual: self.worst,
            tolerance: tol,
            elapsed_secs: elapsed,
            time_limit_secs: limit,
            detail,
        }
    }
}

fn rng_for(config: &SuiteConfig, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Finite groups: `Har = 0`, `Z¹ = B¹`, relator and all-pairs solvers agree.
pub fn finite_vanishing(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 1);
    let mut t = Tally::new();
    for cat in FINITE_CATALOGUE {
        let g = cat.build().expect("catalogue");
        for k in 0..config.reps_per_finite_group {
            let inst = Instance::new(g.name(), g.clone(), random_finite_rep(&mut rng, cat, 4));
            t.cases += 1;
            match inst.space() {
                Ok(s) => {
                    t.require(s.dim_har() == 0 && s.dim_z1() == s.dim_b1(), || format!("{} #{k}: dims", g.name()));
                    t.require(s.all_pairs_dim() == Some(s.dim_z1()), || format!("{} #{k}: oracle dim", g.name()));
                    t.residual(s.relator_residual(), 1e-8, || format!("{} #{k}: relators", g.name()));
                    let agree = s.all_pairs_agreement().unwrap_or(f64::INFINITY);
                    t.residual(agree, 1e-8, || format!("{} #{k}: oracle span", g.name()));
                }
                Err(e) => t.failures.push(e),
            }
        }
    }
    t.finish(1, "finite-group vanishing", 1e-8, start, Some(30.0), String::new())
}

/// `ker M_μ ∩ Z¹ = (B¹)^⊥ ∩ Z¹` by principal angles.
pub fn orthogonality(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 2);
    let mut t = Tally::new();
    while t.cases < config.orthogonality_instances {
        for inst in catalogue_instances(&mut rng) {
            if t.cases >= config.orthogonality_instances {
                break;
            }
            t.cases += 1;
            match inst.space() {
                Ok(s) => t.residual(s.orthogonality_defect(), 1e-8, || inst.label.clone()),
                Err(e) => t.failures.push(e),
            }
        }
    }
    t.finish(2, "orthogonality identification", 1e-8, start, Some(30.0), String::new())
}

/// Explicit projection formula against the Gram oracle, idempotence and
/// `𝓜`-equivariance.
pub fn projection_formula(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 3);
    let mut t = Tally::new();
    for inst in catalogue_instances(&mut rng) {
        let s = match inst.space() {
            Ok(s) => s,
            Err(e) => {
                t.failures.push(e);
                continue;
            }
        };
        let alg = commutant(&inst.rep, 1e-9);
        for _ in 0..config.samples_per_instance {
            t.cases += 1;
            let b = s.random_cocycle(&mut rng);
            let scale = s.norm_mu(&b).max(1.0);
            let Ok(p) = s.project_harmonic(&b) else {
                t.failures.push(format!("{}: gap refusal", inst.label));
                continue;
            };
            let oracle = s.gram_projection(&b);
            t.residual((p.harmonic.coords() - oracle.coords()).norm() / scale, 1e-8, || format!("{}: oracle", inst.label));
            let again = s.project_harmonic(&p.harmonic).expect("gap already certified");
            t.residual((again.harmonic.coords() - p.harmonic.coords()).norm() / scale, 1e-8, || format!("{}: idempotence", inst.label));
            let k = rng.random_range(0..alg.dim());
            let op = &alg.basis()[k];
            let lhs = s.project_harmonic(&b.apply_operator(op)).expect("gap already certified").harmonic;
            let rhs = p.harmonic.apply_operator(op);
            t.residual((lhs.coords() - rhs.coords()).norm() / scale, 1e-8, || format!("{}: equivariance", inst.label));
        }
    }
    t.finish(3, "explicit projection formula", 1e-8, start, None, String::new())
}

/// `span b₀(G) ⊆ span (b₀ + ∂_v)(G)` for harmonic `b₀`.
pub fn span_minimality(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 4);
    let mut t = Tally::new();
    for inst in catalogue_instances(&mut rng) {
        let s = match inst.space() {
            Ok(s) => s,
            Err(e) => {
                t.failures.push(e);
                continue;
            }
        };
        for _ in 0..config.samples_per_instance {
            t.cases += 1;
            let b0 = s.random_harmonic(&mut rng);
            let v = random_gaussian_vector(&mut rng, inst.rep.dim());
            let small = cocycle_span(&inst.rep, &b0, 1e-9);
            let big = cocycle_span(&inst.rep, &b0.add(&coboundary(&inst.rep, &v)), 1e-9);
            t.residual(big.containment_residual(&small), 1e-8, || inst.label.clone());
        }
    }
    t.finish(4, "span minimality", 1e-8, start, None, String::new())
}

/// `is_irreducible` agrees with the span of the Gram-oracle projection, and
/// sampled translates never contradict an accepted verdict.
pub fn irreducibility_equivalence(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 5);
    let mut t = Tally::new();
    let mut accepted = 0;
    for inst in catalogue_instances(&mut rng) {
        let s = match inst.space() {
            Ok(s) => s,
            Err(e) => {
                t.failures.push(e);
                continue;
            }
        };
        // generic cocycles, plus harmonic ones confined to a proper invariant subspace
        let mut inputs: Vec<Cocycle> = (0..4).map(|_| s.random_cocycle(&mut rng)).collect();
        let alg = commutant(&inst.rep, 1e-9);
        if let Some(op) = alg.basis().iter().find(|m| crate::linalg::rank(m, 1e-9) < inst.rep.dim()) {
            inputs.push(s.random_harmonic(&mut rng).apply_operator(op));
        }
        for b in inputs {
            t.cases += 1;
            let Ok(cert) = is_irreducible(&s, &b) else {
                t.failures.push(format!("{}: gap refusal", inst.label));
                continue;
            };
            let independent = cocycle_span(&inst.rep, &s.gram_projection(&b), 1e-9).is_full();
            t.require(cert.irreducible == independent, || format!("{}: verdict", inst.label));
            if cert.irreducible {
                accepted += 1;
                let full = translate_span_sampler(&s, &b, &mut rng, config.sampler_translates);
                t.require(full == config.sampler_translates, || format!("{}: sampler falsified", inst.label));
            }
        }
    }
    t.finish(5, "irreducibility equivalence", 0.0, start, None, format!("{accepted} accepted verdicts sampled"))
}

/// On `F₂` with `π = σ^{⊕m}`: existence iff `k ≥ m`, `dim_𝓜 Har = k/m`.
pub fn free_group_existence(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 6);
    let mut t = Tally::new();
    let f2 = GroupModel::free(2).expect("F2");
    for k in 1..=3 {
        let sigma = irreducible_free_rep(&mut rng, k);
        for m in 1..=4 {
            t.cases += 1;
            let inst = Instance::new(format!("F2 k={k} m={m}"), f2.clone(), sigma.multiple(m));
            let (fixed, _) = fixed_and_reduced(&inst.rep, 1e-9);
            t.require(fixed.dim() == 0, || format!("{}: fixed vectors", inst.label));
            let s = match inst.space() {
                Ok(s) => s,
                Err(e) => {
                    t.failures.push(e);
                    continue;
                }
            };
            match exists_irreducible_affine(&s, config.seed) {
                Ok(r) => {
                    t.require(r.exists == (k >= m), || format!("{}: verdict {}", inst.label, r.exists));
                    t.require(r.dim_vn.map(|d| d.ratio()) == Some(Ratio::new(k, m)), || format!("{}: dim_vn {:?}", inst.label, r.dim_vn.map(|d| d.ratio())));
                }
                Err(e) => t.failures.push(format!("{}: {e}", inst.label)),
            }
        }
    }
    t.finish(6, "existence on F2 (k >= m, dim = k/m)", 0.0, start, Some(60.0), String::new())
}

/// `dim_𝓜 Har · dim_𝓝 Har = 1` on the factor cases of the free-group check.
pub fn coupling_reciprocity(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 6);
    let mut t = Tally::new();
    let f2 = GroupModel::free(2).expect("F2");
    for k in 1..=3 {
        let sigma = irreducible_free_rep(&mut rng, k);
        for m in 1..=4 {
            t.cases += 1;
            let inst = Instance::new(format!("F2 k={k} m={m}"), f2.clone(), sigma.multiple(m));
            match inst.space().and_then(|s| coupling_pair(&s).map_err(|e| e.to_string())) {
                Ok(cp) => {
                    t.residual((cp.product - 1.0).abs(), 1e-9, || inst.label.clone());
                    t.require(cp.dim_m.ratio() * cp.dim_n.ratio() == Ratio::from_integer(1), || format!("{}: exact product", inst.label));
                }
                Err(e) => t.failures.push(e),
            }
        }
    }
    t.finish(7, "coupling reciprocity", 1e-9, start, None, String::new())
}

/// A Haar-random `k`-dimensional representation of `F₂`, redrawn until its
/// commutant is the scalars.
pub fn irreducible_free_rep<R: Rng + ?Sized>(rng: &mut R, k: usize) -> UnitaryRep {
    loop {
        let sigma = random_free_rep(rng, 2, k);
        if commutant(&sigma, 1e-9).dim() == 1 {
            return sigma;
        }
    }
}

fn c2_signs(signs: &[f64]) -> UnitaryRep {
    let d = CVector::from_iterator(signs.len(), signs.iter().map(|&s| c(s, 0.0)));
    UnitaryRep::new(vec![CMatrix::from_diagonal(&d)]).expect("square")
}

/// The wreath cases: `(label, base, π, expected verdict)`.
pub fn wreath_cases() -> Vec<(&'static str, GroupModel, UnitaryRep, bool)> {
    let c2 = Catalogue::Cyclic(2).build().expect("C2");
    let s3 = Catalogue::Symmetric3.build().expect("S3");
    vec![
        ("C2 trivial+sign", c2.clone(), c2_signs(&[1.0, -1.0]), true),
        ("C2 trivial+trivial", c2, c2_signs(&[1.0, 1.0]), false),
        ("S3 2-dim irreducible", s3.clone(), s3_standard(), true),
        ("S3 trivial+sign", s3.clone(), UnitaryRep::trivial(2, 1).direct_sum(&s3_sign()), true),
        ("S3 trivial+trivial", s3, UnitaryRep::trivial(2, 2), false),
    ]
}

/// Decomposition dimensions, cyclicity verdicts, lifted-cocycle identity and
/// the separating-vector consistency on `G ⋉ Z^(G)`.
pub fn wreath_cyclicity(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 8);
    let mut t = Tally::new();
    let tol = Tolerances::default();
    for (label, g, rep, expected) in wreath_cases() {
        t.cases += 1;
        let mu1 = FinMeasure::uniform_on_generators(&g).expect("adapted");
        let d = rep.dim();
        match wreath_har_decomposition(&g, &rep, &mu1, 0.5, tol) {
            Ok(dec) => {
                t.require(dec.base_dim_har == 0 && dec.dim_har == d, || format!("{label}: dims"));
                t.residual(dec.harmonic_residual, 1e-8, || format!("{label}: harmonicity"));
                let space = CocycleSpace::new(&g, &rep, &mu1, tol).expect("validated above");
                let b1 = space.random_cocycle(&mut rng);
                let v = random_gaussian_vector(&mut rng, d);
                let lifted = lift_cocycle(&g, &rep, b1, v).expect("finite base");
                let (identity, words) = lifted.identity_residual(&dec.gamma, &mut rng, config.wreath_pairs);
                t.residual(identity.max(words), 1e-8, || format!("{label}: cocycle identity"));
            }
            Err(e) => t.failures.push(format!("{label}: {e}")),
        }
        match theorem3_exists_irreducible(&g, &rep, tol, config.seed) {
            Ok(r) => {
                t.require(r.exists == expected, || format!("{label}: verdict {}", r.exists));
                if r.exists {
                    t.require(r.gamma_span_full == Some(true) && r.separating == Some(true), || format!("{label}: witness"));
                    t.residual(r.span_agreement.unwrap_or(f64::INFINITY), 1e-8, || format!("{label}: span identification"));
                }
                let alg = commutant(&rep, 1e-9);
                if alg.is_factor() {
                    let v = random_gaussian_vector(&mut rng, d);
                    let lifted = lift_cocycle(&g, &rep, Cocycle::zero(rep.num_generators(), d), v).expect("finite base");
                    t.require(is_separating(&alg, &lifted.gamma_cocycle(), 1e-9) == r.exists, || format!("{label}: separating"));
                }
            }
            Err(e) => t.failures.push(format!("{label}: {e}")),
        }
    }
    t.finish(8, "wreath decomposition and cyclicity", 1e-8, start, Some(60.0), String::new())
}

/// A random word in the generators and their inverses.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, letters: &[Letter], len: usize) -> Word {
    (0..len).map(|_| letters[rng.random_range(0..letters.len())]).collect()
}

/// A second word for the same element: start from the normal form's word
/// (or the word itself), then insert cancelling pairs and relators.
pub fn equal_word<R: Rng + ?Sized>(rng: &mut R, group: &GroupModel, w: &[Letter]) -> Word {
    let letters = group.letters();
    let mut out: Word = match group.normal_form(w) {
        Ok(x) => group.word_of(&x),
        Err(_) => w.to_vec(),
    };
    for _ in 0..rng.random_range(1..=4) {
        let pos = rng.random_range(0..=out.len());
        let insert: Word = if !group.relators().is_empty() && rng.random_bool(0.5) {
            let r = &group.relators()[rng.random_range(0..group.relators().len())];
            if rng.random_bool(0.5) { crate::groups::inverse_word(r) } else { r.clone() }
        } else {
            let l = letters[rng.random_range(0..letters.len())];
            vec![l, l.inv()]
        };
        out.splice(pos..pos, insert);
    }
    out
}

/// `b(w₁) = b(w₂)` whenever `w₁`, `w₂` have the same normal form.
pub fn well_definedness(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 9);
    let mut t = Tally::new();
    for inst in catalogue_instances(&mut rng) {
        let s = match inst.space() {
            Ok(s) => s,
            Err(e) => {
                t.failures.push(e);
                continue;
            }
        };
        let letters = inst.group.letters();
        let b = s.random_cocycle(&mut rng);
        let scale = b.coords().norm().max(1.0);
        for _ in 0..config.word_pairs {
            t.cases += 1;
            let len = rng.random_range(0..=12);
            let w1 = random_word(&mut rng, &letters, len);
            let w2 = equal_word(&mut rng, &inst.group, &w1);
            let same = inst
                .group
                .normal_form(&w1)
                .and_then(|x| inst.group.normal_form(&w2).map(|y| x == y))
                .unwrap_or(false);
            t.require(same, || format!("{}: word pair generator", inst.label));
            let diff = (evaluate(&inst.rep, &b, &w1) - evaluate(&inst.rep, &b, &w2)).norm() / scale;
            t.residual(diff, 1e-8, || inst.label.clone());
        }
    }
    t.finish(9, "well-definedness on equal normal forms", 1e-8, start, None, String::new())
}

/// `c` in `⟨∂_v, b⟩_μ = c⟨v, M_μ b⟩` is constant per instance; its value is reported.
pub fn adjoint_proportionality(config: &SuiteConfig) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = rng_for(config, 10);
    let mut t = Tally::new();
    let mut constants: Vec<f64> = Vec::new();
    for inst in infinite_instances(&mut rng) {
        let s = match inst.space() {
            Ok(s) => s,
            Err(e) => {
                t.failures.push(e);
                continue;
            }
        };
        t.cases += 1;
        let rep = s.adjoint_constant(&mut rng, config.samples_per_instance);
        t.residual(rep.max_deviation, 1e-8, || inst.label.clone());
        if let Some(cst) = rep.constant {
            t.residual(cst.im.abs(), 1e-8, || format!("{}: imaginary part", inst.label));
            constants.push(cst.re);
        }
    }
    let lo = constants.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = constants.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let detail = if constants.is_empty() { "no instance with M_mu != 0".into() } else { format!("measured c in [{lo:.12}, {hi:.12}]") };
    t.finish(10, "adjoint proportionality", 1e-8, start, None, detail)
}

pub type Check = fn(&SuiteConfig) -> CheckOutcome;

pub const CHECKS: [Check; 10] = [
    finite_vanishing,
    orthogonality,
    projection_formula,
    span_minimality,
    irreducibility_equivalence,
    free_group_existence,
    coupling_reciprocity,
    wreath_cyclicity,
    well_definedness,
    adjoint_proportionality,
];

pub fn run_all(config: &SuiteConfig) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|check| check(config)).collect()
}

/// Total wall time of a set of outcomes.
pub fn total_time(outcomes: &[CheckOutcome]) -> Duration {
    Duration::from_secs_f64(outcomes.iter().map(|o| o.elapsed_secs).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::invariant_span;

    #[test]
    fn quick_suite_passes() {
        for o in run_all(&SuiteConfig::quick(7)) {
            assert!(o.passed, "{}", o.line());
        }
    }

    #[test]
    fn equal_words_have_equal_normal_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for cat in [Catalogue::Quaternion, Catalogue::FreeAbelian(2), Catalogue::Free(2)] {
            let g = cat.build().unwrap();
            for _ in 0..50 {
                let w1 = random_word(&mut rng, &g.letters(), 8);
                let w2 = equal_word(&mut rng, &g, &w1);
                assert_eq!(g.normal_form(&w1).unwrap(), g.normal_form(&w2).unwrap());
            }
        }
    }

    #[test]
    fn invariant_span_of_generic_vector_in_wreath_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (label, _, rep, expected) in wreath_cases() {
            let v = random_gaussian_vector(&mut rng, rep.dim());
            assert_eq!(invariant_span(&rep, &[v], 1e-9).is_full(), expected, "{label}");
        }
    }
}
