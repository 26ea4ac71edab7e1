//! The construction `Γ = G ⋉ Z^(G)` over a finite group `G`, lifted
//! cocycles and the cyclic-vector criterion for irreducible affine actions.
//!
//! A representation `π` of `G` is viewed on `Γ` through the quotient map,
//! i.e. trivially on `Z^(G)`. `Γ` is generated by the generators of `G`
//! together with `t`, the generator of the copy of `Z` at `e`.

mod element;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use element::{wr_inv, wr_mul, WreathElement};

use crate::affine::{cocycle_span, invariant_span, is_separating};
use crate::cocycles::{evaluate, evaluate_element, Cocycle, CocycleError, CocycleSpace};
use crate::groups::{make_measure, Element, FinMeasure, FiniteTable, GroupError, GroupModel, Letter, MeasureError};
use crate::linalg::{c, random_gaussian_vector, CVector};
use crate::reps::{commutant, AlgebraError, UnitaryRep};
use crate::Tolerances;

const WITNESS_TRIES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WreathError {
    #[error("base group must be finite")]
    InfiniteBase,
    #[error("lifted cocycle violates the cocycle identity (residual {residual:.3e})")]
    CocycleIdentityViolated { residual: f64 },
    #[error("mixing weight {0} must lie strictly between 0 and 1")]
    BadWeight(f64),
    #[error("no cyclic vector found in {tries} Gaussian draws although every block has n <= j")]
    WitnessNotFound { tries: usize },
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `b(g, f) = b₁(g) + Σ_x f(x) π(x) v`.
///
/// Writing `(g, f) = (e, f)·(g, 0)` and using that `π` is trivial on
/// `Z^(G)`, the value is `φ(f) + b₁(g)` with `φ(f) = Σ_x f(x)π(x)v` the
/// equivariant homomorphism determined by `φ(t) = v`.
#[derive(Clone, Debug)]
pub struct LiftedCocycle {
    base: GroupModel,
    rep: UnitaryRep,
    b1: Cocycle,
    v: CVector,
}

pub fn lift_cocycle(base: &GroupModel, rep: &UnitaryRep, b1: Cocycle, v: CVector) -> Result<LiftedCocycle, WreathError> {
    if base.finite_table().is_none() {
        return Err(WreathError::InfiniteBase);
    }
    Ok(LiftedCocycle { base: base.clone(), rep: rep.clone(), b1, v })
}

impl LiftedCocycle {
    fn table(&self) -> &FiniteTable {
        self.base.finite_table().expect("finite base")
    }

    pub fn b1(&self) -> &Cocycle {
        &self.b1
    }

    pub fn v(&self) -> &CVector {
        &self.v
    }

    /// `φ(f) = Σ_x f(x) π(x) v`.
    pub fn homomorphism(&self, lamps: &std::collections::BTreeMap<usize, i64>) -> CVector {
        let mut acc = CVector::zeros(self.v.len());
        for (&x, &n) in lamps {
            acc += self.rep.element_image(&self.base, &Element::Index(x)) * &self.v * c(n as f64, 0.0);
        }
        acc
    }

    pub fn evaluate_wr(&self, gamma: &WreathElement) -> CVector {
        evaluate_element(&self.base, &self.rep, &self.b1, &Element::Index(gamma.top)) + self.homomorphism(&gamma.lamps)
    }

    /// `π` on `Γ` (trivial on `t`).
    pub fn gamma_rep(&self) -> UnitaryRep {
        self.rep.extend_trivially(1)
    }

    /// Generator values on `Γ`: `b₁(s)` for `s ∈ S_G`, then `v` for `t`.
    pub fn gamma_cocycle(&self) -> Cocycle {
        let mut values = self.b1.values().to_vec();
        values.push(self.v.clone());
        Cocycle::from_values(values)
    }

    fn pi_top(&self, gamma: &WreathElement) -> crate::linalg::CMatrix {
        self.rep.element_image(&self.base, &Element::Index(gamma.top))
    }

    /// Largest `‖b(xy) − b(x) − π(x)b(y)‖` over random pairs, and largest
    /// disagreement with generic word evaluation of the generator values.
    pub fn identity_residual<R: Rng + ?Sized>(&self, gamma: &GroupModel, rng: &mut R, samples: usize) -> (f64, f64) {
        let table = self.table();
        let generic_rep = self.gamma_rep();
        let generic = self.gamma_cocycle();
        let mut identity: f64 = 0.0;
        let mut words: f64 = 0.0;
        for _ in 0..samples {
            let x = random_wreath_element(rng, table, 3, 3);
            let y = random_wreath_element(rng, table, 3, 3);
            let xy = wr_mul(table, &x, &y);
            let r = self.evaluate_wr(&xy) - self.evaluate_wr(&x) - self.pi_top(&x) * self.evaluate_wr(&y);
            identity = identity.max(r.norm());
            let w = gamma.word_of(&Element::Wreath(x.clone()));
            words = words.max((evaluate(&generic_rep, &generic, &w) - self.evaluate_wr(&x)).norm());
        }
        (identity, words)
    }

    pub fn check_identity<R: Rng + ?Sized>(
        &self,
        gamma: &GroupModel,
        rng: &mut R,
        samples: usize,
        tol: f64,
    ) -> Result<f64, WreathError> {
        let (a, b) = self.identity_residual(gamma, rng, samples);
        let residual = a.max(b);
        if residual > tol {
            return Err(WreathError::CocycleIdentityViolated { residual });
        }
        Ok(residual)
    }

    /// `M_μ(b) = Σ_x μ(x) b(x)` for a measure on `Γ`.
    pub fn mean(&self, mu: &FinMeasure) -> CVector {
        let mut acc = CVector::zeros(self.v.len());
        for (x, w) in mu.support() {
            if let Element::Wreath(g) = x {
                acc += self.evaluate_wr(g) * c(*w, 0.0);
            }
        }
        acc
    }
}

/// Random `(g, f)` with at most `max_support` lamps of size at most `max_exp`.
pub fn random_wreath_element<R: Rng + ?Sized>(
    rng: &mut R,
    table: &FiniteTable,
    max_support: usize,
    max_exp: i64,
) -> WreathElement {
    let mut x = WreathElement::top(rng.random_range(0..table.order()));
    for _ in 0..rng.random_range(0..=max_support) {
        let n = rng.random_range(-max_exp..=max_exp);
        if n != 0 {
            let pos = rng.random_range(0..table.order());
            *x.lamps.entry(pos).or_insert(0) += n;
            if x.lamps[&pos] == 0 {
                x.lamps.remove(&pos);
            }
        }
    }
    x
}

/// `μ = (1 − w)·μ₁ + w·μ₂` on `Γ`, with `μ₁` pushed along `G → Γ` and `μ₂`
/// uniform on `t^{±1}`.
pub fn wreath_measure(gamma: &GroupModel, mu1: &FinMeasure, weight_t: f64) -> Result<FinMeasure, WreathError> {
    if !(weight_t > 0.0 && weight_t < 1.0) {
        return Err(WreathError::BadWeight(weight_t));
    }
    let mut support: Vec<(Element, f64)> = mu1
        .support()
        .iter()
        .map(|(x, w)| match x {
            Element::Index(g) => Ok((Element::Wreath(WreathElement::top(*g)), (1.0 - weight_t) * w)),
            _ => Err(WreathError::InfiniteBase),
        })
        .collect::<Result<_, _>>()?;
    let t = gamma.num_generators() - 1;
    support.push((gamma.letter_element(Letter::pos(t)), weight_t / 2.0));
    support.push((gamma.letter_element(Letter::neg(t)), weight_t / 2.0));
    Ok(make_measure(gamma, support)?)
}

/// `Har_μ(Γ, π) = Har_{μ₁}(G, π) ⊕ {lift(0, v)}`.
#[derive(Clone, Debug)]
pub struct WreathDecomposition {
    pub gamma: GroupModel,
    pub measure: FinMeasure,
    pub dim_rep: usize,
    pub base_dim_z1: usize,
    pub base_dim_b1: usize,
    pub base_dim_har: usize,
    /// `dim Har_μ(Γ, π) = base_dim_har + dim_rep`.
    pub dim_har: usize,
    /// `lift(0, e_i)` for the standard basis.
    pub basis: Vec<LiftedCocycle>,
    /// Largest `‖M_μ(lift(0, e_i))‖`.
    pub harmonic_residual: f64,
}

pub fn wreath_har_decomposition(
    base: &GroupModel,
    rep: &UnitaryRep,
    mu1: &FinMeasure,
    weight_t: f64,
    tol: Tolerances,
) -> Result<WreathDecomposition, WreathError> {
    if base.finite_table().is_none() {
        return Err(WreathError::InfiniteBase);
    }
    let space = CocycleSpace::new(base, rep, mu1, tol)?;
    let gamma = GroupModel::wreath(base)?;
    let measure = wreath_measure(&gamma, mu1, weight_t)?;
    let d = rep.dim();
    let basis: Vec<LiftedCocycle> = (0..d)
        .map(|i| {
            let v = CVector::from_fn(d, |k, _| if k == i { c(1.0, 0.0) } else { c(0.0, 0.0) });
            lift_cocycle(base, rep, Cocycle::zero(rep.num_generators(), d), v)
        })
        .collect::<Result<_, _>>()?;
    let harmonic_residual = basis.iter().map(|b| b.mean(&measure).norm()).fold(0.0, f64::max);
    Ok(WreathDecomposition {
        gamma,
        measure,
        dim_rep: d,
        base_dim_z1: space.dim_z1(),
        base_dim_b1: space.dim_b1(),
        base_dim_har: space.dim_har(),
        dim_har: space.dim_har() + d,
        basis,
        harmonic_residual,
    })
}

/// Verdict on the existence of an irreducible affine action of `Γ` with
/// linear part `π`.
#[derive(Clone, Debug)]
pub struct Theorem3Report {
    pub exists: bool,
    /// `(n, j)` per isotypic block: commutant `M_n`, irreducible of dimension `j`.
    pub blocks: Vec<(usize, usize)>,
    pub witness: Option<CVector>,
    pub witness_tries: usize,
    /// `dim invariant_span({v})` for the witness.
    pub witness_span_dim: Option<usize>,
    /// Witness cross-checks inside `Γ`: full cocycle span of `lift(0, v)`
    /// and separating for `π(G)′`.
    pub gamma_span_full: Option<bool>,
    pub separating: Option<bool>,
    /// Principal-angle distance between the `Γ` cocycle span and `invariant_span({v})`.
    pub span_agreement: Option<f64>,
}

/// `π` admits a cyclic vector iff every isotypic block `σ^{⊕m}` has
/// `m ≤ dim σ`; in commutant terms each minimal central projection has
/// `n ≤ j`.
pub fn theorem3_exists_irreducible(base: &GroupModel, rep: &UnitaryRep, tol: Tolerances, seed: u64) -> Result<Theorem3Report, WreathError> {
    if base.finite_table().is_none() {
        return Err(WreathError::InfiniteBase);
    }
    let m = commutant(rep, tol.rank);
    let blocks: Vec<(usize, usize)> = m.center_blocks()?.iter().map(|b| (b.factor_size, b.multiplicity)).collect();
    let exists = blocks.iter().all(|&(n, j)| n <= j);
    let mut report = Theorem3Report {
        exists,
        blocks,
        witness: None,
        witness_tries: 0,
        witness_span_dim: None,
        gamma_span_full: None,
        separating: None,
        span_agreement: None,
    };
    if !exists {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rep.dim();
    for tries in 1..=WITNESS_TRIES {
        let v = random_gaussian_vector(&mut rng, d);
        let span = invariant_span(rep, &[v.clone()], tol.rank);
        if !span.is_full() {
            continue;
        }
        let lifted = lift_cocycle(base, rep, Cocycle::zero(rep.num_generators(), d), v.clone())?;
        let gamma_span = cocycle_span(&lifted.gamma_rep(), &lifted.gamma_cocycle(), tol.rank);
        report.witness_tries = tries;
        report.witness_span_dim = Some(span.dim());
        report.gamma_span_full = Some(gamma_span.is_full());
        report.separating = Some(is_separating(&m, &lifted.gamma_cocycle(), tol.rank));
        report.span_agreement = Some(gamma_span.distance(&span));
        report.witness = Some(v);
        return Ok(report);
    }
    Err(WreathError::WitnessNotFound { tries: WITNESS_TRIES })
}

#[cfg(test)]
mod tests;
