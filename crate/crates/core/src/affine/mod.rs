//! Affine isometric actions `α(g)v = π(g)v + b(g)`, invariant spans,
//! irreducibility and separating vectors.

mod existence;

use rand::Rng;
use thiserror::Error;

use crate::cocycles::{coboundary, evaluate_element, Cocycle, CocycleError, CocycleSpace};
use crate::groups::{Element, GroupModel};
use crate::linalg::{columns_to_matrix, CMatrix, hstack, rank, random_gaussian_vector, CVector, Subspace};
use crate::reps::{AlgebraError, UnitaryRep, VNAlgebra};

pub use existence::{coupling_pair, exists_irreducible_affine, BlockVerdict, Coupling, ExistenceReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffineError {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no separating harmonic cocycle found in {tries} Gaussian draws although dim_M Har >= 1")]
    WitnessNotFound { tries: usize },
    #[error("sampled translate b + dv with non-full span although the action was accepted as irreducible")]
    SamplerFalsified,
    #[error("blockwise Har dimensions sum to {blocks}, global Har has dimension {global}")]
    BlockMismatch { blocks: usize, global: usize },
}

/// `α_{π,b}` on `C^d`.
#[derive(Clone, Debug)]
pub struct AffineAction {
    group: GroupModel,
    rep: UnitaryRep,
    cocycle: Cocycle,
}

impl AffineAction {
    pub fn new(group: &GroupModel, rep: &UnitaryRep, cocycle: Cocycle) -> Self {
        AffineAction { group: group.clone(), rep: rep.clone(), cocycle }
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// `π(g)v + b(g)`.
    pub fn apply(&self, g: &Element, v: &CVector) -> CVector {
        self.rep.element_image(&self.group, g) * v + evaluate_element(&self.group, &self.rep, &self.cocycle, g)
    }

    /// The action of `b + ∂_v`, conjugate to this one by the translation `t_v`.
    pub fn translate(&self, v: &CVector) -> AffineAction {
        AffineAction {
            group: self.group.clone(),
            rep: self.rep.clone(),
            cocycle: self.cocycle.add(&coboundary(&self.rep, v)),
        }
    }

    /// Largest `‖α(gh)v − α(g)α(h)v‖` over `samples` random triples drawn
    /// from the ball of radius `radius`.
    pub fn composition_residual<R: Rng + ?Sized>(&self, rng: &mut R, radius: usize, samples: usize) -> f64 {
        let ball = match self.group.ball(radius) {
            Ok(b) => b,
            Err(_) => return 0.0,
        };
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let g = &ball[rng.random_range(0..ball.len())];
            let h = &ball[rng.random_range(0..ball.len())];
            let v = random_gaussian_vector(rng, self.rep.dim());
            let lhs = self.apply(&self.group.mul(g, h), &v);
            let rhs = self.apply(g, &self.apply(h, &v));
            worst = worst.max((lhs - rhs).norm());
        }
        worst
    }
}

/// Smallest `π(G)`-invariant subspace containing `vectors`, by adjoining
/// `π(s)^{±1}` applied to the current basis until the dimension stabilises.
pub fn invariant_span(rep: &UnitaryRep, vectors: &[CVector], tol_rank: f64) -> Subspace {
    let d = rep.dim();
    let mut current = Subspace::span_of(d, vectors, tol_rank);
    let adjoints: Vec<_> = rep.images().iter().map(|u| u.adjoint()).collect();
    for _ in 0..=d {
        if current.is_zero() || current.is_full() {
            return current;
        }
        let mut blocks = vec![current.basis().clone()];
        for (u, ua) in rep.images().iter().zip(&adjoints) {
            blocks.push(u * current.basis());
            blocks.push(ua * current.basis());
        }
        let refs: Vec<_> = blocks.iter().collect();
        let next = Subspace::span(&hstack(&refs), tol_rank);
        if next.dim() == current.dim() {
            return next;
        }
        current = next;
    }
    current
}

/// `span b(G)`: invariant because `π(g)b(h) = b(gh) − b(g)`, and generated
/// by the generator values.
pub fn cocycle_span(rep: &UnitaryRep, b: &Cocycle, tol_rank: f64) -> Subspace {
    invariant_span(rep, b.values(), tol_rank)
}

/// `span{b(g) : g ∈ ball(r)}`, for cross-checking [`cocycle_span`].
pub fn ball_span(group: &GroupModel, rep: &UnitaryRep, b: &Cocycle, radius: usize, tol_rank: f64) -> Option<Subspace> {
    let ball = group.ball(radius).ok()?;
    let vals: Vec<CVector> = ball.iter().map(|g| evaluate_element(group, rep, b, g)).collect();
    Some(Subspace::span_of(rep.dim(), &vals, tol_rank))
}

/// Irreducibility decided by whether the harmonic part of `b` has full span.
#[derive(Clone, Debug)]
pub struct IrreducibilityCertificate {
    pub irreducible: bool,
    pub harmonic: Cocycle,
    pub span_dim: usize,
    pub ambient_dim: usize,
    /// `‖M_μ(b₀)‖` of the projection.
    pub mean_residual: f64,
}

pub fn is_irreducible(space: &CocycleSpace, b: &Cocycle) -> Result<IrreducibilityCertificate, AffineError> {
    let p = space.project_harmonic(b)?;
    let span = cocycle_span(space.rep(), &p.harmonic, space.tolerances().rank);
    Ok(IrreducibilityCertificate {
        irreducible: span.is_full(),
        span_dim: span.dim(),
        ambient_dim: space.dim(),
        harmonic: p.harmonic,
        mean_residual: p.mean_residual,
    })
}

/// Falsification oracle: for `samples` random `v`, `span (b + ∂_v)(G)` must be
/// full whenever the action is irreducible. Returns the number of sampled
/// translates with full span.
pub fn translate_span_sampler<R: Rng + ?Sized>(
    space: &CocycleSpace,
    b: &Cocycle,
    rng: &mut R,
    samples: usize,
) -> usize {
    let rep = space.rep();
    (0..samples)
        .filter(|_| {
            let v = random_gaussian_vector(rng, rep.dim());
            cocycle_span(rep, &b.add(&coboundary(rep, &v)), space.tolerances().rank).is_full()
        })
        .count()
}

/// `T ↦ Tb` (coordinate-wise on generator values) is injective on `𝓜`.
pub fn is_separating(algebra: &VNAlgebra, b: &Cocycle, tol_rank: f64) -> bool {
    if algebra.dim() == 0 {
        return true;
    }
    let norm = b.coords().norm();
    if norm == 0.0 {
        return false;
    }
    let unit = b.apply_operator(&(CMatrix::identity(b.dim(), b.dim()) * crate::linalg::c(1.0 / norm, 0.0)));
    let images: Vec<CVector> = algebra.basis().iter().map(|t| unit.apply_operator(t).coords()).collect();
    rank(&columns_to_matrix(b.dim() * b.num_generators(), &images), tol_rank) == algebra.dim()
}
