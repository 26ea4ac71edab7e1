//! Cocycle spaces, harmonic cocycles and commutant invariants for
//! finite-dimensional unitary representations of finitely generated groups.
//!
//! The crate is organised bottom-up: [`groups`] (words, normal forms,
//! measures), [`reps`] (unitary representations and their commutants),
//! [`cocycles`] (`Z¹`, `B¹`, harmonic cocycles and the harmonic projection),
//! [`affine`] (affine isometric actions and irreducibility decisions) and
//! [`wreath`] (`G ⋉ Z^(G)` and its lifted cocycles).

pub mod affine;
pub mod cocycles;
pub mod groups;
pub mod linalg;
pub mod reps;
pub mod selftest;
pub mod wreath;

use serde::{Deserialize, Serialize};

pub use groups::{Catalogue, Element, FinMeasure, GroupKind, GroupModel, Letter, Word};
pub use linalg::{CMatrix, CVector, Subspace, C64};
pub use reps::{UnitaryRep, VNAlgebra};

/// Numerical tolerances shared by all computations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative singular-value threshold for rank decisions.
    pub rank: f64,
    /// Residual threshold for identities and subspace comparisons.
    pub residual: f64,
    /// `‖U*U − I‖` bound for generator images.
    pub unitary: f64,
    /// `‖π(r) − I‖` bound for relators.
    pub relator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-9, residual: 1e-8, unitary: 1e-10, relator: 1e-8 }
    }
}
