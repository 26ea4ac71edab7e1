//! Finite-dimensional unitary representations: validation, fixed vectors,
//! Markov operators, the spectral-gap certificate, commutants and their
//! factor decomposition.

mod algebra;
pub mod catalogue;

use thiserror::Error;

use crate::groups::{Element, FinMeasure, GroupModel, Letter};
use crate::linalg::{c, hermitian_eigen, op_norm, vstack, CMatrix, Subspace};
use crate::Tolerances;

pub use algebra::{
    commutant, commutant_of, generated_algebra, vn_dimension, AlgebraError, Block, BlockSummary, VNAlgebra, VnDimension,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("representation has {found} generator images, group has {expected} generators")]
    GeneratorCount { expected: usize, found: usize },
    #[error("image of generator {generator} is not a square {dim}x{dim} matrix")]
    BadShape { generator: String, dim: usize },
    #[error("image of {generator} is not unitary (residual {residual:.3e})")]
    NotUnitary { generator: String, residual: f64 },
    #[error("relator {relator} is violated (residual {residual:.3e})")]
    RelatorViolated { relator: String, residual: f64 },
}

/// `π: S → U(d)`; images of inverse letters are the adjoints.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    dim: usize,
    images: Vec<CMatrix>,
    inverse_images: Vec<CMatrix>,
}

impl UnitaryRep {
    pub fn new(images: Vec<CMatrix>) -> Result<Self, RepError> {
        let dim = images.first().map_or(0, |m| m.nrows());
        for (i, m) in images.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(RepError::BadShape { generator: format!("#{i}"), dim });
            }
        }
        let inverse_images = images.iter().map(|m| m.adjoint()).collect();
        Ok(UnitaryRep { dim, images, inverse_images })
    }

    pub fn trivial(num_generators: usize, dim: usize) -> Self {
        Self::new(vec![CMatrix::identity(dim, dim); num_generators]).expect("square")
    }

    /// One-dimensional rep `s ↦ e^{iθ_s}`.
    pub fn character(angles: &[f64]) -> Self {
        let images = angles.iter().map(|&t| CMatrix::from_element(1, 1, c(t.cos(), t.sin()))).collect();
        Self::new(images).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[CMatrix] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &CMatrix {
        &self.images[generator]
    }

    pub fn letter_image(&self, l: Letter) -> &CMatrix {
        if l.inverse {
            &self.inverse_images[l.generator]
        } else {
            &self.images[l.generator]
        }
    }

    pub fn word_image(&self, w: &[Letter]) -> CMatrix {
        let mut m = CMatrix::identity(self.dim, self.dim);
        for &l in w {
            m *= self.letter_image(l);
        }
        m
    }

    pub fn element_image(&self, group: &GroupModel, x: &Element) -> CMatrix {
        self.word_image(&group.word_of(x))
    }

    pub fn direct_sum(&self, other: &UnitaryRep) -> UnitaryRep {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| crate::linalg::block_diag(&[a.clone(), b.clone()]))
            .collect();
        Self::new(images).expect("square")
    }

    /// `π^{⊕m}` as block-diagonal copies.
    pub fn multiple(&self, m: usize) -> UnitaryRep {
        let images = self.images.iter().map(|a| crate::linalg::block_diag(&vec![a.clone(); m])).collect();
        Self::new(images).expect("square")
    }

    /// `U π(·) U*`.
    pub fn conjugate(&self, u: &CMatrix) -> UnitaryRep {
        let images = self.images.iter().map(|a| u * a * u.adjoint()).collect();
        Self::new(images).expect("square")
    }

    /// Restriction to an invariant subspace with orthonormal basis `v`.
    pub fn restrict(&self, v: &CMatrix) -> UnitaryRep {
        let images = self.images.iter().map(|a| v.adjoint() * a * v).collect();
        Self::new(images).expect("square")
    }

    /// Appends `extra` generators acting trivially.
    pub fn extend_trivially(&self, extra: usize) -> UnitaryRep {
        let mut images = self.images.clone();
        images.extend(std::iter::repeat_n(CMatrix::identity(self.dim, self.dim), extra));
        Self::new(images).expect("square")
    }
}

/// Residuals of a successful validation.
#[derive(Clone, Debug, PartialEq)]
pub struct RepCertificate {
    pub unitary_residual: f64,
    pub relator_residual: f64,
}

pub fn validate_rep(rep: &UnitaryRep, group: &GroupModel, tol: &Tolerances) -> Result<RepCertificate, RepError> {
    if rep.num_generators() != group.num_generators() {
        return Err(RepError::GeneratorCount { expected: group.num_generators(), found: rep.num_generators() });
    }
    let d = rep.dim();
    let id = CMatrix::identity(d, d);
    let mut unitary_residual: f64 = 0.0;
    for (i, u) in rep.images().iter().enumerate() {
        let r = op_norm(&(u.adjoint() * u - &id));
        if r > tol.unitary {
            return Err(RepError::NotUnitary { generator: group.generators()[i].clone(), residual: r });
        }
        unitary_residual = unitary_residual.max(r);
    }
    let mut relator_residual: f64 = 0.0;
    for rel in group.relators() {
        let r = op_norm(&(rep.word_image(rel) - &id));
        if r > tol.relator {
            return Err(RepError::RelatorViolated { relator: group.format_word(rel), residual: r });
        }
        relator_residual = relator_residual.max(r);
    }
    Ok(RepCertificate { unitary_residual, relator_residual })
}

/// `(𝓗^G, 𝓗⁰)`: the fixed vectors and their orthogonal complement.
pub fn fixed_and_reduced(rep: &UnitaryRep, tol_rank: f64) -> (Subspace, Subspace) {
    let d = rep.dim();
    if rep.num_generators() == 0 {
        return (Subspace::full(d), Subspace::zero(d));
    }
    let id = CMatrix::identity(d, d);
    let stacked = vstack(&rep.images().iter().map(|u| u - &id).collect::<Vec<_>>());
    let fixed = Subspace::kernel_of(&stacked, tol_rank);
    let reduced = fixed.orthogonal_complement(tol_rank);
    (fixed, reduced)
}

/// `π(μ) = Σ_x μ(x) π(x)` on the whole space.
pub fn markov_operator(rep: &UnitaryRep, group: &GroupModel, measure: &FinMeasure) -> CMatrix {
    let d = rep.dim();
    let mut m = CMatrix::zeros(d, d);
    for (x, w) in measure.support() {
        m += rep.element_image(group, x) * c(*w, 0.0);
    }
    m
}

/// `π⁰(μ)`: the Markov operator compressed to `𝓗⁰` in the given basis.
pub fn reduced_markov(markov: &CMatrix, reduced: &Subspace) -> CMatrix {
    reduced.basis().adjoint() * markov * reduced.basis()
}

/// Distance from 1 to the spectrum of `π⁰(μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapCertificate {
    /// `min |1 − λ|`; `+∞` when `𝓗⁰ = 0`.
    pub gap: f64,
    pub eigenvalues: Vec<f64>,
    /// Whether the gap exceeds the residual tolerance, so `π⁰(μ) − I` may be inverted.
    pub closed: bool,
}

pub fn b1_closed_certificate(markov: &CMatrix, reduced: &Subspace, tol: &Tolerances) -> GapCertificate {
    if reduced.dim() == 0 {
        return GapCertificate { gap: f64::INFINITY, eigenvalues: Vec::new(), closed: true };
    }
    let (eigenvalues, _) = hermitian_eigen(&reduced_markov(markov, reduced));
    let gap = eigenvalues.iter().map(|l| (1.0 - l).abs()).fold(f64::INFINITY, f64::min);
    GapCertificate { gap, eigenvalues, closed: gap > tol.residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Catalogue, FinMeasure};
    use crate::linalg::{random_unitary, CVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn trivial_rep_is_valid() {
        let g = Catalogue::Dihedral(4).build().unwrap();
        assert!(validate_rep(&UnitaryRep::trivial(2, 3), &g, &tol()).is_ok());
    }

    #[test]
    fn z_character_is_valid() {
        let z = GroupModel::free_abelian(1).unwrap();
        assert!(validate_rep(&UnitaryRep::character(&[0.7]), &z, &tol()).is_ok());
    }

    #[test]
    fn wrong_rotation_violates_c3_relator() {
        let c3 = Catalogue::Cyclic(3).build().unwrap();
        let rep = UnitaryRep::character(&[2.0 * PI / 5.0]);
        match validate_rep(&rep, &c3, &tol()) {
            Err(RepError::RelatorViolated { relator, residual }) => {
                assert_eq!(relator, "t^3");
                assert!(residual > 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_unitary_rejected() {
        let z = GroupModel::free_abelian(1).unwrap();
        let rep = UnitaryRep::new(vec![CMatrix::from_element(1, 1, c(2.0, 0.0))]).unwrap();
        assert!(matches!(validate_rep(&rep, &z, &tol()), Err(RepError::NotUnitary { .. })));
    }

    #[test]
    fn fixed_vectors() {
        let (fixed, reduced) = fixed_and_reduced(&UnitaryRep::trivial(2, 3), 1e-9);
        assert_eq!((fixed.dim(), reduced.dim()), (3, 0));
        let (fixed, _) = fixed_and_reduced(&UnitaryRep::character(&[0.3]), 1e-9);
        assert_eq!(fixed.dim(), 0);
        // Regular representation of C3 as a cyclic shift.
        let mut shift = CMatrix::zeros(3, 3);
        for i in 0..3 {
            shift[((i + 1) % 3, i)] = c(1.0, 0.0);
        }
        let (fixed, reduced) = fixed_and_reduced(&UnitaryRep::new(vec![shift]).unwrap(), 1e-9);
        assert_eq!((fixed.dim(), reduced.dim()), (1, 2));
        let ones = CVector::from_element(3, c(1.0, 0.0));
        assert!(fixed.contains_vector(&ones, 1e-12));
    }

    #[test]
    fn markov_operator_examples() {
        let z = GroupModel::free_abelian(1).unwrap();
        let mu = FinMeasure::uniform_on_generators(&z).unwrap();
        let m = markov_operator(&UnitaryRep::trivial(1, 2), &z, &mu);
        assert!((m - CMatrix::identity(2, 2)).norm() < 1e-15);

        let rep = UnitaryRep::character(&[PI / 2.0]);
        let m = markov_operator(&rep, &z, &mu);
        assert!(m[(0, 0)].norm() < 1e-15);
        let (_, reduced) = fixed_and_reduced(&rep, 1e-9);
        let cert = b1_closed_certificate(&m, &reduced, &tol());
        assert!((cert.gap - 1.0).abs() < 1e-14);

        let c2 = Catalogue::Cyclic(2).build().unwrap();
        let u = c2.parse_word("t").unwrap();
        let delta = FinMeasure::from_words(&c2, &[(u, 1.0)]).unwrap();
        let sign = UnitaryRep::character(&[PI]);
        let m = markov_operator(&sign, &c2, &delta);
        assert!((m[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
        let (_, reduced) = fixed_and_reduced(&sign, 1e-9);
        assert!((b1_closed_certificate(&m, &reduced, &tol()).gap - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gap_is_infinite_without_reduced_part() {
        let z = GroupModel::free_abelian(1).unwrap();
        let mu = FinMeasure::uniform_on_generators(&z).unwrap();
        let rep = UnitaryRep::trivial(1, 2);
        let (_, reduced) = fixed_and_reduced(&rep, 1e-9);
        let cert = b1_closed_certificate(&markov_operator(&rep, &z, &mu), &reduced, &tol());
        assert!(cert.gap.is_infinite());
    }

    #[test]
    fn markov_spectrum_and_eigenvalue_one_multiplicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f2 = GroupModel::free(2).unwrap();
        let mu = FinMeasure::uniform_on_generators(&f2).unwrap();
        for _ in 0..20 {
            // random rep with a 1-dimensional trivial summand
            let sigma = UnitaryRep::new(vec![random_unitary(&mut rng, 3), random_unitary(&mut rng, 3)]).unwrap();
            let rep = sigma.direct_sum(&UnitaryRep::trivial(2, 1)).conjugate(&random_unitary(&mut rng, 4));
            let m = markov_operator(&rep, &f2, &mu);
            assert!((&m - m.adjoint()).norm() < 1e-10);
            let (vals, _) = hermitian_eigen(&m);
            assert!(vals.iter().all(|l| l.abs() <= 1.0 + 1e-10));
            let (fixed, _) = fixed_and_reduced(&rep, 1e-9);
            let ones = vals.iter().filter(|l| (*l - 1.0).abs() < 1e-8).count();
            assert_eq!(ones, fixed.dim());
            assert_eq!(fixed.dim(), 1);
        }
    }
}
