//! 1-cocycles `b(gh) = b(g) + π(g)b(h)`, coboundaries, the μ-inner product,
//! harmonic cocycles and the projection onto them.
//!
//! A cocycle is determined by its values on the generators, so everything is
//! computed in the coordinate space `C^{d·|S|}` of generator values. Words
//! are evaluated with the cocycle rule, inverse letters through
//! `b(s⁻¹) = −π(s⁻¹)b(s)`.

mod oracle;
mod space;

use thiserror::Error;

use crate::groups::{Element, GroupError, GroupKind, GroupModel, Letter};
use crate::linalg::{CMatrix, CVector};
use crate::reps::{RepError, UnitaryRep};

pub use oracle::{all_pairs_z1, AllPairsSolution};
pub use space::{AdjointReport, CocycleSpace, HarmonicProjection};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CocycleError {
    #[error("cocycle spaces are not computed for {0} groups")]
    UnsupportedGroupKind(GroupKind),
    #[error("spectral gap {gap:.3e} too small to invert π⁰(μ) − I")]
    GapTooSmall { gap: f64 },
    #[error("cocycle has {found} generator values of dimension {dim}; expected {expected} of dimension {expected_dim}")]
    ShapeMismatch { expected: usize, expected_dim: usize, found: usize, dim: usize },
    #[error("μ-inner product is degenerate on Z¹ (smallest Gram eigenvalue {0:.3e})")]
    DegenerateGram(f64),
    #[error("relator solver found dim Z¹ = {relator}, all-pairs solver found {all_pairs}")]
    OracleDisagreement { relator: usize, all_pairs: usize },
    #[error("cocycle violates a relator (residual {0:.3e})")]
    NotACocycle(f64),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A cocycle stored by its values on the positive generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    values: Vec<CVector>,
}

impl Cocycle {
    pub fn zero(num_generators: usize, dim: usize) -> Self {
        Cocycle { values: vec![CVector::zeros(dim); num_generators] }
    }

    pub fn from_values(values: Vec<CVector>) -> Self {
        Cocycle { values }
    }

    /// Splits a stacked coordinate vector `(b(s₁), …, b(s_n))`.
    pub fn from_coords(dim: usize, coords: &CVector) -> Self {
        let n = if dim == 0 { 0 } else { coords.len() / dim };
        Cocycle { values: (0..n).map(|g| coords.rows(g * dim, dim).into_owned()).collect() }
    }

    pub fn coords(&self) -> CVector {
        let dim = self.dim();
        let mut out = CVector::zeros(dim * self.values.len());
        for (g, v) in self.values.iter().enumerate() {
            out.rows_mut(g * dim, dim).copy_from(v);
        }
        out
    }

    pub fn values(&self) -> &[CVector] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> &CVector {
        &self.values[generator]
    }

    pub fn dim(&self) -> usize {
        self.values.first().map_or(0, |v| v.len())
    }

    pub fn num_generators(&self) -> usize {
        self.values.len()
    }

    /// `(T b)(g) = T(b(g))`.
    pub fn apply_operator(&self, t: &CMatrix) -> Cocycle {
        Cocycle { values: self.values.iter().map(|v| t * v).collect() }
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        Cocycle { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Cocycle) -> Cocycle {
        Cocycle { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.norm() <= tol)
    }

    fn check_shape(&self, rep: &UnitaryRep) -> Result<(), CocycleError> {
        if self.values.len() != rep.num_generators() || self.values.iter().any(|v| v.len() != rep.dim()) {
            return Err(CocycleError::ShapeMismatch {
                expected: rep.num_generators(),
                expected_dim: rep.dim(),
                found: self.values.len(),
                dim: self.dim(),
            });
        }
        Ok(())
    }
}

/// `b(s₁…s_n) = Σ_k π(s₁…s_{k−1}) b(s_k)`.
pub fn evaluate(rep: &UnitaryRep, b: &Cocycle, w: &[Letter]) -> CVector {
    let d = rep.dim();
    let mut prefix = CMatrix::identity(d, d);
    let mut acc = CVector::zeros(d);
    for &l in w {
        let step = if l.inverse {
            -(rep.letter_image(l) * b.value(l.generator))
        } else {
            b.value(l.generator).clone()
        };
        acc += &prefix * step;
        prefix *= rep.letter_image(l);
    }
    acc
}

pub fn evaluate_element(group: &GroupModel, rep: &UnitaryRep, b: &Cocycle, x: &Element) -> CVector {
    evaluate(rep, b, &group.word_of(x))
}

/// The linear map `coords ↦ b(w)`, a `d × d|S|` matrix.
pub fn evaluation_matrix(rep: &UnitaryRep, w: &[Letter]) -> CMatrix {
    let d = rep.dim();
    let n = rep.num_generators();
    let mut e = CMatrix::zeros(d, d * n);
    let mut prefix = CMatrix::identity(d, d);
    for &l in w {
        let block = if l.inverse { -(&prefix * rep.letter_image(l)) } else { prefix.clone() };
        let mut view = e.view_mut((0, l.generator * d), (d, d));
        view += block;
        prefix *= rep.letter_image(l);
    }
    e
}

/// `∂_v(g) = π(g)v − v`.
pub fn coboundary(rep: &UnitaryRep, v: &CVector) -> Cocycle {
    Cocycle { values: rep.images().iter().map(|u| u * v - v).collect() }
}

/// Matrix of `v ↦ coords(∂_v)`, `d|S| × d`.
pub fn coboundary_matrix(rep: &UnitaryRep) -> CMatrix {
    let d = rep.dim();
    let n = rep.num_generators();
    let id = CMatrix::identity(d, d);
    let mut m = CMatrix::zeros(d * n, d);
    for (g, u) in rep.images().iter().enumerate() {
        m.view_mut((g * d, 0), (d, d)).copy_from(&(u - &id));
    }
    m
}

/// `max_r ‖b(r)‖` over the relators.
pub fn relator_residual(group: &GroupModel, rep: &UnitaryRep, b: &Cocycle) -> f64 {
    group.relators().iter().map(|r| evaluate(rep, b, r).norm()).fold(0.0, f64::max)
}

/// `‖b‖_Q = max_{x ∈ S ∪ S⁻¹} ‖b(x)‖`.
pub fn norm_q(group: &GroupModel, rep: &UnitaryRep, b: &Cocycle) -> f64 {
    group.letters().iter().map(|&l| evaluate(rep, b, &[l]).norm()).fold(0.0, f64::max)
}

/// Basis of `Z¹` from the relator constraints, orthonormal in the
/// Euclidean coordinates of generator values.
pub fn z1_relator_basis(group: &GroupModel, rep: &UnitaryRep, tol_rank: f64) -> Result<CMatrix, CocycleError> {
    if group.kind() == GroupKind::Wreath {
        return Err(CocycleError::UnsupportedGroupKind(GroupKind::Wreath));
    }
    let d = rep.dim();
    let n = rep.num_generators();
    if group.relators().is_empty() {
        return Ok(CMatrix::identity(d * n, d * n));
    }
    let constraints: Vec<CMatrix> = group.relators().iter().map(|r| evaluation_matrix(rep, r)).collect();
    Ok(crate::linalg::null_space(&crate::linalg::vstack(&constraints), tol_rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Catalogue;
    use crate::linalg::{c, random_gaussian_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn evaluation_matrix_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = crate::reps::catalogue::random_free_rep(&mut rng, 2, 3);
        let b = Cocycle::from_values(vec![random_gaussian_vector(&mut rng, 3), random_gaussian_vector(&mut rng, 3)]);
        let w = vec![Letter::pos(0), Letter::neg(1), Letter::neg(1), Letter::pos(0), Letter::neg(0)];
        let direct = evaluate(&rep, &b, &w);
        let via = evaluation_matrix(&rep, &w) * b.coords();
        assert!((direct - via).norm() < 1e-12);
    }

    #[test]
    fn identity_and_inverse_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rep = crate::reps::catalogue::random_free_rep(&mut rng, 2, 2);
        let b = Cocycle::from_values(vec![random_gaussian_vector(&mut rng, 2), random_gaussian_vector(&mut rng, 2)]);
        assert!(evaluate(&rep, &b, &[]).norm() == 0.0);
        let inv = evaluate(&rep, &b, &[Letter::neg(1)]);
        let expected = -(rep.image(1).adjoint() * b.value(1));
        assert!((inv - expected).norm() < 1e-14);
    }

    #[test]
    fn coboundary_of_z_character() {
        let theta = 0.9;
        let rep = UnitaryRep::character(&[theta]);
        let v = CVector::from_vec(vec![c(0.3, -1.2)]);
        let b = coboundary(&rep, &v);
        let expected = (c(theta.cos(), theta.sin()) - c(1.0, 0.0)) * v[0];
        assert!((b.value(0)[0] - expected).norm() < 1e-15);
    }

    #[test]
    fn coboundary_of_fixed_vector_vanishes() {
        let rep = UnitaryRep::trivial(2, 2);
        let v = CVector::from_vec(vec![c(1.0, 2.0), c(-3.0, 0.5)]);
        assert!(coboundary(&rep, &v).is_zero(0.0));
    }

    #[test]
    fn z1_dimensions_from_relators() {
        let f2 = GroupModel::free(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = crate::reps::catalogue::random_free_rep(&mut rng, 2, 3);
        assert_eq!(z1_relator_basis(&f2, &rep, 1e-9).unwrap().ncols(), 6);

        let c3 = Catalogue::Cyclic(3).build().unwrap();
        let omega = UnitaryRep::character(&[2.0 * PI / 3.0]);
        assert_eq!(z1_relator_basis(&c3, &omega, 1e-9).unwrap().ncols(), 1);
        let trivial = UnitaryRep::trivial(1, 1);
        assert_eq!(z1_relator_basis(&c3, &trivial, 1e-9).unwrap().ncols(), 0);
    }

    #[test]
    fn wreath_groups_are_not_solved_by_relators() {
        let w = GroupModel::wreath(&Catalogue::Cyclic(2).build().unwrap()).unwrap();
        let rep = UnitaryRep::trivial(2, 1);
        assert!(matches!(z1_relator_basis(&w, &rep, 1e-9), Err(CocycleError::UnsupportedGroupKind(_))));
    }
}
