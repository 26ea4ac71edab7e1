use rand::Rng;

use super::oracle::{all_pairs_z1, tabulate};
use super::{
    coboundary, coboundary_matrix, evaluation_matrix, relator_residual, z1_relator_basis, Cocycle, CocycleError,
};
use crate::groups::{FinMeasure, GroupModel};
use crate::linalg::{c, column_space, hermitian_eigen, null_space, random_gaussian_vector, CMatrix, CVector, Subspace, C64};
use crate::reps::{b1_closed_certificate, fixed_and_reduced, markov_operator, validate_rep, GapCertificate, UnitaryRep};
use crate::Tolerances;

/// `Z¹ ⊇ B¹` and `Har_μ = ker M_μ ∩ Z¹` for a representation and a measure.
///
/// Internally `Z¹` is parametrised by coordinates that are orthonormal for
/// `⟨b, b′⟩_μ = Σ_x μ(x)⟨b(x), b′(x)⟩`; `B¹` and `Har` are stored as
/// orthonormal bases inside those coordinates.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    group: GroupModel,
    rep: UnitaryRep,
    measure: FinMeasure,
    tol: Tolerances,
    gram: CMatrix,
    m_mu: CMatrix,
    z1: CMatrix,
    b1: Subspace,
    har: Subspace,
    fixed: Subspace,
    reduced: Subspace,
    markov: CMatrix,
    gap: GapCertificate,
    relator_residual: f64,
    all_pairs_dim: Option<usize>,
}

/// Output of the explicit harmonic projection `b₀ = b − ∂_v`.
#[derive(Clone, Debug)]
pub struct HarmonicProjection {
    pub harmonic: Cocycle,
    pub v: CVector,
    /// `‖M_μ(b₀)‖`.
    pub mean_residual: f64,
    /// Norm of the component of `M_μ(b)` along `𝓗^G`.
    pub fixed_component: f64,
}

/// Measured constant `c` in `⟨∂_v, b⟩_μ = c·⟨v, M_μ b⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointReport {
    /// `None` when `M_μ` vanishes on `Z¹` or `𝓗⁰ = 0`.
    pub constant: Option<C64>,
    /// Largest `|⟨∂_v, b⟩ − c⟨v, M_μ b⟩| / (‖v‖ ‖b‖_μ)` over the samples.
    pub max_deviation: f64,
    pub samples: usize,
}

impl CocycleSpace {
    pub fn new(group: &GroupModel, rep: &UnitaryRep, measure: &FinMeasure, tol: Tolerances) -> Result<Self, CocycleError> {
        validate_rep(rep, group, &tol)?;
        let d = rep.dim();
        let n = rep.num_generators();
        let k = z1_relator_basis(group, rep, tol.rank)?;

        let all_pairs_dim = if group.finite_table().is_some() {
            let sol = all_pairs_z1(group, rep, tol.rank)?;
            if sol.dim_z1 != k.ncols() {
                return Err(CocycleError::OracleDisagreement { relator: k.ncols(), all_pairs: sol.dim_z1 });
            }
            Some(sol.dim_z1)
        } else {
            None
        };

        let mut gram = CMatrix::zeros(d * n, d * n);
        let mut m_mu = CMatrix::zeros(d, d * n);
        for (x, w) in measure.support() {
            let e = evaluation_matrix(rep, &group.word_of(x));
            gram += e.adjoint() * &e * c(*w, 0.0);
            m_mu += e * c(*w, 0.0);
        }

        // μ-orthonormal coordinates on Z¹: W = K Q Λ^{-1/2}.
        let z1 = if k.ncols() == 0 {
            k
        } else {
            let (lam, q) = hermitian_eigen(&(k.adjoint() * &gram * &k));
            let smallest = lam.first().copied().unwrap_or(0.0);
            let largest = lam.last().copied().unwrap_or(0.0);
            if smallest <= tol.rank * largest.max(1.0) {
                return Err(CocycleError::DegenerateGram(smallest));
            }
            let scale = CMatrix::from_diagonal(&CVector::from_iterator(lam.len(), lam.iter().map(|l| c(l.sqrt().recip(), 0.0))));
            &k * q * scale
        };

        let to_coords = z1.adjoint() * &gram;
        let b1 = Subspace::from_orthonormal(column_space(&(&to_coords * coboundary_matrix(rep)), tol.rank));
        let har = Subspace::from_orthonormal(null_space(&(&m_mu * &z1), tol.rank));

        let (fixed, reduced) = fixed_and_reduced(rep, tol.rank);
        let markov = markov_operator(rep, group, measure);
        let gap = b1_closed_certificate(&markov, &reduced, &tol);

        let relator_residual = (0..z1.ncols())
            .map(|j| relator_residual(group, rep, &Cocycle::from_coords(d, &z1.column(j).into_owned())))
            .fold(0.0, f64::max);

        Ok(CocycleSpace {
            group: group.clone(),
            rep: rep.clone(),
            measure: measure.clone(),
            tol,
            gram,
            m_mu,
            z1,
            b1,
            har,
            fixed,
            reduced,
            markov,
            gap,
            relator_residual,
            all_pairs_dim,
        })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn measure(&self) -> &FinMeasure {
        &self.measure
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn dim_z1(&self) -> usize {
        self.z1.ncols()
    }

    pub fn dim_b1(&self) -> usize {
        self.b1.dim()
    }

    pub fn dim_har(&self) -> usize {
        self.har.dim()
    }

    /// `dim Z¹` from the all-pairs solver (finite groups only).
    pub fn all_pairs_dim(&self) -> Option<usize> {
        self.all_pairs_dim
    }

    pub fn fixed(&self) -> &Subspace {
        &self.fixed
    }

    pub fn reduced(&self) -> &Subspace {
        &self.reduced
    }

    pub fn markov(&self) -> &CMatrix {
        &self.markov
    }

    pub fn gap(&self) -> &GapCertificate {
        &self.gap
    }

    /// Largest relator residual over the computed `Z¹` basis.
    pub fn relator_residual(&self) -> f64 {
        self.relator_residual
    }

    /// `B¹` inside μ-orthonormal `Z¹` coordinates.
    pub fn b1_subspace(&self) -> &Subspace {
        &self.b1
    }

    /// `Har_μ` inside μ-orthonormal `Z¹` coordinates.
    pub fn har_subspace(&self) -> &Subspace {
        &self.har
    }

    /// Largest principal angle between `ker M_μ ∩ Z¹` and `(B¹)^⊥ ∩ Z¹`.
    pub fn orthogonality_defect(&self) -> f64 {
        self.har.distance(&self.b1.orthogonal_complement(self.tol.rank))
    }

    pub fn to_z1_coords(&self, b: &Cocycle) -> CVector {
        self.z1.adjoint() * (&self.gram * b.coords())
    }

    pub fn from_z1_coords(&self, coords: &CVector) -> Cocycle {
        Cocycle::from_coords(self.dim(), &(&self.z1 * coords))
    }

    /// μ-orthonormal basis of `Har_μ`.
    pub fn har_basis(&self) -> Vec<Cocycle> {
        self.har.basis().column_iter().map(|col| self.from_z1_coords(&col.into_owned())).collect()
    }

    pub fn z1_basis(&self) -> Vec<Cocycle> {
        (0..self.dim_z1()).map(|j| Cocycle::from_coords(self.dim(), &self.z1.column(j).into_owned())).collect()
    }

    /// Checks shape and the relator constraints.
    pub fn check_cocycle(&self, b: &Cocycle) -> Result<(), CocycleError> {
        b.check_shape(&self.rep)?;
        let r = relator_residual(&self.group, &self.rep, b);
        if r > self.tol.residual * b.coords().norm().max(1.0) {
            return Err(CocycleError::NotACocycle(r));
        }
        Ok(())
    }

    /// `M_μ(b) = Σ_x μ(x) b(x)`.
    pub fn m_mu(&self, b: &Cocycle) -> CVector {
        &self.m_mu * b.coords()
    }

    /// `⟨b, b′⟩_μ`, conjugate-linear in the first argument.
    pub fn inner(&self, b: &Cocycle, other: &Cocycle) -> C64 {
        b.coords().dotc(&(&self.gram * other.coords()))
    }

    pub fn norm_mu(&self, b: &Cocycle) -> f64 {
        self.inner(b, b).re.max(0.0).sqrt()
    }

    /// `P_Har b = b − ∂_v` with `v = (π⁰(μ) − I)⁻¹ M_μ(b)`.
    pub fn project_harmonic(&self, b: &Cocycle) -> Result<HarmonicProjection, CocycleError> {
        b.check_shape(&self.rep)?;
        let m = self.m_mu(b);
        let fixed_component = self.fixed.project(&m).norm();
        let d = self.dim();
        let v = if self.reduced.dim() == 0 {
            CVector::zeros(d)
        } else {
            if !self.gap.closed {
                return Err(CocycleError::GapTooSmall { gap: self.gap.gap });
            }
            let v0 = self.reduced.basis();
            let a = v0.adjoint() * &self.markov * v0;
            let (lam, q) = hermitian_eigen(&a);
            let inv = CMatrix::from_diagonal(&CVector::from_iterator(lam.len(), lam.iter().map(|l| c(1.0 / (l - 1.0), 0.0))));
            v0 * (&q * inv * q.adjoint()) * (v0.adjoint() * &m)
        };
        let harmonic = b.sub(&coboundary(&self.rep, &v));
        let mean_residual = self.m_mu(&harmonic).norm();
        Ok(HarmonicProjection { harmonic, v, mean_residual, fixed_component })
    }

    /// Orthogonal projection onto the computed `Har` basis via the Gram
    /// structure; independent of the Markov operator.
    pub fn gram_projection(&self, b: &Cocycle) -> Cocycle {
        let coords = self.to_z1_coords(b);
        self.from_z1_coords(&self.har.project(&coords))
    }

    pub fn random_cocycle<R: Rng + ?Sized>(&self, rng: &mut R) -> Cocycle {
        self.from_z1_coords(&random_gaussian_vector(rng, self.dim_z1()))
    }

    pub fn random_harmonic<R: Rng + ?Sized>(&self, rng: &mut R) -> Cocycle {
        let coef = random_gaussian_vector(rng, self.dim_har());
        self.from_z1_coords(&(self.har.basis() * coef))
    }

    /// Fits `c` by least squares over random `(v, b)` and reports the worst
    /// normalised deviation from `⟨∂_v, b⟩_μ = c⟨v, M_μ b⟩`.
    pub fn adjoint_constant<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize) -> AdjointReport {
        let d = self.dim();
        let data: Vec<(C64, C64, f64)> = (0..samples)
            .map(|_| {
                let v = random_gaussian_vector(rng, d);
                let b = self.random_cocycle(rng);
                let lhs = self.inner(&coboundary(&self.rep, &v), &b);
                let rhs = v.dotc(&self.m_mu(&b));
                (lhs, rhs, v.norm() * self.norm_mu(&b).max(f64::MIN_POSITIVE))
            })
            .collect();
        let den: f64 = data.iter().map(|(_, r, s)| r.norm_sqr() / (s * s)).sum();
        let constant = if den > self.tol.residual {
            let num: C64 = data.iter().map(|(l, r, s)| r.conj() * l / (s * s)).sum();
            Some(num / den)
        } else {
            None
        };
        let cc = constant.unwrap_or(c(0.0, 0.0));
        let max_deviation = data.iter().map(|(l, r, s)| (l - cc * r).norm() / s).fold(0.0, f64::max);
        AdjointReport { constant, max_deviation, samples }
    }

    /// For finite groups: the relator-basis cocycles tabulated on all
    /// elements lie in the all-pairs solution space, and the two spaces
    /// coincide. Returns the largest principal angle.
    pub fn all_pairs_agreement(&self) -> Option<f64> {
        self.group.finite_table()?;
        let sol = all_pairs_z1(&self.group, &self.rep, self.tol.rank).ok()?;
        let tabulated: Vec<CVector> = self.z1_basis().iter().map(|b| tabulate(&self.group, &self.rep, b)).collect();
        let ambient = sol.basis.ambient_dim();
        let span = Subspace::span_of(ambient, &tabulated, self.tol.rank);
        Some(span.distance(&sol.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Catalogue;
    use crate::reps::catalogue::{random_abelian_rep, random_finite_rep, random_free_rep};
    use crate::reps::commutant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn space(group: &GroupModel, rep: &UnitaryRep) -> CocycleSpace {
        let mu = FinMeasure::uniform_on_generators(group).unwrap();
        CocycleSpace::new(group, rep, &mu, Tolerances::default()).unwrap()
    }

    #[test]
    fn finite_groups_have_no_harmonic_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for cat in [Catalogue::Cyclic(4), Catalogue::Symmetric3, Catalogue::Quaternion] {
            let g = cat.build().unwrap();
            for _ in 0..4 {
                let rep = random_finite_rep(&mut rng, cat, 4);
                let s = space(&g, &rep);
                assert_eq!(s.dim_har(), 0);
                assert_eq!(s.dim_z1(), s.dim_b1());
                assert_eq!(s.all_pairs_dim(), Some(s.dim_z1()));
                assert!(s.all_pairs_agreement().unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn free_group_irreducible_har_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f2 = GroupModel::free(2).unwrap();
        for k in 1..=3 {
            let rep = random_free_rep(&mut rng, 2, k);
            let s = space(&f2, &rep);
            assert_eq!(s.dim_z1(), 2 * k);
            assert_eq!(s.dim_b1(), k);
            assert_eq!(s.dim_har(), k);
        }
    }

    #[test]
    fn trivial_rep_of_z2_is_all_harmonic() {
        let z2 = GroupModel::free_abelian(2).unwrap();
        let s = space(&z2, &UnitaryRep::trivial(2, 1));
        assert_eq!((s.dim_z1(), s.dim_b1(), s.dim_har()), (2, 0, 2));
    }

    #[test]
    fn z_character_has_no_reduced_cohomology() {
        let z = GroupModel::free_abelian(1).unwrap();
        let s = space(&z, &UnitaryRep::character(&[PI / 2.0]));
        assert_eq!((s.dim_z1(), s.dim_b1(), s.dim_har()), (1, 1, 0));
        assert!((s.gap().gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f2 = GroupModel::free(2).unwrap();
        let rep = random_free_rep(&mut rng, 2, 2);
        let s = space(&f2, &rep);
        // harmonic input is fixed
        let h = s.random_harmonic(&mut rng);
        let p = s.project_harmonic(&h).unwrap();
        assert!(p.v.norm() < 1e-10);
        assert!(s.norm_mu(&p.harmonic.sub(&h)) < 1e-10);
        // coboundary input: v recovered, projection zero
        let w = s.reduced().project(&random_gaussian_vector(&mut rng, 2));
        let p = s.project_harmonic(&coboundary(&rep, &w)).unwrap();
        assert!((&p.v - &w).norm() < 1e-10);
        assert!(s.norm_mu(&p.harmonic) < 1e-10);
        // M_μ(∂_v) = (π(μ) − I)v
        let mv = s.m_mu(&coboundary(&rep, &w));
        assert!((mv - (s.markov() - CMatrix::identity(2, 2)) * &w).norm() < 1e-12);
    }

    #[test]
    fn projection_matches_gram_oracle_and_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f2 = GroupModel::free(2).unwrap();
        let sigma = random_free_rep(&mut rng, 2, 2);
        let rep = sigma.multiple(2).direct_sum(&UnitaryRep::trivial(2, 1));
        let s = space(&f2, &rep);
        let m = commutant(&rep, 1e-9);
        for _ in 0..20 {
            let b = s.random_cocycle(&mut rng);
            let p = s.project_harmonic(&b).unwrap();
            assert!(p.mean_residual < 1e-8);
            assert!(p.fixed_component < 1e-8);
            assert!(s.norm_mu(&p.harmonic.sub(&s.gram_projection(&b))) < 1e-8);
            let again = s.project_harmonic(&p.harmonic).unwrap();
            assert!(again.v.norm() < 1e-8);
            for t in m.basis() {
                let lhs = s.project_harmonic(&b.apply_operator(t)).unwrap().harmonic;
                let rhs = p.harmonic.apply_operator(t);
                assert!(s.norm_mu(&lhs.sub(&rhs)) < 1e-8);
            }
        }
    }

    #[test]
    fn orthogonality_and_adjoint_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let z2 = GroupModel::free_abelian(2).unwrap();
        let rep = random_abelian_rep(&mut rng, 2, 3, 0.4);
        let s = space(&z2, &rep);
        assert!(s.orthogonality_defect() < 1e-8);
        let f2 = GroupModel::free(2).unwrap();
        let s = space(&f2, &random_free_rep(&mut rng, 2, 3));
        assert!(s.orthogonality_defect() < 1e-8);
        let adj = s.adjoint_constant(&mut rng, 100);
        let cst = adj.constant.unwrap();
        assert!((cst - c(-2.0, 0.0)).norm() < 1e-8, "{cst}");
        assert!(adj.max_deviation < 1e-8);
    }

    #[test]
    fn inner_product_bound_by_second_moment() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let f2 = GroupModel::free(2).unwrap();
        let w = |s: &str| f2.parse_word(s).unwrap();
        let mu = FinMeasure::from_words(
            &f2,
            &[(w("a b"), 0.2), (w("b^-1 a^-1"), 0.2), (w("b"), 0.1), (w("b^-1"), 0.1), (w("a^2 b"), 0.2), (w("b^-1 a^-2"), 0.2)],
        )
        .unwrap();
        let rep = random_free_rep(&mut rng, 2, 2);
        let s = CocycleSpace::new(&f2, &rep, &mu, Tolerances::default()).unwrap();
        for _ in 0..50 {
            let b = s.random_cocycle(&mut rng);
            let nq = super::super::norm_q(&f2, &rep, &b);
            assert!(s.norm_mu(&b).powi(2) <= mu.second_moment() * nq * nq * (1.0 + 1e-12));
            assert!(s.inner(&b, &b).re >= 0.0);
        }
    }
}
