//! Finite-dimensional von Neumann algebras given by a spanning set of
//! matrices: commutants, centres, minimal central projections and the
//! coupling dimension of modules over a factor.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::UnitaryRep;
use crate::linalg::{
    c, columns_to_matrix, hermitian_eigen, null_space, op_norm, rank, unvec, vec_of, vstack, CMatrix, CVector,
    Subspace,
};

const BLOCK_SEED: u64 = 0x5eed_b10c;
const BLOCK_ATTEMPTS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("algebra is not a factor (centre has dimension {center_dim})")]
    NotFactor { center_dim: usize },
    #[error("subspace is not invariant under the algebra (residual {residual:.3e})")]
    NotInvariant { residual: f64 },
    #[error("ambiguous block structure: {0}")]
    DegenerateBlock(String),
    #[error("spanning set is not closed under products and adjoints (residual {residual:.3e})")]
    NotClosed { residual: f64 },
}

/// A *-subalgebra of `M_d(C)` stored as a Frobenius-orthonormal basis.
#[derive(Clone, Debug)]
pub struct VNAlgebra {
    ambient: usize,
    basis: Vec<CMatrix>,
    tol_rank: f64,
}

/// A minimal central projection whose block is `M_n` acting with multiplicity `j`.
#[derive(Clone, Debug)]
pub struct Block {
    pub projection: CMatrix,
    pub factor_size: usize,
    pub multiplicity: usize,
}

impl Block {
    pub fn rank(&self) -> usize {
        self.factor_size * self.multiplicity
    }

    /// Normalised trace `τ = Tr/n` on the block, computed on the ambient space
    /// as `Tr(P X) / (n j)`.
    pub fn trace(&self, x: &CMatrix) -> f64 {
        (&self.projection * x).trace().re / self.rank() as f64
    }
}

/// Serializable summary of a block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSummary {
    pub factor_type: String,
    pub factor_size: usize,
    pub multiplicity: usize,
}

impl From<&Block> for BlockSummary {
    fn from(b: &Block) -> Self {
        BlockSummary { factor_type: format!("I_{}", b.factor_size), factor_size: b.factor_size, multiplicity: b.multiplicity }
    }
}

impl VNAlgebra {
    /// Orthonormalises the span of `mats` (as vectors in `C^{d²}`).
    pub fn from_spanning(ambient: usize, mats: &[CMatrix], tol_rank: f64) -> Self {
        let vecs: Vec<CVector> = mats.iter().map(vec_of).collect();
        let span = Subspace::span_of(ambient * ambient, &vecs, tol_rank);
        let basis = span.basis().column_iter().map(|col| unvec(&col.into_owned(), ambient, ambient)).collect();
        VNAlgebra { ambient, basis, tol_rank }
    }

    /// As [`from_spanning`](Self::from_spanning), additionally checking
    /// closure under products and adjoints.
    pub fn from_basis_checked(ambient: usize, mats: &[CMatrix], tol_rank: f64, tol_res: f64) -> Result<Self, AlgebraError> {
        let alg = Self::from_spanning(ambient, mats, tol_rank);
        let residual = alg.closure_residual();
        if residual > tol_res {
            return Err(AlgebraError::NotClosed { residual });
        }
        Ok(alg)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn as_subspace(&self) -> Subspace {
        let vecs: Vec<CVector> = self.basis.iter().map(vec_of).collect();
        Subspace::from_orthonormal(columns_to_matrix(self.ambient * self.ambient, &vecs))
    }

    pub fn membership_residual(&self, m: &CMatrix) -> f64 {
        let v = vec_of(m);
        let mut r = v.clone();
        for b in &self.basis {
            let bv = vec_of(b);
            r -= &bv * bv.dotc(&v);
        }
        r.norm()
    }

    /// Largest distance of `A_i A_j` or `A_i*` from the span.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.basis {
            worst = worst.max(self.membership_residual(&a.adjoint()));
            for b in &self.basis {
                worst = worst.max(self.membership_residual(&(a * b)));
            }
        }
        worst
    }

    pub fn commutant(&self) -> VNAlgebra {
        commutant_of(self.ambient, &self.basis, self.tol_rank)
    }

    /// `Z(𝓜) = 𝓜 ∩ 𝓜′`.
    pub fn center(&self) -> VNAlgebra {
        let m = self.dim();
        if m == 0 {
            return self.clone();
        }
        let d2 = self.ambient * self.ambient;
        // column i: the commutators [A_i, A_j] stacked over j
        let mut big = CMatrix::zeros(d2 * m, m);
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let comm = a * b - b * a;
                big.view_mut((j * d2, i), (d2, 1)).copy_from(&vec_of(&comm));
            }
        }
        let kernel = null_space(&big, self.tol_rank);
        let center: Vec<CMatrix> = kernel
            .column_iter()
            .map(|coef| {
                let mut z = CMatrix::zeros(self.ambient, self.ambient);
                for (k, a) in self.basis.iter().enumerate() {
                    z += a * coef[k];
                }
                z
            })
            .collect();
        VNAlgebra::from_spanning(self.ambient, &center, self.tol_rank)
    }

    pub fn is_factor(&self) -> bool {
        self.center().dim() == 1
    }

    /// Minimal central projections with their `I_n` types and multiplicities.
    pub fn center_blocks(&self) -> Result<Vec<Block>, AlgebraError> {
        let center = self.center();
        let r = center.dim();
        let d = self.ambient;
        if r == 1 {
            return Ok(vec![self.block_from_projection(CMatrix::identity(d, d), d)?]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(BLOCK_SEED);
        for _ in 0..BLOCK_ATTEMPTS {
            // Generic self-adjoint central element: distinct eigenvalue per block.
            let mut h = CMatrix::zeros(d, d);
            for z in center.basis() {
                let herm = (z + z.adjoint()) * c(0.5, 0.0);
                let anti = (z - z.adjoint()) * c(0.0, -0.5);
                h += herm * c(rng.random_range(-1.0..1.0), 0.0) + anti * c(rng.random_range(-1.0..1.0), 0.0);
            }
            let (vals, vecs) = hermitian_eigen(&h);
            let clusters = cluster_eigenvalues(&vals);
            if clusters.len() != r {
                continue;
            }
            let mut blocks = Vec::with_capacity(r);
            for cluster in clusters {
                let cols: Vec<CVector> = cluster.iter().map(|&k| vecs.column(k).into_owned()).collect();
                let v = columns_to_matrix(d, &cols);
                blocks.push(self.block_from_projection(&v * v.adjoint(), cols.len())?);
            }
            return Ok(blocks);
        }
        Err(AlgebraError::DegenerateBlock(format!(
            "could not separate {r} central projections by a generic central element"
        )))
    }

    fn block_from_projection(&self, p: CMatrix, block_rank: usize) -> Result<Block, AlgebraError> {
        let cut: Vec<CVector> = self.basis.iter().map(|a| vec_of(&(&p * a))).collect();
        let dim = rank(&columns_to_matrix(self.ambient * self.ambient, &cut), self.tol_rank);
        let n = (dim as f64).sqrt().round() as usize;
        if n == 0 || n * n != dim {
            return Err(AlgebraError::DegenerateBlock(format!("block algebra has non-square dimension {dim}")));
        }
        if block_rank % n != 0 {
            return Err(AlgebraError::DegenerateBlock(format!(
                "block of rank {block_rank} is not a multiple of the factor size {n}"
            )));
        }
        Ok(Block { projection: p, factor_size: n, multiplicity: block_rank / n })
    }

    /// `V* A V` for each basis element, `V` an orthonormal basis of an
    /// invariant subspace.
    pub fn restrict(&self, v: &CMatrix) -> VNAlgebra {
        let mats: Vec<CMatrix> = self.basis.iter().map(|a| v.adjoint() * a * v).collect();
        VNAlgebra::from_spanning(v.ncols(), &mats, self.tol_rank)
    }

    /// Largest `‖(I − P_K) A B_K‖` over basis elements.
    pub fn invariance_residual(&self, k: &Subspace) -> f64 {
        self.basis
            .iter()
            .map(|a| {
                let ab = a * k.basis();
                op_norm(&(&ab - k.basis() * (k.basis().adjoint() * &ab)))
            })
            .fold(0.0, f64::max)
    }
}

/// Groups ascending eigenvalues whose consecutive gaps are below a relative threshold.
fn cluster_eigenvalues(vals: &[f64]) -> Vec<Vec<usize>> {
    let spread = vals.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
    let sep = 1e-6 * spread;
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (k, v) in vals.iter().enumerate() {
        match out.last_mut() {
            Some(cl) if (v - vals[*cl.last().expect("nonempty")]).abs() <= sep => cl.push(k),
            _ => out.push(vec![k]),
        }
    }
    out
}

/// `{T : T A = A T for all A in mats}` as the kernel of the stacked maps
/// `vec(T) ↦ (Aᵀ ⊗ I − I ⊗ A) vec(T)`.
pub fn commutant_of(ambient: usize, mats: &[CMatrix], tol_rank: f64) -> VNAlgebra {
    let d = ambient;
    let id = CMatrix::identity(d, d);
    if mats.is_empty() {
        let all: Vec<CMatrix> = (0..d * d).map(|k| unvec(&CVector::from_fn(d * d, |i, _| if i == k { c(1.0, 0.0) } else { c(0.0, 0.0) }), d, d)).collect();
        return VNAlgebra::from_spanning(d, &all, tol_rank);
    }
    let blocks: Vec<CMatrix> = mats.iter().map(|a| a.transpose().kronecker(&id) - id.kronecker(a)).collect();
    let kernel = null_space(&vstack(&blocks), tol_rank);
    let basis: Vec<CMatrix> = kernel.column_iter().map(|col| unvec(&col.into_owned(), d, d)).collect();
    VNAlgebra { ambient: d, basis, tol_rank }
}

/// `π(G)′`; commuting with the generators suffices.
pub fn commutant(rep: &UnitaryRep, tol_rank: f64) -> VNAlgebra {
    commutant_of(rep.dim(), rep.images(), tol_rank)
}

/// The unital *-algebra generated by `mats`.
pub fn generated_algebra(ambient: usize, mats: &[CMatrix], tol_rank: f64) -> VNAlgebra {
    let mut gens: Vec<CMatrix> = mats.to_vec();
    gens.extend(mats.iter().map(|m| m.adjoint()));
    let mut alg = VNAlgebra::from_spanning(ambient, &[CMatrix::identity(ambient, ambient)], tol_rank);
    loop {
        let mut next: Vec<CMatrix> = alg.basis.clone();
        for b in &alg.basis {
            for g in &gens {
                next.push(g * b);
            }
        }
        let grown = VNAlgebra::from_spanning(ambient, &next, tol_rank);
        if grown.dim() == alg.dim() {
            return grown;
        }
        alg = grown;
    }
}

/// `dim_𝓜 K = dim K / n²` for a factor `𝓜 ≅ M_n`; equals `Σ_i τ(P_ii)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VnDimension {
    pub module_dim: usize,
    pub factor_size: usize,
}

impl VnDimension {
    pub fn ratio(&self) -> Ratio<usize> {
        Ratio::new(self.module_dim, self.factor_size * self.factor_size)
    }

    pub fn value(&self) -> f64 {
        self.module_dim as f64 / (self.factor_size * self.factor_size) as f64
    }

    pub fn at_least_one(&self) -> bool {
        self.module_dim >= self.factor_size * self.factor_size
    }
}

pub fn vn_dimension(alg: &VNAlgebra, k: &Subspace, tol_res: f64) -> Result<VnDimension, AlgebraError> {
    let center_dim = alg.center().dim();
    if center_dim != 1 {
        return Err(AlgebraError::NotFactor { center_dim });
    }
    let residual = alg.invariance_residual(k);
    if residual > tol_res {
        return Err(AlgebraError::NotInvariant { residual });
    }
    let n = (alg.dim() as f64).sqrt().round() as usize;
    if n * n != alg.dim() {
        return Err(AlgebraError::DegenerateBlock(format!("factor of non-square dimension {}", alg.dim())));
    }
    Ok(VnDimension { module_dim: k.dim(), factor_size: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_unitary, DEFAULT_TOL_RANK};
    use rand::SeedableRng;

    fn random_irrep(rng: &mut ChaCha8Rng, k: usize) -> UnitaryRep {
        UnitaryRep::new(vec![random_unitary(rng, k), random_unitary(rng, k)]).unwrap()
    }

    #[test]
    fn schur_irreducible_commutant_is_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sigma = random_irrep(&mut rng, 3);
        let m = commutant(&sigma, DEFAULT_TOL_RANK);
        assert_eq!(m.dim(), 1);
        let blocks = m.center_blocks().unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].factor_size, blocks[0].multiplicity), (1, 3));
    }

    #[test]
    fn sigma_plus_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sigma = random_irrep(&mut rng, 2);
        let pi = sigma.multiple(2).conjugate(&random_unitary(&mut rng, 4));
        let m = commutant(&pi, DEFAULT_TOL_RANK);
        assert_eq!(m.dim(), 4);
        assert!(m.is_factor());
        let blocks = m.center_blocks().unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].factor_size, blocks[0].multiplicity), (2, 2));
    }

    #[test]
    fn sigma_plus_tau() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pi = random_irrep(&mut rng, 2).direct_sum(&random_irrep(&mut rng, 2));
        let m = commutant(&pi, DEFAULT_TOL_RANK);
        assert_eq!(m.dim(), 2);
        assert!(!m.is_factor());
        let blocks = m.center_blocks().unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert_eq!((b.factor_size, b.multiplicity), (1, 2));
            assert!((b.trace(&CMatrix::identity(4, 4)) - 1.0).abs() < 1e-12);
        }
        let sum = &blocks[0].projection + &blocks[1].projection;
        assert!((sum - CMatrix::identity(4, 4)).norm() < 1e-10);
        assert!((&blocks[0].projection * &blocks[1].projection).norm() < 1e-10);
    }

    #[test]
    fn scalars_have_one_block() {
        let alg = VNAlgebra::from_spanning(3, &[CMatrix::identity(3, 3)], DEFAULT_TOL_RANK);
        let blocks = alg.center_blocks().unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].factor_size, 1);
        let k = Subspace::full(3);
        let dim = vn_dimension(&alg, &k, 1e-8).unwrap();
        assert_eq!(dim.ratio(), Ratio::new(3, 1));
    }

    #[test]
    fn matrix_algebra_on_standard_form() {
        // M_2 ⊗ I_2 on C^4
        let e = |i: usize, j: usize| {
            let mut m = CMatrix::zeros(2, 2);
            m[(i, j)] = c(1.0, 0.0);
            m.kronecker(&CMatrix::identity(2, 2))
        };
        let mats = vec![e(0, 0), e(0, 1), e(1, 0), e(1, 1)];
        let alg = VNAlgebra::from_basis_checked(4, &mats, DEFAULT_TOL_RANK, 1e-8).unwrap();
        let dim = vn_dimension(&alg, &Subspace::full(4), 1e-8).unwrap();
        assert_eq!(dim.ratio(), Ratio::new(1, 1));
    }

    #[test]
    fn coupling_of_m_m_on_k_by_m() {
        // M_m acting on C^k ⊗ C^m as I_k ⊗ M_m
        for (k, m) in [(1, 2), (3, 2), (2, 3)] {
            let mut mats = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    let mut e = CMatrix::zeros(m, m);
                    e[(i, j)] = c(1.0, 0.0);
                    mats.push(CMatrix::identity(k, k).kronecker(&e));
                }
            }
            let alg = VNAlgebra::from_spanning(k * m, &mats, DEFAULT_TOL_RANK);
            let dim = vn_dimension(&alg, &Subspace::full(k * m), 1e-8).unwrap();
            assert_eq!(dim.ratio(), Ratio::new(k, m));
        }
    }

    #[test]
    fn non_invariant_subspace_rejected() {
        let mut e01 = CMatrix::zeros(2, 2);
        e01[(0, 1)] = c(1.0, 0.0);
        let mut e10 = CMatrix::zeros(2, 2);
        e10[(1, 0)] = c(1.0, 0.0);
        let alg = generated_algebra(2, &[e01, e10], DEFAULT_TOL_RANK);
        assert_eq!(alg.dim(), 4);
        let line = Subspace::span_of(2, &[CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])], DEFAULT_TOL_RANK);
        assert!(matches!(vn_dimension(&alg, &line, 1e-8), Err(AlgebraError::NotInvariant { .. })));
    }

    #[test]
    fn non_factor_rejected_by_vn_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pi = random_irrep(&mut rng, 2).direct_sum(&random_irrep(&mut rng, 1).multiple(1));
        let m = commutant(&pi, DEFAULT_TOL_RANK);
        assert!(matches!(vn_dimension(&m, &Subspace::full(3), 1e-8), Err(AlgebraError::NotFactor { center_dim: 2 })));
    }

    #[test]
    fn double_commutant_and_commutation_with_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sigma = random_irrep(&mut rng, 2);
        let tau = random_irrep(&mut rng, 1);
        let pi = sigma.multiple(2).direct_sum(&tau.multiple(1)).conjugate(&random_unitary(&mut rng, 5));
        let m = commutant(&pi, DEFAULT_TOL_RANK);
        assert!(m.closure_residual() < 1e-8);
        let mm = m.commutant();
        let gen = generated_algebra(5, pi.images(), DEFAULT_TOL_RANK);
        assert!(mm.as_subspace().same_as(&gen.as_subspace(), 1e-8));
        let total: usize = m.center_blocks().unwrap().iter().map(|b| b.factor_size * b.multiplicity).sum();
        assert_eq!(total, 5);
        for _ in 0..100 {
            let w: Vec<crate::groups::Letter> = (0..6)
                .map(|_| crate::groups::Letter { generator: rng.random_range(0..2), inverse: rng.random() })
                .collect();
            let pw = pi.word_image(&w);
            for t in m.basis() {
                assert!((t * &pw - &pw * t).norm() < 1e-8);
            }
        }
    }
}
