//! Dense complex linear algebra helpers and the [`Subspace`] type.
//!
//! Rank decisions compare singular values against `tol_rank * max(σ_max, 1)`.
//! The floor of 1 keeps constraint matrices that are zero up to rounding
//! (entries of size 1e-16 built from unit-modulus data) from being read as
//! full rank.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const DEFAULT_TOL_RANK: f64 = 1e-9;
pub const DEFAULT_TOL_RES: f64 = 1e-8;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

pub fn vec_norm(v: &CVector) -> f64 {
    v.norm()
}

fn rank_threshold(sigma_max: f64, tol_rank: f64) -> f64 {
    tol_rank * sigma_max.max(1.0)
}

fn to_faer(a: &CMatrix) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer(a: faer::MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Vec::new();
    }
    let mut s = to_faer(a).singular_values().expect("svd converges");
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Full SVD `a = U Σ V*` with `U`, `V` square and `σ` nonincreasing.
fn full_svd(a: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = to_faer(a).svd().expect("svd converges");
    let s = svd.S().column_vector().iter().map(|x| x.re).collect();
    (from_faer(svd.U()), s, from_faer(svd.V()))
}

fn numerical_rank(s: &[f64], tol_rank: f64) -> usize {
    let thr = rank_threshold(s.first().copied().unwrap_or(0.0), tol_rank);
    s.iter().filter(|&&x| x > thr).count()
}

/// Orthonormal basis (as columns) of the kernel of `a`.
pub fn null_space(a: &CMatrix, tol_rank: f64) -> CMatrix {
    let n = a.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return CMatrix::identity(n, n);
    }
    let (_, s, v) = full_svd(a);
    let r = numerical_rank(&s, tol_rank);
    v.columns(r, n - r).into_owned()
}

/// Orthonormal basis of the column space of `a`.
pub fn column_space(a: &CMatrix, tol_rank: f64) -> CMatrix {
    let m = a.nrows();
    if a.ncols() == 0 || m == 0 {
        return CMatrix::zeros(m, 0);
    }
    let (u, s, _) = full_svd(a);
    let r = numerical_rank(&s, tol_rank);
    u.columns(0, r).into_owned()
}

pub fn rank(a: &CMatrix, tol_rank: f64) -> usize {
    numerical_rank(&singular_values(a), tol_rank)
}

pub fn columns_to_matrix(rows: usize, cols: &[CVector]) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        m.set_column(j, col);
    }
    m
}

pub fn hstack(blocks: &[&CMatrix]) -> CMatrix {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut m = CMatrix::zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        m.view_mut((0, off), (rows, b.ncols())).copy_from(*b);
        off += b.ncols();
    }
    m
}

pub fn vstack(blocks: &[CMatrix]) -> CMatrix {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = CMatrix::zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        m.view_mut((off, 0), (b.nrows(), cols)).copy_from(b);
        off += b.nrows();
    }
    m
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let sym = (a + a.adjoint()) * c(0.5, 0.0);
    let eig = to_faer(&sym).self_adjoint_eigen(Side::Lower).expect("eigendecomposition converges");
    let values = eig.S().column_vector().iter().map(|x| x.re).collect();
    (values, from_faer(eig.U()))
}

/// Column-major vectorisation.
pub fn vec_of(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

pub fn unvec(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v.as_slice())
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn block_diag(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let m: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMatrix::zeros(n, m);
    let (mut r, mut cc) = (0, 0);
    for b in blocks {
        out.view_mut((r, cc), (b.nrows(), b.ncols())).copy_from(b);
        r += b.nrows();
        cc += b.ncols();
    }
    out
}

pub fn random_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

pub fn random_gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix with phase fix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = random_gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// A linear subspace of `C^n`, stored as an orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: CMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { basis: CMatrix::identity(ambient, ambient) }
    }

    /// Span of the columns of `spanning`.
    pub fn span(spanning: &CMatrix, tol_rank: f64) -> Self {
        Subspace { basis: column_space(spanning, tol_rank) }
    }

    pub fn span_of(ambient: usize, vectors: &[CVector], tol_rank: f64) -> Self {
        Self::span(&columns_to_matrix(ambient, vectors), tol_rank)
    }

    /// Wraps columns that are already orthonormal.
    pub fn from_orthonormal(basis: CMatrix) -> Self {
        Subspace { basis }
    }

    pub fn kernel_of(a: &CMatrix, tol_rank: f64) -> Self {
        Subspace { basis: null_space(a, tol_rank) }
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    pub fn project(&self, v: &CVector) -> CVector {
        &self.basis * (self.basis.adjoint() * v)
    }

    pub fn orthogonal_complement(&self, tol_rank: f64) -> Self {
        let n = self.ambient_dim();
        if self.dim() == 0 {
            return Self::full(n);
        }
        Subspace { basis: null_space(&self.basis.adjoint(), tol_rank) }
    }

    pub fn sum(&self, other: &Subspace, tol_rank: f64) -> Self {
        Self::span(&hstack(&[&self.basis, &other.basis]), tol_rank)
    }

    pub fn intersection(&self, other: &Subspace, tol_rank: f64) -> Self {
        let a = self.orthogonal_complement(tol_rank);
        let b = other.orthogonal_complement(tol_rank);
        a.sum(&b, tol_rank).orthogonal_complement(tol_rank)
    }

    /// Spectral norm of the component of `other` orthogonal to `self`;
    /// zero iff `other ⊆ self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        if other.dim() == 0 {
            return 0.0;
        }
        let r = &other.basis - &self.basis * (self.basis.adjoint() * &other.basis);
        op_norm(&r)
    }

    pub fn contains(&self, other: &Subspace, tol: f64) -> bool {
        self.containment_residual(other) < tol
    }

    pub fn contains_vector(&self, v: &CVector, tol: f64) -> bool {
        (v - self.project(v)).norm() <= tol * v.norm().max(1.0)
    }

    /// Principal angles (ascending), computed from sines so that small
    /// angles keep full relative accuracy.
    pub fn principal_angles(&self, other: &Subspace) -> Vec<f64> {
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        if small.dim() == 0 {
            return Vec::new();
        }
        let r = &small.basis - &big.basis * (big.basis.adjoint() * &small.basis);
        let mut angles: Vec<f64> = singular_values(&r).iter().map(|s| s.min(1.0).asin()).collect();
        angles.sort_by(f64::total_cmp);
        angles
    }

    /// Largest principal angle, or π/2 when the dimensions differ.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.dim() != other.dim() {
            return std::f64::consts::FRAC_PI_2;
        }
        self.principal_angles(other).into_iter().fold(0.0, f64::max)
    }

    pub fn same_as(&self, other: &Subspace, tol: f64) -> bool {
        self.dim() == other.dim() && self.distance(other) < tol
    }

    /// Max deviation of the basis from orthonormality.
    pub fn orthonormality_residual(&self) -> f64 {
        let k = self.dim();
        if k == 0 {
            return 0.0;
        }
        op_norm(&(self.basis.adjoint() * &self.basis - CMatrix::identity(k, k)))
    }
}
