use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{is_irreducible, is_separating, AffineError};
use crate::cocycles::{Cocycle, CocycleSpace};
use crate::linalg::{column_space, CMatrix, Subspace};
use crate::reps::{commutant, commutant_of, vn_dimension, AlgebraError, VNAlgebra, VnDimension};

const WITNESS_TRIES: usize = 16;

/// One minimal central projection of `𝓜 = π(G)′` and the verdict on it.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockVerdict {
    pub factor_size: usize,
    pub multiplicity: usize,
    pub dim_har: usize,
    pub dim_vn: VnDimension,
    pub passes: bool,
}

#[derive(Clone, Debug)]
pub struct ExistenceReport {
    pub exists: bool,
    pub dim_har: usize,
    pub factor: bool,
    /// `dim_𝓜 Har` when `𝓜` is a factor.
    pub dim_vn: Option<VnDimension>,
    pub blocks: Vec<BlockVerdict>,
    pub witness: Option<Cocycle>,
    pub witness_tries: usize,
    pub diagnosis: String,
}

/// Decides whether some `b ∈ Z¹` gives an irreducible affine action, i.e.
/// whether `Har` carries a separating vector for `𝓜 = π(G)′`.
///
/// On a factor `𝓜 ≅ M_n` this is `dim_𝓜 Har = dim Har / n² ≥ 1`. Otherwise
/// each minimal central projection is treated as its own factor
/// representation and every block must pass.
pub fn exists_irreducible_affine(space: &CocycleSpace, seed: u64) -> Result<ExistenceReport, AffineError> {
    let tol = *space.tolerances();
    let m = commutant(space.rep(), tol.rank);
    let blocks = m.center_blocks()?;
    let factor = blocks.len() == 1;
    let dim_har = space.dim_har();

    let mut verdicts = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let n = block.factor_size;
        let dh = if factor {
            dim_har
        } else {
            let v = column_space(&block.projection, tol.rank);
            let sub = CocycleSpace::new(space.group(), &space.rep().restrict(&v), space.measure(), tol)?;
            sub.dim_har()
        };
        verdicts.push(BlockVerdict {
            factor_size: n,
            multiplicity: block.multiplicity,
            dim_har: dh,
            dim_vn: VnDimension { module_dim: dh, factor_size: n },
            passes: dh >= n * n,
        });
    }
    let summed: usize = verdicts.iter().map(|b| b.dim_har).sum();
    if summed != dim_har {
        return Err(AffineError::BlockMismatch { blocks: summed, global: dim_har });
    }

    let exists = dim_har > 0 && verdicts.iter().all(|b| b.passes);
    let dim_vn = factor.then(|| verdicts[0].dim_vn);
    let mut diagnosis = if dim_har == 0 {
        "Har = 0".to_string()
    } else if let Some(d) = dim_vn {
        format!("dim_M Har = {} {} 1", d.ratio(), if exists { ">=" } else { "<" })
    } else {
        let failing = verdicts.iter().filter(|b| !b.passes).count();
        format!("{failing} of {} central blocks with dim_M Har < 1", verdicts.len())
    };
    if !factor {
        diagnosis.push_str("; non-factor commutant decided blockwise over minimal central projections (finite-sum reading)");
    }

    let (witness, witness_tries) = if exists {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        let mut tries = 0;
        while tries < WITNESS_TRIES && found.is_none() {
            tries += 1;
            let b = space.random_harmonic(&mut rng);
            if is_separating(&m, &b, tol.rank) && is_irreducible(space, &b)?.irreducible {
                found = Some(b);
            }
        }
        match found {
            Some(b) => (Some(b), tries),
            None => return Err(AffineError::WitnessNotFound { tries }),
        }
    } else {
        (None, 0)
    };

    Ok(ExistenceReport { exists, dim_har, factor, dim_vn, blocks: verdicts, witness, witness_tries, diagnosis })
}

/// `dim_𝓜 Har` and `dim_𝓝 Har`, with `𝓝` the commutant of `𝓜` acting on `Har`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    pub dim_m: VnDimension,
    pub dim_n: VnDimension,
    /// `dim_𝓜 · dim_𝓝` in floating point.
    pub product: f64,
}

/// Matrices of `𝓜` acting on `Har` in μ-orthonormal coordinates. `𝓜` acts
/// unitarily there because `E_x (I ⊗ T) = T E_x` for `T` commuting with `π`.
pub fn algebra_on_har(space: &CocycleSpace, m: &VNAlgebra) -> VNAlgebra {
    let h = space.har_subspace().basis();
    let har = space.har_basis();
    let mats: Vec<CMatrix> = m
        .basis()
        .iter()
        .map(|t| {
            let cols: Vec<_> = har.iter().map(|b| h.adjoint() * space.to_z1_coords(&b.apply_operator(t))).collect();
            crate::linalg::columns_to_matrix(har.len(), &cols)
        })
        .collect();
    VNAlgebra::from_spanning(har.len(), &mats, space.tolerances().rank)
}

pub fn coupling_pair(space: &CocycleSpace) -> Result<Coupling, AffineError> {
    let tol = *space.tolerances();
    let m = commutant(space.rep(), tol.rank);
    let h = space.dim_har();
    if h == 0 {
        return Err(AffineError::Algebra(AlgebraError::DegenerateBlock("Har = 0".into())));
    }
    let on_har = algebra_on_har(space, &m);
    if on_har.dim() != m.dim() {
        return Err(AffineError::Algebra(AlgebraError::DegenerateBlock(format!(
            "commutant of dimension {} acts on Har with image of dimension {}",
            m.dim(),
            on_har.dim()
        ))));
    }
    let full = Subspace::full(h);
    let dim_m = vn_dimension(&on_har, &full, tol.residual)?;
    let n_alg = commutant_of(h, on_har.basis(), tol.rank);
    let dim_n = vn_dimension(&n_alg, &full, tol.residual)?;
    Ok(Coupling { dim_m, dim_n, product: dim_m.value() * dim_n.value() })
}
