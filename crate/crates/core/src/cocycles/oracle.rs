//! Brute-force `Z¹` for finite groups: one unknown vector per element and
//! one constraint per ordered pair.

use super::{evaluate_element, CocycleError, Cocycle};
use crate::groups::GroupModel;
use crate::linalg::{null_space, rank, CMatrix, CVector, Subspace};
use crate::reps::UnitaryRep;

/// Solutions of `b(gh) = b(g) + π(g)b(h)` for all `g, h`, as functions on
/// the elements (stacked in element-index order).
#[derive(Clone, Debug)]
pub struct AllPairsSolution {
    pub dim_z1: usize,
    /// Rank of `v ↦ (π(g)v − v)_g`.
    pub dim_b1: usize,
    pub basis: Subspace,
}

pub fn all_pairs_z1(group: &GroupModel, rep: &UnitaryRep, tol_rank: f64) -> Result<AllPairsSolution, CocycleError> {
    let table = group
        .finite_table()
        .ok_or(CocycleError::UnsupportedGroupKind(group.kind()))?;
    let n = table.order();
    let d = rep.dim();
    let images: Vec<CMatrix> = (0..n).map(|g| rep.word_image(table.geodesic(g))).collect();
    let id = CMatrix::identity(d, d);
    let mut big = CMatrix::zeros(n * n * d, n * d);
    for g in 0..n {
        for h in 0..n {
            let row = (g * n + h) * d;
            let gh = table.mul(g, h);
            // b(gh) − b(g) − π(g) b(h)
            let mut add = |col: usize, m: &CMatrix| {
                let mut view = big.view_mut((row, col * d), (d, d));
                view += m;
            };
            add(gh, &id);
            add(g, &(-&id));
            add(h, &(-&images[g]));
        }
    }
    let kernel = null_space(&big, tol_rank);
    let mut cob = CMatrix::zeros(n * d, d);
    for g in 0..n {
        cob.view_mut((g * d, 0), (d, d)).copy_from(&(&images[g] - &id));
    }
    Ok(AllPairsSolution { dim_z1: kernel.ncols(), dim_b1: rank(&cob, tol_rank), basis: Subspace::from_orthonormal(kernel) })
}

/// Stacks `b(g)` over all elements of a finite group.
pub(crate) fn tabulate(group: &GroupModel, rep: &UnitaryRep, b: &Cocycle) -> CVector {
    let elements = group.elements().expect("finite group");
    let d = rep.dim();
    let mut out = CVector::zeros(elements.len() * d);
    for (i, x) in elements.iter().enumerate() {
        out.rows_mut(i * d, d).copy_from(&evaluate_element(group, rep, b, x));
    }
    out
}
