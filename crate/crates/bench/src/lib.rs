//! Benchmark fixtures shared by the criterion targets.

use cocycle_core::groups::{Catalogue, FinMeasure, GroupModel};
use cocycle_core::reps::catalogue::s3_standard;
use cocycle_core::UnitaryRep;

/// `F₂` acting on `C^{2m}` by `m` copies of the Pauli pair.
pub fn free_pauli(m: usize) -> (GroupModel, UnitaryRep, FinMeasure) {
    let g = Catalogue::Free(2).build().expect("rank 2");
    let z = cocycle_core::CMatrix::from_diagonal(&cocycle_core::CVector::from_vec(vec![
        cocycle_core::linalg::c(1.0, 0.0),
        cocycle_core::linalg::c(-1.0, 0.0),
    ]));
    let mut x = cocycle_core::CMatrix::zeros(2, 2);
    x[(0, 1)] = cocycle_core::linalg::c(1.0, 0.0);
    x[(1, 0)] = cocycle_core::linalg::c(1.0, 0.0);
    let rep = UnitaryRep::new(vec![z, x]).expect("square").multiple(m);
    let mu = FinMeasure::uniform_on_generators(&g).expect("adapted");
    (g, rep, mu)
}

/// `S₃` acting by `m` copies of its standard representation.
pub fn s3_multiple(m: usize) -> (GroupModel, UnitaryRep, FinMeasure) {
    let g = Catalogue::Symmetric3.build().expect("catalogue");
    let mu = FinMeasure::uniform_on_generators(&g).expect("adapted");
    (g, s3_standard().multiple(m), mu)
}
