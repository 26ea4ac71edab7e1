//! Irreducible representations of the finite catalogue groups and random
//! representation generators used by tests, benches and the self-test.

use std::f64::consts::PI;

use rand::seq::IndexedRandom;
use rand::Rng;

use super::UnitaryRep;
use crate::groups::Catalogue;
use crate::linalg::{c, random_unitary, CMatrix, C64};

fn diag(entries: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

fn swap2() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

fn scalar(x: f64) -> CMatrix {
    CMatrix::from_element(1, 1, c(x, 0.0))
}

fn root_of_unity(k: usize, n: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// The trivial and sign characters of `S₃` (generators `s`, `c`).
pub fn s3_sign() -> UnitaryRep {
    UnitaryRep::new(vec![scalar(-1.0), scalar(1.0)]).expect("square")
}

/// The 2-dimensional irreducible of `S₃`: `c ↦ diag(ω, ω̄)`, `s ↦ swap`.
pub fn s3_standard() -> UnitaryRep {
    let w = root_of_unity(1, 3);
    UnitaryRep::new(vec![swap2(), diag(&[w, w.conj()])]).expect("square")
}

/// All irreducible representations (up to equivalence) of a finite
/// catalogue group, in generator order. Empty for infinite groups.
pub fn standard_irreps(cat: Catalogue) -> Vec<UnitaryRep> {
    match cat {
        Catalogue::Cyclic(n) => (0..n)
            .map(|k| UnitaryRep::new(vec![CMatrix::from_element(1, 1, root_of_unity(k, n))]).expect("square"))
            .collect(),
        Catalogue::Symmetric3 => vec![UnitaryRep::trivial(2, 1), s3_sign(), s3_standard()],
        Catalogue::Dihedral(n) => {
            let mut out = Vec::new();
            let r_signs: &[f64] = if n % 2 == 0 { &[1.0, -1.0] } else { &[1.0] };
            for &r in r_signs {
                for s in [1.0, -1.0] {
                    out.push(UnitaryRep::new(vec![scalar(r), scalar(s)]).expect("square"));
                }
            }
            for k in 1..=(n - 1) / 2 {
                let w = root_of_unity(k, n);
                out.push(UnitaryRep::new(vec![diag(&[w, w.conj()]), swap2()]).expect("square"));
            }
            out
        }
        Catalogue::Quaternion => {
            let mut out = Vec::new();
            for i in [1.0, -1.0] {
                for j in [1.0, -1.0] {
                    out.push(UnitaryRep::new(vec![scalar(i), scalar(j)]).expect("square"));
                }
            }
            let qi = diag(&[c(0.0, 1.0), c(0.0, -1.0)]);
            let qj = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
            out.push(UnitaryRep::new(vec![qi, qj]).expect("square"));
            out
        }
        Catalogue::Free(_) | Catalogue::FreeAbelian(_) => Vec::new(),
    }
}

/// A random direct sum of catalogue irreducibles of total dimension at most
/// `max_dim` (at least one summand), conjugated by a Haar unitary.
pub fn random_finite_rep<R: Rng + ?Sized>(rng: &mut R, cat: Catalogue, max_dim: usize) -> UnitaryRep {
    let irreps = standard_irreps(cat);
    assert!(!irreps.is_empty(), "no irreducibles for {cat:?}");
    let target = rng.random_range(1..=max_dim);
    let mut rep: Option<UnitaryRep> = None;
    let mut dim = 0;
    for _ in 0..32 {
        let fitting: Vec<&UnitaryRep> = irreps.iter().filter(|r| dim + r.dim() <= target).collect();
        let Some(pick) = fitting.choose(rng) else { break };
        rep = Some(match rep {
            None => (*pick).clone(),
            Some(acc) => acc.direct_sum(pick),
        });
        dim += pick.dim();
    }
    let rep = rep.expect("a one-dimensional irreducible always fits");
    rep.conjugate(&random_unitary(rng, rep.dim()))
}

/// Independent Haar unitaries for each generator (generically irreducible
/// when `dim ≥ 2` and there are at least two generators).
pub fn random_free_rep<R: Rng + ?Sized>(rng: &mut R, num_generators: usize, dim: usize) -> UnitaryRep {
    UnitaryRep::new((0..num_generators).map(|_| random_unitary(rng, dim)).collect()).expect("square")
}

/// Commuting unitaries `U diag(e^{iθ}) U*` for `Z^k`; each coordinate is
/// trivial with probability `trivial_fraction`.
pub fn random_abelian_rep<R: Rng + ?Sized>(
    rng: &mut R,
    num_generators: usize,
    dim: usize,
    trivial_fraction: f64,
) -> UnitaryRep {
    let u = random_unitary(rng, dim);
    let trivial: Vec<bool> = (0..dim).map(|_| rng.random::<f64>() < trivial_fraction).collect();
    let images = (0..num_generators)
        .map(|_| {
            let phases: Vec<C64> = trivial
                .iter()
                .map(|&t| if t { c(1.0, 0.0) } else { C64::from_polar(1.0, rng.random_range(0.3..2.0 * PI - 0.3)) })
                .collect();
            &u * diag(&phases) * u.adjoint()
        })
        .collect();
    UnitaryRep::new(images).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{commutant, validate_rep};
    use crate::Tolerances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FINITE: [Catalogue; 8] = [
        Catalogue::Cyclic(2),
        Catalogue::Cyclic(3),
        Catalogue::Cyclic(5),
        Catalogue::Cyclic(6),
        Catalogue::Symmetric3,
        Catalogue::Dihedral(4),
        Catalogue::Dihedral(5),
        Catalogue::Quaternion,
    ];

    #[test]
    fn irreps_are_valid_irreducible_and_complete() {
        for cat in FINITE {
            let g = cat.build().unwrap();
            let irreps = standard_irreps(cat);
            let mut sum_sq = 0;
            for rep in &irreps {
                validate_rep(rep, &g, &Tolerances::default()).unwrap();
                assert_eq!(commutant(rep, 1e-9).dim(), 1, "{cat:?}");
                sum_sq += rep.dim() * rep.dim();
            }
            assert_eq!(Some(sum_sq), g.order(), "{cat:?}");
        }
    }

    #[test]
    fn random_finite_reps_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for cat in FINITE {
            let g = cat.build().unwrap();
            for _ in 0..5 {
                let rep = random_finite_rep(&mut rng, cat, 4);
                assert!(rep.dim() <= 4);
                validate_rep(&rep, &g, &Tolerances::default()).unwrap();
            }
        }
    }

    #[test]
    fn random_abelian_rep_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let z2 = Catalogue::FreeAbelian(2).build().unwrap();
        let rep = random_abelian_rep(&mut rng, 2, 3, 0.5);
        validate_rep(&rep, &z2, &Tolerances::default()).unwrap();
    }
}
