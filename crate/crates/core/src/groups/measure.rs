use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{Element, GroupError, GroupKind, GroupModel, Word};

/// Tolerance for normalisation and symmetry of weights.
pub const SYMMETRY_TOL: f64 = 1e-12;

const PRODUCT_SEARCH_DEPTH: usize = 8;
const PRODUCT_SEARCH_NODES: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("weight {0} is not positive")]
    NonPositiveWeight(f64),
    #[error("weights sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("measure is not symmetric at {element}: μ(x) = {weight}, μ(x⁻¹) = {inverse_weight}")]
    NotSymmetric { element: String, weight: f64, inverse_weight: f64 },
    #[error("support does not generate the group: {0}")]
    NotAdapted(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// How adaptedness was certified.
#[derive(Clone, Debug, PartialEq)]
pub enum AdaptedCertificate {
    /// Closure of the support reaches every element of a finite group.
    Closure { reached: usize },
    /// The support vectors generate `Z^k` (unimodular echelon form).
    Lattice,
    /// Each generator written as a product of support elements (indices).
    Products(Vec<Vec<usize>>),
    /// Each generator occurs as a one-letter support word.
    Syntactic,
}

/// A finitely supported symmetric adapted probability measure.
#[derive(Clone, Debug)]
pub struct FinMeasure {
    support: Vec<(Element, f64)>,
    second_moment: f64,
    certificate: AdaptedCertificate,
}

impl FinMeasure {
    pub fn support(&self) -> &[(Element, f64)] {
        &self.support
    }

    /// `Σ μ(x)·|x|_Q²`; for relator-presented groups `|x|` is the length of
    /// the reduced representative, an upper bound.
    pub fn second_moment(&self) -> f64 {
        self.second_moment
    }

    pub fn certificate(&self) -> &AdaptedCertificate {
        &self.certificate
    }

    /// Uniform on `S ∪ S⁻¹` (letters that coincide as elements are merged).
    pub fn uniform_on_generators(group: &GroupModel) -> Result<Self, MeasureError> {
        let letters = group.letters();
        let w = 1.0 / letters.len() as f64;
        let support = letters.into_iter().map(|l| (group.letter_element(l), w)).collect();
        make_measure(group, support)
    }

    pub fn from_words(group: &GroupModel, support: &[(Word, f64)]) -> Result<Self, MeasureError> {
        let els = support
            .iter()
            .map(|(w, p)| Ok((group.element_of_word(w)?, *p)))
            .collect::<Result<Vec<_>, GroupError>>()?;
        make_measure(group, els)
    }

    pub fn mass(&self) -> f64 {
        self.support.iter().map(|(_, w)| w).sum()
    }
}

/// Validates and normalises a support list: merges repeated elements, then
/// checks positivity, normalisation, symmetry and adaptedness.
pub fn make_measure(group: &GroupModel, support: Vec<(Element, f64)>) -> Result<FinMeasure, MeasureError> {
    let mut merged: Vec<(Element, f64)> = Vec::new();
    let mut index: HashMap<Element, usize> = HashMap::new();
    for (x, w) in support {
        if !(w > 0.0) {
            return Err(MeasureError::NonPositiveWeight(w));
        }
        match index.get(&x) {
            Some(&i) => merged[i].1 += w,
            None => {
                index.insert(x.clone(), merged.len());
                merged.push((x, w));
            }
        }
    }
    let total: f64 = merged.iter().map(|(_, w)| w).sum();
    if (total - 1.0).abs() > SYMMETRY_TOL {
        return Err(MeasureError::NotNormalized(total));
    }
    for (x, w) in &merged {
        let xi = group.inverse(x);
        let wi = index.get(&xi).map_or(0.0, |&i| merged[i].1);
        if (w - wi).abs() > SYMMETRY_TOL {
            return Err(MeasureError::NotSymmetric {
                element: group.format_word(&group.word_of(x)),
                weight: *w,
                inverse_weight: wi,
            });
        }
    }
    let certificate = certify_adapted(group, &merged)?;
    let second_moment = merged
        .iter()
        .map(|(x, w)| {
            let len = match group.kind() {
                GroupKind::FinitelyPresented => group.word_of(x).len(),
                _ => group.word_length(x)?,
            };
            Ok(w * (len * len) as f64)
        })
        .sum::<Result<f64, GroupError>>()?;
    Ok(FinMeasure { support: merged, second_moment, certificate })
}

fn certify_adapted(group: &GroupModel, support: &[(Element, f64)]) -> Result<AdaptedCertificate, MeasureError> {
    match group.kind() {
        GroupKind::CayleyTable => {
            let order = group.order().expect("finite");
            let mut seen: HashSet<Element> = HashSet::from([group.identity()]);
            let mut stack = vec![group.identity()];
            while let Some(x) = stack.pop() {
                for (s, _) in support {
                    let y = group.mul(&x, s);
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() == order {
                Ok(AdaptedCertificate::Closure { reached: order })
            } else {
                Err(MeasureError::NotAdapted(format!(
                    "support generates a subgroup of order {} < {order}",
                    seen.len()
                )))
            }
        }
        GroupKind::FreeAbelian => {
            let rows: Vec<Vec<i64>> = support
                .iter()
                .map(|(x, _)| match x {
                    Element::Exponents(e) => e.clone(),
                    _ => unreachable!("free abelian element"),
                })
                .collect();
            if generates_full_lattice(rows, group.num_generators()) {
                Ok(AdaptedCertificate::Lattice)
            } else {
                Err(MeasureError::NotAdapted("support spans a proper sublattice".into()))
            }
        }
        GroupKind::Free | GroupKind::Wreath => product_search(group, support),
        GroupKind::FinitelyPresented => {
            for g in 0..group.num_generators() {
                let found = support
                    .iter()
                    .any(|(x, _)| matches!(x, Element::Word(w) if w.len() == 1 && w[0].generator == g));
                if !found {
                    return Err(MeasureError::NotAdapted(format!(
                        "generator {} is not a support element; adaptedness cannot be certified without a normal form",
                        group.generators()[g]
                    )));
                }
            }
            Ok(AdaptedCertificate::Syntactic)
        }
    }
}

/// Breadth-first search over products of support elements until every
/// generator is reached.
fn product_search(group: &GroupModel, support: &[(Element, f64)]) -> Result<AdaptedCertificate, MeasureError> {
    let targets: Vec<Element> = (0..group.num_generators()).map(|g| group.generator(g)).collect();
    let mut found: Vec<Option<Vec<usize>>> = vec![None; targets.len()];
    let mut paths: HashMap<Element, Vec<usize>> = HashMap::from([(group.identity(), Vec::new())]);
    let mut frontier = vec![group.identity()];
    for _ in 0..PRODUCT_SEARCH_DEPTH {
        let mut next = Vec::new();
        for x in &frontier {
            for (i, (s, _)) in support.iter().enumerate() {
                let y = group.mul(x, s);
                if paths.contains_key(&y) {
                    continue;
                }
                let mut p = paths[x].clone();
                p.push(i);
                for (t, slot) in targets.iter().zip(found.iter_mut()) {
                    if slot.is_none() && *t == y {
                        *slot = Some(p.clone());
                    }
                }
                paths.insert(y.clone(), p);
                next.push(y);
            }
        }
        if found.iter().all(Option::is_some) {
            return Ok(AdaptedCertificate::Products(found.into_iter().map(Option::unwrap).collect()));
        }
        if paths.len() > PRODUCT_SEARCH_NODES || next.is_empty() {
            break;
        }
        frontier = next;
    }
    let missing: Vec<&str> = found
        .iter()
        .zip(group.generators())
        .filter(|(f, _)| f.is_none())
        .map(|(_, n)| n.as_str())
        .collect();
    Err(MeasureError::NotAdapted(format!(
        "generators {missing:?} not reached as products of support elements"
    )))
}

/// Integer row reduction; the rows generate `Z^k` iff the echelon form has
/// `k` pivots all equal to ±1.
fn generates_full_lattice(mut rows: Vec<Vec<i64>>, k: usize) -> bool {
    let mut pivot_row = 0;
    for col in 0..k {
        loop {
            // Move the smallest nonzero |entry| in this column to pivot_row.
            let best = (pivot_row..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let p = rows[pivot_row][col];
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                let q = rows[r][col] / p;
                if q != 0 {
                    for cc in 0..k {
                        rows[r][cc] -= q * rows[pivot_row][cc];
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row >= rows.len() || rows[pivot_row][col] == 0 {
            return false;
        }
        if rows[pivot_row][col].abs() != 1 {
            return false;
        }
        pivot_row += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Catalogue;

    #[test]
    fn uniform_on_free_generators() {
        let f2 = GroupModel::free(2).unwrap();
        let mu = FinMeasure::uniform_on_generators(&f2).unwrap();
        assert_eq!(mu.support().len(), 4);
        assert!(mu.support().iter().all(|(_, w)| (*w - 0.25).abs() < 1e-15));
        assert!((mu.second_moment() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn z2_measure_on_one_axis_is_not_adapted() {
        let z2 = GroupModel::free_abelian(2).unwrap();
        let t1 = z2.parse_word("t1").unwrap();
        let t1i = z2.parse_word("t1^-1").unwrap();
        let err = FinMeasure::from_words(&z2, &[(t1, 0.5), (t1i, 0.5)]).unwrap_err();
        assert!(matches!(err, MeasureError::NotAdapted(_)));
    }

    #[test]
    fn asymmetric_weights_rejected() {
        let z = GroupModel::free_abelian(1).unwrap();
        let t = z.parse_word("t").unwrap();
        let ti = z.parse_word("t^-1").unwrap();
        let err = FinMeasure::from_words(&z, &[(t, 0.7), (ti, 0.3)]).unwrap_err();
        assert!(matches!(err, MeasureError::NotSymmetric { .. }));
    }

    #[test]
    fn unnormalized_rejected() {
        let z = GroupModel::free_abelian(1).unwrap();
        let t = z.parse_word("t").unwrap();
        let ti = z.parse_word("t^-1").unwrap();
        let err = FinMeasure::from_words(&z, &[(t, 0.4), (ti, 0.4)]).unwrap_err();
        assert!(matches!(err, MeasureError::NotNormalized(_)));
    }

    #[test]
    fn involution_point_mass_is_symmetric() {
        let c2 = Catalogue::Cyclic(2).build().unwrap();
        let u = c2.parse_word("t").unwrap();
        let mu = FinMeasure::from_words(&c2, &[(u, 1.0)]).unwrap();
        assert_eq!(mu.certificate(), &AdaptedCertificate::Closure { reached: 2 });
    }

    #[test]
    fn lattice_index_detected() {
        assert!(generates_full_lattice(vec![vec![2, 0], vec![0, 1], vec![3, 0]], 2));
        assert!(!generates_full_lattice(vec![vec![2, 0], vec![0, 1], vec![4, 2]], 2));
        assert!(!generates_full_lattice(vec![vec![1, 1]], 2));
    }

    #[test]
    fn free_group_support_on_products() {
        // {ab, (ab)⁻¹, b, b⁻¹} generates F2.
        let f2 = GroupModel::free(2).unwrap();
        let w = |s: &str| f2.parse_word(s).unwrap();
        let mu = FinMeasure::from_words(
            &f2,
            &[(w("a b"), 0.25), (w("b^-1 a^-1"), 0.25), (w("b"), 0.25), (w("b^-1"), 0.25)],
        )
        .unwrap();
        assert!(matches!(mu.certificate(), AdaptedCertificate::Products(_)));
        // {a², a⁻², b, b⁻¹} does not.
        let err = FinMeasure::from_words(
            &f2,
            &[(w("a^2"), 0.25), (w("a^-2"), 0.25), (w("b"), 0.25), (w("b^-1"), 0.25)],
        )
        .unwrap_err();
        assert!(matches!(err, MeasureError::NotAdapted(_)));
    }
}
