//! JSON problem specs. Complex numbers are `[re, im]`; matrices are lists
//! of rows.

use std::collections::BTreeMap;

use serde::Deserialize;

use cocycle_core::cocycles::Cocycle;
use cocycle_core::groups::{Catalogue, FinMeasure, FiniteTable, GroupModel};
use cocycle_core::linalg::{c, CMatrix, CVector};
use cocycle_core::reps::{validate_rep, UnitaryRep};
use cocycle_core::Tolerances;

use crate::error::CliError;

pub const DEFAULT_TRIALS: usize = 50;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub group: Option<GroupSpec>,
    pub rep: Option<RepSpec>,
    pub measure: Option<MeasureSpec>,
    pub cocycle: Option<VectorsSpec>,
    pub wreath: Option<WreathSpec>,
    pub tolerances: Option<TolSpec>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    Symmetric3,
    Dihedral { n: usize },
    Quaternion,
    Free { rank: usize },
    FreeAbelian { rank: usize },
    CayleyTable {
        #[serde(default = "default_table_name")]
        name: String,
        order: usize,
        /// Row-major: `table[a * order + b] = a·b`.
        table: Vec<usize>,
        generators: Vec<String>,
        generator_elements: Vec<usize>,
        relators: Option<Vec<String>>,
    },
    FinitelyPresented {
        #[serde(default = "default_presented_name")]
        name: String,
        generators: Vec<String>,
        relators: Vec<String>,
    },
}

fn default_table_name() -> String {
    "G".into()
}

fn default_presented_name() -> String {
    "G".into()
}

pub type ComplexSpec = [f64; 2];
pub type MatrixSpec = Vec<Vec<ComplexSpec>>;
pub type VectorSpec = Vec<ComplexSpec>;

/// Generator images, either in generator order or keyed by generator name.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RepSpec {
    Ordered(Vec<MatrixSpec>),
    Named(BTreeMap<String, MatrixSpec>),
}

/// Generator values of a cocycle, in generator order or keyed by name.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum VectorsSpec {
    Ordered(Vec<VectorSpec>),
    Named(BTreeMap<String, VectorSpec>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MeasureSpec {
    /// `"uniform"`: uniform on `S ∪ S⁻¹`.
    Named(String),
    Support { support: Vec<WeightedWord> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedWord {
    pub word: String,
    pub weight: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WreathSpec {
    pub base_group: GroupSpec,
    pub rep: RepSpec,
    pub mu1: Option<MeasureSpec>,
    #[serde(default = "default_weight")]
    pub mu2_weight_t: f64,
}

fn default_weight() -> f64 {
    0.5
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolSpec {
    pub tol_rank: Option<f64>,
    pub tol_res: Option<f64>,
}

pub fn parse(text: &str) -> Result<ProblemSpec, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

/// Command-line overrides win over values in the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub tol_rank: Option<f64>,
    pub tol_res: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub emit_bases: bool,
}

impl ProblemSpec {
    pub fn empty() -> Self {
        ProblemSpec { group: None, rep: None, measure: None, cocycle: None, wreath: None, tolerances: None, seed: None, trials: None }
    }

    pub fn tolerances(&self, o: &Overrides) -> Result<Tolerances, CliError> {
        let mut tol = Tolerances::default();
        let file = self.tolerances.clone().unwrap_or_default();
        if let Some(r) = o.tol_rank.or(file.tol_rank) {
            tol.rank = r;
        }
        if let Some(r) = o.tol_res.or(file.tol_res) {
            tol.residual = r;
            tol.relator = r;
        }
        for (name, v) in [("tol_rank", tol.rank), ("tol_res", tol.residual)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::validation("cli", "tolerances", format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(tol)
    }

    pub fn seed(&self, o: &Overrides) -> u64 {
        o.seed.or(self.seed).unwrap_or(0)
    }

    pub fn trials(&self, o: &Overrides) -> usize {
        o.trials.or(self.trials).unwrap_or(DEFAULT_TRIALS)
    }

    pub fn group(&self) -> Result<GroupModel, CliError> {
        let g = self.group.as_ref().ok_or_else(|| CliError::validation("cli", "run", "spec has no \"group\""))?;
        build_group(g)
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<GroupModel, CliError> {
    let err = |e: cocycle_core::groups::GroupError| CliError::validation("groups", "build_group", e.to_string());
    let cat = |cat: Catalogue| cat.build().map_err(err);
    match spec {
        GroupSpec::Cyclic { n } => cat(Catalogue::Cyclic(*n)),
        GroupSpec::Symmetric3 => cat(Catalogue::Symmetric3),
        GroupSpec::Dihedral { n } => cat(Catalogue::Dihedral(*n)),
        GroupSpec::Quaternion => cat(Catalogue::Quaternion),
        GroupSpec::Free { rank } => cat(Catalogue::Free(*rank)),
        GroupSpec::FreeAbelian { rank } => cat(Catalogue::FreeAbelian(*rank)),
        GroupSpec::CayleyTable { name, order, table, generators, generator_elements, relators } => {
            let t = FiniteTable::new(*order, table.clone(), generator_elements.clone()).map_err(err)?;
            let relators = match relators {
                None => None,
                Some(rs) => {
                    // parse against a provisional model carrying the generator names
                    let names = GroupModel::finitely_presented(name, generators.clone(), Vec::new()).map_err(err)?;
                    Some(rs.iter().map(|r| names.parse_word(r)).collect::<Result<Vec<_>, _>>().map_err(err)?)
                }
            };
            GroupModel::cayley_table(name, generators.clone(), t, relators).map_err(err)
        }
        GroupSpec::FinitelyPresented { name, generators, relators } => {
            let names = GroupModel::finitely_presented(name, generators.clone(), Vec::new()).map_err(err)?;
            let words = relators.iter().map(|r| names.parse_word(r)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            GroupModel::finitely_presented(name, generators.clone(), words).map_err(err)
        }
    }
}

fn complex(z: &ComplexSpec) -> cocycle_core::C64 {
    c(z[0], z[1])
}

pub fn build_matrix(m: &MatrixSpec) -> Result<CMatrix, CliError> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if rows == 0 || m.iter().any(|r| r.len() != cols) {
        return Err(CliError::validation("reps", "build_rep", "matrix rows must be nonempty and of equal length"));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| complex(&m[i][j])))
}

fn ordered<'a, T>(
    group: &GroupModel,
    spec_ordered: Option<&'a Vec<T>>,
    spec_named: Option<&'a BTreeMap<String, T>>,
    module: &'static str,
    op: &'static str,
) -> Result<Vec<&'a T>, CliError> {
    match (spec_ordered, spec_named) {
        (Some(v), _) => {
            if v.len() != group.num_generators() {
                return Err(CliError::validation(
                    module,
                    op,
                    format!("{} entries given, group has {} generators", v.len(), group.num_generators()),
                ));
            }
            Ok(v.iter().collect())
        }
        (None, Some(map)) => {
            if let Some(unknown) = map.keys().find(|k| group.generator_index(k).is_none()) {
                return Err(CliError::validation(module, op, format!("unknown generator {unknown:?}")));
            }
            group
                .generators()
                .iter()
                .map(|g| map.get(g).ok_or_else(|| CliError::validation(module, op, format!("missing generator {g:?}"))))
                .collect()
        }
        (None, None) => unreachable!(),
    }
}

pub fn build_rep(group: &GroupModel, spec: &RepSpec, tol: &Tolerances) -> Result<UnitaryRep, CliError> {
    let mats = match spec {
        RepSpec::Ordered(v) => ordered(group, Some(v), None, "reps", "build_rep")?,
        RepSpec::Named(m) => ordered(group, None, Some(m), "reps", "build_rep")?,
    };
    let images = mats.into_iter().map(build_matrix).collect::<Result<Vec<_>, _>>()?;
    let rep = UnitaryRep::new(images).map_err(|e| CliError::validation("reps", "build_rep", e.to_string()))?;
    validate_rep(&rep, group, tol).map_err(|e| CliError::validation("reps", "validate_rep", e.to_string()))?;
    Ok(rep)
}

pub fn build_measure(group: &GroupModel, spec: Option<&MeasureSpec>) -> Result<FinMeasure, CliError> {
    let err = |e: cocycle_core::groups::MeasureError| CliError::validation("groups", "make_measure", e.to_string());
    match spec {
        None => FinMeasure::uniform_on_generators(group).map_err(err),
        Some(MeasureSpec::Named(n)) if n == "uniform" => FinMeasure::uniform_on_generators(group).map_err(err),
        Some(MeasureSpec::Named(n)) => Err(CliError::validation("groups", "make_measure", format!("unknown measure {n:?}"))),
        Some(MeasureSpec::Support { support }) => {
            let words = support
                .iter()
                .map(|ww| group.parse_word(&ww.word).map(|w| (w, ww.weight)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::validation("groups", "parse_word", e.to_string()))?;
            FinMeasure::from_words(group, &words).map_err(err)
        }
    }
}

pub fn build_cocycle(group: &GroupModel, rep: &UnitaryRep, spec: &VectorsSpec) -> Result<Cocycle, CliError> {
    let vecs = match spec {
        VectorsSpec::Ordered(v) => ordered(group, Some(v), None, "cocycles", "build_cocycle")?,
        VectorsSpec::Named(m) => ordered(group, None, Some(m), "cocycles", "build_cocycle")?,
    };
    let values = vecs
        .into_iter()
        .map(|v| {
            if v.len() != rep.dim() {
                return Err(CliError::validation(
                    "cocycles",
                    "build_cocycle",
                    format!("vector of length {} for a representation of dimension {}", v.len(), rep.dim()),
                ));
            }
            Ok(CVector::from_iterator(v.len(), v.iter().map(complex)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cocycle::from_values(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let s = parse(r#"{"group": {"kind": "free", "rank": 1}, "tolerances": {"tol_rank": 1e-7}, "seed": 4}"#).unwrap();
        let tol = s.tolerances(&Overrides::default()).unwrap();
        assert_eq!((tol.rank, tol.residual), (1e-7, 1e-8));
        let o = Overrides { tol_rank: Some(1e-6), seed: Some(9), ..Default::default() };
        assert_eq!(s.tolerances(&o).unwrap().rank, 1e-6);
        assert_eq!((s.seed(&Overrides::default()), s.seed(&o)), (4, 9));
        assert_eq!(s.trials(&o), DEFAULT_TRIALS);
    }

    #[test]
    fn named_and_ordered_reps_agree() {
        let tol = Tolerances::default();
        let g = build_group(&GroupSpec::Free { rank: 2 }).unwrap();
        let x: MatrixSpec = vec![vec![[0.0, 1.0]]];
        let y: MatrixSpec = vec![vec![[-1.0, 0.0]]];
        let a = build_rep(&g, &RepSpec::Ordered(vec![x.clone(), y.clone()]), &tol).unwrap();
        let named = BTreeMap::from([("b".to_string(), y), ("a".to_string(), x)]);
        let b = build_rep(&g, &RepSpec::Named(named), &tol).unwrap();
        assert_eq!(a.images(), b.images());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(parse(r#"{"grop": {}}"#), Err(CliError::Parse(_))));
        assert!(matches!(parse(r#"{"group": {"kind": "cyclic", "n": 3, "m": 1}}"#), Err(CliError::Parse(_))));
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let m: MatrixSpec = vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0]]];
        assert!(build_matrix(&m).is_err());
    }

    #[test]
    fn support_measure_parses_words() {
        let g = build_group(&GroupSpec::Free { rank: 1 }).unwrap();
        let spec = parse(r#"{"measure": {"support": [{"word": "a^2", "weight": 0.25}, {"word": "a^-2", "weight": 0.25}, {"word": "a", "weight": 0.25}, {"word": "a^-1", "weight": 0.25}]}}"#).unwrap();
        let mu = build_measure(&g, spec.measure.as_ref()).unwrap();
        assert_eq!(mu.support().len(), 4);
        assert!((mu.mass() - 1.0).abs() < 1e-12);
    }
}
