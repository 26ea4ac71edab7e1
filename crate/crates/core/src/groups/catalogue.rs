use super::{closure_table, power, FiniteTable, GroupError, GroupModel, Letter, Word};

/// Named groups with known presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Catalogue {
    /// `C_n = ⟨t | tⁿ⟩`.
    Cyclic(usize),
    /// `S₃ = ⟨s, c | s², c³, (sc)²⟩`.
    Symmetric3,
    /// Order `2n`: `⟨r, s | rⁿ, s², (sr)²⟩`.
    Dihedral(usize),
    /// `Q₈ = ⟨i, j | i⁴, i²j⁻², j⁻¹iji⟩`.
    Quaternion,
    Free(usize),
    FreeAbelian(usize),
}

impl Catalogue {
    pub fn build(self) -> Result<GroupModel, GroupError> {
        match self {
            Catalogue::Cyclic(n) => cyclic(n),
            Catalogue::Symmetric3 => symmetric3(),
            Catalogue::Dihedral(n) => dihedral(n),
            Catalogue::Quaternion => quaternion(),
            Catalogue::Free(k) => GroupModel::free(k),
            Catalogue::FreeAbelian(k) => GroupModel::free_abelian(k),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(
            self,
            Catalogue::Cyclic(_) | Catalogue::Symmetric3 | Catalogue::Dihedral(_) | Catalogue::Quaternion
        )
    }
}

fn word(spec: &[(usize, i64)]) -> Word {
    spec.iter().flat_map(|&(g, n)| power(g, n)).collect()
}

fn cyclic(n: usize) -> Result<GroupModel, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic order must be at least 1".into()));
    }
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let gen = if n == 1 { 0 } else { 1 };
    let ft = FiniteTable::new(n, table, vec![gen])?;
    GroupModel::cayley_table(&format!("C{n}"), vec!["t".into()], ft, Some(vec![power(0, n as i64)]))
}

fn compose(p: &Vec<usize>, q: &Vec<usize>) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

fn symmetric3() -> Result<GroupModel, GroupError> {
    let s = vec![1, 0, 2];
    let c = vec![1, 2, 0];
    let (n, table, gens) = closure_table(vec![0, 1, 2], &[s, c], compose);
    let ft = FiniteTable::new(n, table, gens)?;
    let rels = vec![word(&[(0, 2)]), word(&[(1, 3)]), word(&[(0, 1), (1, 1), (0, 1), (1, 1)])];
    GroupModel::cayley_table("S3", vec!["s".into(), "c".into()], ft, Some(rels))
}

fn dihedral(n: usize) -> Result<GroupModel, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidParameter("dihedral parameter must be at least 2".into()));
    }
    let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let (order, table, gens) = closure_table((0..n).collect(), &[r, s], compose);
    let ft = FiniteTable::new(order, table, gens)?;
    let rels = vec![word(&[(0, n as i64)]), word(&[(1, 2)]), word(&[(1, 1), (0, 1), (1, 1), (0, 1)])];
    GroupModel::cayley_table(&format!("D{n}"), vec!["r".into(), "s".into()], ft, Some(rels))
}

type Quat = [i8; 4];

fn hamilton(p: &Quat, q: &Quat) -> Quat {
    let [a1, b1, c1, d1] = *p;
    let [a2, b2, c2, d2] = *q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn quaternion() -> Result<GroupModel, GroupError> {
    let (n, table, gens) = closure_table([1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], hamilton);
    let ft = FiniteTable::new(n, table, gens)?;
    let rels = vec![
        word(&[(0, 4)]),
        word(&[(0, 2), (1, -2)]),
        vec![Letter::neg(1), Letter::pos(0), Letter::pos(1), Letter::pos(0)],
    ];
    GroupModel::cayley_table("Q8", vec!["i".into(), "j".into()], ft, Some(rels))
}
