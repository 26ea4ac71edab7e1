//! Finitely generated groups: models with normal forms, word length, balls,
//! and finitely supported probability measures.
//!
//! Equality is only decided for kinds that carry a normal form (free, free
//! abelian, finite Cayley tables and wreath constructions). Relator-presented
//! groups can still be used for cocycle computations, which only need the
//! relators.

mod catalogue;
mod measure;
mod word;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wreath::{wr_inv, wr_mul, WreathElement};

pub use catalogue::Catalogue;
pub use measure::{make_measure, AdaptedCertificate, FinMeasure, MeasureError, SYMMETRY_TOL};
pub use word::{commutator, concat, free_reduce, inverse_word, power, Letter, Word};

/// Radius cap for BFS-based word length in wreath groups.
const WREATH_BFS_RADIUS: usize = 16;
const WREATH_BFS_NODES: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("empty generator list")]
    NoGenerators,
    #[error("relator {index} uses unknown generator {generator}")]
    UnknownGenerator { index: usize, generator: usize },
    #[error("unknown generator name `{0}`")]
    UnknownGeneratorName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("multiplication table is malformed: {0}")]
    MalformedTable(String),
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse in the table")]
    NoInverse(usize),
    #[error("the generators do not generate the whole table ({reached} of {order} elements reached)")]
    NotGenerated { reached: usize, order: usize },
    #[error("relator {index} does not evaluate to the identity")]
    RelatorNotTrivial { index: usize },
    #[error("{0} group has no normal form; equality and enumeration are unavailable")]
    NoNormalForm(GroupKind),
    #[error("word length search exceeded its bound")]
    SearchLimit,
    #[error("cannot parse word `{0}`")]
    BadWord(String),
    #[error("element does not belong to this group model")]
    ForeignElement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    FinitelyPresented,
    Free,
    FreeAbelian,
    CayleyTable,
    Wreath,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::FinitelyPresented => "finitely presented",
            GroupKind::Free => "free",
            GroupKind::FreeAbelian => "free abelian",
            GroupKind::CayleyTable => "cayley table",
            GroupKind::Wreath => "wreath",
        };
        f.write_str(s)
    }
}

/// Group element in the normal form of its model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Freely reduced word (free groups; relator-presented groups, where it
    /// is only a representative).
    Word(Word),
    /// Exponent vector in `Z^k`.
    Exponents(Vec<i64>),
    /// Index into a Cayley table.
    Index(usize),
    Wreath(WreathElement),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteTable {
    order: usize,
    identity: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generator_elements: Vec<usize>,
    geodesics: Vec<Word>,
}

impl FiniteTable {
    /// Validates a row-major table (`table[a * n + b] = a·b`) and the
    /// generator elements; checks associativity and inverses exhaustively.
    pub fn new(order: usize, table: Vec<usize>, generator_elements: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::MalformedTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(GroupError::MalformedTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(GroupError::MalformedTable(format!("entry {bad} out of range")));
        }
        if generator_elements.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        if let Some(&bad) = generator_elements.iter().find(|&&x| x >= order) {
            return Err(GroupError::MalformedTable(format!("generator element {bad} out of range")));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| GroupError::MalformedTable("no identity element".into()))?;
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverses = vec![0; order];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
        }
        let mut ft = FiniteTable {
            order,
            identity,
            table,
            inverses,
            generator_elements,
            geodesics: Vec::new(),
        };
        ft.geodesics = ft.bfs_geodesics()?;
        Ok(ft)
    }

    fn letter_element(&self, l: Letter) -> usize {
        let g = self.generator_elements[l.generator];
        if l.inverse {
            self.inverses[g]
        } else {
            g
        }
    }

    fn letters(&self) -> Vec<Letter> {
        (0..self.generator_elements.len()).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
    }

    fn bfs_geodesics(&self) -> Result<Vec<Word>, GroupError> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        let letters = self.letters();
        while let Some(x) = queue.pop_front() {
            let wx = words[x].clone().expect("visited");
            for &l in &letters {
                let y = self.mul(x, self.letter_element(l));
                if words[y].is_none() {
                    let mut wy = wx.clone();
                    wy.push(l);
                    words[y] = Some(wy);
                    queue.push_back(y);
                }
            }
        }
        let reached = words.iter().filter(|w| w.is_some()).count();
        if reached != self.order {
            return Err(GroupError::NotGenerated { reached, order: self.order });
        }
        Ok(words.into_iter().map(|w| w.expect("reached")).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generator_elements(&self) -> &[usize] {
        &self.generator_elements
    }

    /// A shortest word for `a`.
    pub fn geodesic(&self, a: usize) -> &Word {
        &self.geodesics[a]
    }

    pub fn evaluate(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.identity, |acc, &l| self.mul(acc, self.letter_element(l)))
    }

    /// Relators `w_g · s · w_{gs}⁻¹` read off the Cayley graph with respect to
    /// the BFS spanning tree; together they present the group.
    pub fn cayley_relators(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order {
            for s in 0..self.generator_elements.len() {
                let gs = self.mul(g, self.generator_elements[s]);
                let mut w = self.geodesics[g].clone();
                w.push(Letter::pos(s));
                w.extend(inverse_word(&self.geodesics[gs]));
                let r = free_reduce(&w);
                if !r.is_empty() && seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Structure {
    Presented,
    Free,
    FreeAbelian,
    Finite(FiniteTable),
    /// `G ⋉ Z^(G)` over a finite base model; generators are the base
    /// generators followed by `t`, the Z-generator of the copy at the identity.
    Wreath(Box<GroupModel>),
}

/// A finitely generated group with a named generating set `S`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    name: String,
    kind: GroupKind,
    generators: Vec<String>,
    relators: Vec<Word>,
    structure: Structure,
}

fn check_generators(generators: &[String], relators: &[Word]) -> Result<(), GroupError> {
    if generators.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    for (index, r) in relators.iter().enumerate() {
        if let Some(l) = r.iter().find(|l| l.generator >= generators.len()) {
            return Err(GroupError::UnknownGenerator { index, generator: l.generator });
        }
    }
    Ok(())
}

impl GroupModel {
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidParameter("free rank must be at least 1".into()));
        }
        let generators = default_names(rank);
        Ok(GroupModel {
            name: format!("F{rank}"),
            kind: GroupKind::Free,
            generators,
            relators: Vec::new(),
            structure: Structure::Free,
        })
    }

    pub fn free_abelian(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidParameter("free abelian rank must be at least 1".into()));
        }
        let generators: Vec<String> =
            if rank == 1 { vec!["t".into()] } else { (1..=rank).map(|i| format!("t{i}")).collect() };
        let mut relators = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                relators.push(commutator(&[Letter::pos(i)], &[Letter::pos(j)]));
            }
        }
        Ok(GroupModel {
            name: if rank == 1 { "Z".into() } else { format!("Z^{rank}") },
            kind: GroupKind::FreeAbelian,
            generators,
            relators,
            structure: Structure::FreeAbelian,
        })
    }

    /// Relator presentation without a normal form.
    pub fn finitely_presented(name: &str, generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        check_generators(&generators, &relators)?;
        Ok(GroupModel {
            name: name.into(),
            kind: GroupKind::FinitelyPresented,
            generators,
            relators,
            structure: Structure::Presented,
        })
    }

    /// Finite group from a table. When `relators` is `None` a presentation
    /// is derived from the Cayley graph; supplied relators are checked to
    /// evaluate to the identity.
    pub fn cayley_table(
        name: &str,
        generators: Vec<String>,
        table: FiniteTable,
        relators: Option<Vec<Word>>,
    ) -> Result<Self, GroupError> {
        if generators.len() != table.generator_elements.len() {
            return Err(GroupError::MalformedTable("generator names and elements differ in number".into()));
        }
        let relators = match relators {
            Some(rs) => {
                check_generators(&generators, &rs)?;
                for (index, r) in rs.iter().enumerate() {
                    if table.evaluate(r) != table.identity {
                        return Err(GroupError::RelatorNotTrivial { index });
                    }
                }
                rs
            }
            None => {
                check_generators(&generators, &[])?;
                table.cayley_relators()
            }
        };
        Ok(GroupModel {
            name: name.into(),
            kind: GroupKind::CayleyTable,
            generators,
            relators,
            structure: Structure::Finite(table),
        })
    }

    /// `G ⋉ Z^(G)` with `G` finite, acting by shifting the copies of Z.
    pub fn wreath(base: &GroupModel) -> Result<Self, GroupError> {
        if base.finite_table().is_none() {
            return Err(GroupError::InvalidParameter("wreath base group must be finite".into()));
        }
        let mut generators = base.generators.clone();
        // the Z-generator is `t`, or `z` when the base already uses `t`
        let lamp = if generators.iter().any(|g| g == "t") { "z" } else { "t" };
        generators.push(lamp.into());
        Ok(GroupModel {
            name: format!("{} wr Z", base.name),
            kind: GroupKind::Wreath,
            generators,
            relators: Vec::new(),
            structure: Structure::Wreath(Box::new(base.clone())),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn has_normal_form(&self) -> bool {
        !matches!(self.structure, Structure::Presented)
    }

    pub fn finite_table(&self) -> Option<&FiniteTable> {
        match &self.structure {
            Structure::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn wreath_base(&self) -> Option<&GroupModel> {
        match &self.structure {
            Structure::Wreath(b) => Some(b),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.finite_table().map(|t| t.order)
    }

    /// All letters of `S ∪ S⁻¹`, in the order `s₁, s₁⁻¹, s₂, …`.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_generators()).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn identity(&self) -> Element {
        match &self.structure {
            Structure::Presented | Structure::Free => Element::Word(Vec::new()),
            Structure::FreeAbelian => Element::Exponents(vec![0; self.num_generators()]),
            Structure::Finite(t) => Element::Index(t.identity),
            Structure::Wreath(b) => Element::Wreath(WreathElement::identity(b.finite_table().expect("finite base"))),
        }
    }

    pub fn letter_element(&self, l: Letter) -> Element {
        match &self.structure {
            Structure::Presented | Structure::Free => Element::Word(vec![l]),
            Structure::FreeAbelian => {
                let mut e = vec![0; self.num_generators()];
                e[l.generator] = l.sign();
                Element::Exponents(e)
            }
            Structure::Finite(t) => Element::Index(t.letter_element(l)),
            Structure::Wreath(b) => {
                let table = b.finite_table().expect("finite base");
                let base_gens = b.num_generators();
                if l.generator < base_gens {
                    Element::Wreath(WreathElement::top(table.letter_element(l)))
                } else {
                    Element::Wreath(WreathElement::lamp(table.identity, table.identity, l.sign()))
                }
            }
        }
    }

    pub fn generator(&self, g: usize) -> Element {
        self.letter_element(Letter::pos(g))
    }

    fn check_word(&self, w: &[Letter]) -> Result<(), GroupError> {
        match w.iter().find(|l| l.generator >= self.num_generators()) {
            Some(l) => Err(GroupError::UnknownGenerator { index: 0, generator: l.generator }),
            None => Ok(()),
        }
    }

    /// Element represented by a word (normal form where the kind has one).
    pub fn element_of_word(&self, w: &[Letter]) -> Result<Element, GroupError> {
        self.check_word(w)?;
        Ok(match &self.structure {
            Structure::Presented | Structure::Free => Element::Word(free_reduce(w)),
            _ => w.iter().fold(self.identity(), |acc, &l| self.mul(&acc, &self.letter_element(l))),
        })
    }

    /// Normal form; fails for relator-presented groups.
    pub fn normal_form(&self, w: &[Letter]) -> Result<Element, GroupError> {
        if !self.has_normal_form() {
            return Err(GroupError::NoNormalForm(self.kind));
        }
        self.element_of_word(w)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.structure, a, b) {
            (Structure::Presented | Structure::Free, Element::Word(x), Element::Word(y)) => {
                Element::Word(free_reduce(&concat(x, y)))
            }
            (Structure::FreeAbelian, Element::Exponents(x), Element::Exponents(y)) => {
                Element::Exponents(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Structure::Finite(t), Element::Index(x), Element::Index(y)) => Element::Index(t.mul(*x, *y)),
            (Structure::Wreath(base), Element::Wreath(x), Element::Wreath(y)) => {
                Element::Wreath(wr_mul(base.finite_table().expect("finite base"), x, y))
            }
            _ => panic!("element does not belong to group {}", self.name),
        }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match (&self.structure, a) {
            (Structure::Presented | Structure::Free, Element::Word(x)) => Element::Word(inverse_word(x)),
            (Structure::FreeAbelian, Element::Exponents(x)) => Element::Exponents(x.iter().map(|p| -p).collect()),
            (Structure::Finite(t), Element::Index(x)) => Element::Index(t.inverse(*x)),
            (Structure::Wreath(base), Element::Wreath(x)) => {
                Element::Wreath(wr_inv(base.finite_table().expect("finite base"), x))
            }
            _ => panic!("element does not belong to group {}", self.name),
        }
    }

    pub fn is_identity(&self, a: &Element) -> Result<bool, GroupError> {
        self.equal(a, &self.identity())
    }

    pub fn equal(&self, a: &Element, b: &Element) -> Result<bool, GroupError> {
        if !self.has_normal_form() {
            return Err(GroupError::NoNormalForm(self.kind));
        }
        Ok(a == b)
    }

    /// A word representing `a`; shortest for free, free abelian and finite kinds.
    pub fn word_of(&self, a: &Element) -> Word {
        match (&self.structure, a) {
            (Structure::Presented | Structure::Free, Element::Word(w)) => w.clone(),
            (Structure::FreeAbelian, Element::Exponents(e)) => {
                e.iter().enumerate().flat_map(|(i, &n)| power(i, n)).collect()
            }
            (Structure::Finite(t), Element::Index(x)) => t.geodesic(*x).clone(),
            (Structure::Wreath(base), Element::Wreath(x)) => {
                let table = base.finite_table().expect("finite base");
                let t_gen = base.num_generators();
                // (g, f) = Π_x (w_x t^{f(x)} w_x⁻¹) · w_g
                let mut w = Vec::new();
                for (&pos, &n) in &x.lamps {
                    let wx = table.geodesic(pos);
                    w.extend_from_slice(wx);
                    w.extend(power(t_gen, n));
                    w.extend(inverse_word(wx));
                }
                w.extend_from_slice(table.geodesic(x.top));
                free_reduce(&w)
            }
            _ => panic!("element does not belong to group {}", self.name),
        }
    }

    /// `|g|_Q` for `Q = S ∪ S⁻¹`.
    pub fn word_length(&self, a: &Element) -> Result<usize, GroupError> {
        match (&self.structure, a) {
            (Structure::Presented, _) => Err(GroupError::NoNormalForm(self.kind)),
            (Structure::Free, Element::Word(w)) => Ok(w.len()),
            (Structure::FreeAbelian, Element::Exponents(e)) => Ok(e.iter().map(|n| n.unsigned_abs() as usize).sum()),
            (Structure::Finite(t), Element::Index(x)) => Ok(t.geodesic(*x).len()),
            (Structure::Wreath(_), Element::Wreath(_)) => {
                let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
                let mut frontier = vec![self.identity()];
                if *a == self.identity() {
                    return Ok(0);
                }
                let letters: Vec<Element> = self.letters().into_iter().map(|l| self.letter_element(l)).collect();
                for radius in 1..=WREATH_BFS_RADIUS {
                    let mut next = Vec::new();
                    for x in &frontier {
                        for s in &letters {
                            let y = self.mul(x, s);
                            if y == *a {
                                return Ok(radius);
                            }
                            if seen.insert(y.clone()) {
                                next.push(y);
                            }
                        }
                    }
                    if seen.len() > WREATH_BFS_NODES {
                        break;
                    }
                    frontier = next;
                }
                Err(GroupError::SearchLimit)
            }
            _ => Err(GroupError::ForeignElement),
        }
    }

    /// All elements with `|g|_Q ≤ r`, in BFS order.
    pub fn ball(&self, r: usize) -> Result<Vec<Element>, GroupError> {
        match &self.structure {
            Structure::Presented => Err(GroupError::NoNormalForm(self.kind)),
            Structure::Finite(t) => {
                let mut els: Vec<usize> = (0..t.order).filter(|&x| t.geodesic(x).len() <= r).collect();
                els.sort_by_key(|&x| (t.geodesic(x).len(), t.geodesic(x).clone()));
                Ok(els.into_iter().map(Element::Index).collect())
            }
            _ => {
                let letters: Vec<Element> = self.letters().into_iter().map(|l| self.letter_element(l)).collect();
                let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
                let mut out = vec![self.identity()];
                let mut frontier = vec![self.identity()];
                for _ in 0..r {
                    let mut next = Vec::new();
                    for x in &frontier {
                        for s in &letters {
                            let y = self.mul(x, s);
                            if seen.insert(y.clone()) {
                                next.push(y);
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
                Ok(out)
            }
        }
    }

    /// Parses words such as `a b^-1 a`, `t^3`, `e` (identity) or `s*c^2`.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let cleaned = text.replace('*', " ");
        let mut w = Vec::new();
        for tok in cleaned.split_whitespace() {
            if tok == "e" && self.generator_index("e").is_none() {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| GroupError::BadWord(text.into()))?),
                None => (tok, 1),
            };
            let g = self.generator_index(name).ok_or_else(|| GroupError::UnknownGeneratorName(name.into()))?;
            w.extend(power(g, exp));
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "e".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let n = (j - i) as i64 * w[i].sign();
            let name = &self.generators[w[i].generator];
            parts.push(if n == 1 { name.clone() } else { format!("{name}^{n}") });
            i = j;
        }
        parts.join(" ")
    }

    /// Elements of a finite model, in index order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        self.finite_table().map(|t| (0..t.order).map(Element::Index).collect())
    }
}

fn default_names(rank: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["a", "b", "c", "d", "f", "g"];
    if rank <= NAMES.len() {
        NAMES[..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

/// Builds a table by closing a set of generators under a multiplication.
pub(crate) fn closure_table<T, F>(identity: T, generators: &[T], mul: F) -> (usize, Vec<usize>, Vec<usize>)
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let y = mul(&elems[i], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(y);
            }
        }
    }
    let n = elems.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = index[&mul(&elems[a], &elems[b])];
        }
    }
    let gens = generators.iter().map(|g| index[g]).collect();
    (n, table, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, gens: usize, len: usize) -> Word {
        (0..len).map(|_| Letter { generator: rng.random_range(0..gens), inverse: rng.random() }).collect()
    }

    #[test]
    fn cyclic_three_catalogue() {
        let g = Catalogue::Cyclic(3).build().unwrap();
        assert_eq!(g.generators(), &["t".to_string()]);
        assert_eq!(g.relators(), &[power(0, 3)]);
        assert_eq!(g.order(), Some(3));
    }

    #[test]
    fn free_two_has_no_relators() {
        let g = GroupModel::free(2).unwrap();
        assert_eq!(g.generators(), &["a".to_string(), "b".to_string()]);
        assert!(g.relators().is_empty());
    }

    #[test]
    fn non_associative_table_rejected() {
        // Latin square of order 6 with identity 0 that is not a group table.
        #[rustfmt::skip]
        let table = vec![
            0,1,2,3,4,5,
            1,0,3,2,5,4,
            2,4,0,5,1,3,
            3,5,4,0,2,1,
            4,2,5,1,3,0,
            5,3,1,4,0,2,
        ];
        let err = FiniteTable::new(6, table, vec![1, 2]).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative(..)));
    }

    #[test]
    fn relator_with_unknown_generator_rejected() {
        let err = GroupModel::finitely_presented("bad", vec!["a".into()], vec![vec![Letter::pos(1)]]).unwrap_err();
        assert!(matches!(err, GroupError::UnknownGenerator { .. }));
    }

    #[test]
    fn empty_generators_rejected() {
        assert_eq!(GroupModel::finitely_presented("x", vec![], vec![]).unwrap_err(), GroupError::NoGenerators);
    }

    #[test]
    fn word_lengths() {
        let f2 = GroupModel::free(2).unwrap();
        assert_eq!(f2.word_length(&f2.identity()).unwrap(), 0);
        let w = f2.parse_word("a b^-1 a").unwrap();
        assert_eq!(f2.word_length(&f2.element_of_word(&w).unwrap()).unwrap(), 3);
        let c5 = Catalogue::Cyclic(5).build().unwrap();
        let g3 = c5.element_of_word(&power(0, 3)).unwrap();
        assert_eq!(c5.word_length(&g3).unwrap(), 2);
    }

    #[test]
    fn ball_sizes() {
        let f2 = GroupModel::free(2).unwrap();
        assert_eq!(f2.ball(0).unwrap(), vec![f2.identity()]);
        assert_eq!(f2.ball(2).unwrap().len(), 17);
        let z2 = GroupModel::free_abelian(2).unwrap();
        assert_eq!(z2.ball(1).unwrap().len(), 5);
        let s3 = Catalogue::Symmetric3.build().unwrap();
        assert_eq!(s3.ball(0).unwrap().len(), 1);
    }

    #[test]
    fn presented_groups_refuse_equality_and_balls() {
        let g = GroupModel::finitely_presented("bs", vec!["a".into(), "b".into()], vec![]).unwrap();
        assert!(matches!(g.ball(1), Err(GroupError::NoNormalForm(_))));
        assert!(matches!(g.equal(&g.identity(), &g.identity()), Err(GroupError::NoNormalForm(_))));
    }

    #[test]
    fn derived_cayley_relators_hold() {
        for cat in [Catalogue::Cyclic(4), Catalogue::Symmetric3, Catalogue::Dihedral(4), Catalogue::Quaternion] {
            let g = cat.build().unwrap();
            let t = g.finite_table().unwrap();
            for r in t.cayley_relators() {
                assert_eq!(t.evaluate(&r), t.identity());
            }
        }
    }

    #[test]
    fn parse_and_format_round_trip() {
        let f2 = GroupModel::free(2).unwrap();
        let w = f2.parse_word("a^2 b^-1 a").unwrap();
        assert_eq!(f2.format_word(&w), "a^2 b^-1 a");
        assert!(f2.parse_word("a z").is_err());
        assert!(f2.parse_word("e").unwrap().is_empty());
    }

    fn models() -> Vec<GroupModel> {
        let s3 = Catalogue::Symmetric3.build().unwrap();
        vec![
            GroupModel::free(2).unwrap(),
            GroupModel::free_abelian(2).unwrap(),
            Catalogue::Dihedral(4).build().unwrap(),
            Catalogue::Quaternion.build().unwrap(),
            GroupModel::wreath(&Catalogue::Cyclic(2).build().unwrap()).unwrap(),
            GroupModel::wreath(&s3).unwrap(),
        ]
    }

    #[test]
    fn subadditivity_and_inverses_on_sampled_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in models() {
            let ball = g.ball(3).unwrap();
            for _ in 0..1000 {
                let x = &ball[rng.random_range(0..ball.len())];
                let y = &ball[rng.random_range(0..ball.len())];
                let lx = g.word_length(x).unwrap();
                let ly = g.word_length(y).unwrap();
                let lxy = g.word_length(&g.mul(x, y)).unwrap();
                assert!(lxy <= lx + ly, "{}: |xy| = {lxy} > {lx} + {ly}", g.name());
                assert!(g.is_identity(&g.mul(x, &g.inverse(x))).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_idempotent_and_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in models() {
            let n = g.num_generators();
            for _ in 0..200 {
                let w = random_word(&mut rng, n, 8);
                let x = g.normal_form(&w).unwrap();
                assert_eq!(g.normal_form(&g.word_of(&x)).unwrap(), x);
                let y = g.normal_form(&random_word(&mut rng, n, 5)).unwrap();
                let z = g.normal_form(&random_word(&mut rng, n, 5)).unwrap();
                assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            }
        }
    }

    #[test]
    fn balls_grow_by_one_letter() {
        for g in models() {
            let letters: Vec<Element> = g.letters().into_iter().map(|l| g.letter_element(l)).collect();
            for r in 0..3 {
                let small: HashSet<Element> = g.ball(r).unwrap().into_iter().collect();
                let big = g.ball(r + 1).unwrap();
                assert!(small.iter().all(|x| big.contains(x)));
                for y in &big {
                    let reachable = small.contains(y)
                        || small.iter().any(|x| letters.iter().any(|s| g.mul(x, s) == *y));
                    assert!(reachable);
                }
                let uniq: HashSet<&Element> = big.iter().collect();
                assert_eq!(uniq.len(), big.len());
            }
        }
    }
}
