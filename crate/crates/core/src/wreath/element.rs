use std::collections::BTreeMap;

use crate::groups::FiniteTable;

/// Element `(g, f)` of `G ⋉ Z^(G)`: `g` indexes the finite top group and `f`
/// is a finitely supported map `G → Z` stored without zero entries.
///
/// Product law: `(g, f)·(h, f') = (gh, f + g·f')` with `(g·f')(x) = f'(g⁻¹x)`,
/// so conjugating the Z-generator at `e` by `g` moves it to the copy at `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub top: usize,
    pub lamps: BTreeMap<usize, i64>,
}

impl WreathElement {
    pub fn identity(base: &FiniteTable) -> Self {
        WreathElement { top: base.identity(), lamps: BTreeMap::new() }
    }

    pub fn top(g: usize) -> Self {
        WreathElement { top: g, lamps: BTreeMap::new() }
    }

    /// `(top, n·δ_position)`.
    pub fn lamp(top: usize, position: usize, n: i64) -> Self {
        let mut lamps = BTreeMap::new();
        if n != 0 {
            lamps.insert(position, n);
        }
        WreathElement { top, lamps }
    }

    pub fn lamp_at(&self, position: usize) -> i64 {
        self.lamps.get(&position).copied().unwrap_or(0)
    }
}

/// `g·f`: moves the value at `x` to `g x`.
fn shift(base: &FiniteTable, g: usize, f: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
    f.iter().map(|(&x, &n)| (base.mul(g, x), n)).collect()
}

fn add_into(acc: &mut BTreeMap<usize, i64>, f: &BTreeMap<usize, i64>, sign: i64) {
    for (&x, &n) in f {
        let v = acc.entry(x).or_insert(0);
        *v += sign * n;
        if *v == 0 {
            acc.remove(&x);
        }
    }
}

pub fn wr_mul(base: &FiniteTable, x: &WreathElement, y: &WreathElement) -> WreathElement {
    let mut lamps = x.lamps.clone();
    add_into(&mut lamps, &shift(base, x.top, &y.lamps), 1);
    WreathElement { top: base.mul(x.top, y.top), lamps }
}

/// `(g, f)⁻¹ = (g⁻¹, −g⁻¹·f)`.
pub fn wr_inv(base: &FiniteTable, x: &WreathElement) -> WreathElement {
    let gi = base.inverse(x.top);
    let mut lamps = BTreeMap::new();
    add_into(&mut lamps, &shift(base, gi, &x.lamps), -1);
    WreathElement { top: gi, lamps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Catalogue;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng, base: &FiniteTable) -> WreathElement {
        let mut x = WreathElement::top(rng.random_range(0..base.order()));
        for _ in 0..3 {
            let p = rng.random_range(0..base.order());
            let n = rng.random_range(-3..=3);
            add_into(&mut x.lamps, &BTreeMap::from([(p, n)]), 1);
        }
        x
    }

    #[test]
    fn identity_and_inverse() {
        let s3 = Catalogue::Symmetric3.build().unwrap();
        let base = s3.finite_table().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = WreathElement::identity(base);
        for _ in 0..100 {
            let x = random_element(&mut rng, base);
            assert_eq!(wr_mul(base, &e, &x), x);
            assert_eq!(wr_mul(base, &x, &wr_inv(base, &x)), e);
            assert_eq!(wr_mul(base, &wr_inv(base, &x), &x), e);
        }
    }

    #[test]
    fn conjugation_moves_the_lamp() {
        let c2 = Catalogue::Cyclic(2).build().unwrap();
        let base = c2.finite_table().unwrap();
        let e = base.identity();
        let u = base.generator_elements()[0];
        let t = WreathElement::lamp(e, e, 1);
        let uu = WreathElement::top(u);
        let conj = wr_mul(base, &wr_mul(base, &uu, &t), &wr_inv(base, &uu));
        assert_eq!(conj, WreathElement::lamp(e, u, 1));
    }

    #[test]
    fn exact_group_laws_on_random_triples() {
        let s3 = Catalogue::Symmetric3.build().unwrap();
        let base = s3.finite_table().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let x = random_element(&mut rng, base);
            let y = random_element(&mut rng, base);
            let z = random_element(&mut rng, base);
            let xy = wr_mul(base, &x, &y);
            assert_eq!(wr_mul(base, &xy, &z), wr_mul(base, &x, &wr_mul(base, &y, &z)));
            assert_eq!(wr_inv(base, &xy), wr_mul(base, &wr_inv(base, &y), &wr_inv(base, &x)));
        }
    }
}
