//! Incremental sparse Gaussian elimination over the integers, fraction-free,
//! with content removal after every row operation. Pivot of a row is its
//! largest column index, so callers arrange column numbering so that the
//! canonically largest object gets the largest index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type Col = u32;

/// Sparse integer row; entries ascending by column, no zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseInt {
    pub entries: Vec<(Col, BigInt)>,
}

impl SparseInt {
    pub fn from_pairs(mut pairs: Vec<(Col, BigInt)>) -> SparseInt {
        pairs.sort_by_key(|e| e.0);
        let mut entries: Vec<(Col, BigInt)> = Vec::with_capacity(pairs.len());
        for (c, v) in pairs {
            match entries.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseInt { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pivot(&self) -> Option<Col> {
        self.entries.last().map(|e| e.0)
    }

    /// Divides out the gcd of the coefficients and makes the pivot positive.
    pub fn normalize(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if self.entries.last().unwrap().1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in &mut self.entries {
                *v = &*v / &g;
            }
        }
    }

    /// self * a - other * b, merged.
    fn combine(&self, a: &BigInt, other: &SparseInt, b: &BigInt) -> SparseInt {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (cs, vs) = &self.entries[i];
            let (co, vo) = &other.entries[j];
            match cs.cmp(co) {
                std::cmp::Ordering::Less => {
                    entries.push((*cs, vs * a));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    entries.push((*co, -(vo * b)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = vs * a - vo * b;
                    if !v.is_zero() {
                        entries.push((*cs, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (c, v) in &self.entries[i..] {
            entries.push((*c, v * a));
        }
        for (c, v) in &other.entries[j..] {
            entries.push((*c, -(v * b)));
        }
        SparseInt { entries }
    }
}

/// Row echelon accumulator. Rows are kept pivot-normalized but not reduced
/// against each other until `normal_forms` runs.
#[derive(Default, Debug)]
pub struct Eliminator {
    rows: BTreeMap<Col, SparseInt>,
}

impl Eliminator {
    pub fn new() -> Eliminator {
        Eliminator::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = Col> + '_ {
        self.rows.keys().copied()
    }

    /// Cancels leading terms of v against stored rows until its pivot is fresh.
    pub fn reduce(&self, mut v: SparseInt) -> SparseInt {
        while let Some(p) = v.pivot() {
            let Some(row) = self.rows.get(&p) else { break };
            let a = row.entries.last().unwrap().1.clone();
            let b = v.entries.last().unwrap().1.clone();
            let g = a.gcd(&b);
            v = v.combine(&(&a / &g), row, &(&b / &g));
            v.normalize();
        }
        v
    }

    /// Returns true when the row was independent and the rank grew.
    pub fn insert(&mut self, v: SparseInt) -> bool {
        let mut v = self.reduce(v);
        match v.pivot() {
            None => false,
            Some(p) => {
                v.normalize();
                self.rows.insert(p, v);
                true
            }
        }
    }

    /// Span membership test without mutating the table.
    pub fn contains(&self, v: SparseInt) -> bool {
        self.reduce(v).is_zero()
    }

    /// Full back-substitution. Returns, for every pivot column, the rational
    /// normal form of that column over the non-pivot columns: p = sum c_b * b.
    /// Rows only ever reference strictly smaller columns than their pivot, so a
    /// single ascending pass suffices.
    pub fn normal_forms(&self) -> BTreeMap<Col, Vec<(Col, BigRational)>> {
        let mut nf: BTreeMap<Col, Vec<(Col, BigRational)>> = BTreeMap::new();
        for (&p, row) in &self.rows {
            let a = BigRational::from(row.entries.last().unwrap().1.clone());
            let mut acc: BTreeMap<Col, BigRational> = BTreeMap::new();
            for (c, v) in &row.entries[..row.entries.len() - 1] {
                let coef = -BigRational::from(v.clone()) / &a;
                match nf.get(c) {
                    // column c is itself a pivot: substitute its resolved form
                    Some(sub) => {
                        for (cb, vb) in sub {
                            let e = acc.entry(*cb).or_insert_with(BigRational::zero);
                            *e += &coef * vb;
                        }
                    }
                    None => {
                        let e = acc.entry(*c).or_insert_with(BigRational::zero);
                        *e += coef;
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            nf.insert(p, acc.into_iter().collect());
        }
        nf
    }
}

/// Clears denominators of a rational row into a SparseInt (rank-preserving).
pub fn clear_denominators(row: &[(Col, BigRational)]) -> SparseInt {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    SparseInt::from_pairs(
        row.iter()
            .map(|(c, v)| (*c, (v * BigRational::from(l.clone())).to_integer()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(pairs: &[(Col, i64)]) -> SparseInt {
        SparseInt::from_pairs(pairs.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
    }

    #[test]
    fn rank_and_normal_forms() {
        let mut e = Eliminator::new();
        assert!(e.insert(row(&[(0, 1), (2, 2)])));
        assert!(e.insert(row(&[(1, 3), (2, 3)])));
        assert!(!e.insert(row(&[(0, 2), (1, 4), (2, 8)])));
        assert_eq!(e.rank(), 2);
        let nf = e.normal_forms();
        // pivot 2: 2c2 = -c0  and pivot from second row after reduction
        assert_eq!(nf.len(), 2);
        for (_p, form) in &nf {
            for (c, _) in form {
                assert!(!nf.contains_key(c), "normal form references a pivot");
            }
        }
    }

    #[test]
    fn normal_forms_back_substitute() {
        // rows: c2 - c1, c1 - c0  => both c2 and c1 resolve to c0
        let mut e = Eliminator::new();
        e.insert(row(&[(1, -1), (2, 1)]));
        e.insert(row(&[(0, -1), (1, 1)]));
        let nf = e.normal_forms();
        assert_eq!(nf[&1], vec![(0, BigRational::from(BigInt::from(1)))]);
        assert_eq!(nf[&2], vec![(0, BigRational::from(BigInt::from(1)))]);
    }

    proptest! {
        #[test]
        fn rank_is_insert_order_invariant(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let nrows = rng.gen_range(1..8);
            let rows: Vec<SparseInt> = (0..nrows)
                .map(|_| {
                    let pairs: Vec<(Col, BigInt)> = (0..rng.gen_range(1..5))
                        .map(|_| (rng.gen_range(0..6u32), BigInt::from(rng.gen_range(-3i64..=3))))
                        .collect();
                    SparseInt::from_pairs(pairs)
                })
                .collect();
            let mut fwd = Eliminator::new();
            for r in rows.iter() {
                fwd.insert(r.clone());
            }
            let mut rev = Eliminator::new();
            for r in rows.iter().rev() {
                rev.insert(r.clone());
            }
            prop_assert_eq!(fwd.rank(), rev.rank());
            prop_assert_eq!(fwd.normal_forms(), rev.normal_forms());
            for r in rows {
                prop_assert!(fwd.contains(r));
            }
        }
    }
}
