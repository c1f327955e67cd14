//! The graded Lie algebra B(A) + sl3 tensor A attached to an alternative
//! algebra A, with a canonical basis per degree, memoized structure
//! constants, the sl3 action, and the highest-weight-space product that
//! recovers multiplication in A from brackets.
//!
//! Bracket, with x, y traceless 3x3 and a, b in A:
//!   [x(x)a, y(x)b] = tr(xy)/3 <a,b>  +  [x,y](x)(ab+ba)/2  +  (x*y)(x)(ab-ba)/2
//! where x*y = xy + yx - (2/3)tr(xy) I, <a,b> is the class of a^b in B(A),
//! and <a,b> acts on A through the inner derivation D_{a,b}.

use crate::alt::{AlgElement, Algebra};
use crate::deriv::{build_b_space, inner_derivation_apply, random_degrees, BSpace, IdentityReport};
use crate::sl3;
use crate::Result;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Position within one graded piece: a skew-pair class or an sl3 basis
/// matrix tensored with an algebra basis monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Slot {
    B(u32),
    T(u8, u32),
}

/// Basis vector of the graded Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AbgKey {
    pub degree: u32,
    pub slot: Slot,
}

/// Homogeneous element, coordinates sorted by slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbgElement {
    pub degree: u32,
    pub coords: Vec<(Slot, BigRational)>,
}

impl AbgElement {
    pub fn zero(degree: u32) -> AbgElement {
        AbgElement { degree, coords: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, rhs: &AbgElement) -> AbgElement {
        assert_eq!(self.degree, rhs.degree);
        let mut acc: BTreeMap<Slot, BigRational> = BTreeMap::new();
        for (s, v) in self.coords.iter().chain(&rhs.coords) {
            *acc.entry(*s).or_insert_with(BigRational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        AbgElement { degree: self.degree, coords: acc.into_iter().collect() }
    }

    pub fn sub(&self, rhs: &AbgElement) -> AbgElement {
        self.add(&rhs.scale(&-BigRational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &BigRational) -> AbgElement {
        if c.is_zero() {
            return AbgElement::zero(self.degree);
        }
        AbgElement {
            degree: self.degree,
            coords: self.coords.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    /// x(x)a for a single sl3 basis index.
    pub fn tensor(s: usize, a: &AlgElement) -> AbgElement {
        AbgElement {
            degree: a.degree,
            coords: a.coords.iter().map(|(i, c)| (Slot::T(s as u8, *i), c.clone())).collect(),
        }
    }
}

/// The Lie algebra with lazily built skew spaces and a bracket memo keyed by
/// ordered basis pairs.
pub struct AbgAlgebra {
    alg: Arc<Algebra>,
    bspaces: RwLock<BTreeMap<u32, Arc<BSpace>>>,
    brackets: RwLock<HashMap<(AbgKey, AbgKey), Arc<Vec<(AbgKey, BigRational)>>>>,
}

impl AbgAlgebra {
    pub fn new(alg: Arc<Algebra>) -> AbgAlgebra {
        AbgAlgebra {
            alg,
            bspaces: RwLock::new(BTreeMap::new()),
            brackets: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn b_space(&self, n: u32) -> Result<Arc<BSpace>> {
        if let Some(b) = self.bspaces.read().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let built = Arc::new(build_b_space(&self.alg, n)?);
        let mut guard = self.bspaces.write().unwrap();
        Ok(guard.entry(n).or_insert(built).clone())
    }

    pub fn dim(&self, n: u32) -> Result<usize> {
        Ok(sl3::DIM * self.alg.dim(n)? + self.b_space(n)?.dim())
    }

    /// Canonical basis of the degree-n piece: skew-pair classes first, then
    /// matrix-tensor slots ordered by matrix index and monomial position.
    pub fn basis_keys(&self, n: u32) -> Result<Vec<AbgKey>> {
        let bdim = self.b_space(n)?.dim() as u32;
        let adim = self.alg.dim(n)? as u32;
        let mut keys = Vec::with_capacity((bdim + 8 * adim) as usize);
        for g in 0..bdim {
            keys.push(AbgKey { degree: n, slot: Slot::B(g) });
        }
        for s in 0..sl3::DIM as u8 {
            for i in 0..adim {
                keys.push(AbgKey { degree: n, slot: Slot::T(s, i) });
            }
        }
        Ok(keys)
    }

    /// Weight under the Cartan of the acting sl3, in fundamental-weight
    /// coordinates; skew-pair classes are invariant.
    pub fn weight_of(key: &AbgKey) -> (i64, i64) {
        match key.slot {
            Slot::B(_) => (0, 0),
            Slot::T(s, _) => sl3::WEIGHTS[s as usize],
        }
    }

    /// Structure constants for an ordered pair of basis keys. Callers with
    /// k1 > k2 get the negated memo entry for (k2, k1).
    pub fn bracket_keys(&self, k1: AbgKey, k2: AbgKey) -> Result<Arc<Vec<(AbgKey, BigRational)>>> {
        use std::cmp::Ordering;
        match k1.cmp(&k2) {
            Ordering::Equal => return Ok(Arc::new(Vec::new())),
            Ordering::Greater => {
                let flipped = self.bracket_keys(k2, k1)?;
                return Ok(Arc::new(flipped.iter().map(|(k, c)| (*k, -c)).collect()));
            }
            Ordering::Less => {}
        }
        if let Some(hit) = self.brackets.read().unwrap().get(&(k1, k2)) {
            return Ok(hit.clone());
        }
        let computed = Arc::new(self.compute_bracket(k1, k2)?);
        let mut guard = self.brackets.write().unwrap();
        Ok(guard.entry((k1, k2)).or_insert(computed).clone())
    }

    fn bspace_pair(&self, n: u32, g: u32) -> Result<(AlgElement, AlgElement)> {
        let b = self.b_space(n)?;
        let (p, i, q, j) = b.basis_pair(g);
        Ok((AlgElement::basis(p, i), AlgElement::basis(q, j)))
    }

    fn compute_bracket(&self, k1: AbgKey, k2: AbgKey) -> Result<Vec<(AbgKey, BigRational)>> {
        let n = k1.degree + k2.degree;
        let mut out: Vec<(AbgKey, BigRational)> = Vec::new();
        let push_b = |el: &crate::deriv::BElement, out: &mut Vec<(AbgKey, BigRational)>| {
            for (pos, c) in &el.coords {
                out.push((AbgKey { degree: n, slot: Slot::B(*pos) }, c.clone()));
            }
        };
        match (k1.slot, k2.slot) {
            (Slot::T(s, i), Slot::T(t, j)) => {
                let a = AlgElement::basis(k1.degree, i);
                let b = AlgElement::basis(k2.degree, j);
                let x = &sl3::basis()[s as usize];
                let y = &sl3::basis()[t as usize];
                let xy = x.mul(y);
                let tr = xy.trace();
                let ab = self.alg.multiply(&a, &b)?;
                let ba = self.alg.multiply(&b, &a)?;
                let half = BigRational::new(1.into(), 2.into());
                if !tr.is_zero() {
                    let third = &tr / BigRational::from_integer(3.into());
                    let wedge = self.b_space(n)?.wedge(&a, &b);
                    push_b(&wedge.scale(&third), &mut out);
                }
                let comm_coords = sl3::coords(&x.commutator(y));
                let sym = ab.add(&ba).scale(&half);
                for (u, cu) in comm_coords.iter().enumerate() {
                    if cu.is_zero() {
                        continue;
                    }
                    for (pos, v) in &sym.coords {
                        out.push((
                            AbgKey { degree: n, slot: Slot::T(u as u8, *pos) },
                            cu * v,
                        ));
                    }
                }
                let circ = x.anticommutator(y).sub(
                    &sl3::Mat3::identity()
                        .scale(&(&tr * BigRational::new(2.into(), 3.into()))),
                );
                let circ_coords = sl3::coords(&circ);
                let skew = ab.sub(&ba).scale(&half);
                for (u, cu) in circ_coords.iter().enumerate() {
                    if cu.is_zero() {
                        continue;
                    }
                    for (pos, v) in &skew.coords {
                        out.push((
                            AbgKey { degree: n, slot: Slot::T(u as u8, *pos) },
                            cu * v,
                        ));
                    }
                }
            }
            (Slot::B(g), Slot::T(t, j)) => {
                let (a, b) = self.bspace_pair(k1.degree, g)?;
                let c = AlgElement::basis(k2.degree, j);
                let img = inner_derivation_apply(&self.alg, &a, &b, &c)?;
                for (pos, v) in &img.coords {
                    out.push((AbgKey { degree: n, slot: Slot::T(t, *pos) }, v.clone()));
                }
            }
            (Slot::T(t, j), Slot::B(g)) => {
                let (a, b) = self.bspace_pair(k2.degree, g)?;
                let c = AlgElement::basis(k1.degree, j);
                let img = inner_derivation_apply(&self.alg, &a, &b, &c)?;
                for (pos, v) in &img.coords {
                    out.push((AbgKey { degree: n, slot: Slot::T(t, *pos) }, -v));
                }
            }
            (Slot::B(g1), Slot::B(g2)) => {
                let (a, b) = self.bspace_pair(k1.degree, g1)?;
                let (c, d) = self.bspace_pair(k2.degree, g2)?;
                let bs = self.b_space(n)?;
                let dc = inner_derivation_apply(&self.alg, &a, &b, &c)?;
                let dd = inner_derivation_apply(&self.alg, &a, &b, &d)?;
                let total = bs.wedge(&dc, &d).add(&bs.wedge(&c, &dd));
                push_b(&total, &mut out);
            }
        }
        // merge duplicate keys from the two tensor passes
        let mut acc: BTreeMap<AbgKey, BigRational> = BTreeMap::new();
        for (k, v) in out {
            *acc.entry(k).or_insert_with(BigRational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(acc.into_iter().collect())
    }

    /// Bilinear extension of the basis bracket.
    pub fn bracket(&self, u: &AbgElement, v: &AbgElement) -> Result<AbgElement> {
        let n = u.degree + v.degree;
        let mut acc: BTreeMap<Slot, BigRational> = BTreeMap::new();
        for (s1, c1) in &u.coords {
            let k1 = AbgKey { degree: u.degree, slot: *s1 };
            for (s2, c2) in &v.coords {
                let k2 = AbgKey { degree: v.degree, slot: *s2 };
                let scale = c1 * c2;
                for (k, c) in self.bracket_keys(k1, k2)?.iter() {
                    *acc.entry(k.slot).or_insert_with(BigRational::zero) += c * &scale;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(AbgElement { degree: n, coords: acc.into_iter().collect() })
    }

    /// Action of the degree-zero copy of sl3: s acts on x(x)a by [s,x](x)a
    /// and kills the skew-pair classes.
    pub fn sl3_action(&self, s: usize, u: &AbgElement) -> AbgElement {
        let mut acc: BTreeMap<Slot, BigRational> = BTreeMap::new();
        for (slot, c) in &u.coords {
            if let Slot::T(t, i) = slot {
                for (w, cw) in sl3::bracket_coords(s, *t as usize) {
                    *acc.entry(Slot::T(*w as u8, *i)).or_insert_with(BigRational::zero) +=
                        cw * c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        AbgElement { degree: u.degree, coords: acc.into_iter().collect() }
    }

    /// Recovers the product of A from the bracket of the e12 and e23 rows;
    /// the result lands entirely in the e13 row.
    pub fn bm_product(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        let u = AbgElement::tensor(sl3::E12, a);
        let v = AbgElement::tensor(sl3::E23, b);
        let w = self.bracket(&u, &v)?;
        let mut coords = Vec::with_capacity(w.coords.len());
        for (slot, c) in w.coords {
            match slot {
                Slot::T(s, pos) if s as usize == sl3::E13 => coords.push((pos, c)),
                other => panic!("highest-weight product leaked into {other:?}"),
            }
        }
        Ok(AlgElement { degree: a.degree + b.degree, coords })
    }

    /// Random homogeneous element with a few small integer coordinates.
    pub fn random_element<R: Rng>(&self, n: u32, rng: &mut R) -> Result<AbgElement> {
        let keys = self.basis_keys(n)?;
        let terms = rng.gen_range(1..=3.min(keys.len() as u32));
        let mut acc: BTreeMap<Slot, BigRational> = BTreeMap::new();
        for _ in 0..terms {
            let key = keys[rng.gen_range(0..keys.len())];
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3i64..=3);
            }
            *acc.entry(key.slot).or_insert_with(BigRational::zero) +=
                BigRational::from_integer(c.into());
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(AbgElement { degree: n, coords: acc.into_iter().collect() })
    }

    /// Seeded identity suites for the Lie structure:
    ///   - Jacobi identity on random homogeneous triples
    ///   - sl3 acts by derivations of the bracket
    ///   - the highest-weight-space product agrees with multiplication in A
    ///   - the associator of A alternates under swapping adjacent arguments
    pub fn identity_suites<R: Rng>(
        &self,
        max_total_degree: u32,
        trials: u32,
        rng: &mut R,
    ) -> Result<Vec<IdentityReport>> {
        let mut reports = Vec::new();

        let mut failures = 0;
        for _ in 0..trials {
            let degs = random_degrees(3, max_total_degree, rng);
            let x = self.random_element(degs[0], rng)?;
            let y = self.random_element(degs[1], rng)?;
            let z = self.random_element(degs[2], rng)?;
            let j = self
                .bracket(&self.bracket(&x, &y)?, &z)?
                .add(&self.bracket(&self.bracket(&y, &z)?, &x)?)
                .add(&self.bracket(&self.bracket(&z, &x)?, &y)?);
            if !j.is_zero() {
                failures += 1;
            }
        }
        reports.push(IdentityReport { name: "jacobi".into(), trials, failures });

        let mut failures = 0;
        for _ in 0..trials {
            let degs = random_degrees(2, max_total_degree, rng);
            let x = self.random_element(degs[0], rng)?;
            let y = self.random_element(degs[1], rng)?;
            let s = rng.gen_range(0..sl3::DIM);
            let lhs = self.sl3_action(s, &self.bracket(&x, &y)?);
            let rhs = self
                .bracket(&self.sl3_action(s, &x), &y)?
                .add(&self.bracket(&x, &self.sl3_action(s, &y))?);
            if lhs != rhs {
                failures += 1;
            }
        }
        reports.push(IdentityReport { name: "sl3-action-derivation".into(), trials, failures });

        let mut failures = 0;
        for _ in 0..trials {
            let degs = random_degrees(2, max_total_degree, rng);
            let a = crate::deriv::random_element(&self.alg, degs[0], rng)?;
            let b = crate::deriv::random_element(&self.alg, degs[1], rng)?;
            if self.bm_product(&a, &b)? != self.alg.multiply(&a, &b)? {
                failures += 1;
            }
        }
        reports.push(IdentityReport { name: "bm-product-matches-multiply".into(), trials, failures });

        let mut failures = 0;
        for _ in 0..trials {
            let degs = random_degrees(3, max_total_degree, rng);
            let a = crate::deriv::random_element(&self.alg, degs[0], rng)?;
            let b = crate::deriv::random_element(&self.alg, degs[1], rng)?;
            let c = crate::deriv::random_element(&self.alg, degs[2], rng)?;
            let abc = self.alg.associator(&a, &b, &c)?;
            let swapped_left = self.alg.associator(&b, &a, &c)?;
            let swapped_right = self.alg.associator(&a, &c, &b)?;
            if !abc.add(&swapped_left).is_zero() || !abc.add(&swapped_right).is_zero() {
                failures += 1;
            }
        }
        reports.push(IdentityReport { name: "associator-alternation".into(), trials, failures });

        Ok(reports)
    }

    /// Exhaustive Jacobi check over distinct ordered basis-key triples with
    /// bounded total degree; returns the number of triples checked.
    pub fn jacobi_exhaustive(&self, max_total_degree: u32) -> Result<u64> {
        let mut keys = Vec::new();
        for n in 1..=max_total_degree.saturating_sub(2) {
            keys.extend(self.basis_keys(n)?);
        }
        let mut checked = 0u64;
        for (i, &x) in keys.iter().enumerate() {
            for (j, &y) in keys.iter().enumerate().skip(i + 1) {
                if x.degree + y.degree + 1 > max_total_degree {
                    continue;
                }
                for &z in keys.iter().skip(j + 1) {
                    if x.degree + y.degree + z.degree > max_total_degree {
                        continue;
                    }
                    let xy = self.key_element(x);
                    let yz = self.key_element(y);
                    let zx = self.key_element(z);
                    let j1 = self.bracket(&self.bracket(&xy, &yz)?, &zx)?;
                    let j2 = self.bracket(&self.bracket(&yz, &zx)?, &xy)?;
                    let j3 = self.bracket(&self.bracket(&zx, &xy)?, &yz)?;
                    if !j1.add(&j2).add(&j3).is_zero() {
                        panic!("Jacobi failed on {x:?}, {y:?}, {z:?}");
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    fn key_element(&self, k: AbgKey) -> AbgElement {
        AbgElement {
            degree: k.degree,
            coords: vec![(k.slot, BigRational::from_integer(1.into()))],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt::AlgebraConfig;
    use rand::SeedableRng;

    fn abg(d: u32) -> AbgAlgebra {
        AbgAlgebra::new(Arc::new(Algebra::new(d, AlgebraConfig::default())))
    }

    #[test]
    fn graded_dimensions_two_generators() {
        let l = abg(2);
        assert_eq!(l.dim(1).unwrap(), 16);
        assert_eq!(l.dim(2).unwrap(), 33);
        assert_eq!(l.dim(3).unwrap(), 8 * 8 + 4);
    }

    #[test]
    fn basis_keys_are_sorted_and_complete() {
        let l = abg(2);
        let keys = l.basis_keys(2).unwrap();
        assert_eq!(keys.len(), l.dim(2).unwrap());
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys[0].slot, Slot::B(0));
        assert_eq!(keys[1].slot, Slot::T(0, 0));
    }

    #[test]
    fn bm_product_recovers_multiplication() {
        let l = abg(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let da = rng.gen_range(1..=3u32);
            let db = rng.gen_range(1..=3u32);
            let a = crate::deriv::random_element(l.algebra(), da, &mut rng).unwrap();
            let b = crate::deriv::random_element(l.algebra(), db, &mut rng).unwrap();
            assert_eq!(l.bm_product(&a, &b).unwrap(), l.algebra().multiply(&a, &b).unwrap());
        }
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let l = abg(2);
        let keys1 = l.basis_keys(1).unwrap();
        let keys2 = l.basis_keys(2).unwrap();
        for &x in &keys1 {
            for &y in &keys2 {
                let fwd = l.bracket_keys(x, y).unwrap();
                let bwd = l.bracket_keys(y, x).unwrap();
                let sum: BTreeMap<AbgKey, BigRational> = {
                    let mut m = BTreeMap::new();
                    for (k, c) in fwd.iter().chain(bwd.iter()) {
                        *m.entry(*k).or_insert_with(BigRational::zero) += c;
                    }
                    m.retain(|_, v: &mut BigRational| !v.is_zero());
                    m
                };
                assert!(sum.is_empty());
            }
        }
    }

    #[test]
    fn jacobi_holds_exhaustively_in_low_degree() {
        let l = abg(2);
        let checked = l.jacobi_exhaustive(3).unwrap();
        assert_eq!(checked, 16 * 15 * 14 / 6);
    }

    #[test]
    fn sl3_action_matches_cartan_weights() {
        let l = abg(2);
        for key in l.basis_keys(2).unwrap() {
            let el = l.key_element(key);
            let (p, q) = AbgAlgebra::weight_of(&key);
            let h1 = l.sl3_action(sl3::H1, &el);
            let h2 = l.sl3_action(sl3::H2, &el);
            let want1 = el.scale(&BigRational::from_integer((2 * p - q).into()));
            let want2 = el.scale(&BigRational::from_integer((2 * q - p).into()));
            assert_eq!(h1, want1);
            assert_eq!(h2, want2);
        }
    }

    #[test]
    fn identity_suites_pass() {
        let l = abg(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for r in l.identity_suites(4, 20, &mut rng).unwrap() {
            assert_eq!(r.failures, 0, "{}", r.name);
        }
    }

    #[test]
    fn skew_pairs_bracket_into_skew_pairs() {
        // [<a,b>, <c,d>] stays inside the invariant part
        let l = abg(2);
        let b2 = l.b_space(2).unwrap();
        assert_eq!(b2.dim(), 1);
        let k = AbgKey { degree: 2, slot: Slot::B(0) };
        let k4 = AbgKey { degree: 2, slot: Slot::B(0) };
        let val = l.bracket_keys(k, k4).unwrap();
        assert!(val.is_empty());
        // nontrivial pairing between degree 2 and degree 3 skew classes
        let b3 = l.b_space(3).unwrap();
        let mut all_zero = true;
        for g in 0..b3.dim() as u32 {
            let k3 = AbgKey { degree: 3, slot: Slot::B(g) };
            for (key, _) in l.bracket_keys(k, k3).unwrap().iter() {
                assert!(matches!(key.slot, Slot::B(_)));
                all_zero = false;
            }
        }
        assert!(!all_zero);
    }
}
