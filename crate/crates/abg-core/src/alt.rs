//! Graded components of the free alternative algebra A(D): the free magma
//! algebra modulo the T-ideal generated by the linearized alternative laws
//!
//!   T1(a,b,c) = (a,b,c) + (b,a,c)      T2(a,b,c) = (a,b,c) + (a,c,b)
//!
//! with (a,b,c) = (ab)c - a(bc). In characteristic zero the multilinear
//! monomial instances of T1 and T2 span the generator slice, and the degree-n
//! component of the T-ideal is Gen_n plus the one-sided monomial products of
//! lower-degree components: any product of two relation elements is already a
//! monomial combination of such one-sided products, so the recursion
//! R_n = Gen_n + sum_{d<n} (M_{n-d}*R_d + R_d*M_{n-d}) is exhaustive.
//!
//! Relation rows are homogeneous in the letter-count vector, so elimination
//! runs independently per multidegree block; pivots are the canonically
//! largest monomials and the surviving basis the canonically smallest.

use crate::cache;
use crate::error::AbgError;
use crate::linalg::{Col, Eliminator, SparseInt};
use crate::magma::{self, Monomial};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

pub const DEFAULT_MONOMIAL_CAP: u64 = 200_000;

#[derive(Clone, Debug)]
pub struct AlgebraConfig {
    /// Refuse to enumerate a magma component with more monomials than this.
    pub monomial_cap: u64,
    /// Directory for component cache files; None disables the disk cache.
    pub cache_dir: Option<PathBuf>,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig { monomial_cap: DEFAULT_MONOMIAL_CAP, cache_dir: None }
    }
}

/// One graded component A(D)_n: the monomial list, the surviving basis and
/// the fully back-substituted normal form of every pivot monomial.
pub struct Component {
    pub d: u32,
    pub n: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    basis_cols: Vec<Col>,
    col_basis_pos: Vec<u32>,
    nf: HashMap<Col, Vec<(u32, BigRational)>>,
}

const NO_BASIS: u32 = u32::MAX;

impl Component {
    pub fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.nf.len()
    }

    pub fn basis_monomial(&self, pos: u32) -> Monomial {
        self.monomials[self.basis_cols[pos as usize] as usize]
    }

    pub fn basis_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.basis_cols.iter().map(|&c| self.monomials[c as usize])
    }

    pub fn col_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    /// Normal form of a single monomial over basis positions.
    pub fn reduce_monomial(&self, m: &Monomial) -> Vec<(u32, BigRational)> {
        let col = self.index[m];
        let pos = self.col_basis_pos[col as usize];
        if pos != NO_BASIS {
            return vec![(pos, BigRational::one())];
        }
        self.nf[&col].clone()
    }

    /// Pivot monomials with their normal forms, ascending by pivot column.
    pub(crate) fn relation_rows_for_cache(&self) -> Vec<(Monomial, Vec<(u32, BigRational)>)> {
        let mut cols: Vec<&Col> = self.nf.keys().collect();
        cols.sort_unstable();
        cols.into_iter()
            .map(|c| (self.monomials[*c as usize], self.nf[c].clone()))
            .collect()
    }

    /// The relation rows in monomial form, denominators cleared: for every
    /// pivot p the vector p - nf(p), spanning the degree-n T-ideal slice.
    pub fn relation_rows(&self) -> Vec<Vec<(Monomial, BigInt)>> {
        let mut out = Vec::with_capacity(self.nf.len());
        for (&piv, form) in &self.nf {
            let mut l = BigInt::one();
            for (_, v) in form {
                l = num_integer::lcm(l, v.denom().clone());
            }
            let mut row = Vec::with_capacity(form.len() + 1);
            row.push((self.monomials[piv as usize], l.clone()));
            let lq = BigRational::from(l);
            for (pos, v) in form {
                let m = self.monomials[self.basis_cols[*pos as usize] as usize];
                row.push((m, -(v * &lq).to_integer()));
            }
            out.push(row);
        }
        out
    }
}

/// Element of one graded component, in coordinates over the component basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement {
    pub degree: u32,
    /// (basis position, coefficient), ascending positions, no zeros.
    pub coords: Vec<(u32, BigRational)>,
}

impl AlgElement {
    pub fn zero(degree: u32) -> AlgElement {
        AlgElement { degree, coords: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn basis(degree: u32, pos: u32) -> AlgElement {
        AlgElement { degree, coords: vec![(pos, BigRational::one())] }
    }

    pub fn from_coords(degree: u32, pairs: Vec<(u32, BigRational)>) -> AlgElement {
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (p, v) in pairs {
            *acc.entry(p).or_insert_with(BigRational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        AlgElement { degree, coords: acc.into_iter().collect() }
    }

    pub fn add(&self, rhs: &AlgElement) -> AlgElement {
        assert_eq!(self.degree, rhs.degree);
        let mut pairs = self.coords.clone();
        pairs.extend(rhs.coords.iter().cloned());
        AlgElement::from_coords(self.degree, pairs)
    }

    pub fn sub(&self, rhs: &AlgElement) -> AlgElement {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> AlgElement {
        if c.is_zero() {
            return AlgElement::zero(self.degree);
        }
        AlgElement {
            degree: self.degree,
            coords: self.coords.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }

    /// Human-readable form over the component's basis monomials.
    pub fn render(&self, comp: &Component, d: u32) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (pos, v) in &self.coords {
            let m = comp.basis_monomial(*pos).render(d);
            if v.is_one() {
                parts.push(m);
            } else {
                parts.push(format!("{}*{}", v, m));
            }
        }
        parts.join(" + ")
    }
}

/// The free alternative algebra on d generators, components built on demand
/// and cached in memory and (optionally) on disk.
pub struct Algebra {
    d: u32,
    cfg: AlgebraConfig,
    components: RwLock<BTreeMap<u32, Arc<Component>>>,
}

impl Algebra {
    pub fn new(d: u32, cfg: AlgebraConfig) -> Algebra {
        assert!(d >= 1, "need at least one generator");
        Algebra { d, cfg, components: RwLock::new(BTreeMap::new()) }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.cfg
    }

    pub fn component(&self, n: u32) -> Result<Arc<Component>> {
        assert!(n >= 1);
        if let Some(c) = self.components.read().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let size = magma::component_size(self.d, n);
        if size > self.cfg.monomial_cap as u128 {
            return Err(AbgError::MagmaCap { d: self.d, n, size, cap: self.cfg.monomial_cap });
        }
        let mut lower = Vec::with_capacity(n as usize - 1);
        for k in 1..n {
            lower.push(self.component(k)?);
        }
        let comp = match self.try_load(n) {
            Some(c) => c,
            None => {
                let c = build_component(self.d, n, &lower);
                if let Some(dir) = &self.cfg.cache_dir {
                    // best effort: a failed write never fails the computation
                    let _ = cache::save_component(dir, &c);
                }
                c
            }
        };
        let arc = Arc::new(comp);
        self.components.write().unwrap().insert(n, arc.clone());
        Ok(arc)
    }

    fn try_load(&self, n: u32) -> Option<Component> {
        let dir = self.cfg.cache_dir.as_ref()?;
        match cache::load_component(dir, self.d, n) {
            Ok(Some(c)) => Some(c),
            Ok(None) => None,
            Err(_) => None, // unusable file: rebuild and overwrite
        }
    }

    pub fn dim(&self, n: u32) -> Result<usize> {
        Ok(self.component(n)?.dim())
    }

    /// x_{g+1} as an element (degree-1 monomials are all basis).
    pub fn generator_element(&self, g: u32) -> Result<AlgElement> {
        if g >= self.d {
            return Err(AbgError::GeneratorRange { index: g, d: self.d });
        }
        Ok(AlgElement::basis(1, g))
    }

    /// Normal form of a formal combination of degree-n monomials.
    pub fn reduce(&self, n: u32, raw: &[(Monomial, BigRational)]) -> Result<AlgElement> {
        let comp = self.component(n)?;
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (m, c) in raw {
            assert_eq!(m.degree(), n);
            for (pos, v) in comp.reduce_monomial(m) {
                *acc.entry(pos).or_insert_with(BigRational::zero) += v * c;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(AlgElement { degree: n, coords: acc.into_iter().collect() })
    }

    pub fn multiply(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        let n = a.degree + b.degree;
        let ca = self.component(a.degree)?;
        let cb = self.component(b.degree)?;
        let mut raw: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (i, vi) in &a.coords {
            let mi = ca.basis_monomial(*i);
            for (j, vj) in &b.coords {
                let m = mi.product(&cb.basis_monomial(*j), self.d);
                *raw.entry(m).or_insert_with(BigRational::zero) += vi * vj;
            }
        }
        let raw: Vec<_> = raw.into_iter().collect();
        self.reduce(n, &raw)
    }

    pub fn commutator(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// (a,b,c) = (ab)c - a(bc).
    pub fn associator(&self, a: &AlgElement, b: &AlgElement, c: &AlgElement) -> Result<AlgElement> {
        let left = self.multiply(&self.multiply(a, b)?, c)?;
        let right = self.multiply(a, &self.multiply(b, c)?)?;
        Ok(left.sub(&right))
    }
}

/// T1 and T2 instances on a monomial triple, as raw monomial rows.
fn t1_row(a: &Monomial, b: &Monomial, c: &Monomial, d: u32) -> Vec<(Monomial, BigInt)> {
    let assoc = |x: &Monomial, y: &Monomial, z: &Monomial| {
        [(x.product(y, d).product(z, d), BigInt::one()), (x.product(&y.product(z, d), d), -BigInt::one())]
    };
    let mut row = Vec::with_capacity(4);
    row.extend(assoc(a, b, c));
    row.extend(assoc(b, a, c));
    row
}

fn t2_row(a: &Monomial, b: &Monomial, c: &Monomial, d: u32) -> Vec<(Monomial, BigInt)> {
    let assoc = |x: &Monomial, y: &Monomial, z: &Monomial| {
        [(x.product(y, d).product(z, d), BigInt::one()), (x.product(&y.product(z, d), d), -BigInt::one())]
    };
    let mut row = Vec::with_capacity(4);
    row.extend(assoc(a, b, c));
    row.extend(assoc(a, c, b));
    row
}

fn multidegree_of_row(row: &[(Monomial, BigInt)], d: u32) -> Vec<u32> {
    row[0].0.multidegree(d)
}

fn build_component(d: u32, n: u32, lower: &[Arc<Component>]) -> Component {
    let monomials = magma::enumerate(d, n);
    let index: HashMap<Monomial, u32> =
        monomials.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();

    // gather relation rows grouped by multidegree block
    let mut blocks: BTreeMap<Vec<u32>, Vec<SparseInt>> = BTreeMap::new();
    let push_row = |blocks: &mut BTreeMap<Vec<u32>, Vec<SparseInt>>,
                        row: Vec<(Monomial, BigInt)>| {
        let key = multidegree_of_row(&row, d);
        let sparse = SparseInt::from_pairs(row.iter().map(|(m, v)| (index[m], v.clone())).collect());
        if !sparse.is_zero() {
            blocks.entry(key).or_default().push(sparse);
        }
    };

    // generator slice: all monomial instances of T1 and T2 (T1 is symmetric in
    // its first two slots and T2 in its last two, so half can be skipped)
    for d1 in 1..=n.saturating_sub(2) {
        for d2 in 1..=(n - d1 - 1) {
            let d3 = n - d1 - d2;
            let m1 = magma::enumerate(d, d1);
            let m2 = magma::enumerate(d, d2);
            let m3 = magma::enumerate(d, d3);
            for a in &m1 {
                for b in &m2 {
                    for c in &m3 {
                        if d1 != d2 || a <= b {
                            push_row(&mut blocks, t1_row(a, b, c, d));
                        }
                        if d2 != d3 || b <= c {
                            push_row(&mut blocks, t2_row(a, b, c, d));
                        }
                    }
                }
            }
        }
    }

    // ideal closure: one-sided monomial products of lower-degree relations
    for comp in lower {
        let dp = comp.n;
        if dp < 2 || comp.relation_rank() == 0 {
            continue;
        }
        let cof = magma::enumerate(d, n - dp);
        for rel in comp.relation_rows() {
            for m in &cof {
                let left: Vec<_> = rel.iter().map(|(t, v)| (m.product(t, d), v.clone())).collect();
                let right: Vec<_> = rel.iter().map(|(t, v)| (t.product(m, d), v.clone())).collect();
                push_row(&mut blocks, left);
                push_row(&mut blocks, right);
            }
        }
    }

    // eliminate each block independently and in parallel; blocks have disjoint
    // column support, so pivot sets union cleanly
    let block_list: Vec<(Vec<u32>, Vec<SparseInt>)> = blocks.into_iter().collect();
    let results: Vec<BTreeMap<Col, Vec<(Col, BigRational)>>> = block_list
        .into_par_iter()
        .map(|(_, rows)| {
            let mut elim = Eliminator::new();
            for r in rows {
                elim.insert(r);
            }
            elim.normal_forms()
        })
        .collect();

    let mut pivot_nf: BTreeMap<Col, Vec<(Col, BigRational)>> = BTreeMap::new();
    for r in results {
        pivot_nf.extend(r);
    }

    let mut basis_cols = Vec::with_capacity(monomials.len() - pivot_nf.len());
    let mut col_basis_pos = vec![NO_BASIS; monomials.len()];
    for col in 0..monomials.len() as u32 {
        if !pivot_nf.contains_key(&col) {
            col_basis_pos[col as usize] = basis_cols.len() as u32;
            basis_cols.push(col);
        }
    }
    let nf: HashMap<Col, Vec<(u32, BigRational)>> = pivot_nf
        .into_iter()
        .map(|(p, form)| {
            let converted: Vec<(u32, BigRational)> = form
                .into_iter()
                .map(|(c, v)| {
                    let pos = col_basis_pos[c as usize];
                    debug_assert_ne!(pos, NO_BASIS);
                    (pos, v)
                })
                .collect();
            (p, converted)
        })
        .collect();

    Component { d, n, monomials, index, basis_cols, col_basis_pos, nf }
}

pub(crate) fn component_from_parts(
    d: u32,
    n: u32,
    basis: Vec<Monomial>,
    rows: Vec<(Monomial, Vec<(u32, BigRational)>)>,
) -> Result<Component> {
    let monomials = magma::enumerate(d, n);
    let index: HashMap<Monomial, u32> =
        monomials.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    if basis.len() + rows.len() != monomials.len() {
        return Err(AbgError::Cache("basis/pivot split does not cover the component".into()));
    }
    let mut col_basis_pos = vec![NO_BASIS; monomials.len()];
    let mut basis_cols = Vec::with_capacity(basis.len());
    for (pos, m) in basis.iter().enumerate() {
        let col = *index
            .get(m)
            .ok_or_else(|| AbgError::Cache(format!("basis monomial {m:?} not in component")))?;
        if col_basis_pos[col as usize] != NO_BASIS {
            return Err(AbgError::Cache("duplicate basis monomial".into()));
        }
        col_basis_pos[col as usize] = pos as u32;
        basis_cols.push(col);
    }
    let mut sorted = basis_cols.clone();
    sorted.sort_unstable();
    if sorted != basis_cols {
        return Err(AbgError::Cache("basis monomials not in canonical order".into()));
    }
    let mut nf = HashMap::with_capacity(rows.len());
    for (m, form) in rows {
        let col = *index
            .get(&m)
            .ok_or_else(|| AbgError::Cache(format!("pivot monomial {m:?} not in component")))?;
        if col_basis_pos[col as usize] != NO_BASIS {
            return Err(AbgError::Cache("pivot listed as basis".into()));
        }
        for (pos, _) in &form {
            if *pos as usize >= basis_cols.len() {
                return Err(AbgError::Cache("normal form position out of range".into()));
            }
        }
        nf.insert(col, form);
    }
    Ok(Component { d, n, monomials, index, basis_cols, col_basis_pos, nf })
}
