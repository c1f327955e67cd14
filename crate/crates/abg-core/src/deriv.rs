//! Inner derivations D_{a,b}(c) = [[a,b],c] + 3(a,c,b) of an alternative
//! algebra, and the skew space B(A)_n = (Lambda^2 A)_n / I(A)_n with I(A)
//! spanned by ab^c + bc^a + ca^b over homogeneous triples.
//!
//! Wedge columns pair a higher-degree factor with a lower one; the equal
//! degree block uses ordered basis pairs i < j.

use crate::alt::{AlgElement, Algebra};
use crate::linalg::{clear_denominators, Col, Eliminator};
use crate::Result;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;

/// Degree split of a wedge column range: elements of A_p wedge elements of
/// A_q, p >= q, laid out as i * dim_q + j (or the triangular part for p = q).
#[derive(Clone, Copy, Debug)]
struct Segment {
    p: u32,
    q: u32,
    dim_p: usize,
    dim_q: usize,
    offset: usize,
}

/// The degree-n component of Lambda^2 A modulo I(A), with normal forms for
/// every pivot wedge, mirroring the component layout of the algebra itself.
pub struct BSpace {
    pub n: u32,
    segments: Vec<Segment>,
    total_cols: usize,
    basis_cols: Vec<Col>,
    col_basis_pos: Vec<u32>,
    nf: std::collections::HashMap<Col, Vec<(u32, BigRational)>>,
}

const NO_BASIS: u32 = u32::MAX;

/// Element of B(A)_n over the surviving wedge basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BElement {
    pub degree: u32,
    pub coords: Vec<(u32, BigRational)>,
}

impl BElement {
    pub fn zero(degree: u32) -> BElement {
        BElement { degree, coords: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, rhs: &BElement) -> BElement {
        assert_eq!(self.degree, rhs.degree);
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (p, v) in self.coords.iter().chain(&rhs.coords) {
            *acc.entry(*p).or_insert_with(BigRational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        BElement { degree: self.degree, coords: acc.into_iter().collect() }
    }

    pub fn scale(&self, c: &BigRational) -> BElement {
        if c.is_zero() {
            return BElement::zero(self.degree);
        }
        BElement {
            degree: self.degree,
            coords: self.coords.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }
}

impl BSpace {
    pub fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    pub fn wedge_dim(&self) -> usize {
        self.total_cols
    }

    pub fn relation_rank(&self) -> usize {
        self.nf.len()
    }

    /// The wedge pair behind a basis position: (p, i, q, j) meaning
    /// (basis element i of A_p) wedge (basis element j of A_q).
    pub fn basis_pair(&self, pos: u32) -> (u32, u32, u32, u32) {
        self.col_pair(self.basis_cols[pos as usize])
    }

    fn col_pair(&self, col: Col) -> (u32, u32, u32, u32) {
        let col = col as usize;
        for seg in &self.segments {
            let size = if seg.p == seg.q {
                seg.dim_p * (seg.dim_p - 1) / 2
            } else {
                seg.dim_p * seg.dim_q
            };
            if col < seg.offset + size {
                let rel = col - seg.offset;
                if seg.p == seg.q {
                    // triangular index: pairs (i, j), i < j, ordered by i then j
                    let mut i = 0usize;
                    let mut rem = rel;
                    loop {
                        let row = seg.dim_p - 1 - i;
                        if rem < row {
                            return (seg.p, i as u32, seg.q, (i + 1 + rem) as u32);
                        }
                        rem -= row;
                        i += 1;
                    }
                }
                return (seg.p, (rel / seg.dim_q) as u32, seg.q, (rel % seg.dim_q) as u32);
            }
        }
        panic!("wedge column {col} out of range");
    }

    fn pair_col(&self, p: u32, i: u32, j: u32) -> Col {
        for seg in &self.segments {
            if seg.p == p {
                if seg.p == seg.q {
                    let (i, j) = (i as usize, j as usize);
                    debug_assert!(i < j);
                    // offset of row i in the triangular layout
                    let before = i * seg.dim_p - i * (i + 1) / 2;
                    return (seg.offset + before + (j - i - 1)) as Col;
                }
                return (seg.offset + i as usize * seg.dim_q + j as usize) as Col;
            }
        }
        panic!("no wedge segment with higher degree {p}");
    }

    /// Raw wedge of two elements as column pairs, before any reduction.
    pub fn wedge_raw(&self, u: &AlgElement, v: &AlgElement) -> Vec<(Col, BigRational)> {
        assert_eq!(u.degree + v.degree, self.n);
        let mut out: BTreeMap<Col, BigRational> = BTreeMap::new();
        for (i, ci) in &u.coords {
            for (j, cj) in &v.coords {
                let val = ci * cj;
                let (col, sign) = if u.degree > v.degree {
                    (self.pair_col(u.degree, *i, *j), 1)
                } else if u.degree < v.degree {
                    (self.pair_col(v.degree, *j, *i), -1)
                } else if i < j {
                    (self.pair_col(u.degree, *i, *j), 1)
                } else if i > j {
                    (self.pair_col(u.degree, *j, *i), -1)
                } else {
                    continue;
                };
                let e = out.entry(col).or_insert_with(BigRational::zero);
                if sign > 0 {
                    *e += val;
                } else {
                    *e -= val;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out.into_iter().collect()
    }

    /// Class of a raw wedge vector in B(A)_n.
    pub fn reduce(&self, raw: &[(Col, BigRational)]) -> BElement {
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (col, c) in raw {
            let pos = self.col_basis_pos[*col as usize];
            if pos != NO_BASIS {
                *acc.entry(pos).or_insert_with(BigRational::zero) += c;
            } else {
                for (bpos, v) in &self.nf[col] {
                    *acc.entry(*bpos).or_insert_with(BigRational::zero) += v * c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BElement { degree: self.n, coords: acc.into_iter().collect() }
    }

    /// Wedge of two algebra elements, reduced into B(A)_n.
    pub fn wedge(&self, u: &AlgElement, v: &AlgElement) -> BElement {
        self.reduce(&self.wedge_raw(u, v))
    }
}

/// Builds B(A)_n = Lambda^2(A)_n / I(A)_n by eliminating the cyclic-wedge
/// generators over all homogeneous basis triples.
pub fn build_b_space(alg: &Algebra, n: u32) -> Result<BSpace> {
    let mut segments = Vec::new();
    let mut offset = 0usize;
    if n >= 2 {
        // equal-degree block first, then strictly decreasing lower degree
        if n % 2 == 0 {
            let dim = alg.dim(n / 2)?;
            segments.push(Segment { p: n / 2, q: n / 2, dim_p: dim, dim_q: dim, offset });
            offset += dim * (dim - 1) / 2;
        }
        let mut p = n / 2 + 1;
        while p <= n - 1 {
            let q = n - p;
            let (dp, dq) = (alg.dim(p)?, alg.dim(q)?);
            segments.push(Segment { p, q, dim_p: dp, dim_q: dq, offset });
            offset += dp * dq;
            p += 1;
        }
    }
    let total_cols = offset;
    let mut proto = BSpace {
        n,
        segments,
        total_cols,
        basis_cols: Vec::new(),
        col_basis_pos: vec![NO_BASIS; total_cols],
        nf: std::collections::HashMap::new(),
    };

    let mut elim = Eliminator::new();
    for d1 in 1..=n.saturating_sub(2) {
        for d2 in 1..=(n - d1 - 1) {
            let d3 = n - d1 - d2;
            let (c1, c2, c3) = (alg.component(d1)?, alg.component(d2)?, alg.component(d3)?);
            for i in 0..c1.dim() as u32 {
                let a = AlgElement::basis(d1, i);
                for j in 0..c2.dim() as u32 {
                    let b = AlgElement::basis(d2, j);
                    let ab = alg.multiply(&a, &b)?;
                    for k in 0..c3.dim() as u32 {
                        let c = AlgElement::basis(d3, k);
                        let bc = alg.multiply(&b, &c)?;
                        let ca = alg.multiply(&c, &a)?;
                        let mut raw = proto.wedge_raw(&ab, &c);
                        raw.extend(proto.wedge_raw(&bc, &a));
                        raw.extend(proto.wedge_raw(&ca, &b));
                        elim.insert(clear_denominators(&raw));
                    }
                }
            }
        }
    }

    let nf_cols = elim.normal_forms();
    let mut basis_cols = Vec::with_capacity(total_cols - nf_cols.len());
    for col in 0..total_cols as Col {
        if !nf_cols.contains_key(&col) {
            proto.col_basis_pos[col as usize] = basis_cols.len() as u32;
            basis_cols.push(col);
        }
    }
    proto.nf = nf_cols
        .into_iter()
        .map(|(p, form)| {
            let converted =
                form.into_iter().map(|(c, v)| (proto.col_basis_pos[c as usize], v)).collect();
            (p, converted)
        })
        .collect();
    proto.basis_cols = basis_cols;
    Ok(proto)
}

/// D_{a,b}(c) = [[a,b],c] + 3(a,c,b).
pub fn inner_derivation_apply(
    alg: &Algebra,
    a: &AlgElement,
    b: &AlgElement,
    c: &AlgElement,
) -> Result<AlgElement> {
    let lab = alg.commutator(a, b)?;
    let first = alg.commutator(&lab, c)?;
    let second = alg.associator(a, c, b)?;
    Ok(first.add(&second.scale(&BigRational::from_integer(3.into()))))
}

/// Dimension of the degree-n slice of inner derivations: the rank of the
/// generator-image tuples (D_{a,b}(x_1), ..., D_{a,b}(x_D)) over basis pairs
/// with deg a + deg b = n. A degree-n derivation is determined by its values
/// on generators, which live in A_{n+1}.
pub fn dim_inner(alg: &Algebra, n: u32) -> Result<usize> {
    let target = alg.component(n + 1)?;
    let width = target.dim() as u32;
    let gens: Vec<AlgElement> =
        (0..alg.d()).map(|g| alg.generator_element(g)).collect::<Result<_>>()?;
    let mut elim = Eliminator::new();
    for p in 1..n {
        let q = n - p;
        if p > q {
            continue;
        }
        let (cp, cq) = (alg.component(p)?, alg.component(q)?);
        for i in 0..cp.dim() as u32 {
            let a = AlgElement::basis(p, i);
            let j_start = if p == q { i + 1 } else { 0 };
            for j in j_start..cq.dim() as u32 {
                let b = AlgElement::basis(q, j);
                let mut tuple: Vec<(Col, BigRational)> = Vec::new();
                for (g, x) in gens.iter().enumerate() {
                    let img = inner_derivation_apply(alg, &a, &b, x)?;
                    tuple.extend(
                        img.coords.iter().map(|(pos, v)| (g as u32 * width + pos, v.clone())),
                    );
                }
                elim.insert(clear_denominators(&tuple));
            }
        }
    }
    Ok(elim.rank())
}

/// One identity suite outcome.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub trials: u32,
    pub failures: u32,
}

/// Random element with a few small-integer coordinates.
pub fn random_element<R: Rng>(alg: &Algebra, n: u32, rng: &mut R) -> Result<AlgElement> {
    let dim = alg.dim(n)? as u32;
    let terms = rng.gen_range(1..=3.min(dim));
    let mut pairs = Vec::new();
    for _ in 0..terms {
        let pos = rng.gen_range(0..dim);
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3i64..=3);
        }
        pairs.push((pos, BigRational::from_integer(c.into())));
    }
    Ok(AlgElement::from_coords(n, pairs))
}

pub(crate) fn random_degrees<R: Rng>(slots: u32, total_max: u32, rng: &mut R) -> Vec<u32> {
    // uniform over compositions with all parts >= 1 and sum <= total_max;
    // a bound below the slot count is raised to it, the only achievable sum
    let total_max = total_max.max(slots);
    loop {
        let degs: Vec<u32> = (0..slots).map(|_| rng.gen_range(1..=total_max)).collect();
        if degs.iter().sum::<u32>() <= total_max {
            return degs;
        }
    }
}

/// Seeded identity suites for the derivation operators:
///   1. the algebra is alternative (left, right, flexible laws)
///   2. D_{a,b} is a derivation
///   3. D_{a,b} + D_{b,a} = 0
///   4. D_{ab,c} + D_{bc,a} + D_{ca,b} = 0
///   5. [D_{u,v}, D_{a,b}] = D_{D_{u,v}(a),b} + D_{a,D_{u,v}(b)}
/// Every identity is evaluated on random elements of random degrees with the
/// stated total-degree bound.
pub fn identity_suites<R: Rng>(
    alg: &Algebra,
    max_total_degree: u32,
    trials: u32,
    rng: &mut R,
) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();

    let run = |name: &str,
                   slots: u32,
                   slack: u32,
                   rng: &mut R,
                   f: &mut dyn FnMut(&[AlgElement], &mut R) -> Result<bool>|
     -> Result<IdentityReport> {
        let mut failures = 0;
        for _ in 0..trials {
            let degs = random_degrees(slots, max_total_degree - slack, rng);
            let els: Vec<AlgElement> = degs
                .iter()
                .map(|&dg| random_element(alg, dg, rng))
                .collect::<Result<_>>()?;
            if !f(&els, rng)? {
                failures += 1;
            }
        }
        Ok(IdentityReport { name: name.into(), trials, failures })
    };

    reports.push(run("alternative-left", 2, 1, rng, &mut |e, _| {
        // (a, a, b) = 0 needs 2*deg(a) + deg(b) within the bound
        if 2 * e[0].degree + e[1].degree > max_total_degree {
            return Ok(true);
        }
        Ok(alg.associator(&e[0], &e[0], &e[1])?.is_zero())
    })?);
    reports.push(run("alternative-right", 2, 1, rng, &mut |e, _| {
        if e[0].degree + 2 * e[1].degree > max_total_degree {
            return Ok(true);
        }
        Ok(alg.associator(&e[0], &e[1], &e[1])?.is_zero())
    })?);
    reports.push(run("flexible", 2, 1, rng, &mut |e, _| {
        if 2 * e[0].degree + e[1].degree > max_total_degree {
            return Ok(true);
        }
        Ok(alg.associator(&e[0], &e[1], &e[0])?.is_zero())
    })?);
    reports.push(run("derivation-property", 4, 0, rng, &mut |e, _| {
        let (a, b, c, d) = (&e[0], &e[1], &e[2], &e[3]);
        let lhs = inner_derivation_apply(alg, a, b, &alg.multiply(c, d)?)?;
        let rhs = alg
            .multiply(&inner_derivation_apply(alg, a, b, c)?, d)?
            .add(&alg.multiply(c, &inner_derivation_apply(alg, a, b, d)?)?);
        Ok(lhs == rhs)
    })?);
    reports.push(run("skew-in-a-b", 3, 0, rng, &mut |e, _| {
        let lhs = inner_derivation_apply(alg, &e[0], &e[1], &e[2])?;
        let rhs = inner_derivation_apply(alg, &e[1], &e[0], &e[2])?;
        Ok(lhs.add(&rhs).is_zero())
    })?);
    reports.push(run("cyclic-products", 4, 0, rng, &mut |e, _| {
        let (a, b, c, x) = (&e[0], &e[1], &e[2], &e[3]);
        let t1 = inner_derivation_apply(alg, &alg.multiply(a, b)?, c, x)?;
        let t2 = inner_derivation_apply(alg, &alg.multiply(b, c)?, a, x)?;
        let t3 = inner_derivation_apply(alg, &alg.multiply(c, a)?, b, x)?;
        Ok(t1.add(&t2).add(&t3).is_zero())
    })?);
    reports.push(run("commutator-of-derivations", 5, 0, rng, &mut |e, _| {
        let (u, v, a, b, c) = (&e[0], &e[1], &e[2], &e[3], &e[4]);
        let inner_ab = |x: &AlgElement| inner_derivation_apply(alg, a, b, x);
        let inner_uv = |x: &AlgElement| inner_derivation_apply(alg, u, v, x);
        let lhs = inner_uv(&inner_ab(c)?)?.sub(&inner_ab(&inner_uv(c)?)?);
        let rhs = inner_derivation_apply(alg, &inner_uv(a)?, b, c)?
            .add(&inner_derivation_apply(alg, a, &inner_uv(b)?, c)?);
        Ok(lhs == rhs)
    })?);
    Ok(reports)
}
