//! The sl3 character ring in root coordinates and truncated power series
//! over it: Weyl-formula characters, isotypic decomposition, generalized
//! binomial factors (1 - e^w z^m)^c, the six-root infinite product encoding
//! graded dimensions, and the degree-by-degree solver that pins the trivial
//! and adjoint isotypic rows of that product.
//!
//! A weight (p, q) means p*alpha1 + q*alpha2; it is dominant when both
//! Cartan pairings 2p - q and 2q - p are nonnegative, and L(p, q) then has
//! dimension (m1+1)(m2+1)(m1+m2+2)/2 with (m1, m2) = (2p-q, 2q-p).

use crate::error::AbgError;
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

pub type Weight = (i64, i64);

/// The six roots of sl3 in root coordinates.
pub const ROOTS: [Weight; 6] = [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)];

/// Element of Z[t1^{+-1}, t2^{+-1}]: finitely many weights with integer
/// coefficients, stored in ascending lex order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymLaurent(pub BTreeMap<Weight, BigInt>);

impl SymLaurent {
    pub fn zero() -> SymLaurent {
        SymLaurent(BTreeMap::new())
    }

    pub fn one() -> SymLaurent {
        SymLaurent::term((0, 0), BigInt::one())
    }

    pub fn term(w: Weight, c: BigInt) -> SymLaurent {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(w, c);
        }
        SymLaurent(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, w: Weight, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(w).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add(&self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = self.clone();
        for (w, c) in &rhs.0 {
            out.add_term(*w, c);
        }
        out
    }

    pub fn sub(&self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = self.clone();
        for (w, c) in &rhs.0 {
            out.add_term(*w, &-c);
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> SymLaurent {
        if c.is_zero() {
            return SymLaurent::zero();
        }
        SymLaurent(self.0.iter().map(|(w, v)| (*w, v * c)).collect())
    }

    pub fn mul(&self, rhs: &SymLaurent) -> SymLaurent {
        let mut out = SymLaurent::zero();
        for ((p1, q1), c1) in &self.0 {
            for ((p2, q2), c2) in &rhs.0 {
                out.add_term((p1 + p2, q1 + q2), &(c1 * c2));
            }
        }
        out
    }

    pub fn coeff(&self, w: Weight) -> BigInt {
        self.0.get(&w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Value at t1 = t2 = 1: the dimension of the virtual module.
    pub fn dim(&self) -> BigInt {
        self.0.values().sum()
    }

    fn lex_leading(&self) -> Option<(Weight, &BigInt)> {
        self.0.iter().next_back().map(|(w, c)| (*w, c))
    }

    /// Highest term in the dominance-friendly order (height, then p).
    fn height_leading(&self) -> Option<(Weight, BigInt)> {
        self.0
            .iter()
            .max_by_key(|((p, q), _)| (p + q, *p))
            .map(|(w, c)| (*w, c.clone()))
    }
}

type WeylElt = ([[i64; 2]; 2], i64);

fn mat_apply(m: &[[i64; 2]; 2], w: Weight) -> Weight {
    (m[0][0] * w.0 + m[0][1] * w.1, m[1][0] * w.0 + m[1][1] * w.1)
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// The six Weyl elements as matrices on root coordinates, with signs.
static WEYL: LazyLock<Vec<WeylElt>> = LazyLock::new(|| {
    let s1 = [[-1, 1], [0, 1]];
    let s2 = [[1, 0], [1, -1]];
    let id = [[1, 0], [0, 1]];
    let mut seen: BTreeMap<[[i64; 2]; 2], i64> = BTreeMap::new();
    seen.insert(id, 1);
    let mut frontier = vec![(id, 1i64)];
    while let Some((m, sg)) = frontier.pop() {
        for gen in [s1, s2] {
            let next = mat_mul(&gen, &m);
            if !seen.contains_key(&next) {
                seen.insert(next, -sg);
                frontier.push((next, -sg));
            }
        }
    }
    let out: Vec<WeylElt> = seen.into_iter().collect();
    assert_eq!(out.len(), 6);
    out
});

const RHO: Weight = (1, 1);

/// Fundamental-weight labels (m1, m2) of p*alpha1 + q*alpha2.
pub fn fundamental(w: Weight) -> (i64, i64) {
    (2 * w.0 - w.1, 2 * w.1 - w.0)
}

pub fn is_dominant(w: Weight) -> bool {
    let (m1, m2) = fundamental(w);
    m1 >= 0 && m2 >= 0
}

/// Dimension of L(p*alpha1 + q*alpha2) by the Weyl dimension formula.
pub fn weyl_dim(w: Weight) -> i64 {
    let (m1, m2) = fundamental(w);
    assert!(m1 >= 0 && m2 >= 0, "({}, {}) is not dominant", w.0, w.1);
    (m1 + 1) * (m2 + 1) * (m1 + m2 + 2) / 2
}

fn alternating_sum(shift: Weight) -> SymLaurent {
    let mut out = SymLaurent::zero();
    for (m, sg) in WEYL.iter() {
        out.add_term(mat_apply(m, shift), &BigInt::from(*sg));
    }
    out
}

fn divide_exact(mut num: SymLaurent, den: &SymLaurent) -> SymLaurent {
    let (dw, dc) = den.lex_leading().expect("division by zero");
    let dc = dc.clone();
    let mut quot = SymLaurent::zero();
    while let Some((nw, nc)) = num.lex_leading() {
        let (q, r) = nc.div_rem(&dc);
        assert!(r.is_zero(), "non-exact character division");
        let qw = (nw.0 - dw.0, nw.1 - dw.1);
        let t = SymLaurent::term(qw, q);
        num = num.sub(&t.mul(den));
        quot = quot.add(&t);
    }
    quot
}

static CH_MEMO: LazyLock<Mutex<HashMap<Weight, Arc<SymLaurent>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Character of the simple module with highest weight p*alpha1 + q*alpha2,
/// by the Weyl character formula with exact Laurent division.
pub fn ch_irr(w: Weight) -> Arc<SymLaurent> {
    assert!(is_dominant(w), "({}, {}) is not dominant", w.0, w.1);
    if let Some(hit) = CH_MEMO.lock().unwrap().get(&w) {
        return hit.clone();
    }
    let num = alternating_sum((w.0 + RHO.0, w.1 + RHO.1));
    let den = alternating_sum(RHO);
    let ch = divide_exact(num, &den);
    assert_eq!(ch.dim(), BigInt::from(weyl_dim(w)));
    let arc = Arc::new(ch);
    CH_MEMO.lock().unwrap().entry(w).or_insert(arc).clone()
}

/// Writes a Weyl-invariant Laurent polynomial as an integer combination of
/// irreducible characters, sorted by (height, p) descending. Fails with the
/// offending weight when a leading term is not dominant.
pub fn decompose(ch: &SymLaurent) -> Result<Vec<(Weight, BigInt)>> {
    let mut rest = ch.clone();
    let mut out: Vec<(Weight, BigInt)> = Vec::new();
    while let Some((w, c)) = rest.height_leading() {
        if !is_dominant(w) {
            return Err(AbgError::NotACharacter(w.0, w.1));
        }
        rest = rest.sub(&ch_irr(w).scale(&c));
        out.push((w, c));
    }
    out.sort_by_key(|((p, q), _)| (-(p + q), -p, -q));
    Ok(out)
}

/// Truncated power series in z with character-ring coefficients; coeffs[k]
/// is the z^k coefficient and the series is cut at z^order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSeries {
    pub order: usize,
    pub coeffs: Vec<SymLaurent>,
}

impl CharSeries {
    pub fn one(order: usize) -> CharSeries {
        assert!(order >= 1);
        let mut coeffs = vec![SymLaurent::zero(); order];
        coeffs[0] = SymLaurent::one();
        CharSeries { order, coeffs }
    }

    pub fn mul(&self, rhs: &CharSeries) -> CharSeries {
        assert_eq!(self.order, rhs.order);
        let mut coeffs = vec![SymLaurent::zero(); self.order];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= self.order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        CharSeries { order: self.order, coeffs }
    }
}

fn div_exact_int(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "non-exact integer division");
    q
}

/// (1 - e^w z^m)^c for any integer exponent c, truncated at z^order; the
/// generalized binomial coefficients are computed stepwise and stay exact.
pub fn binom_factor(w: Weight, m: usize, c: &BigInt, order: usize) -> CharSeries {
    assert!(m >= 1);
    let mut out = CharSeries::one(order);
    let mut coef = BigInt::one();
    let mut k = 0usize;
    loop {
        k += 1;
        if k * m >= order {
            break;
        }
        // C(c, k) = C(c, k-1) * (c - k + 1) / k
        coef = div_exact_int(&(&coef * (c - BigInt::from(k as i64 - 1))), &BigInt::from(k));
        if coef.is_zero() {
            break;
        }
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.coeffs[k * m] =
            SymLaurent::term((w.0 * k as i64, w.1 * k as i64), &coef * sign);
    }
    out
}

/// Lambda-operation route: the product over the weights of a character chi,
/// each weight mu contributing (1 - e^mu z^m)^{mult_mu(chi)}.
pub fn lambda_op(chi: &SymLaurent, m: usize, order: usize) -> CharSeries {
    let mut out = CharSeries::one(order);
    for (w, c) in &chi.0 {
        out = out.mul(&binom_factor(*w, m, c, order));
    }
    out
}

/// The generating product: for each degree n, the six root factors with
/// exponent a_n and the weight-zero factor with exponent 2 a_n + b_n.
pub fn phi(a: &[BigInt], b: &[BigInt], order: usize) -> CharSeries {
    assert!(a.len() + 1 >= order && b.len() + 1 >= order, "need coefficients up to z^{order} exclusive");
    let mut out = CharSeries::one(order);
    for n in 1..order {
        out = out.mul(&degree_factor(&a[n - 1], &b[n - 1], n, order));
    }
    out
}

fn degree_factor(an: &BigInt, bn: &BigInt, n: usize, order: usize) -> CharSeries {
    let mut f = CharSeries::one(order);
    for root in ROOTS {
        f = f.mul(&binom_factor(root, n, an, order));
    }
    f.mul(&binom_factor((0, 0), n, &(BigInt::from(2) * an + bn), order))
}

/// Same product assembled through the lambda-operation applied to
/// a_n ch L(1,1) + b_n ch L(0,0); must agree with `phi` identically.
pub fn phi_via_lambda(a: &[BigInt], b: &[BigInt], order: usize) -> CharSeries {
    assert!(a.len() + 1 >= order && b.len() + 1 >= order);
    let adjoint = ch_irr((1, 1));
    let mut out = CharSeries::one(order);
    for n in 1..order {
        let chi = adjoint.scale(&a[n - 1]).add(&SymLaurent::term((0, 0), b[n - 1].clone()));
        out = out.mul(&lambda_op(&chi, n, order));
    }
    out
}

/// Multiplicity of L(w) in each z-coefficient of the series.
pub fn mult_of(series: &CharSeries, w: Weight) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(series.order);
    for c in &series.coeffs {
        let dec = decompose(c)?;
        let m = dec
            .iter()
            .find(|(dw, _)| *dw == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero);
        out.push(m);
    }
    Ok(out)
}

/// Output of the degree-by-degree solver.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub d: u32,
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub phi: CharSeries,
}

/// Solves for the unique exponent sequences making the product have trivial
/// isotypic row 1 and adjoint isotypic row -D z: at each degree the next
/// factor is 1 - (a_n ch L(1,1) + b_n ch L(0,0)) z^n + O(z^{n+1}), so the
/// z^n coefficient of the running product determines a_n and b_n.
pub fn solve_conjecture(d: u32, n_max: usize) -> Result<SolveResult> {
    let order = n_max + 1;
    let mut running = CharSeries::one(order);
    let mut a = Vec::with_capacity(n_max);
    let mut b = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let dec = decompose(&running.coeffs[n])?;
        let pick = |w: Weight| {
            dec.iter().find(|(dw, _)| *dw == w).map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
        };
        let mut an = pick((1, 1));
        if n == 1 {
            an += BigInt::from(d);
        }
        let bn = pick((0, 0));
        running = running.mul(&degree_factor(&an, &bn, n, order));
        a.push(an);
        b.push(bn);
    }
    Ok(SolveResult { d, a, b, phi: running })
}

/// Re-derivation check for a solver output: rebuilds the product from the
/// solved exponents and verifies the two pinned isotypic rows exactly.
#[derive(Clone, Debug)]
pub struct RecheckReport {
    pub phi_reproduced: bool,
    pub trivial_row: Vec<BigInt>,
    pub adjoint_row: Vec<BigInt>,
    pub passes: bool,
}

pub fn recheck(res: &SolveResult) -> Result<RecheckReport> {
    let order = res.phi.order;
    let fresh = phi(&res.a, &res.b, order);
    let phi_reproduced = fresh == res.phi;
    let trivial_row = mult_of(&fresh, (0, 0))?;
    let adjoint_row = mult_of(&fresh, (1, 1))?;
    let mut want_trivial = vec![BigInt::zero(); order];
    want_trivial[0] = BigInt::one();
    let mut want_adjoint = vec![BigInt::zero(); order];
    if order > 1 {
        want_adjoint[1] = -BigInt::from(res.d);
    }
    let passes = phi_reproduced && trivial_row == want_trivial && adjoint_row == want_adjoint;
    Ok(RecheckReport { phi_reproduced, trivial_row, adjoint_row, passes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn weyl_group_has_six_elements_with_signs() {
        let total: i64 = WEYL.iter().map(|(_, s)| *s).sum();
        assert_eq!(WEYL.len(), 6);
        assert_eq!(total, 0);
    }

    #[test]
    fn small_characters_have_the_right_dimensions() {
        for (w, dim) in [
            ((0, 0), 1),
            ((1, 1), 8),
            ((2, 1), 10),
            ((1, 2), 10),
            ((2, 2), 27),
            ((3, 2), 35),
            ((2, 3), 35),
            ((3, 3), 64),
        ] {
            assert_eq!(ch_irr(w).dim(), big(dim), "L({}, {})", w.0, w.1);
        }
    }

    #[test]
    fn adjoint_character_is_roots_plus_two() {
        let mut want = SymLaurent::term((0, 0), big(2));
        for r in ROOTS {
            want.add_term(r, &BigInt::one());
        }
        assert_eq!(*ch_irr((1, 1)), want);
    }

    #[test]
    fn characters_are_weyl_invariant() {
        for w in [(1i64, 1i64), (2, 1), (3, 2), (3, 3)] {
            let ch = ch_irr(w);
            for (m, _) in WEYL.iter() {
                let moved = SymLaurent(
                    ch.0.iter().map(|(wt, c)| (mat_apply(m, *wt), c.clone())).collect(),
                );
                assert_eq!(moved, *ch);
            }
        }
    }

    #[test]
    fn decompose_inverts_linear_combinations() {
        let combo = ch_irr((2, 1))
            .scale(&big(3))
            .add(&ch_irr((1, 1)).scale(&big(-2)))
            .add(&ch_irr((0, 0)).scale(&big(5)));
        let dec = decompose(&combo).unwrap();
        assert_eq!(
            dec,
            vec![((2, 1), big(3)), ((1, 1), big(-2)), ((0, 0), big(5))]
        );
    }

    #[test]
    fn non_invariant_input_is_rejected() {
        let bad = SymLaurent::term((1, 0), BigInt::one());
        assert!(matches!(decompose(&bad), Err(AbgError::NotACharacter(1, 0))));
    }

    #[test]
    fn binom_factor_handles_negative_exponents() {
        // (1 - z)^{-1} = 1 + z + z^2 + ...
        let f = binom_factor((0, 0), 1, &big(-1), 5);
        for k in 0..5 {
            assert_eq!(f.coeffs[k], SymLaurent::one(), "z^{k}");
        }
        // and multiplies back to 1 against (1 - z)
        let g = binom_factor((0, 0), 1, &big(1), 5);
        assert_eq!(f.mul(&g), CharSeries::one(5));
    }

    #[test]
    fn product_and_lambda_routes_agree() {
        let a = [big(2), big(4), big(8)];
        let b = [big(0), big(1), big(4)];
        assert_eq!(phi(&a, &b, 4), phi_via_lambda(&a, &b, 4));
    }

    #[test]
    fn artin_fixture_decomposes_as_printed() {
        let a = [big(2), big(4), big(8)];
        let b = [big(0), big(1), big(4)];
        let series = phi(&a, &b, 4);
        let dec: Vec<Vec<(Weight, BigInt)>> =
            series.coeffs.iter().map(|c| decompose(c).unwrap()).collect();
        assert_eq!(dec[0], vec![((0, 0), big(1))]);
        assert_eq!(dec[1], vec![((1, 1), big(-2))]);
        assert_eq!(
            dec[2],
            vec![((2, 2), big(1)), ((2, 1), big(3)), ((1, 2), big(3))]
        );
        assert_eq!(
            dec[3],
            vec![
                ((3, 2), big(-2)),
                ((2, 3), big(-2)),
                ((2, 1), big(2)),
                ((1, 2), big(2))
            ]
        );
    }

    #[test]
    fn solver_reproduces_low_degree_dimension_formulas() {
        for d in 1..=5u32 {
            let res = solve_conjecture(d, 3).unwrap();
            let dd = d as i64;
            let c2 = dd * (dd - 1) / 2;
            let c3 = dd * (dd - 1) * (dd - 2) / 6;
            assert_eq!(res.a, vec![big(dd), big(dd * dd), big(dd * dd * dd + c3)]);
            assert_eq!(res.b, vec![big(0), big(c2), big(dd * dd * dd - dd * dd - 2 * c3)]);
            assert!(recheck(&res).unwrap().passes);
        }
    }

    #[test]
    fn one_generator_solution_is_constant() {
        let res = solve_conjecture(1, 8).unwrap();
        assert!(res.a.iter().all(|x| *x == BigInt::one()));
        assert!(res.b.iter().all(|x| x.is_zero()));
        assert!(recheck(&res).unwrap().passes);
    }

    #[test]
    fn three_generator_prediction_at_degree_four() {
        let res = solve_conjecture(3, 4).unwrap();
        assert_eq!(res.a[3], big(87));
        assert_eq!(res.b[3], big(60));
    }
}
