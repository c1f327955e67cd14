//! Recomputes low-degree relation spaces with an independent dense
//! row-reduction (leftmost pivots, full back-substitution) and compares
//! rank, span, and normal forms against the sparse engine. The relation
//! instances are regenerated here from the raw identity templates rather
//! than taken from the library.

use abg_core::magma::{component_size, enumerate, Monomial};
use abg_core::{Algebra, AlgebraConfig};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Dense row-reduced span over the rationals.
struct Dense {
    cols: usize,
    /// rows normalized to pivot 1, sorted by pivot column, fully reduced
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Dense {
    fn new(cols: usize) -> Dense {
        Dense { cols, rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [BigRational]) {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (i, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        v[i] -= &f * c;
                    }
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for c in v.iter_mut() {
            *c /= &lead;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        row[i] -= &f * c;
                    }
                }
            }
        }
        self.rows.push((p, v));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|c| c.is_zero())
    }
}

/// Formal sum of monomials of one degree.
type Row = Vec<(Monomial, i64)>;

fn assoc(a: &Monomial, b: &Monomial, c: &Monomial, d: u32) -> Row {
    vec![
        (a.product(b, d).product(c, d), 1),
        (a.product(&b.product(c, d), d), -1),
    ]
}

fn merge(rows: Vec<Row>) -> Row {
    let mut acc: HashMap<Monomial, i64> = HashMap::new();
    for row in rows {
        for (m, c) in row {
            *acc.entry(m).or_insert(0) += c;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn left_alternation(a: &Monomial, b: &Monomial, c: &Monomial, d: u32) -> Row {
    merge(vec![assoc(a, b, c, d), assoc(b, a, c, d)])
}

fn right_alternation(a: &Monomial, b: &Monomial, c: &Monomial, d: u32) -> Row {
    merge(vec![assoc(a, b, c, d), assoc(a, c, b, d)])
}

fn to_dense(row: &Row, index: &HashMap<Monomial, usize>, cols: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); cols];
    for (m, c) in row {
        v[index[m]] += BigRational::from_integer((*c).into());
    }
    v
}

/// Cross-checks one degree of one algebra against a dense span built from
/// externally supplied relation rows.
fn cross_check(d: u32, n: u32, raw_rows: Vec<Row>) {
    let monos = enumerate(d, n);
    assert_eq!(monos.len() as u128, component_size(d, n));
    let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let cols = monos.len();

    let mut dense = Dense::new(cols);
    let dense_rows: Vec<Vec<BigRational>> =
        raw_rows.iter().map(|r| to_dense(r, &index, cols)).collect();
    for v in &dense_rows {
        dense.insert(v.clone());
    }

    let alg = Algebra::new(d, AlgebraConfig::default());
    let comp = alg.component(n).unwrap();
    assert_eq!(comp.monomial_count(), cols);
    assert_eq!(comp.dim() + comp.relation_rank(), cols);
    assert_eq!(comp.relation_rank(), dense.rank(), "rank mismatch at D={d} n={n}");

    // sparse relation rows lie in the dense span
    for row in comp.relation_rows() {
        let mut v = vec![BigRational::zero(); cols];
        for (m, c) in row {
            v[index[&m]] += BigRational::from_integer(c);
        }
        assert!(dense.contains(&v), "sparse relation outside dense span");
    }

    // dense generators reduce to zero through the sparse normal forms
    for (raw, v) in raw_rows.iter().zip(&dense_rows) {
        let mut over_basis = vec![BigRational::zero(); comp.dim()];
        for (m, _) in raw {
            let c = &v[index[m]];
            if c.is_zero() {
                continue;
            }
            for (pos, coeff) in comp.reduce_monomial(m) {
                over_basis[pos as usize] += c * &coeff;
            }
        }
        assert!(
            over_basis.iter().all(|c| c.is_zero()),
            "dense generator does not vanish in the quotient"
        );
    }

    // every monomial's normal form differs from it by a dense-span vector
    let basis_index: HashMap<Monomial, usize> = comp
        .basis_monomials()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    for m in &monos {
        let mut v = vec![BigRational::zero(); cols];
        v[index[m]] += BigRational::one();
        for (pos, coeff) in comp.reduce_monomial(m) {
            let bm = comp.basis_monomial(pos);
            assert_eq!(basis_index[&bm], pos as usize);
            v[index[&bm]] -= coeff;
        }
        assert!(dense.contains(&v), "normal form of {} escapes the span", m.render(d));
    }
}

#[test]
fn degree_three_on_three_generators_against_dense_elimination() {
    let d = 3u32;
    let gens: Vec<Monomial> = (0..d).map(Monomial::generator).collect();
    let mut rows = Vec::new();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                rows.push(left_alternation(a, b, c, d));
                rows.push(right_alternation(a, b, c, d));
            }
        }
    }
    // 54 monomials, rank 26, dimension 28
    cross_check(d, 3, rows);
    let alg = Algebra::new(d, AlgebraConfig::default());
    assert_eq!(alg.dim(3).unwrap(), 28);
    assert_eq!(alg.component(3).unwrap().relation_rank(), 26);
}

#[test]
fn degree_four_on_two_generators_against_dense_closure() {
    let d = 2u32;
    let gens: Vec<Monomial> = (0..d).map(Monomial::generator).collect();
    let by_degree: Vec<Vec<Monomial>> = (0..=3).map(|n| enumerate(d, n.max(1))).collect();

    let mut rows: Vec<Row> = Vec::new();
    // identity instances with arguments of total degree four
    for (d1, d2, d3) in [(1u32, 1u32, 2u32), (1, 2, 1), (2, 1, 1)] {
        for a in &by_degree[d1 as usize] {
            for b in &by_degree[d2 as usize] {
                for c in &by_degree[d3 as usize] {
                    rows.push(left_alternation(a, b, c, d));
                    rows.push(right_alternation(a, b, c, d));
                }
            }
        }
    }
    // degree-three relations pushed up by one generator on either side
    let mut degree3: Vec<Row> = Vec::new();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                degree3.push(left_alternation(a, b, c, d));
                degree3.push(right_alternation(a, b, c, d));
            }
        }
    }
    for rel in &degree3 {
        for g in &gens {
            rows.push(rel.iter().map(|(m, c)| (g.product(m, d), *c)).collect());
            rows.push(rel.iter().map(|(m, c)| (m.product(g, d), *c)).collect());
        }
    }

    // 80 monomials, dimension 2^4 = 16, rank 64
    cross_check(d, 4, rows);
    let alg = Algebra::new(d, AlgebraConfig::default());
    assert_eq!(alg.dim(4).unwrap(), 16);
    assert_eq!(alg.component(4).unwrap().relation_rank(), 64);
}
