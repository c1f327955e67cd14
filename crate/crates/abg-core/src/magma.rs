//! Monomials of the free magma on D generators: full binary trees whose leaves
//! carry generator labels.
//!
//! A monomial is stored as a pair of integers. `word` packs the leaf labels in
//! base D, leftmost leaf most significant, so that for monomials of equal degree
//! integer order on `word` is exactly lexicographic order on the leaf word.
//! `shape` packs the preorder traversal of the tree, one bit per node, internal
//! node = 1 and leaf = 0, first node most significant; within a degree all shape
//! strings have length 2n-1, so integer order is again lexicographic.
//!
//! The canonical order used everywhere (basis listings, pivot choice) is the
//! derived lexicographic order on (degree, word, shape).

use serde::{Deserialize, Serialize};

/// Degrees have to fit 2n-1 shape bits into a u64.
pub const MAX_DEGREE: u32 = 32;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial {
    degree: u32,
    word: u64,
    shape: u64,
}

impl Monomial {
    /// The generator x_{g+1} (g is 0-based).
    pub fn generator(g: u32) -> Monomial {
        Monomial { degree: 1, word: g as u64, shape: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn word_code(&self) -> u64 {
        self.word
    }

    pub fn shape_code(&self) -> u64 {
        self.shape
    }

    pub fn from_codes(degree: u32, word: u64, shape: u64) -> Monomial {
        Monomial { degree, word, shape }
    }

    /// Magma product: grafts the two trees under a new root.
    pub fn product(&self, rhs: &Monomial, d: u32) -> Monomial {
        let n = self.degree + rhs.degree;
        assert!(n <= MAX_DEGREE, "magma degree {n} over encodable limit");
        let len_r = 2 * rhs.degree as u64 - 1;
        let shape = (1u64 << (2 * self.degree + len_r as u32 - 1))
            | (self.shape << len_r)
            | rhs.shape;
        let word = self.word * (d as u64).pow(rhs.degree) + rhs.word;
        Monomial { degree: n, word, shape }
    }

    /// Splits off the two factors under the root; None on a generator.
    pub fn split(&self, d: u32) -> Option<(Monomial, Monomial)> {
        if self.degree == 1 {
            return None;
        }
        let len = 2 * self.degree as u64 - 1;
        // scan the preorder string after the root until the left subtree closes
        let mut need: i64 = 1;
        let mut left_nodes = 0u64;
        for i in 1..len {
            let bit = (self.shape >> (len - 1 - i)) & 1;
            need += if bit == 1 { 1 } else { -1 };
            left_nodes += 1;
            if need == 0 {
                break;
            }
        }
        let left_deg = ((left_nodes + 1) / 2) as u32;
        let right_deg = self.degree - left_deg;
        let len_r = 2 * right_deg as u64 - 1;
        let mask_r = (1u64 << len_r) - 1;
        let shape_r = self.shape & mask_r;
        let shape_l = (self.shape >> len_r) & ((1u64 << left_nodes) - 1);
        let pow = (d as u64).pow(right_deg);
        let word_l = self.word / pow;
        let word_r = self.word % pow;
        Some((
            Monomial { degree: left_deg, word: word_l, shape: shape_l },
            Monomial { degree: right_deg, word: word_r, shape: shape_r },
        ))
    }

    /// Leaf labels left to right (0-based generator indices).
    pub fn letters(&self, d: u32) -> Vec<u32> {
        let n = self.degree;
        let mut out = Vec::with_capacity(n as usize);
        let mut w = self.word;
        for _ in 0..n {
            out.push((w % d as u64) as u32);
            w /= d as u64;
        }
        out.reverse();
        out
    }

    /// Letter-count vector; elimination blocks are keyed by it.
    pub fn multidegree(&self, d: u32) -> Vec<u32> {
        let mut counts = vec![0u32; d as usize];
        for l in self.letters(d) {
            counts[l as usize] += 1;
        }
        counts
    }

    /// Fully parenthesized rendering, e.g. "((x1*x2)*x3)".
    pub fn render(&self, d: u32) -> String {
        match self.split(d) {
            None => format!("x{}", self.word + 1),
            Some((l, r)) => format!("({}*{})", l.render(d), r.render(d)),
        }
    }
}

/// Catalan(n-1) * D^n, exactly.
pub fn component_size(d: u32, n: u32) -> u128 {
    catalan(n as u64 - 1) * (d as u128).pow(n)
}

fn catalan(k: u64) -> u128 {
    // C_k = binom(2k, k) / (k+1), built up multiplicatively to stay exact
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

/// All shape codes of degree n, ascending.
pub fn shape_codes(n: u32) -> Vec<u64> {
    fn build(n: u32) -> Vec<u64> {
        if n == 1 {
            return vec![0];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for ls in build(k) {
                for rs in build(n - k) {
                    let len_r = 2 * (n - k) as u64 - 1;
                    out.push((1u64 << (2 * k + len_r as u32 - 1)) | (ls << len_r) | rs);
                }
            }
        }
        out
    }
    let mut v = build(n);
    v.sort_unstable();
    v
}

/// All monomials of degree n on d generators in canonical ascending order.
pub fn enumerate(d: u32, n: u32) -> Vec<Monomial> {
    assert!(n >= 1 && n <= MAX_DEGREE);
    let shapes = shape_codes(n);
    let words = (d as u64).pow(n);
    let mut out = Vec::with_capacity(shapes.len() * words as usize);
    for word in 0..words {
        for &shape in &shapes {
            out.push(Monomial { degree: n, word, shape });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan_ref(n: u64) -> u128 {
        if n == 0 {
            1
        } else {
            (0..n).map(|i| catalan_ref(i) * catalan_ref(n - 1 - i)).sum()
        }
    }

    #[test]
    fn component_sizes() {
        assert_eq!(enumerate(2, 1).len(), 2);
        assert_eq!(enumerate(2, 3).len(), 16);
        assert_eq!(enumerate(3, 4).len(), 405);
        for n in 1..=7u32 {
            assert_eq!(component_size(2, n), catalan_ref(n as u64 - 1) * (1 << n) as u128);
            assert_eq!(enumerate(1, n).len() as u128, catalan_ref(n as u64 - 1));
        }
    }

    #[test]
    fn canonical_order_is_sorted() {
        for (d, n) in [(2, 4), (3, 3), (1, 6)] {
            let ms = enumerate(d, n);
            for w in ms.windows(2) {
                assert!(w[0] < w[1]);
            }
        }
    }

    #[test]
    fn first_and_last_of_degree_three() {
        let ms = enumerate(2, 3);
        assert_eq!(ms[0].render(2), "(x1*(x1*x1))");
        assert_eq!(ms[1].render(2), "((x1*x1)*x1)");
        assert_eq!(ms.last().unwrap().render(2), "((x2*x2)*x2)");
    }

    #[test]
    fn product_split_round_trip() {
        let d = 3;
        for u in enumerate(d, 2) {
            for v in enumerate(d, 3) {
                let p = u.product(&v, d);
                assert_eq!(p.split(d), Some((u, v)));
                let mut letters = u.letters(d);
                letters.extend(v.letters(d));
                assert_eq!(p.letters(d), letters);
            }
        }
    }

    #[test]
    fn product_is_injective() {
        use std::collections::HashSet;
        let d = 2;
        let mut seen = HashSet::new();
        for du in 1..=2u32 {
            for dv in 1..=2u32 {
                for u in enumerate(d, du) {
                    for v in enumerate(d, dv) {
                        assert!(seen.insert(u.product(&v, d)));
                    }
                }
            }
        }
    }

    #[test]
    fn multidegree_counts_letters() {
        let m = Monomial::generator(0)
            .product(&Monomial::generator(2), 3)
            .product(&Monomial::generator(0), 3);
        assert_eq!(m.multidegree(3), vec![2, 0, 1]);
        assert_eq!(m.render(3), "((x1*x3)*x1)");
    }
}
