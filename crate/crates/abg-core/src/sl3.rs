//! The Lie algebra sl3 over the rationals, with the fixed ordered basis
//! {e12, e13, e21, e23, e31, e32, e11-e22, e22-e33}. Structure constants are
//! derived from 3x3 matrix arithmetic, never hard-coded.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::LazyLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3(pub [[BigRational; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Mat3 {
        Mat3(std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero())))
    }

    pub fn identity() -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            m.0[i][i] = BigRational::one();
        }
        m
    }

    /// Matrix unit e_{ij} (0-based).
    pub fn unit(i: usize, j: usize) -> Mat3 {
        let mut m = Mat3::zero();
        m.0[i][j] = BigRational::one();
        m
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = BigRational::zero();
                for k in 0..3 {
                    s += &self.0[i][k] * &rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat3) -> Mat3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] += &rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat3) -> Mat3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] -= &rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Mat3 {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] *= c;
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    pub fn commutator(&self, rhs: &Mat3) -> Mat3 {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// xy + yx.
    pub fn anticommutator(&self, rhs: &Mat3) -> Mat3 {
        self.mul(rhs).add(&rhs.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }
}

pub const DIM: usize = 8;
pub const E12: usize = 0;
pub const E13: usize = 1;
pub const E21: usize = 2;
pub const E23: usize = 3;
pub const E31: usize = 4;
pub const E32: usize = 5;
pub const H1: usize = 6;
pub const H2: usize = 7;

static BASIS: LazyLock<[Mat3; DIM]> = LazyLock::new(|| {
    [
        Mat3::unit(0, 1),
        Mat3::unit(0, 2),
        Mat3::unit(1, 0),
        Mat3::unit(1, 2),
        Mat3::unit(2, 0),
        Mat3::unit(2, 1),
        Mat3::unit(0, 0).sub(&Mat3::unit(1, 1)),
        Mat3::unit(1, 1).sub(&Mat3::unit(2, 2)),
    ]
});

pub fn basis() -> &'static [Mat3; DIM] {
    &BASIS
}

pub const NAMES: [&str; DIM] = ["e12", "e13", "e21", "e23", "e31", "e32", "h1", "h2"];

/// Root of each basis vector in the simple-root coordinates (p, q) meaning
/// p*alpha1 + q*alpha2; the two Cartan elements sit at (0, 0).
pub const WEIGHTS: [(i64, i64); DIM] =
    [(1, 0), (1, 1), (-1, 0), (0, 1), (-1, -1), (0, -1), (0, 0), (0, 0)];

/// Coordinates of a traceless matrix in the fixed basis. The diagonal part
/// a*h1 + b*h2 has a = m00 and b = m00 + m11.
pub fn coords(m: &Mat3) -> [BigRational; DIM] {
    debug_assert!(m.trace().is_zero(), "not traceless");
    [
        m.0[0][1].clone(),
        m.0[0][2].clone(),
        m.0[1][0].clone(),
        m.0[1][2].clone(),
        m.0[2][0].clone(),
        m.0[2][1].clone(),
        m.0[0][0].clone(),
        &m.0[0][0] + &m.0[1][1],
    ]
}

pub fn from_coords(c: &[BigRational; DIM]) -> Mat3 {
    let mut m = Mat3::zero();
    for (s, v) in c.iter().enumerate() {
        m = m.add(&BASIS[s].scale(v));
    }
    m
}

/// Structure constants [basis_s, basis_t] = sum_u c_u * basis_u, sparse.
static STRUCT: LazyLock<Vec<Vec<Vec<(usize, BigRational)>>>> = LazyLock::new(|| {
    (0..DIM)
        .map(|s| {
            (0..DIM)
                .map(|t| {
                    let comm = BASIS[s].commutator(&BASIS[t]);
                    coords(&comm)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect()
        })
        .collect()
});

pub fn bracket_coords(s: usize, t: usize) -> &'static [(usize, BigRational)] {
    &STRUCT[s][t]
}
