//! Orbit of the Weyl vector under the affine A2 Weyl group, tracked in the
//! coefficients of w(rho) - rho on the three simple roots. Minimal-length
//! coset representatives for the finite parabolic give the parabolic
//! homology rows: finite weight (m1, m2) = (c1 - c0, c2 - c0) and internal
//! degree -c0, since delta = alpha0 + alpha1 + alpha2.

use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};

/// Cartan matrix of affine A2: three nodes, each pair joined.
pub const CARTAN: [[i64; 3]; 3] = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]];

/// Coefficients (c0, c1, c2) of w(rho) - rho on the simple roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffineWeight(pub [i64; 3]);

impl AffineWeight {
    pub fn rho() -> AffineWeight {
        AffineWeight([0, 0, 0])
    }

    /// Pairings of w(rho) with the three simple coroots; all three are 1 at
    /// rho itself and never vanish on the orbit.
    pub fn pairings(&self) -> [i64; 3] {
        let mut v = [0i64; 3];
        for i in 0..3 {
            v[i] = 1 + (0..3).map(|j| CARTAN[i][j] * self.0[j]).sum::<i64>();
        }
        v
    }

    pub fn reflect(&self, i: usize) -> AffineWeight {
        let mut c = self.0;
        c[i] -= self.pairings()[i];
        AffineWeight(c)
    }

    /// Finite-root part of w(rho) - rho modulo the imaginary root.
    pub fn finite_part(&self) -> (i64, i64) {
        (self.0[1] - self.0[0], self.0[2] - self.0[0])
    }

    pub fn delta_degree(&self) -> i64 {
        -self.0[0]
    }
}

/// One orbit point with its distance from rho and a reduced word, stored in
/// composition order (first entry is the last reflection applied).
#[derive(Clone, Debug, Serialize)]
pub struct OrbitElement {
    pub c: AffineWeight,
    pub length: u32,
    pub word: Vec<u8>,
}

/// Breadth-first orbit of rho out to the given length, sorted by length
/// then coefficients; the search order makes the words deterministic.
pub fn enumerate_orbit(max_length: u32) -> Vec<OrbitElement> {
    let start = AffineWeight::rho();
    let mut seen: BTreeMap<AffineWeight, (u32, Vec<u8>)> = BTreeMap::new();
    seen.insert(start, (0, Vec::new()));
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let (len, word) = seen[&cur].clone();
        if len == max_length {
            continue;
        }
        for i in 0..3u8 {
            let next = cur.reflect(i as usize);
            if !seen.contains_key(&next) {
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(&word);
                seen.insert(next, (len + 1, w));
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<OrbitElement> = seen
        .into_iter()
        .map(|(c, (length, word))| OrbitElement { c, length, word })
        .collect();
    out.sort_by_key(|e| (e.length, e.c));
    out
}

/// Row of the parabolic homology table: at exterior degree `length`, the
/// simple module L(m1 alpha1 + m2 alpha2) in internal degree `delta_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlRow {
    pub length: u32,
    pub m1: i64,
    pub m2: i64,
    pub delta_degree: i64,
    pub word: Vec<u8>,
}

/// Minimal-length coset representatives: orbit points whose pairings with
/// both finite simple coroots stay positive.
pub fn garland_lepowsky(max_length: u32) -> Vec<GlRow> {
    let mut rows: Vec<GlRow> = enumerate_orbit(max_length)
        .into_iter()
        .filter(|e| {
            let v = e.c.pairings();
            v[1] > 0 && v[2] > 0
        })
        .map(|e| {
            let (m1, m2) = e.c.finite_part();
            GlRow { length: e.length, m1, m2, delta_degree: e.c.delta_degree(), word: e.word }
        })
        .collect();
    rows.sort_by_key(|r| (r.length, r.m1, r.m2));
    rows
}

/// No two orbit points out to the given length may differ by a multiple of
/// the imaginary root; equivalently their finite parts are pairwise
/// distinct.
pub fn check_distinct_mod_delta(max_length: u32) -> bool {
    let orbit = enumerate_orbit(max_length);
    let mut seen = std::collections::BTreeSet::new();
    for e in &orbit {
        if !seen.insert(e.c.finite_part()) {
            return false;
        }
    }
    true
}
