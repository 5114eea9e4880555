//! Exact integer linear algebra for affine ranks.

use num::bigint::BigInt;
use num::{Integer, One, Zero};

/// Incremental row echelon basis over the integers (fraction-free, rows kept
/// primitive by dividing out their gcd).
#[derive(Clone, Debug, Default)]
pub struct IntRank {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntRank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector; returns whether it increased the rank.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut v: Vec<BigInt> = v.iter().map(|&e| BigInt::from(e)).collect();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = row[*pivot].clone();
            let c = v[*pivot].clone();
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = &a * &*vi - &c * ri;
            }
            normalize(&mut v);
        }
        match v.iter().position(|e| !e.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
    if !g.is_zero() && !g.is_one() {
        for e in v.iter_mut() {
            *e = &*e / &g;
        }
    }
}

/// Dimension of the affine hull of a set of 0/1 points; `-1` for the empty set.
pub fn affine_dimension<'a>(points: impl IntoIterator<Item = &'a [u8]>) -> i64 {
    let mut iter = points.into_iter();
    let Some(first) = iter.next() else {
        return -1;
    };
    let d = first.len();
    let mut basis = IntRank::new();
    let mut diff = vec![0i64; d];
    for p in iter {
        if basis.rank() == d {
            break;
        }
        for i in 0..d {
            diff[i] = i64::from(p[i]) - i64::from(first[i]);
        }
        basis.insert(&diff);
    }
    basis.rank() as i64
}
