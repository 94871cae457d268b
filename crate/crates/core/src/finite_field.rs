//! Arithmetic in 𝔽_p and enumeration of reduced echelon forms.

use crate::error::{arg, Result};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(k).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return arg(format!("{p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// Rank of a dense matrix given by rows.
    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x % self.p).collect())
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = self.inv(m[rank][c]);
            for x in m[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c];
                    let pivot_row = m[rank].clone();
                    for (x, &y) in m[r].iter_mut().zip(&pivot_row).take(cols) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Calls `visit` on every k×d reduced row echelon form over 𝔽_p, i.e.
    /// once per k-dimensional subspace of 𝔽_p^d.
    pub fn for_each_echelon_form(&self, d: usize, k: usize, visit: &mut dyn FnMut(&[Vec<u64>])) {
        for pivots in crate::wedge::subsets(d, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    (p + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut rows = vec![vec![0u64; d]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut digits = vec![0u64; free.len()];
            loop {
                for (&(r, c), &x) in free.iter().zip(&digits) {
                    rows[r][c] = x;
                }
                visit(&rows);
                let Some(i) = digits.iter().position(|&x| x + 1 < self.p) else {
                    break;
                };
                digits[i] += 1;
                for x in digits[..i].iter_mut() {
                    *x = 0;
                }
            }
        }
    }
}

/// Number of k-dimensional subspaces of 𝔽_q^d, saturating at u128::MAX.
pub fn gaussian_binomial(d: usize, k: usize, q: u64) -> u128 {
    if k > d {
        return 0;
    }
    // row[j] = [i choose j]_q, via [i, j] = [i-1, j-1] + q^j [i-1, j]
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=d {
        for j in (1..=k.min(i)).rev() {
            let qj = (q as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
            row[j] = row[j - 1].saturating_add(qj.saturating_mul(row[j]));
        }
    }
    row[k]
}
