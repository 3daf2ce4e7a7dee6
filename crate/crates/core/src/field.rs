use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `q = p^f` accepted. Keeps `q^2 - 1` and every intermediate sum well inside `i64`.
pub const MAX_Q: u64 = 1 << 24;

/// The residue field size data `(p, f)` with `q = p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSize {
    p: u64,
    f: usize,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSize {
    pub fn new(p: u64, f: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidParameter("f must be at least 1".into()));
        }
        let q = (0..f).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&v| v <= MAX_Q));
        if q.is_none() {
            return Err(Error::InvalidParameter(format!(
                "q = {p}^{f} exceeds the supported bound {MAX_Q}"
            )));
        }
        Ok(FieldSize { p, f })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    /// Order of `k^×`.
    pub fn q_minus_one(&self) -> u64 {
        self.q() - 1
    }

    /// Order of `l^×`.
    pub fn q2_minus_one(&self) -> u64 {
        self.q() * self.q() - 1
    }

    /// `p^i` as a signed integer.
    pub fn p_pow(&self, i: usize) -> i64 {
        (self.p as i64).pow(i as u32)
    }

    /// Base-`p` digits of `n`, least significant first, exactly `f` of them.
    pub fn digits(&self, mut n: u64) -> Vec<u64> {
        (0..self.f)
            .map(|_| {
                let d = n % self.p;
                n /= self.p;
                d
            })
            .collect()
    }

    /// `Σ p^i · a_i` for a digit-indexed sequence.
    pub fn radix_sum(&self, a: &[i64]) -> i64 {
        a.iter()
            .enumerate()
            .map(|(i, &ai)| self.p_pow(i) * ai)
            .sum()
    }
}

/// Residue of a signed integer in `[0, m)`.
pub fn reduce(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}
