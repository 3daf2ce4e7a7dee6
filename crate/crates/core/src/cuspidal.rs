//! Characters of `l^×` and the Jordan–Hölder factors of reduced cuspidal types.
//!
//! A character is `ῑ^e` for an exponent `e` mod `q²-1`; the embedding `ῑ`
//! itself is never materialized. Type I characters have the unique normal
//! form `e ≡ (q+1)b + 1 + c` with `0 ≤ b ≤ q-2` and `0 ≤ c ≤ q-1`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{reduce, FieldSize};
use crate::gl2weights::{normalize_weight, GL2Weight};
use crate::tuple::BitTuple;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharQuad {
    #[serde(skip)]
    field: FieldSize,
    exponent: u64,
    b: u64,
    c: u64,
    #[serde(skip)]
    c_digits: Vec<u64>,
}

impl PartialOrd for CharQuad {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CharQuad {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field, self.exponent).cmp(&(other.field, other.exponent))
    }
}

impl CharQuad {
    /// Character with the given normal-form pair.
    pub fn from_bc(b: u64, c: u64, field: FieldSize) -> Result<Self> {
        let q = field.q();
        if b > q - 2 {
            return Err(Error::InvalidParameter(format!(
                "b = {b} outside [0, {}]",
                q - 2
            )));
        }
        if c > q - 1 {
            return Err(Error::InvalidParameter(format!(
                "c = {c} outside [0, {}]",
                q - 1
            )));
        }
        Ok(CharQuad {
            field,
            exponent: ((q + 1) * b + 1 + c) % field.q2_minus_one(),
            b,
            c,
            c_digits: field.digits(c),
        })
    }

    pub fn field(&self) -> FieldSize {
        self.field
    }

    /// Exponent in `[0, q²-1)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn c_digits(&self) -> &[u64] {
        &self.c_digits
    }

    /// The character multiplied by `κ̄_0 ∘ Nm` to the power `a`.
    pub fn twisted(&self, a: i64) -> CharQuad {
        let shift = (self.field.q() + 1) as i64 * a;
        bc_decompose(self.exponent as i64 + shift, self.field)
            .expect("twisting by a norm character preserves type I")
    }
}

impl fmt::Display for CharQuad {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "iota^{} (b={}, c={})", self.exponent, self.b, self.c)
    }
}

/// Whether `ῑ^e` does not factor through the norm.
pub fn is_type_one(e: i64, q: u64) -> bool {
    !reduce(e, q * q - 1).is_multiple_of(q + 1)
}

/// The normal form of a type I exponent.
pub fn bc_decompose(e: i64, field: FieldSize) -> Result<CharQuad> {
    let q = field.q();
    let e = reduce(e, field.q2_minus_one());
    if e.is_multiple_of(q + 1) {
        return Err(Error::NotTypeOne { exponent: e, q });
    }
    let shifted = reduce(e as i64 - 1, field.q2_minus_one());
    let b = shifted / (q + 1);
    let c = shifted % (q + 1);
    debug_assert!(c < q && b <= q - 2);
    CharQuad::from_bc(b, c, field)
}

/// `u_0`: flip the last bit of `u`.
pub fn u0_transform(u: &BitTuple) -> BitTuple {
    let mut bits = u.bits().to_vec();
    let last = bits.len() - 1;
    bits[last] = 1 - bits[last];
    BitTuple::new(bits).expect("flipping a bit keeps a valid tuple")
}

fn admissible(c_digits: &[u64], p: u64, u: &BitTuple) -> bool {
    let u0 = u0_transform(u);
    c_digits.iter().enumerate().all(|(j, &cj)| {
        let prev = u0.at(j as isize - 1);
        match u.bits()[j] {
            1 => !(prev == 0 && cj == p - 1),
            _ => !(prev == 1 && cj == 0),
        }
    })
}

/// `P_Θ(ψ)` in tuple form, lexicographically sorted.
pub fn p_theta(psi: &CharQuad) -> Vec<BitTuple> {
    BitTuple::all(psi.field.f())
        .filter(|u| admissible(&psi.c_digits, psi.field.p(), u))
        .collect()
}

/// The factor `Θ̄(ψ)_u`.
pub fn jh_factor(psi: &CharQuad, u: &BitTuple) -> Result<GL2Weight> {
    let field = psi.field;
    let f = field.f();
    if u.len() != f {
        return Err(Error::InvalidParameter(format!(
            "u has {} entries, expected f = {f}",
            u.len()
        )));
    }
    if !admissible(&psi.c_digits, field.p(), u) {
        return Err(Error::InadmissibleTuple {
            u: u.to_string(),
            exponent: psi.exponent,
        });
    }
    let p = field.p() as i64;
    let u0 = u0_transform(u);
    let mut s = Vec::with_capacity(f);
    let mut t = Vec::with_capacity(f);
    for i in 0..f {
        let ci = psi.c_digits[i] as i64;
        let prev0 = u0.at(i as isize - 1) as i64;
        let prev = u.at(i as isize - 1) as i64;
        if u.bits()[i] == 1 {
            s.push(p - 2 + prev0 - ci);
            t.push(ci + 1 - prev);
        } else {
            s.push(ci - prev0);
            t.push(0);
        }
    }
    let mut weight = normalize_weight(&t, &s, field)?;
    let first = u.at(0) as i64;
    let last = u.at(-1) as i64;
    let twist = psi.b as i64 + first * last + (1 - first) * (1 - last);
    weight.a = reduce(weight.a as i64 + twist, field.q_minus_one());
    Ok(weight)
}

/// `JH(Θ̄(ψ)^ss)` as a sorted set.
pub fn jh_set(psi: &CharQuad) -> Result<Vec<GL2Weight>> {
    let factors = p_theta(psi)
        .iter()
        .map(|u| jh_factor(psi, u))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(factors.into_iter().collect())
}
