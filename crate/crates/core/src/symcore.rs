//! Exact arithmetic in the restricted polynomial space `⊕_i Z[x]·x_i ⊕ Z[x]`.
//!
//! Every exponent expression that shows up in the weight calculus is affine in
//! the digit variables `x_0..x_{f-1}` with coefficients in `Z[x]`, where `x`
//! stands for the prime `p`. [`RestrictedPoly`] stores exactly that shape.
//!
//! Storage is sparse and zero-pruned, so the derived `PartialEq` is the
//! structural equality used by every identity check downstream.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::SymError;

/// Sparse univariate polynomial in `x`: exponent -> nonzero coefficient.
pub type XPoly = BTreeMap<u32, BigInt>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RestrictedPoly {
    f: usize,
    linear: Vec<XPoly>,
    constant: XPoly,
}

fn add_term(poly: &mut XPoly, exp: u32, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    let slot = poly.entry(exp).or_insert_with(BigInt::zero);
    *slot += coeff;
    if slot.is_zero() {
        poly.remove(&exp);
    }
}

fn fold_mod(poly: &XPoly, f: usize) -> XPoly {
    let mut out = XPoly::new();
    for (&e, c) in poly {
        add_term(&mut out, e % f as u32, c.clone());
    }
    out
}

impl RestrictedPoly {
    pub fn zero(f: usize) -> Self {
        assert!(f >= 1, "arity must be at least 1");
        RestrictedPoly {
            f,
            linear: vec![XPoly::new(); f],
            constant: XPoly::new(),
        }
    }

    /// The integer constant `n`.
    pub fn int(f: usize, n: i64) -> Self {
        Self::monomial(f, 0, n)
    }

    /// `coeff · x^exp` in the constant part.
    pub fn monomial(f: usize, exp: u32, coeff: i64) -> Self {
        let mut z = Self::zero(f);
        add_term(&mut z.constant, exp, BigInt::from(coeff));
        z
    }

    /// The digit variable `x_i`.
    pub fn var(f: usize, i: usize) -> Self {
        Self::var_term(f, i, 0, 1)
    }

    /// `coeff · x^exp · x_i`.
    pub fn var_term(f: usize, i: usize, exp: u32, coeff: i64) -> Self {
        assert!(i < f, "variable index {i} out of range for arity {f}");
        let mut z = Self::zero(f);
        add_term(&mut z.linear[i], exp, BigInt::from(coeff));
        z
    }

    /// Number of digit variables.
    pub fn arity(&self) -> usize {
        self.f
    }

    /// Coefficient polynomial of `x_i`.
    pub fn linear_coeffs(&self, i: usize) -> &XPoly {
        &self.linear[i]
    }

    pub fn constant_coeffs(&self) -> &XPoly {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_empty() && self.linear.iter().all(XPoly::is_empty)
    }

    /// Largest power of `x` appearing anywhere, or `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<u32> {
        self.linear
            .iter()
            .chain(std::iter::once(&self.constant))
            .filter_map(|p| p.keys().next_back().copied())
            .max()
    }

    fn coeffs(&self) -> impl Iterator<Item = &BigInt> {
        self.linear
            .iter()
            .chain(std::iter::once(&self.constant))
            .flat_map(|p| p.values())
    }

    fn map_coeffs(&self, mut g: impl FnMut(&BigInt) -> BigInt) -> Self {
        let mut out = Self::zero(self.f);
        for (dst, src) in out.linear.iter_mut().zip(&self.linear) {
            for (&e, c) in src {
                add_term(dst, e, g(c));
            }
        }
        for (&e, c) in &self.constant {
            add_term(&mut out.constant, e, g(c));
        }
        out
    }

    /// `self + scale · other`.
    pub fn combine(&self, other: &Self, scale: i64) -> Result<Self, SymError> {
        if self.f != other.f {
            return Err(SymError::ArityMismatch {
                left: self.f,
                right: other.f,
            });
        }
        let scale = BigInt::from(scale);
        let mut out = self.clone();
        for (dst, src) in out.linear.iter_mut().zip(&other.linear) {
            for (&e, c) in src {
                add_term(dst, e, c * &scale);
            }
        }
        for (&e, c) in &other.constant {
            add_term(&mut out.constant, e, c * &scale);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        self.map_coeffs(|c| c * &k)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: u32) -> Self {
        let shift_map = |p: &XPoly| p.iter().map(|(&e, c)| (e + k, c.clone())).collect();
        RestrictedPoly {
            f: self.f,
            linear: self.linear.iter().map(shift_map).collect(),
            constant: shift_map(&self.constant),
        }
    }

    /// Multiply by a polynomial in `x` alone, given as `(exponent, coefficient)` terms.
    pub fn mul_x_poly(&self, terms: &[(u32, i64)]) -> Self {
        terms.iter().fold(Self::zero(self.f), |acc, &(e, c)| {
            acc + self.shift(e).scale(c)
        })
    }

    /// Reduce modulo `x^f - 1`: every power of `x` is folded to its residue mod `f`.
    pub fn s_reduce(&self) -> Self {
        RestrictedPoly {
            f: self.f,
            linear: self.linear.iter().map(|p| fold_mod(p, self.f)).collect(),
            constant: fold_mod(&self.constant, self.f),
        }
    }

    /// `L(z)`: the part that is linear in the digit variables.
    pub fn linear_part(&self) -> Self {
        RestrictedPoly {
            f: self.f,
            linear: self.linear.clone(),
            constant: XPoly::new(),
        }
    }

    /// `C(z)`: the part free of digit variables.
    pub fn constant_part(&self) -> Self {
        RestrictedPoly {
            f: self.f,
            linear: vec![XPoly::new(); self.f],
            constant: self.constant.clone(),
        }
    }

    /// `C_i(z)`: coefficient of `x^i` in the constant part.
    pub fn coeff_c(&self, i: u32) -> BigInt {
        self.constant.get(&i).cloned().unwrap_or_default()
    }

    /// Exact division by two. Any odd coefficient is reported, never rounded.
    pub fn halve_checked(&self) -> Result<Self, SymError> {
        if let Some(c) = self.coeffs().find(|c| c.is_odd()) {
            return Err(SymError::OddCoefficient {
                coefficient: c.clone(),
                poly: self.to_string(),
            });
        }
        Ok(self.map_coeffs(|c| c / 2))
    }

    /// Substitute `x_i ↦ r_i` and `x ↦ p`.
    pub fn evaluate(&self, r: &[i64], p: i64) -> Result<BigInt, SymError> {
        if r.len() != self.f {
            return Err(SymError::LengthMismatch {
                expected: self.f,
                got: r.len(),
            });
        }
        let p = BigInt::from(p);
        let eval_x = |poly: &XPoly| -> BigInt {
            poly.iter()
                .map(|(&e, c)| c * num_traits::pow(p.clone(), e as usize))
                .sum()
        };
        let mut total = eval_x(&self.constant);
        for (coeffs, &ri) in self.linear.iter().zip(r) {
            total += eval_x(coeffs) * BigInt::from(ri);
        }
        Ok(total)
    }
}

impl std::ops::Add for RestrictedPoly {
    type Output = RestrictedPoly;

    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, 1).expect("arity mismatch in addition")
    }
}

impl std::ops::Sub for RestrictedPoly {
    type Output = RestrictedPoly;

    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, -1)
            .expect("arity mismatch in subtraction")
    }
}

impl std::ops::Neg for RestrictedPoly {
    type Output = RestrictedPoly;

    fn neg(self) -> Self {
        self.scale(-1)
    }
}

fn write_x_poly(out: &mut Vec<(bool, String)>, poly: &XPoly, var: Option<usize>) {
    // highest power first reads more naturally
    for (&e, c) in poly.iter().rev() {
        let mag = c.abs();
        let mut factors = Vec::new();
        let unit = mag.is_one();
        if !unit || (e == 0 && var.is_none()) {
            factors.push(mag.to_string());
        }
        match e {
            0 => {}
            1 => factors.push("x".to_string()),
            _ => factors.push(format!("x^{e}")),
        }
        if let Some(i) = var {
            factors.push(format!("x_{i}"));
        }
        out.push((c.is_negative(), factors.join("*")));
    }
}

impl fmt::Display for RestrictedPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, coeffs) in self.linear.iter().enumerate() {
            write_x_poly(&mut terms, coeffs, Some(i));
        }
        write_x_poly(&mut terms, &self.constant, None);
        if terms.is_empty() {
            return write!(fm, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(fm, "-{body}")?,
                (0, false) => write!(fm, "{body}")?,
                (_, true) => write!(fm, " - {body}")?,
                (_, false) => write!(fm, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RestrictedPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "RestrictedPoly[f={}]({})", self.f, self)
    }
}
