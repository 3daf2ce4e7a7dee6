//! Cyclically indexed `{0,1}` and `{-1,0,1}` tuples.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `{0,1}^{Z/fZ}`. Indexing through [`BitTuple::at`] wraps mod `f`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct BitTuple(Vec<u8>);

impl BitTuple {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidParameter("bit tuple must be nonempty".into()));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidParameter(format!(
                "bit tuple entries must be 0 or 1, got {b}"
            )));
        }
        Ok(BitTuple(bits))
    }

    pub fn zeros(f: usize) -> Self {
        BitTuple(vec![0; f])
    }

    pub fn ones(f: usize) -> Self {
        BitTuple(vec![1; f])
    }

    /// All `2^f` tuples in lexicographic order.
    pub fn all(f: usize) -> impl Iterator<Item = BitTuple> {
        (0..1usize << f)
            .map(move |idx| BitTuple((0..f).map(|i| ((idx >> (f - 1 - i)) & 1) as u8).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// Entry at a cyclic index, so `at(-1)` is the last entry.
    pub fn at(&self, i: isize) -> u8 {
        self.0[i.rem_euclid(self.0.len() as isize) as usize]
    }

    /// `self ≤ other`: every 1 in `self` is a 1 in `other`.
    pub fn leq(&self, other: &BitTuple) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    /// Number of ones.
    pub fn ell(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&b| b == 1)
    }

    /// Compact form such as `"011"`.
    pub fn bitstring(&self) -> String {
        self.0.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

impl TryFrom<Vec<u8>> for BitTuple {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        BitTuple::new(bits)
    }
}

impl From<BitTuple> for Vec<u8> {
    fn from(t: BitTuple) -> Self {
        t.0
    }
}

impl fmt::Display for BitTuple {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(fm, "({})", inner.join(","))
    }
}

impl fmt::Debug for BitTuple {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

/// An element of `{-1,0,1}^{Z/fZ}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignTuple(Vec<i8>);

impl SignTuple {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidParameter(
                "sign tuple must be nonempty".into(),
            ));
        }
        if let Some(d) = signs.iter().find(|d| !(-1..=1).contains(*d)) {
            return Err(Error::InvalidParameter(format!(
                "sign tuple entries must be -1, 0 or 1, got {d}"
            )));
        }
        Ok(SignTuple(signs))
    }

    pub fn zeros(f: usize) -> Self {
        SignTuple(vec![0; f])
    }

    /// All `3^f` tuples in lexicographic order.
    pub fn all(f: usize) -> impl Iterator<Item = SignTuple> {
        let total = 3usize.pow(f as u32);
        (0..total).map(move |mut idx| {
            let mut d = vec![0i8; f];
            for slot in d.iter_mut().rev() {
                *slot = (idx % 3) as i8 - 1;
                idx /= 3;
            }
            SignTuple(d)
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn at(&self, i: isize) -> i8 {
        self.0[i.rem_euclid(self.0.len() as isize) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Comma-separated signs, e.g. `"-1,0,1"`.
    pub fn comma_signs(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(i8::to_string).collect();
        parts.join(",")
    }
}

impl TryFrom<Vec<i8>> for SignTuple {
    type Error = Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        SignTuple::new(signs)
    }
}

impl From<SignTuple> for Vec<i8> {
    fn from(t: SignTuple) -> Self {
        t.0
    }
}

impl fmt::Display for SignTuple {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "({})", self.comma_signs())
    }
}

impl fmt::Debug for SignTuple {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, fm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt(bits: &[u8]) -> BitTuple {
        BitTuple::new(bits.to_vec()).unwrap()
    }

    #[test]
    fn order_and_popcount() {
        assert!(bt(&[0, 1]).leq(&bt(&[1, 1])));
        assert!(!bt(&[1, 0]).leq(&bt(&[0, 1])));
        assert_eq!(bt(&[1, 0, 1]).ell(), 2);
    }

    #[test]
    fn cyclic_indexing() {
        let t = bt(&[1, 0, 0]);
        assert_eq!(t.at(-1), 0);
        assert_eq!(t.at(3), 1);
        assert_eq!(t.at(-3), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all: Vec<_> = BitTuple::all(3).collect();
        assert_eq!(all.len(), 8);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let signs: Vec<_> = SignTuple::all(2).collect();
        assert_eq!(signs.len(), 9);
        assert!(signs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(signs[0].signs(), &[-1, -1]);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(BitTuple::new(vec![0, 2]).is_err());
        assert!(BitTuple::new(vec![]).is_err());
        assert!(SignTuple::new(vec![2]).is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(bt(&[0, 1]).to_string(), "(0,1)");
        assert_eq!(bt(&[0, 1]).bitstring(), "01");
        assert_eq!(
            SignTuple::new(vec![-1, 0, 1]).unwrap().comma_signs(),
            "-1,0,1"
        );
    }
}
