//! Irreducible `GL2(k)`-weights and the generic GL2 Serre weight sets.
//!
//! A weight is stored in the canonical form `(r_0,…,r_{f-1}) ⊗ (κ̄_0 ∘ det^a)`
//! with `0 ≤ r_i ≤ p-1` and `0 ≤ a < q-1`. The Serre weights of a generic
//! parameter are indexed by `v ∈ {0,1}^f` through the tuples `λ_v` of the
//! reducible (RD) and irreducible (ID) families.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, SymError};
use crate::field::{reduce, FieldSize};
use crate::symcore::RestrictedPoly;
use crate::tuple::BitTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoKind {
    ReducibleSplit,
    ReducibleNonsplit,
    Irreducible,
}

impl RhoKind {
    pub const ALL: [RhoKind; 3] = [
        RhoKind::ReducibleSplit,
        RhoKind::ReducibleNonsplit,
        RhoKind::Irreducible,
    ];

    pub fn lambda_kind(self) -> LambdaKind {
        match self {
            RhoKind::Irreducible => LambdaKind::Id,
            _ => LambdaKind::Rd,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RhoKind::ReducibleSplit => "reducible-split",
            RhoKind::ReducibleNonsplit => "reducible-nonsplit",
            RhoKind::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for RhoKind {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.write_str(self.as_str())
    }
}

impl std::str::FromStr for RhoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reducible-split" | "split" => Ok(RhoKind::ReducibleSplit),
            "reducible-nonsplit" | "nonsplit" => Ok(RhoKind::ReducibleNonsplit),
            "irreducible" => Ok(RhoKind::Irreducible),
            other => Err(Error::InvalidParameter(format!("unknown kind {other:?}"))),
        }
    }
}

/// Which family of `λ`-tuples indexes the weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaKind {
    /// Reducible parameters.
    Rd,
    /// Irreducible parameters; differs from `Rd` only in slot 0.
    Id,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GL2Weight {
    pub r: Vec<u64>,
    pub a: u64,
}

impl fmt::Display for GL2Weight {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.r.iter().map(u64::to_string).collect();
        write!(fm, "(({}), a={})", digits.join(","), self.a)
    }
}

/// `σ_{t,s} = (s_0,…,s_{f-1}) ⊗ (κ̄_0 ∘ det^{Σ p^j t_j})`.
pub fn normalize_weight(t: &[i64], s: &[i64], field: FieldSize) -> Result<GL2Weight> {
    let f = field.f();
    if t.len() != f || s.len() != f {
        return Err(Error::InvalidParameter(format!(
            "expected {f} digits, got t of length {} and s of length {}",
            t.len(),
            s.len()
        )));
    }
    let p = field.p() as i64;
    if let Some((j, sj)) = s.iter().enumerate().find(|(_, &sj)| !(0..p).contains(&sj)) {
        return Err(Error::DigitRange(format!(
            "s_{j} = {sj} outside [0, {}]",
            p - 1
        )));
    }
    Ok(GL2Weight {
        r: s.iter().map(|&sj| sj as u64).collect(),
        a: reduce(field.radix_sum(t), field.q_minus_one()),
    })
}

/// A generic two-dimensional mod-`p` parameter, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RhoBar {
    field: FieldSize,
    kind: RhoKind,
    r: Vec<u64>,
    v_rho: Option<BitTuple>,
    twist: u64,
}

impl RhoBar {
    pub fn new(
        p: u64,
        f: usize,
        kind: RhoKind,
        r: &[i64],
        v_rho: Option<BitTuple>,
        twist: i64,
    ) -> Result<Self> {
        let field = FieldSize::new(p, f)?;
        if r.len() != f {
            return Err(Error::InvalidParameter(format!(
                "r has {} entries, expected f = {f}",
                r.len()
            )));
        }
        let p = p as i64;
        match kind {
            RhoKind::ReducibleSplit | RhoKind::ReducibleNonsplit => {
                if let Some(ri) = r.iter().find(|&&ri| !(0..=p - 3).contains(&ri)) {
                    return Err(Error::NonGeneric(format!(
                        "reducible parameters need 0 <= r_i <= p-3 = {}, got {ri}",
                        p - 3
                    )));
                }
                if r.iter().all(|&ri| ri == 0) {
                    return Err(Error::NonGeneric("all r_i equal 0".into()));
                }
                if r.iter().all(|&ri| ri == p - 3) {
                    return Err(Error::NonGeneric(format!("all r_i equal p-3 = {}", p - 3)));
                }
            }
            RhoKind::Irreducible => {
                if !(1..=p - 2).contains(&r[0]) {
                    return Err(Error::NonGeneric(format!(
                        "irreducible parameters need 1 <= r_0 <= p-2 = {}, got {}",
                        p - 2,
                        r[0]
                    )));
                }
                if let Some(ri) = r[1..].iter().find(|&&ri| !(0..=p - 3).contains(&ri)) {
                    return Err(Error::NonGeneric(format!(
                        "irreducible parameters need 0 <= r_i <= p-3 for i > 0, got {ri}"
                    )));
                }
            }
        }
        match (kind, &v_rho) {
            (RhoKind::ReducibleNonsplit, None) => {
                return Err(Error::InvalidParameter("v_rho required".into()));
            }
            (RhoKind::ReducibleNonsplit, Some(v)) => {
                if v.len() != f {
                    return Err(Error::InvalidParameter(format!(
                        "v_rho has {} entries, expected f = {f}",
                        v.len()
                    )));
                }
                if v.is_all_ones() {
                    return Err(Error::InvalidParameter(
                        "v_rho = all ones is impossible for a nonsplit parameter".into(),
                    ));
                }
            }
            (_, Some(_)) => {
                return Err(Error::InvalidParameter(format!(
                    "v_rho only applies to reducible-nonsplit parameters, not {kind}"
                )));
            }
            (_, None) => {}
        }
        Ok(RhoBar {
            field,
            kind,
            r: r.iter().map(|&ri| ri as u64).collect(),
            v_rho,
            twist: reduce(twist, field.q_minus_one()),
        })
    }

    pub fn field(&self) -> FieldSize {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn f(&self) -> usize {
        self.field.f()
    }

    pub fn kind(&self) -> RhoKind {
        self.kind
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    pub fn r_signed(&self) -> Vec<i64> {
        self.r.iter().map(|&ri| ri as i64).collect()
    }

    pub fn v_rho(&self) -> Option<&BitTuple> {
        self.v_rho.as_ref()
    }

    /// Determinant twist exponent in `[0, q-1)`.
    pub fn twist(&self) -> u64 {
        self.twist
    }

    pub fn lambda_kind(&self) -> LambdaKind {
        self.kind.lambda_kind()
    }

    pub fn is_reducible(&self) -> bool {
        self.kind != RhoKind::Irreducible
    }

    /// The split parameter with the same digits and twist.
    pub fn semisimplification(&self) -> RhoBar {
        match self.kind {
            RhoKind::ReducibleNonsplit => RhoBar {
                kind: RhoKind::ReducibleSplit,
                v_rho: None,
                ..self.clone()
            },
            _ => self.clone(),
        }
    }

    pub fn with_twist(&self, twist: i64) -> RhoBar {
        RhoBar {
            twist: reduce(twist, self.field.q_minus_one()),
            ..self.clone()
        }
    }

    /// Whether `v` indexes a weight of this parameter.
    pub fn admits(&self, v: &BitTuple) -> bool {
        v.len() == self.f() && self.v_rho.as_ref().is_none_or(|vr| v.leq(vr))
    }

    pub fn describe(&self) -> String {
        let digits: Vec<String> = self.r.iter().map(u64::to_string).collect();
        let mut s = format!(
            "p={} f={} kind={} r=[{}]",
            self.p(),
            self.f(),
            self.kind,
            digits.join(",")
        );
        if let Some(v) = &self.v_rho {
            s.push_str(&format!(" v_rho={v}"));
        }
        s.push_str(&format!(" twist={}", self.twist));
        s
    }
}

/// Entry `λ_{v,i}` as a function of the window `(v_{i-1}, v_i)`.
pub fn lambda_entry(f: usize, i: usize, window: (u8, u8), kind: LambdaKind) -> RestrictedPoly {
    let xi = RestrictedPoly::var(f, i);
    let x = RestrictedPoly::monomial(f, 1, 1);
    let int = |n| RestrictedPoly::int(f, n);
    match (kind, i, window) {
        (LambdaKind::Id, 0, (1, 0)) => xi - int(1),
        (LambdaKind::Id, 0, (1, 1)) => x - int(1) - xi,
        (_, _, (0, 0)) => xi,
        (_, _, (0, 1)) => x - int(2) - xi,
        (_, _, (1, 0)) => xi + int(1),
        (_, _, (1, 1)) => x - int(3) - xi,
        _ => unreachable!("bit window out of range"),
    }
}

/// The tuple `λ_v`; entry `i` is read off `(v_{i-1}, v_i)`.
pub fn lambda_tuple(v: &BitTuple, kind: LambdaKind) -> Vec<RestrictedPoly> {
    let f = v.len();
    (0..f)
        .map(|i| lambda_entry(f, i, (v.at(i as isize - 1), v.at(i as isize)), kind))
        .collect()
}

/// `Σ_i x^i (x_i - λ_{v,i})`.
pub(crate) fn lambda_defect(v: &BitTuple, kind: LambdaKind) -> RestrictedPoly {
    let f = v.len();
    lambda_tuple(v, kind)
        .into_iter()
        .enumerate()
        .fold(RestrictedPoly::zero(f), |acc, (i, li)| {
            acc + (RestrictedPoly::var(f, i) - li).shift(i as u32)
        })
}

/// The determinant twist polynomial `e(λ_v)`.
pub fn e_lambda(v: &BitTuple, kind: LambdaKind) -> Result<RestrictedPoly, SymError> {
    let f = v.len();
    let defect = lambda_defect(v, kind);
    let body = if v.at(-1) == 0 {
        defect
    } else {
        defect + RestrictedPoly::monomial(f, f as u32, 1) - RestrictedPoly::int(f, 1)
    };
    body.halve_checked()
}

/// `½ S(Σ_i x^i (x_i - λ_{v,i}))`, the reduction route to `e(λ_v)`.
pub fn e_lambda_via_s(v: &BitTuple, kind: LambdaKind) -> Result<RestrictedPoly, SymError> {
    lambda_defect(v, kind).s_reduce().halve_checked()
}

/// The Serre weight `σ_v(ρ̄)`.
pub fn sigma_v(rho: &RhoBar, v: &BitTuple) -> Result<GL2Weight> {
    if v.len() != rho.f() {
        return Err(Error::InvalidParameter(format!(
            "v has {} entries, expected f = {}",
            v.len(),
            rho.f()
        )));
    }
    if !rho.admits(v) {
        return Err(Error::StratumViolation {
            v: v.to_string(),
            v_rho: rho.v_rho().map(ToString::to_string).unwrap_or_default(),
        });
    }
    let field = rho.field();
    let r = rho.r_signed();
    let p = field.p() as i64;
    let mut digits = Vec::with_capacity(rho.f());
    for (i, li) in lambda_tuple(v, rho.lambda_kind()).iter().enumerate() {
        let value = to_i64(li.evaluate(&r, p)?)?;
        if !(0..p).contains(&value) {
            return Err(Error::NonGeneric(format!(
                "lambda_{i} evaluates to {value} outside [0, {}]",
                p - 1
            )));
        }
        digits.push(value as u64);
    }
    let e = to_i64(e_lambda(v, rho.lambda_kind())?.evaluate(&r, p)?)?;
    Ok(GL2Weight {
        r: digits,
        a: reduce(e + rho.twist() as i64, field.q_minus_one()),
    })
}

/// `W_GL2(ρ̄)` keyed by the indexing tuple `v`.
pub fn w_gl2(rho: &RhoBar) -> Result<BTreeMap<BitTuple, GL2Weight>> {
    BitTuple::all(rho.f())
        .filter(|v| rho.admits(v))
        .map(|v| sigma_v(rho, &v).map(|w| (v, w)))
        .collect()
}

pub(crate) fn to_i64(n: num_bigint::BigInt) -> Result<i64> {
    i64::try_from(&n).map_err(|_| Error::Internal(format!("integer {n} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt(bits: &[u8]) -> BitTuple {
        BitTuple::new(bits.to_vec()).unwrap()
    }

    fn x(f: usize) -> RestrictedPoly {
        RestrictedPoly::monomial(f, 1, 1)
    }

    fn int(f: usize, n: i64) -> RestrictedPoly {
        RestrictedPoly::int(f, n)
    }

    fn field(p: u64, f: usize) -> FieldSize {
        FieldSize::new(p, f).unwrap()
    }

    #[test]
    fn normalize_weight_examples() {
        let w = normalize_weight(&[1, 0], &[2, 3], field(5, 2)).unwrap();
        assert_eq!(
            w,
            GL2Weight {
                r: vec![2, 3],
                a: 1
            }
        );
        let w = normalize_weight(&[0, 0, 0], &[1, 0, 2], field(5, 3)).unwrap();
        assert_eq!(
            w,
            GL2Weight {
                r: vec![1, 0, 2],
                a: 0
            }
        );
        let w = normalize_weight(&[4], &[1], field(5, 1)).unwrap();
        assert_eq!(w, GL2Weight { r: vec![1], a: 0 });
        assert!(matches!(
            normalize_weight(&[0], &[5], field(5, 1)),
            Err(Error::DigitRange(_))
        ));
    }

    #[test]
    fn lambda_examples() {
        let f = 2;
        assert_eq!(
            lambda_tuple(&bt(&[0, 0]), LambdaKind::Rd),
            vec![RestrictedPoly::var(f, 0), RestrictedPoly::var(f, 1)]
        );
        assert_eq!(
            lambda_tuple(&bt(&[0, 1]), LambdaKind::Rd),
            vec![
                RestrictedPoly::var(f, 0) + int(f, 1),
                x(f) - int(f, 2) - RestrictedPoly::var(f, 1)
            ]
        );
        assert_eq!(
            lambda_tuple(&bt(&[1]), LambdaKind::Id),
            vec![x(1) - int(1, 1) - RestrictedPoly::var(1, 0)]
        );
    }

    #[test]
    fn e_lambda_examples() {
        assert!(e_lambda(&bt(&[0, 0, 0]), LambdaKind::Rd).unwrap().is_zero());
        assert_eq!(
            e_lambda(&bt(&[1]), LambdaKind::Rd).unwrap(),
            RestrictedPoly::var(1, 0) + int(1, 1)
        );
        assert_eq!(
            e_lambda(&bt(&[1]), LambdaKind::Id).unwrap(),
            RestrictedPoly::var(1, 0)
        );
        assert!(e_lambda_via_s(&bt(&[0, 0]), LambdaKind::Rd)
            .unwrap()
            .is_zero());
        assert_eq!(
            e_lambda_via_s(&bt(&[1]), LambdaKind::Rd).unwrap(),
            RestrictedPoly::var(1, 0) + int(1, 1)
        );
        assert_eq!(
            e_lambda_via_s(&bt(&[1, 1]), LambdaKind::Rd).unwrap(),
            e_lambda(&bt(&[1, 1]), LambdaKind::Rd).unwrap()
        );
    }

    #[test]
    fn sigma_examples() {
        let split = RhoBar::new(5, 1, RhoKind::ReducibleSplit, &[1], None, 0).unwrap();
        assert_eq!(
            sigma_v(&split, &bt(&[0])).unwrap(),
            GL2Weight { r: vec![1], a: 0 }
        );
        assert_eq!(
            sigma_v(&split, &bt(&[1])).unwrap(),
            GL2Weight { r: vec![1], a: 2 }
        );
        let irr = RhoBar::new(5, 1, RhoKind::Irreducible, &[2], None, 0).unwrap();
        assert_eq!(
            sigma_v(&irr, &bt(&[0])).unwrap(),
            GL2Weight { r: vec![2], a: 0 }
        );
    }

    #[test]
    fn sigma_rejects_tuples_outside_v_rho() {
        let ns = RhoBar::new(5, 1, RhoKind::ReducibleNonsplit, &[1], Some(bt(&[0])), 0).unwrap();
        assert!(matches!(
            sigma_v(&ns, &bt(&[1])),
            Err(Error::StratumViolation { .. })
        ));
    }

    #[test]
    fn w_gl2_domains() {
        let split = RhoBar::new(5, 1, RhoKind::ReducibleSplit, &[1], None, 0).unwrap();
        let w = w_gl2(&split).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[&bt(&[0])], GL2Weight { r: vec![1], a: 0 });
        assert_eq!(w[&bt(&[1])], GL2Weight { r: vec![1], a: 2 });

        let ns = RhoBar::new(5, 1, RhoKind::ReducibleNonsplit, &[1], Some(bt(&[0])), 0).unwrap();
        assert_eq!(
            w_gl2(&ns).unwrap().keys().cloned().collect::<Vec<_>>(),
            vec![bt(&[0])]
        );

        let split2 = RhoBar::new(5, 2, RhoKind::ReducibleSplit, &[1, 2], None, 0).unwrap();
        assert_eq!(w_gl2(&split2).unwrap().len(), 4);
    }

    #[test]
    fn twist_shifts_determinant() {
        let rho = RhoBar::new(7, 2, RhoKind::ReducibleSplit, &[1, 3], None, 0).unwrap();
        let twisted = rho.with_twist(5);
        for v in BitTuple::all(2) {
            let a = sigma_v(&rho, &v).unwrap();
            let b = sigma_v(&twisted, &v).unwrap();
            assert_eq!(a.r, b.r);
            assert_eq!((a.a + 5) % 48, b.a);
        }
    }

    #[test]
    fn genericity_validation() {
        let err = |res: Result<RhoBar>| res.unwrap_err();
        assert!(matches!(
            err(RhoBar::new(3, 1, RhoKind::ReducibleSplit, &[0], None, 0)),
            Error::NonGeneric(_)
        ));
        assert!(matches!(
            err(RhoBar::new(5, 2, RhoKind::ReducibleSplit, &[0, 0], None, 0)),
            Error::NonGeneric(_)
        ));
        assert!(matches!(
            err(RhoBar::new(5, 2, RhoKind::ReducibleSplit, &[2, 2], None, 0)),
            Error::NonGeneric(_)
        ));
        assert!(matches!(
            err(RhoBar::new(5, 1, RhoKind::Irreducible, &[0], None, 0)),
            Error::NonGeneric(_)
        ));
        assert!(RhoBar::new(5, 1, RhoKind::Irreducible, &[3], None, 0).is_ok());
        assert!(RhoBar::new(3, 2, RhoKind::Irreducible, &[1, 0], None, 0).is_ok());
        assert_eq!(
            err(RhoBar::new(5, 1, RhoKind::ReducibleNonsplit, &[1], None, 0)),
            Error::InvalidParameter("v_rho required".into())
        );
        assert!(matches!(
            err(RhoBar::new(
                5,
                1,
                RhoKind::ReducibleNonsplit,
                &[1],
                Some(bt(&[1])),
                0
            )),
            Error::InvalidParameter(_)
        ));
        assert!(matches!(
            err(RhoBar::new(
                5,
                1,
                RhoKind::ReducibleSplit,
                &[1],
                Some(bt(&[0])),
                0
            )),
            Error::InvalidParameter(_)
        ));
    }

    #[test]
    fn kind_parsing() {
        for kind in RhoKind::ALL {
            assert_eq!(kind.as_str().parse::<RhoKind>().unwrap(), kind);
        }
        assert!("weird".parse::<RhoKind>().is_err());
    }
}
