//! Quaternionic Serre weights through the `(u, v)` and `(w, d)` parameterisations.
//!
//! For a pair `(u, v)` the character `ψ_{u,v}` is the unique one whose cuspidal
//! factor indexed by `u` equals the GL2 weight `σ_v`. Its exponent is the value
//! at `(r, p)` of the symbolic expression
//!
//! ```text
//! 1 + Σ_i x^i c_{u,v,i} + (1 + x^f) b_{u,v}
//! ```
//!
//! whose linear part is `Σ_i x^{i + w_i f} x_i` with `w_i = u_i + v_i mod 2`
//! and whose constant part is `Σ_i d_i x^i - Σ_i d_i x^{i+f}`. Reducing mod
//! `q² - 1` gives the closed form `Σ q^{w_i} p^i r_i + (1-q) Σ d_i p^i` and the
//! enumeration by admissible `(w, d)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::cuspidal::{bc_decompose, jh_factor, p_theta, CharQuad};
use crate::error::{Error, Result, SymError};
use crate::gl2weights::{
    lambda_defect, lambda_tuple, sigma_v, to_i64, LambdaKind, RhoBar, RhoKind,
};
use crate::symcore::RestrictedPoly;
use crate::tuple::{BitTuple, SignTuple};

pub use crate::cuspidal::u0_transform;

/// A quaternionic weight together with everything that certifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCertificate {
    pub psi: CharQuad,
    pub w: BitTuple,
    pub d: SignTuple,
    /// The `v` whose stratum contains `psi`; only defined for reducible parameters.
    pub stratum_v: Option<BitTuple>,
    /// Every `(u, v)` with `ψ_{u,v} = psi`, sorted.
    pub witnesses: Vec<(BitTuple, BitTuple)>,
}

/// Digit polynomials `c_{u,v,i}`.
pub fn c_uv(u: &BitTuple, v: &BitTuple, kind: LambdaKind) -> Vec<RestrictedPoly> {
    let f = v.len();
    let u0 = u0_transform(u);
    let x = RestrictedPoly::monomial(f, 1, 1);
    lambda_tuple(v, kind)
        .into_iter()
        .enumerate()
        .map(|(i, li)| {
            let prev0 = RestrictedPoly::int(f, u0.at(i as isize - 1) as i64);
            if u.bits()[i] == 1 {
                x.clone() - RestrictedPoly::int(f, 2) + prev0 - li
            } else {
                prev0 + li
            }
        })
        .collect()
}

/// Twist polynomials `t_{u,v,i}`.
pub fn t_uv(u: &BitTuple, v: &BitTuple, kind: LambdaKind) -> Vec<RestrictedPoly> {
    let f = v.len();
    c_uv(u, v, kind)
        .into_iter()
        .enumerate()
        .map(|(i, ci)| {
            if u.bits()[i] == 1 {
                ci + RestrictedPoly::int(f, 1 - u.at(i as isize - 1) as i64)
            } else {
                RestrictedPoly::zero(f)
            }
        })
        .collect()
}

/// `b_{u,v} = ½S(Σ x^i(x_i - λ_{v,i})) - S(u_0 u_{f-1} + (1-u_0)(1-u_{f-1}) + Σ x^i t_{u,v,i})`.
pub fn b_uv(u: &BitTuple, v: &BitTuple, kind: LambdaKind) -> Result<RestrictedPoly, SymError> {
    let f = v.len();
    let half = lambda_defect(v, kind).s_reduce().halve_checked()?;
    let (first, last) = (u.at(0) as i64, u.at(-1) as i64);
    let base = RestrictedPoly::int(f, first * last + (1 - first) * (1 - last));
    let twist_sum = t_uv(u, v, kind)
        .into_iter()
        .enumerate()
        .fold(base, |acc, (i, ti)| acc + ti.shift(i as u32));
    Ok(half - twist_sum.s_reduce())
}

/// `1 + Σ x^i c_{u,v,i} + (1 + x^f) b_{u,v}`, not reduced mod `x^f - 1`.
pub fn psi_exponent_symbolic(
    u: &BitTuple,
    v: &BitTuple,
    kind: LambdaKind,
) -> Result<RestrictedPoly, SymError> {
    let f = v.len();
    let digits = c_uv(u, v, kind)
        .into_iter()
        .enumerate()
        .fold(RestrictedPoly::int(f, 1), |acc, (i, ci)| {
            acc + ci.shift(i as u32)
        });
    Ok(digits + b_uv(u, v, kind)?.mul_x_poly(&[(0, 1), (f as u32, 1)]))
}

fn window_index(pair: (u8, u8)) -> usize {
    2 * pair.0 as usize + pair.1 as usize
}

// Rows: (v_{i-1}, v_i); columns: (u_{i-1}, u_i); both in order 00, 01, 10, 11.
const D_TABLE_INNER: [[i8; 4]; 4] = [[0, -1, 1, 0], [-1, 0, 0, 1], [1, -1, 1, -1], [-1, 1, -1, 1]];
const D_TABLE_FIRST_REDUCIBLE: [[i8; 4]; 4] =
    [[1, 0, 0, -1], [0, 1, -1, 0], [1, -1, 1, -1], [-1, 1, -1, 1]];
const D_TABLE_FIRST_IRREDUCIBLE: [[i8; 4]; 4] =
    [[1, 0, 0, -1], [0, 1, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]];

/// Tabulated `d_i` for the local windows `(u_{i-1}, u_i)` and `(v_{i-1}, v_i)`.
pub fn d_table_entry(i: usize, u_window: (u8, u8), v_window: (u8, u8), kind: LambdaKind) -> i8 {
    let table = match (i, kind) {
        (0, LambdaKind::Rd) => &D_TABLE_FIRST_REDUCIBLE,
        (0, LambdaKind::Id) => &D_TABLE_FIRST_IRREDUCIBLE,
        _ => &D_TABLE_INNER,
    };
    table[window_index(v_window)][window_index(u_window)]
}

/// `w_i = u_i + v_i mod 2`, after confirming the linear part has the shape `Σ x^{i + w_i f} x_i`.
pub fn w_of(u: &BitTuple, v: &BitTuple, kind: LambdaKind) -> Result<BitTuple> {
    let f = v.len();
    let w = BitTuple::new(
        u.bits()
            .iter()
            .zip(v.bits())
            .map(|(a, b)| (a + b) % 2)
            .collect(),
    )?;
    let expected = (0..f).fold(RestrictedPoly::zero(f), |acc, i| {
        acc + RestrictedPoly::var_term(f, i, (i + w.bits()[i] as usize * f) as u32, 1)
    });
    let actual = psi_exponent_symbolic(u, v, kind)?.linear_part();
    if actual != expected {
        return Err(Error::ShapeViolation(format!(
            "linear part for u={u}, v={v} is {actual}, expected {expected}"
        )));
    }
    Ok(w)
}

/// `d` read from the tables, after confirming the constant part is `Σ d_i x^i - Σ d_i x^{i+f}`.
pub fn d_of(u: &BitTuple, v: &BitTuple, kind: LambdaKind) -> Result<SignTuple> {
    let f = v.len();
    let d: Vec<i8> = (0..f)
        .map(|i| {
            let prev = i as isize - 1;
            d_table_entry(
                i,
                (u.at(prev), u.at(i as isize)),
                (v.at(prev), v.at(i as isize)),
                kind,
            )
        })
        .collect();
    let expected = d
        .iter()
        .enumerate()
        .fold(RestrictedPoly::zero(f), |acc, (i, &di)| {
            acc + RestrictedPoly::monomial(f, i as u32, di as i64)
                - RestrictedPoly::monomial(f, (i + f) as u32, di as i64)
        });
    let actual = psi_exponent_symbolic(u, v, kind)?.constant_part();
    if actual != expected {
        return Err(Error::ShapeViolation(format!(
            "constant part for u={u}, v={v} is {actual}, expected {expected}"
        )));
    }
    SignTuple::new(d)
}

/// Symbolic data for one `(u, v)` pair, shared across parameters with the same `(f, kind)`.
struct PairSymbols {
    u: BitTuple,
    v: BitTuple,
    digits: Vec<RestrictedPoly>,
    exponent: RestrictedPoly,
}

type SymbolCache = Mutex<HashMap<(usize, bool), Arc<Vec<PairSymbols>>>>;

fn pair_symbols(f: usize, kind: LambdaKind) -> Result<Arc<Vec<PairSymbols>>> {
    static CACHE: OnceLock<SymbolCache> = OnceLock::new();
    let key = (f, kind == LambdaKind::Id);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("symbol cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let mut entries = Vec::with_capacity(1 << (2 * f));
    for u in BitTuple::all(f) {
        for v in BitTuple::all(f) {
            entries.push(PairSymbols {
                digits: c_uv(&u, &v, kind),
                exponent: psi_exponent_symbolic(&u, &v, kind)?,
                u: u.clone(),
                v,
            });
        }
    }
    let entries = Arc::new(entries);
    cache
        .lock()
        .expect("symbol cache poisoned")
        .insert(key, entries.clone());
    Ok(entries)
}

fn psi_from_symbols(rho: &RhoBar, sym: &PairSymbols) -> Result<CharQuad> {
    let split = rho.semisimplification();
    let field = rho.field();
    let r = rho.r_signed();
    let p = field.p() as i64;
    let mut digits = Vec::with_capacity(rho.f());
    for (i, ci) in sym.digits.iter().enumerate() {
        let value = to_i64(ci.evaluate(&r, p)?)?;
        if !(0..p).contains(&value) {
            return Err(Error::DigitRange(format!(
                "c_{i} = {value} for u={}, v={} at {}",
                sym.u,
                sym.v,
                rho.describe()
            )));
        }
        digits.push(value as u64);
    }
    let raw = to_i64(sym.exponent.evaluate(&r, p)?)?;
    let twist = (field.q() + 1) as i64 * rho.twist() as i64;
    let psi = bc_decompose(raw + twist, field)?;
    if psi.c_digits() != digits.as_slice() {
        return Err(Error::Internal(format!(
            "exponent of psi_(u={}, v={}) has c-digits {:?}, expected {:?}",
            sym.u,
            sym.v,
            psi.c_digits(),
            digits
        )));
    }
    if !p_theta(&psi).contains(&sym.u) {
        return Err(Error::InadmissibleTuple {
            u: sym.u.to_string(),
            exponent: psi.exponent(),
        });
    }
    if jh_factor(&psi, &sym.u)? != sigma_v(&split, &sym.v)? {
        return Err(Error::Internal(format!(
            "factor u={} of {psi} differs from sigma_v for v={}",
            sym.u, sym.v
        )));
    }
    Ok(psi)
}

/// `ψ_{u,v}` for the semisimplification of `rho`.
pub fn psi_uv(rho: &RhoBar, u: &BitTuple, v: &BitTuple) -> Result<CharQuad> {
    let f = rho.f();
    if u.len() != f || v.len() != f {
        return Err(Error::InvalidParameter(format!(
            "u and v must have f = {f} entries"
        )));
    }
    let sym = PairSymbols {
        u: u.clone(),
        v: v.clone(),
        digits: c_uv(u, v, rho.lambda_kind()),
        exponent: psi_exponent_symbolic(u, v, rho.lambda_kind())?,
    };
    psi_from_symbols(rho, &sym)
}

/// All `(u, v, ψ_{u,v})` for the semisimplification of `rho`.
pub fn all_psi_uv(rho: &RhoBar) -> Result<Vec<(BitTuple, BitTuple, CharQuad)>> {
    pair_symbols(rho.f(), rho.lambda_kind())?
        .iter()
        .map(|sym| Ok((sym.u.clone(), sym.v.clone(), psi_from_symbols(rho, sym)?)))
        .collect()
}

/// The admissibility relations between `w` and `d`. Split and nonsplit share the `Rd` relations.
pub fn wd_relations(w: &BitTuple, d: &SignTuple, kind: LambdaKind) -> bool {
    let f = w.len();
    if d.len() != f {
        return false;
    }
    let inner = (1..f).all(|i| match d.signs()[i] {
        -1 => w.bits()[i] == 1,
        1 => w.bits()[i] == 0,
        _ => w.bits()[i - 1] == w.bits()[i],
    });
    let (last, first) = (w.at(-1), w.at(0));
    let slot0 = match (kind, d.signs()[0]) {
        (LambdaKind::Rd, -1) => first == 1,
        (LambdaKind::Rd, 1) => first == 0,
        (LambdaKind::Rd, _) => last != first,
        (LambdaKind::Id, -1) => (last, first) == (1, 1),
        (LambdaKind::Id, 1) => (last, first) == (0, 0),
        (LambdaKind::Id, _) => true,
    };
    inner && slot0
}

/// Every `w` admissible for `d`.
pub fn solve_w(d: &SignTuple, kind: LambdaKind) -> Vec<BitTuple> {
    BitTuple::all(d.len())
        .filter(|w| wd_relations(w, d, kind))
        .collect()
}

/// `ψ_{w,d}` with exponent `Σ q^{w_i} p^i r_i + (1-q) Σ d_i p^i`, twisted.
pub fn psi_from_wd(rho: &RhoBar, w: &BitTuple, d: &SignTuple) -> Result<CharQuad> {
    if w.len() != rho.f() || !wd_relations(w, d, rho.lambda_kind()) {
        return Err(Error::RelationViolation {
            w: w.to_string(),
            d: d.to_string(),
        });
    }
    let field = rho.field();
    let q = field.q() as i64;
    let digit_part: i64 = rho
        .r()
        .iter()
        .enumerate()
        .map(|(i, &ri)| {
            let qw = if w.bits()[i] == 1 { q } else { 1 };
            qw * field.p_pow(i) * ri as i64
        })
        .sum();
    let sign_part = field.radix_sum(&d.signs().iter().map(|&di| di as i64).collect::<Vec<_>>());
    let exponent = digit_part + (1 - q) * sign_part + (q + 1) * rho.twist() as i64;
    bc_decompose(exponent, field)
}

/// `U_v`: the tuples `u` that can witness the stratum of `v`.
pub fn u_set(v: &BitTuple) -> Vec<BitTuple> {
    let f = v.len();
    let parity = |n: i64| n.rem_euclid(2);
    BitTuple::all(f)
        .filter(|u| {
            let (uf, u0) = (u.at(-1) as i64, u.at(0) as i64);
            let (vf, v0) = (v.at(-1) as i64, v.at(0) as i64);
            let wrap = vf == 0 || parity(uf - u0) == parity(vf - v0 + 1);
            let inner = (1..f).all(|i| {
                let (ua, ub) = (u.bits()[i - 1] as i64, u.bits()[i] as i64);
                let (va, vb) = (v.bits()[i - 1] as i64, v.bits()[i] as i64);
                va == 0 || parity(ua - ub) == parity(va - vb)
            });
            wrap && inner
        })
        .collect()
}

fn require_reducible(rho: &RhoBar) -> Result<RhoBar> {
    if !rho.is_reducible() {
        return Err(Error::InvalidParameter(
            "strata are defined for reducible parameters only".into(),
        ));
    }
    Ok(rho.semisimplification())
}

fn sorted_unique(chars: impl IntoIterator<Item = CharQuad>) -> Vec<CharQuad> {
    chars
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// The stratum `W_D^v` of the semisimplification, sorted by exponent.
pub fn stratum(rho: &RhoBar, v: &BitTuple) -> Result<Vec<CharQuad>> {
    let split = require_reducible(rho)?;
    let chars = u_set(v)
        .iter()
        .map(|u| psi_uv(&split, u, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted_unique(chars))
}

/// `W_{D,v}`: every `ψ_{u,v}` for fixed `v`, sorted by exponent.
pub fn w_d_v(rho: &RhoBar, v: &BitTuple) -> Result<Vec<CharQuad>> {
    let split = require_reducible(rho)?;
    let chars = BitTuple::all(rho.f())
        .map(|u| psi_uv(&split, &u, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted_unique(chars))
}

/// Every stratum of the semisimplification, keyed by `v`.
pub fn strata(rho: &RhoBar) -> Result<BTreeMap<BitTuple, Vec<CharQuad>>> {
    BitTuple::all(rho.f())
        .map(|v| stratum(rho, &v).map(|s| (v, s)))
        .collect()
}

/// Number of admissible `w` for `d` (irreducible case), read off the case list
/// attached to the irreducible theorem rather than solved for.
pub fn irreducible_solution_count(d: &SignTuple) -> usize {
    let signs = d.signs();
    match signs[0] {
        0 => 2,
        d0 => {
            let last_nonzero = (1..signs.len()).rev().find(|&i| signs[i] != 0);
            match last_nonzero {
                Some(i) if signs[i] == -d0 => 0,
                _ => 1,
            }
        }
    }
}

/// Size of `W_D(ρ̄)` predicted by the counting results.
pub fn predicted_count(rho: &RhoBar) -> u64 {
    let f = rho.f() as u32;
    match rho.kind() {
        RhoKind::ReducibleSplit => 3u64.pow(f) - 1,
        RhoKind::ReducibleNonsplit => {
            let ell = rho.v_rho().map_or(0, BitTuple::ell) as u32;
            3u64.pow(ell) * 2u64.pow(f - ell)
        }
        RhoKind::Irreducible => SignTuple::all(rho.f())
            .map(|d| irreducible_solution_count(&d) as u64)
            .sum(),
    }
}

fn witness_index(rho: &RhoBar) -> Result<BTreeMap<u64, Vec<(BitTuple, BitTuple)>>> {
    let mut index: BTreeMap<u64, Vec<(BitTuple, BitTuple)>> = BTreeMap::new();
    for (u, v, psi) in all_psi_uv(rho)? {
        index.entry(psi.exponent()).or_default().push((u, v));
    }
    for pairs in index.values_mut() {
        pairs.sort();
    }
    Ok(index)
}

fn semisimple_certificates(rho: &RhoBar) -> Result<Vec<WeightCertificate>> {
    let kind = rho.lambda_kind();
    let mut witnesses = witness_index(rho)?;
    let mut certs: BTreeMap<u64, WeightCertificate> = BTreeMap::new();
    for d in SignTuple::all(rho.f()) {
        for w in solve_w(&d, kind) {
            let psi = psi_from_wd(rho, &w, &d)?;
            let exponent = psi.exponent();
            let pairs = witnesses.remove(&exponent).ok_or_else(|| {
                if certs.contains_key(&exponent) {
                    Error::Internal(format!(
                        "(w, d) -> psi is not injective at exponent {exponent}"
                    ))
                } else {
                    Error::Internal(format!(
                        "psi_(w={w}, d={d}) = {exponent} has no (u, v) witness for {}",
                        rho.describe()
                    ))
                }
            })?;
            let stratum_v = if rho.is_reducible() {
                let owners: BTreeSet<&BitTuple> = pairs
                    .iter()
                    .filter(|(u, v)| u_set(v).contains(u))
                    .map(|(_, v)| v)
                    .collect();
                match owners.into_iter().collect::<Vec<_>>().as_slice() {
                    [v] => Some((*v).clone()),
                    other => {
                        return Err(Error::Internal(format!(
                            "exponent {exponent} lies in {} strata",
                            other.len()
                        )))
                    }
                }
            } else {
                None
            };
            certs.insert(
                exponent,
                WeightCertificate {
                    psi,
                    w,
                    d: d.clone(),
                    stratum_v,
                    witnesses: pairs,
                },
            );
        }
    }
    if let Some(extra) = witnesses.keys().next() {
        return Err(Error::Internal(format!(
            "psi_(u, v) exponent {extra} is not produced by any admissible (w, d)"
        )));
    }
    Ok(certs.into_values().collect())
}

/// `W_D(ρ̄)` by the explicit theorems, sorted by exponent, with certificates.
pub fn enumerate_wd(rho: &RhoBar) -> Result<Vec<WeightCertificate>> {
    let Some(v_rho) = rho.v_rho() else {
        return semisimple_certificates(rho);
    };
    let split = rho.semisimplification();
    let by_strata: BTreeSet<u64> = BitTuple::all(rho.f())
        .filter(|v| v.leq(v_rho))
        .map(|v| stratum(&split, &v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .map(|psi| psi.exponent())
        .collect();
    let direct: BTreeSet<u64> = BitTuple::all(rho.f())
        .filter(|v| v.leq(v_rho))
        .map(|v| w_d_v(&split, &v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .map(|psi| psi.exponent())
        .collect();
    if by_strata != direct {
        return Err(Error::Internal(format!(
            "stratum union and W_D,v union disagree for {}",
            rho.describe()
        )));
    }
    let certs: Vec<WeightCertificate> = semisimple_certificates(&split)?
        .into_iter()
        .filter(|cert| by_strata.contains(&cert.psi.exponent()))
        .map(|mut cert| {
            cert.witnesses.retain(|(_, v)| v.leq(v_rho));
            cert
        })
        .collect();
    if certs.len() != by_strata.len()
        || certs
            .iter()
            .any(|c| !c.stratum_v.as_ref().is_some_and(|v| v.leq(v_rho)))
    {
        return Err(Error::Internal(format!(
            "nonsplit strata inconsistent with the split certificates for {}",
            rho.describe()
        )));
    }
    Ok(certs)
}

/// Exponent of a certificate's character evaluated directly from its `(w, d)`,
/// for re-validation outside the enumeration.
pub fn certificate_exponent(rho: &RhoBar, cert: &WeightCertificate) -> Result<u64> {
    Ok(psi_from_wd(rho, &cert.w, &cert.d)?.exponent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn bt(bits: &[u8]) -> BitTuple {
        BitTuple::new(bits.to_vec()).unwrap()
    }

    fn st(signs: &[i8]) -> SignTuple {
        SignTuple::new(signs.to_vec()).unwrap()
    }

    fn x(f: usize) -> RestrictedPoly {
        RestrictedPoly::monomial(f, 1, 1)
    }

    fn int(f: usize, n: i64) -> RestrictedPoly {
        RestrictedPoly::int(f, n)
    }

    fn x0() -> RestrictedPoly {
        RestrictedPoly::var(1, 0)
    }

    fn split(p: u64, r: &[i64]) -> RhoBar {
        RhoBar::new(p, r.len(), RhoKind::ReducibleSplit, r, None, 0).unwrap()
    }

    #[test]
    fn c_and_t_examples() {
        let rd = LambdaKind::Rd;
        assert_eq!(
            c_uv(&bt(&[1]), &bt(&[0]), rd),
            vec![x(1) - int(1, 2) - x0()]
        );
        assert_eq!(
            t_uv(&bt(&[1]), &bt(&[0]), rd),
            vec![x(1) - int(1, 2) - x0()]
        );
        assert_eq!(c_uv(&bt(&[0]), &bt(&[0]), rd), vec![int(1, 1) + x0()]);
        assert_eq!(
            t_uv(&bt(&[0]), &bt(&[0]), rd),
            vec![RestrictedPoly::zero(1)]
        );
        for v in BitTuple::all(3) {
            let t = t_uv(&bt(&[0, 1, 0]), &v, rd);
            assert!(t[0].is_zero() && t[2].is_zero());
        }
    }

    #[test]
    fn b_examples() {
        let rd = LambdaKind::Rd;
        assert_eq!(b_uv(&bt(&[1]), &bt(&[0]), rd).unwrap(), x0());
        assert_eq!(b_uv(&bt(&[0]), &bt(&[0]), rd).unwrap(), int(1, -1));
        assert_eq!(
            b_uv(&bt(&[0, 0, 0]), &bt(&[0, 0, 0]), rd).unwrap(),
            int(3, -1)
        );
    }

    #[test]
    fn psi_exponent_examples() {
        let rd = LambdaKind::Rd;
        let first = psi_exponent_symbolic(&bt(&[1]), &bt(&[0]), rd).unwrap();
        assert_eq!(
            first,
            RestrictedPoly::var_term(1, 0, 1, 1) + x(1) - int(1, 1)
        );
        assert_eq!(first.evaluate(&[1], 5).unwrap(), BigInt::from(9));
        let second = psi_exponent_symbolic(&bt(&[0]), &bt(&[0]), rd).unwrap();
        assert_eq!(second, x0() - x(1) + int(1, 1));
    }

    #[test]
    fn w_and_d_examples() {
        let rd = LambdaKind::Rd;
        assert_eq!(w_of(&bt(&[1]), &bt(&[0]), rd).unwrap(), bt(&[1]));
        assert_eq!(
            w_of(&bt(&[1, 0, 1]), &bt(&[1, 0, 1]), rd).unwrap(),
            bt(&[0, 0, 0])
        );
        assert_eq!(w_of(&bt(&[0, 1]), &bt(&[1, 1]), rd).unwrap(), bt(&[1, 0]));

        assert_eq!(d_table_entry(1, (0, 1), (0, 0), rd), -1);
        assert_eq!(d_table_entry(0, (0, 0), (0, 0), rd), 1);
        for uw in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(d_table_entry(0, uw, (1, 0), LambdaKind::Id), 0);
        }
        assert_eq!(d_of(&bt(&[1]), &bt(&[0]), rd).unwrap(), st(&[-1]));
    }

    #[test]
    fn psi_uv_examples() {
        let rho = split(5, &[1]);
        let a = psi_uv(&rho, &bt(&[1]), &bt(&[0])).unwrap();
        assert_eq!((a.exponent(), a.b(), a.c()), (9, 1, 2));
        assert_eq!(psi_uv(&rho, &bt(&[0]), &bt(&[1])).unwrap().exponent(), 9);
        assert_eq!(psi_uv(&rho, &bt(&[0]), &bt(&[0])).unwrap().exponent(), 21);
    }

    #[test]
    fn relation_examples() {
        let rd = LambdaKind::Rd;
        assert!(wd_relations(&bt(&[1]), &st(&[-1]), rd));
        for f in 1..=4 {
            for w in BitTuple::all(f) {
                assert!(!wd_relations(&w, &SignTuple::zeros(f), rd));
            }
        }
        assert!(wd_relations(&bt(&[0]), &st(&[0]), LambdaKind::Id));
        assert!(wd_relations(&bt(&[1]), &st(&[0]), LambdaKind::Id));
    }

    #[test]
    fn psi_from_wd_examples() {
        let rho = split(5, &[1]);
        assert_eq!(
            psi_from_wd(&rho, &bt(&[1]), &st(&[-1])).unwrap().exponent(),
            9
        );
        assert_eq!(
            psi_from_wd(&rho, &bt(&[0]), &st(&[1])).unwrap().exponent(),
            21
        );
        let rho = split(5, &[1, 1]);
        assert_eq!(
            psi_from_wd(&rho, &bt(&[0, 0]), &st(&[1, 0]))
                .unwrap()
                .exponent(),
            606
        );
        assert!(matches!(
            psi_from_wd(&rho, &bt(&[1, 0]), &st(&[1, 0])),
            Err(Error::RelationViolation { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        let exps = |rho: &RhoBar| -> Vec<u64> {
            enumerate_wd(rho)
                .unwrap()
                .iter()
                .map(|c| c.psi.exponent())
                .collect()
        };
        assert_eq!(exps(&split(5, &[1])), vec![9, 21]);
        assert_eq!(exps(&split(5, &[1, 2])).len(), 8);
        let irr = RhoBar::new(5, 1, RhoKind::Irreducible, &[2], None, 0).unwrap();
        assert_eq!(exps(&irr).len(), 4);
    }

    #[test]
    fn u_set_examples() {
        assert_eq!(u_set(&bt(&[0])), vec![bt(&[0]), bt(&[1])]);
        assert!(u_set(&bt(&[1])).is_empty());
        assert!(u_set(&bt(&[1, 1])).is_empty());
    }

    #[test]
    fn strata_examples() {
        let rho = split(5, &[1]);
        let s: Vec<u64> = stratum(&rho, &bt(&[0]))
            .unwrap()
            .iter()
            .map(|c| c.exponent())
            .collect();
        assert_eq!(s, vec![9, 21]);
        assert!(stratum(&rho, &bt(&[1])).unwrap().is_empty());
        let rho = split(7, &[2, 1, 3]);
        for v in BitTuple::all(3) {
            let size = stratum(&rho, &v).unwrap().len();
            if v.ell() < 3 {
                assert_eq!(size, 1 << (3 - v.ell()));
            }
        }
    }

    #[test]
    fn irreducible_taxonomy_small_cases() {
        assert_eq!(irreducible_solution_count(&st(&[0])), 2);
        assert_eq!(irreducible_solution_count(&st(&[1])), 1);
        assert_eq!(irreducible_solution_count(&st(&[1, -1])), 0);
        assert_eq!(irreducible_solution_count(&st(&[-1, -1, 0])), 1);
    }

    #[test]
    fn strata_reject_irreducible() {
        let irr = RhoBar::new(5, 1, RhoKind::Irreducible, &[2], None, 0).unwrap();
        assert!(stratum(&irr, &bt(&[0])).is_err());
    }
}
