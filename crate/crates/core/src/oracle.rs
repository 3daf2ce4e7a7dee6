//! Brute-force `W_D(ρ̄)` and the differential harness against the explicit theorems.
//!
//! A type I character `ψ` is a quaternionic weight exactly when some
//! Jordan–Hölder factor of its reduced cuspidal type is a GL2 Serre weight of
//! `ρ̄`. The oracle scans all `q(q-1)` type I characters and tests that
//! condition directly. It uses `cuspidal` and `gl2weights` but nothing from
//! `quaternionic`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cuspidal::{bc_decompose, jh_set, p_theta, CharQuad};
use crate::error::{Error, Result};
use crate::field::FieldSize;
use crate::gl2weights::{w_gl2, GL2Weight, RhoBar, RhoKind};
use crate::quaternionic::{
    enumerate_wd, predicted_count, psi_from_wd, psi_uv, wd_relations, WeightCertificate,
};
use crate::tuple::BitTuple;

/// All type I characters, ordered lexicographically by `(b, c)`.
pub fn enumerate_type_one(field: FieldSize) -> Vec<CharQuad> {
    let q = field.q();
    (0..q - 1)
        .flat_map(|b| (0..q).map(move |c| (b, c)))
        .map(|(b, c)| CharQuad::from_bc(b, c, field).expect("(b, c) enumerated in range"))
        .collect()
}

fn shift_to_twist(chars: impl IntoIterator<Item = CharQuad>, twist: u64) -> Vec<CharQuad> {
    chars
        .into_iter()
        .map(|psi| psi.twisted(twist as i64))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `{ψ type I : JH(Θ̄(ψ)^ss) ∩ W_GL2(ρ̄) ≠ ∅}`, sorted by exponent.
pub fn w_d_oracle(rho: &RhoBar) -> Result<Vec<CharQuad>> {
    let normalized = rho.with_twist(0);
    let targets: HashSet<GL2Weight> = w_gl2(&normalized)?.into_values().collect();
    let field = rho.field();
    let q = field.q();
    let hits = (0..q - 1)
        .into_par_iter()
        .map(|b| -> Result<Vec<CharQuad>> {
            let mut found = Vec::new();
            for c in 0..q {
                let psi = CharQuad::from_bc(b, c, field)?;
                if jh_set(&psi)?.iter().any(|w| targets.contains(w)) {
                    found.push(psi);
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(shift_to_twist(hits.into_iter().flatten(), rho.twist()))
}

/// Inverted Jordan–Hölder index for one `(p, f)`: GL2 weight -> exponents of the
/// type I characters having it as a factor. Answers the same question as
/// [`w_d_oracle`] without rescanning all characters for every parameter.
pub struct OracleTable {
    field: FieldSize,
    index: HashMap<GL2Weight, Vec<u64>>,
}

impl OracleTable {
    pub fn build(field: FieldSize) -> Result<Self> {
        let q = field.q();
        let rows = (0..q - 1)
            .into_par_iter()
            .map(|b| -> Result<Vec<(GL2Weight, u64)>> {
                let mut rows = Vec::new();
                for c in 0..q {
                    let psi = CharQuad::from_bc(b, c, field)?;
                    for w in jh_set(&psi)? {
                        rows.push((w, psi.exponent()));
                    }
                }
                Ok(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut index: HashMap<GL2Weight, Vec<u64>> = HashMap::new();
        for (w, e) in rows.into_iter().flatten() {
            index.entry(w).or_default().push(e);
        }
        Ok(OracleTable { field, index })
    }

    pub fn field(&self) -> FieldSize {
        self.field
    }

    pub fn query(&self, rho: &RhoBar) -> Result<Vec<CharQuad>> {
        if rho.field() != self.field {
            return Err(Error::InvalidParameter(format!(
                "table built for p={} f={}, parameter has p={} f={}",
                self.field.p(),
                self.field.f(),
                rho.p(),
                rho.f()
            )));
        }
        let normalized = rho.with_twist(0);
        let exponents: BTreeSet<u64> = w_gl2(&normalized)?
            .values()
            .filter_map(|w| self.index.get(w))
            .flatten()
            .copied()
            .collect();
        let chars = exponents
            .into_iter()
            .map(|e| bc_decompose(e as i64, self.field))
            .collect::<Result<Vec<_>>>()?;
        Ok(shift_to_twist(chars, rho.twist()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub p: u64,
    pub f: usize,
    pub kind: RhoKind,
    pub r: Vec<u64>,
    pub v_rho: Option<BitTuple>,
    pub twist: u64,
    pub theorem: Vec<u64>,
    pub oracle: Vec<u64>,
    pub symmetric_difference: Vec<u64>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub count: usize,
    pub predicted_count: u64,
    pub count_matches_prediction: bool,
    pub witnesses_valid: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.matched && self.count_matches_prediction && self.witnesses_valid
    }
}

/// Re-derive every claim a certificate makes.
pub fn validate_certificate(rho: &RhoBar, cert: &WeightCertificate) -> Result<()> {
    let fail = |what: String| Err(Error::Internal(format!("certificate {}: {what}", cert.psi)));
    if !wd_relations(&cert.w, &cert.d, rho.lambda_kind()) {
        return fail(format!(
            "(w, d) = ({}, {}) is not admissible",
            cert.w, cert.d
        ));
    }
    if psi_from_wd(rho, &cert.w, &cert.d)? != cert.psi {
        return fail("closed form disagrees".into());
    }
    if cert.witnesses.is_empty() {
        return fail("no witnesses".into());
    }
    for (u, v) in &cert.witnesses {
        if psi_uv(rho, u, v)? != cert.psi {
            return fail(format!("witness ({u}, {v}) yields another character"));
        }
        let parity_ok = (0..rho.f()).all(|i| cert.w.bits()[i] == (u.bits()[i] + v.bits()[i]) % 2);
        if !parity_ok {
            return fail(format!("w is not u + v mod 2 for witness ({u}, {v})"));
        }
        if !p_theta(&cert.psi).contains(u) {
            return fail(format!("witness u = {u} is not admissible"));
        }
    }
    match (&cert.stratum_v, rho.is_reducible()) {
        (Some(sv), true) if cert.witnesses.iter().any(|(_, v)| v == sv) => Ok(()),
        (None, false) => Ok(()),
        _ => fail("stratum tuple is not among the witnesses".into()),
    }
}

fn exponents(chars: &[CharQuad]) -> Vec<u64> {
    chars.iter().map(CharQuad::exponent).collect()
}

fn compare(rho: &RhoBar, certs: &[WeightCertificate], oracle: &[CharQuad]) -> Result<CheckReport> {
    let theorem: Vec<u64> = certs.iter().map(|c| c.psi.exponent()).collect();
    let oracle = exponents(oracle);
    let t: BTreeSet<u64> = theorem.iter().copied().collect();
    let o: BTreeSet<u64> = oracle.iter().copied().collect();
    let theorem_only: Vec<u64> = t.difference(&o).copied().collect();
    let oracle_only: Vec<u64> = o.difference(&t).copied().collect();
    if !theorem_only.is_empty() || !oracle_only.is_empty() {
        return Err(Error::MismatchDetected {
            context: rho.describe(),
            theorem_only,
            oracle_only,
        });
    }
    let witnesses_valid = certs.iter().all(|c| validate_certificate(rho, c).is_ok());
    let predicted = predicted_count(rho);
    Ok(CheckReport {
        p: rho.p(),
        f: rho.f(),
        kind: rho.kind(),
        r: rho.r().to_vec(),
        v_rho: rho.v_rho().cloned(),
        twist: rho.twist(),
        count: theorem.len(),
        count_matches_prediction: theorem.len() as u64 == predicted,
        predicted_count: predicted,
        symmetric_difference: Vec::new(),
        matched: true,
        theorem,
        oracle,
        witnesses_valid,
    })
}

/// Compare the theorem path with the brute-force oracle for one parameter.
pub fn cross_check(rho: &RhoBar) -> Result<CheckReport> {
    let certs = enumerate_wd(rho)?;
    let oracle = w_d_oracle(rho)?;
    compare(rho, &certs, &oracle)
}

/// [`cross_check`] against a prebuilt table.
pub fn cross_check_with(rho: &RhoBar, table: &OracleTable) -> Result<CheckReport> {
    let certs = enumerate_wd(rho)?;
    let oracle = table.query(rho)?;
    compare(rho, &certs, &oracle)
}

/// Every generic digit vector for `(field, kind)`, lexicographic.
pub fn generic_digits(field: FieldSize, kind: RhoKind) -> Vec<Vec<i64>> {
    let p = field.p() as i64;
    let f = field.f();
    let ranges: Vec<(i64, i64)> = (0..f)
        .map(|i| match (kind, i) {
            (RhoKind::Irreducible, 0) => (1, p - 2),
            _ => (0, p - 3),
        })
        .collect();
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
    loop {
        out.push(cur.clone());
        let mut i = f;
        loop {
            if i == 0 {
                return filter_generic(out, p, kind);
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                for j in i + 1..f {
                    cur[j] = ranges[j].0;
                }
                break;
            }
        }
    }
}

fn filter_generic(digits: Vec<Vec<i64>>, p: i64, kind: RhoKind) -> Vec<Vec<i64>> {
    match kind {
        RhoKind::Irreducible => digits,
        _ => digits
            .into_iter()
            .filter(|r| !r.iter().all(|&ri| ri == 0) && !r.iter().all(|&ri| ri == p - 3))
            .collect(),
    }
}

/// Every generic parameter of one `(p, f, kind)` configuration with the given twists.
pub fn generic_parameters(field: FieldSize, kind: RhoKind, twists: &[i64]) -> Result<Vec<RhoBar>> {
    let v_rhos: Vec<Option<BitTuple>> = match kind {
        RhoKind::ReducibleNonsplit => BitTuple::all(field.f())
            .filter(|v| !v.is_all_ones())
            .map(Some)
            .collect(),
        _ => vec![None],
    };
    let mut out = Vec::new();
    for r in generic_digits(field, kind) {
        for v_rho in &v_rhos {
            for &twist in twists {
                out.push(RhoBar::new(
                    field.p(),
                    field.f(),
                    kind,
                    &r,
                    v_rho.clone(),
                    twist,
                )?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub parameter: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub p: u64,
    pub f: usize,
    pub kind: RhoKind,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passed == self.checked
    }

    pub fn has_mismatch(&self) -> bool {
        !self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub twists: Vec<i64>,
    pub record_timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            twists: vec![0, 1],
            record_timing: false,
        }
    }
}

/// Cross-check every generic parameter of every `(p, f, kind)` combination.
///
/// Configurations that admit no generic parameter contribute an entry with
/// zero checks. Invalid `(p, f)` pairs are reported as errors.
pub fn sweep(
    p_list: &[u64],
    f_list: &[usize],
    kinds: &[RhoKind],
    options: &SweepOptions,
) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for &p in p_list {
        for &f in f_list {
            let field = FieldSize::new(p, f)?;
            let params: Vec<(RhoKind, Vec<RhoBar>)> = kinds
                .iter()
                .map(|&k| generic_parameters(field, k, &options.twists).map(|ps| (k, ps)))
                .collect::<Result<_>>()?;
            let table = if params.iter().any(|(_, ps)| !ps.is_empty()) {
                Some(OracleTable::build(field)?)
            } else {
                None
            };
            for (kind, rhos) in params {
                let start = Instant::now();
                let outcomes: Vec<(String, Result<CheckReport>)> = match &table {
                    Some(table) => rhos
                        .par_iter()
                        .map(|rho| (rho.describe(), cross_check_with(rho, table)))
                        .collect(),
                    None => Vec::new(),
                };
                let mut passed = 0;
                for (parameter, outcome) in outcomes {
                    match outcome {
                        Ok(check) if check.passed() => passed += 1,
                        Ok(check) => report.failures.push(SweepFailure {
                            parameter,
                            error: format!(
                                "count {} vs predicted {}, witnesses valid: {}",
                                check.count, check.predicted_count, check.witnesses_valid
                            ),
                        }),
                        Err(e) => report.failures.push(SweepFailure {
                            parameter,
                            error: e.to_string(),
                        }),
                    }
                }
                report.checked += rhos.len();
                report.passed += passed;
                report.entries.push(SweepEntry {
                    p,
                    f,
                    kind,
                    checked: rhos.len(),
                    passed,
                    failed: rhos.len() - passed,
                    elapsed_ms: options
                        .record_timing
                        .then(|| start.elapsed().as_millis() as u64),
                });
            }
        }
    }
    Ok(report)
}
