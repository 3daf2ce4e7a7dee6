use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use qsw_core::oracle::{cross_check, sweep, SweepOptions};
use qsw_core::quaternionic::{strata, w_d_v};
use qsw_core::{
    enumerate_wd, jh_factor, p_theta, w_d_oracle, w_gl2, BitTuple, CharQuad, Error, FieldSize,
    RhoBar, RhoKind, SignTuple, WeightCertificate,
};
use serde::Serialize;

use crate::{Mismatch, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theorem,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn opt_bits(v: Option<&BitTuple>) -> String {
    v.map_or_else(|| "-".into(), BitTuple::bitstring)
}

#[derive(Serialize)]
struct Parameter<'a> {
    p: u64,
    f: usize,
    kind: RhoKind,
    r: &'a [u64],
    v_rho: Option<&'a BitTuple>,
    twist: u64,
}

impl<'a> From<&'a RhoBar> for Parameter<'a> {
    fn from(rho: &'a RhoBar) -> Self {
        Parameter {
            p: rho.p(),
            f: rho.f(),
            kind: rho.kind(),
            r: rho.r(),
            v_rho: rho.v_rho(),
            twist: rho.twist(),
        }
    }
}

#[derive(Serialize)]
struct WeightRow {
    exponent: u64,
    b: u64,
    c: u64,
    w: Option<BitTuple>,
    d: Option<SignTuple>,
    stratum_v: Option<BitTuple>,
}

impl WeightRow {
    fn from_cert(cert: &WeightCertificate) -> Self {
        WeightRow {
            exponent: cert.psi.exponent(),
            b: cert.psi.b(),
            c: cert.psi.c(),
            w: Some(cert.w.clone()),
            d: Some(cert.d.clone()),
            stratum_v: cert.stratum_v.clone(),
        }
    }

    fn from_char(psi: &CharQuad) -> Self {
        WeightRow {
            exponent: psi.exponent(),
            b: psi.b(),
            c: psi.c(),
            w: None,
            d: None,
            stratum_v: None,
        }
    }

    fn tsv(&self) -> Vec<String> {
        vec![
            self.exponent.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            opt_bits(self.w.as_ref()),
            self.d
                .as_ref()
                .map_or_else(|| "-".into(), SignTuple::comma_signs),
            opt_bits(self.stratum_v.as_ref()),
        ]
    }
}

#[derive(Serialize)]
struct Verdict {
    #[serde(rename = "match")]
    matched: bool,
    oracle_count: usize,
}

#[derive(Serialize)]
struct WdOutput<'a> {
    parameter: Parameter<'a>,
    mode: Mode,
    count: usize,
    exponents: Vec<u64>,
    weights: Vec<WeightRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<Verdict>,
}

pub fn wd(rho: &RhoBar, mode: Mode, format: Format) -> Result<String> {
    let (weights, check) = match mode {
        Mode::Oracle => {
            let rows: Vec<WeightRow> = w_d_oracle(rho)?.iter().map(WeightRow::from_char).collect();
            (rows, None)
        }
        Mode::Theorem => (
            enumerate_wd(rho)?
                .iter()
                .map(WeightRow::from_cert)
                .collect(),
            None,
        ),
        Mode::Both => {
            let certs = enumerate_wd(rho)?;
            let oracle = w_d_oracle(rho)?;
            let theorem: BTreeSet<u64> = certs.iter().map(|c| c.psi.exponent()).collect();
            let brute: BTreeSet<u64> = oracle.iter().map(CharQuad::exponent).collect();
            if theorem != brute {
                return Err(Error::MismatchDetected {
                    context: rho.describe(),
                    theorem_only: theorem.difference(&brute).copied().collect(),
                    oracle_only: brute.difference(&theorem).copied().collect(),
                }
                .into());
            }
            let verdict = Verdict {
                matched: true,
                oracle_count: brute.len(),
            };
            (
                certs.iter().map(WeightRow::from_cert).collect(),
                Some(verdict),
            )
        }
    };
    match format {
        Format::Json => to_json(&WdOutput {
            parameter: rho.into(),
            mode,
            count: weights.len(),
            exponents: weights.iter().map(|w: &WeightRow| w.exponent).collect(),
            weights,
            check,
        }),
        Format::Tsv => Ok(tsv(
            &["exponent", "b", "c", "w", "d", "stratum_v"],
            weights.iter().map(WeightRow::tsv),
        )),
    }
}

#[derive(Serialize)]
struct Gl2Row {
    v: BitTuple,
    r: Vec<u64>,
    a: u64,
}

pub fn wgl2(rho: &RhoBar, format: Format) -> Result<String> {
    let rows: Vec<Gl2Row> = w_gl2(rho)?
        .into_iter()
        .map(|(v, w)| Gl2Row { v, r: w.r, a: w.a })
        .collect();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                parameter: Parameter<'a>,
                weights: Vec<Gl2Row>,
            }
            to_json(&Out {
                parameter: rho.into(),
                weights: rows,
            })
        }
        Format::Tsv => Ok(tsv(
            &["v", "r", "a"],
            rows.iter().map(|row| {
                let r: Vec<String> = row.r.iter().map(u64::to_string).collect();
                vec![row.v.bitstring(), r.join(","), row.a.to_string()]
            }),
        )),
    }
}

pub fn jh(p: u64, f: usize, b: u64, c: u64, format: Format) -> Result<String> {
    let field = FieldSize::new(p, f)?;
    let psi = CharQuad::from_bc(b, c, field)?;
    let rows = p_theta(&psi)
        .into_iter()
        .map(|u| {
            jh_factor(&psi, &u).map(|w| Gl2Row {
                v: u,
                r: w.r,
                a: w.a,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Factor<'a> {
                u: &'a BitTuple,
                r: &'a [u64],
                a: u64,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                p: u64,
                f: usize,
                b: u64,
                c: u64,
                exponent: u64,
                factors: Vec<Factor<'a>>,
            }
            to_json(&Out {
                p,
                f,
                b,
                c,
                exponent: psi.exponent(),
                factors: rows
                    .iter()
                    .map(|row| Factor {
                        u: &row.v,
                        r: &row.r,
                        a: row.a,
                    })
                    .collect(),
            })
        }
        Format::Tsv => Ok(tsv(
            &["u", "r", "a"],
            rows.iter().map(|row| {
                let r: Vec<String> = row.r.iter().map(u64::to_string).collect();
                vec![row.v.bitstring(), r.join(","), row.a.to_string()]
            }),
        )),
    }
}

pub fn strata_cmd(rho: &RhoBar, format: Format) -> Result<String> {
    if !rho.is_reducible() {
        return Err(UsageError("strata are only defined for reducible parameters".into()).into());
    }
    let all = strata(rho)?;
    let exps = |chars: &[CharQuad]| chars.iter().map(CharQuad::exponent).collect::<Vec<_>>();
    match format {
        Format::Json => {
            let map: BTreeMap<String, Vec<u64>> =
                all.iter().map(|(v, s)| (v.to_string(), exps(s))).collect();
            to_json(&map)
        }
        Format::Tsv => {
            let mut rows = Vec::new();
            for (v, s) in &all {
                let full = exps(&w_d_v(rho, v)?);
                let join = |xs: Vec<u64>| {
                    let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
                    parts.join(",")
                };
                rows.push(vec![v.bitstring(), join(exps(s)), join(full)]);
            }
            Ok(tsv(&["v", "stratum", "w_d_v"], rows))
        }
    }
}

pub fn check(rho: &RhoBar, format: Format) -> Result<(String, bool)> {
    let report = cross_check(rho)?;
    let passed = report.passed();
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Tsv => {
            let mut s = String::from("match\tcount\tpredicted_count\twitnesses_valid\n");
            writeln!(
                s,
                "{}\t{}\t{}\t{}",
                report.matched, report.count, report.predicted_count, report.witnesses_valid
            )?;
            s
        }
    };
    Ok((text, passed))
}

pub fn sweep_cmd(
    p_list: &[u64],
    f_list: &[usize],
    kinds: &[RhoKind],
    twists: &[i64],
    timing: bool,
    format: Format,
) -> Result<(String, bool)> {
    let options = SweepOptions {
        twists: twists.to_vec(),
        record_timing: timing,
    };
    let report = sweep(p_list, f_list, kinds, &options)?;
    let passed = report.all_passed();
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Tsv => tsv(
            &["p", "f", "kind", "checked", "passed", "failed"],
            report.entries.iter().map(|e| {
                vec![
                    e.p.to_string(),
                    e.f.to_string(),
                    e.kind.to_string(),
                    e.checked.to_string(),
                    e.passed.to_string(),
                    e.failed.to_string(),
                ]
            }),
        ),
    };
    Ok((text, passed))
}

pub fn fail_if(passed: bool) -> Result<()> {
    if passed {
        Ok(())
    } else {
        Err(Mismatch.into())
    }
}
