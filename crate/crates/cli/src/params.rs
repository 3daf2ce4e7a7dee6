use std::fs;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use qsw_core::{BitTuple, RhoBar, RhoKind};
use serde::Deserialize;

use crate::UsageError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub p: Option<u64>,
    pub f: Option<usize>,
    pub kind: Option<String>,
    pub r: Option<Vec<i64>>,
    pub v_rho: Option<Vec<u8>>,
    pub twist: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// JSON file {"p","f","kind","r","v_rho"?,"twist"?}; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Degree of the residue field over F_p; defaults to the length of r
    #[arg(long)]
    pub f: Option<usize>,
    /// Digits r_0,...,r_{f-1}
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r: Option<Vec<i64>>,
    /// reducible-split | reducible-nonsplit | irreducible
    #[arg(long)]
    pub kind: Option<String>,
    /// Bits of v_rho, as "0,1" or "01"
    #[arg(long = "v-rho")]
    pub v_rho: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<i64>,
}

pub fn parse_bits(s: &str) -> std::result::Result<Vec<u8>, String> {
    let cleaned: String = s
        .chars()
        .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
        .collect();
    cleaned
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(format!("expected bits 0/1, found {other:?}")),
        })
        .collect()
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

impl ParamArgs {
    pub fn resolve(&self) -> Result<RhoBar> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let p = self.p.or(file.p).ok_or_else(|| usage("p is required"))?;
        let r = self
            .r
            .clone()
            .or(file.r)
            .ok_or_else(|| usage("r is required"))?;
        let f = self.f.or(file.f).unwrap_or(r.len());
        let kind: RhoKind = self
            .kind
            .clone()
            .or(file.kind)
            .ok_or_else(|| usage("kind is required"))?
            .parse()?;
        let v_rho = self
            .v_rho
            .as_deref()
            .map(parse_bits)
            .transpose()
            .map_err(usage)?
            .or(file.v_rho)
            .map(BitTuple::new)
            .transpose()?;
        let twist = self.twist.or(file.twist).unwrap_or(0);
        Ok(RhoBar::new(p, f, kind, &r, v_rho, twist)?)
    }
}
