//! Quaternionic Serre weights for generic two-dimensional mod `p` parameters over
//! an unramified extension of `Q_p` of degree `f`.
//!
//! Two independent routes compute the weight set `W_D(ρ̄)`:
//!
//! * [`quaternionic::enumerate_wd`] uses the explicit `(w, d)` description and
//!   the stratification by GL2 weights, built on the exact symbolic calculus
//!   of [`symcore`].
//! * [`oracle::w_d_oracle`] scans every type I character of `l^×` and keeps
//!   those whose reduced cuspidal type shares a Jordan–Hölder factor with the
//!   GL2 Serre weights.
//!
//! [`oracle::cross_check`] and [`oracle::sweep`] compare the two.

pub mod cuspidal;
pub mod error;
pub mod field;
pub mod gl2weights;
pub mod oracle;
pub mod quaternionic;
pub mod symcore;
pub mod tuple;

pub use cuspidal::{bc_decompose, is_type_one, jh_factor, jh_set, p_theta, CharQuad};
pub use error::{Error, Result, SymError};
pub use field::FieldSize;
pub use gl2weights::{
    e_lambda, e_lambda_via_s, lambda_tuple, normalize_weight, sigma_v, w_gl2, GL2Weight,
    LambdaKind, RhoBar, RhoKind,
};
pub use oracle::{
    cross_check, enumerate_type_one, sweep, w_d_oracle, CheckReport, OracleTable, SweepOptions,
    SweepReport,
};
pub use quaternionic::{
    b_uv, c_uv, d_of, enumerate_wd, psi_exponent_symbolic, psi_from_wd, psi_uv, stratum, t_uv,
    u0_transform, u_set, w_d_v, w_of, wd_relations, WeightCertificate,
};
pub use symcore::RestrictedPoly;
pub use tuple::{BitTuple, SignTuple};
