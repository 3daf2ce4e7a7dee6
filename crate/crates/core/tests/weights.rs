use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use qsw_core::cuspidal::{bc_decompose, is_type_one, jh_set, p_theta, CharQuad};
use qsw_core::gl2weights::{e_lambda, e_lambda_via_s, lambda_tuple, sigma_v, w_gl2};
use qsw_core::oracle::{generic_parameters, validate_certificate, w_d_oracle};
use qsw_core::quaternionic::{all_psi_uv, d_of, enumerate_wd, stratum, w_d_v, w_of};
use qsw_core::{BitTuple, Error, FieldSize, LambdaKind, RestrictedPoly, RhoBar, RhoKind};

const KINDS: [LambdaKind; 2] = [LambdaKind::Rd, LambdaKind::Id];

fn field(p: u64, f: usize) -> FieldSize {
    FieldSize::new(p, f).unwrap()
}

/// `(reflected, offset)` with `λ = offset + x_i` or `λ = x + offset - x_i`.
fn classify(entry: &RestrictedPoly, f: usize, i: usize) -> (bool, i64) {
    let xi = RestrictedPoly::var(f, i);
    let x = RestrictedPoly::monomial(f, 1, 1);
    let plain = entry.clone() - xi.clone();
    if plain.linear_part().is_zero() && plain.x_degree().is_none_or(|d| d == 0) {
        return (false, i64::try_from(plain.coeff_c(0)).unwrap());
    }
    let reflected = entry.clone() + xi - x;
    assert!(reflected.linear_part().is_zero() && reflected.x_degree().is_none_or(|d| d == 0));
    (true, i64::try_from(reflected.coeff_c(0)).unwrap())
}

#[test]
fn lambda_tuples_obey_adjacency() {
    for f in 1..=5 {
        for kind in KINDS {
            let mut seen = HashSet::new();
            for v in BitTuple::all(f) {
                let lambda = lambda_tuple(&v, kind);
                let classes: Vec<(bool, i64)> =
                    (0..f).map(|i| classify(&lambda[i], f, i)).collect();
                for (i, &(reflected, offset)) in classes.iter().enumerate() {
                    // the reflection flag records v_i, the offset records v_{i-1}
                    assert_eq!(reflected, v.bits()[i] == 1, "v={v} i={i}");
                    let prev_set = v.at(i as isize - 1) == 1;
                    let wraps_id = kind == LambdaKind::Id && i == 0;
                    let expected = match (reflected, prev_set, wraps_id) {
                        (false, false, _) => 0,
                        (false, true, false) => 1,
                        (false, true, true) => -1,
                        (true, false, _) => -2,
                        (true, true, false) => -3,
                        (true, true, true) => -1,
                    };
                    assert_eq!(offset, expected, "v={v} i={i} {kind:?}");
                }
                assert!(seen.insert(classes), "λ_v not injective in v");
            }
        }
    }
}

#[test]
fn e_lambda_routes_agree() {
    for f in 1..=6 {
        for kind in KINDS {
            for v in BitTuple::all(f) {
                assert_eq!(
                    e_lambda(&v, kind).unwrap(),
                    e_lambda_via_s(&v, kind).unwrap(),
                    "v={v}"
                );
            }
        }
    }
}

#[test]
fn serre_weights_are_distinct_with_digits_in_range() {
    for (p, f) in [(5, 1), (5, 2), (7, 2), (7, 3)] {
        for kind in [RhoKind::ReducibleSplit, RhoKind::Irreducible] {
            for rho in generic_parameters(field(p, f), kind, &[0]).unwrap() {
                let weights = w_gl2(&rho).unwrap();
                assert_eq!(weights.len(), 1 << f);
                let distinct: BTreeSet<_> = weights.values().collect();
                assert_eq!(distinct.len(), 1 << f, "{}", rho.describe());
                for w in weights.values() {
                    assert!(w.r.iter().all(|&ri| ri < p) && w.a < field(p, f).q_minus_one());
                }
            }
        }
    }
}

#[test]
fn nonsplit_restricts_sigma_v() {
    let v_rho = BitTuple::new(vec![1, 0]).unwrap();
    let rho = RhoBar::new(7, 2, RhoKind::ReducibleNonsplit, &[2, 3], Some(v_rho), 0).unwrap();
    assert_eq!(w_gl2(&rho).unwrap().len(), 2);
    let bad = BitTuple::new(vec![0, 1]).unwrap();
    assert!(matches!(
        sigma_v(&rho, &bad),
        Err(Error::StratumViolation { .. })
    ));
}

#[test]
fn bc_decomposition_is_unique() {
    for (p, f) in [(3, 1), (5, 1), (5, 2), (7, 1), (3, 3)] {
        let k = field(p, f);
        let q = k.q();
        let m = k.q2_minus_one();
        let mut hits = vec![0u32; m as usize];
        for b in 0..q - 1 {
            for c in 0..q {
                hits[(((q + 1) * b + 1 + c) % m) as usize] += 1;
            }
        }
        for e in 0..m {
            let expected = u32::from(is_type_one(e as i64, q));
            assert_eq!(hits[e as usize], expected, "p={p} f={f} e={e}");
            if expected == 1 {
                let psi = bc_decompose(e as i64, k).unwrap();
                assert_eq!(((q + 1) * psi.b() + 1 + psi.c()) % m, e);
            } else {
                assert!(matches!(
                    bc_decompose(e as i64, k),
                    Err(Error::NotTypeOne { .. })
                ));
            }
        }
    }
}

#[test]
fn p_theta_sizes() {
    for (p, f) in [(5, 1), (5, 2), (7, 2), (3, 3)] {
        let k = field(p, f);
        for b in [0, 1] {
            for c in 0..k.q() {
                let psi = CharQuad::from_bc(b, c, k).unwrap();
                let n = p_theta(&psi).len();
                assert!((1..=1 << f).contains(&n), "c={c}: {n}");
                if psi.c_digits().iter().all(|&d| d != 0 && d != p - 1) {
                    assert_eq!(n, 1 << f);
                }
                let jh = jh_set(&psi).unwrap();
                assert!(jh.len() <= n);
                assert!(jh.iter().all(|w| w.r.iter().all(|&ri| ri < p)));
            }
        }
    }
}

#[test]
fn symbolic_readers_accept_every_pair() {
    for f in 1..=4 {
        for kind in KINDS {
            for u in BitTuple::all(f) {
                for v in BitTuple::all(f) {
                    w_of(&u, &v, kind).unwrap();
                    d_of(&u, &v, kind).unwrap();
                }
            }
        }
    }
}

#[test]
fn certificates_and_witnesses() {
    for (p, f) in [(5, 2), (7, 2), (5, 3)] {
        for kind in RhoKind::ALL {
            for rho in generic_parameters(field(p, f), kind, &[0, 2])
                .unwrap()
                .iter()
                .step_by(3)
            {
                let certs = enumerate_wd(rho).unwrap();
                for cert in &certs {
                    validate_certificate(rho, cert).unwrap();
                }
                if kind == RhoKind::ReducibleNonsplit {
                    continue;
                }
                let from_pairs: BTreeSet<u64> = all_psi_uv(rho)
                    .unwrap()
                    .into_iter()
                    .map(|(_, _, psi)| psi.exponent())
                    .collect();
                let from_wd: BTreeSet<u64> = certs.iter().map(|c| c.psi.exponent()).collect();
                assert_eq!(from_pairs, from_wd, "{}", rho.describe());
            }
        }
    }
}

#[test]
fn stratum_minimality() {
    // if psi lies in the stratum of v and in W_{D,v'} then v <= v'
    for (p, f) in [(5, 2), (7, 2), (5, 3)] {
        for rho in generic_parameters(field(p, f), RhoKind::ReducibleSplit, &[0]).unwrap() {
            for v in BitTuple::all(f) {
                let own: BTreeSet<u64> = stratum(&rho, &v)
                    .unwrap()
                    .iter()
                    .map(|c| c.exponent())
                    .collect();
                for v2 in BitTuple::all(f) {
                    let meets = w_d_v(&rho, &v2)
                        .unwrap()
                        .iter()
                        .any(|c| own.contains(&c.exponent()));
                    assert!(!meets || v.leq(&v2), "{} v={v} v'={v2}", rho.describe());
                }
            }
        }
    }
}

#[test]
fn irreducible_parameters_have_no_strata() {
    let rho = RhoBar::new(5, 1, RhoKind::Irreducible, &[2], None, 0).unwrap();
    assert!(matches!(
        stratum(&rho, &BitTuple::zeros(1)),
        Err(Error::InvalidParameter(_))
    ));
    assert!(enumerate_wd(&rho)
        .unwrap()
        .iter()
        .all(|c| c.stratum_v.is_none()));
}

fn shifted(chars: &[CharQuad], a: u64) -> BTreeSet<u64> {
    chars
        .iter()
        .map(|c| c.twisted(a as i64).exponent())
        .collect()
}

fn generic_rho(p: u64, f: usize) -> impl Strategy<Value = RhoBar> {
    let k = field(p, f);
    let params: Vec<RhoBar> = RhoKind::ALL
        .iter()
        .flat_map(|&kind| generic_parameters(k, kind, &[0]).unwrap())
        .collect();
    prop::sample::select(params)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twist_equivariance(rho in generic_rho(7, 2), a in 0u64..48) {
        let twisted = rho.with_twist(a as i64);
        let base_oracle = w_d_oracle(&rho).unwrap();
        let oracle: BTreeSet<u64> = w_d_oracle(&twisted).unwrap().iter().map(|c| c.exponent()).collect();
        prop_assert_eq!(&oracle, &shifted(&base_oracle, a));
        let base: Vec<CharQuad> = enumerate_wd(&rho).unwrap().into_iter().map(|c| c.psi).collect();
        let theorem: BTreeSet<u64> = enumerate_wd(&twisted).unwrap().iter().map(|c| c.psi.exponent()).collect();
        prop_assert_eq!(&theorem, &shifted(&base, a));
    }

    #[test]
    fn twisted_weights_shift_determinant(rho in generic_rho(5, 3), a in 0u64..124) {
        let base = w_gl2(&rho).unwrap();
        let twisted = w_gl2(&rho.with_twist(a as i64)).unwrap();
        for (v, w) in &base {
            prop_assert_eq!(&twisted[v].r, &w.r);
            prop_assert_eq!(twisted[v].a, (w.a + a) % 124);
        }
    }
}
