use rand::seq::SliceRandom;
use rand::Rng;

use crate::differentials::{fmd, graded_class, plain_in_range, reassemble, GradedForm, Variant};
use crate::error::Result;
use crate::expr::{parse_residue, render_witt};
use crate::field::{FieldConfig, LaurentElem, LaurentRing, ResidueElem};
use crate::ramification::{
    kappa_n, kappa_n_lifted, rho_n, rho_n_lifted, swan, swan_modified, theta, CharacterClass,
    ConductorReport, ReductionConfig, RefinedModified, TheoremValue,
};
use crate::ring::Ring;
use crate::sample::{self, CoeffShape};
use crate::witt::{fil_level, fil_prime_membership, ord_p};

use super::curated::{conductor_suite, hand_values};
use super::differentials::random_normal_form;
use super::{laurent_ring, rng_for, run_check, CheckOutcome, Scale, Suite, Tally};

const PRIMES: [u64; 3] = [2, 3, 5];

fn rings_for(p: u64) -> Result<Vec<LaurentRing>> {
    [FieldConfig::perfect(p, 1), FieldConfig::rational(p, 1)]
        .into_iter()
        .map(laurent_ring)
        .collect()
}

fn psi(ring: &LaurentRing, chi: &CharacterClass, n: i64, variant: Variant) -> Result<GradedForm> {
    let omega = fmd(ring, chi.representative());
    Ok(graded_class(ring, &omega, n, variant)?.neg(ring.residue()))
}

/// Witt length m + 1 for a section at level n, occasionally one longer.
fn section_length<R: Rng>(rng: &mut R, p: u64, n: i64, variant: Variant) -> usize {
    let need = match variant {
        Variant::Log => ord_p(n as u64, p),
        Variant::Plain => ord_p(n as u64 + 1, p)
            .saturating_sub(1)
            .max(ord_p(n as u64, p)),
    } as usize;
    let cap = if p == 5 { 2 } else { 3 };
    if need < cap && rng.gen_bool(0.25) {
        need + 1
    } else {
        need
    }
}

fn section_roundtrip(
    scale: Scale,
    seed: u64,
    variant: Variant,
    salt: u64,
) -> impl FnOnce(&mut Tally) -> Result<()> {
    move |tally| {
        let cfg = ReductionConfig::default();
        for p in PRIMES {
            let rings = rings_for(p)?;
            let mut rng = rng_for(seed, salt + p);
            let target = tally.trials + scale.trials(200);
            while tally.trials < target {
                let ring = rings.choose(&mut rng).expect("rings are nonempty");
                let field = ring.residue();
                let n = rng.gen_range(1..=40i64);
                let r = match variant {
                    Variant::Log => ord_p(n as u64, p),
                    Variant::Plain => ord_p(n as u64 + 1, p).max(ord_p(n as u64, p)),
                };
                if r > 2 || (variant == Variant::Plain && !plain_in_range(p, n)) {
                    continue;
                }
                let Some(nf) = random_normal_form(&mut rng, field, n, variant) else {
                    continue;
                };
                let m = section_length(&mut rng, p, n, variant);
                let outcome = (|| -> Result<bool> {
                    let chi = match variant {
                        Variant::Log => rho_n(ring, &nf, m)?,
                        Variant::Plain => kappa_n(ring, &nf, m)?,
                    };
                    let in_fil = match variant {
                        Variant::Log => fil_level(chi.representative(), p) <= n,
                        Variant::Plain => fil_prime_membership(chi.representative(), p, n),
                    };
                    if !in_fil || psi(ring, &chi, n, variant)? != reassemble(field, &nf) {
                        return Ok(false);
                    }
                    let level = match variant {
                        Variant::Log => swan(&chi, &cfg)?,
                        Variant::Plain => swan_modified(&chi, &cfg)?,
                    };
                    Ok(level == n)
                })();
                tally.attempt(outcome, || format!("p = {p}, m = {m}, {nf:?}"));
            }
        }
        Ok(())
    }
}

pub fn check_rho_roundtrip(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "psi_n(rho_n(nf)) = nf",
        section_roundtrip(scale, seed, Variant::Log, 41),
    )
}

pub fn check_kappa_roundtrip(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "phi_n(kappa_n(nf)) = nf",
        section_roundtrip(scale, seed, Variant::Plain, 51),
    )
}

pub fn check_lift_independence(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "sections do not depend on the lift",
        |tally| {
            for p in PRIMES {
                let ring = laurent_ring(FieldConfig::rational(p, 1))?;
                let field = ring.residue();
                let mut rng = rng_for(seed, 61 + p);
                let target = tally.trials + scale.trials(100);
                while tally.trials < target {
                    let variant = if rng.gen_bool(0.5) {
                        Variant::Log
                    } else {
                        Variant::Plain
                    };
                    let n = rng.gen_range(2..=20i64);
                    let r = ord_p(n as u64, p).max(ord_p(n as u64 + 1, p));
                    if r > 1 {
                        continue;
                    }
                    let Some(nf) = random_normal_form(&mut rng, field, n, variant) else {
                        continue;
                    };
                    let tail =
                        sample::laurent_above(&mut rng, &ring, 1, 2, 2, CoeffShape::default());
                    let lift = |x: &ResidueElem| -> LaurentElem {
                        let c = ring.constant(x.clone());
                        ring.add(&c, &ring.mul(&c, &tail))
                    };
                    let m = 1;
                    let outcome = (|| -> Result<bool> {
                        let (plain, lifted) = match variant {
                            Variant::Log => {
                                (rho_n(&ring, &nf, m)?, rho_n_lifted(&ring, &nf, m, &lift)?)
                            }
                            Variant::Plain => (
                                kappa_n(&ring, &nf, m)?,
                                kappa_n_lifted(&ring, &nf, m, &lift)?,
                            ),
                        };
                        Ok(psi(&ring, &plain, n, variant)? == psi(&ring, &lifted, n, variant)?)
                    })();
                    tally.attempt(outcome, || format!("p = {p}, {nf:?}"));
                }
            }
            Ok(())
        },
    )
}

/// The four conductor outputs compared for representative independence.
fn invariants(report: &ConductorReport) -> (i64, Option<GradedForm>, i64, RefinedModified) {
    (
        report.sw,
        report.rsw.clone(),
        report.sw_mod,
        report.rsw_mod.clone(),
    )
}

pub fn check_representative_independence(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "conductors are invariant under (F - 1)-perturbation",
        |tally| {
            let cfg = ReductionConfig::default();
            let shape = CoeffShape {
                max_deg: 1,
                max_den_deg: 1,
            };
            for (i, curated) in conductor_suite().iter().enumerate() {
                let chi = curated.character()?;
                let base = invariants(&ConductorReport::compute(&chi, &cfg)?);
                let ring = chi.ring();
                let mut rng = rng_for(seed, 71 + i as u64);
                for _ in 0..scale.trials(100) {
                    let y = sample::witt_box(&mut rng, ring, chi.m(), 3, 2, shape);
                    let outcome = chi
                        .perturb(&y)
                        .and_then(|moved| ConductorReport::compute(&moved, &cfg))
                        .map(|report| invariants(&report) == base);
                    tally.attempt(outcome, || {
                        format!(
                            "{} perturbed by {:?}",
                            curated.label(),
                            render_witt(ring, &y)
                        )
                    });
                }
            }
            Ok(())
        },
    )
}

fn slope_consistent(report: &ConductorReport, field: &crate::field::ResidueField) -> bool {
    let slope_ok = match (&report.slope, &report.char_point) {
        (TheoremValue::Value(s), TheoremValue::Value(point)) => {
            report.sw_mod > 1
                && *s == report.sw_mod + 1
                && report.rsw_mod.form().map(|g| g.neg(field)).as_ref() == Some(point)
        }
        (TheoremValue::OutOfRange(_), TheoremValue::OutOfRange(_)) => report.sw_mod <= 1,
        _ => false,
    };
    let log_ok = match (&report.log_slope, &report.log_char_point) {
        (TheoremValue::Value(s), TheoremValue::Value(point)) => {
            report.sw >= 1
                && *s == report.sw
                && report.rsw.as_ref().map(|g| g.neg(field)).as_ref() == Some(point)
        }
        (TheoremValue::OutOfRange(_), TheoremValue::OutOfRange(_)) => report.sw == 0,
        _ => false,
    };
    slope_ok && log_ok
}

pub fn check_sw_bounds(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "sw - 1 <= sw' <= sw, slopes and points follow the conductors",
        |tally| {
            let cfg = ReductionConfig::default();
            let examine = |tally: &mut Tally, chi: &CharacterClass, label: &dyn Fn() -> String| {
                let outcome = ConductorReport::compute(chi, &cfg).map(|r| {
                    r.sw - 1 <= r.sw_mod
                        && r.sw_mod <= r.sw
                        && slope_consistent(&r, chi.ring().residue())
                });
                tally.attempt(outcome, label);
            };
            for curated in conductor_suite() {
                let chi = curated.character()?;
                examine(tally, &chi, &|| curated.label());
            }
            let mut rng = rng_for(seed, 81);
            let shape = CoeffShape {
                max_deg: 1,
                max_den_deg: 1,
            };
            for _ in 0..scale.trials(200) {
                let p = *PRIMES.choose(&mut rng).expect("primes are nonempty");
                let rings = rings_for(p)?;
                let ring = rings.choose(&mut rng).expect("rings are nonempty");
                let m = if p == 5 { 0 } else { rng.gen_range(0..=1) };
                let x = sample::witt_box(&mut rng, ring, m, 6, 3, shape);
                let chi = CharacterClass::new(ring.clone(), x.clone())?;
                examine(tally, &chi, &|| {
                    format!("p = {p}: {:?}", render_witt(ring, &x))
                });
            }
            Ok(())
        },
    )
}

pub fn check_theta_single_terms(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "sw(theta_j(c pi^v)) = -p^j v for p not dividing v",
        |tally| {
            let cfg = ReductionConfig::default();
            let mut rng = rng_for(seed, 91);
            for _ in 0..scale.trials(200) {
                let p = *PRIMES.choose(&mut rng).expect("primes are nonempty");
                let rings = rings_for(p)?;
                let ring = rings.choose(&mut rng).expect("rings are nonempty");
                let m = rng.gen_range(0..=if p == 5 { 1 } else { 2 });
                let j = rng.gen_range(0..=m);
                let v = -rng.gen_range(1..=12i64);
                if v % p as i64 == 0 {
                    continue;
                }
                let c = ring.residue().random_nonzero(&mut rng, 2, 1);
                let a = ring.monomial(c, v);
                let expected = p.pow(j as u32) as i64 * -v;
                let outcome = theta(ring, a, j, m)
                    .and_then(|chi| swan(&chi, &cfg))
                    .map(|sw| sw == expected);
                tally.attempt(outcome, || format!("p = {p}, m = {m}, j = {j}, v = {v}"));
            }
            Ok(())
        },
    )
}

fn matches(
    ring: &LaurentRing,
    form: Option<&GradedForm>,
    want: Option<(&str, &str)>,
) -> Result<bool> {
    Ok(match (form, want) {
        (None, None) => true,
        (Some(g), Some((alpha, beta))) => {
            g.alpha.f == parse_residue(alpha, ring)? && g.beta == parse_residue(beta, ring)?
        }
        _ => false,
    })
}

pub fn check_hand_values(_scale: Scale, _seed: u64) -> CheckOutcome {
    run_check(
        Suite::Ramification,
        "conductors match hand-derived values",
        |tally| {
            let cfg = ReductionConfig::default();
            for hv in hand_values() {
                let chi = hv.character.character()?;
                let ring = chi.ring();
                let outcome = (|| -> Result<bool> {
                    let r = ConductorReport::compute(&chi, &cfg)?;
                    Ok(r.sw == hv.sw
                        && r.sw_mod == hv.sw_mod
                        && matches(ring, r.rsw.as_ref(), hv.rsw)?
                        && matches(ring, r.rsw_mod.form(), hv.rsw_mod)?
                        && r.slope.value().copied() == hv.slope
                        && r.log_slope.value().copied() == hv.log_slope
                        && matches(ring, r.char_point.value(), hv.char_point)?
                        && matches(ring, r.log_char_point.value(), hv.log_char_point)?)
                })();
                tally.attempt(outcome, || hv.character.label());
            }
            Ok(())
        },
    )
}

pub fn run(scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    vec![
        check_rho_roundtrip(scale, seed),
        check_kappa_roundtrip(scale, seed),
        check_lift_independence(scale, seed),
        check_representative_independence(scale, seed),
        check_sw_bounds(scale, seed),
        check_theta_single_terms(scale, seed),
        check_hand_values(scale, seed),
    ]
}
