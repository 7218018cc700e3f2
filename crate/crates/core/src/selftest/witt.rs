use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::expr::render_witt;
use crate::field::{FieldConfig, LaurentElem, LaurentRing};
use crate::oracle::{
    fil_prime_generator_sample, validate_context, verify_q_identity, verify_q_symbolic,
};
use crate::sample::{self, CoeffShape};
use crate::witt::{self as w, fil_membership, WittContext, WittVec};

use super::{laurent_ring, rng_for, run_check, test_fields, CheckOutcome, Scale, Suite, Tally};

const SMALL: CoeffShape = CoeffShape {
    max_deg: 1,
    max_den_deg: 1,
};

/// (field, m) pairs for random Laurent Witt vectors.
fn laurent_cases() -> Vec<(FieldConfig, usize)> {
    let mut out = Vec::new();
    for cfg in test_fields() {
        let ms: &[usize] = match cfg.p {
            2 => &[0, 1, 2, 3],
            3 => &[1, 2],
            _ => &[1],
        };
        for &m in ms {
            out.push((cfg.clone(), m));
        }
    }
    out
}

fn show(ring: &LaurentRing, xs: &[&WittVec<LaurentElem>]) -> String {
    xs.iter()
        .map(|x| format!("{:?}", render_witt(ring, x)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Runs `body` on `trials` random (ring, context) cases.
fn over_cases(
    trials: usize,
    seed: u64,
    salt: u64,
    mut body: impl FnMut(
        &mut rand_chacha::ChaCha8Rng,
        &LaurentRing,
        &WittContext,
        &mut Tally,
    ) -> Result<()>,
) -> impl FnOnce(&mut Tally) -> Result<()> {
    move |tally| {
        let cases = laurent_cases();
        let mut rng = rng_for(seed, salt);
        let rings = cases
            .iter()
            .map(|(cfg, m)| Ok((laurent_ring(cfg.clone())?, WittContext::shared(cfg.p, *m)?)))
            .collect::<Result<Vec<_>>>()?;
        for _ in 0..trials {
            let (ring, ctx) = rings.choose(&mut rng).expect("cases are nonempty");
            body(&mut rng, ring, ctx, tally)?;
        }
        Ok(())
    }
}

pub fn check_group_axioms(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "Witt addition is an abelian group law",
        over_cases(scale.trials(1000), seed, 21, |rng, ring, ctx, tally| {
            let m = ctx.m();
            let x = sample::witt_box(rng, ring, m, 3, 2, SMALL);
            let y = sample::witt_box(rng, ring, m, 3, 2, SMALL);
            let z = sample::witt_box(rng, ring, m, 3, 2, SMALL);
            let ok = (|| -> Result<bool> {
                let zero = WittVec::zero(ring, m + 1);
                let assoc = ctx.add(ring, &ctx.add(ring, &x, &y)?, &z)?
                    == ctx.add(ring, &x, &ctx.add(ring, &y, &z)?)?;
                let comm = ctx.add(ring, &x, &y)? == ctx.add(ring, &y, &x)?;
                let unit = ctx.add(ring, &x, &zero)? == x;
                let inverse = w::is_zero(ring, &ctx.add(ring, &x, &ctx.neg(ring, &x)?)?);
                Ok(assoc && comm && unit && inverse)
            })();
            tally.attempt(ok, || show(ring, &[&x, &y, &z]));
            Ok(())
        }),
    )
}

pub fn check_fil_subgroup(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "fil_n is a subgroup",
        over_cases(scale.trials(500), seed, 22, |rng, ring, ctx, tally| {
            let (m, p) = (ctx.m(), ctx.p());
            let n = rng.gen_range(0..=12);
            let x = sample::fil_member(rng, ring, m, n, 2, SMALL);
            let y = sample::fil_member(rng, ring, m, n, 2, SMALL);
            let ok = ctx
                .sub(ring, &x, &y)
                .map(|d| fil_membership(&x, p, n) && fil_membership(&d, p, n));
            tally.attempt(ok, || format!("n = {n}: {}", show(ring, &[&x, &y])));
            Ok(())
        }),
    )
}

pub fn check_fil_prime_generators(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(500);
    run_check(
        Suite::Witt,
        "fil'_n componentwise rule matches its generators",
        |tally| {
            let cases: Vec<(FieldConfig, usize, i64)> = vec![
                (FieldConfig::rational(2, 1), 1, 1),
                (FieldConfig::rational(2, 1), 1, 3),
                (FieldConfig::rational(2, 1), 2, 7),
                (FieldConfig::perfect(2, 1), 2, 5),
                (FieldConfig::rational(3, 1), 1, 2),
                (FieldConfig::rational(3, 1), 1, 8),
                (FieldConfig::rational(3, 1), 2, 4),
                (FieldConfig::perfect(5, 1), 1, 4),
                (FieldConfig::rational(2, 1), 1, 2),
                (FieldConfig::rational(3, 1), 2, 3),
            ];
            let per = trials.div_ceil(cases.len());
            for (i, (cfg, m, n)) in cases.into_iter().enumerate() {
                let ring = laurent_ring(cfg.clone())?;
                let report = fil_prime_generator_sample(&ring, m, n, per, seed ^ i as u64)?;
                let witness = (report.failures() > 0)
                    .then(|| format!("p = {}, m = {m}, n = {n}: {report:?}", cfg.p));
                // Three samples per trial: a generator, a decomposition, a sum.
                tally.absorb(3 * per, report.failures(), witness);
            }
            Ok(())
        },
    )
}

pub fn check_frobenius_verschiebung(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "FV = VF = p",
        over_cases(scale.trials(500), seed, 23, |rng, ring, ctx, tally| {
            let m = ctx.m();
            let p = ctx.p() as i64;
            let x = sample::witt_box(rng, ring, m, 3, 2, SMALL);
            let fv = w::frobenius(ring, &w::verschiebung(ring, &x));
            let vf = w::verschiebung(ring, &w::frobenius(ring, &x));
            let ok = ctx
                .mul_int(ring, &x, p)
                .map(|px| fv == vf && w::truncate(&vf, m + 1) == px);
            tally.attempt(ok, || show(ring, &[&x]));
            Ok(())
        }),
    )
}

pub fn check_universal_frobenius(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "universal Frobenius polynomials agree with p-th powers",
        over_cases(scale.trials(200), seed, 24, |rng, ring, ctx, tally| {
            let m = ctx.m();
            if m == 0 {
                return Ok(());
            }
            // The universal Frobenius maps W_{m+1} -> W_m.
            let short = WittContext::shared(ctx.p(), m - 1)?;
            let x = sample::witt_box(rng, ring, m, 2, 2, SMALL);
            let got: Vec<LaurentElem> = short
                .frobenius_polynomials()
                .iter()
                .map(|poly| poly.eval(ring, x.components()))
                .collect();
            let want = w::truncate(&w::frobenius(ring, &x), m);
            tally.record(WittVec::new(got) == want, || show(ring, &[&x]));
            Ok(())
        }),
    )
}

pub fn check_verschiebung_additive(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "V is additive",
        over_cases(scale.trials(500), seed, 25, |rng, ring, ctx, tally| {
            let m = ctx.m();
            if m >= 3 {
                return Ok(());
            }
            let long = WittContext::shared(ctx.p(), m + 1)?;
            let x = sample::witt_box(rng, ring, m, 3, 2, SMALL);
            let y = sample::witt_box(rng, ring, m, 3, 2, SMALL);
            let ok = (|| -> Result<bool> {
                let lhs = w::verschiebung(ring, &ctx.add(ring, &x, &y)?);
                let rhs = long.add(ring, &w::verschiebung(ring, &x), &w::verschiebung(ring, &y))?;
                Ok(lhs == rhs)
            })();
            tally.attempt(ok, || show(ring, &[&x, &y]));
            Ok(())
        }),
    )
}

pub fn check_verschiebung_fil(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "V maps fil_n W_m into fil_n W_(m+1)",
        over_cases(scale.trials(500), seed, 26, |rng, ring, ctx, tally| {
            let (m, p) = (ctx.m(), ctx.p());
            let n = rng.gen_range(0..=16);
            let x = sample::fil_member(rng, ring, m, n, 2, SMALL);
            let vx = w::verschiebung(ring, &x);
            let level_kept = w::fil_level(&vx, p) == w::fil_level(&x, p);
            tally.record(fil_membership(&vx, p, n) && level_kept, || {
                format!("n = {n}: {}", show(ring, &[&x]))
            });
            Ok(())
        }),
    )
}

pub fn check_q_identity(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(Suite::Witt, "Q_n identity over GF(p)[t]/(t^k)", |tally| {
        for (p, m, k, trials) in [(2, 1, 4, 10_000), (3, 2, 3, 1_000)] {
            let report = verify_q_identity(p, m, k, scale.trials(trials), seed)?;
            let witness = report.witness.map(|wit| format!("p = {p}, m = {m}: {wit}"));
            tally.absorb(report.trials, report.failures, witness);
        }
        Ok(())
    })
}

pub fn check_q_symbolic(_scale: Scale, _seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "Q_n lie in (Y) with the expected linear part",
        |tally| {
            for p in [2, 3] {
                let problems = verify_q_symbolic(p, 4)?;
                tally.absorb(
                    4,
                    problems.len(),
                    problems.first().map(|s| format!("p = {p}: {s}")),
                );
            }
            Ok(())
        },
    )
}

pub fn check_contexts(scale: Scale, seed: u64) -> CheckOutcome {
    run_check(
        Suite::Witt,
        "cached polynomials match the ghost recursion",
        |tally| {
            for (p, m) in [
                (2, 0),
                (2, 1),
                (2, 2),
                (2, 3),
                (3, 1),
                (3, 2),
                (5, 1),
                (5, 2),
            ] {
                let problems = validate_context(p, m, scale.trials(20), seed)?;
                tally.absorb(
                    1,
                    problems.len().min(1),
                    problems.first().map(|s| format!("p = {p}, m = {m}: {s}")),
                );
            }
            Ok(())
        },
    )
}

pub fn run(scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    vec![
        check_contexts(scale, seed),
        check_group_axioms(scale, seed),
        check_fil_subgroup(scale, seed),
        check_fil_prime_generators(scale, seed),
        check_frobenius_verschiebung(scale, seed),
        check_universal_frobenius(scale, seed),
        check_verschiebung_additive(scale, seed),
        check_verschiebung_fil(scale, seed),
        check_q_identity(scale, seed),
        check_q_symbolic(scale, seed),
    ]
}
