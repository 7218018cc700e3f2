use rand::seq::SliceRandom;
use rand::Rng;

use crate::differentials::{
    b_r_assemble, b_r_layers, b_r_membership, bgr_normal_form, cartier, d_residue,
    fil_omega_membership, fmd, inverse_cartier, plain_in_range, reassemble, DiffFormF,
    NormalFormBGr, Variant,
};
use crate::error::Result;
use crate::expr::{render_form_k, render_witt};
use crate::field::{FieldConfig, LaurentElem, LaurentRing, ResidueElem, ResidueField};
use crate::ring::Ring;
use crate::sample::{self, CoeffShape};
use crate::witt::{self as w, WittContext, WittVec};

use super::{laurent_ring, rng_for, run_check, test_fields, CheckOutcome, Scale, Suite};

const SMALL: CoeffShape = CoeffShape {
    max_deg: 1,
    max_den_deg: 1,
};

/// A random normal form at level n; `None` when it writes the zero class.
pub(crate) fn random_normal_form<R: Rng>(
    rng: &mut R,
    field: &ResidueField,
    n: i64,
    variant: Variant,
) -> Option<NormalFormBGr> {
    let p = field.p();
    let rows = NormalFormBGr::layer_count(p, n, variant) as usize;
    let width = field.config().p_basis_size() * (p as usize - 1);
    let draw = |rng: &mut R| {
        if rng.gen_bool(0.25) {
            field.zero()
        } else {
            field.random(rng, 2, 1)
        }
    };
    let layers = (0..rows)
        .map(|_| (0..width).map(|_| draw(rng)).collect())
        .collect();
    let x = draw(rng);
    let nf = NormalFormBGr {
        n,
        variant,
        layers,
        x,
    };
    (!reassemble(field, &nf).is_zero()).then_some(nf)
}

pub fn check_normal_form_roundtrip(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(500);
    run_check(
        Suite::Differentials,
        "normal forms reassemble and decompose back",
        |tally| {
            let mut rng = rng_for(seed, 31);
            let fields = test_fields()
                .into_iter()
                .map(ResidueField::new)
                .collect::<Result<Vec<_>>>()?;
            while tally.trials < trials {
                let field = fields.choose(&mut rng).expect("fields are nonempty");
                let variant = if rng.gen_bool(0.5) {
                    Variant::Log
                } else {
                    Variant::Plain
                };
                let n = rng.gen_range(1..=40);
                if variant == Variant::Plain && !plain_in_range(field.p(), n) {
                    continue;
                }
                let Some(nf) = random_normal_form(&mut rng, field, n, variant) else {
                    continue;
                };
                let g = reassemble(field, &nf);
                tally.attempt(bgr_normal_form(field, &g).map(|back| back == nf), || {
                    format!("p = {}, {variant:?}, n = {n}: {nf:?}", field.p())
                });
            }
            Ok(())
        },
    )
}

fn witt_cases(max_m: usize) -> Vec<(FieldConfig, usize)> {
    let mut out = Vec::new();
    for cfg in test_fields() {
        let top = if cfg.p == 5 { 1 } else { max_m };
        for m in 0..=top {
            out.push((cfg.clone(), m));
        }
    }
    out
}

type Case = (LaurentRing, std::sync::Arc<WittContext>);

fn build_cases(max_m: usize) -> Result<Vec<Case>> {
    witt_cases(max_m)
        .into_iter()
        .map(|(cfg, m)| Ok((laurent_ring(cfg.clone())?, WittContext::shared(cfg.p, m)?)))
        .collect()
}

fn show(ring: &LaurentRing, xs: &[&WittVec<LaurentElem>]) -> String {
    xs.iter()
        .map(|x| format!("{:?}", render_witt(ring, x)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn check_fmd_additivity(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(500);
    run_check(Suite::Differentials, "F^m d is additive", |tally| {
        let cases = build_cases(2)?;
        let mut rng = rng_for(seed, 32);
        for _ in 0..trials {
            let (ring, ctx) = cases.choose(&mut rng).expect("cases are nonempty");
            let m = ctx.m();
            let x = sample::witt_box(&mut rng, ring, m, 4, 2, SMALL);
            let y = sample::witt_box(&mut rng, ring, m, 4, 2, SMALL);
            let ok = ctx
                .add(ring, &x, &y)
                .map(|s| fmd(ring, &s) == fmd(ring, &x).add(ring, &fmd(ring, &y)));
            tally.attempt(ok, || show(ring, &[&x, &y]));
        }
        Ok(())
    })
}

pub fn check_fmd_filtrations(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(1000);
    run_check(
        Suite::Differentials,
        "F^m d maps fil_n into fil_n Omega and fil'_n into fil'_n Omega",
        |tally| {
            let cases = build_cases(3)?;
            let mut rng = rng_for(seed, 33);
            for t in 0..trials {
                let (ring, ctx) = cases.choose(&mut rng).expect("cases are nonempty");
                let m = ctx.m();
                let n = rng.gen_range(1..=30);
                let (x, variant) = if t % 2 == 0 {
                    (
                        sample::fil_member(&mut rng, ring, m, n, 3, SMALL),
                        Variant::Log,
                    )
                } else {
                    (
                        sample::fil_prime_member(&mut rng, ring, m, n, 3, SMALL),
                        Variant::Plain,
                    )
                };
                let omega = fmd(ring, &x);
                tally.record(fil_omega_membership(ring, &omega, n, variant), || {
                    format!(
                        "{variant:?} n = {n}: x = {}, F^m d x = {}",
                        show(ring, &[&x]),
                        render_form_k(ring, &omega)
                    )
                });
            }
            Ok(())
        },
    )
}

pub fn check_fmd_verschiebung(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(500);
    run_check(Suite::Differentials, "F^(m+1) d V = F^m d", |tally| {
        let cases = build_cases(2)?;
        let mut rng = rng_for(seed, 34);
        for _ in 0..trials {
            let (ring, ctx) = cases.choose(&mut rng).expect("cases are nonempty");
            let x = sample::witt_box(&mut rng, ring, ctx.m(), 4, 3, SMALL);
            let vx = w::verschiebung(ring, &x);
            tally.record(fmd(ring, &vx) == fmd(ring, &x), || show(ring, &[&x]));
        }
        Ok(())
    })
}

fn random_layers<R: Rng>(rng: &mut R, field: &ResidueField, r: usize) -> Vec<Vec<ResidueElem>> {
    (0..r)
        .map(|_| {
            (0..field.p() as usize - 1)
                .map(|_| field.random(rng, 2, 1))
                .collect()
        })
        .collect()
}

pub fn check_cartier_identities(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(500);
    run_check(
        Suite::Differentials,
        "Cartier operator identities and B_r layers",
        |tally| {
            let mut rng = rng_for(seed, 35);
            let fields = [2u64, 3, 5]
                .into_iter()
                .map(|p| ResidueField::new(FieldConfig::rational(p, 1)))
                .collect::<Result<Vec<_>>>()?;
            for _ in 0..trials {
                let field = fields.choose(&mut rng).expect("fields are nonempty");
                let p = field.p();
                let f = field.random(&mut rng, 3, 2);
                let omega = DiffFormF::new(field.random(&mut rng, 3, 2));
                let r = rng.gen_range(1..=3usize);
                let layers = random_layers(&mut rng, field, r);
                let assembled = b_r_assemble(field, &layers);
                let y = field.var().expect("rational field has a variable");
                // C(f^p g) = f C(g) and C(y^(p-1) dy) = dy.
                let semilinear = cartier(field, &omega.scale(field, &field.frobenius(&f)))
                    == cartier(field, &omega).scale(field, &f);
                let unit = cartier(field, &DiffFormF::new(field.pow(&y, p - 1)))
                    == DiffFormF::new(field.one());
                let ok = cartier(field, &inverse_cartier(field, &omega)) == omega
                    && cartier(field, &d_residue(field, &f)).is_zero()
                    && semilinear
                    && unit
                    && b_r_membership(field, &assembled, r as u32)
                    && b_r_layers(field, &assembled, r as u32).as_ref() == Some(&layers);
                tally.record(ok, || {
                    format!("p = {p}, r = {r}, f = {f:?}, layers = {layers:?}")
                });
            }
            Ok(())
        },
    )
}

pub fn run(scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    vec![
        check_normal_form_roundtrip(scale, seed),
        check_fmd_additivity(scale, seed),
        check_fmd_filtrations(scale, seed),
        check_fmd_verschiebung(scale, seed),
        check_cartier_identities(scale, seed),
    ]
}
