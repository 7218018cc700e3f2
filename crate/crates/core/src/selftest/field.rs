use crate::error::Result;
use crate::expr::{render_element, render_residue};
use crate::field::{LaurentRing, ResidueField};
use crate::ring::Ring;

use super::{laurent_ring, rng_for, run_check, test_fields, CheckOutcome, Scale, Suite, Tally};

const SHAPE: (usize, usize) = (3, 2);

fn each_field(
    trials: usize,
    mut body: impl FnMut(&LaurentRing, usize, &mut Tally) -> Result<()>,
) -> impl FnOnce(&mut Tally) -> Result<()> {
    move |tally| {
        let fields = test_fields();
        let per = trials.div_ceil(fields.len());
        for cfg in fields {
            let ring = laurent_ring(cfg)?;
            body(&ring, per, tally)?;
        }
        Ok(())
    }
}

fn show(field: &ResidueField, xs: &[&crate::field::ResidueElem]) -> String {
    xs.iter()
        .map(|x| render_residue(field, x))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn check_p_basis(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(1000);
    run_check(
        Suite::Field,
        "p-basis decomposition reassembles",
        each_field(trials, |ring, per, tally| {
            let field = ring.residue();
            let mut rng = rng_for(seed, 11 + field.p());
            for _ in 0..per {
                let f = field.random(&mut rng, SHAPE.0, SHAPE.1);
                let parts = field.p_basis_decompose(&f);
                tally.record(field.p_basis_assemble(&parts) == f, || show(field, &[&f]));
            }
            Ok(())
        }),
    )
}

pub fn check_pth_powers(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(1000);
    run_check(
        Suite::Field,
        "p-th roots invert p-th powers",
        each_field(trials, |ring, per, tally| {
            let field = ring.residue();
            let mut rng = rng_for(seed, 12 + field.p());
            for _ in 0..per {
                let f = field.random(&mut rng, SHAPE.0, SHAPE.1);
                let fp = field.frobenius(&f);
                let ok = field.is_pth_power(&fp) && field.pth_root(&fp).ok().as_ref() == Some(&f);
                tally.record(ok, || show(field, &[&f]));
            }
            Ok(())
        }),
    )
}

pub fn check_leibniz(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(1000);
    run_check(
        Suite::Field,
        "derivative satisfies the Leibniz rule",
        each_field(trials, |ring, per, tally| {
            let field = ring.residue();
            let mut rng = rng_for(seed, 13 + field.p());
            for _ in 0..per {
                let f = field.random(&mut rng, SHAPE.0, SHAPE.1);
                let g = field.random(&mut rng, SHAPE.0, SHAPE.1);
                let lhs = field.derivative(&field.mul(&f, &g));
                let rhs = field.add(
                    &field.mul(&field.derivative(&f), &g),
                    &field.mul(&f, &field.derivative(&g)),
                );
                tally.record(lhs == rhs, || show(field, &[&f, &g]));
            }
            Ok(())
        }),
    )
}

pub fn check_derivative_kernel(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(1000);
    run_check(
        Suite::Field,
        "kernel of the derivative is the p-th powers",
        each_field(trials, |ring, per, tally| {
            let field = ring.residue();
            let mut rng = rng_for(seed, 14 + field.p());
            for _ in 0..per {
                let f = field.random(&mut rng, SHAPE.0, SHAPE.1);
                let fp = field.frobenius(&f);
                let closed = field.derivative(&f).is_zero();
                let ok = field.derivative(&fp).is_zero() && closed == field.is_pth_power(&f);
                tally.record(ok, || show(field, &[&f]));
            }
            Ok(())
        }),
    )
}

pub fn check_laurent_axioms(scale: Scale, seed: u64) -> CheckOutcome {
    let trials = scale.trials(1000);
    run_check(
        Suite::Field,
        "Laurent ring axioms and inverses",
        each_field(trials, |ring, per, tally| {
            let mut rng = rng_for(seed, 15 + ring.p());
            for _ in 0..per {
                let mut draw = || ring.random(&mut rng, -4..=3, 3, 2, 1);
                let (a, b, c) = (draw(), draw(), draw());
                let assoc = ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c));
                let dist = ring.mul(&a, &ring.add(&b, &c))
                    == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c));
                let comm =
                    ring.add(&a, &b) == ring.add(&b, &a) && ring.mul(&a, &b) == ring.mul(&b, &a);
                let cancel = ring.is_zero(&ring.sub(&a, &a));
                let frob = ring.frobenius(&ring.add(&a, &b))
                    == ring.add(&ring.frobenius(&a), &ring.frobenius(&b));
                let unit = match a.as_monomial() {
                    Some(_) => ring
                        .inv(&a)
                        .map(|ai| ring.mul(&a, &ai) == ring.one())
                        .unwrap_or(false),
                    None => true,
                };
                tally.record(assoc && dist && comm && cancel && frob && unit, || {
                    format!(
                        "{} ; {} ; {}",
                        render_element(ring, &a),
                        render_element(ring, &b),
                        render_element(ring, &c)
                    )
                });
            }
            Ok(())
        }),
    )
}

pub fn run(scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    vec![
        check_p_basis(scale, seed),
        check_pth_powers(scale, seed),
        check_leibniz(scale, seed),
        check_derivative_kernel(scale, seed),
        check_laurent_axioms(scale, seed),
    ]
}
