use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::LaurentRing;
use crate::ring::{Ring, TruncatedPolyRing};
use crate::sample::{self, CoeffShape};
use crate::witt::mpoly::{self, Integers, MPoly};
use crate::witt::{
    fil_membership, fil_prime_membership, ord_p, verschiebung_pow, WittContext, WittPoly, WittVec,
};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QIdentityReport {
    pub trials: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

/// Check (x_i (1 + y_i))_i - x = (Q_0(x, y), ..., Q_m(x, y)) in W_{m+1}(GF(p)[t]/(t^k)).
pub fn verify_q_identity(
    p: u64,
    m: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<QIdentityReport> {
    let ctx = WittContext::shared(p, m)?;
    let ring = TruncatedPolyRing::new(p, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = QIdentityReport::default();
    for t in 0..trials {
        let x = sample::ring_vector(&mut rng, &ring, m + 1, |r, a| a.random(r));
        let y = if t % 10 == 0 {
            WittVec::zero(&ring, m + 1)
        } else {
            sample::ring_vector(&mut rng, &ring, m + 1, |r, a| a.random(r))
        };
        let scaled = WittVec::new(
            x.components()
                .iter()
                .zip(y.components())
                .map(|(xi, yi)| ring.mul(xi, &ring.add(&ring.one(), yi)))
                .collect(),
        );
        let lhs = ctx.sub(&ring, &scaled, &x)?;
        let rhs = ctx.q_apply(&ring, &x, &y)?;
        report.trials += 1;
        if lhs != rhs {
            report.failures += 1;
            report
                .witness
                .get_or_insert_with(|| format!("x = {x:?}, y = {y:?}"));
        }
    }
    Ok(report)
}

fn y_degree(exps: &[u32], len: usize) -> u32 {
    exps[len..].iter().sum()
}

/// Symbolic properties of the integer Q_n for n < len: Q_n lies in (Y);
/// Q_n - sum X_i^(p^(n-i)) Y_i lies in (Y_a Y_b); Q_n is isobaric of weight
/// p^n with X_j of weight p^j and Y of weight 0. Returns the violations.
pub fn verify_q_symbolic(p: u64, len: usize) -> Result<Vec<String>> {
    let cr = Integers;
    let q = mpoly::q_polynomials(&cr, p, len)?;
    let mut problems = Vec::new();
    for (n, qn) in q.iter().enumerate() {
        let mut linear = MPoly::zero(2 * len);
        for i in 0..=n {
            let xi = MPoly::var(&cr, 2 * len, i).pow(&cr, p.pow((n - i) as u32));
            linear = linear.add(&cr, &xi.mul(&cr, &MPoly::var(&cr, 2 * len, len + i)));
        }
        let rest = qn.sub(&cr, &linear);
        for (exps, _) in qn.terms() {
            if y_degree(exps, len) == 0 {
                problems.push(format!("Q_{n}: term {exps:?} is free of Y"));
            }
            let weight: u64 = (0..len).map(|j| exps[j] as u64 * p.pow(j as u32)).sum();
            if weight != p.pow(n as u32) {
                problems.push(format!("Q_{n}: term {exps:?} has weight {weight}"));
            }
        }
        for (exps, _) in rest.terms() {
            if y_degree(exps, len) < 2 {
                problems.push(format!(
                    "Q_{n}: nonlinear part has term {exps:?} of Y-degree < 2"
                ));
            }
        }
    }
    Ok(problems)
}

fn eval_bigint(poly: &MPoly<BigInt>, vals: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (exps, c) in poly.terms() {
        let mut t = c.clone();
        for (v, &e) in vals.iter().zip(exps) {
            if e > 0 {
                t *= num_traits::pow(v.clone(), e as usize);
            }
        }
        acc += t;
    }
    acc
}

fn ghost_value(p: u64, comps: &[BigInt], n: usize) -> BigInt {
    (0..=n)
        .map(|i| {
            BigInt::from(p).pow(i as u32)
                * num_traits::pow(comps[i].clone(), p.pow((n - i) as u32) as usize)
        })
        .sum()
}

fn reduced_terms(poly: &WittPoly) -> Vec<(Vec<u32>, u32)> {
    let mut t = poly.terms().to_vec();
    t.sort();
    t
}

/// Rebuild the integer sum, negation and Q polynomials, check their ghost
/// components at random integer points, and compare their reductions mod p
/// with the cached context. Returns the violations.
pub fn validate_context(p: u64, m: usize, points: usize, seed: u64) -> Result<Vec<String>> {
    let len = m + 1;
    let fam = mpoly::exact_families(p, len)?;
    let ctx = WittContext::shared(p, m)?;
    let cr = Integers;
    let mut problems = Vec::new();

    let cached = [
        ("sum", ctx.sum_polynomials()),
        ("neg", ctx.negation_polynomials()),
        ("q", ctx.q_polynomials()),
    ];
    let exact = [("sum", &fam.sum), ("neg", &fam.neg), ("q", &fam.q)];
    for ((name, cached), (_, exact)) in cached.iter().zip(exact.iter()) {
        for (i, (c, e)) in cached.iter().zip(exact.iter()).enumerate() {
            let mut want = e.reduce_mod_p(&cr, p);
            want.sort();
            if reduced_terms(c) != want {
                problems.push(format!(
                    "{name}_{i}: cached polynomial differs from the integer one mod {p}"
                ));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let vals: Vec<BigInt> = (0..2 * len)
            .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
            .collect();
        let (xs, ys) = vals.split_at(len);
        let s: Vec<BigInt> = fam.sum.iter().map(|q| eval_bigint(q, &vals)).collect();
        let ng: Vec<BigInt> = fam.neg.iter().map(|q| eval_bigint(q, xs)).collect();
        let scaled: Vec<BigInt> = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| x * (BigInt::one() + y))
            .collect();
        let qv: Vec<BigInt> = fam.q.iter().map(|q| eval_bigint(q, &vals)).collect();
        for n in 0..len {
            let gx = ghost_value(p, xs, n);
            if ghost_value(p, &s, n) != &gx + ghost_value(p, ys, n) {
                problems.push(format!("ghost_{n} of the sum fails at {vals:?}"));
            }
            if ghost_value(p, &ng, n) != -&gx {
                problems.push(format!("ghost_{n} of the negation fails at {vals:?}"));
            }
            if ghost_value(p, &scaled, n) != &gx + ghost_value(p, &qv, n) {
                problems.push(format!("ghost_{n} of Q fails at {vals:?}"));
            }
        }
    }
    Ok(problems)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FilPrimeReport {
    /// u + V^(m+1-m')(w) with u in fil_n, w in fil_(n+1) W_m'.
    pub generator_samples: usize,
    pub generator_failures: usize,
    /// Componentwise members split as (x_0..x_(s-1), 0..) + V^s(x_s..x_m).
    pub member_samples: usize,
    pub undecomposed: usize,
    /// Sums of two componentwise members.
    pub closure_failures: usize,
}

impl FilPrimeReport {
    pub fn failures(&self) -> usize {
        self.generator_failures + self.undecomposed + self.closure_failures
    }
}

/// Compare the componentwise description of fil'_n with its generators.
pub fn fil_prime_generator_sample(
    ring: &LaurentRing,
    m: usize,
    n: i64,
    trials: usize,
    seed: u64,
) -> Result<FilPrimeReport> {
    let p = ring.p();
    let ctx = WittContext::shared(p, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = CoeffShape::default();
    let m_prime = (ord_p(n as u64 + 1, p) as usize).min(m + 1);
    let s = m + 1 - m_prime;
    let mut report = FilPrimeReport::default();
    for _ in 0..trials {
        let u = sample::fil_member(&mut rng, ring, m, n, 2, shape);
        let x = if m_prime > 0 {
            let w = sample::fil_member(&mut rng, ring, m_prime - 1, n + 1, 2, shape);
            ctx.add(ring, &u, &verschiebung_pow(ring, &w, s))?
        } else {
            u
        };
        report.generator_samples += 1;
        if !fil_prime_membership(&x, p, n) {
            report.generator_failures += 1;
        }

        let x = sample::fil_prime_member(&mut rng, ring, m, n, 2, shape);
        report.member_samples += 1;
        let mut low = x.components().to_vec();
        for c in low.iter_mut().skip(s) {
            *c = ring.zero();
        }
        let u = WittVec::new(low);
        let ok = if m_prime > 0 {
            let w = WittVec::new(x.components()[s..].to_vec());
            fil_membership(&u, p, n)
                && fil_membership(&w, p, n + 1)
                && ctx.add(ring, &u, &verschiebung_pow(ring, &w, s))? == x
        } else {
            fil_membership(&x, p, n)
        };
        if !ok {
            report.undecomposed += 1;
        }

        let x2 = sample::fil_prime_member(&mut rng, ring, m, n, 2, shape);
        if !fil_prime_membership(&ctx.add(ring, &x, &x2)?, p, n) {
            report.closure_failures += 1;
        }
    }
    Ok(report)
}
