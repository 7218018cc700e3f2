//! theta_j and the sections rho_n, kappa_n of the refined conductor maps.
//!
//! The sections are normalized so that psi_n(rho_n(nf)) and phi_n(kappa_n(nf))
//! reassemble to nf, where psi_n = -gr_n(F^m d) and phi_n = -gr'_n(F^m d).
//! Elements of F are lifted to R as pi-degree-0 constants.

use crate::differentials::{plain_in_range, split_level, NormalFormBGr, Variant};
use crate::error::{Error, Result};
use crate::field::{LaurentElem, LaurentRing, ResidueElem};
use crate::ring::Ring;
use crate::witt::{ord_p, WittContext, WittVec};

use super::CharacterClass;

/// theta_j(a) = delta_{j+1}((a, 0, ..., 0)), seen in W_{m+1}(K) as a at index m - j.
pub fn theta(ring: &LaurentRing, a: LaurentElem, j: usize, m: usize) -> Result<CharacterClass> {
    if j > m {
        return Err(Error::Config(format!(
            "theta_{j} needs witt length > {j}, got {}",
            m + 1
        )));
    }
    let rep = WittVec::single(ring, a, m - j, m + 1);
    CharacterClass::new(ring.clone(), rep)
}

/// A lift F -> R: must reduce to its argument modulo pi.
pub type Lift<'a> = &'a dyn Fn(&ResidueElem) -> LaurentElem;

fn layer_sum(
    ring: &LaurentRing,
    ctx: &WittContext,
    layers: &[Vec<ResidueElem>],
    top: i64,
    m: usize,
    lift: Lift<'_>,
) -> Result<WittVec<LaurentElem>> {
    let field = ring.residue();
    let p = ring.p();
    let mut acc = WittVec::zero(ring, m + 1);
    for (j, row) in layers.iter().enumerate() {
        let exp = -top / p.pow(j as u32) as i64;
        for (idx, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let y = field.var().expect("layers are empty over a perfect field");
            let yk = ring.monomial(field.pow(&y, idx as u64 + 1), exp);
            let a = ring.mul(&ring.frobenius(&lift(x)), &yk);
            let term = WittVec::single(ring, a, m - j, m + 1);
            acc = ctx.add(ring, &acc, &term)?;
        }
    }
    Ok(acc)
}

fn constant_lift(ring: &LaurentRing) -> impl Fn(&ResidueElem) -> LaurentElem + '_ {
    move |x| ring.constant(x.clone())
}

fn check_length(needed: u32, m: usize) -> Result<()> {
    if needed as usize > m {
        return Err(Error::Config(format!(
            "normal form needs witt length >= {}, got {}",
            needed + 1,
            m + 1
        )));
    }
    Ok(())
}

/// A character with psi_n(rho_n(nf)) = nf, built in W_{m+1}(K).
pub fn rho_n(ring: &LaurentRing, nf: &NormalFormBGr, m: usize) -> Result<CharacterClass> {
    rho_n_lifted(ring, nf, m, &constant_lift(ring))
}

/// rho_n with a chosen lift of the coefficients.
pub fn rho_n_lifted(
    ring: &LaurentRing,
    nf: &NormalFormBGr,
    m: usize,
    lift: Lift<'_>,
) -> Result<CharacterClass> {
    if nf.variant != Variant::Log {
        return Err(Error::Config("rho_n takes a log normal form".into()));
    }
    let p = ring.p();
    let (n0, r) = split_level(nf.n, p);
    check_length(r, m)?;
    let ctx = WittContext::shared(p, m)?;
    let layers = layer_sum(ring, &ctx, &nf.layers, nf.n, m, lift)?;
    let last = WittVec::single(ring, ring.shift(&lift(&nf.x), -n0), m - r as usize, m + 1);
    let sum = ctx.add(ring, &layers, &last)?;
    CharacterClass::new(ring.clone(), ctx.neg(ring, &sum)?)
}

/// Inverse of u modulo p^k.
fn inverse_mod(u: i64, p: u64, k: u32) -> i64 {
    let modulus = p.pow(k) as i64;
    let u = u.rem_euclid(modulus);
    (1..modulus)
        .find(|&v| (u * v) % modulus == 1)
        .expect("unit modulo p^k")
}

/// A character with phi_n(kappa_n(nf)) = nf, built in W_{m+1}(K).
pub fn kappa_n(ring: &LaurentRing, nf: &NormalFormBGr, m: usize) -> Result<CharacterClass> {
    kappa_n_lifted(ring, nf, m, &constant_lift(ring))
}

/// kappa_n with a chosen lift of the coefficients.
pub fn kappa_n_lifted(
    ring: &LaurentRing,
    nf: &NormalFormBGr,
    m: usize,
    lift: Lift<'_>,
) -> Result<CharacterClass> {
    if nf.variant != Variant::Plain {
        return Err(Error::Config("kappa_n takes a plain normal form".into()));
    }
    let p = ring.p();
    if !plain_in_range(p, nf.n) {
        return Err(Error::UnsupportedRange(format!(
            "kappa_n at n = {} with p = {p}",
            nf.n
        )));
    }
    let r = ord_p(nf.n as u64 + 1, p);
    let r_prime = ord_p(nf.n as u64, p);
    check_length(r.saturating_sub(1).max(r_prime), m)?;
    let ctx = WittContext::shared(p, m)?;
    let layers = layer_sum(ring, &ctx, &nf.layers, nf.n + 1, m, lift)?;
    let n_prime = nf.n / p.pow(r_prime) as i64;
    let last = WittVec::single(
        ring,
        ring.shift(&lift(&nf.x), -n_prime),
        m - r_prime as usize,
        m + 1,
    );
    let scaled = ctx.mul_int(ring, &last, inverse_mod(n_prime, p, m as u32 + 1))?;
    let rep = ctx.add(ring, &ctx.neg(ring, &layers)?, &scaled)?;
    CharacterClass::new(ring.clone(), rep)
}
