//! Multivariate integer polynomials and the ghost-component recursion that
//! produces the universal Witt polynomials.
//!
//! Two coefficient domains are supported: exact integers (`Integers`) and
//! Z/p^k (`ModPrimePower`). The second is enough to obtain every Witt
//! polynomial mod p: in the recursion
//!
//!   p^n W_n = G_n - sum_{i<n} p^i W_i^{p^{n-i}},
//!
//! the term p^i W_i^{p^{n-i}} mod p^{n+1} only depends on W_i mod p.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub trait CoeffRing {
    type C: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn from_i64(&self, n: i64) -> Self::C;
    /// c / d when d divides c exactly (d a power of p).
    fn div_exact(&self, c: &Self::C, d: u64) -> Option<Self::C>;
    /// Canonical residue in 0..p.
    fn reduce_mod_p(&self, c: &Self::C, p: u64) -> u32;
    /// Hook applied to each solved component (identity for exact integers).
    fn normalize_solution(&self, c: Self::C, _p: u64) -> Self::C {
        c
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type C = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn div_exact(&self, c: &BigInt, d: u64) -> Option<BigInt> {
        let (q, r) = c.div_rem(&BigInt::from(d));
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    fn reduce_mod_p(&self, c: &BigInt, p: u64) -> u32 {
        let r = c.mod_floor(&BigInt::from(p));
        let r = if r.is_negative() { r + p } else { r };
        u32::try_from(r).expect("residue fits")
    }
}

/// Z/p^k with values in 0..p^k.
#[derive(Debug, Clone, Copy)]
pub struct ModPrimePower {
    modulus: u64,
}

impl ModPrimePower {
    pub fn new(p: u64, k: u32) -> Self {
        ModPrimePower { modulus: p.pow(k) }
    }
}

impl CoeffRing for ModPrimePower {
    type C = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn div_exact(&self, c: &u64, d: u64) -> Option<u64> {
        if c % d == 0 {
            Some(c / d)
        } else {
            None
        }
    }
    fn reduce_mod_p(&self, c: &u64, p: u64) -> u32 {
        (c % p) as u32
    }
    fn normalize_solution(&self, c: u64, p: u64) -> u64 {
        // only the residue mod p of a solved component is meaningful
        c % p
    }
}

/// Polynomial in `nvars` variables; exponent vectors map to nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Clone + PartialEq + Debug> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant<R: CoeffRing<C = C>>(cr: &R, nvars: usize, c: C) -> Self {
        let mut poly = Self::zero(nvars);
        if !cr.is_zero(&c) {
            poly.terms.insert(vec![0; nvars], c);
        }
        poly
    }

    pub fn var<R: CoeffRing<C = C>>(cr: &R, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut poly = Self::zero(nvars);
        poly.terms.insert(e, cr.from_i64(1));
        poly
    }

    fn accumulate<R: CoeffRing<C = C>>(&mut self, cr: &R, e: Vec<u32>, c: C) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !cr.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = cr.add(o.get(), &c);
                if cr.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<R: CoeffRing<C = C>>(&self, cr: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(cr, e.clone(), c.clone());
        }
        out
    }

    pub fn neg<R: CoeffRing<C = C>>(&self, cr: &R) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), cr.neg(c)))
                .collect(),
        }
    }

    pub fn sub<R: CoeffRing<C = C>>(&self, cr: &R, other: &Self) -> Self {
        self.add(cr, &other.neg(cr))
    }

    pub fn scale<R: CoeffRing<C = C>>(&self, cr: &R, k: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.accumulate(cr, e.clone(), cr.mul(c, k));
        }
        out
    }

    pub fn mul<R: CoeffRing<C = C>>(&self, cr: &R, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.accumulate(cr, e, cr.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow<R: CoeffRing<C = C>>(&self, cr: &R, mut k: u64) -> Self {
        let mut acc = Self::constant(cr, self.nvars, cr.from_i64(1));
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(cr, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(cr, &base);
            }
        }
        acc
    }

    pub fn div_exact<R: CoeffRing<C = C>>(&self, cr: &R, d: u64) -> Option<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.accumulate(cr, e.clone(), cr.div_exact(c, d)?);
        }
        Some(out)
    }

    pub fn map_coeffs<R: CoeffRing<C = C>>(&self, cr: &R, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.accumulate(cr, e.clone(), f(c));
        }
        out
    }

    /// Substitute variable i by a polynomial in the same variable set.
    pub fn substitute<R: CoeffRing<C = C>>(&self, cr: &R, images: &[MPoly<C>]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(cr, images[0].nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(cr, &images[i].pow(cr, k as u64));
                }
            }
            out = out.add(cr, &term);
        }
        out
    }

    /// Reduce to a polynomial with coefficients in 0..p.
    pub fn reduce_mod_p<R: CoeffRing<C = C>>(&self, cr: &R, p: u64) -> Vec<(Vec<u32>, u32)> {
        self.terms
            .iter()
            .filter_map(|(e, c)| {
                let r = cr.reduce_mod_p(c, p);
                (r != 0).then(|| (e.clone(), r))
            })
            .collect()
    }
}

/// Ghost component w_n = sum_{i<=n} p^i comps_i^{p^{n-i}}.
pub fn ghost<R: CoeffRing>(cr: &R, p: u64, comps: &[MPoly<R::C>], n: usize) -> MPoly<R::C> {
    let nvars = comps[0].nvars();
    let mut acc = MPoly::zero(nvars);
    for (i, comp) in comps.iter().enumerate().take(n + 1) {
        let term = comp.pow(cr, p.pow((n - i) as u32));
        acc = acc.add(cr, &term.scale(cr, &cr.from_i64(p.pow(i as u32) as i64)));
    }
    acc
}

/// Solve sum_{i<=n} p^i W_i^{p^{n-i}} = target(n) for W_0..W_len-1.
pub fn ghost_solve<R: CoeffRing>(
    cr: &R,
    p: u64,
    len: usize,
    target: impl Fn(usize) -> MPoly<R::C>,
) -> Result<Vec<MPoly<R::C>>> {
    let mut solved: Vec<MPoly<R::C>> = Vec::with_capacity(len);
    for n in 0..len {
        let mut rhs = target(n);
        for (i, w) in solved.iter().enumerate() {
            let term = w.pow(cr, p.pow((n - i) as u32));
            rhs = rhs.sub(cr, &term.scale(cr, &cr.from_i64(p.pow(i as u32) as i64)));
        }
        let w = rhs
            .div_exact(cr, p.pow(n as u32))
            .ok_or(Error::IntegralityFailure { p, index: n })?;
        solved.push(w.map_coeffs(cr, |c| cr.normalize_solution(c.clone(), p)));
    }
    Ok(solved)
}

/// The families of universal polynomials, as polynomials over `cr`.
/// Variable layout: X_0..X_m then Y_0..Y_m.
pub struct UniversalFamilies<C> {
    pub sum: Vec<MPoly<C>>,
    pub neg: Vec<MPoly<C>>,
    pub q: Vec<MPoly<C>>,
}

fn xy_vars<R: CoeffRing>(cr: &R, len: usize) -> (Vec<MPoly<R::C>>, Vec<MPoly<R::C>>) {
    let nvars = 2 * len;
    let xs = (0..len).map(|i| MPoly::var(cr, nvars, i)).collect();
    let ys = (0..len).map(|i| MPoly::var(cr, nvars, len + i)).collect();
    (xs, ys)
}

pub fn sum_polynomials<R: CoeffRing>(cr: &R, p: u64, len: usize) -> Result<Vec<MPoly<R::C>>> {
    let (xs, ys) = xy_vars(cr, len);
    ghost_solve(cr, p, len, |n| {
        ghost(cr, p, &xs, n).add(cr, &ghost(cr, p, &ys, n))
    })
}

pub fn product_polynomials<R: CoeffRing>(cr: &R, p: u64, len: usize) -> Result<Vec<MPoly<R::C>>> {
    let (xs, ys) = xy_vars(cr, len);
    ghost_solve(cr, p, len, |n| {
        ghost(cr, p, &xs, n).mul(cr, &ghost(cr, p, &ys, n))
    })
}

/// Negation polynomials in X_0..X_m only (nvars = len).
pub fn negation_polynomials<R: CoeffRing>(cr: &R, p: u64, len: usize) -> Result<Vec<MPoly<R::C>>> {
    let xs: Vec<_> = (0..len).map(|i| MPoly::var(cr, len, i)).collect();
    ghost_solve(cr, p, len, |n| ghost(cr, p, &xs, n).neg(cr))
}

/// Frobenius W_{len+1} -> W_len: ghost_n(F x) = ghost_{n+1}(x). nvars = len + 1.
pub fn frobenius_polynomials<R: CoeffRing>(cr: &R, p: u64, len: usize) -> Result<Vec<MPoly<R::C>>> {
    let xs: Vec<_> = (0..=len).map(|i| MPoly::var(cr, len + 1, i)).collect();
    ghost_solve(cr, p, len, |n| ghost(cr, p, &xs, n + 1))
}

/// Q_n: ghost_n(x') = ghost_n(x) + ghost_n(Q) with x'_i = X_i (1 + Y_i).
pub fn q_polynomials<R: CoeffRing>(cr: &R, p: u64, len: usize) -> Result<Vec<MPoly<R::C>>> {
    let (xs, ys) = xy_vars(cr, len);
    let one = MPoly::constant(cr, 2 * len, cr.from_i64(1));
    let scaled: Vec<_> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| x.mul(cr, &one.add(cr, y)))
        .collect();
    ghost_solve(cr, p, len, |n| {
        ghost(cr, p, &scaled, n).sub(cr, &ghost(cr, p, &xs, n))
    })
}

/// Convenience: exact integer families used for symbolic checks.
pub fn exact_families(p: u64, len: usize) -> Result<UniversalFamilies<BigInt>> {
    let cr = Integers;
    Ok(UniversalFamilies {
        sum: sum_polynomials(&cr, p, len)?,
        neg: negation_polynomials(&cr, p, len)?,
        q: q_polynomials(&cr, p, len)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(len: usize, pairs: &[(usize, u32)]) -> Vec<u32> {
        let mut e = vec![0; len];
        for &(i, k) in pairs {
            e[i] = k;
        }
        e
    }

    #[test]
    fn s1_at_p2() {
        let s = sum_polynomials(&Integers, 2, 2).unwrap();
        let reduced = s[1].reduce_mod_p(&Integers, 2);
        let mut expect = vec![
            (exps(4, &[(1, 1)]), 1),
            (exps(4, &[(3, 1)]), 1),
            (exps(4, &[(0, 1), (2, 1)]), 1),
        ];
        expect.sort();
        let mut got = reduced;
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn q0_and_q1_at_p2() {
        let q = q_polynomials(&Integers, 2, 2).unwrap();
        let q0 = q[0].reduce_mod_p(&Integers, 2);
        assert_eq!(q0, vec![(exps(4, &[(0, 1), (2, 1)]), 1)]);
        let mut q1 = q[1].reduce_mod_p(&Integers, 2);
        q1.sort();
        let mut expect = vec![
            (exps(4, &[(0, 2), (2, 1)]), 1),
            (exps(4, &[(1, 1), (3, 1)]), 1),
        ];
        expect.sort();
        assert_eq!(q1, expect);
    }

    #[test]
    fn truncated_route_matches_exact_route() {
        for (p, len) in [(2u64, 4usize), (3, 3)] {
            let exact = sum_polynomials(&Integers, p, len).unwrap();
            let cr = ModPrimePower::new(p, len as u32);
            let trunc = sum_polynomials(&cr, p, len).unwrap();
            for (a, b) in exact.iter().zip(&trunc) {
                assert_eq!(a.reduce_mod_p(&Integers, p), b.reduce_mod_p(&cr, p));
            }
        }
    }
}
