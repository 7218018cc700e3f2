//! Witt vectors of finite length over rings of characteristic p.
//!
//! Addition, negation and the Q_n rescaling polynomials are computed once
//! per (p, m) by the ghost recursion, reduced mod p and cached.

mod cache;
mod filtration;
pub mod mpoly;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;
use mpoly::{CoeffRing, ModPrimePower};

pub use filtration::{fil_level, fil_membership, fil_prime_level, fil_prime_membership, ord_p};

/// Desk-scale limits on the universal polynomials.
pub const MAX_P: u64 = 5;
pub const MAX_M: usize = 3;

/// A polynomial with coefficients in 0..p, evaluated in characteristic p rings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, u32)>,
}

impl WittPoly {
    fn from_mpoly<R: CoeffRing>(cr: &R, p: u64, poly: &mpoly::MPoly<R::C>) -> Self {
        WittPoly {
            nvars: poly.nvars(),
            terms: poly.reduce_mod_p(cr, p),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms as (exponent vector, coefficient mod p).
    pub fn terms(&self) -> &[(Vec<u32>, u32)] {
        &self.terms
    }

    pub fn eval<R: Ring>(&self, ring: &R, vars: &[R::Elem]) -> R::Elem {
        debug_assert_eq!(vars.len(), self.nvars);
        let zero_var: Vec<bool> = vars.iter().map(|v| ring.is_zero(v)).collect();
        let mut powers: Vec<HashMap<u32, R::Elem>> = vec![HashMap::new(); vars.len()];
        let mut acc = ring.zero();
        for (exps, c) in &self.terms {
            if exps.iter().zip(&zero_var).any(|(&e, &z)| e > 0 && z) {
                continue;
            }
            let mut term: Option<R::Elem> = None;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers[i]
                    .entry(e)
                    .or_insert_with(|| ring.pow(&vars[i], e as u64))
                    .clone();
                term = Some(match term {
                    None => pw,
                    Some(t) => ring.mul(&t, &pw),
                });
            }
            let term = term.unwrap_or_else(|| ring.one());
            let term = if *c == 1 {
                term
            } else {
                ring.mul(&term, &ring.from_int(*c as i64))
            };
            acc = ring.add(&acc, &term);
        }
        acc
    }
}

/// A Witt vector (x_0, ..., x_m); its length is fixed by the context it is used with.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittVec<E> {
    comps: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn new(comps: Vec<E>) -> Self {
        assert!(!comps.is_empty(), "witt vectors have length >= 1");
        WittVec { comps }
    }

    pub fn components(&self) -> &[E] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<E> {
        self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// m, where the vector lives in W_{m+1}.
    pub fn m(&self) -> usize {
        self.comps.len() - 1
    }
}

impl<E: Clone> WittVec<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, len: usize) -> Self {
        WittVec::new(vec![ring.zero(); len])
    }

    /// (a, 0, ..., 0) of the given length.
    pub fn teichmuller_like<R: Ring<Elem = E>>(ring: &R, a: E, len: usize) -> Self {
        let mut comps = vec![ring.zero(); len];
        comps[0] = a;
        WittVec::new(comps)
    }

    /// (0, ..., 0, a, 0, ..., 0) with a at `index`.
    pub fn single<R: Ring<Elem = E>>(ring: &R, a: E, index: usize, len: usize) -> Self {
        let mut comps = vec![ring.zero(); len];
        comps[index] = a;
        WittVec::new(comps)
    }
}

pub fn is_zero<R: Ring>(ring: &R, x: &WittVec<R::Elem>) -> bool {
    x.comps.iter().all(|c| ring.is_zero(c))
}

/// Componentwise p-th power: Frobenius on W_{m+1}(A) for an F_p-algebra A.
pub fn frobenius<R: Ring>(ring: &R, x: &WittVec<R::Elem>) -> WittVec<R::Elem> {
    WittVec::new(x.comps.iter().map(|c| ring.frobenius(c)).collect())
}

/// V: W_{m+1} -> W_{m+2}, (x_0..x_m) -> (0, x_0..x_m).
pub fn verschiebung<R: Ring>(ring: &R, x: &WittVec<R::Elem>) -> WittVec<R::Elem> {
    let mut comps = Vec::with_capacity(x.len() + 1);
    comps.push(ring.zero());
    comps.extend(x.comps.iter().cloned());
    WittVec::new(comps)
}

/// V^k
pub fn verschiebung_pow<R: Ring>(ring: &R, x: &WittVec<R::Elem>, k: usize) -> WittVec<R::Elem> {
    let mut comps = vec![ring.zero(); k];
    comps.extend(x.comps.iter().cloned());
    WittVec::new(comps)
}

/// Restriction W_{m+1} -> W_{len}: keep the first `len` components.
pub fn truncate<E: Clone>(x: &WittVec<E>, len: usize) -> WittVec<E> {
    WittVec::new(x.comps[..len].to_vec())
}

pub struct WittContext {
    p: u64,
    m: usize,
    sum: Vec<WittPoly>,
    neg: Vec<WittPoly>,
    q: Vec<WittPoly>,
    product: OnceLock<Vec<WittPoly>>,
    frobenius: OnceLock<Vec<WittPoly>>,
}

impl std::fmt::Debug for WittContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WittContext")
            .field("p", &self.p)
            .field("m", &self.m)
            .finish_non_exhaustive()
    }
}

fn contexts() -> &'static Mutex<HashMap<(u64, usize), Arc<WittContext>>> {
    static CONTEXTS: OnceLock<Mutex<HashMap<(u64, usize), Arc<WittContext>>>> = OnceLock::new();
    CONTEXTS.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn check_range(p: u64, m: usize) -> Result<()> {
    if !crate::field::gf::is_prime(p) {
        return Err(Error::Config(format!("p = {p} is not prime")));
    }
    if p > MAX_P || m > MAX_M {
        return Err(Error::WittRange { p, len: m + 1 });
    }
    Ok(())
}

impl WittContext {
    /// Build the polynomials for W_{m+1} in characteristic p (not memoized).
    pub fn build(p: u64, m: usize) -> Result<Self> {
        check_range(p, m)?;
        let len = m + 1;
        let cr = ModPrimePower::new(p, len as u32 + 1);
        let conv = |polys: Vec<mpoly::MPoly<u64>>| -> Vec<WittPoly> {
            polys
                .iter()
                .map(|q| WittPoly::from_mpoly(&cr, p, q))
                .collect()
        };
        Ok(WittContext {
            p,
            m,
            sum: conv(mpoly::sum_polynomials(&cr, p, len)?),
            neg: conv(mpoly::negation_polynomials(&cr, p, len)?),
            q: conv(mpoly::q_polynomials(&cr, p, len)?),
            product: OnceLock::new(),
            frobenius: OnceLock::new(),
        })
    }

    /// Shared, memoized context. Consults `SWANLAB_CACHE_DIR` when set.
    pub fn shared(p: u64, m: usize) -> Result<Arc<WittContext>> {
        check_range(p, m)?;
        let mut map = contexts().lock().expect("witt context cache poisoned");
        if let Some(ctx) = map.get(&(p, m)) {
            return Ok(ctx.clone());
        }
        let ctx = match cache::load(p, m) {
            Some(ctx) => ctx,
            None => {
                let ctx = Self::build(p, m)?;
                cache::store(&ctx);
                ctx
            }
        };
        let ctx = Arc::new(ctx);
        map.insert((p, m), ctx.clone());
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.m + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum_polynomials(&self) -> &[WittPoly] {
        &self.sum
    }

    pub fn negation_polynomials(&self) -> &[WittPoly] {
        &self.neg
    }

    pub fn q_polynomials(&self) -> &[WittPoly] {
        &self.q
    }

    /// Multiplication polynomials; built on first use.
    pub fn product_polynomials(&self) -> &[WittPoly] {
        self.product.get_or_init(|| {
            let cr = ModPrimePower::new(self.p, self.len() as u32 + 1);
            mpoly::product_polynomials(&cr, self.p, self.len())
                .expect("ghost recursion is integral")
                .iter()
                .map(|q| WittPoly::from_mpoly(&cr, self.p, q))
                .collect()
        })
    }

    /// Universal Frobenius W_{m+2} -> W_{m+1}, reduced mod p; built on first use.
    pub fn frobenius_polynomials(&self) -> &[WittPoly] {
        self.frobenius.get_or_init(|| {
            let cr = ModPrimePower::new(self.p, self.len() as u32 + 2);
            mpoly::frobenius_polynomials(&cr, self.p, self.len())
                .expect("ghost recursion is integral")
                .iter()
                .map(|q| WittPoly::from_mpoly(&cr, self.p, q))
                .collect()
        })
    }

    fn check<R: Ring>(&self, ring: &R, x: &WittVec<R::Elem>) -> Result<()> {
        if ring.characteristic() != self.p {
            return Err(Error::Config(format!(
                "ring has characteristic {} but context has p = {}",
                ring.characteristic(),
                self.p
            )));
        }
        if x.len() != self.len() {
            return Err(Error::LengthMismatch(x.len(), self.len()));
        }
        Ok(())
    }

    fn eval_binary<R: Ring>(
        &self,
        ring: &R,
        polys: &[WittPoly],
        x: &WittVec<R::Elem>,
        y: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        self.check(ring, x)?;
        self.check(ring, y)?;
        let len = self.len();
        let mut vars = Vec::with_capacity(2 * len);
        vars.extend(x.comps.iter().cloned());
        vars.extend(y.comps.iter().cloned());
        Ok(WittVec::new(
            polys.iter().map(|poly| poly.eval(ring, &vars)).collect(),
        ))
    }

    pub fn add<R: Ring>(
        &self,
        ring: &R,
        x: &WittVec<R::Elem>,
        y: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        if is_zero(ring, y) {
            self.check(ring, x)?;
            return Ok(x.clone());
        }
        if is_zero(ring, x) {
            self.check(ring, y)?;
            return Ok(y.clone());
        }
        self.eval_binary(ring, &self.sum, x, y)
    }

    pub fn neg<R: Ring>(&self, ring: &R, x: &WittVec<R::Elem>) -> Result<WittVec<R::Elem>> {
        self.check(ring, x)?;
        Ok(WittVec::new(
            self.neg
                .iter()
                .map(|poly| poly.eval(ring, &x.comps))
                .collect(),
        ))
    }

    pub fn sub<R: Ring>(
        &self,
        ring: &R,
        x: &WittVec<R::Elem>,
        y: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        self.add(ring, x, &self.neg(ring, y)?)
    }

    /// Ring multiplication (exposed for tests).
    pub fn mul<R: Ring>(
        &self,
        ring: &R,
        x: &WittVec<R::Elem>,
        y: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        let polys = self.product_polynomials().to_vec();
        self.eval_binary(ring, &polys, x, y)
    }

    /// c * x for an integer c, by double-and-add.
    pub fn mul_int<R: Ring>(
        &self,
        ring: &R,
        x: &WittVec<R::Elem>,
        c: i64,
    ) -> Result<WittVec<R::Elem>> {
        let base = if c < 0 { self.neg(ring, x)? } else { x.clone() };
        let mut k = c.unsigned_abs();
        let mut acc = WittVec::zero(ring, self.len());
        let mut pw = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(ring, &acc, &pw)?;
            }
            k >>= 1;
            if k > 0 {
                pw = self.add(ring, &pw, &pw)?;
            }
        }
        Ok(acc)
    }

    /// (F - 1)(y) = F(y) - y.
    pub fn frobenius_minus_one<R: Ring>(
        &self,
        ring: &R,
        y: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        self.sub(ring, &frobenius(ring, y), y)
    }

    /// (Q_0(x, y), ..., Q_m(x, y)).
    pub fn q_apply<R: Ring>(
        &self,
        ring: &R,
        x: &WittVec<R::Elem>,
        y: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>> {
        self.eval_binary(ring, &self.q, x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::TruncatedPolyRing;

    #[test]
    fn add_of_teichmuller_pair_p2() {
        let ctx = WittContext::shared(2, 1).unwrap();
        let r = TruncatedPolyRing::new(2, 4);
        let a = r.elem(&[0, 1, 1]);
        let b = r.elem(&[1, 0, 1, 1]);
        let x = WittVec::new(vec![a.clone(), r.zero()]);
        let y = WittVec::new(vec![b.clone(), r.zero()]);
        let s = ctx.add(&r, &x, &y).unwrap();
        assert_eq!(s.components()[0], r.add(&a, &b));
        assert_eq!(s.components()[1], r.mul(&a, &b));
    }

    #[test]
    fn negation_is_inverse() {
        let ctx = WittContext::shared(2, 2).unwrap();
        let r = TruncatedPolyRing::new(2, 3);
        let x = WittVec::new(vec![r.elem(&[1, 1]), r.elem(&[0, 1]), r.elem(&[1, 0, 1])]);
        let n = ctx.neg(&r, &x).unwrap();
        assert!(is_zero(&r, &ctx.add(&r, &x, &n).unwrap()));
    }

    #[test]
    fn q0_is_xy() {
        for p in [2, 3, 5] {
            let ctx = WittContext::shared(p, 0).unwrap();
            let q0 = &ctx.q_polynomials()[0];
            assert_eq!(q0.terms(), &[(vec![1, 1], 1)]);
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(matches!(
            WittContext::build(7, 1),
            Err(Error::WittRange { .. })
        ));
        assert!(matches!(
            WittContext::build(2, 4),
            Err(Error::WittRange { .. })
        ));
    }

    #[test]
    fn frobenius_polynomials_reduce_to_pth_powers() {
        for (p, m) in [(2, 2), (3, 1)] {
            let ctx = WittContext::shared(p, m).unwrap();
            for (i, poly) in ctx.frobenius_polynomials().iter().enumerate() {
                let mut e = vec![0; m + 2];
                e[i] = p as u32;
                assert_eq!(poly.terms(), &[(e, 1)]);
            }
        }
    }
}
