use std::collections::BTreeMap;

use super::residue::{ResidueElem, ResidueField};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Finite sum of c_k pi^k with c_k in F, exponents strictly increasing and
/// coefficients nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentElem {
    terms: Vec<(i64, ResidueElem)>,
}

impl LaurentElem {
    pub fn terms(&self) -> &[(i64, ResidueElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// v(x); `None` stands for +infinity.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn leading(&self) -> Option<(i64, &ResidueElem)> {
        self.terms.first().map(|(k, c)| (*k, c))
    }

    /// Coefficient of pi^k (None when zero).
    pub fn coefficient(&self, k: i64) -> Option<&ResidueElem> {
        self.terms
            .binary_search_by_key(&k, |(e, _)| *e)
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Largest exponent in the support.
    pub fn top_exponent(&self) -> Option<i64> {
        self.terms.last().map(|(k, _)| *k)
    }

    /// The single term c pi^k if x is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &ResidueElem)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((*k, c)),
            _ => None,
        }
    }
}

/// K restricted to F[pi, 1/pi].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentRing {
    residue: ResidueField,
}

impl LaurentRing {
    pub fn new(residue: ResidueField) -> Self {
        LaurentRing { residue }
    }

    pub fn residue(&self) -> &ResidueField {
        &self.residue
    }

    pub fn p(&self) -> u64 {
        self.residue.p()
    }

    fn from_map(&self, map: BTreeMap<i64, ResidueElem>) -> LaurentElem {
        LaurentElem {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// c pi^k
    pub fn monomial(&self, c: ResidueElem, k: i64) -> LaurentElem {
        if c.is_zero() {
            return LaurentElem::default();
        }
        LaurentElem {
            terms: vec![(k, c)],
        }
    }

    pub fn constant(&self, c: ResidueElem) -> LaurentElem {
        self.monomial(c, 0)
    }

    /// pi^k
    pub fn pi_pow(&self, k: i64) -> LaurentElem {
        self.monomial(self.residue.one(), k)
    }

    /// Build from (exponent, coefficient) pairs in any order; merges repeats.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (i64, ResidueElem)>) -> LaurentElem {
        let mut map: BTreeMap<i64, ResidueElem> = BTreeMap::new();
        for (k, c) in terms {
            let slot = map.entry(k).or_insert_with(|| self.residue.zero());
            *slot = self.residue.add(slot, &c);
        }
        self.from_map(map)
    }

    /// x * pi^k
    pub fn shift(&self, x: &LaurentElem, k: i64) -> LaurentElem {
        LaurentElem {
            terms: x.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, x: &LaurentElem, c: &ResidueElem) -> LaurentElem {
        if c.is_zero() {
            return LaurentElem::default();
        }
        LaurentElem {
            terms: x
                .terms
                .iter()
                .map(|(e, a)| (*e, self.residue.mul(a, c)))
                .collect(),
        }
    }

    /// Inverse of a unit of F[pi, 1/pi], i.e. of a nonzero monomial.
    pub fn inv(&self, x: &LaurentElem) -> Result<LaurentElem> {
        match x.as_monomial() {
            Some((k, c)) => Ok(self.monomial(self.residue.inv(c)?, -k)),
            None if x.is_zero() => Err(Error::DivisionByZero),
            None => Err(Error::NotInvertible(format!("{} terms", x.terms.len()))),
        }
    }

    pub fn pow_signed(&self, x: &LaurentElem, e: i64) -> Result<LaurentElem> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(&self.inv(x)?, e.unsigned_abs()))
        }
    }

    /// Apply a map to every coefficient, keeping exponents.
    pub fn map_coefficients(
        &self,
        x: &LaurentElem,
        f: impl Fn(&ResidueElem) -> ResidueElem,
    ) -> LaurentElem {
        self.from_terms(x.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Part of x with exponent < bound.
    pub fn truncate_below(&self, x: &LaurentElem, bound: i64) -> LaurentElem {
        LaurentElem {
            terms: x
                .terms
                .iter()
                .filter(|(k, _)| *k < bound)
                .cloned()
                .collect(),
        }
    }

    pub fn random<R: rand::Rng>(
        &self,
        rng: &mut R,
        exp_range: std::ops::RangeInclusive<i64>,
        max_terms: usize,
        max_deg: usize,
        max_den_deg: usize,
    ) -> LaurentElem {
        let n = rng.gen_range(0..=max_terms);
        self.from_terms((0..n).map(|_| {
            (
                rng.gen_range(exp_range.clone()),
                self.residue.random(rng, max_deg, max_den_deg),
            )
        }))
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentElem;

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn zero(&self) -> LaurentElem {
        LaurentElem::default()
    }

    fn one(&self) -> LaurentElem {
        self.pi_pow(0)
    }

    fn is_zero(&self, a: &LaurentElem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            match (a.terms.get(i), b.terms.get(j)) {
                (Some((ka, ca)), Some((kb, cb))) if ka == kb => {
                    let c = self.residue.add(ca, cb);
                    if !c.is_zero() {
                        out.push((*ka, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ka, ca)), Some((kb, _))) if ka < kb => {
                    out.push((*ka, ca.clone()));
                    i += 1;
                }
                (Some(_), Some((kb, cb))) => {
                    out.push((*kb, cb.clone()));
                    j += 1;
                }
                (Some((ka, ca)), None) => {
                    out.push((*ka, ca.clone()));
                    i += 1;
                }
                (None, Some((kb, cb))) => {
                    out.push((*kb, cb.clone()));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        LaurentElem { terms: out }
    }

    fn neg(&self, a: &LaurentElem) -> LaurentElem {
        LaurentElem {
            terms: a
                .terms
                .iter()
                .map(|(k, c)| (*k, self.residue.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &LaurentElem, b: &LaurentElem) -> LaurentElem {
        if a.is_zero() || b.is_zero() {
            return LaurentElem::default();
        }
        if let Some((k, c)) = a.as_monomial() {
            return self.shift(&self.scale(b, c), k);
        }
        if let Some((k, c)) = b.as_monomial() {
            return self.shift(&self.scale(a, c), k);
        }
        let mut map: BTreeMap<i64, ResidueElem> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let prod = self.residue.mul(ca, cb);
                match map.get_mut(&(ka + kb)) {
                    Some(slot) => *slot = self.residue.add(slot, &prod),
                    None => {
                        map.insert(ka + kb, prod);
                    }
                }
            }
        }
        self.from_map(map)
    }

    fn from_int(&self, n: i64) -> LaurentElem {
        self.constant(self.residue.from_int(n))
    }

    /// sum c_k^p pi^{pk}
    fn frobenius(&self, a: &LaurentElem) -> LaurentElem {
        let p = self.p() as i64;
        LaurentElem {
            terms: a
                .terms
                .iter()
                .map(|(k, c)| (k * p, self.residue.frobenius(c)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn ring(p: u64) -> LaurentRing {
        LaurentRing::new(ResidueField::new(FieldConfig::rational(p, 1)).unwrap())
    }

    #[test]
    fn frobenius_of_y_over_pi() {
        let k = ring(2);
        let y = k.residue().var().unwrap();
        let x = k.monomial(y.clone(), -1);
        let expect = k.monomial(k.residue().mul(&y, &y), -2);
        assert_eq!(k.frobenius(&x), expect);
    }

    #[test]
    fn product_over_gf2() {
        let k = ring(2);
        let a = k.add(&k.pi_pow(-1), &k.one());
        let b = k.sub(&k.pi_pow(1), &k.one());
        let expect = k.add(&k.pi_pow(1), &k.pi_pow(-1));
        assert_eq!(k.mul(&a, &b), expect);
    }

    #[test]
    fn valuation_of_product() {
        let k = ring(3);
        let x = k.mul(&k.pi_pow(-3), &k.pi_pow(5));
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(k.zero().valuation(), None);
    }

    #[test]
    fn non_monomials_are_not_units() {
        let k = ring(2);
        let x = k.add(&k.pi_pow(1), &k.one());
        assert!(matches!(k.inv(&x), Err(Error::NotInvertible(_))));
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }
}
