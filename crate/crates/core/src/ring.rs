//! Commutative rings of characteristic p, as consumed by the Witt machinery.
//!
//! Rings are objects and elements are plain values; every operation goes
//! through the ring so elements never carry their own context.

use std::fmt::Debug;

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    /// The prime p; the Witt polynomials are reduced mod p before evaluation.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Image of an integer under Z -> ring.
    fn from_int(&self, n: i64) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// x -> x^p. Rings with a cheaper description override this.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }
}

/// GF(p)[t]/(t^k): a finite non-reduced test ring for the Witt identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPolyRing {
    p: u64,
    k: usize,
}

impl TruncatedPolyRing {
    pub fn new(p: u64, k: usize) -> Self {
        assert!(k >= 1);
        TruncatedPolyRing { p, k }
    }

    pub fn precision(&self) -> usize {
        self.k
    }

    /// Element from coefficients (low degree first); reduced mod p and truncated.
    pub fn elem(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut v = vec![0; self.k];
        for (i, c) in coeffs.iter().take(self.k).enumerate() {
            v[i] = c % self.p;
        }
        v
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.k).map(|_| rng.gen_range(0..self.p)).collect()
    }
}

impl Ring for TruncatedPolyRing {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.k]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = 1 % self.p;
        v
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut out = vec![0; self.k];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.k - i) {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        out
    }

    fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_kills_high_powers() {
        let r = TruncatedPolyRing::new(2, 4);
        let t = r.elem(&[0, 1]);
        assert_eq!(r.pow(&t, 3), r.elem(&[0, 0, 0, 1]));
        assert!(r.is_zero(&r.pow(&t, 4)));
    }

    #[test]
    fn from_int_reduces_mod_p() {
        let r = TruncatedPolyRing::new(3, 2);
        assert_eq!(r.from_int(-1), r.elem(&[2]));
        assert_eq!(r.from_int(7), r.one());
    }
}
