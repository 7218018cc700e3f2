//! GF(q) = GF(p)[t]/(f(t)) with log/exp tables.
//!
//! Elements are packed as `u32` in base p: the element sum c_i t^i is stored
//! as sum c_i p^i. Zero is 0 and one is 1.

use crate::error::{Error, Result};

/// Largest supported field size; tables are O(q).
pub const MAX_Q: u64 = 1 << 20;

/// Conway polynomials, coefficients low degree first (monic, leading 1 included).
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// GF(p^e) with the Conway polynomial when tabulated, otherwise the
    /// lexicographically first monic irreducible polynomial with primitive root t.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        check_params(p, e)?;
        let modulus = match CONWAY.iter().find(|(cp, ce, _)| *cp == p && *ce == e) {
            Some((_, _, m)) => m.to_vec(),
            None => first_primitive_modulus(p, e)?,
        };
        Self::with_modulus(p, modulus)
    }

    /// GF(p)[t]/(modulus) for a user-supplied monic irreducible polynomial
    /// (coefficients low degree first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::Config("modulus must have degree >= 1".into()));
        }
        let e = (modulus.len() - 1) as u32;
        check_params(p, e)?;
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Config("modulus must be monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::Config(format!(
                "modulus {:?} is not irreducible over GF({p})",
                modulus
            )));
        }
        let q = p.pow(e);
        let mut field = GaloisField {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let order = q - 1;
        let candidates = std::iter::once(self.pack(&[0, 1])).chain(2..q as u32);
        for g in candidates {
            if g == 0 {
                continue;
            }
            let mut exp = vec![0u32; order];
            let mut log = vec![0u32; q];
            let mut cur = 1u32;
            let mut ok = true;
            for (k, slot) in exp.iter_mut().enumerate() {
                if k > 0 && cur == 1 {
                    ok = false;
                    break;
                }
                *slot = cur;
                log[cur as usize] = k as u32;
                cur = self.slow_mul(cur, g);
            }
            if ok && cur == 1 {
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    fn unpack(&self, mut a: u32) -> Vec<u64> {
        let mut v = vec![0; self.e as usize];
        for c in v.iter_mut() {
            *c = a as u64 % self.p;
            a /= self.p as u32;
        }
        v
    }

    fn pack(&self, coeffs: &[u64]) -> u32 {
        let reduced = poly_rem_modp(self.p, coeffs, &self.modulus);
        reduced
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c % self.p) as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let x = self.unpack(a);
        let y = self.unpack(b);
        let mut prod = vec![0u64; x.len() + y.len()];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        self.pack(&prod)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of t.
    pub fn generator(&self) -> u32 {
        self.pack(&[0, 1])
    }

    /// Coefficients of a in the basis 1, t, ..., t^{e-1}.
    pub fn coefficients(&self, a: u32) -> Vec<u64> {
        self.unpack(a)
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> u32 {
        self.pack(coeffs)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p as u32;
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a as usize] as u64;
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * k as u128;
        self.exp[(l % (self.q as u128 - 1)) as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }

    /// The unique b with b^p = a (Frobenius is bijective on GF(q)).
    pub fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, self.q / self.p)
    }

    /// Image in GF(p) when a lies in the prime field.
    pub fn as_prime_field(&self, a: u32) -> Option<u64> {
        if (a as u64) < self.p {
            Some(a as u64)
        } else {
            None
        }
    }
}

fn check_params(p: u64, e: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Config(format!("p = {p} is not prime")));
    }
    if e == 0 {
        return Err(Error::Config("extension degree must be >= 1".into()));
    }
    match p.checked_pow(e) {
        Some(q) if q <= MAX_Q => Ok(()),
        _ => Err(Error::Config(format!(
            "q = {p}^{e} exceeds the supported size {MAX_Q}"
        ))),
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_rem_modp(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|c| c % p).collect();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        if c != 0 {
            for (i, mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p * p - c * mi % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r.resize(dm.max(1), 0);
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for k in 1..=deg / 2 {
        // every monic polynomial of degree k
        let count = p.pow(k as u32);
        for idx in 0..count {
            let mut d = Vec::with_capacity(k + 1);
            let mut x = idx;
            for _ in 0..k {
                d.push(x % p);
                x /= p;
            }
            d.push(1);
            let r = poly_rem_modp(p, f, &d);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn first_primitive_modulus(p: u64, e: u32) -> Result<Vec<u64>> {
    let count = p.pow(e);
    for idx in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut x = idx;
        for _ in 0..e {
            f.push(x % p);
            x /= p;
        }
        f.push(1);
        if f[0] == 0 || !is_irreducible(p, &f) {
            continue;
        }
        let field = GaloisField::with_modulus(p, f.clone())?;
        let t = field.generator();
        if t != 0 && (1..field.q - 1).all(|k| field.pow(t, k) != 1) {
            return Ok(f);
        }
    }
    Err(Error::Config(format!(
        "no primitive modulus found for GF({p}^{e})"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_table_is_irreducible_and_primitive() {
        for (p, e, m) in CONWAY {
            let f = GaloisField::with_modulus(*p, m.to_vec()).unwrap();
            let t = f.generator();
            let q = f.order();
            // t generates the multiplicative group
            let first_one = (1..q).find(|&k| f.pow(t, k) == 1).unwrap();
            assert_eq!(first_one, q - 1, "t not primitive for p={p} e={e}");
        }
    }

    #[test]
    fn gf4_generator_is_square_of_its_square() {
        let f = GaloisField::new(2, 2).unwrap();
        let g = f.generator();
        let g2 = f.mul(g, g);
        assert_eq!(f.pth_root(g), g2);
        assert_eq!(f.mul(g2, g2), g);
    }

    #[test]
    fn field_axioms_exhaustive_gf9() {
        let f = GaloisField::new(3, 2).unwrap();
        for a in 0..9u32 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.frobenius(f.pth_root(a)), a);
            for b in 0..9u32 {
                assert_eq!(f.add(a, b), f.add(b, a));
                for c in 0..9u32 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus_and_composite_p() {
        assert!(GaloisField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(GaloisField::new(4, 1).is_err());
    }

    #[test]
    fn fallback_modulus_for_untabulated_degree() {
        let f = GaloisField::new(11, 2).unwrap();
        assert_eq!(f.order(), 121);
        let t = f.generator();
        assert_eq!((1..121).find(|&k| f.pow(t, k) == 1), Some(120));
    }
}
