use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gf::GaloisField;
use super::poly::{self, Poly};
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueKind {
    /// F = GF(q); empty p-basis.
    Perfect,
    /// F = GF(q)(y); p-basis {y}.
    RationalFunction { var: String },
}

/// Everything needed to rebuild the residue field; echoed in every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub p: u64,
    pub e: u32,
    /// Monic irreducible polynomial defining GF(q) over GF(p), low degree first.
    /// `None` selects the default (Conway where tabulated).
    pub modulus: Option<Vec<u64>>,
    pub residue: ResidueKind,
}

impl FieldConfig {
    pub fn perfect(p: u64, e: u32) -> Self {
        FieldConfig {
            p,
            e,
            modulus: None,
            residue: ResidueKind::Perfect,
        }
    }

    pub fn rational(p: u64, e: u32) -> Self {
        FieldConfig {
            p,
            e,
            modulus: None,
            residue: ResidueKind::RationalFunction { var: "y".into() },
        }
    }

    /// Number of p-basis elements.
    pub fn p_basis_size(&self) -> usize {
        match self.residue {
            ResidueKind::Perfect => 0,
            ResidueKind::RationalFunction { .. } => 1,
        }
    }
}

/// A reduced fraction num/den with monic den. For a perfect residue field
/// both are constants and den = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElem {
    num: Poly,
    den: Poly,
}

impl ResidueElem {
    pub fn numerator(&self) -> &[u32] {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num == [1] && self.den == [1]
    }

    /// Constant in GF(q), if it is one.
    pub fn as_constant(&self) -> Option<u32> {
        if self.den == [1] && self.num.len() <= 1 {
            Some(self.num.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    gf: Arc<GaloisField>,
    config: FieldConfig,
}

impl ResidueField {
    pub fn new(config: FieldConfig) -> Result<Self> {
        let gf = match &config.modulus {
            Some(m) => {
                if m.len() != config.e as usize + 1 {
                    return Err(Error::Config(format!(
                        "modulus has degree {} but e = {}",
                        m.len().saturating_sub(1),
                        config.e
                    )));
                }
                GaloisField::with_modulus(config.p, m.clone())?
            }
            None => GaloisField::new(config.p, config.e)?,
        };
        let mut config = config;
        config.modulus = Some(gf.modulus().to_vec());
        Ok(ResidueField {
            gf: Arc::new(gf),
            config,
        })
    }

    pub fn gf(&self) -> &GaloisField {
        &self.gf
    }

    /// The configuration with the modulus filled in.
    pub fn config(&self) -> &FieldConfig {
        &self.config
    }

    pub fn p(&self) -> u64 {
        self.gf.p()
    }

    pub fn is_perfect(&self) -> bool {
        self.config.residue == ResidueKind::Perfect
    }

    pub fn var_name(&self) -> Option<&str> {
        match &self.config.residue {
            ResidueKind::Perfect => None,
            ResidueKind::RationalFunction { var } => Some(var),
        }
    }

    fn make(&self, num: Poly, den: Poly) -> ResidueElem {
        let gf = &*self.gf;
        let num = poly::normalize(num);
        let den = poly::normalize(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return ResidueElem { num, den: vec![1] };
        }
        if den.len() == 1 {
            let inv = gf.inv(den[0]).unwrap();
            return ResidueElem {
                num: poly::scale(gf, &num, inv),
                den: vec![1],
            };
        }
        let g = poly::gcd(gf, &num, &den);
        let (num, den) = if g.len() > 1 {
            (poly::divrem(gf, &num, &g).0, poly::divrem(gf, &den, &g).0)
        } else {
            (num, den)
        };
        let lead_inv = gf.inv(*den.last().unwrap()).unwrap();
        ResidueElem {
            num: poly::scale(gf, &num, lead_inv),
            den: poly::scale(gf, &den, lead_inv),
        }
    }

    /// num/den from raw polynomials; fails if den = 0 or if y appears over a perfect field.
    pub fn fraction(&self, num: Poly, den: Poly) -> Result<ResidueElem> {
        let num = poly::normalize(num);
        let den = poly::normalize(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if self.is_perfect() && (num.len() > 1 || den.len() > 1) {
            return Err(Error::Config(
                "perfect residue field has no variable".into(),
            ));
        }
        Ok(self.make(num, den))
    }

    pub fn constant(&self, c: u32) -> ResidueElem {
        self.make(poly::constant(c), vec![1])
    }

    pub fn gf_generator(&self) -> ResidueElem {
        self.constant(self.gf.generator())
    }

    /// The p-basis element y; `None` for a perfect field.
    pub fn var(&self) -> Option<ResidueElem> {
        if self.is_perfect() {
            None
        } else {
            Some(self.make(vec![0, 1], vec![1]))
        }
    }

    /// c * y^k (with k = 0 allowed for a perfect field).
    pub fn monomial(&self, c: u32, k: usize) -> ResidueElem {
        assert!(k == 0 || !self.is_perfect());
        self.make(poly::monomial(c, k), vec![1])
    }

    pub fn inv(&self, a: &ResidueElem) -> Result<ResidueElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.make(a.den.clone(), a.num.clone()))
    }

    pub fn div(&self, a: &ResidueElem, b: &ResidueElem) -> Result<ResidueElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Integer power, negative exponents allowed for nonzero a.
    pub fn pow_signed(&self, a: &ResidueElem, e: i64) -> Result<ResidueElem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// (f_0, ..., f_{p-1}) with f = sum_j f_j^p y^j. For a perfect field only
    /// f_0 is nonzero.
    pub fn p_basis_decompose(&self, f: &ResidueElem) -> Vec<ResidueElem> {
        let p = self.p() as usize;
        let gf = &*self.gf;
        if self.is_perfect() {
            let mut out = vec![self.zero(); p];
            out[0] = self.constant(gf.pth_root(f.as_constant().unwrap()));
            return out;
        }
        // f = N D^{p-1} / D^p
        let scaled = poly::mul(gf, &f.num, &poly::pow(gf, &f.den, p as u64 - 1));
        poly::p_basis_split(gf, &scaled)
            .into_iter()
            .map(|part| self.make(part, f.den.clone()))
            .collect()
    }

    /// Inverse of `p_basis_decompose`.
    pub fn p_basis_assemble(&self, parts: &[ResidueElem]) -> ResidueElem {
        let mut acc = self.zero();
        for (j, part) in parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let term = if j == 0 {
                self.frobenius(part)
            } else {
                self.mul(&self.frobenius(part), &self.monomial(1, j))
            };
            acc = self.add(&acc, &term);
        }
        acc
    }

    pub fn is_pth_power(&self, f: &ResidueElem) -> bool {
        if self.is_perfect() {
            return true;
        }
        let p = self.p() as usize;
        let gf = &*self.gf;
        let scaled = poly::mul(gf, &f.num, &poly::pow(gf, &f.den, p as u64 - 1));
        scaled
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || k % p == 0)
    }

    pub fn pth_root(&self, f: &ResidueElem) -> Result<ResidueElem> {
        if !self.is_pth_power(f) {
            return Err(Error::NotAPthPower);
        }
        Ok(self.p_basis_decompose(f).swap_remove(0))
    }

    /// The p^r-th root, if f is a p^r-th power.
    pub fn pth_root_iter(&self, f: &ResidueElem, r: u32) -> Option<ResidueElem> {
        let mut cur = f.clone();
        for _ in 0..r {
            cur = self.pth_root(&cur).ok()?;
        }
        Some(cur)
    }

    /// df/dy; zero on a perfect field.
    pub fn derivative(&self, f: &ResidueElem) -> ResidueElem {
        if self.is_perfect() || f.is_zero() {
            return self.zero();
        }
        let gf = &*self.gf;
        let dn = poly::derivative(gf, &f.num);
        let dd = poly::derivative(gf, &f.den);
        let num = poly::sub(gf, &poly::mul(gf, &dn, &f.den), &poly::mul(gf, &f.num, &dd));
        let den = poly::mul(gf, &f.den, &f.den);
        self.make(num, den)
    }

    /// Random element with numerator degree <= max_deg and, with probability
    /// one half, a random monic denominator of degree <= max_den_deg.
    pub fn random<R: rand::Rng>(
        &self,
        rng: &mut R,
        max_deg: usize,
        max_den_deg: usize,
    ) -> ResidueElem {
        let q = self.gf.order() as u32;
        if self.is_perfect() {
            return self.constant(rng.gen_range(0..q));
        }
        let num: Poly = (0..=rng.gen_range(0..=max_deg))
            .map(|_| rng.gen_range(0..q))
            .collect();
        let den = if max_den_deg > 0 && rng.gen_bool(0.5) {
            let d = rng.gen_range(1..=max_den_deg);
            let mut den: Poly = (0..d).map(|_| rng.gen_range(0..q)).collect();
            den.push(1);
            den
        } else {
            vec![1]
        };
        self.make(num, den)
    }

    pub fn random_nonzero<R: rand::Rng>(
        &self,
        rng: &mut R,
        max_deg: usize,
        max_den_deg: usize,
    ) -> ResidueElem {
        loop {
            let a = self.random(rng, max_deg, max_den_deg);
            if !a.is_zero() {
                return a;
            }
        }
    }
}

impl Ring for ResidueField {
    type Elem = ResidueElem;

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn zero(&self) -> ResidueElem {
        ResidueElem {
            num: Vec::new(),
            den: vec![1],
        }
    }

    fn one(&self) -> ResidueElem {
        ResidueElem {
            num: vec![1],
            den: vec![1],
        }
    }

    fn is_zero(&self, a: &ResidueElem) -> bool {
        a.num.is_empty()
    }

    fn add(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        let gf = &*self.gf;
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            if a.den == [1] {
                return ResidueElem {
                    num: poly::add(gf, &a.num, &b.num),
                    den: vec![1],
                };
            }
            return self.make(poly::add(gf, &a.num, &b.num), a.den.clone());
        }
        let num = poly::add(
            gf,
            &poly::mul(gf, &a.num, &b.den),
            &poly::mul(gf, &b.num, &a.den),
        );
        self.make(num, poly::mul(gf, &a.den, &b.den))
    }

    fn neg(&self, a: &ResidueElem) -> ResidueElem {
        ResidueElem {
            num: poly::neg(&self.gf, &a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        let gf = &*self.gf;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den == [1] && b.den == [1] {
            return ResidueElem {
                num: poly::mul(gf, &a.num, &b.num),
                den: vec![1],
            };
        }
        self.make(poly::mul(gf, &a.num, &b.num), poly::mul(gf, &a.den, &b.den))
    }

    fn from_int(&self, n: i64) -> ResidueElem {
        self.constant(self.gf.from_int(n))
    }

    fn pow(&self, a: &ResidueElem, e: u64) -> ResidueElem {
        if e == 0 {
            return self.one();
        }
        let gf = &*self.gf;
        ResidueElem {
            num: poly::pow(gf, &a.num, e),
            den: poly::pow(gf, &a.den, e),
        }
    }

    fn frobenius(&self, a: &ResidueElem) -> ResidueElem {
        let gf = &*self.gf;
        ResidueElem {
            num: poly::frobenius(gf, &a.num),
            den: poly::frobenius(gf, &a.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(p: u64, e: u32) -> ResidueField {
        ResidueField::new(FieldConfig::rational(p, e)).unwrap()
    }

    #[test]
    fn decompose_y4_at_p3() {
        let f = rational(3, 1);
        let y4 = f.monomial(1, 4);
        let parts = f.p_basis_decompose(&y4);
        assert_eq!(parts[0], f.zero());
        assert_eq!(parts[1], f.var().unwrap());
        assert_eq!(parts[2], f.zero());
    }

    #[test]
    fn decompose_y3_plus_y_at_p2() {
        let f = rational(2, 1);
        let a = f.fraction(vec![0, 1, 0, 1], vec![1]).unwrap();
        let parts = f.p_basis_decompose(&a);
        assert_eq!(parts[0], f.zero());
        assert_eq!(parts[1], f.fraction(vec![1, 1], vec![1]).unwrap());
    }

    #[test]
    fn perfect_gf9_decomposition_is_frobenius_inverse() {
        let f = ResidueField::new(FieldConfig::perfect(3, 2)).unwrap();
        let g = f.gf_generator();
        let parts = f.p_basis_decompose(&g);
        // g^{3^{e-1}} = g^3
        assert_eq!(parts[0], f.pow(&g, 3));
        assert!(parts[1].is_zero() && parts[2].is_zero());
    }

    #[test]
    fn cube_of_fraction_is_a_cube() {
        let f = rational(3, 1);
        // y / (y - 1)
        let a = f.fraction(vec![0, 1], vec![2, 1]).unwrap();
        let a3 = f.pow(&a, 3);
        assert!(f.is_pth_power(&a3));
        assert_eq!(f.pth_root(&a3).unwrap(), a);
    }

    #[test]
    fn y_is_not_a_square() {
        let f = rational(2, 1);
        let y = f.var().unwrap();
        assert!(!f.is_pth_power(&y));
        assert_eq!(f.pth_root(&y), Err(Error::NotAPthPower));
    }

    #[test]
    fn gf4_generator_root() {
        let f = ResidueField::new(FieldConfig::rational(2, 2)).unwrap();
        let g = f.gf_generator();
        assert!(f.is_pth_power(&g));
        assert_eq!(f.pth_root(&g).unwrap(), f.mul(&g, &g));
    }

    #[test]
    fn derivative_examples() {
        let f3 = rational(3, 1);
        let y2 = f3.monomial(1, 2);
        assert_eq!(f3.derivative(&y2), f3.monomial(2, 1));
        let f2 = rational(2, 1);
        let inv_y = f2.inv(&f2.var().unwrap()).unwrap();
        assert_eq!(f2.derivative(&inv_y), f2.inv(&f2.monomial(1, 2)).unwrap());
        assert!(f2.derivative(&f2.monomial(1, 2)).is_zero());
    }

    #[test]
    fn canonical_form_makes_equal_values_equal() {
        let f = rational(5, 1);
        // (y^2 - 1)/(2y + 2) = (y - 1)/2
        let a = f.fraction(vec![4, 0, 1], vec![2, 2]).unwrap();
        let b = f.fraction(vec![4, 1], vec![2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denominator(), &[1]);
    }

    #[test]
    fn zero_denominator_rejected() {
        let f = rational(2, 1);
        assert_eq!(f.fraction(vec![1], vec![]), Err(Error::DivisionByZero));
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }
}
