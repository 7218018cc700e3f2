//! Differential forms over F and K, the map F^m d on Witt vectors, graded
//! pieces of the filtrations on Omega^1_K and their normal forms.

mod cartier;
mod normal_form;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{LaurentElem, LaurentRing, ResidueElem, ResidueField};
use crate::ring::Ring;
use crate::witt::WittVec;

pub use cartier::{
    b_r_assemble, b_r_layers, b_r_membership, cartier, cartier_iter, exact_primitive,
    inverse_cartier, layer_form, z_r_element_test,
};
pub use normal_form::{bgr_normal_form, plain_in_range, reassemble, split_level, NormalFormBGr};

/// The form f dy on F. Over a perfect field Omega^1_F = 0 and f is always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffFormF {
    pub f: ResidueElem,
}

impl DiffFormF {
    pub fn new(f: ResidueElem) -> Self {
        DiffFormF { f }
    }

    pub fn zero(field: &ResidueField) -> Self {
        DiffFormF { f: field.zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn add(&self, field: &ResidueField, other: &Self) -> Self {
        DiffFormF::new(field.add(&self.f, &other.f))
    }

    pub fn sub(&self, field: &ResidueField, other: &Self) -> Self {
        DiffFormF::new(field.sub(&self.f, &other.f))
    }

    pub fn neg(&self, field: &ResidueField) -> Self {
        DiffFormF::new(field.neg(&self.f))
    }

    pub fn scale(&self, field: &ResidueField, c: &ResidueElem) -> Self {
        DiffFormF::new(field.mul(&self.f, c))
    }
}

pub fn d_residue(field: &ResidueField, f: &ResidueElem) -> DiffFormF {
    DiffFormF::new(field.derivative(f))
}

/// Which basis of Omega^1_K a form or graded class is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// {dy, dlog pi}; filtration fil_n, graded piece Gr_n.
    Log,
    /// {dy, dpi}; filtration fil'_n, graded piece Gr'_n.
    Plain,
}

/// f dy + b dlog(pi) (log) or f dy + a dpi (plain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffFormK {
    variant: Variant,
    dy: LaurentElem,
    second: LaurentElem,
}

impl DiffFormK {
    pub fn log(dy: LaurentElem, dlog_pi: LaurentElem) -> Self {
        DiffFormK {
            variant: Variant::Log,
            dy,
            second: dlog_pi,
        }
    }

    pub fn plain(dy: LaurentElem, dpi: LaurentElem) -> Self {
        DiffFormK {
            variant: Variant::Plain,
            dy,
            second: dpi,
        }
    }

    pub fn zero(variant: Variant) -> Self {
        DiffFormK {
            variant,
            dy: LaurentElem::default(),
            second: LaurentElem::default(),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dy_coefficient(&self) -> &LaurentElem {
        &self.dy
    }

    /// The coefficient of dlog(pi) in log mode or of dpi in plain mode.
    pub fn second_coefficient(&self) -> &LaurentElem {
        &self.second
    }

    pub fn is_zero(&self) -> bool {
        self.dy.is_zero() && self.second.is_zero()
    }

    /// a dpi = (a pi) dlog pi.
    pub fn to_log(&self, ring: &LaurentRing) -> Self {
        match self.variant {
            Variant::Log => self.clone(),
            Variant::Plain => DiffFormK::log(self.dy.clone(), ring.shift(&self.second, 1)),
        }
    }

    pub fn to_plain(&self, ring: &LaurentRing) -> Self {
        match self.variant {
            Variant::Plain => self.clone(),
            Variant::Log => DiffFormK::plain(self.dy.clone(), ring.shift(&self.second, -1)),
        }
    }

    pub fn to_variant(&self, ring: &LaurentRing, variant: Variant) -> Self {
        match variant {
            Variant::Log => self.to_log(ring),
            Variant::Plain => self.to_plain(ring),
        }
    }

    /// Sum, in the basis of `self`.
    pub fn add(&self, ring: &LaurentRing, other: &Self) -> Self {
        let other = other.to_variant(ring, self.variant);
        DiffFormK {
            variant: self.variant,
            dy: ring.add(&self.dy, &other.dy),
            second: ring.add(&self.second, &other.second),
        }
    }

    pub fn neg(&self, ring: &LaurentRing) -> Self {
        DiffFormK {
            variant: self.variant,
            dy: ring.neg(&self.dy),
            second: ring.neg(&self.second),
        }
    }

    pub fn mul(&self, ring: &LaurentRing, c: &LaurentElem) -> Self {
        DiffFormK {
            variant: self.variant,
            dy: ring.mul(&self.dy, c),
            second: ring.mul(&self.second, c),
        }
    }
}

/// d(sum a_j pi^j) = sum a_j' pi^j dy + sum j a_j pi^j dlog pi.
pub fn d_local(ring: &LaurentRing, x: &LaurentElem) -> DiffFormK {
    let field = ring.residue();
    let dy = ring.from_terms(x.terms().iter().map(|(j, a)| (*j, field.derivative(a))));
    let dlog = ring.from_terms(
        x.terms()
            .iter()
            .map(|(j, a)| (*j, field.mul(a, &field.from_int(*j)))),
    );
    DiffFormK::log(dy, dlog)
}

/// x^(p^s - 1) as a product of Frobenius twists of x^(p-1).
fn pow_p_s_minus_one(ring: &LaurentRing, x: &LaurentElem, s: u32) -> LaurentElem {
    let p = ring.p();
    let base = ring.pow(x, p - 1);
    let mut acc = ring.one();
    let mut twist = base;
    for t in 0..s {
        acc = ring.mul(&acc, &twist);
        if t + 1 < s {
            twist = ring.frobenius(&twist);
        }
    }
    acc
}

/// F^m d(x_0, ..., x_m) = sum_i x_i^(p^(m-i) - 1) dx_i, in log mode.
pub fn fmd(ring: &LaurentRing, x: &WittVec<LaurentElem>) -> DiffFormK {
    let m = x.m();
    let mut acc = DiffFormK::zero(Variant::Log);
    for (i, xi) in x.components().iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let factor = pow_p_s_minus_one(ring, xi, (m - i) as u32);
        acc = acc.add(ring, &d_local(ring, xi).mul(ring, &factor));
    }
    acc
}

/// A class in Gr_n Omega^1_K (log) or Gr'_n Omega^1_K (plain).
///
/// Log: (alpha + beta dlog[pi]) (x) [pi^-n]. Plain: (alpha + beta dpi) (x) [pi^(-n-1)].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedForm {
    pub n: i64,
    pub variant: Variant,
    pub alpha: DiffFormF,
    pub beta: ResidueElem,
}

impl GradedForm {
    pub fn zero(field: &ResidueField, n: i64, variant: Variant) -> Self {
        GradedForm {
            n,
            variant,
            alpha: DiffFormF::zero(field),
            beta: field.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn neg(&self, field: &ResidueField) -> Self {
        GradedForm {
            n: self.n,
            variant: self.variant,
            alpha: self.alpha.neg(field),
            beta: field.neg(&self.beta),
        }
    }

    pub fn add(&self, field: &ResidueField, other: &Self) -> Result<Self> {
        if self.n != other.n || self.variant != other.variant {
            return Err(Error::Config(
                "graded classes live in different graded pieces".into(),
            ));
        }
        Ok(GradedForm {
            n: self.n,
            variant: self.variant,
            alpha: self.alpha.add(field, &other.alpha),
            beta: field.add(&self.beta, &other.beta),
        })
    }

    /// The exponent of pi carried by the class: -n (log) or -n-1 (plain).
    pub fn pi_exponent(&self) -> i64 {
        match self.variant {
            Variant::Log => -self.n,
            Variant::Plain => -self.n - 1,
        }
    }
}

fn at_least(x: &LaurentElem, bound: i64) -> bool {
    x.valuation().map_or(true, |v| v >= bound)
}

/// Log: omega in Omega^1_R(log) (x) m^-n. Plain: omega in Omega^1_R (x) m^(-n-1).
pub fn fil_omega_membership(
    ring: &LaurentRing,
    omega: &DiffFormK,
    n: i64,
    variant: Variant,
) -> bool {
    let w = omega.to_variant(ring, variant);
    let bound = match variant {
        Variant::Log => -n,
        Variant::Plain => -n - 1,
    };
    at_least(&w.dy, bound) && at_least(&w.second, bound)
}

/// The image of omega in the graded piece at level n.
pub fn graded_class(
    ring: &LaurentRing,
    omega: &DiffFormK,
    n: i64,
    variant: Variant,
) -> Result<GradedForm> {
    if !fil_omega_membership(ring, omega, n, variant) {
        return Err(Error::NotInFiltration { level: n });
    }
    let w = omega.to_variant(ring, variant);
    let field = ring.residue();
    let e = match variant {
        Variant::Log => -n,
        Variant::Plain => -n - 1,
    };
    let coeff = |x: &LaurentElem| x.coefficient(e).cloned().unwrap_or_else(|| field.zero());
    Ok(GradedForm {
        n,
        variant,
        alpha: DiffFormF::new(coeff(&w.dy)),
        beta: coeff(&w.second),
    })
}

/// The residue component beta of a log class.
pub fn residue_map(g: &GradedForm) -> Result<ResidueElem> {
    match g.variant {
        Variant::Log => Ok(g.beta.clone()),
        Variant::Plain => Err(Error::Config(
            "the residue map is defined on log classes".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn ring(cfg: FieldConfig) -> LaurentRing {
        LaurentRing::new(ResidueField::new(cfg).unwrap())
    }

    #[test]
    fn d_of_y_over_pi_squared_in_char_2() {
        let k = ring(FieldConfig::rational(2, 1));
        let y = k.residue().var().unwrap();
        let w = d_local(&k, &k.monomial(y, -2));
        assert_eq!(w.dy_coefficient(), &k.pi_pow(-2));
        assert!(w.second_coefficient().is_zero());
    }

    #[test]
    fn fmd_of_inverse_pi_at_length_two() {
        let k = ring(FieldConfig::perfect(2, 1));
        let x = WittVec::new(vec![k.pi_pow(-1), k.zero()]);
        let w = fmd(&k, &x);
        assert!(w.dy_coefficient().is_zero());
        assert_eq!(w.second_coefficient(), &k.pi_pow(-2));
    }

    #[test]
    fn graded_examples() {
        let k = ring(FieldConfig::rational(3, 1));
        let f = k.residue();
        let w = DiffFormK::log(k.zero(), k.pi_pow(-2));
        let g = graded_class(&k, &w, 2, Variant::Log).unwrap();
        assert!(g.alpha.is_zero() && g.beta.is_one());

        let w = DiffFormK::log(k.pi_pow(-2), k.pi_pow(-1));
        let g = graded_class(&k, &w, 2, Variant::Log).unwrap();
        assert!(g.alpha.f.is_one() && g.beta.is_zero());

        let two = f.from_int(2);
        let w = DiffFormK::plain(k.zero(), k.monomial(two.clone(), -3));
        let g = graded_class(&k, &w, 2, Variant::Plain).unwrap();
        assert!(g.alpha.is_zero());
        assert_eq!(g.beta, two);

        assert!(matches!(
            graded_class(&k, &w, 1, Variant::Plain),
            Err(Error::NotInFiltration { level: 1 })
        ));
    }
}
