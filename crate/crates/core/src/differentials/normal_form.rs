//! Normal forms of classes in BGr_n Omega^1_K (log) and BGr'_n Omega^1_K (plain).
//!
//! Log, n = n0 p^r: (sum_{j<r} sum_k x_{k,j}^(p^(j+1)) (y^k)^(p^j) k dy/y
//!                   + x^(p^r - 1) dx - n0 x^(p^r) dlog[pi]) (x) [pi^-n].
//! Plain, r = ord_p(n+1), r' = ord_p(n):
//!                  (sum_{j<r} sum_k (same layers) + x^(p^r') dpi) (x) [pi^(-n-1)].

use crate::error::{Error, Result};
use crate::field::{ResidueElem, ResidueField};
use crate::ring::Ring;
use crate::witt::ord_p;

use super::cartier::{b_r_assemble, b_r_layers};
use super::{DiffFormF, GradedForm, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalFormBGr {
    pub n: i64,
    pub variant: Variant,
    /// layers[j][k-1] = x_{k,j}; empty rows over a perfect field.
    pub layers: Vec<Vec<ResidueElem>>,
    pub x: ResidueElem,
}

impl NormalFormBGr {
    /// Number of layers: r for log, ord_p(n+1) for plain.
    pub fn layer_count(p: u64, n: i64, variant: Variant) -> u32 {
        match variant {
            Variant::Log => split_level(n, p).1,
            Variant::Plain => ord_p(n as u64 + 1, p),
        }
    }
}

/// n = n0 p^r with gcd(n0, p) = 1.
pub fn split_level(n: i64, p: u64) -> (i64, u32) {
    assert!(n >= 1);
    let r = ord_p(n as u64, p);
    (n / p.pow(r) as i64, r)
}

/// Whether the plain refined map is defined at level n: n > 1, or n >= 1 for odd p.
pub fn plain_in_range(p: u64, n: i64) -> bool {
    n > 1 || (n == 1 && p != 2)
}

fn x_part(field: &ResidueField, x: &ResidueElem, r: u32) -> DiffFormF {
    // x^(p^r - 1) dx
    let p = field.p();
    let pow = field.pow(x, p.pow(r) - 1);
    DiffFormF::new(field.mul(&pow, &field.derivative(x)))
}

fn frobenius_iter(field: &ResidueField, x: &ResidueElem, r: u32) -> ResidueElem {
    (0..r).fold(x.clone(), |acc, _| field.frobenius(&acc))
}

/// The graded class written by a normal form.
pub fn reassemble(field: &ResidueField, nf: &NormalFormBGr) -> GradedForm {
    let p = field.p();
    let layers = b_r_assemble(field, &nf.layers);
    match nf.variant {
        Variant::Log => {
            let (n0, r) = split_level(nf.n, p);
            let alpha = layers.add(field, &x_part(field, &nf.x, r));
            let beta = field.neg(&field.mul(&field.from_int(n0), &frobenius_iter(field, &nf.x, r)));
            GradedForm {
                n: nf.n,
                variant: Variant::Log,
                alpha,
                beta,
            }
        }
        Variant::Plain => {
            let r_prime = ord_p(nf.n as u64, p);
            GradedForm {
                n: nf.n,
                variant: Variant::Plain,
                alpha: layers,
                beta: frobenius_iter(field, &nf.x, r_prime),
            }
        }
    }
}

/// Decompose a graded class into its normal form; fails with `NotInBGr`
/// when the class is outside the image of the refined conductor map.
pub fn bgr_normal_form(field: &ResidueField, g: &GradedForm) -> Result<NormalFormBGr> {
    let p = field.p();
    if g.n < 1 {
        return Err(Error::NotInBGr(format!("level {} < 1", g.n)));
    }
    match g.variant {
        Variant::Log => {
            let (n0, r) = split_level(g.n, p);
            let gamma = field
                .pth_root_iter(&g.beta, r)
                .ok_or_else(|| Error::NotInBGr(format!("beta is not a p^{r}-th power")))?;
            let x = field.neg(&field.div(&gamma, &field.from_int(n0))?);
            let rest = g.alpha.sub(field, &x_part(field, &x, r));
            let layers = b_r_layers(field, &rest, r)
                .ok_or_else(|| Error::NotInBGr(format!("alpha - x^(p^r-1)dx is not in B_{r}")))?;
            Ok(NormalFormBGr {
                n: g.n,
                variant: Variant::Log,
                layers,
                x,
            })
        }
        Variant::Plain => {
            if !plain_in_range(p, g.n) {
                return Err(Error::UnsupportedRange(format!(
                    "plain graded piece at n = {} with p = {p}",
                    g.n
                )));
            }
            let r = ord_p(g.n as u64 + 1, p);
            let r_prime = ord_p(g.n as u64, p);
            let x = field.pth_root_iter(&g.beta, r_prime).ok_or_else(|| {
                Error::NotInBGr(format!("dpi part is not a p^{r_prime}-th power"))
            })?;
            let layers = b_r_layers(field, &g.alpha, r)
                .ok_or_else(|| Error::NotInBGr(format!("dy part is not in B_{r}")))?;
            Ok(NormalFormBGr {
                n: g.n,
                variant: Variant::Plain,
                layers,
                x,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    fn log_class(n: i64, alpha: ResidueElem, beta: ResidueElem) -> GradedForm {
        GradedForm {
            n,
            variant: Variant::Log,
            alpha: DiffFormF::new(alpha),
            beta,
        }
    }

    #[test]
    fn p2_level2_pure_residue() {
        let f = ResidueField::new(FieldConfig::perfect(2, 1)).unwrap();
        let g = log_class(2, f.zero(), f.one());
        let nf = bgr_normal_form(&f, &g).unwrap();
        assert!(nf.x.is_one());
        assert_eq!(reassemble(&f, &nf), g);
    }

    #[test]
    fn p3_level2_r0() {
        let f = ResidueField::new(FieldConfig::perfect(3, 1)).unwrap();
        let two = f.from_int(2);
        let g = log_class(2, f.zero(), two.clone());
        let nf = bgr_normal_form(&f, &g).unwrap();
        assert_eq!(nf.x, two);
    }

    #[test]
    fn p2_level1_needs_matching_residue() {
        let f = ResidueField::new(FieldConfig::rational(2, 1)).unwrap();
        let y = f.var().unwrap();
        let bad = log_class(1, f.one(), f.zero());
        assert!(matches!(bgr_normal_form(&f, &bad), Err(Error::NotInBGr(_))));
        let good = log_class(1, f.one(), y.clone());
        assert_eq!(bgr_normal_form(&f, &good).unwrap().x, y);
    }

    #[test]
    fn plain_out_of_range() {
        let f = ResidueField::new(FieldConfig::rational(2, 1)).unwrap();
        let g = GradedForm::zero(&f, 1, Variant::Plain);
        assert!(matches!(
            bgr_normal_form(&f, &g),
            Err(Error::UnsupportedRange(_))
        ));
    }
}
