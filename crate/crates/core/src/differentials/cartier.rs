//! The Cartier operator on Omega^1_F for F = GF(q)(y) and the subgroups
//! B_r = ker C^r. Over a perfect field every form is zero.

use crate::field::{ResidueElem, ResidueField};
use crate::ring::Ring;

use super::DiffFormF;

/// C(f dy) = f_{p-1} dy where f = sum_j f_j^p y^j.
pub fn cartier(field: &ResidueField, omega: &DiffFormF) -> DiffFormF {
    if field.is_perfect() || omega.is_zero() {
        return DiffFormF::zero(field);
    }
    let mut parts = field.p_basis_decompose(&omega.f);
    DiffFormF::new(parts.pop().expect("p >= 2 parts"))
}

pub fn cartier_iter(field: &ResidueField, omega: &DiffFormF, r: u32) -> DiffFormF {
    let mut w = omega.clone();
    for _ in 0..r {
        if w.is_zero() {
            break;
        }
        w = cartier(field, &w);
    }
    w
}

/// C^-1(f dy) = f^p y^(p-1) dy.
pub fn inverse_cartier(field: &ResidueField, omega: &DiffFormF) -> DiffFormF {
    let Some(y) = field.var() else {
        return DiffFormF::zero(field);
    };
    let p = field.p();
    DiffFormF::new(field.mul(&field.frobenius(&omega.f), &field.pow(&y, p - 1)))
}

/// B_0 = 0, and omega is in B_r iff C(omega) is in B_(r-1); B_1 is the exact forms.
pub fn b_r_membership(field: &ResidueField, omega: &DiffFormF, r: u32) -> bool {
    cartier_iter(field, omega, r).is_zero()
}

/// gamma with gamma^(p^r) = beta, if one exists.
pub fn z_r_element_test(field: &ResidueField, beta: &ResidueElem, r: u32) -> Option<ResidueElem> {
    field.pth_root_iter(beta, r)
}

/// g = sum_{k=1}^{p-1} g_k^p y^k with dg = omega, if omega is exact.
pub fn exact_primitive(field: &ResidueField, omega: &DiffFormF) -> Option<ResidueElem> {
    if omega.is_zero() {
        return Some(field.zero());
    }
    let y = field.var()?;
    let p = field.p() as usize;
    let parts = field.p_basis_decompose(&omega.f);
    if !parts[p - 1].is_zero() {
        return None;
    }
    let mut g = field.zero();
    for k in 1..p {
        let gk = field.div(&parts[k - 1], &field.from_int(k as i64)).ok()?;
        let term = field.mul(&field.frobenius(&gk), &field.pow(&y, k as u64));
        g = field.add(&g, &term);
    }
    Some(g)
}

/// x^(p^(j+1)) (y^k)^(p^j) k dy/y.
pub fn layer_form(field: &ResidueField, x: &ResidueElem, k: u64, j: u32) -> DiffFormF {
    let Some(y) = field.var() else {
        return DiffFormF::zero(field);
    };
    let p = field.p();
    if x.is_zero() || k % p == 0 {
        return DiffFormF::zero(field);
    }
    let mut xp = x.clone();
    for _ in 0..=j {
        xp = field.frobenius(&xp);
    }
    let y_exp = k * p.pow(j) - 1;
    let coeff = field.mul(
        &field.mul(&xp, &field.pow(&y, y_exp)),
        &field.from_int(k as i64),
    );
    DiffFormF::new(coeff)
}

/// Sum of the layer forms: layers[j][k-1] = x_{k,j}.
pub fn b_r_assemble(field: &ResidueField, layers: &[Vec<ResidueElem>]) -> DiffFormF {
    let mut acc = DiffFormF::zero(field);
    for (j, row) in layers.iter().enumerate() {
        for (idx, x) in row.iter().enumerate() {
            acc = acc.add(field, &layer_form(field, x, idx as u64 + 1, j as u32));
        }
    }
    acc
}

/// The unique layer coefficients of an element of B_r, top layer first
/// peeled off via C^(r-1). `None` when omega is not in B_r.
pub fn b_r_layers(
    field: &ResidueField,
    omega: &DiffFormF,
    r: u32,
) -> Option<Vec<Vec<ResidueElem>>> {
    let width = field.config().p_basis_size() * (field.p() as usize - 1);
    let mut layers = vec![vec![field.zero(); width]; r as usize];
    let mut rest = omega.clone();
    for j in (0..r).rev() {
        if rest.is_zero() {
            break;
        }
        let top = cartier_iter(field, &rest, j);
        let g = exact_primitive(field, &top)?;
        // g = sum_k x_k^p y^k, so x_k is the k-th p-basis part of g.
        let parts = field.p_basis_decompose(&g);
        for k in 1..field.p() as usize {
            layers[j as usize][k - 1] = parts[k].clone();
            rest = rest.sub(field, &layer_form(field, &parts[k], k as u64, j));
        }
    }
    rest.is_zero().then_some(layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;

    #[test]
    fn cartier_of_y_squared_dy_at_p3() {
        let f = ResidueField::new(FieldConfig::rational(3, 1)).unwrap();
        let y = f.var().unwrap();
        let w = DiffFormF::new(f.mul(&y, &y));
        assert!(cartier(&f, &w).f.is_one());
        assert!(!b_r_membership(&f, &w, 1));
        assert!(b_r_membership(&f, &w, 2));
        assert!(b_r_membership(&f, &DiffFormF::new(f.one()), 1));
    }

    #[test]
    fn inverse_then_cartier_is_identity() {
        let f = ResidueField::new(FieldConfig::rational(3, 2)).unwrap();
        let y = f.var().unwrap();
        let g = f
            .div(&f.add(&y, &f.gf_generator()), &f.mul(&y, &y))
            .unwrap();
        let w = DiffFormF::new(g);
        assert_eq!(cartier(&f, &inverse_cartier(&f, &w)), w);
    }

    #[test]
    fn z_r_root() {
        let f = ResidueField::new(FieldConfig::rational(3, 1)).unwrap();
        let y = f.var().unwrap();
        assert_eq!(z_r_element_test(&f, &f.pow(&y, 9), 2), Some(y.clone()));
        assert_eq!(z_r_element_test(&f, &f.pow(&y, 3), 2), None);
    }

    #[test]
    fn layers_roundtrip() {
        let f = ResidueField::new(FieldConfig::rational(2, 1)).unwrap();
        let y = f.var().unwrap();
        let layers = vec![vec![f.add(&y, &f.one())], vec![f.inv(&y).unwrap()]];
        let w = b_r_assemble(&f, &layers);
        assert!(b_r_membership(&f, &w, 2));
        assert_eq!(b_r_layers(&f, &w, 2), Some(layers));
        assert_eq!(b_r_layers(&f, &w, 1), None);
    }
}
