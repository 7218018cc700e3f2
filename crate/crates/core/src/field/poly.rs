//! Dense univariate polynomials over GF(q), coefficients low degree first.
//! The zero polynomial is the empty vector; otherwise the last entry is nonzero.

use super::gf::GaloisField;

pub type Poly = Vec<u32>;

pub fn normalize(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn constant(c: u32) -> Poly {
    normalize(vec![c])
}

pub fn monomial(c: u32, k: usize) -> Poly {
    if c == 0 {
        return Vec::new();
    }
    let mut v = vec![0; k + 1];
    v[k] = c;
    v
}

pub fn add(gf: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push(gf.add(x, y));
    }
    normalize(out)
}

pub fn neg(gf: &GaloisField, a: &[u32]) -> Poly {
    a.iter().map(|&c| gf.neg(c)).collect()
}

pub fn sub(gf: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    add(gf, a, &neg(gf, b))
}

pub fn scale(gf: &GaloisField, a: &[u32], c: u32) -> Poly {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| gf.mul(x, c)).collect()
}

pub fn mul(gf: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = gf.add(out[i + j], gf.mul(x, y));
            }
        }
    }
    normalize(out)
}

pub fn pow(gf: &GaloisField, a: &[u32], mut e: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(gf, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(gf, &base, &base);
        }
    }
    acc
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(gf: &GaloisField, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = gf
        .inv(b[db])
        .expect("normalized polynomial has nonzero lead");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), normalize(r));
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = gf.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = gf.sub(r[idx], gf.mul(c, bi));
        }
        r = normalize(r);
    }
    (normalize(q), r)
}

pub fn make_monic(gf: &GaloisField, a: &[u32]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(gf, a, gf.inv(lead).unwrap()),
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(gf: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divrem(gf, &x, &y);
        x = y;
        y = r;
    }
    make_monic(gf, &x)
}

pub fn derivative(gf: &GaloisField, a: &[u32]) -> Poly {
    let out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| gf.mul(c, gf.from_int(k as i64)))
        .collect();
    normalize(out)
}

/// Coefficientwise Frobenius with exponents multiplied by p: a(y) -> a(y)^p.
pub fn frobenius(gf: &GaloisField, a: &[u32]) -> Poly {
    let p = gf.p() as usize;
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; (a.len() - 1) * p + 1];
    for (k, &c) in a.iter().enumerate() {
        out[k * p] = gf.frobenius(c);
    }
    out
}

/// Split a = sum_j a_j(y)^p y^j, j = 0..p-1.
pub fn p_basis_split(gf: &GaloisField, a: &[u32]) -> Vec<Poly> {
    let p = gf.p() as usize;
    let mut parts: Vec<Poly> = vec![Vec::new(); p];
    for (k, &c) in a.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (l, j) = (k / p, k % p);
        let part = &mut parts[j];
        if part.len() <= l {
            part.resize(l + 1, 0);
        }
        part[l] = gf.pth_root(c);
    }
    parts.into_iter().map(normalize).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reassembles() {
        let gf = GaloisField::new(3, 1).unwrap();
        let a = vec![1, 2, 0, 1, 2];
        let b = vec![2, 1, 1];
        let (q, r) = divrem(&gf, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&gf, &mul(&gf, &q, &b), &r), a);
    }

    #[test]
    fn gcd_is_monic() {
        let gf = GaloisField::new(5, 1).unwrap();
        let x1 = vec![1, 1];
        let a = mul(&gf, &x1, &vec![3, 0, 2]);
        let b = mul(&gf, &x1, &vec![2, 1]);
        assert_eq!(gcd(&gf, &a, &b), x1);
    }

    #[test]
    fn split_of_y_cubed_plus_y_over_gf2() {
        let gf = GaloisField::new(2, 1).unwrap();
        let parts = p_basis_split(&gf, &[0, 1, 0, 1]);
        assert_eq!(parts[0], Vec::<u32>::new());
        assert_eq!(parts[1], vec![1, 1]);
    }
}
