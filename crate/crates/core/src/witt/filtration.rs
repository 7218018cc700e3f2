//! Brylinski's filtration fil_n and Matsuda's fil'_n on W_{m+1}(K).

use crate::field::LaurentElem;

use super::WittVec;

/// p-adic valuation of a positive integer.
pub fn ord_p(n: u64, p: u64) -> u32 {
    assert!(n > 0, "ord_p of zero");
    let mut n = n;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Largest -p^{m-i} v(x_i), i.e. the level each component forces.
fn component_levels(x: &WittVec<LaurentElem>, p: u64) -> Vec<Option<i64>> {
    let m = x.m();
    x.components()
        .iter()
        .enumerate()
        .map(|(i, c)| c.valuation().map(|v| -(p.pow((m - i) as u32) as i64) * v))
        .collect()
}

/// x lies in fil_n iff p^{m-i} v(x_i) >= -n for every i.
pub fn fil_membership(x: &WittVec<LaurentElem>, p: u64, n: i64) -> bool {
    component_levels(x, p)
        .into_iter()
        .flatten()
        .all(|level| level <= n)
}

/// The least n >= 0 with x in fil_n.
pub fn fil_level(x: &WittVec<LaurentElem>, p: u64) -> i64 {
    component_levels(x, p)
        .into_iter()
        .flatten()
        .fold(0, i64::max)
}

/// fil'_n = fil_n + V^{m+1-m'} fil_{n+1} W_{m'}(K), m' = min(ord_p(n+1), m+1).
/// Membership is componentwise: the top m' components may reach level n+1.
pub fn fil_prime_membership(x: &WittVec<LaurentElem>, p: u64, n: i64) -> bool {
    if n < 0 {
        return fil_membership(x, p, n);
    }
    let len = x.len();
    let m_prime = (ord_p((n + 1) as u64, p) as usize).min(len);
    component_levels(x, p)
        .into_iter()
        .enumerate()
        .all(|(i, level)| match level {
            None => true,
            Some(level) if i + m_prime >= len => level <= n + 1,
            Some(level) => level <= n,
        })
}

/// The least n >= 0 with x in fil'_n.
pub fn fil_prime_level(x: &WittVec<LaurentElem>, p: u64) -> i64 {
    let upper = fil_level(x, p);
    (0..upper)
        .find(|&n| fil_prime_membership(x, p, n))
        .unwrap_or(upper)
}
