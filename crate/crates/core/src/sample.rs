//! Random elements used by property checks and the oracle.

use rand::Rng;

use crate::field::{LaurentElem, LaurentRing};
use crate::ring::Ring;
use crate::witt::{ord_p, WittVec};

/// Shape of random residue coefficients.
#[derive(Debug, Clone, Copy)]
pub struct CoeffShape {
    pub max_deg: usize,
    pub max_den_deg: usize,
}

impl Default for CoeffShape {
    fn default() -> Self {
        CoeffShape {
            max_deg: 2,
            max_den_deg: 1,
        }
    }
}

/// Random Laurent polynomial with valuation >= `lower`, exponents in [lower, lower + span].
pub fn laurent_above<R: Rng>(
    rng: &mut R,
    ring: &LaurentRing,
    lower: i64,
    span: i64,
    max_terms: usize,
    shape: CoeffShape,
) -> LaurentElem {
    ring.random(
        rng,
        lower..=lower + span,
        max_terms,
        shape.max_deg,
        shape.max_den_deg,
    )
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Random element of W_len(K) whose component i satisfies p^(len-1-i) v(x_i) >= -levels[i].
pub fn witt_with_levels<R: Rng>(
    rng: &mut R,
    ring: &LaurentRing,
    levels: &[i64],
    max_terms: usize,
    shape: CoeffShape,
) -> WittVec<LaurentElem> {
    let p = ring.p() as i64;
    let m = levels.len() - 1;
    let comps = levels
        .iter()
        .enumerate()
        .map(|(i, &level)| {
            let lower = ceil_div(-level, p.pow((m - i) as u32));
            laurent_above(rng, ring, lower, 3, max_terms, shape)
        })
        .collect();
    WittVec::new(comps)
}

/// Random element of fil_n W_{m+1}(K).
pub fn fil_member<R: Rng>(
    rng: &mut R,
    ring: &LaurentRing,
    m: usize,
    n: i64,
    max_terms: usize,
    shape: CoeffShape,
) -> WittVec<LaurentElem> {
    witt_with_levels(rng, ring, &vec![n; m + 1], max_terms, shape)
}

/// Random element of the componentwise set for fil'_n W_{m+1}(K).
pub fn fil_prime_member<R: Rng>(
    rng: &mut R,
    ring: &LaurentRing,
    m: usize,
    n: i64,
    max_terms: usize,
    shape: CoeffShape,
) -> WittVec<LaurentElem> {
    let m_prime = (ord_p(n as u64 + 1, ring.p()) as usize).min(m + 1);
    let levels: Vec<i64> = (0..=m)
        .map(|i| if i + m_prime > m { n + 1 } else { n })
        .collect();
    witt_with_levels(rng, ring, &levels, max_terms, shape)
}

/// Random Witt vector with components of valuation >= -depth.
pub fn witt_box<R: Rng>(
    rng: &mut R,
    ring: &LaurentRing,
    m: usize,
    depth: i64,
    max_terms: usize,
    shape: CoeffShape,
) -> WittVec<LaurentElem> {
    WittVec::new(
        (0..=m)
            .map(|_| laurent_above(rng, ring, -depth, depth, max_terms, shape))
            .collect(),
    )
}

/// Random element of a finite ring, componentwise.
pub fn ring_vector<R: Rng, A: Ring>(
    rng: &mut R,
    ring: &A,
    len: usize,
    mut elem: impl FnMut(&mut R, &A) -> A::Elem,
) -> WittVec<A::Elem> {
    WittVec::new((0..len).map(|_| elem(rng, ring)).collect())
}
