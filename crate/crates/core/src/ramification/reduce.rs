//! Reduction of a representative to one whose filtration level is the Swan
//! conductor.
//!
//! Phase 1 repeatedly removes a leading term c pi^(pk) (k < 0, c = g^p) of a
//! component x_i by adding (F - 1)(z) with z = g pi^k placed at index i; the
//! components below i are unchanged. Afterwards the level n of x is certified
//! by gr_n(F^m d)(x) != 0. If the certificate vanishes a bounded search over
//! single-monomial moves looks for a better representative.

use std::collections::HashSet;

use crate::differentials::{fmd, graded_class, Variant};
use crate::error::{Error, Result};
use crate::field::{LaurentElem, LaurentRing, ResidueElem};
use crate::ring::Ring;
use crate::witt::{fil_level, WittContext, WittVec};

use super::CharacterClass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionConfig {
    /// Cap on phase-1 moves; defaults to 10 * max(1, level) * (m + 1).
    pub max_iterations: Option<usize>,
    /// Depth of the fallback search.
    pub search_depth: usize,
    /// Cap on representatives visited by the fallback search.
    pub search_nodes: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            max_iterations: None,
            search_depth: 2,
            search_nodes: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub rep: WittVec<LaurentElem>,
    pub sw: i64,
    pub iterations: usize,
}

/// The (index, g, k) of the first component whose leading term is g^p pi^(pk), k < 0.
fn reducible_leading_term(
    ring: &LaurentRing,
    x: &WittVec<LaurentElem>,
) -> Option<(usize, ResidueElem, i64)> {
    let p = ring.p() as i64;
    let field = ring.residue();
    x.components().iter().enumerate().find_map(|(i, c)| {
        let (v, lead) = c.leading()?;
        if v >= 0 || v % p != 0 {
            return None;
        }
        let g = field.pth_root(lead).ok()?;
        Some((i, g, v / p))
    })
}

/// x - (F - 1)(z) for z = g pi^k at index i.
fn apply_move(
    ctx: &WittContext,
    ring: &LaurentRing,
    x: &WittVec<LaurentElem>,
    i: usize,
    g: ResidueElem,
    k: i64,
) -> Result<WittVec<LaurentElem>> {
    let z = WittVec::single(ring, ring.monomial(g, k), i, x.len());
    let fz = ctx.frobenius_minus_one(ring, &z)?;
    ctx.sub(ring, x, &fz)
}

fn certified(ring: &LaurentRing, x: &WittVec<LaurentElem>, n: i64) -> bool {
    if n <= 0 {
        return true;
    }
    let omega = fmd(ring, x);
    graded_class(ring, &omega, n, Variant::Log).map_or(false, |g| !g.is_zero())
}

fn phase_one(
    ctx: &WittContext,
    ring: &LaurentRing,
    mut x: WittVec<LaurentElem>,
    budget: usize,
    iterations: &mut usize,
) -> Result<std::result::Result<WittVec<LaurentElem>, WittVec<LaurentElem>>> {
    while let Some((i, g, k)) = reducible_leading_term(ring, &x) {
        if *iterations >= budget {
            return Ok(Err(x));
        }
        x = apply_move(ctx, ring, &x, i, g, k)?;
        *iterations += 1;
    }
    Ok(Ok(x))
}

/// Single-monomial moves c y^e pi^k at every index, with k in [-bound, -1].
fn search_moves(
    ring: &LaurentRing,
    x: &WittVec<LaurentElem>,
    bound: i64,
) -> Vec<(usize, LaurentElem)> {
    let field = ring.residue();
    let p = ring.p();
    let mut coeffs: Vec<ResidueElem> = vec![field.one()];
    for c in x.components() {
        if let Some((_, lead)) = c.leading() {
            if let Ok(root) = field.pth_root(lead) {
                if !coeffs.contains(&root) {
                    coeffs.push(root);
                }
            }
        }
    }
    let y_powers: Vec<ResidueElem> = match field.var() {
        Some(y) => (0..p).map(|e| field.pow(&y, e)).collect(),
        None => vec![field.one()],
    };
    let mut moves = Vec::new();
    for i in 0..x.len() {
        for k in -bound..=-1 {
            for c in &coeffs {
                for ye in &y_powers {
                    let a = field.mul(c, ye);
                    moves.push((i, ring.monomial(a.clone(), k)));
                    moves.push((i, ring.monomial(field.neg(&a), k)));
                }
            }
        }
    }
    moves
}

/// Breadth-first search for a representative that is either of lower level
/// or carries a nonzero certificate.
fn phase_two(
    ctx: &WittContext,
    ring: &LaurentRing,
    x: &WittVec<LaurentElem>,
    cfg: &ReductionConfig,
) -> Result<Option<WittVec<LaurentElem>>> {
    let p = ring.p();
    let n = fil_level(x, p);
    let bound = (n + p as i64 - 1) / p as i64;
    let mut seen: HashSet<WittVec<LaurentElem>> = HashSet::new();
    seen.insert(x.clone());
    let mut frontier = vec![x.clone()];
    for _ in 0..cfg.search_depth {
        let mut next = Vec::new();
        for cur in &frontier {
            for (i, a) in search_moves(ring, cur, bound) {
                let z = WittVec::single(ring, a, i, cur.len());
                let cand = ctx.sub(ring, cur, &ctx.frobenius_minus_one(ring, &z)?)?;
                if !seen.insert(cand.clone()) {
                    continue;
                }
                let level = fil_level(&cand, p);
                if level < n || (level == n && certified(ring, &cand, level)) {
                    return Ok(Some(cand));
                }
                if seen.len() >= cfg.search_nodes {
                    return Ok(None);
                }
                next.push(cand);
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// A representative of chi whose filtration level equals sw(chi).
pub fn reduce_representative(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<Reduced> {
    let ring = chi.ring();
    let ctx = chi.context();
    let p = chi.p();
    let start = chi.representative().clone();
    let estimate = fil_level(&start, p).max(1) as usize;
    let budget = cfg.max_iterations.unwrap_or(10 * estimate * (chi.m() + 1));
    let mut iterations = 0;
    let mut x = start;
    loop {
        x = match phase_one(ctx, ring, x, budget, &mut iterations)? {
            Ok(x) => x,
            Err(best) => {
                return Err(Error::ReductionBudgetExceeded {
                    sw_upper_bound: fil_level(&best, p) as u64,
                    best: Box::new(best),
                })
            }
        };
        let n = fil_level(&x, p);
        if certified(ring, &x, n) {
            return Ok(Reduced {
                rep: x,
                sw: n,
                iterations,
            });
        }
        match phase_two(ctx, ring, &x, cfg)? {
            Some(better) => x = better,
            None => {
                return Err(Error::ReductionBudgetExceeded {
                    sw_upper_bound: n as u64,
                    best: Box::new(x),
                })
            }
        }
    }
}
