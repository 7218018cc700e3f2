use std::collections::{HashSet, VecDeque};

use crate::error::Result;
use crate::field::{LaurentElem, LaurentRing, ResidueElem};
use crate::ring::Ring;
use crate::witt::{fil_level, WittContext, WittVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteConfig {
    /// Moves use pi-exponents in [-bound, -1].
    pub bound: i64,
    pub depth: usize,
    pub max_nodes: usize,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig {
            bound: 4,
            depth: 2,
            max_nodes: 50_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteResult {
    pub rep: WittVec<LaurentElem>,
    /// Least filtration level reached; an upper bound for sw.
    pub level: i64,
    pub visited: usize,
}

fn coefficient_set(ring: &LaurentRing, x: &WittVec<LaurentElem>) -> Vec<ResidueElem> {
    let field = ring.residue();
    let mut base = vec![field.one()];
    for c in x.components() {
        for (_, coeff) in c.terms() {
            if let Ok(root) = field.pth_root(coeff) {
                if !base.contains(&root) {
                    base.push(root);
                }
            }
        }
    }
    let y_powers: Vec<ResidueElem> = match field.var() {
        Some(y) => (0..field.p()).map(|k| field.pow(&y, k)).collect(),
        None => vec![field.one()],
    };
    let mut out = Vec::new();
    for c in &base {
        for yk in &y_powers {
            for v in [field.mul(c, yk), field.neg(&field.mul(c, yk))] {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Search x - (F - 1)(y) over single-monomial y, breadth first, keeping the
/// representative of least filtration level.
pub fn brute_reduce(
    ring: &LaurentRing,
    x: &WittVec<LaurentElem>,
    cfg: &BruteConfig,
) -> Result<BruteResult> {
    let p = ring.p();
    let ctx = WittContext::shared(p, x.m())?;
    let coeffs = coefficient_set(ring, x);
    let mut moves = Vec::new();
    for i in 0..x.len() {
        for j in -cfg.bound..=-1 {
            for c in &coeffs {
                let z = WittVec::single(ring, ring.monomial(c.clone(), j), i, x.len());
                moves.push(ctx.frobenius_minus_one(ring, &z)?);
            }
        }
    }
    let mut best = BruteResult {
        rep: x.clone(),
        level: fil_level(x, p),
        visited: 1,
    };
    let mut seen: HashSet<WittVec<LaurentElem>> = HashSet::new();
    seen.insert(x.clone());
    let mut queue = VecDeque::from([(x.clone(), 0usize)]);
    while let Some((cur, depth)) = queue.pop_front() {
        if best.level == 0 || depth == cfg.depth {
            continue;
        }
        for mv in &moves {
            let cand = ctx.sub(ring, &cur, mv)?;
            if !seen.insert(cand.clone()) {
                continue;
            }
            let level = fil_level(&cand, p);
            if level < best.level {
                best.rep = cand.clone();
                best.level = level;
            }
            if seen.len() >= cfg.max_nodes {
                best.visited = seen.len();
                return Ok(best);
            }
            queue.push_back((cand, depth + 1));
        }
    }
    best.visited = seen.len();
    Ok(best)
}
