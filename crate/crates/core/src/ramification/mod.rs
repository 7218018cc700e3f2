//! Artin-Schreier-Witt characters, reduced representatives, Swan conductors
//! and their refinements, the sections rho_n and kappa_n, and the slopes and
//! characteristic points they determine.

mod reduce;
mod sections;

use std::sync::Arc;

use crate::differentials::{
    bgr_normal_form, fmd, graded_class, plain_in_range, GradedForm, NormalFormBGr, Variant,
};
use crate::error::{Error, Result};
use crate::field::{LaurentElem, LaurentRing};
use crate::witt::{self, fil_prime_level, WittContext, WittVec};

pub use reduce::{reduce_representative, Reduced, ReductionConfig};
pub use sections::{kappa_n, kappa_n_lifted, rho_n, rho_n_lifted, theta, Lift};

/// A character chi = delta_{m+1}(x), stored through a representative x in W_{m+1}(K).
#[derive(Debug, Clone)]
pub struct CharacterClass {
    ctx: Arc<WittContext>,
    ring: LaurentRing,
    rep: WittVec<LaurentElem>,
}

impl CharacterClass {
    pub fn new(ring: LaurentRing, rep: WittVec<LaurentElem>) -> Result<Self> {
        let ctx = WittContext::shared(ring.p(), rep.m())?;
        Ok(CharacterClass { ctx, ring, rep })
    }

    pub fn ring(&self) -> &LaurentRing {
        &self.ring
    }

    pub fn context(&self) -> &Arc<WittContext> {
        &self.ctx
    }

    pub fn representative(&self) -> &WittVec<LaurentElem> {
        &self.rep
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn m(&self) -> usize {
        self.rep.m()
    }

    fn with_rep(&self, rep: WittVec<LaurentElem>) -> Self {
        CharacterClass {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            rep,
        }
    }

    /// The same class, represented by x + (F - 1)(y).
    pub fn perturb(&self, y: &WittVec<LaurentElem>) -> Result<Self> {
        let fy = self.ctx.frobenius_minus_one(&self.ring, y)?;
        Ok(self.with_rep(self.ctx.add(&self.ring, &self.rep, &fy)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(self.with_rep(self.ctx.add(&self.ring, &self.rep, &other.rep)?))
    }

    pub fn neg(&self) -> Result<Self> {
        Ok(self.with_rep(self.ctx.neg(&self.ring, &self.rep)?))
    }

    /// The same character seen in W_{m+2}(K), via V.
    pub fn lengthen(&self) -> Result<Self> {
        CharacterClass::new(self.ring.clone(), witt::verschiebung(&self.ring, &self.rep))
    }
}

/// A value that is only asserted by the theorems under a hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremValue<T> {
    Value(T),
    OutOfRange(String),
}

impl<T> TheoremValue<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            TheoremValue::Value(v) => Some(v),
            TheoremValue::OutOfRange(_) => None,
        }
    }

    pub fn into_result(self) -> Result<T> {
        match self {
            TheoremValue::Value(v) => Ok(v),
            TheoremValue::OutOfRange(msg) => Err(Error::OutOfTheoremRange(msg)),
        }
    }
}

/// rsw' is absent at level 0 and undefined for p = 2 at level 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefinedModified {
    Absent,
    Unsupported(String),
    Defined(GradedForm),
}

impl RefinedModified {
    pub fn form(&self) -> Option<&GradedForm> {
        match self {
            RefinedModified::Defined(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConductorReport {
    pub reduced: WittVec<LaurentElem>,
    pub sw: i64,
    pub rsw: Option<GradedForm>,
    pub rsw_normal_form: Option<NormalFormBGr>,
    pub sw_mod: i64,
    pub rsw_mod: RefinedModified,
    pub rsw_mod_normal_form: Option<NormalFormBGr>,
    /// sw' + 1, asserted when sw' > 1.
    pub slope: TheoremValue<i64>,
    /// sw, asserted when sw >= 1.
    pub log_slope: TheoremValue<i64>,
    /// -rsw'
    pub char_point: TheoremValue<GradedForm>,
    /// -rsw
    pub log_char_point: TheoremValue<GradedForm>,
    pub reduction_iterations: usize,
}

fn refined(reduced: &Reduced, ring: &LaurentRing, n: i64, variant: Variant) -> Result<GradedForm> {
    let omega = fmd(ring, &reduced.rep);
    Ok(graded_class(ring, &omega, n, variant)?.neg(ring.residue()))
}

/// sw(chi): the least n >= 0 with chi in fil_n H^1(K).
pub fn swan(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<i64> {
    Ok(reduce_representative(chi, cfg)?.sw)
}

/// rsw(chi) = -gr_sw(F^m d)(x); `None` when sw = 0.
pub fn refined_swan(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<Option<GradedForm>> {
    let red = reduce_representative(chi, cfg)?;
    if red.sw == 0 {
        return Ok(None);
    }
    refined(&red, chi.ring(), red.sw, Variant::Log).map(Some)
}

fn sw_mod_of(red: &Reduced, p: u64) -> i64 {
    fil_prime_level(&red.rep, p)
}

/// sw'(chi): the least n >= 0 with chi in fil'_n H^1(K).
pub fn swan_modified(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<i64> {
    let red = reduce_representative(chi, cfg)?;
    Ok(sw_mod_of(&red, chi.p()))
}

fn refined_mod_of(red: &Reduced, ring: &LaurentRing, sw_mod: i64) -> Result<RefinedModified> {
    let p = ring.p();
    if sw_mod == 0 {
        return Ok(RefinedModified::Absent);
    }
    if !plain_in_range(p, sw_mod) {
        return Ok(RefinedModified::Unsupported(format!(
            "rsw' is not defined for p = {p} at sw' = {sw_mod}"
        )));
    }
    Ok(RefinedModified::Defined(refined(
        red,
        ring,
        sw_mod,
        Variant::Plain,
    )?))
}

/// rsw'(chi) = -gr'_sw'(F^m d)(x); `None` when sw' = 0.
pub fn refined_swan_modified(
    chi: &CharacterClass,
    cfg: &ReductionConfig,
) -> Result<Option<GradedForm>> {
    let red = reduce_representative(chi, cfg)?;
    let sw_mod = sw_mod_of(&red, chi.p());
    match refined_mod_of(&red, chi.ring(), sw_mod)? {
        RefinedModified::Absent => Ok(None),
        RefinedModified::Unsupported(msg) => Err(Error::UnsupportedRange(msg)),
        RefinedModified::Defined(g) => Ok(Some(g)),
    }
}

impl ConductorReport {
    pub fn compute(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<Self> {
        let ring = chi.ring();
        let field = ring.residue();
        let red = reduce_representative(chi, cfg)?;
        let sw = red.sw;
        let rsw = if sw >= 1 {
            Some(refined(&red, ring, sw, Variant::Log)?)
        } else {
            None
        };
        let rsw_normal_form = rsw
            .as_ref()
            .map(|g| bgr_normal_form(field, g))
            .transpose()?;
        let sw_mod = sw_mod_of(&red, chi.p());
        let rsw_mod = refined_mod_of(&red, ring, sw_mod)?;
        let rsw_mod_normal_form = rsw_mod
            .form()
            .map(|g| bgr_normal_form(field, g))
            .transpose()?;

        let (slope, char_point) = if sw_mod > 1 {
            let point = rsw_mod
                .form()
                .expect("rsw' is defined for sw' > 1")
                .neg(field);
            (TheoremValue::Value(sw_mod + 1), TheoremValue::Value(point))
        } else {
            let msg = format!("critical slope needs sw' > 1, got sw' = {sw_mod}");
            (
                TheoremValue::OutOfRange(msg.clone()),
                TheoremValue::OutOfRange(msg),
            )
        };
        let (log_slope, log_char_point) = match &rsw {
            Some(g) => (TheoremValue::Value(sw), TheoremValue::Value(g.neg(field))),
            None => {
                let msg = "logarithmic slope needs sw >= 1, got sw = 0".to_string();
                (
                    TheoremValue::OutOfRange(msg.clone()),
                    TheoremValue::OutOfRange(msg),
                )
            }
        };
        Ok(ConductorReport {
            reduced: red.rep,
            sw,
            rsw,
            rsw_normal_form,
            sw_mod,
            rsw_mod,
            rsw_mod_normal_form,
            slope,
            log_slope,
            char_point,
            log_char_point,
            reduction_iterations: red.iterations,
        })
    }
}

pub fn critical_slope(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<i64> {
    ConductorReport::compute(chi, cfg)?.slope.into_result()
}

pub fn log_critical_slope(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<i64> {
    ConductorReport::compute(chi, cfg)?.log_slope.into_result()
}

pub fn char_point(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<GradedForm> {
    ConductorReport::compute(chi, cfg)?.char_point.into_result()
}

pub fn log_char_point(chi: &CharacterClass, cfg: &ReductionConfig) -> Result<GradedForm> {
    ConductorReport::compute(chi, cfg)?
        .log_char_point
        .into_result()
}
