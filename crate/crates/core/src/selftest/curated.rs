//! Fixed characters used by the consistency checks.

use crate::error::Result;
use crate::expr::{parse_element, parse_witt};
use crate::field::{FieldConfig, LaurentRing, ResidueField};
use crate::ramification::CharacterClass;
use crate::witt::{WittContext, WittVec};

#[derive(Debug, Clone)]
pub struct CuratedCharacter {
    pub config: FieldConfig,
    pub witt: Vec<String>,
    /// Added as (F - 1)(z) with z = expression at the given index.
    pub perturbations: Vec<(usize, String)>,
}

impl CuratedCharacter {
    fn new(config: FieldConfig, witt: &[&str]) -> Self {
        CuratedCharacter {
            config,
            witt: witt.iter().map(|s| s.to_string()).collect(),
            perturbations: Vec::new(),
        }
    }

    fn perturbed(mut self, moves: &[(usize, &str)]) -> Self {
        self.perturbations = moves.iter().map(|(i, s)| (*i, s.to_string())).collect();
        self
    }

    pub fn ring(&self) -> Result<LaurentRing> {
        Ok(LaurentRing::new(ResidueField::new(self.config.clone())?))
    }

    pub fn character(&self) -> Result<CharacterClass> {
        let ring = self.ring()?;
        let mut x = parse_witt(&self.witt, &ring)?;
        let ctx = WittContext::shared(ring.p(), x.m())?;
        for (i, src) in &self.perturbations {
            let z = WittVec::single(&ring, parse_element(src, &ring)?, *i, x.len());
            x = ctx.add(&ring, &x, &ctx.frobenius_minus_one(&ring, &z)?)?;
        }
        CharacterClass::new(ring, x)
    }

    pub fn label(&self) -> String {
        let kind = if self.config.p_basis_size() == 0 {
            "GF"
        } else {
            "GF(y)"
        };
        let mut s = format!("p={} {kind} {:?}", self.config.p, self.witt);
        for (i, z) in &self.perturbations {
            s.push_str(&format!(" +(F-1)[{i}:{z}]"));
        }
        s
    }
}

fn p2() -> FieldConfig {
    FieldConfig::perfect(2, 1)
}
fn r2() -> FieldConfig {
    FieldConfig::rational(2, 1)
}
fn p3() -> FieldConfig {
    FieldConfig::perfect(3, 1)
}
fn r3() -> FieldConfig {
    FieldConfig::rational(3, 1)
}
fn p5() -> FieldConfig {
    FieldConfig::perfect(5, 1)
}
fn r5() -> FieldConfig {
    FieldConfig::rational(5, 1)
}

/// Instances with witt length <= 2 and p in {2, 3}, each reachable from a
/// minimal representative by at most two single-monomial moves.
pub fn oracle_instances() -> Vec<CuratedCharacter> {
    let c = CuratedCharacter::new;
    vec![
        c(p2(), &["pi^-1"]),
        c(p2(), &["pi^-3"]),
        c(p2(), &["pi^-5"]),
        c(p2(), &["pi^-3 + pi^-1"]),
        c(p2(), &["pi^-2"]),
        c(p2(), &["pi^-4 + pi^-1"]),
        c(p2(), &["pi^-6"]),
        c(p2(), &["pi^-7 + pi^-2"]),
        c(r2(), &["y*pi^-2"]),
        c(r2(), &["y*pi^-1"]),
        c(r2(), &["(y+1)*pi^-4"]),
        c(r2(), &["y^2*pi^-2"]),
        c(r2(), &["y*pi^-6 + pi^-3"]),
        c(r2(), &["1/y*pi^-3"]),
        c(r2(), &["y^3*pi^-4"]),
        c(p3(), &["pi^-1"]),
        c(p3(), &["2*pi^-2"]),
        c(p3(), &["pi^-3"]),
        c(p3(), &["pi^-4 + pi^-1"]),
        c(p3(), &["pi^-6"]),
        c(r3(), &["y*pi^-3"]),
        c(r3(), &["y^3*pi^-3"]),
        c(r3(), &["(y+1)*pi^-2"]),
        c(r3(), &["y*pi^-6 + y*pi^-1"]),
        c(p2(), &["pi^-1", "0"]),
        c(p2(), &["0", "pi^-1"]),
        c(p2(), &["pi^-1", "pi^-1"]),
        c(p2(), &["pi^-2", "0"]),
        c(p2(), &["0", "pi^-2"]),
        c(p2(), &["pi^-1", "pi^-3"]),
        c(r2(), &["y*pi^-1", "0"]),
        c(r2(), &["0", "y*pi^-2"]),
        c(r2(), &["y*pi^-1", "pi^-1"]),
        c(p3(), &["pi^-1", "0"]),
        c(p3(), &["0", "pi^-2"]),
        c(p3(), &["pi^-1", "pi^-1"]),
        c(r3(), &["y*pi^-1", "0"]),
        c(p2(), &["pi^-3"]).perturbed(&[(0, "pi^-2")]),
        c(p2(), &["pi^-1"]).perturbed(&[(0, "pi^-3")]),
        c(p2(), &["pi^-5"]).perturbed(&[(0, "pi^-1"), (0, "pi^-4")]),
        c(p2(), &["pi^-3 + pi^-1"]).perturbed(&[(0, "pi^-2")]),
        c(r2(), &["y*pi^-2"]).perturbed(&[(0, "y*pi^-1")]),
        c(r2(), &["y*pi^-1"]).perturbed(&[(0, "pi^-2")]),
        c(r2(), &["(y+1)*pi^-4"]).perturbed(&[(0, "y*pi^-3")]),
        c(p3(), &["pi^-1"]).perturbed(&[(0, "pi^-1")]),
        c(p3(), &["2*pi^-2"]).perturbed(&[(0, "2*pi^-1")]),
        c(r3(), &["y*pi^-3"]).perturbed(&[(0, "y*pi^-2")]),
        c(p2(), &["pi^-1", "0"]).perturbed(&[(1, "pi^-2")]),
        c(p2(), &["0", "pi^-1"]).perturbed(&[(0, "pi^-1")]),
        c(p2(), &["pi^-1", "pi^-3"]).perturbed(&[(1, "pi^-2")]),
        c(r2(), &["y*pi^-1", "0"]).perturbed(&[(1, "y*pi^-1")]),
        c(p3(), &["pi^-1", "0"]).perturbed(&[(1, "pi^-1")]),
        c(p3(), &["0", "pi^-2"]).perturbed(&[(0, "pi^-1")]),
    ]
}

/// Thirty characters over p in {2, 3, 5}, witt length up to 3.
pub fn conductor_suite() -> Vec<CuratedCharacter> {
    let c = CuratedCharacter::new;
    vec![
        c(p2(), &["pi^-1"]),
        c(p2(), &["pi^-3"]),
        c(p2(), &["pi^-4 + pi^-1"]),
        c(p2(), &["pi^-7 + pi^-2"]),
        c(r2(), &["y*pi^-2"]),
        c(r2(), &["y*pi^-1"]),
        c(r2(), &["(y+1)*pi^-4"]),
        c(r2(), &["y*pi^-6 + pi^-3"]),
        c(r2(), &["1/y*pi^-3"]),
        c(p3(), &["pi^-2"]),
        c(p3(), &["pi^-4 + pi^-1"]),
        c(r3(), &["y*pi^-3"]),
        c(r3(), &["(y+1)*pi^-2"]),
        c(r3(), &["y*pi^-6 + y*pi^-1"]),
        c(p5(), &["pi^-1"]),
        c(p5(), &["pi^-2"]),
        c(p5(), &["pi^-5"]),
        c(r5(), &["y*pi^-5"]),
        c(r5(), &["(y^2+1)*pi^-3"]),
        c(p2(), &["pi^-1", "0"]),
        c(p2(), &["0", "pi^-1"]),
        c(p2(), &["pi^-1", "pi^-3"]),
        c(r2(), &["0", "y*pi^-2"]),
        c(r2(), &["y*pi^-1", "pi^-1"]),
        c(p3(), &["pi^-1", "pi^-1"]),
        c(r3(), &["y*pi^-1", "0"]),
        c(p2(), &["pi^-1", "0", "0"]),
        c(p2(), &["0", "pi^-1", "pi^-1"]),
        c(r2(), &["0", "0", "y*pi^-2"]),
        c(p3(), &["pi^-1", "0", "0"]),
    ]
}

/// Conductor values worked out by hand from the definitions.
#[derive(Debug, Clone)]
pub struct HandValue {
    pub character: CuratedCharacter,
    pub sw: i64,
    /// (alpha, beta) of rsw as expressions, if sw >= 1.
    pub rsw: Option<(&'static str, &'static str)>,
    pub sw_mod: i64,
    /// (alpha, beta) of rsw', `None` when absent or unsupported.
    pub rsw_mod: Option<(&'static str, &'static str)>,
    pub slope: Option<i64>,
    pub log_slope: Option<i64>,
    pub char_point: Option<(&'static str, &'static str)>,
    pub log_char_point: Option<(&'static str, &'static str)>,
}

pub fn hand_values() -> Vec<HandValue> {
    let c = CuratedCharacter::new;
    vec![
        HandValue {
            character: c(p3(), &["pi^-2"]),
            sw: 2,
            rsw: Some(("0", "2")),
            sw_mod: 2,
            rsw_mod: Some(("0", "2")),
            slope: Some(3),
            log_slope: Some(2),
            char_point: Some(("0", "1")),
            log_char_point: Some(("0", "1")),
        },
        HandValue {
            character: c(r2(), &["y*pi^-2"]),
            sw: 2,
            rsw: Some(("1", "0")),
            sw_mod: 1,
            rsw_mod: None,
            slope: None,
            log_slope: Some(2),
            char_point: None,
            log_char_point: Some(("1", "0")),
        },
        HandValue {
            character: c(p2(), &["pi^-3"]),
            sw: 3,
            rsw: Some(("0", "1")),
            sw_mod: 3,
            rsw_mod: Some(("0", "1")),
            slope: Some(4),
            log_slope: Some(3),
            char_point: Some(("0", "1")),
            log_char_point: Some(("0", "1")),
        },
        HandValue {
            character: c(p2(), &["pi^-1", "0"]),
            sw: 2,
            rsw: Some(("0", "1")),
            sw_mod: 2,
            rsw_mod: Some(("0", "1")),
            slope: Some(3),
            log_slope: Some(2),
            char_point: Some(("0", "1")),
            log_char_point: Some(("0", "1")),
        },
        HandValue {
            character: c(p3(), &["pi^-1"]),
            sw: 1,
            rsw: Some(("0", "1")),
            sw_mod: 1,
            rsw_mod: Some(("0", "1")),
            slope: None,
            log_slope: Some(1),
            char_point: None,
            log_char_point: Some(("0", "2")),
        },
        HandValue {
            character: c(p2(), &["pi^-4 + pi^-1"]),
            sw: 0,
            rsw: None,
            sw_mod: 0,
            rsw_mod: None,
            slope: None,
            log_slope: None,
            char_point: None,
            log_char_point: None,
        },
        HandValue {
            character: c(r3(), &["y*pi^-3"]),
            sw: 3,
            rsw: Some(("2", "0")),
            sw_mod: 2,
            rsw_mod: Some(("2", "0")),
            slope: Some(3),
            log_slope: Some(3),
            char_point: Some(("1", "0")),
            log_char_point: Some(("1", "0")),
        },
    ]
}
