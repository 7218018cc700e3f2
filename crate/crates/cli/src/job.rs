//! Field and job descriptions shared by the flags and the batch format.

use serde::{Deserialize, Serialize};
use swanlab::expr::parse_witt;
use swanlab::field::{FieldConfig, LaurentRing, ResidueField, ResidueKind};
use swanlab::ramification::{CharacterClass, ConductorReport, ReductionConfig};
use swanlab::{Error, Result};

use crate::report::{ConductorJson, ErrorJson, Output, Status};

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    /// Size of the constant field; defaults to p.
    #[serde(default)]
    pub q: Option<u64>,
    /// Monic irreducible modulus over GF(p), low degree first.
    #[serde(default)]
    pub modulus: Option<Vec<u64>>,
    /// `perfect` or `rational(y)`.
    #[serde(default)]
    pub residue: Option<String>,
}

fn degree_of(p: u64, q: u64) -> Result<u32> {
    let mut e = 0;
    let mut acc = 1u64;
    while acc < q {
        acc = acc
            .checked_mul(p)
            .ok_or_else(|| Error::Config(format!("q = {q} is too large")))?;
        e += 1;
    }
    if acc != q || e == 0 {
        return Err(Error::Config(format!("q = {q} is not a power of p = {p}")));
    }
    Ok(e)
}

pub fn parse_residue_kind(s: &str) -> Result<ResidueKind> {
    let s = s.trim();
    if s == "perfect" {
        return Ok(ResidueKind::Perfect);
    }
    if s == "rational" {
        return Ok(ResidueKind::RationalFunction { var: "y".into() });
    }
    if let Some(var) = s
        .strip_prefix("rational(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let var = var.trim();
        let valid = var.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && var != "pi"
            && var != "g";
        if valid {
            return Ok(ResidueKind::RationalFunction { var: var.into() });
        }
    }
    Err(Error::Config(format!(
        "residue must be 'perfect' or 'rational(<var>)', got '{s}'"
    )))
}

impl FieldSpec {
    pub fn config(&self) -> Result<FieldConfig> {
        let e = match (self.q, &self.modulus) {
            (Some(q), _) => degree_of(self.p, q)?,
            (None, Some(m)) => m.len().saturating_sub(1) as u32,
            (None, None) => 1,
        };
        if let (Some(_), Some(m)) = (self.q, &self.modulus) {
            if m.len() != e as usize + 1 {
                return Err(Error::Config(format!(
                    "modulus of degree {} does not define GF(p^{e})",
                    m.len().saturating_sub(1)
                )));
            }
        }
        let residue = match &self.residue {
            Some(s) => parse_residue_kind(s)?,
            None => ResidueKind::Perfect,
        };
        Ok(FieldConfig {
            p: self.p,
            e,
            modulus: self.modulus.clone(),
            residue,
        })
    }

    pub fn ring(&self) -> Result<LaurentRing> {
        Ok(LaurentRing::new(ResidueField::new(self.config()?)?))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    #[serde(default)]
    pub max_iterations: Option<usize>,
    #[serde(default)]
    pub search_depth: Option<usize>,
    #[serde(default)]
    pub search_nodes: Option<usize>,
}

impl Budget {
    pub fn reduction_config(&self) -> ReductionConfig {
        let base = ReductionConfig::default();
        ReductionConfig {
            max_iterations: self.max_iterations,
            search_depth: self.search_depth.unwrap_or(base.search_depth),
            search_nodes: self.search_nodes.unwrap_or(base.search_nodes),
        }
    }
}

/// One conductor computation in a batch file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: FieldSpec,
    /// Optional; must equal the number of components when given.
    #[serde(default)]
    pub witt_length: Option<usize>,
    pub witt: Vec<String>,
    #[serde(default)]
    pub outputs: Option<Vec<Output>>,
    #[serde(default)]
    pub budget: Budget,
}

/// Run one conductor computation, rendering failures as error reports.
pub fn conductor(
    field: &FieldSpec,
    witt: &[String],
    witt_length: Option<usize>,
    outputs: &[Output],
    budget: &Budget,
) -> (serde_json::Value, Status) {
    let ring = match field.ring() {
        Ok(r) => r,
        Err(e) => return failure(&e, None),
    };
    let computed = (|| -> Result<ConductorJson> {
        if let Some(len) = witt_length {
            if len != witt.len() {
                return Err(Error::Config(format!(
                    "witt_length {len} but {} components given",
                    witt.len()
                )));
            }
        }
        let x = parse_witt(witt, &ring)?;
        let chi = CharacterClass::new(ring.clone(), x)?;
        let report = ConductorReport::compute(&chi, &budget.reduction_config())?;
        Ok(ConductorJson::new(&ring, witt.to_vec(), &report, outputs))
    })();
    match computed {
        Ok(json) => {
            let status = json.status;
            (
                serde_json::to_value(json).expect("report serializes"),
                status,
            )
        }
        Err(e) => failure(&e, Some(&ring)),
    }
}

pub fn run_job(job: &JobSpec) -> (serde_json::Value, Status) {
    let outputs = job.outputs.clone().unwrap_or_else(|| Output::ALL.to_vec());
    conductor(
        &job.field,
        &job.witt,
        job.witt_length,
        &outputs,
        &job.budget,
    )
}

fn failure(e: &Error, ring: Option<&LaurentRing>) -> (serde_json::Value, Status) {
    let json = ErrorJson::new("conductor", e, ring);
    let status = json.status;
    (
        serde_json::to_value(json).expect("error serializes"),
        status,
    )
}
