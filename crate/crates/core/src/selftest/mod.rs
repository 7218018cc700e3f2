//! Property and oracle checks over random and curated inputs.
//!
//! Every check is deterministic for a given seed. `Scale::Full` runs the
//! trial counts the library is validated against; `Scale::Quick` runs a tenth.

mod curated;
mod differentials;
mod field;
mod oracle;
mod ramification;
mod witt;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, LaurentRing, ResidueField};

pub use curated::{conductor_suite, hand_values, oracle_instances, CuratedCharacter, HandValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Field,
    Witt,
    Differentials,
    Ramification,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Field,
        Suite::Witt,
        Suite::Differentials,
        Suite::Ramification,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Field => "field",
            Suite::Witt => "witt",
            Suite::Differentials => "differentials",
            Suite::Ramification => "ramification",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Full,
    Quick,
}

impl Scale {
    pub fn trials(self, full: usize) -> usize {
        match self {
            Scale::Full => full,
            Scale::Quick => (full / 10).max(1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub witness: Option<String>,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }
}

/// Trial and failure counts for one check, keeping the first witness.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    trials: usize,
    failures: usize,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Record a trial whose computation may itself fail.
    pub(crate) fn attempt(&mut self, outcome: Result<bool>, witness: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, witness),
            Err(e) => self.record(false, || format!("{}: {e}", witness())),
        }
    }

    pub(crate) fn absorb(&mut self, trials: usize, failures: usize, witness: Option<String>) {
        self.trials += trials;
        self.failures += failures;
        if self.witness.is_none() {
            self.witness = witness;
        }
    }
}

pub(crate) fn run_check(
    suite: Suite,
    name: &str,
    body: impl FnOnce(&mut Tally) -> Result<()>,
) -> CheckOutcome {
    let start = Instant::now();
    let mut tally = Tally::default();
    if let Err(e) = body(&mut tally) {
        tally.failures += 1;
        tally.witness.get_or_insert_with(|| format!("aborted: {e}"));
    }
    CheckOutcome {
        suite,
        name: name.to_string(),
        trials: tally.trials,
        failures: tally.failures,
        witness: tally.witness,
        elapsed: start.elapsed(),
    }
}

pub(crate) fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub(crate) fn laurent_ring(config: FieldConfig) -> Result<LaurentRing> {
    Ok(LaurentRing::new(ResidueField::new(config)?))
}

/// The fields exercised by the random checks.
pub(crate) fn test_fields() -> Vec<FieldConfig> {
    vec![
        FieldConfig::perfect(2, 1),
        FieldConfig::rational(2, 1),
        FieldConfig::perfect(3, 2),
        FieldConfig::rational(3, 1),
        FieldConfig::perfect(5, 1),
        FieldConfig::rational(5, 1),
    ]
}

pub fn run_suite(suite: Suite, scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    match suite {
        Suite::Field => field::run(scale, seed),
        Suite::Witt => witt::run(scale, seed),
        Suite::Differentials => differentials::run(scale, seed),
        Suite::Ramification => ramification::run(scale, seed),
        Suite::Oracle => oracle::run(scale, seed),
    }
}

pub fn run_all(scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    Suite::ALL
        .into_iter()
        .flat_map(|suite| run_suite(suite, scale, seed))
        .collect()
}

pub const DEFAULT_SEED: u64 = 20_240_601;

// Individual checks, exposed so callers can run a single property.
pub use differentials::{
    check_cartier_identities, check_fmd_additivity, check_fmd_filtrations, check_fmd_verschiebung,
    check_normal_form_roundtrip,
};
pub use oracle::check_oracle_agreement;
pub use ramification::{
    check_hand_values, check_kappa_roundtrip, check_lift_independence,
    check_representative_independence, check_rho_roundtrip, check_sw_bounds,
    check_theta_single_terms,
};
pub use witt::{
    check_fil_prime_generators, check_q_identity, check_q_symbolic, check_verschiebung_fil,
};
