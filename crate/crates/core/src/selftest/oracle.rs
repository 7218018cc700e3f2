use crate::error::Result;
use crate::oracle::{brute_reduce, BruteConfig};
use crate::ramification::{swan, ReductionConfig};

use super::curated::oracle_instances;
use super::{run_check, CheckOutcome, Scale, Suite};

pub fn check_oracle_agreement(_scale: Scale, _seed: u64) -> CheckOutcome {
    run_check(
        Suite::Oracle,
        "swan agrees with breadth-first search",
        |tally| {
            let cfg = ReductionConfig::default();
            let brute = BruteConfig::default();
            for instance in oracle_instances() {
                let chi = instance.character()?;
                let outcome = (|| -> Result<(i64, i64)> {
                    let sw = swan(&chi, &cfg)?;
                    let found = brute_reduce(chi.ring(), chi.representative(), &brute)?;
                    Ok((sw, found.level))
                })();
                let label = instance.label();
                let witness = match &outcome {
                    Ok((sw, level)) => format!("{label}: swan {sw}, search {level}"),
                    Err(_) => label,
                };
                tally.attempt(outcome.map(|(sw, level)| sw == level), || witness);
            }
            Ok(())
        },
    )
}

pub fn run(scale: Scale, seed: u64) -> Vec<CheckOutcome> {
    vec![check_oracle_agreement(scale, seed)]
}
