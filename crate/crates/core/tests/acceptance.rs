//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use swanlab::selftest::{self, CheckOutcome, Scale, DEFAULT_SEED};

struct Line {
    ok: bool,
    text: String,
}

fn summarize(checks: &[CheckOutcome]) -> (bool, String, Duration) {
    let ok = checks.iter().all(|c| c.passed());
    let elapsed = checks.iter().map(|c| c.elapsed).sum();
    let parts: Vec<String> = checks
        .iter()
        .map(|c| {
            let mut s = format!("{}: {} trials, {} failures", c.name, c.trials, c.failures);
            if let Some(w) = &c.witness {
                s.push_str(&format!(" [{}]", w.chars().take(200).collect::<String>()));
            }
            s
        })
        .collect();
    (ok, parts.join("; "), elapsed)
}

fn criterion(
    n: u32,
    checks: Vec<CheckOutcome>,
    limit: Option<Duration>,
    extra: Option<(bool, String)>,
) -> Line {
    let (mut ok, mut text, elapsed) = summarize(&checks);
    if let Some((extra_ok, extra_text)) = extra {
        ok &= extra_ok;
        text = format!("{text}; {extra_text}");
    }
    let timing = match limit {
        Some(limit) => {
            ok &= elapsed < limit;
            format!("{:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs())
        }
        None => format!("{:.2}s", elapsed.as_secs_f64()),
    };
    Line {
        ok,
        text: format!("criterion {n}: {text}; {timing}"),
    }
}

fn main() -> ExitCode {
    let (scale, seed) = (Scale::Full, DEFAULT_SEED);
    let secs = Duration::from_secs;
    let mut lines = Vec::new();

    lines.push(criterion(
        1,
        vec![selftest::check_rho_roundtrip(scale, seed)],
        Some(secs(60)),
        None,
    ));
    lines.push(criterion(
        2,
        vec![selftest::check_kappa_roundtrip(scale, seed)],
        None,
        None,
    ));
    lines.push(criterion(
        3,
        vec![
            selftest::check_q_symbolic(scale, seed),
            selftest::check_q_identity(scale, seed),
        ],
        Some(secs(120)),
        None,
    ));
    lines.push(criterion(
        4,
        vec![selftest::check_fmd_additivity(scale, seed)],
        None,
        None,
    ));
    lines.push(criterion(
        5,
        vec![
            selftest::check_fmd_filtrations(scale, seed),
            selftest::check_verschiebung_fil(scale, seed),
            selftest::check_fil_prime_generators(scale, seed),
        ],
        None,
        None,
    ));
    let suite = selftest::conductor_suite().len();
    lines.push(criterion(
        6,
        vec![selftest::check_representative_independence(scale, seed)],
        None,
        Some((suite >= 30, format!("{suite} curated characters"))),
    ));
    let instances = selftest::oracle_instances();
    let trivial = instances
        .iter()
        .any(|c| c.config.p == 2 && c.witt == ["pi^-4 + pi^-1"] && c.perturbations.is_empty());
    let small = instances
        .iter()
        .all(|c| c.witt.len() <= 2 && [2, 3].contains(&c.config.p));
    lines.push(criterion(
        7,
        vec![selftest::check_oracle_agreement(scale, seed)],
        None,
        Some((
            instances.len() >= 50 && trivial && small,
            format!(
                "{} instances, trivial instance included: {trivial}",
                instances.len()
            ),
        )),
    ));
    lines.push(criterion(
        8,
        vec![
            selftest::check_hand_values(scale, seed),
            selftest::check_sw_bounds(scale, seed),
        ],
        None,
        None,
    ));

    let start = Instant::now();
    let all = selftest::run_all(scale, seed);
    let wall = start.elapsed();
    let failed: Vec<&str> = all
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect();
    lines.push(Line {
        ok: failed.is_empty() && wall < secs(300),
        text: format!(
            "criterion 9: full selftest, {} checks, {} failing {:?}, exact arithmetic only; {:.2}s (limit 300s)",
            all.len(),
            failed.len(),
            failed,
            wall.as_secs_f64()
        ),
    });

    for line in &lines {
        println!("{} {}", if line.ok { "PASS" } else { "FAIL" }, line.text);
    }
    if lines.iter().all(|l| l.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
