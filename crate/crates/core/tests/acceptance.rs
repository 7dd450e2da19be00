//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gaussform::oracle::{
    class_c_sweep, descent_sweep, niven_sweep, nu_sweep, ramanujan_sweep, residue_sweep, universality_sweep,
    verify_composition_random, with_workers,
};
use gaussform::ramanujan::{restrict, RestrictionSpec};
use gaussform::report::SweepReport;

const SEED: u64 = 0;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> SweepReport,
    extra: fn(&SweepReport) -> Result<(), String>,
}

fn none(_: &SweepReport) -> Result<(), String> {
    Ok(())
}

fn exact_forms(_: &SweepReport) -> Result<(), String> {
    let expected = [[1, 2, 1, 2], [1, 2, 1, 8], [1, 2, 4, 2], [1, 2, 4, 8]];
    for (name, want) in RestrictionSpec::PRESETS.iter().zip(expected) {
        let spec = RestrictionSpec::preset(name).ok_or("missing preset")?;
        let form = restrict(&spec).map_err(|e| e.to_string())?;
        if form.coeffs != want {
            return Err(format!("{name}: got {form}"));
        }
    }
    Ok(())
}

fn nu_coverage(r: &SweepReport) -> Result<(), String> {
    match (r.counts.get("pairs"), r.counts.get("units")) {
        (Some(10_000), Some(4)) if r.counts.get("primes").copied().unwrap_or(0) > 1000 => Ok(()),
        _ => Err(format!("unexpected coverage {:?}", r.counts)),
    }
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            name: "composition identity, 10^4 seeded octuples in [-50, 50]",
            limit: secs(10),
            run: || verify_composition_random(10_000, 50, SEED, None),
            extra: none,
        },
        Criterion {
            id: 2,
            name: "descent for class A/B primes up to norm 10^5, oracle up to 10^3",
            limit: secs(120),
            run: || descent_sweep(100_000, 1_000),
            extra: none,
        },
        Criterion {
            id: 3,
            name: "binary congruence solvable iff class A/B, norms up to 10^4",
            limit: secs(120),
            run: || residue_sweep(10_000),
            extra: none,
        },
        Criterion {
            id: 4,
            name: "two-square condition against exhaustive search, |a|, |b| <= 30",
            limit: secs(300),
            run: || niven_sweep(30),
            extra: none,
        },
        Criterion {
            id: 5,
            name: "class C witnesses up to norm 10^4",
            limit: secs(60),
            run: || class_c_sweep(10_000),
            extra: none,
        },
        Criterion {
            id: 6,
            name: "universality up to norm 2000",
            limit: secs(120),
            run: || universality_sweep(2000),
            extra: none,
        },
        Criterion {
            id: 7,
            name: "nu additivity, units and primes",
            limit: secs(60),
            run: || nu_sweep(10_000, 1_000_000, 10_000, SEED),
            extra: nu_coverage,
        },
        Criterion {
            id: 8,
            name: "diagonal restrictions represent 1..=10^4",
            limit: secs(60),
            run: || ramanujan_sweep(10_000),
            extra: exact_forms,
        },
    ]
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut reports = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let report = (c.run)();
        let elapsed = start.elapsed();
        let mut problems = Vec::new();
        if !report.passed {
            problems.push(format!(
                "{} failures, first {:?}",
                report.failures.len(),
                report.failures[0]
            ));
        }
        if let Err(e) = (c.extra)(&report) {
            problems.push(e);
        }
        if elapsed > c.limit {
            problems.push(format!("over the {:?} limit", c.limit));
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} {} ({} instances, {:.2?}){}",
            c.id,
            c.name,
            report.instances_checked,
            elapsed,
            if problems.is_empty() {
                String::new()
            } else {
                format!(": {}", problems.join("; "))
            }
        );
        all_ok &= problems.is_empty();
        reports.push(report.to_json());
    }

    let mut mismatched = Vec::new();
    for (c, default_json) in criteria().iter().zip(&reports) {
        let one = with_workers(1, c.run).to_json();
        let four = with_workers(4, c.run).to_json();
        if one != four || &four != default_json {
            mismatched.push(c.id);
        }
    }
    let ok = mismatched.is_empty();
    println!(
        "criterion 9: {} reports byte-identical across 1 and 4 workers{}",
        if ok { "PASS" } else { "FAIL" },
        if ok {
            String::new()
        } else {
            format!(": criteria {mismatched:?} differ")
        }
    );
    all_ok &= ok;

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
