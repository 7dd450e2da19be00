use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use gaussform::binary::{binary_value, descend, niven_mordell_representable, represent_class_c};
use gaussform::oracle::{with_workers, SweepKind};
use gaussform::quaternary::{evaluate, represent};
use gaussform::ramanujan::{represents_all_up_to, restrict, DiagonalFormZ, RestrictionSpec};
use gaussform::{classify, factorize, nu, parse_gaussian, Error, GaussianInt, PrimeClass};

#[derive(Parser)]
#[command(
    name = "gaussform",
    version,
    about = "Witnesses for x^2 + iy^2 + z^2 + iw^2 over the Gaussian integers"
)]
struct Cli {
    /// Emit one JSON object instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; the exit status carries the outcome
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Worker threads for sweeps (output does not depend on this)
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical factorization i^s * p1^a1 * ...
    Factor {
        #[arg(value_parser = gaussian, allow_hyphen_values = true)]
        z: GaussianInt,
    },
    /// Total multiplicity of canonical primes
    Nu {
        #[arg(value_parser = gaussian, allow_hyphen_values = true)]
        z: GaussianInt,
    },
    /// Class A, B or C of a canonical prime
    Classify {
        #[arg(value_parser = gaussian, allow_hyphen_values = true)]
        p: GaussianInt,
    },
    /// Solve p = x^2 + iy^2 (class C primes get their two-square witness instead)
    RepresentBinary {
        #[arg(value_parser = gaussian, allow_hyphen_values = true)]
        p: GaussianInt,
    },
    /// Solve z = x^2 + iy^2 + z^2 + iw^2
    Represent {
        #[arg(value_parser = gaussian, allow_hyphen_values = true)]
        z: GaussianInt,
    },
    /// Decide whether a + 2bi is a sum of two squares
    #[command(allow_negative_numbers = true)]
    Niven { a: BigInt, b: BigInt },
    /// Restrict the form along lattice lines and check the diagonal form it yields
    Ramanujan {
        /// Preset name (1212, 1218, 1242, 1248), a restriction such as
        /// "x=t, y=(1-i)t, z=2t, w=2(1-i)t", or a diagonal form "[1,2,4,8]"
        spec: String,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Exhaustive or seeded-random verification sweep
    Sweep {
        #[arg(value_parser = sweep_kind)]
        kind: SweepKind,
        /// Sweep size; defaults depend on the sweep
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn gaussian(s: &str) -> Result<GaussianInt, String> {
    parse_gaussian(s).map_err(|e| e.to_string())
}

fn sweep_kind(s: &str) -> Result<SweepKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = SweepKind::ALL.iter().map(|k| k.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// What one invocation produced, before rendering.
struct Output {
    command: &'static str,
    input: Value,
    result: Value,
    witness: Option<Value>,
    report: Option<Value>,
    text: String,
    verified: bool,
}

impl Output {
    fn new(command: &'static str, input: impl Into<Value>, result: impl Into<Value>, text: impl Into<String>) -> Self {
        Output {
            command,
            input: input.into(),
            result: result.into(),
            witness: None,
            report: None,
            text: text.into(),
            verified: true,
        }
    }

    fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    fn verified(mut self, ok: bool) -> Self {
        self.verified = ok;
        self
    }

    fn to_json(&self) -> String {
        let mut obj = json!({ "command": self.command, "input": self.input, "result": self.result });
        if let Some(w) = &self.witness {
            obj["witness"] = w.clone();
        }
        if let Some(r) = &self.report {
            obj["report"] = r.clone();
        }
        serde_json::to_string_pretty(&obj).expect("json")
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn execute(command: Command, workers: Option<usize>) -> Result<Output, Error> {
    Ok(match command {
        Command::Factor { z } => {
            let f = factorize(&z)?;
            let ok = f.reconstruct() == z;
            Output::new("factor", z.to_string(), to_value(&f), format!("{z} = {f}")).verified(ok)
        }
        Command::Nu { z } => {
            let n = nu(&z)?;
            Output::new("nu", z.to_string(), n, n.to_string())
        }
        Command::Classify { p } => {
            let c = classify(&p)?;
            Output::new("classify", p.to_string(), c.to_string(), c.to_string())
        }
        Command::RepresentBinary { p } => {
            if classify(&p)? == PrimeClass::C {
                let w = represent_class_c(&p)?;
                let text = format!("{p} is not of the form x^2 + iy^2 (class C); {w}");
                Output::new("represent-binary", p.to_string(), false, text)
                    .verified(w.value() == p)
                    .witness(to_value(&w))
            } else {
                let (x, y) = descend(&p)?;
                let text = format!("{p} = ({x})^2 + i({y})^2");
                Output::new("represent-binary", p.to_string(), true, text)
                    .verified(binary_value(&x, &y) == p)
                    .witness(json!({ "x": to_value(&x), "y": to_value(&y) }))
            }
        }
        Command::Represent { z } => {
            let r = represent(&z)?;
            let ok = evaluate(&r) == z;
            let parts: Vec<Value> = r.parts().iter().map(to_value).collect();
            Output::new("represent", z.to_string(), ok, r.to_string())
                .verified(ok)
                .witness(Value::Array(parts))
        }
        Command::Niven { a, b } => {
            let yes = niven_mordell_representable(&a, &b);
            let target = GaussianInt::new(a.clone(), &b * 2);
            let text = if yes { "representable" } else { "not representable" };
            Output::new(
                "niven",
                json!({ "a": a.to_string(), "b": b.to_string(), "target": target.to_string() }),
                yes,
                text,
            )
        }
        Command::Ramanujan { spec, bound } => {
            let (form, restriction) = if spec.trim_start().starts_with('[') {
                (spec.parse::<DiagonalFormZ>()?, None)
            } else {
                let r = match RestrictionSpec::preset(spec.trim()) {
                    Some(r) => r,
                    None => spec.parse::<RestrictionSpec>()?,
                };
                (restrict(&r)?, Some(r))
            };
            let miss = run_pool(workers, || represents_all_up_to(&form, bound));
            let text = match (&restriction, miss) {
                (Some(r), None) => format!("{r} gives {form}, which represents every n in 1..={bound}"),
                (Some(r), Some(n)) => format!("{r} gives {form}, which misses {n}"),
                (None, None) => format!("{form} represents every n in 1..={bound}"),
                (None, Some(n)) => format!("{form} misses {n}"),
            };
            let input = json!({ "spec": spec, "bound": bound });
            let result = json!({ "form": form.coeffs, "firstMiss": miss });
            Output::new("ramanujan", input, result, text).verified(miss.is_none())
        }
        Command::Sweep { kind, bound, seed, out } => {
            let bound = bound.unwrap_or_else(|| kind.default_bound());
            let report = run_pool(workers, || kind.run(bound, seed));
            let json = report.to_json();
            if let Some(path) = out {
                fs::write(&path, format!("{json}\n"))
                    .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
            }
            let mut text = format!(
                "{}: {} ({} instances",
                kind,
                if report.passed { "passed" } else { "FAILED" },
                report.instances_checked
            );
            for (k, v) in &report.counts {
                text.push_str(&format!(", {k} {v}"));
            }
            text.push(')');
            for f in &report.failures {
                text.push_str(&format!("\n  {}: expected {}, got {}", f.input, f.expected, f.got));
            }
            let input = json!({ "sweep": kind.name(), "bound": bound, "seed": seed });
            let mut o = Output::new("sweep", input, report.passed, text).verified(report.passed);
            o.report = Some(to_value(&report));
            o
        }
    })
}

fn run_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(k) => with_workers(k, f),
        None => f(),
    }
}

fn is_usage_error(e: &Error) -> bool {
    !matches!(e, Error::ConstructionFailed(_) | Error::InvalidWitness(_))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command, cli.workers) {
        Ok(out) => {
            if !cli.quiet {
                if cli.json {
                    println!("{}", out.to_json());
                } else {
                    println!("{}", out.text);
                }
            }
            ExitCode::from(if out.verified { 0 } else { 1 })
        }
        Err(e) => {
            if !cli.quiet {
                eprintln!("error: {e}");
            }
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
