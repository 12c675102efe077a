//! Command-line front end: construct schemes, verify code files, sample
//! rate bounds, and run the simulator checks.
//!
//! Exit codes are a stable contract: 0 all checks pass, 1 a check failed,
//! 2 bad parameters or usage, 3 a seeded search was exhausted, 4 a code
//! file failed to parse, 5 an explicitly requested exhaustive check
//! exceeded its budget.

use std::collections::HashMap;
use std::fs;
use std::process::ExitCode;

use secstore::bounds;
use secstore::codefile;
use secstore::gf::Field;
use secstore::secure;
use secstore::sim;
use secstore::Error;

const USAGE: &str = "\
usage: secstore <command> [flags]

commands:
  construct --scheme <grs|grs-balanced|construction1|construction2|rm|random>
            [--q <prime>] [--n <int>] [--kd <int>] [--t <int>] [--a <int>]
            [--m <int>] [--v <int>] [--d-target <int>] [--points <csv>]
            [--seed <int>] [--max-tries <int>] [--out <file>]
  verify    --code <file> [--exhaustive] [--json]
  bounds    --q 2 --tau <real> --steps <int> [--out <file>]
  simulate  --code <file> [--checks secrecy,recovery,erasure,load] [--seed <int>]
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    ExitCode::from(run(&args))
}

fn run(args: &[String]) -> u8 {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return 2;
    };
    let flags = match Flags::parse(&args[1..]) {
        Ok(f) => f,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let outcome = match command.as_str() {
        "construct" => cmd_construct(&flags),
        "verify" => cmd_verify(&flags),
        "bounds" => cmd_bounds(&flags),
        "simulate" => cmd_simulate(&flags),
        other => {
            eprintln!("error: unknown command '{other}'");
            eprint!("{USAGE}");
            return 2;
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 4,
        Error::SearchExhausted { .. } => 3,
        Error::BudgetExceeded(_) => 5,
        _ => 2,
    }
}

struct Flags {
    values: HashMap<String, String>,
    switches: Vec<String>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Self, String> {
        let mut values = HashMap::new();
        let mut switches = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let Some(key) = arg.strip_prefix("--") else {
                return Err(format!("unexpected argument '{arg}'"));
            };
            if matches!(key, "exhaustive" | "json") {
                switches.push(key.to_string());
                i += 1;
                continue;
            }
            let Some(value) = args.get(i + 1) else {
                return Err(format!("flag --{key} needs a value"));
            };
            values.insert(key.to_string(), value.clone());
            i += 2;
        }
        Ok(Flags { values, switches })
    }

    fn has(&self, key: &str) -> bool {
        self.switches.iter().any(|s| s == key)
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str, Error> {
        self.get(key)
            .ok_or_else(|| Error::BadParameters(format!("missing required flag --{key}")))
    }

    fn int(&self, key: &str) -> Result<u64, Error> {
        let raw = self.require(key)?;
        raw.parse()
            .map_err(|_| Error::BadParameters(format!("--{key} must be an integer, got '{raw}'")))
    }

    fn int_or(&self, key: &str, default: u64) -> Result<u64, Error> {
        match self.get(key) {
            Some(raw) => raw.parse().map_err(|_| {
                Error::BadParameters(format!("--{key} must be an integer, got '{raw}'"))
            }),
            None => Ok(default),
        }
    }

    fn real(&self, key: &str) -> Result<f64, Error> {
        let raw = self.require(key)?;
        raw.parse()
            .map_err(|_| Error::BadParameters(format!("--{key} must be a number, got '{raw}'")))
    }
}

fn cmd_construct(flags: &Flags) -> Result<u8, Error> {
    let scheme = flags.require("scheme")?;
    let seed = flags.int_or("seed", 0)?;
    let mut summary: Vec<(String, String)> = vec![("scheme".into(), scheme.to_string())];
    let code = match scheme {
        "grs" | "grs-balanced" => {
            let field = Field::new(flags.int("q")?)?;
            let n = flags.int("n")? as usize;
            let k_d = flags.int("kd")? as usize;
            let t = flags.int("t")? as usize;
            let points = match flags.get("points") {
                Some(csv) => Some(parse_points(csv)?),
                None => None,
            };
            let base = secure::construct_grs(&field, n, k_d, t, points.as_deref())?;
            if scheme == "grs-balanced" {
                secure::rebalance(&base, seed)?
            } else {
                base
            }
        }
        "construction1" => {
            let field = Field::new(flags.int("q")?)?;
            secure::construction1(
                &field,
                flags.int("n")? as usize,
                flags.int("kd")? as usize,
                flags.int("t")? as usize,
                seed,
            )?
        }
        "construction2" => {
            let field = Field::new(flags.int("q")?)?;
            secure::construction2(&field, flags.int("a")? as usize)?
        }
        "rm" => secure::construct_rm(flags.int("m")? as usize, flags.int("v")? as usize)?,
        "random" => {
            let field = Field::new(flags.int("q")?)?;
            let outcome = secure::construct_random(
                &field,
                flags.int("n")? as usize,
                flags.int("d-target")? as usize,
                flags.int("t")? as usize,
                seed,
                flags.int_or("max-tries", 10_000)?,
            )?;
            summary.push(("tries".into(), outcome.tries.to_string()));
            outcome.code
        }
        other => {
            return Err(Error::BadParameters(format!("unknown scheme '{other}'")));
        }
    };

    let rate = code.rate();
    let capacity = bounds::capacity(code.k_d(), code.t());
    for (k, v) in [
        ("q", code.field().modulus().to_string()),
        ("n", code.n().to_string()),
        ("k_d", code.k_d().to_string()),
        ("k_s", code.k_s().to_string()),
        ("t", code.t().to_string()),
        ("d", code.d().to_string()),
        ("r", code.r().to_string()),
        ("rate", rate.to_string()),
        ("capacity", capacity.to_string()),
        ("capacity_gap", capacity.sub(&rate).to_string()),
    ] {
        summary.push((k.into(), v));
    }

    let document = codefile::write_code(&code);
    match flags.get("out") {
        Some(path) => {
            fs::write(path, &document)
                .map_err(|e| Error::BadParameters(format!("cannot write '{path}': {e}")))?;
            summary.push(("out".into(), path.to_string()));
            for (k, v) in &summary {
                println!("{k}: {v}");
            }
        }
        None => {
            // Keep stdout clean for the document itself.
            for (k, v) in &summary {
                eprintln!("{k}: {v}");
            }
            print!("{document}");
        }
    }
    Ok(0)
}

fn parse_points(csv: &str) -> Result<Vec<u64>, Error> {
    csv.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| Error::BadParameters(format!("invalid evaluation point '{tok}'")))
        })
        .collect()
}

fn cmd_verify(flags: &Flags) -> Result<u8, Error> {
    let path = flags.require("code")?;
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read '{path}': {e}")))?;
    let code = codefile::read_code(&text)?;
    let report = secure::verify(&code);
    if flags.has("json") {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if flags.has("exhaustive") && report.secrecy_exhaustive.is_skipped() {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive secrecy oracle did not run: {}",
            report.secrecy_exhaustive.note
        )));
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn cmd_bounds(flags: &Flags) -> Result<u8, Error> {
    let q = flags.int("q")?;
    if q != 2 {
        return Err(Error::BadParameters(
            "the bounds command supports q = 2 only".into(),
        ));
    }
    let tau = flags.real("tau")?;
    let steps = flags.int("steps")? as usize;
    let curve = bounds::sample_curves(q, tau, steps)?;
    let endpoints = curve.endpoints.expect("binary curves carry endpoints");
    let mut out = String::new();
    out.push_str(&format!(
        "# A=({:.12},{:.12}),B=({:.12},{:.12}),C=({:.12},{:.12}),D=({:.12},{:.12})\n",
        endpoints.a.0,
        endpoints.a.1,
        endpoints.b.0,
        endpoints.b.1,
        endpoints.c.0,
        endpoints.c.1,
        endpoints.d.0,
        endpoints.d.1,
    ));
    out.push_str("delta,R_lower,R_upper\n");
    for s in &curve.samples {
        out.push_str(&format!(
            "{:.12},{:.12},{:.12}\n",
            s.delta,
            s.rate_lower,
            s.rate_upper.expect("binary curves carry the upper envelope")
        ));
    }
    match flags.get("out") {
        Some(path) => fs::write(path, &out)
            .map_err(|e| Error::BadParameters(format!("cannot write '{path}': {e}")))?,
        None => print!("{out}"),
    }
    Ok(0)
}

fn cmd_simulate(flags: &Flags) -> Result<u8, Error> {
    let path = flags.require("code")?;
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read '{path}': {e}")))?;
    let code = codefile::read_code(&text)?;
    let seed = flags.int_or("seed", 0)?;
    let checks: Vec<&str> = flags
        .get("checks")
        .unwrap_or("secrecy,recovery,erasure,load")
        .split(',')
        .map(str::trim)
        .collect();
    for check in &checks {
        if !matches!(*check, "secrecy" | "recovery" | "erasure" | "load") {
            return Err(Error::BadParameters(format!("unknown check '{check}'")));
        }
    }

    let mut failed = false;
    for check in &checks {
        match *check {
            "secrecy" => {
                let outcome = sim::secrecy_exhaustive(&code, code.t())?;
                if outcome.passed {
                    println!(
                        "secrecy: pass ({} coalitions, {} encodings each)",
                        outcome.coalitions_tested, outcome.encodings_per_coalition
                    );
                } else {
                    failed = true;
                    let witness = outcome.witness.expect("failed oracle names a witness");
                    println!("secrecy: fail (coalition {:?})", witness.coalition);
                }
            }
            "recovery" => {
                let outcome = sim::recovery_roundtrip(&code, seed)?;
                let mode = if outcome.exhaustive { "exhaustive" } else { "sampled" };
                if outcome.passed {
                    println!(
                        "recovery: pass ({} messages, {mode})",
                        outcome.messages_tested
                    );
                } else {
                    failed = true;
                    println!(
                        "recovery: fail (after {} messages)",
                        outcome.messages_tested
                    );
                }
            }
            "erasure" => {
                let outcome = sim::erasure_check(&code)?;
                if outcome.passed {
                    println!("erasure: pass ({} subsets)", outcome.subsets_tested);
                } else {
                    failed = true;
                    println!(
                        "erasure: fail (surviving set {:?})",
                        outcome.witness.unwrap_or_default()
                    );
                }
            }
            "load" => {
                let load = sim::load_report(&code);
                println!(
                    "load_histogram: {}",
                    load.histogram
                        .iter()
                        .map(|w| w.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                println!("worst_gap: {}", load.worst_gap);
            }
            _ => unreachable!(),
        }
    }
    println!("result: {}", if failed { "fail" } else { "pass" });
    Ok(if failed { 1 } else { 0 })
}
