//! `kndiv`: command-line front end for divisor computations on `K_n`.
//!
//! Exit codes: 0 on success (and for a true `equiv` predicate), 1 when
//! `equiv` is false or a `verify` suite fails, 2 on usage or guard
//! errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kn_divisors::{
    concentrate, enumerate_splitting_types, equivalent, rank, reduce_with_trace, splitting_type,
    verify, Divisor,
};

#[derive(Parser)]
#[command(name = "kndiv", version, about = "Divisors on complete graphs: reduced forms, ranks, splitting types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DivisorArg {
    /// Comma-separated chip counts, one per vertex, e.g. "0,2,0,6,1".
    #[arg(allow_hyphen_values = true)]
    divisor: String,
    /// Vertex count, cross-checked against the coefficient list.
    #[arg(long)]
    n: Option<usize>,
    /// Emit a single JSON object instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the v_n-reduced form of a divisor.
    Reduce {
        #[command(flatten)]
        divisor: DivisorArg,
        /// Print each fired set and intermediate divisor.
        #[arg(long)]
        trace: bool,
    },
    /// Compute a concentrated divisor equivalent to the input.
    Concentrate {
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Compute the Baker-Norine rank via the closed-form formula.
    Rank {
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Compute the splitting type of a divisor.
    Splitting {
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Decide whether two divisors are equivalent (exit 0 yes, 1 no).
    Equiv {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Suppress output; answer only through the exit code.
        #[arg(long)]
        quiet: bool,
    },
    /// List all feasible splitting types for a vertex count and degree.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        json: bool,
    },
    /// Run verification suites pitting formulas against the oracle.
    Verify {
        /// Suite: rank-oracle, splitting-identity, riemann-roch,
        /// reduction-uniqueness, splitting-roundtrip, or all.
        #[arg(long)]
        suite: String,
        /// Vertex count or inclusive range, e.g. "4" or "3..7".
        #[arg(long, default_value = "5")]
        n: String,
        #[arg(long, default_value_t = 300)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the exhaustive input space where one is defined.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Serialize)]
struct JsonOutput<I: Serialize, O: Serialize> {
    command: &'static str,
    input: I,
    output: O,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<JsonTraceStep>>,
}

#[derive(Serialize)]
struct JsonTraceStep {
    fired: Vec<usize>,
    result: Vec<i64>,
}

#[derive(Serialize)]
struct DivisorInput {
    n: usize,
    divisor: Vec<i64>,
}

fn parse_divisor(text: &str, n: Option<usize>) -> Result<Divisor, String> {
    let coeffs: Result<Vec<i64>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<i64>())
        .collect();
    let coeffs = coeffs.map_err(|e| format!("cannot parse divisor {text:?}: {e}"))?;
    if let Some(n) = n {
        if coeffs.len() != n {
            return Err(format!(
                "--n {n} does not match the {} coefficients in {text:?}",
                coeffs.len()
            ));
        }
    }
    Divisor::new(coeffs).map_err(|e| e.to_string())
}

fn emit<I: Serialize, O: Serialize>(
    json: bool,
    command: &'static str,
    input: I,
    output: O,
    plain: String,
    trace: Option<Vec<JsonTraceStep>>,
) {
    if json {
        let obj = JsonOutput {
            command,
            input,
            output,
            trace,
        };
        println!("{}", serde_json::to_string(&obj).expect("serializable"));
    } else {
        println!("{plain}");
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Reduce { divisor, trace } => {
            let d = parse_divisor(&divisor.divisor, divisor.n)?;
            let (reduced, steps) = reduce_with_trace(&d).map_err(|e| e.to_string())?;
            let trace_json = trace.then(|| {
                steps
                    .steps
                    .iter()
                    .map(|s| JsonTraceStep {
                        fired: s.fired.clone(),
                        result: s.result.coeffs().to_vec(),
                    })
                    .collect()
            });
            let mut plain = String::new();
            if trace && !divisor.json {
                for step in &steps.steps {
                    let fired: Vec<String> = step.fired.iter().map(|v| v.to_string()).collect();
                    plain.push_str(&format!("fire {{{}}} -> {}\n", fired.join(","), step.result));
                }
            }
            plain.push_str(&reduced.to_string());
            emit(
                divisor.json,
                "reduce",
                DivisorInput {
                    n: d.n(),
                    divisor: d.coeffs().to_vec(),
                },
                reduced.coeffs().to_vec(),
                plain,
                trace_json,
            );
            Ok(0)
        }
        Command::Concentrate { divisor } => {
            let d = parse_divisor(&divisor.divisor, divisor.n)?;
            let out = concentrate(&d).map_err(|e| e.to_string())?;
            emit(
                divisor.json,
                "concentrate",
                DivisorInput {
                    n: d.n(),
                    divisor: d.coeffs().to_vec(),
                },
                out.coeffs().to_vec(),
                out.to_string(),
                None,
            );
            Ok(0)
        }
        Command::Rank { divisor } => {
            let d = parse_divisor(&divisor.divisor, divisor.n)?;
            let value = rank(&d).map_err(|e| e.to_string())?;
            emit(
                divisor.json,
                "rank",
                DivisorInput {
                    n: d.n(),
                    divisor: d.coeffs().to_vec(),
                },
                value,
                value.to_string(),
                None,
            );
            Ok(0)
        }
        Command::Splitting { divisor } => {
            let d = parse_divisor(&divisor.divisor, divisor.n)?;
            let s = splitting_type(&d).map_err(|e| e.to_string())?;
            emit(
                divisor.json,
                "splitting",
                DivisorInput {
                    n: d.n(),
                    divisor: d.coeffs().to_vec(),
                },
                s.entries().to_vec(),
                s.to_string(),
                None,
            );
            Ok(0)
        }
        Command::Equiv {
            first,
            second,
            n,
            json,
            quiet,
        } => {
            let d1 = parse_divisor(&first, n)?;
            let d2 = parse_divisor(&second, n)?;
            let answer = equivalent(&d1, &d2).map_err(|e| e.to_string())?;
            if !quiet {
                #[derive(Serialize)]
                struct EquivInput {
                    n: usize,
                    divisors: [Vec<i64>; 2],
                }
                emit(
                    json,
                    "equiv",
                    EquivInput {
                        n: d1.n(),
                        divisors: [d1.coeffs().to_vec(), d2.coeffs().to_vec()],
                    },
                    answer,
                    answer.to_string(),
                    None,
                );
            }
            Ok(if answer { 0 } else { 1 })
        }
        Command::Enumerate { n, degree, json } => {
            let types = enumerate_splitting_types(n, degree).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct EnumInput {
                n: usize,
                degree: i64,
            }
            let lines: Vec<String> = types.iter().map(|s| s.to_string()).collect();
            emit(
                json,
                "enumerate",
                EnumInput { n, degree },
                types.iter().map(|s| s.entries().to_vec()).collect::<Vec<_>>(),
                lines.join("\n"),
                None,
            );
            Ok(0)
        }
        Command::Verify {
            suite,
            n,
            samples,
            seed,
            exhaustive,
        } => run_verify(&suite, &n, samples, seed, exhaustive),
    }
}

fn parse_n_spec(spec: &str) -> Result<(usize, usize), String> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad --n range {spec:?}"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad --n range {spec:?}"))?;
        if lo < 2 || hi < lo {
            return Err(format!("bad --n range {spec:?}"));
        }
        Ok((lo, hi))
    } else {
        let n: usize = spec.trim().parse().map_err(|_| format!("bad --n {spec:?}"))?;
        if n < 2 {
            return Err(format!("bad --n {spec:?}"));
        }
        Ok((n, n))
    }
}

fn run_verify(
    suite: &str,
    n_spec: &str,
    samples: usize,
    seed: u64,
    exhaustive: bool,
) -> Result<u8, String> {
    let (lo, hi) = parse_n_spec(n_spec)?;
    let mut reports = Vec::new();
    let mut run_suite = |name: &str| -> Result<(), String> {
        match name {
            "rank-oracle" => {
                if exhaustive {
                    if (lo, hi) != (4, 4) {
                        return Err("the exhaustive rank-oracle space is defined for --n 4".into());
                    }
                    reports.push(verify::rank_vs_oracle_exhaustive_k4());
                } else {
                    for n in lo..=hi {
                        reports.push(verify::rank_vs_oracle_sampled(n, samples, seed));
                    }
                }
            }
            "splitting-identity" => {
                for n in lo..=hi {
                    reports.push(verify::splitting_identity(n, 20, seed));
                }
            }
            "riemann-roch" => reports.push(verify::riemann_roch(lo..=hi, samples, seed)),
            "reduction-uniqueness" => {
                let ns: Vec<usize> = (lo..=hi).collect();
                reports.push(verify::reduction_uniqueness(&ns, samples, seed));
            }
            "splitting-roundtrip" => reports.push(verify::splitting_roundtrip(samples, seed)),
            other => return Err(format!("unknown suite {other:?}")),
        }
        Ok(())
    };
    if suite == "all" {
        for name in [
            "rank-oracle",
            "splitting-identity",
            "riemann-roch",
            "reduction-uniqueness",
            "splitting-roundtrip",
        ] {
            run_suite(name)?;
        }
    } else {
        run_suite(suite)?;
    }

    let mut all_passed = true;
    for report in reports {
        let report = report.map_err(|e| e.to_string())?;
        println!("{}", report.summary());
        if !report.passed() {
            for failure in &report.failures {
                eprintln!("  counterexample: {failure}");
            }
            all_passed = false;
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
