//! Command-line interface over the library. Exit codes: 0 success (or YES),
//! 1 negative verdict (NO / not critical / invariance failure), 2 usage,
//! 3 I/O failure, 4 file parse failure, 5 unsupported format or domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use slocc::{
    can_degrade, classify, hessian_det, hyperdet, is_critical_point,
    order_diagram, order_diagram_dot, parse_class_name, parse_operation, parse_point,
    parse_state, random_state, serialize_state, ClassName, EntanglementClass, Error,
    GaussianRational, SplitMix64, Tensor, TensorFormat,
};

const EXIT_NO: u8 = 1;
const EXIT_IO: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_DOMAIN: u8 = 5;

#[derive(Parser)]
#[command(
    name = "slocc",
    about = "Exact hyperdeterminants and SLOCC entanglement classification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormatArg {
    /// Party dimensions, e.g. `--format 2 2 2` or `--format 2x2x2`.
    #[arg(long, num_args = 1.., required = true)]
    format: Vec<String>,
}

impl FormatArg {
    fn parse(&self) -> Result<TensorFormat, CliError> {
        let mut dims = Vec::new();
        for tok in &self.format {
            for part in tok.split('x') {
                let d: usize = part.parse().map_err(|_| {
                    CliError::new(EXIT_DOMAIN, format!("bad dimension {part:?}"))
                })?;
                dims.push(d);
            }
        }
        TensorFormat::new(dims).map_err(CliError::domain)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the hyperdeterminant of a state
    Hyperdet {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Evaluate interpolation points concurrently (bit-identical output)
        #[arg(long)]
        parallel: bool,
    },
    /// Classify a state into its SLOCC orbit class
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the local (single-party flattening) ranks
    Ranks {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the finest tensor-factorization pattern of the parties
    Separability {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Entanglement measure: concurrence (2x2) or three-tangle (2x2x2)
    Measure {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a local operation file to a state and emit the result
    Apply {
        file: PathBuf,
        #[arg(long)]
        op: PathBuf,
        /// Write the transformed state here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fail (exit 1) if any factor is singular
        #[arg(long)]
        check_invertible: bool,
    },
    /// Decide LOCC degradability between two named classes
    Convertible {
        from: String,
        to: String,
        #[command(flatten)]
        format: FormatArg,
        #[arg(long)]
        json: bool,
    },
    /// Print the class partial order of a format
    Order {
        #[command(flatten)]
        format: FormatArg,
        /// Emit DOT instead of a plain edge list
        #[arg(long)]
        dot: bool,
    },
    /// Emit a seeded random state file
    Random {
        #[command(flatten)]
        format: FormatArg,
        #[arg(long)]
        seed: u64,
        /// Entries are Gaussian integers with parts in [-bound, bound]
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Check whether a point is critical; report the Hessian there
    CheckCritical {
        file: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Re-classify under seeded random invertible local operations
    InvarianceCheck {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long)]
        json: bool,
    },
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        CliError {
            code,
            msg: msg.into(),
        }
    }

    fn domain(e: Error) -> Self {
        let code = match e {
            Error::FileParse { .. } | Error::ScalarParse { .. } => EXIT_PARSE,
            _ => EXIT_DOMAIN,
        };
        CliError::new(code, e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn read_state(path: &PathBuf) -> Result<Tensor, CliError> {
    parse_state(&read_file(path)?).map_err(CliError::domain)
}

fn verdict(v: &GaussianRational) -> &'static str {
    if v.is_zero() {
        "zero"
    } else {
        "nonzero"
    }
}

fn ranks_csv(ranks: &[usize]) -> String {
    ranks
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn class_for(name: &str, format: &TensorFormat) -> Result<EntanglementClass, CliError> {
    let parsed = parse_class_name(name, format).map_err(CliError::domain)?;
    EntanglementClass::new(format.clone(), parsed).map_err(CliError::domain)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Hyperdet {
            file,
            json,
            parallel,
        } => {
            let a = read_state(&file)?;
            let r = if parallel && a.format().dims() == [2, 2, 2, 2] {
                let value = slocc::det_2x2x2x2_parallel(&a).map_err(CliError::domain)?;
                slocc::HyperdetResult {
                    value,
                    format: a.format().clone(),
                    degree: 24,
                }
            } else {
                hyperdet(&a).map_err(CliError::domain)?
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "format": r.format.to_string(),
                        "degree": r.degree,
                        "det": r.value.to_string(),
                        "verdict": verdict(&r.value),
                    })
                );
            } else {
                println!("Det = {}", r.value);
                println!("degree = {}", r.degree);
                println!("verdict: {}", verdict(&r.value));
            }
            Ok(0)
        }
        Command::Classify { file, json } => {
            let a = read_state(&file)?;
            let report = classify(&a).map_err(CliError::domain)?;
            let undetermined = report.class.name == ClassName::Gen4;
            if json {
                let mut obj = json!({
                    "class": report.class.name.to_string(),
                    "dimension": report.class.dimension,
                    "format": report.class.format.to_string(),
                    "local_ranks": report.local_ranks,
                    "pattern": report.pattern.to_string(),
                    "det": report.det.as_ref().map(|d| d.to_string()),
                    "det_degree": report.det_degree,
                    "permutation": report.permutation,
                });
                if undetermined {
                    // The generic four-qubit family keeps continuous
                    // parameters; equality of two GEN4 orbits is undecided.
                    obj["orbit_parameters_determined"] = json!(false);
                }
                println!("{obj}");
            } else {
                let mut line = format!(
                    "{} dim={} ranks={}",
                    report.class.name,
                    report.class.dimension,
                    ranks_csv(&report.local_ranks)
                );
                line.push_str(&format!(" pattern={}", report.pattern));
                if let Some(det) = &report.det {
                    line.push_str(&format!(" det={det}"));
                }
                if let Some(perm) = &report.permutation {
                    let shown: Vec<String> =
                        perm.iter().map(|p| (p + 1).to_string()).collect();
                    line.push_str(&format!(" permutation={}", shown.join(",")));
                }
                println!("{line}");
                if undetermined {
                    println!(
                        "note: GEN4 retains continuous parameters; \
                         orbit equality within the class is not decided"
                    );
                }
            }
            Ok(0)
        }
        Command::Ranks { file, json } => {
            let a = read_state(&file)?;
            let ranks = slocc::local_ranks(&a);
            if json {
                println!(
                    "{}",
                    json!({"format": a.format().to_string(), "local_ranks": ranks})
                );
            } else {
                println!("ranks: {}", ranks_csv(&ranks));
            }
            Ok(0)
        }
        Command::Separability { file, json } => {
            let a = read_state(&file)?;
            let p = slocc::separability_pattern(&a).map_err(CliError::domain)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "pattern": p.to_string(),
                        "blocks": p.blocks().iter()
                            .map(|b| b.iter().map(|x| x + 1).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "fully_separable": p.is_discrete(),
                        "genuinely_entangled": p.is_trivial(),
                    })
                );
            } else {
                println!("pattern: {p}");
            }
            Ok(0)
        }
        Command::Measure { file, json } => {
            let a = read_state(&file)?;
            let (name, sq, modulus) = match a.format().dims() {
                [2, 2] => {
                    let sq = slocc::concurrence_sq(&a).map_err(CliError::domain)?;
                    let m = slocc::hyperdet::concurrence_f64(&a).map_err(CliError::domain)?;
                    ("concurrence", sq, m)
                }
                [2, 2, 2] => {
                    let sq = slocc::tangle_sq(&a).map_err(CliError::domain)?;
                    let m = slocc::hyperdet::tangle_f64(&a).map_err(CliError::domain)?;
                    ("tangle", sq, m)
                }
                _ => {
                    return Err(CliError::new(
                        EXIT_DOMAIN,
                        format!("no measure defined for format {}", a.format()),
                    ))
                }
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "measure": name,
                        "squared": sq.to_string(),
                        "modulus": modulus,
                    })
                );
            } else {
                println!("{name}^2 = {sq} (exact)");
                println!("{name} = {modulus:.6} (display only)");
            }
            Ok(0)
        }
        Command::Apply {
            file,
            op,
            out,
            check_invertible,
        } => {
            let a = read_state(&file)?;
            let operation =
                parse_operation(&read_file(&op)?, a.format()).map_err(CliError::domain)?;
            if check_invertible && !operation.is_invertible() {
                return Err(CliError::new(EXIT_NO, "operation has a singular factor"));
            }
            let b = a.apply_local(&operation).map_err(CliError::domain)?;
            let text = serialize_state(&b);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Convertible {
            from,
            to,
            format,
            json,
        } => {
            let f = format.parse()?;
            let a = class_for(&from, &f)?;
            let b = class_for(&to, &f)?;
            let ok = can_degrade(&a, &b).map_err(CliError::domain)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "from": a.name.to_string(),
                        "to": b.name.to_string(),
                        "format": f.to_string(),
                        "convertible": ok,
                    })
                );
            } else {
                println!("{}", if ok { "YES" } else { "NO" });
            }
            Ok(if ok { 0 } else { EXIT_NO })
        }
        Command::Order { format, dot } => {
            let f = format.parse()?;
            let text = if dot {
                order_diagram_dot(&f).map_err(CliError::domain)?
            } else {
                order_diagram(&f).map_err(CliError::domain)?
            };
            print!("{text}");
            Ok(0)
        }
        Command::Random {
            format,
            seed,
            bound,
        } => {
            if bound < 1 {
                return Err(CliError::new(EXIT_DOMAIN, "bound must be >= 1"));
            }
            let f = format.parse()?;
            print!("{}", serialize_state(&random_state(&f, seed, bound)));
            Ok(0)
        }
        Command::CheckCritical { file, point, json } => {
            let a = read_state(&file)?;
            let x = parse_point(&read_file(&point)?, a.format()).map_err(CliError::domain)?;
            let critical = is_critical_point(&a, &x).map_err(CliError::domain)?;
            let hess = if critical {
                Some(hessian_det(&a, &x).map_err(CliError::domain)?)
            } else {
                None
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "critical": critical,
                        "hessian_det": hess.as_ref().map(|h| h.to_string()),
                        "cusp_type": hess.as_ref().map(|h| h.is_zero()),
                    })
                );
            } else if critical {
                let h = hess.expect("present when critical");
                println!("critical: yes");
                println!("hessian det = {h}");
                println!(
                    "type: {}",
                    if h.is_zero() {
                        "cusp (degenerate quadric)"
                    } else {
                        "node (nondegenerate quadric)"
                    }
                );
            } else {
                println!("critical: no");
            }
            Ok(if critical { 0 } else { EXIT_NO })
        }
        Command::InvarianceCheck {
            file,
            seed,
            trials,
            json,
        } => {
            let a = read_state(&file)?;
            let base = classify(&a).map_err(CliError::domain)?.class.name;
            let mut rng = SplitMix64::new(seed);
            let mut failures = 0u64;
            for _ in 0..trials {
                let g = slocc::random::random_invertible_op(a.format(), &mut rng, 3);
                let got = classify(&a.apply_local(&g).map_err(CliError::domain)?)
                    .map_err(CliError::domain)?
                    .class
                    .name;
                if got != base {
                    failures += 1;
                }
            }
            let pass = failures == 0;
            if json {
                println!(
                    "{}",
                    json!({
                        "class": base.to_string(),
                        "trials": trials,
                        "failures": failures,
                        "pass": pass,
                    })
                );
            } else {
                println!(
                    "{}: class {} stable over {} invertible operations ({} failures)",
                    if pass { "PASS" } else { "FAIL" },
                    base,
                    trials,
                    failures
                );
            }
            Ok(if pass { 0 } else { EXIT_NO })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
