use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octo_e6::octonion::MultiplicationTable;
use octo_e6::report::Report;
use octo_e6::structure::{is_rotation, JacobiMode, TableFormat};
use octo_e6::subalgebras::{closure_summary, signature};
use octo_e6::verify::{self, Config, Suite, Verifier};
use serde_json::json;

/// Builds sl(3,𝕆) = e6(-26) from octonionic group generators and checks it.
#[derive(Parser, Debug)]
#[command(name = "octo-e6", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Tolerance for float group-level checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Random samples per float check.
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 26)]
    seed: u64,

    /// Jacobi mode: `full` or `rand:N`.
    #[arg(long, global = true, default_value = "rand:100000")]
    jacobi: JacobiMode,

    /// Write output to FILE instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Export the commutation table (json or csv).
    Table,
    /// Diagonal of the Killing form in the 78 basis.
    Killing,
    /// Closure of a generating set, e.g. `--gens A_i,A_j`.
    Closure {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
    },
    /// Dimensions and signatures of every registered subalgebra.
    Chains,
    /// The 78 basis elements and their definitions.
    Basis,
    /// Finite-angle group checks.
    GroupCheck,
    /// The octonion multiplication table.
    Octonions,
}

enum Outcome {
    Pass(String),
    Fail(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (text, code) = match outcome {
        Outcome::Pass(t) => (t, 0),
        Outcome::Fail(t) => (t, 1),
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("OCTOE6_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("OCTOE6_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn config(cli: &Cli) -> Config {
    Config { tol: cli.tol, samples: cli.samples, seed: cli.seed, jacobi: cli.jacobi }
}

fn run(cli: &Cli) -> octo_e6::Result<Outcome> {
    let cfg = config(cli);
    cfg.validate()?;
    let verifier = Verifier::new(cfg.clone());
    match &cli.command {
        Command::Verify { suite } => Ok(reports(cli, &verifier.run(*suite)?)),
        Command::GroupCheck => Ok(reports(cli, &verify::group_suite(&cfg))),
        Command::Octonions => {
            let table = MultiplicationTable::global();
            Ok(Outcome::Pass(match cli.format {
                Format::Json => {
                    let rows: Vec<Vec<(i8, usize)>> =
                        (0..8).map(|a| (0..8).map(|b| table.product(a, b)).collect()).collect();
                    json!({ "basis": ["1", "i", "j", "k", "kl", "jl", "il", "l"], "products": rows }).to_string()
                }
                _ => table.render(),
            }))
        }
        Command::Table => {
            let alg = verifier.algebra()?;
            let format = if cli.format == Format::Csv { TableFormat::Csv } else { TableFormat::Json };
            Ok(Outcome::Pass(alg.sc.export(format)))
        }
        Command::Killing => {
            let alg = verifier.algebra()?;
            let k = alg.killing();
            let i = alg.killing_inertia();
            let out = match cli.format {
                Format::Json => json!({
                    "diagonal": alg.basis.iter().map(|b| json!({
                        "index": b.index, "name": b.name, "value": k[(b.index, b.index)].to_string(),
                    })).collect::<Vec<_>>(),
                    "diagonal_form": k.is_diagonal(),
                    "negative": i.negative, "positive": i.positive, "zero": i.zero,
                })
                .to_string(),
                Format::Csv => {
                    let mut s = String::from("index,name,value\n");
                    for b in &alg.basis {
                        s.push_str(&format!("{},{},{}\n", b.index, b.name, k[(b.index, b.index)]));
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for b in &alg.basis {
                        s.push_str(&format!("{:>2} {:<14} {}\n", b.index, b.name, k[(b.index, b.index)]));
                    }
                    s.push_str(&format!(
                        "diagonal: {}, inertia: {} negative, {} positive, {} zero",
                        k.is_diagonal(),
                        i.negative,
                        i.positive,
                        i.zero
                    ));
                    s
                }
            };
            Ok(Outcome::Pass(out))
        }
        Command::Closure { gens } => {
            let alg = verifier.algebra()?;
            let gens: Vec<String> = gens.iter().map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect();
            let summary = closure_summary(alg, &gens)?;
            Ok(Outcome::Pass(match cli.format {
                Format::Json => serde_json::to_string_pretty(&summary)?,
                _ => format!(
                    "generators: {}\nspan dim: {}\nclosure dim: {}\nsignature (compact, noncompact): {}",
                    summary.generators.join(", "),
                    summary.span_dim,
                    summary.closure_dim,
                    summary.signature
                ),
            }))
        }
        Command::Chains => {
            let alg = verifier.algebra()?;
            let reg = verifier.registry()?;
            let mut rows = Vec::new();
            let mut all_ok = true;
            for r in &reg.records {
                let span = reg.get(&r.name)?;
                let sig = signature(alg, span);
                let ok = span.dim() == r.expected_dim && sig == r.expected_signature;
                all_ok &= ok;
                rows.push((r, span.dim(), sig, ok));
            }
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(
                    &rows
                        .iter()
                        .map(|(r, dim, sig, ok)| {
                            json!({
                                "name": r.name, "label": r.label, "dim": dim,
                                "compact": sig.compact, "noncompact": sig.noncompact, "null": sig.null,
                                "expected_dim": r.expected_dim, "ok": ok,
                            })
                        })
                        .collect::<Vec<_>>(),
                )?,
                Format::Csv => {
                    let mut s = String::from("name,label,dim,compact,noncompact,null,ok\n");
                    for (r, dim, sig, ok) in &rows {
                        s.push_str(&format!(
                            "\"{}\",{},{dim},{},{},{},{ok}\n",
                            r.name, r.label, sig.compact, sig.noncompact, sig.null
                        ));
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for (r, dim, sig, ok) in &rows {
                        let status = if *ok { "ok" } else { "MISMATCH" };
                        s.push_str(&format!("{:<18} {:<8} dim {dim:>2}  {sig}  {status}\n", r.name, r.label));
                    }
                    s
                }
            };
            Ok(if all_ok { Outcome::Pass(out) } else { Outcome::Fail(out) })
        }
        Command::Basis => {
            let alg = verifier.algebra()?;
            Ok(Outcome::Pass(match cli.format {
                Format::Json => serde_json::to_string_pretty(
                    &alg.basis
                        .iter()
                        .map(|b| json!({"index": b.index, "name": b.name, "rotation": is_rotation(b)}))
                        .collect::<Vec<_>>(),
                )?,
                Format::Csv => {
                    let mut s = String::from("index,name,kind\n");
                    for b in &alg.basis {
                        s.push_str(&format!("{},{},{}\n", b.index, b.name, kind(is_rotation(b))));
                    }
                    s
                }
                Format::Text => alg
                    .basis
                    .iter()
                    .map(|b| format!("{:>2} {:<14} {}", b.index, b.name, kind(is_rotation(b))))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }))
        }
    }
}

fn kind(rotation: bool) -> &'static str {
    if rotation {
        "rotation"
    } else {
        "boost"
    }
}

fn reports(cli: &Cli, reports: &[Report]) -> Outcome {
    let passed = reports.iter().all(Report::passed);
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&json!({ "passed": passed, "reports": reports }))
            .expect("reports serialize"),
        Format::Csv => {
            let mut s = String::from("suite,check,status,detail\n");
            for r in reports {
                for c in &r.checks {
                    s.push_str(&format!(
                        "\"{}\",\"{}\",{},\"{}\"\n",
                        r.suite.replace('"', "\"\""),
                        c.name.replace('"', "\"\""),
                        if c.passed { "PASS" } else { "FAIL" },
                        c.detail.as_deref().unwrap_or("").replace('"', "\"\"")
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n\n");
            let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
            s.push_str(&format!("\n\n{}: {failed} failed check(s)", if passed { "PASS" } else { "FAIL" }));
            s
        }
    };
    if passed {
        Outcome::Pass(text)
    } else {
        Outcome::Fail(text)
    }
}
