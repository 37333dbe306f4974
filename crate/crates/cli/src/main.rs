//! Command-line front end: parse, evaluate, simplify and compare tensor
//! expressions in index notation.

mod env;
mod error;
mod selftest;
mod tensor_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tensor_index_core::lorentz::{self, Lorentz};
use tensor_index_core::rewrite::{check_equal, check_equal_sampled, normalize_traced, Verdict};
use tensor_index_core::syntax::{self, Elaborated, Environment};
use tensor_index_core::tree::{EquationDump, TensorTree};

use crate::env::EnvOptions;
use crate::error::{CliError, EXIT_CODES};

const DEFAULT_TOL: f64 = 1e-10;
const AXIOM_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "tensor-index", version, about = "Index-notation tensor expressions over tensor species")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Tensor species: `complex-lorentz` or `unit`.
    #[arg(long, global = true, default_value = lorentz::SPECIES_NAME)]
    species: String,
    /// Tensor file to bind, as `NAME=PATH` or a path named by its stem.
    #[arg(long = "env", global = true, value_name = "FILE")]
    env: Vec<String>,
    /// Zero tensor to bind, as `NAME=COLOR,...` or `NAME:RANK`.
    #[arg(long, global = true, value_name = "SPEC")]
    stub: Vec<String>,
    /// Scalar to bind, as `NAME=VALUE`.
    #[arg(long, global = true, value_name = "SPEC")]
    scalar: Vec<String>,
    /// Group element to bind, as `NAME=identity|random:SEED|boost-z:T|rot-x:θ|sl2c:A,B,C,D|phase:θ`.
    #[arg(long, global = true, value_name = "SPEC")]
    group: Vec<String>,
    /// Numeric tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elaborate an expression and print its tree.
    Parse { expr: String },
    /// Evaluate an expression to a tensor file.
    Eval {
        expr: String,
        /// Also write the tensor to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalize an expression's tree.
    Simplify {
        expr: String,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Decide an equation `{L = R}ᵀ`. Exit 0 when equal.
    ProveEq {
        expr: String,
        /// Treat leaves as variables and compare on this many random instances.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the species axioms. Exit 0 when all pass.
    Axioms {
        /// Lorentz variant with these signs on εL, εL', εR, εR' (as `1,-1,1,-1`).
        #[arg(long, value_name = "SIGNS", allow_hyphen_values = true)]
        epsilon_signs: Option<String>,
    },
    /// Lorentz constants.
    Constants {
        #[command(subcommand)]
        action: ConstantsAction,
    },
    /// Run the built-in identity and property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the exit code table.
    ExitCodes,
}

#[derive(Subcommand, Debug)]
enum ConstantsAction {
    /// Write every constant to DIR as `<ascii name>.json`.
    Dump { dir: PathBuf },
}

fn environment(g: &Global) -> Result<Environment, CliError> {
    env::build(&EnvOptions {
        species: g.species.clone(),
        env: g.env.clone(),
        stub: g.stub.clone(),
        scalar: g.scalar.clone(),
        group: g.group.clone(),
    })
}

fn read(expr: &str, env: &Environment) -> Result<Elaborated, CliError> {
    Ok(syntax::read(expr, env)?)
}

fn single(expr: &str, env: &Environment, command: &str) -> Result<TensorTree, CliError> {
    match read(expr, env)? {
        Elaborated::Tree(t) => Ok(t),
        Elaborated::Equation(..) => Err(CliError::Usage(format!("`{command}` takes an expression without `=`"))),
    }
}

fn signature_names(t: &TensorTree) -> Vec<String> {
    let sp = t.species();
    t.signature().iter().map(|&c| sp.color_name(c).to_string()).collect()
}

fn cmd_parse(g: &Global, expr: &str) -> Result<(), CliError> {
    let env = environment(g)?;
    match read(expr, &env)? {
        Elaborated::Tree(t) if g.json => {
            println!("{}", json!({ "tree": t.to_string(), "signature": signature_names(&t) }))
        }
        Elaborated::Tree(t) => println!("{t}"),
        Elaborated::Equation(l, r) if g.json => println!(
            "{}",
            json!({ "lhs": l.to_string(), "rhs": r.to_string(), "signature": signature_names(&l) })
        ),
        Elaborated::Equation(l, r) => println!("{}", EquationDump(&l, &r)),
    }
    Ok(())
}

fn cmd_eval(g: &Global, expr: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    let env = environment(g)?;
    let t = single(expr, &env, "eval")?.semantics();
    if let Some(path) = out {
        tensor_file::write(path, &t)?;
    }
    println!("{}", tensor_file::to_json_pretty(&t));
    Ok(())
}

fn cmd_simplify(g: &Global, expr: &str, trace: bool) -> Result<(), CliError> {
    let env = environment(g)?;
    let sides = match read(expr, &env)? {
        Elaborated::Tree(t) => vec![t],
        Elaborated::Equation(l, r) => vec![l, r],
    };
    let results: Vec<_> = sides.iter().map(normalize_traced).collect();
    let text = match &results[..] {
        [(t, _)] => t.to_string(),
        [(l, _), (r, _)] => EquationDump(l, r).to_string(),
        _ => unreachable!(),
    };
    if g.json {
        let steps: Vec<_> = results
            .iter()
            .enumerate()
            .flat_map(|(side, (_, steps))| {
                steps.iter().map(move |s| {
                    json!({ "side": side, "rule": s.rule.name(), "path": s.path.to_string(),
                            "before": s.before, "after": s.after })
                })
            })
            .collect();
        let mut obj = json!({ "normal_form": text });
        if trace {
            obj["trace"] = json!(steps);
        }
        println!("{obj}");
        return Ok(());
    }
    println!("{text}");
    if trace {
        for (side, (_, steps)) in results.iter().enumerate() {
            if results.len() == 2 {
                println!("{} side:", if side == 0 { "left" } else { "right" });
            }
            for (n, s) in steps.iter().enumerate() {
                println!("  {:>3}. {} at {}", n + 1, s.rule.name(), s.path);
                println!("       {}", s.after);
            }
        }
    }
    Ok(())
}

fn cmd_prove_eq(g: &Global, expr: &str, samples: Option<usize>, seed: u64) -> Result<(), CliError> {
    let env = environment(g)?;
    let Elaborated::Equation(lhs, rhs) = read(expr, &env)? else {
        return Err(CliError::Usage("`prove-eq` needs an equation `{L = R}ᵀ`".into()));
    };
    let tol = g.tol.unwrap_or(DEFAULT_TOL);
    let verdict = match samples {
        Some(n) => check_equal_sampled(&lhs, &rhs, tol, n, &mut ChaCha8Rng::seed_from_u64(seed)),
        None => check_equal(&lhs, &rhs, tol),
    };
    let summary = match &verdict {
        Verdict::EqualByNormalForm => "equal: normal forms coincide".to_string(),
        Verdict::EqualNumerically { max_diff } => {
            format!("equal: numerically, max |Δ| = {max_diff:.3e} (tol {tol:e})")
        }
        Verdict::NotEqual(None) => "not equal: signatures differ".to_string(),
        Verdict::NotEqual(Some(w)) => format!(
            "not equal: |Δ| = {:.3e} at index {:?}, lhs {} vs rhs {} (tol {tol:e})",
            w.diff, w.index, w.lhs, w.rhs
        ),
    };
    if g.json {
        let mut obj = json!({ "equal": verdict.is_equal(), "tolerance": tol });
        match &verdict {
            Verdict::EqualByNormalForm => obj["verdict"] = json!("normal-form"),
            Verdict::EqualNumerically { max_diff } => {
                obj["verdict"] = json!("numeric");
                obj["max_diff"] = json!(max_diff);
            }
            Verdict::NotEqual(w) => {
                obj["verdict"] = json!("not-equal");
                if let Some(w) = w {
                    obj["witness"] = json!({ "index": w.index, "lhs": [w.lhs.re, w.lhs.im],
                                             "rhs": [w.rhs.re, w.rhs.im], "diff": w.diff });
                }
            }
        }
        println!("{obj}");
    } else {
        println!("{summary}");
    }
    if verdict.is_equal() {
        Ok(())
    } else {
        Err(CliError::NotEqual(summary))
    }
}

fn epsilon_signs(text: &str) -> Result<[f64; 4], CliError> {
    let bad = || CliError::Usage(format!("`--epsilon-signs {text}`: expected four of 1 or -1"));
    let signs = text
        .split(',')
        .map(|s| match s.trim() {
            "1" | "+1" => Ok(1.0),
            "-1" => Ok(-1.0),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<f64>, _>>()?;
    signs.try_into().map_err(|_| bad())
}

fn cmd_axioms(g: &Global, signs: Option<&str>) -> Result<(), CliError> {
    let sp = match signs {
        None => env::species(&g.species)?,
        Some(_) if g.species != lorentz::SPECIES_NAME => {
            return Err(CliError::Usage("`--epsilon-signs` applies to complex-lorentz only".into()))
        }
        Some(text) => lorentz::species_with_epsilon_signs(epsilon_signs(text)?).into_ref(),
    };
    let tol = g.tol.unwrap_or(AXIOM_TOL);
    let report = sp.check_axioms(tol).map_err(|e| CliError::Usage(e.to_string()))?;
    if g.json {
        let colors: Vec<_> = report
            .per_color
            .iter()
            .map(|c| {
                let axioms: serde_json::Map<_, _> = tensor_index_core::species::Axiom::ALL
                    .iter()
                    .enumerate()
                    .map(|(k, a)| (a.name().to_string(), json!({ "pass": c.passed[k], "deviation": c.deviation[k] })))
                    .collect();
                json!({ "color": c.color_name, "axioms": axioms })
            })
            .collect();
        println!(
            "{}",
            json!({ "species": report.species, "tolerance": tol, "pass": report.all_pass(), "colors": colors })
        );
    } else {
        println!("{report}");
    }
    if report.all_pass() {
        Ok(())
    } else {
        let failed: Vec<String> = report.failures().map(|(c, a)| format!("{c}:{}", a.name())).collect();
        Err(CliError::ChecksFailed(format!("axioms failed: {}", failed.join(", "))))
    }
}

fn cmd_constants_dump(g: &Global, dir: &PathBuf) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let l = Lorentz::new();
    let mut written = Vec::new();
    for (unicode, ascii, t) in l.constants() {
        let path = dir.join(format!("{ascii}.json"));
        tensor_file::write(&path, t)?;
        written.push((unicode.to_string(), ascii.to_string(), path));
    }
    if g.json {
        let files: Vec<_> = written
            .iter()
            .map(|(u, a, p)| json!({ "name": u, "ascii": a, "path": p.display().to_string() }))
            .collect();
        println!("{}", json!({ "written": files }));
    } else {
        for (u, _, p) in &written {
            println!("{u:<16} {}", p.display());
        }
    }
    Ok(())
}

fn cmd_exit_codes(g: &Global) {
    if g.json {
        let table: serde_json::Map<_, _> = EXIT_CODES.iter().map(|(c, n)| (c.to_string(), json!(n))).collect();
        println!("{}", serde_json::Value::Object(table));
    } else {
        for (c, n) in EXIT_CODES {
            println!("{n:>3}  {c}");
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { expr } => cmd_parse(g, expr),
        Command::Eval { expr, out } => cmd_eval(g, expr, out.as_ref()),
        Command::Simplify { expr, trace } => cmd_simplify(g, expr, *trace),
        Command::ProveEq { expr, samples, seed } => cmd_prove_eq(g, expr, *samples, *seed),
        Command::Axioms { epsilon_signs } => cmd_axioms(g, epsilon_signs.as_deref()),
        Command::Constants {
            action: ConstantsAction::Dump { dir },
        } => cmd_constants_dump(g, dir),
        Command::Selftest { seed } => selftest::run(*seed, g.json),
        Command::ExitCodes => {
            cmd_exit_codes(g);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            eprint!("error[usage]: {}", text.strip_prefix("error: ").unwrap_or(&text));
            return ExitCode::from(error::exit_code("usage"));
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => error::report(&e, cli.global.json),
    }
}
