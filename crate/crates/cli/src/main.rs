//! `matroidlab`: command-line front end.
//!
//! Every subcommand prints one JSON object on stdout (the command echo,
//! sha256 digests of the input files, and the result) and a short summary on
//! stderr. Exit status: 0 success, 1 verification failure, 2 usage or input
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use matroidlab::connectivity::{find_fans, lambda, FanStart};
use matroidlab::matroid::io;
use matroidlab::removal::{brute_force_oracle, find_removal_set, splitter_check, RemovalContext};
use matroidlab::tangle::{branch_width, branch_width_by_decomposition, enumerate_tangles, DecompositionTree};
use matroidlab::verify::{self, Suite, VerifyConfig};
use matroidlab::{Error, GroundSubset, Matroid};

#[derive(Parser)]
#[command(name = "matroidlab", version, about = "Exact matroid connectivity, tangles and removal search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of a set of element labels.
    Rank {
        file: PathBuf,
        /// Comma-separated labels; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Connectivity function of a set.
    Lambda {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Branch width by tangles, cross-checked by an optimal decomposition.
    Bw { file: PathBuf },
    /// All tangles of one order.
    Tangles {
        file: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Maximal fans.
    Fans { file: PathBuf },
    /// Whether NFILE is a minor with the same labels.
    Minor {
        file: PathBuf,
        #[arg(long = "minor")]
        minor: PathBuf,
    },
    /// An element whose removal stays 3-connected and keeps N.
    Splitter {
        file: PathBuf,
        #[arg(long = "minor")]
        minor: PathBuf,
    },
    /// A k-element removal set relative to a largest-order tangle.
    Remove {
        file: PathBuf,
        #[arg(long = "minor")]
        minor: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also run the exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
    /// Run property checks over the seeded corpus.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// What a command produced: the result object, whether its own checks
/// passed, and a one-line summary.
struct Outcome {
    result: Value,
    passed: bool,
    summary: String,
}

impl Outcome {
    fn ok(result: Value, summary: String) -> Outcome {
        Outcome { result, passed: true, summary }
    }
}

enum Failure {
    Input(String),
    Claim(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ClaimViolated(_) => Failure::Claim(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

/// Loaded input files with their digests, in argument order.
#[derive(Default)]
struct Inputs(Map<String, Value>);

impl Inputs {
    fn load(&mut self, path: &Path) -> Run<Matroid> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.0.insert(path.display().to_string(), json!(hex::encode(Sha256::digest(&bytes))));
        let text = std::str::from_utf8(&bytes).map_err(|_| Failure::Input(format!("{}: not UTF-8", path.display())))?;
        io::from_json_str(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn parse_set(m: &Matroid, text: &str) -> Run<GroundSubset> {
    let labels = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| Failure::Input(format!("bad label {s:?} in --set"))))
        .collect::<Run<Vec<u32>>>()?;
    Ok(m.subset_from_labels(&labels)?)
}

fn tree_json(m: &Matroid, tree: &DecompositionTree) -> Value {
    match tree {
        DecompositionTree::Leaf(e) => json!(m.labels()[*e]),
        DecompositionTree::Join(a, b) => json!([tree_json(m, a), tree_json(m, b)]),
    }
}

fn execute(cmd: &Command, inputs: &mut Inputs) -> Run<Outcome> {
    match cmd {
        Command::Rank { file, set } => {
            let m = inputs.load(file)?;
            let x = parse_set(&m, set)?;
            let r = m.rank(x);
            Ok(Outcome::ok(json!({"set": io::subset_to_json(&m, x), "rank": r}), format!("rank {r}")))
        }
        Command::Lambda { file, set } => {
            let m = inputs.load(file)?;
            let x = parse_set(&m, set)?;
            let l = lambda(&m, x);
            Ok(Outcome::ok(json!({"set": io::subset_to_json(&m, x), "lambda": l}), format!("lambda {l}")))
        }
        Command::Bw { file } => {
            let m = inputs.load(file)?;
            let bw = branch_width(&m)?;
            let (width, tree) = branch_width_by_decomposition(&m)?;
            let passed = bw == width;
            Ok(Outcome {
                result: json!({"branch_width": bw, "decomposition_width": width, "tree": tree_json(&m, &tree)}),
                passed,
                summary: format!("branch width {bw}, decomposition width {width}"),
            })
        }
        Command::Tangles { file, order } => {
            let m = inputs.load(file)?;
            let found = enumerate_tangles(&m, *order)?;
            let tangles: Vec<Value> = found
                .iter()
                .map(|t| json!(t.members().iter().map(|x| io::subset_to_json(&m, *x)).collect::<Vec<_>>()))
                .collect();
            Ok(Outcome::ok(
                json!({"order": order, "count": found.len(), "tangles": tangles}),
                format!("{} tangles of order {order}", found.len()),
            ))
        }
        Command::Fans { file } => {
            let m = inputs.load(file)?;
            let fans = find_fans(&m);
            let list: Vec<Value> = fans
                .iter()
                .map(|f| {
                    let start = match f.starts_with {
                        FanStart::Triangle => "triangle",
                        FanStart::Triad => "triad",
                    };
                    json!({"elements": f.elements.iter().map(|&e| m.labels()[e]).collect::<Vec<_>>(), "starts_with": start})
                })
                .collect();
            Ok(Outcome::ok(json!({"count": fans.len(), "fans": list}), format!("{} maximal fans", fans.len())))
        }
        Command::Minor { file, minor } => {
            let m = inputs.load(file)?;
            let n = inputs.load(minor)?;
            let spec = m.has_minor(&n)?;
            let found = spec.is_some();
            Ok(Outcome::ok(
                json!({"is_minor": found, "spec": spec.map(|s| io::minor_spec_to_json(&m, &s))}),
                format!("minor {}", if found { "found" } else { "absent" }),
            ))
        }
        Command::Splitter { file, minor } => {
            let m = inputs.load(file)?;
            let n = inputs.load(minor)?;
            let hit = splitter_check(&m, &n)?;
            let result = match hit {
                Some((e, op)) => json!({"element": m.labels()[e], "op": op.name()}),
                None => json!({"element": null}),
            };
            let summary = match hit {
                Some((e, op)) => format!("{} {}", op.name(), m.labels()[e]),
                None => "no element keeps 3-connectivity and N".into(),
            };
            Ok(Outcome::ok(result, summary))
        }
        Command::Remove { file, minor, k, oracle } => {
            let m = inputs.load(file)?;
            let n = inputs.load(minor)?;
            remove(&m, &n, *k, *oracle)
        }
        Command::Verify { suite, max_n, seed } => {
            let report = verify::run(*suite, VerifyConfig { seed: *seed, max_n: *max_n })?;
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            let summary = format!(
                "{} of {} checks passed{}",
                report.checks.len() - failed.len(),
                report.checks.len(),
                if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
            );
            Ok(Outcome { result: report.to_json(), passed: report.passed, summary })
        }
    }
}

fn remove(m: &Matroid, n: &Matroid, k: usize, oracle: bool) -> Run<Outcome> {
    let bw = branch_width(m)?;
    let tangle = enumerate_tangles(m, bw)?.into_iter().next().ok_or_else(|| Failure::Input("no tangle".into()))?;
    let ctx = RemovalContext::new(m, &tangle, n, k)?;
    let mut result = json!({"k": k, "tangle_order": bw});
    let (found, summary) = match find_removal_set(&ctx) {
        Ok(out) => {
            result["set"] = io::subset_to_json(m, out.set);
            result["op"] = json!(out.op.name());
            result["stage"] = json!(out.stage.name());
            result["verified"] = json!(true);
            (true, format!("{} {:?} ({})", out.op.name(), m.labels_of(out.set), out.stage.name()))
        }
        Err(Error::BudgetExhausted { achieved }) => {
            result["set"] = Value::Null;
            result["budget_exhausted"] = json!({"achieved": achieved});
            (false, format!("budget exhausted at size {achieved}"))
        }
        Err(e) => return Err(e.into()),
    };
    let mut passed = true;
    let mut summary = summary;
    if oracle {
        let hit = brute_force_oracle(m, n, k)?;
        result["oracle"] = match hit {
            Some((x, op)) => json!({"set": io::subset_to_json(m, x), "op": op.name()}),
            None => Value::Null,
        };
        // a pipeline answer must be matched by an oracle answer of the same size
        let confirmed = hit.is_some();
        if found {
            result["oracle_confirmed"] = json!(confirmed);
            passed = confirmed;
        }
        summary.push_str(if confirmed { "; oracle finds a set" } else { "; oracle finds none" });
    }
    Ok(Outcome { result, passed, summary })
}

fn echo(args: &[String]) -> Value {
    json!({"name": args.get(1).cloned().unwrap_or_default(), "args": &args[1.min(args.len())..]})
}

fn emit(value: &Value) {
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(value).expect("JSON serializes"));
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = execute(&cli.command, &mut inputs);
    let mut out = json!({"command": echo(&args), "inputs": Value::Object(inputs.0)});
    let code = match outcome {
        Ok(o) => {
            out["passed"] = json!(o.passed);
            out["result"] = o.result;
            eprintln!("{} ({:.2}s)", o.summary, start.elapsed().as_secs_f64());
            u8::from(!o.passed)
        }
        Err(Failure::Claim(msg)) => {
            out["passed"] = json!(false);
            out["error"] = json!(msg);
            eprintln!("verification failure: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            out["error"] = json!(msg);
            eprintln!("error: {msg}");
            2
        }
    };
    emit(&out);
    ExitCode::from(code)
}
