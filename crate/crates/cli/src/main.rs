use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use treelab_core::acceptance;
use treelab_core::identities::{self, Grid, Report};
use treelab_core::matches::{chen_decode, chen_encode, enum_match_sets};
use treelab_core::numbers::{SequenceTable, TABLE_NAMES};
use treelab_core::trees::{enum_labeled_trees, enum_plane_trees, gamma_enumerate};

#[derive(Parser)]
#[command(name = "treelab", version, about = "Exact checks of plane-tree binomial identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered identities and their parameters.
    List,
    /// Evaluate both sides of an identity at one point.
    Verify {
        id: String,
        /// Comma-separated `name=value` pairs; values are exact rationals.
        #[arg(long, default_value = "")]
        params: String,
        /// Formal parameters to keep symbolic. Unset formal parameters are
        /// left free automatically.
        #[arg(long, value_delimiter = ',')]
        free: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check an identity on a grid: `sweep stanley --n 0..8 --z -3..3`.
    Sweep {
        id: String,
        /// `--<param> <a..b | v1,v2,...>` pairs, plus `--json <path>`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        rest: Vec<String>,
    },
    /// Print every member of a tree family, one per line.
    Enumerate {
        #[command(subcommand)]
        family: Family,
    },
    /// Chen bijection checks.
    Bijection {
        #[command(subcommand)]
        action: BijectionAction,
    },
    /// Export a sequence table as CSV.
    Table {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(TABLE_NAMES))]
        name: String,
        #[arg(long)]
        max: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the acceptance suite, or a single numbered criterion.
    Report {
        /// `all` or a criterion number from 1 to 10.
        which: String,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Γ(n, x, q) in tree-word, label and color notation.
    Gamma {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: u32,
        #[arg(long)]
        q: u32,
    },
    /// Unlabeled plane trees as parenthesis words.
    Plane {
        #[arg(long)]
        edges: usize,
    },
}

#[derive(Subcommand)]
enum BijectionAction {
    /// Encode/decode every labeled tree and match set with 1..=n edges.
    Roundtrip {
        #[arg(long)]
        n: u32,
    },
}

/// Failure that should exit with status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::from(1),
        (Err(Usage(msg)), _) => {
            eprintln!("treelab: {msg}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("treelab: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::List => {
            for identity in identities::registry() {
                let params: Vec<String> = identity
                    .params
                    .iter()
                    .map(|p| match p.kind {
                        identities::ParamKind::Int => p.name.to_string(),
                        identities::ParamKind::Formal => format!("{}*", p.name),
                    })
                    .collect();
                writeln!(out, "{:<22} {:<24} {}", identity.id, params.join(","), identity.summary)?;
            }
            Ok(true)
        }
        Command::Verify { id, params, free, json } => verify(&id, &params, free, json, out),
        Command::Sweep { id, rest } => sweep(&id, &rest, out),
        Command::Enumerate { family } => {
            match family {
                Family::Gamma { n, x, q } => {
                    for t in gamma_enumerate(n, x, q)? {
                        writeln!(out, "{t}")?;
                    }
                }
                Family::Plane { edges } => {
                    for t in enum_plane_trees(edges)? {
                        writeln!(out, "{t}")?;
                    }
                }
            }
            Ok(true)
        }
        Command::Bijection {
            action: BijectionAction::Roundtrip { n },
        } => roundtrip(n, out),
        Command::Table { name, max, csv } => {
            let table = SequenceTable::build(&name, max)?;
            match csv {
                Some(path) => table.write_csv(File::create(&path)?)?,
                None => write!(out, "{}", table.to_csv_string()?)?,
            }
            Ok(true)
        }
        Command::Report { which } => report(&which, out),
    }
}

fn write_json(path: &PathBuf, report: &Report) -> Result<(), Usage> {
    let mut f = File::create(path)?;
    writeln!(f, "{}", report.to_json())?;
    Ok(())
}

fn verify(id: &str, params: &str, mut free: Vec<String>, json: Option<PathBuf>, out: &mut impl Write) -> Outcome {
    let identity = identities::lookup(id)?;
    let point = identities::parse_point(params)?;
    if free.is_empty() {
        free = identity
            .formal_params()
            .into_iter()
            .filter(|p| !point.contains_key(*p))
            .map(str::to_string)
            .collect();
    }
    let report = if free.is_empty() {
        let (report, e) = identities::report_numeric(id, &point)?;
        writeln!(out, "lhs = {}", e.lhs)?;
        writeln!(out, "rhs = {}", e.rhs)?;
        report
    } else {
        let names: Vec<&str> = free.iter().map(String::as_str).collect();
        let (report, e) = identities::report_polynomial(id, &point, &names)?;
        writeln!(out, "lhs = {}", e.lhs)?;
        writeln!(out, "rhs = {}", e.rhs)?;
        report
    };
    writeln!(out, "{}", status_word(&report))?;
    if let Some(path) = json {
        write_json(&path, &report)?;
    }
    Ok(report.passed())
}

fn status_word(report: &Report) -> &'static str {
    if report.passed() {
        "verified"
    } else {
        "counterexample"
    }
}

fn sweep(id: &str, rest: &[String], out: &mut impl Write) -> Outcome {
    let mut overrides = BTreeMap::new();
    let mut json = None;
    let mut args = rest.iter();
    while let Some(flag) = args.next() {
        let Some(name) = flag.strip_prefix("--") else {
            return Err(Usage(format!("expected --<param> <range>, got `{flag}`")));
        };
        let value = args
            .next()
            .ok_or_else(|| Usage(format!("`{flag}` needs a value")))?;
        if name == "json" {
            json = Some(PathBuf::from(value));
        } else {
            overrides.insert(name.to_string(), Grid::parse(value)?);
        }
    }
    let report = identities::sweep(id, &overrides)?;
    writeln!(out, "{id}: {} points, {}", report.points, status_word(&report))?;
    for c in &report.counterexamples {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "  {}: lhs = {}, rhs = {}", params.join(","), c.lhs, c.rhs)?;
    }
    if let Some(path) = json {
        write_json(&path, &report)?;
    }
    Ok(report.passed())
}

fn roundtrip(n: u32, out: &mut impl Write) -> Outcome {
    if n == 0 {
        return Err(Usage("--n must be at least 1".into()));
    }
    let mut all_ok = true;
    for size in 1..=n {
        let trees = enum_labeled_trees(size as usize)?;
        let sets = enum_match_sets(size)?;
        let mut failures = 0usize;
        for t in &trees {
            let ok = chen_encode(t).is_ok_and(|ms| {
                ms.unstarred_roots() == t.internal_labels()
                    && ms.unstarred_leaves() == t.leaf_labels()
                    && chen_decode(&ms).as_ref() == Ok(t)
            });
            failures += usize::from(!ok);
        }
        for ms in &sets {
            let ok = chen_decode(ms).and_then(|t| chen_encode(&t)).is_ok_and(|again| &again == ms);
            failures += usize::from(!ok);
        }
        let counts_match = trees.len() == sets.len();
        all_ok &= failures == 0 && counts_match;
        writeln!(
            out,
            "n={size}: {} trees, {} match sets, {failures} failures",
            trees.len(),
            sets.len()
        )?;
    }
    Ok(all_ok)
}

fn report(which: &str, out: &mut impl Write) -> Outcome {
    let results = if which == "all" {
        acceptance::run_all()
    } else {
        let n: u8 = which
            .parse()
            .map_err(|_| Usage(format!("expected `all` or a criterion number, got `{which}`")))?;
        vec![acceptance::run(n).ok_or_else(|| Usage(format!("no criterion {n}")))?]
    };
    let mut all = true;
    for r in &results {
        writeln!(out, "{r}")?;
        all &= r.passed;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} criteria pass", results.len())?;
    Ok(all)
}
