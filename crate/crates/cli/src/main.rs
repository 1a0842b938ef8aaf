use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lpa_core::explorer::{
    explore, label_by_sequences, verify_counts, verify_identity_suite, verify_isomorphism,
    ExchangeGraph, GraphJson, Identity, SequenceLabeling, DEFAULT_MAX_SEEDS,
};
use lpa_core::graph_lp::{
    initial_seed_binomial, initial_seed_linear, mutate_along, ActivationSequence, Digraph,
};
use lpa_core::lp::Seed;

#[derive(Parser)]
#[command(
    name = "lpa",
    version,
    about = "Exact computations in Laurent phenomenon algebras of digraphs"
)]
struct Cli {
    /// Human-oriented output: indented JSON, aligned tables.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the initial seed of a digraph.
    Seed(SeedArgs),
    /// Mutate the initial seed and print the result.
    Mutate(MutateArgs),
    /// Explore the exchange graph by breadth-first mutation.
    Explore(ExploreArgs),
    /// Run the verification suite for the complete graph on n vertices.
    Verify(VerifyArgs),
    /// Convert a stored exchange-graph JSON file to DOT.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Linear,
    Binomial,
}

#[derive(Args)]
struct GraphSource {
    /// Digraph JSON file: {"n": 3, "edges": [[1, 2], ...]}.
    #[arg(
        long,
        conflicts_with = "complete",
        required_unless_present = "complete"
    )]
    graph: Option<PathBuf>,
    /// Use the complete digraph on n vertices.
    #[arg(long)]
    complete: Option<usize>,
    #[arg(long, value_enum, default_value = "binomial")]
    kind: Kind,
}

impl GraphSource {
    fn digraph(&self) -> Result<Digraph> {
        match (&self.graph, self.complete) {
            (Some(path), _) => {
                let text = read(path)?;
                Digraph::from_json_str(&text).with_context(|| format!("{}", path.display()))
            }
            (None, Some(n)) if n >= 1 => Ok(Digraph::complete(n)),
            (None, Some(n)) => bail!("--complete {n}: need at least one vertex"),
            (None, None) => bail!("one of --graph or --complete is required"),
        }
    }

    fn seed(&self) -> Result<Seed> {
        let g = self.digraph()?;
        Ok(match self.kind {
            Kind::Linear => initial_seed_linear(&g),
            Kind::Binomial => initial_seed_binomial(&g),
        })
    }
}

#[derive(Args)]
struct SeedArgs {
    #[command(flatten)]
    source: GraphSource,
}

#[derive(Args)]
struct MutateArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Comma-separated 1-based slots, applied left to right; repeats allowed.
    #[arg(
        long,
        conflicts_with = "activation_sequence",
        required_unless_present = "activation_sequence"
    )]
    sequence: Option<String>,
    /// Activation sequence: distinct vertices, applied left to right.
    #[arg(long)]
    activation_sequence: Option<String>,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Output file; the format follows the extension (.dot or .json).
    /// Without it, JSON goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include the full seed of every vertex in JSON output.
    #[arg(long)]
    with_seeds: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
    max_seeds: usize,
    /// Worker threads for the explorer (a hint).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Rank of the complete graph.
    #[arg(long)]
    complete: usize,
    /// Comma-separated checks: counts, thm42, prop33, lem32, lem41, cor43,
    /// thm45, iso. Defaults to all of them.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_MAX_SEEDS)]
    max_seeds: usize,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ExportArgs {
    /// Exchange-graph JSON written by `explore`.
    input: PathBuf,
    /// DOT output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

const ALL_CHECKS: [&str; 8] = [
    "counts", "thm42", "prop33", "lem32", "lem41", "cor43", "thm45", "iso",
];

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", line.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every requested check passed.
fn run(cli: Cli) -> Result<bool> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Seed(a) => {
            println!("{}", a.source.seed()?.to_json_string(pretty));
            Ok(true)
        }
        Command::Mutate(a) => {
            let start = a.source.seed()?;
            let n = start.rank();
            let seed = if let Some(text) = &a.activation_sequence {
                let s = ActivationSequence::parse(n, text)
                    .with_context(|| format!("--activation-sequence {text}"))?;
                mutate_along(&start, &s)?
            } else {
                let text = a.sequence.as_deref().unwrap_or_default();
                let mut seed = start;
                for slot in parse_slots(text, n)? {
                    seed = seed.mutate(slot)?;
                }
                seed
            };
            println!("{}", seed.to_json_string(pretty));
            Ok(true)
        }
        Command::Explore(a) => {
            configure_threads(a.threads)?;
            let complete = a.source.digraph()?.is_complete();
            let g = explore(&a.source.seed()?, a.max_seeds)?;
            if g.truncated() {
                eprintln!("warning: exploration stopped at {} seeds", g.len());
            }
            let labels = if complete {
                label_by_sequences(&g).ok()
            } else {
                None
            };
            let dot = a
                .out
                .as_deref()
                .is_some_and(|p| p.extension().is_some_and(|e| e == "dot"));
            let text = if dot {
                g.to_dot(labels.as_ref())
            } else {
                graph_json(&g, labels.as_ref(), a.with_seeds, pretty)
            };
            write_output(a.out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Verify(a) => {
            configure_threads(a.threads)?;
            verify(&a, pretty)
        }
        Command::Export(a) => {
            let text = read(&a.input)?;
            let g = GraphJson::from_json_str(&text)
                .with_context(|| format!("{}", a.input.display()))?;
            write_output(a.out.as_deref(), &g.to_dot())?;
            Ok(true)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn graph_json(
    g: &ExchangeGraph,
    labels: Option<&SequenceLabeling>,
    with_seeds: bool,
    pretty: bool,
) -> String {
    let j = g.to_json(labels, with_seeds);
    if pretty {
        serde_json::to_string_pretty(&j)
    } else {
        serde_json::to_string(&j)
    }
    .expect("graph serialization cannot fail")
}

fn parse_slots(text: &str, n: usize) -> Result<Vec<usize>> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| anyhow!("--sequence: '{}' is not a slot number", part.trim()))?;
            if k == 0 || k > n {
                bail!("--sequence: slot {k} is out of range 1..={n}");
            }
            Ok(k - 1)
        })
        .collect()
}

fn configure_threads(threads: Option<usize>) -> Result<()> {
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("--threads")?;
    }
    Ok(())
}

struct Row {
    check: String,
    passed: bool,
    detail: String,
}

fn verify(a: &VerifyArgs, pretty: bool) -> Result<bool> {
    let n = a.complete;
    if n == 0 {
        bail!("--complete 0: need at least one vertex");
    }
    let checks = a
        .checks
        .clone()
        .unwrap_or_else(|| ALL_CHECKS.iter().map(|s| s.to_string()).collect());
    for c in &checks {
        if !ALL_CHECKS.contains(&c.as_str()) {
            bail!(
                "--checks: unknown check '{c}' (expected one of {})",
                ALL_CHECKS.join(", ")
            );
        }
    }

    let k = Digraph::complete(n);
    let needs_graphs = checks
        .iter()
        .any(|c| matches!(c.as_str(), "counts" | "thm45" | "iso"));
    let (tau, t) = if needs_graphs {
        let tau = explore(&initial_seed_binomial(&k), a.max_seeds)?;
        let t = if checks.iter().any(|c| c == "thm45" || c == "iso") {
            Some(explore(&initial_seed_linear(&k), a.max_seeds)?)
        } else {
            None
        };
        (Some(tau), t)
    } else {
        (None, None)
    };

    let identities: Vec<Identity> = Identity::ALL
        .into_iter()
        .filter(|id| checks.iter().any(|c| c == id.key()))
        .collect();
    let suite = if identities.is_empty() {
        None
    } else {
        Some(verify_identity_suite(n, &identities)?)
    };

    let mut rows = Vec::new();
    for c in &checks {
        let row = match c.as_str() {
            "counts" => match verify_counts(tau.as_ref().expect("explored"), n) {
                Ok(r) => Row {
                    check: c.clone(),
                    passed: r.passed(),
                    detail: r.to_string(),
                },
                Err(e) => Row {
                    check: c.clone(),
                    passed: false,
                    detail: e.to_string(),
                },
            },
            "thm45" => {
                let mut parts = Vec::new();
                let mut passed = true;
                for (name, g) in [("binomial", tau.as_ref()), ("linear", t.as_ref())] {
                    match label_by_sequences(g.expect("explored")) {
                        Ok(l) => parts.push(format!("{name}: {} labels", l.labels().len())),
                        Err(e) => {
                            passed = false;
                            parts.push(format!("{name}: {e}"));
                        }
                    }
                }
                Row {
                    check: c.clone(),
                    passed,
                    detail: parts.join(", "),
                }
            }
            "iso" => {
                let (a, b) = (
                    tau.as_ref().expect("explored"),
                    t.as_ref().expect("explored"),
                );
                let outcome = label_by_sequences(a)
                    .and_then(|la| label_by_sequences(b).map(|lb| (la, lb)))
                    .and_then(|(la, lb)| verify_isomorphism(a, &la, b, &lb));
                match outcome {
                    Ok(iso) => Row {
                        check: c.clone(),
                        passed: true,
                        detail: format!(
                            "{} vertices, {} edges matched",
                            iso.map.len(),
                            iso.edges_checked
                        ),
                    },
                    Err(e) => Row {
                        check: c.clone(),
                        passed: false,
                        detail: e.to_string(),
                    },
                }
            }
            key => {
                let id = identities
                    .iter()
                    .copied()
                    .find(|id| id.key() == key)
                    .expect("validated check name");
                let report = suite.as_ref().expect("suite ran");
                let (ok, total) = report.tally(id);
                for r in report.for_identity(id).filter(|r| !r.passed) {
                    eprintln!(
                        "{key}: ({}) {}",
                        r.sequence,
                        r.detail.as_deref().unwrap_or("failed")
                    );
                }
                let cases: usize = report.for_identity(id).map(|r| r.cases).sum();
                Row {
                    check: c.clone(),
                    passed: ok == total,
                    detail: format!("sequences {ok}/{total}, comparisons {cases}"),
                }
            }
        };
        rows.push(row);
    }
    print_table(&rows, pretty);
    Ok(rows.iter().all(|r| r.passed))
}

fn print_table(rows: &[Row], pretty: bool) {
    let status = |r: &Row| if r.passed { "PASS" } else { "FAIL" };
    if pretty {
        let width = rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
        for r in rows {
            println!("{:<width$}  {}  {}", r.check, status(r), r.detail);
        }
    } else {
        println!("check\tstatus\tdetail");
        for r in rows {
            println!("{}\t{}\t{}", r.check, status(r), r.detail);
        }
    }
}
