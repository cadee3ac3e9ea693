//! Command implementations for the `roughspace` binary.
//!
//! Every command returns an [`Outcome`] instead of printing, so the same code
//! paths are exercised by the binary and by tests.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 unmet precondition
//! (a family that does not cover the universe), 3 verification or golden
//! mismatch.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use roughspace::format::{self, RelationDocument};
use roughspace::harness::{run_suite, PropositionId, PropositionReport, SweepConfig, SweepMode};
use roughspace::topology::to_dot;
use roughspace::{
    base_conditions, generate_topology, is_base, neighborhood_at, neighborhood_family,
    relation_subbase_condition, ApproximationSpace, BinaryRelation, Error, NeighborhoodKind,
    RelationProfile,
};

pub mod example;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "roughspace",
    version,
    about = "Rough approximations and relation-induced topologies on finite universes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relation profile, neighborhoods and approximations of a set.
    Analyze(AnalyzeArgs),
    /// Topology generated by one neighborhood family.
    Topology(TopologyArgs),
    /// Run the proposition catalog over small relations.
    Verify(VerifyArgs),
    /// Recompute the built-in worked example and compare with reference values.
    Example(ExampleArgs),
    /// Rewrite a relation file in the other format.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Relation file (JSON or text form).
    pub relation: PathBuf,
    /// Comma-separated labels; the empty string is the empty set.
    #[arg(long, allow_hyphen_values = true)]
    pub set: String,
    /// Restrict output to these kinds (s, p, and, or).
    #[arg(long = "kind", value_parser = parse_kind)]
    pub kinds: Vec<NeighborhoodKind>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    pub relation: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    pub kind: NeighborhoodKind,
    /// Also report the base conditions B1/B2 for the family.
    #[arg(long)]
    pub check_base: bool,
    /// Append the inclusion Hasse diagram in DOT.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Comma-separated proposition ids; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub props: Vec<String>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: ModeArg,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Where to write the JSON report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Exit 3 if a gating direction has a counterexample.
    #[arg(long)]
    pub expect_hold: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, default_value_t = 5)]
    pub max_counterexamples: usize,
    /// Include timings in the JSON report.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    pub relation: PathBuf,
    #[arg(long, value_enum)]
    pub to: ConvertTarget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Json,
    Text,
}

fn parse_kind(s: &str) -> Result<NeighborhoodKind, String> {
    s.parse()
}

/// What a command wants printed and the process exit code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::fail(EXIT_USAGE, text),
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Topology(a) => cmd_topology(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Example(a) => example::cmd_example(a.format),
        Command::Convert(a) => cmd_convert(&a),
    }
}

fn load_relation(path: &PathBuf) -> Result<BinaryRelation, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::fail(
            EXIT_USAGE,
            format!("error: cannot read {}: {e}", path.display()),
        )
    })?;
    format::parse_relation(&text)
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {}: {e}", path.display())))
}

/// Renders rows as a left-aligned table with two-space gutters.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::from("  ");
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                let pad = widths[c] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn profile_line(p: &RelationProfile) -> String {
    [
        ("serial", p.serial),
        ("inverse_serial", p.inverse_serial),
        ("reflexive", p.reflexive),
        ("symmetric", p.symmetric),
        ("transitive", p.transitive),
        ("preorder", p.preorder),
        ("tolerance", p.tolerance),
        ("equivalence", p.equivalence),
    ]
    .iter()
    .map(|(name, v)| format!("{name}={}", yes(*v)))
    .collect::<Vec<_>>()
    .join(" ")
}

#[derive(Serialize)]
struct NeighborhoodRow {
    element: String,
    #[serde(flatten)]
    sets: std::collections::BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct ApproximationRow {
    kind: NeighborhoodKind,
    lower: Vec<String>,
    upper: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    relation: RelationDocument,
    profile: RelationProfile,
    neighborhoods: Vec<NeighborhoodRow>,
    set: Vec<String>,
    approximations: Vec<ApproximationRow>,
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Outcome {
    let r = match load_relation(&args.relation) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let u = r.universe().clone();
    let x = match u.parse_set(&args.set) {
        Ok(x) => x,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: --set: {e}")),
    };
    let kinds: Vec<NeighborhoodKind> = if args.kinds.is_empty() {
        NeighborhoodKind::ALL.to_vec()
    } else {
        NeighborhoodKind::ALL
            .into_iter()
            .filter(|k| args.kinds.contains(k))
            .collect()
    };
    let space = ApproximationSpace::new(&r);
    let table_of = space.table(x);
    let profile = r.profile();

    match args.format {
        OutputFormat::Json => {
            let report = AnalyzeReport {
                relation: RelationDocument::of(&r),
                profile,
                neighborhoods: (0..u.len())
                    .map(|e| NeighborhoodRow {
                        element: u.label(e).to_string(),
                        sets: kinds
                            .iter()
                            .map(|&k| {
                                (
                                    k.symbol().to_string(),
                                    u.member_labels(neighborhood_at(&r, k, e)),
                                )
                            })
                            .collect(),
                    })
                    .collect(),
                set: u.member_labels(x),
                approximations: kinds
                    .iter()
                    .map(|&k| ApproximationRow {
                        kind: k,
                        lower: u.member_labels(table_of.lower(k)),
                        upper: u.member_labels(table_of.upper(k)),
                    })
                    .collect(),
            };
            let mut out = serde_json::to_string_pretty(&report).expect("serializable");
            out.push('\n');
            Outcome::ok(out)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "universe: {}", u.labels().join(" "));
            let pairs: Vec<String> = r
                .pairs()
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect();
            let _ = writeln!(out, "relation: {{{}}}", pairs.join(","));
            let _ = writeln!(out, "profile: {}", profile_line(&profile));
            let _ = writeln!(out, "\nneighborhoods:");
            let mut rows = vec![std::iter::once("x".to_string())
                .chain(kinds.iter().map(|k| format!("R_{k}(x)")))
                .collect::<Vec<_>>()];
            for e in 0..u.len() {
                rows.push(
                    std::iter::once(u.label(e).to_string())
                        .chain(kinds.iter().map(|&k| u.render(neighborhood_at(&r, k, e))))
                        .collect(),
                );
            }
            out.push_str(&table(&rows));
            let _ = writeln!(out, "\napproximations of X = {}:", u.render(x));
            let mut rows = vec![vec![
                "kind".to_string(),
                "lower".to_string(),
                "upper".to_string(),
                String::new(),
            ]];
            for &k in &kinds {
                let (lo, up) = (table_of.lower(k), table_of.upper(k));
                let note = if up.is_strict_subset(lo) {
                    "lower ⊋ upper"
                } else {
                    ""
                };
                rows.push(vec![
                    k.to_string(),
                    u.render(lo),
                    u.render(up),
                    note.to_string(),
                ]);
            }
            out.push_str(&table(&rows));
            Outcome::ok(out)
        }
    }
}

pub fn cmd_topology(args: &TopologyArgs) -> Outcome {
    let r = match load_relation(&args.relation) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let u = r.universe().clone();
    let kind = args.kind;
    let family = neighborhood_family(&r, kind);
    let condition_name = match kind {
        NeighborhoodKind::Successor => "inverse serial",
        NeighborhoodKind::Predecessor => "serial",
        NeighborhoodKind::SuccAndPred => "symmetric and (serial or inverse serial)",
        NeighborhoodKind::SuccOrPred => "serial or inverse serial",
    };
    let mut out = String::new();
    let _ = writeln!(out, "kind: {kind} ({})", kind.name());
    let _ = writeln!(out, "family S_{kind}: {family}");
    let _ = writeln!(
        out,
        "relation condition ({condition_name}): {}",
        yes(relation_subbase_condition(&r, kind))
    );
    let t = match generate_topology(&family) {
        Ok(t) => t,
        Err(Error::NotACover { uncovered }) => {
            let _ = writeln!(out, "cover: no");
            return Outcome {
                stdout: out,
                stderr: format!(
                    "error: S_{kind} does not cover the universe; uncovered: {}\n",
                    uncovered.join(",")
                ),
                code: EXIT_PRECONDITION,
            };
        }
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let _ = writeln!(out, "cover: yes");
    if args.check_base {
        let b = base_conditions(&family);
        let base_of_t = is_base(&family, &t).unwrap_or(false);
        let _ = writeln!(out, "base conditions B1/B2: {}", yes(b));
        let _ = writeln!(out, "family is a base of the topology: {}", yes(base_of_t));
    }
    let _ = writeln!(out, "opens ({}):", t.len());
    for open in t.opens().iter() {
        let _ = writeln!(out, "  {}", u.render(open));
    }
    if args.dot {
        out.push('\n');
        out.push_str(&to_dot(&t));
    }
    Outcome::ok(out)
}

fn sweep_config(args: &VerifyArgs) -> Result<SweepConfig, Error> {
    let props = args
        .props
        .iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.parse::<PropositionId>())
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = SweepConfig {
        max_n: args.max_n,
        mode: match args.mode {
            ModeArg::Exhaustive => SweepMode::Exhaustive,
            ModeArg::Sampled => SweepMode::Sampled,
        },
        sample_count: args.samples,
        seed: args.seed,
        props,
        max_counterexamples: args.max_counterexamples,
        workers: args.workers,
        timings: args.timings,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// One summary line per proposition, aggregated over universe sizes.
fn summary_lines(reports: &[PropositionReport]) -> String {
    let mut out = String::new();
    let mut props: Vec<PropositionId> = reports.iter().map(|r| r.prop).collect();
    props.sort();
    props.dedup();
    for prop in props {
        let rs: Vec<&PropositionReport> = reports.iter().filter(|r| r.prop == prop).collect();
        let status = if rs.iter().any(|r| !r.gating_holds) {
            "FAIL"
        } else if rs.iter().any(|r| !r.holds) {
            "REPORTED"
        } else {
            "PASS"
        };
        let relations: u64 = rs.iter().map(|r| r.relations_checked).sum();
        let satisfied: u64 = rs.iter().map(|r| r.hypothesis_satisfied).sum();
        let gating: u64 = rs.iter().map(|r| r.gating_violations()).sum();
        let total: u64 = rs.iter().map(|r| r.counterexample_count).sum();
        let _ = writeln!(
            out,
            "{status:<8} {prop}  relations={relations} hypothesis={satisfied} gating_counterexamples={gating} exploratory_counterexamples={}  {}",
            total - gating,
            prop.description()
        );
        if let Some((r, c)) = rs
            .iter()
            .find_map(|r| r.counterexamples.first().map(|c| (r, c)))
        {
            let pairs: Vec<String> = c
                .relation
                .pairs
                .iter()
                .map(|[a, b]| format!("({a},{b})"))
                .collect();
            let kinds: Vec<String> = c.kinds.iter().map(|k| k.to_string()).collect();
            let _ = writeln!(
                out,
                "         first {} counterexample at n={}: R = {{{}}}{}{}: {} (expected {})",
                c.direction.name(),
                r.n,
                pairs.join(","),
                if kinds.is_empty() {
                    String::new()
                } else {
                    format!(" kinds [{}]", kinds.join(","))
                },
                if c.witness.is_empty() {
                    String::new()
                } else {
                    let w: Vec<String> = c
                        .witness
                        .iter()
                        .map(|s| format!("{{{}}}", s.join(",")))
                        .collect();
                    format!(" witness {}", w.join(" "))
                },
                c.observed,
                c.expected
            );
        }
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let cfg = match sweep_config(args) {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let suite = match run_suite(&cfg) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let mut out = summary_lines(&suite.reports);
    if let Some(path) = &args.report {
        let mut json = suite.to_json();
        json.push('\n');
        if let Err(e) = std::fs::write(path, json) {
            return Outcome::fail(
                EXIT_USAGE,
                format!("error: cannot write {}: {e}", path.display()),
            );
        }
        let _ = writeln!(out, "report written to {}", path.display());
    }
    let _ = writeln!(
        out,
        "{} reports, n = 1..={}, {:.2}s",
        suite.reports.len(),
        cfg.max_n,
        suite.elapsed.as_secs_f64()
    );
    if args.expect_hold && !suite.gating_holds() {
        return Outcome {
            stdout: out,
            stderr: "error: gating propositions have counterexamples\n".into(),
            code: EXIT_MISMATCH,
        };
    }
    Outcome::ok(out)
}

pub fn cmd_convert(args: &ConvertArgs) -> Outcome {
    let r = match load_relation(&args.relation) {
        Ok(r) => r,
        Err(o) => return o,
    };
    Outcome::ok(match args.to {
        ConvertTarget::Json => format::to_json(&r) + "\n",
        ConvertTarget::Text => format::to_text(&r),
    })
}
