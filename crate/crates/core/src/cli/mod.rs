//! Command-line front end. Every command prints one JSON [`RunReport`] on
//! stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 failed precondition,
//! 4 size guard, 5 failed check.

mod verify;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::canonical::{build_family_member, is_family_member, FamilyParams};
use crate::corpus;
use crate::error::Error;
use crate::exact::{
    count_by_enumeration, count_trees, enumerate_trees, solve_clique_cover, solve_min_tree_length, EnumerationSpec,
    TreeMode,
};
use crate::graph::{read_graph, write_graph, Multigraph};
use crate::measures::{measure_report, rooted_measure_report, sigma_ll};
use crate::reductions::{
    add_isolated, add_pendant, pad_to_k_power, reduce_clique4_multigraph, reduce_cliquek_routing,
    subdivide_all_edges, Bookkeeping, ReductionArtifact,
};
use crate::search::{local_search, MoveKind, SearchConfig, Strategy};
use crate::tree::newick::{layout_to_newick, parse_layout, parse_rooted, rooted_to_newick, unlabeled_newick};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_GUARD: i32 = 4;
pub const EXIT_CHECK: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "treelen", version, about = "Tree layouts of graphs: measures, exact and heuristic Min Tree Length, hardness gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every measure of a graph laid out on a tree.
    Measure(MeasureArgs),
    /// Minimize tree length exactly or by local search.
    Solve(SolveArgs),
    /// Enumerate or count host trees.
    Enumerate(EnumerateArgs),
    /// Build a member of the level-filled tree family.
    Canonical(CanonicalArgs),
    /// Search for a clique cover with prescribed block sizes.
    Cover(CoverArgs),
    /// Apply a hardness gadget and write the output graph and a JSON sidecar.
    Reduce(ReduceArgs),
    /// Run a named verification suite, or check a reduction sidecar.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Unrooted,
    Rooted,
    Routing,
}

#[derive(Debug, Args)]
struct ModeArgs {
    /// Host tree family.
    #[arg(long, value_enum, default_value = "unrooted")]
    mode: ModeArg,
    /// Maximum internal degree in routing mode.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Number of enumeration shards run in parallel.
    #[arg(long, default_value_t = 1)]
    shards: usize,
    /// Lift the size guard.
    #[arg(long)]
    force: bool,
}

impl ModeArgs {
    fn spec(&self, leaves: usize) -> EnumerationSpec {
        let mode = match self.mode {
            ModeArg::Unrooted => TreeMode::UnrootedCubic,
            ModeArg::Rooted => TreeMode::RootedBinary,
            ModeArg::Routing => TreeMode::Routing(self.max_degree),
        };
        EnumerationSpec::new(leaves, mode)
            .with_shards(self.shards)
            .forced(self.force)
    }
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// Graph file, or `builtin:NAME`.
    graph: String,
    /// Newick file whose leaf labels `vK` give the vertex mapping.
    tree: PathBuf,
    /// Read the tree as a rooted binary tree.
    #[arg(long)]
    rooted: bool,
    /// Maximum internal degree accepted for an unrooted tree.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Fail unless total congestion equals total dilation.
    #[arg(long)]
    check_duality: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Graph file, or `builtin:NAME`.
    graph: String,
    /// Exhaustive search.
    #[arg(long, conflicts_with = "local", required_unless_present = "local")]
    exact: bool,
    /// Restarted local search (unrooted mode only).
    #[arg(long)]
    local: bool,
    #[command(flatten)]
    mode: ModeArgs,
    /// Number of optimal trees listed in the report.
    #[arg(long, default_value_t = 10)]
    witnesses: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, value_enum, default_value = "steepest")]
    strategy: StrategyArg,
    /// Moves used by local search.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "nni,leaf-swap")]
    moves: Vec<MoveArg>,
    /// Zero-gain moves allowed per restart.
    #[arg(long, default_value_t = 20)]
    max_plateau_steps: usize,
    /// Write the per-restart trace as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    FirstImprovement,
    Steepest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MoveArg {
    Nni,
    LeafSwap,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    leaves: usize,
    #[command(flatten)]
    mode: ModeArgs,
    /// Only count the trees.
    #[arg(long)]
    count_only: bool,
    /// Number of trees listed in the report.
    #[arg(long, default_value_t = 1000)]
    limit: usize,
}

#[derive(Debug, Args)]
struct CanonicalArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    delta: usize,
}

#[derive(Debug, Args)]
struct CoverArgs {
    /// Graph file, or `builtin:NAME`.
    graph: String,
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Clique4,
    Subdivide,
    Pendant,
    Isolated,
    Pad,
    Cliquek,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// Graph file, or `builtin:NAME`.
    graph: String,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Output graph file.
    #[arg(long)]
    out: PathBuf,
    /// Sidecar path; defaults to the output path with `.json` appended.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// Anchor vertex of the pendant gadget.
    #[arg(long, default_value_t = 0)]
    anchor: usize,
    /// Number of blocks for the padding and k-clique gadgets.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Family,
    Duality,
    Reductions,
    Rooted,
    Routing,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum, required_unless_present = "reduction")]
    suite: Option<Suite>,
    /// Check a sidecar written by `reduce`.
    #[arg(long, conflicts_with = "suite")]
    reduction: Option<PathBuf>,
    /// Largest leaf count of the family and routing suites.
    #[arg(long)]
    max_leaves: Option<usize>,
    /// Random cases of the duality suite.
    #[arg(long, default_value_t = 100)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph corpus of the reductions suite.
    #[arg(long, default_value = "builtin")]
    corpus: String,
    #[arg(long, default_value_t = 8)]
    shards: usize,
}

/// A failed command and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::InvalidArgument(_) | Error::Disconnected(..) => EXIT_PRECONDITION,
            Error::Guard { .. } => EXIT_GUARD,
            Error::Soundness(_) => EXIT_CHECK,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

/// The JSON document every command prints. Two runs with the same
/// arguments and inputs differ only in `wall_clock_seconds`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub args: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub passed: bool,
    pub results: Value,
    pub wall_clock_seconds: f64,
}

struct Outcome {
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    passed: bool,
    results: Value,
}

impl Outcome {
    fn ok(inputs: Vec<InputDigest>, results: Value) -> Self {
        Outcome {
            inputs,
            seed: None,
            passed: true,
            results,
        }
    }
}

fn digest(name: impl Into<String>, bytes: &[u8]) -> InputDigest {
    let hash = Sha256::digest(bytes);
    InputDigest {
        name: name.into(),
        sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn with_context(source: &str, e: Error) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{source}: {}", err.message);
    err
}

/// Loads a graph from a file or from the builtin corpus (`builtin:NAME`).
fn load_graph(source: &str) -> CliResult<(Multigraph, InputDigest)> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let g = corpus::builtin(name).map_err(|e| with_context(source, e))?;
        let d = digest(source, write_graph(&g).as_bytes());
        return Ok((g, d));
    }
    let text = read_text(Path::new(source))?;
    let g = read_graph(&text).map_err(|e| with_context(source, e))?;
    Ok((g, digest(source, text.as_bytes())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::precondition(format!("{}: {e}", path.display())))
}

fn mode_name(spec: &EnumerationSpec) -> &'static str {
    match spec.mode {
        TreeMode::UnrootedCubic => "unrooted",
        TreeMode::RootedBinary => "rooted",
        TreeMode::Routing(_) => "routing",
    }
}

fn cmd_measure(a: &MeasureArgs) -> CliResult<Outcome> {
    let (g, gd) = load_graph(&a.graph)?;
    let text = read_text(&a.tree)?;
    let td = digest(a.tree.display().to_string(), text.as_bytes());
    let source = a.tree.display().to_string();
    let (report, tree_kind, newick) = if a.rooted {
        let b = parse_rooted(&text).map_err(|e| with_context(&source, e))?;
        check_leaf_count(b.leaf_count(), &g)?;
        (rooted_measure_report(&b, &g)?, "rooted", rooted_to_newick(&b))
    } else {
        let l = parse_layout(&text, a.max_degree).map_err(|e| with_context(&source, e))?;
        check_leaf_count(l.vertex_count(), &g)?;
        (measure_report(&l, &g)?, "unrooted", layout_to_newick(&l))
    };
    let dilation = report.dilation_total();
    let congestion = report.congestion_total();
    let passed = !a.check_duality || dilation == congestion;
    let mut results = json!({
        "tree_kind": tree_kind,
        "tree": newick,
        "measures": report,
    });
    if a.check_duality {
        results["duality"] = json!({
            "congestion_total": congestion,
            "dilation_total": dilation,
            "holds": dilation == congestion,
        });
    }
    Ok(Outcome {
        passed,
        ..Outcome::ok(vec![gd, td], results)
    })
}

fn check_leaf_count(leaves: usize, g: &Multigraph) -> CliResult<()> {
    if leaves != g.vertex_count() {
        return Err(CliError::parse(format!(
            "tree has {leaves} leaves but the graph has {} vertices",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn cmd_solve(a: &SolveArgs) -> CliResult<Outcome> {
    let (g, gd) = load_graph(&a.graph)?;
    if a.exact {
        let spec = a.mode.spec(g.vertex_count());
        let sol = solve_min_tree_length(&g, &spec)?;
        let witnesses: Vec<String> = sol.witnesses.iter().take(a.witnesses).map(|w| w.newick()).collect();
        let results = json!({
            "method": "exact",
            "tree_kind": mode_name(&spec),
            "spec": spec,
            "best_value": sol.best_value,
            "optimal_count": sol.optimal_count,
            "trees_evaluated": sol.trees_evaluated,
            "witnesses": witnesses,
        });
        return Ok(Outcome::ok(vec![gd], results));
    }
    if a.mode.mode != ModeArg::Unrooted {
        return Err(CliError::precondition("local search supports unrooted layouts only"));
    }
    let config = SearchConfig {
        seed: a.seed,
        restarts: a.restarts,
        move_set: a
            .moves
            .iter()
            .map(|m| match m {
                MoveArg::Nni => MoveKind::Nni,
                MoveArg::LeafSwap => MoveKind::LeafSwap,
            })
            .collect(),
        strategy: match a.strategy {
            StrategyArg::FirstImprovement => Strategy::FirstImprovement,
            StrategyArg::Steepest => Strategy::Steepest,
        },
        max_plateau_steps: a.max_plateau_steps,
    };
    let r = local_search(&g, &config)?;
    if let Some(path) = &a.trace {
        let mut lines = String::new();
        for t in &r.trace {
            lines.push_str(&serde_json::to_string(t).expect("trace serializes"));
            lines.push('\n');
        }
        write_file(path, &lines)?;
    }
    let results = json!({
        "method": "local",
        "tree_kind": "unrooted",
        "config": config,
        "best_value": r.value,
        "best_restart": r.best_restart,
        "layout": layout_to_newick(&r.layout),
        "trace": r.trace,
    });
    Ok(Outcome {
        seed: Some(a.seed),
        ..Outcome::ok(vec![gd], results)
    })
}

fn cmd_enumerate(a: &EnumerateArgs) -> CliResult<Outcome> {
    let spec = a.mode.spec(a.leaves);
    let results = if a.count_only {
        json!({
            "tree_kind": mode_name(&spec),
            "spec": spec,
            "count": count_by_enumeration(&spec)?,
            "formula_count": count_trees(&spec)?,
        })
    } else {
        let mut trees = Vec::new();
        let mut count = 0u64;
        enumerate_trees(&spec, |t| {
            if trees.len() < a.limit {
                trees.push(t.newick());
            }
            count += 1;
        })?;
        json!({
            "tree_kind": mode_name(&spec),
            "spec": spec,
            "count": count,
            "truncated": count > trees.len() as u64,
            "trees": trees,
        })
    };
    Ok(Outcome::ok(Vec::new(), results))
}

fn cmd_canonical(a: &CanonicalArgs) -> CliResult<Outcome> {
    let params = FamilyParams::new(a.r, a.delta, a.nodes)?;
    let (tree, emb) = build_family_member(params)?;
    let levels: Vec<Value> = (0..=emb.height())
        .map(|i| json!({ "level": i, "nodes": emb.line(i) }))
        .collect();
    let results = json!({
        "params": params,
        "newick": unlabeled_newick(&tree),
        "nodes": tree.node_count(),
        "leaves": tree.leaves().len(),
        "height": emb.height(),
        "sigma_ll": sigma_ll(&tree),
        "central_nodes": tree.central_nodes(),
        "member": is_family_member(&tree, a.r, a.delta)?,
        "levels": levels,
    });
    Ok(Outcome::ok(Vec::new(), results))
}

fn cmd_cover(a: &CoverArgs) -> CliResult<Outcome> {
    let (g, gd) = load_graph(&a.graph)?;
    let cover = solve_clique_cover(&g, &a.sizes)?;
    let results = json!({
        "sizes": a.sizes,
        "found": cover.is_some(),
        "blocks": cover.as_ref().map(|p| p.blocks().to_vec()),
    });
    Ok(Outcome::ok(vec![gd], results))
}

/// On-disk form of a [`ReductionArtifact`].
#[derive(Debug, Clone, Serialize, Deserialize)]
struct Sidecar {
    kind: String,
    input_graph: String,
    output_graph: String,
    bookkeeping: Bookkeeping,
}

impl Sidecar {
    fn from_artifact(a: &ReductionArtifact) -> Self {
        Sidecar {
            kind: a.kind().to_string(),
            input_graph: write_graph(&a.input_graph),
            output_graph: write_graph(&a.output_graph),
            bookkeeping: a.bookkeeping.clone(),
        }
    }

    fn into_artifact(self, source: &str) -> CliResult<ReductionArtifact> {
        let input_graph = read_graph(&self.input_graph).map_err(|e| with_context(source, e))?;
        let output_graph = read_graph(&self.output_graph).map_err(|e| with_context(source, e))?;
        let artifact = ReductionArtifact {
            input_graph,
            output_graph,
            bookkeeping: self.bookkeeping,
        };
        if artifact.kind() != self.kind {
            return Err(CliError::parse(format!(
                "{source}: kind `{}` does not match the bookkeeping ({})",
                self.kind,
                artifact.kind()
            )));
        }
        Ok(artifact)
    }
}

fn cmd_reduce(a: &ReduceArgs) -> CliResult<Outcome> {
    let (g, gd) = load_graph(&a.graph)?;
    let need_k = || a.k.ok_or_else(|| CliError::precondition("this gadget needs --k"));
    let artifact = match a.kind {
        KindArg::Clique4 => reduce_clique4_multigraph(&g)?,
        KindArg::Subdivide => subdivide_all_edges(&g)?,
        KindArg::Pendant => add_pendant(&g, a.anchor)?,
        KindArg::Isolated => add_isolated(&g),
        KindArg::Pad => pad_to_k_power(&g, need_k()?)?,
        KindArg::Cliquek => reduce_cliquek_routing(&g, need_k()?)?,
    };
    let sidecar_path = a.sidecar.clone().unwrap_or_else(|| {
        let mut p = a.out.clone().into_os_string();
        p.push(".json");
        PathBuf::from(p)
    });
    write_file(&a.out, &write_graph(&artifact.output_graph))?;
    let sidecar = Sidecar::from_artifact(&artifact);
    let text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    write_file(&sidecar_path, &(text + "\n"))?;
    let results = json!({
        "kind": artifact.kind(),
        "output": a.out.display().to_string(),
        "sidecar": sidecar_path.display().to_string(),
        "output_vertices": artifact.output_graph.vertex_count(),
        "output_pairs": artifact.output_graph.pair_count(),
        "output_edges": artifact.output_graph.edge_total(),
        "bookkeeping": artifact.bookkeeping,
    });
    Ok(Outcome::ok(vec![gd], results))
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let (inputs, label, checks) = if let Some(path) = &a.reduction {
        let text = read_text(path)?;
        let source = path.display().to_string();
        let sidecar: Sidecar =
            serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{source}: {e}")))?;
        let artifact = sidecar.into_artifact(&source)?;
        let checks = verify::check_artifact(&artifact, a.shards)?;
        (vec![digest(source, text.as_bytes())], artifact.kind().to_string(), checks)
    } else {
        let suite = a.suite.expect("clap requires a suite");
        let checks = match suite {
            Suite::Family => verify::family(a.max_leaves.unwrap_or(9), a.shards)?,
            Suite::Duality => verify::duality(a.random, a.seed)?,
            Suite::Reductions => {
                if a.corpus != "builtin" {
                    return Err(CliError::precondition(format!("unknown corpus `{}`", a.corpus)));
                }
                verify::reductions(a.shards)?
            }
            Suite::Rooted => verify::rooted()?,
            Suite::Routing => verify::routing(a.max_leaves.unwrap_or(8), a.shards)?,
        };
        let name = suite.to_possible_value().expect("suites have names").get_name().to_string();
        (Vec::new(), name, checks)
    };
    let passed = checks.iter().all(|c| c.passed);
    let results = json!({
        "suite": label,
        "passed_checks": checks.iter().filter(|c| c.passed).count(),
        "failed_checks": checks.iter().filter(|c| !c.passed).count(),
        "checks": checks,
    });
    Ok(Outcome {
        inputs,
        seed: (a.suite == Some(Suite::Duality)).then_some(a.seed),
        passed,
        results,
    })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. The report goes to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let (command, outcome) = match &cli.command {
        Command::Measure(a) => ("measure", cmd_measure(a)),
        Command::Solve(a) => ("solve", cmd_solve(a)),
        Command::Enumerate(a) => ("enumerate", cmd_enumerate(a)),
        Command::Canonical(a) => ("canonical", cmd_canonical(a)),
        Command::Cover(a) => ("cover", cmd_cover(a)),
        Command::Reduce(a) => ("reduce", cmd_reduce(a)),
        Command::Verify(a) => ("verify", cmd_verify(a)),
    };
    match outcome {
        Ok(o) => {
            let report = RunReport {
                command: command.to_string(),
                args: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
                inputs: o.inputs,
                seed: o.seed,
                passed: o.passed,
                results: o.results,
                wall_clock_seconds: start.elapsed().as_secs_f64(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            let _ = writeln!(out, "{text}");
            if o.passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "treelen {command}: checks failed");
                EXIT_CHECK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "treelen {command}: {e}");
            e.code
        }
    }
}

/// Entry point of the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
