use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use ccz_fountain::code::DEFAULT_DISTANCE_CUTOFF;
use ccz_fountain::fountain::{scaling_fit, RegisterLayout};
use ccz_fountain::hypergraph::{greedy_color_traced, schedule_from_coloring, verify_coloring};
use ccz_fountain::io::{
    parse_matrix_text, schedule_to_dot, CodeBundle, HypergraphFile, ScheduleFile,
};
use ccz_fountain::packing::{greedy_pack, verify_packing};
use ccz_fountain::phaseverify::{
    check_coset_constancy, check_wirewise_phase, extract_logical_action, lightcone_support_check,
    Constancy, DiagonalCircuit, ErrorKind, DEFAULT_PHASE_CUTOFF,
};
use ccz_fountain::triples::TripleSearch;
use ccz_fountain::{
    enumerate_triples, run_pipeline, sample_triples, verify_magic_friendly, BitVector, CssCode,
    GatePattern, MagicFriendlyTriple, PipelineOptions, SearchBudget, Strategy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NO_TRIPLES: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ccz-fountain",
    version,
    about = "Magic-friendly triples, packing and CCZ scheduling for CSS codes"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a code is a valid CSS code and print n, k and weights.
    Validate(CodeArgs),
    /// Print a basis of logical X representatives.
    Logicals(CodeArgs),
    /// Exact X/Z distance by enumeration.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, env = "FOUNTAIN_DISTANCE_CUTOFF", default_value_t = DEFAULT_DISTANCE_CUTOFF)]
        cutoff: u64,
    },
    /// Search for or verify magic-friendly triples.
    #[command(subcommand)]
    Triples(TriplesCommand),
    /// Greedy packing of a triple list into disjoint supports.
    Pack {
        /// JSON list of triples (or the output of `triples search`).
        triples: PathBuf,
    },
    /// Greedy edge coloring of a hypergraph JSON file.
    Color { hypergraph: PathBuf },
    /// Layered schedule from a hypergraph JSON file.
    Schedule {
        hypergraph: PathBuf,
        #[arg(long, default_value_t = 1)]
        qubits_per_register: usize,
    },
    /// Search, pack, color and schedule, then report the bounds.
    Pipeline(PipelineArgs),
    /// Render a schedule or hypergraph JSON file as DOT.
    ExportDot { input: PathBuf },
    /// Phase and light-cone checks on diagonal circuits.
    #[command(subcommand)]
    VerifyPhase(PhaseCommand),
    /// Log-log fit of candidate counts against n.
    ScalingFit {
        /// JSON list of [n, count] pairs.
        points: PathBuf,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// JSON code bundle {"n", "s_x", "s_z"}.
    #[arg(required_unless_present_all = ["sx", "sz"], conflicts_with_all = ["sx", "sz"])]
    code: Option<PathBuf>,
    /// Plain-text s_x matrix ("rows cols" header then 0/1 rows).
    #[arg(long, requires = "sz")]
    sx: Option<PathBuf>,
    /// Plain-text s_z matrix.
    #[arg(long, requires = "sx")]
    sz: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Maximum number of candidate triples examined.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 100_000)]
    max_results: usize,
    /// Also try representatives shifted by up to this many stabilizers.
    #[arg(long, default_value_t = 0)]
    shift: usize,
    /// Use random sampling with this many attempts instead of enumeration.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum TriplesCommand {
    Search {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Three comma-separated bit strings, e.g. 0111,1011,1101.
        #[arg(long, required_unless_present = "triples")]
        triple: Option<String>,
        /// JSON list of triples.
        #[arg(long, conflicts_with = "triple")]
        triples: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "wirewise-full")]
    strategy: Strategy,
    #[command(flatten)]
    search: SearchArgs,
    /// Use these triples instead of searching (overrides triples pinned in
    /// the code bundle).
    #[arg(long)]
    triples: Option<PathBuf>,
    /// Block-local edge list for the explicit strategy (JSON [[a,b,c],...]).
    #[arg(long)]
    edges: Option<PathBuf>,
    #[arg(long)]
    registers: Option<usize>,
    #[arg(long)]
    qubits_per_register: Option<usize>,
    #[arg(long, env = "FOUNTAIN_DISTANCE_CUTOFF", default_value_t = DEFAULT_DISTANCE_CUTOFF)]
    distance_cutoff: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    X,
    Z,
}

#[derive(Subcommand)]
enum PhaseCommand {
    /// Compare the wirewise CCZ phase on x‖y‖z with the triple overlap.
    Wirewise {
        #[arg(long)]
        triple: String,
    },
    /// Exhaustive wirewise phase check for every triple with n ≤ max-n.
    Lemma {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Check that the circuit phase is constant on the triple's cosets.
    Constancy(CircuitTripleArgs),
    /// Logical phase polynomial in a basis adapted to the triple.
    LogicalAction(CircuitTripleArgs),
    /// Dense U†EU support against the light cone.
    Lightcone {
        /// Layered circuit JSON.
        #[arg(long)]
        circuit: PathBuf,
        /// Comma-separated 1-based qubits.
        #[arg(long)]
        support: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
}

#[derive(Args)]
struct CircuitTripleArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    triple: String,
    /// Circuit JSON on 3n qubits; defaults to the wirewise CCZ layer.
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long, env = "FOUNTAIN_PHASE_CUTOFF", default_value_t = DEFAULT_PHASE_CUTOFF)]
    cutoff: u64,
}

/// Result of one command: the JSON value, its text rendering, and whether
/// every embedded verification passed.
struct Emit {
    value: Value,
    text: String,
    ok: bool,
}

impl Emit {
    fn new<T: Serialize>(value: &T, text: String, ok: bool) -> anyhow::Result<Self> {
        Ok(Self {
            value: serde_json::to_value(value)?,
            text,
            ok,
        })
    }
}

#[derive(Debug)]
struct NoTriples(String);

impl std::fmt::Display for NoTriples {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "no magic-friendly triples: {}", self.0)
    }
}

impl std::error::Error for NoTriples {}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_code(args: &CodeArgs) -> anyhow::Result<CssCode> {
    Ok(load_bundle(args)?.0)
}

/// The code plus any triples pinned in a JSON bundle.
fn load_bundle(args: &CodeArgs) -> anyhow::Result<(CssCode, Vec<MagicFriendlyTriple>)> {
    match (&args.code, &args.sx, &args.sz) {
        (Some(path), _, _) => {
            let bundle: CodeBundle = read_json(path)?;
            let code = bundle.to_code()?;
            let triples = bundle.verified_triples(&code)?;
            Ok((code, triples))
        }
        (None, Some(sx), Some(sz)) => {
            let parse =
                |p: &PathBuf| parse_matrix_text(&read(p)?).with_context(|| p.display().to_string());
            Ok((CssCode::new(parse(sx)?, parse(sz)?)?, Vec::new()))
        }
        _ => bail!("give a JSON code bundle or both --sx and --sz"),
    }
}

fn parse_triple(s: &str) -> anyhow::Result<[BitVector; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [x, y, z] = parts[..] else {
        bail!("expected three comma-separated bit strings, got {s:?}");
    };
    Ok([x.parse()?, y.parse()?, z.parse()?])
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TripleList {
    Search(TripleSearch),
    Plain(Vec<MagicFriendlyTriple>),
}

fn load_triples(path: &Path) -> anyhow::Result<Vec<MagicFriendlyTriple>> {
    Ok(match read_json::<TripleList>(path)? {
        TripleList::Search(s) => s.triples,
        TripleList::Plain(v) => v,
    })
}

fn parse_support(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| anyhow!("bad qubit {p:?}: {e}"))
        })
        .collect()
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".into(), |v| v.to_string())
}

fn cmd_validate(args: &CodeArgs) -> anyhow::Result<Emit> {
    let code = load_code(args)?;
    let w = code.weights();
    #[derive(Serialize)]
    struct Report {
        valid: bool,
        n: usize,
        k: usize,
        rank_x: usize,
        rank_z: usize,
        weights: ccz_fountain::code::WeightSummary,
    }
    let report = Report {
        valid: true,
        n: code.n(),
        k: code.num_logicals(),
        rank_x: code.rank_x(),
        rank_z: code.rank_z(),
        weights: w,
    };
    let text = format!(
        "valid, n={}, k={}\nrank s_x={}, rank s_z={}\nmax weights: s_x row {} col {}, s_z row {} col {}\n",
        report.n, report.k, report.rank_x, report.rank_z, w.x_row, w.x_col, w.z_row, w.z_col
    );
    Emit::new(&report, text, true)
}

fn cmd_logicals(args: &CodeArgs) -> anyhow::Result<Emit> {
    let code = load_code(args)?;
    #[derive(Serialize)]
    struct Report<'a> {
        n: usize,
        k: usize,
        logical_x: &'a [BitVector],
    }
    let mut text = format!("n={}, k={}\n", code.n(), code.num_logicals());
    for (i, l) in code.logical_x_basis().iter().enumerate() {
        let _ = writeln!(text, "L{} {l}", i + 1);
    }
    Emit::new(
        &Report {
            n: code.n(),
            k: code.num_logicals(),
            logical_x: code.logical_x_basis(),
        },
        text,
        true,
    )
}

fn cmd_distance(args: &CodeArgs, cutoff: u64) -> anyhow::Result<Emit> {
    let code = load_code(args)?;
    let r = code.distance_exact(cutoff);
    let text = format!("d_x={} d_z={} d={}\n", opt(r.d_x), opt(r.d_z), opt(r.d));
    Emit::new(&r, text, true)
}

fn search(code: &CssCode, args: &SearchArgs) -> TripleSearch {
    match args.sample {
        Some(attempts) => {
            let triples = sample_triples(code, args.seed, attempts);
            TripleSearch {
                truncated: true,
                examined: attempts,
                candidates: 0,
                triples,
            }
        }
        None => enumerate_triples(
            code,
            &SearchBudget {
                max_examined: args.budget,
                max_results: args.max_results,
                stabilizer_shift: args.shift,
                ..SearchBudget::default()
            },
        ),
    }
}

fn cmd_triples_search(code: &CodeArgs, args: &SearchArgs) -> anyhow::Result<Emit> {
    let code = load_code(code)?;
    let s = search(&code, args);
    let mut text = format!(
        "{} triples ({} examined{})\n",
        s.triples.len(),
        s.examined,
        if s.truncated { ", truncated" } else { "" }
    );
    for t in &s.triples {
        let _ = writeln!(text, "{} {} {}", t.x(), t.y(), t.z());
    }
    Emit::new(&s, text, true)
}

fn cmd_triples_verify(
    code: &CodeArgs,
    triple: Option<&str>,
    triples: Option<&Path>,
) -> anyhow::Result<Emit> {
    let code = load_code(code)?;
    let inputs: Vec<[BitVector; 3]> = match (triple, triples) {
        (Some(t), _) => vec![parse_triple(t)?],
        (None, Some(p)) => load_triples(p)?
            .into_iter()
            .map(|t| [t.x().clone(), t.y().clone(), t.z().clone()])
            .collect(),
        (None, None) => bail!("give --triple or --triples"),
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    for [x, y, z] in &inputs {
        let r = verify_magic_friendly(&code, x, y, z)?;
        let _ = writeln!(
            text,
            "{x} {y} {z}: {} (in C_Z^perp {}, independent {}, orthogonal {}, odd overlap {}, inner {:?}, tau {})",
            if r.overall { "magic-friendly" } else { "not magic-friendly" },
            r.in_dual_z,
            r.independent,
            r.orthogonal,
            r.odd_overlap,
            r.inner_products,
            r.tau
        );
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.overall);
    let value: Value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])?
    } else {
        serde_json::to_value(&reports)?
    };
    Ok(Emit { value, text, ok })
}

fn cmd_pack(path: &Path) -> anyhow::Result<Emit> {
    let triples = load_triples(path)?;
    let n = triples
        .first()
        .map(MagicFriendlyTriple::len)
        .ok_or(ccz_fountain::Error::EmptyCollection)?;
    let r = greedy_pack(&triples, n)?;
    let supports: Vec<&[usize]> = triples
        .iter()
        .map(MagicFriendlyTriple::support_union)
        .collect();
    let verdict = verify_packing(&supports, &r.selected, n)?;
    #[derive(Serialize)]
    struct Report<'a> {
        packing: &'a ccz_fountain::PackingResult,
        verdict: &'a ccz_fountain::packing::PackingVerdict,
    }
    let s = &r.stats_used;
    let text = format!(
        "selected {} of {} (indices {})\nbound |S|/(M*b*n) = {} with M={}, a={}, b={}\ndisjoint {}, meets bound {}\n",
        r.selected_count(),
        s.count,
        join(&r.selected),
        r.guaranteed_lower_bound,
        s.participation,
        s.a,
        s.b,
        verdict.disjoint,
        verdict.meets_bound
    );
    Emit::new(
        &Report {
            packing: &r,
            verdict: &verdict,
        },
        text,
        verdict.ok,
    )
}

fn cmd_color(path: &Path) -> anyhow::Result<Emit> {
    let h = read_json::<HypergraphFile>(path)?.to_hypergraph()?;
    let (coloring, trace) = greedy_color_traced(&h);
    let verdict = verify_coloring(&h, &coloring);
    #[derive(Serialize)]
    struct Report<'a> {
        max_degree: usize,
        coloring: &'a ccz_fountain::EdgeColoring,
        verdict: &'a ccz_fountain::hypergraph::ColoringVerdict,
        min_slack: Option<usize>,
    }
    let min_slack = trace.iter().map(|s| s.available).min();
    let text = format!(
        "max degree {}, palette {} (bound {}), proper {}, min slack {}\ncolors {}\n",
        h.max_degree(),
        coloring.palette,
        verdict.palette_bound,
        verdict.proper,
        opt(min_slack),
        join(&coloring.color_of)
    );
    Emit::new(
        &Report {
            max_degree: h.max_degree(),
            coloring: &coloring,
            verdict: &verdict,
            min_slack,
        },
        text,
        verdict.ok,
    )
}

fn schedule_text(s: &ScheduleFile) -> String {
    let mut text = format!(
        "{} layers on {} registers\n",
        s.num_layers, s.register_count
    );
    for (i, layer) in s.layers.iter().enumerate() {
        let gates: Vec<String> = layer
            .iter()
            .map(|[a, b, c]| format!("({a},{b},{c})"))
            .collect();
        let _ = writeln!(text, "layer {}: {}", i + 1, gates.join(" "));
    }
    text
}

fn cmd_schedule(path: &Path, qubits_per_register: usize) -> anyhow::Result<Emit> {
    if qubits_per_register == 0 {
        bail!("--qubits-per-register must be positive");
    }
    let h = read_json::<HypergraphFile>(path)?.to_hypergraph()?;
    let coloring = greedy_color_traced(&h).0;
    let schedule = schedule_from_coloring(&h, &coloring)?;
    let file = ScheduleFile::new(
        &schedule,
        h.vertex_count().div_ceil(qubits_per_register),
        Some(qubits_per_register),
    );
    let text = schedule_text(&file);
    Emit::new(&file, text, true)
}

fn cmd_pipeline(args: &PipelineArgs) -> anyhow::Result<Emit> {
    let (code, pinned) = load_bundle(&args.code)?;
    let n = code.n();
    let mut pattern = match args.strategy {
        Strategy::Explicit => {
            let edges_path = args
                .edges
                .as_ref()
                .context("--strategy explicit needs --edges")?;
            let layout = RegisterLayout {
                registers: args.registers.unwrap_or(3),
                qubits_per_register: args.qubits_per_register.unwrap_or(n),
            };
            GatePattern::explicit(layout, read_json(edges_path)?)
        }
        s => GatePattern::for_strategy(s, n)?,
    };
    if args.strategy == Strategy::AbstractEdge {
        if let Some(r) = args.registers {
            pattern.layout.registers = r;
        }
        if let Some(q) = args.qubits_per_register {
            pattern.layout.qubits_per_register = q;
        }
    }

    let triples = match &args.triples {
        Some(path) => {
            let mut checked = Vec::new();
            for t in load_triples(path)? {
                let r = verify_magic_friendly(&code, t.x(), t.y(), t.z())?;
                if !r.overall {
                    bail!(
                        "supplied triple {} {} {} is not magic-friendly",
                        t.x(),
                        t.y(),
                        t.z()
                    );
                }
                checked.push(t);
            }
            checked
        }
        None if !pinned.is_empty() => pinned,
        None => search(&code, &args.search).triples,
    };
    if triples.is_empty() {
        let why = if code.num_logicals() < 3 {
            format!("the code has k={} < 3 logical qubits", code.num_logicals())
        } else {
            "the search found none within its budget".to_string()
        };
        return Err(NoTriples(why).into());
    }
    let report = run_pipeline(
        &code,
        &triples,
        &pattern,
        &PipelineOptions {
            distance_cutoff: args.distance_cutoff,
        },
    )?;
    let mut text = format!(
        "strategy {}\ntriples {}, selected {} (indices {})\nM={}, a={}, b={}, throughput bound {}\nd0={}, delta={}, palette bound {}, depth {}\ngates {} on {} vertices\n",
        report.strategy,
        report.input_count,
        report.selected_count,
        join(&report.selected),
        report.stats.participation,
        report.stats.a,
        report.stats.b,
        report.throughput_lower_bound,
        report.d0,
        report.delta,
        report.palette_bound,
        report.depth,
        report.gate_count,
        report.vertex_count,
    );
    let _ = writeln!(
        text,
        "distance {} -> bound d/3^L = {} (floor {})",
        opt(report.input_distance),
        opt(report.distance_lower_bound.as_ref()),
        opt(report.distance_floor)
    );
    let ok = report.delta <= report.d0 && report.depth <= report.palette_bound;
    Emit::new(&report, text, ok)
}

fn cmd_export_dot(path: &Path) -> anyhow::Result<Emit> {
    let value: Value = read_json(path)?;
    let (schedule, vertex_count) = if value.get("layers").is_some() {
        let s: ScheduleFile = serde_json::from_value(value)?;
        let max_vertex = s
            .layers
            .iter()
            .flatten()
            .flatten()
            .copied()
            .max()
            .unwrap_or(0);
        let vertices = s.register_count * s.qubits_per_register.unwrap_or(1);
        (s.schedule(), vertices.max(max_vertex))
    } else if value.get("edges").is_some() {
        let h = serde_json::from_value::<HypergraphFile>(value)?.to_hypergraph()?;
        let coloring = greedy_color_traced(&h).0;
        (schedule_from_coloring(&h, &coloring)?, h.vertex_count())
    } else {
        bail!("{} is neither a schedule nor a hypergraph", path.display());
    };
    let dot = schedule_to_dot(&schedule, vertex_count);
    Ok(Emit {
        value: Value::String(dot.clone()),
        text: dot,
        ok: true,
    })
}

fn load_circuit(code: &CssCode, path: Option<&PathBuf>) -> anyhow::Result<DiagonalCircuit> {
    match path {
        Some(p) => read_json(p),
        None => Ok(DiagonalCircuit::wirewise(code.n())),
    }
}

fn cmd_phase(cmd: &PhaseCommand) -> anyhow::Result<Emit> {
    match cmd {
        PhaseCommand::Wirewise { triple } => {
            let [x, y, z] = parse_triple(triple)?;
            let r = check_wirewise_phase(&x, &y, &z)?;
            let text = format!(
                "exponent {}, tau {}, match {}\n",
                r.exponent, r.tau, r.matches
            );
            Emit::new(&r, text, r.matches)
        }
        PhaseCommand::Lemma { max_n } => {
            if *max_n > 6 {
                bail!("--max-n above 6 is not supported (2^(3n) cases per n)");
            }
            #[derive(Serialize)]
            struct Report {
                max_n: usize,
                cases: u64,
                mismatches: u64,
            }
            let mut report = Report {
                max_n: *max_n,
                cases: 0,
                mismatches: 0,
            };
            for n in 1..=*max_n {
                let all = 1u64 << n;
                let vec = |m: u64| BitVector::from_bits((0..n).map(|i| (m >> i) & 1 == 1));
                for x in 0..all {
                    for y in 0..all {
                        for z in 0..all {
                            report.cases += 1;
                            if !check_wirewise_phase(&vec(x), &vec(y), &vec(z))?.matches {
                                report.mismatches += 1;
                            }
                        }
                    }
                }
            }
            let text = format!("{} cases, {} mismatches\n", report.cases, report.mismatches);
            let ok = report.mismatches == 0;
            Emit::new(&report, text, ok)
        }
        PhaseCommand::Constancy(args) => {
            let code = load_code(&args.code)?;
            let [x, y, z] = parse_triple(&args.triple)?;
            let triple = MagicFriendlyTriple::unchecked(x, y, z);
            let circuit = load_circuit(&code, args.circuit.as_ref())?;
            let c = check_coset_constancy(&code, &triple, &circuit, args.cutoff)?;
            let text = match &c {
                Constancy::Constant {
                    exponent,
                    evaluated,
                } => {
                    format!("constant exponent {exponent} over {evaluated} representatives\n")
                }
                Constancy::Counterexample {
                    base,
                    base_exponent,
                    other,
                    other_exponent,
                } => format!(
                    "not constant: {} {} {} -> {base_exponent}, {} {} {} -> {other_exponent}\n",
                    base[0], base[1], base[2], other[0], other[1], other[2]
                ),
                Constancy::Unknown { required, cutoff } => {
                    format!("unknown: {required} representatives exceed cutoff {cutoff}\n")
                }
            };
            let ok = c.is_constant();
            Emit::new(&c, text, ok)
        }
        PhaseCommand::LogicalAction(args) => {
            let code = load_code(&args.code)?;
            let [x, y, z] = parse_triple(&args.triple)?;
            let triple = MagicFriendlyTriple::new(&code, x, y, z)?;
            let circuit = load_circuit(&code, args.circuit.as_ref())?;
            let a = extract_logical_action(&code, &triple, &circuit, args.cutoff)?;
            let restriction: Vec<String> =
                a.restriction.iter().map(|m| a.format_monomial(m)).collect();
            let spectators: Vec<String> =
                a.spectators.iter().map(|m| a.format_monomial(m)).collect();
            let text = format!(
                "k={}, degree {}\nphase {a}\nrestriction to a1,b2,c3: {}\nCCZ on target: {}\nspectators ({}): {}\n",
                a.k,
                a.degree,
                if restriction.is_empty() { "0".into() } else { restriction.join(" + ") },
                a.restriction_is_ccz,
                spectators.len(),
                spectators.join(" + ")
            );
            let ok = a.restriction_is_ccz;
            Emit::new(&a, text, ok)
        }
        PhaseCommand::Lightcone {
            circuit,
            support,
            kind,
        } => {
            let circuit: DiagonalCircuit = read_json(circuit)?;
            let kind = match kind {
                KindArg::X => ErrorKind::XType,
                KindArg::Z => ErrorKind::ZType,
            };
            let r = lightcone_support_check(&circuit, &parse_support(support)?, kind)?;
            let text = format!(
                "depth {}, support of U^dag E U: {{{}}}, light cone {{{}}}, within cone {}, size {} <= {}: {}\n",
                r.depth,
                join(&r.conjugated_support),
                join(&r.light_cone),
                r.within_cone,
                r.conjugated_support.len(),
                r.size_bound,
                r.within_size_bound
            );
            let ok = r.ok;
            Emit::new(&r, text, ok)
        }
    }
}

fn cmd_scaling_fit(path: &Path) -> anyhow::Result<Emit> {
    let points: Vec<(f64, f64)> = read_json(path)?;
    let fit = scaling_fit(&points)?;
    let mut text = format!(
        "gamma {:.6} (beta = gamma), c1 {:.6}, slope {:.6}\n",
        fit.gamma_estimate, fit.c1_estimate, fit.slope
    );
    if !fit.gamma_positive {
        text.push_str("warning: gamma <= 0, no superlinear growth\n");
    }
    Emit::new(&fit, text, true)
}

fn run(cli: &Cli) -> anyhow::Result<Emit> {
    match &cli.command {
        Command::Validate(code) => cmd_validate(code),
        Command::Logicals(code) => cmd_logicals(code),
        Command::Distance { code, cutoff } => cmd_distance(code, *cutoff),
        Command::Triples(TriplesCommand::Search { code, search }) => {
            cmd_triples_search(code, search)
        }
        Command::Triples(TriplesCommand::Verify {
            code,
            triple,
            triples,
        }) => cmd_triples_verify(code, triple.as_deref(), triples.as_deref()),
        Command::Pack { triples } => cmd_pack(triples),
        Command::Color { hypergraph } => cmd_color(hypergraph),
        Command::Schedule {
            hypergraph,
            qubits_per_register,
        } => cmd_schedule(hypergraph, *qubits_per_register),
        Command::Pipeline(args) => cmd_pipeline(args),
        Command::ExportDot { input } => cmd_export_dot(input),
        Command::VerifyPhase(cmd) => cmd_phase(cmd),
        Command::ScalingFit { points } => cmd_scaling_fit(points),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(emit) => {
            let is_dot = matches!(cli.command, Command::ExportDot { .. });
            if cli.format == Format::Json && !is_dot {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&emit.value).expect("serializable")
                );
            } else {
                print!("{}", emit.text);
            }
            if emit.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<NoTriples>().is_some() {
                ExitCode::from(EXIT_NO_TRIPLES)
            } else {
                ExitCode::from(EXIT_INPUT)
            }
        }
    }
}
