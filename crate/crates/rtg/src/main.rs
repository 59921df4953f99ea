//! `rtg` — rainbow threshold graph tool.
//!
//! Construction (`build`), recognition (`recognize`, `min-index`),
//! neighborhood analysis (`neighborhood`), goodness (`good`), counting
//! bounds (`bounds`), separation witnesses (`witness`), enumeration
//! (`enum`, `graph-info`) and reproducible experiments (`experiment`).
//!
//! Exit codes: 0 success (and member for `recognize`); 1 non-member;
//! 2 invalid input or parameters; 3 budget exceeded. Payload goes to
//! stdout, diagnostics to stderr.

use clap::{Args, Parser, Subcommand};
use rtg::experiments::{self, ConfigFile};
use rtg::format::{self, to_hex};
use rtg::report::{BoundReportJson, PartitionJson, RationalJson};
use rtg::RtgError;
use rtg_core::goodness::BoundReport;
use rtg_core::{
    build_witness_set, certify_not_k_rainbow, class_bound, conflict_graph, is_ell_good_graph,
    is_ell_good_seq, is_ordered_k_rainbow, min_ordered_rainbow_index, neighborhood_partition,
    Budget, Graph, Meter, RainbowSequence,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "rtg", version, about = "rainbow threshold graph toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format for reports (`csv` applies to `experiment` only).
    #[arg(long, global = true, value_parser = ["json", "text", "csv"], default_value = "json")]
    format: String,
    /// Maximum sequence evaluations before giving up.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_sequences: u64,
    /// Maximum ordering/search nodes before giving up.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget_orderings: u64,
    /// Wall-clock limit per command, in seconds.
    #[arg(long, global = true, default_value_t = 60)]
    time_limit: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate the graph of a sequence (RTS in, RTG out).
    Build {
        input: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Basic facts about a graph file.
    GraphInfo {
        input: PathBuf,
        /// Also compute the canonical form (hex of the relabeled
        /// triangle bits).
        #[arg(long)]
        canonical: bool,
    },
    /// Enumerate the distinct graphs generated over a palette.
    Enum {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        /// Include the graphs themselves, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Decide membership for a palette size; exit 0 member, 1 not.
    Recognize {
        input: PathBuf,
        #[arg(long)]
        k: u32,
        /// Search over vertex orderings instead of the given one.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Least palette size generating the graph in its given order.
    MinIndex { input: PathBuf },
    /// Neighborhood partition of a vertex set relative to a cut set.
    Neighborhood {
        input: PathBuf,
        /// Cut set, e.g. --x 0,2,5
        #[arg(long)]
        x: String,
        /// Observed set; defaults to the complement of the cut set.
        #[arg(long)]
        a: Option<String>,
        /// Also report the class ceiling and certificate for palette k.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Window-goodness of a sequence (RTS) or graph (RTG, needs --k).
    Good {
        input: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        k: Option<u32>,
    },
    /// All closed-form bounds for one (k, n, ell) triple.
    Bounds {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Build a separation witness: a cut set certifying that the graph
    /// of an ell-good sequence over [k+1] matches no graph over [k].
    Witness {
        /// Palette size being ruled out.
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        /// Sequence file (RTS over k+1 colors); defaults to the cycling
        /// sequence.
        #[arg(long)]
        seq: Option<PathBuf>,
        /// Write the sequence that was used to this path.
        #[arg(long)]
        emit_seq: Option<PathBuf>,
    },
    /// Run experiments from a JSON config, or a single one given by
    /// flags.
    Experiment {
        /// JSON config file (a spec object or an array of them).
        config: Option<PathBuf>,
        /// Experiment name when no config file is given.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write a CSV rendering to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum CliError {
    Rtg(RtgError),
    Io(PathBuf, std::io::Error),
}

impl From<RtgError> for CliError {
    fn from(e: RtgError) -> CliError {
        CliError::Rtg(e)
    }
}

impl From<rtg_core::Error> for CliError {
    fn from(e: rtg_core::Error) -> CliError {
        CliError::Rtg(e.into())
    }
}

impl From<rtg::ParseError> for CliError {
    fn from(e: rtg::ParseError) -> CliError {
        CliError::Rtg(e.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Rtg(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

fn exit_code(err: &CliError) -> ExitCode {
    match err {
        CliError::Rtg(RtgError::Core(rtg_core::Error::BudgetExceeded(_))) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let deadline = Instant::now() + Duration::from_secs(cli.common.time_limit.max(1));
    let stop = move || Instant::now() > deadline;
    let budget = Budget::new(cli.common.budget_sequences, cli.common.budget_orderings);
    let mut meter = Meter::with_stop(budget, &stop);
    match run(cli.cmd, &cli.common.format, &mut meter) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).map_err(RtgError::from)?;
    println!("{json}");
    Ok(())
}

fn parse_vertices(list: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let mut out: Vec<usize> = Vec::new();
    for part in list.split(',').filter(|p| !p.trim().is_empty()) {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| RtgError::InvalidParams(format!("bad vertex '{part}'")))?;
        if v >= n {
            return Err(RtgError::InvalidParams(format!("vertex {v} outside [{n}]")).into());
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(format::parse_rtg_auto(&read(path)?)?)
}

fn load_sequence(path: &Path) -> Result<RainbowSequence, CliError> {
    Ok(format::parse_rts_auto(&read(path)?)?)
}

fn run(cmd: Cmd, format: &str, meter: &mut Meter) -> Result<ExitCode, CliError> {
    let text = format == "text";
    if format == "csv" && !matches!(cmd, Cmd::Experiment { .. }) {
        return Err(RtgError::InvalidParams("csv output is for `experiment` only".into()).into());
    }
    match cmd {
        Cmd::Build { input, output } => {
            let seq = load_sequence(&input)?;
            let graph = seq.to_graph();
            let payload = if text {
                format::write_rtg(&graph)
            } else {
                serde_json::to_string_pretty(&format::write_rtg_json(&graph))
                    .map_err(RtgError::from)?
                    + "\n"
            };
            match output {
                Some(path) => write_out(&path, &payload)?,
                None => print!("{payload}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::GraphInfo { input, canonical } => {
            let g = load_graph(&input)?;
            #[derive(Serialize)]
            struct Info {
                n: usize,
                edges: usize,
                degrees: Vec<usize>,
                isolated: usize,
                dominating: usize,
                conflict_edges: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                canonical_hex: Option<String>,
            }
            let info = Info {
                n: g.n(),
                edges: g.edge_count(),
                degrees: g.degrees(),
                isolated: (0..g.n()).filter(|&v| g.is_isolated(v)).count(),
                dominating: (0..g.n()).filter(|&v| g.is_dominating(v)).count(),
                conflict_edges: conflict_graph(&g).graph().edge_count(),
                canonical_hex: if canonical {
                    Some(to_hex(&rtg_core::canonical_form(&g, meter)?))
                } else {
                    None
                },
            };
            if text {
                println!("n: {}", info.n);
                println!("edges: {}", info.edges);
                println!(
                    "degrees: {}",
                    info.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
                );
                println!("isolated: {}", info.isolated);
                println!("dominating: {}", info.dominating);
                println!("conflict edges: {}", info.conflict_edges);
                if let Some(hex) = &info.canonical_hex {
                    println!("canonical: {hex}");
                }
            } else {
                emit(&info)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Enum { k, n, list } => {
            let graphs = rtg_core::enumerate_graphs(k, n, meter)?;
            #[derive(Serialize)]
            struct EnumOut {
                k: u32,
                n: usize,
                count: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                graphs: Option<Vec<format::RtgJson>>,
            }
            let out = EnumOut {
                k,
                n,
                count: graphs.len(),
                graphs: list.then(|| graphs.iter().map(format::write_rtg_json).collect()),
            };
            if text {
                println!("count: {}", out.count);
                if list {
                    for g in &graphs {
                        print!("{}", format::write_rtg(g));
                    }
                }
            } else {
                emit(&out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Recognize { input, k, up_to_iso } => {
            if k > 64 {
                return Err(RtgError::InvalidParams("palette sizes above 64 unsupported".into())
                    .into());
            }
            let g = load_graph(&input)?;
            #[derive(Serialize)]
            struct Recognition {
                member: bool,
                up_to_iso: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<format::RtsJson>,
                #[serde(skip_serializing_if = "Option::is_none")]
                min_index: Option<u32>,
            }
            let (member, witness, min_index) = if up_to_iso {
                (rtg_core::is_k_rainbow_up_to_iso(&g, k, meter)?, None, None)
            } else {
                let witness =
                    is_ordered_k_rainbow(&g, k).map(|w| format::write_rts_json(&w.canonicalize()));
                let min_index = min_ordered_rainbow_index(&g, meter)?;
                (witness.is_some(), witness, Some(min_index))
            };
            let out = Recognition { member, up_to_iso, witness, min_index };
            if text {
                println!("member: {member}");
                if let Some(mi) = out.min_index {
                    println!("min index: {mi}");
                }
            } else {
                emit(&out)?;
            }
            Ok(if member { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::MinIndex { input } => {
            let g = load_graph(&input)?;
            let min_index = min_ordered_rainbow_index(&g, meter)?;
            #[derive(Serialize)]
            struct MinIndex {
                min_index: u32,
            }
            if text {
                println!("min index: {min_index}");
            } else {
                emit(&MinIndex { min_index })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Neighborhood { input, x, a, k } => {
            if k.is_some_and(|k| k > 64) {
                return Err(RtgError::InvalidParams("palette sizes above 64 unsupported".into())
                    .into());
            }
            let g = load_graph(&input)?;
            let x = parse_vertices(&x, g.n())?;
            let a = match a {
                Some(list) => parse_vertices(&list, g.n())?,
                None => (0..g.n()).filter(|v| x.binary_search(v).is_err()).collect(),
            };
            let partition = neighborhood_partition(&g, &a, &x)?;
            #[derive(Serialize)]
            struct Neighborhood {
                x: Vec<usize>,
                partition: PartitionJson,
                #[serde(skip_serializing_if = "Option::is_none")]
                class_bound: Option<RationalJson>,
                #[serde(skip_serializing_if = "Option::is_none")]
                exceeds_bound: Option<bool>,
            }
            let out = Neighborhood {
                partition: (&partition).into(),
                class_bound: k.map(|k| (&class_bound(k, x.len())).into()),
                exceeds_bound: match k {
                    Some(k) => Some(certify_not_k_rainbow(&g, &x, k)?),
                    None => None,
                },
                x,
            };
            if text {
                println!("classes: {}", out.partition.class_count);
                for block in &out.partition.blocks {
                    println!(
                        "  {}",
                        block.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                    );
                }
                if let Some(b) = &out.class_bound {
                    println!("bound: {}", b.decimal);
                }
                if let Some(e) = out.exceeds_bound {
                    println!("exceeds bound: {e}");
                }
            } else {
                emit(&out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Good { input, ell, k } => {
            if k.is_some_and(|k| k > 64) {
                return Err(RtgError::InvalidParams("palette sizes above 64 unsupported".into())
                    .into());
            }
            if ell < 1 {
                return Err(RtgError::InvalidParams("ell must be positive".into()).into());
            }
            let contents = read(&input)?;
            let looks_like_graph = contents.trim_start().starts_with("RTG")
                || contents.contains("\"RTG\"");
            let ell_good = if looks_like_graph {
                let g = format::parse_rtg_auto(&contents)?;
                let k = k.ok_or_else(|| {
                    RtgError::InvalidParams("graph input needs --k".into())
                })?;
                is_ell_good_graph(&g, k, ell, meter)?
            } else {
                let seq = format::parse_rts_auto(&contents)?;
                is_ell_good_seq(&seq, ell)
            };
            #[derive(Serialize)]
            struct Good {
                ell: usize,
                ell_good: bool,
            }
            if text {
                println!("ell-good: {ell_good}");
            } else {
                emit(&Good { ell, ell_good })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bounds { k, n, ell } => {
            if k < 1 || ell < 1 || n < 1 {
                return Err(
                    RtgError::InvalidParams("need k >= 1, n >= 1, ell >= 1".into()).into()
                );
            }
            if k > 16 {
                return Err(RtgError::InvalidParams("bounds support k <= 16".into()).into());
            }
            let report = BoundReport::evaluate(k, n, ell);
            let json = BoundReportJson::from(&report);
            if text {
                println!("delta: {}", json.delta.decimal);
                println!("non-good sequences <= {}", json.non_good_seq_upper.decimal);
                println!(
                    "good graphs >= {}{}",
                    json.good_graph_lower.decimal,
                    if json.good_graph_lower_vacuous { " (vacuous)" } else { "" }
                );
                match &json.non_good_fraction_upper {
                    Some(f) => println!("non-good graph fraction <= {}", f.decimal),
                    None => println!("non-good graph fraction bound undefined (delta >= 1)"),
                }
                println!(
                    "hypotheses: window_ratio={} min_n={} proposition={}",
                    json.hypotheses.window_ratio_ok,
                    json.hypotheses.n_large_enough,
                    json.hypotheses.proposition_ok
                );
                println!("asymptotic bound log2: {}", json.aas_log2);
            } else {
                emit(&json)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Witness { k, n, ell, seq, emit_seq } => {
            if k < 1 || ell < 1 {
                return Err(RtgError::InvalidParams("need k >= 1, ell >= 1".into()).into());
            }
            let sequence = match seq {
                Some(path) => load_sequence(&path)?,
                None => RainbowSequence::cycling(k + 1, n)?,
            };
            if sequence.k() != k + 1 {
                return Err(RtgError::InvalidParams(format!(
                    "sequence palette {} does not match k+1 = {}",
                    sequence.k(),
                    k + 1
                ))
                .into());
            }
            if let Some(path) = &emit_seq {
                write_out(path, &format::write_rts(&sequence))?;
            }
            let witness = build_witness_set(&sequence, ell)?;
            let graph = sequence.to_graph();
            let x = witness.vertices().to_vec();
            let complement: Vec<usize> =
                (0..graph.n()).filter(|v| x.binary_search(v).is_err()).collect();
            let classes = neighborhood_partition(&graph, &complement, &x)?.class_count();
            let certified = certify_not_k_rainbow(&graph, &x, k)?;
            #[derive(Serialize)]
            struct WitnessOut {
                k: u32,
                n: usize,
                ell: usize,
                t: usize,
                x: Vec<usize>,
                class_count: usize,
                class_bound: RationalJson,
                certified: bool,
            }
            let out = WitnessOut {
                k,
                n,
                ell,
                t: x.len(),
                class_bound: (&class_bound(k, x.len())).into(),
                x,
                class_count: classes,
                certified,
            };
            if text {
                println!("t: {}", out.t);
                println!("classes: {} vs bound {}", out.class_count, out.class_bound.decimal);
                println!("certified: {}", out.certified);
            } else {
                emit(&out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Experiment { config, name, k, n, ell, trials, seed, csv } => {
            let specs = match (config, name) {
                (Some(path), None) => {
                    let parsed: ConfigFile =
                        serde_json::from_str(&read(&path)?).map_err(RtgError::from)?;
                    parsed.into_specs()
                }
                (None, Some(name)) => {
                    let (Some(k), Some(n)) = (k, n) else {
                        return Err(RtgError::InvalidParams(
                            "flag mode needs --k and --n".into(),
                        )
                        .into());
                    };
                    vec![rtg::ExperimentSpec { experiment: name, k, n, ell, trials, seed }]
                }
                _ => {
                    return Err(RtgError::InvalidParams(
                        "give either a config file or --name (not both)".into(),
                    )
                    .into())
                }
            };
            let reports = experiments::run_report(&specs, meter)?;
            for r in &reports {
                eprintln!(
                    "{} k={} n={} done in {:.1} ms",
                    r.experiment, r.k, r.n, r.wall_ms
                );
            }
            if let Some(path) = csv {
                write_out(&path, &experiments::reports_to_csv(&reports))?;
            }
            match format {
                "csv" => print!("{}", experiments::reports_to_csv(&reports)),
                "text" => {
                    for r in &reports {
                        let ell = r.ell.map_or(String::new(), |e| format!(" ell={e}"));
                        println!("{} k={} n={}{} [{}]", r.experiment, r.k, r.n, ell, r.mode);
                        for m in &r.metrics {
                            let mut line = format!("  {}", m.name);
                            if let (Some(c), Some(p)) = (m.count, m.population) {
                                line.push_str(&format!(" = {c}/{p}"));
                            } else if let Some(c) = m.count {
                                line.push_str(&format!(" = {c}"));
                            }
                            if let Some(v) = &m.value {
                                line.push_str(&format!(" ({})", v.decimal));
                            }
                            if let Some(e) = m.estimate {
                                line.push_str(&format!(" estimate {e}"));
                            }
                            if let (Some(lo), Some(hi)) = (m.ci_low, m.ci_high) {
                                line.push_str(&format!(" ci [{lo:.5}, {hi:.5}]"));
                            }
                            println!("{line}");
                        }
                        if !r.flags.is_empty() {
                            println!("  flags: {}", r.flags.join(", "));
                        }
                    }
                }
                _ => emit(&reports)?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
