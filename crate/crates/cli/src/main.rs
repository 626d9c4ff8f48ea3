//! `snc`: analyze, enumerate, generate and search oriented graphs.
//!
//! Exit status is 0 when every check passed, 1 when a check failed or a
//! counterexample was found, and 2 for usage or input errors.

mod config;

/// `println!` that ignores write errors such as a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use snc_core::analysis::{conjecture_status, sinks, triangle_stats, tt_sufficiency, TriangleStats, TtSufficiency};
use snc_core::generators::{CrossDistribution, Family, GenSpec, YKind};
use snc_core::harness::{
    archive_failures, exhaustive_check, montecarlo_2king, random_search, FailureRecord, Space,
    SweepOptions, VerificationReport,
};
use snc_core::suite::{run_suite, Level, SuiteOptions};
use snc_core::{Check, DegreeProfile, Digraph, GraphFile, GraphFormat, Outcome, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "snc", version, about = "Second-neighbourhood checks for oriented graphs")]
struct Cli {
    /// Worker threads for sweeps (default: all available cores).
    #[arg(long, global = true, env = "SNC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degrees, special vertices and triangle counts of one graph.
    #[command(args_override_self = true)]
    Analyze {
        /// Graph file (arc list or digraph6); `-` reads standard input.
        file: PathBuf,
        #[arg(long)]
        format: Option<GraphFormat>,
        #[arg(long)]
        json: bool,
    },
    /// Run checks over every labeled graph of one order.
    #[command(args_override_self = true)]
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Comma-separated check names.
        #[arg(long)]
        check: String,
        /// Index range `lo:hi` of the enumeration.
        #[arg(long)]
        range: Option<String>,
        /// Enumerate tournaments instead of all oriented graphs.
        #[arg(long)]
        tournaments: bool,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Emit one graph of a family.
    #[command(args_override_self = true)]
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "arclist")]
        format: GraphFormat,
    },
    /// Run checks on random instances of a family.
    #[command(args_override_self = true)]
    Search {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: ReportArgs,
    },
    /// Estimate how often vertex 0 of a random oriented graph is not a 2-king.
    #[command(args_override_self = true)]
    Montecarlo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance suite.
    #[command(name = "verify-all", args_override_self = true)]
    VerifyAll {
        #[arg(long, default_value = "quick")]
        level: Level,
        #[arg(long)]
        json: bool,
        /// Directory for failing instances.
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// Re-run the check recorded in a failure archive file.
    #[command(args_override_self = true)]
    Replay { file: PathBuf },
}

const SUBCOMMANDS: [&str; 7] = [
    "analyze",
    "enumerate",
    "generate",
    "search",
    "montecarlo",
    "verify-all",
    "replay",
];

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long)]
    json: bool,
    /// Directory where failing instances are written.
    #[arg(long)]
    archive: Option<PathBuf>,
    /// Failures kept in the report (all are counted).
    #[arg(long, default_value_t = 100)]
    max_failures: usize,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_parser = Family::TAGS)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    /// Arc probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    x_size: Option<usize>,
    #[arg(long)]
    y_size: Option<usize>,
    /// How the tournament side of a split graph is built.
    #[arg(long, default_value = "random", value_parser = ["random", "regular", "almost-regular"])]
    y_kind: String,
    /// Cross-pair probabilities of split graphs: none, x -> y, y -> x.
    #[arg(long)]
    q_none: Option<f64>,
    #[arg(long)]
    q_xy: Option<f64>,
    #[arg(long)]
    q_yx: Option<f64>,
    /// Probability of x -> y in complete split graphs.
    #[arg(long, default_value_t = 0.5)]
    x_to_y: f64,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, String> {
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| format!("--family {} needs --{flag}", self.family));
        let y_kind = match self.y_kind.as_str() {
            "regular" => YKind::Regular,
            "almost-regular" => YKind::AlmostRegular,
            _ => YKind::Random,
        };
        Ok(match self.family.as_str() {
            "oriented-random" => Family::OrientedRandom {
                n: need(self.n, "n")?,
                p: self.p,
            },
            "tournament-random" => Family::TournamentRandom { n: need(self.n, "n")? },
            "circulant-regular" => Family::CirculantRegular { n: need(self.n, "n")? },
            "almost-regular" => Family::AlmostRegular { n: need(self.n, "n")? },
            "split" => {
                let cross = match (self.q_none, self.q_xy, self.q_yx) {
                    (None, None, None) => CrossDistribution::UNIFORM,
                    (Some(a), Some(b), Some(c)) => CrossDistribution::new(a, b, c).map_err(|e| e.to_string())?,
                    _ => return Err("give all of --q-none, --q-xy, --q-yx or none".into()),
                };
                Family::Split {
                    x_size: need(self.x_size, "x-size")?,
                    y_size: need(self.y_size, "y-size")?,
                    y_kind,
                    cross,
                }
            }
            "complete-split" => Family::CompleteSplit {
                x_size: need(self.x_size, "x-size")?,
                y_size: need(self.y_size, "y-size")?,
                y_kind,
                x_to_y: self.x_to_y,
            },
            "planar-orientation" => Family::PlanarOrientation { n: need(self.n, "n")? },
            "bipartite-orientation" => Family::BipartiteOrientation {
                n1: need(self.n1, "n1")?,
                n2: need(self.n2, "n2")?,
                p: self.p,
            },
            other => return Err(format!("unknown family `{other}`")),
        })
    }
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args().collect(), &SUBCOMMANDS) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(passed)`, or an input error.
fn run(cli: Cli) -> Result<bool, String> {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    match cli.command {
        Command::Analyze { file, format, json } => analyze(&file, format, json),
        Command::Enumerate {
            n,
            check,
            range,
            tournaments,
            out,
        } => {
            let checks = Check::parse_list(&check).map_err(|e| e.to_string())?;
            let range = range.as_deref().map(parse_range).transpose()?;
            let space = if tournaments { Space::Tournaments } else { Space::Oriented };
            let opts = SweepOptions {
                threads,
                max_failures: out.max_failures,
            };
            let report = exhaustive_check(space, n, &checks, range, &opts).map_err(|e| e.to_string())?;
            emit_report(&report, &out)
        }
        Command::Generate {
            family,
            seed,
            output,
            format,
        } => {
            let spec = GenSpec::new(family.family()?, seed);
            let inst = spec.generate().map_err(|e| e.to_string())?;
            let mut payload = Vec::new();
            if format == GraphFormat::Arclist {
                payload.extend(format!("# {} seed {seed}\n", spec.family.tag()).into_bytes());
                if let Some(x) = inst.split_x {
                    payload.extend(format!("# split-x: {}\n", ids(&x)).into_bytes());
                }
            }
            payload.extend(GraphFile::encode(&inst.graph, format).payload);
            match output {
                Some(path) => fs::write(&path, payload).map_err(|e| format!("{}: {e}", path.display()))?,
                None => {
                    let _ = io::stdout().write_all(&payload);
                }
            }
            Ok(true)
        }
        Command::Search {
            family,
            trials,
            check,
            seed,
            out,
        } => {
            let checks = Check::parse_list(&check).map_err(|e| e.to_string())?;
            let spec = GenSpec::new(family.family()?, seed);
            let opts = SweepOptions {
                threads,
                max_failures: out.max_failures,
            };
            let report = random_search(&spec, trials, &checks, &opts).map_err(|e| e.to_string())?;
            emit_report(&report, &out)
        }
        Command::Montecarlo {
            n,
            p,
            trials,
            seed,
            json,
        } => {
            let r = montecarlo_2king(n, p, trials, seed, threads).map_err(|e| e.to_string())?;
            if json {
                print_json(&r)?;
            } else {
                say!("n = {n}, p = {p}, trials = {trials}, seed = {seed}");
                say!(
                    "vertex 0 not a 2-king: {} / {trials} = {:.6} ± {:.6}",
                    r.no_2king_from_u_count, r.empirical_p_no_2king, r.std_error
                );
                say!("expectation bound:     {:.6}", r.markov_bound);
                say!(
                    "no 2-king at all:      {} / {trials} = {:.6}",
                    r.graphs_without_2king, r.empirical_p_graph_no_2king
                );
                say!(
                    "within bound + 4σ:     {}",
                    if r.within_bound { "yes" } else { "no" }
                );
            }
            Ok(r.within_bound)
        }
        Command::VerifyAll { level, json, archive } => {
            let opts = SuiteOptions {
                level,
                threads,
                archive_dir: archive,
            };
            let results = run_suite(&opts);
            let passed = results.iter().all(|r| r.passed);
            if json {
                #[derive(Serialize)]
                struct Suite<'a> {
                    level: Level,
                    passed: bool,
                    criteria: &'a [snc_core::suite::CriterionResult],
                }
                print_json(&Suite {
                    level,
                    passed,
                    criteria: &results,
                })?;
            } else {
                for r in &results {
                    say!("{}", r.line());
                }
            }
            Ok(passed)
        }
        Command::Replay { file } => {
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let record = FailureRecord::from_archive(&text).map_err(|e| e.to_string())?;
            match record.replay().map_err(|e| e.to_string())? {
                Outcome::Fail(f) => {
                    say!("{} fails: {}", record.check, f.details);
                    Ok(false)
                }
                Outcome::Pass => {
                    say!("{} passes; failure does not reproduce", record.check);
                    Ok(true)
                }
                Outcome::NotApplicable => {
                    say!("{} does not apply; failure does not reproduce", record.check);
                    Ok(true)
                }
            }
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let bad = || format!("bad range `{s}`, expected lo:hi");
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn ids(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    say!("{text}");
    Ok(())
}

fn emit_report(report: &VerificationReport, out: &ReportArgs) -> Result<bool, String> {
    if let Some(dir) = &out.archive {
        let paths = archive_failures(report, dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        for p in paths {
            eprintln!("archived {}", p.display());
        }
    }
    if out.json {
        print_json(report)?;
    } else {
        say!("{report}");
    }
    Ok(report.passed())
}

fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<Digraph, String> {
    let mut payload = Vec::new();
    if path == Path::new("-") {
        io::stdin().read_to_end(&mut payload).map_err(|e| e.to_string())?;
    } else {
        payload = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let file = match format {
        Some(format) => GraphFile { format, payload },
        None => GraphFile::detect(payload),
    };
    file.decode().map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    arcs: usize,
    tt: u64,
    sullivan_vertices: VertexSet,
    seymour_vertices: VertexSet,
    two_kings: VertexSet,
    sources: VertexSet,
    sinks: VertexSet,
    holds_sullivan: bool,
    holds_seymour: bool,
    triangle_stats: TriangleStats,
    tt_sufficiency: TtSufficiency,
    vertices: Vec<DegreeProfile>,
}

fn analyze(path: &Path, format: Option<GraphFormat>, json: bool) -> Result<bool, String> {
    let g = read_graph(path, format)?;
    let status = conjecture_status(&g);
    let stats = triangle_stats(&g);
    let a = Analysis {
        n: g.order(),
        arcs: g.arc_count(),
        tt: stats.tt_total,
        sullivan_vertices: status.sullivan_vertices,
        seymour_vertices: status.seymour_vertices,
        two_kings: status.two_kings,
        sources: status.sources,
        sinks: sinks(&g),
        holds_sullivan: status.holds_sullivan,
        holds_seymour: status.holds_seymour,
        tt_sufficiency: tt_sufficiency(&g),
        triangle_stats: stats,
        vertices: (0..g.order())
            .map(|u| g.degree_profile(u, None).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?,
    };
    if json {
        print_json(&a)?;
    } else {
        say!("n = {}, |A| = {}, tt = {}", a.n, a.arcs, a.tt);
        say!("Sullivan vertices: {}", a.sullivan_vertices);
        say!("Seymour vertices:  {}", a.seymour_vertices);
        say!("2-kings:           {}", a.two_kings);
        say!("sources: {}  sinks: {}", a.sources, a.sinks);
        say!(
            "tt < |A|: {}",
            if a.tt_sufficiency.guaranteed { "yes" } else { "no" }
        );
        say!("vertex  d+  d-  d++  d--");
        for p in &a.vertices {
            say!("{:>6} {:>3} {:>3} {:>4} {:>4}", p.vertex, p.d_plus, p.d_minus, p.d_pp, p.d_mm);
        }
    }
    Ok(a.holds_sullivan && a.holds_seymour)
}
