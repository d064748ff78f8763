use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ucf::algorithm::ComputeInput;
use ucf::classify::Snapshot;
use ucf::error::UcfError;
use ucf::oracle::{run_suite, OracleSuite};
use ucf::render::{render_trace, FrameSelection};
use ucf::report::class_report;
use ucf::simulator::{run, run_batch, AdversaryName, BatchCell, BatchSpec, ExecutionTrace, Outcome, RunSpec};

#[derive(Parser)]
#[command(name = "ucf", version, about = "Uniform circle formation: simulate, classify, cross-check, render")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate one run and write its trace.
    Run {
        /// Run specification (JSON).
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        adversary: Option<AdversaryName>,
        #[arg(long)]
        max_cycles: Option<u64>,
        /// Directory for trace.jsonl.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a grid of swarm sizes and adversaries over many seeds; print CSV.
    Batch {
        /// Batch specification (JSON). Without it every supported size up to 12 is run.
        #[arg(long)]
        config: Option<PathBuf>,
        /// First seed of every cell.
        #[arg(long)]
        seed: Option<u64>,
        /// Runs per cell.
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long)]
        adversary: Option<AdversaryName>,
        #[arg(long)]
        max_cycles: Option<u64>,
        /// Directory for batch.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a snapshot and print the details as JSON.
    Classify {
        /// Snapshot (JSON with a "points" array).
        #[arg(long)]
        config: PathBuf,
    },
    /// Cross-check the implementation against reference computations.
    Oracle {
        /// sec, classify, pre-regular, injected-bug or all.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances.
        #[arg(long)]
        seeds: Option<usize>,
        /// Directory for the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw SVG frames of a trace.
    Render {
        /// Trace file (JSON lines).
        trace: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// freeze or every-K.
        #[arg(long, default_value = "freeze")]
        frames: FrameSelection,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: 1, message: format!("{}: {e}", path.display()) }
    }
}

impl From<UcfError> for Failure {
    fn from(e: UcfError) -> Self {
        let code = if matches!(e, UcfError::UnsupportedSwarmSize(_)) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

type Status = Result<u8, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
}

fn write_file(dir: &Path, name: &str, content: &[u8]) -> Result<PathBuf, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, content).map_err(|e| Failure::io(&path, e))?;
    Ok(path)
}

fn cmd_run(config: &Path, seed: Option<u64>, adversary: Option<AdversaryName>, max_cycles: Option<u64>, out: Option<&Path>) -> Status {
    let mut spec: RunSpec = read_json(config)?;
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(a) = adversary {
        spec.adversary = a;
    }
    if let Some(m) = max_cycles {
        spec.max_cycles = m;
    }
    let cfg = spec.to_config()?;
    cfg.validate()?;
    let start = Instant::now();
    let r = run(&cfg);
    let wall = start.elapsed();
    if let Some(dir) = out {
        let path = write_file(dir, "trace.jsonl", r.trace.to_jsonl().as_bytes())?;
        log::info!("trace written to {}", path.display());
    }
    let name = match &r.outcome {
        Outcome::CollisionDetected { pair } => format!("CollisionDetected({},{})", pair.0, pair.1),
        Outcome::ComputeFailed { robot, reason } => format!("ComputeFailed({robot}: {reason})"),
        o => format!("{o:?}"),
    };
    println!(
        "outcome={name} cycles={} events={} deviation={:.3e} wall_ms={}",
        r.cycles,
        r.stats.events,
        r.stats.final_deviation,
        wall.as_millis()
    );
    Ok(match r.outcome {
        Outcome::ReachedRegular => 0,
        Outcome::UnsupportedSize => 3,
        Outcome::CollisionDetected { .. } => 5,
        _ => 1,
    })
}

fn cmd_batch(
    config: Option<&Path>,
    seed: Option<u64>,
    seeds: Option<u64>,
    adversary: Option<AdversaryName>,
    max_cycles: Option<u64>,
    out: Option<&Path>,
) -> Status {
    let mut spec = match config {
        Some(p) => read_json::<BatchSpec>(p)?,
        None => BatchSpec {
            cells: [3, 5, 6, 7, 8, 9, 12]
                .into_iter()
                .map(|n| BatchCell { n, adversary: AdversaryName::Async, seeds: 10 })
                .collect(),
            first_seed: 0,
            max_cycles: 50_000,
        },
    };
    for c in &mut spec.cells {
        if let Some(a) = adversary {
            c.adversary = a;
        }
        if let Some(s) = seeds {
            c.seeds = s;
        }
    }
    if let Some(s) = seed {
        spec.first_seed = s;
    }
    if let Some(m) = max_cycles {
        spec.max_cycles = m;
    }
    let rows = run_batch(&spec)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).map_err(|e| Failure::config(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::config(e.to_string()))?;
    print!("{}", String::from_utf8_lossy(&bytes));
    if let Some(dir) = out {
        write_file(dir, "batch.csv", &bytes)?;
    }
    Ok(if rows.iter().all(|r| r.zero_collisions) { 0 } else { 5 })
}

fn cmd_classify(config: &Path) -> Status {
    let input: ComputeInput = read_json(config)?;
    let s = Snapshot::new(input.points, input.tol)?;
    let report = class_report(&s)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(0)
}

fn cmd_oracle(suite: &str, seed: u64, count: Option<usize>, out: Option<&Path>) -> Status {
    let suites: Vec<OracleSuite> = match suite {
        "all" => vec![OracleSuite::Sec, OracleSuite::Classify, OracleSuite::PreRegular],
        s => vec![OracleSuite::from_name(s).ok_or_else(|| Failure::config(format!("unknown suite {s:?}")))?],
    };
    let mut failed = false;
    let mut reports = Vec::new();
    for s in suites {
        let default = match s {
            OracleSuite::Sec => 1000,
            OracleSuite::InjectedBug => 100,
            _ => 500,
        };
        let r = run_suite(s, seed, count.unwrap_or(default));
        println!(
            "suite={} checked={} mismatches={} {}",
            s.name(),
            r.checked,
            r.mismatches.len(),
            if r.passed() { "PASS" } else { "FAIL" }
        );
        if let Some(c) = r.mismatches.first() {
            println!("counterexample: {}", serde_json::to_string(c).expect("counterexample serializes"));
            failed = true;
        }
        reports.push(r);
    }
    if let Some(dir) = out {
        let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
        write_file(dir, "oracle.json", json.as_bytes())?;
    }
    Ok(if failed { 4 } else { 0 })
}

fn cmd_render(trace: &Path, out: &Path, frames: FrameSelection) -> Status {
    let file = fs::File::open(trace).map_err(|e| Failure::io(trace, e))?;
    let t = ExecutionTrace::read_jsonl(BufReader::new(file))?;
    let frames = render_trace(&t, frames);
    fs::create_dir_all(out).map_err(|e| Failure::io(out, e))?;
    for f in &frames {
        write_file(out, &format!("frame_{:06}.svg", f.event), f.svg.as_bytes())?;
    }
    println!("frames={}", frames.len());
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("UCF_LOG", "error")).init();
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Run { config, seed, adversary, max_cycles, out } => cmd_run(config, *seed, *adversary, *max_cycles, out.as_deref()),
        Cmd::Batch { config, seed, seeds, adversary, max_cycles, out } => {
            cmd_batch(config.as_deref(), *seed, *seeds, *adversary, *max_cycles, out.as_deref())
        }
        Cmd::Classify { config } => cmd_classify(config),
        Cmd::Oracle { suite, seed, seeds, out } => cmd_oracle(suite, *seed, *seeds, out.as_deref()),
        Cmd::Render { trace, out, frames } => cmd_render(trace, out, *frames),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ucf: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
