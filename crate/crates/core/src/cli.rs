//! Command-line front end. [`run`] takes the argument list and output sinks so
//! it can be exercised without spawning a process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::codegen::{build_code, Certainty, StabilizerCode};
use crate::distance::{code_distance, DistanceOptions, ExactConfig, ExactMethod};
use crate::io::export::{export_checks, ExportFormat};
use crate::io::spec::{parse_spec, ParsedSpec};
use crate::io::svg::render_svg;
use crate::layouts::{Layout, LayoutSpec};
use crate::search::{
    run_search, verify_table_document, SearchConfig, SearchMode, TableDocument, TABLE_WEIGHT6,
    TABLE_WEIGHT8,
};
use crate::tiles::{tiles_from_polynomials, PolynomialSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_TRIALS: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "tilekit", version, about = "Build and analyze tile codes")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "TILEKIT_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the code described by a spec file and print n, k and trimming statistics.
    Build {
        /// JSON code document.
        spec: PathBuf,
    },
    /// Estimate (and optionally prove) the distance.
    Analyze(AnalyzeArgs),
    /// Search tiles of a given box and weight.
    Search(SearchArgs),
    /// Check a table of tile pairs against its claimed parameters.
    VerifyTable {
        /// Table file, or `builtin:weight6` / `builtin:weight8`.
        table: String,
        /// Override the table's trial count.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Build the code of two univariate polynomials.
    Hgp(HgpArgs),
    /// Write H_X and H_Z as sparse matrix files.
    Export {
        spec: PathBuf,
        /// `mm` (MatrixMarket) or `alist`.
        #[arg(long, default_value = "mm")]
        format: ExportFormat,
        /// Output directory for `hx.*` and `hz.*`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw the layout as SVG.
    Render {
        spec: PathBuf,
        /// SVG file to write.
        #[arg(long)]
        out: PathBuf,
        /// Anchor whose tiles are drawn, as `x,y`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        highlight: Option<(i32, i32)>,
    },
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    spec: PathBuf,
    /// Estimator trials [default: spec value, else 1000].
    #[arg(long)]
    trials: Option<usize>,
    /// Estimator seed [default: spec value, else 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Run the exact search after estimating.
    #[arg(long)]
    exact: bool,
    /// Node budget for the exact search.
    #[arg(long)]
    budget: Option<u64>,
    /// Wall-clock limit for the exact search, in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
    /// Exact engine.
    #[arg(long, value_enum, default_value = "check-guided")]
    method: MethodArg,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum MethodArg {
    CheckGuided,
    Bz,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Box size as `WxH`.
    #[arg(long = "box", value_parser = parse_dims)]
    box_size: (u32, u32),
    /// Total tile weight (X tile edges).
    #[arg(long)]
    weight: usize,
    /// `unrotated:LxM`, `rotated:R`, or a JSON layout object.
    #[arg(long, value_parser = parse_layout)]
    layout: LayoutSpec,
    /// `exhaustive` or `random:N`.
    #[arg(long, default_value = "exhaustive")]
    mode: SearchMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Estimator trials for every candidate.
    #[arg(long, default_value_t = 60)]
    coarse_trials: usize,
    /// Estimator trials for the leading candidates.
    #[arg(long, default_value_t = 2000)]
    fine_trials: usize,
    /// Number of entries reported.
    #[arg(long, default_value_t = 20)]
    top: usize,
    /// Candidates with fewer logical qubits are dropped.
    #[arg(long, default_value_t = 1)]
    min_k: usize,
    /// Report file (JSON lines). Printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HgpArgs {
    /// Polynomial in x, e.g. `1+x+x^2`.
    #[arg(long)]
    a: String,
    /// Polynomial in y, e.g. `1+y+y^2`.
    #[arg(long)]
    b: String,
    /// Bulk size as `LxM`.
    #[arg(long, value_parser = parse_dims)]
    bulk: (u32, u32),
    /// Also estimate the distance with this many trials.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_dims(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got `{s}`"))?;
    let p = |t: &str| t.parse::<u32>().map_err(|_| format!("bad number `{t}` in `{s}`"));
    Ok((p(a)?, p(b)?))
}

fn parse_point(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<i32>().map_err(|_| format!("bad number `{t}`"));
    Ok((p(a)?, p(b)?))
}

fn parse_layout(s: &str) -> Result<LayoutSpec, String> {
    if s.trim_start().starts_with('{') {
        return serde_json::from_str(s).map_err(|e| e.to_string());
    }
    if let Some(dims) = s.strip_prefix("unrotated:") {
        let (l, m) = parse_dims(dims)?;
        return Ok(LayoutSpec::unrotated(l, m));
    }
    if let Some(r) = s.strip_prefix("rotated:") {
        let r = r.parse().map_err(|_| format!("bad radius `{r}`"))?;
        return Ok(LayoutSpec::Rotated { r });
    }
    Err(format!(
        "expected `unrotated:LxM`, `rotated:R` or a JSON object, got `{s}`"
    ))
}

/// A failure that maps to exit status 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<ParsedSpec, Failure> {
    parse_spec(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_trim(out: &mut dyn Write, code: &StabilizerCode) -> std::io::Result<()> {
    let t = code.trim_stats();
    writeln!(out, "{}", code.params())?;
    writeln!(out, "n = {}", code.n())?;
    writeln!(out, "k = {}", code.k())?;
    writeln!(
        out,
        "checks: X {} (rank {}), Z {} (rank {})",
        code.h_x().num_rows(),
        code.rank_x(),
        code.h_z().num_rows(),
        code.rank_z()
    )?;
    writeln!(
        out,
        "trimmed: {} of {} qubits, {} stabilizers (X {}, Z {})",
        t.qubits_removed,
        t.qubits_before,
        t.checks_removed(),
        t.x_checks_removed,
        t.z_checks_removed
    )?;
    if t.duplicate_x_checks + t.duplicate_z_checks > 0 {
        writeln!(
            out,
            "duplicate checks: X {}, Z {}",
            t.duplicate_x_checks, t.duplicate_z_checks
        )?;
    }
    Ok(())
}

fn build_spec_code(spec: &ParsedSpec) -> Result<StabilizerCode, Failure> {
    let code = build_code(&spec.pair, &spec.layout)?;
    code.check_commutation()?;
    Ok(code)
}

fn analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Outcome {
    let spec = load_spec(&a.spec)?;
    let code = build_spec_code(&spec)?;
    let trials = a.trials.or(spec.distance.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = a.seed.or(spec.distance.seed).unwrap_or(0);
    let exact = a.exact.then(|| ExactConfig {
        method: match a.method {
            MethodArg::CheckGuided => ExactMethod::CheckGuided,
            MethodArg::Bz => ExactMethod::BrouwerZimmermann,
        },
        max_nodes: a.budget.or(spec.distance.budget),
        max_time: a.time_limit.map(Duration::from_secs),
        trials,
        seed,
    });
    let (params, result) = code_distance(
        &code,
        &DistanceOptions {
            trials,
            seed,
            exact,
        },
    )?;
    writeln!(out, "{params}")?;
    if a.exact && result.certainty != Certainty::Exact {
        writeln!(out, "proven lower bound: {}", result.lower)?;
    }
    Ok(())
}

fn search(a: &SearchArgs, out: &mut dyn Write) -> Outcome {
    let cfg = SearchConfig {
        width: a.box_size.0 as i32,
        height: a.box_size.1 as i32,
        weight: a.weight,
        layout: a.layout.clone(),
        mode: a.mode,
        coarse_trials: a.coarse_trials,
        fine_trials: a.fine_trials,
        seed: a.seed,
        top_count: a.top,
        min_k: a.min_k,
    };
    let report = run_search(&cfg)?;
    let text = report.to_jsonl();
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            let s = &report.summary;
            writeln!(
                out,
                "examined {}, k >= {}: {}, best efficiency {} ({} tiles)",
                s.examined,
                cfg.min_k,
                s.passed_k,
                s.best_efficiency
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "-".into()),
                s.best_count
            )?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn verify(table: &str, trials: Option<usize>, out: &mut dyn Write) -> Outcome {
    let text = match table {
        "builtin:weight6" => TABLE_WEIGHT6.to_string(),
        "builtin:weight8" => TABLE_WEIGHT8.to_string(),
        path => read(Path::new(path))?,
    };
    let mut doc = TableDocument::parse(&text).map_err(|e| Failure(format!("{table}: {e}")))?;
    if let Some(t) = trials {
        doc.trials = t;
    }
    let checks = verify_table_document(&doc)?;
    let mut failed = 0;
    for (c, entry) in checks.iter().zip(&doc.pairs) {
        let label = entry.label.clone().unwrap_or_else(|| (c.index + 1).to_string());
        let d = c
            .d_hat
            .map(|d| format!("{d}]] (d: upper bound)"))
            .unwrap_or_else(|| "?]]".into());
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{label}: [[{},{},{d} {verdict}", c.n, c.k)?;
        failed += usize::from(!c.pass);
    }
    let e = doc.expected;
    writeln!(
        out,
        "{}/{} pairs reach [[{},{},{}]]",
        checks.len() - failed,
        checks.len(),
        e.n,
        e.k,
        e.d
    )?;
    if failed > 0 {
        return Err(Failure(format!("{failed} pairs failed")));
    }
    Ok(())
}

fn hgp(a: &HgpArgs, out: &mut dyn Write) -> Outcome {
    let poly = PolynomialSpec::parse(&a.a, &a.b)?;
    let pair = tiles_from_polynomials(&poly)?;
    let layout = Layout::unrotated_default(a.bulk.0, a.bulk.1, pair.width(), pair.height())?;
    let code = build_code(&pair, &layout)?;
    code.check_commutation()?;
    match a.trials {
        Some(trials) => {
            let opts = DistanceOptions {
                trials,
                seed: a.seed,
                exact: None,
            };
            let (params, _) = code_distance(&code, &opts)?;
            writeln!(out, "{params}")?;
            write_trim(&mut Vec::new(), &code)?;
        }
        None => write_trim(out, &code)?,
    }
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Build { spec } => {
            let code = build_spec_code(&load_spec(spec)?)?;
            write_trim(out, &code)?;
        }
        Command::Analyze(a) => analyze(a, out)?,
        Command::Search(a) => search(a, out)?,
        Command::VerifyTable { table, trials } => verify(table, *trials, out)?,
        Command::Hgp(a) => hgp(a, out)?,
        Command::Export { spec, format, out: dir } => {
            let code = build_spec_code(&load_spec(spec)?)?;
            for path in export_checks(&code, *format, dir)? {
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        Command::Render {
            spec,
            out: path,
            highlight,
        } => {
            let spec = load_spec(spec)?;
            let svg = render_svg(&spec.layout, Some(&spec.pair), *highlight);
            std::fs::write(path, svg).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    // Buffer everything so output appears in one piece at the end.
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}
