//! `reldiam` command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 failed computation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reldiam::body::ConvexBody;
use reldiam::body::{make_circle_kgon_intersection, make_disc, make_regular_kgon, make_reuleaux};
use reldiam::bounds::{bound_report, format_sig};
use reldiam::constructions::{
    circle8_counterexample, heptagon_counterexample, hex_subdivision, optimal_body,
    perturb_partition, quotient, search_heptagon, standard_partition,
};
use reldiam::geometry::{Point, Tolerance};
use reldiam::optimizer::{
    optimize_partition, optimize_subdivision, Schedule, SearchConfig, SearchResult,
};
use reldiam::render::{render_body, render_subdivision};
use reldiam::repro::{run_experiment, EXPERIMENTS};
use reldiam::subdivision::{KPartition, KSubdivision};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Environment variable overriding the default length tolerance.
const EPS_VAR: &str = "REL_DIAM_EPS";
const DIGITS: usize = 12;

#[derive(Parser)]
#[command(
    name = "reldiam",
    version,
    about = "Maximum relative diameter of k-partitions and k-subdivisions of convex bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a convex body and write it as JSON.
    Body(BodyArgs),
    /// Build the standard k-partition of a body, optionally perturbed.
    Partition(PartitionArgs),
    /// Report metrics of a body, or region diameters and d_M of a partition or subdivision.
    Evaluate(EvaluateArgs),
    /// Report every applicable bound on d_M.
    Bounds(BoundsArgs),
    /// Build the optimal body for k and report its quotient.
    Optimal(OptimalArgs),
    /// Build the hexagonal k-subdivision of a body.
    Hexify(HexifyArgs),
    /// Build one of the two counterexample subdivisions.
    Counterexample(CounterexampleArgs),
    /// Search for low-d_M partitions or subdivisions.
    Search(SearchArgs),
    /// Render a body, partition or subdivision as SVG.
    Render(RenderArgs),
    /// Run reproduction experiments and write JSON and Markdown reports.
    Repro(ReproArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BodyKind {
    Disc,
    Kgon,
    Reuleaux,
    Optimal,
    CircleKgon,
}

#[derive(Args)]
struct BodyArgs {
    #[arg(long, value_enum)]
    kind: BodyKind,
    /// Number of sides or symmetry order (kgon, reuleaux, optimal, circle-kgon).
    #[arg(long)]
    k: Option<usize>,
    /// Disc radius, polygon circumradius, or circle radius of circle-kgon.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Width of the Reuleaux polygon.
    #[arg(long, default_value_t = 1.0)]
    width: f64,
    /// Inradius of the polygon in circle-kgon.
    #[arg(long)]
    inradius: Option<f64>,
    /// Polar angle of the first polygon vertex.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phase: f64,
    /// Center as `x,y`.
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    center: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    body: PathBuf,
    #[arg(long)]
    k: usize,
    /// Bend the curves by up to this amount without changing d_M.
    #[arg(long)]
    perturb: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "input")]
struct Input {
    #[arg(long, group = "input")]
    body: Option<PathBuf>,
    #[arg(long, group = "input")]
    partition: Option<PathBuf>,
    #[arg(long, group = "input")]
    subdivision: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: Input,
    /// Maximal sagitta when discretizing arcs.
    #[arg(long, default_value_t = 1e-6)]
    sagitta: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    body: PathBuf,
    #[arg(long)]
    k: usize,
    /// Also build the hexagonal subdivision and add its d_M as an upper bound.
    #[arg(long)]
    construct: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OptimalArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HexifyArgs {
    #[arg(long)]
    body: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CounterexampleKind {
    Heptagon,
    Circle8,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(value_enum)]
    kind: CounterexampleKind,
    /// Inner-point distance for the heptagon; optimized when omitted.
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Partition,
    Subdivision,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    body: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = SearchMode::Subdivision)]
    mode: SearchMode,
    /// JSON search configuration; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    move_scale: Option<f64>,
    /// Accept only non-worsening moves.
    #[arg(long, conflicts_with_all = ["t0", "cooling"])]
    greedy: bool,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    cooling: Option<f64>,
    /// Write the full result as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the incumbent trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// Experiment names, or `all`.
    #[arg(required = true)]
    experiments: Vec<String>,
    #[arg(long, default_value = "repro-out")]
    out: PathBuf,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
enum Failure {
    Input(String),
    Computation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Computation(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Computation(m) => m,
        }
    }
}

impl From<reldiam::Error> for Failure {
    fn from(e: reldiam::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn sig(x: f64) -> String {
    format_sig(x, DIGITS)
}

fn tolerance() -> Outcome<Tolerance<f64>> {
    match std::env::var(EPS_VAR) {
        Err(_) => Ok(Tolerance::default()),
        Ok(s) => {
            let eps: f64 = s
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("{EPS_VAR}: `{s}` is not a number")))?;
            Tolerance::default()
                .with_eps_geom(eps)
                .map_err(|e| Failure::Input(format!("{EPS_VAR}: {e}")))
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Computation(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(x: &T) -> Outcome<String> {
    serde_json::to_string_pretty(x)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Computation(e.to_string()))
}

/// Writes JSON to `out` and prints `summary`, or prints the JSON when there is no file.
fn emit<T: Serialize>(x: &T, out: Option<&Path>, summary: &[String]) -> Outcome {
    let json = to_json(x)?;
    match out {
        Some(p) => {
            write_file(p, &json)?;
            for line in summary {
                println!("{line}");
            }
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn parse_point(s: &str) -> Outcome<Point<f64>> {
    let bad = || Failure::Input(format!("`{s}` is not a point `x,y`"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let x: f64 = x.trim().parse().map_err(|_| bad())?;
    let y: f64 = y.trim().parse().map_err(|_| bad())?;
    Ok(Point::new(x, y))
}

fn need_k(k: Option<usize>, kind: &str) -> Outcome<usize> {
    k.ok_or_else(|| Failure::Input(format!("--k is required for {kind}")))
}

fn cmd_body(a: &BodyArgs) -> Outcome {
    let center = parse_point(&a.center)?;
    let body = match a.kind {
        BodyKind::Disc => make_disc(a.radius, center)?,
        BodyKind::Kgon => make_regular_kgon(need_k(a.k, "kgon")?, a.radius, center, a.phase)?,
        BodyKind::Reuleaux => make_reuleaux(need_k(a.k, "reuleaux")?, a.width, center)?,
        BodyKind::Optimal => optimal_body(need_k(a.k, "optimal")?)?,
        BodyKind::CircleKgon => {
            let inr = a
                .inradius
                .ok_or_else(|| Failure::Input("--inradius is required for circle-kgon".into()))?;
            make_circle_kgon_intersection(need_k(a.k, "circle-kgon")?, inr, a.radius)?
        }
    };
    emit(&body, a.out.as_deref(), &body_summary(&body))
}

fn body_summary(b: &ConvexBody<f64>) -> Vec<String> {
    let m = b.metrics();
    vec![
        format!("symmetry_order: {}", b.symmetry_order()),
        format!("area: {}", sig(m.area)),
        format!("perimeter: {}", sig(m.perimeter)),
        format!("inradius: {}", sig(m.inradius)),
        format!("circumradius: {}", sig(m.circumradius)),
        format!("diameter: {}", sig(b.diameter())),
    ]
}

fn cmd_partition(a: &PartitionArgs, tol: &Tolerance<f64>) -> Outcome {
    let body: ConvexBody<f64> = read_json(&a.body)?;
    let mut p = standard_partition(&body, a.k, tol)?;
    if let Some(m) = a.perturb {
        p = perturb_partition(&p, m, a.seed, tol)?;
    }
    let dm = p.regions(tol)?.d_m(1e-6, tol)?.value;
    emit(&p, a.out.as_deref(), &[format!("d_M: {}", sig(dm))])
}

/// Region diameters and d_M of a subdivision, as printable lines and JSON.
fn subdivision_report(
    s: &KSubdivision<f64>,
    sagitta: f64,
    tol: &Tolerance<f64>,
) -> Outcome<(Vec<String>, serde_json::Value)> {
    let violations = s.validate(tol);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Input(format!(
            "invalid subdivision:\n  {}",
            list.join("\n  ")
        )));
    }
    let d = s.region_diameters(sagitta)?;
    let w = s.d_m(sagitta, tol)?;
    let mut lines: Vec<String> = d
        .iter()
        .enumerate()
        .map(|(i, x)| format!("region {}: {}", i + 1, sig(x.value)))
        .collect();
    lines.push(format!("d_M: {}", sig(w.value)));
    let json = serde_json::json!({
        "k": s.k(),
        "region_diameters": d.iter().map(|x| x.value).collect::<Vec<_>>(),
        "d_m": w.value,
    });
    Ok((lines, json))
}

fn cmd_evaluate(a: &EvaluateArgs, tol: &Tolerance<f64>) -> Outcome {
    if !(a.sagitta > 0.0 && a.sagitta.is_finite()) {
        return Err(Failure::Input("--sagitta must be positive".into()));
    }
    let (lines, json) = if let Some(p) = &a.input.body {
        let b: ConvexBody<f64> = read_json(p)?;
        let m = b.metrics();
        let json = serde_json::json!({ "symmetry_order": b.symmetry_order(), "metrics": m, "diameter": b.diameter() });
        (body_summary(&b), json)
    } else if let Some(p) = &a.input.partition {
        let part: KPartition<f64> = read_json(p)?;
        subdivision_report(&part.regions(tol)?, a.sagitta, tol)?
    } else if let Some(p) = &a.input.subdivision {
        subdivision_report(&read_json(p)?, a.sagitta, tol)?
    } else {
        return Err(Failure::Input(
            "one of --body, --partition, --subdivision is required".into(),
        ));
    };
    if a.json {
        print!("{}", to_json(&json)?);
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    Ok(())
}

fn cmd_bounds(a: &BoundsArgs, tol: &Tolerance<f64>) -> Outcome {
    if a.k == 0 {
        return Err(Failure::Input("--k must be positive".into()));
    }
    let body: ConvexBody<f64> = read_json(&a.body)?;
    let id = a
        .body
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let report = bound_report(&body, &id, a.k, a.construct, tol);
    if a.json {
        print!("{}", to_json(&report)?);
    } else {
        print!("{}", report.to_markdown());
    }
    if report.is_consistent() {
        Ok(())
    } else {
        Err(Failure::Computation(format!(
            "inconsistent bounds: {}",
            report.inconsistencies.join("; ")
        )))
    }
}

fn cmd_optimal(a: &OptimalArgs, tol: &Tolerance<f64>) -> Outcome {
    let body = optimal_body::<f64>(a.k)?;
    let q = quotient(&body, a.k, tol)?;
    let mut summary = body_summary(&body);
    summary.push(format!("quotient: {}", sig(q)));
    emit(&body, a.out.as_deref(), &summary)
}

fn cmd_hexify(a: &HexifyArgs, tol: &Tolerance<f64>) -> Outcome {
    let body: ConvexBody<f64> = read_json(&a.body)?;
    let (s, dk) = hex_subdivision(&body, a.k, tol)?;
    let dm = s.d_m(1e-6, tol)?.value;
    emit(
        &s,
        a.out.as_deref(),
        &[format!("d_k: {}", sig(dk)), format!("d_M: {}", sig(dm))],
    )
}

fn cmd_counterexample(a: &CounterexampleArgs, tol: &Tolerance<f64>) -> Outcome {
    let (s, mut summary) = match a.kind {
        CounterexampleKind::Heptagon => {
            let rho = match a.rho {
                Some(r) => r,
                None => search_heptagon(tol).rho,
            };
            (
                heptagon_counterexample(rho, tol)?,
                vec![format!("rho: {}", sig(rho))],
            )
        }
        CounterexampleKind::Circle8 => {
            if a.rho.is_some() {
                return Err(Failure::Input("--rho only applies to the heptagon".into()));
            }
            (circle8_counterexample()?, Vec::new())
        }
    };
    let (lines, _) = subdivision_report(&s, 1e-6, tol)?;
    summary.extend(lines);
    emit(&s, a.out.as_deref(), &summary)
}

fn search_config(a: &SearchArgs) -> Outcome<SearchConfig<f64>> {
    let mut cfg: SearchConfig<f64> = match &a.config {
        Some(p) => read_json(p)?,
        None => SearchConfig::default(),
    };
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(n) = a.iterations {
        cfg.iterations = n;
    }
    if let Some(n) = a.restarts {
        cfg.restarts = n;
    }
    if let Some(m) = a.move_scale {
        cfg.move_scale = m;
    }
    if a.greedy {
        cfg.schedule = Schedule::Greedy;
    } else if a.t0.is_some() || a.cooling.is_some() {
        let (t0, cooling) = match cfg.schedule {
            Schedule::Anneal { t0, cooling } => (t0, cooling),
            Schedule::Greedy => match SearchConfig::<f64>::default().schedule {
                Schedule::Anneal { t0, cooling } => (t0, cooling),
                Schedule::Greedy => (2e-3, 0.998),
            },
        };
        cfg.schedule = Schedule::Anneal {
            t0: a.t0.unwrap_or(t0),
            cooling: a.cooling.unwrap_or(cooling),
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_search(a: &SearchArgs, tol: &Tolerance<f64>) -> Outcome {
    let cfg = search_config(a)?;
    let body: ConvexBody<f64> = read_json(&a.body)?;
    if a.k < 3 {
        return Err(Failure::Input("--k must be at least 3".into()));
    }
    let r: SearchResult<f64> = match a.mode {
        SearchMode::Partition => optimize_partition(&body, a.k, &cfg, tol)?,
        SearchMode::Subdivision => optimize_subdivision(&body, a.k, &cfg, tol)?,
    };
    if let Some(p) = &a.out {
        write_file(p, &to_json(&r)?)?;
    }
    if let Some(p) = &a.trace {
        write_file(p, &r.trace_csv())?;
    }
    println!("best_value: {}", sig(r.best_value));
    println!("bounds_gap: {}", sig(r.bounds_gap));
    println!("restart: {}", r.restart);
    Ok(())
}

fn cmd_render(a: &RenderArgs, tol: &Tolerance<f64>) -> Outcome {
    let svg = if let Some(p) = &a.input.body {
        render_body(&read_json::<ConvexBody<f64>>(p)?)
    } else if let Some(p) = &a.input.partition {
        render_subdivision(&read_json::<KPartition<f64>>(p)?.regions(tol)?)
    } else if let Some(p) = &a.input.subdivision {
        let s: KSubdivision<f64> = read_json(p)?;
        s.check_structure(tol)?;
        render_subdivision(&s)
    } else {
        return Err(Failure::Input(
            "one of --body, --partition, --subdivision is required".into(),
        ));
    };
    match &a.out {
        Some(p) => write_file(p, &svg),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn cmd_repro(a: &ReproArgs) -> Outcome {
    let names: Vec<&str> = if a.experiments.iter().any(|e| e == "all") {
        EXPERIMENTS.to_vec()
    } else {
        a.experiments.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| !EXPERIMENTS.contains(n)) {
        return Err(Failure::Input(format!(
            "unknown experiment `{bad}`; expected one of {} or all",
            EXPERIMENTS.join(", ")
        )));
    }
    fs::create_dir_all(&a.out)
        .map_err(|e| Failure::Computation(format!("{}: {e}", a.out.display())))?;
    let mut failed = Vec::new();
    for name in names {
        let report = run_experiment(name)?;
        write_file(&a.out.join(format!("{name}.json")), &to_json(&report)?)?;
        write_file(&a.out.join(format!("{name}.md")), &report.to_markdown())?;
        println!("{name}: {}", if report.passed { "PASS" } else { "FAIL" });
        for c in &report.checks {
            println!(
                "  [{}] {}: {}",
                if c.passed { "x" } else { " " },
                c.name,
                c.detail
            );
        }
        if !report.passed {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Computation(format!(
            "failed experiments: {}",
            failed.join(", ")
        )))
    }
}

fn run(cli: Cli) -> Outcome {
    let tol = tolerance()?;
    match &cli.command {
        Command::Body(a) => cmd_body(a),
        Command::Partition(a) => cmd_partition(a, &tol),
        Command::Evaluate(a) => cmd_evaluate(a, &tol),
        Command::Bounds(a) => cmd_bounds(a, &tol),
        Command::Optimal(a) => cmd_optimal(a, &tol),
        Command::Hexify(a) => cmd_hexify(a, &tol),
        Command::Counterexample(a) => cmd_counterexample(a, &tol),
        Command::Search(a) => cmd_search(a, &tol),
        Command::Render(a) => cmd_render(a, &tol),
        Command::Repro(a) => cmd_repro(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
