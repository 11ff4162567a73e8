//! `luckbits` command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use luckbits_core::luck::{self, Geometry, LuckReport, NearMissScene, Scene, SceneAssessment};
use luckbits_core::mdl::{shortest_description, Code, Domain, World};
use luckbits_core::measures::{subjective_probability, unexpectedness};
use luckbits_core::scenarios::{self, PredictionReport};
use luckbits_core::ENGINE_VERSION;

#[derive(Debug, Parser)]
#[command(name = "luckbits", version, about = "Complexity-based luck and surprise scoring")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Print only the headline result (table format).
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shortest description of an integer sequence, with its unexpectedness.
    Describe(DescribeArgs),
    /// Near-miss luck for a landing point outside a winning region.
    Nearmiss(NearMissArgs),
    /// Run the story-choice predictions.
    Stories(StoriesArgs),
    /// Pick the most intense luck reading for a scene file.
    Assess(AssessArgs),
}

#[derive(Debug, clap::Args, Serialize)]
struct DescribeArgs {
    /// Comma-separated integers, e.g. 22,23,24.
    #[arg(long, allow_hyphen_values = true)]
    seq: String,
    /// Inclusive domain, e.g. 1..49.
    #[arg(long, allow_hyphen_values = true)]
    domain: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum GeometryArg {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum BaselineArg {
    /// Against the actual landing point.
    S1,
    /// Against the expected win.
    Expectation,
}

#[derive(Debug, clap::Args, Serialize)]
struct NearMissArgs {
    #[arg(long)]
    l0: f64,
    /// Winning-region extent (discrete geometry).
    #[arg(long)]
    l2: Option<f64>,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Landing precision (continuous geometry).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Utility of winning, in bits.
    #[arg(long, allow_hyphen_values = true)]
    v: f64,
    #[arg(long, value_enum, default_value_t = GeometryArg::Discrete)]
    geometry: GeometryArg,
    #[arg(long, value_enum, default_value_t = BaselineArg::S1)]
    baseline: BaselineArg,
    /// Score a continuous miss closer than alpha at the precision threshold.
    #[arg(long)]
    clamp: bool,
}

#[derive(Debug, clap::Args, Serialize)]
struct StoriesArgs {
    /// Custom dataset; defaults to the shipped stories.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, clap::Args, Serialize)]
struct AssessArgs {
    #[arg(long)]
    scene: PathBuf,
}

#[derive(Debug, Serialize)]
struct OutputRecord<'a, I: Serialize, P: Serialize> {
    command: &'a str,
    inputs: &'a I,
    payload: P,
    engine_version: &'a str,
}

#[derive(Debug, Serialize)]
struct Description {
    code: String,
    code_tree: Code,
    description_bits: f64,
    generation_bits: f64,
    unexpectedness: f64,
    unexpectedness_raw: f64,
    probability: f64,
    probability_clamped: bool,
}

/// Input error; exits with status 2.
struct Failure(String);

impl Failure {
    fn input(e: impl std::fmt::Display) -> Failure {
        Failure(e.to_string())
    }
}

struct Rendered {
    headline: String,
    table: String,
    json: String,
}

fn render<I: Serialize, P: Serialize>(
    command: &str,
    inputs: &I,
    payload: P,
    headline: String,
    table: String,
) -> Rendered {
    let record = OutputRecord { command, inputs, payload, engine_version: ENGINE_VERSION };
    let json = serde_json::to_string_pretty(&record).expect("output record serialises");
    Rendered { headline, table, json }
}

fn parse_seq(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure(format!("invalid sequence element {:?}", t.trim()))))
        .collect()
}

fn parse_domain(s: &str) -> Result<Domain, Failure> {
    let bad = || Failure(format!("invalid domain {s:?}, expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Domain::new(lo, hi).map_err(Failure::input)
}

fn describe(args: &DescribeArgs) -> Result<Rendered, Failure> {
    let seq = parse_seq(&args.seq)?;
    let domain = parse_domain(&args.domain)?;
    let (code, c) = shortest_description(&seq, domain).map_err(Failure::input)?;
    let cw = World::uniform_draws(seq.len(), domain.width()).map_err(Failure::input)?.generation_complexity();
    let raw = unexpectedness(cw, c);
    let p = subjective_probability(raw);
    let d = Description {
        code: code.to_string(),
        code_tree: code,
        description_bits: c.bits(),
        generation_bits: cw.bits(),
        unexpectedness: raw.max(0.0),
        unexpectedness_raw: raw,
        probability: p.value,
        probability_clamped: p.clamped,
    };
    let mut t = String::new();
    let _ = writeln!(t, "code   {}", d.code);
    let _ = writeln!(t, "C      {:.4}", d.description_bits);
    let _ = writeln!(t, "C_w    {:.4}", d.generation_bits);
    let _ = writeln!(t, "U      {:.4} (raw {:.4})", d.unexpectedness, d.unexpectedness_raw);
    let clamped = if p.clamped { " (clamped)" } else { "" };
    let _ = writeln!(t, "p      2^-{:.4} = {:.6e}{clamped}", d.unexpectedness, d.probability);
    let headline = format!("{:.4}", d.unexpectedness);
    Ok(render("describe", args, d, headline, t))
}

fn report_table(r: &LuckReport, t: &mut String) {
    let _ = writeln!(t, "mode   {}", r.mode);
    let _ = writeln!(t, "value  {:.4}", r.value);
    let _ = writeln!(t, "eta*   {:.4}", r.eta_star);
    if let Some(id) = &r.counterfactual_id {
        let _ = writeln!(t, "vs     {id}");
    }
    let width = r.terms.iter().map(|term| term.label.chars().count()).max().unwrap_or(0);
    for term in &r.terms {
        // + 0.0 prints a negative zero as 0.0000
        let _ = writeln!(t, "  {:<width$}  {:>10.4}", term.label, term.value + 0.0);
    }
    for n in &r.notes {
        let _ = writeln!(t, "note   {n}");
    }
}

fn nearmiss(args: &NearMissArgs) -> Result<Rendered, Failure> {
    let scene = match args.geometry {
        GeometryArg::Discrete => NearMissScene::discrete(args.l0, args.l2.unwrap_or(1.0), args.delta, args.v),
        GeometryArg::Continuous => {
            if args.l2.is_some() {
                return Err(Failure("--l2 applies to the discrete geometry only".into()));
            }
            if args.delta < args.alpha && !args.clamp {
                return Err(Failure(format!(
                    "delta {} is below the precision alpha {}; pass --clamp to score at the threshold",
                    args.delta, args.alpha
                )));
            }
            NearMissScene::continuous(args.l0, args.delta, args.alpha, args.v)
        }
    }
    .with_sectors(args.k);
    let report = match (scene.geometry, args.baseline) {
        (Geometry::DiscreteBounded, BaselineArg::S1) => luck::near_miss_discrete(&scene),
        (Geometry::DiscreteBounded, BaselineArg::Expectation) => luck::near_miss_expectation_baseline(&scene),
        (Geometry::ContinuousUnbounded, BaselineArg::S1) => luck::near_miss_continuous(&scene),
        (Geometry::ContinuousUnbounded, BaselineArg::Expectation) => {
            return Err(Failure("the expectation baseline needs the discrete geometry".into()))
        }
    }
    .map_err(Failure::input)?;
    let mut t = String::new();
    report_table(&report, &mut t);
    let headline = format!("{:.4}", report.value);
    Ok(render("nearmiss", args, report, headline, t))
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        return s.to_string();
    }
    let mut out: String = s.chars().take(width - 3).collect();
    out.push_str("...");
    out
}

fn stories_table(r: &PredictionReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "{:<6} {:<31} {:<28} {:<28} ok", "choice", "rule", "predicted", "majority");
    for c in &r.choices {
        let mark = if c.congruent { "yes" } else { "NO" };
        let predicted = clip(&c.predicted.join(" + "), 28);
        let _ =
            writeln!(t, "{:<6} {:<31} {:<28} {:<28} {mark}", c.key(), c.rule.name(), predicted, clip(&c.majority, 28));
    }
    let _ = writeln!(t, "{}", r.summary());
    t
}

fn stories(args: &StoriesArgs) -> Result<(Rendered, Option<String>), Failure> {
    let dataset = match &args.file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            scenarios::load_scenarios(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?
        }
        None => scenarios::shipped_dataset(),
    };
    let report = scenarios::run_stories(&dataset).map_err(Failure::input)?;
    let regression = (args.file.is_none() && !report.is_reference_outcome())
        .then(|| format!("shipped stories regression failed: {}", report.summary()));
    let table = stories_table(&report);
    let headline = report.summary();
    Ok((render("stories", args, report, headline, table), regression))
}

fn assess(args: &AssessArgs) -> Result<Rendered, Failure> {
    let path = args.scene.display();
    let text = std::fs::read_to_string(&args.scene).map_err(|e| Failure(format!("{path}: {e}")))?;
    let scene: Scene = serde_json::from_str(&text).map_err(|e| Failure(format!("{path}: scene schema error: {e}")))?;
    let a: SceneAssessment = luck::assess_scene(&scene).map_err(Failure::input)?;

    let mut t = String::new();
    let _ = writeln!(t, "chosen reading");
    report_table(&a.chosen, &mut t);
    let _ = writeln!(t, "\nreadings");
    for r in &a.readings {
        let _ = writeln!(
            t,
            "  {:<5} {:<16} {:>10.4}",
            r.mode.to_string(),
            r.counterfactual_id.as_deref().unwrap_or("actual"),
            r.value
        );
    }
    if !a.baselines.is_empty() {
        let _ = writeln!(t, "\nbaselines");
        for r in &a.baselines {
            let label = r.terms.first().map_or("", |term| term.label.as_str());
            let _ = writeln!(t, "  {:<8} {:<7} {:>10.4}", r.mode.to_string(), label, r.value);
        }
    }
    let headline = format!("{} {:.4}", a.chosen.mode, a.chosen.value);
    Ok(render("assess", args, a, headline, t))
}

fn emit(cli: &Cli, out: &Rendered) {
    let mut stdout = std::io::stdout().lock();
    let res = match cli.format {
        Format::Json => writeln!(stdout, "{}", out.json),
        Format::Table if cli.quiet => writeln!(stdout, "{}", out.headline),
        Format::Table => write!(stdout, "{}", out.table),
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    if let Err(e) = res.and_then(|()| stdout.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Describe(a) => describe(a).map(|r| (r, None)),
        Command::Nearmiss(a) => nearmiss(a).map(|r| (r, None)),
        Command::Stories(a) => stories(a),
        Command::Assess(a) => assess(a).map(|r| (r, None)),
    };
    match result {
        Ok((out, regression)) => {
            emit(&cli, &out);
            match regression {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
