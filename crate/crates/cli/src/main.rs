//! `ll-coarse`: generate walks, compute distances, balls, distortion profiles
//! and separation reports, and run the verification suite.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing criterion, 2 on
//! a usage error, 3 when a resource cap is exceeded.

mod cache;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lamplighter::ball::ball_with_cap;
use lamplighter::codec;
use lamplighter::distortion::distortion_profile;
use lamplighter::separation::separation_report_with_cap;
use lamplighter::verify::{run_suite, suite, VerifyOptions};
use lamplighter::{
    circle_family_distortion, compose, half_quasi_line, invert, probes, quasi_circle, quasi_interval, quasi_line,
    stage_config, word_distance, Configuration, Obstacle, PathSpec, Walk,
};

use cache::{WalkCache, WalkKey};

const CACHE_ENV: &str = "LL_COARSE_CACHE_DIR";

#[derive(Parser)]
#[command(name = "ll-coarse", version, about = "Coarse geometry of the lamplighter group")]
struct Cli {
    /// Directory for cached walks (default: $LL_COARSE_CACHE_DIR, else the user cache directory).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Neither read nor write the walk cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a walk file: a header line, one configuration per line, then the milestones.
    Walk(WalkArgs),
    /// Print the word distance between two configurations.
    Dist {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Print the sphere sizes of a ball as CSV `distance,count`.
    Ball(BallArgs),
    /// Print a distortion profile as CSV.
    Profile(ProfileArgs),
    /// Print a separation report as JSON.
    Separate(SeparateArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "N")]
    N,
    #[value(name = "R")]
    R,
    #[value(name = "I")]
    I,
    #[value(name = "C")]
    C,
}

impl Kind {
    fn spec(self, n: Option<u32>) -> Result<PathSpec> {
        let code = match self {
            Kind::N => "N",
            Kind::R => "R",
            Kind::I => "I",
            Kind::C => "C",
        };
        Ok(PathSpec::from_code(code, n)?)
    }
}

#[derive(Args)]
struct Caps {
    /// Largest ball radius accepted.
    #[arg(long, default_value_t = 12)]
    max_radius: u64,
    /// Largest number of ball members enumerated.
    #[arg(long, default_value_t = 5_000_000)]
    max_members: usize,
}

#[derive(Args)]
struct WalkArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Number of steps (`N`, `R`); fixed by `--n` for `I` and `C`.
    #[arg(long)]
    steps: Option<usize>,
    /// Family index for `I` and `C`.
    #[arg(long)]
    n: Option<u32>,
    /// Length of the negative ray of `R` (default: a quarter of the steps).
    #[arg(long)]
    neg: Option<u64>,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct BallArgs {
    #[arg(long)]
    radius: u64,
    /// Centre of the ball (default: the identity).
    #[arg(long)]
    center: Option<String>,
    #[command(flatten)]
    caps: Caps,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, value_enum, default_value = "N")]
    kind: Kind,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 2000)]
    index_limit: usize,
    #[arg(long, default_value_t = 4)]
    m_max: u64,
    /// Profile the quasi-circles with these indices together, e.g. `--family 1,2,3`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "kind"])]
    family: Option<Vec<u32>>,
    /// Largest index limit accepted.
    #[arg(long, default_value_t = 10_000)]
    max_index_limit: usize,
    /// Largest ambient distance bound accepted.
    #[arg(long, default_value_t = 12)]
    max_m: u64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct SeparateArgs {
    /// Obstacle path; omit for the empty obstacle.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    n: Option<u32>,
    /// Thickening of the obstacle.
    #[arg(long, default_value_t = 0)]
    k: u64,
    #[arg(long)]
    radius: u64,
    /// Index of the standard probes (default: `--n`): `x_n`, `y_n` for `I` and `C`, else `a_n`, `b_n`.
    #[arg(long)]
    probe_n: Option<u64>,
    /// Explicit first probe, overriding the standard pair.
    #[arg(long, requires = "probe_b")]
    probe_a: Option<String>,
    #[arg(long, requires = "probe_a")]
    probe_b: Option<String>,
    #[command(flatten)]
    caps: Caps,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all`, `group`, `walks`, `distortion`, `separation` or `codec`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed for the random group-law triples.
    #[arg(long)]
    seed: Option<u64>,
    /// Run the suite against a deliberately wrong metric.
    #[arg(long, hide = true)]
    corrupt_metric: bool,
}

/// A bad flag value or input, reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Usage(message.into()).into()
}

/// A cap exceeded before any work is done, reported with exit status 3.
fn over_cap(flag: &str, value: impl std::fmt::Display, cap: impl std::fmt::Display, raise: &str) -> anyhow::Error {
    Limit(format!("{flag} {value} exceeds the cap {cap} (raise it with {raise})")).into()
}

#[derive(Debug)]
struct Limit(String);

impl std::fmt::Display for Limit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Limit {}

fn exit_status(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if cause.is::<Limit>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<lamplighter::Error>() {
            return match e {
                lamplighter::Error::ResourceLimit { .. } | lamplighter::Error::Io(_) => 3,
                _ => 2,
            };
        }
        if cause.is::<io::Error>() {
            return 3;
        }
    }
    2
}

fn parse_configuration(flag: &str, text: &str) -> Result<Configuration> {
    codec::decode(text).map_err(|e| usage(format!("{flag}: {e}")))
}

fn open_output(out: &str) -> Result<Box<dyn Write>> {
    if out == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(out).with_context(|| format!("creating {out}"))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn write_text(out: &str, text: &str) -> Result<()> {
    let mut w = open_output(out)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn cache_location(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    if let Some(dir) = &cli.cache_dir {
        return Some(dir.clone());
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("ll-coarse"))
}

/// Resolves the walk identity and its known endpoints from the flags.
fn walk_plan(args: &WalkArgs) -> Result<(WalkKey, Configuration, Option<Configuration>)> {
    let need_steps = || args.steps.ok_or_else(|| usage("--steps is required for this kind"));
    let family_n = || -> Result<u32> {
        if args.steps.is_some() {
            return Err(usage("--steps is fixed by --n for this kind"));
        }
        let n = args.n.ok_or_else(|| usage("--n is required for this kind"))?;
        if n == 0 {
            return Err(usage("--n must be at least 1"));
        }
        Ok(n)
    };
    Ok(match args.kind {
        Kind::N => (WalkKey { kind: "N", n: None, steps: need_steps()? }, Configuration::identity(), None),
        Kind::R => {
            let steps = need_steps()?;
            let neg = args.neg.unwrap_or(steps as u64 / 4);
            if 2 * neg > steps as u64 {
                return Err(usage(format!("--neg {neg} needs at least {} steps", 2 * neg)));
            }
            (WalkKey { kind: "R", n: Some(neg), steps }, lamplighter::walks::negative_ray_vertex(neg), None)
        }
        Kind::I => {
            let n = family_n()?;
            let walk_len = quasi_interval(n)?.step_count();
            let nn = i64::from(n);
            let end = Configuration::new(0..=2 * nn, 2 * nn);
            (WalkKey { kind: "I", n: Some(n.into()), steps: walk_len }, Configuration::identity(), Some(end))
        }
        Kind::C => {
            let n = family_n()?;
            let walk_len = quasi_circle(n)?.step_count();
            (WalkKey { kind: "C", n: Some(n.into()), steps: walk_len }, stage_config(1), Some(stage_config(1)))
        }
    })
}

fn generate(key: &WalkKey) -> Result<Walk> {
    Ok(match key.kind {
        "N" => half_quasi_line(key.steps),
        "R" => {
            let neg = key.n.expect("ray length");
            quasi_line(neg, key.steps - 2 * neg as usize)
        }
        "I" => quasi_interval(key.n.expect("family index") as u32)?,
        _ => quasi_circle(key.n.expect("family index") as u32)?,
    })
}

fn cmd_walk(args: &WalkArgs, cache: Option<WalkCache>) -> Result<()> {
    if args.n.is_some() && matches!(args.kind, Kind::N | Kind::R) {
        return Err(usage("--n only applies to kinds I and C"));
    }
    if args.neg.is_some() && args.kind != Kind::R {
        return Err(usage("--neg only applies to kind R"));
    }
    let (key, start, end) = walk_plan(args)?;
    let cached = cache.as_ref().and_then(|c| c.lookup(&key, (&start, end.as_ref())));
    let walk = match cached {
        Some(w) => w,
        None => {
            let w = generate(&key)?;
            if let Some(c) = &cache {
                if let Err(e) = c.store(&key, &w) {
                    eprintln!("warning: could not write cache entry in {}: {e:#}", c.dir().display());
                }
            }
            w
        }
    };
    let mut out = open_output(&args.out)?;
    lamplighter::walkfile::write_walk(&mut out, &key.header(), &walk)?;
    out.flush()?;
    Ok(())
}

fn check_ball_caps(radius: u64, caps: &Caps) -> Result<()> {
    if radius > caps.max_radius {
        return Err(over_cap("--radius", radius, caps.max_radius, "--max-radius"));
    }
    Ok(())
}

fn cmd_ball(args: &BallArgs) -> Result<()> {
    let center = match &args.center {
        Some(text) => parse_configuration("--center", text)?,
        None => Configuration::identity(),
    };
    check_ball_caps(args.radius, &args.caps)?;
    let b = ball_with_cap(&center, args.radius, args.caps.max_members)?;
    let mut csv = String::from("distance,count\n");
    for (d, count) in b.sphere_sizes().iter().enumerate() {
        csv.push_str(&format!("{d},{count}\n"));
    }
    write_text(&args.out, &csv)
}

fn cmd_profile(args: &ProfileArgs) -> Result<()> {
    if args.m_max > args.max_m {
        return Err(over_cap("--m-max", args.m_max, args.max_m, "--max-m"));
    }
    if let Some(family) = &args.family {
        if family.is_empty() || family.contains(&0) {
            return Err(usage("--family needs indices of at least 1"));
        }
        let mut family = family.clone();
        family.sort_unstable();
        family.dedup();
        let profile = circle_family_distortion(&family, args.m_max)?;
        return write_text(&args.out, &profile.to_csv());
    }
    if args.index_limit > args.max_index_limit {
        return Err(over_cap("--index-limit", args.index_limit, args.max_index_limit, "--max-index-limit"));
    }
    if args.index_limit < 2 {
        return Err(usage("--index-limit must be at least 2"));
    }
    let spec = args.kind.spec(args.n)?;
    let profile = distortion_profile(spec, args.index_limit, args.m_max)?;
    write_text(&args.out, &profile.to_csv())
}

fn cmd_separate(args: &SeparateArgs) -> Result<()> {
    check_ball_caps(args.radius, &args.caps)?;
    let obstacle = match args.kind {
        Some(kind) => Obstacle::Path(kind.spec(args.n)?),
        None => Obstacle::Nothing,
    };
    let family = matches!(args.kind, Some(Kind::I | Kind::C));
    let explicit;
    let standard;
    let pair: [(&str, &Configuration); 2] = match (&args.probe_a, &args.probe_b) {
        (Some(a), Some(b)) => {
            explicit = [parse_configuration("--probe-a", a)?, parse_configuration("--probe-b", b)?];
            [("probe_a", &explicit[0]), ("probe_b", &explicit[1])]
        }
        _ => {
            let n = args
                .probe_n
                .or(args.n.map(u64::from))
                .ok_or_else(|| usage("--probe-n (or explicit --probe-a/--probe-b) is required"))?;
            standard = probes(n)?;
            if family {
                [("x_n", &standard.x_n), ("y_n", &standard.y_n)]
            } else {
                [("a_n", &standard.a_n), ("b_n", &standard.b_n)]
            }
        }
    };
    let report = separation_report_with_cap(obstacle, args.k, args.radius, pair, args.caps.max_members)?;
    write_text(&args.out, &(report.to_json() + "\n"))
}

/// Distance with the lamp term dropped: still symmetric and left-invariant,
/// but wrong on every pair that differs in a lamp.
fn corrupted_metric(g: &Configuration, h: &Configuration) -> u64 {
    word_distance(g, h) - compose(&invert(g), h).lit_count() as u64
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let ids = suite(&args.suite).ok_or_else(|| usage(format!("unknown --suite {:?}", args.suite)))?;
    let mut opts = VerifyOptions::default();
    if let Some(seed) = args.seed {
        opts.seed = seed;
    }
    if args.corrupt_metric {
        opts.metric = corrupted_metric;
    }
    let results = run_suite(&ids, &opts);
    let mut out = io::stdout().lock();
    for r in &results {
        writeln!(out, "{}", r.line())?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} of {} criteria passed", results.len() - failed, results.len())?;
    Ok(failed == 0)
}

fn run(cli: Cli) -> Result<bool> {
    let cache = cache_location(&cli).map(WalkCache::new);
    match &cli.command {
        Command::Walk(args) => cmd_walk(args, cache)?,
        Command::Dist { from, to } => {
            let g = parse_configuration("--from", from)?;
            let h = parse_configuration("--to", to)?;
            println!("{}", word_distance(&g, &h));
        }
        Command::Ball(args) => cmd_ball(args)?,
        Command::Profile(args) => cmd_profile(args)?,
        Command::Separate(args) => cmd_separate(args)?,
        Command::Verify(args) => return cmd_verify(args),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                eprintln!("run `ll-coarse --help` for usage");
            }
            ExitCode::from(exit_status(&e))
        }
    }
}
