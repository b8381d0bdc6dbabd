mod input;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use aurum_core::approx::{self, MirrorSet, Pivot, DEFAULT_MAX_ITER};
use aurum_core::quaternion::QuatR;
use aurum_core::roots::{self, Dimension, Family, Filtration, Side};
use aurum_core::verify::{self, Suite};
use aurum_core::{group, sample, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{Emit, Format};

#[derive(Parser)]
#[command(name = "aurum", version, about = "Exact reflections over the dyadic golden numbers and SU(2) approximation")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Refuse to generate levels beyond this.
    #[arg(long, env = "AURUM_MAX_LEVEL", default_value_t = roots::DEFAULT_MAX_LEVEL, global = true)]
    max_level: u32,
    /// Seed for random targets.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Suppress log output.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the roots of one level with their tags.
    Roots {
        #[arg(long, value_parser = parse_dim, default_value = "4")]
        dim: Dimension,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
    },
    /// Level and family of a unit quaternion, given as JSON.
    Classify {
        quaternion: String,
        #[arg(long, value_parser = parse_dim, default_value = "4")]
        dim: Dimension,
    },
    /// Normal form `w a_m ... a_1` of a unit quaternion, given as JSON.
    Decompose { quaternion: String },
    /// Approximate a target of SU(2) by reflections in the mirrors of `U_n`.
    Approx {
        /// Four coordinates or a 2x2 complex matrix as JSON; random if absent.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 3)]
        level: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = PivotArg::MaxDecrease)]
        pivot: PivotArg,
        /// Also rewrite the word in the five generating reflections.
        #[arg(long)]
        generators: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: Suite,
    },
    /// Time generation and approximation at one level.
    Bench {
        #[arg(long, default_value_t = 3)]
        level: u32,
        #[arg(long, default_value_t = 100)]
        targets: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dot,
    DotPrime,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum PivotArg {
    MaxDecrease,
    MaxDot,
}

impl From<PivotArg> for Pivot {
    fn from(p: PivotArg) -> Self {
        match p {
            PivotArg::MaxDecrease => Pivot::MaxDecrease,
            PivotArg::MaxDot => Pivot::MaxDot,
        }
    }
}

fn parse_dim(s: &str) -> Result<Dimension, String> {
    match s {
        "3" => Ok(Dimension::Three),
        "4" => Ok(Dimension::Four),
        _ => Err(format!("dimension must be 3 or 4, got {s}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed run, carrying its exit code.
#[derive(Debug)]
enum Failure {
    BadInput(String),
    Guard(String),
    NonConvergence,
    Verify(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) | Failure::Internal(_) => 1,
            Failure::BadInput(_) => 2,
            Failure::Guard(_) => 3,
            Failure::NonConvergence => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LevelGuard { .. } => Failure::Guard(e.to_string()),
            Error::NonUnit(_) | Error::NotInSigma(_) | Error::WrongFamily { .. } | Error::InvalidInput(_) => {
                Failure::BadInput(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn guard(level: u32, max: u32) -> Result<(), Failure> {
    if level > max {
        return Err(Error::LevelGuard { requested: level, max }.into());
    }
    Ok(())
}

#[derive(Serialize)]
struct RootRecord {
    quaternion: QuatR,
    level: u32,
    family: Family,
}

#[derive(Serialize)]
struct RootsOutput {
    dimension: Dimension,
    level: u32,
    count: usize,
    roots: Vec<RootRecord>,
}

fn cmd_roots(cli: &Cli, dim: Dimension, level: u32, family: FamilyArg) -> Result<Emit, Failure> {
    guard(level, cli.max_level)?;
    let mut records = Vec::new();
    if level == 0 {
        let first = if dim == Dimension::Three { 1 } else { 0 };
        for n in first..4 {
            for q in [QuatR::basis(n), -QuatR::basis(n)] {
                records.push(RootRecord { quaternion: q, level: 0, family: Family::K0 });
            }
        }
    } else {
        let f = Filtration::generate(level, dim, cli.max_level)?;
        let sides: &[Side] = match family {
            FamilyArg::Dot => &[Side::Dot],
            FamilyArg::DotPrime => &[Side::DotPrime],
            FamilyArg::All => &[Side::Dot, Side::DotPrime],
        };
        for &side in sides {
            records.extend(f.roots(level, side).map(|q| RootRecord { quaternion: q.clone(), level, family: side.family() }));
        }
    }
    let out = RootsOutput { dimension: dim, level, count: records.len(), roots: records };
    let rows = out
        .roots
        .iter()
        .map(|r| {
            let c = r.quaternion.coords();
            vec![c[0].to_string(), c[1].to_string(), c[2].to_string(), c[3].to_string(), r.level.to_string(), r.family.to_string()]
        })
        .collect();
    Emit::new(&out, &["x1", "x2", "x3", "x4", "level", "family"], rows)
}

#[derive(Serialize)]
struct ClassifyOutput {
    quaternion: QuatR,
    level: u32,
    family: Family,
    dimension: Dimension,
}

fn cmd_classify(text: &str, dim: Dimension) -> Result<Emit, Failure> {
    let q = input::exact_quaternion(text)?;
    let tag = roots::classify(&q, dim)?;
    let out = ClassifyOutput { quaternion: q, level: tag.level, family: tag.family, dimension: dim };
    let row = vec![out.level.to_string(), out.family.to_string()];
    Emit::new(&out, &["level", "family"], vec![row])
}

#[derive(Serialize)]
struct DecomposeOutput {
    w: QuatR,
    factors: Vec<QuatR>,
    verified: bool,
}

fn cmd_decompose(text: &str) -> Result<Emit, Failure> {
    let q = input::exact_quaternion(text)?;
    let form = group::decompose(&q)?;
    let verified = form.evaluate() == q;
    let row = vec![
        form.w.to_string(),
        form.factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
        verified.to_string(),
    ];
    let out = DecomposeOutput { w: form.w, factors: form.factors, verified };
    Emit::new(&out, &["w", "factors", "verified"], vec![row])
}

#[derive(Serialize)]
struct ApproxOutput {
    target: [f64; 4],
    word: Vec<QuatR>,
    expanded_word: Vec<QuatR>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator_word: Option<Vec<u8>>,
    approximant_quaternion: QuatR,
    approximant_matrix: aurum_core::ExactSu2,
    residual: f64,
    residual_matrix: aurum_core::FloatSu2,
    iterations: usize,
    converged: bool,
    seed: u64,
    level: u32,
    pivot: Pivot,
    witness: [i64; 4],
}

fn cmd_approx(
    cli: &Cli,
    target: Option<&str>,
    level: u32,
    max_iter: usize,
    pivot: Pivot,
    generators: bool,
) -> Result<(Emit, bool), Failure> {
    guard(level, cli.max_level)?;
    if level == 0 {
        return Err(Failure::BadInput("the mirror set needs level >= 1".into()));
    }
    let target = match target {
        Some(text) => input::target(text)?,
        None => input::Target::Float(sample::haar_quaternions(1, cli.seed)[0]),
    };
    let f = Filtration::generate(level, Dimension::Four, cli.max_level)?;
    let m = MirrorSet::build(&f, level)?;
    let r = match &target {
        input::Target::Float(x) => approx::approximate_with(x, &m, max_iter, pivot)?,
        input::Target::Exact(q) => approx::approximate_exact_with(q, &m, max_iter, pivot)?,
    };
    let expanded = approx::expand_word(&r.word, &f)?;
    let generator_word = if generators { Some(approx::expand_to_generators(&expanded)?) } else { None };
    let out = ApproxOutput {
        target: r.target,
        word: r.word.clone(),
        expanded_word: expanded,
        generator_word,
        approximant_quaternion: r.approximant.clone(),
        approximant_matrix: r.approximant_matrix()?,
        residual: r.residual,
        residual_matrix: r.residual_matrix()?,
        iterations: r.iterations,
        converged: r.converged,
        seed: cli.seed,
        level,
        pivot,
        witness: m.z,
    };
    let row = vec![
        level.to_string(),
        cli.seed.to_string(),
        out.iterations.to_string(),
        out.converged.to_string(),
        out.residual.to_string(),
        out.word.len().to_string(),
        out.expanded_word.len().to_string(),
        out.approximant_quaternion.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
    ];
    let header = ["level", "seed", "iterations", "converged", "residual", "word_length", "expanded_length", "approximant"];
    Ok((Emit::new(&out, &header, vec![row])?, r.converged))
}

fn cmd_verify(suite: Suite) -> Result<(Emit, Option<String>), Failure> {
    let report = verify::run(suite);
    let failure = report
        .first_failure()
        .map(|c| format!("{}: {}", c.id, c.counterexample.clone().unwrap_or_default()));
    let rows = report
        .checks
        .iter()
        .map(|c| vec![c.id.clone(), format!("{:?}", c.status).to_lowercase(), c.description.clone()])
        .collect();
    Ok((Emit::new(&report, &["id", "status", "description"], rows)?, failure))
}

#[derive(Serialize)]
struct BenchOutput {
    level: u32,
    targets: usize,
    seed: u64,
    generation_ms: f64,
    mirror_build_ms: f64,
    approx_ms: f64,
    signed_mirrors: usize,
    median_residual: f64,
    max_residual: f64,
    mean_word_length: f64,
}

fn cmd_bench(cli: &Cli, level: u32, targets: usize) -> Result<Emit, Failure> {
    guard(level, cli.max_level)?;
    if level == 0 || targets == 0 {
        return Err(Failure::BadInput("bench needs level >= 1 and at least one target".into()));
    }
    let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    let t = Instant::now();
    let f = Filtration::generate(level, Dimension::Four, cli.max_level)?;
    let generation_ms = ms(t);
    let t = Instant::now();
    let m = MirrorSet::build(&f, level)?;
    let mirror_build_ms = ms(t);
    let t = Instant::now();
    let results = sample::haar_quaternions(targets, cli.seed)
        .iter()
        .map(|x| approx::approximate(x, &m, DEFAULT_MAX_ITER))
        .collect::<Result<Vec<_>, _>>()?;
    let approx_ms = ms(t);
    let residuals: Vec<f64> = results.iter().map(|r| r.residual).collect();
    let out = BenchOutput {
        level,
        targets,
        seed: cli.seed,
        generation_ms,
        mirror_build_ms,
        approx_ms,
        signed_mirrors: m.signed_count(),
        median_residual: verify::median(&residuals),
        max_residual: residuals.iter().copied().fold(0.0, f64::max),
        mean_word_length: results.iter().map(|r| r.word.len() as f64).sum::<f64>() / targets as f64,
    };
    let row = vec![
        level.to_string(),
        targets.to_string(),
        format!("{generation_ms:.3}"),
        format!("{mirror_build_ms:.3}"),
        format!("{approx_ms:.3}"),
        out.median_residual.to_string(),
        out.max_residual.to_string(),
    ];
    let header = ["level", "targets", "generation_ms", "mirror_build_ms", "approx_ms", "median_residual", "max_residual"];
    Emit::new(&out, &header, vec![row])
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Roots { dim, level, family } => cmd_roots(cli, *dim, *level, *family)?.print(cli.format),
        Command::Classify { quaternion, dim } => cmd_classify(quaternion, *dim)?.print(cli.format),
        Command::Decompose { quaternion } => cmd_decompose(quaternion)?.print(cli.format),
        Command::Approx { target, level, max_iter, pivot, generators } => {
            let (emit, converged) = cmd_approx(cli, target.as_deref(), *level, *max_iter, (*pivot).into(), *generators)?;
            emit.print(cli.format)?;
            if !converged {
                return Err(Failure::NonConvergence);
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let (emit, failure) = cmd_verify(*suite)?;
            emit.print(cli.format)?;
            match failure {
                Some(f) => Err(Failure::Verify(f)),
                None => Ok(()),
            }
        }
        Command::Bench { level, targets } => cmd_bench(cli, *level, *targets)?.print(cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let filter = if cli.quiet { "off" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(filter)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !cli.quiet {
                match &f {
                    Failure::NonConvergence => eprintln!("error: descent did not converge"),
                    Failure::BadInput(m) | Failure::Guard(m) | Failure::Verify(m) | Failure::Internal(m) => {
                        eprintln!("error: {m}")
                    }
                }
            }
            ExitCode::from(f.code())
        }
    }
}
