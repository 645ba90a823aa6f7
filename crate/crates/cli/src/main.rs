//! `torelli-verify`: run verifiers and write JSON certificates.
//!
//! Exit codes: 0 when every certificate passes, 1 when any fails, 2 on usage
//! or parameter errors, 3 when nothing failed but something was inconclusive.

mod settings;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use settings::Settings;
use torelli_core::certificate::emit;
use torelli_core::lantern::Handedness;
use torelli_core::verify::{plan_sweep, KPolicy, SweepSpec};
use torelli_core::{run, Budget, Certificate, PropositionId, RunOptions, RunRequest, SurfaceKind, Verdict};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "torelli-verify", version, about = "Exact verification of Torelli group generation facts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verifier.
    Verify(VerifyArgs),
    /// Run verifiers over a range of parameters.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Common {
    /// Maximum number of orbit images per certificate [default: 50000].
    #[arg(long)]
    budget: Option<usize>,
    /// Soft wall-clock cap per certificate, in seconds [default: 300].
    #[arg(long, value_name = "SECS")]
    time_limit: Option<u64>,
    /// Use the mirrored twist convention for lantern computations.
    #[arg(long)]
    mirror_twists: bool,
    /// Record wall-clock time in elapsed_ms (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    /// Settings file with key = value lines; flags override it.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Proposition id, e.g. tau-surjectivity or factorization-3.2.
    proposition: PropositionId,
    #[arg(long)]
    genus: Option<usize>,
    /// Genus of the bounding pair map.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    surface: Option<SurfaceKind>,
    /// Write the certificate here instead of printing it.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    gmin: Option<usize>,
    #[arg(long)]
    gmax: Option<usize>,
    /// Fixed bounding pair genus; every valid k when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// Surface kinds, comma separated [default: all].
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    kinds: Option<Vec<SurfaceKind>>,
    /// Proposition ids, comma separated [default: all].
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    props: Option<Vec<PropositionId>>,
    /// Directory for certificate files.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads [default: one per core].
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: Common,
}

type CliResult<T> = Result<T, String>;

fn load_settings(path: &Option<PathBuf>) -> CliResult<Settings> {
    path.as_deref().map_or_else(|| Ok(Settings::default()), Settings::load)
}

fn options(common: &Common, settings: &Settings) -> CliResult<RunOptions> {
    let mut budget = Budget::default();
    if let Some(n) = common.budget.or(settings.get("budget")?) {
        budget.max_orbit = n;
    }
    if let Some(s) = common.time_limit.or(settings.get("time_limit")?) {
        budget.time_limit = Some(Duration::from_secs(s));
    }
    let mirror = common.mirror_twists || settings.flag("mirror_twists")?;
    Ok(RunOptions {
        budget,
        handedness: Handedness::from_mirror_flag(mirror),
        timings: common.timings || settings.flag("timings")?,
    })
}

fn exit_code(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    match Verdict::combine(verdicts) {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn describe(req: &RunRequest) -> String {
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "g={:<2} k={:<2} {:<9}",
        show(req.genus.map(|g| g.to_string())),
        show(req.k.map(|k| k.to_string())),
        show(req.surface.map(|s| s.to_string()))
    )
}

fn headline(cert: &Certificate) -> String {
    let keys = ["rank", "dimension", "total_dimension"];
    keys.iter().find_map(|k| cert.int_metric(k).map(|v| format!("{k}={v}"))).unwrap_or_default()
}

fn verify(args: VerifyArgs) -> CliResult<u8> {
    let settings = load_settings(&args.common.config)?;
    let opts = options(&args.common, &settings)?;
    let req = RunRequest {
        genus: args.genus.or(settings.get("genus")?),
        k: args.k.or(settings.get("k")?),
        surface: args.surface.or(settings.get("surface")?),
    };
    let cert = run(args.proposition, &req, &opts).map_err(|e| e.to_string())?;
    match args.json.or(settings.get("json")?) {
        Some(path) => {
            emit(&cert, &path).map_err(|e| e.to_string())?;
            println!("{} {} {} {}", cert.proposition, describe(&req), cert.verdict, headline(&cert));
        }
        None => print!("{}", cert.to_canonical_json()),
    }
    Ok(exit_code([cert.verdict]))
}

fn sweep(args: SweepArgs) -> CliResult<u8> {
    let settings = load_settings(&args.common.config)?;
    let opts = options(&args.common, &settings)?;
    let gmin = args.gmin.or(settings.get("gmin")?).ok_or("sweep needs --gmin")?;
    let gmax = args.gmax.or(settings.get("gmax")?).ok_or("sweep needs --gmax")?;
    let mut spec = SweepSpec::new(gmin, gmax);
    if let Some(k) = args.k.or(settings.get("k")?) {
        spec.k = KPolicy::Fixed(k);
    }
    if let Some(kinds) = args.kinds.map_or_else(|| settings.list("kinds"), |v| Ok(Some(v)))? {
        spec.kinds = kinds;
    }
    if let Some(props) = args.props.map_or_else(|| settings.list("props"), |v| Ok(Some(v)))? {
        spec.props = props;
    }
    let out: Option<PathBuf> = args.out.or(settings.get("out")?);
    let plan = plan_sweep(&spec).map_err(|e| e.to_string())?;
    if let Some(dir) = &out {
        fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    }

    let jobs = args.jobs.or(settings.get("jobs")?).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| e.to_string())?;
    let results: Vec<_> = pool.install(|| {
        plan.par_iter()
            .map(|(id, req)| {
                let cert = run(*id, req, &opts).map_err(|e| e.to_string())?;
                if let Some(dir) = &out {
                    emit(&cert, &dir.join(format!("{}.json", req.file_stem(*id)))).map_err(|e| e.to_string())?;
                }
                Ok(cert)
            })
            .collect::<Vec<CliResult<Certificate>>>()
    });

    let mut verdicts = Vec::new();
    let mut errors = 0;
    for ((id, req), result) in plan.iter().zip(&results) {
        match result {
            Ok(cert) => {
                println!("{:<28} {} {:<12} {}", id.as_str(), describe(req), cert.verdict.to_string(), headline(cert));
                verdicts.push(cert.verdict);
            }
            Err(e) => {
                println!("{:<28} {} {:<12} {e}", id.as_str(), describe(req), "error");
                errors += 1;
            }
        }
    }
    let count = |v: Verdict| verdicts.iter().filter(|x| **x == v).count();
    println!(
        "total {}: pass {}, fail {}, inconclusive {}, error {errors}",
        plan.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Inconclusive)
    );
    if errors > 0 {
        return Ok(EXIT_USAGE);
    }
    Ok(exit_code(verdicts))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Sweep(args) => sweep(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
