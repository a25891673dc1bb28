//! `kahler`: classify Kähler potentials on the Ricci-symmetry ladder.
//!
//! Exit codes: 0 completed, 1 input error, 2 preflight failure,
//! 3 lattice or route inconsistency, or a failing identity check.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kahler_core::classifier::{SamplePlan, Tolerances, DEFAULT_TOL};
use kahler_core::report::{render_table, run, run_identities, RunError};
use kahler_core::symmetry::{rotation_experiment, transport_experiment, ExperimentResult, TRANSPORT_STEPS};
use kahler_core::metric::MetricField;
use kahler_core::tensor::{adapted_frame, Vector};
use kahler_core::zoo::{resolve, zoo, zoo_entry, ManifoldSpec};

const EXIT_INPUT: u8 = 1;
const EXIT_PREFLIGHT: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(name = "kahler", version, about = "Ricci-symmetry classification of Kähler potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PlanArgs {
    /// Sample points.
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// Directions per point.
    #[arg(long, default_value_t = 20)]
    dirs: usize,
    /// Holomorphic planes per point.
    #[arg(long, default_value_t = 20)]
    planes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for every criterion.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

impl PlanArgs {
    fn plan(&self) -> SamplePlan {
        SamplePlan {
            points: self.points,
            directions: self.dirs,
            planes: self.planes,
            seed: self.seed,
            tolerances: Tolerances::uniform(self.tol),
            ..SamplePlan::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a zoo manifold or manifest file.
    Classify {
        target: String,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Run only the identity suite.
    VerifyIdentities {
        target: String,
        #[command(flatten)]
        plan: PlanArgs,
    },
    /// Numerical experiments on a zoo manifold.
    Experiment {
        kind: ExperimentKind,
        name: String,
        /// Step ladder for the rotation experiment.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-2, 5e-3, 2.5e-3])]
        eps: Vec<f64>,
        /// Step ladder for the transport experiment.
        #[arg(long, value_delimiter = ',', default_values_t = [0.04, 0.02, 0.01])]
        h: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in manifolds.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentKind {
    Rotation,
    Transport,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn run_error(e: RunError) -> ExitCode {
    match e {
        RunError::Preflight(_) => fail(EXIT_PREFLIGHT, e),
        other => fail(EXIT_INPUT, other),
    }
}

fn write_json(path: &Option<PathBuf>, json: &str) -> Result<(), ExitCode> {
    if let Some(path) = path {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn resolve_or_exit(target: &str) -> Result<ManifoldSpec, ExitCode> {
    resolve(target).map_err(|e| fail(EXIT_INPUT, e))
}

fn classify_cmd(target: &str, args: &PlanArgs) -> Result<ExitCode, ExitCode> {
    let spec = resolve_or_exit(target)?;
    let report = run(&spec, &args.plan()).map_err(run_error)?;
    print!("{}", render_table(&report));
    println!("elapsed: {:.2?}", report.elapsed);
    write_json(&args.json, &report.to_json())?;
    if !report.verdict.is_consistent() {
        return Ok(fail(EXIT_INCONSISTENT, "verdict violates the ladder or its characterizations"));
    }
    if report.identities.iter().any(|c| !c.passed) {
        return Ok(fail(EXIT_INCONSISTENT, "identity suite failed"));
    }
    Ok(ExitCode::SUCCESS)
}

fn identities_cmd(target: &str, args: &PlanArgs) -> Result<ExitCode, ExitCode> {
    let spec = resolve_or_exit(target)?;
    let report = run_identities(&spec, &args.plan()).map_err(run_error)?;
    println!("{} ({} points, seed {})", spec.name, args.points, args.seed);
    for c in &report.identities {
        let status = if c.passed { "pass" } else { "FAIL" };
        println!("{:<28} {:>11.3e}  (tol {:.0e})  {status}", c.name, c.violation, c.tolerance);
    }
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_json(&args.json, &json)?;
    if !report.passed {
        return Ok(fail(EXIT_INCONSISTENT, "identity suite failed"));
    }
    Ok(ExitCode::SUCCESS)
}

fn print_experiment(r: &ExperimentResult) {
    for (step, defect) in r.ladder.iter().zip(&r.defects) {
        println!("  step {step:<10.3e} defect {defect:+.6e}");
    }
    println!("  extrapolated {:+.10e}", r.extrapolated);
    println!("  predicted    {:+.10e}", r.predicted);
    println!("  abs error {:.3e}, rel error {:.3e}", r.absolute_error, r.relative_error);
}

fn experiment_cmd(kind: ExperimentKind, name: &str, eps: &[f64], h: &[f64], seed: u64) -> Result<ExitCode, ExitCode> {
    use rand::{Rng, SeedableRng};
    let spec = zoo_entry(name).ok_or_else(|| fail(EXIT_INPUT, format!("unknown zoo manifold `{name}`")))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let dim = 2 * spec.n;
    // centre of the domain box, nudged off symmetric points
    let point: Vec<f64> = spec
        .domain
        .iter()
        .map(|[lo, hi]| 0.5 * (lo + hi) + 0.1 * (hi - lo) * rng.gen_range(-1.0..1.0))
        .collect();
    let v = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
    let field = MetricField::new(spec.expr.clone(), spec.n);
    let result = match kind {
        ExperimentKind::Rotation => {
            let jet = field.jet(&point, 3).map_err(|e| fail(EXIT_INPUT, e))?;
            let bundle = kahler_core::curvature::curvature_bundle(&jet).map_err(|e| fail(EXIT_INPUT, e))?;
            let seed_vec = Vector::from_fn(dim, |_, _| rng.gen_range(-1.0..1.0));
            let frame = adapted_frame(&bundle.g, &bundle.j, &seed_vec).map_err(|e| fail(EXIT_INPUT, e))?;
            let f = frame.vectors();
            let x = f[0].clone();
            let y = if spec.n >= 2 { (&f[1] + &f[spec.n]) / 2f64.sqrt() } else { f[1].clone() };
            println!("rotation experiment on {name} at {point:?}");
            rotation_experiment(&bundle.g, &bundle.ricci, &bundle.j, &v, &x, &y, eps)
        }
        ExperimentKind::Transport => {
            println!("transport experiment on {name} at {point:?}, plane (∂_0, ∂_{})", spec.n);
            transport_experiment(&field, &point, &v, 0, spec.n.min(dim - 1), h, TRANSPORT_STEPS)
        }
    }
    .map_err(|e| fail(EXIT_INPUT, e))?;
    print_experiment(&result);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Classify { target, plan } => classify_cmd(target, plan),
        Command::VerifyIdentities { target, plan } => identities_cmd(target, plan),
        Command::Experiment {
            kind,
            name,
            eps,
            h,
            seed,
        } => experiment_cmd(*kind, name, eps, h, *seed),
        Command::Zoo { action: ZooAction::List } => {
            for spec in zoo() {
                let class = spec.expected_class.map_or("-", |c| c.name());
                println!("{:<26} n={}  {:<26} {}", spec.name, spec.n, class, spec.potential);
            }
            Ok(ExitCode::SUCCESS)
        }
    };
    outcome.unwrap_or_else(|code| code)
}
