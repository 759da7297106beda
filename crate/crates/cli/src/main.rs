//! Command-line front end: compute optimal measurement settings, sweep
//! parameters, run the verification oracles, and simulate the measurement.
//!
//! Exit codes: 0 success, 1 verification or unambiguity failure, 2 usage
//! error.

mod output;
mod verify;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use latidisc::discrimination::{
    analytic_subspace_optimum, optimal_average_probability, pure_success_coefficient,
};
use latidisc::simulator::{run_simulation, PhaseMode, SimConfig};
use latidisc::states::Priors;

use output::{emit, fmt_sig, Format, RunManifest};

#[derive(Parser)]
#[command(
    name = "latidisc",
    version,
    about = "Optimal programmable unambiguous discriminator for latitudinal qubit states"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Cap on worker threads (default: machine parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized checks and simulations
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepVariable {
    Theta,
    Eta1,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal measurement settings and success probabilities at one point
    Optimal {
        /// Latitude angle in radians (degrees with --degrees)
        #[arg(long)]
        theta: f64,
        /// Prior probability of state 1
        #[arg(long)]
        eta1: f64,
        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,
    },
    /// Tabulate the optimum along theta (over [0, pi]) or eta1 (over [0, 1])
    Sweep {
        /// Which parameter to sweep
        #[arg(long, value_enum)]
        variable: SweepVariable,
        /// Value of the parameter held fixed
        #[arg(long)]
        fixed: f64,
        /// Number of sample points (at least 2)
        #[arg(long)]
        points: usize,
        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,
    },
    /// Run the verification oracles and report PASS/FAIL per check
    Verify {
        /// Grid resolution of the brute-force optimizer
        #[arg(long, default_value_t = 10_000)]
        resolution: usize,
        /// Number of prior samples in the optimizer sweep
        #[arg(long, default_value_t = 101)]
        eta_samples: usize,
        /// Quadrature nodes per phase angle
        #[arg(long, default_value_t = 64)]
        quadrature_nodes: usize,
        /// Self-test of the harness: corrupt a sign in the inconclusive
        /// operator and require the bound-agreement check to fail
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Monte Carlo simulation of the optimal measurement
    Simulate {
        /// Latitude angle in radians (degrees with --degrees)
        #[arg(long)]
        theta: f64,
        /// Prior probability of state 1
        #[arg(long)]
        eta1: f64,
        /// Number of trials
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Fix the first phase instead of drawing it uniformly
        #[arg(long, requires = "phi2")]
        phi1: Option<f64>,
        /// Fix the second phase instead of drawing it uniformly
        #[arg(long, requires = "phi1")]
        phi2: Option<f64>,
        /// Interpret angle inputs as degrees
        #[arg(long)]
        degrees: bool,
    },
}

enum CliError {
    /// Invalid flag value; exits with code 2.
    Usage(String),
    /// Runtime failure (I/O, internal); exits with code 1.
    Runtime(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

impl From<latidisc::Error> for CliError {
    fn from(e: latidisc::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = cli.threads {
        builder = builder.num_threads(threads);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot build thread pool: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Optimal {
            theta,
            eta1,
            degrees,
        } => cmd_optimal(cli, theta, eta1, degrees),
        Command::Sweep {
            variable,
            fixed,
            points,
            degrees,
        } => cmd_sweep(cli, variable, fixed, points, degrees),
        Command::Verify {
            resolution,
            eta_samples,
            quadrature_nodes,
            inject_fault,
        } => cmd_verify(cli, resolution, eta_samples, quadrature_nodes, inject_fault),
        Command::Simulate {
            theta,
            eta1,
            trials,
            phi1,
            phi2,
            degrees,
        } => cmd_simulate(cli, theta, eta1, trials, phi1, phi2, degrees),
    }
}

fn to_radians(value: f64, degrees: bool) -> f64 {
    if degrees {
        value.to_radians()
    } else {
        value
    }
}

fn check_theta_flag(theta: f64) -> Result<f64, CliError> {
    if !(0.0..=PI).contains(&theta) {
        return Err(CliError::Usage(format!(
            "--theta must lie in [0, pi] radians (use --degrees for degree input), got {theta}"
        )));
    }
    Ok(theta)
}

fn check_eta1_flag(eta1: f64) -> Result<Priors, CliError> {
    Priors::new(eta1)
        .map_err(|_| CliError::Usage(format!("--eta1 must lie in [0, 1], got {eta1}")))
}

/// One table row of optimal settings at (theta, eta1).
fn optimum_row(theta: f64, priors: Priors) -> Result<(String, f64, f64, f64), CliError> {
    let opt = analytic_subspace_optimum(priors);
    let p_opt = optimal_average_probability(theta, priors)?;
    Ok((opt.regime.to_string(), opt.alpha, opt.beta, p_opt))
}

fn cmd_optimal(cli: &Cli, theta: f64, eta1: f64, degrees: bool) -> Result<ExitCode, CliError> {
    let theta = check_theta_flag(to_radians(theta, degrees))?;
    let priors = check_eta1_flag(eta1)?;
    let (regime, c1, c2, p_opt) = optimum_row(theta, priors)?;
    let pure_coeff = pure_success_coefficient(priors);

    let manifest = RunManifest::new("optimal", None)
        .param("theta", theta)
        .param("eta1", eta1);
    let csv = format!(
        "theta,eta1,regime,c1,c2,p_opt,pure_coeff\n{},{},{},{},{},{},{}\n",
        fmt_sig(theta),
        fmt_sig(eta1),
        regime,
        fmt_sig(c1),
        fmt_sig(c2),
        fmt_sig(p_opt),
        fmt_sig(pure_coeff)
    );
    let json = json!({
        "theta": theta,
        "eta1": eta1,
        "regime": regime,
        "c1": c1,
        "c2": c2,
        "p_opt": p_opt,
        "pure_coeff": pure_coeff,
        "manifest": manifest,
    });
    emit(cli.format, cli.output.as_deref(), &csv, &json, &manifest)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(
    cli: &Cli,
    variable: SweepVariable,
    fixed: f64,
    points: usize,
    degrees: bool,
) -> Result<ExitCode, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be at least 2, got {points}"
        )));
    }
    // Validate the fixed parameter against the non-swept axis.
    let fixed = match variable {
        SweepVariable::Theta => check_eta1_flag(fixed)?.eta1(),
        SweepVariable::Eta1 => check_theta_flag(to_radians(fixed, degrees))?,
    };

    let mut csv = String::from("theta,eta1,regime,c1,c2,p_opt\n");
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        let (theta, eta1) = match variable {
            SweepVariable::Theta => (t * PI, fixed),
            SweepVariable::Eta1 => (fixed, t),
        };
        let priors = Priors::new(eta1)?;
        let (regime, c1, c2, p_opt) = optimum_row(theta, priors)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_sig(theta),
            fmt_sig(eta1),
            regime,
            fmt_sig(c1),
            fmt_sig(c2),
            fmt_sig(p_opt)
        ));
        rows.push(json!({
            "theta": theta,
            "eta1": eta1,
            "regime": regime,
            "c1": c1,
            "c2": c2,
            "p_opt": p_opt,
        }));
    }

    let manifest = RunManifest::new("sweep", None)
        .param(
            "variable",
            match variable {
                SweepVariable::Theta => "theta",
                SweepVariable::Eta1 => "eta1",
            },
        )
        .param("fixed", fixed)
        .param("points", points);
    let json = json!({ "rows": rows, "manifest": manifest });
    emit(cli.format, cli.output.as_deref(), &csv, &json, &manifest)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    cli: &Cli,
    resolution: usize,
    eta_samples: usize,
    quadrature_nodes: usize,
    inject_fault: bool,
) -> Result<ExitCode, CliError> {
    if resolution < 100 {
        return Err(CliError::Usage(format!(
            "--resolution must be at least 100, got {resolution}"
        )));
    }
    if eta_samples == 0 {
        return Err(CliError::Usage("--eta-samples must be positive".into()));
    }
    if quadrature_nodes < 4 {
        return Err(CliError::Usage(format!(
            "--quadrature-nodes must be at least 4, got {quadrature_nodes}"
        )));
    }
    let checks = verify::run_checks(
        resolution,
        eta_samples,
        quadrature_nodes,
        cli.seed,
        inject_fault,
    )?;
    let all_pass = checks.iter().all(|c| c.pass);

    let mut csv = String::from("check,max_deviation,tolerance,status\n");
    for c in &checks {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            c.check,
            fmt_sig(c.max_deviation),
            fmt_sig(c.tolerance),
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }

    let manifest = RunManifest::new("verify", Some(cli.seed))
        .param("resolution", resolution)
        .param("eta_samples", eta_samples)
        .param("quadrature_nodes", quadrature_nodes)
        .param("inject_fault", inject_fault);
    let json = json!({
        "checks": checks,
        "all_pass": all_pass,
        "manifest": manifest,
    });
    emit(cli.format, cli.output.as_deref(), &csv, &json, &manifest)?;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_simulate(
    cli: &Cli,
    theta: f64,
    eta1: f64,
    trials: u64,
    phi1: Option<f64>,
    phi2: Option<f64>,
    degrees: bool,
) -> Result<ExitCode, CliError> {
    let theta = check_theta_flag(to_radians(theta, degrees))?;
    check_eta1_flag(eta1)?;
    let phase_mode = match (phi1, phi2) {
        (Some(phi1), Some(phi2)) => PhaseMode::Fixed {
            phi1: to_radians(phi1, degrees),
            phi2: to_radians(phi2, degrees),
        },
        _ => PhaseMode::Uniform,
    };
    let cfg = SimConfig::new(theta, eta1, trials, cli.seed, phase_mode)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = run_simulation(&cfg)?;

    let (mode_name, phi1_val, phi2_val) = match phase_mode {
        PhaseMode::Uniform => ("uniform", None, None),
        PhaseMode::Fixed { phi1, phi2 } => ("fixed", Some(phi1), Some(phi2)),
    };
    let mut manifest = RunManifest::new("simulate", Some(cli.seed))
        .param("theta", theta)
        .param("eta1", eta1)
        .param("trials", trials)
        .param("phase_mode", mode_name)
        .param("rng_algorithm", report.rng_algorithm);
    if let (Some(p1), Some(p2)) = (phi1_val, phi2_val) {
        manifest = manifest.param("phi1", p1).param("phi2", p2);
    }

    let csv = format!(
        "theta,eta1,trials,seed,phase_mode,n_correct_1,n_correct_2,n_wrong,n_inconclusive,\
         empirical_success,predicted_success,z_score,rng_algorithm\n\
         {},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        fmt_sig(theta),
        fmt_sig(eta1),
        trials,
        cli.seed,
        mode_name,
        report.counts.n_correct_1,
        report.counts.n_correct_2,
        report.counts.n_wrong,
        report.counts.n_inconclusive,
        fmt_sig(report.empirical_success),
        fmt_sig(report.predicted_success),
        fmt_sig(report.z_score),
        report.rng_algorithm
    );
    let json = json!({
        "theta": theta,
        "eta1": eta1,
        "trials": trials,
        "seed": cli.seed,
        "phase_mode": mode_name,
        "phi1": phi1_val,
        "phi2": phi2_val,
        "n_correct_1": report.counts.n_correct_1,
        "n_correct_2": report.counts.n_correct_2,
        "n_wrong": report.counts.n_wrong,
        "n_inconclusive": report.counts.n_inconclusive,
        "empirical_success": report.empirical_success,
        "predicted_success": report.predicted_success,
        "z_score": report.z_score,
        "rng_algorithm": report.rng_algorithm,
        "manifest": manifest,
    });
    emit(cli.format, cli.output.as_deref(), &csv, &json, &manifest)?;

    // A wrong identification means the measurement is not unambiguous:
    // that is a construction bug, not a statistical fluctuation.
    Ok(if report.counts.n_wrong > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
