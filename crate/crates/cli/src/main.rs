//! Command-line front end for the discrete phase-shift solvers: solve single
//! instances from JSON, generate figure data, run verification suites, and
//! execute Monte Carlo campaigns.
//!
//! Exit codes: 0 success, 1 property violation from `verify`, 2 usage or
//! parse error, 3 enumeration budget exceeded.

mod figures;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use irsbeam::baselines::DEFAULT_BRUTE_FORCE_BUDGET;
use irsbeam::model::linear_to_db;
use irsbeam::sim::{
    run_monte_carlo, Algorithm, ChannelModelConfig, EstimationConfig, DEFAULT_PILOT_NOISE_SCALE,
};
use irsbeam::{Error, Instance64, PhaseAlphabet64};

/// Failure carrying the process exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn property(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "irsbeam",
    version,
    about = "Discrete phase-shift selection for reflecting surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    /// Exact binary solver (K=2 only).
    BinaryOptimal,
    /// Linear-time sector approximation.
    Apx,
    /// Cell-local rounding of the aligned continuous solution.
    Cpp,
    /// Exhaustive search over all K^N beams (budgeted).
    BruteForce,
    /// Exhaustive search restricted to two rotation arcs (budgeted).
    RestrictedExact,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(arg: AlgorithmArg) -> Self {
        match arg {
            AlgorithmArg::BinaryOptimal => Algorithm::BinaryOptimal,
            AlgorithmArg::Apx => Algorithm::Apx,
            AlgorithmArg::Cpp => Algorithm::Cpp,
            AlgorithmArg::BruteForce => Algorithm::BruteForce,
            AlgorithmArg::RestrictedExact => Algorithm::RestrictedExact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimationArg {
    /// Solvers see the true channels.
    Perfect,
    /// Solvers see channels corrupted by additive complex Gaussian error.
    Noisy,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance read from a JSON file and print the beam.
    Solve {
        /// Instance file: {"h0": {"beta", "alpha"}, "reflected": [...]}.
        #[arg(long)]
        input: PathBuf,
        /// Number of phase levels K.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Solver to run.
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        /// Enumeration budget for the exhaustive solvers.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_BUDGET)]
        budget: u64,
    },
    /// Emit CSV data for one of the named figures.
    Figures {
        /// Which figure's data to generate.
        #[arg(long, value_enum)]
        figure: figures::FigureId,
        /// Output directory for the CSV file.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Campaign seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per campaign.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Run a named verification suite; exits 1 on any violation.
    Verify {
        /// Which suite to run.
        #[arg(long, value_enum)]
        suite: verify::SuiteId,
        /// Corpus seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a Monte Carlo campaign and emit CSV (stdout or --out directory).
    Montecarlo {
        /// Number of phase levels K.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Number of reflecting elements N.
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Campaign seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of trials.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Algorithms to compare (repeat or comma-separate).
        #[arg(long = "algorithm", value_enum, value_delimiter = ',', default_values_t = [AlgorithmArg::Apx, AlgorithmArg::Cpp])]
        algorithms: Vec<AlgorithmArg>,
        /// Transmit power in dBm.
        #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
        power_dbm: f64,
        /// Noise power in dBm.
        #[arg(long, default_value_t = -90.0, allow_negative_numbers = true)]
        noise_dbm: f64,
        /// Channel knowledge given to the solvers.
        #[arg(long, value_enum, default_value_t = EstimationArg::Perfect)]
        estimation: EstimationArg,
        /// Estimation error scale relative to sqrt(noise/power).
        #[arg(long, default_value_t = DEFAULT_PILOT_NOISE_SCALE)]
        pilot_noise_scale: f64,
        /// Enumeration budget for the exhaustive solvers.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_BUDGET)]
        budget: u64,
        /// Directory for montecarlo.csv and summary.json; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            input,
            k,
            algorithm,
            budget,
        } => cmd_solve(&input, k, algorithm.into(), budget),
        Command::Figures {
            figure,
            out,
            seed,
            trials,
        } => figures::run(figure, &out, seed, trials),
        Command::Verify { suite, seed } => verify::run(suite, seed),
        Command::Montecarlo {
            k,
            n,
            seed,
            trials,
            algorithms,
            power_dbm,
            noise_dbm,
            estimation,
            pilot_noise_scale,
            budget,
            out,
        } => {
            let config = ChannelModelConfig {
                n_elements: n,
                power_dbm,
                noise_dbm,
                seed,
                ..ChannelModelConfig::default()
            };
            let est = match estimation {
                EstimationArg::Perfect => EstimationConfig::perfect(),
                EstimationArg::Noisy => EstimationConfig::noisy(pilot_noise_scale),
            };
            let algorithms: Vec<Algorithm> = algorithms.into_iter().map(Into::into).collect();
            cmd_montecarlo(k, &config, &est, &algorithms, budget, trials, out.as_deref())
        }
    }
}

/// Reads an instance, solves it, and prints indices, realized phases, and
/// the boost in linear and dB form.
fn cmd_solve(input: &PathBuf, k: u32, algorithm: Algorithm, budget: u64) -> Result<(), Failure> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", input.display())))?;
    let instance = Instance64::from_json(&text)?;
    let alphabet = PhaseAlphabet64::new(k)?;
    let beam = algorithm.solve(&instance, &alphabet, budget)?;
    let boost = instance.snr_boost(&beam)?;

    let indices: Vec<String> = beam.indices().iter().map(|i| i.to_string()).collect();
    let phases: Vec<String> = beam
        .indices()
        .iter()
        .map(|&i| format!("{:.8e}", alphabet.phase_of(i)))
        .collect();
    println!("algorithm: {}", algorithm.name());
    println!("k: {k}");
    println!("n: {}", instance.n());
    println!("indices: {}", indices.join(" "));
    println!("phases_rad: {}", phases.join(" "));
    println!("boost: {boost:.8e}");
    println!("boost_db: {:.4}", linear_to_db(boost));
    Ok(())
}

fn cmd_montecarlo(
    k: u32,
    config: &ChannelModelConfig<f64>,
    est: &EstimationConfig<f64>,
    algorithms: &[Algorithm],
    budget: u64,
    trials: usize,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let alphabet = PhaseAlphabet64::new(k)?;
    let report = run_monte_carlo(config, est, algorithms, &alphabet, budget, trials)?;
    let csv = report.to_csv();
    let summary = report.summary_json(config, est)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::io(format!("cannot create {}: {e}", dir.display())))?;
            let csv_path = dir.join("montecarlo.csv");
            let json_path = dir.join("summary.json");
            fs::write(&csv_path, &csv)
                .map_err(|e| Failure::io(format!("cannot write {}: {e}", csv_path.display())))?;
            fs::write(&json_path, &summary)
                .map_err(|e| Failure::io(format!("cannot write {}: {e}", json_path.display())))?;
            eprintln!("wrote {} and {}", csv_path.display(), json_path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}
