//! Figure data generation: each figure id maps to one CSV file with the
//! numbers needed to re-plot it. Campaigns are deterministic in the seed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use irsbeam::baselines::{self, DEFAULT_BRUTE_FORCE_BUDGET};
use irsbeam::kary;
use irsbeam::sim::{
    link_scales, run_monte_carlo, Algorithm, ChannelModelConfig, EstimationConfig,
    MonteCarloReport, DEFAULT_PILOT_NOISE_SCALE,
};
use irsbeam::PhaseAlphabet64;

use crate::Failure;

/// The six IRS placements of the position sweep, ordered by increasing
/// background-to-reflected magnitude ratio.
pub const IRS_POSITIONS: [[f64; 3]; 6] = [
    [-1.0, -1.0, 0.0],
    [-2.0, -1.0, 0.0],
    [-2.5, -1.0, 0.0],
    [-3.0, -1.0, 0.0],
    [-3.5, -1.0, 0.0],
    [-4.0, -1.0, 0.0],
];

#[derive(Clone, Copy, ValueEnum)]
pub enum FigureId {
    /// Guaranteed approximation ratios of the three algorithms over K.
    RatioCurves,
    /// Boost distribution, binary alphabet, N in {100, 200}.
    CdfK2,
    /// Boost distribution, quadrature alphabet, N = 200.
    CdfK4,
    /// 1st-percentile boosts of the binary optimum and rounding over N.
    PercentileVsN,
    /// Mean boosts across the IRS position sweep.
    BoostVsBeta,
    /// Tail-percentile boosts across the IRS position sweep.
    PercentileVsBeta,
    /// Boost distribution under noisy estimation at two noise floors.
    CdfNoise,
}

impl FigureId {
    fn file_name(self) -> &'static str {
        match self {
            FigureId::RatioCurves => "ratio-curves.csv",
            FigureId::CdfK2 => "cdf-k2.csv",
            FigureId::CdfK4 => "cdf-k4.csv",
            FigureId::PercentileVsN => "percentile-vs-n.csv",
            FigureId::BoostVsBeta => "boost-vs-beta.csv",
            FigureId::PercentileVsBeta => "percentile-vs-beta.csv",
            FigureId::CdfNoise => "cdf-noise.csv",
        }
    }
}

pub fn run(figure: FigureId, out: &Path, seed: u64, trials: usize) -> Result<(), Failure> {
    let csv = match figure {
        FigureId::RatioCurves => ratio_curves(),
        FigureId::CdfK2 => cdf_k2(seed, trials)?,
        FigureId::CdfK4 => cdf_k4(seed, trials)?,
        FigureId::PercentileVsN => percentile_vs_n(seed, trials)?,
        FigureId::BoostVsBeta => boost_vs_beta(seed, trials)?,
        FigureId::PercentileVsBeta => percentile_vs_beta(seed, trials)?,
        FigureId::CdfNoise => cdf_noise(seed, trials)?,
    };
    fs::create_dir_all(out)
        .map_err(|e| Failure::io(format!("cannot create {}: {e}", out.display())))?;
    let path = out.join(figure.file_name());
    fs::write(&path, csv)
        .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn campaign(
    k: u32,
    config: &ChannelModelConfig<f64>,
    est: &EstimationConfig<f64>,
    algorithms: &[Algorithm],
    trials: usize,
) -> Result<MonteCarloReport<f64>, Failure> {
    let alphabet = PhaseAlphabet64::new(k)?;
    Ok(run_monte_carlo(
        config,
        est,
        algorithms,
        &alphabet,
        DEFAULT_BRUTE_FORCE_BUDGET,
        trials,
    )?)
}

/// `k,apx_bound,cpp_bound,sdr_bound` for K = 2..=64, nine decimals.
fn ratio_curves() -> String {
    let mut csv = String::from("k,apx_bound,cpp_bound,sdr_bound\n");
    for k in 2..=64u32 {
        let alphabet = PhaseAlphabet64::new(k).expect("K >= 2");
        let _ = writeln!(
            csv,
            "{k},{:.9},{:.9},{:.9}",
            kary::apx_ratio_bound(&alphabet),
            baselines::cpp_ratio_bound(&alphabet),
            baselines::sdr_ratio_bound(&alphabet),
        );
    }
    csv
}

/// Per-trial boosts for K=2 at N in {100, 200}: `n,trial,algorithm,boost_db`.
fn cdf_k2(seed: u64, trials: usize) -> Result<String, Failure> {
    let algorithms = [Algorithm::Apx, Algorithm::Cpp];
    let mut csv = String::from("n,trial,algorithm,boost_db\n");
    for n in [100usize, 200] {
        let config = ChannelModelConfig {
            n_elements: n,
            seed,
            ..ChannelModelConfig::default()
        };
        let report = campaign(2, &config, &EstimationConfig::perfect(), &algorithms, trials)?;
        append_trials(&mut csv, &report, &format!("{n},"));
    }
    Ok(csv)
}

/// Per-trial boosts for K=4 at N=200: `trial,algorithm,boost_db`.
fn cdf_k4(seed: u64, trials: usize) -> Result<String, Failure> {
    let config = ChannelModelConfig {
        seed,
        ..ChannelModelConfig::default()
    };
    let report = campaign(
        4,
        &config,
        &EstimationConfig::perfect(),
        &[Algorithm::Apx, Algorithm::Cpp],
        trials,
    )?;
    Ok(report.to_csv())
}

/// 1st-percentile boosts of the binary optimum vs rounding over N:
/// `n,p1_optimal_db,p1_cpp_db,gap_db`.
fn percentile_vs_n(seed: u64, trials: usize) -> Result<String, Failure> {
    let mut csv = String::from("n,p1_optimal_db,p1_cpp_db,gap_db\n");
    for n in [25usize, 50, 100, 200] {
        let config = ChannelModelConfig {
            n_elements: n,
            seed,
            ..ChannelModelConfig::default()
        };
        let report = campaign(
            2,
            &config,
            &EstimationConfig::perfect(),
            &[Algorithm::BinaryOptimal, Algorithm::Cpp],
            trials,
        )?;
        let p1_opt = report.percentile_db(0, 1.0);
        let p1_cpp = report.percentile_db(1, 1.0);
        let _ = writeln!(
            csv,
            "{n},{p1_opt:.4},{p1_cpp:.4},{:.4}",
            p1_opt - p1_cpp
        );
    }
    Ok(csv)
}

/// Mean boosts over the IRS position sweep for K in {2, 4}:
/// `irs_x,irs_y,irs_z,beta_ratio,k,mean_apx_db,mean_cpp_db,gap_db`.
fn boost_vs_beta(seed: u64, trials: usize) -> Result<String, Failure> {
    let mut csv = String::from("irs_x,irs_y,irs_z,beta_ratio,k,mean_apx_db,mean_cpp_db,gap_db\n");
    for pos in IRS_POSITIONS {
        let config = ChannelModelConfig {
            irs_pos: pos,
            seed,
            ..ChannelModelConfig::default()
        };
        let (background, cascaded) = link_scales(&config);
        for k in [2u32, 4] {
            let report = campaign(
                k,
                &config,
                &EstimationConfig::perfect(),
                &[Algorithm::Apx, Algorithm::Cpp],
                trials,
            )?;
            let mean_apx = report.mean_db(0);
            let mean_cpp = report.mean_db(1);
            let _ = writeln!(
                csv,
                "{},{},{},{:.6},{k},{mean_apx:.4},{mean_cpp:.4},{:.4}",
                pos[0],
                pos[1],
                pos[2],
                background / cascaded,
                mean_apx - mean_cpp
            );
        }
    }
    Ok(csv)
}

/// Tail percentiles over the IRS position sweep for K in {2, 4}:
/// `irs_x,irs_y,irs_z,beta_ratio,k,p1_apx_db,p1_cpp_db,p5_apx_db,p5_cpp_db`.
fn percentile_vs_beta(seed: u64, trials: usize) -> Result<String, Failure> {
    let mut csv =
        String::from("irs_x,irs_y,irs_z,beta_ratio,k,p1_apx_db,p1_cpp_db,p5_apx_db,p5_cpp_db\n");
    for pos in IRS_POSITIONS {
        let config = ChannelModelConfig {
            irs_pos: pos,
            seed,
            ..ChannelModelConfig::default()
        };
        let (background, cascaded) = link_scales(&config);
        for k in [2u32, 4] {
            let report = campaign(
                k,
                &config,
                &EstimationConfig::perfect(),
                &[Algorithm::Apx, Algorithm::Cpp],
                trials,
            )?;
            let _ = writeln!(
                csv,
                "{},{},{},{:.6},{k},{:.4},{:.4},{:.4},{:.4}",
                pos[0],
                pos[1],
                pos[2],
                background / cascaded,
                report.percentile_db(0, 1.0),
                report.percentile_db(1, 1.0),
                report.percentile_db(0, 5.0),
                report.percentile_db(1, 5.0),
            );
        }
    }
    Ok(csv)
}

/// Per-trial boosts under noisy estimation at noise floors -90 and -50 dBm:
/// `noise_dbm,trial,algorithm,boost_db`.
fn cdf_noise(seed: u64, trials: usize) -> Result<String, Failure> {
    let mut csv = String::from("noise_dbm,trial,algorithm,boost_db\n");
    for noise_dbm in [-90.0f64, -50.0] {
        let config = ChannelModelConfig {
            noise_dbm,
            seed,
            ..ChannelModelConfig::default()
        };
        let report = campaign(
            2,
            &config,
            &EstimationConfig::noisy(DEFAULT_PILOT_NOISE_SCALE),
            &[Algorithm::Apx, Algorithm::Cpp],
            trials,
        )?;
        append_trials(&mut csv, &report, &format!("{noise_dbm},"));
    }
    Ok(csv)
}

/// Appends `prefix` + `trial,algorithm,boost_db` rows, trial-major like
/// [`MonteCarloReport::to_csv`].
fn append_trials(csv: &mut String, report: &MonteCarloReport<f64>, prefix: &str) {
    for trial in 0..report.trials {
        for (a, algorithm) in report.algorithms.iter().enumerate() {
            let _ = writeln!(
                csv,
                "{prefix}{trial},{},{:.4}",
                algorithm.name(),
                report.boosts_db[a][trial]
            );
        }
    }
}
