//! Channel generation, estimation-error modeling, adversarial instances,
//! and the Monte Carlo harness.
//!
//! Channels follow a pathloss-plus-Rayleigh model: the background link has
//! pathloss `32.6 + 36.7 log10(d)` dB over the transmitter-receiver
//! distance, each reflected hop has `30 + 22 log10(d)` dB, and every channel
//! multiplies its amplitude scale by an independent standard complex
//! Gaussian. Estimation error is additive complex Gaussian noise on every
//! channel with standard deviation `pilot_noise_scale * sqrt(sigma^2 / P)`,
//! a deliberately simple stand-in exposing one calibration knob.
//!
//! Reproducibility: all randomness comes from ChaCha12 seeded with the
//! configured seed; trial `t` draws its channels from stream `2 t` and its
//! estimation noise from stream `2 t + 1`, so any trial can be regenerated
//! in isolation and adding algorithms never shifts the draws.

use crate::baselines;
use crate::binary;
use crate::error::Error;
use crate::kary;
use crate::model::{dbm_to_watts, linear_to_db, BeamConfig, Channel, Instance, PhaseAlphabet};
use crate::scalar::{real, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

/// Default calibration of the estimation-error magnitude. At the default
/// geometry this keeps estimates nearly exact for noise power -90 dBm while
/// corrupting phases noticeably (but not into pure noise) at -50 dBm.
pub const DEFAULT_PILOT_NOISE_SCALE: f64 = 0.003;

/// Scene geometry and radio parameters for instance generation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModelConfig<F> {
    pub tx_pos: [F; 3],
    pub irs_pos: [F; 3],
    pub rx_pos: [F; 3],
    pub n_elements: usize,
    pub power_dbm: F,
    pub noise_dbm: F,
    pub seed: u64,
}

impl<F: Real> Default for ChannelModelConfig<F> {
    fn default() -> Self {
        Self {
            tx_pos: [real(50.0), real(-200.0), real(20.0)],
            irs_pos: [real(-2.0), real(-1.0), real(0.0)],
            rx_pos: [real(0.0), real(0.0), real(0.0)],
            n_elements: 200,
            power_dbm: real(30.0),
            noise_dbm: real(-90.0),
            seed: 0,
        }
    }
}

impl<F: Real> ChannelModelConfig<F> {
    pub fn validate(&self) -> Result<(), Error> {
        if self.n_elements == 0 {
            return Err(Error::InvalidParameter("n_elements must be at least 1"));
        }
        if self.tx_pos == self.rx_pos || self.tx_pos == self.irs_pos || self.irs_pos == self.rx_pos
        {
            return Err(Error::CoincidentPositions);
        }
        if !self.power_dbm.is_finite() || !self.noise_dbm.is_finite() {
            return Err(Error::InvalidParameter("power levels must be finite"));
        }
        Ok(())
    }
}

/// Whether the solver sees the true channels or a noisy estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimationMode {
    Perfect,
    Noisy,
}

/// Estimation model; `pilot_noise_scale` is ignored in perfect mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimationConfig<F> {
    pub mode: EstimationMode,
    pub pilot_noise_scale: F,
}

impl<F: Real> EstimationConfig<F> {
    pub fn perfect() -> Self {
        Self {
            mode: EstimationMode::Perfect,
            pilot_noise_scale: F::zero(),
        }
    }

    pub fn noisy(pilot_noise_scale: F) -> Self {
        Self {
            mode: EstimationMode::Noisy,
            pilot_noise_scale,
        }
    }
}

pub fn distance<F: Real>(a: [F; 3], b: [F; 3]) -> F {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Pathloss in dB of the direct transmitter-receiver link.
pub fn background_pathloss_db<F: Real>(distance_m: F) -> F {
    real::<F>(32.6) + real::<F>(36.7) * distance_m.log10()
}

/// Pathloss in dB of one hop of the reflected path.
pub fn reflected_hop_pathloss_db<F: Real>(distance_m: F) -> F {
    real::<F>(30.0) + real::<F>(22.0) * distance_m.log10()
}

/// Amplitude scales `(background, cascaded)` implied by the geometry:
/// `10^(-PL/20)` with the cascaded pathloss summing both hops.
pub fn link_scales<F: Real>(cfg: &ChannelModelConfig<F>) -> (F, F) {
    let twenty = real::<F>(20.0);
    let ten = real::<F>(10.0);
    let pl0 = background_pathloss_db(distance(cfg.tx_pos, cfg.rx_pos));
    let pl1 = reflected_hop_pathloss_db(distance(cfg.tx_pos, cfg.irs_pos));
    let pl2 = reflected_hop_pathloss_db(distance(cfg.irs_pos, cfg.rx_pos));
    (ten.powf(-pl0 / twenty), ten.powf(-(pl1 + pl2) / twenty))
}

fn complex_gaussian<F: Real, R: Rng + ?Sized>(rng: &mut R, std_per_component: F) -> (F, F) {
    (
        F::standard_normal(rng) * std_per_component,
        F::standard_normal(rng) * std_per_component,
    )
}

/// RNG for trial `t`'s channel draws under the given seed.
pub fn channel_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(2 * trial);
    rng
}

/// RNG for trial `t`'s estimation-noise draws under the given seed.
pub fn estimation_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(2 * trial + 1);
    rng
}

/// Draws one instance: each channel is its link's amplitude scale times a
/// standard complex Gaussian (components of variance 1/2), background first.
pub fn generate_instance<F: Real, R: Rng + ?Sized>(
    cfg: &ChannelModelConfig<F>,
    rng: &mut R,
) -> Result<Instance<F>, Error> {
    cfg.validate()?;
    let (scale0, scale_casc) = link_scales(cfg);
    let comp = (real::<F>(0.5)).sqrt();
    let (re, im) = complex_gaussian(rng, scale0 * comp);
    let h0 = Channel::from_rect(re, im)?;
    let reflected = (0..cfg.n_elements)
        .map(|_| {
            let (re, im) = complex_gaussian(rng, scale_casc * comp);
            Channel::from_rect(re, im)
        })
        .collect::<Result<_, _>>()?;
    Instance::new(h0, reflected)
}

/// Per-component standard deviation of the estimation error:
/// `pilot_noise_scale * sqrt(sigma^2_linear / P_linear)`.
pub fn estimation_error_std<F: Real>(
    est: &EstimationConfig<F>,
    noise_dbm: F,
    power_dbm: F,
) -> F {
    match est.mode {
        EstimationMode::Perfect => F::zero(),
        EstimationMode::Noisy => {
            est.pilot_noise_scale * (dbm_to_watts(noise_dbm) / dbm_to_watts(power_dbm)).sqrt()
        }
    }
}

/// Adds independent complex Gaussian error to every channel (background
/// included). Perfect mode, and noisy mode with zero scale, return the input
/// unchanged; solvers run on the estimate but scoring always uses the truth.
pub fn estimate_instance<F: Real, R: Rng + ?Sized>(
    true_inst: &Instance<F>,
    est: &EstimationConfig<F>,
    noise_dbm: F,
    power_dbm: F,
    rng: &mut R,
) -> Instance<F> {
    let std = estimation_error_std(est, noise_dbm, power_dbm);
    if std == F::zero() {
        return true_inst.clone();
    }
    let perturb = |ch: &Channel<F>, rng: &mut R| {
        let (er, ei) = complex_gaussian(rng, std);
        Channel::from_rect(ch.re() + er, ch.im() + ei).expect("noise draws are finite")
    };
    let h0 = perturb(true_inst.h0(), rng);
    let reflected = true_inst
        .reflected()
        .iter()
        .map(|ch| perturb(ch, rng))
        .collect();
    Instance::new(h0, reflected).expect("additive noise keeps the background nonzero")
}

/// Adversarial instance on which closest-point rounding approaches its
/// worst-case ratio: two equal-magnitude channel groups straddle the
/// rounding boundary by `eps`, so rounding sends them to opposite sides
/// while the optimum co-rotates them. For K = 2 the groups sit at
/// `alpha_0 +- (pi/2 - eps)` (rounding leaves both in place, nearly
/// cancelling); for K >= 3 at `alpha_0 +- (omega/2 + eps)`. As
/// `beta0 -> 0` and `eps -> 0` the ratio tends to `cos^2(pi/K)`.
pub fn worst_case_cpp_instance<F: Real>(
    alphabet: &PhaseAlphabet<F>,
    n: usize,
    beta0: F,
    beta_n: F,
    eps: F,
) -> Result<Instance<F>, Error> {
    if n % 2 != 0 {
        return Err(Error::InvalidParameter(
            "worst-case construction needs an even element count",
        ));
    }
    let half_omega = alphabet.omega() / real::<F>(2.0);
    if eps < F::zero() || eps >= half_omega {
        return Err(Error::InvalidParameter(
            "eps must lie in [0, omega/2)",
        ));
    }
    let offset = if alphabet.k_levels() == 2 {
        half_omega - eps
    } else {
        half_omega + eps
    };
    let h0 = Channel::new(beta0, F::zero())?;
    let mut reflected = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        reflected.push(Channel::new(beta_n, offset)?);
    }
    for _ in 0..n / 2 {
        reflected.push(Channel::new(beta_n, -offset)?);
    }
    Instance::new(h0, reflected)
}

/// The solvers the harness can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    BinaryOptimal,
    Apx,
    Cpp,
    BruteForce,
    RestrictedExact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::BinaryOptimal,
        Algorithm::Apx,
        Algorithm::Cpp,
        Algorithm::BruteForce,
        Algorithm::RestrictedExact,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::BinaryOptimal => "binary-optimal",
            Algorithm::Apx => "apx",
            Algorithm::Cpp => "cpp",
            Algorithm::BruteForce => "brute-force",
            Algorithm::RestrictedExact => "restricted-exact",
        }
    }

    pub fn from_name(name: &str) -> Option<Algorithm> {
        Algorithm::ALL.iter().copied().find(|a| a.name() == name)
    }

    /// Runs the solver. `budget` caps the enumerative algorithms; the
    /// binary-optimal solver insists on K = 2.
    pub fn solve<F: Real>(
        &self,
        inst: &Instance<F>,
        alphabet: &PhaseAlphabet<F>,
        budget: u64,
    ) -> Result<BeamConfig<F>, Error> {
        match self {
            Algorithm::BinaryOptimal => {
                if alphabet.k_levels() != 2 {
                    return Err(Error::RequiresBinaryAlphabet {
                        algorithm: "binary-optimal",
                        k: alphabet.k_levels(),
                    });
                }
                Ok(binary::solve_binary_optimal(inst))
            }
            Algorithm::Apx => Ok(kary::solve_apx(inst, alphabet)),
            Algorithm::Cpp => Ok(baselines::solve_cpp(inst, alphabet)),
            Algorithm::BruteForce => baselines::brute_force(inst, alphabet, budget),
            Algorithm::RestrictedExact => kary::solve_restricted_exact(inst, alphabet, budget),
        }
    }
}

/// One algorithm's result on one trial, scored on the true channels.
#[derive(Clone, Debug)]
pub struct TrialOutcome<F: Real> {
    pub algorithm: Algorithm,
    pub beam: BeamConfig<F>,
    pub boost_db: F,
}

/// Runs every algorithm on trial `trial`: channels come from
/// [`channel_rng`], the estimate (what solvers see) from [`estimation_rng`],
/// and each boost is evaluated on the true channels.
pub fn run_trial<F: Real>(
    cfg: &ChannelModelConfig<F>,
    est: &EstimationConfig<F>,
    algorithms: &[Algorithm],
    alphabet: &PhaseAlphabet<F>,
    budget: u64,
    trial: u64,
) -> Result<Vec<TrialOutcome<F>>, Error> {
    let truth = generate_instance(cfg, &mut channel_rng(cfg.seed, trial))?;
    let estimate = estimate_instance(
        &truth,
        est,
        cfg.noise_dbm,
        cfg.power_dbm,
        &mut estimation_rng(cfg.seed, trial),
    );
    algorithms
        .iter()
        .map(|&algorithm| {
            let beam = algorithm.solve(&estimate, alphabet, budget)?;
            let boost = truth.snr_boost(&beam)?;
            Ok(TrialOutcome {
                algorithm,
                beam,
                boost_db: linear_to_db(boost),
            })
        })
        .collect()
}

/// Per-trial boosts (dB) of every requested algorithm, plus enough context
/// to reproduce the campaign. Percentiles and means are derived on demand
/// from the recorded trials.
#[derive(Clone, Debug)]
pub struct MonteCarloReport<F: Real> {
    pub seed: u64,
    pub trials: usize,
    pub algorithms: Vec<Algorithm>,
    /// `boosts_db[a][t]` is algorithm `a`'s boost on trial `t`.
    pub boosts_db: Vec<Vec<F>>,
}

/// Nearest-rank percentile of an ascending-sorted slice: the element at
/// rank `ceil(p/100 * n)` (1-based), clamped to the ends.
pub fn percentile_nearest_rank<F: Real>(sorted: &[F], percentile: f64) -> F {
    assert!(!sorted.is_empty(), "percentile of an empty sample");
    let n = sorted.len();
    let rank = (percentile / 100.0 * n as f64).ceil() as usize;
    sorted[rank.clamp(1, n) - 1]
}

#[derive(Serialize)]
struct AlgorithmSummary<F> {
    algorithm: &'static str,
    mean_db: F,
    p1_db: F,
    p5_db: F,
    p50_db: F,
}

#[derive(Serialize)]
struct CampaignSummary<'a, F: Real> {
    seed: u64,
    trials: usize,
    config: &'a ChannelModelConfig<F>,
    estimation: &'a EstimationConfig<F>,
    algorithms: Vec<AlgorithmSummary<F>>,
}

impl<F: Real> MonteCarloReport<F> {
    pub fn mean_db(&self, algorithm_index: usize) -> F {
        let samples = &self.boosts_db[algorithm_index];
        samples.iter().copied().sum::<F>() / real(samples.len() as f64)
    }

    /// Ascending boosts of one algorithm, i.e. the x-coordinates of its
    /// empirical CDF at heights 1/n, 2/n, ..., 1.
    pub fn cdf_samples(&self, algorithm_index: usize) -> Vec<F> {
        let mut sorted = self.boosts_db[algorithm_index].clone();
        sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite boosts"));
        sorted
    }

    pub fn percentile_db(&self, algorithm_index: usize, percentile: f64) -> F {
        percentile_nearest_rank(&self.cdf_samples(algorithm_index), percentile)
    }

    /// Trial-major CSV with columns `trial,algorithm,boost_db`, boosts
    /// fixed to 4 decimal places.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,algorithm,boost_db\n");
        for t in 0..self.trials {
            for (a, alg) in self.algorithms.iter().enumerate() {
                out.push_str(&format!("{t},{},{:.4}\n", alg.name(), self.boosts_db[a][t]));
            }
        }
        out
    }

    /// JSON summary: seed, configs, and per-algorithm mean and 1st/5th/50th
    /// percentiles.
    pub fn summary_json(
        &self,
        cfg: &ChannelModelConfig<F>,
        est: &EstimationConfig<F>,
    ) -> Result<String, Error> {
        let algorithms = self
            .algorithms
            .iter()
            .enumerate()
            .map(|(i, alg)| AlgorithmSummary {
                algorithm: alg.name(),
                mean_db: self.mean_db(i),
                p1_db: self.percentile_db(i, 1.0),
                p5_db: self.percentile_db(i, 5.0),
                p50_db: self.percentile_db(i, 50.0),
            })
            .collect();
        let summary = CampaignSummary {
            seed: self.seed,
            trials: self.trials,
            config: cfg,
            estimation: est,
            algorithms,
        };
        Ok(serde_json::to_string_pretty(&summary)?)
    }
}

/// Runs `trials` independent trials and collects the boosts. Deterministic
/// in (config, estimation, algorithm list, trials).
pub fn run_monte_carlo<F: Real>(
    cfg: &ChannelModelConfig<F>,
    est: &EstimationConfig<F>,
    algorithms: &[Algorithm],
    alphabet: &PhaseAlphabet<F>,
    budget: u64,
    trials: usize,
) -> Result<MonteCarloReport<F>, Error> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    if algorithms.is_empty() {
        return Err(Error::InvalidParameter("at least one algorithm required"));
    }
    cfg.validate()?;
    let mut boosts_db = vec![Vec::with_capacity(trials); algorithms.len()];
    for trial in 0..trials {
        let outcomes = run_trial(cfg, est, algorithms, alphabet, budget, trial as u64)?;
        for (a, outcome) in outcomes.into_iter().enumerate() {
            boosts_db[a].push(outcome.boost_db);
        }
    }
    Ok(MonteCarloReport {
        seed: cfg.seed,
        trials,
        algorithms: algorithms.to_vec(),
        boosts_db,
    })
}
