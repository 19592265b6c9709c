//! Verification suites: seeded random corpora checked against the
//! enumeration oracle and the closed-form guarantees. Any violation prints a
//! counterexample (instance JSON plus the offending numbers) and exits 1.

use clap::ValueEnum;
use irsbeam::baselines;
use irsbeam::binary;
use irsbeam::kary;
use irsbeam::sim::worst_case_cpp_instance;
use irsbeam::{Channel64, Instance64, PhaseAlphabet64};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::Failure;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteId {
    /// Binary solver equals exhaustive search (1000 instances, N <= 14).
    BinaryOracle,
    /// Approximation meets (1+cos(pi/K))/2 of the optimum (K in {2,3,4,8}).
    ApxRatio,
    /// Two-arc restricted search equals exhaustive search (K in {4,8}).
    RestrictedExact,
    /// Rounding meets cos^2(pi/K) of the optimum (K in {2,3,4,8}).
    CppBound,
    /// Adversarial construction drives rounding to half the optimum at K=4.
    WorstCase,
}

pub fn run(suite: SuiteId, seed: u64) -> Result<(), Failure> {
    match suite {
        SuiteId::BinaryOracle => binary_oracle(seed),
        SuiteId::ApxRatio => apx_ratio(seed),
        SuiteId::RestrictedExact => restricted_exact(seed),
        SuiteId::CppBound => cpp_bound(seed),
        SuiteId::WorstCase => worst_case(),
    }
}

fn random_instance(rng: &mut ChaCha12Rng, n: usize) -> Instance64 {
    let h0 = Channel64::new(0.2 + rng.random::<f64>(), rng.random::<f64>() * TAU).unwrap();
    let reflected = (0..n)
        .map(|_| Channel64::new(rng.random::<f64>(), rng.random::<f64>() * TAU).unwrap())
        .collect();
    Instance64::new(h0, reflected).unwrap()
}

fn corpus_rng(seed: u64, k: u32, n: usize) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed.wrapping_add(1_000 * k as u64 + n as u64))
}

fn counterexample(instance: &Instance64, detail: String) -> Failure {
    eprintln!("counterexample: {}", instance.to_json());
    Failure::property(detail)
}

fn binary_oracle(seed: u64) -> Result<(), Failure> {
    let a2 = PhaseAlphabet64::new(2).expect("binary alphabet");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let n = rng.random_range(1..=14);
        let instance = random_instance(&mut rng, n);
        let opt = instance
            .snr_boost(&binary::solve_binary_optimal(&instance))
            .expect("beam fits instance");
        let bf = instance
            .snr_boost(&baselines::brute_force(&instance, &a2, 1 << 20)?)
            .expect("beam fits instance");
        if (opt - bf).abs() > 1e-9 * bf {
            return Err(counterexample(
                &instance,
                format!("binary solver boost {opt} != brute force {bf}"),
            ));
        }
    }
    println!("binary-oracle: 1000 instances (N <= 14) matched exhaustive search within 1e-9");
    Ok(())
}

fn apx_ratio(seed: u64) -> Result<(), Failure> {
    let mut checked = 0usize;
    for k in [2u32, 3, 4, 8] {
        let alphabet = PhaseAlphabet64::new(k).expect("K >= 2");
        let bound = kary::apx_ratio_bound(&alphabet);
        for n in 1..=8usize {
            let mut rng = corpus_rng(seed, k, n);
            for _ in 0..200 {
                let instance = random_instance(&mut rng, n);
                let apx = instance
                    .snr_boost(&kary::solve_apx(&instance, &alphabet))
                    .expect("beam fits instance");
                let bf = instance
                    .snr_boost(&baselines::brute_force(&instance, &alphabet, 1 << 25)?)
                    .expect("beam fits instance");
                if apx / bf < bound - 1e-9 {
                    return Err(counterexample(
                        &instance,
                        format!("K={k}: approximation ratio {} below bound {bound}", apx / bf),
                    ));
                }
                checked += 1;
            }
        }
    }
    println!(
        "apx-ratio: {checked} instances (K in {{2,3,4,8}}, N <= 8) met (1+cos(pi/K))/2"
    );
    Ok(())
}

fn restricted_exact(seed: u64) -> Result<(), Failure> {
    let mut checked = 0usize;
    for k in [4u32, 8] {
        let alphabet = PhaseAlphabet64::new(k).expect("K >= 2");
        for n in 1..=7usize {
            let mut rng = corpus_rng(seed, k, n);
            for _ in 0..200 {
                let instance = random_instance(&mut rng, n);
                let restricted = instance
                    .snr_boost(&kary::solve_restricted_exact(&instance, &alphabet, 1 << 25)?)
                    .expect("beam fits instance");
                let bf = instance
                    .snr_boost(&baselines::brute_force(&instance, &alphabet, 1 << 25)?)
                    .expect("beam fits instance");
                if (restricted - bf).abs() > 1e-9 * bf {
                    return Err(counterexample(
                        &instance,
                        format!("K={k}: restricted search boost {restricted} != brute force {bf}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    println!("restricted-exact: {checked} instances (K in {{4,8}}, N <= 7) matched exhaustive search");
    Ok(())
}

fn cpp_bound(seed: u64) -> Result<(), Failure> {
    let mut checked = 0usize;
    for k in [2u32, 3, 4, 8] {
        let alphabet = PhaseAlphabet64::new(k).expect("K >= 2");
        let bound = baselines::cpp_ratio_bound(&alphabet);
        for n in 1..=8usize {
            let mut rng = corpus_rng(seed, k, n);
            for _ in 0..200 {
                let instance = random_instance(&mut rng, n);
                let cpp = instance
                    .snr_boost(&baselines::solve_cpp(&instance, &alphabet))
                    .expect("beam fits instance");
                let bf = instance
                    .snr_boost(&baselines::brute_force(&instance, &alphabet, 1 << 25)?)
                    .expect("beam fits instance");
                if cpp / bf < bound - 1e-9 {
                    return Err(counterexample(
                        &instance,
                        format!("K={k}: rounding ratio {} below bound {bound}", cpp / bf),
                    ));
                }
                checked += 1;
            }
        }
    }
    println!("cpp-bound: {checked} instances (K in {{2,3,4,8}}, N <= 8) met cos^2(pi/K)");
    Ok(())
}

fn worst_case() -> Result<(), Failure> {
    let a4 = PhaseAlphabet64::new(4).expect("quadrature alphabet");
    let n = 8usize;
    let instance = worst_case_cpp_instance(&a4, n, 1e-4 * n as f64, 1.0, 1e-3)?;
    let cpp = instance
        .snr_boost(&baselines::solve_cpp(&instance, &a4))
        .expect("beam fits instance");
    let opt = instance
        .snr_boost(&baselines::brute_force(&instance, &a4, 1 << 20)?)
        .expect("beam fits instance");
    let ratio = cpp / opt;
    if !(0.495..=0.505).contains(&ratio) {
        return Err(counterexample(
            &instance,
            format!("worst-case CPP/optimal ratio {ratio} not within 1% of 0.5"),
        ));
    }
    println!("worst-case: K=4 rounding/optimal ratio {ratio:.6} within 1% of 0.5");
    Ok(())
}
