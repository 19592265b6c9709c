//! Cross-module invariants checked on randomized instances.

use irsbeam::baselines;
use irsbeam::binary;
use irsbeam::kary;
use irsbeam::sim::Algorithm;
use irsbeam::{Channel64, Instance64, PhaseAlphabet64};
use proptest::prelude::*;

const TAU: f64 = std::f64::consts::TAU;

fn instance(beta0: f64, alpha0: f64, channels: &[(f64, f64)]) -> Instance64 {
    let h0 = Channel64::new(beta0, alpha0).unwrap();
    let reflected = channels
        .iter()
        .map(|&(b, a)| Channel64::new(b, a).unwrap())
        .collect();
    Instance64::new(h0, reflected).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Brute force upper-bounds every solver, and the searched-set
    /// inclusions CPP <= APX <= restricted-exact = brute force hold.
    #[test]
    fn solver_hierarchy(
        k in 2u32..6,
        beta0 in 0.1f64..2.0,
        alpha0 in 0.0f64..TAU,
        channels in proptest::collection::vec((0.0f64..1.0, 0.0f64..TAU), 1..7),
    ) {
        let inst = instance(beta0, alpha0, &channels);
        let alphabet = PhaseAlphabet64::new(k).unwrap();
        let boost = |beam| inst.snr_boost(&beam).unwrap();
        let bf = boost(baselines::brute_force(&inst, &alphabet, 1 << 18).unwrap());
        let apx = boost(kary::solve_apx(&inst, &alphabet));
        let cpp = boost(baselines::solve_cpp(&inst, &alphabet));
        let restricted = boost(kary::solve_restricted_exact(&inst, &alphabet, 1 << 10).unwrap());
        prop_assert!(apx <= bf * (1.0 + 1e-12));
        prop_assert!(cpp <= bf * (1.0 + 1e-12));
        prop_assert!(cpp <= apx * (1.0 + 1e-12));
        prop_assert!((restricted - bf).abs() <= 1e-9 * bf);
        prop_assert!(bf <= inst.alignment_bound() * (1.0 + 1e-12));
    }

    /// The rounding baseline keeps at least cos^2(pi/K) of the optimum.
    #[test]
    fn rounding_ratio_bound(
        k in 2u32..9,
        beta0 in 0.1f64..2.0,
        alpha0 in 0.0f64..TAU,
        channels in proptest::collection::vec((0.0f64..1.0, 0.0f64..TAU), 1..6),
    ) {
        let inst = instance(beta0, alpha0, &channels);
        let alphabet = PhaseAlphabet64::new(k).unwrap();
        let cpp = inst
            .snr_boost(&baselines::solve_cpp(&inst, &alphabet))
            .unwrap();
        let opt = inst
            .snr_boost(&baselines::brute_force(&inst, &alphabet, 1 << 18).unwrap())
            .unwrap();
        let bound = (std::f64::consts::PI / f64::from(k)).cos().powi(2);
        prop_assert!(cpp >= (bound - 1e-9) * opt, "cpp {cpp} opt {opt}");
    }

    /// The algorithm dispatcher returns exactly what direct calls return.
    #[test]
    fn dispatch_matches_direct_calls(
        beta0 in 0.1f64..2.0,
        alpha0 in 0.0f64..TAU,
        channels in proptest::collection::vec((0.0f64..1.0, 0.0f64..TAU), 1..7),
    ) {
        let inst = instance(beta0, alpha0, &channels);
        let a2 = PhaseAlphabet64::new(2).unwrap();
        let via_enum = Algorithm::BinaryOptimal.solve(&inst, &a2, 1 << 20).unwrap();
        let direct = binary::solve_binary_optimal(&inst);
        prop_assert_eq!(via_enum.indices(), direct.indices());
        let via_enum = Algorithm::Apx.solve(&inst, &a2, 1 << 20).unwrap();
        let direct = kary::solve_apx(&inst, &a2);
        prop_assert_eq!(via_enum.indices(), direct.indices());
    }

    /// JSON serialization round-trips instances without changing boosts.
    #[test]
    fn json_round_trip_preserves_boost(
        beta0 in 0.1f64..2.0,
        alpha0 in 0.0f64..TAU,
        channels in proptest::collection::vec((0.0f64..1.0, 0.0f64..TAU), 1..8),
    ) {
        let inst = instance(beta0, alpha0, &channels);
        let json = inst.to_json();
        let back = Instance64::from_json(&json).unwrap();
        let a4 = PhaseAlphabet64::new(4).unwrap();
        let beam = kary::solve_apx(&inst, &a4);
        prop_assert_eq!(
            inst.snr_boost(&beam).unwrap(),
            back.snr_boost(&beam).unwrap()
        );
    }

    /// Running the same pipeline in f32 agrees with f64 to float precision.
    #[test]
    fn single_precision_tracks_double(
        beta0 in 0.1f64..2.0,
        alpha0 in 0.0f64..TAU,
        channels in proptest::collection::vec((0.01f64..1.0, 0.0f64..TAU), 1..10),
    ) {
        let inst = instance(beta0, alpha0, &channels);
        let h0 = irsbeam::Channel32::new(beta0 as f32, alpha0 as f32).unwrap();
        let reflected = channels
            .iter()
            .map(|&(b, a)| irsbeam::Channel32::new(b as f32, a as f32).unwrap())
            .collect();
        let inst32 = irsbeam::Instance32::new(h0, reflected).unwrap();
        let a4_64 = PhaseAlphabet64::new(4).unwrap();
        let a4_32 = irsbeam::PhaseAlphabet32::new(4).unwrap();
        let b64 = inst.snr_boost(&kary::solve_apx(&inst, &a4_64)).unwrap();
        let b32 = inst32.snr_boost(&kary::solve_apx(&inst32, &a4_32)).unwrap();
        prop_assert!(
            (f64::from(b32) - b64).abs() <= 1e-3 * b64.max(1.0),
            "f32 {b32} vs f64 {b64}"
        );
    }
}
