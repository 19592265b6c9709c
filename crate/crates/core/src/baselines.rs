//! Reference strategies: rounding of the continuous relaxation, the
//! exhaustive-search oracle, and closed-form approximation-ratio floors.
//!
//! `solve_cpp` is the closest-point projection: each element takes the
//! alphabet index whose phase minimizes the circular distance to the
//! continuous relaxation `theta_n = alpha_0 - alpha_n`. Cheap and natural,
//! but its boost can be an arbitrarily small fraction of the optimum; the
//! guaranteed floor is only `cos^2(pi/K)` (zero for K = 2).
//!
//! `brute_force` enumerates all `K^N` beams. It is the ground truth the
//! fast solvers are validated against, and is kept deliberately simple.

use num_complex::Complex;

use crate::error::Error;
use crate::model::{wrap_angle, BeamConfig, Instance, PhaseAlphabet};
use crate::scalar::{real, Real};

/// Default cap on the number of beams `brute_force` will enumerate (2^24).
pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 1 << 24;

/// Closest-point projection of the continuous relaxation onto the grid.
/// Distances are circular; exact ties pick the smaller index.
pub fn solve_cpp<F: Real>(inst: &Instance<F>, alphabet: &PhaseAlphabet<F>) -> BeamConfig<F> {
    let k = alphabet.k_levels();
    let omega = alphabet.omega();
    let indices = inst
        .reflected()
        .iter()
        .map(|ch| {
            let theta = wrap_angle(inst.h0().alpha() - ch.alpha());
            // theta sits in grid cell [m*omega, (m+1)*omega) with m in 0..K;
            // within one cell (width <= pi for K >= 2) circular distance is
            // plain distance.
            let mut cell = (theta / omega).floor().to_u32().unwrap_or(0);
            if cell >= k {
                cell = k - 1;
            }
            let below = F::from_u32(cell).expect("cell fits") * omega;
            let dist_lo = theta - below;
            let dist_hi = below + omega - theta;
            let k_lo = if cell == 0 { k } else { cell };
            let k_hi = cell + 1;
            if dist_lo < dist_hi {
                k_lo
            } else if dist_hi < dist_lo {
                k_hi
            } else {
                k_lo.min(k_hi)
            }
        })
        .collect();
    BeamConfig::new(indices, *alphabet).expect("indices constructed in range")
}

/// Guaranteed boost fraction of `solve_cpp` relative to the discrete optimum:
/// `cos^2(pi/K)`.
pub fn cpp_ratio_bound<F: Real>(alphabet: &PhaseAlphabet<F>) -> F {
    let c = (F::PI() / F::from_u32(alphabet.k_levels()).expect("K fits")).cos();
    c * c
}

/// Approximation-ratio floor of the semidefinite-relaxation rounding family:
/// `(K * sin(pi/K))^2 / (4*pi)`.
pub fn sdr_ratio_bound<F: Real>(alphabet: &PhaseAlphabet<F>) -> F {
    let kf = F::from_u32(alphabet.k_levels()).expect("K fits");
    let s = kf * (F::PI() / kf).sin();
    s * s / (real::<F>(4.0) * F::PI())
}

/// Exhaustive search over all `K^N` beams. Exact ties resolve to the
/// lexicographically smallest index vector. Errors out before doing any work
/// if `K^N` exceeds `budget`.
pub fn brute_force<F: Real>(
    inst: &Instance<F>,
    alphabet: &PhaseAlphabet<F>,
    budget: u64,
) -> Result<BeamConfig<F>, Error> {
    let n = inst.n();
    let k = alphabet.k_levels();
    let required = (k as u128)
        .checked_pow(n.min(u32::MAX as usize) as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if n == 0 {
        return BeamConfig::new(vec![], *alphabet);
    }

    // Rotated phasors h_n * e^{j k omega}, k = 1..K, laid out per element.
    let rotated: Vec<Vec<Complex<F>>> = inst
        .reflected()
        .iter()
        .map(|ch| {
            (1..=k)
                .map(|idx| Complex::from_polar(ch.beta(), ch.alpha() + alphabet.phase_of(idx)))
                .collect()
        })
        .collect();

    let mut search = Search {
        rotated: &rotated,
        path: vec![1u32; n],
        best_indices: vec![1u32; n],
        best_norm2: F::neg_infinity(),
    };
    search.descend(0, inst.h0().as_complex());

    let boost_denominator = inst.h0().beta() * inst.h0().beta();
    debug_assert!(search.best_norm2 / boost_denominator >= F::zero());
    BeamConfig::new(search.best_indices, *alphabet)
}

struct Search<'a, F> {
    rotated: &'a [Vec<Complex<F>>],
    path: Vec<u32>,
    best_indices: Vec<u32>,
    best_norm2: F,
}

impl<F: Real> Search<'_, F> {
    /// Depth-first over elements in index order; visiting indices ascending
    /// and replacing only on strict improvement keeps the lexicographically
    /// smallest argmax.
    fn descend(&mut self, depth: usize, acc: Complex<F>) {
        let last = self.rotated.len() - 1;
        if depth == last {
            let mut best_local = F::neg_infinity();
            let mut best_idx = 0usize;
            for (i, rot) in self.rotated[depth].iter().enumerate() {
                let re = acc.re + rot.re;
                let im = acc.im + rot.im;
                let norm2 = re * re + im * im;
                if norm2 > best_local {
                    best_local = norm2;
                    best_idx = i;
                }
            }
            if best_local > self.best_norm2 {
                self.best_norm2 = best_local;
                self.path[depth] = best_idx as u32 + 1;
                self.best_indices.copy_from_slice(&self.path);
            }
            return;
        }
        for (i, rot) in self.rotated[depth].iter().enumerate() {
            self.path[depth] = i as u32 + 1;
            self.descend(depth + 1, acc + rot);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Channel;

    const PI: f64 = std::f64::consts::PI;
    const TAU: f64 = std::f64::consts::TAU;

    fn inst(h0: (f64, f64), reflected: &[(f64, f64)]) -> Instance<f64> {
        let h0 = Channel::new(h0.0, h0.1).unwrap();
        let reflected = reflected
            .iter()
            .map(|&(b, a)| Channel::new(b, a).unwrap())
            .collect();
        Instance::new(h0, reflected).unwrap()
    }

    #[test]
    fn cpp_rounds_to_nearest_grid_phase() {
        // alpha_0 = 0, alpha_1 = pi/3: relaxation is 5*pi/3, closest of
        // {pi/2, pi, 3*pi/2, 2*pi} is 3*pi/2, i.e. index 3.
        let instance = inst((1.0, 0.0), &[(0.5, PI / 3.0)]);
        let a = PhaseAlphabet::new(4).unwrap();
        let beam = solve_cpp(&instance, &a);
        assert_eq!(beam.indices(), &[3]);
    }

    #[test]
    fn cpp_keeps_exact_grid_points() {
        // Relaxation exactly pi at K = 4 -> index 2, zero rounding error.
        let instance = inst((1.0, 0.0), &[(0.5, PI)]);
        let a = PhaseAlphabet::new(4).unwrap();
        let beam = solve_cpp(&instance, &a);
        assert_eq!(beam.indices(), &[2]);
        let theta = instance.continuous_relaxation()[0];
        assert!((beam.phases()[0] - theta).abs() < 1e-12);
    }

    #[test]
    fn cpp_breaks_ties_toward_smaller_index() {
        // K = 4: relaxation exactly omega/2 = pi/4 is equidistant from
        // 2*pi (index 4) and pi/2 (index 1); the smaller index wins.
        let instance = inst((1.0, 0.0), &[(0.5, -PI / 4.0)]);
        let a = PhaseAlphabet::new(4).unwrap();
        let beam = solve_cpp(&instance, &a);
        assert_eq!(beam.indices(), &[1]);
    }

    #[test]
    fn cpp_rounding_error_stays_within_half_step() {
        let mut state = 88172645463325252u64;
        let mut next = move || {
            // xorshift64, plenty for test fixtures
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for k in [2u32, 3, 5, 8, 16] {
            let a = PhaseAlphabet::new(k).unwrap();
            for _ in 0..200 {
                let instance = inst(
                    (0.4 + next(), next() * TAU),
                    &[(next(), next() * TAU), (next(), next() * TAU)],
                );
                let beam = solve_cpp(&instance, &a);
                for (theta, phase) in instance
                    .continuous_relaxation()
                    .into_iter()
                    .zip(beam.phases())
                {
                    let d = crate::model::circular_distance(theta, phase);
                    assert!(d <= a.omega() / 2.0 + 1e-12, "K={k}: {d}");
                }
            }
        }
    }

    #[test]
    fn brute_force_handles_trivial_sizes() {
        let a = PhaseAlphabet::new(4).unwrap();
        let empty = inst((1.0, 0.0), &[]);
        assert_eq!(brute_force(&empty, &a, 16).unwrap().indices(), &[] as &[u32]);

        // Single element: best rotation of (0.5, pi/3) against h0 = 1 is the
        // one closest to phase 0; enumerate by hand.
        let one = inst((1.0, 0.0), &[(0.5, PI / 3.0)]);
        let beam = brute_force(&one, &a, 16).unwrap();
        let mut best = (f64::NEG_INFINITY, 0u32);
        for idx in 1..=4u32 {
            let b = BeamConfig::new(vec![idx], a).unwrap();
            let v = one.snr_boost(&b).unwrap();
            if v > best.0 {
                best = (v, idx);
            }
        }
        assert_eq!(beam.indices(), &[best.1]);
    }

    #[test]
    fn brute_force_enforces_budget() {
        let a = PhaseAlphabet::new(4).unwrap();
        let instance = inst((1.0, 0.0), &[(0.1, 0.0); 20]);
        match brute_force(&instance, &a, 1 << 24) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!(required, (4u128).pow(20));
                assert_eq!(budget, 1 << 24);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn brute_force_ties_resolve_lexicographically() {
        // A zero-magnitude element leaves the objective unchanged, so every
        // index ties; the reported argmax must use the smallest index there.
        let instance = inst((1.0, 0.0), &[(0.0, 0.3), (0.5, PI)]);
        let a = PhaseAlphabet::new(4).unwrap();
        let beam = brute_force(&instance, &a, 1 << 10).unwrap();
        assert_eq!(beam.indices()[0], 1);
        // The nonzero element still gets its true optimum (rotation to 0).
        assert_eq!(beam.indices()[1], 2);
    }

    #[test]
    fn ratio_bounds_match_closed_forms() {
        let a2 = PhaseAlphabet::<f64>::new(2).unwrap();
        let a4 = PhaseAlphabet::<f64>::new(4).unwrap();
        let a8 = PhaseAlphabet::<f64>::new(8).unwrap();
        assert!(cpp_ratio_bound(&a2).abs() < 1e-30);
        assert!((cpp_ratio_bound(&a4) - 0.5).abs() < 1e-12);
        assert!((cpp_ratio_bound(&a8) - (PI / 8.0).cos().powi(2)).abs() < 1e-15);
        assert!((sdr_ratio_bound(&a2) - 1.0 / PI).abs() < 1e-12);
        assert!((sdr_ratio_bound(&a4) - 2.0 / PI).abs() < 1e-12);
        // K -> infinity limit is pi/4.
        let big = PhaseAlphabet::<f64>::new(4096).unwrap();
        assert!((sdr_ratio_bound(&big) - PI / 4.0).abs() < 1e-5);
    }
}
