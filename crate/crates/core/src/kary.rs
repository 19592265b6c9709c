//! Sectorization for general K-ary alphabets: a linear-time approximation
//! with ratio `(1 + cos(pi/K)) / 2` and a restricted exact search.
//!
//! The neighborhood of the background phase `alpha_0` splits into four
//! sectors of width `omega/2`. Rotating every reflected channel into the arc
//! spanned by two consecutive sectors costs one index computation per
//! channel, and taking the best of the three consecutive-pair arcs already
//! achieves at least `(1 + cos(pi/K)) / 2` of the global discrete optimum.
//! Widening to three consecutive sectors (width `3*omega/2`) leaves each
//! channel one or two admissible rotations, and the global optimum provably
//! lies in one of the two resulting Cartesian-product sets of size at most
//! `2^N`, giving an exact search that is exponentially cheaper than the full
//! `K^N` enumeration.

use crate::error::Error;
use crate::model::{wrap_angle, BeamConfig, Channel, Instance, PhaseAlphabet};
use crate::scalar::{real, Real};

/// One of the four `omega/2`-wide sectors around the background phase,
/// counted clockwise: sector 1 is `[alpha_0 + omega/2, alpha_0 + omega]`,
/// sector 4 is `[alpha_0 - omega, alpha_0 - omega/2]`.
#[derive(Clone, Copy, Debug)]
pub struct Sector<F> {
    pub index: u8,
    pub start: F,
    pub end: F,
}

impl<F: Real> Sector<F> {
    /// Closed circular membership with an angular tolerance.
    pub fn contains(&self, angle: F, tol: F) -> bool {
        let width = self.end - self.start;
        let delta = wrap_angle(angle - self.start);
        delta <= width + tol || delta >= F::TAU() - tol
    }
}

/// The four sectors around `alpha_0` for the given alphabet.
pub fn sectors<F: Real>(alpha0: F, alphabet: &PhaseAlphabet<F>) -> [Sector<F>; 4] {
    let half = alphabet.omega() / real::<F>(2.0);
    let mut out = [Sector {
        index: 0,
        start: F::zero(),
        end: F::zero(),
    }; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        let i_f = real::<F>(i as f64);
        slot.index = (i + 1) as u8;
        slot.start = alpha0 + (real::<F>(1.0) - i_f) * half;
        slot.end = alpha0 + (real::<F>(2.0) - i_f) * half;
    }
    out
}

/// The unique `k` in `{1, ..., K}` rotating the channel's phase into the
/// half-open arc `[arc_start, arc_start + omega)`. Existence and uniqueness
/// follow from the K rotations being spaced exactly `omega` apart.
pub fn rotate_into_arc<F: Real>(
    channel: &Channel<F>,
    arc_start: F,
    alphabet: &PhaseAlphabet<F>,
) -> u32 {
    debug_assert!(channel.beta() > F::zero(), "zero channels have no phase");
    let omega = alphabet.omega();
    let delta = wrap_angle(arc_start - channel.alpha());
    let k = (delta / omega).ceil().to_u32().expect("finite ratio");
    if k == 0 {
        // The phase sits exactly on the closed arc start; the full turn
        // (theta = 2*pi) keeps it there.
        alphabet.k_levels()
    } else {
        k.min(alphabet.k_levels())
    }
}

/// One beam of the approximation's candidate set, tagged with the sector
/// pair whose union arc it rotates every channel into.
#[derive(Clone, Debug)]
pub struct ApxCandidate<F: Real> {
    /// Indices of the two consecutive sectors forming the target arc.
    pub sector_pair: (u8, u8),
    /// Start of the `omega`-wide target arc.
    pub arc_start: F,
    pub beam: BeamConfig<F>,
    /// Boost of `beam` on the instance it was built from.
    pub boost: F,
}

/// The three candidate beams, one per consecutive sector pair.
#[derive(Clone, Debug)]
pub struct CandidateSet<F: Real> {
    pub candidates: Vec<ApxCandidate<F>>,
}

impl<F: Real> CandidateSet<F> {
    /// The highest-boost candidate; earliest sector pair wins ties.
    pub fn best(&self) -> &ApxCandidate<F> {
        let mut best = 0;
        for (i, c) in self.candidates.iter().enumerate().skip(1) {
            if c.boost > self.candidates[best].boost {
                best = i;
            }
        }
        &self.candidates[best]
    }
}

/// Builds the three sector-pair candidates. Arc `i` (i = 1, 2, 3) starts at
/// `alpha_0 + (1 - i) * omega / 2` and spans the union of sectors i and i+1;
/// each channel's index and phasor contribution are accumulated in one pass.
pub fn candidate_set<F: Real>(inst: &Instance<F>, alphabet: &PhaseAlphabet<F>) -> CandidateSet<F> {
    let omega = alphabet.omega();
    let half = omega / real::<F>(2.0);
    let alpha0 = inst.h0().alpha();
    let candidates = (1..=3u8)
        .map(|i| {
            let arc_start = alpha0 + (real::<F>(1.0) - real::<F>(i as f64)) * half;
            let mut indices = Vec::with_capacity(inst.n());
            let mut re = inst.h0().re();
            let mut im = inst.h0().im();
            for ch in inst.reflected() {
                let k = if ch.beta() == F::zero() {
                    alphabet.k_levels()
                } else {
                    rotate_into_arc(ch, arc_start, alphabet)
                };
                indices.push(k);
                let rotated = ch.alpha() + alphabet.phase_of(k);
                re += ch.beta() * rotated.cos();
                im += ch.beta() * rotated.sin();
            }
            let beta0 = inst.h0().beta();
            ApxCandidate {
                sector_pair: (i, i + 1),
                arc_start,
                beam: BeamConfig::new(indices, *alphabet).expect("indices in range"),
                boost: (re * re + im * im) / (beta0 * beta0),
            }
        })
        .collect();
    CandidateSet { candidates }
}

/// Best of the three sector-pair candidates; O(N) total.
pub fn solve_apx<F: Real>(inst: &Instance<F>, alphabet: &PhaseAlphabet<F>) -> BeamConfig<F> {
    candidate_set(inst, alphabet).best().beam.clone()
}

/// Worst-case boost ratio of [`solve_apx`] against the exact discrete
/// optimum: `(1 + cos(pi/K)) / 2`.
pub fn apx_ratio_bound<F: Real>(alphabet: &PhaseAlphabet<F>) -> F {
    let k = real::<F>(f64::from(alphabet.k_levels()));
    (F::one() + (F::PI() / k).cos()) / real::<F>(2.0)
}

/// The 1 or 2 alphabet indices rotating the channel into the closed arc
/// `[arc_start, arc_start + 3*omega/2]`.
fn admissible_in_closed_arc<F: Real>(
    ch: &Channel<F>,
    arc_start: F,
    alphabet: &PhaseAlphabet<F>,
) -> Vec<u32> {
    let k_levels = alphabet.k_levels();
    if ch.beta() == F::zero() {
        return vec![k_levels];
    }
    let omega = alphabet.omega();
    let delta = wrap_angle(arc_start - ch.alpha());
    let k1 = (delta / omega).ceil().to_i64().expect("finite ratio");
    let offset0 = real::<F>(k1 as f64) * omega - delta;
    let wrap_k = |k: i64| ((k - 1).rem_euclid(i64::from(k_levels)) + 1) as u32;
    let mut out = vec![wrap_k(k1)];
    // The next rotation lands omega further along; keep it when it is still
    // inside the closed arc (tolerance absorbs the wrap arithmetic).
    let tol = omega * real::<F>(1e-12);
    if offset0 + omega <= omega * real::<F>(1.5) + tol {
        out.push(wrap_k(k1 + 1));
    }
    out
}

/// Exact optimum over the full `K^N` grid, found by enumerating only the
/// two Cartesian-product sets that rotate every channel into one of the two
/// `3*omega/2`-wide arcs around `alpha_0` (the optimum always lies in one of
/// them). Each set has at most `2^N` beams, which must fit in `budget`.
pub fn solve_restricted_exact<F: Real>(
    inst: &Instance<F>,
    alphabet: &PhaseAlphabet<F>,
    budget: u64,
) -> Result<BeamConfig<F>, Error> {
    let required = 1u128
        .checked_shl(inst.n() as u32)
        .unwrap_or(u128::MAX);
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let omega = alphabet.omega();
    let half = omega / real::<F>(2.0);
    let alpha0 = inst.h0().alpha();
    let mut best_norm2 = F::neg_infinity();
    let mut best_ks: Vec<u32> = Vec::new();

    for arc_start in [alpha0 - half, alpha0 - omega] {
        let options: Vec<Vec<u32>> = inst
            .reflected()
            .iter()
            .map(|ch| admissible_in_closed_arc(ch, arc_start, alphabet))
            .collect();
        let phasors: Vec<Vec<(F, F)>> = inst
            .reflected()
            .iter()
            .zip(&options)
            .map(|(ch, ks)| {
                ks.iter()
                    .map(|&k| {
                        let rotated = ch.alpha() + alphabet.phase_of(k);
                        (ch.beta() * rotated.cos(), ch.beta() * rotated.sin())
                    })
                    .collect()
            })
            .collect();

        let total: u64 = options.iter().map(|v| v.len() as u64).product();
        let mut choice = vec![0usize; inst.n()];
        for combo in 0..total {
            let mut c = combo;
            for d in (0..inst.n()).rev() {
                choice[d] = (c % options[d].len() as u64) as usize;
                c /= options[d].len() as u64;
            }
            let mut re = inst.h0().re();
            let mut im = inst.h0().im();
            for (d, &pick) in choice.iter().enumerate() {
                let (pr, pi) = phasors[d][pick];
                re += pr;
                im += pi;
            }
            let norm2 = re * re + im * im;
            if norm2 > best_norm2 {
                best_norm2 = norm2;
                best_ks = choice
                    .iter()
                    .enumerate()
                    .map(|(d, &pick)| options[d][pick])
                    .collect();
            }
        }
    }
    Ok(BeamConfig::new(best_ks, *alphabet).expect("indices in range"))
}
