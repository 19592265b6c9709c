//! Exact solver for binary (K = 2) phase alphabets.
//!
//! With K = 2 each element multiplies its channel by +1 or -1, so maximizing
//! the boost means maximizing `|h_0 + sum_n x_n h_n|` over sign vectors `x`.
//! Reading each channel as the vector `v_n = [Re h_n, Im h_n]` in the plane,
//! the objective equals `max_y (sum_n |v_n^T y|)^2` over unit vectors `y`,
//! with the optimal signs recoverable from the maximizing direction.
//!
//! The lines through the origin orthogonal to the `v_n` cut the unit circle
//! into at most `2(N+1)` arcs, and the sign pattern of every `v_n^T y` is
//! constant inside an arc. Since `y` and `-y` give the same value, it
//! suffices to scan the `M <= N+1` arcs covering a half circle, maintaining
//! the running weighted sum `w` (flip only the group whose line is crossed)
//! and projecting `w` onto each arc. Total cost is the sort of the line
//! angles plus a linear sweep.
//!
//! Instances whose channels are all real multiples of `h_0` (collinear
//! vectors) short-circuit through a direct sign read-off.

use crate::model::{BeamConfig, Instance, PhaseAlphabet};
use crate::scalar::{real, Real};

/// Angular tolerance (radians) below which two cut lines are treated as one.
pub const LINE_MERGE_TOLERANCE: f64 = 1e-9;

/// Normalized-cross-product tolerance used by [`solve_binary_optimal`] when
/// routing collinear instances to the rank-one fast path.
pub const DEFAULT_RANK_TOLERANCE: f64 = 1e-12;

/// A channel read as a vector in the plane. `source` is 0 for the background
/// channel and `n` for the n-th reflected channel.
#[derive(Clone, Copy, Debug)]
pub struct NormalVec<F> {
    pub x: F,
    pub y: F,
    pub source: usize,
}

impl<F: Real> NormalVec<F> {
    pub fn is_zero(&self) -> bool {
        self.x == F::zero() && self.y == F::zero()
    }

    fn dot(&self, p: [F; 2]) -> F {
        self.x * p[0] + self.y * p[1]
    }
}

/// All channels of an instance as plane vectors, background first.
pub fn normal_vectors<F: Real>(inst: &Instance<F>) -> Vec<NormalVec<F>> {
    let mut out = Vec::with_capacity(inst.n() + 1);
    out.push(NormalVec {
        x: inst.h0().re(),
        y: inst.h0().im(),
        source: 0,
    });
    for (i, ch) in inst.reflected().iter().enumerate() {
        out.push(NormalVec {
            x: ch.re(),
            y: ch.im(),
            source: i + 1,
        });
    }
    out
}

/// Collinearity classification of an instance's channels.
#[derive(Clone, Debug, PartialEq)]
pub enum Rank<F> {
    /// Every reflected channel is a real multiple of `h_0`; `quotients[n]`
    /// is that (signed) multiple `h_n / h_0`.
    One { quotients: Vec<F> },
    /// The channels genuinely span the plane.
    Two,
}

/// Tests whether all channels are collinear with `h_0` without forming any
/// Gram matrix: channel `n` passes when `|v_0 x v_n| <= tol * |v_0||v_n|`,
/// i.e. the angle between the vectors is within ~`tol` of 0 or pi.
pub fn detect_rank<F: Real>(inst: &Instance<F>, tol: F) -> Rank<F> {
    let v0 = (inst.h0().re(), inst.h0().im());
    let beta0 = inst.h0().beta();
    let mut quotients = Vec::with_capacity(inst.n());
    for ch in inst.reflected() {
        let (x, y) = (ch.re(), ch.im());
        let cross = v0.0 * y - v0.1 * x;
        if cross.abs() > tol * beta0 * ch.beta() {
            return Rank::Two;
        }
        quotients.push((v0.0 * x + v0.1 * y) / (beta0 * beta0));
    }
    Rank::One { quotients }
}

/// Exact optimum for collinear instances: `x_n = sgn(quotient_n)` with
/// `sgn(0) = +1`. Index 2 realizes +1 (phase `2*pi`), index 1 realizes -1.
pub fn solve_rank_one<F: Real>(quotients: &[F]) -> BeamConfig<F> {
    let alphabet = PhaseAlphabet::new(2).expect("K = 2 is valid");
    let indices = quotients
        .iter()
        .map(|&q| if q >= F::zero() { 2 } else { 1 })
        .collect();
    BeamConfig::new(indices, alphabet).expect("indices in range")
}

/// The circle partition induced by the cut lines of the nonzero channel
/// vectors. Lines are deduplicated within an angular tolerance, ordered
/// counterclockwise by their direction angle in `[0, pi)`; segment `m` is the
/// half-open arc starting at line `m`'s direction, and the last segment ends
/// where the first line reappears on the opposite side of the circle.
#[derive(Clone, Debug)]
pub struct TangentPartition<F> {
    /// Unit direction vector of each deduplicated cut line.
    pub lines: Vec<[F; 2]>,
    /// Positions (into the normal-vector list) sharing each line.
    pub groups: Vec<Vec<usize>>,
    /// Half-open arcs `[start, end)`; together they cover half the circle.
    pub segments: Vec<(F, F)>,
}

/// Per-segment outcome of the sweep.
#[derive(Clone, Copy, Debug)]
pub struct SegmentCandidate<F> {
    /// Signed sum of the participating vectors on this segment.
    pub w: [F; 2],
    /// Maximizer of `w^T y` over the closed arc (projection of `w/|w|`,
    /// clamped to an endpoint when the projection falls outside).
    pub y_star: [F; 2],
    /// `(w^T y_star)^2`, the squared channel-sum magnitude on this segment.
    pub objective: F,
}

fn wrap_half<F: Real>(a: F) -> F {
    let pi = F::PI();
    let mut r = a % pi;
    if r < F::zero() {
        r = r + pi;
    }
    if r >= pi {
        r = r - pi;
    }
    r
}

fn wrap_signed<F: Real>(a: F) -> F {
    let tau = F::TAU();
    let mut r = a % tau;
    if r > F::PI() {
        r = r - tau;
    }
    if r <= -F::PI() {
        r = r + tau;
    }
    r
}

fn sign_unit<F: Real>(t: F) -> i8 {
    if t >= F::zero() {
        1
    } else {
        -1
    }
}

/// Builds the tangent partition of the nonzero vectors in `normals`.
pub fn build_partition<F: Real>(normals: &[NormalVec<F>], merge_tol: F) -> TangentPartition<F> {
    let mut entries: Vec<(F, usize)> = normals
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (wrap_half(v.y.atan2(v.x) + F::FRAC_PI_2()), i))
        .collect();
    assert!(!entries.is_empty(), "background vector is never zero");
    entries.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("angles are finite"));

    let mut angles: Vec<F> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (angle, idx) in entries {
        match angles.last() {
            Some(&last) if angle - last <= merge_tol => {
                groups.last_mut().expect("group exists").push(idx)
            }
            _ => {
                angles.push(angle);
                groups.push(vec![idx]);
            }
        }
    }
    // Line directions live mod pi, so an angle just below pi coincides with
    // one just above 0.
    if angles.len() >= 2 {
        let first = angles[0];
        let last = *angles.last().expect("nonempty");
        if F::PI() - last + first <= merge_tol {
            let merged = groups.pop().expect("nonempty");
            angles.pop();
            groups[0].extend(merged);
        }
    }

    let m = angles.len();
    let segments = (0..m)
        .map(|i| {
            if i + 1 < m {
                (angles[i], angles[i + 1])
            } else {
                (angles[m - 1], angles[0] + F::PI())
            }
        })
        .collect();
    let lines = angles.iter().map(|&a| [a.cos(), a.sin()]).collect();
    TangentPartition {
        lines,
        groups,
        segments,
    }
}

fn candidate_on_arc<F: Real>(arc: (F, F), w: [F; 2]) -> SegmentCandidate<F> {
    if w[0] == F::zero() && w[1] == F::zero() {
        return SegmentCandidate {
            w,
            y_star: [arc.0.cos(), arc.0.sin()],
            objective: F::zero(),
        };
    }
    let two = real::<F>(2.0);
    let mid = (arc.0 + arc.1) / two;
    let half = (arc.1 - arc.0) / two;
    // w has a positive dot product with the arc midpoint direction, so the
    // signed offset is within (-pi/2, pi/2) and clamping is unambiguous.
    let offset = wrap_signed(w[1].atan2(w[0]) - mid);
    let clamped = offset.max(-half).min(half);
    let angle = mid + clamped;
    let y_star = [angle.cos(), angle.sin()];
    let dot = w[0] * y_star[0] + w[1] * y_star[1];
    SegmentCandidate {
        w,
        y_star,
        objective: dot * dot,
    }
}

fn sweep_from<F: Real>(
    partition: &TangentPartition<F>,
    normals: &[NormalVec<F>],
    start: usize,
) -> Vec<SegmentCandidate<F>> {
    let m = partition.segments.len();
    let two = real::<F>(2.0);

    let (s0, e0) = partition.segments[start];
    let mid0 = (s0 + e0) / two;
    let y0 = [mid0.cos(), mid0.sin()];
    let mut sign = vec![0i8; normals.len()];
    let mut w = [F::zero(), F::zero()];
    for group in &partition.groups {
        for &idx in group {
            let v = &normals[idx];
            let s = sign_unit(v.dot(y0));
            sign[idx] = s;
            let sf = real::<F>(s as f64);
            w[0] += sf * v.x;
            w[1] += sf * v.y;
        }
    }

    let mut out = Vec::with_capacity(m);
    out.push(candidate_on_arc(partition.segments[start], w));
    for j in 1..m {
        let seg = (start + j) % m;
        for &idx in &partition.groups[seg] {
            let v = &normals[idx];
            let sf = real::<F>(sign[idx] as f64);
            w[0] -= two * sf * v.x;
            w[1] -= two * sf * v.y;
            sign[idx] = -sign[idx];
        }
        // Past the half turn the chained w tracks the antipodal copy of the
        // stored arc; negate to express the candidate on the representative.
        let w_repr = if start + j >= m { [-w[0], -w[1]] } else { w };
        out.push(candidate_on_arc(partition.segments[seg], w_repr));
    }
    out
}

/// Sweeps all segments in counterclockwise order starting from line 0 and
/// returns one candidate per segment.
pub fn segment_candidates<F: Real>(
    partition: &TangentPartition<F>,
    normals: &[NormalVec<F>],
) -> Vec<SegmentCandidate<F>> {
    sweep_from(partition, normals, 0)
}

fn recover_indices<F: Real>(normals: &[NormalVec<F>], y: [F; 2]) -> Vec<u32> {
    // Factored sign recovery: x_n = sgn(v_0^T y) * sgn(v_n^T y) with
    // sgn(0) = +1 applied per factor, so a y landing exactly on the
    // background line still aligns the remaining terms with each other.
    let s0 = sign_unit(normals[0].dot(y));
    normals[1..]
        .iter()
        .map(|v| {
            if v.is_zero() {
                2
            } else if s0 * sign_unit(v.dot(y)) > 0 {
                2
            } else {
                1
            }
        })
        .collect()
}

fn solve_rank_two<F: Real>(inst: &Instance<F>, alphabet: PhaseAlphabet<F>) -> BeamConfig<F> {
    let normals = normal_vectors(inst);
    let partition = build_partition(&normals, real(LINE_MERGE_TOLERANCE));
    let candidates = sweep_from(&partition, &normals, 0);
    let mut best = 0;
    for (i, c) in candidates.iter().enumerate().skip(1) {
        if c.objective > candidates[best].objective {
            best = i;
        }
    }
    let indices = recover_indices(&normals, candidates[best].y_star);
    BeamConfig::new(indices, alphabet).expect("indices in range")
}

/// Exact argmax of the boost over `{1, 2}^N`. Collinear instances route
/// through [`solve_rank_one`]; everything else runs the tangent-line sweep.
pub fn solve_binary_optimal<F: Real>(inst: &Instance<F>) -> BeamConfig<F> {
    let alphabet = PhaseAlphabet::new(2).expect("K = 2 is valid");
    if inst.n() == 0 {
        return BeamConfig::new(vec![], alphabet).expect("empty beam");
    }
    match detect_rank(inst, real(DEFAULT_RANK_TOLERANCE)) {
        Rank::One { quotients } => solve_rank_one(&quotients),
        Rank::Two => solve_rank_two(inst, alphabet),
    }
}
