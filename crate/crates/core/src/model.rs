//! Domain model: channels, instances, phase alphabets and beam
//! configurations, plus the SNR-boost objective they plug into.
//!
//! Conventions used throughout the crate:
//!
//! * channels are stored in polar form with phases normalized to `[0, 2*pi)`;
//!   reflected channels may have zero magnitude, the background channel may
//!   not;
//! * a beam stores integer indices `k_n` in `{1, ..., K}`; the realized phase
//!   shift is `k_n * omega` with `omega = 2*pi/K`, so index arithmetic stays
//!   exact and trigonometry happens lazily at evaluation time;
//! * the SNR boost of a beam is
//!   `|h_0 + sum_n h_n e^{j k_n omega}|^2 / |h_0|^2`,
//!   the received-power gain over the IRS-free baseline. It is 1 for `N = 0`
//!   and at most `((sum_n beta_n) / beta_0)^2` (sum over n = 0..N) for any
//!   choice of phases.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{real, Real};

/// Wraps an angle into `[0, 2*pi)`.
pub fn wrap_angle<F: Real>(a: F) -> F {
    let tau = F::TAU();
    let mut r = a % tau;
    if r < F::zero() {
        r = r + tau;
    }
    // `r + tau` can round up to exactly tau for tiny negative inputs.
    if r >= tau {
        r = r - tau;
    }
    r
}

/// Circular distance between two angles, in `[0, pi]`.
pub fn circular_distance<F: Real>(a: F, b: F) -> F {
    let tau = F::TAU();
    let d = wrap_angle(a - b);
    d.min(tau - d)
}

/// Converts a dBm power level to linear watts.
pub fn dbm_to_watts<F: Real>(dbm: F) -> F {
    real::<F>(10.0).powf((dbm - real(30.0)) / real(10.0))
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db<F: Real>(x: F) -> F {
    real::<F>(10.0) * x.log10()
}

/// One complex channel coefficient in polar form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Channel<F> {
    beta: F,
    alpha: F,
}

impl<F: Real> Channel<F> {
    /// Builds a channel from magnitude and phase. The phase may be any finite
    /// angle and is normalized to `[0, 2*pi)`.
    pub fn new(beta: F, alpha: F) -> Result<Self, Error> {
        if !beta.is_finite() || beta < F::zero() {
            return Err(Error::InvalidMagnitude);
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidAngle);
        }
        Ok(Self {
            beta,
            alpha: wrap_angle(alpha),
        })
    }

    /// Builds a channel from rectangular coordinates. A zero vector gets
    /// phase 0.
    pub fn from_rect(re: F, im: F) -> Result<Self, Error> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidMagnitude);
        }
        let beta = re.hypot(im);
        let alpha = if beta == F::zero() {
            F::zero()
        } else {
            wrap_angle(im.atan2(re))
        };
        Ok(Self { beta, alpha })
    }

    pub fn beta(&self) -> F {
        self.beta
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn re(&self) -> F {
        self.beta * self.alpha.cos()
    }

    pub fn im(&self) -> F {
        self.beta * self.alpha.sin()
    }

    pub fn as_complex(&self) -> Complex<F> {
        Complex::from_polar(self.beta, self.alpha)
    }
}

/// The discrete phase alphabet `{omega, 2*omega, ..., K*omega}`.
#[derive(Clone, Copy, Debug)]
pub struct PhaseAlphabet<F> {
    k: u32,
    omega: F,
}

impl<F: Real> PhaseAlphabet<F> {
    pub fn new(k: u32) -> Result<Self, Error> {
        if k < 2 {
            return Err(Error::InvalidAlphabet { k });
        }
        Ok(Self {
            k,
            omega: F::TAU() / F::from_u32(k).expect("K fits in scalar"),
        })
    }

    /// Number of levels K.
    pub fn k_levels(&self) -> u32 {
        self.k
    }

    /// Angular step `omega = 2*pi/K`.
    pub fn omega(&self) -> F {
        self.omega
    }

    /// Realized phase of index `k` in `1..=K`, i.e. `k * omega` in `(0, 2*pi]`.
    pub fn phase_of(&self, index: u32) -> F {
        debug_assert!(index >= 1 && index <= self.k);
        F::from_u32(index).expect("index fits in scalar") * self.omega
    }

    fn validate_index(&self, index: u32) -> Result<(), Error> {
        if index < 1 || index > self.k {
            return Err(Error::IndexOutOfRange {
                index,
                k: self.k,
            });
        }
        Ok(())
    }
}

impl<F> PartialEq for PhaseAlphabet<F> {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
    }
}

impl<F> Eq for PhaseAlphabet<F> {}

/// An index vector over a phase alphabet: element `n` applies phase
/// `indices[n] * omega`.
#[derive(Clone, Debug)]
pub struct BeamConfig<F> {
    indices: Vec<u32>,
    alphabet: PhaseAlphabet<F>,
}

impl<F: Real> BeamConfig<F> {
    pub fn new(indices: Vec<u32>, alphabet: PhaseAlphabet<F>) -> Result<Self, Error> {
        for &index in &indices {
            alphabet.validate_index(index)?;
        }
        Ok(Self { indices, alphabet })
    }

    /// A beam assigning the same index to all `n` elements.
    pub fn uniform(n: usize, index: u32, alphabet: PhaseAlphabet<F>) -> Result<Self, Error> {
        alphabet.validate_index(index)?;
        Ok(Self {
            indices: vec![index; n],
            alphabet,
        })
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn alphabet(&self) -> &PhaseAlphabet<F> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Realized phases `k_n * omega`, each in `(0, 2*pi]`.
    pub fn phases(&self) -> Vec<F> {
        self.indices
            .iter()
            .map(|&k| self.alphabet.phase_of(k))
            .collect()
    }
}

impl<F> PartialEq for BeamConfig<F> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.k == other.alphabet.k && self.indices == other.indices
    }
}

impl<F> Eq for BeamConfig<F> {}

#[derive(Serialize, Deserialize)]
struct ChannelJson<F> {
    beta: F,
    alpha: F,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson<F> {
    h0: ChannelJson<F>,
    reflected: Vec<ChannelJson<F>>,
}

/// One problem instance: the background channel `h_0` (nonzero) and the `N`
/// reflected channels.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<F> {
    h0: Channel<F>,
    reflected: Vec<Channel<F>>,
}

impl<F: Real> Instance<F> {
    pub fn new(h0: Channel<F>, reflected: Vec<Channel<F>>) -> Result<Self, Error> {
        if h0.beta() <= F::zero() {
            return Err(Error::ZeroBackground);
        }
        Ok(Self { h0, reflected })
    }

    pub fn h0(&self) -> &Channel<F> {
        &self.h0
    }

    pub fn reflected(&self) -> &[Channel<F>] {
        &self.reflected
    }

    /// Number of reflecting elements N.
    pub fn n(&self) -> usize {
        self.reflected.len()
    }

    /// Parses the JSON shape
    /// `{"h0": {"beta": f, "alpha": f}, "reflected": [{"beta": f, "alpha": f}, ...]}`.
    /// Phases are accepted in any finite radian value and normalized.
    pub fn from_json(s: &str) -> Result<Self, Error> {
        let raw: InstanceJson<F> = serde_json::from_str(s)?;
        let h0 = Channel::new(raw.h0.beta, raw.h0.alpha)?;
        let reflected = raw
            .reflected
            .into_iter()
            .map(|c| Channel::new(c.beta, c.alpha))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(h0, reflected)
    }

    pub fn to_json(&self) -> String {
        let raw = InstanceJson {
            h0: ChannelJson {
                beta: self.h0.beta(),
                alpha: self.h0.alpha(),
            },
            reflected: self
                .reflected
                .iter()
                .map(|c| ChannelJson {
                    beta: c.beta(),
                    alpha: c.alpha(),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("plain floats serialize")
    }

    /// Complex sum of the reflected channels under the beam's phase shifts.
    pub fn reflected_sum(&self, beam: &BeamConfig<F>) -> Result<Complex<F>, Error> {
        if beam.len() != self.n() {
            return Err(Error::DimensionMismatch {
                beam: beam.len(),
                instance: self.n(),
            });
        }
        let mut acc = Complex::new(F::zero(), F::zero());
        for (ch, &k) in self.reflected.iter().zip(beam.indices()) {
            acc = acc + Complex::from_polar(ch.beta(), ch.alpha() + beam.alphabet().phase_of(k));
        }
        Ok(acc)
    }

    /// SNR boost of a beam: `|h_0 + sum_n h_n e^{j k_n omega}|^2 / |h_0|^2`.
    pub fn snr_boost(&self, beam: &BeamConfig<F>) -> Result<F, Error> {
        let total = self.h0.as_complex() + self.reflected_sum(beam)?;
        Ok(total.norm_sqr() / (self.h0.beta() * self.h0.beta()))
    }

    /// SNR boost under arbitrary (not necessarily on-grid) phase shifts.
    pub fn snr_boost_with_phases(&self, phases: &[F]) -> Result<F, Error> {
        if phases.len() != self.n() {
            return Err(Error::DimensionMismatch {
                beam: phases.len(),
                instance: self.n(),
            });
        }
        let mut acc = self.h0.as_complex();
        for (ch, &theta) in self.reflected.iter().zip(phases) {
            if !theta.is_finite() {
                return Err(Error::InvalidAngle);
            }
            acc = acc + Complex::from_polar(ch.beta(), ch.alpha() + theta);
        }
        Ok(acc.norm_sqr() / (self.h0.beta() * self.h0.beta()))
    }

    /// Received SNR: `snr_boost * P * beta_0^2 / sigma^2`, with transmit power
    /// and noise power given in dBm and converted to linear watts.
    pub fn snr(&self, beam: &BeamConfig<F>, power_dbm: F, noise_dbm: F) -> Result<F, Error> {
        for dbm in [power_dbm, noise_dbm] {
            if !dbm.is_finite() {
                return Err(Error::InvalidPowerLevel {
                    dbm: dbm.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let boost = self.snr_boost(beam)?;
        let p = dbm_to_watts(power_dbm);
        let sigma2 = dbm_to_watts(noise_dbm);
        Ok(boost * p * self.h0.beta() * self.h0.beta() / sigma2)
    }

    /// Per-element phases of the continuous relaxation,
    /// `theta_n = alpha_0 - alpha_n` normalized to `[0, 2*pi)`. Applying them
    /// aligns every reflected term with `h_0` and attains the alignment bound.
    pub fn continuous_relaxation(&self) -> Vec<F> {
        self.reflected
            .iter()
            .map(|c| wrap_angle(self.h0.alpha() - c.alpha()))
            .collect()
    }

    /// Upper bound `((sum_{n=0..N} beta_n) / beta_0)^2` on the boost of any
    /// phase configuration, discrete or continuous.
    pub fn alignment_bound(&self) -> F {
        let total = self
            .reflected
            .iter()
            .fold(self.h0.beta(), |acc, c| acc + c.beta());
        let ratio = total / self.h0.beta();
        ratio * ratio
    }
}
