//! Discrete phase-shift selection for intelligent reflecting surfaces.
//!
//! An intelligent reflecting surface (IRS) steers a radio link by giving each
//! of its `N` passive elements a phase shift drawn from the finite alphabet
//! `{omega, 2*omega, ..., K*omega}`, `omega = 2*pi/K`. Given the background
//! channel `h_0` and the per-element reflected channels `h_n`, this crate
//! picks the index vector maximizing the SNR boost
//! `|h_0 + sum_n h_n e^{j k_n omega}|^2 / |h_0|^2`, the received-power gain
//! over the IRS-free link.
//!
//! * [`binary`] solves the `K = 2` case exactly in near-linear time via a
//!   tangent-line sweep of the unit circle.
//! * [`kary`] covers general `K` with a three-candidate approximation whose
//!   boost is at least `(1 + cos(pi/K))/2` of the discrete optimum, plus an
//!   exact search over a structured restriction of at most `2^N` beams.
//! * [`baselines`] has closest-point rounding of the continuous relaxation,
//!   an exhaustive-search oracle, and closed-form ratio floors.
//! * [`sim`] generates synthetic deployments and runs seeded Monte Carlo
//!   campaigns with reproducible per-trial random streams.
//!
//! Every numeric kernel is generic over the scalar type through [`Real`]
//! (implemented for `f32` and `f64`); `*32`/`*64` aliases for the concrete
//! instantiations live at the crate root.
//!
//! ```
//! use irsbeam::{Channel64, Instance64, PhaseAlphabet64};
//!
//! let h0 = Channel64::new(1.0, 0.0)?;
//! let reflected = vec![Channel64::new(0.4, 1.1)?, Channel64::new(0.2, 4.9)?];
//! let inst = Instance64::new(h0, reflected)?;
//! let alphabet = PhaseAlphabet64::new(4)?;
//! let beam = irsbeam::kary::solve_apx(&inst, &alphabet);
//! assert!(inst.snr_boost(&beam)? >= 1.0);
//! # Ok::<(), irsbeam::Error>(())
//! ```

pub mod baselines;
pub mod binary;
mod error;
pub mod kary;
pub mod model;
pub mod scalar;
pub mod sim;

pub use error::Error;
pub use model::{BeamConfig, Channel, Instance, PhaseAlphabet};
pub use scalar::Real;

pub type Channel32 = Channel<f32>;
pub type Channel64 = Channel<f64>;
pub type Instance32 = Instance<f32>;
pub type Instance64 = Instance<f64>;
pub type PhaseAlphabet32 = PhaseAlphabet<f32>;
pub type PhaseAlphabet64 = PhaseAlphabet<f64>;
pub type BeamConfig32 = BeamConfig<f32>;
pub type BeamConfig64 = BeamConfig<f64>;
