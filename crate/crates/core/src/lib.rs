//! Simulation core for a THz integrated sensing and communication (ISAC) link
//! built on delay-Doppler multicarrier modulation with hybrid beamforming.
//!
//! The crate covers the full monostatic sensing chain and its communication
//! counterpart:
//!
//! * [`scenario`] — system configuration, physical constants, derived grids,
//!   target parameter conversion and deterministic RNG streams;
//! * [`waveform`] — delay-Doppler frames (ODDM), OFDM/OTFS baselines, DFT-spread
//!   variants, transmit pulses and PAPR measurement;
//! * [`channel`] — off-grid doubly-selective channel operators (fractional
//!   delay/Doppler), planar-array steering and the factored MIMO receive model;
//! * [`beamforming`] — hybrid analog/digital beamformers, sensing and
//!   communication designs, spectral efficiency;
//! * [`estimation`] — MUSIC angle estimation, ML delay-Doppler search and joint
//!   off-grid refinement;
//! * [`crlb`] — Fisher information (analytic and finite-difference) and
//!   Cramér-Rao lower bounds;
//! * [`optimizer`] — genetic-algorithm combiner optimization minimizing the
//!   angle CRLB.
//!
//! All randomness flows through [`scenario::RngStream`], so every quantity in
//! the crate is reproducible from a `(seed, label)` pair.

pub mod beamforming;
pub mod channel;
pub mod crlb;
pub mod estimation;
pub mod optimizer;
pub mod scenario;
pub mod waveform;

use num_complex::Complex64;

/// Dense complex matrix used throughout the crate.
pub type CMat = nalgebra::DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVec = nalgebra::DVector<Complex64>;
/// Dense real matrix (Fisher information, covariances of real parameters).
pub type RMat = nalgebra::DMatrix<f64>;
