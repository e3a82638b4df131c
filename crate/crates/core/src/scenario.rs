//! System configuration, derived grid quantities, target parameter conversion
//! and deterministic random-number streams.
//!
//! Every dimensioned field carries its unit in the name. Angles cross module
//! boundaries in degrees; internal math uses radians.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use thiserror::Error;

/// Speed of light in vacuum [m/s].
pub const C0: f64 = 299_792_458.0;

/// Errors from configuration validation and target conversion.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("target delay {delay_s:.3e} s outside (0, {max_s:.3e}] supported by the cyclic prefix")]
    DelayOutOfRange { delay_s: f64, max_s: f64 },
    #[error("target Doppler {doppler_hz:.3e} Hz outside the unambiguous range ({lo:.3e}, {hi:.3e}] Hz")]
    DopplerOutOfRange { doppler_hz: f64, lo: f64, hi: f64 },
    #[error("config parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
}

/// Uniform planar array panel lying in the y-z plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpaGeometry {
    /// Elements along the y axis.
    pub n_y: usize,
    /// Elements along the z axis.
    pub n_z: usize,
    /// Element spacing in wavelengths (d/lambda).
    pub spacing_over_lambda: f64,
}

impl UpaGeometry {
    /// Total element count.
    pub fn len(&self) -> usize {
        self.n_y * self.n_z
    }

    /// True when the panel has no elements.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Full system configuration for one simulation scenario.
///
/// `desk()` is the fast configuration used by tests and default experiment
/// runs; `full_scale()` mirrors the reference THz deployment (0.3 THz carrier,
/// 1024-element panels).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Carrier frequency f_c [Hz].
    pub carrier_frequency_hz: f64,
    /// Subcarrier spacing Delta_f [Hz]; the symbol period is T = 1/Delta_f.
    pub subcarrier_spacing_hz: f64,
    /// Delay bins per frame (M); also the samples per symbol period.
    pub num_delay_bins: usize,
    /// Doppler bins per frame (N); also the symbols per frame.
    pub num_doppler_bins: usize,
    /// Cyclic-prefix length in samples (M_cp).
    pub cp_length: usize,
    /// Transmit-pulse half span Q in symbol periods; the two-sided pulse
    /// occupies 2Q samples and must satisfy Q < M/2.
    pub pulse_half_span: usize,
    /// Square-root raised-cosine rolloff beta in [0, 1].
    pub rolloff: f64,
    /// Transmit panel elements along y.
    pub tx_panel_y: usize,
    /// Transmit panel elements along z.
    pub tx_panel_z: usize,
    /// Sensing-receive panel elements along y.
    pub rx_panel_y: usize,
    /// Sensing-receive panel elements along z.
    pub rx_panel_z: usize,
    /// Downlink-user panel elements along y.
    pub ue_panel_y: usize,
    /// Downlink-user panel elements along z.
    pub ue_panel_z: usize,
    /// RF chains behind each panel (N_RF).
    pub num_rf_chains: usize,
    /// Parallel data/sensing streams (N_s), N_s <= N_RF.
    pub num_streams: usize,
    /// Antenna element spacing in wavelengths.
    pub element_spacing_over_lambda: f64,
    /// Transmit power [dBm]; used by the radar-equation path-gain helper.
    pub tx_power_dbm: f64,
    /// Complex noise variance sigma^2 per receive-antenna sample.
    pub noise_variance: f64,
    /// Master seed; all randomness derives from (seed, label) streams.
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::desk()
    }
}

impl ScenarioConfig {
    /// Desk-scale profile: small enough for Monte-Carlo test runs.
    pub fn desk() -> Self {
        Self {
            carrier_frequency_hz: 0.3e12,
            subcarrier_spacing_hz: 480e3,
            num_delay_bins: 32,
            num_doppler_bins: 8,
            cp_length: 16,
            pulse_half_span: 4,
            rolloff: 0.1,
            tx_panel_y: 8,
            tx_panel_z: 8,
            rx_panel_y: 8,
            rx_panel_z: 8,
            ue_panel_y: 4,
            ue_panel_z: 4,
            num_rf_chains: 4,
            num_streams: 4,
            element_spacing_over_lambda: 0.5,
            tx_power_dbm: 20.0,
            noise_variance: 1.0,
            seed: 0,
        }
    }

    /// Full-scale profile: 0.3 THz carrier, 64x16 frame, 32x32 panels.
    pub fn full_scale() -> Self {
        Self {
            num_delay_bins: 64,
            num_doppler_bins: 16,
            tx_panel_y: 32,
            tx_panel_z: 32,
            rx_panel_y: 32,
            rx_panel_z: 32,
            ..Self::desk()
        }
    }

    /// Symbol period T = 1/Delta_f [s].
    pub fn symbol_period_s(&self) -> f64 {
        1.0 / self.subcarrier_spacing_hz
    }

    /// Sample period T_s = T/M [s]; equal to the delay resolution.
    pub fn sample_period_s(&self) -> f64 {
        self.symbol_period_s() / self.num_delay_bins as f64
    }

    /// Doppler resolution 1/(N T) [Hz].
    pub fn doppler_resolution_hz(&self) -> f64 {
        1.0 / (self.num_doppler_bins as f64 * self.symbol_period_s())
    }

    /// Samples per frame, MN.
    pub fn frame_len(&self) -> usize {
        self.num_delay_bins * self.num_doppler_bins
    }

    /// Carrier wavelength [m].
    pub fn wavelength_m(&self) -> f64 {
        C0 / self.carrier_frequency_hz
    }

    /// Transmit-panel geometry.
    pub fn tx_geometry(&self) -> UpaGeometry {
        UpaGeometry {
            n_y: self.tx_panel_y,
            n_z: self.tx_panel_z,
            spacing_over_lambda: self.element_spacing_over_lambda,
        }
    }

    /// Sensing-receive-panel geometry.
    pub fn rx_geometry(&self) -> UpaGeometry {
        UpaGeometry {
            n_y: self.rx_panel_y,
            n_z: self.rx_panel_z,
            spacing_over_lambda: self.element_spacing_over_lambda,
        }
    }

    /// Downlink-user-panel geometry.
    pub fn ue_geometry(&self) -> UpaGeometry {
        UpaGeometry {
            n_y: self.ue_panel_y,
            n_z: self.ue_panel_z,
            spacing_over_lambda: self.element_spacing_over_lambda,
        }
    }

    /// Transmit antenna count N_t.
    pub fn num_tx_antennas(&self) -> usize {
        self.tx_geometry().len()
    }

    /// Sensing-receive antenna count N_r.
    pub fn num_rx_antennas(&self) -> usize {
        self.rx_geometry().len()
    }

    /// Transmit power in watts.
    pub fn tx_power_w(&self) -> f64 {
        1e-3 * 10.0_f64.powf(self.tx_power_dbm / 10.0)
    }

    /// Check the structural invariants; every public entry point assumes a
    /// validated configuration.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let fail = |m: String| Err(ScenarioError::InvalidConfig(m));
        if self.carrier_frequency_hz <= 0.0 || self.subcarrier_spacing_hz <= 0.0 {
            return fail("carrier frequency and subcarrier spacing must be positive".into());
        }
        if self.num_delay_bins == 0 || self.num_doppler_bins == 0 {
            return fail("frame dimensions must be nonzero".into());
        }
        if 2 * self.pulse_half_span >= self.num_delay_bins {
            return fail(format!(
                "pulse half span Q={} must satisfy Q < M/2 = {}",
                self.pulse_half_span,
                self.num_delay_bins / 2
            ));
        }
        if self.cp_length >= self.frame_len() {
            return fail(format!(
                "cp_length {} must be shorter than the frame ({})",
                self.cp_length,
                self.frame_len()
            ));
        }
        if !(0.0..=1.0).contains(&self.rolloff) {
            return fail(format!("rolloff {} outside [0, 1]", self.rolloff));
        }
        if self.tx_geometry().is_empty() || self.rx_geometry().is_empty() || self.ue_geometry().is_empty() {
            return fail("antenna panels must be non-empty".into());
        }
        if self.num_streams < 2 {
            return fail("at least two streams are required (subspace estimation needs N_s >= 2)".into());
        }
        if self.num_streams > self.num_rf_chains {
            return fail(format!(
                "num_streams {} exceeds num_rf_chains {}",
                self.num_streams, self.num_rf_chains
            ));
        }
        let min_panel = self.num_tx_antennas().min(self.num_rx_antennas());
        if self.num_rf_chains > min_panel {
            return fail(format!(
                "num_rf_chains {} exceeds panel size {}",
                self.num_rf_chains, min_panel
            ));
        }
        if self.noise_variance <= 0.0 {
            return fail("noise_variance must be positive".into());
        }
        if self.element_spacing_over_lambda <= 0.0 {
            return fail("element spacing must be positive".into());
        }
        Ok(())
    }

    /// Serialize to the flat `key = value` config-text format. Real fields use
    /// the shortest representation that parses back bit-exactly.
    pub fn to_config_text(&self) -> String {
        let mut out = String::from("# scenario\n");
        for (k, v) in self.to_kv() {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }

    /// Key-value view used by the config-text format and the scenario hash.
    pub fn to_kv(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("carrier_frequency_hz".into(), self.carrier_frequency_hz.to_string());
        m.insert("subcarrier_spacing_hz".into(), self.subcarrier_spacing_hz.to_string());
        m.insert("num_delay_bins".into(), self.num_delay_bins.to_string());
        m.insert("num_doppler_bins".into(), self.num_doppler_bins.to_string());
        m.insert("cp_length".into(), self.cp_length.to_string());
        m.insert("pulse_half_span".into(), self.pulse_half_span.to_string());
        m.insert("rolloff".into(), self.rolloff.to_string());
        m.insert("tx_panel_y".into(), self.tx_panel_y.to_string());
        m.insert("tx_panel_z".into(), self.tx_panel_z.to_string());
        m.insert("rx_panel_y".into(), self.rx_panel_y.to_string());
        m.insert("rx_panel_z".into(), self.rx_panel_z.to_string());
        m.insert("ue_panel_y".into(), self.ue_panel_y.to_string());
        m.insert("ue_panel_z".into(), self.ue_panel_z.to_string());
        m.insert("num_rf_chains".into(), self.num_rf_chains.to_string());
        m.insert("num_streams".into(), self.num_streams.to_string());
        m.insert(
            "element_spacing_over_lambda".into(),
            self.element_spacing_over_lambda.to_string(),
        );
        m.insert("tx_power_dbm".into(), self.tx_power_dbm.to_string());
        m.insert("noise_variance".into(), self.noise_variance.to_string());
        m.insert("seed".into(), self.seed.to_string());
        m
    }

    /// Apply one `key = value` pair; returns false when the key is not a
    /// scenario field (the caller may own additional namespaces).
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<bool, ScenarioError> {
        let bad = |k: &str, v: &str| {
            ScenarioError::InvalidConfig(format!("cannot parse value `{v}` for key `{k}`"))
        };
        macro_rules! set {
            ($field:ident, $ty:ty) => {{
                self.$field = value.parse::<$ty>().map_err(|_| bad(key, value))?;
                Ok(true)
            }};
        }
        match key {
            "carrier_frequency_hz" => set!(carrier_frequency_hz, f64),
            "subcarrier_spacing_hz" => set!(subcarrier_spacing_hz, f64),
            "num_delay_bins" => set!(num_delay_bins, usize),
            "num_doppler_bins" => set!(num_doppler_bins, usize),
            "cp_length" => set!(cp_length, usize),
            "pulse_half_span" => set!(pulse_half_span, usize),
            "rolloff" => set!(rolloff, f64),
            "tx_panel_y" => set!(tx_panel_y, usize),
            "tx_panel_z" => set!(tx_panel_z, usize),
            "rx_panel_y" => set!(rx_panel_y, usize),
            "rx_panel_z" => set!(rx_panel_z, usize),
            "ue_panel_y" => set!(ue_panel_y, usize),
            "ue_panel_z" => set!(ue_panel_z, usize),
            "num_rf_chains" => set!(num_rf_chains, usize),
            "num_streams" => set!(num_streams, usize),
            "element_spacing_over_lambda" => set!(element_spacing_over_lambda, f64),
            "tx_power_dbm" => set!(tx_power_dbm, f64),
            "noise_variance" => set!(noise_variance, f64),
            "seed" => set!(seed, u64),
            _ => Ok(false),
        }
    }

    /// Parse a full config text into a scenario, starting from `base`.
    pub fn from_config_text(text: &str, base: ScenarioConfig) -> Result<Self, ScenarioError> {
        let mut cfg = base;
        for (key, value) in parse_flat_kv(text)? {
            if !cfg.apply_kv(&key, &value)? {
                return Err(ScenarioError::UnknownKey(key));
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Hex SHA-256 over the canonical key-value serialization; stamped into
    /// every experiment output for provenance.
    pub fn scenario_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for (k, v) in self.to_kv() {
            hasher.update(k.as_bytes());
            hasher.update(b"=");
            hasher.update(v.as_bytes());
            hasher.update(b"\n");
        }
        hex_string(&hasher.finalize())
    }
}

/// Parse the flat `key = value` text format: one pair per line, `#` starts a
/// comment, blank lines ignored.
pub fn parse_flat_kv(text: &str) -> Result<Vec<(String, String)>, ScenarioError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ScenarioError::Parse {
            line: idx + 1,
            message: "expected `key = value`".into(),
        })?;
        let key = k.trim();
        if key.is_empty() {
            return Err(ScenarioError::Parse {
                line: idx + 1,
                message: "empty key".into(),
            });
        }
        out.push((key.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

// ─── Targets ────────────────────────────────────────────────────────────────

/// A point sensing target described in physical units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetParams {
    /// Azimuth theta [deg].
    pub azimuth_deg: f64,
    /// Elevation phi [deg] measured from the z axis (90 deg = broadside).
    pub elevation_deg: f64,
    /// Range r [m]; the round-trip delay is 2 r / c0.
    pub range_m: f64,
    /// Radial velocity v [m/s]; the Doppler shift is 2 f_c v / c0.
    pub velocity_mps: f64,
    /// Complex path coefficient alpha (gain and phase of the echo).
    pub alpha: Complex64,
}

impl Default for TargetParams {
    fn default() -> Self {
        Self {
            azimuth_deg: 15.0,
            elevation_deg: 90.0,
            range_m: 50.0,
            velocity_mps: 300.0 / 3.6,
            alpha: Complex64::new(1.0, 0.0),
        }
    }
}

impl TargetParams {
    /// Path coefficient magnitude from the monostatic radar equation,
    /// |alpha|^2 = P_t lambda^2 sigma_rcs / ((4 pi)^3 r^4), with the given
    /// phase in radians. Alternative to supplying `alpha` directly.
    pub fn with_radar_equation_alpha(mut self, rcs_m2: f64, phase_rad: f64, cfg: &ScenarioConfig) -> Self {
        let lambda = cfg.wavelength_m();
        let r = self.range_m;
        let gain2 = cfg.tx_power_w() * lambda * lambda * rcs_m2
            / ((4.0 * std::f64::consts::PI).powi(3) * r.powi(4));
        self.alpha = Complex64::from_polar(gain2.sqrt(), phase_rad);
        self
    }
}

/// Delay-Doppler coordinates of a target on (and between) the frame grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayDoppler {
    /// Round-trip delay tau [s].
    pub delay_s: f64,
    /// Doppler shift nu [Hz].
    pub doppler_hz: f64,
    /// Delay in sample periods, l = tau / T_s (fractional allowed).
    pub normalized_delay: f64,
    /// Doppler in resolution cells, k = nu * N * T (fractional allowed).
    pub normalized_doppler: f64,
}

/// Convert physical target coordinates to (possibly off-grid) delay-Doppler
/// coordinates, enforcing the CP and unambiguous-Doppler ranges: the delay
/// must lie in (0, M_cp T_s] and the Doppler in (-1/(2T), 1/(2T)].
pub fn derive_delay_doppler(
    target: &TargetParams,
    cfg: &ScenarioConfig,
) -> Result<DelayDoppler, ScenarioError> {
    let delay_s = 2.0 * target.range_m / C0;
    let doppler_hz = 2.0 * cfg.carrier_frequency_hz * target.velocity_mps / C0;
    let max_delay = cfg.cp_length as f64 * cfg.sample_period_s();
    if !(delay_s > 0.0 && delay_s <= max_delay) {
        return Err(ScenarioError::DelayOutOfRange {
            delay_s,
            max_s: max_delay,
        });
    }
    let half = 0.5 * self_subcarrier(cfg);
    if !(doppler_hz > -half && doppler_hz <= half) {
        return Err(ScenarioError::DopplerOutOfRange {
            doppler_hz,
            lo: -half,
            hi: half,
        });
    }
    Ok(DelayDoppler {
        delay_s,
        doppler_hz,
        normalized_delay: delay_s / cfg.sample_period_s(),
        normalized_doppler: doppler_hz * cfg.num_doppler_bins as f64 * cfg.symbol_period_s(),
    })
}

fn self_subcarrier(cfg: &ScenarioConfig) -> f64 {
    cfg.subcarrier_spacing_hz
}

// ─── RNG streams ────────────────────────────────────────────────────────────

/// Deterministic, platform-independent random stream keyed by (seed, label).
///
/// Streams with different labels are statistically independent; child streams
/// derive from a parent key plus a label, so experiments can hand
/// per-(axis, trial) streams to parallel workers without coordination.
#[derive(Debug, Clone)]
pub struct RngStream {
    key: [u8; 32],
}

impl RngStream {
    /// Root stream for a master seed and label.
    pub fn new(seed: u64, label: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(seed.to_le_bytes());
        hasher.update(b"/");
        hasher.update(label.as_bytes());
        Self {
            key: hasher.finalize().into(),
        }
    }

    /// Independent child stream; equal labels yield equal streams.
    pub fn child(&self, label: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(self.key);
        hasher.update(b"/");
        hasher.update(label.as_bytes());
        Self {
            key: hasher.finalize().into(),
        }
    }

    /// Child stream keyed by an index (for trial/generation loops).
    pub fn child_idx(&self, label: &str, idx: u64) -> Self {
        self.child(&format!("{label}:{idx}"))
    }

    /// Fresh generator positioned at the stream start.
    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::from_seed(self.key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn test_desk_profile_is_valid() {
        let cfg = ScenarioConfig::desk();
        cfg.validate().unwrap();
        assert_eq!(cfg.frame_len(), 256);
        assert_eq!(cfg.num_tx_antennas(), 64);
        assert_eq!(cfg.num_rx_antennas(), 64);
    }

    #[test]
    fn test_full_scale_profile_matches_reference_deployment() {
        let cfg = ScenarioConfig::full_scale();
        cfg.validate().unwrap();
        assert_eq!(cfg.carrier_frequency_hz, 0.3e12);
        assert_eq!(cfg.subcarrier_spacing_hz, 480e3);
        assert_eq!(cfg.num_delay_bins, 64);
        assert_eq!(cfg.num_doppler_bins, 16);
        assert_eq!(cfg.num_tx_antennas(), 1024);
        assert_eq!(cfg.num_rx_antennas(), 1024);
        assert_eq!(cfg.num_rf_chains, 4);
        assert_eq!(cfg.num_streams, 4);
        assert_eq!(cfg.rolloff, 0.1);
    }

    #[test]
    fn test_derived_grid_quantities() {
        let cfg = ScenarioConfig::full_scale();
        assert!((cfg.symbol_period_s() - 2.0833333333333333e-6).abs() < 1e-21);
        assert!((cfg.sample_period_s() - 3.2552083333333335e-8).abs() < 1e-23);
        assert!((cfg.doppler_resolution_hz() - 30_000.0).abs() < 1e-9);
    }

    #[test]
    fn test_target_conversion_reference_values() {
        // 50 m / 300 km/h target on the full-scale grid; values frozen from
        // independent hand arithmetic with c0 = 299792458 m/s.
        let cfg = ScenarioConfig::full_scale();
        let t = TargetParams::default();
        let dd = derive_delay_doppler(&t, &cfg).unwrap();
        assert!((dd.delay_s - 3.3356409519815204e-7).abs() / 3.33e-7 < 1e-12);
        assert!((dd.doppler_hz - 166_782.04759907603).abs() / 1.66e5 < 1e-12);
        assert!((dd.normalized_delay - 10.247089004487231).abs() < 1e-9);
        assert!((dd.normalized_doppler - 5.559401586635868).abs() < 1e-9);

        let desk = ScenarioConfig::desk();
        let dd = derive_delay_doppler(&t, &desk).unwrap();
        assert!((dd.normalized_delay - 5.1235445022436155).abs() < 1e-9);
        assert!((dd.normalized_doppler - 2.779700793317934).abs() < 1e-9);
    }

    #[test]
    fn test_doppler_boundary_accepted_and_beyond_rejected() {
        // v = c0 / (4 f_c T) puts the Doppler exactly at +1/(2T): accepted.
        let cfg = ScenarioConfig::full_scale();
        let v_boundary = C0 / (4.0 * cfg.carrier_frequency_hz * cfg.symbol_period_s());
        let t = TargetParams {
            velocity_mps: v_boundary,
            ..TargetParams::default()
        };
        let dd = derive_delay_doppler(&t, &cfg).unwrap();
        assert!((dd.doppler_hz - 240_000.0).abs() < 1e-6);
        let t2 = TargetParams {
            velocity_mps: v_boundary * (1.0 + 1e-9),
            ..t
        };
        assert!(matches!(
            derive_delay_doppler(&t2, &cfg),
            Err(ScenarioError::DopplerOutOfRange { .. })
        ));
        // The negative boundary is open.
        let t3 = TargetParams {
            velocity_mps: -v_boundary,
            ..t
        };
        assert!(matches!(
            derive_delay_doppler(&t3, &cfg),
            Err(ScenarioError::DopplerOutOfRange { .. })
        ));
    }

    #[test]
    fn test_delay_beyond_cp_rejected() {
        let cfg = ScenarioConfig::desk();
        // max range = c0 * M_cp T_s / 2
        let r_max = C0 * cfg.cp_length as f64 * cfg.sample_period_s() / 2.0;
        let ok = TargetParams {
            range_m: r_max,
            ..TargetParams::default()
        };
        derive_delay_doppler(&ok, &cfg).unwrap();
        let too_far = TargetParams {
            range_m: r_max * (1.0 + 1e-9),
            ..ok
        };
        assert!(matches!(
            derive_delay_doppler(&too_far, &cfg),
            Err(ScenarioError::DelayOutOfRange { .. })
        ));
        let zero = TargetParams {
            range_m: 0.0,
            ..ok
        };
        assert!(derive_delay_doppler(&zero, &cfg).is_err());
    }

    #[test]
    fn test_validation_rejects_bad_shapes() {
        let mut cfg = ScenarioConfig::desk();
        cfg.pulse_half_span = 16; // Q >= M/2
        assert!(cfg.validate().is_err());

        let mut cfg = ScenarioConfig::desk();
        cfg.num_streams = 1;
        assert!(cfg.validate().is_err());

        let mut cfg = ScenarioConfig::desk();
        cfg.num_streams = 8;
        cfg.num_rf_chains = 4;
        assert!(cfg.validate().is_err());

        let mut cfg = ScenarioConfig::desk();
        cfg.rolloff = 1.5;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn test_config_text_round_trip_bit_exact() {
        let mut cfg = ScenarioConfig::desk();
        // Awkward reals that expose lossy formatting.
        cfg.carrier_frequency_hz = 0.1 + 0.2; // 0.30000000000000004
        cfg.rolloff = 1.0 / 3.0;
        cfg.noise_variance = 3.9e-17;
        cfg.element_spacing_over_lambda = f64::from_bits(0x3FE0000000000001);
        let text = cfg.to_config_text();
        let back = ScenarioConfig::from_config_text(&text, ScenarioConfig::full_scale()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn test_config_text_parsing_rules() {
        let text = "# comment line\nnum_delay_bins = 16 # trailing comment\n\n  rolloff=0.25\n";
        let cfg = ScenarioConfig::from_config_text(text, ScenarioConfig::desk()).unwrap();
        assert_eq!(cfg.num_delay_bins, 16);
        assert_eq!(cfg.rolloff, 0.25);

        assert!(matches!(
            ScenarioConfig::from_config_text("nonsense line\n", ScenarioConfig::desk()),
            Err(ScenarioError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ScenarioConfig::from_config_text("no_such_key = 3\n", ScenarioConfig::desk()),
            Err(ScenarioError::UnknownKey(_))
        ));
    }

    #[test]
    fn test_scenario_hash_tracks_content() {
        let a = ScenarioConfig::desk();
        let mut b = a.clone();
        assert_eq!(a.scenario_hash(), b.scenario_hash());
        b.seed = 1;
        assert_ne!(a.scenario_hash(), b.scenario_hash());
        assert_eq!(a.scenario_hash().len(), 64);
    }

    #[test]
    fn test_rng_streams_deterministic_and_label_separated() {
        let s1 = RngStream::new(7, "papr");
        let s2 = RngStream::new(7, "papr");
        let s3 = RngStream::new(7, "rmse");
        let mut a = s1.rng();
        let mut b = s2.rng();
        let mut c = s3.rng();
        let xa: Vec<u64> = (0..4).map(|_| a.gen()).collect();
        let xb: Vec<u64> = (0..4).map(|_| b.gen()).collect();
        let xc: Vec<u64> = (0..4).map(|_| c.gen()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);

        let c1 = s1.child_idx("trial", 3);
        let c2 = s1.child_idx("trial", 4);
        assert_ne!(c1.rng().gen::<u64>(), c2.rng().gen::<u64>());
        assert_eq!(
            c1.rng().gen::<u64>(),
            s1.child("trial:3").rng().gen::<u64>()
        );
    }

    #[test]
    fn test_radar_equation_alpha_scales_with_range() {
        let cfg = ScenarioConfig::desk();
        let t1 = TargetParams::default().with_radar_equation_alpha(1.0, 0.0, &cfg);
        let t2 = TargetParams {
            range_m: 100.0,
            ..TargetParams::default()
        }
        .with_radar_equation_alpha(1.0, 0.0, &cfg);
        // |alpha| ~ r^-2: doubling range quarters the magnitude.
        assert!((t1.alpha.norm() / t2.alpha.norm() - 4.0).abs() < 1e-12);
    }
}
