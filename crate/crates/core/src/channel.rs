//! Physical configuration and the stochastic channel model.
//!
//! The base station serves two users over Rayleigh-fading links, so the
//! channel power gains `|h_n|^2` are exponentially distributed with means
//! `lambda_n = L_c * d_n^(-e)` set by path loss. Sampling is counter-based:
//! draw `i` of a stream depends only on `(master_seed, i)`, which makes any
//! parallel partitioning of the index range reproduce identical sequences.

use crate::error::{Error, Result};

/// All physical and system parameters, with derived quantities kept
/// consistent by construction. Build one through [`SystemConfig::from_params`]
/// or [`SystemConfig::defaults`], and vary single parameters through the
/// `with_*` helpers (each revalidates).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    total_power_watts: f64,
    noise_power_watts: f64,
    transmit_snr: f64,
    alpha: f64,
    d1_m: f64,
    d2_m: f64,
    pathloss_const: f64,
    pathloss_exp: f64,
    lambda1: f64,
    lambda2: f64,
    gamma_th: f64,
    target_secrecy_rate_1: f64,
    target_secrecy_rate_2: f64,
    pi1: f64,
    pi2: f64,
}

/// Raw inputs for [`SystemConfig`]. Defaults follow the reference numerical
/// setup: 70 dB transmit SNR over -90 dBm noise, users at 50 m and 100 m with
/// unit path-loss constant and exponent 3, equal power split, unit SINR
/// threshold, and 0.1 bits/s/Hz target secrecy rates.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigParams {
    pub total_power_watts: f64,
    pub noise_power_watts: f64,
    pub alpha: f64,
    pub d1_m: f64,
    pub d2_m: f64,
    pub pathloss_const: f64,
    pub pathloss_exp: f64,
    pub gamma_th: f64,
    pub target_secrecy_rate_1: f64,
    pub target_secrecy_rate_2: f64,
}

impl Default for ConfigParams {
    fn default() -> Self {
        ConfigParams {
            total_power_watts: 1e-5,
            noise_power_watts: 1e-12,
            alpha: 0.5,
            d1_m: 50.0,
            d2_m: 100.0,
            pathloss_const: 1.0,
            pathloss_exp: 3.0,
            gamma_th: 1.0,
            target_secrecy_rate_1: 0.1,
            target_secrecy_rate_2: 0.1,
        }
    }
}

/// Mean channel power gain `L_c * d^(-e)` at distance `d`.
pub fn mean_gain(distance_m: f64, pathloss_const: f64, pathloss_exp: f64) -> Result<f64> {
    for (name, v) in [
        ("distance_m", distance_m),
        ("pathloss_const", pathloss_const),
        ("pathloss_exp", pathloss_exp),
    ] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::config(format!(
                "mean_gain: {name} must be positive and finite, got {v}"
            )));
        }
    }
    Ok(pathloss_const * distance_m.powf(-pathloss_exp))
}

impl SystemConfig {
    pub fn from_params(p: ConfigParams) -> Result<Self> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::config(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
            Ok(())
        }
        positive("total_power_watts", p.total_power_watts)?;
        positive("noise_power_watts", p.noise_power_watts)?;
        positive("d1_m", p.d1_m)?;
        positive("d2_m", p.d2_m)?;
        positive("pathloss_const", p.pathloss_const)?;
        positive("pathloss_exp", p.pathloss_exp)?;
        positive("gamma_th", p.gamma_th)?;
        if !(p.alpha > 0.0 && p.alpha < 1.0) {
            return Err(Error::config(format!(
                "alpha must lie in (0,1), got {}",
                p.alpha
            )));
        }
        for (name, v) in [
            ("target_secrecy_rate_1", p.target_secrecy_rate_1),
            ("target_secrecy_rate_2", p.target_secrecy_rate_2),
        ] {
            // the upper bound keeps 2^rate comfortably inside f64 range
            if !v.is_finite() || !(0.0..=100.0).contains(&v) {
                return Err(Error::config(format!(
                    "{name} must lie in [0, 100] bits/s/Hz, got {v}"
                )));
            }
        }
        let lambda1 = mean_gain(p.d1_m, p.pathloss_const, p.pathloss_exp)?;
        let lambda2 = mean_gain(p.d2_m, p.pathloss_const, p.pathloss_exp)?;
        Ok(SystemConfig {
            total_power_watts: p.total_power_watts,
            noise_power_watts: p.noise_power_watts,
            transmit_snr: p.total_power_watts / p.noise_power_watts,
            alpha: p.alpha,
            d1_m: p.d1_m,
            d2_m: p.d2_m,
            pathloss_const: p.pathloss_const,
            pathloss_exp: p.pathloss_exp,
            lambda1,
            lambda2,
            gamma_th: p.gamma_th,
            target_secrecy_rate_1: p.target_secrecy_rate_1,
            target_secrecy_rate_2: p.target_secrecy_rate_2,
            pi1: (2.0f64).powf(p.target_secrecy_rate_1),
            pi2: (2.0f64).powf(p.target_secrecy_rate_2),
        })
    }

    /// Reference numerical setup (see [`ConfigParams::default`]).
    pub fn defaults() -> Self {
        SystemConfig::from_params(ConfigParams::default()).expect("defaults are valid")
    }

    /// Raw inputs that reproduce this config through [`SystemConfig::from_params`].
    pub fn params(&self) -> ConfigParams {
        ConfigParams {
            total_power_watts: self.total_power_watts,
            noise_power_watts: self.noise_power_watts,
            alpha: self.alpha,
            d1_m: self.d1_m,
            d2_m: self.d2_m,
            pathloss_const: self.pathloss_const,
            pathloss_exp: self.pathloss_exp,
            gamma_th: self.gamma_th,
            target_secrecy_rate_1: self.target_secrecy_rate_1,
            target_secrecy_rate_2: self.target_secrecy_rate_2,
        }
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        let mut p = self.params();
        p.alpha = alpha;
        SystemConfig::from_params(p)
    }

    /// Sets the total power so that `P_t / sigma^2` equals `snr` (linear).
    pub fn with_transmit_snr(&self, snr: f64) -> Result<Self> {
        if !snr.is_finite() || snr <= 0.0 {
            return Err(Error::config(format!(
                "transmit_snr must be positive and finite, got {snr}"
            )));
        }
        let mut p = self.params();
        p.total_power_watts = snr * self.noise_power_watts;
        SystemConfig::from_params(p)
    }

    /// Sets the transmit SNR so that the mean received SNR at the weak user,
    /// `rho_t * lambda2`, equals `snr` (linear). Distances stay fixed.
    pub fn with_received_snr(&self, snr: f64) -> Result<Self> {
        if !snr.is_finite() || snr <= 0.0 {
            return Err(Error::config(format!(
                "received_snr must be positive and finite, got {snr}"
            )));
        }
        self.with_transmit_snr(snr / self.lambda2)
    }

    pub fn with_gamma_th(&self, gamma_th: f64) -> Result<Self> {
        let mut p = self.params();
        p.gamma_th = gamma_th;
        SystemConfig::from_params(p)
    }

    pub fn with_target_rates(&self, r1: f64, r2: f64) -> Result<Self> {
        let mut p = self.params();
        p.target_secrecy_rate_1 = r1;
        p.target_secrecy_rate_2 = r2;
        SystemConfig::from_params(p)
    }

    pub fn with_d2_m(&self, d2_m: f64) -> Result<Self> {
        let mut p = self.params();
        p.d2_m = d2_m;
        SystemConfig::from_params(p)
    }

    /// Moves the strong user so that `lambda1 / lambda2` equals `ratio`,
    /// holding `lambda2` (and both path-loss parameters) fixed.
    pub fn with_gain_ratio(&self, ratio: f64) -> Result<Self> {
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(Error::config(format!(
                "gain_ratio must be positive and finite, got {ratio}"
            )));
        }
        let mut p = self.params();
        p.d1_m = (self.pathloss_const / (ratio * self.lambda2)).powf(1.0 / self.pathloss_exp);
        SystemConfig::from_params(p)
    }

    pub fn total_power_watts(&self) -> f64 {
        self.total_power_watts
    }
    pub fn noise_power_watts(&self) -> f64 {
        self.noise_power_watts
    }
    /// `rho_t = P_t / sigma^2`, linear.
    pub fn transmit_snr(&self) -> f64 {
        self.transmit_snr
    }
    /// Mean received SNR at the weak user, `rho_t * lambda2`.
    pub fn received_snr(&self) -> f64 {
        self.transmit_snr * self.lambda2
    }
    /// Power-allocation fraction for the strong user.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn d1_m(&self) -> f64 {
        self.d1_m
    }
    pub fn d2_m(&self) -> f64 {
        self.d2_m
    }
    pub fn pathloss_const(&self) -> f64 {
        self.pathloss_const
    }
    pub fn pathloss_exp(&self) -> f64 {
        self.pathloss_exp
    }
    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }
    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }
    /// SINR decoding threshold.
    pub fn gamma_th(&self) -> f64 {
        self.gamma_th
    }
    pub fn target_secrecy_rate_1(&self) -> f64 {
        self.target_secrecy_rate_1
    }
    pub fn target_secrecy_rate_2(&self) -> f64 {
        self.target_secrecy_rate_2
    }
    /// `2^target_secrecy_rate_1`.
    pub fn pi1(&self) -> f64 {
        self.pi1
    }
    /// `2^target_secrecy_rate_2`.
    pub fn pi2(&self) -> f64 {
        self.pi2
    }
}

/// One realization of the pair of channel power gains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSample {
    /// `|h_1|^2`
    pub g1: f64,
    /// `|h_2|^2`
    pub g2: f64,
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in `(0, 1]` addressed by `(master_seed, index, dim)`.
/// Zero is excluded so `-ln(u)` stays finite.
fn unit_uniform(master_seed: u64, index: u64, dim: u64) -> f64 {
    let key = master_seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(dim.wrapping_mul(0xD1B5_4A32_D192_ED03));
    let z = mix64(mix64(key));
    ((z >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Counter-addressed stream of channel realizations. Streams created with
/// [`ChannelStream::starting_at`] on disjoint index ranges never overlap, and
/// concatenating them in index order reproduces the single-stream sequence.
#[derive(Debug, Clone)]
pub struct ChannelStream {
    master_seed: u64,
    cursor: u64,
}

impl ChannelStream {
    pub fn new(master_seed: u64) -> Self {
        ChannelStream {
            master_seed,
            cursor: 0,
        }
    }

    pub fn starting_at(master_seed: u64, index: u64) -> Self {
        ChannelStream {
            master_seed,
            cursor: index,
        }
    }

    /// Index of the next sample this stream will produce.
    pub fn index(&self) -> u64 {
        self.cursor
    }
}

/// Draws the next gain pair: inverse-CDF exponential sampling,
/// `g = -lambda * ln(u)` with `u` uniform in `(0, 1]`.
pub fn sample_channel(config: &SystemConfig, stream: &mut ChannelStream) -> ChannelSample {
    let i = stream.cursor;
    stream.cursor += 1;
    let u1 = unit_uniform(stream.master_seed, i, 0);
    let u2 = unit_uniform(stream.master_seed, i, 1);
    ChannelSample {
        g1: -config.lambda1 * u1.ln(),
        g2: -config.lambda2 * u2.ln(),
    }
}
