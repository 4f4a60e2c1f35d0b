//! Per-stage SINRs under decoding order D2 = [2,1; 1,2], where each user
//! first decodes the other user's message and then its own, for four
//! residual-interference (RI) models, plus the resulting data and secrecy
//! rates.
//!
//! Stage 1 is model-independent: user 1 decodes user 2's message at SINR
//! `gamma_21`, user 2 decodes user 1's at `gamma_12`. Stage 2 divides the own
//! signal power by the RI left over from the first decode plus noise.

use crate::channel::{ChannelSample, SystemConfig};
use crate::error::{Error, Result};

/// Residual-interference model for the second SIC stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiModel {
    /// Fixed RI powers, one per user, independent of the channel.
    Constant { gamma_cap_21: f64, gamma_cap_12: f64 },
    /// RI is the fraction `beta` of the cancelled signal's received power.
    Fixed { beta: f64 },
    /// RI scales with the SINR gap: `(gamma_th - gamma) * zeta` when the
    /// first-stage decode falls short of the threshold, zero otherwise.
    Proposed { zeta: f64 },
    PerfectSic,
}

impl RiModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RiModel::Constant {
                gamma_cap_21,
                gamma_cap_12,
            } => {
                if !gamma_cap_21.is_finite() || gamma_cap_21 < 0.0 {
                    return Err(Error::config(format!(
                        "constant RI gamma_cap_21 must be non-negative, got {gamma_cap_21}"
                    )));
                }
                if !gamma_cap_12.is_finite() || gamma_cap_12 < 0.0 {
                    return Err(Error::config(format!(
                        "constant RI gamma_cap_12 must be non-negative, got {gamma_cap_12}"
                    )));
                }
            }
            RiModel::Fixed { beta } => {
                if !beta.is_finite() || !(0.0..=1.0).contains(&beta) {
                    return Err(Error::config(format!(
                        "fixed RI beta must lie in [0,1], got {beta}"
                    )));
                }
            }
            RiModel::Proposed { zeta } => {
                if !zeta.is_finite() || zeta < 0.0 {
                    return Err(Error::config(format!(
                        "proposed RI zeta must be non-negative, got {zeta}"
                    )));
                }
            }
            RiModel::PerfectSic => {}
        }
        Ok(())
    }
}

/// Every SINR, rate, and secrecy rate for one channel realization.
/// Secrecy rates carry their sign; callers that want the conventional
/// non-negative secrecy capacity can clamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrReport {
    pub gamma_21: f64,
    pub gamma_12: f64,
    pub gamma_11: f64,
    pub gamma_22: f64,
    pub sic_perfect_at_u1: bool,
    pub sic_perfect_at_u2: bool,
    pub rate_11: f64,
    pub rate_22: f64,
    pub rate_21: f64,
    pub rate_12: f64,
    pub secrecy_rate_1: f64,
    pub secrecy_rate_2: f64,
}

/// First-stage SINRs `(gamma_21, gamma_12)`. User 1 decodes user 2's message
/// against its own signal as interference and vice versa, so both are
/// bounded: `gamma_21 < (1-alpha)/alpha` and `gamma_12 < alpha/(1-alpha)`.
pub fn stage1_sinrs(sample: &ChannelSample, config: &SystemConfig) -> (f64, f64) {
    let alpha = config.alpha();
    let inv_rho = 1.0 / config.transmit_snr();
    let gamma_21 = (1.0 - alpha) * sample.g1 / (alpha * sample.g1 + inv_rho);
    let gamma_12 = alpha * sample.g2 / ((1.0 - alpha) * sample.g2 + inv_rho);
    (gamma_21, gamma_12)
}

/// Stage-2 SINR with residual interference `ri`. The `ri == 0` case is kept
/// on a single multiplicative path so that every zero-RI model (perfect SIC,
/// proposed with zeta = 0, fixed with beta = 0, constant with 0) produces
/// bit-identical values.
fn stage2_value(own_power_coef: f64, g: f64, rho: f64, ri: f64) -> f64 {
    if ri == 0.0 {
        own_power_coef * g * rho
    } else {
        own_power_coef * g / (ri + 1.0 / rho)
    }
}

/// Second-stage SINR at the strong user and whether its first-stage SIC was
/// treated as perfect.
pub fn stage2_sinr_u1(
    sample: &ChannelSample,
    config: &SystemConfig,
    model: &RiModel,
) -> (f64, bool) {
    let alpha = config.alpha();
    let rho = config.transmit_snr();
    let (gamma_21, _) = stage1_sinrs(sample, config);
    let (ri, flag) = match *model {
        RiModel::Proposed { zeta } => {
            if gamma_21 >= config.gamma_th() {
                (0.0, true)
            } else {
                let ri = (config.gamma_th() - gamma_21) * zeta;
                assert!(ri >= 0.0, "negative RI on the imperfect branch");
                (ri, false)
            }
        }
        RiModel::Constant { gamma_cap_21, .. } => (gamma_cap_21, gamma_cap_21 == 0.0),
        RiModel::Fixed { beta } => (beta * (1.0 - alpha) * sample.g1, beta == 0.0),
        RiModel::PerfectSic => (0.0, true),
    };
    (stage2_value(alpha, sample.g1, rho, ri), flag)
}

/// Mirror of [`stage2_sinr_u1`] for the weak user: roles swap as
/// `alpha <-> 1-alpha`, `g1 <-> g2`, and the branch compares `gamma_12`
/// against the threshold.
pub fn stage2_sinr_u2(
    sample: &ChannelSample,
    config: &SystemConfig,
    model: &RiModel,
) -> (f64, bool) {
    let alpha = config.alpha();
    let rho = config.transmit_snr();
    let (_, gamma_12) = stage1_sinrs(sample, config);
    let (ri, flag) = match *model {
        RiModel::Proposed { zeta } => {
            if gamma_12 >= config.gamma_th() {
                (0.0, true)
            } else {
                let ri = (config.gamma_th() - gamma_12) * zeta;
                assert!(ri >= 0.0, "negative RI on the imperfect branch");
                (ri, false)
            }
        }
        RiModel::Constant { gamma_cap_12, .. } => (gamma_cap_12, gamma_cap_12 == 0.0),
        RiModel::Fixed { beta } => (beta * alpha * sample.g2, beta == 0.0),
        RiModel::PerfectSic => (0.0, true),
    };
    (stage2_value(1.0 - alpha, sample.g2, rho, ri), flag)
}

/// Assembles all SINRs, Shannon rates `log2(1 + gamma)`, and secrecy rates
/// (own-decode rate minus the rate at which the other user decodes the same
/// message) for one realization.
pub fn full_report(sample: &ChannelSample, config: &SystemConfig, model: &RiModel) -> SinrReport {
    let (gamma_21, gamma_12) = stage1_sinrs(sample, config);
    let (gamma_11, sic_perfect_at_u1) = stage2_sinr_u1(sample, config, model);
    let (gamma_22, sic_perfect_at_u2) = stage2_sinr_u2(sample, config, model);
    let rate_11 = (1.0 + gamma_11).log2();
    let rate_22 = (1.0 + gamma_22).log2();
    let rate_21 = (1.0 + gamma_21).log2();
    let rate_12 = (1.0 + gamma_12).log2();
    SinrReport {
        gamma_21,
        gamma_12,
        gamma_11,
        gamma_22,
        sic_perfect_at_u1,
        sic_perfect_at_u2,
        rate_11,
        rate_22,
        rate_21,
        rate_12,
        secrecy_rate_1: rate_11 - rate_12,
        secrecy_rate_2: rate_22 - rate_21,
    }
}
