//! High-SNR asymptotic secrecy outage probabilities.
//!
//! At large transmit SNR the `+1` inside the outage quadratic's `K` factor
//! becomes negligible, every coefficient picks up a common factor of the
//! interfering gain `y`, and the factor cancels out of the root. The outage
//! window then no longer depends on `y`, so the average over the interfering
//! gain collapses and each branch SOP reduces to a single exponential CDF
//! evaluation. The branch weights stay exact.

use crate::channel::SystemConfig;
use crate::sinr::RiModel;
use crate::sop_exact::{
    imperfect_sic_probability_u1, imperfect_sic_probability_u2, root_window, Method, QuadCoeffs,
    SopEstimate,
};

/// Gain-independent asymptotic outage quadratic and its positive root.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticCoeffs {
    pub a_hat: f64,
    pub b_hat: f64,
    pub c_hat: f64,
    /// Positive root of `a_hat x^2 + b_hat x + c_hat`: the asymptotic
    /// outage window bound.
    pub w_hat: f64,
}

/// Asymptotic imperfect-branch coefficients for the strong user.
pub fn asymptotic_coeffs_u1(config: &SystemConfig, zeta: f64) -> AsymptoticCoeffs {
    let alpha = config.alpha();
    let rho = config.transmit_snr();
    let gamma_th = config.gamma_th();
    let pi1 = config.pi1();
    let a_hat = alpha * alpha * rho * rho * rho * (1.0 - alpha);
    let m1 = -(pi1 - 1.0) * (1.0 - alpha) * rho - pi1 * alpha * rho;
    let p1 = zeta * gamma_th * alpha * rho * rho - zeta * (1.0 - alpha) * rho * rho + alpha * rho;
    let q1 = zeta * gamma_th * rho + 1.0;
    let b_hat = (1.0 - alpha) * rho * alpha * rho + m1 * p1;
    let c_hat = m1 * q1;
    let (_, w_hat) = root_window(&QuadCoeffs {
        a: a_hat,
        b: b_hat,
        c: c_hat,
        k: (1.0 - alpha) * rho,
    });
    AsymptoticCoeffs { a_hat, b_hat, c_hat, w_hat }
}

/// Asymptotic imperfect-branch coefficients for the weak user (mirror with
/// `alpha <-> 1-alpha` and `Pi_2`).
pub fn asymptotic_coeffs_u2(config: &SystemConfig, zeta: f64) -> AsymptoticCoeffs {
    let alpha = config.alpha();
    let beta = 1.0 - alpha;
    let rho = config.transmit_snr();
    let gamma_th = config.gamma_th();
    let pi2 = config.pi2();
    let a_hat = beta * beta * rho * rho * rho * alpha;
    let m2 = -(pi2 - 1.0) * alpha * rho - pi2 * beta * rho;
    let p2 = zeta * gamma_th * beta * rho * rho - zeta * alpha * rho * rho + beta * rho;
    let q2 = zeta * gamma_th * rho + 1.0;
    let b_hat = alpha * rho * beta * rho + m2 * p2;
    let c_hat = m2 * q2;
    let (_, w_hat) = root_window(&QuadCoeffs {
        a: a_hat,
        b: b_hat,
        c: c_hat,
        k: alpha * rho,
    });
    AsymptoticCoeffs { a_hat, b_hat, c_hat, w_hat }
}

/// Asymptotic imperfect-branch SOP for the strong user.
pub fn sop_asymptotic_imperfect_u1(config: &SystemConfig, zeta: f64) -> f64 {
    let w = asymptotic_coeffs_u1(config, zeta).w_hat;
    1.0 - (-w / config.lambda1()).exp()
}

/// Asymptotic imperfect-branch SOP for the weak user.
pub fn sop_asymptotic_imperfect_u2(config: &SystemConfig, zeta: f64) -> f64 {
    let w = asymptotic_coeffs_u2(config, zeta).w_hat;
    1.0 - (-w / config.lambda2()).exp()
}

/// High-SNR limit of the perfect-branch outage window for the strong user:
/// the first-stage SINR saturates at `alpha/(1-alpha)`, so the window bound
/// is constant in the interfering gain.
pub fn asymptotic_perfect_window_u1(config: &SystemConfig) -> f64 {
    let alpha = config.alpha();
    let w = (config.pi1() / (1.0 - alpha) - 1.0) / (alpha * config.transmit_snr());
    w.max(0.0)
}

/// Mirror of [`asymptotic_perfect_window_u1`] for the weak user.
pub fn asymptotic_perfect_window_u2(config: &SystemConfig) -> f64 {
    let alpha = config.alpha();
    let w = (config.pi2() / alpha - 1.0) / ((1.0 - alpha) * config.transmit_snr());
    w.max(0.0)
}

fn estimate(user: u8, value: f64, model: RiModel) -> SopEstimate {
    SopEstimate {
        user,
        value: value.clamp(0.0, 1.0),
        method: Method::Asymptotic,
        std_error: None,
        samples: None,
        model,
    }
}

/// Asymptotic SOPs for both users under the proposed RI model, mixing the
/// asymptotic branch values with the exact branch probabilities.
pub fn sop_asymptotic(config: &SystemConfig, zeta: f64) -> (SopEstimate, SopEstimate) {
    let model = RiModel::Proposed { zeta };
    let p1 = imperfect_sic_probability_u1(config);
    let s1i = sop_asymptotic_imperfect_u1(config, zeta);
    let s1p = 1.0 - (-asymptotic_perfect_window_u1(config) / config.lambda1()).exp();
    let p2 = imperfect_sic_probability_u2(config);
    let s2i = sop_asymptotic_imperfect_u2(config, zeta);
    let s2p = 1.0 - (-asymptotic_perfect_window_u2(config) / config.lambda2()).exp();
    (
        estimate(1, p1 * s1i + (1.0 - p1) * s1p, model),
        estimate(2, p2 * s2i + (1.0 - p2) * s2p, model),
    )
}

/// Asymptotic SOPs for both users under perfect SIC at both receivers.
pub fn sop_asymptotic_perfect(config: &SystemConfig) -> (SopEstimate, SopEstimate) {
    let s1 = 1.0 - (-asymptotic_perfect_window_u1(config) / config.lambda1()).exp();
    let s2 = 1.0 - (-asymptotic_perfect_window_u2(config) / config.lambda2()).exp();
    (
        estimate(1, s1, RiModel::PerfectSic),
        estimate(2, s2, RiModel::PerfectSic),
    )
}
