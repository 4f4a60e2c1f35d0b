//! Exact secrecy outage probabilities for the proposed SINR-gap RI model and
//! for perfect SIC.
//!
//! Each user's SOP splits into perfect- and imperfect-SIC contributions
//! weighted by the closed-form probability of the first-stage decode
//! clearing the threshold. Conditioned on the interfering gain `y`, the
//! imperfect-branch outage event is a quadratic inequality in the user's own
//! gain whose positive root `W` bounds the outage window `[0, W)`; averaging
//! the exponential CDF at `W` over `y` gives a semi-infinite integral that a
//! substitution `u = exp(-y/lambda)` maps onto `(0, 1]` for adaptive
//! quadrature.

use crate::channel::{ChannelSample, SystemConfig};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadTolerances};
use crate::sinr::{stage1_sinrs, RiModel};

/// Evaluation path that produced a [`SopEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Asymptotic,
    MonteCarlo,
}

impl Method {
    /// Short token used in CSV/JSON column names.
    pub fn token(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Asymptotic => "asy",
            Method::MonteCarlo => "mc",
        }
    }
}

/// One secrecy outage probability with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopEstimate {
    /// 1 for the strong user, 2 for the weak user.
    pub user: u8,
    pub value: f64,
    pub method: Method,
    /// Present only for Monte Carlo estimates.
    pub std_error: Option<f64>,
    /// Present only for Monte Carlo estimates.
    pub samples: Option<u64>,
    pub model: RiModel,
}

/// Quadratic coefficients of the imperfect-branch outage polynomial at a
/// fixed interfering gain `y`, plus the auxiliary `K` factor.
#[derive(Debug, Clone, Copy)]
pub struct QuadCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub k: f64,
}

/// Probability that the strong user's first-stage decode misses the
/// threshold. Positive-probability perfect SIC requires
/// `alpha <= 1/(1 + gamma_th)`; past that bound the imperfect branch is
/// certain, and at the bound the closed form is extended by its limit 1.
pub fn imperfect_sic_probability_u1(config: &SystemConfig) -> f64 {
    let alpha = config.alpha();
    let z1 = ((1.0 - alpha) - alpha * config.gamma_th()) * config.transmit_snr();
    if z1 > 0.0 {
        1.0 - (-config.gamma_th() / (z1 * config.lambda1())).exp()
    } else {
        1.0
    }
}

/// Mirror of [`imperfect_sic_probability_u1`]: the weak user's bound is
/// `alpha >= gamma_th/(1 + gamma_th)` with `Z_2 = (alpha - (1-alpha)
/// gamma_th) rho_t` and mean `lambda2`.
pub fn imperfect_sic_probability_u2(config: &SystemConfig) -> f64 {
    let alpha = config.alpha();
    let z2 = (alpha - (1.0 - alpha) * config.gamma_th()) * config.transmit_snr();
    if z2 > 0.0 {
        1.0 - (-config.gamma_th() / (z2 * config.lambda2())).exp()
    } else {
        1.0
    }
}

/// Outage-polynomial coefficients for the strong user at interfering gain
/// `y = |h_2|^2`.
///
/// Panics if the transcribed coefficients break their sign constraints
/// (`a > 0`, `c <= 0` for target rates >= 0); that can only happen through
/// an implementation bug, not through valid input.
pub fn quad_coeffs_u1(y: f64, config: &SystemConfig, zeta: f64) -> QuadCoeffs {
    let alpha = config.alpha();
    let rho = config.transmit_snr();
    let gamma_th = config.gamma_th();
    let pi1 = config.pi1();
    let k = (1.0 - alpha) * y * rho + 1.0;
    let a = alpha * alpha * rho * rho * k;
    let b = (alpha + (pi1 - 1.0) * (1.0 - alpha) * zeta * rho
        - (pi1 - 1.0) * gamma_th * alpha * zeta * rho
        - (pi1 - 1.0) * alpha)
        * k
        * rho
        + ((1.0 - alpha) * zeta * rho - alpha * gamma_th * zeta * rho - alpha)
            * pi1
            * y
            * alpha
            * rho
            * rho;
    let c = (-(pi1 - 1.0) * gamma_th * zeta * rho - (pi1 - 1.0)) * k
        - pi1 * y * alpha * gamma_th * zeta * rho * rho
        - pi1 * y * alpha * rho;
    assert!(a > 0.0, "outage quadratic lost positivity of A");
    assert!(c <= 0.0, "outage quadratic lost negativity of C");
    QuadCoeffs { a, b, c, k }
}

/// Mirror of [`quad_coeffs_u1`] for the weak user at interfering gain
/// `y = |h_1|^2`: roles swap as `alpha <-> 1-alpha` with `K_2 = alpha y
/// rho_t + 1`.
pub fn quad_coeffs_u2(y: f64, config: &SystemConfig, zeta: f64) -> QuadCoeffs {
    let alpha = config.alpha();
    let beta = 1.0 - alpha;
    let rho = config.transmit_snr();
    let gamma_th = config.gamma_th();
    let pi2 = config.pi2();
    let k = alpha * y * rho + 1.0;
    let a = beta * beta * rho * rho * k;
    let b = (beta + (pi2 - 1.0) * alpha * zeta * rho
        - (pi2 - 1.0) * gamma_th * beta * zeta * rho
        - (pi2 - 1.0) * beta)
        * k
        * rho
        + (alpha * zeta * rho - beta * gamma_th * zeta * rho - beta) * pi2 * y * beta * rho * rho;
    let c = (-(pi2 - 1.0) * gamma_th * zeta * rho - (pi2 - 1.0)) * k
        - pi2 * y * beta * gamma_th * zeta * rho * rho
        - pi2 * y * beta * rho;
    assert!(a > 0.0, "outage quadratic lost positivity of A");
    assert!(c <= 0.0, "outage quadratic lost negativity of C");
    QuadCoeffs { a, b, c, k }
}

/// Roots `(v, w)` of the outage quadratic, `v <= 0 <= w`, computed without
/// subtractive cancellation: the root further from zero comes from the
/// `q = -(b + sign(b) sqrt(disc))/2` form and the other from `c/q`.
pub fn root_window(coeffs: &QuadCoeffs) -> (f64, f64) {
    let QuadCoeffs { a, b, c, .. } = *coeffs;
    assert!(a > 0.0);
    let disc = b * b - 4.0 * a * c;
    assert!(disc > 0.0, "outage quadratic lost a real root window");
    let s = disc.sqrt();
    let q = if b >= 0.0 { -(b + s) / 2.0 } else { -(b - s) / 2.0 };
    let r1 = q / a;
    let r2 = c / q;
    (r1.min(r2), r1.max(r2))
}

fn recontext(err: Error, context: &'static str) -> Error {
    match err {
        Error::Numerical {
            achieved,
            requested,
            ..
        } => Error::Numerical {
            context: context.to_string(),
            achieved,
            requested,
        },
        other => other,
    }
}

/// Averages the exponential CDF at a gain window `w(y)` over the interfering
/// gain: `(1/lam_other) integral_0^inf (1 - exp(-w(y)/lam_self))
/// exp(-y/lam_other) dy`, transformed by `u = exp(-y/lam_other)` onto
/// `(0, 1]` so the exponential weight is absorbed exactly.
fn outage_average<W: Fn(f64) -> f64>(lam_self: f64, lam_other: f64, window: W) -> Result<f64> {
    let q = integrate(
        |u| {
            let y = -lam_other * u.ln();
            1.0 - (-window(y) / lam_self).exp()
        },
        0.0,
        1.0,
        &QuadTolerances::default(),
    )?;
    Ok(q.value.clamp(0.0, 1.0))
}

/// Imperfect-branch SOP for the strong user.
pub fn sop_imperfect_u1(config: &SystemConfig, zeta: f64) -> Result<f64> {
    outage_average(config.lambda1(), config.lambda2(), |y| {
        root_window(&quad_coeffs_u1(y, config, zeta)).1
    })
    .map_err(|e| recontext(e, "sop_imperfect_u1"))
}

/// Imperfect-branch SOP for the weak user.
pub fn sop_imperfect_u2(config: &SystemConfig, zeta: f64) -> Result<f64> {
    outage_average(config.lambda2(), config.lambda1(), |y| {
        root_window(&quad_coeffs_u2(y, config, zeta)).1
    })
    .map_err(|e| recontext(e, "sop_imperfect_u2"))
}

/// Perfect-SIC outage window for the strong user at interfering gain `y`:
/// the outage event `(1 + alpha g1 rho_t)/(1 + gamma_12(y)) < Pi_1` solved
/// for `g1`, clamped at zero if the window would be empty.
pub fn perfect_window_u1(y: f64, config: &SystemConfig) -> f64 {
    let (_, gamma_12) = stage1_sinrs(&ChannelSample { g1: 0.0, g2: y }, config);
    let w = (config.pi1() * (1.0 + gamma_12) - 1.0) / (config.alpha() * config.transmit_snr());
    w.max(0.0)
}

/// Mirror of [`perfect_window_u1`] for the weak user.
pub fn perfect_window_u2(y: f64, config: &SystemConfig) -> f64 {
    let (gamma_21, _) = stage1_sinrs(&ChannelSample { g1: y, g2: 0.0 }, config);
    let w =
        (config.pi2() * (1.0 + gamma_21) - 1.0) / ((1.0 - config.alpha()) * config.transmit_snr());
    w.max(0.0)
}

/// Perfect-SIC SOP for the strong user.
pub fn sop_perfect_u1(config: &SystemConfig) -> Result<f64> {
    outage_average(config.lambda1(), config.lambda2(), |y| {
        perfect_window_u1(y, config)
    })
    .map_err(|e| recontext(e, "sop_perfect_u1"))
}

/// Perfect-SIC SOP for the weak user.
pub fn sop_perfect_u2(config: &SystemConfig) -> Result<f64> {
    outage_average(config.lambda2(), config.lambda1(), |y| {
        perfect_window_u2(y, config)
    })
    .map_err(|e| recontext(e, "sop_perfect_u2"))
}

/// Exact SOPs for both users under the proposed RI model: the imperfect and
/// perfect branch values mixed by the closed-form branch probabilities.
pub fn sop_exact(config: &SystemConfig, zeta: f64) -> Result<(SopEstimate, SopEstimate)> {
    let model = RiModel::Proposed { zeta };
    let p1 = imperfect_sic_probability_u1(config);
    let s1i = sop_imperfect_u1(config, zeta)?;
    let s1p = if p1 < 1.0 { sop_perfect_u1(config)? } else { 0.0 };
    let p2 = imperfect_sic_probability_u2(config);
    let s2i = sop_imperfect_u2(config, zeta)?;
    let s2p = if p2 < 1.0 { sop_perfect_u2(config)? } else { 0.0 };
    Ok((
        SopEstimate {
            user: 1,
            value: (p1 * s1i + (1.0 - p1) * s1p).clamp(0.0, 1.0),
            method: Method::Exact,
            std_error: None,
            samples: None,
            model,
        },
        SopEstimate {
            user: 2,
            value: (p2 * s2i + (1.0 - p2) * s2p).clamp(0.0, 1.0),
            method: Method::Exact,
            std_error: None,
            samples: None,
            model,
        },
    ))
}

/// Exact SOPs for both users under perfect SIC at both receivers.
pub fn sop_exact_perfect(config: &SystemConfig) -> Result<(SopEstimate, SopEstimate)> {
    Ok((
        SopEstimate {
            user: 1,
            value: sop_perfect_u1(config)?,
            method: Method::Exact,
            std_error: None,
            samples: None,
            model: RiModel::PerfectSic,
        },
        SopEstimate {
            user: 2,
            value: sop_perfect_u2(config)?,
            method: Method::Exact,
            std_error: None,
            samples: None,
            model: RiModel::PerfectSic,
        },
    ))
}
