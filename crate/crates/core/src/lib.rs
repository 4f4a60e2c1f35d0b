//! Secrecy outage probabilities for a two-user downlink NOMA system whose
//! users are untrusted: each user decodes the other's message first (SIC
//! decoding order [2,1; 1,2]) and so can attempt to eavesdrop on it.
//!
//! The secrecy outage probability (SOP) of each user is evaluated three
//! ways, and the paths cross-validate:
//!
//! * **exact**: semi-analytic conditional-window integrals under a residual
//!   interference model in which imperfect SIC leaves behind power
//!   proportional to the SINR shortfall, `(gamma_th - gamma) * zeta`
//!   ([`sop_exact::sop_exact`]);
//! * **asymptotic**: closed-form high-SNR limits ([`sop_asymptotic`]);
//! * **monte carlo**: direct simulation over reproducible counter-based
//!   channel streams, for the proposed model as well as legacy constant and
//!   fixed-fraction RI models ([`montecarlo`]).
//!
//! ```
//! use noma_secrecy::{SystemConfig, sop_exact::sop_exact};
//!
//! let config = SystemConfig::defaults();
//! let (s1, s2) = sop_exact(&config, 1e-10).unwrap();
//! assert!(s1.value > 0.0 && s1.value < 1.0);
//! assert!(s2.value > s1.value); // the far user is more exposed
//! ```

pub mod channel;
pub mod config;
pub mod error;
pub mod montecarlo;
pub mod quadrature;
pub mod sinr;
pub mod sop_asymptotic;
pub mod sop_exact;
pub mod sweep;

pub use channel::{ChannelSample, ChannelStream, ConfigParams, SystemConfig};
pub use config::{load_config, LoadedConfig};
pub use error::{Error, Result};
pub use sinr::{RiModel, SinrReport};
pub use sop_exact::{Method, SopEstimate};
