//! Monte Carlo estimation of the secrecy outage probabilities.
//!
//! The sample index range is cut into fixed-size blocks; workers claim whole
//! blocks and count outage events locally. Because a block's samples depend
//! only on `(master_seed, index)` and the partial counts are integers, the
//! merged estimate is identical for every thread count and block schedule.

use rayon::prelude::*;

use crate::channel::{sample_channel, ChannelSample, ChannelStream, SystemConfig};
use crate::error::{Error, Result};
use crate::sinr::{full_report, RiModel};
use crate::sop_exact::{Method, SopEstimate};

/// Samples per work unit. Large enough that scheduling overhead is
/// negligible, small enough to load-balance across cores.
const BLOCK: u64 = 1 << 16;

fn count_blocks<F>(config: &SystemConfig, master_seed: u64, n_samples: u64, per_sample: F) -> (u64, u64)
where
    F: Fn(&ChannelSample, &mut u64, &mut u64) + Sync,
{
    let blocks = n_samples.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(n_samples);
            let mut stream = ChannelStream::starting_at(master_seed, start);
            let mut c1 = 0u64;
            let mut c2 = 0u64;
            for _ in start..end {
                let s = sample_channel(config, &mut stream);
                per_sample(&s, &mut c1, &mut c2);
            }
            (c1, c2)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

/// Estimates both users' SOPs by direct simulation: draw gains, assemble the
/// secrecy rates under `model`, and count strict shortfalls against the
/// target rates. Returns estimates carrying the binomial standard error
/// `sqrt(p(1-p)/n)`.
pub fn sop_monte_carlo(
    config: &SystemConfig,
    model: &RiModel,
    n_samples: u64,
    master_seed: u64,
) -> Result<(SopEstimate, SopEstimate)> {
    model.validate()?;
    if n_samples == 0 {
        return Err(Error::config("monte carlo sample count must be positive"));
    }
    let rth1 = config.target_secrecy_rate_1();
    let rth2 = config.target_secrecy_rate_2();
    let (c1, c2) = count_blocks(config, master_seed, n_samples, |s, out1, out2| {
        let r = full_report(s, config, model);
        if r.secrecy_rate_1 < rth1 {
            *out1 += 1;
        }
        if r.secrecy_rate_2 < rth2 {
            *out2 += 1;
        }
    });
    let n = n_samples as f64;
    let make = |user: u8, count: u64| {
        let p = count as f64 / n;
        SopEstimate {
            user,
            value: p,
            method: Method::MonteCarlo,
            std_error: Some((p * (1.0 - p) / n).sqrt()),
            samples: Some(n_samples),
            model: *model,
        }
    };
    Ok((make(1, c1), make(2, c2)))
}

/// Fraction of realizations whose first-stage decode lands on the imperfect
/// branch, per user. Under the proposed model this estimates the closed-form
/// branch probabilities; under constant/fixed models it reflects whether the
/// configured RI is nonzero.
pub fn branch_occupancy(
    config: &SystemConfig,
    model: &RiModel,
    n_samples: u64,
    master_seed: u64,
) -> Result<(f64, f64)> {
    model.validate()?;
    if n_samples == 0 {
        return Err(Error::config("monte carlo sample count must be positive"));
    }
    let (c1, c2) = count_blocks(config, master_seed, n_samples, |s, out1, out2| {
        let r = full_report(s, config, model);
        if !r.sic_perfect_at_u1 {
            *out1 += 1;
        }
        if !r.sic_perfect_at_u2 {
            *out2 += 1;
        }
    });
    Ok((c1 as f64 / n_samples as f64, c2 as f64 / n_samples as f64))
}
