//! C ABI for the `noma-secrecy` library.
//!
//! Conventions:
//!
//! * [`NsConfig`] is an opaque handle. Create one with [`ns_config_default`],
//!   [`ns_config_load`], or [`ns_config_clone`] and release it with
//!   [`ns_config_free`]. Handles are not synchronized; share one across
//!   threads only behind your own lock, or clone per thread.
//! * Fallible calls return an [`NsStatus`] and write results through out
//!   pointers, which are touched only on `NS_OK`. Failed setters leave the
//!   handle unchanged.
//! * After a failure, [`ns_last_error_message`] returns a description of what
//!   went wrong on the calling thread.
//! * Panics never unwind across the boundary; they surface as
//!   [`NsStatus::NS_ERR_PANIC`].

use std::any::Any;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use noma_secrecy::montecarlo::sop_monte_carlo;
use noma_secrecy::sop_asymptotic::{sop_asymptotic, sop_asymptotic_perfect};
use noma_secrecy::sop_exact::{sop_exact, sop_exact_perfect};
use noma_secrecy::sweep::parse_model;
use noma_secrecy::{Error, LoadedConfig, RiModel, SopEstimate};

/// Status codes returned by every fallible call in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum NsStatus {
    /// The call succeeded.
    NS_OK = 0,
    /// A required pointer was null or a string argument was malformed.
    NS_ERR_INVALID_ARGUMENT = 1,
    /// A parameter value lies outside its valid range.
    NS_ERR_CONFIG = 2,
    /// A configuration file could not be parsed.
    NS_ERR_PARSE = 3,
    /// A file could not be read.
    NS_ERR_IO = 4,
    /// A numerical routine failed to reach its accuracy target.
    NS_ERR_NUMERICAL = 5,
    /// An internal invariant failed. The library state stays consistent, but
    /// the result is unusable; please report the message as a bug.
    NS_ERR_PANIC = 6,
}

/// Opaque handle holding the downlink description (powers, geometry, fading
/// statistics, thresholds) together with the proposed residual-interference
/// model's sensitivity parameter `zeta`.
pub struct NsConfig {
    inner: LoadedConfig,
}

/// Secrecy outage probabilities for both users as produced by one evaluator
/// call. The `*_std_error` fields carry the binomial standard error of a
/// Monte Carlo estimate and are 0.0 for the analytic methods.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NsSopResult {
    pub s1: f64,
    pub s2: f64,
    pub s1_std_error: f64,
    pub s2_std_error: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

fn panic_text(payload: Box<dyn Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic payload".to_string()
    }
}

/// Runs `body` with the thread-local error cleared, converting a panic into
/// `fallback` plus a stored message.
fn guard_or<T>(fallback: T, body: impl FnOnce() -> T) -> T {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(value) => value,
        Err(payload) => {
            set_last_error(&format!("internal panic: {}", panic_text(payload)));
            fallback
        }
    }
}

fn fail(err: &Error) -> NsStatus {
    set_last_error(&err.to_string());
    match err {
        Error::Config(_) => NsStatus::NS_ERR_CONFIG,
        Error::Parse { .. } => NsStatus::NS_ERR_PARSE,
        Error::Io { .. } => NsStatus::NS_ERR_IO,
        Error::Numerical { .. } => NsStatus::NS_ERR_NUMERICAL,
    }
}

fn invalid(msg: &str) -> NsStatus {
    set_last_error(msg);
    NsStatus::NS_ERR_INVALID_ARGUMENT
}

fn write_pair(out: *mut NsSopResult, pair: (SopEstimate, SopEstimate)) -> NsStatus {
    let result = NsSopResult {
        s1: pair.0.value,
        s2: pair.1.value,
        s1_std_error: pair.0.std_error.unwrap_or(0.0),
        s2_std_error: pair.1.std_error.unwrap_or(0.0),
    };
    unsafe { *out = result };
    NsStatus::NS_OK
}

/// Applies `change` to the handle, committing the new state only on success.
fn update(
    cfg: *mut NsConfig,
    change: impl FnOnce(&LoadedConfig) -> noma_secrecy::Result<LoadedConfig>,
) -> NsStatus {
    guard_or(NsStatus::NS_ERR_PANIC, || {
        let handle = match unsafe { cfg.as_mut() } {
            Some(h) => h,
            None => return invalid("cfg must be non-null"),
        };
        match change(&handle.inner) {
            Ok(next) => {
                handle.inner = next;
                NsStatus::NS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

fn read_field(cfg: *const NsConfig, read: impl FnOnce(&LoadedConfig) -> f64) -> f64 {
    guard_or(f64::NAN, || match unsafe { cfg.as_ref() } {
        Some(h) => read(&h.inner),
        None => {
            invalid("cfg must be non-null");
            f64::NAN
        }
    })
}

fn evaluate(
    cfg: *const NsConfig,
    out: *mut NsSopResult,
    run: impl FnOnce(&LoadedConfig) -> noma_secrecy::Result<(SopEstimate, SopEstimate)>,
) -> NsStatus {
    guard_or(NsStatus::NS_ERR_PANIC, || {
        let handle = match unsafe { cfg.as_ref() } {
            Some(h) => h,
            None => return invalid("cfg must be non-null"),
        };
        if out.is_null() {
            return invalid("out must be non-null");
        }
        match run(&handle.inner) {
            Ok(pair) => write_pair(out, pair),
            Err(e) => fail(&e),
        }
    })
}

/// Message describing the most recent failure on the calling thread, or an
/// empty string after a success. The pointer stays valid until the next
/// library call on the same thread; copy the contents if you need them
/// longer.
#[no_mangle]
pub extern "C" fn ns_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Creates a handle with the reference defaults: 70 dB transmit SNR over
/// -90 dBm noise, users at 50 m and 100 m, equal power split, unit SINR
/// threshold, 0.1 bits/s/Hz target secrecy rates, and zeta = 1e-10.
/// Release with ns_config_free(). Returns null only on internal failure.
#[no_mangle]
pub extern "C" fn ns_config_default() -> *mut NsConfig {
    guard_or(ptr::null_mut(), || {
        Box::into_raw(Box::new(NsConfig {
            inner: LoadedConfig::defaults(),
        }))
    })
}

/// Parses a `key = value` configuration file and writes a new handle to
/// `out`. The caller owns the handle on `NS_OK`; on any other status `out`
/// is left untouched.
#[no_mangle]
pub extern "C" fn ns_config_load(path: *const c_char, out: *mut *mut NsConfig) -> NsStatus {
    guard_or(NsStatus::NS_ERR_PANIC, || {
        if path.is_null() || out.is_null() {
            return invalid("path and out must be non-null");
        }
        let path = match unsafe { CStr::from_ptr(path) }.to_str() {
            Ok(s) => s,
            Err(_) => return invalid("path must be valid UTF-8"),
        };
        match noma_secrecy::load_config(Path::new(path)) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(NsConfig { inner })) };
                NsStatus::NS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Deep copy of a handle, or null if `cfg` is null.
#[no_mangle]
pub extern "C" fn ns_config_clone(cfg: *const NsConfig) -> *mut NsConfig {
    guard_or(ptr::null_mut(), || match unsafe { cfg.as_ref() } {
        Some(h) => Box::into_raw(Box::new(NsConfig {
            inner: h.inner.clone(),
        })),
        None => {
            invalid("cfg must be non-null");
            ptr::null_mut()
        }
    })
}

/// Releases a handle created by this library. Null is ignored.
#[no_mangle]
pub extern "C" fn ns_config_free(cfg: *mut NsConfig) {
    if !cfg.is_null() {
        drop(unsafe { Box::from_raw(cfg) });
    }
}

/// Sets the power-allocation coefficient for the near user; must lie in
/// (0, 1).
#[no_mangle]
pub extern "C" fn ns_config_set_alpha(cfg: *mut NsConfig, alpha: f64) -> NsStatus {
    update(cfg, |c| {
        Ok(LoadedConfig {
            system: c.system.with_alpha(alpha)?,
            zeta: c.zeta,
        })
    })
}

/// Sets the transmit SNR as a linear power ratio (total transmit power over
/// noise power); must be positive.
#[no_mangle]
pub extern "C" fn ns_config_set_transmit_snr(cfg: *mut NsConfig, snr: f64) -> NsStatus {
    update(cfg, |c| {
        Ok(LoadedConfig {
            system: c.system.with_transmit_snr(snr)?,
            zeta: c.zeta,
        })
    })
}

/// Sets the SNR received by the far user as a linear ratio, rescaling the
/// transmit power accordingly; must be positive.
#[no_mangle]
pub extern "C" fn ns_config_set_received_snr(cfg: *mut NsConfig, snr: f64) -> NsStatus {
    update(cfg, |c| {
        Ok(LoadedConfig {
            system: c.system.with_received_snr(snr)?,
            zeta: c.zeta,
        })
    })
}

/// Sets the SINR threshold below which cancellation stays imperfect; must be
/// positive.
#[no_mangle]
pub extern "C" fn ns_config_set_gamma_th(cfg: *mut NsConfig, gamma_th: f64) -> NsStatus {
    update(cfg, |c| {
        Ok(LoadedConfig {
            system: c.system.with_gamma_th(gamma_th)?,
            zeta: c.zeta,
        })
    })
}

/// Sets both users' target secrecy rates in bits/s/Hz; each must lie in
/// [0, 100].
#[no_mangle]
pub extern "C" fn ns_config_set_target_rates(cfg: *mut NsConfig, r1: f64, r2: f64) -> NsStatus {
    update(cfg, |c| {
        Ok(LoadedConfig {
            system: c.system.with_target_rates(r1, r2)?,
            zeta: c.zeta,
        })
    })
}

/// Sets both user distances in meters; each must be positive.
#[no_mangle]
pub extern "C" fn ns_config_set_distances(cfg: *mut NsConfig, d1_m: f64, d2_m: f64) -> NsStatus {
    update(cfg, |c| {
        let mut p = c.system.params();
        p.d1_m = d1_m;
        p.d2_m = d2_m;
        Ok(LoadedConfig {
            system: noma_secrecy::SystemConfig::from_params(p)?,
            zeta: c.zeta,
        })
    })
}

/// Sets the proposed model's sensitivity parameter; must be positive and
/// finite.
#[no_mangle]
pub extern "C" fn ns_config_set_zeta(cfg: *mut NsConfig, zeta: f64) -> NsStatus {
    update(cfg, |c| {
        RiModel::Proposed { zeta }.validate()?;
        Ok(LoadedConfig {
            system: c.system.clone(),
            zeta,
        })
    })
}

/// Reads the power-allocation coefficient; NaN if `cfg` is null.
#[no_mangle]
pub extern "C" fn ns_config_alpha(cfg: *const NsConfig) -> f64 {
    read_field(cfg, |c| c.system.alpha())
}

/// Reads the transmit SNR as a linear ratio; NaN if `cfg` is null.
#[no_mangle]
pub extern "C" fn ns_config_transmit_snr(cfg: *const NsConfig) -> f64 {
    read_field(cfg, |c| c.system.transmit_snr())
}

/// Reads the far user's received SNR as a linear ratio; NaN if `cfg` is
/// null.
#[no_mangle]
pub extern "C" fn ns_config_received_snr(cfg: *const NsConfig) -> f64 {
    read_field(cfg, |c| c.system.received_snr())
}

/// Reads the SINR threshold; NaN if `cfg` is null.
#[no_mangle]
pub extern "C" fn ns_config_gamma_th(cfg: *const NsConfig) -> f64 {
    read_field(cfg, |c| c.system.gamma_th())
}

/// Reads the proposed model's sensitivity parameter; NaN if `cfg` is null.
#[no_mangle]
pub extern "C" fn ns_config_zeta(cfg: *const NsConfig) -> f64 {
    read_field(cfg, |c| c.zeta)
}

/// Semi-analytic secrecy outage probabilities under the proposed
/// residual-interference model.
#[no_mangle]
pub extern "C" fn ns_sop_exact(cfg: *const NsConfig, out: *mut NsSopResult) -> NsStatus {
    evaluate(cfg, out, |c| sop_exact(&c.system, c.zeta))
}

/// Semi-analytic secrecy outage probabilities under perfect cancellation.
#[no_mangle]
pub extern "C" fn ns_sop_exact_perfect(cfg: *const NsConfig, out: *mut NsSopResult) -> NsStatus {
    evaluate(cfg, out, |c| sop_exact_perfect(&c.system))
}

/// High-SNR closed-form approximation under the proposed model.
#[no_mangle]
pub extern "C" fn ns_sop_asymptotic(cfg: *const NsConfig, out: *mut NsSopResult) -> NsStatus {
    evaluate(cfg, out, |c| Ok(sop_asymptotic(&c.system, c.zeta)))
}

/// High-SNR closed-form approximation under perfect cancellation.
#[no_mangle]
pub extern "C" fn ns_sop_asymptotic_perfect(
    cfg: *const NsConfig,
    out: *mut NsSopResult,
) -> NsStatus {
    evaluate(cfg, out, |c| Ok(sop_asymptotic_perfect(&c.system)))
}

/// Monte Carlo secrecy outage probabilities for any residual-interference
/// model. `model` takes the same descriptors as the CLI: `proposed`,
/// `proposed:<zeta>`, `fixed:<beta>`, `constant:<g21>:<g12>`, or `perfect`;
/// a bare `proposed` uses the handle's zeta. Runs are deterministic in
/// (`n_samples`, `seed`) regardless of thread count.
#[no_mangle]
pub extern "C" fn ns_sop_monte_carlo(
    cfg: *const NsConfig,
    model: *const c_char,
    n_samples: u64,
    seed: u64,
    out: *mut NsSopResult,
) -> NsStatus {
    guard_or(NsStatus::NS_ERR_PANIC, || {
        let handle = match unsafe { cfg.as_ref() } {
            Some(h) => h,
            None => return invalid("cfg must be non-null"),
        };
        if model.is_null() || out.is_null() {
            return invalid("model and out must be non-null");
        }
        let descriptor = match unsafe { CStr::from_ptr(model) }.to_str() {
            Ok(s) => s,
            Err(_) => return invalid("model must be valid UTF-8"),
        };
        let resolved = match parse_model(descriptor) {
            Ok(spec) => spec.resolve(handle.inner.zeta),
            Err(e) => return fail(&e),
        };
        match sop_monte_carlo(&handle.inner.system, &resolved, n_samples, seed) {
            Ok(pair) => write_pair(out, pair),
            Err(e) => fail(&e),
        }
    })
}
