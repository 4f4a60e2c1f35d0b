//! Flat `key=value` configuration files.
//!
//! Keys match the [`crate::channel::ConfigParams`] field names; power keys
//! are also accepted in dB form (`transmit_snr_db`, `noise_power_dbm`) and
//! converted at the parsing boundary. `#` starts a comment, blank lines are
//! skipped, and an empty file yields the full reference default setup.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::channel::{ConfigParams, SystemConfig};
use crate::error::{Error, Result};
use crate::sinr::RiModel;

/// Default sensitivity parameter of the proposed RI model.
pub const DEFAULT_ZETA: f64 = 1e-10;

/// A parsed configuration: the physical system plus the proposed RI model's
/// sensitivity parameter, which travels with the file but is not part of the
/// channel description itself.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedConfig {
    pub system: SystemConfig,
    pub zeta: f64,
}

impl LoadedConfig {
    pub fn defaults() -> Self {
        LoadedConfig {
            system: SystemConfig::defaults(),
            zeta: DEFAULT_ZETA,
        }
    }
}

const KEYS: &[&str] = &[
    "total_power_watts",
    "noise_power_watts",
    "transmit_snr_db",
    "noise_power_dbm",
    "alpha",
    "d1_m",
    "d2_m",
    "pathloss_const",
    "pathloss_exp",
    "gamma_th",
    "target_secrecy_rate_1",
    "target_secrecy_rate_2",
    "zeta",
];

/// Reads and parses a configuration file. Missing keys keep their defaults.
pub fn load_config(path: &Path) -> Result<LoadedConfig> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

/// Parses configuration text (see module docs for the format).
pub fn parse_config(text: &str) -> Result<LoadedConfig> {
    let mut seen: HashMap<&str, (usize, f64)> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected key=value, got '{line}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let canonical = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("unknown key '{key}'"),
            })?;
        let parsed: f64 = value.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid number '{value}' for key '{key}'"),
        })?;
        if let Some((first, _)) = seen.get(canonical) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate key '{key}' (first set on line {first})"),
            });
        }
        seen.insert(canonical, (line_no, parsed));
    }

    let get = |k: &str| seen.get(k).map(|(_, v)| *v);
    if get("total_power_watts").is_some() && get("transmit_snr_db").is_some() {
        return Err(Error::config(
            "total_power_watts and transmit_snr_db both set the transmit power; choose one",
        ));
    }
    if get("noise_power_watts").is_some() && get("noise_power_dbm").is_some() {
        return Err(Error::config(
            "noise_power_watts and noise_power_dbm both set the noise power; choose one",
        ));
    }

    let mut p = ConfigParams::default();
    if let Some(v) = get("noise_power_watts") {
        p.noise_power_watts = v;
    }
    if let Some(v) = get("noise_power_dbm") {
        p.noise_power_watts = 10f64.powf((v - 30.0) / 10.0);
    }
    if let Some(v) = get("total_power_watts") {
        p.total_power_watts = v;
    }
    if let Some(v) = get("transmit_snr_db") {
        p.total_power_watts = 10f64.powf(v / 10.0) * p.noise_power_watts;
    }
    if let Some(v) = get("alpha") {
        p.alpha = v;
    }
    if let Some(v) = get("d1_m") {
        p.d1_m = v;
    }
    if let Some(v) = get("d2_m") {
        p.d2_m = v;
    }
    if let Some(v) = get("pathloss_const") {
        p.pathloss_const = v;
    }
    if let Some(v) = get("pathloss_exp") {
        p.pathloss_exp = v;
    }
    if let Some(v) = get("gamma_th") {
        p.gamma_th = v;
    }
    if let Some(v) = get("target_secrecy_rate_1") {
        p.target_secrecy_rate_1 = v;
    }
    if let Some(v) = get("target_secrecy_rate_2") {
        p.target_secrecy_rate_2 = v;
    }
    let zeta = get("zeta").unwrap_or(DEFAULT_ZETA);
    RiModel::Proposed { zeta }.validate()?;
    Ok(LoadedConfig {
        system: SystemConfig::from_params(p)?,
        zeta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn assert_close(a: f64, b: f64, rel: f64) {
        let scale = a.abs().max(b.abs()).max(1e-300);
        assert!((a - b).abs() <= rel * scale, "{a} vs {b}");
    }

    #[test]
    fn empty_text_gives_reference_defaults() {
        let c = parse_config("").unwrap();
        assert_eq!(c.system, SystemConfig::defaults());
        assert_eq!(c.zeta, DEFAULT_ZETA);
        let c = parse_config("\n# only a comment\n\n").unwrap();
        assert_eq!(c.system, SystemConfig::defaults());
    }

    #[test]
    fn full_file_with_comments() {
        let text = "\
# system geometry
alpha = 0.33
d1_m = 40      # strong user
d2_m = 120
pathloss_exp = 2.7
gamma_th = 0.8
target_secrecy_rate_1 = 0.2
target_secrecy_rate_2 = 0.3
zeta = 2e-9
transmit_snr_db = 60
noise_power_dbm = -87
";
        let c = parse_config(text).unwrap();
        assert_eq!(c.system.alpha(), 0.33);
        assert_eq!(c.system.d1_m(), 40.0);
        assert_eq!(c.system.pathloss_exp(), 2.7);
        assert_eq!(c.zeta, 2e-9);
        assert_close(c.system.noise_power_watts(), 10f64.powf(-11.7), 1e-12);
        assert_close(c.system.transmit_snr(), 1e6, 1e-12);
        assert_close(
            c.system.total_power_watts(),
            1e6 * 10f64.powf(-11.7),
            1e-12,
        );
    }

    #[test]
    fn db_conversions() {
        let c = parse_config("transmit_snr_db = 70\n").unwrap();
        assert_close(c.system.transmit_snr(), 1e7, 1e-12);
        let c = parse_config("noise_power_dbm = -90\n").unwrap();
        assert_close(c.system.noise_power_watts(), 1e-12, 1e-12);
        // linear power keys still work
        let c = parse_config("total_power_watts = 2e-5\nnoise_power_watts = 1e-13\n").unwrap();
        assert_close(c.system.transmit_snr(), 2e8, 1e-12);
    }

    #[test]
    fn invariant_violations_rejected() {
        let err = parse_config("alpha = 1.2\n").unwrap_err().to_string();
        assert!(err.contains("alpha must lie in (0,1)"), "{err}");
        assert!(parse_config("zeta = -1e-10\n").is_err());
        assert!(parse_config("d1_m = 0\n").is_err());
    }

    #[test]
    fn parse_diagnostics_carry_line_numbers() {
        let err = parse_config("alpha = 0.4\nbogus_key = 1\n").unwrap_err();
        match err {
            Error::Parse { line, ref message } => {
                assert_eq!(line, 2);
                assert!(message.contains("unknown key 'bogus_key'"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_config("alpha 0.4\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_config("alpha = zero\n").unwrap_err();
        match err {
            Error::Parse { ref message, .. } => {
                assert!(message.contains("invalid number 'zero'"), "{message}")
            }
            other => panic!("unexpected {other:?}"),
        }

        let err = parse_config("alpha = 0.3\n\nalpha = 0.4\n").unwrap_err();
        match err {
            Error::Parse { line, ref message } => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate key"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn conflicting_power_keys_rejected() {
        let err = parse_config("total_power_watts = 1e-5\ntransmit_snr_db = 70\n").unwrap_err();
        assert!(err.to_string().contains("choose one"), "{err}");
        let err = parse_config("noise_power_watts = 1e-12\nnoise_power_dbm = -90\n").unwrap_err();
        assert!(err.to_string().contains("choose one"), "{err}");
    }

    #[test]
    fn load_config_roundtrip_and_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("system.conf");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "alpha = 0.25").unwrap();
        drop(f);
        let c = load_config(&path).unwrap();
        assert_eq!(c.system.alpha(), 0.25);

        let missing = dir.path().join("nope.conf");
        let err = load_config(&missing).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("nope.conf"), "{err}");
    }
}
