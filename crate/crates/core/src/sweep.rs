//! Parameter sweeps and tabular emission.
//!
//! A sweep varies one axis of a base configuration over a linear or log
//! grid, evaluates every requested (model, method) pair at each point, and
//! emits the table as CSV or JSON. Output is byte-stable: identical inputs
//! produce identical bytes regardless of thread count.

use std::io::{self, Write};

use crate::config::LoadedConfig;
use crate::error::{Error, Result};
use crate::montecarlo::sop_monte_carlo;
use crate::sinr::RiModel;
use crate::sop_asymptotic::{sop_asymptotic, sop_asymptotic_perfect};
use crate::sop_exact::{sop_exact, sop_exact_perfect, Method, SopEstimate};
use crate::channel::SystemConfig;

/// Which base-configuration parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Alpha,
    TransmitSnrDb,
    ReceivedSnrDb,
    Zeta,
    GammaTh,
    TargetRate1,
    TargetRate2,
    D2M,
    GainRatio,
}

impl Axis {
    pub fn token(&self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::TransmitSnrDb => "transmit_snr_db",
            Axis::ReceivedSnrDb => "received_snr_db",
            Axis::Zeta => "zeta",
            Axis::GammaTh => "gamma_th",
            Axis::TargetRate1 => "target_rate_1",
            Axis::TargetRate2 => "target_rate_2",
            Axis::D2M => "d2_m",
            Axis::GainRatio => "gain_ratio",
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axis> {
        Ok(match s {
            "alpha" => Axis::Alpha,
            "transmit_snr_db" => Axis::TransmitSnrDb,
            "received_snr_db" => Axis::ReceivedSnrDb,
            "zeta" => Axis::Zeta,
            "gamma_th" => Axis::GammaTh,
            "target_rate_1" => Axis::TargetRate1,
            "target_rate_2" => Axis::TargetRate2,
            "d2_m" => Axis::D2M,
            "gain_ratio" => Axis::GainRatio,
            other => {
                return Err(Error::config(format!(
                    "unknown sweep axis '{other}'; expected one of alpha, transmit_snr_db, \
                     received_snr_db, zeta, gamma_th, target_rate_1, target_rate_2, d2_m, \
                     gain_ratio"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// RI model as requested on the command line. The proposed model may leave
/// its sensitivity parameter open, in which case the config-file value (or
/// the swept zeta) applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    Proposed { zeta: Option<f64> },
    Fixed { beta: f64 },
    Constant { gamma_cap_21: f64, gamma_cap_12: f64 },
    Perfect,
}

/// A parsed model descriptor; `label` is the descriptor as typed and names
/// the output columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub label: String,
    pub kind: ModelKind,
}

impl ModelSpec {
    /// Concrete model at the current sensitivity parameter.
    pub fn resolve(&self, zeta: f64) -> RiModel {
        match self.kind {
            ModelKind::Proposed { zeta: Some(z) } => RiModel::Proposed { zeta: z },
            ModelKind::Proposed { zeta: None } => RiModel::Proposed { zeta },
            ModelKind::Fixed { beta } => RiModel::Fixed { beta },
            ModelKind::Constant {
                gamma_cap_21,
                gamma_cap_12,
            } => RiModel::Constant {
                gamma_cap_21,
                gamma_cap_12,
            },
            ModelKind::Perfect => RiModel::PerfectSic,
        }
    }

    fn analytic(&self) -> bool {
        matches!(self.kind, ModelKind::Proposed { .. } | ModelKind::Perfect)
    }
}

/// Parses a model descriptor: `proposed[:zeta]`, `fixed:<beta>`,
/// `constant:<ri_at_u1>:<ri_at_u2>`, or `perfect`.
pub fn parse_model(descriptor: &str) -> Result<ModelSpec> {
    let label = descriptor.trim().to_string();
    let bad = |why: &str| {
        Error::config(format!("invalid model descriptor '{label}': {why}"))
    };
    let mut parts = label.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad(&format!("'{s}' is not a number")))
    };
    let kind = match head {
        "proposed" => match args.as_slice() {
            [] => ModelKind::Proposed { zeta: None },
            [z] => ModelKind::Proposed { zeta: Some(num(z)?) },
            _ => return Err(bad("expected proposed or proposed:<zeta>")),
        },
        "fixed" => match args.as_slice() {
            [b] => ModelKind::Fixed { beta: num(b)? },
            _ => return Err(bad("expected fixed:<beta>")),
        },
        "constant" => match args.as_slice() {
            [a, b] => ModelKind::Constant {
                gamma_cap_21: num(a)?,
                gamma_cap_12: num(b)?,
            },
            _ => return Err(bad("expected constant:<ri_at_u1>:<ri_at_u2>")),
        },
        "perfect" => match args.as_slice() {
            [] => ModelKind::Perfect,
            _ => return Err(bad("perfect takes no parameters")),
        },
        _ => {
            return Err(bad(
                "expected one of proposed[:zeta], fixed:<beta>, constant:<g21>:<g12>, perfect",
            ))
        }
    };
    let spec = ModelSpec { label, kind };
    spec.resolve(crate::config::DEFAULT_ZETA).validate()?;
    Ok(spec)
}

/// Parses a method token; both the short CSV tokens and the long names are
/// accepted.
pub fn parse_method(s: &str) -> Result<Method> {
    match s.trim() {
        "exact" => Ok(Method::Exact),
        "asy" | "asymptotic" => Ok(Method::Asymptotic),
        "mc" | "monte-carlo" => Ok(Method::MonteCarlo),
        other => Err(Error::config(format!(
            "unknown method '{other}'; expected exact, asy (asymptotic), or mc (monte-carlo)"
        ))),
    }
}

/// Full description of one sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
    pub methods: Vec<Method>,
    pub models: Vec<ModelSpec>,
    pub mc_samples: u64,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::config(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if !self.start.is_finite() || !self.stop.is_finite() || self.start >= self.stop {
            return Err(Error::config(format!(
                "sweep start must be finite and less than stop, got {} .. {}",
                self.start, self.stop
            )));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(Error::config(format!(
                "log-scale sweep requires start > 0, got {}",
                self.start
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::config("at least one method must be requested"));
        }
        if self.models.is_empty() {
            return Err(Error::config("at least one model must be requested"));
        }
        let analytic_requested = self
            .methods
            .iter()
            .any(|m| matches!(m, Method::Exact | Method::Asymptotic));
        if analytic_requested {
            if let Some(m) = self.models.iter().find(|m| !m.analytic()) {
                return Err(Error::config(format!(
                    "model '{}' supports only the monte-carlo method",
                    m.label
                )));
            }
        }
        if self.methods.contains(&Method::MonteCarlo) && self.mc_samples == 0 {
            return Err(Error::config("monte carlo sample count must be positive"));
        }
        Ok(())
    }

    /// Grid values, ordered, endpoints landing exactly on start/stop.
    pub fn axis_values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == 0 {
                    self.start
                } else if i == n - 1 {
                    self.stop
                } else {
                    let t = i as f64 / (n - 1) as f64;
                    match self.scale {
                        Scale::Linear => self.start + t * (self.stop - self.start),
                        Scale::Log => {
                            (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                        }
                    }
                }
            })
            .collect()
    }
}

/// One grid point: the axis value and the estimates for every requested
/// (model, method) pair in declaration order, two users per pair.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_value: f64,
    pub estimates: Vec<SopEstimate>,
}

fn apply_axis(base: &LoadedConfig, axis: Axis, v: f64) -> Result<(SystemConfig, f64)> {
    let mut zeta = base.zeta;
    let system = match axis {
        Axis::Alpha => base.system.with_alpha(v)?,
        Axis::TransmitSnrDb => base.system.with_transmit_snr(10f64.powf(v / 10.0))?,
        Axis::ReceivedSnrDb => base.system.with_received_snr(10f64.powf(v / 10.0))?,
        Axis::Zeta => {
            RiModel::Proposed { zeta: v }.validate()?;
            zeta = v;
            base.system.clone()
        }
        Axis::GammaTh => base.system.with_gamma_th(v)?,
        Axis::TargetRate1 => base
            .system
            .with_target_rates(v, base.system.target_secrecy_rate_2())?,
        Axis::TargetRate2 => base
            .system
            .with_target_rates(base.system.target_secrecy_rate_1(), v)?,
        Axis::D2M => base.system.with_d2_m(v)?,
        Axis::GainRatio => base.system.with_gain_ratio(v)?,
    };
    Ok((system, zeta))
}

fn at_axis_value(err: Error, axis: Axis, v: f64) -> Error {
    match err {
        Error::Numerical {
            context,
            achieved,
            requested,
        } => Error::Numerical {
            context: format!("{context} at {}={v}", axis.token()),
            achieved,
            requested,
        },
        Error::Config(msg) => Error::config(format!("at {}={v}: {msg}", axis.token())),
        other => other,
    }
}

/// Evaluates one (model, method) pair at a fixed operating point. Analytic
/// methods exist only for the proposed and perfect models; other
/// combinations return a configuration error.
pub fn evaluate_point(
    config: &SystemConfig,
    model: &RiModel,
    method: Method,
    mc_samples: u64,
    seed: u64,
) -> Result<(SopEstimate, SopEstimate)> {
    match (method, model) {
        (Method::Exact, RiModel::Proposed { zeta }) => sop_exact(config, *zeta),
        (Method::Exact, RiModel::PerfectSic) => sop_exact_perfect(config),
        (Method::Asymptotic, RiModel::Proposed { zeta }) => Ok(sop_asymptotic(config, *zeta)),
        (Method::Asymptotic, RiModel::PerfectSic) => Ok(sop_asymptotic_perfect(config)),
        (Method::MonteCarlo, m) => sop_monte_carlo(config, m, mc_samples, seed),
        (_, m) => Err(Error::config(format!(
            "no analytic evaluation for model {m:?}"
        ))),
    }
}

/// Runs the sweep over the base configuration; rows come back in axis order.
pub fn run_sweep(spec: &SweepSpec, base: &LoadedConfig) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.points);
    for v in spec.axis_values() {
        let (config, zeta) = apply_axis(base, spec.axis, v).map_err(|e| at_axis_value(e, spec.axis, v))?;
        let mut estimates = Vec::with_capacity(2 * spec.models.len() * spec.methods.len());
        for model_spec in &spec.models {
            let model = model_spec.resolve(zeta);
            for &method in &spec.methods {
                let (s1, s2) = evaluate_point(&config, &model, method, spec.mc_samples, spec.seed)
                    .map_err(|e| at_axis_value(e, spec.axis, v))?;
                estimates.push(s1);
                estimates.push(s2);
            }
        }
        rows.push(SweepRow {
            axis_value: v,
            estimates,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(format!(
                "unknown output format '{other}'; expected csv or json"
            ))),
        }
    }
}

/// Column names after the leading `axis` column: one `S1[,S1_se],S2[,S2_se]`
/// group per (model, method) pair, models outermost.
pub fn column_names(spec: &SweepSpec) -> Vec<String> {
    let mut cols = Vec::new();
    for m in &spec.models {
        for method in &spec.methods {
            let prefix = format!("{}.{}", m.label, method.token());
            for user in ["S1", "S2"] {
                cols.push(format!("{prefix}.{user}"));
                if *method == Method::MonteCarlo {
                    cols.push(format!("{prefix}.{user}_se"));
                }
            }
        }
    }
    cols
}

/// 12 significant digits; enough to reconstruct the trend plots and stable
/// across runs.
fn fmt_num(v: f64) -> String {
    format!("{v:.11e}")
}

fn row_values(row: &SweepRow) -> Vec<f64> {
    let mut values = Vec::with_capacity(2 * row.estimates.len());
    for est in &row.estimates {
        values.push(est.value);
        if est.method == Method::MonteCarlo {
            values.push(est.std_error.expect("monte carlo estimates carry std_error"));
        }
    }
    values
}

fn emit_csv(rows: &[SweepRow], spec: &SweepSpec, out: &mut dyn Write) -> io::Result<()> {
    write!(out, "axis")?;
    for c in column_names(spec) {
        write!(out, ",{c}")?;
    }
    writeln!(out)?;
    for row in rows {
        write!(out, "{}", fmt_num(row.axis_value))?;
        for v in row_values(row) {
            write!(out, ",{}", fmt_num(v))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn emit_json(rows: &[SweepRow], spec: &SweepSpec, out: &mut dyn Write) -> io::Result<()> {
    let cols = column_names(spec);
    let mut array = Vec::with_capacity(rows.len());
    for row in rows {
        let mut obj = serde_json::Map::new();
        let num = |v: f64| {
            serde_json::Number::from_f64(v)
                .map(serde_json::Value::Number)
                .expect("estimates are finite")
        };
        obj.insert("axis".to_string(), num(row.axis_value));
        for (name, v) in cols.iter().zip(row_values(row)) {
            obj.insert(name.clone(), num(v));
        }
        array.push(serde_json::Value::Object(obj));
    }
    serde_json::to_writer_pretty(&mut *out, &serde_json::Value::Array(array))?;
    writeln!(out)
}

/// Writes rows in the requested format. Byte-stable for identical inputs.
pub fn emit(
    rows: &[SweepRow],
    spec: &SweepSpec,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    assert!(!rows.is_empty(), "emit requires at least one row");
    match format {
        OutputFormat::Csv => emit_csv(rows, spec, out),
        OutputFormat::Json => emit_json(rows, spec, out),
    }
}
