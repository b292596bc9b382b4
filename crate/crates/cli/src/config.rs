//! Sweep configuration: grid syntax, the flat `key = value` config file and
//! resolution of flags over file values over defaults.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use ptosc::{make_params, Method, ModelParams};

use crate::error::CliError;

/// Values of a swept axis, in emission order.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Single(f64),
    List(Vec<f64>),
    /// Inclusive linear range with `steps ≥ 2` points and `min < max`.
    Range {
        min: f64,
        max: f64,
        steps: usize,
    },
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            GridSpec::Single(v) => vec![*v],
            GridSpec::List(v) => v.clone(),
            GridSpec::Range { min, max, steps } => {
                let last = (*steps - 1) as f64;
                (0..*steps)
                    .map(|k| {
                        if k == *steps - 1 {
                            *max
                        } else {
                            min + (max - min) * k as f64 / last
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Parses a real number, also accepting multiples and fractions of π:
/// `pi`, `2pi`, `2*pi`, `pi/2`, `-0.5pi`.
pub fn parse_real(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    let bad = || CliError::Config(format!("cannot parse `{s}` as a number"));
    let value = match s.find("pi") {
        None => s.parse::<f64>().map_err(|_| bad())?,
        Some(pos) => {
            let coeff = s[..pos].trim().trim_end_matches('*').trim();
            let coeff = match coeff {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            let rest = s[pos + 2..].trim();
            let divisor = match rest.strip_prefix('/') {
                Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
                None if rest.is_empty() => 1.0,
                None => return Err(bad()),
            };
            coeff * PI / divisor
        }
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// `v`, `a,b,c` or `min:max:steps`.
pub fn parse_grid(s: &str) -> Result<GridSpec, CliError> {
    let s = s.trim();
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Config(format!("grid `{s}` must be min:max:steps")));
        }
        let min = parse_real(parts[0])?;
        let max = parse_real(parts[1])?;
        let steps: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("grid steps `{}` is not an integer", parts[2])))?;
        if steps < 2 {
            return Err(CliError::Config(format!("grid `{s}` needs at least 2 steps")));
        }
        if min >= max {
            return Err(CliError::Config(format!("grid `{s}` needs min < max")));
        }
        return Ok(GridSpec::Range { min, max, steps });
    }
    if s.contains(',') {
        let values = s.split(',').map(parse_real).collect::<Result<Vec<_>, _>>()?;
        return Ok(GridSpec::List(values));
    }
    Ok(GridSpec::Single(parse_real(s)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
}

/// Raw option values from flags or the config file, before typing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawOptions {
    pub eta: Option<String>,
    pub phase: Option<String>,
    pub t0: Option<String>,
    pub ratio: Option<String>,
    pub mass_sum: Option<String>,
    pub methods: Option<String>,
    pub format: Option<String>,
    pub output: Option<String>,
    pub raw_params: Option<String>,
    pub tolerance: Option<String>,
}

impl RawOptions {
    /// Fills every unset field from `fallback`.
    pub fn or(self, fallback: RawOptions) -> RawOptions {
        RawOptions {
            eta: self.eta.or(fallback.eta),
            phase: self.phase.or(fallback.phase),
            t0: self.t0.or(fallback.t0),
            ratio: self.ratio.or(fallback.ratio),
            mass_sum: self.mass_sum.or(fallback.mass_sum),
            methods: self.methods.or(fallback.methods),
            format: self.format.or(fallback.format),
            output: self.output.or(fallback.output),
            raw_params: self.raw_params.or(fallback.raw_params),
            tolerance: self.tolerance.or(fallback.tolerance),
        }
    }
}

/// Parses flat `key = value` text. Blank lines and `#` comments are
/// ignored; keys may use `-` or `_`.
pub fn parse_config_text(text: &str) -> Result<RawOptions, CliError> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("config line {}: expected `key = value`", n + 1)))?;
        let value = value.trim().trim_matches('"').to_string();
        map.insert(key.trim().replace('_', "-"), value);
    }
    let mut raw = RawOptions::default();
    for (key, value) in map {
        let slot = match key.as_str() {
            "eta" => &mut raw.eta,
            "phase" => &mut raw.phase,
            "t0" => &mut raw.t0,
            "ratio" => &mut raw.ratio,
            "mass-sum" => &mut raw.mass_sum,
            "methods" => &mut raw.methods,
            "format" => &mut raw.format,
            "output" => &mut raw.output,
            "raw-params" => &mut raw.raw_params,
            "tolerance" => &mut raw.tolerance,
            other => return Err(CliError::Config(format!("unknown config key `{other}`"))),
        };
        *slot = Some(value);
    }
    Ok(raw)
}

pub fn read_config_file(path: &Path) -> Result<RawOptions, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Defaults that differ per subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Defaults {
    pub eta: &'static str,
    pub phase: &'static str,
    pub methods: &'static str,
}

/// Fully typed sweep settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub eta: GridSpec,
    pub phase: GridSpec,
    pub t0: f64,
    pub ratio: f64,
    pub mass_sum: f64,
    pub methods: Vec<Method>,
    pub format: Format,
    pub output: OutputTarget,
    pub raw_params: Option<ModelParams>,
    pub tolerance: Option<f64>,
}

impl SweepConfig {
    pub fn resolve(raw: RawOptions, defaults: Defaults) -> Result<Self, CliError> {
        let eta = parse_grid(raw.eta.as_deref().unwrap_or(defaults.eta))?;
        if eta.values().iter().any(|&e| e < 0.0) {
            return Err(CliError::Config("η must be non-negative".into()));
        }
        let phase = parse_grid(raw.phase.as_deref().unwrap_or(defaults.phase))?;
        let t0 = raw.t0.as_deref().map(parse_real).transpose()?.unwrap_or(0.0);
        let ratio = raw.ratio.as_deref().map(parse_real).transpose()?.unwrap_or(0.5);
        if !(ratio > -1.0 && ratio < 1.0) || ratio == 0.0 {
            return Err(CliError::Config(format!(
                "ratio must lie in (-1, 1) without 0, got {ratio}"
            )));
        }
        let mass_sum = raw.mass_sum.as_deref().map(parse_real).transpose()?.unwrap_or(1.0);
        if mass_sum <= 0.0 {
            return Err(CliError::Config(format!("mass-sum must be positive, got {mass_sum}")));
        }

        let mut methods = Vec::new();
        for m in raw.methods.as_deref().unwrap_or(defaults.methods).split(',') {
            let m: Method = m.parse().map_err(CliError::Config)?;
            if !methods.contains(&m) {
                methods.push(m);
            }
        }

        let format = match raw.format.as_deref().unwrap_or("csv").trim() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(CliError::Config(format!("unknown format `{other}`"))),
        };
        let output = match raw.output.as_deref().map(str::trim) {
            None | Some("stdout") | Some("-") => OutputTarget::Stdout,
            Some(path) => OutputTarget::File(PathBuf::from(path)),
        };

        let raw_params = match raw.raw_params.as_deref() {
            None => None,
            Some(s) => {
                let v = s.split(',').map(parse_real).collect::<Result<Vec<_>, _>>()?;
                let p = match v.as_slice() {
                    [m1, m2, mu] => make_params(*m1, *m2, *mu, 0.0),
                    [m1, m2, mu, p] => make_params(*m1, *m2, *mu, *p),
                    _ => return Err(CliError::Config("raw-params must be m1sq,m2sq,musq[,p]".into())),
                };
                Some(p.map_err(|e| CliError::Config(e.to_string()))?)
            }
        };
        let tolerance = raw.tolerance.as_deref().map(parse_real).transpose()?;

        Ok(SweepConfig {
            eta,
            phase,
            t0,
            ratio,
            mass_sum,
            methods,
            format,
            output,
            raw_params,
            tolerance,
        })
    }
}
