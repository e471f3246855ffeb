// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: command-line flags over an optional `key = value`
//! file over built-in defaults.
//!
//! File syntax: one `key = value` per line, `#` starts a comment, keys are
//! the long flag names without dashes (`t-end` and `t_end` both accepted).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cpb_core::{
    CircuitParams, Complex64, ComplexMatrix4, DensityMatrix, DetectorSettings, TimeGrid,
};

use crate::args::{CommonArgs, DetectorArgs};
use crate::error::{CliError, Result};

pub const DEFAULT_T_END: f64 = 20.0;
pub const DEFAULT_POINTS: usize = 4001;
pub const DEFAULT_INITIAL_STATE: &str = "00";

const KNOWN_KEYS: &[&str] = &[
    "ej1",
    "ej2",
    "em",
    "ec1",
    "ec2",
    "ng1",
    "ng2",
    "gamma",
    "time-scale",
    "initial-state",
    "t-start",
    "t-end",
    "points",
    "out",
    "svg",
    "columns",
    "axis",
    "values",
    "series-dir",
    "dev-tol",
    "zeta-min",
    "zero-tol",
    "n-max",
];

/// Parsed `key = value` file. Keys are normalized to their flag spelling.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, got `{line}`"),
                ));
            };
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::config(key, "unknown key"));
            }
            if entries
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::config(key, "given more than once"));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Flag-over-file lookup.
#[derive(Debug, Clone, Default)]
pub struct Layers {
    file: ConfigFile,
}

impl Layers {
    pub fn new(file: ConfigFile) -> Self {
        Self { file }
    }

    pub fn from_args(common: &CommonArgs) -> Result<Self> {
        match &common.config {
            Some(path) => Ok(Self::new(ConfigFile::load(path)?)),
            None => Ok(Self::default()),
        }
    }

    /// The flag if given, else the parsed file entry, else `None`.
    pub fn get<T>(&self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.raw(key) {
            Some(text) => text
                .parse()
                .map(Some)
                .map_err(|e| CliError::config(key, format!("cannot parse `{text}`: {e}"))),
            None => Ok(None),
        }
    }

    pub fn get_or<T>(&self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key, flag)?.unwrap_or(default))
    }

    pub fn path(&self, key: &str, flag: &Option<PathBuf>) -> Option<PathBuf> {
        flag.clone()
            .or_else(|| self.file.raw(key).map(PathBuf::from))
    }

    pub fn string(&self, key: &str, flag: &Option<String>) -> Option<String> {
        flag.clone()
            .or_else(|| self.file.raw(key).map(str::to_string))
    }
}

/// Everything a command needs besides its own options.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: CircuitParams,
    pub initial_state: DensityMatrix,
    pub grid: TimeGrid,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(common: &CommonArgs, layers: &Layers) -> Result<Self> {
        let d = CircuitParams::default();
        let params = CircuitParams {
            ej1: layers.get_or("ej1", common.ej1, d.ej1)?,
            ej2: layers.get_or("ej2", common.ej2, d.ej2)?,
            em: layers.get_or("em", common.em, d.em)?,
            ec1: layers.get_or("ec1", common.ec1, d.ec1)?,
            ec2: layers.get_or("ec2", common.ec2, d.ec2)?,
            ng1: layers.get_or("ng1", common.ng1, d.ng1)?,
            ng2: layers.get_or("ng2", common.ng2, d.ng2)?,
            gamma: layers.get_or("gamma", common.gamma, d.gamma)?,
            time_scale: layers.get_or("time-scale", common.time_scale, d.time_scale)?,
        };
        params.validate().map_err(param_error)?;

        let state = layers
            .string("initial-state", &common.initial_state)
            .unwrap_or_else(|| DEFAULT_INITIAL_STATE.to_string());
        let initial_state = parse_initial_state(&state)?;

        let t_start = layers.get_or("t-start", common.t_start, 0.0)?;
        let t_end = layers.get_or("t-end", common.t_end, DEFAULT_T_END)?;
        let points = layers.get_or("points", common.points, DEFAULT_POINTS)?;
        let grid = resolve_grid(t_start, t_end, points)?;

        Ok(Self {
            params,
            initial_state,
            grid,
            out: layers.path("out", &common.out),
        })
    }
}

fn param_error(e: cpb_core::Error) -> CliError {
    match e {
        cpb_core::Error::InvalidParameter { name, reason } => {
            CliError::config(name.replace('_', "-"), reason)
        }
        other => other.into(),
    }
}

fn resolve_grid(t_start: f64, t_end: f64, points: usize) -> Result<TimeGrid> {
    if !t_start.is_finite() || t_start < 0.0 {
        return Err(CliError::config(
            "t-start",
            format!("{t_start} must be finite and >= 0"),
        ));
    }
    if !t_end.is_finite() || t_end <= t_start {
        return Err(CliError::config(
            "t-end",
            format!("{t_end} must be finite and exceed t-start = {t_start}"),
        ));
    }
    if points < 2 {
        return Err(CliError::config(
            "points",
            format!("{points} must be at least 2"),
        ));
    }
    Ok(TimeGrid::new(t_start, t_end, points)?)
}

pub fn resolve_detector(args: &DetectorArgs, layers: &Layers) -> Result<DetectorSettings> {
    let d = DetectorSettings::default();
    let s = DetectorSettings {
        dev_tol: layers.get_or("dev-tol", args.dev_tol, d.dev_tol)?,
        zeta_min: layers.get_or("zeta-min", args.zeta_min, d.zeta_min)?,
        zero_tol: layers.get_or("zero-tol", args.zero_tol, d.zero_tol)?,
    };
    if !(s.dev_tol.is_finite() && s.dev_tol > 0.0) {
        return Err(CliError::config(
            "dev-tol",
            format!("{} must be > 0", s.dev_tol),
        ));
    }
    if !(s.zeta_min.is_finite() && s.zeta_min >= 0.0) {
        return Err(CliError::config(
            "zeta-min",
            format!("{} must be >= 0", s.zeta_min),
        ));
    }
    if !(s.zero_tol.is_finite() && s.zero_tol > 0.0) {
        return Err(CliError::config(
            "zero-tol",
            format!("{} must be > 0", s.zero_tol),
        ));
    }
    Ok(s)
}

/// A basis label, or a path to a file holding 16 complex entries in
/// row-major order separated by commas or whitespace (`#` comments allowed).
pub fn parse_initial_state(spec: &str) -> Result<DensityMatrix> {
    if let Some(rho) = DensityMatrix::from_label(spec) {
        return Ok(rho);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| {
        CliError::config(
            "initial-state",
            format!("`{spec}` is neither a basis label (00, 01, 10, 11) nor a readable file: {e}"),
        )
    })?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<DensityMatrix> {
    let tokens: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.len() != 16 {
        return Err(CliError::config(
            "initial-state",
            format!("matrix file needs 16 entries, found {}", tokens.len()),
        ));
    }
    let mut m = ComplexMatrix4::zeros();
    for (k, tok) in tokens.iter().enumerate() {
        m[(k / 4, k % 4)] = Complex64::from_str(tok).map_err(|e| {
            CliError::config("initial-state", format!("entry {} `{tok}`: {e}", k + 1))
        })?;
    }
    DensityMatrix::new(m).map_err(|e| CliError::config("initial-state", e.to_string()))
}

/// Comma-separated list of reals.
pub fn parse_values(key: &str, text: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: f64 = t
                .parse()
                .map_err(|e| CliError::config(key, format!("cannot parse `{t}`: {e}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::config(key, format!("{t} is not finite")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(CliError::config(key, "no values given"));
    }
    Ok(values)
}
