//! Run configuration: tolerances, grid parameters, and the convention
//! tuple, parsed from a simple `key = value` text file.

use crate::symdiff::{BraceOrder, Conventions};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`")]
    Syntax(usize),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{0}`: {1}")]
    BadValue(String, String),
}

/// Convention selection: resolve automatically or pin a tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvChoice {
    Auto,
    Fixed(Conventions),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mass: f64,
    pub tol_numeric: f64,
    pub tol_drift: f64,
    pub tol_drift_deriv: f64,
    pub grid_n: usize,
    pub grid_kmax: f64,
    pub sigma: f64,
    pub conventions: ConvChoice,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mass: 1.0,
            tol_numeric: 1e-10,
            tol_drift: 1e-8,
            tol_drift_deriv: 1e-6,
            grid_n: 64,
            grid_kmax: 6.0,
            sigma: 0.5,
            conventions: ConvChoice::Auto,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut conv = Conventions::resolved();
        let mut conv_fixed = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax(lineno + 1))?;
            let key = key.trim();
            let value = value.trim();
            let bad = |v: &str| ConfigError::BadValue(key.to_string(), v.to_string());
            match key {
                "mass" => cfg.mass = value.parse().map_err(|_| bad(value))?,
                "tol.exact" => {
                    let v: f64 = value.parse().map_err(|_| bad(value))?;
                    if v != 0.0 {
                        return Err(ConfigError::BadValue(
                            key.into(),
                            "exact checks carry zero tolerance".into(),
                        ));
                    }
                }
                "tol.numeric" => cfg.tol_numeric = value.parse().map_err(|_| bad(value))?,
                "tol.drift" => cfg.tol_drift = value.parse().map_err(|_| bad(value))?,
                "tol.drift_deriv" => {
                    cfg.tol_drift_deriv = value.parse().map_err(|_| bad(value))?
                }
                "grid.n" => cfg.grid_n = value.parse().map_err(|_| bad(value))?,
                "grid.kmax" => cfg.grid_kmax = value.parse().map_err(|_| bad(value))?,
                "grid.sigma" => cfg.sigma = value.parse().map_err(|_| bad(value))?,
                "conv.brace_sign" => {
                    conv.brace_sign = parse_sign(value).ok_or_else(|| bad(value))?;
                    conv_fixed = true;
                }
                "conv.coord_sign" => {
                    conv.coord_sign = parse_sign(value).ok_or_else(|| bad(value))?;
                    conv_fixed = true;
                }
                "conv.eps_sign" => {
                    conv.eps_sign = parse_sign(value).ok_or_else(|| bad(value))?;
                    conv_fixed = true;
                }
                "conv.ordering" => {
                    conv.ordering = match value {
                        "x*w" | "xw" => BraceOrder::XThenOmega,
                        "w*x" | "wx" => BraceOrder::OmegaThenX,
                        "auto" => conv.ordering,
                        _ => return Err(bad(value)),
                    };
                    if value != "auto" {
                        conv_fixed = true;
                    }
                }
                _ => return Err(ConfigError::UnknownKey(key.to_string())),
            }
        }
        if conv_fixed {
            cfg.conventions = ConvChoice::Fixed(conv);
        }
        Ok(cfg)
    }

    /// Flat view for the report header.
    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("mass".into(), format!("{}", self.mass));
        m.insert("tol.exact".into(), "0".into());
        m.insert("tol.numeric".into(), format!("{:e}", self.tol_numeric));
        m.insert("tol.drift".into(), format!("{:e}", self.tol_drift));
        m.insert(
            "tol.drift_deriv".into(),
            format!("{:e}", self.tol_drift_deriv),
        );
        m.insert("grid.n".into(), format!("{}", self.grid_n));
        m.insert("grid.kmax".into(), format!("{}", self.grid_kmax));
        m.insert("grid.sigma".into(), format!("{}", self.sigma));
        match self.conventions {
            ConvChoice::Auto => {
                m.insert("conv".into(), "auto".into());
            }
            ConvChoice::Fixed(c) => m.extend(c.describe()),
        }
        m
    }
}

fn parse_sign(v: &str) -> Option<i8> {
    match v {
        "+1" | "1" | "+" => Some(1),
        "-1" | "-" => Some(-1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_roundtrip() {
        let cfg = RunConfig::parse("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        let text = "\
# comment
mass = 2
tol.numeric = 1e-9
grid.n = 48
conv.brace_sign = +1
conv.ordering = x*w
";
        let cfg = RunConfig::parse(text).unwrap();
        assert_eq!(cfg.mass, 2.0);
        assert_eq!(cfg.grid_n, 48);
        assert!(matches!(cfg.conventions, ConvChoice::Fixed(_)));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(matches!(
            RunConfig::parse("bogus = 1"),
            Err(ConfigError::UnknownKey(_))
        ));
        assert!(matches!(
            RunConfig::parse("mass 1"),
            Err(ConfigError::Syntax(1))
        ));
        assert!(matches!(
            RunConfig::parse("tol.exact = 0.1"),
            Err(ConfigError::BadValue(_, _))
        ));
    }
}
