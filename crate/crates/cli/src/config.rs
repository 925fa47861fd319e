use std::path::Path;

use nonclassical::{ModelParams64, ValidatedParams64};
use nonclassical_oracle::TruncationConfig;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

pub const MAX_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    Time,
    Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SweepKind>,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Sweep {
    /// Evenly spaced grid including both ends.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.stop } else { self.start + span * (i as f64 / last) })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleOverrides {
    pub n_start: Option<usize>,
    pub n_max: Option<usize>,
    pub rel_tol: Option<f64>,
}

/// Contents of the JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ModelParams64,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    /// Column selectors; all columns when absent.
    #[serde(default)]
    pub outputs: Option<Vec<String>>,
    #[serde(default)]
    pub oracle: OracleOverrides,
}

/// Command-line values that replace their counterparts from the file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub omega: Option<f64>,
    pub omega1_re: Option<f64>,
    pub omega1_im: Option<f64>,
    pub omega2_re: Option<f64>,
    pub omega2_im: Option<f64>,
    pub lambda_re: Option<f64>,
    pub lambda_im: Option<f64>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub points: Option<usize>,
}

fn set(slot: &mut f64, v: Option<f64>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::ConfigInvalid(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Builds a config from the file (if any) and the flags; flags win.
    pub fn load(path: Option<&Path>, o: &Overrides) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Self::from_file(p)?,
            None => {
                let omega = o
                    .omega
                    .ok_or_else(|| CliError::ConfigInvalid("no config file given and --omega missing".into()))?;
                Self {
                    params: ModelParams64::real(omega, 0.0, 0.0),
                    sweep: None,
                    outputs: None,
                    oracle: OracleOverrides::default(),
                }
            }
        };
        cfg.apply(o)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        let p = &mut self.params;
        set(&mut p.omega, o.omega);
        set(&mut p.omega1.re, o.omega1_re);
        set(&mut p.omega1.im, o.omega1_im);
        set(&mut p.omega2.re, o.omega2_re);
        set(&mut p.omega2.im, o.omega2_im);
        set(&mut p.lambda0.re, o.lambda_re);
        set(&mut p.lambda0.im, o.lambda_im);
        if o.start.is_some() || o.stop.is_some() || o.points.is_some() {
            let sweep = match self.sweep {
                Some(s) => Sweep {
                    kind: s.kind,
                    start: o.start.unwrap_or(s.start),
                    stop: o.stop.unwrap_or(s.stop),
                    points: o.points.unwrap_or(s.points),
                },
                None => match (o.start, o.stop, o.points) {
                    (Some(start), Some(stop), Some(points)) => Sweep { kind: None, start, stop, points },
                    _ => {
                        return Err(CliError::ConfigInvalid(
                            "config has no sweep; --start, --stop and --points are all required".into(),
                        ))
                    }
                },
            };
            self.sweep = Some(sweep);
        }
        Ok(())
    }

    pub fn validated_params(&self) -> Result<ValidatedParams64> {
        Ok(self.params.validate()?)
    }

    /// The sweep, checked for the given kind.
    pub fn sweep_for(&self, kind: SweepKind) -> Result<Sweep> {
        let s = self.sweep.ok_or_else(|| CliError::ConfigInvalid("no sweep given".into()))?;
        if let Some(k) = s.kind {
            if k != kind {
                return Err(CliError::ConfigInvalid(format!("sweep kind {k:?} does not fit this command")));
            }
        }
        if !(s.start.is_finite() && s.stop.is_finite() && s.start < s.stop) {
            return Err(CliError::ConfigInvalid(format!("need start < stop, got {} and {}", s.start, s.stop)));
        }
        if !(2..=MAX_POINTS).contains(&s.points) {
            return Err(CliError::ConfigInvalid(format!("points must lie in 2..={MAX_POINTS}, got {}", s.points)));
        }
        if kind == SweepKind::Temperature && s.start <= 0.0 {
            return Err(CliError::ConfigInvalid(format!("temperatures must be positive, got start = {}", s.start)));
        }
        Ok(Sweep { kind: Some(kind), ..s })
    }

    pub fn truncation(&self) -> Result<TruncationConfig> {
        let d = TruncationConfig::default();
        let t = TruncationConfig {
            n_start: self.oracle.n_start.unwrap_or(d.n_start),
            n_max: self.oracle.n_max.unwrap_or(d.n_max),
            rel_tol: self.oracle.rel_tol.unwrap_or(d.rel_tol),
        };
        t.validate().map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
        Ok(t)
    }

    /// Selected columns of `available`, in the documented order.
    pub fn columns<'a>(&self, leading: &'a str, available: &[&'a str]) -> Result<Vec<&'a str>> {
        let Some(sel) = &self.outputs else {
            return Ok(std::iter::once(leading).chain(available.iter().copied()).collect());
        };
        if let Some(bad) = sel.iter().find(|s| s.as_str() != leading && !available.contains(&s.as_str())) {
            return Err(CliError::ConfigInvalid(format!("unknown output column {bad:?}")));
        }
        let mut cols = vec![leading];
        cols.extend(available.iter().copied().filter(|c| sel.iter().any(|s| s == c)));
        Ok(cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const FILE: &str =
        r#"{"params":{"omega":1.0,"omega1":[0.1,0.0]},"sweep":{"kind":"time","start":0.0,"stop":2.0,"points":5}}"#;

    #[test]
    fn parses_and_overrides() {
        let mut cfg = RunConfig::from_json(FILE).unwrap();
        assert_eq!(cfg.params.omega2, Complex64::new(0.0, 0.0));
        cfg.apply(&Overrides { omega1_im: Some(0.05), points: Some(9), ..Default::default() }).unwrap();
        assert_eq!(cfg.params.omega1, Complex64::new(0.1, 0.05));
        let s = cfg.sweep_for(SweepKind::Time).unwrap();
        assert_eq!(s.points, 9);
        assert_eq!(s.grid(), vec![0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]);
    }

    #[test]
    fn rejects_bad_sweeps() {
        let cfg = RunConfig::from_json(FILE).unwrap();
        assert!(cfg.sweep_for(SweepKind::Temperature).is_err());
        let mut c = cfg.clone();
        c.apply(&Overrides { start: Some(3.0), ..Default::default() }).unwrap();
        assert!(c.sweep_for(SweepKind::Time).is_err());
        let mut c = cfg.clone();
        c.apply(&Overrides { points: Some(1), ..Default::default() }).unwrap();
        assert!(c.sweep_for(SweepKind::Time).is_err());
        let mut c = cfg;
        c.apply(&Overrides { points: Some(MAX_POINTS + 1), ..Default::default() }).unwrap();
        assert!(c.sweep_for(SweepKind::Time).is_err());
    }

    #[test]
    fn rejects_unknown_fields_and_columns() {
        assert!(RunConfig::from_json(r#"{"params":{"omega":1.0,"omega1":[0,0]},"seed":3}"#).is_err());
        let mut cfg = RunConfig::from_json(FILE).unwrap();
        cfg.outputs = Some(vec!["D1".into(), "bogus".into()]);
        assert!(cfg.columns("t", &["D1"]).is_err());
        cfg.outputs = Some(vec!["nonclassical".into(), "D1".into()]);
        assert_eq!(cfg.columns("t", &["D1", "nonclassical"]).unwrap(), vec!["t", "D1", "nonclassical"]);
    }

    #[test]
    fn flags_alone_need_omega() {
        assert!(RunConfig::load(None, &Overrides::default()).is_err());
        let cfg = RunConfig::load(None, &Overrides { omega: Some(2.0), ..Default::default() }).unwrap();
        assert_eq!(cfg.params.omega, 2.0);
    }

    #[test]
    fn truncation_overrides() {
        let mut cfg = RunConfig::from_json(FILE).unwrap();
        cfg.oracle.n_max = Some(128);
        assert_eq!(cfg.truncation().unwrap().n_max, 128);
        cfg.oracle.n_start = Some(256);
        assert!(cfg.truncation().is_err());
    }
}
