//! Run configuration: a TOML document with typed sections.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use mch_asy::numerics::QuadratureSpec;
use mch_asy::phase::RegionConstants;
use mch_asy::scattering::{check_symmetries, DiscreteSpectrum, ReflectionCoefficient, ReflectionTable, ScatteringData};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    #[default]
    Builtin,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScatteringSection {
    pub family: Family,
    pub kappa_r: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_decay: Option<f64>,
    /// Fourth-quadrant representatives written as `"0.6-0.8i"`.
    pub spectrum: Vec<String>,
}

impl Default for ScatteringSection {
    fn default() -> Self {
        Self {
            family: Family::Builtin,
            kappa_r: 0.5,
            alpha: 0.0,
            beta: 1.0,
            table_path: None,
            tail_decay: None,
            spectrum: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RegionsSection {
    pub c_i: f64,
    pub c_ii: f64,
    pub c_iii: f64,
}

impl Default for RegionsSection {
    fn default() -> Self {
        let c = RegionConstants::default();
        Self { c_i: c.c_i, c_ii: c.c_ii, c_iii: c.c_iii }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShockSection {
    pub p: f64,
    pub q: f64,
}

impl Default for ShockSection {
    fn default() -> Self {
        Self { p: 1.0, q: 1.0 }
    }
}

/// Either an explicit list of values or an inclusive arithmetic range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::List(v) => v.clone(),
            Grid::Range { start, stop, step } => {
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
        }
    }

    fn validate(&self, key: &str) -> Result<(), CliError> {
        if let Grid::Range { start, stop, step } = self {
            if !(*step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
                return Err(CliError::Config(format!("{key}: need finite start <= stop and step > 0")));
            }
            if (stop - start) / step > 1e7 {
                return Err(CliError::Config(format!("{key}: more than 1e7 grid points")));
            }
        }
        let v = self.values();
        if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config(format!("{key}: grid must be nonempty and finite")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanSection {
    pub t: Vec<f64>,
    /// Scaled Painleve variable; its meaning follows the subcommand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Grid>,
    /// Shock window parameter `(2 - xi) t^{2/3} / (log t)^{2/3}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Grid>,
}

impl Default for ScanSection {
    fn default() -> Self {
        Self { t: vec![1e6], s: None, xi: None, window: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TolerancesSection {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub tail_cutoff: f64,
    pub pii_tol: f64,
    pub symmetry_tol: f64,
}

impl Default for TolerancesSection {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        Self {
            abs_tol: q.abs_tol,
            rel_tol: q.rel_tol,
            max_subdivisions: q.max_subdivisions,
            tail_cutoff: q.tail_cutoff,
            pii_tol: mch_asy::painleve2::DEFAULT_TOL,
            symmetry_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    /// Standard output when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub scattering: ScatteringSection,
    pub regions: RegionsSection,
    pub shock: ShockSection,
    pub scan: ScanSection,
    pub tolerances: TolerancesSection,
    pub output: OutputSection,
}

fn positive(key: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{key}: must be positive, got {v}")))
    }
}

fn parse_complex(key: &str, s: &str) -> Result<Complex64, CliError> {
    s.replace(' ', "")
        .parse::<Complex64>()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse {s:?} as a complex number")))
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn region_constants(&self) -> RegionConstants {
        RegionConstants { c_i: self.regions.c_i, c_ii: self.regions.c_ii, c_iii: self.regions.c_iii }
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        let t = &self.tolerances;
        QuadratureSpec {
            abs_tol: t.abs_tol,
            rel_tol: t.rel_tol,
            max_subdivisions: t.max_subdivisions,
            tail_cutoff: t.tail_cutoff,
        }
    }

    pub fn spectrum(&self) -> Result<Vec<Complex64>, CliError> {
        self.scattering.spectrum.iter().map(|s| parse_complex("scattering.spectrum", s)).collect()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let sc = &self.scattering;
        match sc.family {
            Family::Builtin => {
                if sc.kappa_r.is_nan() || sc.kappa_r.abs() > 1.0 {
                    return Err(CliError::Config(format!(
                        "scattering.kappa_r: |kappa_r| must be <= 1, got {}",
                        sc.kappa_r
                    )));
                }
                if !sc.alpha.is_finite() {
                    return Err(CliError::Config("scattering.alpha: must be finite".into()));
                }
                if !(sc.beta > 0.0 || (sc.beta == 0.0 && sc.kappa_r == 0.0)) {
                    return Err(CliError::Config(format!("scattering.beta: must be positive, got {}", sc.beta)));
                }
            }
            Family::Table => {
                if sc.table_path.is_none() {
                    return Err(CliError::Config("scattering.table_path: required when family = \"table\"".into()));
                }
            }
        }
        if let Some(d) = sc.tail_decay {
            positive("scattering.tail_decay", d)?;
        }
        self.spectrum()?;
        self.region_constants().validate().map_err(|e| CliError::Config(format!("regions: {e}")))?;
        positive("shock.p", self.shock.p)?;
        positive("shock.q", self.shock.q)?;
        let tol = &self.tolerances;
        positive("tolerances.abs_tol", tol.abs_tol)?;
        positive("tolerances.rel_tol", tol.rel_tol)?;
        positive("tolerances.tail_cutoff", tol.tail_cutoff)?;
        positive("tolerances.pii_tol", tol.pii_tol)?;
        positive("tolerances.symmetry_tol", tol.symmetry_tol)?;
        if tol.max_subdivisions == 0 {
            return Err(CliError::Config("tolerances.max_subdivisions: must be at least 1".into()));
        }
        if self.scan.t.is_empty() {
            return Err(CliError::Config("scan.t: needs at least one time".into()));
        }
        for &t in &self.scan.t {
            if !(t > 1.0 && t.is_finite()) {
                return Err(CliError::Config(format!("scan.t: times must exceed 1, got {t}")));
            }
        }
        let grids = [("scan.s", &self.scan.s), ("scan.xi", &self.scan.xi), ("scan.window", &self.scan.window)];
        if grids.iter().filter(|g| g.1.is_some()).count() > 1 {
            return Err(CliError::Config("scan: give at most one of s, xi, window".into()));
        }
        for (key, g) in grids {
            if let Some(g) = g {
                g.validate(key)?;
            }
        }
        Ok(())
    }

    /// Builds the scattering data, reading the table relative to `base`.
    pub fn scattering_data(&self, base: &Path) -> Result<ScatteringData, CliError> {
        let sc = &self.scattering;
        let spectrum = self.spectrum()?;
        let data = match sc.family {
            Family::Builtin => ScatteringData::family(sc.kappa_r, sc.alpha, sc.beta).map(|d| d.with_spectrum(spectrum)),
            Family::Table => {
                let path = base.join(sc.table_path.as_deref().unwrap_or_default());
                let table = read_table(&path, sc.tail_decay)?;
                ScatteringData::new(ReflectionCoefficient::Tabulated(table), DiscreteSpectrum::new(spectrum))
            }
        };
        data.map(|d| d.with_quad(self.quadrature())).map_err(|e| CliError::Config(format!("scattering: {e}")))
    }
}

/// Reads a `zeta, re_r, im_r` table. A header row is skipped if present.
pub fn read_table(path: &Path, tail_decay: Option<f64>) -> Result<ReflectionTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let (mut zeta, mut values) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Config(format!("scattering.table_path: {e}")))?;
        let nums: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match nums {
            Ok(v) if v.len() == 3 => {
                zeta.push(v[0]);
                values.push(Complex64::new(v[1], v[2]));
            }
            Err(_) if i == 0 => continue,
            _ => return Err(CliError::Config(format!("scattering.table_path: bad row {}", i + 1))),
        }
    }
    ReflectionTable::new(zeta, values, tail_decay).map_err(|e| CliError::Config(format!("scattering.table_path: {e}")))
}

/// Symmetry and spectrum report for the configured data. Spectrum breaches
/// are errors; the remaining failures are returned as warnings.
pub fn symmetry_warnings(config: &RunConfig, data: &ScatteringData) -> Result<Vec<String>, CliError> {
    let report = check_symmetries(data, config.tolerances.symmetry_tol);
    if let Some(first) = report.spectrum_failures.first() {
        return Err(CliError::Config(format!("scattering.spectrum: {first}")));
    }
    Ok(report.failures())
}
