//! Batch evaluation over a grid of space-time points.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::sync::OnceLock;

use mch_asy::painleve2::PiiCache;
use mch_asy::phase::{classify, point_from_s, point_from_window, scaled_s, RegionConstants, RegionTag, SpaceTimePoint};
use mch_asy::region1::{u_region1, AsymptoticValue};
use mch_asy::region2::{u_region2, u_region2_with, Region2Constants};
use mch_asy::region3::{u_region3, u_region3_complex};
use mch_asy::scattering::{eval_r, ScatteringData};
use mch_asy::Error;

use crate::config::{Grid, RunConfig};
use crate::CliError;

/// Which subcommand drives the scan; it fixes how `scan.s` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Region1,
    Region2,
    Region3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub x: f64,
    pub t: f64,
    pub region: String,
    pub s: Option<f64>,
    pub u: Option<f64>,
    pub err_order: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub config_hash: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub meta: Meta,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

/// SHA-256 of the canonical serialization, so formatting changes in the
/// source file do not change the hash.
pub fn config_hash(config: &RunConfig) -> String {
    Sha256::digest(config.to_toml().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

enum Axis {
    Xi,
    Window,
    Scaled(RegionTag),
}

/// The ordered list of scan points: times outer, grid values inner.
pub fn scan_points(config: &RunConfig, mode: Mode) -> Result<Vec<SpaceTimePoint>, CliError> {
    let scan = &config.scan;
    let (grid, axis) = match (&scan.xi, &scan.window, mode) {
        (Some(g), _, _) => (g.clone(), Axis::Xi),
        (_, Some(g), _) => (g.clone(), Axis::Window),
        (_, _, Mode::Region3) if scan.s.is_some() => {
            return Err(CliError::Config("scan.s: region3 scans take scan.window or scan.xi".into()));
        }
        (_, _, Mode::Region3) => (Grid::List(vec![3.0 * 3f64.cbrt()]), Axis::Window),
        (_, _, m) => {
            let tag = if m == Mode::Region1 { RegionTag::I } else { RegionTag::II };
            let g = scan.s.clone().unwrap_or(Grid::Range { start: -0.25, stop: 0.25, step: 0.125 });
            (g, Axis::Scaled(tag))
        }
    };
    let values = grid.values();
    let mut out = Vec::with_capacity(scan.t.len() * values.len());
    for &t in &scan.t {
        for &v in &values {
            let point = match axis {
                Axis::Xi => SpaceTimePoint::from_xi(v, t),
                Axis::Window => point_from_window(v, t),
                Axis::Scaled(tag) => point_from_s(v, t, tag),
            };
            out.push(point.map_err(|e| CliError::Config(format!("scan: {e}")))?);
        }
    }
    Ok(out)
}

/// Shared state of one scan. Region II constants are built on first use.
pub struct Context<'a> {
    pub data: &'a ScatteringData,
    pub constants: RegionConstants,
    pub p: f64,
    pub q: f64,
    pub cache: PiiCache,
    region2: OnceLock<Result<Region2Constants, Error>>,
}

impl<'a> Context<'a> {
    pub fn new(config: &RunConfig, data: &'a ScatteringData) -> Self {
        Self {
            data,
            constants: config.region_constants(),
            p: config.shock.p,
            q: config.shock.q,
            cache: PiiCache::new(config.tolerances.pii_tol),
            region2: OnceLock::new(),
        }
    }

    fn region2(&self, point: &SpaceTimePoint) -> Result<AsymptoticValue, Error> {
        if eval_r(self.data, 2.0 + 3f64.sqrt())?.norm() == 0.0 {
            return u_region2(point, self.data, &self.cache, &self.constants);
        }
        let consts = self.region2.get_or_init(|| Region2Constants::new(self.data)).as_ref().map_err(Clone::clone)?;
        u_region2_with(point, consts, &self.cache, &self.constants)
    }

    pub fn evaluate(&self, point: &SpaceTimePoint) -> Row {
        let tag = classify(point, &self.constants);
        let s = match tag {
            RegionTag::I | RegionTag::II => scaled_s(point, tag).ok(),
            _ => None,
        };
        let result = match tag {
            RegionTag::I => Some(u_region1(point, self.data, &self.cache, &self.constants)),
            RegionTag::II => Some(self.region2(point)),
            RegionTag::III => Some(u_region3(point, self.data, self.p, self.q, &self.constants)),
            RegionTag::Outside => None,
        };
        let (u, err_order, error) = match result {
            Some(Ok(v)) => (Some(v.u), Some(v.error_order), None),
            Some(Err(e)) => (None, None, Some(e.to_string())),
            None => (None, None, None),
        };
        Row { x: point.x, t: point.t, region: tag.label().to_string(), s, u, err_order, error }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MCH_ASY_THREADS") {
        let n: usize =
            v.trim().parse().map_err(|_| CliError::Config(format!("MCH_ASY_THREADS: not a count: {v:?}")))?;
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

/// Classifies and evaluates every scan point. Per-point failures land in
/// the `error` column; rows keep the order of [`scan_points`].
pub fn run_scan(config: &RunConfig, data: &ScatteringData, mode: Mode) -> Result<Table, CliError> {
    let points = scan_points(config, mode)?;
    let ctx = Context::new(config, data);
    let rows = thread_pool()?.install(|| points.par_iter().map(|p| ctx.evaluate(p)).collect());
    Ok(Table { meta: Meta { config_hash: config_hash(config), version: env!("CARGO_PKG_VERSION").to_string() }, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PqComparison {
    pub point: SpaceTimePoint,
    pub first: Result<Complex64, String>,
    pub second: Result<Complex64, String>,
}

impl PqComparison {
    pub fn difference(&self) -> Option<f64> {
        match (&self.first, &self.second) {
            (Ok(a), Ok(b)) => Some((a - b).norm()),
            _ => None,
        }
    }
}

/// The pair compared against `(p, q)`: `(3, 2)`, or `(1, 1)` when `(p, q)` is already `(3, 2)`.
pub fn pq_alternate(p: f64, q: f64) -> (f64, f64) {
    if (p, q) == (3.0, 2.0) {
        (1.0, 1.0)
    } else {
        (3.0, 2.0)
    }
}

/// Evaluates the complex shock-region expression at `(p, q)` and at the
/// alternate pair for every region III scan point.
pub fn pq_invariance(config: &RunConfig, data: &ScatteringData, mode: Mode) -> Result<Vec<PqComparison>, CliError> {
    let points = scan_points(config, mode)?;
    let constants = config.region_constants();
    let (p, q) = (config.shock.p, config.shock.q);
    let (p2, q2) = pq_alternate(p, q);
    let eval = |pt: &SpaceTimePoint, p: f64, q: f64| {
        u_region3_complex(pt, data, p, q, &constants).map(|e| e.u).map_err(|e| e.to_string())
    };
    let selected: Vec<_> = points.into_iter().filter(|pt| classify(pt, &constants) == RegionTag::III).collect();
    Ok(thread_pool()?.install(|| {
        selected
            .par_iter()
            .map(|pt| PqComparison { point: *pt, first: eval(pt, p, q), second: eval(pt, p2, q2) })
            .collect()
    }))
}
