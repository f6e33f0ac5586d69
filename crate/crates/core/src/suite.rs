//! Seeded verification suites.
//!
//! Instance `i` of a suite with seed `s` is drawn from its own ChaCha20
//! stream keyed by `(s, i)`, so every instance can be regenerated on its
//! own and results do not depend on how work is scheduled.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gon::{flatness_report, verify_minkowski_second, verify_sharp_2d, verify_transference};
use crate::math::{format_rat, Rat, RatVec};
use crate::polytope::{Polytope, SymmetricBody};
use crate::postulation::{
    box_volume_closed_form, box_volume_triangulated, check_vol_bound, flag_h0, BoxSpec, FlagSpec,
};
use crate::report::TheoremReport;
use crate::toric::{
    eps_bracket_general, exact_eps_family, verify_m2m, verify_width_sandwich, Family, MomentPolytope,
};

/// Attempts per instance before giving up on a full-dimensional draw.
pub const RETRY_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteKind {
    Minkowski,
    Transference,
    Sharp2d,
    Flatness,
    M2m,
    Postulation,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 6] = [
        SuiteKind::Minkowski,
        SuiteKind::Transference,
        SuiteKind::Sharp2d,
        SuiteKind::Flatness,
        SuiteKind::M2m,
        SuiteKind::Postulation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Minkowski => "minkowski",
            SuiteKind::Transference => "transference",
            SuiteKind::Sharp2d => "sharp2d",
            SuiteKind::Flatness => "flatness",
            SuiteKind::M2m => "m2m",
            SuiteKind::Postulation => "postulation",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: SuiteKind,
    pub seed: u64,
    pub count: usize,
    pub dim: usize,
    pub coord_bound: i64,
}

impl SuiteConfig {
    pub fn new(suite: SuiteKind, seed: u64, count: usize, dim: usize, coord_bound: i64) -> Result<Self> {
        if count == 0 {
            return Err(Error::Parse("count must be positive".into()));
        }
        if !(2..=4).contains(&dim) {
            return Err(Error::Parse(format!("dim must be between 2 and 4, got {dim}")));
        }
        if suite == SuiteKind::Sharp2d && dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: dim });
        }
        if coord_bound <= 0 {
            return Err(Error::Parse("bound must be positive".into()));
        }
        Ok(Self { suite, seed, count, dim, coord_bound })
    }
}

/// ChaCha20 stream for one instance.
///
/// The 32-byte key is `seed` (little-endian u64), then `index`
/// (little-endian u64), then sixteen zero bytes.
pub struct InstanceRng(ChaCha20Rng);

impl InstanceRng {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&index.to_le_bytes());
        Self(ChaCha20Rng::from_seed(key))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `[lo, hi]`: draw `x` and accept it when it falls
    /// below the largest multiple of the range size, then take `lo + x mod size`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let size = (hi as i128 - lo as i128 + 1) as u128;
        if size > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        let size = size as u64;
        let zone = u64::MAX - (u64::MAX % size + 1) % size;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return (lo as i128 + (x % size) as i128) as i64;
            }
        }
    }

    fn point(&mut self, d: usize, bound: i64) -> RatVec {
        (0..d).map(|_| Rat::from_integer(BigInt::from(self.int_in(-bound, bound)))).collect()
    }

    /// Hull of `d+1 … 2d+2` random points of `[−bound, bound]^d`, redrawn
    /// until full-dimensional.
    pub fn lattice_polytope(&mut self, d: usize, bound: i64) -> Result<Polytope> {
        for _ in 0..RETRY_CAP {
            let n = self.int_in(d as i64 + 1, 2 * d as i64 + 2) as usize;
            let pts: Vec<RatVec> = (0..n).map(|_| self.point(d, bound)).collect();
            let p = Polytope::convex_hull(&pts, d)?;
            if p.is_full_dimensional() {
                return Ok(p);
            }
        }
        Err(Error::GenerationFailed(RETRY_CAP))
    }

    /// Hull of `±x` for `d … d+2` random points, redrawn until
    /// full-dimensional.
    pub fn symmetric_body(&mut self, d: usize, bound: i64) -> Result<SymmetricBody> {
        for _ in 0..RETRY_CAP {
            let n = self.int_in(d as i64, d as i64 + 2) as usize;
            let pts: Vec<RatVec> = (0..n).map(|_| self.point(d, bound)).collect();
            match SymmetricBody::symmetrized(&pts, d) {
                Ok(k) => return Ok(k),
                Err(Error::DimensionDeficient { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::GenerationFailed(RETRY_CAP))
    }

    /// `d` rationals `n/m` with `0 ≤ n ≤ 3·bound` and `1 ≤ m ≤ 4`.
    pub fn box_params(&mut self, d: usize, bound: i64) -> Vec<Rat> {
        (0..d)
            .map(|_| {
                let n = self.int_in(0, 3 * bound);
                let m = self.int_in(1, 4);
                Rat::new(BigInt::from(n), BigInt::from(m))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Polytope(Polytope),
    Body(SymmetricBody),
    /// A lattice polytope for the bracket checks and an exactly solvable family.
    Toric { polytope: MomentPolytope, family: Family },
    Postulation { boxspec: BoxSpec, flag: FlagSpec },
}

/// Deterministic instance `index` of the suite.
pub fn generate_instance(cfg: &SuiteConfig, index: usize) -> Result<Instance> {
    let mut rng = InstanceRng::new(cfg.seed, index as u64);
    let (d, b) = (cfg.dim, cfg.coord_bound);
    Ok(match cfg.suite {
        SuiteKind::Minkowski | SuiteKind::Transference | SuiteKind::Flatness => {
            Instance::Polytope(rng.lattice_polytope(d, b)?)
        }
        SuiteKind::Sharp2d => Instance::Body(rng.symmetric_body(d, b)?),
        SuiteKind::M2m => {
            let polytope = MomentPolytope::new(rng.lattice_polytope(d, b)?)?;
            let family = if rng.int_in(0, 1) == 0 {
                Family::ProjectiveSpace { d, w: BigInt::from(rng.int_in(1, b)) }
            } else {
                Family::ProductOfP1 { weights: (0..d).map(|_| BigInt::from(rng.int_in(1, b))).collect() }
            };
            Instance::Toric { polytope, family }
        }
        SuiteKind::Postulation => {
            let boxspec = BoxSpec::new(rng.box_params(d, b))?;
            let p = (0..d).map(|_| rng.int_in(0, 4) as u64).collect();
            let flag = FlagSpec::new(d, p, rng.int_in(0, 10))?;
            Instance::Postulation { boxspec, flag }
        }
    })
}

/// Reports for one instance plus named statistics to track extremes of.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub index: usize,
    pub reports: Vec<TheoremReport>,
    /// Internal consistency checks that are not theorem reports.
    pub checks: Vec<(&'static str, bool)>,
    pub stats: Vec<(&'static str, Rat)>,
}

impl Outcome {
    pub fn holds(&self) -> bool {
        self.reports.iter().all(|r| r.holds()) && self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn stat(r: &TheoremReport, key: &'static str) -> Option<(&'static str, Rat)> {
    r.rat(key).map(|v| (key, v.clone()))
}

/// Runs the checks of the suite on one instance.
pub fn run_instance(cfg: &SuiteConfig, index: usize) -> Result<Outcome> {
    let mut out = Outcome { index, reports: Vec::new(), checks: Vec::new(), stats: Vec::new() };
    match generate_instance(cfg, index)? {
        Instance::Polytope(p) => match cfg.suite {
            SuiteKind::Minkowski => {
                let r = verify_minkowski_second(&p)?;
                out.stats.extend(stat(&r, "product"));
                out.reports.push(r);
            }
            SuiteKind::Transference => {
                let r = verify_transference(&p.difference_body()?);
                if let Some(ps) = r.rats("products") {
                    out.stats.push(("product", ps.iter().max().expect("d ≥ 1").clone()));
                    out.stats.push(("product", ps.iter().min().expect("d ≥ 1").clone()));
                }
                out.reports.push(r);
            }
            _ => {
                let r = flatness_report(&p)?;
                out.stats.extend(stat(&r, "width"));
                out.reports.push(r);
            }
        },
        Instance::Body(k) => {
            let r = verify_sharp_2d(&k)?;
            out.stats.extend(stat(&r, "product"));
            out.reports.push(r);
        }
        Instance::Toric { polytope, family } => {
            let (eps, mp) = exact_eps_family(&family)?;
            let exact = verify_m2m(&mp, &eps)?;
            out.stats.extend(stat(&exact, "ratio"));
            out.reports.push(exact);
            out.reports.push(verify_m2m(&polytope, &eps_bracket_general(&polytope)?)?);
            out.reports.push(verify_width_sandwich(&polytope)?);
        }
        Instance::Postulation { boxspec, flag } => {
            let r = check_vol_bound(&boxspec);
            if let (Some(v), Some(p)) = (r.rat("volume"), r.rat("product")) {
                if !p.is_zero() {
                    out.stats.push(("volume_ratio", v / p));
                }
            }
            out.reports.push(r);
            if boxspec.dim() <= 3 {
                let mut t = boxspec.t().to_vec();
                t.sort_by(|a, b| b.cmp(a));
                let sorted = BoxSpec::new(t)?;
                out.checks.push(("closed_form", box_volume_closed_form(&sorted) == Some(box_volume_triangulated(&sorted))));
            }
            let FlagSpec { d, p, q } = &flag;
            if *q >= p[d - 1] as i64 {
                let prev = FlagSpec { q: q - 1, ..flag.clone() };
                let lower = FlagSpec::new(d - 1, p[..d - 1].to_vec(), *q)?;
                out.checks.push(("telescoping", flag_h0(&flag) - flag_h0(&prev) == flag_h0(&lower)));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Extreme {
    min: (Rat, usize),
    max: (Rat, usize),
}

/// Aggregate of a suite run; its JSON form is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub config: SuiteConfig,
    pub holds: usize,
    pub violated: usize,
    pub violations: Vec<usize>,
    extremes: BTreeMap<&'static str, Extreme>,
    reports: Vec<Value>,
}

impl SuiteSummary {
    fn new(config: SuiteConfig) -> Self {
        Self { config, holds: 0, violated: 0, violations: Vec::new(), extremes: BTreeMap::new(), reports: Vec::new() }
    }

    fn absorb(&mut self, o: &Outcome, keep_reports: bool) {
        if o.holds() {
            self.holds += 1;
        } else {
            self.violated += 1;
            self.violations.push(o.index);
        }
        for (name, v) in &o.stats {
            let e = self
                .extremes
                .entry(name)
                .or_insert_with(|| Extreme { min: (v.clone(), o.index), max: (v.clone(), o.index) });
            if *v < e.min.0 {
                e.min = (v.clone(), o.index);
            }
            if *v > e.max.0 {
                e.max = (v.clone(), o.index);
            }
        }
        if keep_reports {
            let checks: Map<String, Value> = o.checks.iter().map(|(k, ok)| (k.to_string(), Value::Bool(*ok))).collect();
            self.reports.push(json!({
                "index": o.index,
                "reports": o.reports.iter().map(TheoremReport::to_json).collect::<Vec<_>>(),
                "checks": checks,
            }));
        }
    }

    pub fn max(&self, stat: &str) -> Option<&Rat> {
        self.extremes.get(stat).map(|e| &e.max.0)
    }

    pub fn min(&self, stat: &str) -> Option<&Rat> {
        self.extremes.get(stat).map(|e| &e.min.0)
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        let mut m = Map::new();
        m.insert("suite".into(), json!(c.suite.as_str()));
        m.insert("seed".into(), json!(c.seed));
        m.insert("count".into(), json!(c.count));
        m.insert("dim".into(), json!(c.dim));
        m.insert("bound".into(), json!(c.coord_bound));
        m.insert("holds".into(), json!(self.holds));
        m.insert("violated".into(), json!(self.violated));
        m.insert("violations".into(), json!(self.violations));
        for (name, e) in &self.extremes {
            m.insert(format!("min_{name}"), json!(format_rat(&e.min.0)));
            m.insert(format!("min_{name}_index"), json!(e.min.1));
            m.insert(format!("max_{name}"), json!(format_rat(&e.max.0)));
            m.insert(format!("max_{name}_index"), json!(e.max.1));
        }
        if !self.reports.is_empty() {
            m.insert("instances".into(), Value::Array(self.reports.clone()));
        }
        Value::Object(m)
    }
}

/// Runs every instance in parallel and folds the outcomes in index order.
pub fn run_suite(cfg: &SuiteConfig, keep_reports: bool) -> Result<SuiteSummary> {
    let outcomes: Vec<Outcome> = (0..cfg.count).into_par_iter().map(|i| run_instance(cfg, i)).collect::<Result<_>>()?;
    let mut summary = SuiteSummary::new(cfg.clone());
    for o in &outcomes {
        summary.absorb(o, keep_reports);
    }
    Ok(summary)
}
