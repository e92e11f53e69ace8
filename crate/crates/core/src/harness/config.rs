use std::fs;
use std::path::{Path, PathBuf};

use crate::dynamics::Convention;
use crate::elliptic::CgSettings;
use crate::error::{Error, Result};
use crate::lattice_complex::CubicalComplex;

/// Which groups of checks `verify` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteSelection {
    pub complex: bool,
    pub algebra: bool,
    pub gauge: bool,
    pub elliptic: bool,
    pub symplectic: bool,
    pub clebsch: bool,
    pub dynamics: bool,
    pub harness: bool,
}

impl Default for SuiteSelection {
    fn default() -> Self {
        SuiteSelection { complex: true, algebra: true, gauge: true, elliptic: true, symplectic: true, clebsch: true, dynamics: true, harness: true }
    }
}

/// Run parameters. Every field has a default; a config file overrides them
/// line by line.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub dims: [usize; 3],
    pub h: f64,
    pub rank: usize,
    pub seed: u64,
    pub amplitude: f64,
    pub cg_tol: f64,
    /// `0` selects ten times the problem dimension.
    pub cg_maxit: usize,
    pub fd_step: f64,
    pub dt: f64,
    pub steps: usize,
    pub record_every: usize,
    pub convention: Convention,
    pub out: PathBuf,
    pub jobs: usize,
    pub suite: SuiteSelection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dims: [2, 2, 2],
            h: 1.0,
            rank: 2,
            seed: 20240601,
            amplitude: 0.5,
            cg_tol: 1e-10,
            cg_maxit: 0,
            fd_step: 1e-4,
            dt: 1e-3,
            steps: 1000,
            record_every: 1,
            convention: Convention::Intro,
            out: PathBuf::from("out"),
            jobs: 1,
            suite: SuiteSelection::default(),
        }
    }
}

/// Documentation of every accepted key with its default, for `--help`.
pub const CONFIG_KEYS: &str = "\
config keys (plain `key = value` lines, `#` starts a comment):
  lattice.n = 2            sets nx = ny = nz
  lattice.nx/ny/nz = 2     per-axis vertex counts (>= 2)
  lattice.h = 1            lattice spacing
  algebra.rank = 2         n of su(n)
  seed = 20240601          master random seed
  field.amplitude = 0.5    scale of random fields
  cg.tol = 1e-10           conjugate-gradient relative residual
  cg.maxit = 0             iteration cap (0: ten times the dimension)
  fd.step = 1e-4           finite-difference step
  dt = 1e-3                time step
  steps = 1000             number of time steps
  record.every = 1         trajectory sampling interval
  convention = intro       Maxwell flow orientation: intro | body
  out = out                output directory
  jobs = 1                 concurrent verify checks
  suite.complex|algebra|gauge|elliptic|symplectic|clebsch|dynamics|harness = true";

fn parse_value<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| Error::Config { line, key: key.into(), msg: format!("cannot parse `{value}`: {e}") })
}

impl RunConfig {
    /// Parses `key = value` lines on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Config { line, key: content.into(), msg: "expected `key = value`".into() });
            };
            cfg.set(line, key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    fn set(&mut self, line: usize, key: &str, v: &str) -> Result<()> {
        match key {
            "lattice.n" => self.dims = [parse_value(line, key, v)?; 3],
            "lattice.nx" => self.dims[0] = parse_value(line, key, v)?,
            "lattice.ny" => self.dims[1] = parse_value(line, key, v)?,
            "lattice.nz" => self.dims[2] = parse_value(line, key, v)?,
            "lattice.h" => self.h = parse_value(line, key, v)?,
            "algebra.rank" => self.rank = parse_value(line, key, v)?,
            "seed" => self.seed = parse_value(line, key, v)?,
            "field.amplitude" => self.amplitude = parse_value(line, key, v)?,
            "cg.tol" => self.cg_tol = parse_value(line, key, v)?,
            "cg.maxit" => self.cg_maxit = parse_value(line, key, v)?,
            "fd.step" => self.fd_step = parse_value(line, key, v)?,
            "dt" => self.dt = parse_value(line, key, v)?,
            "steps" => self.steps = parse_value(line, key, v)?,
            "record.every" => self.record_every = parse_value(line, key, v)?,
            "convention" => self.convention = parse_value(line, key, v)?,
            "out" => self.out = PathBuf::from(v),
            "jobs" => self.jobs = parse_value(line, key, v)?,
            "suite.complex" => self.suite.complex = parse_value(line, key, v)?,
            "suite.algebra" => self.suite.algebra = parse_value(line, key, v)?,
            "suite.gauge" => self.suite.gauge = parse_value(line, key, v)?,
            "suite.elliptic" => self.suite.elliptic = parse_value(line, key, v)?,
            "suite.symplectic" => self.suite.symplectic = parse_value(line, key, v)?,
            "suite.clebsch" => self.suite.clebsch = parse_value(line, key, v)?,
            "suite.dynamics" => self.suite.dynamics = parse_value(line, key, v)?,
            "suite.harness" => self.suite.harness = parse_value(line, key, v)?,
            _ => return Err(Error::Config { line, key: key.into(), msg: "unknown key".into() }),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, msg: &str| Err(Error::Validation { key: key.into(), msg: msg.into() });
        if self.dims.iter().any(|&n| n < 2) {
            return bad("lattice.n", "every axis needs at least 2 vertices");
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad("lattice.h", "must be positive");
        }
        if self.rank < 2 {
            return bad("algebra.rank", "must be at least 2");
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return bad("field.amplitude", "must be non-negative");
        }
        if !(self.cg_tol > 0.0 && self.cg_tol < 1.0) {
            return bad("cg.tol", "must lie in (0, 1)");
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return bad("fd.step", "must be positive");
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt", "must be positive");
        }
        if self.jobs == 0 {
            return bad("jobs", "must be at least 1");
        }
        Ok(())
    }

    pub fn complex(&self) -> Result<CubicalComplex> {
        CubicalComplex::build_torus(self.dims[0], self.dims[1], self.dims[2], self.h)
    }

    pub fn cg(&self) -> CgSettings {
        CgSettings { tol: self.cg_tol, maxit: (self.cg_maxit > 0).then_some(self.cg_maxit) }
    }
}
