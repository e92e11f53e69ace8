//! Time integration of the Hamiltonian system on `R` and of the Maxwell flow
//! on `T`, with per-step instrumentation.

use std::fmt;
use std::str::FromStr;

use crate::clebsch_reduction::{conserved_charge, matrix_norm, phi};
use crate::elliptic::GreenSolveReport;
use crate::error::{Error, Result};
use crate::gauge_fields::{cov_d, cov_d_star, curvature, Connection, PhasePointR, PhasePointT};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::symplectic_core::hamiltonian_r;

/// Column names of a [`TrajectoryRecord`], in CSV order.
pub const CSV_HEADER: &str = "step,time,energy,gauss_e,gauss_b,charge_norm,bianchi_defect";

/// One instrumented sample of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    pub gauss_e: f64,
    pub gauss_b: f64,
    pub charge_norm: f64,
    pub bianchi_defect: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrajectoryRecord {
    pub rows: Vec<TrajectoryRow>,
}

impl TrajectoryRecord {
    /// CSV text with a header row; floats in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:e},{:e},{:e},{:e},{:e},{:e}\n",
                r.step, r.time, r.energy, r.gauss_e, r.gauss_b, r.charge_norm, r.bianchi_defect
            ));
        }
        s
    }

    /// `max |energy - energy_0| / |energy_0|`.
    pub fn relative_energy_drift(&self) -> f64 {
        let Some(first) = self.rows.first() else { return 0.0 };
        let e0 = first.energy;
        let drift = self.rows.iter().map(|r| (r.energy - e0).abs()).fold(0.0, f64::max);
        if e0 == 0.0 {
            drift
        } else {
            drift / e0.abs()
        }
    }
}

/// Orientation of the Maxwell flow on `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    /// `E' = -d_A* B`, `B' = d_A E`.
    #[default]
    Intro,
    /// `E' = d_A* B`, `B' = -d_A E`.
    Body,
}

impl Convention {
    fn sign(self) -> f64 {
        match self {
            Convention::Intro => 1.0,
            Convention::Body => -1.0,
        }
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "intro" => Ok(Convention::Intro),
            "body" => Ok(Convention::Body),
            other => Err(format!("unknown convention `{other}` (expected intro or body)")),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Intro => "intro",
            Convention::Body => "body",
        })
    }
}

/// Force `-d_A* F_A`, the negative gradient of `1/2 |F_A|^2`.
pub fn force_r(cx: &CubicalComplex, a: &Connection) -> Cochain {
    cov_d_star(cx, a, &curvature(cx, a)).expect("degree 2").neg()
}

fn row_r(cx: &CubicalComplex, step: usize, time: f64, pt: &PhasePointR) -> TrajectoryRow {
    let img = phi(cx, &pt.a, &pt.p);
    let bianchi = cx.norm(&cov_d(cx, &pt.a, &img.b).expect("degree 2"));
    TrajectoryRow {
        step,
        time,
        energy: hamiltonian_r(cx, pt),
        gauss_e: cx.norm(&cov_d_star(cx, &pt.a, &pt.p).expect("degree 1")),
        gauss_b: bianchi,
        charge_norm: matrix_norm(&conserved_charge(cx, &img)),
        bianchi_defect: bianchi,
    }
}

/// Vortex energy `1/2 (|d_A E|^2 + |d_A* B|^2)`.
pub fn energy_t(cx: &CubicalComplex, pt: &PhasePointT) -> f64 {
    let de = cov_d(cx, &pt.a, &pt.e).expect("degree 1");
    let sb = cov_d_star(cx, &pt.a, &pt.b).expect("degree 2");
    0.5 * (cx.inner(&de, &de).expect("degree 2") + cx.inner(&sb, &sb).expect("degree 1"))
}

fn row_t(cx: &CubicalComplex, step: usize, time: f64, pt: &PhasePointT, bianchi: f64) -> TrajectoryRow {
    TrajectoryRow {
        step,
        time,
        energy: energy_t(cx, pt),
        gauss_e: cx.norm(&cov_d_star(cx, &pt.a, &pt.e).expect("degree 1")),
        gauss_b: cx.norm(&cov_d(cx, &pt.a, &pt.b).expect("degree 2")),
        charge_norm: matrix_norm(&conserved_charge(cx, pt)),
        bianchi_defect: bianchi,
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if dt.is_finite() && dt != 0.0 {
        Ok(())
    } else {
        Err(Error::Validation { key: "dt".into(), msg: format!("time step {dt} must be finite and nonzero") })
    }
}

/// Stormer-Verlet for `A' = p`, `p' = -d_A* F_A`. A row is recorded every
/// `record_every` steps (and at the start and end); `0` records only the
/// endpoints. A negative `dt` integrates backwards.
pub fn evolve_r(
    cx: &CubicalComplex,
    pt0: &PhasePointR,
    dt: f64,
    steps: usize,
    record_every: usize,
) -> Result<(PhasePointR, TrajectoryRecord)> {
    check_dt(dt)?;
    let mut a = pt0.a.clone();
    let mut p = pt0.p.clone();
    let mut rec = TrajectoryRecord::default();
    rec.rows.push(row_r(cx, 0, 0.0, pt0));
    let mut force = force_r(cx, &a);
    for step in 1..=steps {
        p.axpy(0.5 * dt, &force);
        a = a.shifted(dt, &p);
        force = force_r(cx, &a);
        p.axpy(0.5 * dt, &force);
        if !(a.is_finite() && p.is_finite()) {
            return Err(Error::NumericalBlowup { step });
        }
        if step == steps || (record_every > 0 && step % record_every == 0) {
            let pt = PhasePointR { a: a.clone(), p: p.clone() };
            rec.rows.push(row_r(cx, step, step as f64 * dt, &pt));
        }
    }
    Ok((PhasePointR { a, p }, rec))
}

/// Right-hand side `(E', B')` of the Maxwell flow at fixed `A`.
pub fn maxwell_rhs(cx: &CubicalComplex, a: &Connection, e: &Cochain, b: &Cochain, convention: Convention) -> (Cochain, Cochain) {
    let s = convention.sign();
    let de = cov_d_star(cx, a, b).expect("degree 2").scaled(-s);
    let db = cov_d(cx, a, e).expect("degree 1").scaled(s);
    (de, db)
}

/// Fixed-point tolerance and iteration cap of the implicit midpoint solve.
pub const MIDPOINT_TOL: f64 = 1e-14;
pub const MIDPOINT_MAXIT: usize = 200;

/// Implicit midpoint rule for the linear Maxwell flow at frozen `A`.
pub fn evolve_t(
    cx: &CubicalComplex,
    pt0: &PhasePointT,
    dt: f64,
    steps: usize,
    convention: Convention,
    record_every: usize,
) -> Result<(PhasePointT, TrajectoryRecord)> {
    check_dt(dt)?;
    let a = &pt0.a;
    let bianchi = cx.norm(&cov_d(cx, a, &curvature(cx, a)).expect("degree 2"));
    let mut e = pt0.e.clone();
    let mut b = pt0.b.clone();
    let mut rec = TrajectoryRecord::default();
    rec.rows.push(row_t(cx, 0, 0.0, pt0, bianchi));
    for step in 1..=steps {
        let (mut e1, mut b1) = (e.clone(), b.clone());
        let scale = 1.0 + cx.norm(&e) + cx.norm(&b);
        let mut report = GreenSolveReport { iterations: 0, residual: f64::INFINITY, tolerance: MIDPOINT_TOL };
        while report.residual > MIDPOINT_TOL {
            if report.iterations >= MIDPOINT_MAXIT {
                return Err(Error::ConvergenceError(report));
            }
            let em = e.add(&e1).scaled(0.5);
            let bm = b.add(&b1).scaled(0.5);
            let (fe, fb) = maxwell_rhs(cx, a, &em, &bm, convention);
            let mut e2 = e.clone();
            e2.axpy(dt, &fe);
            let mut b2 = b.clone();
            b2.axpy(dt, &fb);
            report.residual = (cx.norm(&e2.sub(&e1)) + cx.norm(&b2.sub(&b1))) / scale;
            report.iterations += 1;
            e1 = e2;
            b1 = b2;
            if !report.residual.is_finite() {
                return Err(Error::NumericalBlowup { step });
            }
        }
        e = e1;
        b = b1;
        if step == steps || (record_every > 0 && step % record_every == 0) {
            let pt = PhasePointT { a: a.clone(), e: e.clone(), b: b.clone() };
            rec.rows.push(row_t(cx, step, step as f64 * dt, &pt, bianchi));
        }
    }
    Ok((PhasePointT { a: a.clone(), e, b }, rec))
}

/// Residuals of the Maxwell equations along the image of an `R`-trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellImageResiduals {
    /// `max_t |E' - d_A* B|` with `E'` by central differences.
    pub e_equation: f64,
    /// `max_t |B' + d_A E|`.
    pub b_equation: f64,
    /// `max_t |d_A* E| - |d_A* E(0)|`.
    pub gauss_drift: f64,
}

/// Integrates `R` from `pt0` and checks that `(E, B) = phi(A, p)` satisfies
/// `E' = d_A* B` and `B' = -d_A E` up to time discretisation.
pub fn maxwell_image_check(cx: &CubicalComplex, pt0: &PhasePointR, dt: f64, steps: usize) -> Result<MaxwellImageResiduals> {
    check_dt(dt)?;
    let mut states = vec![pt0.clone()];
    let mut cur = pt0.clone();
    for _ in 0..steps {
        cur = evolve_r(cx, &cur, dt, 1, 0)?.0;
        states.push(cur.clone());
    }
    let images: Vec<PhasePointT> = states.iter().map(|s| phi(cx, &s.a, &s.p)).collect();
    let gauss0 = cx.norm(&cov_d_star(cx, &pt0.a, &images[0].e)?);
    let mut out = MaxwellImageResiduals { e_equation: 0.0, b_equation: 0.0, gauss_drift: 0.0 };
    for i in 1..steps {
        let (prev, here, next) = (&images[i - 1], &images[i], &images[i + 1]);
        let edot = next.e.sub(&prev.e).scaled(0.5 / dt);
        let bdot = next.b.sub(&prev.b).scaled(0.5 / dt);
        let re = edot.sub(&cov_d_star(cx, &here.a, &here.b)?);
        let mut rb = bdot;
        rb.axpy(1.0, &cov_d(cx, &here.a, &here.e)?);
        out.e_equation = out.e_equation.max(cx.norm(&re));
        out.b_equation = out.b_equation.max(cx.norm(&rb));
        let g = cx.norm(&cov_d_star(cx, &here.a, &here.e)?);
        out.gauss_drift = out.gauss_drift.max((g - gauss0).abs());
    }
    Ok(out)
}
