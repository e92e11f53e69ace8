use std::f64::consts::PI;

use crate::clebsch_reduction::project_r0;
use crate::dynamics::{energy_t, evolve_r, evolve_t, maxwell_image_check, Convention};
use crate::error::Result;
use crate::gauge_fields::{cov_d, cov_d_star, curvature, Connection, PhasePointR, PhasePointT};
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::lie_algebra::{orthonormal_basis, AlgElement};

/// A smooth nonabelian connection on a torus of side `len`: every component
/// mixes Fourier modes along all three axes and all basis directions.
pub fn smooth_connection(cx: &CubicalComplex, n: usize, amplitude: f64, len: f64) -> Connection {
    let basis = orthonormal_basis(n);
    let k = 2.0 * PI / len;
    let c = Cochain::from_fn(cx, 1, n, |v, mask| {
        let x = cx.position(v);
        let mu = mask.trailing_zeros() as usize;
        let mut out = AlgElement::zero(n);
        for (i, t) in basis.iter().enumerate() {
            let phase = 0.37 * (i + 1) as f64 + 1.1 * mu as f64;
            let f = (k * x[(mu + 1) % 3] + phase).cos() * (1.0 + 0.4 * (k * x[(mu + 2) % 3] - phase).sin())
                + 0.3 * (k * x[mu] + 2.0 * phase).cos();
            out = out.add(&t.scale(amplitude * f / (i + 1) as f64));
        }
        out
    });
    Connection::new(c).expect("su(n)-valued by construction")
}

fn distance_r(cx: &CubicalComplex, x: &PhasePointR, y: &PhasePointR) -> f64 {
    cx.norm(&x.a.as_cochain().sub(y.a.as_cochain())) + cx.norm(&x.p.sub(&y.p))
}

pub fn c11_leapfrog(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = CubicalComplex::build_torus(4, 4, 4, cfg.h)?;
    let mut rng = check_rng(cfg, 60);
    let pt = PhasePointR {
        a: Connection::random(&cx, 2, cfg.amplitude, &mut rng),
        p: Cochain::random(&cx, 1, 2, cfg.amplitude, &mut rng),
    };
    let dt = 1e-3;
    let (_, coarse) = evolve_r(&cx, &pt, dt, 10_000, 10)?;
    let (_, fine) = evolve_r(&cx, &pt, dt / 2.0, 20_000, 20)?;
    let drift = coarse.relative_energy_drift();
    let ratio = drift / fine.relative_energy_drift();

    let (fwd, _) = evolve_r(&cx, &pt, dt, 1000, 0)?;
    let (back, _) = evolve_r(&cx, &fwd, -dt, 1000, 0)?;
    let scale = cx.norm(pt.a.as_cochain()) + cx.norm(&pt.p);
    Ok(vec![
        Measurement::at_most("max |H(t) - H(0)| / H(0), 10^4 steps, dt = 1e-3, 4^3", drift, 1e-4),
        Measurement::within("drift(dt) / drift(dt / 2)", ratio, 3.5, 4.5),
        Measurement::at_most("reversibility after 10^3 steps, relative", distance_r(&cx, &back, &pt) / scale, 1e-10),
    ])
}

pub fn c12_midpoint(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let n = cfg.rank;
    let mut rng = check_rng(cfg, 61);
    let a = Connection::zero(&cx, n);
    let e = cx.coboundary_adjoint(&Cochain::random(&cx, 2, n, cfg.amplitude, &mut rng))?;
    let b = cx.coboundary(&Cochain::random(&cx, 1, n, cfg.amplitude, &mut rng))?;
    let pt = PhasePointT { a, e, b };
    let (_, rec) = evolve_t(&cx, &pt, cfg.dt, 1000, Convention::Intro, 1)?;
    let gauss_b = rec.rows.iter().map(|r| r.gauss_b).fold(0.0, f64::max);
    let gauss_e = rec.rows.iter().map(|r| r.gauss_e).fold(0.0, f64::max);
    let h0 = rec.rows[0].energy;
    let per_step = rec.rows.windows(2).map(|w| (w[1].energy - w[0].energy).abs() / h0).fold(0.0, f64::max);
    Ok(vec![
        Measurement::at_most("max |d B| over 10^3 midpoint steps", gauss_b, 1e-10),
        Measurement::at_most("max |d* E| over 10^3 midpoint steps", gauss_e, 1e-10),
        Measurement::at_most("max per-step relative energy change", per_step, 1e-10),
    ])
}

fn momentum_drift(cx: &CubicalComplex, pt: &PhasePointR, dt: f64, steps: usize) -> Result<(f64, f64)> {
    let initial = cx.norm(&cov_d_star(cx, &pt.a, &pt.p)?);
    let mut cur = pt.clone();
    let mut worst = initial;
    for _ in 0..steps {
        cur = evolve_r(cx, &cur, dt, 1, 0)?.0;
        worst = worst.max(cx.norm(&cov_d_star(cx, &cur.a, &cur.p)?));
    }
    Ok((initial, worst))
}

pub fn moment(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = CubicalComplex::build_torus(2, 2, 2, cfg.h)?;
    let s = cfg.cg();
    let mut rng = check_rng(cfg, 62);
    let a = Connection::new(Cochain::random_abelian(&cx, 1, 2, cfg.amplitude, &mut rng))?;
    let p = Cochain::random_abelian(&cx, 1, 2, cfg.amplitude, &mut rng);
    let pt = project_r0(&cx, &a, &p, s)?.point;
    let steps = 1000;
    let (initial, worst) = momentum_drift(&cx, &pt, cfg.dt, steps)?;
    let floor = f64::EPSILON * cx.norm(&pt.p) * (steps as f64).sqrt();
    let baseline = initial.max(floor);

    let smooth = |size: usize, h: f64| -> Result<(CubicalComplex, PhasePointR)> {
        let cx = CubicalComplex::build_torus(size, size, size, h)?;
        let len = size as f64 * h;
        let a = smooth_connection(&cx, 2, 1.0, len);
        let p = cov_d_star(&cx, &a, &curvature(&cx, &a))?.scaled(0.1);
        Ok((cx, PhasePointR { a, p }))
    };
    let (c2, p2) = smooth(2, 1.0)?;
    let growth = |cx: &CubicalComplex, pt: &PhasePointR, dt: f64, steps: usize| -> Result<f64> {
        let (i, w) = momentum_drift(cx, pt, dt, steps)?;
        Ok(w - i)
    };
    let coarse = growth(&c2, &p2, 2e-2, 50)?;
    let fine_dt = growth(&c2, &p2, 1e-2, 100)?;
    let (c4, p4) = smooth(4, 0.5)?;
    let fine_h = growth(&c4, &p4, 2e-2, 50)?;
    Ok(vec![
        Measurement::report("abelian 2^3: initial |d_A* p|", initial),
        Measurement::at_most(
            "abelian 2^3: max |d_A* p| / max(initial, eps |p| sqrt(steps)), 10^3 steps",
            worst / baseline,
            10.0,
        ),
        Measurement::report("nonabelian: growth of |d_A* p| ratio under dt halving", coarse / fine_dt),
        Measurement::report("nonabelian: growth of |d_A* p| ratio under h halving", coarse / fine_h),
    ])
}

pub fn reversibility(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let pt = PhasePointT::random(&cx, cfg.rank, cfg.amplitude, &mut check_rng(cfg, 63));
    let mut out = Vec::new();
    for conv in [Convention::Intro, Convention::Body] {
        let (fwd, _) = evolve_t(&cx, &pt, cfg.dt, 100, conv, 0)?;
        let (back, _) = evolve_t(&cx, &fwd, -cfg.dt, 100, conv, 0)?;
        let d = (cx.norm(&back.e.sub(&pt.e)) + cx.norm(&back.b.sub(&pt.b))) / (cx.norm(&pt.e) + cx.norm(&pt.b));
        out.push(Measurement::at_most(format!("Maxwell flow ({conv}) forward then back, 100 steps"), d, 1e-10));
    }
    let h0 = energy_t(&cx, &pt);
    let (end, _) = evolve_t(&cx, &pt, cfg.dt, 100, Convention::Intro, 0)?;
    out.push(Measurement::at_most("relative vortex energy change, 100 steps", (energy_t(&cx, &end) - h0).abs() / h0, 1e-10 * 100.0));
    Ok(out)
}

pub fn maxwell_image(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 64);
    let pt = PhasePointR {
        a: Connection::random(&cx, cfg.rank, cfg.amplitude, &mut rng),
        p: Cochain::random(&cx, 1, cfg.rank, cfg.amplitude, &mut rng),
    };
    let r = maxwell_image_check(&cx, &pt, 1e-3, 50)?;
    Ok(vec![
        Measurement::report("max |E' - d_A* B|", r.e_equation),
        Measurement::report("max |B' + d_A E|", r.b_equation),
        Measurement::report("max change of |d_A* E|", r.gauss_drift),
    ])
}

pub fn c14_bianchi(_cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let len = 2.0;
    let defect = |size: usize| -> Result<f64> {
        let cx = CubicalComplex::build_torus(size, size, size, len / size as f64)?;
        let a = smooth_connection(&cx, 2, 1.0, len);
        Ok(cx.norm(&cov_d(&cx, &a, &curvature(&cx, &a))?))
    };
    let coarse = defect(2)?;
    let fine = defect(4)?;
    let finer = defect(8)?;
    Ok(vec![
        Measurement::report("|d_A F_A| at 2^3, h = 1", coarse),
        Measurement::report("|d_A F_A| at 4^3, h = 1/2", fine),
        Measurement::report("|d_A F_A| at 8^3, h = 1/4", finer),
        Measurement::report("reduction factor 4^3 -> 8^3", fine / finer),
        Measurement::at_least("reduction factor 2^3 -> 4^3", coarse / fine, 1.8),
    ])
}
