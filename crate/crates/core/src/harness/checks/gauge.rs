use crate::error::Result;
use crate::gauge_fields::{cov_d, cov_d_star, curvature, gauge_flow, Connection, PhasePointT};
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lattice_complex::Cochain;

pub fn c03_adjointness(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 20);
    let a = Connection::random(&cx, cfg.rank, cfg.amplitude, &mut rng);
    let mut out = Vec::new();
    for k in 0..3 {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let x = Cochain::random(&cx, k, cfg.rank, 1.0, &mut rng);
            let y = Cochain::random(&cx, k + 1, cfg.rank, 1.0, &mut rng);
            let lhs = cx.inner(&cov_d(&cx, &a, &x)?, &y)?;
            let rhs = cx.inner(&x, &cov_d_star(&cx, &a, &y)?)?;
            worst = worst.max((lhs - rhs).abs() / (cx.norm(&x) * cx.norm(&y)));
        }
        out.push(Measurement::at_most(format!("|(d_A a, b) - (a, d_A* b)| / |a||b|, k = {k}"), worst, 1e-12));
    }
    Ok(out)
}

pub fn dd(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 21);
    let a = Connection::random(&cx, cfg.rank, cfg.amplitude, &mut rng);
    let f = curvature(&cx, &a);
    let mut out = Vec::new();
    for k in 0..2 {
        let c = Cochain::random(&cx, k, cfg.rank, 1.0, &mut rng);
        let lhs = cov_d(&cx, &a, &cov_d(&cx, &a, &c)?)?;
        let rhs = cx.bracket_cup(&f, &c)?;
        let rel = cx.norm(&lhs.sub(&rhs)) / cx.norm(&rhs);
        let label = format!("|d_A d_A c - [F u c]| / |[F u c]|, k = {k}");
        out.push(Measurement::report(label, rel));
    }
    Ok(out)
}

pub fn affine(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 22);
    let a = Connection::random(&cx, cfg.rank, cfg.amplitude, &mut rng);
    let da = Cochain::random(&cx, 1, cfg.rank, 1.0, &mut rng);
    let f0 = curvature(&cx, &a);
    let mut worst: f64 = 0.0;
    for t in [1e-2, 0.3, 1.0] {
        let ft = curvature(&cx, &a.shifted(t, &da));
        let mut r = ft.sub(&f0);
        r.axpy(-t, &cov_d(&cx, &a, &da)?);
        r.axpy(-0.5 * t * t, &cx.bracket_cup(&da, &da)?);
        let scale = cx.norm(&ft) + cx.norm(&f0) + t * cx.norm(&cov_d(&cx, &a, &da)?);
        worst = worst.max(cx.norm(&r) / scale);
    }
    Ok(vec![Measurement::at_most(
        "F(A + t a) - F(A) - t d_A a - t^2/2 [a u a], relative",
        worst,
        1e-12,
    )])
}

pub fn flow_energy(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 23);
    let n = cfg.rank;
    let pt = PhasePointT {
        a: Connection::zero(&cx, n),
        e: Cochain::random(&cx, 1, n, cfg.amplitude, &mut rng),
        b: Cochain::random(&cx, 2, n, cfg.amplitude, &mut rng),
    };
    let xi = Cochain::random(&cx, 0, n, cfg.amplitude, &mut rng);
    let energy = |p: &PhasePointT| cx.inner(&p.e, &p.e).unwrap() + cx.inner(&p.b, &p.b).unwrap();
    let e0 = energy(&pt);
    let end = gauge_flow(&cx, &xi, 1.0, &pt, 200);
    Ok(vec![Measurement::at_most("relative change of |E|^2 + |B|^2 over unit time", (energy(&end) - e0).abs() / e0, 1e-10)])
}
