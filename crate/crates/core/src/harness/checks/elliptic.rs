use crate::elliptic::{decompose_cotangent, decompose_tangent, green, irreducibility_check, IRREDUCIBILITY_FLOOR};
use crate::error::Result;
use crate::gauge_fields::{cov_d, cov_d_star, Connection};
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lattice_complex::{Cochain, CubicalComplex};

pub fn c04_green(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 30);
    let n = cfg.rank;
    let s = cfg.cg();
    let a = Connection::random(&cx, n, cfg.amplitude, &mut rng);
    let g = |c: &Cochain| green(&cx, &a, c, s).map(|r| r.0);
    let d = |c: &Cochain| cov_d(&cx, &a, c);
    let ds = |c: &Cochain| cov_d_star(&cx, &a, c);
    let mut out = Vec::new();

    let u = Cochain::random(&cx, 2, n, 1.0, &mut rng);
    let (_, beta) = decompose_cotangent(&cx, &a, &u, s)?;
    let r = d(&ds(&g(&beta)?)?)?.sub(&beta);
    out.push(Measurement::at_most("|d_A d_A* G beta - beta| / |beta|, d_A beta = 0", cx.norm(&r) / cx.norm(&beta), 1e-7));
    let x = Cochain::random(&cx, 1, n, 1.0, &mut rng);
    let (_, e) = decompose_tangent(&cx, &a, &x, s)?;
    let r = ds(&d(&g(&e)?)?)?.sub(&e);
    out.push(Measurement::at_most("|d_A* d_A G e - e| / |e|, d_A* e = 0", cx.norm(&r) / cx.norm(&e), 1e-7));

    for k in 0..4 {
        let x = Cochain::random(&cx, k, n, 1.0, &mut rng);
        let y = Cochain::random(&cx, k, n, 1.0, &mut rng);
        let gx = g(&x)?;
        let gy = g(&y)?;
        let defect = (cx.inner(&gx, &y)? - cx.inner(&x, &gy)?).abs() / (cx.norm(&gx) * cx.norm(&y));
        out.push(Measurement::at_most(format!("|(G a, b) - (a, G b)| / |G a||b|, k = {k}"), defect, 1e-8));
    }

    for k in 0..3 {
        let c = Cochain::random(&cx, k, n, 1.0, &mut rng);
        let r = d(&g(&c)?)?.sub(&g(&d(&c)?)?);
        out.push(Measurement::at_most(format!("|d_A G c - G d_A c| / |c|, k = {k}"), cx.norm(&r) / cx.norm(&c), 1e-7));
    }
    for k in 1..4 {
        let c = Cochain::random(&cx, k, n, 1.0, &mut rng);
        let r = ds(&g(&c)?)?.sub(&g(&ds(&c)?)?);
        out.push(Measurement::at_most(format!("|d_A* G c - G d_A* c| / |c|, k = {k}"), cx.norm(&r) / cx.norm(&c), 1e-7));
    }
    Ok(out)
}

pub fn irreducibility(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 31);
    let a = Connection::random(&cx, cfg.rank, cfg.amplitude, &mut rng);
    let flat = Connection::zero(&cx, cfg.rank);
    Ok(vec![
        Measurement::at_least("smallest degree-0 eigenvalue, random A", irreducibility_check(&cx, &a), IRREDUCIBILITY_FLOOR),
        Measurement::at_most("smallest degree-0 eigenvalue, A = 0", irreducibility_check(&cx, &flat), IRREDUCIBILITY_FLOOR),
    ])
}

fn orthogonality(cx: &CubicalComplex, p: &Cochain, q: &Cochain, whole: &Cochain) -> Result<f64> {
    Ok(cx.inner(p, q)?.abs() / cx.inner(whole, whole)?)
}

pub fn decompositions(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 32);
    let n = cfg.rank;
    let s = cfg.cg();
    let a = Connection::random(&cx, n, cfg.amplitude, &mut rng);
    let x = Cochain::random(&cx, 1, n, 1.0, &mut rng);
    let (xi, y) = decompose_tangent(&cx, &a, &x, s)?;
    let u = Cochain::random(&cx, 2, n, 1.0, &mut rng);
    let (lambda, w) = decompose_cotangent(&cx, &a, &u, s)?;
    Ok(vec![
        Measurement::at_most("|d_A* y| / |x| for x = d_A xi + y", cx.norm(&cov_d_star(&cx, &a, &y)?) / cx.norm(&x), 1e-8),
        Measurement::at_most("|(d_A xi, y)| / |x|^2", orthogonality(&cx, &cov_d(&cx, &a, &xi)?, &y, &x)?, 1e-8),
        Measurement::at_most("|d_A w| / |u| for u = d_A* lambda + w", cx.norm(&cov_d(&cx, &a, &w)?) / cx.norm(&u), 1e-8),
        Measurement::at_most("|(d_A* lambda, w)| / |u|^2", orthogonality(&cx, &cov_d_star(&cx, &a, &lambda)?, &w, &u)?, 1e-8),
    ])
}
