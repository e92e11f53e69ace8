use num_complex::Complex64;

use crate::error::Result;
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::lie_algebra::orthonormal_basis;

pub fn c01_exactness(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let mut rng = check_rng(cfg, 1);
    let mut out = Vec::new();
    for n in [2, 3, 4] {
        let cx = CubicalComplex::build_torus(n, n, n, cfg.h)?;
        for k in 0..2 {
            let c = Cochain::random(&cx, k, cfg.rank, 1.0, &mut rng);
            let dd = cx.coboundary(&cx.coboundary(&c)?)?;
            let scale = c.max_abs() / (cfg.h * cfg.h);
            out.push(Measurement::at_most(format!("max |d d c| / scale, {n}^3, k = {k}"), dd.max_abs() / scale, 1e-14));
        }
    }
    Ok(out)
}

pub fn c02_leibniz(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 2);
    let mut out = Vec::new();
    for j in 0..3 {
        for k in 0..3 - j {
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let a = Cochain::random(&cx, j, 2, 1.0, &mut rng);
                let b = Cochain::random(&cx, k, 2, 1.0, &mut rng);
                let lhs = cx.coboundary(&cx.cup(&a, &b)?)?;
                let mut rhs = cx.cup(&cx.coboundary(&a)?, &b)?;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                rhs.axpy(sign, &cx.cup(&a, &cx.coboundary(&b)?)?);
                let scale = a.max_abs() * b.max_abs() / cfg.h;
                worst = worst.max(lhs.sub(&rhs).max_abs() / scale);
            }
            out.push(Measurement::at_most(format!("Leibniz residual / scale, (j, k) = ({j}, {k}), 20 trials"), worst, 1e-13));
        }
    }
    Ok(out)
}

pub fn hodge(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 3);
    let mut out = Vec::new();
    for k in 0..4 {
        let a = Cochain::random(&cx, k, cfg.rank, 1.0, &mut rng);
        let b = Cochain::random(&cx, k, cfg.rank, 1.0, &mut rng);
        let twice = cx.hodge(&cx.hodge(&a));
        out.push(Measurement::at_most(format!("max |**a - a|, k = {k}"), twice.sub(&a).max_abs(), 0.0));
        let lhs = cx.inner(&cx.hodge(&a), &cx.hodge(&b))?;
        let rhs = cx.inner(&a, &b)?;
        out.push(Measurement::at_most(
            format!("isometry defect / |a||b|, k = {k}"),
            (lhs - rhs).abs() / (cx.norm(&a) * cx.norm(&b)),
            1e-12,
        ));
    }
    // A unit value on the x-edge at the origin lands on the yz-face there.
    let x = orthonormal_basis(cfg.rank)[0].clone();
    let mut e = Cochain::zeros(&cx, 1, cfg.rank);
    e.block_mut(cx.cell_index(0, 0b001)).copy_from_slice(x.as_slice());
    let f = cx.hodge(&e);
    let face = f.block(cx.cell_index(0, 0b110));
    let defect = face.iter().zip(x.as_slice()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    out.push(Measurement::at_most("orientation: edge (0,{1}) -> face (0,{2,3}) with sign +1", defect, 0.0));
    Ok(out)
}

pub fn gram(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let basis = orthonormal_basis(cfg.rank);
    let vol = cx.volume_element();
    let mut out = Vec::new();
    for k in 0..4 {
        let cells = cx.n_cells(k).min(6);
        let mut units = Vec::new();
        for cell in 0..cells {
            for x in &basis {
                let mut c = Cochain::zeros(&cx, k, cfg.rank);
                c.block_mut(cell).copy_from_slice(x.as_slice());
                units.push(c);
            }
        }
        let mut off: f64 = 0.0;
        let mut diag = f64::INFINITY;
        for (i, u) in units.iter().enumerate() {
            for (j, w) in units.iter().enumerate() {
                let g = cx.inner(u, w)?;
                if i == j {
                    diag = diag.min(g / vol);
                } else {
                    off = off.max((g / vol).abs());
                }
            }
        }
        out.push(Measurement::at_most(format!("max off-diagonal Gram entry / h^3, k = {k}"), off, 1e-14));
        out.push(Measurement::within(format!("min diagonal Gram entry / h^3, k = {k}"), diag, 1.0 - 1e-14, 1.0 + 1e-14));
    }
    Ok(out)
}

pub fn closure(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 4);
    let n = cfg.rank;
    let mut worst: f64 = 0.0;
    for j in 0..4 {
        let a = Cochain::random(&cx, j, n, 1.0, &mut rng);
        worst = worst.max(cx.hodge(&a).su_defect());
        if j < 3 {
            worst = worst.max(cx.coboundary(&a)?.su_defect());
        }
        if j > 0 {
            worst = worst.max(cx.coboundary_adjoint(&a)?.su_defect());
        }
        for k in 0..4 - j {
            let b = Cochain::random(&cx, k, n, 1.0, &mut rng);
            worst = worst.max(cx.bracket_cup(&a, &b)?.su_defect());
        }
    }
    Ok(vec![Measurement::at_most("max su(n) defect of d, d*, *, [u]", worst, 1e-12)])
}

pub fn pairing(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 5);
    let n = cfg.rank;
    let mu = Cochain::random(&cx, 3, n, 1.0, &mut rng);
    let xi = Cochain::random(&cx, 0, n, 1.0, &mut rng);
    let vol = cx.volume_element();
    let mut direct = vec![Complex64::new(0.0, 0.0); n * n];
    let mut pair = 0.0;
    for c in 0..cx.n_cells(3) {
        let m = mu.block(c);
        for (d, z) in direct.iter_mut().zip(m) {
            *d += z * vol;
        }
        let x = xi.block(c);
        for i in 0..n {
            for l in 0..n {
                pair += vol * (m[i * n + l] * x[l * n + i]).re;
            }
        }
    }
    let int = cx.integrate(&mu)?;
    let di = int.iter().zip(&direct).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    let zero = cx.integrate(&mu.zeros_like())?.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(vec![
        Measurement::at_most("integral against cell sum", di, 1e-12),
        Measurement::at_most("pairing against trace sum", (cx.pair(&mu, &xi)? - pair).abs(), 1e-12),
        Measurement::at_most("integral of zero", zero, 0.0),
        Measurement::at_most("pairing with zero", cx.pair(&mu, &xi.zeros_like())?.abs(), 0.0),
    ])
}
