//! Covariant Hodge Laplacian, its Green operator, and the orthogonal
//! decompositions it induces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gauge_fields::{cov_d, cov_d_star, Connection};
use crate::lattice_complex::{Cochain, CubicalComplex};

/// Default relative residual for conjugate gradients.
pub const DEFAULT_CG_TOL: f64 = 1e-10;
/// Default floor below which the degree-0 Laplacian is deemed singular.
pub const IRREDUCIBILITY_FLOOR: f64 = 1e-8;

/// Outcome of a conjugate-gradient solve.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenSolveReport {
    pub iterations: usize,
    pub residual: f64,
    pub tolerance: f64,
}

/// Solver settings. `maxit = None` means ten times the problem dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CgSettings {
    pub tol: f64,
    pub maxit: Option<usize>,
}

impl Default for CgSettings {
    fn default() -> Self {
        CgSettings { tol: DEFAULT_CG_TOL, maxit: None }
    }
}

/// `d_A* d_A c + d_A d_A* c`, omitting terms that leave the degree range.
pub fn laplacian(cx: &CubicalComplex, a: &Connection, c: &Cochain) -> Cochain {
    let k = c.degree();
    let mut out = c.zeros_like();
    if k < 3 {
        let dc = cov_d(cx, a, c).expect("k < 3");
        out.axpy(1.0, &cov_d_star(cx, a, &dc).expect("degree >= 1"));
    }
    if k > 0 {
        let sc = cov_d_star(cx, a, c).expect("k > 0");
        out.axpy(1.0, &cov_d(cx, a, &sc).expect("degree < 3"));
    }
    out
}

/// Real dimension of the su(n)-valued cochain space of degree `k`.
pub fn dimension(cx: &CubicalComplex, k: usize, n: usize) -> usize {
    cx.n_cells(k) * (n * n - 1)
}

fn cg(
    cx: &CubicalComplex,
    op: impl Fn(&Cochain) -> Cochain,
    rhs: &Cochain,
    settings: CgSettings,
) -> Result<(Cochain, GreenSolveReport)> {
    let maxit = settings.maxit.unwrap_or(10 * dimension(cx, rhs.degree(), rhs.rank()));
    let tol = settings.tol;
    let bnorm = cx.norm(rhs);
    let mut x = rhs.zeros_like();
    let mut report = GreenSolveReport { iterations: 0, residual: 0.0, tolerance: tol };
    if bnorm == 0.0 {
        return Ok((x, report));
    }
    // Rounding can leave trace or Hermitian parts, on which the Laplacian
    // is singular; keep the iteration inside su(n).
    let mut r = rhs.clone();
    r.project_su();
    let mut p = r.clone();
    let mut rr = cx.inner(&r, &r)?;
    // Spectral scale of the Laplacian, used to recognise a numerical kernel.
    let h2 = cx.spacing() * cx.spacing();
    let kernel_floor = 1e-13 / h2;
    loop {
        report.residual = rr.sqrt() / bnorm;
        if report.residual <= tol {
            return Ok((x, report));
        }
        if report.iterations >= maxit {
            return Err(Error::ConvergenceError(report));
        }
        let lp = op(&p);
        let plp = cx.inner(&p, &lp)?;
        let pp = cx.inner(&p, &p)?;
        if plp <= kernel_floor * pp {
            return Err(Error::IrreducibilityError(report));
        }
        let alpha = rr / plp;
        x.axpy(alpha, &p);
        r.axpy(-alpha, &lp);
        r.project_su();
        let rr_new = cx.inner(&r, &r)?;
        let beta = rr_new / rr;
        rr = rr_new;
        let mut next = r.clone();
        next.axpy(beta, &p);
        p = next;
        report.iterations += 1;
    }
}

/// Green operator: solves `laplacian(A, x) = rhs` by conjugate gradients.
pub fn green(
    cx: &CubicalComplex,
    a: &Connection,
    rhs: &Cochain,
    settings: CgSettings,
) -> Result<(Cochain, GreenSolveReport)> {
    cg(cx, |c| laplacian(cx, a, c), rhs, settings)
}

/// Estimate of the smallest eigenvalue of the degree-0 Laplacian by shifted
/// inverse iteration.
pub fn irreducibility_check(cx: &CubicalComplex, a: &Connection) -> f64 {
    let n = a.rank();
    let shift = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v = Cochain::random(cx, 0, n, 1.0, &mut rng);
    v.scale_mut(1.0 / cx.norm(&v));
    let settings = CgSettings { tol: 1e-12, maxit: Some(50 * dimension(cx, 0, n)) };
    let mut estimate = f64::INFINITY;
    for _ in 0..60 {
        let solved = cg(
            cx,
            |c| {
                let mut out = laplacian(cx, a, c);
                out.axpy(shift, c);
                out
            },
            &v,
            settings,
        );
        let w = match solved {
            Ok((w, _)) => w,
            Err(_) => break,
        };
        let nw = cx.norm(&w);
        if !(nw.is_finite() && nw > 0.0) {
            break;
        }
        v = w.scaled(1.0 / nw);
        v.project_su();
        let rq = cx.inner(&v, &laplacian(cx, a, &v)).expect("same degree");
        let done = (estimate - rq).abs() <= 1e-12 * rq.abs().max(1e-300);
        estimate = rq;
        if done {
            break;
        }
    }
    estimate.max(0.0)
}

/// Splits a 1-cochain as `x = d_A xi + y` with `d_A* y = 0`.
pub fn decompose_tangent(
    cx: &CubicalComplex,
    a: &Connection,
    x: &Cochain,
    settings: CgSettings,
) -> Result<(Cochain, Cochain)> {
    let div = cov_d_star(cx, a, x)?;
    let (xi, _) = green(cx, a, &div, settings)?;
    let y = x.sub(&cov_d(cx, a, &xi)?);
    Ok((xi, y))
}

/// Splits a 2-cochain as `u = d_A* lambda + w` with `d_A w = 0`, where
/// `lambda = G_A d_A u` is the degree-3 potential.
pub fn decompose_cotangent(
    cx: &CubicalComplex,
    a: &Connection,
    u: &Cochain,
    settings: CgSettings,
) -> Result<(Cochain, Cochain)> {
    let du = cov_d(cx, a, u)?;
    let (lambda, _) = green(cx, a, &du, settings)?;
    let w = u.sub(&cov_d_star(cx, a, &lambda)?);
    Ok((lambda, w))
}
