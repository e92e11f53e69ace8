//! Connections, phase points, and the connection-dependent operators built on
//! the bracket cup product.

use std::ops::Deref;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::symplectic_core::TangentT;

/// A degree-1 su(n) cochain used as the base point of covariant operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection(Cochain);

impl Connection {
    pub fn new(a: Cochain) -> Result<Self> {
        if a.degree() != 1 {
            return Err(Error::DegreeError(format!("a connection has degree 1, got {}", a.degree())));
        }
        if !a.in_algebra() {
            return Err(Error::NotInAlgebra { defect: a.su_defect() });
        }
        Ok(Connection(a))
    }

    pub fn zero(cx: &CubicalComplex, n: usize) -> Self {
        Connection(Cochain::zeros(cx, 1, n))
    }

    pub fn random(cx: &CubicalComplex, n: usize, amplitude: f64, rng: &mut impl Rng) -> Self {
        Connection(Cochain::random(cx, 1, n, amplitude, rng))
    }

    pub fn as_cochain(&self) -> &Cochain {
        &self.0
    }

    pub fn into_cochain(self) -> Cochain {
        self.0
    }

    /// `A + s a`.
    pub fn shifted(&self, s: f64, a: &Cochain) -> Self {
        let mut c = self.0.clone();
        c.axpy(s, a);
        Connection(c)
    }
}

impl Deref for Connection {
    type Target = Cochain;

    fn deref(&self) -> &Cochain {
        &self.0
    }
}

/// Point `(A, E, B)` of the Whitney sum.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePointT {
    pub a: Connection,
    pub e: Cochain,
    pub b: Cochain,
}

/// Point `(A, p)` of the tangent bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePointR {
    pub a: Connection,
    pub p: Cochain,
}

/// Point `(A, lambda)` of the cotangent bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePointS {
    pub a: Connection,
    pub lambda: Cochain,
}

impl PhasePointT {
    pub fn new(a: Connection, e: Cochain, b: Cochain) -> Result<Self> {
        if e.degree() != 1 || b.degree() != 2 {
            return Err(Error::DegreeError(format!(
                "(E, B) must have degrees (1, 2), got ({}, {})",
                e.degree(),
                b.degree()
            )));
        }
        Ok(PhasePointT { a, e, b })
    }

    pub fn random(cx: &CubicalComplex, n: usize, amplitude: f64, rng: &mut impl Rng) -> Self {
        let a = Connection::random(cx, n, amplitude, rng);
        let e = Cochain::random(cx, 1, n, amplitude, rng);
        let b = Cochain::random(cx, 2, n, amplitude, rng);
        PhasePointT { a, e, b }
    }
}

impl PhasePointR {
    pub fn new(a: Connection, p: Cochain) -> Result<Self> {
        if p.degree() != 1 {
            return Err(Error::DegreeError(format!("p must have degree 1, got {}", p.degree())));
        }
        Ok(PhasePointR { a, p })
    }
}

impl PhasePointS {
    pub fn new(a: Connection, lambda: Cochain) -> Result<Self> {
        if lambda.degree() != 2 {
            return Err(Error::DegreeError(format!("lambda must have degree 2, got {}", lambda.degree())));
        }
        Ok(PhasePointS { a, lambda })
    }
}

/// `F_A = dA + 1/2 [A u A]`.
pub fn curvature(cx: &CubicalComplex, a: &Connection) -> Cochain {
    let mut f = cx.coboundary(a).expect("degree 1");
    f.axpy(0.5, &cx.bracket_cup(a, a).expect("degree 2"));
    f
}

/// `d_A c = dc + [A u c]`.
pub fn cov_d(cx: &CubicalComplex, a: &Connection, c: &Cochain) -> Result<Cochain> {
    let mut out = cx.coboundary(c)?;
    out.axpy(1.0, &cx.bracket_cup(a, c)?);
    Ok(out)
}

/// Exact adjoint of [`cov_d`] with respect to the cochain inner product.
pub fn cov_d_star(cx: &CubicalComplex, a: &Connection, c: &Cochain) -> Result<Cochain> {
    let mut out = cx.coboundary_adjoint(c)?;
    out.axpy(1.0, &cx.bracket_cup_adjoint(a, c)?);
    Ok(out)
}

/// Infinitesimal gauge action `(d_A xi, [E u xi], [B u xi])`.
pub fn fundamental_vf(cx: &CubicalComplex, xi: &Cochain, pt: &PhasePointT) -> TangentT {
    assert_eq!(xi.degree(), 0, "gauge parameter must be a 0-cochain");
    TangentT {
        a: cov_d(cx, &pt.a, xi).expect("degree 0"),
        e: cx.bracket_cup(&pt.e, xi).expect("degree 1"),
        beta: cx.bracket_cup(&pt.b, xi).expect("degree 2"),
    }
}

/// Time-`t` flow of the infinitesimal gauge action generated by `xi`, by the
/// classical Runge-Kutta method with `steps` steps.
pub fn gauge_flow(cx: &CubicalComplex, xi: &Cochain, t: f64, pt: &PhasePointT, steps: usize) -> PhasePointT {
    assert!(steps >= 1, "gauge_flow needs at least one step");
    let dt = t / steps as f64;
    let advance = |p: &PhasePointT, k: &TangentT, s: f64| PhasePointT {
        a: p.a.shifted(s, &k.a),
        e: p.e.add(&k.e.scaled(s)),
        b: p.b.add(&k.beta.scaled(s)),
    };
    let mut cur = pt.clone();
    for _ in 0..steps {
        let k1 = fundamental_vf(cx, xi, &cur);
        let k2 = fundamental_vf(cx, xi, &advance(&cur, &k1, 0.5 * dt));
        let k3 = fundamental_vf(cx, xi, &advance(&cur, &k2, 0.5 * dt));
        let k4 = fundamental_vf(cx, xi, &advance(&cur, &k3, dt));
        let mut next = cur.clone();
        for (k, w) in [(&k1, 1.0), (&k2, 2.0), (&k3, 2.0), (&k4, 1.0)] {
            let s = dt * w / 6.0;
            next.a = next.a.shifted(s, &k.a);
            next.e.axpy(s, &k.e);
            next.b.axpy(s, &k.beta);
        }
        cur = next;
    }
    cur
}

/// `(||d_A B||, ||d_A* E||)`; the point lies on the Yang-Mills field when
/// both vanish.
pub fn gauss_residuals(cx: &CubicalComplex, pt: &PhasePointT) -> (f64, f64) {
    let db = cov_d(cx, &pt.a, &pt.b).expect("degree 2");
    let de = cov_d_star(cx, &pt.a, &pt.e).expect("degree 1");
    (cx.norm(&db), cx.norm(&de))
}
