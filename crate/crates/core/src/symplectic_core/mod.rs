//! Symplectic structures of the cotangent bundle `S`, the tangent bundle `R`
//! and the Whitney sum `T`, together with their moment maps, observables,
//! Hamiltonian vector fields and Poisson brackets.
//!
//! Pairings of a form with a dual form are realised as `inner(a, *alpha)`.

mod moment;
mod observables;

pub use moment::{
    check_moment_condition, fundamental_vf_r, fundamental_vf_s, moment_r, moment_s, moment_t,
    moment_t_density_form, momentum_r, momentum_s, momentum_t, PhaseSpace,
};
pub use observables::{
    builtin_observables, check_jacobi, check_variational_derivative, hamiltonian_r,
    hamiltonian_vf_t, poisson_t, poisson_t_dual, Observable, ObservableKind,
};

use nalgebra::DMatrix;
use rand::Rng;

use crate::gauge_fields::{cov_d, cov_d_star, PhasePointR, PhasePointS, PhasePointT};
use crate::lattice_complex::{Cochain, CubicalComplex};

/// Tangent vector `(a, x)` to `R`, both of degree 1.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentR {
    pub a: Cochain,
    pub x: Cochain,
}

/// Tangent vector `(a, alpha)` to `S`, of degrees 1 and 2.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentS {
    pub a: Cochain,
    pub alpha: Cochain,
}

/// Tangent vector `(a, e, beta)` to `T`, of degrees 1, 1 and 2.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentT {
    pub a: Cochain,
    pub e: Cochain,
    pub beta: Cochain,
}

impl TangentR {
    pub fn zero(cx: &CubicalComplex, n: usize) -> Self {
        TangentR { a: Cochain::zeros(cx, 1, n), x: Cochain::zeros(cx, 1, n) }
    }

    pub fn random(cx: &CubicalComplex, n: usize, rng: &mut impl Rng) -> Self {
        TangentR { a: Cochain::random(cx, 1, n, 1.0, rng), x: Cochain::random(cx, 1, n, 1.0, rng) }
    }
}

impl TangentS {
    pub fn zero(cx: &CubicalComplex, n: usize) -> Self {
        TangentS { a: Cochain::zeros(cx, 1, n), alpha: Cochain::zeros(cx, 2, n) }
    }

    pub fn random(cx: &CubicalComplex, n: usize, rng: &mut impl Rng) -> Self {
        TangentS { a: Cochain::random(cx, 1, n, 1.0, rng), alpha: Cochain::random(cx, 2, n, 1.0, rng) }
    }
}

impl TangentT {
    pub fn zero(cx: &CubicalComplex, n: usize) -> Self {
        TangentT {
            a: Cochain::zeros(cx, 1, n),
            e: Cochain::zeros(cx, 1, n),
            beta: Cochain::zeros(cx, 2, n),
        }
    }

    pub fn random(cx: &CubicalComplex, n: usize, rng: &mut impl Rng) -> Self {
        TangentT {
            a: Cochain::random(cx, 1, n, 1.0, rng),
            e: Cochain::random(cx, 1, n, 1.0, rng),
            beta: Cochain::random(cx, 2, n, 1.0, rng),
        }
    }

    /// Fiber-only direction `(0, e, beta)`.
    pub fn vertical(e: Cochain, beta: Cochain) -> Self {
        let a = Cochain::zeros_like(&e);
        TangentT { a, e, beta }
    }

    pub fn scaled(&self, s: f64) -> Self {
        TangentT { a: self.a.scaled(s), e: self.e.scaled(s), beta: self.beta.scaled(s) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        TangentT { a: self.a.sub(&o.a), e: self.e.sub(&o.e), beta: self.beta.sub(&o.beta) }
    }

    /// Euclidean size `sqrt(|a|^2 + |e|^2 + |beta|^2)`.
    pub fn norm(&self, cx: &CubicalComplex) -> f64 {
        (cx.norm(&self.a).powi(2) + cx.norm(&self.e).powi(2) + cx.norm(&self.beta).powi(2)).sqrt()
    }

    /// `pt + s v`.
    pub fn displace(&self, pt: &PhasePointT, s: f64) -> PhasePointT {
        PhasePointT {
            a: pt.a.shifted(s, &self.a),
            e: pt.e.add(&self.e.scaled(s)),
            b: pt.b.add(&self.beta.scaled(s)),
        }
    }
}

/// Canonical 1-form on `S`: `theta(a, alpha) = (a, *lambda)`.
pub fn theta_s(cx: &CubicalComplex, pt: &PhasePointS, v: &TangentS) -> f64 {
    cx.inner(&v.a, &cx.hodge(&pt.lambda)).expect("degree 1")
}

/// `omega(v1, v2) = (a2, *alpha1) - (a1, *alpha2)`, the exterior derivative
/// of [`theta_s`].
pub fn omega_s(cx: &CubicalComplex, _pt: &PhasePointS, v1: &TangentS, v2: &TangentS) -> f64 {
    cx.inner(&v2.a, &cx.hodge(&v1.alpha)).expect("degree 1")
        - cx.inner(&v1.a, &cx.hodge(&v2.alpha)).expect("degree 1")
}

/// `sigma((a, x), (b, y)) = (b, x) - (a, y)`.
pub fn sigma_r(cx: &CubicalComplex, _pt: &PhasePointR, v1: &TangentR, v2: &TangentR) -> f64 {
    cx.inner(&v2.a, &v1.x).expect("degree 1") - cx.inner(&v1.a, &v2.x).expect("degree 1")
}

/// `Theta(a, e, beta) = (e, d_A* B)`.
pub fn theta_t(cx: &CubicalComplex, pt: &PhasePointT, v: &TangentT) -> f64 {
    let w = cov_d_star(cx, &pt.a, &pt.b).expect("degree 2");
    cx.inner(&v.e, &w).expect("degree 1")
}

/// The covector `Omega(v, .)`, returned in the shape of a tangent vector so
/// that `Omega(v, w) = <covector, w>` componentwise.
pub fn omega_t_covector(cx: &CubicalComplex, pt: &PhasePointT, v: &TangentT) -> TangentT {
    // Omega(v1, v2) = ([a1 u e2], B) - ([a2 u e1], B) + (e2, d_A* beta1) - (e1, d_A* beta2)
    let a_part = cx.bracket_cup_adjoint(&v.e, &pt.b).expect("degree 1").neg();
    let mut e_part = cx.bracket_cup_adjoint(&v.a, &pt.b).expect("degree 1");
    e_part.axpy(1.0, &cov_d_star(cx, &pt.a, &v.beta).expect("degree 2"));
    let beta_part = cov_d(cx, &pt.a, &v.e).expect("degree 1").neg();
    TangentT { a: a_part, e: e_part, beta: beta_part }
}

/// Componentwise inner product of two tangent-shaped triples.
pub fn pair_t(cx: &CubicalComplex, u: &TangentT, v: &TangentT) -> f64 {
    cx.inner(&u.a, &v.a).expect("degree 1")
        + cx.inner(&u.e, &v.e).expect("degree 1")
        + cx.inner(&u.beta, &v.beta).expect("degree 2")
}

/// `Omega = d Theta`:
/// `([a1 u e2], B) - ([a2 u e1], B) + (e2, d_A* beta1) - (e1, d_A* beta2)`.
pub fn omega_t(cx: &CubicalComplex, pt: &PhasePointT, v1: &TangentT, v2: &TangentT) -> f64 {
    pair_t(cx, &omega_t_covector(cx, pt, v1), v2)
}

/// Central-difference exterior derivative of `Theta` on constant vector
/// fields: `v1[Theta(v2)] - v2[Theta(v1)]`.
pub fn fd_d_theta(cx: &CubicalComplex, pt: &PhasePointT, v1: &TangentT, v2: &TangentT, h: f64) -> f64 {
    let deriv = |dir: &TangentT, arg: &TangentT| {
        (theta_t(cx, &dir.displace(pt, h), arg) - theta_t(cx, &dir.displace(pt, -h), arg)) / (2.0 * h)
    };
    deriv(v1, v2) - deriv(v2, v1)
}

/// Cyclic exterior-derivative formula applied to `Omega` on constant vector
/// fields: `v1[Omega(v2,v3)] - v2[Omega(v1,v3)] + v3[Omega(v1,v2)]`, by
/// central differences.
pub fn fd_closedness(
    cx: &CubicalComplex,
    pt: &PhasePointT,
    v: [&TangentT; 3],
    h: f64,
) -> f64 {
    let deriv = |dir: &TangentT, x: &TangentT, y: &TangentT| {
        (omega_t(cx, &dir.displace(pt, h), x, y) - omega_t(cx, &dir.displace(pt, -h), x, y)) / (2.0 * h)
    };
    deriv(v[0], v[1], v[2]) - deriv(v[1], v[0], v[2]) + deriv(v[2], v[0], v[1])
}

/// Singular-value summary of the assembled matrix of `Omega` at a point.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub dimension: usize,
    pub rank: usize,
    /// Singular values in decreasing order.
    pub singular_values: Vec<f64>,
}

/// Assembles `Omega` in the orthonormal real basis of the tangent space and
/// reports its numerical rank at relative threshold `1e-10`.
pub fn omega_t_rank(cx: &CubicalComplex, pt: &PhasePointT) -> RankReport {
    let n = pt.a.rank();
    let m = n * n - 1;
    let d1 = cx.n_cells(1) * m;
    let d2 = cx.n_cells(2) * m;
    let dim = 2 * d1 + d2;
    let unit = |i: usize| {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        TangentT {
            a: Cochain::from_real(cx, 1, n, &coords[..d1]),
            e: Cochain::from_real(cx, 1, n, &coords[d1..2 * d1]),
            beta: Cochain::from_real(cx, 2, n, &coords[2 * d1..]),
        }
    };
    let w = cx.volume_element();
    let mut mat = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let cov = omega_t_covector(cx, pt, &unit(i));
        let row: Vec<f64> = [cov.a.to_real(), cov.e.to_real(), cov.beta.to_real()].concat();
        for (j, x) in row.into_iter().enumerate() {
            mat[(i, j)] = w * x;
        }
    }
    let mut sv: Vec<f64> = mat.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > 1e-10 * top).count();
    RankReport { dimension: dim, rank, singular_values: sv }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::gauge_fields::Connection;

    fn setup(seed: u64) -> (CubicalComplex, ChaCha8Rng) {
        (CubicalComplex::build_torus(2, 2, 3, 0.8).unwrap(), ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn omega_s_nondegeneracy_witness() {
        let (cx, mut r) = setup(1);
        let pt = PhasePointS { a: Connection::random(&cx, 2, 1.0, &mut r), lambda: Cochain::random(&cx, 2, 2, 1.0, &mut r) };
        let v = TangentS::random(&cx, 2, &mut r);
        let w = TangentS { a: cx.hodge(&v.alpha), alpha: cx.hodge(&v.a) };
        let lhs = omega_s(&cx, &pt, &v, &w);
        let rhs = cx.inner(&v.alpha, &v.alpha).unwrap() - cx.inner(&v.a, &v.a).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
        assert_eq!(omega_s(&cx, &pt, &v, &v), 0.0);
    }

    #[test]
    fn forms_are_antisymmetric() {
        let (cx, mut r) = setup(2);
        let pt = PhasePointT::random(&cx, 2, 1.0, &mut r);
        let (v1, v2) = (TangentT::random(&cx, 2, &mut r), TangentT::random(&cx, 2, &mut r));
        let s = omega_t(&cx, &pt, &v1, &v2) + omega_t(&cx, &pt, &v2, &v1);
        assert!(s.abs() < 1e-12);
        let ptr = PhasePointR { a: pt.a.clone(), p: pt.e.clone() };
        let (w1, w2) = (TangentR::random(&cx, 2, &mut r), TangentR::random(&cx, 2, &mut r));
        assert!((sigma_r(&cx, &ptr, &w1, &w2) + sigma_r(&cx, &ptr, &w2, &w1)).abs() < 1e-12);
    }

    #[test]
    fn sigma_is_hodge_transport_of_omega() {
        let (cx, mut r) = setup(3);
        let a = Connection::random(&cx, 2, 1.0, &mut r);
        let ptr = PhasePointR { a: a.clone(), p: Cochain::random(&cx, 1, 2, 1.0, &mut r) };
        let pts = PhasePointS { a, lambda: cx.hodge(&ptr.p) };
        let (v1, v2) = (TangentR::random(&cx, 2, &mut r), TangentR::random(&cx, 2, &mut r));
        let s1 = TangentS { a: v1.a.clone(), alpha: cx.hodge(&v1.x) };
        let s2 = TangentS { a: v2.a.clone(), alpha: cx.hodge(&v2.x) };
        let d = sigma_r(&cx, &ptr, &v1, &v2) - omega_s(&cx, &pts, &s1, &s2);
        assert!(d.abs() < 1e-12);
    }

    #[test]
    fn omega_t_is_d_theta() {
        let (cx, mut r) = setup(4);
        let pt = PhasePointT::random(&cx, 2, 1.0, &mut r);
        let (v1, v2) = (TangentT::random(&cx, 2, &mut r), TangentT::random(&cx, 2, &mut r));
        let fd = fd_d_theta(&cx, &pt, &v1, &v2, 1e-4);
        assert!((fd - omega_t(&cx, &pt, &v1, &v2)).abs() < 1e-6);
    }

    #[test]
    fn omega_t_trivial_cases() {
        let (cx, mut r) = setup(5);
        let mut pt = PhasePointT::random(&cx, 2, 1.0, &mut r);
        pt.b = Cochain::zeros(&cx, 2, 2);
        let mut v1 = TangentT::random(&cx, 2, &mut r);
        let mut v2 = TangentT::random(&cx, 2, &mut r);
        v1.beta = Cochain::zeros(&cx, 2, 2);
        v2.beta = Cochain::zeros(&cx, 2, 2);
        assert_eq!(omega_t(&cx, &pt, &v1, &v2), 0.0);
    }
}
