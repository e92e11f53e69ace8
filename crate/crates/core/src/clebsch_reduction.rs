//! Clebsch parametrization of the Yang-Mills field by the reduced tangent
//! bundle `R0 = {(A, p) : d_A* p = 0}`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elliptic::{decompose_tangent, green, laplacian, CgSettings, GreenSolveReport};
use crate::error::{Error, Result};
use crate::gauge_fields::{cov_d, cov_d_star, curvature, Connection, PhasePointR, PhasePointT};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::symplectic_core::{
    hamiltonian_vf_t, moment_t, omega_t, poisson_t, sigma_r, Observable, TangentR, TangentT,
};

/// A point of `R0` together with the solve that produced it.
#[derive(Clone, Debug)]
pub struct ReducedPointR0 {
    pub point: PhasePointR,
    pub report: GreenSolveReport,
}

/// `phi(A, p) = (A, -p, F_A)`.
pub fn phi(cx: &CubicalComplex, a: &Connection, p: &Cochain) -> PhasePointT {
    PhasePointT { a: a.clone(), e: p.neg(), b: curvature(cx, a) }
}

/// Orthogonal projection `p - d_A G_A d_A* p` onto `ker d_A*`.
pub fn project_r0(cx: &CubicalComplex, a: &Connection, p: &Cochain, settings: CgSettings) -> Result<ReducedPointR0> {
    let div = cov_d_star(cx, a, p)?;
    let (xi, report) = green(cx, a, &div, settings)?;
    let q = p.sub(&cov_d(cx, a, &xi)?);
    Ok(ReducedPointR0 { point: PhasePointR { a: a.clone(), p: q }, report })
}

/// Projects both components of a tangent vector onto `ker d_A*`, giving a
/// tangent vector to `R0` in the form used by the symplectomorphism checks.
pub fn project_tangent_r0(cx: &CubicalComplex, a: &Connection, v: &TangentR, settings: CgSettings) -> Result<TangentR> {
    let (_, pa) = decompose_tangent(cx, a, &v.a, settings)?;
    let (_, px) = decompose_tangent(cx, a, &v.x, settings)?;
    Ok(TangentR { a: pa, x: px })
}

/// Modified tangent map `gamma(a, x) = (0, -G_A x, d_A a)`, a vertical vector
/// at `phi(A, p)`.
pub fn gamma(cx: &CubicalComplex, a: &Connection, v: &TangentR, settings: CgSettings) -> Result<TangentT> {
    let (gx, _) = green(cx, a, &v.x, settings)?;
    Ok(TangentT::vertical(gx.neg(), cov_d(cx, a, &v.a)?))
}

/// The formula of [`gamma_inverse`] without the constraint check.
pub fn gamma_inverse_unchecked(cx: &CubicalComplex, a: &Connection, e: &Cochain, beta: &Cochain, settings: CgSettings) -> Result<TangentR> {
    let (ga, _) = green(cx, a, &cov_d_star(cx, a, beta)?, settings)?;
    Ok(TangentR { a: ga, x: laplacian(cx, a, e).neg() })
}

/// Inverse of [`gamma`] on fiber tangents with `d_A* e = 0` and
/// `d_A beta = 0`: `(e, beta) -> (G_A d_A* beta, -Delta_A e)`.
pub fn gamma_inverse(
    cx: &CubicalComplex,
    a: &Connection,
    e: &Cochain,
    beta: &Cochain,
    settings: CgSettings,
) -> Result<TangentR> {
    let scale = 1.0 + cx.norm(e) + cx.norm(beta);
    let limit = 10.0 * settings.tol * scale;
    let re = cx.norm(&cov_d_star(cx, a, e)?);
    if re > limit {
        return Err(Error::ConstraintViolation { what: "d_A* e", residual: re, limit });
    }
    let rb = cx.norm(&cov_d(cx, a, beta)?);
    if rb > limit {
        return Err(Error::ConstraintViolation { what: "d_A beta", residual: rb, limit });
    }
    gamma_inverse_unchecked(cx, a, e, beta, settings)
}

/// Largest `|Omega(gamma v1, gamma v2) - sigma(v1, v2)|` over `trials`
/// random pairs of tangent vectors to `R0`.
pub fn check_gamma_symplecto(
    cx: &CubicalComplex,
    a: &Connection,
    p: &Cochain,
    trials: usize,
    seed: u64,
    settings: CgSettings,
) -> Result<f64> {
    let n = a.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pr = PhasePointR { a: a.clone(), p: p.clone() };
    let pt = phi(cx, a, p);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let v1 = project_tangent_r0(cx, a, &TangentR::random(cx, n, &mut rng), settings)?;
        let v2 = project_tangent_r0(cx, a, &TangentR::random(cx, n, &mut rng), settings)?;
        let lhs = omega_t(cx, &pt, &gamma(cx, a, &v1, settings)?, &gamma(cx, a, &v2, settings)?);
        worst = worst.max((lhs - sigma_r(cx, &pr, &v1, &v2)).abs());
    }
    Ok(worst)
}

/// Hamiltonian vector field on `R` of the pullback `Phi o phi`:
/// `(d_A* varE, d_A* d_A varB)` evaluated at `phi(A, p)`.
pub fn pullback_hamiltonian_vf(cx: &CubicalComplex, obs: &Observable, a: &Connection, p: &Cochain) -> TangentR {
    let pt = phi(cx, a, p);
    let ve = obs.var_e(cx, &pt);
    let vb = obs.var_b(cx, &pt);
    let dvb = cov_d(cx, a, &vb).expect("degree 1");
    TangentR {
        a: cov_d_star(cx, a, &ve).expect("degree 2"),
        x: cov_d_star(cx, a, &dvb).expect("degree 2"),
    }
}

/// Residual of `gamma^{-1} X_Phi = (G_A + 1) X^R_Phi`, relative to `|X^R|`.
pub fn check_pullback_corollary(
    cx: &CubicalComplex,
    obs: &Observable,
    a: &Connection,
    p: &Cochain,
    settings: CgSettings,
) -> Result<f64> {
    let pt = phi(cx, a, p);
    let x = hamiltonian_vf_t(cx, obs, &pt);
    let lhs = gamma_inverse_unchecked(cx, a, &x.e, &x.beta, settings)?;
    let xr = pullback_hamiltonian_vf(cx, obs, a, p);
    let (ga, _) = green(cx, a, &xr.a, settings)?;
    let da = cx.norm(&lhs.a.sub(&ga));
    let dx = cx.norm(&lhs.x.sub(&xr.x));
    let scale = 1.0 + cx.norm(&xr.a) + cx.norm(&xr.x);
    Ok((da + dx) / scale)
}

/// `|{Phi, Psi}(phi(A,p)) - sigma(gamma^{-1} X_Phi, gamma^{-1} X_Psi)|`.
pub fn check_bracket_correspondence(
    cx: &CubicalComplex,
    f: &Observable,
    g: &Observable,
    a: &Connection,
    p: &Cochain,
    settings: CgSettings,
) -> Result<f64> {
    let pt = phi(cx, a, p);
    let pr = PhasePointR { a: a.clone(), p: p.clone() };
    let lift = |o: &Observable| {
        let x = hamiltonian_vf_t(cx, o, &pt);
        gamma_inverse_unchecked(cx, a, &x.e, &x.beta, settings)
    };
    let lhs = poisson_t(cx, f, g, &pt);
    let rhs = sigma_r(cx, &pr, &lift(f)?, &lift(g)?);
    Ok((lhs - rhs).abs())
}

/// Total charge, the integral of the charge density on `T`.
pub fn conserved_charge(cx: &CubicalComplex, pt: &PhasePointT) -> Vec<Complex64> {
    cx.integrate(&moment_t(cx, pt)).expect("degree 3")
}

/// The two integrals `int [d_A *B u E]` and `int [-d_A E u *B]`.
pub fn charge_integrals(cx: &CubicalComplex, pt: &PhasePointT) -> (Vec<Complex64>, Vec<Complex64>) {
    let sb = cx.hodge(&pt.b);
    let first = cx.bracket_cup(&cov_d(cx, &pt.a, &sb).expect("degree 1"), &pt.e).expect("degree 3");
    let de = cov_d(cx, &pt.a, &pt.e).expect("degree 1");
    let second = cx.bracket_cup(&de, &sb).expect("degree 3").neg();
    (cx.integrate(&first).expect("degree 3"), cx.integrate(&second).expect("degree 3"))
}

/// Frobenius norm of a row-major matrix.
pub fn matrix_norm(m: &[Complex64]) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic_core::builtin_observables;

    fn setup(seed: u64) -> (CubicalComplex, Connection, Cochain) {
        let cx = CubicalComplex::build_torus(2, 2, 3, 1.0).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a = Connection::random(&cx, 2, 0.8, &mut r);
        let p = Cochain::random(&cx, 1, 2, 1.0, &mut r);
        (cx, a, p)
    }

    #[test]
    fn phi_components() {
        let (cx, a, p) = setup(1);
        let pt = phi(&cx, &a, &p);
        assert_eq!(pt.e, p.neg());
        assert_eq!(pt.b, curvature(&cx, &a));
        let zero = Connection::zero(&cx, 2);
        assert_eq!(phi(&cx, &zero, &p).b.max_abs(), 0.0);
    }

    #[test]
    fn projection_is_idempotent() {
        let (cx, a, p) = setup(2);
        let s = CgSettings::default();
        let q = project_r0(&cx, &a, &p, s).unwrap().point.p;
        assert!(cx.norm(&cov_d_star(&cx, &a, &q).unwrap()) < 1e-8 * cx.norm(&p));
        let q2 = project_r0(&cx, &a, &q, s).unwrap().point.p;
        assert!(cx.norm(&q2.sub(&q)) < 1e-8 * cx.norm(&p));
    }

    #[test]
    fn gamma_is_symplectic_on_r0() {
        let (cx, a, p) = setup(3);
        let r = check_gamma_symplecto(&cx, &a, &p, 4, 9, CgSettings::default()).unwrap();
        assert!(r < 1e-7, "{r}");
    }

    #[test]
    fn gamma_round_trip_on_r0_tangents() {
        let (cx, a, _) = setup(4);
        let s = CgSettings::default();
        let mut r = ChaCha8Rng::seed_from_u64(5);
        let w = project_tangent_r0(&cx, &a, &TangentR::random(&cx, 2, &mut r), s).unwrap();
        let g = gamma(&cx, &a, &w, s).unwrap();
        let back = gamma_inverse_unchecked(&cx, &a, &g.e, &g.beta, s).unwrap();
        assert!(cx.norm(&back.a.sub(&w.a)) < 1e-7 * cx.norm(&w.a));
        assert!(cx.norm(&back.x.sub(&w.x)) < 1e-7 * cx.norm(&w.x));
    }

    #[test]
    fn gamma_inverse_checks_constraints() {
        let (cx, a, p) = setup(6);
        let beta = Cochain::zeros(&cx, 2, 2);
        let err = gamma_inverse(&cx, &a, &p, &beta, CgSettings::default());
        assert!(matches!(err, Err(Error::ConstraintViolation { .. })));
        let z = gamma_inverse(&cx, &a, &Cochain::zeros(&cx, 1, 2), &beta, CgSettings::default()).unwrap();
        assert_eq!(z.a.max_abs() + z.x.max_abs(), 0.0);
    }

    #[test]
    fn bracket_correspondence_on_probes() {
        let (cx, a, p) = setup(7);
        let obs = builtin_observables(&cx, 2, 1, 3);
        for f in &obs {
            for g in &obs {
                let r = check_bracket_correspondence(&cx, f, g, &a, &p, CgSettings::default()).unwrap();
                assert!(r < 1e-7, "{} {} {r}", f.name, g.name);
            }
        }
    }

    #[test]
    fn abelian_charge_is_zero() {
        let cx = CubicalComplex::cube(2).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(8);
        let pt = PhasePointT {
            a: Connection::new(Cochain::random_abelian(&cx, 1, 2, 1.0, &mut r)).unwrap(),
            e: Cochain::random_abelian(&cx, 1, 2, 1.0, &mut r),
            b: Cochain::random_abelian(&cx, 2, 2, 1.0, &mut r),
        };
        assert_eq!(matrix_norm(&conserved_charge(&cx, &pt)), 0.0);
    }
}
