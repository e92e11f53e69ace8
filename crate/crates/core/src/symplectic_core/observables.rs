use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::TangentT;
use crate::gauge_fields::{cov_d, cov_d_star, curvature, PhasePointR, PhasePointT};
use crate::lattice_complex::{Cochain, CubicalComplex};

#[derive(Clone, Debug, PartialEq)]
pub enum ObservableKind {
    Constant(f64),
    /// `1/2 (|d_A E|^2 + |d_A* B|^2)`.
    Vortex,
    /// `(E, d_A* c)` for a stored 2-cochain `c`.
    ProbeE(Cochain),
    /// `(c, d_A* B)` for a stored 1-cochain `c`.
    ProbeB(Cochain),
}

/// A functional of `(E, B)` at fixed `A` with closed-form variational
/// derivatives: `dPhi(e, beta) = (e, d_A* varE) + (varB, d_A* beta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    pub name: String,
    pub kind: ObservableKind,
}

impl Observable {
    pub fn new(name: impl Into<String>, kind: ObservableKind) -> Self {
        Observable { name: name.into(), kind }
    }

    pub fn eval(&self, cx: &CubicalComplex, pt: &PhasePointT) -> f64 {
        match &self.kind {
            ObservableKind::Constant(c) => *c,
            ObservableKind::Vortex => {
                let de = cov_d(cx, &pt.a, &pt.e).expect("degree 1");
                let sb = cov_d_star(cx, &pt.a, &pt.b).expect("degree 2");
                0.5 * (cx.inner(&de, &de).expect("degree 2") + cx.inner(&sb, &sb).expect("degree 1"))
            }
            ObservableKind::ProbeE(c) => {
                cx.inner(&pt.e, &cov_d_star(cx, &pt.a, c).expect("degree 2")).expect("degree 1")
            }
            ObservableKind::ProbeB(c) => {
                cx.inner(c, &cov_d_star(cx, &pt.a, &pt.b).expect("degree 2")).expect("degree 1")
            }
        }
    }

    /// `delta Phi / delta E`, a 2-cochain.
    pub fn var_e(&self, cx: &CubicalComplex, pt: &PhasePointT) -> Cochain {
        match &self.kind {
            ObservableKind::Vortex => cov_d(cx, &pt.a, &pt.e).expect("degree 1"),
            ObservableKind::ProbeE(c) => c.clone(),
            ObservableKind::Constant(_) | ObservableKind::ProbeB(_) => Cochain::zeros(cx, 2, pt.a.rank()),
        }
    }

    /// `delta Phi / delta B`, a 1-cochain.
    pub fn var_b(&self, cx: &CubicalComplex, pt: &PhasePointT) -> Cochain {
        match &self.kind {
            ObservableKind::Vortex => cov_d_star(cx, &pt.a, &pt.b).expect("degree 2"),
            ObservableKind::ProbeB(c) => c.clone(),
            ObservableKind::Constant(_) | ObservableKind::ProbeE(_) => Cochain::zeros(cx, 1, pt.a.rank()),
        }
    }
}

/// The vortex Hamiltonian followed by `probes` pairs of linear probes
/// `(E, d_A* c)` and `(c', d_A* B)` with seeded random `c`, `c'`.
pub fn builtin_observables(cx: &CubicalComplex, n: usize, probes: usize, seed: u64) -> Vec<Observable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Observable::new("vortex", ObservableKind::Vortex)];
    for i in 0..probes {
        out.push(Observable::new(format!("probe_e{i}"), ObservableKind::ProbeE(Cochain::random(cx, 2, n, 1.0, &mut rng))));
        out.push(Observable::new(format!("probe_b{i}"), ObservableKind::ProbeB(Cochain::random(cx, 1, n, 1.0, &mut rng))));
    }
    out
}

/// `H(A, p) = 1/2 (F_A, F_A) + 1/2 (p, p)`.
pub fn hamiltonian_r(cx: &CubicalComplex, pt: &PhasePointR) -> f64 {
    let f = curvature(cx, &pt.a);
    0.5 * (cx.inner(&f, &f).expect("degree 2") + cx.inner(&pt.p, &pt.p).expect("degree 1"))
}

/// `X_Phi = (0, -varB, varE)`, so that `dPhi(v) = Omega(X_Phi, v)` on fiber
/// directions.
pub fn hamiltonian_vf_t(cx: &CubicalComplex, obs: &Observable, pt: &PhasePointT) -> TangentT {
    TangentT::vertical(obs.var_b(cx, pt).neg(), obs.var_e(cx, pt))
}

/// `{Phi, Psi} = (varB_Phi, d_A* varE_Psi) - (varB_Psi, d_A* varE_Phi)`.
pub fn poisson_t(cx: &CubicalComplex, phi: &Observable, psi: &Observable, pt: &PhasePointT) -> f64 {
    let star = |c: &Cochain| cov_d_star(cx, &pt.a, c).expect("degree 2");
    cx.inner(&phi.var_b(cx, pt), &star(&psi.var_e(cx, pt))).expect("degree 1")
        - cx.inner(&psi.var_b(cx, pt), &star(&phi.var_e(cx, pt))).expect("degree 1")
}

/// The same bracket with `d_A` moved onto the `B`-derivatives.
pub fn poisson_t_dual(cx: &CubicalComplex, phi: &Observable, psi: &Observable, pt: &PhasePointT) -> f64 {
    let d = |c: &Cochain| cov_d(cx, &pt.a, c).expect("degree 1");
    cx.inner(&d(&phi.var_b(cx, pt)), &psi.var_e(cx, pt)).expect("degree 2")
        - cx.inner(&d(&psi.var_b(cx, pt)), &phi.var_e(cx, pt)).expect("degree 2")
}

/// Largest deviation between a central difference of `obs` along a random
/// fiber direction `(e, beta)` and `(e, d_A* varE) + (varB, d_A* beta)`.
pub fn check_variational_derivative(
    cx: &CubicalComplex,
    obs: &Observable,
    pt: &PhasePointT,
    h: f64,
    probes: usize,
    seed: u64,
) -> f64 {
    let n = pt.a.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ve = obs.var_e(cx, pt);
    let vb = obs.var_b(cx, pt);
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let v = TangentT::vertical(Cochain::random(cx, 1, n, 1.0, &mut rng), Cochain::random(cx, 2, n, 1.0, &mut rng));
        let fd = (obs.eval(cx, &v.displace(pt, h)) - obs.eval(cx, &v.displace(pt, -h))) / (2.0 * h);
        let exact = cx.inner(&v.e, &cov_d_star(cx, &pt.a, &ve).expect("degree 2")).expect("degree 1")
            + cx.inner(&vb, &cov_d_star(cx, &pt.a, &v.beta).expect("degree 2")).expect("degree 1");
        worst = worst.max((fd - exact).abs());
    }
    worst
}

/// Cyclic sum `{F, {G, H}} + {G, {H, F}} + {H, {F, G}}`. The outer bracket
/// `{F, K}` is evaluated as `-dK(X_F)`, a central difference of the inner
/// bracket along the Hamiltonian vector field of `F`.
pub fn check_jacobi(cx: &CubicalComplex, obs: [&Observable; 3], pt: &PhasePointT) -> f64 {
    let outer = |f: &Observable, g: &Observable, h: &Observable| {
        let x = hamiltonian_vf_t(cx, f, pt);
        let s = 1.0;
        let k = |q: &PhasePointT| poisson_t(cx, g, h, q);
        -(k(&x.displace(pt, s)) - k(&x.displace(pt, -s))) / (2.0 * s)
    };
    let [f, g, h] = obs;
    (outer(f, g, h) + outer(g, h, f) + outer(h, f, g)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic_core::omega_t;

    fn setup(seed: u64) -> (CubicalComplex, PhasePointT, Vec<Observable>) {
        let cx = CubicalComplex::build_torus(2, 2, 3, 1.0).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let pt = PhasePointT::random(&cx, 2, 0.8, &mut r);
        let obs = builtin_observables(&cx, 2, 2, seed + 100);
        (cx, pt, obs)
    }

    #[test]
    fn variational_derivatives_are_exact() {
        let (cx, pt, obs) = setup(1);
        for o in &obs {
            assert!(check_variational_derivative(&cx, o, &pt, 1e-4, 8, 3) < 1e-5, "{}", o.name);
        }
        let c = Observable::new("one", ObservableKind::Constant(1.0));
        assert!(check_variational_derivative(&cx, &c, &pt, 1e-4, 8, 3) <= 1e-12);
    }

    #[test]
    fn bracket_forms_agree_and_match_omega() {
        let (cx, pt, obs) = setup(2);
        for f in &obs {
            for g in &obs {
                let p = poisson_t(&cx, f, g, &pt);
                assert!((p + poisson_t(&cx, g, f, &pt)).abs() < 1e-12 * (1.0 + p.abs()));
                assert!((p - poisson_t_dual(&cx, f, g, &pt)).abs() < 1e-10 * (1.0 + p.abs()));
                let w = omega_t(&cx, &pt, &hamiltonian_vf_t(&cx, f, &pt), &hamiltonian_vf_t(&cx, g, &pt));
                assert!((p - w).abs() < 1e-10 * (1.0 + p.abs()));
            }
        }
    }

    #[test]
    fn vortex_vector_field_is_maxwell() {
        let (cx, pt, obs) = setup(3);
        let x = hamiltonian_vf_t(&cx, &obs[0], &pt);
        assert_eq!(x.e, cov_d_star(&cx, &pt.a, &pt.b).unwrap().neg());
        assert_eq!(x.beta, cov_d(&cx, &pt.a, &pt.e).unwrap());
        assert!(obs[0].eval(&cx, &pt) >= 0.0);
    }

    #[test]
    fn jacobi_holds_for_builtins() {
        let (cx, pt, obs) = setup(4);
        let scale = 1.0 + obs[0].eval(&cx, &pt);
        assert!(check_jacobi(&cx, [&obs[0], &obs[1], &obs[2]], &pt) < 1e-8 * scale);
    }
}
