use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{omega_s, omega_t, sigma_r, TangentR, TangentS, TangentT};
use crate::gauge_fields::{cov_d, cov_d_star, fundamental_vf, PhasePointR, PhasePointS, PhasePointT};
use crate::lattice_complex::{Cochain, CubicalComplex};

/// A point of one of the three phase spaces.
#[derive(Clone, Copy, Debug)]
pub enum PhaseSpace<'a> {
    R(&'a PhasePointR),
    S(&'a PhasePointS),
    T(&'a PhasePointT),
}

/// Moment map on `R`: `J(A, p) = d_A* p`.
pub fn moment_r(cx: &CubicalComplex, pt: &PhasePointR) -> Cochain {
    cov_d_star(cx, &pt.a, &pt.p).expect("degree 1")
}

/// Moment map on `S` as a 3-cochain: `* d_A* * lambda`, the lattice form of
/// `-d_A lambda` whose pairing reproduces the Hamiltonian `(d_A xi, *lambda)`.
pub fn moment_s(cx: &CubicalComplex, pt: &PhasePointS) -> Cochain {
    let s = cov_d_star(cx, &pt.a, &cx.hodge(&pt.lambda)).expect("degree 1");
    cx.hodge(&s)
}

/// Charge density on `T`: the 3-cochain `rho` with `(*rho, xi) = ([E u xi], d_A* B)`,
/// i.e. `rho(v) = 1/2 sum_mu ([w, E](v, mu) + [w, E](v - mu, mu))` with
/// `w = d_A* B`, placed on the cube based at `v`.
pub fn moment_t(cx: &CubicalComplex, pt: &PhasePointT) -> Cochain {
    let n = pt.a.rank();
    let w = cov_d_star(cx, &pt.a, &pt.b).expect("degree 2");
    let mut rho = Cochain::zeros(cx, 3, n);
    for cell in 0..cx.n_cells(1) {
        let (v, mask) = cx.cell_coords(1, cell);
        let mut c = vec![num_complex::Complex64::new(0.0, 0.0); n * n];
        crate::lie_algebra::commutator_acc(&mut c, w.block(cell), pt.e.block(cell), n, 0.5);
        for end in [v, cx.shift(v, mask)] {
            let dst = rho.block_mut(cx.cell_index(end, 0b111));
            for (d, x) in dst.iter_mut().zip(&c) {
                *d += x;
            }
        }
    }
    rho
}

/// The charge density written as the bracket `[d_A *B u E]`.
pub fn moment_t_density_form(cx: &CubicalComplex, pt: &PhasePointT) -> Cochain {
    let dsb = cov_d(cx, &pt.a, &cx.hodge(&pt.b)).expect("degree 1");
    cx.bracket_cup(&dsb, &pt.e).expect("degree 3")
}

/// `J^xi(A, p) = (d_A xi, p)`.
pub fn momentum_r(cx: &CubicalComplex, pt: &PhasePointR, xi: &Cochain) -> f64 {
    cx.inner(&cov_d(cx, &pt.a, xi).expect("degree 0"), &pt.p).expect("degree 1")
}

/// `J^xi(A, lambda) = (d_A xi, *lambda)`.
pub fn momentum_s(cx: &CubicalComplex, pt: &PhasePointS, xi: &Cochain) -> f64 {
    cx.inner(&cov_d(cx, &pt.a, xi).expect("degree 0"), &cx.hodge(&pt.lambda)).expect("degree 1")
}

/// `J^xi(A, E, B) = Theta(xi_T) = ([E u xi], d_A* B)`.
pub fn momentum_t(cx: &CubicalComplex, pt: &PhasePointT, xi: &Cochain) -> f64 {
    let w = cov_d_star(cx, &pt.a, &pt.b).expect("degree 2");
    cx.inner(&cx.bracket_cup(&pt.e, xi).expect("degree 1"), &w).expect("degree 1")
}

/// Fundamental vector field on `R`: `(d_A xi, [p u xi])`.
pub fn fundamental_vf_r(cx: &CubicalComplex, xi: &Cochain, pt: &PhasePointR) -> TangentR {
    TangentR {
        a: cov_d(cx, &pt.a, xi).expect("degree 0"),
        x: cx.bracket_cup(&pt.p, xi).expect("degree 1"),
    }
}

/// Fundamental vector field on `S`: `(d_A xi, *[*lambda u xi])`.
pub fn fundamental_vf_s(cx: &CubicalComplex, xi: &Cochain, pt: &PhasePointS) -> TangentS {
    TangentS {
        a: cov_d(cx, &pt.a, xi).expect("degree 0"),
        alpha: cx.hodge(&cx.bracket_cup(&cx.hodge(&pt.lambda), xi).expect("degree 1")),
    }
}

/// Largest residual `|d J^xi(v) - form(v, xi_#)|` over `probes` pseudo-random
/// directions, with `dJ` by central differences of step `h`.
pub fn check_moment_condition(
    cx: &CubicalComplex,
    space: PhaseSpace<'_>,
    xi: &Cochain,
    h: f64,
    probes: usize,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    match space {
        PhaseSpace::R(pt) => {
            let n = pt.a.rank();
            let gen = fundamental_vf_r(cx, xi, pt);
            for _ in 0..probes {
                let v = TangentR::random(cx, n, &mut rng);
                let at = |s: f64| PhasePointR { a: pt.a.shifted(s, &v.a), p: pt.p.add(&v.x.scaled(s)) };
                let fd = (momentum_r(cx, &at(h), xi) - momentum_r(cx, &at(-h), xi)) / (2.0 * h);
                worst = worst.max((fd - sigma_r(cx, pt, &v, &gen)).abs());
            }
        }
        PhaseSpace::S(pt) => {
            let n = pt.a.rank();
            let gen = fundamental_vf_s(cx, xi, pt);
            for _ in 0..probes {
                let v = TangentS::random(cx, n, &mut rng);
                let at = |s: f64| PhasePointS {
                    a: pt.a.shifted(s, &v.a),
                    lambda: pt.lambda.add(&v.alpha.scaled(s)),
                };
                let fd = (momentum_s(cx, &at(h), xi) - momentum_s(cx, &at(-h), xi)) / (2.0 * h);
                worst = worst.max((fd - omega_s(cx, pt, &v, &gen)).abs());
            }
        }
        PhaseSpace::T(pt) => {
            let n = pt.a.rank();
            let gen = fundamental_vf(cx, xi, pt);
            for _ in 0..probes {
                let v = TangentT::random(cx, n, &mut rng);
                let fd = (momentum_t(cx, &v.displace(pt, h), xi) - momentum_t(cx, &v.displace(pt, -h), xi))
                    / (2.0 * h);
                worst = worst.max((fd - omega_t(cx, pt, &v, &gen)).abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauge_fields::Connection;

    fn cx() -> CubicalComplex {
        CubicalComplex::build_torus(2, 3, 2, 1.0).unwrap()
    }

    #[test]
    fn moment_pairings_match_momenta() {
        let cx = cx();
        let mut r = ChaCha8Rng::seed_from_u64(1);
        let xi = Cochain::random(&cx, 0, 2, 1.0, &mut r);
        let t = PhasePointT::random(&cx, 2, 1.0, &mut r);
        let s = PhasePointS { a: t.a.clone(), lambda: t.b.clone() };
        let rr = PhasePointR { a: t.a.clone(), p: t.e.clone() };
        let close = |x: f64, y: f64| (x - y).abs() < 1e-12 * (1.0 + x.abs());
        assert!(close(cx.inner(&moment_r(&cx, &rr), &xi).unwrap(), momentum_r(&cx, &rr, &xi)));
        assert!(close(cx.inner(&cx.hodge(&moment_s(&cx, &s)), &xi).unwrap(), momentum_s(&cx, &s, &xi)));
        assert!(close(cx.inner(&cx.hodge(&moment_t(&cx, &t)), &xi).unwrap(), momentum_t(&cx, &t, &xi)));
    }

    #[test]
    fn moment_conditions_on_r_and_s() {
        let cx = cx();
        let mut r = ChaCha8Rng::seed_from_u64(2);
        let a = Connection::random(&cx, 2, 1.0, &mut r);
        let xi = Cochain::random(&cx, 0, 2, 1.0, &mut r);
        let pr = PhasePointR { a: a.clone(), p: Cochain::random(&cx, 1, 2, 1.0, &mut r) };
        let ps = PhasePointS { a, lambda: Cochain::random(&cx, 2, 2, 1.0, &mut r) };
        assert!(check_moment_condition(&cx, PhaseSpace::R(&pr), &xi, 1e-4, 16, 7) < 1e-5);
        assert!(check_moment_condition(&cx, PhaseSpace::S(&ps), &xi, 1e-4, 16, 7) < 1e-5);
        let zero = Cochain::zeros(&cx, 0, 2);
        assert!(check_moment_condition(&cx, PhaseSpace::R(&pr), &zero, 1e-4, 4, 7) < 1e-12);
    }

    #[test]
    fn abelian_charge_vanishes() {
        let cx = cx();
        let mut r = ChaCha8Rng::seed_from_u64(3);
        let pt = PhasePointT {
            a: Connection::new(Cochain::random_abelian(&cx, 1, 2, 1.0, &mut r)).unwrap(),
            e: Cochain::random_abelian(&cx, 1, 2, 1.0, &mut r),
            b: Cochain::random_abelian(&cx, 2, 2, 1.0, &mut r),
        };
        assert_eq!(moment_t(&cx, &pt).max_abs(), 0.0);
        assert_eq!(moment_t_density_form(&cx, &pt).max_abs(), 0.0);
    }
}
