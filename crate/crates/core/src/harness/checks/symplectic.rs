use crate::error::Result;
use crate::gauge_fields::{gauge_flow, Connection, PhasePointR, PhasePointS, PhasePointT};
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::lie_algebra::{expm, random_su_with};
use crate::symplectic_core::{
    builtin_observables, check_jacobi, check_moment_condition, check_variational_derivative, fd_closedness,
    fd_d_theta, hamiltonian_vf_t, momentum_r, momentum_s, momentum_t, omega_s, omega_t, omega_t_rank, poisson_t,
    poisson_t_dual, sigma_r, PhaseSpace, TangentR, TangentS, TangentT,
};

fn point(cx: &CubicalComplex, cfg: &RunConfig, salt: u64) -> PhasePointT {
    PhasePointT::random(cx, cfg.rank, cfg.amplitude, &mut check_rng(cfg, salt))
}

pub fn forms(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let n = cfg.rank;
    let mut rng = check_rng(cfg, 40);
    let pt = PhasePointT::random(&cx, n, cfg.amplitude, &mut rng);
    let pr = PhasePointR { a: pt.a.clone(), p: pt.e.clone() };
    let ps = PhasePointS { a: pt.a.clone(), lambda: pt.b.clone() };
    let (mut anti_s, mut anti_r, mut anti_t) = (0.0f64, 0.0f64, 0.0f64);
    let (mut lin_s, mut lin_r, mut lin_t) = (0.0f64, 0.0f64, 0.0f64);
    let c = 0.6;
    for _ in 0..5 {
        let [u, v, w] = [0; 3].map(|_| TangentS::random(&cx, n, &mut rng));
        let scale = 1.0 + omega_s(&cx, &ps, &u, &v).abs();
        anti_s = anti_s.max((omega_s(&cx, &ps, &u, &v) + omega_s(&cx, &ps, &v, &u)).abs() / scale);
        let uw = TangentS { a: u.a.scaled(c).add(&w.a), alpha: u.alpha.scaled(c).add(&w.alpha) };
        let lin = omega_s(&cx, &ps, &uw, &v) - c * omega_s(&cx, &ps, &u, &v) - omega_s(&cx, &ps, &w, &v);
        lin_s = lin_s.max(lin.abs() / scale);

        let [u, v, w] = [0; 3].map(|_| TangentR::random(&cx, n, &mut rng));
        let scale = 1.0 + sigma_r(&cx, &pr, &u, &v).abs();
        anti_r = anti_r.max((sigma_r(&cx, &pr, &u, &v) + sigma_r(&cx, &pr, &v, &u)).abs() / scale);
        let uw = TangentR { a: u.a.scaled(c).add(&w.a), x: u.x.scaled(c).add(&w.x) };
        let lin = sigma_r(&cx, &pr, &uw, &v) - c * sigma_r(&cx, &pr, &u, &v) - sigma_r(&cx, &pr, &w, &v);
        lin_r = lin_r.max(lin.abs() / scale);

        let [u, v, w] = [0; 3].map(|_| TangentT::random(&cx, n, &mut rng));
        let scale = 1.0 + omega_t(&cx, &pt, &u, &v).abs();
        anti_t = anti_t.max((omega_t(&cx, &pt, &u, &v) + omega_t(&cx, &pt, &v, &u)).abs() / scale);
        let uw = TangentT { a: u.a.scaled(c).add(&w.a), e: u.e.scaled(c).add(&w.e), beta: u.beta.scaled(c).add(&w.beta) };
        let lin = omega_t(&cx, &pt, &uw, &v) - c * omega_t(&cx, &pt, &u, &v) - omega_t(&cx, &pt, &w, &v);
        lin_t = lin_t.max(lin.abs() / scale);
    }
    Ok(vec![
        Measurement::at_most("omega_S antisymmetry", anti_s, 1e-12),
        Measurement::at_most("omega_S linearity", lin_s, 1e-12),
        Measurement::at_most("sigma_R antisymmetry", anti_r, 1e-12),
        Measurement::at_most("sigma_R linearity", lin_r, 1e-12),
        Measurement::at_most("Omega_T antisymmetry", anti_t, 1e-12),
        Measurement::at_most("Omega_T linearity", lin_t, 1e-12),
    ])
}

pub fn c05_moment(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let mut out = Vec::new();
    let n = 2;
    let h = 1e-4;
    for size in [2, 3] {
        let cx = CubicalComplex::build_torus(size, size, size, cfg.h)?;
        let mut rng = check_rng(cfg, 41 + size as u64);
        let pt = PhasePointT::random(&cx, n, cfg.amplitude, &mut rng);
        let xi = Cochain::random(&cx, 0, n, 1.0, &mut rng);
        let pr = PhasePointR { a: pt.a.clone(), p: pt.e.clone() };
        let ps = PhasePointS { a: pt.a.clone(), lambda: pt.b.clone() };
        let seed = cfg.seed.wrapping_add(size as u64);
        let r = check_moment_condition(&cx, PhaseSpace::R(&pr), &xi, h, 16, seed);
        let s = check_moment_condition(&cx, PhaseSpace::S(&ps), &xi, h, 16, seed);
        let t = check_moment_condition(&cx, PhaseSpace::T(&pt), &xi, h, 16, seed);
        out.push(Measurement::at_most(format!("R: |dJ(v) - sigma(v, xi_R)|, {size}^3, 16 probes"), r, 1e-5));
        out.push(Measurement::at_most(format!("S: |dJ(v) - omega(v, xi_S)|, {size}^3, 16 probes"), s, 1e-5));
        out.push(Measurement::at_most(format!("T: |dJ(v) - Omega(v, xi_T)|, {size}^3, 16 probes"), t, 1e-5));
    }
    Ok(out)
}

pub fn c06_exterior(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 44);
    let pt = PhasePointT::random(&cx, cfg.rank, cfg.amplitude, &mut rng);
    let (mut dt, mut closed): (f64, f64) = (0.0, 0.0);
    for _ in 0..8 {
        let [u, v, w] = [0; 3].map(|_| TangentT::random(&cx, cfg.rank, &mut rng));
        dt = dt.max((fd_d_theta(&cx, &pt, &u, &v, 1e-4) - omega_t(&cx, &pt, &u, &v)).abs());
        closed = closed.max(fd_closedness(&cx, &pt, [&u, &v, &w], 1e-3).abs());
    }
    Ok(vec![
        Measurement::at_most("|d~Theta(v1, v2) - Omega(v1, v2)|, h = 1e-4, 8 pairs", dt, 1e-5),
        Measurement::at_most("|cyclic d~Omega(v1, v2, v3)|, h = 1e-3, 8 triples", closed, 1e-4),
    ])
}

pub fn equivariance(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let n = cfg.rank;
    let mut rng = check_rng(cfg, 45);
    let pt = PhasePointT::random(&cx, n, cfg.amplitude, &mut rng);
    let xi = Cochain::random(&cx, 0, n, 1.0, &mut rng);
    let eta = random_su_with(n, &mut rng).scale(0.5);
    let t = 1.0;
    let moved = gauge_flow(&cx, &Cochain::constant(&cx, 0, &eta), t, &pt, 200);
    // Constant generators act by conjugation with exp(t eta).
    let u = expm(&eta.scale(t));
    let mut xi_moved = xi.clone();
    for c in 0..cx.n_cells(0) {
        let block = u.conjugate_block(xi.block(c));
        xi_moved.block_mut(c).copy_from_slice(&block);
    }
    let r = |p: &PhasePointT| PhasePointR { a: p.a.clone(), p: p.e.clone() };
    let s = |p: &PhasePointT| PhasePointS { a: p.a.clone(), lambda: p.b.clone() };
    let rel = |x: f64, y: f64| (x - y).abs() / (1.0 + y.abs());
    Ok(vec![
        Measurement::at_most(
            "R: |J^{Ad xi}(g pt) - J^xi(pt)| / (1 + |J|)",
            rel(momentum_r(&cx, &r(&moved), &xi_moved), momentum_r(&cx, &r(&pt), &xi)),
            1e-6,
        ),
        Measurement::at_most(
            "S: |J^{Ad xi}(g pt) - J^xi(pt)| / (1 + |J|)",
            rel(momentum_s(&cx, &s(&moved), &xi_moved), momentum_s(&cx, &s(&pt), &xi)),
            1e-6,
        ),
        Measurement::at_most(
            "T: |J^{Ad xi}(g pt) - J^xi(pt)| / (1 + |J|)",
            rel(momentum_t(&cx, &moved, &xi_moved), momentum_t(&cx, &pt, &xi)),
            1e-6,
        ),
    ])
}

pub fn variations(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let pt = point(&cx, cfg, 46);
    let obs = builtin_observables(&cx, cfg.rank, 2, cfg.seed);
    Ok(obs
        .iter()
        .map(|o| {
            let r = check_variational_derivative(&cx, o, &pt, cfg.fd_step, 8, cfg.seed);
            Measurement::at_most(format!("{}: central difference against variational derivative", o.name), r, 1e-5)
        })
        .collect())
}

pub fn c09_poisson(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let pt = point(&cx, cfg, 47);
    let obs = builtin_observables(&cx, cfg.rank, 2, cfg.seed);
    let (mut anti, mut dual, mut omega): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for f in &obs {
        for g in &obs {
            let p = poisson_t(&cx, f, g, &pt);
            anti = anti.max((p + poisson_t(&cx, g, f, &pt)).abs());
            dual = dual.max((p - poisson_t_dual(&cx, f, g, &pt)).abs());
            let w = omega_t(&cx, &pt, &hamiltonian_vf_t(&cx, f, &pt), &hamiltonian_vf_t(&cx, g, &pt));
            omega = omega.max((p - w).abs());
        }
    }
    let mut jac: f64 = 0.0;
    for i in 0..obs.len() {
        for j in i + 1..obs.len() {
            for k in j + 1..obs.len() {
                jac = jac.max(check_jacobi(&cx, [&obs[i], &obs[j], &obs[k]], &pt));
            }
        }
    }
    Ok(vec![
        Measurement::at_most("|{F, G} + {G, F}|", anti, 0.0),
        Measurement::at_most("|{F, G} - {F, G} with d_A on the B-derivatives|", dual, 1e-10),
        Measurement::at_most("|{F, G} - Omega(X_F, X_G)|", omega, 1e-10),
        Measurement::at_most("Jacobi cyclic sum over built-in triples", jac, 1e-8),
    ])
}

pub fn c10_hodge_transport(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let n = cfg.rank;
    let mut rng = check_rng(cfg, 48);
    let a = Connection::random(&cx, n, cfg.amplitude, &mut rng);
    let pr = PhasePointR { a: a.clone(), p: Cochain::random(&cx, 1, n, cfg.amplitude, &mut rng) };
    let ps = PhasePointS { a, lambda: cx.hodge(&pr.p) };
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let v1 = TangentR::random(&cx, n, &mut rng);
        let v2 = TangentR::random(&cx, n, &mut rng);
        let s1 = TangentS { a: v1.a.clone(), alpha: cx.hodge(&v1.x) };
        let s2 = TangentS { a: v2.a.clone(), alpha: cx.hodge(&v2.x) };
        let scale = 1.0 + sigma_r(&cx, &pr, &v1, &v2).abs();
        worst = worst.max((sigma_r(&cx, &pr, &v1, &v2) - omega_s(&cx, &ps, &s1, &s2)).abs() / scale);
    }
    Ok(vec![Measurement::at_most("|sigma(v1, v2) - omega(*v1, *v2)| / (1 + |sigma|), 20 pairs", worst, 1e-12)])
}

pub fn rank(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let pt = point(&cx, cfg, 49);
    let rep = omega_t_rank(&cx, &pt);
    let smallest = rep.singular_values.get(rep.rank.saturating_sub(1)).copied().unwrap_or(0.0);
    Ok(vec![
        Measurement::report("tangent dimension", rep.dimension as f64),
        Measurement::report("numerical rank of Omega at relative threshold 1e-10", rep.rank as f64),
        Measurement::report("largest singular value", rep.singular_values.first().copied().unwrap_or(0.0)),
        Measurement::report("smallest retained singular value", smallest),
    ])
}
