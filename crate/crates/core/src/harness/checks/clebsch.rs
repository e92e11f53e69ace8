use crate::clebsch_reduction::{
    charge_integrals, check_bracket_correspondence, check_gamma_symplecto, check_pullback_corollary, conserved_charge,
    gamma, gamma_inverse, gamma_inverse_unchecked, matrix_norm, phi, project_r0, project_tangent_r0,
};
use crate::dynamics::evolve_r;
use crate::elliptic::{decompose_cotangent, decompose_tangent, CgSettings};
use crate::error::Result;
use crate::gauge_fields::{gauge_flow, Connection, PhasePointR, PhasePointT};
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lattice_complex::{Cochain, CubicalComplex};
use crate::lie_algebra::{expm, random_su_with};
use crate::symplectic_core::{builtin_observables, omega_t, sigma_r, TangentR};

fn reduced_point(cx: &CubicalComplex, cfg: &RunConfig, salt: u64) -> Result<(Connection, Cochain)> {
    let mut rng = check_rng(cfg, salt);
    let a = Connection::random(cx, cfg.rank, cfg.amplitude, &mut rng);
    let p = Cochain::random(cx, 1, cfg.rank, cfg.amplitude, &mut rng);
    let p = project_r0(cx, &a, &p, cfg.cg())?.point.p;
    Ok((a, p))
}

/// Subtracts the per-direction mean, removing the constant harmonic part of
/// a 1-cochain.
fn remove_means(cx: &CubicalComplex, c: &mut Cochain) {
    let n = c.rank();
    let sets = CubicalComplex::sets_per_vertex(c.degree());
    let nv = cx.n_vertices() as f64;
    for s in 0..sets {
        let mut mean = vec![num_complex::Complex64::new(0.0, 0.0); n * n];
        for v in 0..cx.n_vertices() {
            for (m, z) in mean.iter_mut().zip(c.block(v * sets + s)) {
                *m += z / nv;
            }
        }
        for v in 0..cx.n_vertices() {
            for (z, m) in c.block_mut(v * sets + s).iter_mut().zip(&mean) {
                *z -= m;
            }
        }
    }
}

pub fn c07_gamma(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = CubicalComplex::build_torus(2, 2, 2, cfg.h)?;
    let cfg2 = RunConfig { rank: 2, ..cfg.clone() };
    let (a, p) = reduced_point(&cx, &cfg2, 50)?;
    let generic = check_gamma_symplecto(&cx, &a, &p, 32, cfg.seed, cfg.cg())?;

    // Abelian data: everything in the diagonal subalgebra, tangents free of
    // constant harmonic parts.
    let s = CgSettings { tol: cfg.cg_tol.min(1e-12), maxit: cfg.cg().maxit };
    let mut rng = check_rng(cfg, 51);
    let aa = Connection::new(Cochain::random_abelian(&cx, 1, 2, cfg.amplitude, &mut rng))?;
    let pa = Cochain::random_abelian(&cx, 1, 2, cfg.amplitude, &mut rng);
    let pr = PhasePointR { a: aa.clone(), p: pa.clone() };
    let pt = phi(&cx, &aa, &pa);
    let mut tangent = || -> Result<TangentR> {
        let mut v = TangentR {
            a: Cochain::random_abelian(&cx, 1, 2, 1.0, &mut rng),
            x: Cochain::random_abelian(&cx, 1, 2, 1.0, &mut rng),
        };
        remove_means(&cx, &mut v.a);
        remove_means(&cx, &mut v.x);
        Ok(TangentR { a: decompose_tangent(&cx, &aa, &v.a, s)?.1, x: decompose_tangent(&cx, &aa, &v.x, s)?.1 })
    };
    let mut abelian: f64 = 0.0;
    for _ in 0..32 {
        let v1 = tangent()?;
        let v2 = tangent()?;
        let lhs = omega_t(&cx, &pt, &gamma(&cx, &aa, &v1, s)?, &gamma(&cx, &aa, &v2, s)?);
        abelian = abelian.max((lhs - sigma_r(&cx, &pr, &v1, &v2)).abs());
    }
    Ok(vec![
        Measurement::at_most("|Omega(gamma v1, gamma v2) - sigma(v1, v2)|, 32 pairs, su(2), 2^3", generic, 1e-7),
        Measurement::at_most("same, abelian data", abelian, 1e-9),
    ])
}

pub fn c08_brackets(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let (a, p) = reduced_point(&cx, cfg, 52)?;
    let obs = builtin_observables(&cx, cfg.rank, 2, cfg.seed);
    let mut worst: f64 = 0.0;
    for f in &obs {
        for g in &obs {
            worst = worst.max(check_bracket_correspondence(&cx, f, g, &a, &p, cfg.cg())?);
        }
    }
    Ok(vec![Measurement::at_most(
        format!("|{{F, G}} o phi - sigma(gamma^-1 X_F, gamma^-1 X_G)|, {} pairs", obs.len() * obs.len()),
        worst,
        1e-7,
    )])
}

pub fn round_trip(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let s = cfg.cg();
    let n = cfg.rank;
    let (a, _) = reduced_point(&cx, cfg, 53)?;
    let mut rng = check_rng(cfg, 54);

    let w = project_tangent_r0(&cx, &a, &TangentR::random(&cx, n, &mut rng), s)?;
    let g = gamma(&cx, &a, &w, s)?;
    let back = gamma_inverse_unchecked(&cx, &a, &g.e, &g.beta, s)?;
    let r0 = (cx.norm(&back.a.sub(&w.a)) + cx.norm(&back.x.sub(&w.x))) / (cx.norm(&w.a) + cx.norm(&w.x));

    let (_, e) = decompose_tangent(&cx, &a, &Cochain::random(&cx, 1, n, 1.0, &mut rng), s)?;
    let (_, beta) = decompose_cotangent(&cx, &a, &Cochain::random(&cx, 2, n, 1.0, &mut rng), s)?;
    let v = gamma_inverse(&cx, &a, &e, &beta, s)?;
    let g = gamma(&cx, &a, &v, s)?;
    let fiber = (cx.norm(&g.e.sub(&e)) + cx.norm(&g.beta.sub(&beta))) / (cx.norm(&e) + cx.norm(&beta));
    Ok(vec![
        Measurement::at_most("gamma^-1 gamma on R0 tangents, relative", r0, 1e-7),
        Measurement::at_most("gamma gamma^-1 on constrained fiber tangents, relative", fiber, 1e-7),
    ])
}

pub fn projection(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let s = cfg.cg();
    let n = cfg.rank;
    let (a, _) = reduced_point(&cx, cfg, 55)?;
    let mut rng = check_rng(cfg, 56);
    let proj = |x: &Cochain| decompose_tangent(&cx, &a, x, s).map(|r| r.1);
    let u = Cochain::random(&cx, 1, n, 1.0, &mut rng);
    let w = Cochain::random(&cx, 1, n, 1.0, &mut rng);
    let pu = proj(&u)?;
    let ppu = proj(&pu)?;
    let pw = proj(&w)?;
    let idem = cx.norm(&ppu.sub(&pu)) / cx.norm(&u);
    let sym = (cx.inner(&pu, &w)? - cx.inner(&u, &pw)?).abs() / (cx.norm(&u) * cx.norm(&w));
    let pr = project_r0(&cx, &a, &u, s)?.point.p;
    let consistent = cx.norm(&pr.sub(&pu)) / cx.norm(&u);
    Ok(vec![
        Measurement::at_most("|P P u - P u| / |u|", idem, 2.0 * cfg.cg_tol),
        Measurement::at_most("|(P u, w) - (u, P w)| / |u||w|", sym, 2.0 * cfg.cg_tol),
        Measurement::at_most("point and tangent projections agree", consistent, 2.0 * cfg.cg_tol),
    ])
}

pub fn pullback(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let (a, p) = reduced_point(&cx, cfg, 57)?;
    let obs = builtin_observables(&cx, cfg.rank, 1, cfg.seed);
    obs.iter()
        .map(|o| {
            let r = check_pullback_corollary(&cx, o, &a, &p, cfg.cg())?;
            Ok(Measurement::report(format!("{}: |gamma^-1 X - (G_A + 1) X^R| relative", o.name), r))
        })
        .collect()
}

pub fn c13_charge(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let n = cfg.rank;
    let mut rng = check_rng(cfg, 58);
    let abelian = PhasePointT {
        a: Connection::new(Cochain::random_abelian(&cx, 1, n, 1.0, &mut rng))?,
        e: Cochain::random_abelian(&cx, 1, n, 1.0, &mut rng),
        b: Cochain::random_abelian(&cx, 2, n, 1.0, &mut rng),
    };
    let q_abelian = conserved_charge(&cx, &abelian).iter().map(|z| z.norm()).fold(0.0, f64::max);

    let (a, p) = reduced_point(&cx, cfg, 59)?;
    let mut cur = PhasePointR { a, p };
    let mut integrals: f64 = 0.0;
    for _ in 0..5 {
        let img = phi(&cx, &cur.a, &cur.p);
        let (first, second) = charge_integrals(&cx, &img);
        let d: Vec<_> = first.iter().zip(&second).map(|(x, y)| x - y).collect();
        integrals = integrals.max(matrix_norm(&d));
        cur = evolve_r(&cx, &cur, 1e-2, 20, 0)?.0;
    }

    let pt = PhasePointT::random(&cx, n, cfg.amplitude, &mut rng);
    let eta = random_su_with(n, &mut rng).scale(0.5);
    let moved = gauge_flow(&cx, &Cochain::constant(&cx, 0, &eta), 1.0, &pt, 200);
    let u = expm(&eta);
    let q = conserved_charge(&cx, &pt);
    let expected = u.conjugate_block(&q);
    let d: Vec<_> = conserved_charge(&cx, &moved).iter().zip(&expected).map(|(x, y)| x - y).collect();
    Ok(vec![
        Measurement::at_most("max |Q| for abelian data", q_abelian, 1e-14),
        Measurement::at_most("|int [d_A *B u E] - int [-d_A E u *B]| along an R image", integrals, 1e-8),
        Measurement::at_most("|U^-1 Q U - Q after gauge flow|", matrix_norm(&d), 1e-6),
    ])
}
