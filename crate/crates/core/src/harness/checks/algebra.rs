use crate::error::Result;
use crate::harness::config::RunConfig;
use crate::harness::suite::{check_rng, Measurement};
use crate::lie_algebra::{commutator, expm, inner_su, random_su_with, AlgElement};

fn diff(x: &AlgElement, y: &AlgElement) -> f64 {
    x.add(&y.scale(-1.0)).max_norm()
}

pub fn bracket(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let mut rng = check_rng(cfg, 10);
    let mut out = Vec::new();
    for n in [2, 3] {
        let (mut lin, mut anti, mut jac): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for _ in 0..50 {
            let x = random_su_with(n, &mut rng);
            let y = random_su_with(n, &mut rng);
            let z = random_su_with(n, &mut rng);
            let s = 0.75;
            let lhs = commutator(&x.scale(s).add(&y), &z);
            let rhs = commutator(&x, &z).scale(s).add(&commutator(&y, &z));
            lin = lin.max(diff(&lhs, &rhs));
            anti = anti.max(commutator(&x, &y).add(&commutator(&y, &x)).max_norm());
            let j = commutator(&x, &commutator(&y, &z))
                .add(&commutator(&y, &commutator(&z, &x)))
                .add(&commutator(&z, &commutator(&x, &y)));
            jac = jac.max(j.max_norm());
        }
        out.push(Measurement::at_most(format!("bilinearity, su({n})"), lin, 1e-13));
        out.push(Measurement::at_most(format!("antisymmetry, su({n})"), anti, 1e-13));
        out.push(Measurement::at_most(format!("Jacobi, su({n})"), jac, 1e-13));
    }
    Ok(out)
}

pub fn ad_invariance(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let mut rng = check_rng(cfg, 11);
    let mut out = Vec::new();
    for n in [2, 3] {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let x = random_su_with(n, &mut rng);
            let y = random_su_with(n, &mut rng);
            let z = random_su_with(n, &mut rng);
            worst = worst.max((inner_su(&commutator(&z, &x), &y) + inner_su(&x, &commutator(&z, &y))).abs());
        }
        out.push(Measurement::at_most(format!("<[Z,X],Y> + <X,[Z,Y]>, su({n})"), worst, 1e-13));
    }
    Ok(out)
}

pub fn group(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let mut rng = check_rng(cfg, 12);
    let mut out = Vec::new();
    for n in [2, 3] {
        let (mut unit, mut det): (f64, f64) = (0.0, 0.0);
        for _ in 0..20 {
            let g = expm(&random_su_with(n, &mut rng));
            unit = unit.max(g.unitarity_defect());
            det = det.max((g.determinant() - 1.0).norm());
        }
        out.push(Measurement::at_most(format!("unitarity defect of exp, su({n})"), unit, 1e-12));
        out.push(Measurement::at_most(format!("|det exp - 1|, su({n})"), det, 1e-12));
    }
    Ok(out)
}
