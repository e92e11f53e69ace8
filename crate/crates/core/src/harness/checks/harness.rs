use crate::dynamics::evolve_r;
use crate::error::Result;
use crate::gauge_fields::{Connection, PhasePointR};
use crate::harness::config::RunConfig;
use crate::harness::snapshot::FieldSnapshot;
use crate::harness::suite::{catalogue, check_rng, run_checks, Group, Measurement};
use crate::lattice_complex::Cochain;

pub fn snapshot(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 70);
    let mut mismatches = 0;
    for k in 0..4 {
        let c = Cochain::random(&cx, k, cfg.rank, 1.0, &mut rng);
        let s = FieldSnapshot::new(&cx, c);
        let back = FieldSnapshot::from_bytes(&s.to_bytes())?;
        let same_bits = back.cochain.as_slice().iter().zip(s.cochain.as_slice()).all(|(x, y)| {
            x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()
        });
        if !(same_bits && back.dims == s.dims && back.cochain.degree() == k) {
            mismatches += 1;
        }
    }
    Ok(vec![Measurement::at_most("degrees failing a bit-exact round trip", mismatches as f64, 0.0)])
}

fn outputs(cfg: &RunConfig) -> Result<(String, String, Vec<u8>)> {
    let quick: Vec<_> = catalogue()
        .into_iter()
        .filter(|c| matches!(c.group, Group::Complex | Group::Algebra | Group::Gauge | Group::Elliptic))
        .collect();
    let report = run_checks(cfg, &quick).render();
    let cx = cfg.complex()?;
    let mut rng = check_rng(cfg, 71);
    let pt = PhasePointR {
        a: Connection::random(&cx, cfg.rank, cfg.amplitude, &mut rng),
        p: Cochain::random(&cx, 1, cfg.rank, cfg.amplitude, &mut rng),
    };
    let (end, rec) = evolve_r(&cx, &pt, cfg.dt, 20, 1)?;
    let bytes = FieldSnapshot::new(&cx, end.a.into_cochain()).to_bytes();
    Ok((report, rec.to_csv(), bytes))
}

pub fn c15_determinism(cfg: &RunConfig) -> Result<Vec<Measurement>> {
    let first = outputs(cfg)?;
    let parallel = RunConfig { jobs: 3, ..cfg.clone() };
    let second = outputs(&parallel)?;
    let differ = |same: bool| if same { 0.0 } else { 1.0 };
    Ok(vec![
        Measurement::at_most("report bytes differ between runs (1 and 3 jobs)", differ(first.0 == second.0), 0.0),
        Measurement::at_most("trajectory CSV bytes differ between runs", differ(first.1 == second.1), 0.0),
        Measurement::at_most("snapshot bytes differ between runs", differ(first.2 == second.2), 0.0),
    ])
}
