//! The verification suite: a fixed catalogue of checks, each producing
//! measured residuals against bounds, rendered as a deterministic table.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::checks;
use super::config::RunConfig;
use crate::error::Result;

/// Acceptance bound attached to a measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Within(f64, f64),
    /// Reported only; never fails.
    Report,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub bound: Bound,
}

impl Measurement {
    pub fn at_most(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Measurement { label: label.into(), value, bound: Bound::AtMost(limit) }
    }

    pub fn at_least(label: impl Into<String>, value: f64, limit: f64) -> Self {
        Measurement { label: label.into(), value, bound: Bound::AtLeast(limit) }
    }

    pub fn within(label: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Measurement { label: label.into(), value, bound: Bound::Within(lo, hi) }
    }

    pub fn report(label: impl Into<String>, value: f64) -> Self {
        Measurement { label: label.into(), value, bound: Bound::Report }
    }

    /// NaN never passes a numeric bound.
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost(l) => self.value <= l,
            Bound::AtLeast(l) => self.value >= l,
            Bound::Within(lo, hi) => self.value >= lo && self.value <= hi,
            Bound::Report => true,
        }
    }

    fn bound_text(&self) -> String {
        match self.bound {
            Bound::AtMost(l) => format!("<= {l:.1e}"),
            Bound::AtLeast(l) => format!(">= {l:.1e}"),
            Bound::Within(lo, hi) => format!("in [{lo}, {hi}]"),
            Bound::Report => "reported".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Complex,
    Algebra,
    Gauge,
    Elliptic,
    Symplectic,
    Clebsch,
    Dynamics,
    Harness,
}

impl Group {
    fn enabled(self, cfg: &RunConfig) -> bool {
        let s = &cfg.suite;
        match self {
            Group::Complex => s.complex,
            Group::Algebra => s.algebra,
            Group::Gauge => s.gauge,
            Group::Elliptic => s.elliptic,
            Group::Symplectic => s.symplectic,
            Group::Clebsch => s.clebsch,
            Group::Dynamics => s.dynamics,
            Group::Harness => s.harness,
        }
    }
}

pub type CheckFn = fn(&RunConfig) -> Result<Vec<Measurement>>;

/// One entry of the catalogue.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub group: Group,
    pub title: &'static str,
    pub run: CheckFn,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub title: &'static str,
    pub measurements: Vec<Measurement>,
    /// Set when the check could not complete.
    pub error: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.measurements.is_empty() && self.measurements.iter().all(Measurement::passed)
    }

    /// One-line summary, e.g. `PASS C03 adjointness of the covariant derivative`.
    pub fn summary(&self) -> String {
        format!("{} {} {}", if self.passed() { "PASS" } else { "FAIL" }, self.id, self.title)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.summary()).unwrap();
        if let Some(e) = &self.error {
            writeln!(s, "      error: {e}").unwrap();
        }
        for m in &self.measurements {
            let mark = if !m.passed() { "!" } else { " " };
            writeln!(s, "    {mark} {:<58} {:>11.3e}  {}", m.label, m.value, m.bound_text()).unwrap();
        }
        s
    }
}

/// Runs one check, converting errors and panics into a failed outcome.
pub fn run_check(check: &Check, cfg: &RunConfig) -> CheckOutcome {
    let result = catch_unwind(AssertUnwindSafe(|| (check.run)(cfg)));
    let (measurements, error) = match result {
        Ok(Ok(m)) => (m, None),
        Ok(Err(e)) => (Vec::new(), Some(e.to_string())),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (Vec::new(), Some(format!("panicked: {msg}")))
        }
    };
    CheckOutcome { id: check.id, title: check.title, measurements, error }
}

pub fn find_check(id: &str) -> Option<Check> {
    catalogue().into_iter().find(|c| c.id == id)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub header: String,
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn render(&self) -> String {
        let mut s = self.header.clone();
        for o in &self.outcomes {
            s.push_str(&o.render());
        }
        let ok = self.outcomes.iter().filter(|o| o.passed()).count();
        writeln!(s, "summary: {ok}/{} checks passed", self.outcomes.len()).unwrap();
        s
    }
}

/// Runs every enabled check with `cfg.jobs` worker threads. Outcomes are
/// reported in catalogue order regardless of completion order.
pub fn run_suite(cfg: &RunConfig) -> SuiteReport {
    let checks: Vec<Check> = catalogue().into_iter().filter(|c| c.group.enabled(cfg)).collect();
    run_checks(cfg, &checks)
}

pub fn run_checks(cfg: &RunConfig, checks: &[Check]) -> SuiteReport {
    let header = format!(
        "verify: lattice {}x{}x{} h={} su({}) seed={} cg.tol={:e}\n",
        cfg.dims[0], cfg.dims[1], cfg.dims[2], cfg.h, cfg.rank, cfg.seed, cfg.cg_tol
    );
    let slots: Vec<Mutex<Option<CheckOutcome>>> = checks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        let Some(check) = checks.get(i) else { break };
        let outcome = run_check(check, cfg);
        *slots[i].lock().expect("slot lock") = Some(outcome);
    };
    let jobs = cfg.jobs.clamp(1, checks.len().max(1));
    if jobs == 1 {
        worker();
    } else {
        thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(worker);
            }
        });
    }
    let outcomes = slots.into_iter().map(|m| m.into_inner().expect("slot lock").expect("every check ran")).collect();
    SuiteReport { header, outcomes }
}

/// Seeded generator for a check, derived from the master seed and a salt.
pub fn check_rng(cfg: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// The full catalogue in report order. Identifiers `C01`..`C15` are the
/// acceptance criteria; the rest are per-module invariants.
pub fn catalogue() -> Vec<Check> {
    use checks::*;
    use Group::*;
    let c = |id, group, title, run: CheckFn| Check { id, group, title, run };
    vec![
        c("C01", Complex, "coboundary squares to zero", complex::c01_exactness),
        c("C02", Complex, "cup product Leibniz rule", complex::c02_leibniz),
        c("complex.hodge", Complex, "Hodge star involution, isometry, orientation", complex::hodge),
        c("complex.gram", Complex, "inner product Gram matrix diagonal and positive", complex::gram),
        c("complex.closure", Complex, "operators preserve su(n)", complex::closure),
        c("complex.pairing", Complex, "integration and pairing", complex::pairing),
        c("algebra.bracket", Algebra, "commutator bilinear, antisymmetric, Jacobi", algebra::bracket),
        c("algebra.ad_invariance", Algebra, "ad-invariance of the trace form", algebra::ad_invariance),
        c("algebra.group", Algebra, "exponential lands in SU(n)", algebra::group),
        c("C03", Gauge, "adjointness of the covariant derivative", gauge::c03_adjointness),
        c("gauge.dd", Gauge, "covariant derivative squared against curvature", gauge::dd),
        c("gauge.affine", Gauge, "curvature linearisation", gauge::affine),
        c("gauge.flow_energy", Gauge, "gauge flow preserves field energy at A = 0", gauge::flow_energy),
        c("C04", Elliptic, "Green operator identities", elliptic::c04_green),
        c("elliptic.irreducibility", Elliptic, "kernel check of the degree-0 Laplacian", elliptic::irreducibility),
        c("elliptic.decompositions", Elliptic, "orthogonal decompositions", elliptic::decompositions),
        c("symplectic.forms", Symplectic, "two-forms bilinear and antisymmetric", symplectic::forms),
        c("C05", Symplectic, "moment map conditions", symplectic::c05_moment),
        c("C06", Symplectic, "Omega is the exterior derivative of Theta", symplectic::c06_exterior),
        c("symplectic.equivariance", Symplectic, "momentum equivariance under global gauge", symplectic::equivariance),
        c("symplectic.variations", Symplectic, "variational derivatives of observables", symplectic::variations),
        c("C09", Symplectic, "Poisson structure on T", symplectic::c09_poisson),
        c("C10", Symplectic, "Hodge transport between R and S", symplectic::c10_hodge_transport),
        c("symplectic.rank", Symplectic, "rank of Omega", symplectic::rank),
        c("C07", Clebsch, "gamma pulls Omega back to sigma", clebsch::c07_gamma),
        c("C08", Clebsch, "bracket correspondence", clebsch::c08_brackets),
        c("clebsch.round_trip", Clebsch, "gamma inverse round trip", clebsch::round_trip),
        c("clebsch.projection", Clebsch, "projection onto R0", clebsch::projection),
        c("clebsch.pullback", Clebsch, "pullback Hamiltonian vector fields", clebsch::pullback),
        c("C13", Clebsch, "conserved charge", clebsch::c13_charge),
        c("C11", Dynamics, "leapfrog on R", dynamics::c11_leapfrog),
        c("C12", Dynamics, "midpoint Maxwell flow at flat A", dynamics::c12_midpoint),
        c("dynamics.moment", Dynamics, "momentum constraint along R", dynamics::moment),
        c("dynamics.reversibility", Dynamics, "reversibility of the Maxwell flow", dynamics::reversibility),
        c("dynamics.maxwell_image", Dynamics, "Maxwell equations along the image of R", dynamics::maxwell_image),
        c("C14", Dynamics, "Bianchi defect under refinement", dynamics::c14_bianchi),
        c("harness.snapshot", Harness, "snapshot round trip", harness::snapshot),
        c("C15", Harness, "determinism of reports and outputs", harness::c15_determinism),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_ids_are_unique_and_cover_criteria() {
        let cat = catalogue();
        let mut ids: Vec<_> = cat.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        for i in 1..=15 {
            assert!(find_check(&format!("C{i:02}")).is_some(), "C{i:02}");
        }
    }

    #[test]
    fn bounds() {
        assert!(Measurement::at_most("x", 1.0, 1.0).passed());
        assert!(!Measurement::at_most("x", f64::NAN, 1.0).passed());
        assert!(!Measurement::within("x", 3.0, 3.5, 4.5).passed());
        assert!(Measurement::at_least("x", 2.0, 1.8).passed());
        assert!(Measurement::report("x", f64::NAN).passed());
    }

    #[test]
    fn errors_and_panics_fail() {
        let cfg = RunConfig::default();
        let bad = Check { id: "t", group: Group::Harness, title: "t", run: |_| panic!("boom") };
        let o = run_check(&bad, &cfg);
        assert!(!o.passed());
        assert!(o.error.unwrap().contains("boom"));
        let empty = Check { id: "t", group: Group::Harness, title: "t", run: |_| Ok(vec![]) };
        assert!(!run_check(&empty, &cfg).passed());
    }
}
