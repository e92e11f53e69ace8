use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ymlab::dynamics::{evolve_r, evolve_t};
use ymlab::elliptic::{decompose_cotangent, decompose_tangent};
use ymlab::gauge_fields::{Connection, PhasePointR, PhasePointT};
use ymlab::harness::{find_check, read_snapshot, run_check, run_suite, write_csv, write_snapshot, RunConfig, CONFIG_KEYS};
use ymlab::lattice_complex::{Cochain, CubicalComplex};
use ymlab::symplectic_core::{builtin_observables, poisson_t};
use ymlab::{Error, Result};

#[derive(Parser)]
#[command(name = "ymlab", version, about = "Lattice laboratory for Yang-Mills phase spaces on the 3-torus", after_help = CONFIG_KEYS)]
struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the configured output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the configured number of concurrent verify checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print only failures and summaries.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suite and print a pass/fail table.
    Verify,
    /// Integrate the Hamiltonian flow on R with leapfrog; writes a CSV log.
    EvolveR {
        /// Initial connection snapshot (random if absent).
        #[arg(long)]
        a: Option<PathBuf>,
        /// Initial momentum snapshot (random if absent).
        #[arg(long)]
        p: Option<PathBuf>,
    },
    /// Integrate the Maxwell flow on T at fixed A with implicit midpoint.
    EvolveT {
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        e: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
        /// Use the flat connection A = 0 when no connection is given.
        #[arg(long)]
        flat: bool,
    },
    /// Evaluate the Poisson bracket of two built-in observables.
    Bracket {
        /// Observable names: vortex, probe_e0, probe_b0, probe_e1, probe_b1.
        f: String,
        g: String,
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        e: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
    },
    /// Check that gamma pulls Omega back to sigma and that brackets correspond.
    ClebschCheck,
    /// Split a 1- or 2-cochain snapshot into its two orthogonal parts.
    Decompose {
        /// Snapshot to split.
        input: PathBuf,
        /// Connection snapshot (random if absent).
        #[arg(long)]
        a: Option<PathBuf>,
    },
}

fn load(path: &Path, cx: &CubicalComplex, degree: usize, rank: usize) -> Result<Cochain> {
    let snap = read_snapshot(path)?;
    let c = snap.cochain;
    if snap.dims != cx.dims() || c.degree() != degree || c.rank() != rank {
        return Err(Error::Validation {
            key: path.display().to_string(),
            msg: format!(
                "snapshot has shape {:?}, degree {}, rank {}; expected {:?}, degree {degree}, rank {rank}",
                snap.dims,
                c.degree(),
                c.rank(),
                cx.dims()
            ),
        });
    }
    Ok(c)
}

fn load_or(
    path: &Option<PathBuf>,
    cx: &CubicalComplex,
    degree: usize,
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Cochain> {
    let fresh = Cochain::random(cx, degree, cfg.rank, cfg.amplitude, rng);
    match path {
        Some(p) => load(p, cx, degree, cfg.rank),
        None => Ok(fresh),
    }
}

fn connection(path: &Option<PathBuf>, cx: &CubicalComplex, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Connection> {
    Connection::new(load_or(path, cx, 1, cfg, rng)?)
}

fn say(cfg_quiet: bool, text: &str) {
    if !cfg_quiet {
        println!("{text}");
    }
}

fn run(cli: Cli, cfg: RunConfig) -> Result<bool> {
    let quiet = cli.quiet;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cli.command {
        Command::Verify => {
            let report = run_suite(&cfg);
            if quiet {
                for o in report.outcomes.iter().filter(|o| !o.passed()) {
                    print!("{}", o.render());
                }
                let ok = report.outcomes.iter().filter(|o| o.passed()).count();
                println!("summary: {ok}/{} checks passed", report.outcomes.len());
            } else {
                print!("{}", report.render());
            }
            Ok(report.passed())
        }
        Command::EvolveR { a, p } => {
            let cx = cfg.complex()?;
            let a = connection(&a, &cx, &cfg, &mut rng)?;
            let p = load_or(&p, &cx, 1, &cfg, &mut rng)?;
            let (end, rec) = evolve_r(&cx, &PhasePointR::new(a, p)?, cfg.dt, cfg.steps, cfg.record_every)?;
            std::fs::create_dir_all(&cfg.out)?;
            let csv = cfg.out.join("evolve_r.csv");
            write_csv(&csv, &rec)?;
            write_snapshot(&cfg.out.join("final_a.yms"), &cx, end.a.as_cochain())?;
            write_snapshot(&cfg.out.join("final_p.yms"), &cx, &end.p)?;
            say(quiet, &format!("wrote {} ({} rows), relative energy drift {:.3e}", csv.display(), rec.rows.len(), rec.relative_energy_drift()));
            Ok(true)
        }
        Command::EvolveT { a, e, b, flat } => {
            let cx = cfg.complex()?;
            let a = if flat && a.is_none() { Connection::zero(&cx, cfg.rank) } else { connection(&a, &cx, &cfg, &mut rng)? };
            let e = load_or(&e, &cx, 1, &cfg, &mut rng)?;
            let b = load_or(&b, &cx, 2, &cfg, &mut rng)?;
            let (end, rec) = evolve_t(&cx, &PhasePointT::new(a, e, b)?, cfg.dt, cfg.steps, cfg.convention, cfg.record_every)?;
            std::fs::create_dir_all(&cfg.out)?;
            let csv = cfg.out.join("evolve_t.csv");
            write_csv(&csv, &rec)?;
            write_snapshot(&cfg.out.join("final_e.yms"), &cx, &end.e)?;
            write_snapshot(&cfg.out.join("final_b.yms"), &cx, &end.b)?;
            say(quiet, &format!("wrote {} ({} rows), relative energy drift {:.3e}", csv.display(), rec.rows.len(), rec.relative_energy_drift()));
            Ok(true)
        }
        Command::Bracket { f, g, a, e, b } => {
            let cx = cfg.complex()?;
            let a = connection(&a, &cx, &cfg, &mut rng)?;
            let e = load_or(&e, &cx, 1, &cfg, &mut rng)?;
            let b = load_or(&b, &cx, 2, &cfg, &mut rng)?;
            let pt = PhasePointT::new(a, e, b)?;
            let obs = builtin_observables(&cx, cfg.rank, 2, cfg.seed);
            let find = |name: &str| {
                obs.iter().find(|o| o.name == name).ok_or_else(|| Error::Validation {
                    key: name.into(),
                    msg: format!("unknown observable; known: {}", obs.iter().map(|o| o.name.as_str()).collect::<Vec<_>>().join(", ")),
                })
            };
            let value = poisson_t(&cx, find(&f)?, find(&g)?, &pt);
            println!("{{{f}, {g}}} = {value:e}");
            Ok(true)
        }
        Command::ClebschCheck => {
            let mut ok = true;
            for id in ["C07", "C08"] {
                let outcome = run_check(&find_check(id).expect("catalogued"), &cfg);
                ok &= outcome.passed();
                if quiet {
                    println!("{}", outcome.summary());
                } else {
                    print!("{}", outcome.render());
                }
            }
            Ok(ok)
        }
        Command::Decompose { input, a } => {
            let snap = read_snapshot(&input)?;
            let cx = snap.complex(cfg.h)?;
            let c = snap.cochain;
            let cfg = RunConfig { rank: c.rank(), dims: snap.dims, ..cfg };
            let a = connection(&a, &cx, &cfg, &mut rng)?;
            let s = cfg.cg();
            std::fs::create_dir_all(&cfg.out)?;
            let (first, second, names) = match c.degree() {
                1 => {
                    let (xi, y) = decompose_tangent(&cx, &a, &c, s)?;
                    (ymlab::gauge_fields::cov_d(&cx, &a, &xi)?, y, ["gradient.yms", "transverse.yms"])
                }
                2 => {
                    let (lambda, w) = decompose_cotangent(&cx, &a, &c, s)?;
                    (ymlab::gauge_fields::cov_d_star(&cx, &a, &lambda)?, w, ["coexact.yms", "closed.yms"])
                }
                k => return Err(Error::DegreeError(format!("decompose needs degree 1 or 2, got {k}"))),
            };
            for (part, name) in [(&first, names[0]), (&second, names[1])] {
                let path = cfg.out.join(name);
                write_snapshot(&path, &cx, part)?;
                say(quiet, &format!("wrote {} (norm {:.6e})", path.display(), cx.norm(part)));
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    };
    let mut cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ymlab: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.out = o.clone();
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if let Err(e) = cfg.validate() {
        eprintln!("ymlab: {e}");
        return ExitCode::from(2);
    }
    match run(cli, cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ymlab: {e}");
            ExitCode::from(1)
        }
    }
}
