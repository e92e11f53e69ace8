//! Headline checks, one PASS/FAIL line each. Exits non-zero if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};

use ymlab::harness::{find_check, run_check, RunConfig};

const CRITERIA: [&str; 15] =
    ["C01", "C02", "C03", "C04", "C05", "C06", "C07", "C08", "C09", "C10", "C11", "C12", "C13", "C14", "C15"];

fn verify_stdout(dir: &Path, jobs: usize) -> Option<Vec<u8>> {
    let out = Command::new(env!("CARGO_BIN_EXE_ymlab"))
        .arg("--config")
        .arg(dir.join("run.cfg"))
        .arg("--jobs")
        .arg(jobs.to_string())
        .arg("verify")
        .output()
        .ok()?;
    matches!(out.status.code(), Some(0 | 1)).then_some(out.stdout)
}

/// Two `verify` runs of the binary with one config file, at different job
/// counts, must print identical bytes.
fn binary_reports_identical() -> bool {
    let Ok(dir) = tempfile::tempdir() else { return false };
    let cfg = "seed = 7\nsuite.symplectic = false\nsuite.clebsch = false\nsuite.dynamics = false\n";
    if std::fs::write(dir.path().join("run.cfg"), cfg).is_err() {
        return false;
    }
    match (verify_stdout(dir.path(), 1), verify_stdout(dir.path(), 4)) {
        (Some(a), Some(b)) => !a.is_empty() && a == b,
        _ => false,
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let mut failed = 0;
    for id in CRITERIA {
        let check = find_check(id).unwrap_or_else(|| panic!("{id} is not catalogued"));
        let outcome = run_check(&check, &cfg);
        let mut ok = outcome.passed();
        let mut title = outcome.title.to_string();
        if id == "C15" {
            let same = binary_reports_identical();
            ok &= same;
            title.push_str(if same { "; binary verify output identical" } else { "; binary verify output differs" });
        }
        println!("{} {id} {title}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            eprint!("{}", outcome.render());
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
