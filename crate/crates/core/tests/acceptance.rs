//! Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cscc::complex::{bipartition, MIN_TRUNCATED_EXTENT};
use cscc::css::assemble;
use cscc::verify::{self, VerificationReport};
use cscc::{build_cube, build_truncated_cube, validate, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const CROSSCHECK_SEED: u64 = 1;
const CROSSCHECK_TRIALS: usize = 100;
const PAULI_SEED: u64 = 2024;
const PAULI_CASES: usize = 1000;
const MAX_EXTENT: usize = 4;

fn require(report: &VerificationReport, names: &[&str]) -> Outcome {
    let mut details = Vec::new();
    let mut failed = false;
    for name in names {
        match report.check_named(name) {
            Some(c) => {
                failed |= !c.passed;
                details.push(format!("{}: {}", c.name, c.detail));
            }
            None => {
                failed = true;
                details.push(format!("{name}: not evaluated"));
            }
        }
    }
    if failed {
        Err(details.join("; "))
    } else {
        Ok(details.join("; "))
    }
}

fn logical_counts() -> Outcome {
    let cube = assemble(&build_cube([2, 2, 2]).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let t = build_truncated_cube(MIN_TRUNCATED_EXTENT).map_err(|e| e.to_string())?;
    let truncated = assemble(&t)
        .and_then(|c| c.project_z(&t.truncation_region))
        .map_err(|e| e.to_string())?;
    let msg = format!("cube k = {}, truncated cube k = {}", cube.k(), truncated.k());
    if cube.k() == 3 && truncated.k() == 2 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn codespace(report: &VerificationReport) -> Outcome {
    require(report, &[verify::CHECK_PRESERVED])
}

fn cs_claim(report: &VerificationReport) -> Outcome {
    require(report, &[verify::CHECK_CS])?;
    let text = report.classification_text.clone().unwrap_or_default();
    if text == "CS on (A,B)" || text == "CS† on (A,B)" {
        Ok(text)
    } else {
        Err(format!("classification {text}"))
    }
}

fn theta(report: &VerificationReport) -> Outcome {
    require(report, &[verify::CHECK_THETA])
}

fn phi_eta(report: &VerificationReport) -> Outcome {
    require(report, &[verify::CHECK_PHI, verify::CHECK_ETA])
}

fn cross_path(report: &VerificationReport) -> Outcome {
    require(report, &[verify::CHECK_CROSS_PATH])
}

fn tetrahedral() -> Outcome {
    let start = Instant::now();
    let report = verify::run_fixture("tetrahedral15").map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut out = require(
        &report,
        &[verify::CHECK_PRESERVED, verify::CHECK_T, verify::CHECK_ORACLE],
    )?;
    out += &format!("; {:?}", report.classification_text);
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("{out}; took {elapsed:?}"));
    }
    Ok(out)
}

fn engine_oracle() -> Outcome {
    let s = verify::oracle_crosscheck(CROSSCHECK_SEED, CROSSCHECK_TRIALS)
        .map_err(|e| e.to_string())?;
    let msg = format!(
        "{}/{} agree ({} preserved)",
        s.agree, s.trials, s.preserved
    );
    if s.all_agree() {
        Ok(msg)
    } else {
        Err(format!("{msg}; mismatches {:?}", s.mismatches))
    }
}

fn structural() -> Outcome {
    let mut built = 0;
    let mut rejected = 0;
    for x in 1..=MAX_EXTENT {
        for y in 1..=MAX_EXTENT {
            for z in 1..=MAX_EXTENT {
                let e = [x, y, z];
                let mut complexes = vec![build_cube(e).map_err(|err| format!("{e:?}: {err}"))?];
                match build_truncated_cube(e) {
                    Ok(c) => complexes.push(c),
                    Err(Error::ExtentTooSmall { .. }) => rejected += 1,
                    Err(err) => return Err(format!("truncated {e:?}: {err}")),
                }
                for c in &complexes {
                    let report = validate(c);
                    if !report.all_passed() {
                        return Err(format!("{e:?}: {report:?}"));
                    }
                    let code = assemble(c).map_err(|err| format!("{e:?}: {err}"))?;
                    if let Some((i, j)) = code.hx.orthogonal_to(&code.hz) {
                        return Err(format!("{e:?}: Hx row {i} and Hz row {j} overlap oddly"));
                    }
                    if !c.truncation_region.is_empty() {
                        let p = code
                            .project_z(&c.truncation_region)
                            .map_err(|err| format!("{e:?}: {err}"))?;
                        if let Some((i, j)) = p.hx.orthogonal_to(&p.hz) {
                            return Err(format!("{e:?} projected: rows {i}, {j}"));
                        }
                    }
                    let b = bipartition(c).map_err(|err| format!("{e:?}: {err}"))?;
                    if !b.separates(&c.edges) {
                        return Err(format!("{e:?}: bipartition does not separate edges"));
                    }
                    built += 1;
                }
            }
        }
    }
    Ok(format!(
        "{built} complexes valid, commuting and bipartite; {rejected} truncated extents rejected as too small"
    ))
}

fn pauli_oracle() -> Outcome {
    common::s_conjugation_identities()?;
    let mut rng = ChaCha8Rng::seed_from_u64(PAULI_SEED);
    for i in 0..PAULI_CASES {
        common::pauli_oracle_case(&mut rng).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(format!("{PAULI_CASES} random cases and both S identities agree"))
}

fn main() -> ExitCode {
    let report = verify::verify_cs_protocol(MIN_TRUNCATED_EXTENT);
    let protocol = |f: fn(&VerificationReport) -> Outcome| -> Outcome {
        match &report {
            Ok(r) => f(r),
            Err(e) => Err(e.to_string()),
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("logical qubit counts", logical_counts()),
        ("codespace preservation", protocol(codespace)),
        ("logical CS", protocol(cs_claim)),
        ("theta", protocol(theta)),
        ("phi and eta", protocol(phi_eta)),
        ("cross-path consistency", protocol(cross_path)),
        ("tetrahedral T", tetrahedral()),
        ("engine-oracle equivalence", engine_oracle()),
        ("structural validators", structural()),
        ("Pauli matrix oracle", pauli_oracle()),
    ];
    let mut all = true;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                all = false;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
