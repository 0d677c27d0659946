//! One pass/fail line per acceptance criterion.

use std::process::ExitCode;
use std::time::Duration;

use loopdiag::suites::{run_suite, SuiteOptions};

struct Criterion {
    number: u8,
    title: &'static str,
    suites: &'static [&'static str],
    /// Wall-clock budget; all comparisons inside the suites are exact.
    budget: Duration,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "d² = 0 exhaustive and random", suites: &["dsquare"], budget: Duration::from_secs(120) },
    Criterion { number: 2, title: "composition is a chain map, associative, unital", suites: &["chainmap"], budget: Duration::from_secs(300) },
    Criterion { number: 3, title: "mu∘Delta = d(D)", suites: &["mu-delta"], budget: Duration::from_secs(1) },
    Criterion { number: 4, title: "pr∘(l2⊔l3) and shuffle counts", suites: &["shuffle"], budget: Duration::from_secs(60) },
    Criterion { number: 5, title: "J(id), J(pr), J(B) against oracles", suites: &["hochschild"], budget: Duration::from_secs(120) },
    Criterion { number: 6, title: "constant splitting and composition through s̄", suites: &["splitting"], budget: Duration::from_secs(120) },
    Criterion { number: 7, title: "cacti Betti numbers", suites: &["cacti-betti"], budget: Duration::from_secs(120) },
    Criterion { number: 8, title: "null-homotopy of J(mu)J(Delta)", suites: &["null-homotopy"], budget: Duration::from_secs(120) },
    Criterion { number: 9, title: "Frobenius axioms", suites: &["frobenius-axioms"], budget: Duration::from_secs(10) },
    Criterion { number: 10, title: "build_tcom example and cycles", suites: &["tcom"], budget: Duration::from_secs(60) },
];

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut all = true;
    for c in CRITERIA {
        let mut ok = true;
        let mut elapsed = Duration::ZERO;
        let mut notes = Vec::new();
        for name in c.suites {
            match run_suite(name, &opts) {
                Ok(rep) => {
                    elapsed += rep.elapsed;
                    ok &= rep.passed();
                    for ch in &rep.checks {
                        notes.push(format!("{}{}: {}", if ch.passed { "" } else { "FAILED " }, ch.name, ch.detail));
                    }
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("{name}: {e}"));
                }
            }
        }
        let in_budget = elapsed <= c.budget;
        if !in_budget {
            notes.push(format!("over budget {:?}", c.budget));
        }
        let pass = ok && in_budget;
        all &= pass;
        println!("criterion {:>2} {}: {} [{:.2?}] {}", c.number, if pass { "PASS" } else { "FAIL" }, c.title, elapsed, notes.join("; "));
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
