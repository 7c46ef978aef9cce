//! Runs every acceptance criterion at full size and prints one line each.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::thread;

use octoma::random::DEFAULT_SEED;
use octoma::verify::{run_suite, Backend, SuiteResult};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
    /// Wall-clock limit in seconds over all suites of the criterion.
    limit: Option<f64>,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "syzygy module of the ten quadrics equals the printed matrix", suites: &["syzygy"], limit: Some(600.0) },
    Criterion { id: 2, title: "Hessians are closed currents (500 random u, degree <= 5)", suites: &["closed_current"], limit: None },
    Criterion { id: 3, title: "octonion algebra identities (10^4 exact instances)", suites: &["octonion"], limit: None },
    Criterion { id: 4, title: "theta o j = Id and the line averaging identity (10^3 exact)", suites: &["lines"], limit: None },
    Criterion { id: 5, title: "equivariance: exact infinitesimal (10^3) and group words (100, 1e-7)", suites: &["equivariance", "group"], limit: None },
    Criterion { id: 6, title: "mixed determinant identities and positivity (10^3 exact)", suites: &["mixed_det"], limit: None },
    Criterion { id: 7, title: "divergence form of the linearized operator (200 random u, degree <= 4)", suites: &["divergence"], limit: None },
    Criterion { id: 8, title: "integration by parts on the torus (100 triples, 1e-10 relative)", suites: &["ibp"], limit: None },
    Criterion { id: 9, title: "Monge-Ampere manufactured solutions, zero forcing, uniqueness", suites: &["monge_ampere"], limit: Some(60.0) },
    Criterion { id: 10, title: "normalization constant", suites: &["normalization"], limit: None },
    Criterion { id: 11, title: "inequality spot checks (1e-8)", suites: &["inequalities"], limit: None },
];

fn main() -> ExitCode {
    let results: Vec<Vec<SuiteResult>> = thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|c| {
                s.spawn(move || {
                    c.suites
                        .iter()
                        .map(|name| run_suite(name, DEFAULT_SEED, None, Backend::Exact).expect("known suite"))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let mut failed = 0;
    for (c, rs) in CRITERIA.iter().zip(&results) {
        let secs: f64 = rs.iter().map(|r| r.seconds).sum();
        let in_time = c.limit.is_none_or(|l| secs < l);
        let pass = in_time && rs.iter().all(SuiteResult::passed);
        if !pass {
            failed += 1;
        }
        let cases: usize = rs.iter().map(|r| r.cases).sum();
        let checks: usize = rs.iter().map(|r| r.checks).sum();
        let max_err = rs.iter().map(|r| r.max_error).fold(0.0, f64::max);
        println!(
            "criterion {:>2} {}: {} ({cases} cases, {checks} checks, max error {max_err:.2e}, {secs:.2}s)",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title
        );
        for r in rs.iter().filter(|r| !r.passed()) {
            println!("    {}: {} failures, first: {}", r.name, r.failures, r.first_failure.as_deref().unwrap_or("-"));
        }
        if !in_time {
            println!("    over the {:.0}s limit", c.limit.unwrap_or_default());
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
