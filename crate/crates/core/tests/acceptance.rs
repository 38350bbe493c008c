//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;

use eulerlab::conformance::CRITERIA;

fn main() -> ExitCode {
    let mut failed = 0;
    for check in CRITERIA {
        let outcome = check();
        println!("{outcome}");
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
