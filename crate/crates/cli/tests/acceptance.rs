//! One line per acceptance criterion, each at its exact tolerance. Runs
//! without the test harness so the table is always printed.

use std::process::ExitCode;

use multilog::suite::{self, CRITERIA};

fn main() -> ExitCode {
    let ids: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
    let outcomes = suite::run_all(&ids);
    println!("\nacceptance criteria");
    for o in &outcomes {
        println!("{}  [{:.2}s]", o.line(), o.seconds);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {} failed\n", outcomes.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
