//! Acceptance run: the ten criteria at full size, one line each.

use std::process::ExitCode;

use cocycle_core::selftest::{run_all, SuiteConfig};

const SEED: u64 = 20_240_601;

fn main() -> ExitCode {
    let outcomes = run_all(&SuiteConfig::full(SEED));
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
