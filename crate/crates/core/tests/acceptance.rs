//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use foldtile_core::selftest::{run_all, Context};

fn main() -> ExitCode {
    let start = Instant::now();
    let ctx = match Context::compute() {
        Ok(c) => c,
        Err(e) => {
            println!("[FAIL] pipeline: {e}");
            return ExitCode::FAILURE;
        }
    };
    let outcomes = run_all(&ctx);
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed ({:.1}s)",
        outcomes.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
