//! The nine acceptance criteria, each under its own time limit. Runs without
//! the libtest harness so every PASS/FAIL line is printed.

use std::process::ExitCode;

use qsocle_core::verify;

fn main() -> ExitCode {
    let outcomes = [
        verify::criterion_1,
        verify::criterion_2,
        verify::criterion_3,
        verify::criterion_4,
        verify::criterion_5,
        verify::criterion_6,
        verify::criterion_7,
        verify::criterion_8,
        verify::criterion_9,
    ]
    .map(|run| {
        let outcome = run();
        println!("{}", outcome.line());
        outcome.passed
    });
    let failed = outcomes.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
