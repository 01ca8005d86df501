//! Runs every acceptance criterion and prints one line each.

use std::process::ExitCode;

use valgebra::acceptance::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let results = run_all(DEFAULT_SEED);
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() && results.len() == 12 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
