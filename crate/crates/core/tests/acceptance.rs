//! Runs every acceptance criterion with exact comparisons and prints one
//! PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use defring::acceptance::{run, CRITERIA};

fn main() -> ExitCode {
    let only: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for criterion in CRITERIA.filter(|c| only.is_none_or(|o| o == *c)) {
        let start = Instant::now();
        match run(criterion) {
            Ok(report) => {
                println!("{} [{:.1}s]", report.summary_line(), start.elapsed().as_secs_f64());
                for item in report.items.iter().filter(|i| !i.passed) {
                    println!("    failing item: {}: expected {}, got {}", item.name, item.expected, item.actual);
                }
                failed += !report.passed as usize;
            }
            Err(e) => {
                println!("criterion {criterion}: FAIL (error: {e})");
                failed += 1;
            }
        }
    }
    println!("acceptance: {failed} criteria failing");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
