//! Acceptance criteria, one line per criterion. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use golod_forge::corpus::{criterion, TITLES};

/// Wall-clock ceilings; criteria without one get `None`.
const LIMITS: [Option<u64>; 10] = [Some(1), Some(30), Some(60), Some(300), Some(300), None, None, None, None, None];

fn main() -> ExitCode {
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for id in 1..=TITLES.len() {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let rep = criterion(id);
        let took = start.elapsed();
        let in_time = LIMITS[id - 1].is_none_or(|s| took <= Duration::from_secs(s));
        let pass = rep.passed && in_time;
        if !pass {
            failed += 1;
        }
        let limit = LIMITS[id - 1].map(|s| format!(" (limit {s} s)")).unwrap_or_default();
        println!(
            "criterion {id:>2} [PRIMARY] {}: {} in {:.2} s{limit} -- {}",
            rep.title,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            rep.detail
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
