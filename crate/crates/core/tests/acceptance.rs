//! Runs the nine acceptance criteria and prints one verdict line each;
//! exits nonzero when any criterion fails.

use std::process::ExitCode;

use hkfun::verify;

fn main() -> ExitCode {
    let mut failed = 0;
    let mut reports = Vec::new();
    for (i, name) in verify::suite().into_iter().enumerate() {
        let line = match verify::run(name) {
            Ok(report) => {
                let verdict = if report.passed { "PASS" } else { "FAIL" };
                failed += usize::from(!report.passed);
                let line = format!("criterion {} {name}: {verdict} ({:.1}s)", i + 1, report.seconds);
                reports.push(report);
                line
            }
            Err(e) => {
                failed += 1;
                format!("criterion {} {name}: FAIL (error: {e})", i + 1)
            }
        };
        println!("{line}");
    }
    println!();
    for report in &reports {
        println!("{report}");
    }
    println!("\n{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
