use std::process::ExitCode;
use std::time::Instant;

use twistq_core::suite::{run, Catalog, Status, DEFAULT_CATALOG};

fn main() -> ExitCode {
    let catalog = Catalog::parse(DEFAULT_CATALOG).expect("bundled catalog parses");
    let start = Instant::now();
    let report = run(&catalog);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    for o in &report.outcomes {
        println!("{} {:>2} {}: {}", o.status, o.id, o.title, o.detail);
    }
    let failed = report.outcomes.iter().filter(|o| o.status == Status::Fail).count();
    println!("{} of {} criteria pass ({:.1}s)", report.outcomes.len() - failed, report.outcomes.len(), start.elapsed().as_secs_f64());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
