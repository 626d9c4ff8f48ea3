//! Runs every acceptance criterion at full size and prints one line each.
//! Exits nonzero if any criterion fails; failing instances are archived
//! under the target directory.

use std::process::ExitCode;

use snc_core::suite::{run_criterion, Level, SuiteOptions, CRITERIA};

fn main() -> ExitCode {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let opts = SuiteOptions {
        level: Level::Full,
        threads,
        archive_dir: Some(std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("counterexamples")),
    };
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &opts);
        println!("{}", r.line());
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
