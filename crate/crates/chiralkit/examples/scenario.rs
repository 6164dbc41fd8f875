//! Drives the scenario runner through the library API, on the bundled law
//! sweep. The `chiralkit run` subcommand is a thin wrapper over the same
//! calls.

use std::path::Path;

use chiralkit::scenario::{load_scenario, run_scenario, RunOptions};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/laws_current.toml");
    let scenario = load_scenario(&path).expect("bundled scenario parses");
    println!("running {} (seed {})", path.display(), scenario.seed);
    let report = run_scenario(&scenario, RunOptions::default()).expect("directives resolve");
    // print only the failures and the summary; the full stream is what the
    // binary emits
    for record in report.failures() {
        println!("{record}");
    }
    println!("{}", report.summary());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
