//! Runs every acceptance criterion and prints one line per criterion.

use fbt::suite::run;
use fbt::RunConfig;

fn main() {
    let rc = RunConfig::default();
    println!("running {} acceptance criteria (seed {})", fbt::suite::CRITERIA.len(), rc.seed);
    let results = run(&rc, &[], |r| println!("{}", r.line()));
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", results.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
