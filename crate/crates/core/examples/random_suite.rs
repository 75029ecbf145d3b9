//! The randomized verification suite: 50 generated models plus the edge cases,
//! every invariant per model, and the wall time.

use caralab::suite::{run_suite, SuiteConfig};

fn main() -> caralab::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let start = std::time::Instant::now();
    let summary = run_suite(&SuiteConfig {
        seed,
        ..SuiteConfig::default()
    })?;
    for o in summary.outcomes.iter().chain(&summary.edge_cases) {
        let failed: Vec<&str> = o.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        println!(
            "{:<28} {:<14} dim {} {:<16} defect {:.3e}  alpha {:.6}  {}",
            o.label,
            format!("{:?}", o.kind),
            o.dim,
            o.classification.map(|c| format!("{c:?}")).unwrap_or_default(),
            o.linearity_defect,
            o.alpha,
            if o.pass { "pass".to_string() } else { format!("FAIL {failed:?} {:?}", o.error) }
        );
    }
    println!(
        "seed {seed}: {}/{} passed, edge cases {}/{}, {} disagreements, {:.2?}",
        summary.passed,
        summary.count,
        summary.edge_passed,
        summary.edge_passed + summary.edge_failed,
        summary.disagreements,
        start.elapsed()
    );
    Ok(())
}
