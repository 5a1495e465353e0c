//! Sampled isoperimetry on the 4-regular tree: every connected set F
//! satisfies |E[F]| ≥ 3|F|; connected sets attain |E[F]| = 3|F| + 2.

use std::collections::BTreeSet;

use cptk::coarse::{make_window, SpaceSpec};
use cptk::forest::tree_isoperimetry_check;

fn main() -> cptk::Result<()> {
    let window = make_window(SpaceSpec::Tree, 6)?;
    for seed in [1, 7, 42] {
        let report = tree_isoperimetry_check(&window, 200, seed)?;
        println!(
            "seed {seed:>2}: min |E[F]|/|F| = {}/{} over {} samples (worst |F| = {})",
            report.min_ratio.0,
            report.min_ratio.1,
            report.samples,
            report.worst_set.len()
        );
    }

    // exact counts for nested balls around the basepoint
    println!("\nball expansion (exact):");
    for n in 0..4 {
        let ball = window
            .neighborhood(n, &BTreeSet::from([window.basepoint()]))
            .points;
        let ratio = window.expansion_ratio(&ball)?;
        println!("  |ball({n})| = {:>3}: ratio {}", ball.len(), ratio);
    }
    Ok(())
}
