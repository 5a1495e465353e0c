//! Component growth as a dimension probe: on the line the one-step
//! relation connects everything and components grow with the window; on
//! the interval space components are the intervals themselves, yet the
//! longest injective path is capped by the longest interval — no copy of
//! the line embeds.

use std::collections::BTreeSet;

use cptk::coarse::{make_window, SpaceSpec};

fn main() -> cptk::Result<()> {
    for radius in [10u64, 20, 40] {
        let line = make_window(SpaceSpec::Line, radius)?;
        let report = line.asdim_zero_probe()?;
        let path = line.longest_injective_path(None, &BTreeSet::new(), 1_000_000)?;
        println!(
            "line radius {radius:>2}: max component {:>2} (vs {:>2} at radius {}), verdict {:?}, longest path {}",
            report.max_component,
            report.comparison_max_component,
            report.comparison_radius,
            report.verdict,
            path.path.len()
        );
    }
    println!();
    for k in [4u32, 6, 10] {
        let total = u64::from(k) * (u64::from(k) + 1) / 2;
        let window = make_window(SpaceSpec::IntervalSpace { k }, total)?;
        let report = window.asdim_zero_probe()?;
        let path = window.longest_injective_path(None, &BTreeSet::new(), 1_000_000)?;
        println!(
            "interval k = {k:>2}: components {:?}, stabilizes at E^{}, longest path {}",
            report.component_sizes,
            report.stabilization_step,
            path.path.len()
        );
    }
    Ok(())
}
