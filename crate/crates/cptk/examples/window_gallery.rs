//! Tour of the window gallery: build one window per space, show its
//! size, interior, and one-step expansion at the basepoint.

use std::collections::BTreeSet;

use cptk::coarse::{make_window, SpaceSpec};

fn main() -> cptk::Result<()> {
    let specs = [
        (SpaceSpec::Line, 10),
        (SpaceSpec::Grid, 6),
        (SpaceSpec::Tree, 4),
        (SpaceSpec::IntervalSpace { k: 4 }, 10),
        (SpaceSpec::Schreier { n: 2 }, 6),
        (SpaceSpec::Halfline, 10),
    ];
    for (spec, radius) in specs {
        let w = make_window(spec, radius)?;
        let base: BTreeSet<usize> = [w.basepoint()].into();
        let ratio = w.expansion_ratio(&base)?;
        println!(
            "{:14} radius {radius:>2}: {:>4} points, {:>4} interior, |E[x0]|/1 = {}",
            spec.name(),
            w.len(),
            w.interior_size(),
            ratio,
        );
    }

    // the small tree window as DOT, ready for graphviz
    let tree = make_window(SpaceSpec::Tree, 2)?;
    println!("\n{}", cptk::dot::window_dot(&tree));
    Ok(())
}
