//! Expansion witnesses on the integer line: for every θ > 1 some
//! interval F satisfies |E[F]| ≤ θ|F|, while on the 4-regular tree no
//! set does for θ < 3 — the search reports exactly what it exhausted.

use cptk::coarse::{make_window, parse_ratio, SearchBudget, SpaceSpec};

fn main() -> cptk::Result<()> {
    let line = make_window(SpaceSpec::Line, 500)?;
    let budget = SearchBudget::default();
    for theta in ["3/2", "6/5", "11/10", "21/20"] {
        let report = line.folner_search(parse_ratio(theta)?, &budget)?;
        match report.witness {
            Some(w) => println!(
                "line, θ = {theta:>5}: interval of {:>2} points, ratio {}/{}",
                w.set.len(),
                w.ratio.0,
                w.ratio.1
            ),
            None => println!("line, θ = {theta:>5}: no witness within budget"),
        }
    }

    let tree = make_window(SpaceSpec::Tree, 6)?;
    for theta in ["3/2", "2", "5/2"] {
        let report = tree.folner_search(parse_ratio(theta)?, &budget)?;
        match report.witness {
            Some(w) => println!("tree, θ = {theta:>5}: witness of {} points?!", w.set.len()),
            None => println!(
                "tree, θ = {theta:>5}: none (connected subsets exhausted to size {})",
                report.exhausted_connected_size
            ),
        }
    }
    Ok(())
}
