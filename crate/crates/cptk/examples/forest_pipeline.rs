//! The full forest pipeline on a tree window: solve the (d-1)-to-1
//! matching by feasible flow, drain its unavoidable cycles along
//! preimage rays, and certify a degree-d forest on the region where the
//! rewiring is complete.

use cptk::coarse::{make_window, EntourageRel, SpaceSpec};
use cptk::forest::{eliminate_periodic, forest_json, periodic_points, verify_forest};
use cptk::harem::{harem_matching, verify_harem};

fn main() -> cptk::Result<()> {
    let window = make_window(SpaceSpec::Tree, 6)?;
    let rel = EntourageRel::generator_minus_diagonal(&window);
    let d = 4;

    let f = harem_matching(&window, &rel, d)?;
    println!(
        "matching: {} points, {} certified fibers of size {}, verification {}",
        window.len(),
        f.certified.len(),
        f.fiber_target,
        if verify_harem(&f).pass {
            "PASS"
        } else {
            "FAIL"
        }
    );

    let cycles = periodic_points(&f.map);
    println!(
        "cycles: {} periodic points in {} cycles (a total map on a finite set always has some)",
        cycles.periodic.len(),
        cycles.cycles.len()
    );

    let extraction = eliminate_periodic(&window, &f);
    println!(
        "rays: {} anchors, certified region {} points, {} warnings",
        extraction.rays.p0.len(),
        extraction.certified.len(),
        extraction.warnings.len()
    );

    let report = verify_forest(&window, &extraction.f_star, d, &extraction.certified);
    println!(
        "forest verification: {} (no periodicity, fibers {}, two-step graphs, acyclic)",
        if report.pass { "PASS" } else { "FAIL" },
        d - 1
    );

    let out = std::env::temp_dir().join("cptk_forest.json");
    std::fs::write(
        &out,
        serde_json::to_string_pretty(&forest_json(&extraction, d, &report)).unwrap(),
    )?;
    println!("certificate written to {}", out.display());
    Ok(())
}
