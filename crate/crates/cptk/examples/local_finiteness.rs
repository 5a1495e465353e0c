//! Order certificates for permutation systems on a window: disjoint
//! swaps split into bounded components and generate a provably finite
//! group; a shift connects everything to the boundary and no certificate
//! is issued.

use cptk::coarse::{make_window, SpaceSpec};
use cptk::embed::wobble::{local_finiteness_certificate, BoundedPermutation};

fn main() -> cptk::Result<()> {
    let window = make_window(SpaceSpec::Line, 30)?;
    let n = window.len();

    let mut swap_table: Vec<usize> = (0..n).collect();
    for i in (0..n - 1).step_by(2) {
        swap_table.swap(i, i + 1);
    }
    let swaps = BoundedPermutation::from_forward(&window, swap_table)?;
    let report = local_finiteness_certificate(&window, std::slice::from_ref(&swaps), 100_000)?;
    println!(
        "pair swaps: components {:?}…",
        &report.component_sizes[..6.min(report.component_sizes.len())]
    );
    match &report.certificate {
        Some(cert) => println!(
            "  certified: {} distinct component types, per-type orders {:?}, total order bound {}",
            cert.distinct_types, cert.per_type_order, cert.order_bound
        ),
        None => println!("  no certificate: {}", report.reason),
    }

    // swaps together with one adjacent 3-cycle: still bounded, bigger type
    let mut mixed_table: Vec<usize> = (0..n).collect();
    for i in (6..n - 3).step_by(3) {
        mixed_table[i] = i + 1;
        mixed_table[i + 1] = i + 2;
        mixed_table[i + 2] = i;
    }
    let cycles3 = BoundedPermutation::from_forward(&window, mixed_table)?;
    let report = local_finiteness_certificate(&window, &[cycles3], 100_000)?;
    if let Some(cert) = &report.certificate {
        println!(
            "3-cycles: per-type orders {:?}, order bound {}",
            cert.per_type_order, cert.order_bound
        );
    }

    let shift_table: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    let shift = BoundedPermutation::from_forward(&window, shift_table)?;
    let report = local_finiteness_certificate(&window, &[shift], 100_000)?;
    println!("shift: stable = {}, {}", report.stable, report.reason);
    Ok(())
}
