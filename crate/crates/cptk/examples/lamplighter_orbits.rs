//! The wreath product Sym(n) ≀ Z acting on Z: shifts move whole blocks,
//! lamps relabel inside one block, and every element displaces points by
//! at most n(|m| + 1). The same action generates the schreier window of
//! the gallery.

use cptk::coarse::{make_window, parse_ratio, SearchBudget, SpaceSpec};
use cptk::embed::lamplighter::{lamplighter_compose, LamplighterElement};

fn main() -> cptk::Result<()> {
    let n = 3;
    let shift = LamplighterElement::shift(n, 1);
    let lamp = LamplighterElement::identity(n).with_lamp(0, vec![1, 2, 0])?;

    println!("shift by one block (n = {n}):");
    for z in -4..=4 {
        print!(" {z}↦{}", shift.act(z));
    }
    println!("\nlamp (0 1 2) at block 0:");
    for z in -4..=4 {
        print!(" {z}↦{}", lamp.act(z));
    }
    println!();

    let commutator = lamplighter_compose(
        &lamplighter_compose(&shift, &lamp)?,
        &lamplighter_compose(&shift, &lamp)?.inverse(),
    )?;
    println!(
        "(shift·lamp)(shift·lamp)⁻¹ is the identity: {}",
        (-20..=20).all(|z| commutator.act(z) == z)
    );

    let conjugated = lamplighter_compose(&lamplighter_compose(&shift, &lamp)?, &shift.inverse())?;
    println!(
        "shift · lamp · shift⁻¹ has lamps at {:?} (conjugation moves the lamp)",
        conjugated.lamps.keys().collect::<Vec<_>>()
    );
    println!(
        "displacement certificate n(|m|+1): shift·lamp ≤ {}",
        lamplighter_compose(&shift, &lamp)?.displacement_bound()
    );

    // the orbit structure as a coarse window: amenable, so witnesses exist
    let window = make_window(SpaceSpec::Schreier { n: 2 }, 8)?;
    let report = window.folner_search(parse_ratio("3/2")?, &SearchBudget::default())?;
    match report.witness {
        Some(w) => println!(
            "schreier window of the n = 2 action: witness of {} points at θ = 3/2",
            w.set.len()
        ),
        None => println!("schreier window: no witness within budget"),
    }
    Ok(())
}
