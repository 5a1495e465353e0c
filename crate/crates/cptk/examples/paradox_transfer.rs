//! Paradoxical decompositions as verifiable data: the classical
//! four-piece decomposition of F(a, b), its exhaustive verification, and
//! its transfer to the product model F₂ × C₃ through the quotient
//! projection — plus the cross-section construction of equivariant maps
//! on a finite action.

use cptk::free_group::standard_paradox;
use cptk::paradox::{
    equivariant_from_cross_section, lift_quotient, paradox_to_json, transfer_paradox,
    verify_paradoxical, FiniteAction, GroupModel, ModelElement, PiecewiseTranslation, PsiMap,
};

fn main() -> cptk::Result<()> {
    let pdec = standard_paradox();
    let report = verify_paradoxical(&pdec, &GroupModel::Free2, 8)?;
    println!(
        "F2 decomposition: {} pieces, {} words checked to length {}: {}",
        pdec.piece_count(),
        report.checked_elements,
        report.max_len_checked,
        if report.pass { "PASS" } else { "FAIL" }
    );

    let n = 3;
    let model = GroupModel::Free2TimesCyclic { n };
    let phi_a = lift_quotient(
        n,
        &PiecewiseTranslation::translation(ModelElement::word("a".parse()?)),
    )?;
    let phi_b = lift_quotient(
        n,
        &PiecewiseTranslation::translation(ModelElement::word("b".parse()?)),
    )?;
    let transferred = transfer_paradox(&model, &phi_a, &phi_b, PsiMap::FirstCoordinate, &pdec, 4)?;
    let report = verify_paradoxical(&transferred, &model, 6)?;
    println!(
        "transferred to F2 × C{n}: {} pieces, {} elements checked: {}",
        transferred.piece_count(),
        report.checked_elements,
        if report.pass { "PASS" } else { "FAIL" }
    );
    println!(
        "piece ASTs serialize to JSON; first piece:\n{}",
        serde_json::to_string_pretty(&paradox_to_json(&transferred).p[0].piece).unwrap()
    );

    // the equivariant map from a cross-section, exhaustively verified
    let action = FiniteAction::cyclic(2, 4, 2);
    let sigma = vec![0, 1, 0, 1];
    let psi = equivariant_from_cross_section(&action, &sigma)?;
    println!("cross-section psi for C2 on {{0,1,2,3}}: {psi:?} (psi(x)·sigma(x) = x)");
    Ok(())
}
