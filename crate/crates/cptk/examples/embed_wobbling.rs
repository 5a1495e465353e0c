//! A copy of F(a, b) inside the bounded-displacement permutations of a
//! line window: one disjoint path per word, a small permutation module
//! planted on each, identity elsewhere. Every word up to the length cap
//! then visibly moves its own path's base point. Also demonstrates the
//! Z → N transport of bounded permutations.

use std::collections::BTreeSet;

use cptk::coarse::{make_window, SpaceSpec};
use cptk::embed::wobble::{embed_f2, semiregular_check, word_permutation, zn_transport};

fn main() -> cptk::Result<()> {
    let window = make_window(SpaceSpec::Line, 200)?;
    let embedding = embed_f2(&window, 2, 1_000_000)?;
    println!(
        "planted {} paths on {} ({} points used)",
        embedding.paths.len(),
        window,
        embedding.paths.values().map(|p| p.len()).sum::<usize>()
    );
    println!(
        "generator displacement: a ≤ {}, b ≤ {}",
        embedding.gen_a.displacement_power, embedding.gen_b.displacement_power
    );
    for cert in embedding.certificates.iter().take(6) {
        println!(
            "  {:>2} moves {} ↦ {} (max displacement {} ≤ {})",
            cert.word.to_string(),
            window.label(cert.witness),
            window.label(cert.witness_image),
            cert.max_displacement,
            cert.displacement_bound
        );
    }
    println!(
        "  … {} words total, all within their bounds",
        embedding.certificates.len()
    );

    // off the planted paths every word acts as the identity — the report
    // restricts to the union of supports, where each word moves a point
    let supports: BTreeSet<usize> = embedding.paths.values().flatten().copied().collect();
    let report = semiregular_check(&window, &embedding.gen_a, &embedding.gen_b, 1, &supports)?;
    for per_word in &report.per_word {
        println!(
            "  {} has {} fixed points on the supports (min displacement {})",
            per_word.word,
            per_word.fixed_in_region.len(),
            per_word.min_displacement
        );
    }

    // fold the window onto a halfline and carry a word image along
    let target = make_window(SpaceSpec::Halfline, 401)?;
    let image = word_permutation(&window, &embedding.gen_a, &embedding.gen_b, &"ab".parse()?)?;
    let transported = zn_transport(&window, &image, &target)?;
    println!(
        "transported phi(ab): displacement {} on Z becomes {} on N",
        image.displacement_power, transported.displacement_power
    );
    Ok(())
}
