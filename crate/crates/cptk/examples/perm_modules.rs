//! Per-word permutation modules: for any nonempty word w, two
//! permutations of {0, …, 2|w|} moving indices by at most 2 whose
//! w-composite carries 0 all the way to 2|w|.

use cptk::embed::perm_module::{act_word, word_module};
use cptk::free_group::{enumerate_ball, ReducedWord};

fn main() -> cptk::Result<()> {
    for text in ["a", "ab", "abA", "aBab"] {
        let w: ReducedWord = text.parse()?;
        let pair = word_module(&w)?;
        println!("word {w}: module {{0, …, {}}}", 2 * w.len());
        println!("  phi(a) = {:?}", pair.phi_a);
        println!("  phi(b) = {:?}", pair.phi_b);
        let mut orbit = vec![0usize];
        for &l in w.letters().iter().rev() {
            let v = ReducedWord::letter(l);
            let next = act_word(&pair, &v, *orbit.last().unwrap())?;
            orbit.push(next);
        }
        println!("  0 walks {orbit:?} under the letters of {w}\n");
    }

    // the separation statistic over a whole ball
    let mut moved = 0usize;
    let words: Vec<ReducedWord> = enumerate_ball(5)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    for w in &words {
        let pair = word_module(w)?;
        if act_word(&pair, w, 0)? == 2 * w.len() {
            moved += 1;
        }
    }
    println!(
        "{moved}/{} words of length ≤ 5 reach the top of their module",
        words.len()
    );
    Ok(())
}
