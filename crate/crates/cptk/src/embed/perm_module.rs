//! For each nonempty word w, a pair of permutations of {0, …, 2|w|} that
//! move every index by at most 2 yet send 0 to 2|w| under the letter
//! sequence of w. Acting through these pairs separates w from the
//! identity inside a bounded-displacement group.

use crate::error::{Error, Result};
use crate::free_group::{syllable_decomposition, Letter, ReducedWord};

/// The permutation pair for one word, with the syllable markers that
/// shaped it. `alpha[i]` and `beta[i]` are the partial sums of syllable
/// absolute values; the interval `[2·beta[j], 2·alpha[j]]` is driven by the
/// j-th b-syllable and `[2·alpha[j], 2·beta[j+1]]` by the j-th a-syllable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermModule {
    pub word: ReducedWord,
    pub phi_a: Vec<usize>,
    pub phi_a_inv: Vec<usize>,
    pub phi_b: Vec<usize>,
    pub phi_b_inv: Vec<usize>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl PermModule {
    /// |M| = 2|w| + 1.
    pub fn module_size(&self) -> usize {
        self.phi_a.len()
    }
}

fn invert(table: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; table.len()];
    for (i, &j) in table.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Fill one signed syllable interval [lo, hi] of a generator table.
/// Positive exponent: evens climb by 2, the top ebbs to hi-1, odds sink
/// by 2, and lo+1 closes the cycle at lo. Negative exponent mirrors it.
fn fill_interval(table: &mut [usize], assigned: &mut [bool], lo: usize, hi: usize, positive: bool) {
    debug_assert!(hi >= lo + 2 && (hi - lo).is_multiple_of(2));
    let mut set = |i: usize, v: usize| {
        assert!(
            !assigned[i],
            "index {i} assigned twice; overlapping syllable intervals"
        );
        assigned[i] = true;
        table[i] = v;
    };
    if positive {
        let mut i = lo;
        while i + 2 <= hi {
            set(i, i + 2);
            i += 2;
        }
        set(hi, hi - 1);
        let mut i = lo + 3;
        while i < hi {
            set(i, i - 2);
            i += 2;
        }
        set(lo + 1, lo);
    } else {
        let mut i = lo + 2;
        while i <= hi {
            set(i, i - 2);
            i += 2;
        }
        set(lo, lo + 1);
        let mut i = lo + 1;
        while i + 3 <= hi {
            set(i, i + 2);
            i += 2;
        }
        set(hi - 1, hi);
    }
}

/// Build the permutation pair for a nonempty word.
pub fn word_module(w: &ReducedWord) -> Result<PermModule> {
    if w.is_empty() {
        return Err(Error::EmptyWordGenerators);
    }
    let syl = syllable_decomposition(w)?;
    let pairs = syl.k.len();
    let mut alpha = vec![0i64; pairs];
    let mut beta = vec![0i64; pairs + 1];
    let (mut sum_k, mut sum_l) = (0i64, 0i64);
    for i in 0..pairs {
        beta[i] = sum_k + sum_l;
        sum_l += syl.l[i].abs();
        alpha[i] = sum_k + sum_l;
        sum_k += syl.k[i].abs();
    }
    beta[pairs] = sum_k + sum_l;
    debug_assert_eq!(beta[pairs] as usize, w.len());

    let m = 2 * w.len() + 1;
    let mut phi_a: Vec<usize> = (0..m).collect();
    let mut phi_b: Vec<usize> = (0..m).collect();
    let mut assigned_a = vec![false; m];
    let mut assigned_b = vec![false; m];
    for j in 0..pairs {
        if syl.k[j] != 0 {
            let lo = 2 * alpha[j] as usize;
            let hi = 2 * beta[j + 1] as usize;
            fill_interval(&mut phi_a, &mut assigned_a, lo, hi, syl.k[j] > 0);
        }
        if syl.l[j] != 0 {
            let lo = 2 * beta[j] as usize;
            let hi = 2 * alpha[j] as usize;
            fill_interval(&mut phi_b, &mut assigned_b, lo, hi, syl.l[j] > 0);
        }
    }
    for (name, table) in [("a", &phi_a), ("b", &phi_b)] {
        let mut seen = vec![false; m];
        for &v in table.iter() {
            assert!(!seen[v], "phi({name}) is not a permutation at value {v}");
            seen[v] = true;
        }
        for (i, &v) in table.iter().enumerate() {
            assert!(i.abs_diff(v) <= 2, "phi({name}) moves {i} by more than 2");
        }
    }
    Ok(PermModule {
        word: w.clone(),
        phi_a_inv: invert(&phi_a),
        phi_b_inv: invert(&phi_b),
        phi_a,
        phi_b,
        alpha,
        beta,
    })
}

/// Apply the letters of v, rightmost first, starting from index i.
pub fn act_word(pair: &PermModule, v: &ReducedWord, i: usize) -> Result<usize> {
    let m = pair.module_size();
    if i >= m {
        return Err(Error::IndexOutOfRange { index: i, size: m });
    }
    let mut cur = i;
    for &l in v.letters().iter().rev() {
        cur = match l {
            Letter::A => pair.phi_a[cur],
            Letter::AInv => pair.phi_a_inv[cur],
            Letter::B => pair.phi_b[cur],
            Letter::BInv => pair.phi_b_inv[cur],
        };
    }
    Ok(cur)
}
