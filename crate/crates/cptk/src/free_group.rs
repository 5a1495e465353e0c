//! Exact word algebra for the free group F(a, b).
//!
//! Words are kept freely reduced at all times. The text encoding is
//! `a`, `b` for the generators and `A`, `B` for their inverses, with `e`
//! for the empty word. The canonical order on words is shortlex with
//! a < A < b < B; every deterministic tie-break in the crate uses it.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paradox::{ModelElement, ParadoxicalDecomposition};

/// One generator letter or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::AInv),
            'b' => Some(Letter::B),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }

    /// True for `a` and `A`.
    pub fn is_a_generator(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    /// +1 for a generator, -1 for an inverse letter.
    pub fn sign(self) -> i64 {
        match self {
            Letter::A | Letter::B => 1,
            Letter::AInv | Letter::BInv => -1,
        }
    }
}

/// A freely reduced word: no adjacent letter is followed by its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord {
            letters: Vec::new(),
        }
    }

    pub fn letter(l: Letter) -> ReducedWord {
        ReducedWord { letters: vec![l] }
    }

    /// Freely reduce an arbitrary letter sequence.
    pub fn reduce(raw: &[Letter]) -> ReducedWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(raw.len());
        for &l in raw {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        ReducedWord { letters: stack }
    }

    /// `letter^exponent` for a signed exponent.
    pub fn power(l: Letter, exponent: i64) -> ReducedWord {
        let base = if exponent >= 0 { l } else { l.inverse() };
        ReducedWord {
            letters: vec![base; exponent.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    /// Reduced product self · other.
    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        ReducedWord { letters: stack }
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

/// Shortlex: length first, then letterwise with a < A < b < B.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReducedWord> {
        if s.is_empty() || s == "e" {
            return Ok(ReducedWord::empty());
        }
        let mut raw = Vec::with_capacity(s.len());
        for c in s.chars() {
            match Letter::from_char(c) {
                Some(l) => raw.push(l),
                None => return Err(Error::BadWord(s.to_string())),
            }
        }
        Ok(ReducedWord::reduce(&raw))
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The two modes of [`group_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOpMode {
    Multiply,
    InvertLeft,
}

/// Reduced product `u · v`, or `u⁻¹ · v` in invert-left mode.
pub fn group_op(u: &ReducedWord, v: &ReducedWord, mode: GroupOpMode) -> ReducedWord {
    match mode {
        GroupOpMode::Multiply => u.mul(v),
        GroupOpMode::InvertLeft => u.inverse().mul(v),
    }
}

/// Alternating-syllable normal form of a nonempty word:
/// `w = a^{k_n} b^{l_n} ··· a^{k_0} b^{l_0}`,
/// where `k_0..k_{n-1}` and `l_1..l_n` are nonzero while `k_n` and `l_0`
/// may vanish. Index `i` of the vectors is the subscript above, so the
/// rightmost pair of the product sits at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllableForm {
    pub k: Vec<i64>,
    pub l: Vec<i64>,
}

impl SyllableForm {
    /// n + 1 pairs.
    pub fn pair_count(&self) -> usize {
        self.k.len()
    }

    pub fn word_length(&self) -> usize {
        self.k
            .iter()
            .chain(self.l.iter())
            .map(|x| x.unsigned_abs() as usize)
            .sum()
    }

    /// Multiply the syllables back together.
    pub fn reassemble(&self) -> ReducedWord {
        let mut w = ReducedWord::empty();
        for i in (0..self.k.len()).rev() {
            w = w.mul(&ReducedWord::power(Letter::A, self.k[i]));
            w = w.mul(&ReducedWord::power(Letter::B, self.l[i]));
        }
        w
    }
}

/// Split a nonempty reduced word into its alternating syllable form.
pub fn syllable_decomposition(w: &ReducedWord) -> Result<SyllableForm> {
    if w.is_empty() {
        return Err(Error::EmptyWordSyllables);
    }
    // Maximal runs, left to right: (is_a_run, signed exponent).
    let mut runs: Vec<(bool, i64)> = Vec::new();
    for &l in w.letters() {
        match runs.last_mut() {
            Some((is_a, count)) if *is_a == l.is_a_generator() => *count += l.sign(),
            _ => runs.push((l.is_a_generator(), l.sign())),
        }
    }
    if !runs.first().map(|r| r.0).unwrap_or(false) {
        runs.insert(0, (true, 0)); // word starts with a b-syllable: k_n = 0
    }
    if runs.last().map(|r| r.0).unwrap_or(false) {
        runs.push((false, 0)); // word ends with an a-syllable: l_0 = 0
    }
    debug_assert!(runs.len().is_multiple_of(2));
    let pairs = runs.len() / 2;
    let mut k = vec![0i64; pairs];
    let mut l = vec![0i64; pairs];
    for (chunk_idx, chunk) in runs.chunks(2).enumerate() {
        let subscript = pairs - 1 - chunk_idx;
        debug_assert!(chunk[0].0 && !chunk[1].0);
        k[subscript] = chunk[0].1;
        l[subscript] = chunk[1].1;
    }
    Ok(SyllableForm { k, l })
}

/// All reduced words of length at most `max_len`, in shortlex order.
pub fn enumerate_ball(max_len: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::empty()];
    let mut layer_start = 0;
    for _ in 0..max_len {
        let layer_end = out.len();
        for idx in layer_start..layer_end {
            let last = out[idx].letters().last().copied();
            for l in Letter::ALL {
                if last != Some(l.inverse()) {
                    let mut letters = out[idx].letters().to_vec();
                    letters.push(l);
                    out.push(ReducedWord { letters });
                }
            }
        }
        layer_start = layer_end;
    }
    out
}

/// Count of reduced words with length at most `max_len`: 1 + Σ 4·3^(ℓ-1).
pub fn ball_size(max_len: usize) -> usize {
    let mut total = 1usize;
    let mut layer = 4usize;
    for _ in 0..max_len {
        total += layer;
        layer *= 3;
    }
    total
}

/// A named map usable inside a [`Classifier::Preimage`] node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "args", rename_all = "snake_case")]
pub enum MapId {
    /// Projection of a product-model element to its word coordinate.
    FirstCoordinate,
    /// Left translation by a fixed element of a product model.
    LeftTranslation { word: ReducedWord, residue: u64 },
}

/// Intensional description of a subset of F₂ (or of a product model
/// F₂ × C_n). Membership is decided structurally, so identities between
/// pieces can be checked at any word length without truncation error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "args", rename_all = "snake_case")]
pub enum Classifier {
    /// Words whose first letter is the given one.
    StartsWith(Letter),
    /// N = { a^{-n} : n ≥ 0 }, the nonpositive powers of a (contains e).
    NegPowersOfA,
    Singleton(ReducedWord),
    Union(Vec<Classifier>),
    Intersection(Vec<Classifier>),
    Difference(Box<Classifier>, Box<Classifier>),
    Preimage {
        map: MapId,
        of: Box<Classifier>,
    },
    /// Word piece crossed with a set of residues of the finite factor.
    ProductWithFinite {
        word: Box<Classifier>,
        residues: BTreeSet<u64>,
    },
}

impl Classifier {
    /// Membership of a product-model element (word, residue mod `modulus`).
    /// Word-level kinds ignore the residue, i.e. they denote cylinder sets.
    pub fn contains(&self, word: &ReducedWord, residue: u64, modulus: u64) -> bool {
        match self {
            Classifier::StartsWith(l) => word.first() == Some(*l),
            Classifier::NegPowersOfA => word.letters().iter().all(|&l| l == Letter::AInv),
            Classifier::Singleton(v) => word == v,
            Classifier::Union(cs) => cs.iter().any(|c| c.contains(word, residue, modulus)),
            Classifier::Intersection(cs) => cs.iter().all(|c| c.contains(word, residue, modulus)),
            Classifier::Difference(a, b) => {
                a.contains(word, residue, modulus) && !b.contains(word, residue, modulus)
            }
            Classifier::Preimage { map, of } => match map {
                MapId::FirstCoordinate => of.contains(word, 0, 1),
                MapId::LeftTranslation {
                    word: v,
                    residue: j,
                } => of.contains(&v.mul(word), (j + residue) % modulus.max(1), modulus),
            },
            Classifier::ProductWithFinite { word: c, residues } => {
                c.contains(word, 0, 1) && residues.contains(&(residue % modulus.max(1)))
            }
        }
    }

    /// Membership of a plain word.
    pub fn contains_word(&self, word: &ReducedWord) -> bool {
        self.contains(word, 0, 1)
    }

    /// The whole group as a classifier.
    pub fn whole_group() -> Classifier {
        Classifier::Union(vec![
            Classifier::Singleton(ReducedWord::empty()),
            Classifier::StartsWith(Letter::A),
            Classifier::StartsWith(Letter::AInv),
            Classifier::StartsWith(Letter::B),
            Classifier::StartsWith(Letter::BInv),
        ])
    }
}

/// The classical four-piece paradoxical decomposition of F₂:
/// P₁ = startsWith(a) ∪ N, P₂ = startsWith(a⁻¹) ∖ N with translators e, a,
/// and Q₁ = startsWith(b), Q₂ = startsWith(b⁻¹) with translators e, b.
/// Then F₂ = P₁ ⊔ aP₂ = Q₁ ⊔ bQ₂ while P₁, P₂, Q₁, Q₂ partition F₂.
pub fn standard_paradox() -> ParadoxicalDecomposition {
    let p1 = Classifier::Union(vec![
        Classifier::StartsWith(Letter::A),
        Classifier::NegPowersOfA,
    ]);
    let p2 = Classifier::Difference(
        Box::new(Classifier::StartsWith(Letter::AInv)),
        Box::new(Classifier::NegPowersOfA),
    );
    let q1 = Classifier::StartsWith(Letter::B);
    let q2 = Classifier::StartsWith(Letter::BInv);
    ParadoxicalDecomposition {
        p_family: vec![
            (p1, ModelElement::word(ReducedWord::empty())),
            (p2, ModelElement::word(ReducedWord::letter(Letter::A))),
        ],
        q_family: vec![
            (q1, ModelElement::word(ReducedWord::empty())),
            (q2, ModelElement::word(ReducedWord::letter(Letter::B))),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert_eq!(
            ReducedWord::reduce(&[Letter::A, Letter::AInv]),
            ReducedWord::empty()
        );
        assert_eq!(
            ReducedWord::reduce(&[Letter::A, Letter::B, Letter::BInv, Letter::A]),
            w("aa")
        );
        assert_eq!(
            ReducedWord::reduce(&[Letter::BInv, Letter::A, Letter::AInv, Letter::B]),
            ReducedWord::empty()
        );
    }

    #[test]
    fn group_ops() {
        assert_eq!(group_op(&w("ab"), &w("Ba"), GroupOpMode::Multiply), w("aa"));
        assert_eq!(
            group_op(&w("ab"), &w("e"), GroupOpMode::InvertLeft),
            w("BA")
        );
        let u = w("abAB");
        assert_eq!(group_op(&u, &u.inverse(), GroupOpMode::Multiply), w("e"));
    }

    #[test]
    fn syllables_of_small_words() {
        let s = syllable_decomposition(&w("ab")).unwrap();
        assert_eq!((s.k.as_slice(), s.l.as_slice()), (&[1][..], &[1][..]));

        let s = syllable_decomposition(&w("ba")).unwrap();
        assert_eq!((s.k.as_slice(), s.l.as_slice()), (&[1, 0][..], &[0, 1][..]));

        let s = syllable_decomposition(&w("AA")).unwrap();
        assert_eq!((s.k.as_slice(), s.l.as_slice()), (&[-2][..], &[0][..]));

        assert!(syllable_decomposition(&ReducedWord::empty()).is_err());
    }

    #[test]
    fn syllables_reassemble_exhaustively() {
        for word in enumerate_ball(8) {
            if word.is_empty() {
                continue;
            }
            let s = syllable_decomposition(&word).unwrap();
            assert_eq!(s.reassemble(), word, "reassembly failed for {word}");
            assert_eq!(s.word_length(), word.len());
            // inner syllables are nonzero
            let n = s.k.len() - 1;
            assert!(s.k[..n].iter().all(|&x| x != 0));
            assert!(s.l[1..].iter().all(|&x| x != 0));
        }
    }

    #[test]
    fn ball_counts() {
        assert_eq!(enumerate_ball(0).len(), 1);
        assert_eq!(enumerate_ball(2).len(), 17);
        assert_eq!(enumerate_ball(3).len(), 53);
        for len in 0..7 {
            assert_eq!(ball_size(len), enumerate_ball(len).len());
        }
        // shortlex order
        let ball = enumerate_ball(2);
        let mut sorted = ball.clone();
        sorted.sort();
        assert_eq!(ball, sorted);
    }

    #[test]
    fn classifier_membership() {
        let p = standard_paradox();
        let (p1, _) = &p.p_family[0];
        let (p2, _) = &p.p_family[1];
        assert!(p1.contains_word(&w("aab")));
        assert!(p1.contains_word(&w("e")));
        assert!(p2.contains_word(&w("Ab")));
        assert!(!p2.contains_word(&w("AA")));
    }

    #[test]
    fn word_round_trip() {
        for word in enumerate_ball(5) {
            let back: ReducedWord = word.to_string().parse().unwrap();
            assert_eq!(back, word);
        }
        assert!("a1b".parse::<ReducedWord>().is_err());
        assert!("ea".parse::<ReducedWord>().is_err());
        assert_eq!("".parse::<ReducedWord>().unwrap(), ReducedWord::empty());
    }
}
