//! Piecewise translations of group models and paradoxical decompositions.
//!
//! The models at desk scale are F₂ itself, products F₂ × C_n (standing in
//! for a group with a finite open subgroup), and explicit finite actions.
//! Pieces are intensional classifiers, so the partition and covering
//! identities can be checked at any word length exactly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_group::{enumerate_ball, Classifier, MapId, ReducedWord};

/// Element of a product model F₂ × C_n. The plain free group is the
/// degenerate case n = 1 with residue 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModelElement {
    pub word: ReducedWord,
    #[serde(default)]
    pub residue: u64,
}

impl ModelElement {
    pub fn word(word: ReducedWord) -> ModelElement {
        ModelElement { word, residue: 0 }
    }

    pub fn identity() -> ModelElement {
        ModelElement::word(ReducedWord::empty())
    }
}

impl std::fmt::Display for ModelElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.residue == 0 {
            write!(f, "{}", self.word)
        } else {
            write!(f, "({}, {})", self.word, self.residue)
        }
    }
}

/// An explicit finite group acting on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    pub elems: Vec<String>,
    /// `mult[g][h]` = g·h.
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
    /// `act[g][x]` = g·x.
    pub act: Vec<Vec<usize>>,
}

impl FiniteAction {
    /// C_m acting on {0, …, set_size-1} by x ↦ x + step·k (mod set_size).
    pub fn cyclic(m: usize, set_size: usize, step: usize) -> FiniteAction {
        let elems = (0..m).map(|k| format!("g{k}")).collect();
        let mult = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        let inv = (0..m).map(|a| (m - a) % m).collect();
        let act = (0..m)
            .map(|k| (0..set_size).map(|x| (x + step * k) % set_size).collect())
            .collect();
        FiniteAction {
            elems,
            mult,
            inv,
            identity: 0,
            act,
        }
    }

    pub fn group_order(&self) -> usize {
        self.elems.len()
    }

    pub fn set_size(&self) -> usize {
        self.act.first().map(|row| row.len()).unwrap_or(0)
    }

    /// Exhaustive group- and action-axiom check.
    pub fn validate(&self) -> Result<()> {
        let m = self.group_order();
        let s = self.set_size();
        let bad = |msg: String| Err(Error::ModelMismatch(msg));
        for a in 0..m {
            if self.mult[a][self.identity] != a || self.mult[self.identity][a] != a {
                return bad(format!("identity fails at {a}"));
            }
            if self.mult[a][self.inv[a]] != self.identity {
                return bad(format!("inverse fails at {a}"));
            }
            for b in 0..m {
                for c in 0..m {
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        for x in 0..s {
            if self.act[self.identity][x] != x {
                return bad(format!("identity action fails at {x}"));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for x in 0..s {
                    if self.act[self.mult[a][b]][x] != self.act[a][self.act[b][x]] {
                        return bad(format!("action fails at ({a}, {b}, {x})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        (0..self.group_order()).map(|g| self.act[g][x]).collect()
    }
}

/// The group models that carry piecewise translations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupModel {
    Free2,
    Free2TimesCyclic { n: u64 },
    FiniteAction(FiniteAction),
}

impl GroupModel {
    /// Size of the finite factor; errors for finite actions, which carry
    /// no word algebra.
    pub fn modulus(&self) -> Result<u64> {
        match self {
            GroupModel::Free2 => Ok(1),
            GroupModel::Free2TimesCyclic { n } => {
                if *n == 0 {
                    Err(Error::ModelMismatch(
                        "cyclic factor must be nonempty".into(),
                    ))
                } else {
                    Ok(*n)
                }
            }
            GroupModel::FiniteAction(_) => Err(Error::ModelMismatch(
                "finite actions carry no piecewise-translation algebra".into(),
            )),
        }
    }

    pub fn mul(&self, a: &ModelElement, b: &ModelElement) -> Result<ModelElement> {
        let n = self.modulus()?;
        Ok(ModelElement {
            word: a.word.mul(&b.word),
            residue: (a.residue + b.residue) % n,
        })
    }

    pub fn inv(&self, a: &ModelElement) -> Result<ModelElement> {
        let n = self.modulus()?;
        Ok(ModelElement {
            word: a.word.inverse(),
            residue: (n - a.residue % n) % n,
        })
    }

    /// Quotient projection onto the word coordinate.
    pub fn project(&self, a: &ModelElement) -> ReducedWord {
        a.word.clone()
    }

    /// All elements with word length ≤ max_len, in canonical order.
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<ModelElement>> {
        let n = self.modulus()?;
        let mut out = Vec::new();
        for word in enumerate_ball(max_len) {
            for residue in 0..n {
                out.push(ModelElement {
                    word: word.clone(),
                    residue,
                });
            }
        }
        Ok(out)
    }
}

/// A bijection agreeing with finitely many left translations on the
/// pieces of a finite partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseTranslation {
    pub pieces: Vec<(Classifier, ModelElement)>,
}

impl PiecewiseTranslation {
    /// The identity as a single-piece translation.
    pub fn identity() -> PiecewiseTranslation {
        PiecewiseTranslation {
            pieces: vec![(Classifier::whole_group(), ModelElement::identity())],
        }
    }

    /// The global left translation by g.
    pub fn translation(g: ModelElement) -> PiecewiseTranslation {
        PiecewiseTranslation {
            pieces: vec![(Classifier::whole_group(), g)],
        }
    }

    /// Evaluate at one element; exactly one piece must apply.
    pub fn apply(&self, model: &GroupModel, x: &ModelElement) -> Result<ModelElement> {
        let n = model.modulus()?;
        let mut hit = None;
        for (classifier, g) in &self.pieces {
            if classifier.contains(&x.word, x.residue, n) {
                if hit.is_some() {
                    return Err(Error::InvalidPiecewise(format!(
                        "element {x} lies in two pieces"
                    )));
                }
                hit = Some(g);
            }
        }
        match hit {
            Some(g) => model.mul(g, x),
            None => Err(Error::InvalidPiecewise(format!(
                "element {x} lies in no piece"
            ))),
        }
    }

    /// The inverse translation: piece (C, g) becomes (gC, g⁻¹).
    pub fn inverse(&self, model: &GroupModel) -> Result<PiecewiseTranslation> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (classifier, g) in &self.pieces {
            let g_inv = model.inv(g)?;
            let image_piece = Classifier::Preimage {
                map: MapId::LeftTranslation {
                    word: g_inv.word.clone(),
                    residue: g_inv.residue,
                },
                of: Box::new(classifier.clone()),
            };
            pieces.push((image_piece, g_inv));
        }
        Ok(PiecewiseTranslation { pieces })
    }

    /// Image of a word under the homomorphism sending the generators to
    /// the given piecewise translations.
    pub fn word_image(
        model: &GroupModel,
        gen_a: &PiecewiseTranslation,
        gen_b: &PiecewiseTranslation,
        w: &ReducedWord,
    ) -> Result<PiecewiseTranslation> {
        use crate::free_group::Letter;
        let a_inv = gen_a.inverse(model)?;
        let b_inv = gen_b.inverse(model)?;
        let mut acc = PiecewiseTranslation::identity();
        for &l in w.letters() {
            let factor = match l {
                Letter::A => gen_a,
                Letter::AInv => &a_inv,
                Letter::B => gen_b,
                Letter::BInv => &b_inv,
            };
            acc = compose_piecewise(model, &acc, factor)?;
        }
        Ok(acc)
    }
}

/// after ∘ before, by refining before's pieces against the pullbacks of
/// after's pieces. Piece count is at most the product of the two counts.
pub fn compose_piecewise(
    model: &GroupModel,
    after: &PiecewiseTranslation,
    before: &PiecewiseTranslation,
) -> Result<PiecewiseTranslation> {
    model.modulus()?;
    let mut pieces = Vec::new();
    for (c_before, g_before) in &before.pieces {
        for (c_after, g_after) in &after.pieces {
            let pullback = Classifier::Preimage {
                map: MapId::LeftTranslation {
                    word: g_before.word.clone(),
                    residue: g_before.residue,
                },
                of: Box::new(c_after.clone()),
            };
            let piece = Classifier::Intersection(vec![c_before.clone(), pullback]);
            pieces.push((piece, model.mul(g_after, g_before)?));
        }
    }
    Ok(PiecewiseTranslation { pieces })
}

/// One defect in a piecewise translation's partition certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PiecewiseDefect {
    PieceCover { element: String, count: usize },
    ImageCover { element: String, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseReport {
    pub pass: bool,
    pub checked_elements: usize,
    pub defects: Vec<PiecewiseDefect>,
}

/// Check, over all elements of word length ≤ max_len, that the pieces
/// partition the model and that the translated pieces partition it too.
pub fn verify_piecewise(
    model: &GroupModel,
    pt: &PiecewiseTranslation,
    max_len: usize,
) -> Result<PiecewiseReport> {
    let n = model.modulus()?;
    let mut defects = Vec::new();
    let elements = model.enumerate(max_len)?;
    for x in &elements {
        let cover = pt
            .pieces
            .iter()
            .filter(|(c, _)| c.contains(&x.word, x.residue, n))
            .count();
        if cover != 1 {
            defects.push(PiecewiseDefect::PieceCover {
                element: x.to_string(),
                count: cover,
            });
        }
        // x ∈ g·C ⟺ g⁻¹x ∈ C
        let image_cover = pt
            .pieces
            .iter()
            .filter(|(c, g)| {
                let y = model.inv(g).and_then(|gi| model.mul(&gi, x));
                match y {
                    Ok(y) => c.contains(&y.word, y.residue, n),
                    Err(_) => false,
                }
            })
            .count();
        if image_cover != 1 {
            defects.push(PiecewiseDefect::ImageCover {
                element: x.to_string(),
                count: image_cover,
            });
        }
    }
    Ok(PiecewiseReport {
        pass: defects.is_empty(),
        checked_elements: elements.len(),
        defects,
    })
}

/// Pull a piecewise translation of F₂ back along the projection
/// F₂ × C_n → F₂: pieces become product pieces with full finite factor.
pub fn lift_quotient(n: u64, quotient_pt: &PiecewiseTranslation) -> Result<PiecewiseTranslation> {
    if n == 0 {
        return Err(Error::ModelMismatch(
            "cyclic factor must be nonempty".into(),
        ));
    }
    let report = verify_piecewise(&GroupModel::Free2, quotient_pt, 4)?;
    if !report.pass {
        return Err(Error::InvalidPiecewise(format!(
            "quotient translation invalid: {:?}",
            report.defects.first()
        )));
    }
    let residues: BTreeSet<u64> = (0..n).collect();
    let pieces = quotient_pt
        .pieces
        .iter()
        .map(|(c, g)| {
            (
                Classifier::ProductWithFinite {
                    word: Box::new(c.clone()),
                    residues: residues.clone(),
                },
                ModelElement {
                    word: g.word.clone(),
                    residue: 0,
                },
            )
        })
        .collect();
    Ok(PiecewiseTranslation { pieces })
}

/// Two labeled families whose pieces partition the model and whose
/// translates each tile the model exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParadoxicalDecomposition {
    pub p_family: Vec<(Classifier, ModelElement)>,
    pub q_family: Vec<(Classifier, ModelElement)>,
}

impl ParadoxicalDecomposition {
    pub fn piece_count(&self) -> usize {
        self.p_family.len() + self.q_family.len()
    }
}

/// How the equivariant map ψ into F₂ is realized on a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiMap {
    /// ψ = id on F₂ itself.
    Identity,
    /// ψ = projection to the word coordinate of a product model.
    FirstCoordinate,
}

impl PsiMap {
    pub fn apply(&self, x: &ModelElement) -> ReducedWord {
        x.word.clone()
    }

    /// ψ⁻¹ of a word classifier, as a model classifier.
    pub fn pullback(&self, c: &Classifier) -> Classifier {
        match self {
            PsiMap::Identity => c.clone(),
            PsiMap::FirstCoordinate => Classifier::Preimage {
                map: MapId::FirstCoordinate,
                of: Box::new(c.clone()),
            },
        }
    }
}

/// Transfer a paradoxical decomposition of F₂ to a model along a
/// homomorphism φ (given on the generators) intertwined with λ by ψ.
///
/// The pieces of the images φ(g_P), φ(h_Q) are refined to a common
/// partition; each output piece is a ψ-pullback piece met with a
/// refinement cell, translated by the translation that φ(g_P) performs
/// on that cell.
pub fn transfer_paradox(
    model: &GroupModel,
    phi_a: &PiecewiseTranslation,
    phi_b: &PiecewiseTranslation,
    psi: PsiMap,
    f2_pdec: &ParadoxicalDecomposition,
    sample_len: usize,
) -> Result<ParadoxicalDecomposition> {
    use crate::free_group::Letter;
    model.modulus()?;

    // the generator images must be genuine piecewise bijections
    for (name, pt) in [("a", phi_a), ("b", phi_b)] {
        let report = verify_piecewise(model, pt, sample_len.min(4))?;
        if !report.pass {
            return Err(Error::InvalidPiecewise(format!(
                "phi({name}) is not bijective: {:?}",
                report.defects.first()
            )));
        }
    }
    // sampled intertwining: ψ(φ(x)(z)) = x·ψ(z) for the generators
    for z in model.enumerate(sample_len.min(3))? {
        for (letter, pt) in [(Letter::A, phi_a), (Letter::B, phi_b)] {
            let image = pt.apply(model, &z)?;
            let lhs = psi.apply(&image);
            let rhs = ReducedWord::letter(letter).mul(&psi.apply(&z));
            if lhs != rhs {
                return Err(Error::EquivarianceFailure(format!(
                    "psi(phi({})({z})) = {lhs} but {}·psi({z}) = {rhs}",
                    letter.to_char(),
                    letter.to_char(),
                )));
            }
        }
    }

    // distinct translator words and their φ-images
    let mut translator_words: Vec<ReducedWord> = f2_pdec
        .p_family
        .iter()
        .chain(f2_pdec.q_family.iter())
        .map(|(_, g)| g.word.clone())
        .collect();
    translator_words.sort();
    translator_words.dedup();
    let images: Vec<(ReducedWord, PiecewiseTranslation)> = translator_words
        .iter()
        .map(|w| PiecewiseTranslation::word_image(model, phi_a, phi_b, w).map(|pt| (w.clone(), pt)))
        .collect::<Result<_>>()?;

    // common refinement: one cell per choice of piece in every image
    let mut cells: Vec<(Vec<Classifier>, Vec<ModelElement>)> = vec![(Vec::new(), Vec::new())];
    for (_, pt) in &images {
        let mut next = Vec::with_capacity(cells.len() * pt.pieces.len());
        for (classifiers, translators) in &cells {
            for (c, g) in &pt.pieces {
                let mut cs = classifiers.clone();
                cs.push(c.clone());
                let mut gs = translators.clone();
                gs.push(g.clone());
                next.push((cs, gs));
            }
        }
        cells = next;
    }
    let image_index = |w: &ReducedWord| images.iter().position(|(v, _)| v == w).unwrap();

    let build = |family: &[(Classifier, ModelElement)]| -> Vec<(Classifier, ModelElement)> {
        let mut out = Vec::new();
        for (piece, g) in family {
            let idx = image_index(&g.word);
            let pulled = psi.pullback(piece);
            for (classifiers, translators) in &cells {
                let mut parts = vec![pulled.clone()];
                parts.extend(classifiers.iter().cloned());
                out.push((Classifier::Intersection(parts), translators[idx].clone()));
            }
        }
        out
    };

    Ok(ParadoxicalDecomposition {
        p_family: build(&f2_pdec.p_family),
        q_family: build(&f2_pdec.q_family),
    })
}

/// One defect in a paradoxical-decomposition certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParadoxDefect {
    PiecePartition { element: String, count: usize },
    PCover { element: String, count: usize },
    QCover { element: String, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub pass: bool,
    pub checked_elements: usize,
    pub max_len_checked: usize,
    pub defects: Vec<ParadoxDefect>,
}

/// Exhaustively check, for every element of word length ≤ L - c (c the
/// longest translator, so the enumeration is boundary-safe), that
/// the pieces of both families partition the model and that each family's
/// translated pieces cover the model exactly once.
pub fn verify_paradoxical(
    pdec: &ParadoxicalDecomposition,
    model: &GroupModel,
    max_len: usize,
) -> Result<ParadoxReport> {
    if max_len < 1 {
        return Err(Error::ModelMismatch(
            "verification length must be ≥ 1".into(),
        ));
    }
    let n = model.modulus()?;
    let margin = pdec
        .p_family
        .iter()
        .chain(pdec.q_family.iter())
        .map(|(_, g)| g.word.len())
        .max()
        .unwrap_or(0);
    let check_len = max_len.saturating_sub(margin);
    let elements = model.enumerate(check_len)?;
    let mut defects = Vec::new();
    let witness_cap = 16;

    for x in &elements {
        let piece_cover = pdec
            .p_family
            .iter()
            .chain(pdec.q_family.iter())
            .filter(|(c, _)| c.contains(&x.word, x.residue, n))
            .count();
        if piece_cover != 1 && defects.len() < witness_cap {
            defects.push(ParadoxDefect::PiecePartition {
                element: x.to_string(),
                count: piece_cover,
            });
        }
        for (family, make) in [(&pdec.p_family, true), (&pdec.q_family, false)] {
            let cover = family
                .iter()
                .filter(|(c, g)| {
                    let y = model.inv(g).and_then(|gi| model.mul(&gi, x));
                    match y {
                        Ok(y) => c.contains(&y.word, y.residue, n),
                        Err(_) => false,
                    }
                })
                .count();
            if cover != 1 && defects.len() < witness_cap {
                if make {
                    defects.push(ParadoxDefect::PCover {
                        element: x.to_string(),
                        count: cover,
                    });
                } else {
                    defects.push(ParadoxDefect::QCover {
                        element: x.to_string(),
                        count: cover,
                    });
                }
            }
        }
    }
    Ok(ParadoxReport {
        pass: defects.is_empty(),
        checked_elements: elements.len(),
        max_len_checked: check_len,
        defects,
    })
}

/// Serialized decomposition: {"P": [{"piece": ast, "g": word}], "Q": […]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParadoxJson {
    #[serde(rename = "P")]
    pub p: Vec<PieceJson>,
    #[serde(rename = "Q")]
    pub q: Vec<PieceJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceJson {
    pub piece: Classifier,
    pub g: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub residue: u64,
}

fn is_zero(r: &u64) -> bool {
    *r == 0
}

pub fn paradox_to_json(pdec: &ParadoxicalDecomposition) -> ParadoxJson {
    let conv = |family: &[(Classifier, ModelElement)]| {
        family
            .iter()
            .map(|(c, g)| PieceJson {
                piece: c.clone(),
                g: g.word.to_string(),
                residue: g.residue,
            })
            .collect()
    };
    ParadoxJson {
        p: conv(&pdec.p_family),
        q: conv(&pdec.q_family),
    }
}

pub fn paradox_from_json(j: &ParadoxJson) -> Result<ParadoxicalDecomposition> {
    let conv = |family: &[PieceJson]| -> Result<Vec<(Classifier, ModelElement)>> {
        family
            .iter()
            .map(|p| {
                Ok((
                    p.piece.clone(),
                    ModelElement {
                        word: p.g.parse()?,
                        residue: p.residue,
                    },
                ))
            })
            .collect()
    };
    Ok(ParadoxicalDecomposition {
        p_family: conv(&j.p)?,
        q_family: conv(&j.q)?,
    })
}

/// Solve ψ(x)·σ(x) = x for a semi-regular finite action and verify the
/// equivariance ψ(g·x) = g·ψ(x) on every pair.
pub fn equivariant_from_cross_section(
    action: &FiniteAction,
    sigma: &[usize],
) -> Result<Vec<usize>> {
    action.validate()?;
    let s = action.set_size();
    if sigma.len() != s {
        return Err(Error::BadCrossSection(format!(
            "sigma has {} entries for {s} points",
            sigma.len()
        )));
    }
    // semi-regularity
    for g in 0..action.group_order() {
        if g == action.identity {
            continue;
        }
        for x in 0..s {
            if action.act[g][x] == x {
                return Err(Error::NotSemiRegular {
                    element: g,
                    point: x,
                });
            }
        }
    }
    // sigma picks one representative inside each orbit, constantly
    for x in 0..s {
        let orbit = action.orbit(x);
        if !orbit.contains(&sigma[x]) {
            return Err(Error::BadCrossSection(format!(
                "sigma({x}) = {} is outside the orbit of {x}",
                sigma[x]
            )));
        }
        for &y in &orbit {
            if sigma[y] != sigma[x] {
                return Err(Error::BadCrossSection(format!(
                    "sigma is not constant on the orbit of {x}"
                )));
            }
        }
    }
    let mut psi = vec![usize::MAX; s];
    for x in 0..s {
        let mut found = None;
        for g in 0..action.group_order() {
            if action.act[g][sigma[x]] == x {
                if found.is_some() {
                    return Err(Error::NotSemiRegular {
                        element: g,
                        point: sigma[x],
                    });
                }
                found = Some(g);
            }
        }
        psi[x] = found.ok_or_else(|| {
            Error::BadCrossSection(format!("no group element carries sigma({x}) to {x}"))
        })?;
    }
    // exhaustive equivariance
    for g in 0..action.group_order() {
        for x in 0..s {
            let lhs = psi[action.act[g][x]];
            let rhs = action.mult[g][psi[x]];
            if lhs != rhs {
                return Err(Error::EquivarianceFailure(format!("(g, x) = ({g}, {x})")));
            }
        }
    }
    Ok(psi)
}

/// The canonical cross-section σ(w, i) = (e, i) of the left F₂ action on
/// a product model determines ψ(w, i) = w; verify equivariance for all
/// elements of word length ≤ max_len and both generators.
pub fn product_cross_section_check(n: u64, max_len: usize) -> Result<usize> {
    use crate::free_group::Letter;
    let model = GroupModel::Free2TimesCyclic { n };
    let elements = model.enumerate(max_len)?;
    for x in &elements {
        // psi(x) = word coordinate; sigma(x) = (e, residue)
        for l in [Letter::A, Letter::B, Letter::AInv, Letter::BInv] {
            let g = ReducedWord::letter(l);
            let gx = ModelElement {
                word: g.mul(&x.word),
                residue: x.residue,
            };
            let lhs = gx.word.clone();
            let rhs = g.mul(&x.word);
            if lhs != rhs {
                return Err(Error::EquivarianceFailure(format!(
                    "({}, {x})",
                    l.to_char()
                )));
            }
        }
    }
    Ok(elements.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::standard_paradox;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn standard_paradox_verifies_exhaustively() {
        let pdec = standard_paradox();
        let report = verify_paradoxical(&pdec, &GroupModel::Free2, 6).unwrap();
        assert!(report.pass, "defects: {:?}", report.defects);
    }

    #[test]
    fn duplicated_piece_fails_at_the_identity() {
        let mut pdec = standard_paradox();
        let dup = pdec.p_family[0].clone();
        pdec.p_family.push(dup);
        let report = verify_paradoxical(&pdec, &GroupModel::Free2, 4).unwrap();
        assert!(!report.pass);
        assert!(report.defects.iter().any(
            |d| matches!(d, ParadoxDefect::PiecePartition { element, count: 2 } if element == "e")
        ));
    }

    #[test]
    fn piecewise_identities() {
        let model = GroupModel::Free2;
        let la = PiecewiseTranslation::translation(ModelElement::word(w("a")));
        let lb = PiecewiseTranslation::translation(ModelElement::word(w("b")));
        // single-piece translations compose to the product translation
        let lab = compose_piecewise(&model, &la, &lb).unwrap();
        for x in model.enumerate(4).unwrap() {
            assert_eq!(lab.apply(&model, &x).unwrap().word, w("ab").mul(&x.word));
        }
        // α ∘ α⁻¹ is extensionally the identity
        let la_inv = la.inverse(&model).unwrap();
        let round = compose_piecewise(&model, &la, &la_inv).unwrap();
        for x in model.enumerate(4).unwrap() {
            assert_eq!(round.apply(&model, &x).unwrap(), x);
        }
        assert!(verify_piecewise(&model, &round, 4).unwrap().pass);
    }

    /// The transposition of e and a as a three-piece translation.
    fn swap_e_a() -> PiecewiseTranslation {
        let e = Classifier::Singleton(w("e"));
        let a = Classifier::Singleton(w("a"));
        let rest = Classifier::Difference(
            Box::new(Classifier::whole_group()),
            Box::new(Classifier::Union(vec![e.clone(), a.clone()])),
        );
        PiecewiseTranslation {
            pieces: vec![
                (e, ModelElement::word(w("a"))),
                (a, ModelElement::word(w("A"))),
                (rest, ModelElement::identity()),
            ],
        }
    }

    #[test]
    fn compose_matches_pointwise_composition() {
        let model = GroupModel::Free2;
        let swap = swap_e_a();
        assert!(verify_piecewise(&model, &swap, 5).unwrap().pass);
        let lb = PiecewiseTranslation::translation(ModelElement::word(w("b")));
        let composed = compose_piecewise(&model, &swap, &lb).unwrap();
        assert!(composed.pieces.len() <= swap.pieces.len() * lb.pieces.len());
        for x in model.enumerate(6).unwrap() {
            let direct = swap.apply(&model, &lb.apply(&model, &x).unwrap()).unwrap();
            assert_eq!(composed.apply(&model, &x).unwrap(), direct);
        }
        assert!(verify_piecewise(&model, &composed, 5).unwrap().pass);
    }

    #[test]
    fn composition_is_associative_extensionally() {
        let model = GroupModel::Free2;
        let la = PiecewiseTranslation::translation(ModelElement::word(w("a")));
        let lb = PiecewiseTranslation::translation(ModelElement::word(w("b")));
        let lc = PiecewiseTranslation::translation(ModelElement::word(w("Ab")));
        let left =
            compose_piecewise(&model, &compose_piecewise(&model, &la, &lb).unwrap(), &lc).unwrap();
        let right =
            compose_piecewise(&model, &la, &compose_piecewise(&model, &lb, &lc).unwrap()).unwrap();
        for x in model.enumerate(4).unwrap() {
            assert_eq!(
                left.apply(&model, &x).unwrap(),
                right.apply(&model, &x).unwrap()
            );
        }
    }

    #[test]
    fn lift_commutes_with_composition() {
        let la = PiecewiseTranslation::translation(ModelElement::word(w("a")));
        let lb = PiecewiseTranslation::translation(ModelElement::word(w("b")));
        let product = GroupModel::Free2TimesCyclic { n: 3 };
        let lifted_a = lift_quotient(3, &la).unwrap();
        let lifted_b = lift_quotient(3, &lb).unwrap();
        let compose_then_lift =
            lift_quotient(3, &compose_piecewise(&GroupModel::Free2, &la, &lb).unwrap()).unwrap();
        let lift_then_compose = compose_piecewise(&product, &lifted_a, &lifted_b).unwrap();
        for x in product.enumerate(4).unwrap() {
            assert_eq!(
                compose_then_lift.apply(&product, &x).unwrap(),
                lift_then_compose.apply(&product, &x).unwrap()
            );
        }
    }

    #[test]
    fn lift_degenerate_fiber_is_isomorphic() {
        let la = PiecewiseTranslation::translation(ModelElement::word(w("a")));
        let lifted = lift_quotient(1, &la).unwrap();
        let model = GroupModel::Free2;
        for x in model.enumerate(4).unwrap() {
            assert_eq!(
                lifted.apply(&model, &x).unwrap(),
                la.apply(&model, &x).unwrap()
            );
        }
    }

    #[test]
    fn transfer_to_product_model() {
        let model = GroupModel::Free2TimesCyclic { n: 3 };
        let phi_a = lift_quotient(
            3,
            &PiecewiseTranslation::translation(ModelElement::word(w("a"))),
        )
        .unwrap();
        let phi_b = lift_quotient(
            3,
            &PiecewiseTranslation::translation(ModelElement::word(w("b"))),
        )
        .unwrap();
        let source = standard_paradox();
        let pdec =
            transfer_paradox(&model, &phi_a, &phi_b, PsiMap::FirstCoordinate, &source, 4).unwrap();
        let report = verify_paradoxical(&pdec, &model, 5).unwrap();
        assert!(report.pass, "defects: {:?}", report.defects);
        // refinement-cell bound on the output size
        let refinement_bound: usize = {
            let mut words: Vec<_> = source
                .p_family
                .iter()
                .chain(source.q_family.iter())
                .map(|(_, g)| g.word.clone())
                .collect();
            words.sort();
            words.dedup();
            words
                .iter()
                .map(|v| {
                    PiecewiseTranslation::word_image(&model, &phi_a, &phi_b, v)
                        .unwrap()
                        .pieces
                        .len()
                })
                .product()
        };
        assert!(pdec.piece_count() <= source.piece_count() * refinement_bound);
    }

    #[test]
    fn transfer_with_multi_piece_generators() {
        // generator images with several pieces exercise the refinement:
        // phi(a) translates by a but relabels the finite fiber on the
        // cylinder of words starting with b
        let n = 2u64;
        let model = GroupModel::Free2TimesCyclic { n };
        let on_b = Classifier::StartsWith(crate::free_group::Letter::B);
        let off_b =
            Classifier::Difference(Box::new(Classifier::whole_group()), Box::new(on_b.clone()));
        let phi_a = PiecewiseTranslation {
            pieces: vec![
                (
                    Classifier::ProductWithFinite {
                        word: Box::new(on_b.clone()),
                        residues: BTreeSet::from([0]),
                    },
                    ModelElement {
                        word: w("a"),
                        residue: 1,
                    },
                ),
                (
                    Classifier::ProductWithFinite {
                        word: Box::new(on_b),
                        residues: BTreeSet::from([1]),
                    },
                    ModelElement {
                        word: w("a"),
                        residue: 1,
                    },
                ),
                (
                    Classifier::ProductWithFinite {
                        word: Box::new(off_b),
                        residues: (0..n).collect(),
                    },
                    ModelElement {
                        word: w("a"),
                        residue: 0,
                    },
                ),
            ],
        };
        assert!(verify_piecewise(&model, &phi_a, 4).unwrap().pass);
        let phi_b = lift_quotient(
            n,
            &PiecewiseTranslation::translation(ModelElement::word(w("b"))),
        )
        .unwrap();
        let pdec = transfer_paradox(
            &model,
            &phi_a,
            &phi_b,
            PsiMap::FirstCoordinate,
            &standard_paradox(),
            4,
        )
        .unwrap();
        let report = verify_paradoxical(&pdec, &model, 5).unwrap();
        assert!(report.pass, "defects: {:?}", report.defects);
    }

    #[test]
    fn identity_transfer_reproduces_the_paradox() {
        let model = GroupModel::Free2;
        let phi_a = PiecewiseTranslation::translation(ModelElement::word(w("a")));
        let phi_b = PiecewiseTranslation::translation(ModelElement::word(w("b")));
        let source = standard_paradox();
        let pdec = transfer_paradox(&model, &phi_a, &phi_b, PsiMap::Identity, &source, 4).unwrap();
        // extensionally the same piece memberships, up to refinement
        for x in model.enumerate(5).unwrap() {
            let in_source: Vec<bool> = source
                .p_family
                .iter()
                .chain(source.q_family.iter())
                .map(|(c, _)| c.contains_word(&x.word))
                .collect();
            let in_result: Vec<bool> = pdec
                .p_family
                .iter()
                .chain(pdec.q_family.iter())
                .map(|(c, _)| c.contains_word(&x.word))
                .collect();
            assert_eq!(
                in_source.iter().filter(|&&b| b).count(),
                in_result.iter().filter(|&&b| b).count()
            );
        }
        assert!(verify_paradoxical(&pdec, &model, 6).unwrap().pass);
    }

    #[test]
    fn corrupted_translator_is_caught_by_verification() {
        let model = GroupModel::Free2TimesCyclic { n: 3 };
        let phi_a = lift_quotient(
            3,
            &PiecewiseTranslation::translation(ModelElement::word(w("a"))),
        )
        .unwrap();
        let phi_b = lift_quotient(
            3,
            &PiecewiseTranslation::translation(ModelElement::word(w("b"))),
        )
        .unwrap();
        let mut pdec = transfer_paradox(
            &model,
            &phi_a,
            &phi_b,
            PsiMap::FirstCoordinate,
            &standard_paradox(),
            4,
        )
        .unwrap();
        pdec.p_family[0].1 = ModelElement::word(w("b"));
        let report = verify_paradoxical(&pdec, &model, 5).unwrap();
        assert!(!report.pass);
        assert!(report
            .defects
            .iter()
            .any(|d| matches!(d, ParadoxDefect::PCover { count, .. } if *count != 1)));
    }

    #[test]
    fn skewed_generator_image_fails_equivariance() {
        let model = GroupModel::Free2;
        let phi_a = PiecewiseTranslation::translation(ModelElement::word(w("aa")));
        let phi_b = PiecewiseTranslation::translation(ModelElement::word(w("b")));
        let err = transfer_paradox(
            &model,
            &phi_a,
            &phi_b,
            PsiMap::Identity,
            &standard_paradox(),
            4,
        );
        assert!(matches!(err, Err(Error::EquivarianceFailure(_))));
    }

    #[test]
    fn finite_cross_section() {
        // C2 acting on {0,1,2,3} by x ↦ x+2 mod 4; sigma(x) = x mod 2
        let action = FiniteAction::cyclic(2, 4, 2);
        let sigma = vec![0, 1, 0, 1];
        let psi = equivariant_from_cross_section(&action, &sigma).unwrap();
        assert_eq!(psi, vec![0, 0, 1, 1]);

        // an action with a fixed point is rejected with a witness
        let mut fixed = FiniteAction::cyclic(2, 4, 2);
        fixed.act[1] = vec![0, 3, 2, 1]; // g fixes 0 and 2
        let err = equivariant_from_cross_section(&fixed, &sigma);
        assert!(matches!(err, Err(Error::NotSemiRegular { .. })));

        // sigma must be an orbit cross-section
        let bad = equivariant_from_cross_section(&action, &[0, 1, 1, 0]);
        assert!(matches!(bad, Err(Error::BadCrossSection(_))));
    }

    #[test]
    fn product_cross_section_is_equivariant() {
        assert!(product_cross_section_check(3, 5).unwrap() > 0);
    }

    #[test]
    fn model_axioms_on_samples() {
        let model = GroupModel::Free2TimesCyclic { n: 4 };
        let elems = model.enumerate(2).unwrap();
        for a in elems.iter().take(8) {
            for b in elems.iter().take(8) {
                for c in elems.iter().take(4) {
                    let ab_c = model.mul(&model.mul(a, b).unwrap(), c).unwrap();
                    let a_bc = model.mul(a, &model.mul(b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                }
                // projection is a homomorphism
                assert_eq!(
                    model.project(&model.mul(a, b).unwrap()),
                    model.project(a).mul(&model.project(b))
                );
            }
            let inv = model.inv(a).unwrap();
            assert_eq!(model.mul(a, &inv).unwrap(), ModelElement::identity());
        }
    }

    #[test]
    fn paradox_json_round_trip() {
        let pdec = standard_paradox();
        let j = paradox_to_json(&pdec);
        let text = serde_json::to_string(&j).unwrap();
        let back: ParadoxJson = serde_json::from_str(&text).unwrap();
        assert_eq!(paradox_from_json(&back).unwrap(), pdec);
    }

    #[test]
    fn whole_group_covers_every_word() {
        let all = Classifier::whole_group();
        for word in crate::free_group::enumerate_ball(5) {
            assert!(all.contains_word(&word));
        }
    }
}
