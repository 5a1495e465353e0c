//! Bounded-displacement permutations of a window and the embedding of
//! F(a, b) built from disjoint path families.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coarse::{components, CoarseWindow, PointId, SpaceSpec};
use crate::embed::perm_module::{act_word, word_module};
use crate::error::{Error, Result};
use crate::free_group::{enumerate_ball, Letter, ReducedWord};

/// A bijection of a window's points with a certified displacement radius:
/// every pair (x, α(x)) lies within `displacement_power` window steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedPermutation {
    pub forward: Vec<PointId>,
    pub inverse: Vec<PointId>,
    pub displacement_power: u32,
}

impl BoundedPermutation {
    pub fn identity(n: usize) -> BoundedPermutation {
        BoundedPermutation {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
            displacement_power: 0,
        }
    }

    /// Validate a forward table and certify its displacement by window
    /// distances.
    pub fn from_forward(
        window: &CoarseWindow,
        forward: Vec<PointId>,
    ) -> Result<BoundedPermutation> {
        let n = window.len();
        if forward.len() != n {
            return Err(Error::NotABijection {
                got: forward.len(),
                expected: n,
            });
        }
        let mut inverse = vec![usize::MAX; n];
        for (x, &y) in forward.iter().enumerate() {
            if y >= n || inverse[y] != usize::MAX {
                return Err(Error::NotABijection {
                    got: forward.len(),
                    expected: n,
                });
            }
            inverse[y] = x;
        }
        let mut displacement = 0u32;
        for (x, &y) in forward.iter().enumerate() {
            if x == y {
                continue;
            }
            let dists = window.bfs_distances(&[x]);
            match dists[y] {
                Some(d) => displacement = displacement.max(d),
                None => return Err(Error::DisplacementUnbounded { point: x }),
            }
        }
        Ok(BoundedPermutation {
            forward,
            inverse,
            displacement_power: displacement,
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn moved_points(&self) -> Vec<PointId> {
        (0..self.len()).filter(|&x| self.forward[x] != x).collect()
    }

    pub fn inverse_perm(&self) -> BoundedPermutation {
        BoundedPermutation {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            displacement_power: self.displacement_power,
        }
    }

    /// self ∘ other, with the displacement certificate recomputed.
    pub fn compose(
        &self,
        window: &CoarseWindow,
        other: &BoundedPermutation,
    ) -> Result<BoundedPermutation> {
        let forward = (0..self.len())
            .map(|x| self.forward[other.forward[x]])
            .collect();
        BoundedPermutation::from_forward(window, forward)
    }

    /// Two-column table of moved points.
    pub fn to_json(&self) -> Vec<[usize; 2]> {
        self.moved_points()
            .into_iter()
            .map(|x| [x, self.forward[x]])
            .collect()
    }
}

/// Image of a reduced word under the group generated by two permutations.
pub fn word_permutation(
    window: &CoarseWindow,
    gen_a: &BoundedPermutation,
    gen_b: &BoundedPermutation,
    v: &ReducedWord,
) -> Result<BoundedPermutation> {
    let n = window.len();
    let mut forward: Vec<PointId> = (0..n).collect();
    // the rightmost letter acts first, so fold from the right
    for &l in v.letters().iter().rev() {
        let table = match l {
            Letter::A => &gen_a.forward,
            Letter::AInv => &gen_a.inverse,
            Letter::B => &gen_b.forward,
            Letter::BInv => &gen_b.inverse,
        };
        for slot in forward.iter_mut() {
            *slot = table[*slot];
        }
    }
    BoundedPermutation::from_forward(window, forward)
}

/// Find pairwise disjoint injective E-paths of length 2|w|+1 inside the
/// interior, one per word, longest words first. Depth-first with
/// backtracking inside each word's search; placement across words is
/// greedy in the canonical order.
pub fn disjoint_path_family(
    window: &CoarseWindow,
    words: &[ReducedWord],
    dfs_nodes: usize,
) -> Result<BTreeMap<ReducedWord, Vec<PointId>>> {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != words.len() || sorted.iter().any(|w| w.is_empty()) {
        return Err(Error::BadEmbedWords);
    }
    sorted.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

    let interior_count = window.interior_size();
    let needed: usize = sorted.iter().map(|w| 2 * w.len() + 1).sum();
    if needed > interior_count {
        return Err(Error::PathCapacity {
            word: format!("family of {} words", sorted.len()),
            needed,
            available: interior_count,
        });
    }

    let mut used = vec![false; window.len()];
    let mut paths = BTreeMap::new();
    let mut nodes = 0usize;
    for word in &sorted {
        let target = 2 * word.len() + 1;
        let mut found: Option<Vec<PointId>> = None;
        'starts: for start in 0..window.len() {
            if !window.is_interior(start) || used[start] {
                continue;
            }
            let mut path = vec![start];
            let mut on_path = vec![false; window.len()];
            on_path[start] = true;
            let mut cursors = vec![0usize];
            while !path.is_empty() {
                if path.len() == target {
                    found = Some(path.clone());
                    break 'starts;
                }
                nodes += 1;
                if nodes > dfs_nodes {
                    return Err(Error::PathBudget {
                        word: word.to_string(),
                        budget: dfs_nodes,
                    });
                }
                let last = *path.last().unwrap();
                let cursor = cursors.last_mut().unwrap();
                let mut advanced = false;
                while *cursor < window.neighbors(last).len() {
                    let next = window.neighbors(last)[*cursor];
                    *cursor += 1;
                    if used[next] || on_path[next] || !window.is_interior(next) {
                        continue;
                    }
                    path.push(next);
                    on_path[next] = true;
                    cursors.push(0);
                    advanced = true;
                    break;
                }
                if !advanced {
                    let dead = path.pop().unwrap();
                    on_path[dead] = false;
                    cursors.pop();
                }
            }
        }
        match found {
            Some(path) => {
                for &p in &path {
                    used[p] = true;
                }
                paths.insert(word.clone(), path);
            }
            None => {
                return Err(Error::PathCapacity {
                    word: word.to_string(),
                    needed: target,
                    available: interior_count - used.iter().filter(|&&u| u).count(),
                })
            }
        }
    }
    Ok(paths)
}

/// Per-word evidence produced by [`embed_f2`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCertificate {
    pub word: ReducedWord,
    /// A point moved by the word's image, so the image is not the identity.
    pub witness: PointId,
    pub witness_image: PointId,
    /// Maximum window displacement over all moved points.
    pub max_displacement: u32,
    /// The certified bound 2|word|.
    pub displacement_bound: u32,
}

/// F(a, b) carried into the bounded-displacement permutations of a
/// window, with witnesses for every nontrivial word up to a length cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Embedding {
    pub gen_a: BoundedPermutation,
    pub gen_b: BoundedPermutation,
    pub paths: BTreeMap<ReducedWord, Vec<PointId>>,
    pub certificates: Vec<WordCertificate>,
}

/// Plant one permutation module on a disjoint path per word of length
/// ≤ max_len, transported along the path's indexing; identity elsewhere.
/// The certificate verifies, for every nontrivial word v up to max_len,
/// that its image moves the base point of v's own path and stays within
/// 2|v| steps everywhere.
pub fn embed_f2(window: &CoarseWindow, max_len: usize, dfs_nodes: usize) -> Result<F2Embedding> {
    if max_len < 1 {
        return Err(Error::BadEmbedWords);
    }
    let words: Vec<ReducedWord> = enumerate_ball(max_len)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let paths = disjoint_path_family(window, &words, dfs_nodes)?;

    let n = window.len();
    let mut fwd_a: Vec<PointId> = (0..n).collect();
    let mut fwd_b: Vec<PointId> = (0..n).collect();
    for (word, path) in &paths {
        let pair = word_module(word)?;
        for (i, &p) in path.iter().enumerate() {
            fwd_a[p] = path[pair.phi_a[i]];
            fwd_b[p] = path[pair.phi_b[i]];
        }
    }
    let gen_a = BoundedPermutation::from_forward(window, fwd_a)?;
    let gen_b = BoundedPermutation::from_forward(window, fwd_b)?;
    debug_assert!(gen_a.displacement_power <= 2 && gen_b.displacement_power <= 2);

    let mut certificates = Vec::new();
    for word in &words {
        let image = word_permutation(window, &gen_a, &gen_b, word)?;
        let path = &paths[word];
        let witness = path[0];
        let moved_to = image.forward[witness];
        // the module sends index 0 to 2|word| along the word's own path
        let pair = word_module(word)?;
        let expected = path[act_word(&pair, word, 0)?];
        if moved_to != expected || moved_to == witness {
            return Err(Error::BadEmbedWords);
        }
        let bound = 2 * word.len() as u32;
        if image.displacement_power > bound {
            return Err(Error::DisplacementUnbounded { point: witness });
        }
        certificates.push(WordCertificate {
            word: word.clone(),
            witness,
            witness_image: moved_to,
            max_displacement: image.displacement_power,
            displacement_bound: bound,
        });
    }
    Ok(F2Embedding {
        gen_a,
        gen_b,
        paths,
        certificates,
    })
}

/// Fixed-point evidence for one word on a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordFixedPoints {
    pub word: ReducedWord,
    pub fixed_in_region: Vec<PointId>,
    /// Smallest window displacement over the region (0 when fixed points
    /// exist there).
    pub min_displacement: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiregularReport {
    pub pass: bool,
    pub per_word: Vec<WordFixedPoints>,
}

/// Evaluate every nontrivial word up to max_len on a region and report
/// fixed points. A bounded-length, region-restricted certificate: it says
/// nothing about longer words or the ambient space.
pub fn semiregular_check(
    window: &CoarseWindow,
    gen_a: &BoundedPermutation,
    gen_b: &BoundedPermutation,
    max_len: usize,
    region: &BTreeSet<PointId>,
) -> Result<SemiregularReport> {
    let mut per_word = Vec::new();
    let mut pass = true;
    for word in enumerate_ball(max_len) {
        if word.is_empty() {
            continue;
        }
        let image = word_permutation(window, gen_a, gen_b, &word)?;
        let fixed: Vec<PointId> = region
            .iter()
            .copied()
            .filter(|&x| image.forward[x] == x)
            .collect();
        let mut min_disp = u32::MAX;
        for &x in region {
            let y = image.forward[x];
            if x == y {
                min_disp = 0;
                break;
            }
            let d = window.bfs_distances(&[x])[y].unwrap_or(u32::MAX);
            min_disp = min_disp.min(d);
        }
        if !fixed.is_empty() {
            pass = false;
        }
        per_word.push(WordFixedPoints {
            word,
            fixed_in_region: fixed,
            min_displacement: if min_disp == u32::MAX { 0 } else { min_disp },
        });
    }
    Ok(SemiregularReport { pass, per_word })
}

/// The order certificate for a finitely generated permutation group whose
/// orbit components stay clear of the window boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessCertificate {
    pub distinct_types: usize,
    pub per_type_order: Vec<u64>,
    /// ⟨S⟩ embeds into the product of one copy of each component type, so
    /// its order divides this bound.
    pub order_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFinitenessReport {
    pub component_sizes: Vec<usize>,
    pub stable: bool,
    pub reason: String,
    pub certificate: Option<FinitenessCertificate>,
}

/// Certify finiteness of the group generated by a family of bounded
/// permutations, when possible.
///
/// The union of the permutation graphs splits the window into orbit
/// components. If no component reaches from the deep region (depth at
/// most max_depth - 2) to the window rim, each deep component is complete
/// and the generated group embeds into a product of the component
/// restrictions; its order then divides the product over distinct
/// component types of the type's group order. A component bridging deep
/// to rim may be a truncation artifact, so no certificate is issued.
pub fn local_finiteness_certificate(
    window: &CoarseWindow,
    generators: &[BoundedPermutation],
    closure_budget: usize,
) -> Result<LocalFinitenessReport> {
    let n = window.len();
    for g in generators {
        if g.len() != n {
            return Err(Error::NotABijection {
                got: g.len(),
                expected: n,
            });
        }
    }
    let mut adj: Vec<BTreeSet<PointId>> = vec![BTreeSet::new(); n];
    for g in generators {
        for x in 0..n {
            let y = g.forward[x];
            if x != y {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    let adj: Vec<Vec<PointId>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
    let comps = components(n, &adj);
    let component_sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();

    let max_depth = window.max_depth();
    let bridge = comps.iter().find(|c| {
        let deep = c.iter().any(|&p| window.depth(p) + 2 <= max_depth);
        let rim = c.iter().any(|&p| window.depth(p) == max_depth);
        deep && rim
    });
    if let Some(c) = bridge {
        return Ok(LocalFinitenessReport {
            component_sizes,
            stable: false,
            reason: format!(
                "unstable components — no certificate: the component of point {} reaches the window rim",
                c[0]
            ),
            certificate: None,
        });
    }

    // canonical type of each component: its size plus the generator
    // tables in component-local indices
    let mut types: BTreeMap<(usize, Vec<Vec<usize>>), usize> = BTreeMap::new();
    for comp in &comps {
        let local: BTreeMap<PointId, usize> =
            comp.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let tables: Vec<Vec<usize>> = generators
            .iter()
            .map(|g| comp.iter().map(|&p| local[&g.forward[p]]).collect())
            .collect();
        *types.entry((comp.len(), tables)).or_insert(0) += 1;
    }

    let mut per_type_order = Vec::new();
    for (size, tables) in types.keys() {
        match permutation_group_order(*size, tables, closure_budget) {
            Some(order) => per_type_order.push(order),
            None => {
                return Ok(LocalFinitenessReport {
                    component_sizes,
                    stable: true,
                    reason: format!(
                        "component group of size-{size} type exceeded the closure budget"
                    ),
                    certificate: None,
                })
            }
        }
    }
    let order_bound = per_type_order
        .iter()
        .fold(1u64, |acc, &o| acc.saturating_mul(o));
    Ok(LocalFinitenessReport {
        component_sizes,
        stable: true,
        reason: "all components stay clear of the rim".into(),
        certificate: Some(FinitenessCertificate {
            distinct_types: types.len(),
            per_type_order,
            order_bound,
        }),
    })
}

/// Order of ⟨tables⟩ ≤ Sym(size) by closure, None past the budget.
fn permutation_group_order(size: usize, tables: &[Vec<usize>], budget: usize) -> Option<u64> {
    let identity: Vec<usize> = (0..size).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(g) = frontier.pop() {
        for t in tables {
            let product: Vec<usize> = (0..size).map(|x| t[g[x]]).collect();
            if seen.insert(product.clone()) {
                if seen.len() > budget {
                    return None;
                }
                frontier.push(product);
            }
        }
    }
    Some(seen.len() as u64)
}

/// Conjugate a permutation of a line window onto a halfline window along
/// the folding z ↦ 2z (z ≥ 0), z ↦ 2|z| - 1 (z < 0); identity off the
/// image.
pub fn zn_transport(
    line: &CoarseWindow,
    alpha: &BoundedPermutation,
    target: &CoarseWindow,
) -> Result<BoundedPermutation> {
    if line.ambient().spec != SpaceSpec::Line {
        return Err(Error::WrongAmbient {
            expected: "line".into(),
            got: line.ambient().spec.name(),
        });
    }
    if target.ambient().spec != SpaceSpec::Halfline {
        return Err(Error::WrongAmbient {
            expected: "halfline".into(),
            got: target.ambient().spec.name(),
        });
    }
    if alpha.len() != line.len() {
        return Err(Error::NotABijection {
            got: alpha.len(),
            expected: line.len(),
        });
    }
    let fold = |z: i64| -> i64 {
        if z >= 0 {
            2 * z
        } else {
            2 * z.abs() - 1
        }
    };
    let line_value = |p: PointId| -> i64 { line.label(p).parse().unwrap() };
    let target_index = |v: i64| -> Result<PointId> {
        if v < 0 || v as usize >= target.len() {
            return Err(Error::TransportEscapes {
                image: v,
                size: target.len(),
            });
        }
        Ok(v as usize) // halfline labels are 0..=len in order
    };
    let mut forward: Vec<PointId> = (0..target.len()).collect();
    for p in 0..line.len() {
        let y = target_index(fold(line_value(p)))?;
        let image = target_index(fold(line_value(alpha.forward[p])))?;
        forward[y] = image;
    }
    BoundedPermutation::from_forward(target, forward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarse::make_window;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn path_family_on_the_line() {
        let window = make_window(SpaceSpec::Line, 100).unwrap();
        let words: Vec<ReducedWord> = ["a", "A", "b", "B"].iter().map(|s| w(s)).collect();
        let paths = disjoint_path_family(&window, &words, 100_000).unwrap();
        assert_eq!(paths.len(), 4);
        let mut all: Vec<PointId> = paths.values().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), 12, "paths must be disjoint");
        for path in paths.values() {
            assert_eq!(path.len(), 3);
            for pair in path.windows(2) {
                assert!(window.neighbors(pair[0]).contains(&pair[1]));
            }
        }
    }

    #[test]
    fn path_family_capacity_error() {
        let window = make_window(SpaceSpec::Line, 3).unwrap();
        let words: Vec<ReducedWord> = ["a", "A", "b", "B"].iter().map(|s| w(s)).collect();
        match disjoint_path_family(&window, &words, 100_000) {
            Err(Error::PathCapacity {
                needed, available, ..
            }) => {
                assert_eq!(needed, 12);
                assert_eq!(available, 5);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn empty_family_is_empty() {
        let window = make_window(SpaceSpec::Line, 5).unwrap();
        assert!(disjoint_path_family(&window, &[], 1000).unwrap().is_empty());
    }

    #[test]
    fn embedding_on_the_line() {
        let window = make_window(SpaceSpec::Line, 60).unwrap();
        let embedding = embed_f2(&window, 2, 1_000_000).unwrap();
        assert_eq!(embedding.certificates.len(), 16);
        assert!(embedding.gen_a.displacement_power <= 2);
        for cert in &embedding.certificates {
            assert_ne!(cert.witness, cert.witness_image);
            assert!(cert.max_displacement <= cert.displacement_bound);
        }
    }

    #[test]
    fn embedding_on_the_tree() {
        let window = make_window(SpaceSpec::Tree, 6).unwrap();
        let embedding = embed_f2(&window, 2, 1_000_000).unwrap();
        assert_eq!(embedding.certificates.len(), 16);
        for cert in &embedding.certificates {
            assert_ne!(cert.witness, cert.witness_image);
            assert!(cert.max_displacement <= cert.displacement_bound);
        }
    }

    #[test]
    fn semiregular_translations_on_the_line() {
        // a: x ↦ x+1 wrapped, b: x ↦ x+3 wrapped; commuting translations
        let window = make_window(SpaceSpec::Line, 40).unwrap();
        let n = window.len();
        let shift = |k: usize| -> BoundedPermutation {
            let forward: Vec<PointId> = (0..n).map(|x| (x + k) % n).collect();
            BoundedPermutation::from_forward(&window, forward).unwrap()
        };
        let gen_a = shift(1);
        let gen_b = shift(3);
        // deep region, away from the wraparound seam
        let region: BTreeSet<PointId> = (15..25).collect();
        let report = semiregular_check(&window, &gen_a, &gen_b, 3, &region).unwrap();
        assert!(
            report.pass,
            "translations by 1 and 3 have no short relation"
        );
        // at length 4 the word b a⁻³ is the identity
        let report = semiregular_check(&window, &gen_a, &gen_b, 4, &region).unwrap();
        assert!(!report.pass);

        // degenerate generator fails instantly
        let id = BoundedPermutation::identity(n);
        let report = semiregular_check(&window, &id, &gen_b, 1, &region).unwrap();
        assert!(!report.pass);
        assert_eq!(report.per_word[0].word, w("a"));
    }

    #[test]
    fn pair_swaps_are_certified_finite() {
        let window = make_window(SpaceSpec::Line, 20).unwrap();
        let n = window.len();
        // swap {2i, 2i+1} pairs by index
        let mut forward: Vec<PointId> = (0..n).collect();
        for i in (0..n - 1).step_by(2) {
            forward[i] = i + 1;
            forward[i + 1] = i;
        }
        let swaps = BoundedPermutation::from_forward(&window, forward).unwrap();
        let report = local_finiteness_certificate(&window, &[swaps], 10_000).unwrap();
        assert!(report.stable);
        let cert = report.certificate.unwrap();
        assert!(cert.per_type_order.contains(&2));
        assert!(report.component_sizes.iter().all(|&s| s <= 2));
    }

    #[test]
    fn shift_system_is_declined() {
        let window = make_window(SpaceSpec::Line, 20).unwrap();
        let n = window.len();
        let forward: Vec<PointId> = (0..n).map(|x| (x + 1) % n).collect();
        let shift = BoundedPermutation::from_forward(&window, forward).unwrap();
        let report = local_finiteness_certificate(&window, &[shift], 10_000).unwrap();
        assert!(!report.stable);
        assert!(report.certificate.is_none());
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let window = make_window(SpaceSpec::Line, 5).unwrap();
        let report = local_finiteness_certificate(&window, &[], 1000).unwrap();
        assert!(report.stable);
        assert_eq!(report.certificate.unwrap().order_bound, 1);
    }

    #[test]
    fn transport_examples() {
        let line = make_window(SpaceSpec::Line, 10).unwrap();
        let target = make_window(SpaceSpec::Halfline, 22).unwrap();
        // folding values
        let fold = |z: i64| if z >= 0 { 2 * z } else { 2 * z.abs() - 1 };
        assert_eq!(fold(3), 6);
        assert_eq!(fold(-2), 3);

        // identity transports to the identity
        let id = BoundedPermutation::identity(line.len());
        let t = zn_transport(&line, &id, &target).unwrap();
        assert!(t.is_identity());

        // shift by one, wrapped at the window edge to stay a bijection
        let n = line.len();
        let forward: Vec<PointId> = (0..n).map(|x| (x + 1) % n).collect();
        let shift = BoundedPermutation::from_forward(&line, forward).unwrap();
        let t = zn_transport(&line, &shift, &target).unwrap();
        // transported value at y = 4 = fold(2): alpha(2) = 3, fold(3) = 6
        assert_eq!(t.forward[4], 6);

        // a too-small target reports the escaping image
        let small = make_window(SpaceSpec::Halfline, 5).unwrap();
        assert!(matches!(
            zn_transport(&line, &id, &small),
            Err(Error::TransportEscapes { .. })
        ));
    }

    #[test]
    fn transport_respects_composition() {
        let line = make_window(SpaceSpec::Line, 8).unwrap();
        let target = make_window(SpaceSpec::Halfline, 18).unwrap();
        let n = line.len();
        let rot = |k: usize| -> BoundedPermutation {
            let forward: Vec<PointId> = (0..n).map(|x| (x + k) % n).collect();
            BoundedPermutation::from_forward(&line, forward).unwrap()
        };
        let (p, q) = (rot(2), rot(5));
        let composed = p.compose(&line, &q).unwrap();
        let lhs = zn_transport(&line, &composed, &target).unwrap();
        let rhs = zn_transport(&line, &p, &target)
            .unwrap()
            .compose(&target, &zn_transport(&line, &q, &target).unwrap())
            .unwrap();
        assert_eq!(lhs.forward, rhs.forward);
    }
}
