//! Hall-condition checking and (d-1)-to-1 matching functions.
//!
//! Given a symmetric irreflexive relation R on a window, the matching
//! step looks for a function f with gr(f) ⊆ R whose fibers have size
//! exactly d-1 at interior points and at most d-1 elsewhere. Interior
//! points always map inside the window; a boundary point may instead map
//! out of the window, recorded as None. That slack is forced by the
//! truncation: on a tree ball every leaf has a single in-window neighbor,
//! so in-window totality would saturate the last interior shell and
//! overfill the basepoint fiber — a restriction of any genuine solution
//! on the ambient space sends some boundary points outside.
//!
//! The problem is solved as a feasible flow with lower bounds, reduced to
//! plain max-flow by the usual excess/deficit transformation; an
//! infeasible instance yields a min-cut from which a set violating the
//! expansion condition |R\[F\]| ≥ (d-1)|F| is extracted.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coarse::{CoarseWindow, EntourageRel, PointId};
use crate::error::{Error, HallWitness, Result};
use crate::flow::{FlowNetwork, INF_CAP};

/// A matching function with its fiber certificate. `map[x]` is None when
/// x maps out of the window; that never happens at interior points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaremFunction {
    pub map: Vec<Option<PointId>>,
    /// d - 1.
    pub fiber_target: usize,
    /// Points where the fiber size is guaranteed to equal `fiber_target`.
    pub certified: BTreeSet<PointId>,
    /// The relation the graph of `map` is contained in.
    pub relation: EntourageRel,
}

impl HaremFunction {
    pub fn fiber(&self, target: PointId) -> Vec<PointId> {
        (0..self.map.len())
            .filter(|&x| self.map[x] == Some(target))
            .collect()
    }

    pub fn to_json(&self) -> HaremJson {
        HaremJson {
            map: (0..self.map.len())
                .filter_map(|x| self.map[x].map(|y| [x, y]))
                .collect(),
            d: self.fiber_target + 1,
            certified: self.certified.iter().copied().collect(),
        }
    }
}

/// Serialized form: `{"map": [[x, f(x)], …], "d": d, "certified": [ids]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HaremJson {
    pub map: Vec<[usize; 2]>,
    pub d: usize,
    pub certified: Vec<usize>,
}

/// How [`hall_check_small`] enumerates candidate sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallScope {
    /// All interior subsets up to the size cap. Exponential; meant for
    /// interiors of at most a dozen points.
    AllSubsets,
    /// Only R-connected interior subsets up to the size cap.
    Connected,
}

/// A set failing |R\[F\]| ≥ multiplier·|F|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallViolation {
    pub set: Vec<PointId>,
    pub image_size: usize,
}

/// Every interior F with 1 ≤ |F| ≤ max_size and |R\[F\]| < multiplier·|F|,
/// within the chosen enumeration scope.
pub fn hall_check_small(
    window: &CoarseWindow,
    rel: &EntourageRel,
    multiplier: usize,
    max_size: usize,
    scope: HallScope,
) -> Vec<HallViolation> {
    let mut violations = Vec::new();
    if max_size == 0 {
        return violations;
    }
    let interior: Vec<PointId> = window.interior_points().collect();
    let mut record = |f: &BTreeSet<PointId>| {
        let image = rel.image_of_set(f.iter());
        if image.len() < multiplier * f.len() {
            violations.push(HallViolation {
                set: f.iter().copied().collect(),
                image_size: image.len(),
            });
        }
    };
    match scope {
        HallScope::AllSubsets => {
            // subsets in ascending lexicographic order of their sorted members
            let mut stack: Vec<(BTreeSet<PointId>, usize)> = vec![(BTreeSet::new(), 0)];
            while let Some((f, next)) = stack.pop() {
                if !f.is_empty() {
                    record(&f);
                }
                if f.len() == max_size {
                    continue;
                }
                // explore in reverse so the smallest next point pops first
                for idx in (next..interior.len()).rev() {
                    let mut f2 = f.clone();
                    f2.insert(interior[idx]);
                    stack.push((f2, idx + 1));
                }
            }
            violations.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
        }
        HallScope::Connected => {
            for &root in &interior {
                let f0 = BTreeSet::from([root]);
                record(&f0);
                let mut stack: Vec<(BTreeSet<PointId>, BTreeSet<PointId>, Vec<PointId>)> =
                    Vec::new();
                if max_size > 1 {
                    let cands: Vec<PointId> = rel
                        .image_of(root)
                        .iter()
                        .copied()
                        .filter(|&c| c > root && c != root && window.is_interior(c))
                        .collect();
                    stack.push((f0, BTreeSet::new(), cands));
                }
                while let Some((f, excluded, mut cands)) = stack.pop() {
                    if f.len() >= max_size {
                        continue;
                    }
                    let c = match cands.pop() {
                        Some(c) => c,
                        None => continue,
                    };
                    let mut ex2 = excluded.clone();
                    ex2.insert(c);
                    stack.push((f.clone(), ex2, cands.clone()));
                    let mut f2 = f.clone();
                    f2.insert(c);
                    record(&f2);
                    let mut cands2 = cands;
                    for &y in rel.image_of(c) {
                        if y > root
                            && y != c
                            && window.is_interior(y)
                            && !f2.contains(&y)
                            && !excluded.contains(&y)
                            && !cands2.contains(&y)
                        {
                            cands2.push(y);
                        }
                    }
                    stack.push((f2, excluded, cands2));
                }
            }
            violations.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
            violations.dedup();
        }
    }
    violations
}

/// Solve the fiber-exact matching problem on a window.
///
/// Interior points supply exactly one in-window image along R, boundary
/// points at most one; interior fibers are pinned to d-1, boundary fibers
/// capped there. After the flow, unassigned boundary points greedily take
/// any neighbor with fiber room, in canonical order. Deterministic: the
/// network is built in canonical point order.
pub fn harem_matching(
    window: &CoarseWindow,
    rel: &EntourageRel,
    d: usize,
) -> Result<HaremFunction> {
    if d < 3 {
        return Err(Error::FiberBoundTooSmall(d));
    }
    let n = window.len();
    for x in 0..n {
        if rel.contains(x, x) {
            return Err(Error::ReflexivePair(x));
        }
        for &y in rel.image_of(x) {
            if !rel.contains(y, x) {
                return Err(Error::AsymmetricPair(x, y));
            }
        }
        if window.is_interior(x) && rel.image_of(x).is_empty() {
            return Err(Error::HaremInfeasible {
                detail: format!("interior point {x} has no admissible image"),
                hall_witness: None,
            });
        }
    }
    let fiber = (d - 1) as u64;
    let interior: Vec<bool> = (0..n).map(|p| window.is_interior(p)).collect();
    let interior_count = interior.iter().filter(|&&b| b).count() as u64;

    // nodes: s, t, fiber side y_i, supply side x_j, then the transform pair
    let s = 0;
    let t = 1;
    let y_node = |i: usize| 2 + i;
    let x_node = |j: usize| 2 + n + j;
    let ss = 2 + 2 * n;
    let tt = 3 + 2 * n;
    let mut net = FlowNetwork::new(4 + 2 * n);

    // s → y_i carrying the fiber of y_i: lower = upper = d-1 at interior
    for (i, &inner) in interior.iter().enumerate() {
        if !inner {
            net.add_edge(s, y_node(i), fiber);
        }
    }
    // y → x: x may choose the image y, for every (x, y) ∈ R
    let mut choice_edges: Vec<(usize, usize, usize)> = Vec::new();
    for x in 0..n {
        for &y in rel.image_of(x) {
            let id = net.add_edge(y_node(y), x_node(x), 1);
            choice_edges.push((x, y, id));
        }
    }
    // x → t: exactly one choice at interior points (lower = upper = 1),
    // at most one at the boundary
    for (j, &inner) in interior.iter().enumerate() {
        if !inner {
            net.add_edge(x_node(j), t, 1);
        }
    }
    // t → s closes the circulation
    net.add_edge(t, s, INF_CAP);
    // excess/deficit arcs for the lower bounds
    let mut required = 0u64;
    for (i, &inner) in interior.iter().enumerate() {
        if inner {
            net.add_edge(ss, y_node(i), fiber);
            required += fiber;
        }
    }
    net.add_edge(ss, t, interior_count);
    required += interior_count;
    net.add_edge(s, tt, fiber * interior_count);
    for (j, &inner) in interior.iter().enumerate() {
        if inner {
            net.add_edge(x_node(j), tt, 1);
        }
    }

    let value = net.max_flow(ss, tt);
    if value < required {
        // extract a Hall violation from the interior fiber nodes on the
        // source side of the min cut, then recount it independently
        let side = net.residual_side(ss);
        let f: Vec<PointId> = (0..n).filter(|&i| interior[i] && side[y_node(i)]).collect();
        let image = rel.image_of_set(f.iter());
        let witness = if !f.is_empty() && image.len() < (d - 1) * f.len() {
            Some(HallWitness {
                required: (d - 1) * f.len(),
                image_size: image.len(),
                set: f,
            })
        } else {
            None
        };
        return Err(Error::HaremInfeasible {
            detail: format!("flow {value} of required {required}"),
            hall_witness: witness,
        });
    }

    let mut map: Vec<Option<PointId>> = vec![None; n];
    let mut fiber_count = vec![0usize; n];
    for &(x, y, id) in &choice_edges {
        if net.flow_on(id) == 1 {
            debug_assert!(map[x].is_none(), "two images for point {x}");
            map[x] = Some(y);
            fiber_count[y] += 1;
        }
    }
    debug_assert!((0..n).all(|x| !interior[x] || map[x].is_some()));
    // top up unassigned boundary points where fiber room remains
    for (x, slot) in map.iter_mut().enumerate() {
        if slot.is_some() {
            continue;
        }
        let room = rel
            .image_of(x)
            .iter()
            .copied()
            .find(|&y| !interior[y] && fiber_count[y] < d - 1);
        if let Some(y) = room {
            *slot = Some(y);
            fiber_count[y] += 1;
        }
    }
    Ok(HaremFunction {
        map,
        fiber_target: d - 1,
        certified: window.interior_points().collect(),
        relation: rel.clone(),
    })
}

/// One defect found by [`verify_harem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HaremDefect {
    NotInRelation { x: PointId, image: PointId },
    FixedPoint { x: PointId },
    Fiber { target: PointId, got: usize },
    MissingImage { x: PointId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaremReport {
    pub pass: bool,
    pub defects: Vec<HaremDefect>,
}

/// Recount a matching function's certificate from scratch: graph
/// inclusion, fixed-point freeness, interior totality, exact certified
/// fibers.
pub fn verify_harem(f: &HaremFunction) -> HaremReport {
    let n = f.map.len();
    let mut defects = Vec::new();
    let mut fiber_count = vec![0usize; n];
    for x in 0..n {
        let y = match f.map[x] {
            Some(y) => y,
            None => {
                if f.certified.contains(&x) {
                    defects.push(HaremDefect::MissingImage { x });
                }
                continue;
            }
        };
        fiber_count[y] += 1;
        if !f.relation.contains(x, y) {
            defects.push(HaremDefect::NotInRelation { x, image: y });
        }
        if f.relation.irreflexive && x == y {
            defects.push(HaremDefect::FixedPoint { x });
        }
    }
    for &p in &f.certified {
        if fiber_count[p] != f.fiber_target {
            defects.push(HaremDefect::Fiber {
                target: p,
                got: fiber_count[p],
            });
        }
    }
    HaremReport {
        pass: defects.is_empty(),
        defects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarse::{make_window, SpaceSpec};

    #[test]
    fn hall_violations_on_the_line() {
        let w = make_window(SpaceSpec::Line, 6).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        let violations = hall_check_small(&w, &r, 3, 2, HallScope::Connected);
        assert!(!violations.is_empty());
        // the two-point interval has a four-point image
        let pair = violations.iter().find(|v| v.set.len() == 2).unwrap();
        assert_eq!(pair.image_size, 4);
        // vacuous cap
        assert!(hall_check_small(&w, &r, 3, 0, HallScope::AllSubsets).is_empty());
        // the full enumeration sees the same sets at this size
        let all = hall_check_small(&w, &r, 3, 2, HallScope::AllSubsets);
        for v in &violations {
            assert!(all.contains(v));
        }
    }

    #[test]
    fn no_hall_violations_on_the_tree() {
        let w = make_window(SpaceSpec::Tree, 4).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        let violations = hall_check_small(&w, &r, 3, 4, HallScope::Connected);
        assert!(violations.is_empty());
    }

    #[test]
    fn matching_feasible_on_tree() {
        let w = make_window(SpaceSpec::Tree, 4).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        let f = harem_matching(&w, &r, 4).unwrap();
        let report = verify_harem(&f);
        assert!(report.pass, "defects: {:?}", report.defects);
        // fixed-point freeness and certified fiber sizes, recounted by hand
        for x in 0..w.len() {
            assert_ne!(f.map[x], Some(x));
            if w.is_interior(x) {
                assert!(f.map[x].is_some());
            }
        }
        for &p in &f.certified {
            assert_eq!(f.fiber(p).len(), 3);
        }
    }

    #[test]
    fn matching_infeasible_on_line_with_witness() {
        let w = make_window(SpaceSpec::Line, 30).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        match harem_matching(&w, &r, 4) {
            Err(Error::HaremInfeasible {
                hall_witness: Some(witness),
                ..
            }) => {
                let f: BTreeSet<usize> = witness.set.iter().copied().collect();
                let image = r.image_of_set(f.iter());
                assert_eq!(image.len(), witness.image_size);
                assert!(witness.image_size < 3 * f.len());
                assert!(f.iter().all(|&p| w.is_interior(p)));
            }
            other => panic!("expected infeasibility with witness, got {other:?}"),
        }
    }

    #[test]
    fn empty_interior_certifies_nothing() {
        use crate::coarse::{Ambient, CoarseWindow};
        let ambient = Ambient {
            spec: SpaceSpec::Line,
            radius: 2,
        };
        let labels: Vec<String> = (-2..=2i64).map(|x| x.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| [(i, i + 1), (i + 1, i)]).collect();
        let w = CoarseWindow::from_parts(ambient, labels, &pairs, &BTreeSet::new(), 1).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        let f = harem_matching(&w, &r, 4).unwrap();
        assert!(f.certified.is_empty());
        assert!(verify_harem(&f).pass);
        // the top-up pass still assigns images where room exists
        assert!(f.map.iter().filter(|m| m.is_some()).count() > 0);
    }

    #[test]
    fn planted_defects_are_reported() {
        let w = make_window(SpaceSpec::Tree, 3).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        let f = harem_matching(&w, &r, 4).unwrap();

        let mut fixed = f.clone();
        let p = *fixed.certified.iter().next().unwrap();
        fixed.map[p] = Some(p);
        let report = verify_harem(&fixed);
        assert!(report.defects.contains(&HaremDefect::FixedPoint { x: p }));

        let mut broken = f.clone();
        // move one preimage of some certified target to another neighbor
        let (target, donor) = broken
            .certified
            .iter()
            .find_map(|&t| {
                broken
                    .fiber(t)
                    .into_iter()
                    .find(|&x| broken.relation.image_of(x).len() > 1)
                    .map(|donor| (t, donor))
            })
            .unwrap();
        let other = *broken
            .relation
            .image_of(donor)
            .iter()
            .find(|&&y| y != target)
            .unwrap();
        broken.map[donor] = Some(other);
        let report = verify_harem(&broken);
        assert!(report
            .defects
            .iter()
            .any(|d| matches!(d, HaremDefect::Fiber { target: t, got: 2 } if *t == target)));

        let mut missing = f.clone();
        let q = *missing.certified.iter().next().unwrap();
        missing.map[q] = None;
        let report = verify_harem(&missing);
        assert!(report.defects.contains(&HaremDefect::MissingImage { x: q }));
    }

    #[test]
    fn determinism() {
        let w = make_window(SpaceSpec::Tree, 4).unwrap();
        let r = EntourageRel::generator_minus_diagonal(&w);
        let f1 = harem_matching(&w, &r, 4).unwrap();
        let f2 = harem_matching(&w, &r, 4).unwrap();
        assert_eq!(f1, f2);
    }
}
