//! Finite windows into coarse spaces.
//!
//! A window holds a finite patch of an infinite space together with the
//! one-step entourage restricted to the patch. The `interior` marks points
//! whose full one-step ambient neighborhood is inside the window, so
//! one-step computations there agree with the ambient space. Everything a
//! window reports that could be distorted by the boundary carries a
//! `certified` flag.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_group::{self, ReducedWord};

pub type PointId = usize;

/// Which infinite space a window truncates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum SpaceSpec {
    /// The integer line with its Euclidean metric.
    Line,
    /// The lattice Z² with the l¹ metric.
    Grid,
    /// The 4-regular tree, i.e. the standard Cayley graph of F(a, b).
    Tree,
    /// N partitioned into intervals of lengths 1, 2, …, k; within an
    /// interval the distance is |x - y|, across intervals it is max(x, y).
    IntervalSpace { k: u32 },
    /// Z acted on by the lamplighter group Sym(n) ≀ Z, generated by the
    /// n-step shift and the transposition lamp at position 0.
    Schreier { n: u64 },
    /// N with its Euclidean metric.
    Halfline,
}

impl SpaceSpec {
    pub fn name(&self) -> String {
        match self {
            SpaceSpec::Line => "line".into(),
            SpaceSpec::Grid => "grid".into(),
            SpaceSpec::Tree => "tree4".into(),
            SpaceSpec::IntervalSpace { k } => format!("interval:{k}"),
            SpaceSpec::Schreier { n } => format!("schreier:{n}"),
            SpaceSpec::Halfline => "halfline".into(),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpaceSpec> {
        let lower = s.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("interval:") {
            let k: u32 = rest.parse().map_err(|_| Error::UnknownSpace(s.into()))?;
            if k == 0 {
                return Err(Error::UnknownSpace(s.into()));
            }
            return Ok(SpaceSpec::IntervalSpace { k });
        }
        if let Some(rest) = lower.strip_prefix("schreier:") {
            let n: u64 = rest.parse().map_err(|_| Error::UnknownSpace(s.into()))?;
            if n == 0 {
                return Err(Error::UnknownSpace(s.into()));
            }
            return Ok(SpaceSpec::Schreier { n });
        }
        match lower.as_str() {
            "line" | "z" => Ok(SpaceSpec::Line),
            "grid" | "z2" => Ok(SpaceSpec::Grid),
            "tree" | "tree4" => Ok(SpaceSpec::Tree),
            "halfline" | "n" => Ok(SpaceSpec::Halfline),
            _ => Err(Error::UnknownSpace(s.into())),
        }
    }
}

/// Descriptor of the truncation: the space plus the ball radius taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ambient {
    #[serde(flatten)]
    pub spec: SpaceSpec,
    pub radius: u64,
}

/// A finite truncation of a coarse space.
///
/// Points are indexed 0..n-1 in the gallery's canonical order; all
/// tie-breaking anywhere in the crate is by ascending point index. The
/// relation is symmetric and implicitly contains the diagonal; `adj`
/// stores the non-diagonal neighbors, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseWindow {
    ambient: Ambient,
    labels: Vec<String>,
    adj: Vec<Vec<PointId>>,
    interior: Vec<bool>,
    interior_margin: u32,
    basepoint: PointId,
    depth: Vec<u64>,
}

/// Result of a neighborhood computation, flagged exact or clipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub points: BTreeSet<PointId>,
    pub certified: bool,
}

/// A derived relation over a window's points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntourageRel {
    out: Vec<Vec<PointId>>,
    pub power_of_base: Option<u32>,
    pub symmetric: bool,
    pub irreflexive: bool,
}

impl EntourageRel {
    /// The window's one-step entourage E, diagonal included.
    pub fn generator(window: &CoarseWindow) -> EntourageRel {
        let out = (0..window.len())
            .map(|x| {
                let mut v = window.adj[x].clone();
                v.push(x);
                v.sort_unstable();
                v
            })
            .collect();
        EntourageRel {
            out,
            power_of_base: Some(1),
            symmetric: true,
            irreflexive: false,
        }
    }

    /// R = E ∖ Δ: the one-step entourage with the diagonal removed.
    pub fn generator_minus_diagonal(window: &CoarseWindow) -> EntourageRel {
        EntourageRel {
            out: window.adj.clone(),
            power_of_base: None,
            symmetric: true,
            irreflexive: true,
        }
    }

    /// Eⁿ computed inside the window, clipped at the boundary.
    pub fn power(window: &CoarseWindow, n: u32) -> EntourageRel {
        let out = (0..window.len())
            .map(|x| {
                window
                    .neighborhood(n, &BTreeSet::from([x]))
                    .points
                    .into_iter()
                    .collect()
            })
            .collect();
        EntourageRel {
            out,
            power_of_base: Some(n),
            symmetric: true,
            irreflexive: false,
        }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn image_of(&self, x: PointId) -> &[PointId] {
        &self.out[x]
    }

    /// R\[F\] = ∪ { R\[x\] : x ∈ F }.
    pub fn image_of_set<'a>(&self, f: impl IntoIterator<Item = &'a PointId>) -> BTreeSet<PointId> {
        let mut image = BTreeSet::new();
        for &x in f {
            image.extend(self.out[x].iter().copied());
        }
        image
    }

    pub fn contains(&self, x: PointId, y: PointId) -> bool {
        self.out[x].binary_search(&y).is_ok()
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }
}

/// Search limits shared by the window searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Connected subsets are enumerated exhaustively up to this size.
    pub exhaustive_size: usize,
    /// Node budget for depth-first searches.
    pub dfs_nodes: usize,
    /// Sample count for randomized checks.
    pub samples: usize,
    /// Cap on greedy Følner growth per seed.
    pub greedy_growth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exhaustive_size: 10,
            dfs_nodes: 200_000,
            samples: 100,
            greedy_growth: 64,
        }
    }
}

/// A Følner-type witness: a set whose one-step neighborhood is small.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolnerWitness {
    pub set: Vec<PointId>,
    pub neighborhood_size: usize,
    pub ratio: (u64, u64),
}

/// Outcome of a Følner search. Absence of a witness is a statement about
/// the searched budget only, never a verdict about the ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolnerReport {
    pub theta: (u64, u64),
    pub witness: Option<FolnerWitness>,
    /// Connected subsets were exhausted up to this size.
    pub exhausted_connected_size: usize,
    pub greedy_seeds: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsdimVerdict {
    /// Component sizes did not grow with the window: consistent with
    /// asymptotic dimension zero.
    BoundedComponents,
    /// Components grow with the window: evidence of positive dimension.
    GrowingComponents,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsdimReport {
    pub component_sizes: Vec<usize>,
    pub max_component: usize,
    /// Smallest n ≥ 1 with Eⁿ = Eⁿ⁺¹ inside the window.
    pub stabilization_step: u32,
    pub comparison_radius: u64,
    pub comparison_max_component: usize,
    pub verdict: AsdimVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathReport {
    pub path: Vec<PointId>,
    /// True when the search ran to completion, so the path is optimal.
    pub complete: bool,
}

impl CoarseWindow {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn label(&self, p: PointId) -> &str {
        &self.labels[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Non-diagonal one-step neighbors, sorted ascending.
    pub fn neighbors(&self, p: PointId) -> &[PointId] {
        &self.adj[p]
    }

    pub fn is_interior(&self, p: PointId) -> bool {
        self.interior[p]
    }

    pub fn interior_points(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.len()).filter(|&p| self.interior[p])
    }

    pub fn interior_size(&self) -> usize {
        self.interior.iter().filter(|&&b| b).count()
    }

    pub fn interior_margin(&self) -> u32 {
        self.interior_margin
    }

    pub fn basepoint(&self) -> PointId {
        self.basepoint
    }

    /// Ambient distance from the basepoint.
    pub fn depth(&self, p: PointId) -> u64 {
        self.depth[p]
    }

    pub fn max_depth(&self) -> u64 {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn index_of_label(&self, label: &str) -> Option<PointId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Eⁿ\[F\] computed inside the window; clipped at the boundary when the
    /// margin is insufficient, in which case `certified` is false.
    pub fn neighborhood(&self, n: u32, f: &BTreeSet<PointId>) -> Neighborhood {
        for &p in f {
            assert!(p < self.len(), "point {p} out of range");
        }
        let certified =
            n == 0 || (n <= self.interior_margin && f.iter().all(|&p| self.interior[p]));
        let mut points: BTreeSet<PointId> = f.clone();
        let mut frontier: Vec<PointId> = f.iter().copied().collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &self.adj[x] {
                    if points.insert(y) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Neighborhood { points, certified }
    }

    /// |E\[F\]| / |F| as an exact rational; F must be nonempty and interior
    /// so the neighborhood is exact.
    pub fn expansion_ratio(&self, f: &BTreeSet<PointId>) -> Result<Ratio<u64>> {
        if f.is_empty() {
            return Err(Error::EmptySet);
        }
        for &p in f {
            if p >= self.len() {
                return Err(Error::PointOutOfRange {
                    point: p,
                    size: self.len(),
                });
            }
            if !self.interior[p] {
                return Err(Error::NotInterior { point: p });
            }
        }
        let nb = self.neighborhood(1, f);
        debug_assert!(nb.certified);
        Ok(Ratio::new(nb.points.len() as u64, f.len() as u64))
    }

    /// Search for a nonempty interior F with |E\[F\]| ≤ θ|F|.
    ///
    /// Two phases: greedy connected growth from every interior seed, then
    /// exhaustive enumeration of connected interior subsets up to
    /// `budget.exhaustive_size`, pruned by the monotonicity of F ↦ |E\[F\]|.
    /// Disconnected sets are outside the enumerated budget; the report
    /// states exactly what was searched.
    pub fn folner_search(&self, theta: Ratio<u64>, budget: &SearchBudget) -> Result<FolnerReport> {
        if theta <= Ratio::new(1, 1) {
            return Err(Error::BadRational(format!(
                "theta must exceed 1, got {theta}"
            )));
        }
        let ratio_le = |nb: usize, size: usize| Ratio::new(nb as u64, size as u64) <= theta;
        let interior: Vec<PointId> = self.interior_points().collect();
        let mut greedy_seeds = 0;

        let finish =
            |set: BTreeSet<PointId>, exhausted: usize, seeds: usize| -> Result<FolnerReport> {
                // recount the certificate independently of the search bookkeeping
                let ratio = self.expansion_ratio(&set)?;
                debug_assert!(ratio <= theta);
                let nb = self.neighborhood(1, &set);
                Ok(FolnerReport {
                    theta: (*theta.numer(), *theta.denom()),
                    witness: Some(FolnerWitness {
                        set: set.into_iter().collect(),
                        neighborhood_size: nb.points.len(),
                        ratio: (*ratio.numer(), *ratio.denom()),
                    }),
                    exhausted_connected_size: exhausted,
                    greedy_seeds: seeds,
                })
            };

        // Phase 1: greedy growth.
        for &seed in &interior {
            greedy_seeds += 1;
            let mut f: BTreeSet<PointId> = BTreeSet::from([seed]);
            let mut nb = self.neighborhood(1, &f).points;
            loop {
                if ratio_le(nb.len(), f.len()) {
                    return finish(f, 0, greedy_seeds);
                }
                if f.len() >= budget.greedy_growth {
                    break;
                }
                // candidate minimizing the grown neighborhood, smallest index on ties
                let mut best: Option<(usize, PointId)> = None;
                for &c in nb.iter() {
                    if f.contains(&c) || !self.interior[c] {
                        continue;
                    }
                    let grown = nb.len() + self.adj[c].iter().filter(|y| !nb.contains(*y)).count();
                    if best.map(|(g, _)| grown < g).unwrap_or(true) {
                        best = Some((grown, c));
                    }
                }
                match best {
                    Some((_, c)) => {
                        f.insert(c);
                        nb.insert(c);
                        nb.extend(self.adj[c].iter().copied());
                    }
                    None => break,
                }
            }
        }

        // Phase 2: exhaustive over connected interior subsets, size-capped.
        // |E[F]| is monotone in F, so a branch whose neighborhood already
        // exceeds θ·max_size cannot complete to a witness.
        let max_size = budget.exhaustive_size;
        let prune_bound = theta * Ratio::new(max_size as u64, 1);
        let exceeds = |nb_size: usize| Ratio::new(nb_size as u64, 1) > prune_bound;
        if max_size > 0 {
            for &root in &interior {
                // connected subsets whose minimum element is `root`
                let mut stack: Vec<(BTreeSet<PointId>, BTreeSet<PointId>, Vec<PointId>)> =
                    Vec::new();
                let f0 = BTreeSet::from([root]);
                let nb0 = self.neighborhood(1, &f0).points;
                if ratio_le(nb0.len(), 1) {
                    return finish(f0, 0, greedy_seeds);
                }
                if !exceeds(nb0.len()) {
                    let cands: Vec<PointId> = nb0
                        .iter()
                        .copied()
                        .filter(|&c| c > root && self.interior[c])
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
                    // branch 1: exclude c
                    let mut ex2 = excluded.clone();
                    ex2.insert(c);
                    stack.push((f.clone(), ex2, cands.clone()));
                    // branch 2: include c
                    let mut f2 = f.clone();
                    f2.insert(c);
                    let nb2 = self.neighborhood(1, &f2).points;
                    if ratio_le(nb2.len(), f2.len()) {
                        return finish(f2, 0, greedy_seeds);
                    }
                    if exceeds(nb2.len()) {
                        continue;
                    }
                    let mut cands2 = cands;
                    for &y in &self.adj[c] {
                        if y > root
                            && self.interior[y]
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
        }

        Ok(FolnerReport {
            theta: (*theta.numer(), *theta.denom()),
            witness: None,
            exhausted_connected_size: max_size,
            greedy_seeds,
        })
    }

    /// Connected components of Γ(E) in the window, plus a comparison with
    /// a concentric window of half the radius.
    pub fn asdim_zero_probe(&self) -> Result<AsdimReport> {
        let comps = components(self.len(), &self.adj);
        let mut component_sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        component_sizes.sort_unstable();
        let max_component = component_sizes.last().copied().unwrap_or(0);

        // Eⁿ stabilizes in-window exactly at the largest eccentricity.
        let mut max_ecc = 0u32;
        for p in 0..self.len() {
            let dists = self.bfs_distances(&[p]);
            for d in dists.into_iter().flatten() {
                max_ecc = max_ecc.max(d);
            }
        }
        let stabilization_step = max_ecc.max(1);

        let comparison_radius = (self.ambient.radius / 2).max(1);
        let smaller = make_window(self.ambient.spec, comparison_radius)?;
        let smaller_comps = components(smaller.len(), &smaller.adj);
        let comparison_max_component = smaller_comps.iter().map(|c| c.len()).max().unwrap_or(0);

        let verdict = if max_component > comparison_max_component {
            AsdimVerdict::GrowingComponents
        } else {
            AsdimVerdict::BoundedComponents
        };
        Ok(AsdimReport {
            component_sizes,
            max_component,
            stabilization_step,
            comparison_radius,
            comparison_max_component,
            verdict,
        })
    }

    /// Longest injective E-step path found by depth-first search with
    /// ascending-index ordering, avoiding `forbidden`. Optimal whenever the
    /// node budget was not exhausted.
    pub fn longest_injective_path(
        &self,
        start: Option<PointId>,
        forbidden: &BTreeSet<PointId>,
        dfs_nodes: usize,
    ) -> Result<PathReport> {
        if let Some(s) = start {
            if s >= self.len() {
                return Err(Error::PointOutOfRange {
                    point: s,
                    size: self.len(),
                });
            }
            if forbidden.contains(&s) {
                return Err(Error::ForbiddenStart { start: s });
            }
        }
        let starts: Vec<PointId> = match start {
            Some(s) => vec![s],
            None => (0..self.len()).filter(|p| !forbidden.contains(p)).collect(),
        };
        let mut best: Vec<PointId> = Vec::new();
        let mut nodes = 0usize;
        let mut complete = true;
        let mut on_path = vec![false; self.len()];
        for s in starts {
            // iterative DFS: (path, per-level next neighbor cursor)
            let mut path = vec![s];
            on_path[s] = true;
            let mut cursors = vec![0usize];
            if best.is_empty() {
                best = path.clone();
            }
            while !path.is_empty() {
                if nodes >= dfs_nodes {
                    complete = false;
                    break;
                }
                let last = *path.last().unwrap();
                let cur = cursors.last_mut().unwrap();
                let mut advanced = false;
                while *cur < self.adj[last].len() {
                    let next = self.adj[last][*cur];
                    *cur += 1;
                    if on_path[next] || forbidden.contains(&next) {
                        continue;
                    }
                    nodes += 1;
                    path.push(next);
                    on_path[next] = true;
                    cursors.push(0);
                    if path.len() > best.len() {
                        best = path.clone();
                    }
                    advanced = true;
                    break;
                }
                if !advanced {
                    let done = path.pop().unwrap();
                    on_path[done] = false;
                    cursors.pop();
                }
            }
            for &p in &path {
                on_path[p] = false;
            }
            if !complete {
                break;
            }
        }
        Ok(PathReport {
            path: best,
            complete,
        })
    }

    /// BFS distances from a set of sources, inside the window.
    pub fn bfs_distances(&self, sources: &[PointId]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// The same ambient at half the radius.
    pub fn shrunk(&self) -> Result<CoarseWindow> {
        make_window(self.ambient.spec, (self.ambient.radius / 2).max(1))
    }

    /// Build a window from raw parts, validating the invariants.
    pub fn from_parts(
        ambient: Ambient,
        labels: Vec<String>,
        pairs: &[(PointId, PointId)],
        interior: &BTreeSet<PointId>,
        interior_margin: u32,
    ) -> Result<CoarseWindow> {
        let n = labels.len();
        let mut adj: Vec<BTreeSet<PointId>> = vec![BTreeSet::new(); n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::PointOutOfRange {
                    point: x.max(y),
                    size: n,
                });
            }
            if x != y {
                adj[x].insert(y);
            }
        }
        for x in 0..n {
            for &y in adj[x].clone().iter() {
                if !adj[y].contains(&x) {
                    return Err(Error::BadJson(format!(
                        "relation is not symmetric: ({x}, {y}) without ({y}, {x})"
                    )));
                }
            }
        }
        for &p in interior {
            if p >= n {
                return Err(Error::PointOutOfRange { point: p, size: n });
            }
        }
        let adj: Vec<Vec<PointId>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let interior_flags = (0..n).map(|p| interior.contains(&p)).collect();
        finish_window(ambient, labels, adj, interior_flags, interior_margin)
    }

    pub fn to_json(&self) -> WindowJson {
        let mut relation: Vec<[usize; 2]> = (0..self.len()).map(|x| [x, x]).collect();
        for (x, ys) in self.adj.iter().enumerate() {
            for &y in ys {
                relation.push([x, y]);
            }
        }
        relation.sort_unstable();
        WindowJson {
            ambient: self.ambient,
            points: (0..self.len()).collect(),
            labels: self.labels.clone(),
            relation,
            interior: self.interior_points().collect(),
            interior_margin: self.interior_margin,
        }
    }

    pub fn from_json(j: &WindowJson) -> Result<CoarseWindow> {
        if j.points.len() != j.labels.len() || j.points.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::BadJson(
                "points must be the contiguous indices 0..n-1 matching labels".into(),
            ));
        }
        let pairs: Vec<(usize, usize)> = j.relation.iter().map(|&[x, y]| (x, y)).collect();
        let interior: BTreeSet<usize> = j.interior.iter().copied().collect();
        CoarseWindow::from_parts(
            j.ambient,
            j.labels.clone(),
            &pairs,
            &interior,
            j.interior_margin,
        )
    }
}

/// Serialized window form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowJson {
    pub ambient: Ambient,
    pub points: Vec<usize>,
    pub labels: Vec<String>,
    pub relation: Vec<[usize; 2]>,
    pub interior: Vec<usize>,
    pub interior_margin: u32,
}

impl fmt::Display for CoarseWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} radius {}: {} points, {} interior",
            self.ambient.spec.name(),
            self.ambient.radius,
            self.len(),
            self.interior_size()
        )
    }
}

/// Connected components of a symmetric adjacency structure, each sorted,
/// ordered by smallest member.
pub fn components(n: usize, adj: &[Vec<PointId>]) -> Vec<Vec<PointId>> {
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn finish_window(
    ambient: Ambient,
    labels: Vec<String>,
    adj: Vec<Vec<PointId>>,
    interior: Vec<bool>,
    interior_margin: u32,
) -> Result<CoarseWindow> {
    let mut w = CoarseWindow {
        ambient,
        labels,
        adj,
        interior,
        interior_margin,
        basepoint: 0,
        depth: Vec::new(),
    };
    w.depth = compute_depths(&w)?;
    w.basepoint = w
        .depth
        .iter()
        .position(|&d| d == 0)
        .ok_or_else(|| Error::BadJson("no basepoint (depth-0 point) found".into()))?;
    Ok(w)
}

fn compute_depths(w: &CoarseWindow) -> Result<Vec<u64>> {
    let parse_i64 = |label: &str| -> Result<i64> {
        label
            .parse::<i64>()
            .map_err(|_| Error::BadJson(format!("label `{label}` is not an integer")))
    };
    match w.ambient.spec {
        SpaceSpec::Line | SpaceSpec::Halfline => w
            .labels
            .iter()
            .map(|l| Ok(parse_i64(l)?.unsigned_abs()))
            .collect(),
        SpaceSpec::Grid => w
            .labels
            .iter()
            .map(|l| {
                let (x, y) = parse_grid_label(l)?;
                Ok(x.unsigned_abs() + y.unsigned_abs())
            })
            .collect(),
        SpaceSpec::Tree => w
            .labels
            .iter()
            .map(|l| {
                let word: ReducedWord = l.parse()?;
                Ok(word.len() as u64)
            })
            .collect(),
        SpaceSpec::IntervalSpace { .. } => w
            .labels
            .iter()
            .map(|l| {
                let x = parse_i64(l)?;
                Ok(if x == 1 { 0 } else { x as u64 })
            })
            .collect(),
        SpaceSpec::Schreier { .. } => {
            // ball windows contain all basepoint geodesics, so the window
            // BFS distance from the basepoint is the ambient distance
            let base = w
                .labels
                .iter()
                .position(|l| l == "0")
                .ok_or_else(|| Error::BadJson("schreier window lacks point 0".into()))?;
            let mut dist = vec![None; w.len()];
            dist[base] = Some(0u64);
            let mut queue = VecDeque::from([base]);
            while let Some(x) = queue.pop_front() {
                let d = dist[x].unwrap();
                for &y in &w.adj[x] {
                    if dist[y].is_none() {
                        dist[y] = Some(d + 1);
                        queue.push_back(y);
                    }
                }
            }
            dist.into_iter()
                .map(|d| d.ok_or_else(|| Error::BadJson("disconnected schreier window".into())))
                .collect()
        }
    }
}

fn parse_grid_label(label: &str) -> Result<(i64, i64)> {
    let inner = label
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::BadJson(format!("bad grid label `{label}`")))?;
    let mut parts = inner.split(',');
    let x = parts
        .next()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .ok_or_else(|| Error::BadJson(format!("bad grid label `{label}`")))?;
    let y = parts
        .next()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .ok_or_else(|| Error::BadJson(format!("bad grid label `{label}`")))?;
    Ok((x, y))
}

/// Build the radius-`radius` ball around the basepoint of the given space,
/// with the one-step relation and a margin-1 interior.
pub fn make_window(spec: SpaceSpec, radius: u64) -> Result<CoarseWindow> {
    if radius < 1 {
        return Err(Error::RadiusTooSmall);
    }
    let ambient = Ambient { spec, radius };
    match spec {
        SpaceSpec::Line => {
            let r = radius as i64;
            let labels: Vec<String> = (-r..=r).map(|x| x.to_string()).collect();
            let n = labels.len();
            let adj = (0..n)
                .map(|i| {
                    let mut v = Vec::new();
                    if i > 0 {
                        v.push(i - 1);
                    }
                    if i + 1 < n {
                        v.push(i + 1);
                    }
                    v
                })
                .collect();
            let interior = (0..n).map(|i| i > 0 && i + 1 < n).collect();
            finish_window(ambient, labels, adj, interior, 1)
        }
        SpaceSpec::Halfline => {
            let labels: Vec<String> = (0..=radius).map(|x| x.to_string()).collect();
            let n = labels.len();
            let adj = (0..n)
                .map(|i| {
                    let mut v = Vec::new();
                    if i > 0 {
                        v.push(i - 1);
                    }
                    if i + 1 < n {
                        v.push(i + 1);
                    }
                    v
                })
                .collect();
            // 0 has no ambient neighbor below, so it is interior
            let interior = (0..n).map(|i| i + 1 < n).collect();
            finish_window(ambient, labels, adj, interior, 1)
        }
        SpaceSpec::Grid => {
            let r = radius as i64;
            let mut coords: Vec<(i64, i64)> = Vec::new();
            for x in -r..=r {
                for y in -r..=r {
                    if x.abs() + y.abs() <= r {
                        coords.push((x, y));
                    }
                }
            }
            coords.sort_unstable();
            let index: BTreeMap<(i64, i64), usize> =
                coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let labels = coords.iter().map(|(x, y)| format!("({x},{y})")).collect();
            let adj = coords
                .iter()
                .map(|&(x, y)| {
                    let mut v: Vec<usize> = [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
                        .iter()
                        .filter_map(|c| index.get(c).copied())
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let interior = coords.iter().map(|&(x, y)| x.abs() + y.abs() < r).collect();
            finish_window(ambient, labels, adj, interior, 1)
        }
        SpaceSpec::Tree => {
            let words = free_group::enumerate_ball(radius as usize);
            let index: BTreeMap<ReducedWord, usize> = words
                .iter()
                .enumerate()
                .map(|(i, w)| (w.clone(), i))
                .collect();
            let labels = words.iter().map(|w| w.to_string()).collect();
            let adj = words
                .iter()
                .map(|w| {
                    let mut v: Vec<usize> = crate::free_group::Letter::ALL
                        .iter()
                        .filter_map(|&l| index.get(&w.mul(&ReducedWord::letter(l))).copied())
                        .collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let interior = words.iter().map(|w| (w.len() as u64) < radius).collect();
            finish_window(ambient, labels, adj, interior, 1)
        }
        SpaceSpec::IntervalSpace { k } => {
            let total = (k as u64) * (k as u64 + 1) / 2;
            let top = radius.min(total);
            let labels: Vec<String> = (1..=top).map(|x| x.to_string()).collect();
            let n = labels.len();
            let same_interval = |x: u64, y: u64| interval_index(x) == interval_index(y);
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|i| {
                    let x = (i + 1) as u64;
                    let mut v = Vec::new();
                    if x > 1 && same_interval(x, x - 1) {
                        v.push(i - 1);
                    }
                    if x < top && same_interval(x, x + 1) {
                        v.push(i + 1);
                    }
                    v
                })
                .collect();
            // every ambient neighbor of x is x±1 within its interval; only a
            // point cut off from its upper interval mate is non-interior
            let interior: Vec<bool> = (0..n)
                .map(|i| {
                    let x = (i + 1) as u64;
                    !(x == top && x < total && same_interval(x, x + 1))
                })
                .collect();
            finish_window(ambient, labels, adj, interior, 1)
        }
        SpaceSpec::Schreier { n } => {
            let n_i = n as i64;
            let lamp = |z: i64| -> i64 {
                // transposition (0 1) at lamp position 0: acts on residues of block 0
                if n >= 2 {
                    match z {
                        0 => 1,
                        1 => 0,
                        _ => z,
                    }
                } else {
                    z
                }
            };
            let moves = |z: i64| -> Vec<i64> {
                let mut m = vec![z + n_i, z - n_i];
                let l = lamp(z);
                if l != z {
                    m.push(l);
                }
                m
            };
            // BFS ball of the action graph
            let mut dist: BTreeMap<i64, u64> = BTreeMap::from([(0, 0)]);
            let mut queue = VecDeque::from([0i64]);
            while let Some(z) = queue.pop_front() {
                let d = dist[&z];
                if d == radius {
                    continue;
                }
                for m in moves(z) {
                    if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(m) {
                        e.insert(d + 1);
                        queue.push_back(m);
                    }
                }
            }
            let zs: Vec<i64> = dist.keys().copied().collect();
            let index: BTreeMap<i64, usize> = zs.iter().enumerate().map(|(i, &z)| (z, i)).collect();
            let labels = zs.iter().map(|z| z.to_string()).collect();
            let adj: Vec<Vec<usize>> = zs
                .iter()
                .map(|&z| {
                    let mut v: Vec<usize> = moves(z)
                        .into_iter()
                        .filter_map(|m| index.get(&m).copied())
                        .collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect();
            let interior: Vec<bool> = zs
                .iter()
                .map(|&z| moves(z).into_iter().all(|m| index.contains_key(&m)))
                .collect();
            finish_window(ambient, labels, adj, interior, 1)
        }
    }
}

fn interval_index(x: u64) -> u64 {
    // interval j = { j(j-1)/2 + 1, …, j(j+1)/2 }, j ≥ 1
    let mut j = 1u64;
    while j * (j + 1) / 2 < x {
        j += 1;
    }
    j
}

/// Parse an exact rational like `3/2` or `2`.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || Error::BadRational(s.to_string());
    match parts.as_slice() {
        [n] => Ok(Ratio::new(n.trim().parse().map_err(|_| bad())?, 1)),
        [n, d] => {
            let num: u64 = n.trim().parse().map_err(|_| bad())?;
            let den: u64 = d.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(num, den))
        }
        _ => Err(bad()),
    }
}
