//! Exact solvers on copy hypergraphs: chromatic number, maximum copy-free
//! subset, and a search for small point sets forcing many colors.
//!
//! All searches are sequential depth-first with a fixed branching order, so
//! results, witnesses and node counts do not depend on the rayon pool.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::{enumerate_copies, is_copy, lattice, PointSet, Triangle};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("edge {edge:?} references vertex >= {n}")]
    VertexOutOfRange { edge: Vec<usize>, n: usize },
    #[error("empty edge")]
    EmptyEdge,
    #[error("edge {0:?} is not a triple")]
    NotATriple(Vec<usize>),
    #[error("edge {0:?} is not a copy of the triangle")]
    NotACopy(Vec<usize>),
    #[error("point count {points} does not match vertex count {n}")]
    PointCountMismatch { points: usize, n: usize },
}

/// Hypergraph whose edges are the vertex sets that may not be
/// monochromatic (or fully selected). Edges are sorted, deduplicated and
/// strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut norm = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.is_empty() {
                return Err(HypergraphError::EmptyEdge);
            }
            e.sort_unstable();
            e.dedup();
            if e.iter().any(|&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: e, n });
            }
            norm.push(e);
        }
        norm.sort();
        norm.dedup();
        Ok(Hypergraph { n, edges: norm })
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Sub-hypergraph induced on `keep` (sorted), reindexed to `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> Hypergraph {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| map[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| map[v]).collect())
            .collect();
        Hypergraph::new(keep.len(), edges).expect("induced edges are in range")
    }

    /// True when no edge is monochromatic.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n
            && self.edges.iter().all(|e| e.iter().any(|&v| colors[v] != colors[e[0]]))
    }

    /// True when no edge lies entirely inside `subset`.
    pub fn is_free_subset(&self, subset: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return false;
            }
            inside[v] = true;
        }
        self.edges.iter().all(|e| e.iter().any(|&v| !inside[v]))
    }
}

/// The 3-uniform hypergraph of copies of a triangle in a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyHypergraph<S> {
    graph: Hypergraph,
    points: PointSet<S>,
    triangle: Triangle<S>,
}

impl<S: Scalar> CopyHypergraph<S> {
    /// Validates every edge with an exact copy test.
    pub fn new(points: PointSet<S>, triangle: Triangle<S>, edges: Vec<[usize; 3]>) -> Result<Self, HypergraphError> {
        let n = points.len();
        for e in &edges {
            if e.iter().any(|&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: e.to_vec(), n });
            }
            if e[0] == e[1] || e[1] == e[2] || e[0] == e[2] {
                return Err(HypergraphError::NotATriple(e.to_vec()));
            }
            if !is_copy(points.get(e[0]), points.get(e[1]), points.get(e[2]), &triangle) {
                return Err(HypergraphError::NotACopy(e.to_vec()));
            }
        }
        let graph = Hypergraph::new(n, edges.into_iter().map(|e| e.to_vec()).collect())?;
        Ok(CopyHypergraph { graph, points, triangle })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn points(&self) -> &PointSet<S> {
        &self.points
    }

    pub fn triangle(&self) -> &Triangle<S> {
        &self.triangle
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n
    }

    pub fn triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.graph.edges.iter().map(|e| [e[0], e[1], e[2]])
    }
}

pub fn build_copy_hypergraph<S: Scalar>(points: &PointSet<S>, t: &Triangle<S>) -> CopyHypergraph<S> {
    let edges = enumerate_copies(points, t).into_iter().map(|e| e.to_vec()).collect();
    CopyHypergraph {
        graph: Hypergraph::new(points.len(), edges).expect("enumerated copies are in range"),
        points: points.clone(),
        triangle: t.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Color of each vertex.
    Coloring(Vec<usize>),
    /// Sorted vertex indices.
    Subset(Vec<usize>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    /// `None` when no coloring with at most `k_max` colors exists.
    pub optimum: Option<usize>,
    pub witness: Witness,
    /// Color counts shown infeasible by exhausted search.
    pub refuted: Vec<usize>,
    pub node_count: u64,
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("node budget of {budget} exhausted while testing {k} colors")]
pub struct BudgetExhausted {
    pub budget: u64,
    pub k: usize,
    /// Color counts refuted before the budget ran out.
    pub refuted: Vec<usize>,
}

/// Largest color count the bitmask domains support.
pub const MAX_COLORS: usize = 32;

/// Smallest `k <= k_max` with a proper coloring. `k_max` is capped at
/// [`MAX_COLORS`].
pub fn hypergraph_chromatic(h: &Hypergraph, k_max: usize) -> SolverResult {
    hypergraph_chromatic_budget(h, k_max, None).expect("no budget set")
}

pub fn hypergraph_chromatic_budget(
    h: &Hypergraph,
    k_max: usize,
    budget: Option<u64>,
) -> Result<SolverResult, BudgetExhausted> {
    let k_max = k_max.clamp(1, MAX_COLORS);
    let mut refuted = Vec::new();
    let mut nodes = 0u64;
    for k in 1..=k_max {
        let mut search = ColorSearch::new(h, k, budget.map(|b| b.saturating_sub(nodes)));
        let found = search.run();
        nodes += search.nodes;
        match found {
            Some(true) => {
                let coloring = search.color.iter().map(|&c| c as usize).collect();
                return Ok(SolverResult {
                    optimum: Some(k),
                    witness: Witness::Coloring(coloring),
                    refuted,
                    node_count: nodes,
                    deterministic: true,
                });
            }
            Some(false) => refuted.push(k),
            None => return Err(BudgetExhausted { budget: budget.unwrap_or(0), k, refuted }),
        }
    }
    Ok(SolverResult { optimum: None, witness: Witness::None, refuted, node_count: nodes, deterministic: true })
}

const UNSET: u8 = u8::MAX;

struct ColorSearch<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    order: Vec<usize>,
    k: usize,
    color: Vec<u8>,
    domain: Vec<u32>,
    trail: Vec<(usize, u32)>,
    nodes: u64,
    budget: Option<u64>,
}

impl<'a> ColorSearch<'a> {
    fn new(h: &'a Hypergraph, k: usize, budget: Option<u64>) -> Self {
        let deg = h.degrees();
        let mut order: Vec<usize> = (0..h.n).collect();
        order.sort_by(|&u, &v| deg[v].cmp(&deg[u]).then(u.cmp(&v)));
        let full = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
        ColorSearch {
            h,
            inc: h.incidence(),
            order,
            k,
            color: vec![UNSET; h.n],
            domain: vec![full; h.n],
            trail: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    /// `Some(found)`, or `None` when the budget ran out.
    fn run(&mut self) -> Option<bool> {
        self.dfs(0, 0)
    }

    fn dfs(&mut self, pos: usize, used: usize) -> Option<bool> {
        if pos == self.order.len() {
            return Some(true);
        }
        let v = self.order[pos];
        // New colors are introduced in order, so color labels are canonical.
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.domain[v] & (1 << c) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return None;
            }
            let mark = self.trail.len();
            self.color[v] = c as u8;
            if self.propagate(v, c as u8) {
                match self.dfs(pos + 1, used.max(c + 1)) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.color[v] = UNSET;
            while self.trail.len() > mark {
                let (u, d) = self.trail.pop().expect("trail above mark");
                self.domain[u] = d;
            }
        }
        Some(false)
    }

    /// An edge with every vertex but one in color `c` removes `c` from the
    /// last vertex. Returns false on a monochromatic edge or empty domain.
    fn propagate(&mut self, v: usize, c: u8) -> bool {
        for &ei in &self.inc[v] {
            let e = &self.h.edges[ei];
            let mut open = None;
            let mut blocked = false;
            for &u in e {
                match self.color[u] {
                    x if x == c => {}
                    UNSET if open.is_none() => open = Some(u),
                    _ => {
                        blocked = true;
                        break;
                    }
                }
            }
            if blocked {
                continue;
            }
            match open {
                None => return false,
                Some(u) => {
                    let bit = 1u32 << c;
                    if self.domain[u] & bit != 0 {
                        self.trail.push((u, self.domain[u]));
                        self.domain[u] &= !bit;
                        if self.domain[u] == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Largest block for which the exact subset table is precomputed.
pub const MAX_BLOCK: usize = 16;

/// Maximum vertex subset containing no whole edge; the witness is the
/// lexicographically smallest optimal subset. Uses consecutive index
/// blocks for the bound.
pub fn max_copy_free_subset(h: &Hypergraph) -> SolverResult {
    let blocks: Vec<Vec<usize>> =
        (0..h.n).collect::<Vec<_>>().chunks(MAX_BLOCK).map(|c| c.to_vec()).collect();
    max_copy_free_subset_blocks(h, &blocks)
}

/// As [`max_copy_free_subset`] with a caller-chosen partition of the
/// vertices into blocks of at most [`MAX_BLOCK`] vertices. Blocks only
/// affect pruning, never the result.
///
/// # Panics
/// If `blocks` is not a partition of the vertices or a block is too large.
pub fn max_copy_free_subset_blocks(h: &Hypergraph, blocks: &[Vec<usize>]) -> SolverResult {
    let mut s = SubsetSearch::new(h, blocks);
    s.dfs(0);
    let best = s.best.clone();
    debug_assert!(h.is_free_subset(&best));
    SolverResult {
        optimum: Some(best.len()),
        witness: Witness::Subset(best),
        refuted: Vec::new(),
        node_count: s.nodes,
        deterministic: true,
    }
}

struct Block {
    /// Best free subset size for each mask of locally available vertices.
    best: Vec<u8>,
}

impl Block {
    fn new(h: &Hypergraph, verts: &[usize], local: &[(usize, usize)]) -> Block {
        let size = verts.len();
        let mut by_low: Vec<Vec<u32>> = vec![Vec::new(); size];
        for e in &h.edges {
            let mut mask = 0u32;
            let mut ok = true;
            for &v in e {
                let (b, i) = local[v];
                if b != local[verts[0]].0 {
                    ok = false;
                    break;
                }
                mask |= 1 << i;
            }
            if ok {
                by_low[mask.trailing_zeros() as usize].push(mask);
            }
        }
        let total = 1usize << size;
        let mut free = vec![true; total];
        let mut best = vec![0u8; total];
        for mask in 1..total {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            free[mask] = free[rest] && by_low[low].iter().all(|&e| (e as usize) & mask != e as usize);
            best[mask] = if free[mask] {
                mask.count_ones() as u8
            } else {
                let mut m = 0;
                let mut bits = mask;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    m = m.max(best[mask ^ b]);
                    bits ^= b;
                }
                m
            };
        }
        Block { best }
    }
}

struct SubsetSearch<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    /// `(block, bit)` for each vertex.
    local: Vec<(usize, usize)>,
    blocks: Vec<Block>,
    /// Vertices still possible (chosen or undecided and not excluded).
    avail: Vec<u32>,
    chosen: Vec<bool>,
    current: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl<'a> SubsetSearch<'a> {
    fn new(h: &'a Hypergraph, blocks: &[Vec<usize>]) -> Self {
        let mut local = vec![(usize::MAX, 0); h.n];
        for (bi, b) in blocks.iter().enumerate() {
            assert!(b.len() <= MAX_BLOCK, "block of {} vertices exceeds {MAX_BLOCK}", b.len());
            for (i, &v) in b.iter().enumerate() {
                assert!(local[v].0 == usize::MAX, "vertex {v} in two blocks");
                local[v] = (bi, i);
            }
        }
        assert!(local.iter().all(|l| l.0 != usize::MAX), "blocks must cover every vertex");
        let built = blocks.iter().filter(|b| !b.is_empty()).map(|b| Block::new(h, b, &local)).collect::<Vec<_>>();
        // Re-number blocks after dropping empty ones.
        let mut renum = Vec::new();
        let mut next = 0;
        for b in blocks {
            renum.push(if b.is_empty() { usize::MAX } else { next });
            if !b.is_empty() {
                next += 1;
            }
        }
        for l in &mut local {
            l.0 = renum[l.0];
        }
        let avail = blocks
            .iter()
            .filter(|b| !b.is_empty())
            .map(|b| if b.len() == 32 { u32::MAX } else { (1u32 << b.len()) - 1 })
            .collect();
        SubsetSearch {
            h,
            inc: h.incidence(),
            local,
            blocks: built,
            avail,
            chosen: vec![false; h.n],
            current: Vec::new(),
            best: Vec::new(),
            nodes: 0,
        }
    }

    fn bound(&self) -> usize {
        let blocks: usize =
            self.blocks.iter().zip(&self.avail).map(|(b, &m)| b.best[m as usize] as usize).sum();
        blocks.min(self.matching_bound())
    }

    fn is_avail(&self, v: usize) -> bool {
        let (b, i) = self.local[v];
        self.avail[b] & (1 << i) != 0
    }

    /// Available vertices minus a greedy matching of disjoint edges that lie
    /// entirely in the available set (each needs one deletion).
    fn matching_bound(&self) -> usize {
        let avail: usize = self.avail.iter().map(|m| m.count_ones() as usize).sum();
        let mut used = vec![false; self.h.n];
        let mut matched = 0;
        for e in &self.h.edges {
            if e.iter().all(|&v| self.is_avail(v) && !used[v]) {
                for &v in e {
                    used[v] = true;
                }
                matched += 1;
            }
        }
        avail - matched
    }

    fn set_avail(&mut self, v: usize, on: bool) {
        let (b, i) = self.local[v];
        if on {
            self.avail[b] |= 1 << i;
        } else {
            self.avail[b] &= !(1 << i);
        }
    }

    fn dfs(&mut self, pos: usize) {
        self.nodes += 1;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if pos == self.h.n || self.bound() <= self.best.len() {
            return;
        }
        let v = pos;
        if self.is_avail(v) {
            // Include v; exclude vertices that would now complete an edge.
            self.chosen[v] = true;
            self.current.push(v);
            let mut excluded = Vec::new();
            let h = self.h;
            for idx in 0..self.inc[v].len() {
                let e = &h.edges[self.inc[v][idx]];
                let mut open = None;
                let mut count_open = 0;
                for &u in e {
                    if !self.chosen[u] {
                        count_open += 1;
                        open = Some(u);
                    }
                }
                if count_open == 1 {
                    let u = open.expect("one open vertex");
                    if u > v && self.is_avail(u) {
                        self.set_avail(u, false);
                        excluded.push(u);
                    }
                }
            }
            self.dfs(pos + 1);
            for u in excluded {
                self.set_avail(u, true);
            }
            self.current.pop();
            self.chosen[v] = false;
            // Exclude v.
            self.set_avail(v, false);
            self.dfs(pos + 1);
            self.set_avail(v, true);
        } else {
            self.dfs(pos + 1);
        }
    }
}

// ---------------------------------------------------------------------------
// Witness search

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("witness search needs k >= 2, got {0}")]
    InvalidK(usize),
    #[error("grid denominator and span must be positive")]
    InvalidGrid,
    #[error("node budget exhausted; largest chromatic lower bound observed is {largest_observed}")]
    BudgetExhausted { largest_observed: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessOptions {
    pub restarts: usize,
    pub seed: u64,
    /// Per solver call.
    pub node_budget: Option<u64>,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { restarts: 4, seed: 0, node_budget: Some(2_000_000) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome<S> {
    /// A point set needing at least `k` colors. Size-minimal only with
    /// respect to single-point deletions.
    Found { points: PointSet<S>, hypergraph: CopyHypergraph<S>, restart: usize },
    /// The whole candidate grid has a proper coloring with `k - 1` colors,
    /// so no subset of it is a witness.
    NotFound { grid_size: usize, coloring: Vec<usize> },
}

/// Looks for a small subset of `((1/q) Z)^2 ∩ [0, s]^2` whose copy
/// hypergraph has chromatic number at least `k`.
pub fn witness_search<S: Scalar>(
    t: &Triangle<S>,
    k: usize,
    q: i64,
    s: i64,
    opts: &WitnessOptions,
) -> Result<WitnessOutcome<S>, WitnessError> {
    if k < 2 {
        return Err(WitnessError::InvalidK(k));
    }
    if q <= 0 || s <= 0 {
        return Err(WitnessError::InvalidGrid);
    }
    let side = q * s + 1;
    let step = S::one() / S::from_int(q);
    let grid = PointSet::grid(side, side, &step);
    let full = grid_hypergraph(t, q, side);
    let base = match hypergraph_chromatic_budget(&full, k - 1, opts.node_budget) {
        Err(e) => return Err(WitnessError::BudgetExhausted { largest_observed: e.refuted.last().map_or(1, |r| r + 1) }),
        Ok(r) => r,
    };
    if let Witness::Coloring(coloring) = base.witness {
        return Ok(WitnessOutcome::NotFound { grid_size: grid.len(), coloring });
    }

    let core: Vec<usize> = {
        let deg = full.degrees();
        (0..full.n).filter(|&v| deg[v] > 0).collect()
    };
    let runs: Vec<Vec<usize>> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(r as u64));
            shrink(&full, core.clone(), k, opts.node_budget, &mut rng)
        })
        .collect();
    let (restart, best) = runs
        .into_iter()
        .enumerate()
        .min_by_key(|(i, v)| (v.len(), *i))
        .expect("at least one restart");
    let points = grid.subset(&best);
    let hypergraph = build_copy_hypergraph(&points, t);
    Ok(WitnessOutcome::Found { points, hypergraph, restart })
}

/// Copy hypergraph of the `side x side` grid with step `1/q`, via integer
/// offsets. Vertex `i * side + j` is the point `(i/q, j/q)`.
fn grid_hypergraph<S: Scalar>(t: &Triangle<S>, q: i64, side: i64) -> Hypergraph {
    let n = (side * side) as usize;
    let Some(scaled) = t.scaled(&S::from_int(q)).ok().and_then(|t| t.integer_sides()) else {
        return Hypergraph::empty(n);
    };
    let offsets: Vec<_> = lattice::copy_offsets(scaled, false).into_iter().filter(|(o2, _)| *o2 > (0, 0)).collect();
    let idx = |p: lattice::IPoint| (p.0 * side + p.1) as usize;
    let inside = |p: lattice::IPoint| p.0 >= 0 && p.1 >= 0 && p.0 < side && p.1 < side;
    let mut edges = Vec::new();
    for i in 0..side {
        for j in 0..side {
            for (o2, o3) in &offsets {
                let z2 = (i + o2.0, j + o2.1);
                let z3 = (i + o3.0, j + o3.1);
                if inside(z2) && inside(z3) {
                    edges.push(vec![idx((i, j)), idx(z2), idx(z3)]);
                }
            }
        }
    }
    Hypergraph::new(n, edges).expect("grid edges in range")
}

/// Deletes vertices in random order while the rest still needs `k` colors.
fn shrink(full: &Hypergraph, mut keep: Vec<usize>, k: usize, budget: Option<u64>, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order = keep.clone();
    order.shuffle(rng);
    for v in order {
        if !keep.contains(&v) {
            continue;
        }
        let trial: Vec<usize> = keep.iter().copied().filter(|&u| u != v).collect();
        let sub = full.induced(&trial);
        if let Ok(r) = hypergraph_chromatic_budget(&sub, k - 1, budget) {
            if r.optimum.is_none() {
                // Drop vertices no longer on any edge.
                let deg = sub.degrees();
                keep = trial.into_iter().enumerate().filter(|(i, _)| deg[*i] > 0).map(|(_, u)| u).collect();
            }
        }
    }
    keep
}
