//! Constructive embedding of connected grids into the sponge skeleton.
//!
//! Two strategies run in order at each level. The first places nodes
//! greedily in breadth-first order, each at the nearest free skeleton
//! cell to its already-placed neighbor, then routes edges as
//! vertex-disjoint shortest paths; it is cheap and finds the tight
//! small-level embeddings. The second works on the scaffold: cells
//! whose coordinates avoid the digit 1 in at least two axes are always
//! kept, and they form a subdivided cubic grid with `2^k` junctions per
//! side. Placing nodes on junctions and routing edges through whole
//! runs reduces the problem to disjoint routing in an ordinary grid,
//! which copes with dense grids such as 2-D lattices. Failures restart
//! with perturbed placements, then escalate the level.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::NeuronGrid;
use crate::sponge::{SpongeCell, SpongeSkeleton, MAX_CELL_LEVEL};

/// Placement attempts per level before escalating.
pub const DEFAULT_RESTARTS: u32 = 30;

/// A skeleton cell can host a node of at most this grid degree.
const MAX_EMBEDDABLE_DEGREE: usize = 6;

/// A realization of a grid inside the level-`level` skeleton.
///
/// `edge_paths` is aligned with the grid's normalized edge list; each
/// path starts at the cell of the edge's lower endpoint and ends at the
/// higher's.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    level: u32,
    node_cells: Vec<SpongeCell>,
    edge_paths: Vec<((u32, u32), Vec<SpongeCell>)>,
}

impl Embedding {
    pub fn new(
        level: u32,
        node_cells: Vec<SpongeCell>,
        edge_paths: Vec<((u32, u32), Vec<SpongeCell>)>,
    ) -> Embedding {
        Embedding {
            level,
            node_cells,
            edge_paths,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn node_cells(&self) -> &[SpongeCell] {
        &self.node_cells
    }

    pub fn node_cell(&self, id: u32) -> SpongeCell {
        self.node_cells[id as usize]
    }

    pub fn edge_paths(&self) -> &[((u32, u32), Vec<SpongeCell>)] {
        &self.edge_paths
    }

    /// The same embedding one level deeper: prefixing the zero digit to
    /// every address keeps cells kept and preserves face adjacency.
    pub fn lift(&self) -> Result<Embedding> {
        let level = self.level + 1;
        let lift_cell = |c: &SpongeCell| SpongeCell::new(level, c.coords());
        let node_cells = self.node_cells.iter().map(lift_cell).collect::<Result<_>>()?;
        let edge_paths = self
            .edge_paths
            .iter()
            .map(|(e, path)| Ok((*e, path.iter().map(lift_cell).collect::<Result<_>>()?)))
            .collect::<Result<_>>()?;
        Ok(Embedding {
            level,
            node_cells,
            edge_paths,
        })
    }
}

/// One broken embedding invariant; an empty list means valid.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NodeCountMismatch {
        expected: usize,
        found: usize,
    },
    WrongCellLevel {
        expected: u32,
        found: u32,
    },
    SharedNodeCell {
        first: u32,
        second: u32,
        cell: [u32; 3],
    },
    MissingEdgePath {
        edge: (u32, u32),
    },
    UnknownEdgePath {
        edge: (u32, u32),
    },
    PathEndpointMismatch {
        edge: (u32, u32),
    },
    PathStepNotAdjacent {
        edge: (u32, u32),
        index: usize,
    },
    PathCellRepeated {
        edge: (u32, u32),
        cell: [u32; 3],
    },
    InteriorHitsNode {
        edge: (u32, u32),
        cell: [u32; 3],
    },
    InteriorShared {
        first: (u32, u32),
        second: (u32, u32),
        cell: [u32; 3],
    },
    ContractionNotIsomorphic {
        reason: String,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NodeCountMismatch { expected, found } => {
                write!(f, "{found} node cells for {expected} nodes")
            }
            Violation::WrongCellLevel { expected, found } => {
                write!(f, "cell of level {found} in a level-{expected} embedding")
            }
            Violation::SharedNodeCell { first, second, cell } => {
                write!(f, "nodes {first} and {second} share cell {cell:?}")
            }
            Violation::MissingEdgePath { edge } => {
                write!(f, "edge ({}, {}) has no path", edge.0, edge.1)
            }
            Violation::UnknownEdgePath { edge } => {
                write!(f, "path for ({}, {}) which is not a grid edge", edge.0, edge.1)
            }
            Violation::PathEndpointMismatch { edge } => {
                write!(
                    f,
                    "path for ({}, {}) does not run between its node cells",
                    edge.0, edge.1
                )
            }
            Violation::PathStepNotAdjacent { edge, index } => {
                write!(
                    f,
                    "path for ({}, {}) breaks face adjacency at step {index}",
                    edge.0, edge.1
                )
            }
            Violation::PathCellRepeated { edge, cell } => {
                write!(f, "path for ({}, {}) revisits cell {cell:?}", edge.0, edge.1)
            }
            Violation::InteriorHitsNode { edge, cell } => {
                write!(
                    f,
                    "path for ({}, {}) runs through node cell {cell:?}",
                    edge.0, edge.1
                )
            }
            Violation::InteriorShared { first, second, cell } => {
                write!(
                    f,
                    "paths for ({}, {}) and ({}, {}) share interior cell {cell:?}",
                    first.0, first.1, second.0, second.1
                )
            }
            Violation::ContractionNotIsomorphic { reason } => {
                write!(f, "contraction does not recover the grid: {reason}")
            }
        }
    }
}

/// Checks every embedding invariant; violations come back as data.
pub fn validate_embedding(g: &NeuronGrid, e: &Embedding) -> Vec<Violation> {
    let mut out = Vec::new();
    if e.node_cells.len() != g.len() {
        out.push(Violation::NodeCountMismatch {
            expected: g.len(),
            found: e.node_cells.len(),
        });
        return out;
    }

    for cell in e
        .node_cells
        .iter()
        .chain(e.edge_paths.iter().flat_map(|(_, p)| p))
    {
        if cell.level() != e.level {
            out.push(Violation::WrongCellLevel {
                expected: e.level,
                found: cell.level(),
            });
        }
    }

    let mut owner: HashMap<[u32; 3], u32> = HashMap::new();
    for (id, cell) in e.node_cells.iter().enumerate() {
        if let Some(&prev) = owner.get(&cell.coords()) {
            out.push(Violation::SharedNodeCell {
                first: prev,
                second: id as u32,
                cell: cell.coords(),
            });
        } else {
            owner.insert(cell.coords(), id as u32);
        }
    }

    let grid_edges: std::collections::HashSet<(u32, u32)> = g.edges().iter().copied().collect();
    let mut seen_edges = std::collections::HashSet::new();
    for (edge, _) in &e.edge_paths {
        if !grid_edges.contains(edge) {
            out.push(Violation::UnknownEdgePath { edge: *edge });
        }
        seen_edges.insert(*edge);
    }
    for edge in &grid_edges {
        if !seen_edges.contains(edge) {
            out.push(Violation::MissingEdgePath { edge: *edge });
        }
    }

    let face_adjacent = |a: &SpongeCell, b: &SpongeCell| {
        let (ca, cb) = (a.coords(), b.coords());
        let diff: u32 = (0..3).map(|i| ca[i].abs_diff(cb[i])).sum();
        diff == 1
    };

    let mut interior_owner: HashMap<[u32; 3], (u32, u32)> = HashMap::new();
    let mut contracted: Vec<(u32, u32)> = Vec::new();
    for (edge, path) in &e.edge_paths {
        let (a, b) = *edge;
        let endpoints_ok = path.len() >= 2
            && a < g.len() as u32
            && b < g.len() as u32
            && path[0] == e.node_cells[a as usize]
            && path[path.len() - 1] == e.node_cells[b as usize];
        if !endpoints_ok {
            out.push(Violation::PathEndpointMismatch { edge: *edge });
        } else {
            contracted.push((a, b));
        }
        for (i, pair) in path.windows(2).enumerate() {
            if !face_adjacent(&pair[0], &pair[1]) {
                out.push(Violation::PathStepNotAdjacent {
                    edge: *edge,
                    index: i,
                });
            }
        }
        let mut seen = std::collections::HashSet::new();
        for cell in path {
            if !seen.insert(cell.coords()) {
                out.push(Violation::PathCellRepeated {
                    edge: *edge,
                    cell: cell.coords(),
                });
            }
        }
        if path.len() > 2 {
            for cell in &path[1..path.len() - 1] {
                if owner.contains_key(&cell.coords()) {
                    out.push(Violation::InteriorHitsNode {
                        edge: *edge,
                        cell: cell.coords(),
                    });
                }
                if let Some(&prev_edge) = interior_owner.get(&cell.coords()) {
                    out.push(Violation::InteriorShared {
                        first: prev_edge,
                        second: *edge,
                        cell: cell.coords(),
                    });
                } else {
                    interior_owner.insert(cell.coords(), *edge);
                }
            }
        }
    }

    // Contraction check: collapse every path to one link and compare with
    // the source graph, ids untouched, so isomorphism is edge-set equality.
    contracted.sort_unstable();
    let mut expected: Vec<(u32, u32)> = g.edges().to_vec();
    expected.sort_unstable();
    if contracted != expected {
        out.push(Violation::ContractionNotIsomorphic {
            reason: format!(
                "contracted edge set has {} links, grid has {}",
                contracted.len(),
                expected.len()
            ),
        });
    }

    out
}

/// A link's endpoint ids with its polyline of cell centers.
pub type LinkPolyline = ((u32, u32), Vec<[f64; 3]>);

/// 3-D geometry of an embedding: node points and one polyline per link,
/// all at kept-cell centers inside the unit cube.
#[derive(Debug, Clone, PartialEq)]
pub struct GridGeometry {
    pub node_points: Vec<[f64; 3]>,
    pub link_polylines: Vec<LinkPolyline>,
}

pub fn embedding_to_geometry(e: &Embedding) -> GridGeometry {
    GridGeometry {
        node_points: e.node_cells.iter().map(SpongeCell::center).collect(),
        link_polylines: e
            .edge_paths
            .iter()
            .map(|(edge, path)| (*edge, path.iter().map(SpongeCell::center).collect()))
            .collect(),
    }
}

/// Embeds `g` into the smallest workable skeleton level in
/// `[k_start, k_max]`. Deterministic in `seed`.
pub fn embed_grid(g: &NeuronGrid, k_start: u32, k_max: u32, seed: u64) -> Result<Embedding> {
    if k_start == 0 {
        return Err(Error::domain("embedding level must be at least 1"));
    }
    if k_start > k_max || k_max > MAX_CELL_LEVEL {
        return Err(Error::domain(format!(
            "level range [{k_start}, {k_max}] is empty or exceeds level {MAX_CELL_LEVEL}"
        )));
    }
    if let Some(id) = (0..g.len() as u32).find(|&id| g.degree(id) > MAX_EMBEDDABLE_DEGREE) {
        return Err(Error::capacity(format!(
            "node {id} has degree {}, but skeleton cells have at most {MAX_EMBEDDABLE_DEGREE} neighbors at any level",
            g.degree(id)
        )));
    }

    let mut last_failure = String::from("no attempt made");
    for level in k_start..=k_max {
        let sk = SpongeSkeleton::build(level)?;
        if sk.len() < g.len() {
            last_failure = format!("level {level} has only {} cells", sk.len());
            continue;
        }
        for attempt in 0..DEFAULT_RESTARTS {
            let mut rng = attempt_rng(seed, level, attempt);
            match try_embed(g, &sk, attempt, &mut rng) {
                Ok((node_cells, paths)) => {
                    return Ok(finish(g, &sk, level, node_cells, paths));
                }
                Err(why) => last_failure = format!("level {level}: {why}"),
            }
        }
        let sc = Scaffold::new(level);
        if sc.junction_count() < g.len() {
            continue;
        }
        for attempt in 0..DEFAULT_RESTARTS {
            // Stream ids disjoint from the first strategy's.
            let mut rng = attempt_rng(seed, level, SCAFFOLD_STREAM | attempt);
            match try_embed_scaffold(g, &sc, level, attempt, &mut rng) {
                Ok(embedding) => return Ok(embedding),
                Err(why) => last_failure = format!("level {level}: {why}"),
            }
        }
    }
    Err(Error::capacity(format!(
        "no embedding found up to level {k_max} (last failure: {last_failure}); a deeper level may work"
    )))
}

const SCAFFOLD_STREAM: u32 = 1 << 31;

fn attempt_rng(seed: u64, level: u32, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(level) << 32) | u64::from(attempt));
    rng
}

fn finish(
    g: &NeuronGrid,
    sk: &SpongeSkeleton,
    level: u32,
    node_cells: Vec<u32>,
    paths: Vec<Vec<u32>>,
) -> Embedding {
    let cells: Vec<SpongeCell> = node_cells.iter().map(|&i| sk.cell(i as usize)).collect();
    let edge_paths = g
        .edges()
        .iter()
        .zip(paths)
        .map(|(edge, p)| (*edge, p.into_iter().map(|i| sk.cell(i as usize)).collect()))
        .collect();
    Embedding {
        level,
        node_cells: cells,
        edge_paths,
    }
}

/// One placement-and-routing attempt. Attempt 0 is fully deterministic
/// (root node 0 at the all-zero corner); later attempts draw the root and
/// the traversal order from the seeded generator.
fn try_embed(
    g: &NeuronGrid,
    sk: &SpongeSkeleton,
    attempt: u32,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(Vec<u32>, Vec<Vec<u32>>), String> {
    const UNPLACED: u32 = u32::MAX;
    let m = g.len();
    let mut node_cell = vec![UNPLACED; m];
    let mut occupied = vec![false; sk.len()];

    let (root, start_hint) = if attempt == 0 {
        (0u32, 0u32)
    } else {
        (
            rng.gen_range(0..m as u32),
            rng.gen_range(0..sk.len() as u32),
        )
    };

    let root_cell = nearest_free_feasible(sk, start_hint, g.degree(root), &occupied)
        .ok_or_else(|| format!("no feasible cell for root node {root}"))?;
    node_cell[root as usize] = root_cell;
    occupied[root_cell as usize] = true;

    let mut queue = VecDeque::from([root]);
    let mut discovered = vec![false; m];
    discovered[root as usize] = true;
    while let Some(u) = queue.pop_front() {
        let mut order: Vec<u32> = g.neighbors(u).to_vec();
        if attempt > 0 {
            order.shuffle(rng);
        }
        for v in order {
            if discovered[v as usize] {
                continue;
            }
            discovered[v as usize] = true;
            let anchor = node_cell[u as usize];
            let cell = nearest_free_feasible(sk, anchor, g.degree(v), &occupied)
                .ok_or_else(|| format!("no free cell left for node {v}"))?;
            node_cell[v as usize] = cell;
            occupied[cell as usize] = true;
            queue.push_back(v);
        }
    }

    // Route edges shortest-first; interiors become blocked as they land.
    let edges = g.edges();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    let rough: Vec<u32> = edges
        .iter()
        .map(|&(a, b)| {
            skeleton_distance(sk, node_cell[a as usize], node_cell[b as usize])
                .unwrap_or(u32::MAX)
        })
        .collect();
    order.sort_by_key(|&i| (rough[i], i));

    let mut blocked = occupied;
    let mut paths: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
    for idx in order {
        let (a, b) = edges[idx];
        let from = node_cell[a as usize];
        let to = node_cell[b as usize];
        let path = route(sk, from, to, &blocked)
            .ok_or_else(|| format!("edge ({a}, {b}) could not be routed disjointly"))?;
        for &cell in &path[1..path.len() - 1] {
            blocked[cell as usize] = true;
        }
        paths[idx] = path;
    }
    Ok((node_cell, paths))
}

/// Nearest cell to `start` (by skeleton BFS, occupied cells traversable)
/// that is free and has enough skeleton neighbors for the node's degree.
fn nearest_free_feasible(
    sk: &SpongeSkeleton,
    start: u32,
    need_degree: usize,
    occupied: &[bool],
) -> Option<u32> {
    let mut seen = vec![false; sk.len()];
    let mut queue = VecDeque::from([start]);
    seen[start as usize] = true;
    while let Some(i) = queue.pop_front() {
        if !occupied[i as usize] && sk.degree(i as usize) >= need_degree {
            return Some(i);
        }
        for &j in sk.neighbors(i as usize) {
            if !seen[j as usize] {
                seen[j as usize] = true;
                queue.push_back(j);
            }
        }
    }
    None
}

/// Plain hop distance in the skeleton, ignoring occupancy.
fn skeleton_distance(sk: &SpongeSkeleton, from: u32, to: u32) -> Option<u32> {
    if from == to {
        return Some(0);
    }
    let mut dist = vec![u32::MAX; sk.len()];
    dist[from as usize] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        for &j in sk.neighbors(i as usize) {
            if dist[j as usize] == u32::MAX {
                dist[j as usize] = dist[i as usize] + 1;
                if j == to {
                    return Some(dist[j as usize]);
                }
                queue.push_back(j);
            }
        }
    }
    None
}

/// Shortest path from `from` to `to` whose interior avoids every blocked
/// cell. Both endpoints are node cells and so blocked themselves; they
/// are exempt.
fn route(sk: &SpongeSkeleton, from: u32, to: u32, blocked: &[bool]) -> Option<Vec<u32>> {
    const NONE: u32 = u32::MAX;
    let mut parent = vec![NONE; sk.len()];
    parent[from as usize] = from;
    let mut queue = VecDeque::from([from]);
    'search: while let Some(i) = queue.pop_front() {
        for &j in sk.neighbors(i as usize) {
            if parent[j as usize] != NONE {
                continue;
            }
            parent[j as usize] = i;
            if j == to {
                break 'search;
            }
            if !blocked[j as usize] {
                queue.push_back(j);
            }
        }
    }
    if parent[to as usize] == NONE {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur as usize];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// The always-kept sub-grid of a level: coordinates whose triadic digits
/// all avoid 1 ("junction" values) come in `2^level` sorted values; a
/// cell with at least two junction coordinates is kept at every digit
/// position, so junctions plus the straight runs between consecutive
/// ones subdivide a full cubic grid.
struct Scaffold {
    n: usize,
    values: Vec<u32>,
}

impl Scaffold {
    fn new(level: u32) -> Scaffold {
        let n = 1usize << level;
        let values = (0..n)
            .map(|mask| {
                (0..level).rev().fold(0u32, |v, bit| {
                    v * 3 + if mask >> bit & 1 == 1 { 2 } else { 0 }
                })
            })
            .collect();
        Scaffold { n, values }
    }

    fn junction_count(&self) -> usize {
        self.n * self.n * self.n
    }

    fn id(&self, j: [usize; 3]) -> usize {
        (j[0] * self.n + j[1]) * self.n + j[2]
    }

    fn coords(&self, id: usize) -> [usize; 3] {
        [id / (self.n * self.n), (id / self.n) % self.n, id % self.n]
    }

    /// In-range axis neighbors of a junction, 3 at corners up to 6 inside.
    fn degree(&self, j: [usize; 3]) -> usize {
        (0..3)
            .map(|a| usize::from(j[a] > 0) + usize::from(j[a] + 1 < self.n))
            .sum()
    }

    fn cell(&self, level: u32, j: [usize; 3]) -> SpongeCell {
        SpongeCell::new(
            level,
            [self.values[j[0]], self.values[j[1]], self.values[j[2]]],
        )
        .expect("junction coordinates have no digit 1 anywhere")
    }

    /// Cells strictly between two axis-adjacent junctions, in travel
    /// order. These lie on exactly one run, so run-level disjointness
    /// carries over to cells.
    fn run_between(&self, level: u32, u: [usize; 3], w: [usize; 3]) -> Vec<SpongeCell> {
        let axis = (0..3).find(|&a| u[a] != w[a]).expect("distinct junctions");
        let (lo, hi) = (self.values[u[axis]], self.values[w[axis]]);
        let span: Vec<u32> = if hi > lo {
            (lo + 1..hi).collect()
        } else {
            (hi + 1..lo).rev().collect()
        };
        let mut coords = [self.values[u[0]], self.values[u[1]], self.values[u[2]]];
        span.into_iter()
            .map(|v| {
                coords[axis] = v;
                SpongeCell::new(level, coords).expect("run cells keep two junction coordinates")
            })
            .collect()
    }
}

fn manhattan(a: [usize; 3], b: [usize; 3]) -> usize {
    (0..3).map(|i| a[i].abs_diff(b[i])).sum()
}

/// Scaffold attempt: greedy junction placement (minimizing the summed
/// distance to already-placed neighbors), then shortest-first disjoint
/// routing over runs. Attempt 0 is fully deterministic.
fn try_embed_scaffold(
    g: &NeuronGrid,
    sc: &Scaffold,
    level: u32,
    attempt: u32,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<Embedding, String> {
    let m = g.len();
    let total = sc.junction_count();
    let mut node_j = vec![usize::MAX; m];
    let mut occupied = vec![false; total];

    let root: u32 = if attempt == 0 {
        0
    } else {
        rng.gen_range(0..m as u32)
    };
    let feasible: Vec<usize> = (0..total)
        .filter(|&j| sc.degree(sc.coords(j)) >= g.degree(root))
        .collect();
    if feasible.is_empty() {
        return Err(format!("no junction can host degree-{} nodes", g.degree(root)));
    }
    let root_j = if attempt == 0 {
        feasible[0]
    } else {
        feasible[rng.gen_range(0..feasible.len())]
    };
    node_j[root as usize] = root_j;
    occupied[root_j] = true;

    let mut queue = VecDeque::from([root]);
    let mut discovered = vec![false; m];
    discovered[root as usize] = true;
    while let Some(u) = queue.pop_front() {
        let mut order: Vec<u32> = g.neighbors(u).to_vec();
        if attempt > 0 {
            order.shuffle(rng);
        }
        for v in order {
            if discovered[v as usize] {
                continue;
            }
            discovered[v as usize] = true;
            let placed: Vec<[usize; 3]> = g
                .neighbors(v)
                .iter()
                .filter(|&&w| node_j[w as usize] != usize::MAX)
                .map(|&w| sc.coords(node_j[w as usize]))
                .collect();
            let mut best: Vec<usize> = Vec::new();
            let mut best_score = usize::MAX;
            for (j, taken) in occupied.iter().enumerate() {
                let c = sc.coords(j);
                if *taken || sc.degree(c) < g.degree(v) {
                    continue;
                }
                let score: usize = placed.iter().map(|p| manhattan(c, *p)).sum();
                if score < best_score {
                    best_score = score;
                    best.clear();
                }
                if score == best_score {
                    best.push(j);
                }
            }
            if best.is_empty() {
                return Err(format!("no free junction left for node {v}"));
            }
            let pick = if attempt == 0 {
                best[0]
            } else {
                best[rng.gen_range(0..best.len())]
            };
            node_j[v as usize] = pick;
            occupied[pick] = true;
            queue.push_back(v);
        }
    }

    // Route in the junction grid, shortest edges first; a step consumes
    // its run, and interior junctions become blocked for later paths.
    let edges = g.edges();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| {
        let (a, b) = edges[i];
        (
            manhattan(sc.coords(node_j[a as usize]), sc.coords(node_j[b as usize])),
            i,
        )
    });

    let mut blocked = occupied;
    let mut run_used = vec![false; 3 * total];
    let run_id = |u: [usize; 3], w: [usize; 3]| {
        let axis = (0..3).find(|&a| u[a] != w[a]).expect("distinct junctions");
        let lower = if u[axis] < w[axis] { u } else { w };
        axis * total + sc.id(lower)
    };
    let mut junction_paths: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for idx in order {
        let (a, b) = edges[idx];
        let (from, to) = (node_j[a as usize], node_j[b as usize]);
        let path = route_junctions(sc, from, to, &blocked, &run_used, &run_id)
            .ok_or_else(|| format!("edge ({a}, {b}) could not be routed disjointly"))?;
        for pair in path.windows(2) {
            run_used[run_id(sc.coords(pair[0]), sc.coords(pair[1]))] = true;
        }
        for &j in &path[1..path.len() - 1] {
            blocked[j] = true;
        }
        junction_paths[idx] = path;
    }

    let node_cells: Vec<SpongeCell> = node_j.iter().map(|&j| sc.cell(level, sc.coords(j))).collect();
    let edge_paths = edges
        .iter()
        .zip(junction_paths)
        .map(|(edge, jpath)| {
            let mut cells = vec![sc.cell(level, sc.coords(jpath[0]))];
            for pair in jpath.windows(2) {
                cells.extend(sc.run_between(level, sc.coords(pair[0]), sc.coords(pair[1])));
                cells.push(sc.cell(level, sc.coords(pair[1])));
            }
            (*edge, cells)
        })
        .collect();
    Ok(Embedding {
        level,
        node_cells,
        edge_paths,
    })
}

/// Shortest junction path whose interior junctions are unblocked and
/// whose runs are all unused; endpoints are exempt from blocking.
fn route_junctions(
    sc: &Scaffold,
    from: usize,
    to: usize,
    blocked: &[bool],
    run_used: &[bool],
    run_id: &impl Fn([usize; 3], [usize; 3]) -> usize,
) -> Option<Vec<usize>> {
    const NONE: usize = usize::MAX;
    let mut parent = vec![NONE; sc.junction_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    'search: while let Some(i) = queue.pop_front() {
        let c = sc.coords(i);
        for axis in 0..3 {
            for dir in [-1isize, 1] {
                let moved = c[axis] as isize + dir;
                if moved < 0 || moved as usize >= sc.n {
                    continue;
                }
                let mut w = c;
                w[axis] = moved as usize;
                let j = sc.id(w);
                if parent[j] != NONE || run_used[run_id(c, w)] {
                    continue;
                }
                parent[j] = i;
                if j == to {
                    break 'search;
                }
                if !blocked[j] {
                    queue.push_back(j);
                }
            }
        }
    }
    if parent[to] == NONE {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}
