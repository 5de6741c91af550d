//! Neuron grids: finite connected graphs whose nodes may carry weight
//! vectors. Any finite connected graph qualifies as a curve, so
//! construction validates connectivity and shape, nothing more.
//!
//! Node ids are always `0..m-1`. Weights start unset (factories build
//! topology only); [`NeuronGrid::init_weights`] or
//! [`NeuronGrid::with_weights`] attach them.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NeuronGrid {
    node_count: u32,
    /// Normalized `(a, b)` with `a < b`, sorted ascending.
    edges: Vec<(u32, u32)>,
    /// Sorted neighbor ids per node.
    adjacency: Vec<Vec<u32>>,
    /// Empty until weights are attached; then one vector per node.
    weights: Vec<Vec<f64>>,
    dim: usize,
}

impl NeuronGrid {
    fn from_parts(node_count: u32, raw_edges: &[(u32, u32)]) -> Result<NeuronGrid> {
        if node_count == 0 {
            return Err(Error::domain("a grid needs at least one node"));
        }
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(raw_edges.len());
        for &(a, b) in raw_edges {
            if a == b {
                return Err(Error::validation(format!("self-loop at node {a}")));
            }
            if a >= node_count || b >= node_count {
                return Err(Error::validation(format!(
                    "edge ({a}, {b}) references a node outside 0..{node_count}"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }

        let mut adjacency = vec![Vec::new(); node_count as usize];
        for &(a, b) in &edges {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let grid = NeuronGrid {
            node_count,
            edges,
            adjacency,
            weights: Vec::new(),
            dim: 0,
        };
        let component_sizes = grid.component_sizes();
        if component_sizes.len() > 1 {
            return Err(Error::validation(format!(
                "grid is disconnected: {} components with sizes {:?}",
                component_sizes.len(),
                component_sizes
            )));
        }
        Ok(grid)
    }

    fn component_sizes(&self) -> Vec<usize> {
        let mut seen = vec![false; self.node_count as usize];
        let mut sizes = Vec::new();
        for start in 0..self.node_count as usize {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut size = 1;
            let mut queue = VecDeque::from([start as u32]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v as usize] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        size += 1;
                        queue.push_back(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    pub fn len(&self) -> usize {
        self.node_count as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, id: u32) -> &[u32] {
        &self.adjacency[id as usize]
    }

    pub fn degree(&self, id: u32) -> usize {
        self.adjacency[id as usize].len()
    }

    pub fn are_adjacent(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    pub fn has_weights(&self) -> bool {
        !self.weights.is_empty()
    }

    /// Weight-space dimension; `None` while weights are unset.
    pub fn dim(&self) -> Option<usize> {
        self.has_weights().then_some(self.dim)
    }

    pub fn weights(&self) -> Option<&[Vec<f64>]> {
        self.has_weights().then_some(self.weights.as_slice())
    }

    pub fn weight(&self, id: u32) -> Option<&[f64]> {
        self.has_weights()
            .then(|| self.weights[id as usize].as_slice())
    }

    /// Trainer-internal access; shape invariants stay with the caller.
    pub(crate) fn weights_mut(&mut self) -> &mut [Vec<f64>] {
        &mut self.weights
    }

    /// Attaches one weight vector per node.
    pub fn with_weights(mut self, weights: Vec<Vec<f64>>) -> Result<NeuronGrid> {
        if weights.len() != self.len() {
            return Err(Error::validation(format!(
                "{} weight vectors for {} nodes",
                weights.len(),
                self.len()
            )));
        }
        let dim = weights[0].len();
        if dim == 0 {
            return Err(Error::validation("weight vectors must be non-empty"));
        }
        for (id, w) in weights.iter().enumerate() {
            if w.len() != dim {
                return Err(Error::validation(format!(
                    "node {id} has dimension {} but node 0 has {dim}",
                    w.len()
                )));
            }
            if w.iter().any(|v| !v.is_finite()) {
                return Err(Error::validation(format!(
                    "node {id} has a non-finite weight entry"
                )));
            }
        }
        self.weights = weights;
        self.dim = dim;
        Ok(self)
    }

    /// Draws each node's weight uniformly from the dataset, with
    /// replacement, deterministically in `seed`.
    pub fn init_weights(&self, data: &Dataset, seed: u64) -> Result<NeuronGrid> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights: Vec<Vec<f64>> = (0..self.len())
            .map(|_| data.sample(rng.gen_range(0..data.len())).to_vec())
            .collect();
        self.clone().with_weights(weights)
    }

    fn check_id(&self, id: u32) -> Result<()> {
        if id >= self.node_count {
            return Err(Error::domain(format!(
                "node id {id} outside 0..{}",
                self.node_count
            )));
        }
        Ok(())
    }

    /// BFS hop counts from `id` to every node. The grid is connected, so
    /// every entry is finite.
    pub fn hop_distances(&self, id: u32) -> Result<Vec<u32>> {
        self.check_id(id)?;
        let mut dist = vec![u32::MAX; self.len()];
        dist[id as usize] = 0;
        let mut queue = VecDeque::from([id]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Hop distance between two nodes.
    pub fn graph_distance(&self, a: u32, b: u32) -> Result<u32> {
        self.check_id(b)?;
        Ok(self.hop_distances(a)?[b as usize])
    }
}

/// Path graph on `m` nodes: edges `(i, i+1)`.
pub fn make_chain(m: u32) -> Result<NeuronGrid> {
    if m == 0 {
        return Err(Error::domain("chain needs at least 1 node"));
    }
    let edges: Vec<(u32, u32)> = (0..m - 1).map(|i| (i, i + 1)).collect();
    NeuronGrid::from_parts(m, &edges)
}

/// Cycle on `m >= 3` nodes: the chain plus `(m-1, 0)`.
pub fn make_ring(m: u32) -> Result<NeuronGrid> {
    if m < 3 {
        return Err(Error::domain("ring needs at least 3 nodes"));
    }
    let mut edges: Vec<(u32, u32)> = (0..m - 1).map(|i| (i, i + 1)).collect();
    edges.push((m - 1, 0));
    NeuronGrid::from_parts(m, &edges)
}

/// 4-neighbor lattice, `w` columns by `h` rows, row-major ids.
pub fn make_lattice2d(w: u32, h: u32) -> Result<NeuronGrid> {
    if w == 0 || h == 0 {
        return Err(Error::domain("lattice sides must be at least 1"));
    }
    let id = |x: u32, y: u32| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    NeuronGrid::from_parts(w * h, &edges)
}

/// 6-neighbor lattice, row-major ids with `x` fastest, then `y`, then `z`.
pub fn make_lattice3d(w: u32, h: u32, d: u32) -> Result<NeuronGrid> {
    if w == 0 || h == 0 || d == 0 {
        return Err(Error::domain("lattice sides must be at least 1"));
    }
    let id = |x: u32, y: u32, z: u32| (z * h + y) * w + x;
    let mut edges = Vec::new();
    for z in 0..d {
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    edges.push((id(x, y, z), id(x + 1, y, z)));
                }
                if y + 1 < h {
                    edges.push((id(x, y, z), id(x, y + 1, z)));
                }
                if z + 1 < d {
                    edges.push((id(x, y, z), id(x, y, z + 1)));
                }
            }
        }
    }
    NeuronGrid::from_parts(w * h * d, &edges)
}

/// Builds a grid from explicit id pairs. Ids must cover `0..m-1` exactly;
/// the graph must be connected, loop-free, and duplicate-free.
pub fn from_edge_list(pairs: &[(u32, u32)]) -> Result<NeuronGrid> {
    if pairs.is_empty() {
        return Err(Error::validation("edge list is empty"));
    }
    let m = pairs
        .iter()
        .map(|&(a, b)| a.max(b))
        .max()
        .expect("nonempty")
        + 1;
    let mut present = vec![false; m as usize];
    for &(a, b) in pairs {
        present[a as usize] = true;
        present[b as usize] = true;
    }
    if let Some(missing) = present.iter().position(|p| !p) {
        return Err(Error::validation(format!(
            "node ids must cover 0..{m}; id {missing} never appears"
        )));
    }
    NeuronGrid::from_parts(m, pairs)
}
