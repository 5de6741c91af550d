//! The Menger sponge as a hierarchy of kept cells plus its skeleton graph.
//!
//! At level `k` the unit cube is divided into `3^k * 3^k * 3^k` subcubes.
//! A subcube survives when, at every digit position of its coordinate
//! address, at most one of the three triadic digits equals 1. Level `k`
//! keeps exactly `20^k` cells. The skeleton graph connects kept cells that
//! share a face; every grid that embeds into the sponge lives on walks in
//! this graph.

use crate::error::{Error, Result};
use crate::triadic::{has_alternative_expansion, to_triadic, TriadicDigits};

/// Cap on cells materialised in one call: `20^5`.
pub const DEFAULT_CELL_BUDGET: u64 = 3_200_000;

/// Coordinates are `u32`, so a cell address fits up to `3^20 < 2^32`.
pub const MAX_CELL_LEVEL: u32 = 20;

/// The 20 level-1 kept offsets in lexicographic order. Children of any
/// kept cell are its coordinates scaled by 3 plus each of these.
const LEVEL1_OFFSETS: [[u32; 3]; 20] = [
    [0, 0, 0],
    [0, 0, 1],
    [0, 0, 2],
    [0, 1, 0],
    [0, 1, 2],
    [0, 2, 0],
    [0, 2, 1],
    [0, 2, 2],
    [1, 0, 0],
    [1, 0, 2],
    [1, 2, 0],
    [1, 2, 2],
    [2, 0, 0],
    [2, 0, 1],
    [2, 0, 2],
    [2, 1, 0],
    [2, 1, 2],
    [2, 2, 0],
    [2, 2, 1],
    [2, 2, 2],
];

/// One kept subcube of the level-`level` sponge approximation, addressed
/// by integer coordinates in `[0, 3^level)^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpongeCell {
    level: u32,
    coords: [u32; 3],
}

impl SpongeCell {
    /// Validates range and the kept-cell digit rule.
    pub fn new(level: u32, coords: [u32; 3]) -> Result<Self> {
        if level > MAX_CELL_LEVEL {
            return Err(Error::domain(format!(
                "cell level {level} exceeds the supported maximum {MAX_CELL_LEVEL}"
            )));
        }
        let side = 3u32.pow(level);
        if coords.iter().any(|&c| c >= side) {
            return Err(Error::domain(format!(
                "cell coordinates {coords:?} out of range for level {level}"
            )));
        }
        if !address_kept(level, coords) {
            return Err(Error::domain(format!(
                "cell {coords:?} at level {level} is carved out of the sponge"
            )));
        }
        Ok(SpongeCell { level, coords })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> [u32; 3] {
        self.coords
    }

    /// Side length of the cell cube, `3^-level`.
    pub fn side(&self) -> f64 {
        3f64.powi(-(self.level as i32))
    }

    /// Geometric center of the cell in the unit cube.
    pub fn center(&self) -> [f64; 3] {
        let side = self.side();
        [
            (f64::from(self.coords[0]) + 0.5) * side,
            (f64::from(self.coords[1]) + 0.5) * side,
            (f64::from(self.coords[2]) + 0.5) * side,
        ]
    }

    /// The kept cell one level up that contains this one. `None` at level 0.
    pub fn parent(&self) -> Option<SpongeCell> {
        if self.level == 0 {
            return None;
        }
        Some(SpongeCell {
            level: self.level - 1,
            coords: [self.coords[0] / 3, self.coords[1] / 3, self.coords[2] / 3],
        })
    }

    /// The 20 kept cells one level down, in lexicographic order.
    pub fn children(&self) -> Result<Vec<SpongeCell>> {
        if self.level >= MAX_CELL_LEVEL {
            return Err(Error::domain(format!(
                "children of a level-{} cell exceed the supported coordinate range",
                self.level
            )));
        }
        let base = [self.coords[0] * 3, self.coords[1] * 3, self.coords[2] * 3];
        Ok(LEVEL1_OFFSETS
            .iter()
            .map(|off| SpongeCell {
                level: self.level + 1,
                coords: [base[0] + off[0], base[1] + off[1], base[2] + off[2]],
            })
            .collect())
    }
}

/// Digit rule over the whole address: at every position, at most one of
/// the three triadic digits is 1.
fn address_kept(level: u32, coords: [u32; 3]) -> bool {
    let [mut x, mut y, mut z] = coords;
    for _ in 0..level {
        let ones = (x % 3 == 1) as u8 + (y % 3 == 1) as u8 + (z % 3 == 1) as u8;
        if ones > 1 {
            return false;
        }
        x /= 3;
        y /= 3;
        z /= 3;
    }
    true
}

/// All kept cells of level `k` in lexicographic coordinate order.
pub fn enumerate_cells(k: u32) -> Result<Vec<SpongeCell>> {
    let count = 20u64
        .checked_pow(k)
        .filter(|&n| n <= DEFAULT_CELL_BUDGET)
        .ok_or_else(|| {
            Error::capacity(format!(
                "level {k} has 20^{k} cells, over the budget of {DEFAULT_CELL_BUDGET}"
            ))
        })?;

    let mut cells = Vec::with_capacity(count as usize);
    // Depth-first refinement emits address order (digits interleaved per
    // level); a final sort restores plain coordinate order.
    let mut stack = vec![SpongeCell {
        level: 0,
        coords: [0, 0, 0],
    }];
    collect_descendants(&mut stack, k, &mut cells);
    cells.sort_unstable();
    debug_assert_eq!(cells.len() as u64, count);
    Ok(cells)
}

fn collect_descendants(stack: &mut Vec<SpongeCell>, k: u32, out: &mut Vec<SpongeCell>) {
    let cell = *stack.last().expect("stack never empty");
    if cell.level == k {
        out.push(cell);
        return;
    }
    let base = [cell.coords[0] * 3, cell.coords[1] * 3, cell.coords[2] * 3];
    for off in &LEVEL1_OFFSETS {
        stack.push(SpongeCell {
            level: cell.level + 1,
            coords: [base[0] + off[0], base[1] + off[1], base[2] + off[2]],
        });
        collect_descendants(stack, k, out);
        stack.pop();
    }
}

/// Whether `p` lies in the closed level-`k` sponge approximation.
///
/// Each coordinate admits one or two `k`-digit expansions (the canonical
/// one, and for exact triadic rationals the variant ending in 2s). The
/// point is a member when some combination of expansions satisfies the
/// digit rule; this makes shared faces and edges count as inside.
pub fn is_sponge_member(p: [f64; 3], k: u32) -> Result<bool> {
    if k == 0 {
        for c in p {
            if !(0.0..=1.0).contains(&c) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let mut per_axis: [Vec<TriadicDigits>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (axis, &c) in p.iter().enumerate() {
        if !(0.0..=1.0).contains(&c) {
            return Ok(false);
        }
        let canonical = to_triadic(c, k as usize)?;
        if let Some(alt) = has_alternative_expansion(&canonical) {
            per_axis[axis].push(alt);
        }
        per_axis[axis].push(canonical);
    }
    for dx in &per_axis[0] {
        for dy in &per_axis[1] {
            for dz in &per_axis[2] {
                let ok = (0..k as usize).all(|i| {
                    let ones = (dx.digits()[i] == 1) as u8
                        + (dy.digits()[i] == 1) as u8
                        + (dz.digits()[i] == 1) as u8;
                    ones <= 1
                });
                if ok {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Face-adjacency graph over the level-`k` kept cells.
///
/// Vertices are cells in lexicographic order; edges join cells whose
/// coordinates differ by one in exactly one axis. Stored compressed:
/// `neighbors(i)` is a sorted slice.
#[derive(Debug, Clone)]
pub struct SpongeSkeleton {
    level: u32,
    cells: Vec<SpongeCell>,
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
}

impl SpongeSkeleton {
    pub fn build(k: u32) -> Result<SpongeSkeleton> {
        let cells = enumerate_cells(k)?;
        let index_of = |coords: [u32; 3]| -> Option<u32> {
            cells
                .binary_search_by(|c| c.coords.cmp(&coords))
                .ok()
                .map(|i| i as u32)
        };

        let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); cells.len()];
        for (i, cell) in cells.iter().enumerate() {
            for axis in 0..3 {
                let mut coords = cell.coords;
                coords[axis] += 1;
                if let Some(j) = index_of(coords) {
                    adjacency[i].push(j);
                    adjacency[j as usize].push(i as u32);
                }
            }
        }

        let mut offsets = Vec::with_capacity(cells.len() + 1);
        let mut neighbors = Vec::new();
        offsets.push(0u32);
        for list in &mut adjacency {
            list.sort_unstable();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len() as u32);
        }
        Ok(SpongeSkeleton {
            level: k,
            cells,
            offsets,
            neighbors,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[SpongeCell] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> SpongeCell {
        self.cells[index]
    }

    pub fn index_of(&self, coords: [u32; 3]) -> Option<usize> {
        self.cells.binary_search_by(|c| c.coords.cmp(&coords)).ok()
    }

    pub fn neighbors(&self, index: usize) -> &[u32] {
        let lo = self.offsets[index] as usize;
        let hi = self.offsets[index + 1] as usize;
        &self.neighbors[lo..hi]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.neighbors(index).len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Undirected edges as index pairs `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.len() as u32).flat_map(move |a| {
            self.neighbors(a as usize)
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn level_counts_follow_twenty_to_the_k() {
        for k in 0..=3 {
            let cells = enumerate_cells(k).unwrap();
            assert_eq!(cells.len() as u64, 20u64.pow(k));
        }
    }

    #[test]
    fn budget_rejects_level_six() {
        assert!(enumerate_cells(5).is_ok());
        let err = enumerate_cells(6).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn level_one_matches_frozen_offsets() {
        let cells = enumerate_cells(1).unwrap();
        let coords: Vec<[u32; 3]> = cells.iter().map(|c| c.coords()).collect();
        assert_eq!(coords, LEVEL1_OFFSETS.to_vec());
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let cells = enumerate_cells(2).unwrap();
        assert!(cells.windows(2).all(|w| w[0].coords() < w[1].coords()));
        assert!(cells.iter().all(|c| c.level() == 2));
    }

    #[test]
    fn carved_cell_is_rejected() {
        // (1,1,0) at level 2 sits inside kept level-1 cell (0,0,0) but its
        // second digit triple has two 1s.
        assert!(SpongeCell::new(2, [1, 1, 0]).is_err());
        assert!(SpongeCell::new(1, [1, 1, 0]).is_err());
        assert!(SpongeCell::new(2, [3, 1, 0]).is_ok());
        assert!(SpongeCell::new(1, [9, 0, 0]).is_err());
    }

    #[test]
    fn centers_and_sides() {
        let root = SpongeCell::new(0, [0, 0, 0]).unwrap();
        assert_eq!(root.center(), [0.5, 0.5, 0.5]);
        assert_eq!(root.side(), 1.0);
        let c = SpongeCell::new(1, [0, 0, 0]).unwrap();
        assert_eq!(c.center(), [0.5 / 3.0, 0.5 / 3.0, 0.5 / 3.0]);
        let c = SpongeCell::new(2, [3, 1, 0]).unwrap();
        for (got, want) in c.center().iter().zip([3.5 / 9.0, 1.5 / 9.0, 0.5 / 9.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn parent_child_round_trip() {
        let root = SpongeCell::new(0, [0, 0, 0]).unwrap();
        let kids = root.children().unwrap();
        assert_eq!(kids, enumerate_cells(1).unwrap());
        for kid in kids {
            assert_eq!(kid.parent().unwrap(), root);
            let grandkids = kid.children().unwrap();
            assert_eq!(grandkids.len(), 20);
            for g in grandkids {
                assert_eq!(g.parent().unwrap(), kid);
                assert!(SpongeCell::new(2, g.coords()).is_ok());
            }
        }
        assert!(root.parent().is_none());
    }

    #[test]
    fn membership_frozen_points() {
        // Corner, cube edge midpoint, shared edge via alternative
        // expansions, removed center.
        assert!(is_sponge_member([0.0, 0.0, 0.0], 3).unwrap());
        assert!(is_sponge_member([0.5, 0.0, 0.0], 3).unwrap());
        assert!(is_sponge_member([1.0 / 3.0, 2.0 / 3.0, 0.0], 2).unwrap());
        assert!(!is_sponge_member([0.5, 0.5, 0.5], 1).unwrap());
        assert!(!is_sponge_member([0.5, 0.5, 0.5], 3).unwrap());
        assert!(is_sponge_member([1.0, 1.0, 1.0], 4).unwrap());
        assert!(!is_sponge_member([1.1, 0.0, 0.0], 2).unwrap());
        // Center face point of the x=0 face: (0, 1/2, 1/2) has digit
        // triples (0,1,1) from position 1 on, removed at k >= 1.
        assert!(!is_sponge_member([0.0, 0.5, 0.5], 1).unwrap());
    }

    #[test]
    fn level_zero_membership_is_the_cube() {
        assert!(is_sponge_member([0.7, 0.2, 0.9], 0).unwrap());
        assert!(!is_sponge_member([1.2, 0.2, 0.9], 0).unwrap());
    }

    #[test]
    fn skeleton_level_one_is_subdivided_cube_edges() {
        let sk = SpongeSkeleton::build(1).unwrap();
        assert_eq!(sk.len(), 20);
        assert_eq!(sk.edge_count(), 24);
        let mut by_degree = [0usize; 7];
        for i in 0..sk.len() {
            by_degree[sk.degree(i)] += 1;
        }
        // 8 corner cells of degree 3, 12 edge-center cells of degree 2.
        assert_eq!(by_degree[2], 12);
        assert_eq!(by_degree[3], 8);
        assert!(by_degree[0] == 0 && by_degree[1] == 0);
    }

    #[test]
    fn skeleton_edges_are_face_adjacencies() {
        let sk = SpongeSkeleton::build(2).unwrap();
        for (a, b) in sk.edges() {
            let ca = sk.cell(a as usize).coords();
            let cb = sk.cell(b as usize).coords();
            let diff: u32 = (0..3)
                .map(|i| (i32::abs(ca[i] as i32 - cb[i] as i32)) as u32)
                .sum();
            assert_eq!(diff, 1);
        }
        // Mirror symmetry of the degree profile.
        let mut degrees: Vec<usize> = (0..sk.len()).map(|i| sk.degree(i)).collect();
        degrees.sort_unstable();
        assert!(*degrees.iter().max().unwrap() <= 6);
    }

    #[test]
    fn skeleton_is_connected() {
        let sk = SpongeSkeleton::build(2).unwrap();
        let mut seen = vec![false; sk.len()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &j in sk.neighbors(i) {
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    count += 1;
                    queue.push_back(j as usize);
                }
            }
        }
        assert_eq!(count, sk.len());
    }

    #[test]
    fn index_lookup_round_trips() {
        let sk = SpongeSkeleton::build(2).unwrap();
        for (i, cell) in sk.cells().iter().enumerate() {
            assert_eq!(sk.index_of(cell.coords()), Some(i));
        }
        assert_eq!(sk.index_of([1, 1, 0]), None);
    }

    proptest::proptest! {
        #[test]
        fn cell_centers_are_members_at_own_level(index in 0usize..400) {
            let cells = enumerate_cells(2).unwrap();
            let cell = cells[index];
            let seen = HashSet::<[u32;3]>::from_iter(cells.iter().map(|c| c.coords()));
            prop_assert_coherent(cell, &seen)?;
        }
    }

    fn prop_assert_coherent(
        cell: SpongeCell,
        level2: &HashSet<[u32; 3]>,
    ) -> std::result::Result<(), proptest::test_runner::TestCaseError> {
        proptest::prop_assert!(is_sponge_member(cell.center(), cell.level()).unwrap());
        for kid in cell.children().unwrap() {
            proptest::prop_assert_eq!(kid.parent().unwrap(), cell);
        }
        proptest::prop_assert!(level2.contains(&cell.coords()));
        Ok(())
    }
}
