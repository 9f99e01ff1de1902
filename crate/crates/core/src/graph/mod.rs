//! Immutable undirected graphs in CSR form and the random-walk primitives
//! every solver is built from.
//!
//! The random-walk matrix is `P = A D^-1`, so `(P x)(v) = sum_{u ~ v} x(u) / d_u`.
//! It is column-stochastic: applying it never changes the sum of a vector.

pub mod generators;
mod io;

pub use io::{load_edge_list, load_edge_list_path, load_graph_path, read_csr, LoadOptions};

use xxhash_rust::xxh3::Xxh3;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists and no isolated nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    degrees: Vec<u32>,
    /// Node label in the source file for each compacted id.
    original_ids: Vec<u64>,
}

impl Graph {
    /// Builds a graph on nodes `0..n` from an undirected edge list.
    ///
    /// Edges are symmetrized and deduplicated and self-loops are dropped.
    /// Every node must end up with at least one neighbor.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let original_ids = (0..n as u64).collect();
        Self::build(n, edges, original_ids)
    }

    pub(crate) fn build<I>(n: usize, edges: I, original_ids: Vec<u64>) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n == 0 {
            return Err(Error::Structure("graph has no nodes".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::Structure(format!("{n} nodes exceed the u32 id space")));
        }
        let mut arcs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Structure(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u != v {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();

        let mut degrees = vec![0u32; n];
        for &(u, _) in &arcs {
            degrees[u as usize] += 1;
        }
        if let Some(u) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::Structure(format!("node {u} is isolated")));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0usize;
        for &d in &degrees {
            acc += d as usize;
            offsets.push(acc);
        }
        let neighbors = arcs.into_iter().map(|(_, v)| v).collect();
        Ok(Graph {
            offsets,
            neighbors,
            degrees,
            original_ids,
        })
    }

    /// Assembles a graph from raw CSR arrays, checking every invariant.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<u32>) -> Result<Self> {
        if offsets.len() < 2 || offsets[0] != 0 {
            return Err(Error::Structure("offsets must start at 0 and cover at least one node".into()));
        }
        let n = offsets.len() - 1;
        if *offsets.last().unwrap() != neighbors.len() {
            return Err(Error::Structure("last offset must equal the neighbor count".into()));
        }
        if !neighbors.len().is_multiple_of(2) {
            return Err(Error::Structure("neighbor array length must be even".into()));
        }
        let mut degrees = Vec::with_capacity(n);
        for u in 0..n {
            let (lo, hi) = (offsets[u], offsets[u + 1]);
            if hi <= lo {
                return Err(Error::Structure(format!("node {u} is isolated or offsets decrease")));
            }
            let adj = &neighbors[lo..hi];
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Structure(format!("adjacency of node {u} is not strictly sorted")));
                }
            }
            for &v in adj {
                if v as usize >= n {
                    return Err(Error::Structure(format!("node {u} has out-of-range neighbor {v}")));
                }
                if v as usize == u {
                    return Err(Error::Structure(format!("node {u} has a self-loop")));
                }
            }
            degrees.push((hi - lo) as u32);
        }
        let g = Graph {
            offsets,
            neighbors,
            degrees,
            original_ids: (0..n as u64).collect(),
        };
        for u in 0..n {
            for &v in g.neighbors(u as u32) {
                if g.neighbors(v).binary_search(&(u as u32)).is_err() {
                    return Err(Error::Structure(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, u: u32) -> u32 {
        self.degrees[u as usize]
    }

    #[inline]
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    #[inline]
    pub fn neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[u32] {
        &self.neighbors
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Compacted id of a node label from the source file.
    pub fn compact_id(&self, original: u64) -> Option<u32> {
        self.original_ids.iter().position(|&o| o == original).map(|i| i as u32)
    }

    pub fn contains(&self, u: u32) -> bool {
        (u as usize) < self.n()
    }

    /// Stable 64-bit fingerprint of the CSR structure.
    pub fn content_hash(&self) -> u64 {
        let mut h = Xxh3::new();
        h.update(&(self.n() as u64).to_le_bytes());
        for &o in &self.offsets {
            h.update(&(o as u64).to_le_bytes());
        }
        for &v in &self.neighbors {
            h.update(&v.to_le_bytes());
        }
        h.digest()
    }

    /// `y = P x`.
    pub fn apply_walk(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n()];
        self.apply_walk_into(x, &mut y);
        y
    }

    /// Overwrites `y` with `P x`.
    ///
    /// Terms are gathered in ascending neighbor order, the same order in which
    /// [`Graph::apply_walk_from_subset`] scatters them, so both routes agree bit for bit.
    pub fn apply_walk_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n();
        assert_eq!(x.len(), n, "input vector length must equal node count");
        assert_eq!(y.len(), n, "output vector length must equal node count");
        for (v, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for &u in self.neighbors(v as u32) {
                acc += x[u as usize] / self.degrees[u as usize] as f64;
            }
            *out = acc;
        }
    }

    /// `accum += scale * P (x restricted to s)`; returns the degree volume touched.
    pub fn apply_walk_from_subset(&self, x: &[f64], s: &NodeSet, scale: f64, accum: &mut [f64]) -> u64 {
        assert_eq!(x.len(), self.n(), "input vector length must equal node count");
        assert_eq!(accum.len(), self.n(), "accumulator length must equal node count");
        let mut work = 0u64;
        for &u in s.members() {
            let d = self.degrees[u as usize];
            let share = scale * (x[u as usize] / d as f64);
            for &v in self.neighbors(u) {
                accum[v as usize] += share;
            }
            work += d as u64;
        }
        work
    }
}

/// A set of node ids together with its degree volume.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeSet {
    members: Vec<u32>,
    vol: u64,
}

impl NodeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Members are sorted and deduplicated.
    ///
    /// Panics if a member is not a node of `g`.
    pub fn new(g: &Graph, members: impl IntoIterator<Item = u32>) -> Self {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let vol = members
            .iter()
            .map(|&u| {
                assert!(g.contains(u), "node {u} is not in the graph");
                g.degree(u) as u64
            })
            .sum();
        NodeSet { members, vol }
    }

    pub fn all(g: &Graph) -> Self {
        NodeSet {
            members: (0..g.n() as u32).collect(),
            vol: 2 * g.m() as u64,
        }
    }

    /// Nodes where `mask` is set.
    pub fn from_mask(g: &Graph, mask: &[bool]) -> Self {
        Self::new(
            g,
            mask.iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u as u32),
        )
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn vol(&self) -> u64 {
        self.vol
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: u32) -> bool {
        self.members.binary_search(&u).is_ok()
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &u in &self.members {
            mask[u as usize] = true;
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn csr_invariants_hold() {
        let g = Graph::from_edges(5, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 0), (2, 2)]).unwrap();
        assert_eq!(g.m(), 5);
        for u in 0..g.n() as u32 {
            assert_eq!(g.offsets[u as usize + 1] - g.offsets[u as usize], g.degree(u) as usize);
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
                assert_ne!(u, v);
            }
            assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn isolated_node_is_rejected() {
        assert!(matches!(Graph::from_edges(3, [(0, 1)]), Err(Error::Structure(_))));
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::Structure(_))));
    }

    #[test]
    fn walk_on_star_moves_leaf_mass_to_center() {
        let g = star();
        assert_eq!(g.apply_walk(&[0.0, 1.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn walk_on_path_splits_uniformly() {
        let g = path3();
        assert_eq!(g.apply_walk(&[0.0, 1.0, 0.0]), vec![0.5, 0.0, 0.5]);
        assert_eq!(g.apply_walk(&[0.0; 3]), vec![0.0; 3]);
    }

    #[test]
    #[should_panic(expected = "length")]
    fn walk_rejects_wrong_length() {
        path3().apply_walk(&[1.0]);
    }

    #[test]
    fn subset_walk_on_star_center() {
        let g = star();
        let s = NodeSet::new(&g, [0]);
        let mut acc = vec![0.0; 4];
        let work = g.apply_walk_from_subset(&[1.0, 0.0, 0.0, 0.0], &s, 2.0, &mut acc);
        assert_eq!(work, 3);
        for v in 1..4 {
            assert!((acc[v] - 2.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(acc[0], 0.0);
    }

    #[test]
    fn empty_subset_is_a_no_op() {
        let g = star();
        let mut acc = vec![0.5; 4];
        assert_eq!(g.apply_walk_from_subset(&[1.0; 4], &NodeSet::empty(), 2.0, &mut acc), 0);
        assert_eq!(acc, vec![0.5; 4]);
    }

    #[test]
    fn node_set_volume() {
        let g = star();
        let s = NodeSet::new(&g, [3, 0, 3]);
        assert_eq!(s.members(), &[0, 3]);
        assert_eq!(s.vol(), 4);
        assert_eq!(NodeSet::all(&g).vol(), 6);
    }

    #[test]
    fn from_csr_validates_symmetry() {
        assert!(Graph::from_csr(vec![0, 1, 2], vec![1, 0]).is_ok());
        assert!(Graph::from_csr(vec![0, 1, 2, 4], vec![1, 2, 0, 1]).is_err());
    }
}
