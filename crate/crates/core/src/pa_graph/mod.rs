//! Affine preferential attachment multigraphs.
//!
//! `G(2)` is the deterministic graph with `m` parallel edges from node 2 to
//! node 1. Each later node `t` sends `m` edges, one at a time, to earlier
//! nodes chosen with probability proportional to `degree(v) + delta`; degrees
//! are updated after every single edge, so a node picked by the first edge of
//! `t` is more attractive to the second one. Node `t` itself is never a
//! candidate while it is attaching.

mod fenwick;
mod io;

pub use fenwick::FenwickTree;
pub use io::{read_graph, write_graph};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters. `nodes` is the final node count `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PaParams {
    pub nodes: u32,
    pub m: u32,
    pub delta: f64,
    pub seed: u64,
}

impl PaParams {
    pub fn new(nodes: u32, m: u32, delta: f64, seed: u64) -> Self {
        Self {
            nodes,
            m,
            delta,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 2 {
            return Err(Error::InvalidParams(format!(
                "T = {} but at least 2 nodes are required",
                self.nodes
            )));
        }
        if self.m < 1 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if !self.delta.is_finite() || self.delta <= -(self.m as f64) {
            return Err(Error::InvalidParams(format!(
                "delta = {} must exceed -m = -{}",
                self.delta, self.m
            )));
        }
        Ok(())
    }
}

/// A group of parallel edges `source -> target` with `source > target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeGroup {
    pub source: u32,
    pub target: u32,
    pub multiplicity: u32,
}

/// Directed multigraph on nodes `1..=num_nodes` whose edges point from later
/// to earlier nodes. Edge groups are sorted by `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDiGraph {
    num_nodes: u32,
    edges: Vec<EdgeGroup>,
    degree: Vec<u64>,
    // out_start[v - 1]..out_start[v] indexes the groups leaving v.
    out_start: Vec<usize>,
}

impl MultiDiGraph {
    /// Builds a graph from arbitrary `(source, target, multiplicity)` triples,
    /// merging repeated pairs and dropping zero multiplicities.
    pub fn from_edges(
        num_nodes: u32,
        edges: impl IntoIterator<Item = (u32, u32, u32)>,
    ) -> Result<Self> {
        let mut groups: Vec<EdgeGroup> = Vec::new();
        for (source, target, multiplicity) in edges {
            if target < 1 || source <= target || source > num_nodes {
                return Err(Error::InvalidParams(format!(
                    "edge {source} -> {target} must satisfy num_nodes >= source > target >= 1"
                )));
            }
            if multiplicity > 0 {
                groups.push(EdgeGroup {
                    source,
                    target,
                    multiplicity,
                });
            }
        }
        groups.sort_unstable();
        let mut merged: Vec<EdgeGroup> = Vec::with_capacity(groups.len());
        for g in groups {
            match merged.last_mut() {
                Some(last) if last.source == g.source && last.target == g.target => {
                    last.multiplicity += g.multiplicity;
                }
                _ => merged.push(g),
            }
        }
        Ok(Self::from_sorted_groups(num_nodes, merged))
    }

    fn from_sorted_groups(num_nodes: u32, edges: Vec<EdgeGroup>) -> Self {
        let n = num_nodes as usize;
        let mut degree = vec![0u64; n];
        let mut out_start = vec![0usize; n + 1];
        for e in &edges {
            degree[e.source as usize - 1] += e.multiplicity as u64;
            degree[e.target as usize - 1] += e.multiplicity as u64;
            out_start[e.source as usize] += 1;
        }
        for v in 1..=n {
            out_start[v] += out_start[v - 1];
        }
        Self {
            num_nodes,
            edges,
            degree,
            out_start,
        }
    }

    pub fn num_nodes(&self) -> u32 {
        self.num_nodes
    }

    pub fn edges(&self) -> &[EdgeGroup] {
        &self.edges
    }

    /// Total degree of node `v` (in plus out, counting multiplicity).
    pub fn degree(&self, v: u32) -> u64 {
        self.degree[v as usize - 1]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degree
    }

    /// Edge groups leaving `v`, sorted by target.
    pub fn out_groups(&self, v: u32) -> &[EdgeGroup] {
        let v = v as usize;
        &self.edges[self.out_start[v - 1]..self.out_start[v]]
    }

    pub fn out_degree(&self, v: u32) -> u64 {
        self.out_groups(v).iter().map(|e| e.multiplicity as u64).sum()
    }

    /// Multiplicity of `source -> target` (0 when absent).
    pub fn multiplicity(&self, source: u32, target: u32) -> u32 {
        if source == 0 || source > self.num_nodes {
            return 0;
        }
        let out = self.out_groups(source);
        out.binary_search_by_key(&target, |e| e.target)
            .map_or(0, |i| out[i].multiplicity)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity as u64).sum()
    }

    /// The subgraph induced on nodes `1..=t`. For a generated graph this is
    /// the graph at time `t`.
    pub fn prefix(&self, t: u32) -> MultiDiGraph {
        let t = t.min(self.num_nodes);
        let end = self.out_start[t as usize];
        Self::from_sorted_groups(t, self.edges[..end].to_vec())
    }
}

/// Undirected simple graph on nodes `1..=num_nodes` with sorted, duplicate-free
/// neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<u32>>,
}

impl SimpleGraph {
    /// Builds a simple graph from undirected pairs; self-loops and repeats are
    /// dropped.
    pub fn from_edges(num_nodes: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut adjacency = vec![Vec::new(); num_nodes as usize];
        for (u, v) in edges {
            assert!(
                (1..=num_nodes).contains(&u) && (1..=num_nodes).contains(&v),
                "edge {u}-{v} outside 1..={num_nodes}"
            );
            if u != v {
                adjacency[u as usize - 1].push(v);
                adjacency[v as usize - 1].push(u);
            }
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Self { adjacency }
    }

    pub fn num_nodes(&self) -> u32 {
        self.adjacency.len() as u32
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize - 1]
    }

    /// Neighbors of `v` with a smaller index.
    pub fn lower_neighbors(&self, v: u32) -> &[u32] {
        let nbrs = self.neighbors(v);
        &nbrs[..nbrs.partition_point(|&w| w < v)]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && (1..=self.num_nodes()).contains(&u)
            && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (1..=self.num_nodes()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// Multigraph form: each edge `{u, v}` becomes `max -> min` with multiplicity 1.
    pub fn to_multigraph(&self) -> MultiDiGraph {
        MultiDiGraph::from_edges(
            self.num_nodes(),
            self.edges().map(|(u, v)| (v, u, 1)),
        )
        .expect("simple graph edges are valid multigraph edges")
    }
}

/// Collapses parallel edges and forgets directions.
pub fn simplify(g: &MultiDiGraph) -> SimpleGraph {
    SimpleGraph::from_edges(g.num_nodes(), g.edges().iter().map(|e| (e.source, e.target)))
}

/// Edge-by-edge preferential attachment process.
#[derive(Debug, Clone)]
pub struct PaGenerator {
    params: PaParams,
    rng: ChaCha8Rng,
    degree: Vec<u64>,
    // Leaf v - 1 holds degree(v) + delta for every candidate node v.
    weights: FenwickTree<f64>,
    edges: Vec<EdgeGroup>,
    // Node currently attaching and the targets it has drawn so far.
    current: u32,
    pending: Vec<u32>,
}

impl PaGenerator {
    /// Starts from `G(2)`: `m` parallel edges from node 2 to node 1.
    pub fn new(params: PaParams) -> Result<Self> {
        params.validate()?;
        let n = params.nodes as usize;
        let m = params.m as u64;
        let mut degree = Vec::with_capacity(n);
        degree.extend([m, m]);
        let mut weights = FenwickTree::with_capacity(n);
        weights.push(m as f64 + params.delta);
        weights.push(m as f64 + params.delta);
        let mut edges = Vec::with_capacity(n * params.m as usize);
        edges.push(EdgeGroup {
            source: 2,
            target: 1,
            multiplicity: params.m,
        });
        Ok(Self {
            params,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            degree,
            weights,
            edges,
            current: 3,
            pending: Vec::with_capacity(params.m as usize),
        })
    }

    /// Continues the process from a complete graph `g` on at least two
    /// nodes, drawing with a fresh generator seeded by `params.seed`.
    pub fn resume(g: &MultiDiGraph, params: PaParams) -> Result<Self> {
        params.validate()?;
        let n = g.num_nodes();
        if n < 2 || n > params.nodes {
            return Err(Error::InvalidParams(format!(
                "cannot resume a {n}-node graph towards T = {}",
                params.nodes
            )));
        }
        if let Some(v) = (2..=n).find(|&v| g.out_degree(v) != params.m as u64) {
            return Err(Error::InvalidParams(format!(
                "node {v} has out-degree {} but m = {}",
                g.out_degree(v),
                params.m
            )));
        }
        let degree = g.degrees().to_vec();
        let mut weights = FenwickTree::with_capacity(params.nodes as usize);
        for &d in &degree {
            weights.push(d as f64 + params.delta);
        }
        Ok(Self {
            params,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            degree,
            weights,
            edges: g.edges().to_vec(),
            current: n + 1,
            pending: Vec::with_capacity(params.m as usize),
        })
    }

    pub fn params(&self) -> &PaParams {
        &self.params
    }

    pub fn is_done(&self) -> bool {
        self.current > self.params.nodes
    }

    /// Number of nodes that may currently receive an edge.
    pub fn num_candidates(&self) -> usize {
        self.weights.len()
    }

    /// Current degree of node `v`, including edges placed in the ongoing step.
    pub fn degree(&self, v: u32) -> u64 {
        self.degree[v as usize - 1]
    }

    /// Probability that the next edge lands on each candidate node `1..=k`.
    pub fn attachment_distribution(&self) -> Vec<f64> {
        let total = self.weights.total();
        (0..self.weights.len())
            .map(|i| self.weights.weight(i) / total)
            .collect()
    }

    /// Places one edge of the attaching node and returns `(source, target)`,
    /// or `None` once all `T` nodes are present.
    pub fn step_edge(&mut self) -> Option<(u32, u32)> {
        if self.is_done() {
            return None;
        }
        let t = self.current;
        if self.pending.is_empty() {
            self.degree.push(0);
        }
        let u: f64 = self.rng.gen();
        let idx = self.weights.search(u * self.weights.total());
        let target = idx as u32 + 1;
        self.weights.add(idx, 1.0);
        self.degree[idx] += 1;
        self.degree[t as usize - 1] += 1;
        self.pending.push(target);

        if self.pending.len() == self.params.m as usize {
            self.pending.sort_unstable();
            for chunk in self.pending.chunk_by(|a, b| a == b) {
                self.edges.push(EdgeGroup {
                    source: t,
                    target: chunk[0],
                    multiplicity: chunk.len() as u32,
                });
            }
            self.pending.clear();
            self.weights
                .push(self.degree[t as usize - 1] as f64 + self.params.delta);
            self.current += 1;
        }
        Some((t, target))
    }

    /// Runs the process to completion.
    pub fn finish(mut self) -> MultiDiGraph {
        while self.step_edge().is_some() {}
        MultiDiGraph::from_sorted_groups(self.params.nodes, self.edges)
    }
}

/// Samples `G(T, delta, m)` deterministically from `params.seed`.
pub fn generate(params: PaParams) -> Result<MultiDiGraph> {
    Ok(PaGenerator::new(params)?.finish())
}
