//! Simplicial complexes stored as lexicographically sorted vertex tuples.
//!
//! Each dimension keeps its simplices in one flat buffer with stride `d + 1`,
//! so membership is a binary search and iteration is allocation-free. A
//! complex may be truncated at `max_dim`; [`SimplicialComplex::is_complete`]
//! records whether anything above the cap was dropped, which is what the
//! homology code checks before trusting a boundary rank.

mod io;
mod iso;

pub use io::{read_complex, write_complex};
pub use iso::graphs_isomorphic;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::pa_graph::SimpleGraph;

pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    max_dim: usize,
    simplices: Vec<Vec<Vertex>>,
    complete: bool,
}

impl SimplicialComplex {
    /// The empty complex with the given cap.
    pub fn empty(max_dim: usize) -> Self {
        Self {
            max_dim,
            simplices: vec![Vec::new(); max_dim + 1],
            complete: true,
        }
    }

    /// Face closure of the given simplices. The cap is the largest dimension
    /// among them and the result is complete.
    pub fn from_simplices<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[Vertex]>,
    {
        let gens: Vec<Vec<Vertex>> = simplices
            .into_iter()
            .map(|s| {
                let mut v = s.as_ref().to_vec();
                v.sort_unstable();
                v.dedup();
                v
            })
            .filter(|v| !v.is_empty())
            .collect();
        let max_dim = gens.iter().map(|s| s.len() - 1).max().unwrap_or(0);
        Self::closure(max_dim, &gens, true)
    }

    /// Face closure truncated at `max_dim`.
    pub fn from_simplices_capped<S: AsRef<[Vertex]>>(max_dim: usize, simplices: &[S]) -> Self {
        let gens: Vec<Vec<Vertex>> = simplices
            .iter()
            .map(|s| {
                let mut v = s.as_ref().to_vec();
                v.sort_unstable();
                v.dedup();
                v
            })
            .filter(|v| !v.is_empty())
            .collect();
        let complete = gens.iter().all(|s| s.len() <= max_dim + 1);
        Self::closure(max_dim, &gens, complete)
    }

    fn closure(max_dim: usize, gens: &[Vec<Vertex>], complete: bool) -> Self {
        let mut per_dim: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); max_dim + 1];
        for g in gens {
            // every subset of g of size <= max_dim + 1
            let n = g.len();
            assert!(n <= 30, "generator with {n} vertices is too large to close");
            let top = n.min(max_dim + 1);
            for mask in 1u32..(1u32 << n) {
                let k = mask.count_ones() as usize;
                if k > top {
                    continue;
                }
                let face: Vec<Vertex> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| g[i]).collect();
                per_dim[k - 1].push(face);
            }
        }
        let simplices = per_dim
            .into_iter()
            .map(|mut list| {
                list.sort_unstable();
                list.dedup();
                list.concat()
            })
            .collect();
        Self {
            max_dim,
            simplices,
            complete,
        }
    }

    /// Assembles a complex from per-dimension lists that are already sorted,
    /// duplicate-free and face-closed.
    pub(crate) fn from_sorted_parts(max_dim: usize, simplices: Vec<Vec<Vertex>>, complete: bool) -> Self {
        debug_assert_eq!(simplices.len(), max_dim + 1);
        Self {
            max_dim,
            simplices,
            complete,
        }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// True when no simplex above `max_dim` was dropped.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Whether every simplex of dimension `d` is present.
    pub fn has_dim(&self, d: usize) -> bool {
        d <= self.max_dim || self.complete
    }

    pub(crate) fn require_dim(&self, d: usize) -> Result<()> {
        if self.has_dim(d) {
            Ok(())
        } else {
            Err(Error::DimensionCap {
                max_dim: self.max_dim,
                needed: d,
            })
        }
    }

    /// Highest dimension with at least one simplex.
    pub fn dim(&self) -> Option<usize> {
        (0..=self.max_dim).rev().find(|&d| self.count(d) > 0)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices[0].is_empty()
    }

    /// Number of `d`-simplices (0 above the cap).
    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, |s| s.len() / (d + 1))
    }

    pub fn total_count(&self) -> usize {
        (0..=self.max_dim).map(|d| self.count(d)).sum()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[Vertex] {
        &self.simplices[d][i * (d + 1)..(i + 1) * (d + 1)]
    }

    pub fn simplices(&self, d: usize) -> std::slice::ChunksExact<'_, Vertex> {
        match self.simplices.get(d) {
            Some(s) => s.chunks_exact(d + 1),
            None => [].chunks_exact(d + 1),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.simplices[0]
    }

    /// Position of a sorted tuple within its dimension.
    pub fn index_of(&self, simplex: &[Vertex]) -> Option<usize> {
        if simplex.is_empty() {
            return None;
        }
        let d = simplex.len() - 1;
        let flat = self.simplices.get(d)?;
        let (mut lo, mut hi) = (0usize, flat.len() / (d + 1));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * (d + 1)..(mid + 1) * (d + 1)].cmp(simplex) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, simplex: &[Vertex]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.simplices[0].binary_search(&v).is_ok()
    }

    /// Every stored simplex has all its codimension-one faces stored.
    pub fn is_face_closed(&self) -> bool {
        let mut face = Vec::new();
        (1..=self.max_dim).all(|d| {
            self.simplices(d).all(|s| {
                (0..=d).all(|skip| {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    self.contains(&face)
                })
            })
        })
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.simplices(1).map(|e| (e[0], e[1]))
    }

    /// The 1-skeleton as a graph on `1..=max vertex label`.
    pub fn one_skeleton(&self) -> SimpleGraph {
        let n = self.vertices().last().copied().unwrap_or(0);
        assert!(
            self.vertices().first().is_none_or(|&v| v >= 1),
            "vertex labels must be positive to form a graph"
        );
        SimpleGraph::from_edges(n, self.edges())
    }

    /// Flag property up to the cap: a vertex set of size `<= max_dim + 1` is a
    /// simplex iff all its pairs are edges.
    pub fn is_flag(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let g = self.one_skeleton();
        let rebuilt = clique_complex_on(&g, self.vertices(), self.max_dim);
        rebuilt.simplices == self.simplices
    }

    /// Keeps the simplices accepted by `keep`. The predicate must describe a
    /// subcomplex (closed under taking faces).
    pub(crate) fn filter(&self, max_dim: usize, complete: bool, mut keep: impl FnMut(&[Vertex]) -> bool) -> Self {
        let simplices = (0..=max_dim)
            .map(|d| {
                let mut out = Vec::new();
                for s in self.simplices(d) {
                    if keep(s) {
                        out.extend_from_slice(s);
                    }
                }
                out
            })
            .collect();
        Self {
            max_dim,
            simplices,
            complete,
        }
    }
}

/// Clique complex of `g` truncated at `max_dim`.
pub fn clique_complex(g: &SimpleGraph, max_dim: usize) -> SimplicialComplex {
    let all: Vec<Vertex> = (1..=g.num_nodes()).collect();
    clique_complex_on(g, &all, max_dim)
}

/// Clique complex of the subgraph of `g` induced on the sorted vertex set
/// `vertices`, truncated at `max_dim`.
pub fn clique_complex_on(g: &SimpleGraph, vertices: &[Vertex], max_dim: usize) -> SimplicialComplex {
    debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
    let mut per_dim: Vec<Vec<Vertex>> = vec![Vec::new(); max_dim + 1];
    let mut complete = true;
    let mut clique = Vec::with_capacity(max_dim + 1);
    for &v in vertices {
        let cand: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w > v && vertices.binary_search(&w).is_ok())
            .collect();
        clique.push(v);
        expand(g, &mut clique, &cand, max_dim, &mut per_dim, &mut complete);
        clique.pop();
    }
    SimplicialComplex::from_sorted_parts(max_dim, per_dim, complete)
}

// Depth-first over cliques in increasing vertex order; emits tuples of each
// length in lexicographic order.
fn expand(
    g: &SimpleGraph,
    clique: &mut Vec<Vertex>,
    cand: &[Vertex],
    max_dim: usize,
    out: &mut [Vec<Vertex>],
    complete: &mut bool,
) {
    out[clique.len() - 1].extend_from_slice(clique);
    if clique.len() == max_dim + 1 {
        if !cand.is_empty() {
            *complete = false;
        }
        return;
    }
    for (i, &w) in cand.iter().enumerate() {
        let next = intersect_sorted(&cand[i + 1..], g.neighbors(w));
        clique.push(w);
        expand(g, clique, &next, max_dim, out, complete);
        clique.pop();
    }
}

fn intersect_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `X^(t)`: simplices whose vertices all lie in `1..=t`.
pub fn prefix(x: &SimplicialComplex, t: Vertex) -> SimplicialComplex {
    x.filter(x.max_dim(), x.is_complete(), |s| s[s.len() - 1] <= t)
}

/// Simplices of `x` whose vertices all lie in `vs`. Vertices of `vs` outside
/// `x` are ignored.
pub fn induced(x: &SimplicialComplex, vs: &[Vertex]) -> SimplicialComplex {
    let mut set = vs.to_vec();
    set.sort_unstable();
    set.dedup();
    x.filter(x.max_dim(), x.is_complete(), |s| {
        s.iter().all(|v| set.binary_search(v).is_ok())
    })
}

fn with_vertex(s: &[Vertex], v: Vertex, buf: &mut Vec<Vertex>) {
    buf.clear();
    let pos = s.partition_point(|&w| w < v);
    buf.extend_from_slice(&s[..pos]);
    if s.get(pos) != Some(&v) {
        buf.push(v);
    }
    buf.extend_from_slice(&s[pos..]);
}

/// Closed star of `v`: every simplex `s` with `s ∪ {v}` in `x`.
pub fn star(x: &SimplicialComplex, v: Vertex) -> Result<SimplicialComplex> {
    if !x.contains_vertex(v) {
        return Err(Error::VertexAbsent(v));
    }
    // In a truncated complex the top layer of the star is not fully known.
    let max_dim = if x.is_complete() {
        x.max_dim()
    } else {
        x.max_dim().saturating_sub(1)
    };
    let mut buf = Vec::new();
    Ok(x.filter(max_dim, x.is_complete(), |s| {
        with_vertex(s, v, &mut buf);
        x.contains(&buf)
    }))
}

/// Link of `v`: simplices of the star not containing `v`.
pub fn link(x: &SimplicialComplex, v: Vertex) -> Result<SimplicialComplex> {
    if !x.contains_vertex(v) {
        return Err(Error::VertexAbsent(v));
    }
    let max_dim = x.max_dim().saturating_sub(1);
    let mut buf = Vec::new();
    Ok(x.filter(max_dim, x.is_complete(), |s| {
        if s.binary_search(&v).is_ok() {
            return false;
        }
        with_vertex(s, v, &mut buf);
        x.contains(&buf)
    }))
}

/// Graph of the octahedral `q`-sphere: vertices `1..=2(q+1)`, `i` and
/// `i + q + 1` opposite, all other pairs adjacent.
pub fn octahedral_sphere_graph(q: usize) -> SimpleGraph {
    let n = 2 * (q as u32 + 1);
    let half = q as u32 + 1;
    let edges = (1..=n).flat_map(move |u| {
        ((u + 1)..=n).filter(move |&v| v != u + half).map(move |v| (u, v))
    });
    SimpleGraph::from_edges(n, edges)
}

/// Octahedral `q`-sphere: `2(q+1)` vertices, cap `q`, complete.
pub fn octahedral_sphere(q: usize) -> SimplicialComplex {
    clique_complex(&octahedral_sphere_graph(q), q)
}

/// Octahedral `q`-ball: the cone over `S^(q-1)` with apex `2q + 1`; `D^0`
/// is a single vertex.
pub fn octahedral_ball(q: usize) -> SimplicialComplex {
    if q == 0 {
        return SimplicialComplex::from_simplices([[1u32]]);
    }
    let sphere = octahedral_sphere_graph(q - 1);
    let apex = sphere.num_nodes() + 1;
    let edges = sphere
        .edges()
        .chain((1..apex).map(|u| (u, apex)))
        .collect::<Vec<_>>();
    clique_complex(&SimpleGraph::from_edges(apex, edges), q)
}

/// Whether the 1-skeleton of `x` is isomorphic to that of `S^q`. For flag
/// complexes this decides isomorphism of the complexes.
pub fn matches_octahedral_sphere(x: &SimplicialComplex, q: usize) -> bool {
    let n = 2 * (q + 1);
    if x.count(0) != n || x.count(1) != 2 * q * (q + 1) {
        return false;
    }
    let relabel = |v: Vertex| x.vertices().binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in x.edges() {
        let (a, b) = (relabel(u), relabel(v));
        adj[a].push(b);
        adj[b].push(a);
    }
    let target = octahedral_sphere_graph(q);
    let tadj: Vec<Vec<usize>> = (1..=target.num_nodes())
        .map(|v| target.neighbors(v).iter().map(|&w| w as usize - 1).collect())
        .collect();
    graphs_isomorphic(&adj, &tadj)
}
