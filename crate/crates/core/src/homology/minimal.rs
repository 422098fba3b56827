//! Brute-force clique-minimality.
//!
//! `X` is `(A, q)`-clique-minimal when, among the clique subcomplexes `Y` of
//! `X` that contain `A`, only `Y = X` has `β_q(Y, A) > 0`. Both routines here
//! are exponential and meant for small complexes.

use std::collections::{HashMap, HashSet};

use super::{check_subcomplex, chain_dims, ChainComplex};
use crate::complex::{clique_complex, clique_complex_on, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::pa_graph::SimpleGraph;

/// Size guard for [`is_clique_minimal_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    /// Edges of `X` outside `A`; each one doubles the work.
    pub max_free_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 12,
            max_free_edges: 18,
        }
    }
}

/// [`is_clique_minimal_with`] under the default limits.
pub fn is_clique_minimal(x: &SimplicialComplex, a: &SimplicialComplex, q: usize) -> Result<bool> {
    is_clique_minimal_with(x, a, q, OracleLimits::default())
}

/// Decides `(A, q)`-clique-minimality by enumerating every clique subcomplex
/// of `x` that contains `a`. `a` must be an induced subcomplex.
pub fn is_clique_minimal_with(
    x: &SimplicialComplex,
    a: &SimplicialComplex,
    q: usize,
    limits: OracleLimits,
) -> Result<bool> {
    check_subcomplex(x, a)?;
    x.require_dim(q + 1)?;
    let in_a = |v: Vertex| a.contains_vertex(v);
    for d in (1..=x.max_dim()).take_while(|&d| a.has_dim(d)) {
        if x.simplices(d).any(|s| s.iter().all(|&v| in_a(v)) && !a.contains(s)) {
            return Err(Error::InvalidParams("subcomplex is not induced".into()));
        }
    }

    let vertices = x.vertices();
    if vertices.len() > limits.max_vertices {
        return Err(Error::OracleTooLarge(format!(
            "{} vertices (limit {})",
            vertices.len(),
            limits.max_vertices
        )));
    }
    let (fixed, free): (Vec<_>, Vec<_>) = x.edges().partition(|&(u, v)| in_a(u) && in_a(v));
    if free.len() > limits.max_free_edges {
        return Err(Error::OracleTooLarge(format!(
            "{} edges outside the subcomplex (limit {})",
            free.len(),
            limits.max_free_edges
        )));
    }

    let n_labels = vertices.last().copied().unwrap_or(0);
    let full = (1u64 << free.len()) - 1;
    for mask in 0..=full {
        let chosen = free
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = SimpleGraph::from_edges(n_labels, fixed.iter().copied().chain(chosen));
        let forced: Vec<Vertex> = vertices
            .iter()
            .copied()
            .filter(|&v| in_a(v) || !g.neighbors(v).is_empty())
            .collect();
        let y = clique_complex_on(&g, &forced, q + 1);
        let cc = ChainComplex::build(&y, chain_dims(q), |s| {
            (!s.iter().all(|&v| in_a(v))).then_some(0)
        })?;
        let b = cc.barcode(q..=q).betti_at(q, 0);

        // Every subset of the remaining vertices may be added as isolated
        // points; each one adds a relative 0-cycle and nothing above.
        let optional = vertices.len() - forced.len();
        let grows = q == 0;
        let is_full = mask == full;
        if is_full && b + if grows { optional } else { 0 } == 0 {
            return Ok(false);
        }
        let largest_proper = if is_full {
            optional.checked_sub(1)
        } else {
            Some(optional)
        };
        if let Some(size) = largest_proper {
            if b + if grows { size } else { 0 } > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`search_clique_minimal`].
#[derive(Debug, Clone)]
pub struct MinimalSearch {
    /// Isomorphism classes of graphs visited.
    pub classes: usize,
    /// One representative per class of `(∅, q)`-clique-minimal complexes,
    /// given by their 1-skeleta on `1..=k` (isolated vertices removed).
    pub minimal: Vec<SimpleGraph>,
}

/// Finds every `(∅, q)`-clique-minimal flag complex on at most `max_vertices`
/// vertices (at most 8), up to isomorphism.
///
/// Graphs are visited by increasing edge count. A graph "dominates a hole"
/// when it or one of its one-edge deletions does; it is minimal when it has a
/// hole and no one-edge deletion dominates one. Removing a vertex leaves the
/// same `β_q` as isolating it, so edge deletions cover every proper clique
/// subcomplex.
pub fn search_clique_minimal(max_vertices: usize, q: usize) -> Result<MinimalSearch> {
    if q == 0 {
        return Err(Error::InvalidParams("search needs q >= 1".into()));
    }
    if max_vertices > 8 {
        return Err(Error::OracleTooLarge(format!(
            "{max_vertices} vertices (limit 8)"
        )));
    }
    let n = max_vertices;
    let levels = graph_classes(n);
    let mut dominates: HashMap<u32, bool> = HashMap::new();
    let mut minimal = Vec::new();
    for level in &levels {
        for &code in level {
            let adj = decode(code, n);
            let g = to_simple(&adj);
            let x = clique_complex(&g, q + 1);
            let hole = super::betti(&x, q)? > 0;
            let mut below = false;
            for (u, v) in edge_pairs(&adj) {
                let mut smaller = adj.clone();
                smaller[u] &= !(1 << v);
                smaller[v] &= !(1 << u);
                if dominates[&canonical(&smaller)] {
                    below = true;
                    break;
                }
            }
            if hole && !below {
                minimal.push(strip_isolated(&adj));
            }
            dominates.insert(code, hole || below);
        }
    }
    Ok(MinimalSearch {
        classes: dominates.len(),
        minimal,
    })
}

/// Canonical codes of all graphs on `n` vertices, grouped by edge count.
fn graph_classes(n: usize) -> Vec<Vec<u32>> {
    let max_edges = n * n.saturating_sub(1) / 2;
    let mut levels = vec![vec![canonical(&vec![0u8; n])]];
    for _ in 0..max_edges {
        let mut next = HashSet::new();
        for &code in levels.last().unwrap() {
            let adj = decode(code, n);
            for v in 1..n {
                for u in 0..v {
                    if adj[u] >> v & 1 == 0 {
                        let mut bigger = adj.clone();
                        bigger[u] |= 1 << v;
                        bigger[v] |= 1 << u;
                        next.insert(canonical(&bigger));
                    }
                }
            }
        }
        let mut next: Vec<u32> = next.into_iter().collect();
        next.sort_unstable();
        levels.push(next);
    }
    levels
}

fn edge_pairs(adj: &[u8]) -> Vec<(usize, usize)> {
    let n = adj.len();
    (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(u, v)| adj[u] >> v & 1 == 1)
        .collect()
}

fn to_simple(adj: &[u8]) -> SimpleGraph {
    let edges = edge_pairs(adj)
        .into_iter()
        .map(|(u, v)| (u as u32 + 1, v as u32 + 1));
    SimpleGraph::from_edges(adj.len() as u32, edges)
}

fn strip_isolated(adj: &[u8]) -> SimpleGraph {
    let keep: Vec<usize> = (0..adj.len()).filter(|&v| adj[v] != 0).collect();
    let label = |v: usize| keep.binary_search(&v).unwrap() as u32 + 1;
    let edges = edge_pairs(adj).into_iter().map(|(u, v)| (label(u), label(v)));
    SimpleGraph::from_edges(keep.len() as u32, edges)
}

// Code layout: pairs (i, j) with i < j, ordered by j then i, most significant
// bit first.
fn decode(code: u32, n: usize) -> Vec<u8> {
    let total = n * n.saturating_sub(1) / 2;
    let mut adj = vec![0u8; n];
    let mut bit = total;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

/// Iterated neighborhood-color refinement starting from degrees. Colors are
/// ranks of label-free signatures, so isomorphic graphs get matching colors.
fn refine(adj: &[u8]) -> Vec<usize> {
    let n = adj.len();
    let mut colors: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    let mut distinct = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        colors = sigs.iter().map(|s| uniq.binary_search(s).unwrap()).collect();
        if uniq.len() == distinct {
            return colors;
        }
        distinct = uniq.len();
    }
}

/// Smallest code over all vertex orders that list color classes in color
/// order. Prefixes larger than the best found so far are pruned.
fn canonical(adj: &[u8]) -> u32 {
    let n = adj.len();
    if n <= 1 {
        return 0;
    }
    let colors = refine(adj);
    let mut slot_color: Vec<usize> = colors.clone();
    slot_color.sort_unstable();

    struct Search<'a> {
        adj: &'a [u8],
        colors: Vec<usize>,
        slot_color: Vec<usize>,
        order: Vec<usize>,
        used: u8,
        best: Option<u32>,
        total: usize,
    }

    impl Search<'_> {
        fn go(&mut self, p: usize, code: u32) {
            let n = self.adj.len();
            if p == n {
                if self.best.is_none_or(|b| code < b) {
                    self.best = Some(code);
                }
                return;
            }
            for v in 0..n {
                if self.used >> v & 1 == 1 || self.colors[v] != self.slot_color[p] {
                    continue;
                }
                let mut c = code;
                for &w in &self.order {
                    c = c << 1 | u32::from(self.adj[w] >> v & 1);
                }
                let len = p * (p + 1) / 2;
                if let Some(b) = self.best {
                    let shift = self.total - len;
                    let best_prefix = if shift >= 32 { 0 } else { b >> shift };
                    if c > best_prefix {
                        continue;
                    }
                }
                self.order.push(v);
                self.used |= 1 << v;
                self.go(p + 1, c);
                self.used &= !(1 << v);
                self.order.pop();
            }
        }
    }

    let mut s = Search {
        adj,
        colors,
        slot_color,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
        total: n * (n - 1) / 2,
    };
    s.go(0, 0);
    s.best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{clique_complex, induced, octahedral_ball, octahedral_sphere};

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<u8> {
        let mut adj = vec![0u8; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    #[test]
    fn zero_sphere_is_not_minimal() {
        // each point alone already carries a component
        let s0 = octahedral_sphere(0);
        assert!(!is_clique_minimal(&s0, &SimplicialComplex::empty(0), 0).unwrap());
    }

    #[test]
    fn spheres_are_minimal() {
        for q in 2..=3 {
            let s = octahedral_sphere(q - 1);
            let x = clique_complex(&s.one_skeleton(), q);
            assert!(is_clique_minimal(&x, &SimplicialComplex::empty(0), q - 1).unwrap(), "S^{}", q - 1);
        }
    }

    #[test]
    fn balls_are_not_minimal() {
        for q in 1..=3 {
            let d = octahedral_ball(q);
            let x = clique_complex(&d.one_skeleton(), q + 1);
            assert!(!is_clique_minimal(&x, &SimplicialComplex::empty(0), q).unwrap());
        }
    }

    #[test]
    fn relative_minimality_of_a_ball_rel_boundary() {
        // (D^2, S^1) carries relative H_2 and is tight
        let d = clique_complex(&octahedral_ball(2).one_skeleton(), 3);
        let s = induced(&d, &[1, 2, 3, 4]);
        assert!(is_clique_minimal(&d, &s, 2).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = clique_complex(&octahedral_sphere(6).one_skeleton(), 3);
        assert!(matches!(
            is_clique_minimal(&big, &SimplicialComplex::empty(0), 2),
            Err(Error::OracleTooLarge(_))
        ));
    }

    #[test]
    fn non_induced_subcomplex_is_rejected() {
        let d = clique_complex(&octahedral_ball(2).one_skeleton(), 3);
        let a = SimplicialComplex::from_simplices([[1u32], [2]]);
        assert!(is_clique_minimal(&d, &a, 1).is_err());
    }

    #[test]
    fn canonical_form_is_label_free() {
        let a = adjacency(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let b = adjacency(5, &[(4, 2), (2, 0), (0, 3), (3, 1)]);
        let star = adjacency(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(canonical(&a), canonical(&b));
        assert_ne!(canonical(&a), canonical(&star));
        let c = canonical(&a);
        assert_eq!(canonical(&decode(c, 5)), c);
    }

    #[test]
    fn class_counts_match_known_values() {
        // number of graphs on n unlabeled vertices
        let known = [1, 1, 2, 4, 11, 34, 156];
        for (n, &k) in known.iter().enumerate() {
            let total: usize = graph_classes(n).iter().map(Vec::len).sum();
            assert_eq!(total, k, "n={n}");
        }
    }

    #[test]
    fn one_dimensional_minimal_complexes_are_chordless_cycles() {
        let found = search_clique_minimal(6, 1).unwrap();
        let mut sizes: Vec<(u32, usize)> = found
            .minimal
            .iter()
            .map(|g| (g.num_nodes(), g.num_edges()))
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![(4, 4), (5, 5), (6, 6)]);
        for g in &found.minimal {
            assert!((1..=g.num_nodes()).all(|v| g.neighbors(v).len() == 2));
        }
    }

    #[test]
    fn search_agrees_with_the_oracle_on_six_vertices() {
        let found = search_clique_minimal(6, 2).unwrap();
        assert_eq!(found.minimal.len(), 1);
        let oct = &found.minimal[0];
        let x = clique_complex(oct, 3);
        assert!(crate::complex::matches_octahedral_sphere(&x, 2));
        assert!(is_clique_minimal(&x, &SimplicialComplex::empty(0), 2).unwrap());
    }
}
