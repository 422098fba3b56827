//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use pa_clique::complex::clique_complex;
use pa_clique::{SimpleGraph, SimplicialComplex};
use rand::Rng;

/// Every clique of `g` as a sorted vertex list, by brute force over vertex
/// subsets. Only for graphs on at most 20 nodes.
pub fn all_cliques(g: &SimpleGraph) -> Vec<Vec<Vec<u32>>> {
    let n = g.num_nodes();
    assert!(n <= 20);
    let mut by_dim: Vec<Vec<Vec<u32>>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let clique = vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if clique {
            let d = vs.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(vs);
        }
    }
    for level in &mut by_dim {
        level.sort();
    }
    by_dim
}

/// Rank over GF(2) by dense Gaussian elimination on bit rows.
pub fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dense matrix of the boundary map from `d`-simplices to `(d-1)`-simplices,
/// one row per `d`-simplex.
pub fn boundary_rows(cells: &[Vec<Vec<u32>>], d: usize) -> Vec<Vec<u64>> {
    if d == 0 || d >= cells.len() {
        return Vec::new();
    }
    let faces = &cells[d - 1];
    let words = faces.len().div_ceil(64);
    cells[d]
        .iter()
        .map(|s| {
            let mut row = vec![0u64; words];
            for skip in 0..s.len() {
                let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let j = faces.binary_search(&face).expect("face present");
                row[j / 64] ^= 1 << (j % 64);
            }
            row
        })
        .collect()
}

/// `β_0, β_1, ...` of the clique complex of `g` via dense ranks.
pub fn dense_betti(g: &SimpleGraph) -> Vec<usize> {
    let cells = all_cliques(g);
    let ranks: Vec<usize> = (0..=cells.len()).map(|d| gf2_rank(boundary_rows(&cells, d))).collect();
    (0..cells.len())
        .map(|d| cells[d].len() - ranks[d] - ranks[d + 1])
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: u32, p: f64) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, edges)
}

/// Full clique complex of `g` on at most 12 nodes.
pub fn full_flag(g: &SimpleGraph) -> SimplicialComplex {
    clique_complex(g, 12)
}

pub fn cone_edges(apex: u32, over: impl IntoIterator<Item = u32>) -> Vec<(u32, u32)> {
    over.into_iter().map(|v| (v, apex)).collect()
}

pub const SQUARE: [(u32, u32); 4] = [(1, 2), (2, 3), (3, 4), (1, 4)];

/// Chordless square on 1..=4 with cone points 5..=4+k.
pub fn gamma(k: u32) -> SimpleGraph {
    let mut edges = SQUARE.to_vec();
    for c in 0..k {
        edges.extend(cone_edges(5 + c, 1..=4));
    }
    SimpleGraph::from_edges(4 + k, edges)
}
