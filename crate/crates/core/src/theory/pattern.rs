//! Ordered directed multigraph patterns.
//!
//! Text format: a `pattern v=<n>` header, then one `i j mult` line per edge
//! group with `n >= i > j >= 1`.

use std::fmt;
use std::io::BufRead;

use crate::error::{Error, Result};

/// A pattern on ranked vertices `1..=n`. Every edge points from a later
/// vertex to an earlier one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternGraph {
    num_vertices: usize,
    // (source, target, multiplicity), sorted, merged, source > target
    edges: Vec<(usize, usize, u32)>,
}

impl PatternGraph {
    pub fn new(num_vertices: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>) -> Result<Self> {
        let mut list: Vec<(usize, usize, u32)> = Vec::new();
        for (s, t, mult) in edges {
            if !(1..=num_vertices).contains(&s) || t == 0 || t >= s {
                return Err(Error::InvalidParams(format!(
                    "pattern edge {s} -> {t} must satisfy {num_vertices} >= source > target >= 1"
                )));
            }
            if mult == 0 {
                return Err(Error::InvalidParams(format!("edge {s} -> {t} has multiplicity 0")));
            }
            list.push((s, t, mult));
        }
        list.sort_unstable();
        let mut edges: Vec<(usize, usize, u32)> = Vec::with_capacity(list.len());
        for (s, t, mult) in list {
            match edges.last_mut() {
                Some(last) if (last.0, last.1) == (s, t) => last.2 += mult,
                _ => edges.push((s, t, mult)),
            }
        }
        Ok(Self { num_vertices, edges })
    }

    pub fn empty() -> Self {
        Self {
            num_vertices: 0,
            edges: Vec::new(),
        }
    }

    /// Two vertices joined by one edge.
    pub fn single_edge() -> Self {
        Self::new(2, [(2, 1, 1)]).unwrap()
    }

    /// Two vertices joined by two parallel edges.
    pub fn biangle() -> Self {
        Self::new(2, [(2, 1, 2)]).unwrap()
    }

    /// The witness of the sphere event in dimension `q >= 2` for a model with
    /// `m >= 2q` edges per node.
    ///
    /// Vertices `1..=2q` span an octahedral `(q-1)`-sphere with `i` opposite
    /// `2q + 1 - i`; vertex `2q + 1` is joined to all of them, and so is the
    /// last vertex `2q + 2` (the new node `t`) by simple edges. Every vertex
    /// from 2 to `2q + 1` has out-degree exactly `m`; the surplus goes to the
    /// edge towards its smallest neighbor.
    pub fn sphere_witness(q: usize, m: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams("sphere witness needs q >= 2".into()));
        }
        if (m as usize) < 2 * q {
            return Err(Error::InvalidParams(format!("sphere witness needs m >= 2q = {}", 2 * q)));
        }
        let n_sphere = 2 * q;
        let mut edges = Vec::new();
        for v in 2..=n_sphere + 1 {
            let lower: Vec<usize> = (1..v)
                .filter(|&u| v > n_sphere || u + v != n_sphere + 1)
                .collect();
            let surplus = m - lower.len() as u32;
            for (i, &u) in lower.iter().enumerate() {
                edges.push((v, u, if i == 0 { 1 + surplus } else { 1 }));
            }
        }
        let t = n_sphere + 2;
        edges.extend((1..=n_sphere).map(|u| (t, u, 1)));
        Self::new(t, edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    /// Multiplicity-weighted in-degree of vertex `v`.
    pub fn in_degree(&self, v: usize) -> u32 {
        self.edges.iter().filter(|e| e.1 == v).map(|e| e.2).sum()
    }

    /// Multiplicity-weighted out-degree of vertex `v`.
    pub fn out_degree(&self, v: usize) -> u32 {
        self.edges.iter().filter(|e| e.0 == v).map(|e| e.2).sum()
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.in_degree(v) + self.out_degree(v)
    }

    pub fn max_out_degree(&self) -> (usize, u32) {
        (1..=self.num_vertices)
            .map(|v| (v, self.out_degree(v)))
            .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
            .unwrap_or((0, 0))
    }

    pub fn parse<R: BufRead>(r: R) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::parse(i + 1, e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if n.is_none() {
                let rest = line
                    .strip_prefix("pattern v=")
                    .ok_or_else(|| Error::parse(i + 1, "expected `pattern v=<n>`"))?;
                n = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(i + 1, "bad vertex count"))?,
                );
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [s, t, mult] = fields[..] else {
                return Err(Error::parse(i + 1, "expected `i j mult`"));
            };
            let num = |f: &str| f.parse::<usize>().map_err(|_| Error::parse(i + 1, format!("bad number `{f}`")));
            edges.push((num(s)?, num(t)?, num(mult)? as u32));
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing header"))?;
        Self::new(n, edges)
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pattern v={}", self.num_vertices)?;
        for &(s, t, mult) in &self.edges {
            writeln!(f, "{s} {t} {mult}")?;
        }
        Ok(())
    }
}
