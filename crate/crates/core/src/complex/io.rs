//! Text format: a `flag-complex v1 max_dim=<d>` header followed by one simplex
//! per line (space-separated vertices), dimension by dimension.

use std::io::{BufRead, Write};

use super::{clique_complex_on, SimplicialComplex};
use crate::error::{Error, Result};

pub fn write_complex<W: Write>(mut w: W, x: &SimplicialComplex) -> std::io::Result<()> {
    writeln!(w, "flag-complex v1 max_dim={}", x.max_dim())?;
    let mut line = String::new();
    for d in 0..=x.max_dim() {
        for s in x.simplices(d) {
            line.clear();
            for (i, v) in s.iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                line.push_str(&v.to_string());
            }
            writeln!(w, "{line}")?;
        }
    }
    Ok(())
}

/// Reads a flag complex. Completeness above the cap is decided from the
/// 1-skeleton (a flag complex is complete iff no larger clique exists).
pub fn read_complex<R: BufRead>(r: R) -> Result<SimplicialComplex> {
    let mut max_dim = None;
    let mut simplices: Vec<Vec<u32>> = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::parse(i + 1, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if max_dim.is_none() {
            let rest = line
                .strip_prefix("flag-complex v1 max_dim=")
                .ok_or_else(|| Error::parse(i + 1, "expected `flag-complex v1 max_dim=<d>`"))?;
            max_dim = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(i + 1, "bad max_dim"))?,
            );
            continue;
        }
        let s: Vec<u32> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(i + 1, "expected vertex labels"))?;
        if s.contains(&0) {
            return Err(Error::parse(i + 1, "vertex labels start at 1"));
        }
        if s.len() > max_dim.unwrap() + 1 {
            return Err(Error::parse(i + 1, "simplex exceeds max_dim"));
        }
        simplices.push(s);
    }
    let max_dim = max_dim.ok_or_else(|| Error::parse(0, "missing header"))?;
    let x = SimplicialComplex::from_simplices_capped(max_dim, &simplices);
    let g = x.one_skeleton();
    let complete = clique_complex_on(&g, x.vertices(), max_dim + 1).count(max_dim + 1) == 0;
    Ok(x.filter(max_dim, complete, |_| true))
}
