//! Text edge-list format.
//!
//! ```text
//! pa-graph v1 <T> <m> <delta> <seed>
//! <source> <target> <multiplicity>
//! ...
//! ```

use std::io::{BufRead, Write};

use super::{MultiDiGraph, PaParams};
use crate::error::{Error, Result};

pub fn write_graph<W: Write>(mut w: W, params: &PaParams, g: &MultiDiGraph) -> std::io::Result<()> {
    writeln!(
        w,
        "pa-graph v1 {} {} {} {}",
        params.nodes, params.m, params.delta, params.seed
    )?;
    for e in g.edges() {
        writeln!(w, "{} {} {}", e.source, e.target, e.multiplicity)?;
    }
    Ok(())
}

pub fn read_graph<R: BufRead>(r: R) -> Result<(PaParams, MultiDiGraph)> {
    let mut lines = r.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((i, line)) => {
                let line = line.map_err(|e| Error::parse(i + 1, e.to_string()))?;
                if !line.trim().is_empty() {
                    break (i + 1, line);
                }
            }
            None => return Err(Error::parse(0, "empty input")),
        }
    };
    let fields: Vec<&str> = header.1.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "pa-graph" || fields[1] != "v1" {
        return Err(Error::parse(
            header.0,
            "expected header `pa-graph v1 T m delta seed`",
        ));
    }
    let bad = |what: &str| Error::parse(header.0, format!("bad {what}"));
    let params = PaParams {
        nodes: fields[2].parse().map_err(|_| bad("T"))?,
        m: fields[3].parse().map_err(|_| bad("m"))?,
        delta: fields[4].parse().map_err(|_| bad("delta"))?,
        seed: fields[5].parse().map_err(|_| bad("seed"))?,
    };

    let mut edges = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| Error::parse(i + 1, e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(i + 1, "expected `source target multiplicity`"))?;
        if nums.len() != 3 {
            return Err(Error::parse(i + 1, "expected `source target multiplicity`"));
        }
        edges.push((nums[0], nums[1], nums[2]));
    }
    let g = MultiDiGraph::from_edges(params.nodes, edges)?;
    Ok((params, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pa_graph::generate;

    #[test]
    fn round_trip() {
        let p = PaParams::new(50, 3, -1.25, 42);
        let g = generate(p).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &p, &g).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("pa-graph v1 50 3 -1.25 42\n"));
        let (p2, g2) = read_graph(&buf[..]).unwrap();
        assert_eq!(p, p2);
        assert_eq!(g, g2);
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_graph(&b"graph 3 1 0 0\n"[..]).is_err());
        assert!(read_graph(&b"pa-graph v1 3 1 0 0\n2 1\n"[..]).is_err());
        assert!(read_graph(&b"pa-graph v1 3 1 0 0\n1 2 1\n"[..]).is_err());
    }
}
