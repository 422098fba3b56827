use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{betti_evolution, Estimator, DEFAULT_PROBE_PREFIX};
use crate::error::Result;
use crate::pa_graph::{simplify, MultiDiGraph};

/// `1..=t_max` sampled geometrically with `per_decade` points per factor of
/// ten, rounded, deduplicated, and always ending at `t_max`.
pub fn geometric_checkpoints(t_max: u32, per_decade: u32) -> Vec<u32> {
    if t_max == 0 {
        return Vec::new();
    }
    let per_decade = per_decade.max(1) as f64;
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let t = 10f64.powf(k as f64 / per_decade).round() as u32;
        if t >= t_max {
            break;
        }
        if out.last() != Some(&t) {
            out.push(t);
        }
        k += 1;
    }
    out.push(t_max);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    pub probe_prefix: u32,
    /// `ℓ` and `b_IK` are evaluated only when the graph has at most this many
    /// nodes.
    pub exact_cap: u32,
    /// Sorted steps at which `β_q(X^(t))` is recorded; empty for none.
    pub checkpoints: Vec<u32>,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            probe_prefix: DEFAULT_PROBE_PREFIX,
            exact_cap: 2000,
            checkpoints: Vec::new(),
        }
    }
}

/// One step of a [`LinkTrace`]. `ell`, `b_ik` and `lower_exact` are `None`
/// when the exact estimators were skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    pub t: u32,
    pub u: usize,
    pub b_kl: usize,
    pub ell: Option<bool>,
    pub b_ik: Option<bool>,
    pub ell_hat: bool,
    pub b_ik_hat: bool,
    pub upper: i64,
    pub lower_hat: i64,
    pub lower_exact: Option<i64>,
    pub betti: Option<usize>,
}

/// Per-node estimator values of one complex with their running sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkTrace {
    pub q: usize,
    pub rows: Vec<TraceRow>,
    pub checkpoints: Vec<(u32, usize)>,
}

impl LinkTrace {
    pub fn row(&self, t: u32) -> Option<&TraceRow> {
        self.rows.get((t as usize).checked_sub(1)?)
    }

    /// Writes `t,u,bKL,ell,bIK,ell_hat,bIK_hat,lower,upper,betti_checkpoint`;
    /// `lower` is the hatted curve and empty cells mark skipped values.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,u,bKL,ell,bIK,ell_hat,bIK_hat,lower,upper,betti_checkpoint")?;
        let flag = |b: Option<bool>| b.map_or(String::new(), |b| u8::from(b).to_string());
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                r.t,
                r.u,
                r.b_kl,
                flag(r.ell),
                flag(r.b_ik),
                u8::from(r.ell_hat),
                u8::from(r.b_ik_hat),
                r.lower_hat,
                r.upper,
                r.betti.map_or(String::new(), |b| b.to_string()),
            )?;
        }
        Ok(())
    }
}

/// Evaluates every estimator of dimension `q` at each node of `g`.
pub fn compute_trace(g: &MultiDiGraph, q: usize, opts: &TraceOptions) -> Result<LinkTrace> {
    let n = g.num_nodes();
    let est = Estimator::new(simplify(g), q, opts.probe_prefix)?;
    let exact = n <= opts.exact_cap;
    let mut checkpoints: Vec<u32> = opts.checkpoints.iter().copied().filter(|&t| t <= n).collect();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let betti = if checkpoints.is_empty() {
        Vec::new()
    } else {
        betti_evolution(g, q, &checkpoints)?
    };

    let mut rows = Vec::with_capacity(n as usize);
    let (mut upper, mut lower_hat, mut lower_exact) = (0i64, 0i64, 0i64);
    let mut next_checkpoint = betti.iter().peekable();
    for t in 1..=n {
        let s = est.step(t, exact)?;
        upper += s.u as i64;
        lower_hat += i64::from(s.ell_hat) - i64::from(s.b_ik_hat) - s.b_kl as i64;
        lower_exact += i64::from(s.ell) - i64::from(s.b_ik) - s.b_kl as i64;
        let betti_here = match next_checkpoint.peek() {
            Some(&&(c, b)) if c == t => {
                next_checkpoint.next();
                Some(b)
            }
            _ => None,
        };
        rows.push(TraceRow {
            t,
            u: s.u,
            b_kl: s.b_kl,
            ell: exact.then_some(s.ell),
            b_ik: exact.then_some(s.b_ik),
            ell_hat: s.ell_hat,
            b_ik_hat: s.b_ik_hat,
            upper,
            lower_hat,
            lower_exact: exact.then_some(lower_exact),
            betti: betti_here,
        });
    }
    Ok(LinkTrace {
        q,
        rows,
        checkpoints: betti,
    })
}
