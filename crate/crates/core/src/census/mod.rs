//! Counting ranked pattern copies in preferential attachment graphs and
//! regressing their growth against the closed-form exponent.

use num_traits::Float;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::mix_seed;
use crate::pa_graph::{generate, MultiDiGraph, PaParams};
use crate::scalar::{parse_rational, Scalar};
use crate::theory::{count_sequence, PatternGraph};

pub const MAX_PATTERN_VERTICES: usize = 8;

/// Pattern edges grouped by the vertex that gets placed against them.
struct Plan<'a> {
    g: &'a MultiDiGraph,
    n: usize,
    // in_edges[k]: (source, multiplicity) for every pattern edge source -> k
    in_edges: Vec<Vec<(usize, u32)>>,
    // no pattern edge touches any vertex <= k
    free_below: Vec<bool>,
}

impl Plan<'_> {
    // Number of ways to place pattern vertices 1..=k below `ceiling` given
    // the placements in `phi[k+1..=n]`.
    fn extend(&self, k: usize, ceiling: u32, phi: &mut [u32]) -> u128 {
        if k == 0 {
            return 1;
        }
        if ceiling as usize <= k {
            return 0;
        }
        if self.free_below[k] {
            return binomial(ceiling as u64 - 1, k as u64);
        }
        let lo = k as u32;
        let mut total = 0;
        match self.in_edges[k].split_first() {
            Some((&(s, mu), rest)) => {
                for e in self.g.out_groups(phi[s]) {
                    if e.target >= ceiling {
                        break;
                    }
                    if e.target < lo || e.multiplicity < mu {
                        continue;
                    }
                    if rest.iter().all(|&(s2, mu2)| self.g.multiplicity(phi[s2], e.target) >= mu2) {
                        phi[k] = e.target;
                        total += self.extend(k - 1, e.target, phi);
                    }
                }
            }
            None => {
                for v in lo..ceiling {
                    phi[k] = v;
                    total += self.extend(k - 1, v, phi);
                }
            }
        }
        total
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of order-preserving injections of `p` into `g` where each pattern
/// edge of multiplicity `μ` lands on an edge group of multiplicity at least
/// `μ`. Ranked patterns have no nontrivial order-preserving automorphisms,
/// so this is also the number of copies.
pub fn count_pattern(g: &MultiDiGraph, p: &PatternGraph) -> Result<u128> {
    let n = p.num_vertices();
    if n > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge(n, MAX_PATTERN_VERTICES));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut in_edges = vec![Vec::new(); n + 1];
    let mut min_target = n + 1;
    for &(s, t, mu) in p.edges() {
        in_edges[t].push((s, mu));
        min_target = min_target.min(t);
    }
    // Prefer the tightest constraint as the candidate generator.
    for list in &mut in_edges {
        list.sort_by_key(|&(s, mu)| (std::cmp::Reverse(mu), s));
    }
    let plan = Plan {
        g,
        n,
        in_edges,
        free_below: (0..=n).map(|k| k < min_target).collect(),
    };
    let nodes = g.num_nodes();
    if plan.free_below[n] {
        return Ok(binomial(nodes as u64, n as u64));
    }
    Ok((n as u32..=nodes)
        .into_par_iter()
        .map(|anchor| {
            let mut phi = vec![0u32; plan.n + 1];
            phi[plan.n] = anchor;
            plan.extend(plan.n - 1, anchor, &mut phi)
        })
        .sum())
}

/// Least-squares line through `(ln T, ln count)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fit<F> {
    pub slope: F,
    pub intercept: F,
    pub r2: F,
}

/// Fits `ln count = slope ln T + intercept`, skipping points with a
/// nonpositive coordinate.
pub fn fit_exponent<F: Float>(series: &[(F, F)]) -> Result<Fit<F>> {
    let pts: Vec<(F, F)> = series
        .iter()
        .filter(|(t, c)| *t > F::zero() && *c > F::zero())
        .map(|&(t, c)| (t.ln(), c.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientPoints(pts.len()));
    }
    let len = F::from(pts.len()).unwrap();
    let mean = |f: fn(&(F, F)) -> F| pts.iter().map(f).fold(F::zero(), |a, b| a + b) / len;
    let mx = mean(|p| p.0);
    let my = mean(|p| p.1);
    let (mut sxx, mut sxy, mut syy) = (F::zero(), F::zero(), F::zero());
    for &(x, y) in &pts {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    if sxx <= F::zero() {
        return Err(Error::InvalidParams("regression needs at least two distinct T".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy <= F::zero() {
        F::one()
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(Fit {
        slope,
        intercept,
        r2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusResult {
    pub pattern: String,
    /// `(T, mean count over replicates)`.
    pub counts: Vec<(u32, f64)>,
    /// `None` when fewer than three positive means are available.
    pub fit: Option<Fit<f64>>,
    /// Predicted `A` in `T^A (log T)^(r-1)`.
    pub exponent: f64,
    pub log_power: usize,
}

/// Mean pattern counts on the prefixes `ts` of `replicates` graphs drawn
/// with `base.m`, `base.delta` and seeds `mix_seed(base.seed, i)`.
pub fn run_census(
    id: &str,
    p: &PatternGraph,
    base: PaParams,
    ts: &[u32],
    replicates: u32,
) -> Result<CensusResult> {
    if replicates == 0 {
        return Err(Error::InvalidParams("census needs at least one replicate".into()));
    }
    if ts.is_empty() || ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("census sizes must be nonempty and increasing".into()));
    }
    let delta = parse_rational(&base.delta.to_string())
        .ok_or_else(|| Error::InvalidParams(format!("delta {} has no exact form", base.delta)))?;
    let seq = count_sequence(p, delta, base.m)?;
    let t_max = *ts.last().unwrap();
    let totals = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let g = generate(PaParams {
                nodes: t_max,
                seed: mix_seed(base.seed, i as u64),
                ..base
            })?;
            ts.iter()
                .map(|&t| count_pattern(&g.prefix(t), p))
                .collect::<Result<Vec<u128>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let counts: Vec<(u32, f64)> = ts
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let sum: f64 = totals.iter().map(|c| c[j] as f64).sum();
            (t, sum / replicates as f64)
        })
        .collect();
    let series: Vec<(f64, f64)> = counts.iter().map(|&(t, c)| (t as f64, c)).collect();
    Ok(CensusResult {
        pattern: id.to_string(),
        fit: fit_exponent(&series).ok(),
        counts,
        exponent: seq.max.to_f64(),
        log_power: seq.maximizers,
    })
}
