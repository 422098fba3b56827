//! Per-node link estimators and the bounds they give on `β_q`.
//!
//! For a flag complex `X` on `1..=T`, `X^(t)` is the prefix on `1..=t` and
//! `L^(t)` the link of `t` in `X^(t)`. Summing `u = β_{q-1}(L^(t))` over `t`
//! bounds `β_q(X)` from above; summing `ℓ - b_IK - b_KL` (or the hatted
//! variant) bounds it from below.
//!
//! All routines treat `X` as the clique complex of its 1-skeleton, so links
//! are rebuilt from lower neighbors with whatever dimension cap they need.

mod trace;

pub use trace::{compute_trace, geometric_checkpoints, LinkTrace, TraceOptions, TraceRow};

use crate::complex::{
    clique_complex, clique_complex_on, induced, matches_octahedral_sphere, prefix, SimplicialComplex, Vertex,
};
use crate::error::{Error, Result};
use crate::homology::{
    arrival_barcode, betti, chain_dims, induced_map_ranks, ChainComplex, TwoStepFiltration,
};
use crate::pa_graph::{simplify, MultiDiGraph, SimpleGraph};

/// Default size of the prefix searched for the anchor sphere.
pub const DEFAULT_PROBE_PREFIX: u32 = 20;

/// `L^(t)`: link of `t` inside `X^(t)`, with the cap of `x` lowered by one.
pub fn link_at(x: &SimplicialComplex, t: Vertex) -> SimplicialComplex {
    let g = x.one_skeleton();
    let cap = x.max_dim().saturating_sub(1);
    if t == 0 || t > g.num_nodes() {
        return SimplicialComplex::empty(cap);
    }
    clique_complex_on(&g, g.lower_neighbors(t), cap)
}

/// The induced `S^(q-1)` used by the hatted estimators, and the first node
/// outside it that is joined to all of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchor {
    pub sphere: Vec<Vertex>,
    pub first_cone: Option<Vertex>,
}

/// Values of the per-node quantities at one step `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepValues {
    pub u: usize,
    pub b_kl: usize,
    pub ell: bool,
    pub b_ik: bool,
    pub ell_hat: bool,
    pub b_ik_hat: bool,
}

/// Evaluates the estimators of dimension `q` on one flag complex given by its
/// 1-skeleton.
#[derive(Debug, Clone)]
pub struct Estimator {
    graph: SimpleGraph,
    q: usize,
    sphere_prefix: bool,
    anchor: Option<Anchor>,
    probe_prefix: u32,
}

impl Estimator {
    pub fn new(graph: SimpleGraph, q: usize, probe_prefix: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParams("link estimators need q >= 1".into()));
        }
        let n = 2 * q as u32;
        let sphere_prefix = graph.num_nodes() > n
            && matches_octahedral_sphere(
                &clique_complex_on(&graph, &(1..=n).collect::<Vec<_>>(), q - 1),
                q - 1,
            )
            && (1..=n).all(|v| graph.has_edge(v, n + 1));
        let anchor = find_anchor(&graph, q, probe_prefix);
        Ok(Self {
            graph,
            q,
            sphere_prefix,
            anchor,
            probe_prefix,
        })
    }

    pub fn from_complex(x: &SimplicialComplex, q: usize, probe_prefix: u32) -> Result<Self> {
        Self::new(x.one_skeleton(), q, probe_prefix)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn anchor(&self) -> Option<&Anchor> {
        self.anchor.as_ref()
    }

    /// `L^(t)` with every simplex up to dimension `q + 1`.
    pub fn link(&self, t: Vertex) -> SimplicialComplex {
        if t == 0 || t > self.graph.num_nodes() {
            return SimplicialComplex::empty(self.q + 1);
        }
        clique_complex_on(&self.graph, self.graph.lower_neighbors(t), self.q + 1)
    }

    /// `(β_{q-1}(L), β_q(L))`.
    pub fn link_betti(&self, link: &SimplicialComplex) -> Result<(usize, usize)> {
        let q = self.q;
        let cc = ChainComplex::build(link, (q - 1).saturating_sub(1)..=q + 1, |_| Some(0))?;
        let bc = cc.barcode(q - 1..=q);
        Ok((bc.betti_at(q - 1, 0), bc.betti_at(q, 0)))
    }

    fn joined_to_all(&self, t: Vertex, vs: &[Vertex]) -> bool {
        vs.iter().all(|&v| self.graph.has_edge(t, v))
    }

    /// `ℓ^(t)`: `X^(2q) ≅ S^(q-1)`, node `2q + 1` is joined to `1..=2q`, and
    /// `L^(t) ⊇ X^(2q)`. Always false for `t <= 2q + 1`.
    pub fn ell(&self, t: Vertex) -> bool {
        let n = 2 * self.q as u32;
        self.sphere_prefix && t > n + 1 && (1..=n).all(|v| self.graph.has_edge(t, v))
    }

    /// `b_IK^(t)`: `ℓ^(t)` and `β_q(L^(t), X^(2q)) > 0`.
    pub fn b_ik(&self, t: Vertex, link: &SimplicialComplex) -> Result<bool> {
        if !self.ell(t) {
            return Ok(false);
        }
        let n = 2 * self.q as u32;
        let cc = ChainComplex::build(link, chain_dims(self.q), |s| (s[s.len() - 1] > n).then_some(0))?;
        Ok(cc.barcode(self.q..=self.q).betti_at(self.q, 0) > 0)
    }

    /// `ℓ̂^(t)`: `t` comes after the probe prefix, is joined to every vertex of
    /// the anchor sphere, and is not the first node outside it to be so.
    pub fn ell_hat(&self, t: Vertex) -> bool {
        match &self.anchor {
            Some(a) if t > self.probe_prefix => {
                a.first_cone.is_some_and(|c| t > c) && self.joined_to_all(t, &a.sphere)
            }
            _ => false,
        }
    }

    /// `b̂_IK^(t)`: `ℓ̂^(t)` and the map `H_{q-1}(Ŝ) -> H_{q-1}(L^(t))` has a
    /// kernel of rank 1.
    pub fn b_ik_hat(&self, t: Vertex, link: &SimplicialComplex) -> Result<bool> {
        if !self.ell_hat(t) {
            return Ok(false);
        }
        let sphere = &self.anchor.as_ref().unwrap().sphere;
        kernel_on_sphere(link, sphere, self.q).map(|k| k == 1)
    }

    /// Every per-node quantity at step `t`. The relative-homology term `b_IK`
    /// is skipped (left false) unless `exact` is set.
    pub fn step(&self, t: Vertex, exact: bool) -> Result<StepValues> {
        let link = self.link(t);
        let (u, b_kl) = self.link_betti(&link)?;
        let ell = self.ell(t);
        let b_ik = exact && ell && self.b_ik(t, &link)?;
        let ell_hat = self.ell_hat(t);
        let b_ik_hat = ell_hat && self.b_ik_hat(t, &link)?;
        Ok(StepValues {
            u,
            b_kl,
            ell,
            b_ik,
            ell_hat,
            b_ik_hat,
        })
    }
}

fn kernel_on_sphere(link: &SimplicialComplex, sphere: &[Vertex], q: usize) -> Result<usize> {
    if let Some(&v) = sphere.iter().find(|&&v| !link.contains_vertex(v)) {
        return Err(Error::NotSubcomplex(vec![v]));
    }
    let sub = induced(link, sphere);
    let f = TwoStepFiltration::new(link.clone(), sub)?;
    Ok(induced_map_ranks(&f, q - 1)?.kernel)
}

// Lexicographically smallest 2q-subset of 1..=probe whose induced graph is
// the octahedral sphere graph: every vertex misses exactly one other.
fn find_anchor(g: &SimpleGraph, q: usize, probe: u32) -> Option<Anchor> {
    let probe = probe.min(g.num_nodes());
    let size = 2 * q;
    let mut chosen = Vec::with_capacity(size);
    if !extend_sphere(g, probe, size, 1, &mut chosen) {
        return None;
    }
    let first_cone = (1..=g.num_nodes())
        .find(|&c| !chosen.contains(&c) && chosen.iter().all(|&v| g.has_edge(c, v)));
    Some(Anchor {
        sphere: chosen,
        first_cone,
    })
}

fn extend_sphere(g: &SimpleGraph, probe: u32, size: usize, from: u32, chosen: &mut Vec<Vertex>) -> bool {
    if chosen.len() == size {
        return chosen.iter().all(|&v| missing(g, v, chosen) == 1);
    }
    let need = (size - chosen.len()) as u32;
    for v in from..=probe.saturating_sub(need - 1) {
        chosen.push(v);
        if chosen.iter().all(|&w| missing(g, w, chosen) <= 1) && extend_sphere(g, probe, size, v + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn missing(g: &SimpleGraph, v: Vertex, among: &[Vertex]) -> usize {
    among.iter().filter(|&&w| w != v && !g.has_edge(v, w)).count()
}

/// `(u, b_KL)` at step `t`.
pub fn u_and_b_kl(x: &SimplicialComplex, t: Vertex, q: usize) -> Result<(usize, usize)> {
    let e = Estimator::new(x.one_skeleton(), q, 0)?;
    e.link_betti(&e.link(t))
}

/// `ℓ^(t)`.
pub fn event_s(x: &SimplicialComplex, t: Vertex, q: usize) -> Result<bool> {
    Ok(Estimator::new(x.one_skeleton(), q, 0)?.ell(t))
}

/// `b_IK^(t)`.
pub fn b_ik(x: &SimplicialComplex, t: Vertex, q: usize) -> Result<bool> {
    let e = Estimator::new(x.one_skeleton(), q, 0)?;
    e.b_ik(t, &e.link(t))
}

/// `ℓ̂^(t)` together with the anchor sphere, when one exists.
pub fn event_s_hat(x: &SimplicialComplex, t: Vertex, q: usize, probe_prefix: u32) -> Result<(bool, Option<Anchor>)> {
    let e = Estimator::new(x.one_skeleton(), q, probe_prefix)?;
    Ok((e.ell_hat(t), e.anchor))
}

/// `b̂_IK^(t)` for a given anchor sphere `sphere ⊆ L^(t)`: whether
/// `H_{q-1}(sphere) -> H_{q-1}(L^(t))` has a kernel of rank 1.
pub fn b_ik_hat(x: &SimplicialComplex, t: Vertex, q: usize, sphere: &[Vertex]) -> Result<bool> {
    let e = Estimator::new(x.one_skeleton(), q, 0)?;
    kernel_on_sphere(&e.link(t), sphere, q).map(|k| k == 1)
}

/// Prefix sums of the estimators for `t = 1..=T`; entry `t - 1` covers steps
/// up to `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub upper: Vec<i64>,
    pub lower: Vec<i64>,
    pub lower_hat: Vec<i64>,
}

/// Upper curve `Σ u`, exact lower curve `Σ (ℓ - b_IK - b_KL)` and hatted lower
/// curve `Σ (ℓ̂ - b̂_IK - b_KL)`.
pub fn bounds(x: &SimplicialComplex, q: usize, t_max: Vertex, probe_prefix: u32) -> Result<Bounds> {
    let e = Estimator::new(x.one_skeleton(), q, probe_prefix)?;
    let mut b = Bounds {
        upper: Vec::with_capacity(t_max as usize),
        lower: Vec::with_capacity(t_max as usize),
        lower_hat: Vec::with_capacity(t_max as usize),
    };
    let (mut up, mut lo, mut lo_hat) = (0i64, 0i64, 0i64);
    for t in 1..=t_max {
        let s = e.step(t, true)?;
        up += s.u as i64;
        lo += i64::from(s.ell) - i64::from(s.b_ik) - s.b_kl as i64;
        lo_hat += i64::from(s.ell_hat) - i64::from(s.b_ik_hat) - s.b_kl as i64;
        b.upper.push(up);
        b.lower.push(lo);
        b.lower_hat.push(lo_hat);
    }
    Ok(b)
}

/// Both sides of `β_q(X^(t)) - β_q(X^(t-1)) = rk ker f_{q-1} - rk im f_q`,
/// where `f: L^(t) -> X^(t-1)` is the inclusion. Needs `q >= 1` and every
/// `(q+1)`-simplex of `x`.
pub fn mv_increment(x: &SimplicialComplex, t: Vertex, q: usize) -> Result<(i64, i64)> {
    if t < 2 || q == 0 {
        return Err(Error::InvalidParams("increment needs t >= 2 and q >= 1".into()));
    }
    x.require_dim(q + 1)?;
    let before = prefix(x, t - 1);
    let lhs = betti(&prefix(x, t), q)? as i64 - betti(&before, q)? as i64;

    let g = x.one_skeleton();
    let lower = if t <= g.num_nodes() { g.lower_neighbors(t) } else { &[] };
    let link = induced(&before, lower);
    let f = TwoStepFiltration::new(before, link)?;
    let kernel = induced_map_ranks(&f, q - 1)?.kernel as i64;
    let image = induced_map_ranks(&f, q)?.image as i64;
    Ok((lhs, kernel - image))
}

/// `β_q(X^(t))` at each checkpoint, from one reduction of the arrival
/// filtration of the clique complex of `g`.
pub fn betti_evolution(g: &MultiDiGraph, q: usize, checkpoints: &[u32]) -> Result<Vec<(u32, usize)>> {
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParams("checkpoints must be sorted".into()));
    }
    let x = clique_complex(&simplify(g), q + 1);
    let bc = arrival_barcode(&x, q)?;
    Ok(checkpoints.iter().map(|&t| (t, bc.betti_at(q, t))).collect())
}
