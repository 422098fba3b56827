//! Closed-form growth predictions for preferential attachment clique
//! complexes.
//!
//! Everything is generic over [`Scalar`] so regime boundaries can be decided
//! with exact rationals and reported as floats.

mod pattern;

pub use pattern::PatternGraph;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_delta<S: Scalar>(delta: &S, m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be at least 1".into()));
    }
    if *delta <= -S::from_i64(m as i64) {
        return Err(Error::InvalidParams(format!("delta = {} must exceed -m = -{m}", delta.to_f64())));
    }
    Ok(())
}

/// `χ(δ, m) = 1 - 1 / (2 + δ/m)`.
pub fn chi<S: Scalar>(delta: S, m: u32) -> Result<S> {
    check_delta(&delta, m)?;
    let two = S::from_i64(2);
    Ok(S::one() - S::one() / (two + delta / S::from_i64(m as i64)))
}

fn power_from_chi<S: Scalar>(chi: &S, d_in: u32, d_out: u32) -> S {
    -((S::one() - chi.clone()) * S::from_i64(d_in as i64) + chi.clone() * S::from_i64(d_out as i64))
}

/// `p(v) = -[(1 - χ) d_in(v) + χ d_out(v)]` with multiplicity-weighted degrees.
pub fn power<S: Scalar>(p: &PatternGraph, v: usize, delta: S, m: u32) -> Result<S> {
    if !(1..=p.num_vertices()).contains(&v) {
        return Err(Error::InvalidParams(format!("vertex {v} not in pattern")));
    }
    let chi = chi(delta, m)?;
    Ok(power_from_chi(&chi, p.in_degree(v), p.out_degree(v)))
}

/// The sequence `a_0, ..., a_n` with its maximum `A` and the number of
/// maximizers `r`. The expected pattern count grows as `T^A (log T)^(r-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSequence<S> {
    pub terms: Vec<S>,
    pub max: S,
    pub maximizers: usize,
}

/// `a_k = n - k + Σ_{l > k} p(v_l)`.
pub fn count_sequence<S: Scalar>(p: &PatternGraph, delta: S, m: u32) -> Result<CountSequence<S>> {
    let (v, out) = p.max_out_degree();
    if out > m {
        return Err(Error::OutDegreeExceeded {
            vertex: v,
            out_degree: out,
            m,
        });
    }
    let chi = chi(delta, m)?;
    let n = p.num_vertices();
    let mut terms = vec![S::zero(); n + 1];
    let mut tail = S::zero();
    for k in (0..n).rev() {
        let v = k + 1;
        tail = tail + power_from_chi(&chi, p.in_degree(v), p.out_degree(v));
        terms[k] = S::from_i64((n - k) as i64) + tail.clone();
    }
    debug_assert!(terms[n].is_zero());
    let mut max = terms[0].clone();
    for a in &terms[1..] {
        if *a > max {
            max = a.clone();
        }
    }
    let maximizers = terms.iter().filter(|a| **a == max).count();
    Ok(CountSequence {
        terms,
        max,
        maximizers,
    })
}

/// Per-vertex exponents of the containment probability `Θ(Π v^p(v))` for the
/// pattern placed on the increasing node labels `labels`.
pub fn containment_exponents<S: Scalar>(
    p: &PatternGraph,
    labels: &[u32],
    delta: S,
    m: u32,
) -> Result<Vec<(u32, S)>> {
    if labels.len() != p.num_vertices() {
        return Err(Error::InvalidParams(format!(
            "{} labels for a pattern on {} vertices",
            labels.len(),
            p.num_vertices()
        )));
    }
    if labels.windows(2).any(|w| w[0] >= w[1]) || labels.first() == Some(&0) {
        return Err(Error::InvalidParams("labels must be positive and increasing".into()));
    }
    let chi = chi(delta, m)?;
    Ok(labels
        .iter()
        .enumerate()
        .map(|(i, &label)| (label, power_from_chi(&chi, p.in_degree(i + 1), p.out_degree(i + 1))))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `Θ(T^A)`.
    PowerLaw,
    /// `Θ(log T)`.
    Logarithmic,
    /// `O(1)`.
    Bounded,
    /// Identically zero.
    Zero,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::PowerLaw => "power-law",
            Regime::Logarithmic => "logarithmic",
            Regime::Bounded => "bounded",
            Regime::Zero => "zero",
        }
    }
}

/// Predicted growth of `E[β_q]` as `T^exponent (log T)^(log_power - 1)`.
///
/// In the power-law regime `exponent` is the growth rate; in the bounded
/// regime it is the (negative) formula value and the growth is `O(1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthPrediction<S> {
    pub exponent: S,
    pub log_power: u32,
    pub regime: Regime,
    /// `1 - (2q+2)χ`: growth exponent of the summed `β_q` of links.
    pub link_betti_exponent: Option<S>,
    /// `1 - (2q+1)χ`: growth exponent of the summed instant-kill terms.
    pub instant_kill_exponent: Option<S>,
}

/// Growth regime of `E[β_q(X(T, δ, m))]`.
pub fn regime<S: Scalar>(q: usize, delta: S, m: u32) -> Result<GrowthPrediction<S>> {
    let chi = chi(delta, m)?;
    let fixed = |exponent: i64, regime| GrowthPrediction {
        exponent: S::from_i64(exponent),
        log_power: 1,
        regime,
        link_betti_exponent: None,
        instant_kill_exponent: None,
    };
    if q == 0 {
        return Ok(fixed(0, Regime::Bounded));
    }
    if (m as usize) < 2 * q {
        return Ok(fixed(0, Regime::Zero));
    }
    if q == 1 {
        return Ok(fixed(1, Regime::PowerLaw));
    }
    let shifted = |k: usize| S::one() - S::from_i64(k as i64) * chi.clone();
    let exponent = shifted(2 * q);
    let (regime, log_power) = if exponent > S::zero() {
        (Regime::PowerLaw, 1)
    } else if exponent.is_zero() {
        (Regime::Logarithmic, 2)
    } else {
        (Regime::Bounded, 1)
    };
    Ok(GrowthPrediction {
        exponent,
        log_power,
        regime,
        link_betti_exponent: Some(shifted(2 * q + 2)),
        instant_kill_exponent: Some(shifted(2 * q + 1)),
    })
}

/// Value of `-δ/m` at which the exponent `1 - 2qχ` vanishes: `(2q-2)/(2q-1)`.
pub fn phase_threshold<S: Scalar>(q: usize) -> Result<S> {
    if q < 2 {
        return Err(Error::InvalidParams("phase threshold needs q >= 2".into()));
    }
    let q = q as i64;
    Ok(S::from_ratio(2 * q - 2, 2 * q - 1))
}

/// Record emitted by the `predict` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    pub q: usize,
    pub delta: f64,
    pub m: u32,
    pub chi: f64,
    pub exponent: f64,
    pub regime: &'static str,
    pub threshold: Option<f64>,
}

/// Exact classification of `(q, δ, m)`, reported in floating point.
pub fn predict(q: usize, delta: Ratio<i64>, m: u32) -> Result<Prediction> {
    let chi = chi(delta, m)?;
    let g = regime(q, delta, m)?;
    Ok(Prediction {
        q,
        delta: delta.to_f64(),
        m,
        chi: chi.to_f64(),
        exponent: g.exponent.to_f64(),
        regime: g.regime.name(),
        threshold: phase_threshold::<Ratio<i64>>(q).ok().map(|t| t.to_f64()),
    })
}
