//! Homology over GF(2).
//!
//! Every quantity here comes from one reduction routine
//! ([`ChainComplex::barcode`]): absolute Betti numbers use a single filtration
//! step, relative Betti numbers delete the generators of the subcomplex, and
//! induced-map ranks run a two-step filtration (subcomplex first).
//! `β_0` counts connected components and the empty complex has no homology.

mod chain;
mod column;
pub mod minimal;

pub use chain::{Barcode, ChainComplex, Interval, BIT_PACK_MAX_ROWS};
pub use column::{BitColumn, Gf2Column, SparseColumn};
pub use minimal::{is_clique_minimal, is_clique_minimal_with, search_clique_minimal, MinimalSearch, OracleLimits};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub(crate) fn chain_dims(q: usize) -> std::ops::RangeInclusive<usize> {
    q.saturating_sub(1)..=q + 1
}

/// `β_q(X)`. Needs every `(q+1)`-simplex of `x`.
pub fn betti(x: &SimplicialComplex, q: usize) -> Result<usize> {
    let cc = ChainComplex::build(x, chain_dims(q), |_| Some(0))?;
    Ok(cc.barcode(q..=q).betti_at(q, 0))
}

/// `β_0, ..., β_top` in one reduction pass.
pub fn betti_numbers(x: &SimplicialComplex, top: usize) -> Result<Vec<usize>> {
    let cc = ChainComplex::build(x, 0..=top + 1, |_| Some(0))?;
    let bc = cc.barcode(0..=top);
    Ok((0..=top).map(|k| bc.betti_at(k, 0)).collect())
}

fn check_subcomplex(x: &SimplicialComplex, a: &SimplicialComplex) -> Result<()> {
    for d in 0..=a.max_dim() {
        if let Some(s) = a.simplices(d).find(|s| !x.contains(s)) {
            return Err(Error::NotSubcomplex(s.to_vec()));
        }
    }
    Ok(())
}

/// `β_q(X, A)` from the quotient chain complex `C(X) / C(A)`.
pub fn relative_betti(x: &SimplicialComplex, a: &SimplicialComplex, q: usize) -> Result<usize> {
    check_subcomplex(x, a)?;
    a.require_dim(q + 1)?;
    let cc = ChainComplex::build(x, chain_dims(q), |s| (!a.contains(s)).then_some(0))?;
    Ok(cc.barcode(q..=q).betti_at(q, 0))
}

/// `χ = Σ (-1)^d n_d` over the stored simplices.
pub fn euler_characteristic(x: &SimplicialComplex) -> i64 {
    (0..=x.max_dim())
        .map(|d| {
            let n = x.count(d) as i64;
            if d % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum()
}

/// A pair `A ⊆ X` viewed as the filtration `A` (step 0) then `X` (step 1).
#[derive(Debug, Clone)]
pub struct TwoStepFiltration {
    whole: SimplicialComplex,
    sub: SimplicialComplex,
}

impl TwoStepFiltration {
    pub fn new(whole: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        check_subcomplex(&whole, &sub)?;
        Ok(Self { whole, sub })
    }

    pub fn whole(&self) -> &SimplicialComplex {
        &self.whole
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    /// 0 for simplices of the subcomplex, 1 otherwise.
    pub fn label(&self, s: &[u32]) -> u32 {
        u32::from(!self.sub.contains(s))
    }
}

/// Ranks of `H_q(A) -> H_q(X)` induced by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapRanks {
    pub image: usize,
    pub kernel: usize,
}

/// Classes born in `A` that survive into `X` span the image; those that die
/// when the rest of `X` arrives span the kernel.
pub fn induced_map_ranks(f: &TwoStepFiltration, q: usize) -> Result<MapRanks> {
    f.sub.require_dim(q + 1)?;
    let cc = ChainComplex::build(&f.whole, chain_dims(q), |s| Some(f.label(s)))?;
    let bc = cc.barcode(q..=q);
    let mut ranks = MapRanks { image: 0, kernel: 0 };
    for i in bc.intervals(q).iter().filter(|i| i.birth == 0) {
        match i.death {
            None => ranks.image += 1,
            Some(1) => ranks.kernel += 1,
            Some(_) => {}
        }
    }
    Ok(ranks)
}

/// Persistence of the arrival filtration `X^(1) ⊆ X^(2) ⊆ ...`: a simplex
/// enters at the step of its largest vertex.
pub fn arrival_barcode(x: &SimplicialComplex, q: usize) -> Result<Barcode> {
    let cc = ChainComplex::build(x, chain_dims(q), |s| Some(s[s.len() - 1]))?;
    Ok(cc.barcode(q..=q))
}
