//! Filtered GF(2) chain complexes and their column reduction.
//!
//! Generators of each dimension are ordered by a step value (the filtration)
//! and then by their lexicographic position. A generator whose key is `None`
//! is deleted, which turns the chain complex of `X` into that of a quotient
//! `(X, A)`. Reducing the boundary matrices left to right with low-entry
//! pairing yields persistence intervals; one step gives plain Betti numbers,
//! two steps give the ranks of maps induced by an inclusion.

use std::ops::RangeInclusive;

use super::column::{BitColumn, Gf2Column, SparseColumn};
use crate::complex::SimplicialComplex;
use crate::error::Result;

/// Boundary matrices with at most this many rows use bit-packed columns.
pub const BIT_PACK_MAX_ROWS: usize = 2048;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Generator {
    step: u32,
    lex: u32,
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    lo: usize,
    // gens[d - lo]: generators of dimension d in filtration order
    gens: Vec<Vec<Generator>>,
    // boundary[d - lo]: for each generator of dim d, sorted rows in dim d - 1
    // (empty for d == lo)
    boundary: Vec<Vec<Vec<u32>>>,
}

impl ChainComplex {
    /// Builds generators for dimensions `dims` and the boundary maps between
    /// consecutive ones. Requires every simplex of `*dims.end()` to be present.
    pub fn build(
        x: &SimplicialComplex,
        dims: RangeInclusive<usize>,
        key: impl Fn(&[u32]) -> Option<u32>,
    ) -> Result<Self> {
        let (lo, hi) = (*dims.start(), *dims.end());
        x.require_dim(hi)?;
        let mut gens = Vec::with_capacity(hi - lo + 1);
        let mut positions: Vec<Vec<u32>> = Vec::with_capacity(hi - lo + 1);
        for d in lo..=hi {
            let mut list: Vec<Generator> = x
                .simplices(d)
                .enumerate()
                .filter_map(|(i, s)| key(s).map(|step| Generator { step, lex: i as u32 }))
                .collect();
            list.sort_unstable();
            let mut pos = vec![NONE; x.count(d)];
            for (p, g) in list.iter().enumerate() {
                pos[g.lex as usize] = p as u32;
            }
            gens.push(list);
            positions.push(pos);
        }

        let mut boundary = Vec::with_capacity(hi - lo + 1);
        boundary.push(Vec::new());
        let mut face = Vec::with_capacity(hi + 1);
        for d in (lo + 1)..=hi {
            let rows_pos = &positions[d - 1 - lo];
            let cols: Vec<Vec<u32>> = gens[d - lo]
                .iter()
                .map(|g| {
                    let s = x.simplex(d, g.lex as usize);
                    let mut col: Vec<u32> = (0..=d)
                        .filter_map(|skip| {
                            face.clear();
                            face.extend(
                                s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v),
                            );
                            let lex = x
                                .index_of(&face)
                                .expect("complex is face-closed");
                            let p = rows_pos[lex];
                            (p != NONE).then_some(p)
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            boundary.push(cols);
        }
        Ok(Self { lo, gens, boundary })
    }

    pub fn lowest_dim(&self) -> usize {
        self.lo
    }

    pub fn highest_dim(&self) -> usize {
        self.lo + self.gens.len() - 1
    }

    pub fn num_generators(&self, d: usize) -> usize {
        self.gens.get(d.wrapping_sub(self.lo)).map_or(0, Vec::len)
    }

    /// Columns of the boundary map out of dimension `d` (rows index dimension `d - 1`).
    pub fn boundary_columns(&self, d: usize) -> &[Vec<u32>] {
        &self.boundary[d - self.lo]
    }

    /// Checks that `∂_{d-1} ∘ ∂_d` vanishes for every stored pair.
    pub fn boundary_squares_to_zero(&self) -> bool {
        for d in (self.lo + 2)..=self.highest_dim() {
            let inner = self.boundary_columns(d - 1);
            for col in self.boundary_columns(d) {
                let mut acc = SparseColumn::default();
                for &r in col {
                    acc.add_assign(&SparseColumn::from_rows(&inner[r as usize], 0));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Text bitmap of the boundary map out of dimension `d`, one row per line.
    pub fn dump_boundary(&self, d: usize) -> String {
        let cols = self.boundary_columns(d);
        let n_rows = self.num_generators(d - 1);
        let mut grid = vec![vec!['0'; cols.len()]; n_rows];
        for (j, col) in cols.iter().enumerate() {
            for &r in col {
                grid[r as usize][j] = '1';
            }
        }
        grid.into_iter()
            .map(|row| row.into_iter().collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Reduces `∂_d`, skipping the columns flagged in `clear` (known to
    /// reduce to zero). Returns the pivot row of each column, if any.
    fn reduce(&self, d: usize, clear: &[bool]) -> Vec<Option<u32>> {
        let n_rows = self.num_generators(d - 1);
        if n_rows <= BIT_PACK_MAX_ROWS {
            reduce_columns::<BitColumn>(self.boundary_columns(d), n_rows, clear)
        } else {
            reduce_columns::<SparseColumn>(self.boundary_columns(d), n_rows, clear)
        }
    }

    /// Persistence intervals for dimensions `dims`. The chain complex must
    /// contain generators from `dims.start() - 1` (when positive) through
    /// `dims.end() + 1`.
    pub fn barcode(&self, dims: RangeInclusive<usize>) -> Barcode {
        let (k_lo, k_hi) = (*dims.start(), *dims.end());
        assert!(k_hi < self.highest_dim(), "need generators of dimension {}", k_hi + 1);
        assert!(k_lo == 0 || k_lo > self.lo, "need generators of dimension {}", k_lo - 1);

        // pivots[d]: pivot row of each reduced column of ∂_d
        let mut pivots: Vec<Option<Vec<Option<u32>>>> = vec![None; self.highest_dim() + 2];
        for d in (k_lo.max(1)..=k_hi + 1).rev() {
            let mut clear = vec![false; self.num_generators(d)];
            if let Some(above) = &pivots[d + 1] {
                for p in above.iter().flatten() {
                    clear[*p as usize] = true;
                }
            }
            pivots[d] = Some(self.reduce(d, &clear));
        }

        let intervals = (k_lo..=k_hi)
            .map(|k| {
                let gens = &self.gens[k - self.lo];
                let mut death: Vec<Option<u32>> = vec![None; gens.len()];
                let mut killed = vec![false; gens.len()];
                let deaths_from = pivots[k + 1].as_ref().unwrap();
                for (j, p) in deaths_from.iter().enumerate() {
                    if let Some(p) = p {
                        death[*p as usize] = Some(self.gens[k + 1 - self.lo][j].step);
                        killed[*p as usize] = true;
                    }
                }
                let negative: Vec<bool> = match pivots[k].as_ref() {
                    // cleared columns are positive; the rest are negative iff nonzero
                    Some(own) if k > 0 => own.iter().map(Option::is_some).collect(),
                    _ => vec![false; gens.len()],
                };
                gens.iter()
                    .enumerate()
                    .filter(|&(i, _)| killed[i] || !negative[i])
                    .map(|(i, g)| Interval {
                        birth: g.step,
                        death: death[i],
                    })
                    .collect()
            })
            .collect();
        Barcode {
            lo: k_lo,
            intervals,
        }
    }
}

fn reduce_columns<C: Gf2Column>(cols: &[Vec<u32>], n_rows: usize, clear: &[bool]) -> Vec<Option<u32>> {
    let mut owner = vec![NONE; n_rows];
    let mut reduced: Vec<Option<C>> = vec![None; cols.len()];
    let mut pivots = vec![None; cols.len()];
    for (j, rows) in cols.iter().enumerate() {
        if clear[j] {
            continue;
        }
        let mut col = C::from_rows(rows, n_rows);
        while let Some(p) = col.pivot() {
            let o = owner[p as usize];
            if o == NONE {
                owner[p as usize] = j as u32;
                pivots[j] = Some(p);
                break;
            }
            col.add_assign(reduced[o as usize].as_ref().unwrap());
        }
        if pivots[j].is_some() {
            reduced[j] = Some(col);
        }
    }
    pivots
}

/// Half-open lifetime `[birth, death)` of a homology class in filtration steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub birth: u32,
    pub death: Option<u32>,
}

impl Interval {
    pub fn alive_at(&self, step: u32) -> bool {
        self.birth <= step && self.death.is_none_or(|d| d > step)
    }
}

#[derive(Debug, Clone)]
pub struct Barcode {
    lo: usize,
    intervals: Vec<Vec<Interval>>,
}

impl Barcode {
    pub fn intervals(&self, k: usize) -> &[Interval] {
        &self.intervals[k - self.lo]
    }

    /// Betti number of dimension `k` of the complex at filtration step `step`.
    pub fn betti_at(&self, k: usize, step: u32) -> usize {
        self.intervals(k).iter().filter(|i| i.alive_at(step)).count()
    }
}
