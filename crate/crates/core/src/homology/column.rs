//! GF(2) column representations for boundary-matrix reduction.

/// A column of a GF(2) matrix. The pivot is the largest row index with a 1.
pub trait Gf2Column: Clone {
    fn from_rows(rows: &[u32], n_rows: usize) -> Self;

    fn pivot(&self) -> Option<u32>;

    /// `self += other` over GF(2).
    fn add_assign(&mut self, other: &Self);

    fn is_zero(&self) -> bool {
        self.pivot().is_none()
    }

    fn rows(&self) -> Vec<u32>;
}

/// Sorted row indices. Used for large, very sparse boundary matrices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseColumn(Vec<u32>);

impl Gf2Column for SparseColumn {
    fn from_rows(rows: &[u32], _n_rows: usize) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]));
        SparseColumn(rows.to_vec())
    }

    fn pivot(&self) -> Option<u32> {
        self.0.last().copied()
    }

    fn add_assign(&mut self, other: &Self) {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.0 = out;
    }

    fn rows(&self) -> Vec<u32> {
        self.0.clone()
    }
}

/// Bit-packed column: row `i` is bit `i % 64` of word `i / 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitColumn {
    words: Vec<u64>,
}

impl Gf2Column for BitColumn {
    fn from_rows(rows: &[u32], n_rows: usize) -> Self {
        let mut words = vec![0u64; n_rows.div_ceil(64)];
        for &r in rows {
            words[r as usize / 64] ^= 1 << (r % 64);
        }
        BitColumn { words }
    }

    fn pivot(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| (i * 64 + 63 - w.leading_zeros() as usize) as u32)
    }

    fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn rows(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros();
                out.push(i as u32 * 64 + b);
                w &= w - 1;
            }
        }
        out
    }
}
