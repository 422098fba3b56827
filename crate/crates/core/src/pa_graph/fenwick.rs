use num_traits::Float;

/// Binary indexed tree over nonnegative weights with appendable leaves and
/// inverse-CDF search.
#[derive(Debug, Clone)]
pub struct FenwickTree<F> {
    // 1-based implicit tree; tree[0] is unused.
    tree: Vec<F>,
}

#[inline]
fn lsb(i: usize) -> usize {
    i & i.wrapping_neg()
}

impl<F: Float> FenwickTree<F> {
    pub fn with_capacity(n: usize) -> Self {
        let mut tree = Vec::with_capacity(n + 1);
        tree.push(F::zero());
        Self { tree }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends a leaf holding `weight`.
    pub fn push(&mut self, weight: F) {
        let i = self.tree.len();
        // Node i covers (i - lsb(i), i]; everything but the new leaf is already summed.
        let covered = self.prefix_sum(i - 1) - self.prefix_sum(i - lsb(i));
        self.tree.push(weight + covered);
    }

    /// Adds `delta` to leaf `idx` (0-based).
    pub fn add(&mut self, idx: usize, delta: F) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i] + delta;
            i += lsb(i);
        }
    }

    /// Sum of the first `count` leaves.
    pub fn prefix_sum(&self, count: usize) -> F {
        let mut i = count;
        let mut s = F::zero();
        while i > 0 {
            s = s + self.tree[i];
            i -= lsb(i);
        }
        s
    }

    pub fn total(&self) -> F {
        self.prefix_sum(self.len())
    }

    pub fn weight(&self, idx: usize) -> F {
        self.prefix_sum(idx + 1) - self.prefix_sum(idx)
    }

    /// Index of the leaf whose cumulative interval contains `target`, i.e. the
    /// smallest `i` with `prefix_sum(i + 1) > target`. Targets at or beyond the
    /// total (floating-point round-off) map to the last positive leaf.
    pub fn search(&self, mut target: F) -> usize {
        let n = self.len();
        assert!(n > 0, "search on an empty tree");
        let mut pos = 0;
        let mut step = 1usize << (usize::BITS - 1 - n.leading_zeros());
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= target {
                pos = next;
                target = target - self.tree[next];
            }
            step >>= 1;
        }
        if pos < n {
            return pos;
        }
        // Round-off pushed us past the end: back up to the last leaf with mass.
        (0..n)
            .rev()
            .find(|&i| self.weight(i) > F::zero())
            .unwrap_or(n - 1)
    }
}
