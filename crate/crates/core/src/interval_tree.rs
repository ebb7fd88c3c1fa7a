//! Binary tree over the consecutive intervals of an integer array, answering
//! the largest-interval query: the maximal window around an index in which
//! every value meets a threshold.
//!
//! One leaf is created per consecutive pair `(values[j], values[j+1])`; every
//! node carries the `[min, max]` label of the leaf pairs it spans, so a tree
//! over an array of length `n` has `n - 1` leaves and `2(n - 1) - 1` nodes
//! in total. Queries ascend/descend at most a constant number of root-leaf
//! paths; the instrumented node-visit count is bounded by
//! `8·log2(n) + 8` (the documented constant `c = 8`).
//!
//! Only the `min` half of each label participates in threshold traversal;
//! the `max` half is kept so node labels describe their span exactly.

use crate::{Error, Result};

/// Immutable interval tree; safe to query concurrently.
#[derive(Debug, Clone)]
pub struct ConsecutiveIntervalTree {
    values: Vec<i64>,
    /// `(min, max)` labels in preorder; children of the node covering the
    /// leaf range `[lo, hi)` sit at `idx + 1` and `idx + 2 * (mid - lo)`.
    nodes: Vec<(i64, i64)>,
}

impl ConsecutiveIntervalTree {
    /// Build the tree in `O(n)`. An array of length 1 yields a degenerate
    /// tree with no leaves; the empty array is rejected.
    pub fn build(values: &[i64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid(
                "cannot build an interval tree over an empty array",
            ));
        }
        let leaf_count = values.len() - 1;
        let mut nodes = Vec::with_capacity(if leaf_count > 0 {
            2 * leaf_count - 1
        } else {
            0
        });
        if leaf_count > 0 {
            build_rec(values, 0, leaf_count, &mut nodes);
        }
        Ok(ConsecutiveIntervalTree {
            values: values.to_vec(),
            nodes,
        })
    }

    /// Length of the underlying array.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.values.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `[min, max]` label of the root, if the tree has any leaves.
    pub fn root_label(&self) -> Option<(i64, i64)> {
        self.nodes.first().copied()
    }

    /// The unique maximal interval `[a, b]` (inclusive, 0-based) containing
    /// `i` with `values[k] >= alpha` for all `k` in `[a, b]`, or `None` when
    /// `values[i] < alpha`.
    pub fn largest_interval(&self, i: usize, alpha: i64) -> Result<Option<(usize, usize)>> {
        self.largest_interval_counted(i, alpha).map(|(r, _)| r)
    }

    /// As [`largest_interval`](Self::largest_interval), also reporting the
    /// number of tree nodes visited.
    pub fn largest_interval_counted(
        &self,
        i: usize,
        alpha: i64,
    ) -> Result<(Option<(usize, usize)>, usize)> {
        let n = self.values.len();
        if i >= n {
            return Err(Error::invalid(format!(
                "index {} out of range for array of length {}",
                i, n
            )));
        }
        let mut visits = 0usize;
        if self.values[i] < alpha {
            return Ok((None, visits));
        }
        let b = match self.first_below_at_or_after(i + 1, alpha, &mut visits) {
            Some(j) => j - 1,
            None => n - 1,
        };
        let a = if i == 0 {
            0
        } else {
            match self.first_below_at_or_before(i - 1, alpha, &mut visits) {
                Some(j) => j + 1,
                None => 0,
            }
        };
        Ok((Some((a, b)), visits))
    }

    /// Smallest position `>= pos` whose value is below `alpha`.
    pub(crate) fn first_below_at_or_after(
        &self,
        pos: usize,
        alpha: i64,
        visits: &mut usize,
    ) -> Option<usize> {
        let n = self.values.len();
        if pos >= n {
            return None;
        }
        if self.values[pos] < alpha {
            return Some(pos);
        }
        if n < 2 {
            return None;
        }
        let j = self.find_first_leaf(0, 0, n - 1, pos, alpha, visits)?;
        if j > pos && self.values[j] < alpha {
            Some(j)
        } else {
            Some(j + 1)
        }
    }

    /// Largest position `<= pos` whose value is below `alpha`.
    pub(crate) fn first_below_at_or_before(
        &self,
        pos: usize,
        alpha: i64,
        visits: &mut usize,
    ) -> Option<usize> {
        let n = self.values.len();
        debug_assert!(pos < n);
        if self.values[pos] < alpha {
            return Some(pos);
        }
        if n < 2 || pos == 0 {
            return None;
        }
        let j = self.find_last_leaf(0, 0, n - 1, pos, alpha, visits)?;
        if self.values[j + 1] < alpha {
            Some(j + 1)
        } else {
            Some(j)
        }
    }

    /// First leaf index in `[from, ..)` whose pair minimum is below `alpha`.
    fn find_first_leaf(
        &self,
        idx: usize,
        lo: usize,
        hi: usize,
        from: usize,
        alpha: i64,
        visits: &mut usize,
    ) -> Option<usize> {
        *visits += 1;
        if hi <= from || self.nodes[idx].0 >= alpha {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = lo + (hi - lo) / 2;
        self.find_first_leaf(idx + 1, lo, mid, from, alpha, visits)
            .or_else(|| self.find_first_leaf(idx + 2 * (mid - lo), mid, hi, from, alpha, visits))
    }

    /// Last leaf index in `[.., upto)` whose pair minimum is below `alpha`.
    fn find_last_leaf(
        &self,
        idx: usize,
        lo: usize,
        hi: usize,
        upto: usize,
        alpha: i64,
        visits: &mut usize,
    ) -> Option<usize> {
        *visits += 1;
        if lo >= upto || self.nodes[idx].0 >= alpha {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = lo + (hi - lo) / 2;
        self.find_last_leaf(idx + 2 * (mid - lo), mid, hi, upto, alpha, visits)
            .or_else(|| self.find_last_leaf(idx + 1, lo, mid, upto, alpha, visits))
    }
}

fn build_rec(values: &[i64], lo: usize, hi: usize, nodes: &mut Vec<(i64, i64)>) -> (i64, i64) {
    let idx = nodes.len();
    nodes.push((0, 0));
    let label = if hi - lo == 1 {
        (
            values[lo].min(values[lo + 1]),
            values[lo].max(values[lo + 1]),
        )
    } else {
        let mid = lo + (hi - lo) / 2;
        let left = build_rec(values, lo, mid, nodes);
        let right = build_rec(values, mid, hi, nodes);
        (left.0.min(right.0), left.1.max(right.1))
    };
    nodes[idx] = label;
    label
}

/// Documented per-query visit bound: `8·log2(n) + 8`.
pub fn visit_bound(n: usize) -> usize {
    8 * usize::try_from((n.max(2) as f64).log2().ceil() as i64).unwrap_or(1) + 8
}
