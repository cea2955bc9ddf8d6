//! Subsets of `[n]` under the column order used to index the representation.
//!
//! A subset is best thought of as a possible column of a tableau read from the
//! bottom up: `S^1 < S^2 < ...`. We write `S <= T` when `|S| >= |T|` and
//! `S^i <= T^i` for every `i <= |T|`, i.e. when column `T` may stand to the
//! right of column `S` in a tableau.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{usage, Error, Result};

/// Largest ambient rank a [`Subset`] can carry.
pub const MAX_SUBSET_RANK: usize = 63;

/// A subset of `[n] = {1, ..., n}` with its ambient rank attached.
///
/// Element `x` is stored as bit `x - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Subset {
    n: usize,
    bits: u64,
}

impl Subset {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        check_rank(n)?;
        let mut bits = 0u64;
        for &x in members {
            if x == 0 || x > n {
                return Err(usage(format!("element {x} is outside [1, {n}]")));
            }
            let bit = 1u64 << (x - 1);
            if bits & bit != 0 {
                return Err(usage(format!("element {x} repeated")));
            }
            bits |= bit;
        }
        Ok(Subset { n, bits })
    }

    pub fn empty(n: usize) -> Self {
        Subset { n, bits: 0 }
    }

    /// `[k] = {1, ..., k}`, the minimum among cardinality-`k` subsets.
    pub fn initial(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(usage(format!("[{k}] is not a subset of [{n}]")));
        }
        Self::from_bits(n, low_mask(k))
    }

    /// The `k` largest elements of `[m]`, that is `[m - k + 1, m]`.
    pub fn top(n: usize, k: usize, m: usize) -> Result<Self> {
        if k > m || m > n {
            return Err(usage(format!("need k <= m <= n, got k={k}, m={m}, n={n}")));
        }
        Self::from_bits(n, low_mask(k) << (m - k))
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_rank(n)?;
        if bits & !low_mask(n) != 0 {
            return Err(usage(format!("bit pattern {bits:#x} exceeds rank {n}")));
        }
        Ok(Subset { n, bits })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= 1 && x <= self.n && self.bits & (1u64 << (x - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Members {
        Members { bits: self.bits }
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `S^i`, the `i`-th smallest member (1-based).
    pub fn row(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.iter().nth(i - 1)
    }

    /// Row number of `x`, i.e. the `i` with `S^i = x`.
    pub fn row_number(&self, x: usize) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::ElementNotFound { element: x, set: self.to_string() });
        }
        Ok((self.bits & low_mask(x - 1)).count_ones() as usize + 1)
    }

    /// The column order, assuming both sets share a rank.
    pub fn is_le(&self, other: &Subset) -> bool {
        if self.len() < other.len() {
            return false;
        }
        self.iter().zip(other.iter()).all(|(s, t)| s <= t)
    }

    /// The column order, rejecting sets of different ranks.
    pub fn leq(&self, other: &Subset) -> Result<bool> {
        same_rank(self, other)?;
        Ok(self.is_le(other))
    }

    /// The `(k, m)`-completion: `self` padded with the `k - |self|` largest
    /// values of `[m]` not already present.
    pub fn completion(&self, k: usize, m: usize) -> Result<Subset> {
        if m > self.n || k > m {
            return Err(usage(format!("need k <= m <= n, got k={k}, m={m}, n={}", self.n)));
        }
        if self.bits & !low_mask(m) != 0 {
            return Err(usage(format!("{self} is not contained in [{m}]")));
        }
        if self.len() > k {
            return Err(usage(format!("{self} has more than {k} elements")));
        }
        let mut bits = self.bits;
        let mut missing = k - self.len();
        let mut x = m;
        while missing > 0 {
            let bit = 1u64 << (x - 1);
            if bits & bit == 0 {
                bits |= bit;
                missing -= 1;
            }
            x -= 1;
        }
        Ok(Subset { n: self.n, bits })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Members {
    bits: u64,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let x = self.bits.trailing_zeros() as usize + 1;
        self.bits &= self.bits - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

/// All cardinality-`k` subsets of `[n]` in colexicographic order (largest
/// elements compared first). This is a linear extension of the column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOrder {
    pub n: usize,
    pub k: usize,
    pub sequence: Vec<Subset>,
}

impl BlockOrder {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_rank(n)?;
        if k > n {
            return Err(usage(format!("cardinality {k} exceeds rank {n}")));
        }
        // Gosper's hack walks same-popcount masks in increasing numeric
        // order, which is exactly colex order.
        let mut sequence = Vec::new();
        let limit = 1u64 << n;
        let mut bits = low_mask(k);
        loop {
            sequence.push(Subset { n, bits });
            if bits == 0 {
                break;
            }
            let c = bits & bits.wrapping_neg();
            let r = bits + c;
            let next = (((r ^ bits) >> 2) / c) | r;
            if next >= limit || next == 0 {
                break;
            }
            bits = next;
        }
        Ok(BlockOrder { n, k, sequence })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// All subsets of `[n]`: cardinality `n` first, down to the empty set, each
/// block in colex order.
pub fn global_order(n: usize) -> Result<Vec<Subset>> {
    let mut out = Vec::with_capacity(1usize << n.min(20));
    for k in (0..=n).rev() {
        out.extend(BlockOrder::new(n, k)?.sequence);
    }
    Ok(out)
}

/// `S <= T` with a rank check.
pub fn subset_leq(s: &Subset, t: &Subset) -> Result<bool> {
    s.leq(t)
}

/// Every set in the order interval `[p, q]`, in colex order.
///
/// Requires `|p| = |q|` and `p <= q`; all members of the interval then share
/// that cardinality.
pub fn interval(p: &Subset, q: &Subset) -> Result<Vec<Subset>> {
    check_interval(p, q)?;
    Ok(BlockOrder::new(p.n, p.len())?
        .sequence
        .into_iter()
        .filter(|s| p.is_le(s) && s.is_le(q))
        .collect())
}

/// `∪[p, q]`, the union of the sets in the interval `[p, q]`.
///
/// Uses the closed form `x ∈ ∪[p, q] ⟺ ∃ i, p^i <= x <= q^i`: given such an
/// `i`, the set taking rows below `i` from `p`, `x` at row `i`, and rows above
/// from `q` lies in the interval.
pub fn interval_union(p: &Subset, q: &Subset) -> Result<Subset> {
    check_interval(p, q)?;
    let mut bits = 0u64;
    for (lo, hi) in p.iter().zip(q.iter()) {
        bits |= low_mask(hi) & !low_mask(lo - 1);
    }
    Ok(Subset { n: p.n, bits })
}

/// Length of the longest chain among cardinality-`k` subsets of `[n]`.
pub fn block_chain_length(n: usize, k: usize) -> Result<usize> {
    if k > n {
        return Err(usage(format!("cardinality {k} exceeds rank {n}")));
    }
    Ok(k * (n - k) + 1)
}

/// `⌊n²/4⌋ + 1`, the longest chain over all cardinality blocks.
pub fn chain_length_bound(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(usage("rank must be at least 1"));
    }
    Ok(n * n / 4 + 1)
}

fn check_interval(p: &Subset, q: &Subset) -> Result<()> {
    same_rank(p, q)?;
    if p.len() != q.len() {
        return Err(usage(format!("interval endpoints {p} and {q} differ in size")));
    }
    if !p.is_le(q) {
        return Err(usage(format!("{p} is not below {q}")));
    }
    Ok(())
}

fn same_rank(s: &Subset, t: &Subset) -> Result<()> {
    if s.n != t.n {
        return Err(usage(format!("subsets of ranks {} and {} compared", s.n, t.n)));
    }
    Ok(())
}

fn check_rank(n: usize) -> Result<()> {
    if n > MAX_SUBSET_RANK {
        return Err(Error::Capacity { n, max: MAX_SUBSET_RANK });
    }
    Ok(())
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
