//! The representation of the plactic monoid by tropical matrices indexed by
//! subsets of `[n]`, together with the decoders back to tableaux.
//!
//! For a generator `x`, the entry at `(P, Q)` is `-∞` unless `|P| = |Q|` and
//! `P <= Q`; it is `1` when `x` lies in some set of the interval `[P, Q]` and
//! `0` otherwise. Words map to products of generators. The empty word maps to
//! the idempotent with `0` at every comparable position, not to the tropical
//! identity.
//!
//! The singleton block of the representation, reindexed by `[n]`, gives an
//! `n x n` upper triangular representation whose entry `(p, q)` is the length
//! of the longest non-decreasing subword with letters in `[p, q]`.

use crate::error::{usage, Error, Result};
use crate::plactic::{TabParams, Tableau, Word};
use crate::subset::{global_order, interval, interval_union, Subset};
use crate::tropical::{Label, Trop, TropMatrix};

/// Largest rank for which the full `2^n`-dimensional representation is built.
pub const MAX_RANK: usize = 8;

/// The representation of rank `n`, with generator images cached.
#[derive(Clone, Debug)]
pub struct Representation {
    n: usize,
    order: Vec<Subset>,
    // position of each subset in `order`, indexed by its bit pattern
    position: Vec<usize>,
    generators: Vec<TropMatrix>,
    empty_word: TropMatrix,
}

impl Representation {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(usage("rank must be at least 1"));
        }
        if n > MAX_RANK {
            return Err(Error::Capacity { n, max: MAX_RANK });
        }
        let order = global_order(n)?;
        let mut position = vec![0; 1 << n];
        for (i, s) in order.iter().enumerate() {
            position[s.bits() as usize] = i;
        }
        let labels: Vec<Label> = order.iter().copied().map(Label::Set).collect();

        let mut empty_word = TropMatrix::neg_inf(labels.clone())?;
        let mut generators = vec![TropMatrix::neg_inf(labels)?; n];
        for (i, p) in order.iter().enumerate() {
            for (j, q) in order.iter().enumerate() {
                if p.len() != q.len() || !p.is_le(q) {
                    continue;
                }
                empty_word.set(i, j, Trop::ONE);
                let union = interval_union(p, q)?;
                for (x, g) in generators.iter_mut().enumerate() {
                    let value = if union.contains(x + 1) { 1 } else { 0 };
                    g.set(i, j, Trop::Fin(value));
                }
            }
        }
        Ok(Representation { n, order, position, generators, empty_word })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Row/column order: cardinality `n` down to `0`, colex within a block.
    pub fn order(&self) -> &[Subset] {
        &self.order
    }

    pub fn labels(&self) -> Vec<Label> {
        self.order.iter().copied().map(Label::Set).collect()
    }

    pub fn index_of(&self, s: &Subset) -> usize {
        self.position[s.bits() as usize]
    }

    pub fn generator(&self, x: usize) -> Result<&TropMatrix> {
        if x == 0 || x > self.n {
            return Err(usage(format!("letter {x} is outside [1, {}]", self.n)));
        }
        Ok(&self.generators[x - 1])
    }

    pub fn empty_word_matrix(&self) -> &TropMatrix {
        &self.empty_word
    }

    pub fn represent(&self, w: &Word) -> Result<TropMatrix> {
        if w.rank() != self.n {
            return Err(usage(format!("word of rank {} given to rank {}", w.rank(), self.n)));
        }
        let mut letters = w.letters().iter();
        let Some(&first) = letters.next() else {
            return Ok(self.empty_word.clone());
        };
        let mut acc = self.generators[first - 1].clone();
        for &x in letters {
            acc = acc.mul(&self.generators[x - 1])?;
        }
        Ok(acc)
    }

    pub fn represent_tableau(&self, t: &Tableau) -> Result<TropMatrix> {
        self.represent(&t.column_reading())
    }

    /// Positions (in [`Self::order`]) of the cardinality-`k` subsets.
    pub fn block_positions(&self, k: usize) -> Vec<usize> {
        (0..self.order.len()).filter(|&i| self.order[i].len() == k).collect()
    }

    /// The diagonal block of `m` belonging to cardinality-`k` subsets.
    pub fn block(&self, m: &TropMatrix, k: usize) -> Result<TropMatrix> {
        if k > self.n {
            return Err(usage(format!("cardinality {k} exceeds rank {}", self.n)));
        }
        self.check_labels(m)?;
        m.submatrix(&self.block_positions(k))
    }

    /// The row-count table read off a matrix in the image.
    pub fn row_counts(&self, m: &TropMatrix) -> Result<RowCountTable> {
        self.check_labels(m)?;
        let n = self.n;
        let mut table = RowCountTable { n, counts: vec![0; (n + 1) * (n + 1)] };
        for k in 1..=n {
            for m_ in k..=n {
                let p = self.index_of(&Subset::initial(n, k)?);
                let q = self.index_of(&Subset::top(n, k, m_)?);
                let value = match m.get(p, q) {
                    Trop::Fin(v) if v >= 0 => v,
                    other => {
                        return Err(Error::NotInImage(format!(
                            "entry ([{k}], top {k} of [{m_}]) is {other}"
                        )))
                    }
                };
                table.counts[k * (n + 1) + m_] = value;
            }
        }
        Ok(table)
    }

    /// Recover the tableau from its image by inclusion-exclusion on row
    /// counts. Only the entries `([k], [m-k+1, m])` are consulted.
    pub fn decode(&self, m: &TropMatrix) -> Result<Tableau> {
        let table = self.row_counts(m)?;
        let n = self.n;
        let mut params = TabParams::zero(n);
        for k in 1..=n {
            for m_ in k..=n {
                let count = table.get(k, m_) - table.get(k - 1, m_) - table.get(k, m_ - 1)
                    + table.get(k - 1, m_ - 1);
                if count < 0 {
                    return Err(Error::NotInImage(format!(
                        "row {k} would hold {count} copies of {m_}"
                    )));
                }
                params.set(k, m_, count as u64)?;
            }
        }
        Tableau::from_parameters(&params).map_err(|e| Error::NotInImage(e.to_string()))
    }

    /// [`Self::decode`] followed by re-encoding, so that any matrix outside
    /// the image is rejected.
    pub fn decode_checked(&self, m: &TropMatrix) -> Result<Tableau> {
        let t = self.decode(m)?;
        if &self.represent_tableau(&t)? != m {
            return Err(Error::NotInImage(
                "decoded tableau does not reproduce the matrix".to_string(),
            ));
        }
        Ok(t)
    }

    fn check_labels(&self, m: &TropMatrix) -> Result<()> {
        let ok = m.dim() == self.order.len()
            && m.labels().iter().zip(&self.order).all(|(l, s)| *l == Label::Set(*s));
        if ok {
            Ok(())
        } else {
            Err(usage(format!("matrix is not indexed by the subsets of [{}]", self.n)))
        }
    }
}

/// The block-preserving order: `|P| = |Q|` and `P <= Q`.
pub fn block_leq(a: &Label, b: &Label) -> bool {
    match (a, b) {
        (Label::Set(p), Label::Set(q)) => p.len() == q.len() && p.is_le(q),
        _ => false,
    }
}

/// `N(k, m)`: entries from `[m]` in the bottom `k` rows.
///
/// `N(0, m) = N(k, 0) = 0`, and for `k > m` the value is `N(m, m)` since
/// entries up to `m` only occur in the bottom `m` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCountTable {
    n: usize,
    counts: Vec<i64>,
}

impl RowCountTable {
    pub fn get(&self, k: usize, m: usize) -> i64 {
        let k = k.min(m);
        self.counts[k * (self.n + 1) + m]
    }
}

/// Longest scattered subword of `w` readable from `p` to `q`.
///
/// Dynamic program over the sets of `[p, q]`: `best[s]` is the longest
/// subword of the prefix read so far along a chain whose last set is at most
/// `s`. Reading letter `a` lets a chain step into any set containing `a`.
pub fn max_readable(w: &Word, p: &Subset, q: &Subset) -> Result<usize> {
    if p.rank() != w.rank() {
        return Err(usage("word and subsets have different ranks"));
    }
    let sets = interval(p, q)?;
    let below: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| (0..sets.len()).filter(|&t| sets[t].is_le(s)).collect())
        .collect();
    let mut best = vec![0usize; sets.len()];
    for &a in w.letters() {
        let next: Vec<usize> = (0..sets.len())
            .map(|s| {
                below[s]
                    .iter()
                    .filter(|&&t| sets[t].contains(a))
                    .map(|&t| best[t] + 1)
                    .fold(best[s], usize::max)
            })
            .collect();
        best = next;
    }
    let top = sets.iter().position(|s| s == q).expect("interval contains its maximum");
    Ok(best[top])
}

/// The singleton block computed directly from `w`: entry `(p, q)` is the
/// longest non-decreasing subword of `w` using letters from `[p, q]`.
pub fn represent_singleton(n: usize, w: &Word) -> Result<TropMatrix> {
    if w.rank() != n {
        return Err(usage(format!("word of rank {} given to rank {n}", w.rank())));
    }
    let mut rows = vec![vec![Trop::NegInf; n]; n];
    for p in 1..=n {
        for q in p..=n {
            rows[p - 1][q - 1] = Trop::Fin(longest_nondecreasing(w.letters(), p, q) as i64);
        }
    }
    TropMatrix::square(rows)
}

fn longest_nondecreasing(letters: &[usize], lo: usize, hi: usize) -> usize {
    // tails[l] = smallest possible last letter of a length-(l+1) run
    let mut tails: Vec<usize> = Vec::new();
    for &x in letters.iter().filter(|&&x| lo <= x && x <= hi) {
        let pos = tails.partition_point(|&t| t <= x);
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}

/// First failing instance of the conditions (A)-(D) on an upper triangular
/// matrix; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbcdViolation {
    /// Diagonal sum below superdiagonal sum.
    A { diagonal: i64, superdiagonal: i64 },
    /// `X[i][j+1] < X[i][j]`.
    B { i: usize, j: usize },
    /// `X[i-1][j] < X[i][j]`.
    C { i: usize, j: usize },
    /// `X[i][j] + X[i+1][j+1] < X[i][j+1] + X[i+1][j]`.
    D { i: usize, j: usize },
}

impl std::fmt::Display for AbcdViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AbcdViolation::A { diagonal, superdiagonal } => {
                write!(f, "(A) diagonal sum {diagonal} < superdiagonal sum {superdiagonal}")
            }
            AbcdViolation::B { i, j } => write!(f, "(B) X[{i}][{}] < X[{i}][{j}]", j + 1),
            AbcdViolation::C { i, j } => write!(f, "(C) X[{}][{j}] < X[{i}][{j}]", i - 1),
            AbcdViolation::D { i, j } => write!(
                f,
                "(D) X[{i}][{j}] + X[{}][{}] < X[{i}][{}] + X[{}][{j}]",
                i + 1,
                j + 1,
                j + 1,
                i + 1
            ),
        }
    }
}

/// Integer entries of an upper triangular matrix with non-negative finite
/// entries on and above the diagonal; `x[i][j]` is 0-based.
fn triangular_entries(m: &TropMatrix) -> Result<Vec<Vec<i64>>> {
    let n = m.dim();
    let mut x = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            match (j >= i, m.get(i, j)) {
                (true, Trop::Fin(v)) if v >= 0 => x[i][j] = v,
                (true, other) => {
                    return Err(usage(format!(
                        "entry ({}, {}) is {other}; expected a non-negative integer",
                        i + 1,
                        j + 1
                    )))
                }
                (false, Trop::NegInf) => {}
                (false, _) => {
                    return Err(usage(format!("matrix is not upper triangular at ({}, {})", i + 1, j + 1)))
                }
            }
        }
    }
    Ok(x)
}

/// Check (A)-(D), returning the first violation if any.
pub fn check_abcd(m: &TropMatrix) -> Result<Option<AbcdViolation>> {
    let x = triangular_entries(m)?;
    let n = x.len();
    let (mut diagonal, mut superdiagonal) = (0i64, 0i64);
    for i in 0..n {
        diagonal = diagonal.checked_add(x[i][i]).ok_or(Error::Overflow)?;
        if i + 1 < n {
            superdiagonal = superdiagonal.checked_add(x[i][i + 1]).ok_or(Error::Overflow)?;
        }
    }
    if diagonal < superdiagonal {
        return Ok(Some(AbcdViolation::A { diagonal, superdiagonal }));
    }
    // 1-based loops below mirror the index ranges of the conditions.
    let at = |i: usize, j: usize| i128::from(x[i - 1][j - 1]);
    for i in 1..=n {
        for j in i..n {
            if at(i, j + 1) < at(i, j) {
                return Ok(Some(AbcdViolation::B { i, j }));
            }
        }
    }
    for i in 2..=n {
        for j in i..=n {
            if at(i - 1, j) < at(i, j) {
                return Ok(Some(AbcdViolation::C { i, j }));
            }
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            if at(i, j) + at(i + 1, j + 1) < at(i, j + 1) + at(i + 1, j) {
                return Ok(Some(AbcdViolation::D { i, j }));
            }
        }
    }
    Ok(None)
}

pub fn satisfies_abcd(m: &TropMatrix) -> Result<bool> {
    Ok(check_abcd(m)?.is_none())
}

/// Inverse of the singleton block on matrices satisfying (A)-(D).
///
/// With `f(x, y) = Σ_{i=1..x} X[i][y-x+i]`, the parameters are the mixed
/// differences `f(x,y) - f(x-1,y) - f(x,y-1) + f(x-1,y-1)` off the diagonal
/// and `f(x,x) - f(x-1,x)` on it.
pub fn decode_triangular(m: &TropMatrix) -> Result<Tableau> {
    if let Some(v) = check_abcd(m)? {
        return Err(Error::Precondition(format!("matrix fails {v}")));
    }
    let x = triangular_entries(m)?;
    let n = x.len();
    let f = |a: usize, b: usize| -> i128 {
        (1..=a).map(|i| i128::from(x[i - 1][b - a + i - 1])).sum()
    };
    let mut params = TabParams::zero(n);
    for a in 1..=n {
        for b in a..=n {
            let value = if a < b {
                f(a, b) - f(a - 1, b) - f(a, b - 1) + f(a - 1, b - 1)
            } else {
                f(a, a) - f(a - 1, a)
            };
            let value = u64::try_from(value).map_err(|_| {
                Error::InvariantViolation(format!("parameter i_({a},{b}) = {value} is negative"))
            })?;
            params.set(a, b, value)?;
        }
    }
    let t = Tableau::from_parameters(&params)
        .map_err(|e| Error::InvariantViolation(format!("decoded parameters: {e}")))?;
    if !params.is_diagonally_increasing() {
        return Err(Error::InvariantViolation(
            "decoded parameters are not diagonally increasing".to_string(),
        ));
    }
    for p in 1..=n {
        for q in p..=n {
            if imentries_formula(&params, p, q)? != x[p - 1][q - 1] {
                return Err(Error::InvariantViolation(format!(
                    "decoded tableau does not reproduce entry ({p}, {q})"
                )));
            }
        }
    }
    Ok(t)
}

/// `Σ_{j=p}^{q-1} i_{p,j} + Σ_{j=1}^{p} i_{j,q}`, the singleton-block entry
/// `(p, q)` of a tableau whose parameters satisfy `i_{x+1,y+1} >= i_{x,y}`.
pub fn imentries_formula(params: &TabParams, p: usize, q: usize) -> Result<i64> {
    let n = params.rank();
    if p == 0 || p > q || q > n {
        return Err(usage(format!("need 1 <= p <= q <= {n}, got ({p}, {q})")));
    }
    if !params.is_diagonally_increasing() {
        return Err(usage("parameters are not diagonally increasing"));
    }
    let total: u128 = (p..q).map(|j| u128::from(params.get(p, j))).sum::<u128>()
        + (1..=p).map(|j| u128::from(params.get(j, q))).sum::<u128>();
    i64::try_from(total).map_err(|_| Error::Overflow)
}
