//! Semigroup identities: evaluation, randomized checking, and the
//! falsification pipeline that turns a failure in `UT_n` into an explicit
//! counterexample in the plactic monoid of rank `n`.
//!
//! The pipeline looks for a short word `u` and a positive integer point `x`
//! at which the tropical polynomials attached to the two sides differ, builds
//! one upper triangular matrix per variable from `(u, x)` and three constants,
//! checks that the matrices lie in the image of the singleton-block
//! representation, decodes them to tableaux and re-evaluates the identity
//! there.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::plactic::{Tableau, Word};
use crate::representation::{check_abcd, decode_triangular, represent_singleton};
use crate::tropical::{MatrixJson, Trop, TropMatrix};

/// A formal equality of two non-empty words over single-character variables.
///
/// Letters are stored as indices into `alphabet`, which lists variables in
/// order of first appearance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    alphabet: Vec<char>,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

impl Identity {
    pub fn new(alphabet: Vec<char>, lhs: Vec<usize>, rhs: Vec<usize>) -> Result<Self> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(usage("both sides of an identity must be non-empty"));
        }
        if lhs.iter().chain(&rhs).any(|&s| s >= alphabet.len()) {
            return Err(usage("identity uses a letter outside its alphabet"));
        }
        for (i, c) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(c) {
                return Err(usage(format!("variable '{c}' declared twice")));
            }
        }
        Ok(Identity { alphabet, lhs, rhs })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn lhs(&self) -> &[usize] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[usize] {
        &self.rhs
    }

    pub fn sides(&self) -> [&[usize]; 2] {
        [&self.lhs, &self.rhs]
    }

    /// Occurrences of each variable on each side.
    pub fn contents(&self) -> (Vec<usize>, Vec<usize>) {
        let count = |side: &[usize]| {
            let mut c = vec![0; self.alphabet.len()];
            for &s in side {
                c[s] += 1;
            }
            c
        };
        (count(&self.lhs), count(&self.rhs))
    }

    pub fn spell(&self, word: &[usize]) -> String {
        word.iter().map(|&s| self.alphabet[s]).collect()
    }

    /// Parse a word over this identity's alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        text.chars()
            .enumerate()
            .map(|(position, c)| {
                self.alphabet.iter().position(|&a| a == c).ok_or_else(|| Error::Parse {
                    position,
                    message: format!("'{c}' is not a variable of the identity"),
                })
            })
            .collect()
    }
}

impl FromStr for Identity {
    type Err = Error;

    /// `"xyyxxyxyyx=xyyxyxxyyx"`: one character per variable.
    fn from_str(text: &str) -> Result<Self> {
        let eq = text.find('=').ok_or_else(|| Error::Parse {
            position: text.len(),
            message: "expected '=' between the two sides".to_string(),
        })?;
        let mut alphabet = Vec::new();
        let mut sides = [Vec::new(), Vec::new()];
        for (position, c) in text.char_indices() {
            if position == eq || c.is_whitespace() {
                continue;
            }
            if c == '=' {
                return Err(Error::Parse { position, message: "more than one '='".to_string() });
            }
            let index = match alphabet.iter().position(|&a| a == c) {
                Some(i) => i,
                None => {
                    alphabet.push(c);
                    alphabet.len() - 1
                }
            };
            sides[usize::from(position > eq)].push(index);
        }
        for (side, position) in sides.iter().zip([0, eq + 1]) {
            if side.is_empty() {
                return Err(Error::Parse { position, message: "empty side".to_string() });
            }
        }
        let [lhs, rhs] = sides;
        Identity::new(alphabet, lhs, rhs)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.spell(&self.lhs), self.spell(&self.rhs))
    }
}

/// Number of occurrences of `s` strictly between positions `p` and `q` of `w`
/// (1-based positions; `0` and `|w| + 1` act as sentinels).
pub fn beta(w: &[usize], s: usize, p: usize, q: usize) -> Result<usize> {
    if p >= q || q > w.len() + 1 {
        return Err(usage(format!("need 0 <= p < q <= {}, got p={p}, q={q}", w.len() + 1)));
    }
    Ok(w[p..q - 1].iter().filter(|&&c| c == s).count())
}

/// Integer values `x(s, i)` for every variable `s` and vertex `i` of `[n]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolyPoint {
    n: usize,
    /// `values[s][i - 1] = x(s, i)`.
    values: Vec<Vec<i64>>,
}

impl PolyPoint {
    pub fn new(n: usize, values: Vec<Vec<i64>>) -> Result<Self> {
        if values.iter().any(|row| row.len() != n) {
            return Err(usage(format!("every variable needs {n} vertex values")));
        }
        if values.iter().flatten().any(|&v| v <= 0) {
            return Err(usage("point coordinates must be positive integers"));
        }
        Ok(PolyPoint { n, values })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, s: usize, vertex: usize) -> i64 {
        self.values[s][vertex - 1]
    }

    pub fn max_value(&self) -> i64 {
        self.values.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Every coordinate multiplied by `c`.
    pub fn scaled(&self, c: i64) -> Result<PolyPoint> {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|&v| v.checked_mul(c).ok_or(Error::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        PolyPoint::new(self.n, values)
    }
}

/// Evaluate the tropical polynomial `f_{u,π}^w` at `x`.
///
/// Maximum over embeddings `0 = α_0 < α_1 < ... < α_|u| < α_{|u|+1} = |w| + 1`
/// with `w[α_k] = u[k]` of `Σ_k Σ_{α_k < i < α_{k+1}} x(w_i, π_k)`; `-∞` when
/// `u` does not embed in `w`.
pub fn f_eval(w: &[usize], u: &[usize], pi: &[usize], x: &PolyPoint) -> Result<Trop> {
    if pi.len() != u.len() + 1 {
        return Err(usage(format!("π needs {} vertices, got {}", u.len() + 1, pi.len())));
    }
    if pi.iter().any(|&v| v == 0 || v > x.rank()) || pi.windows(2).any(|p| p[0] >= p[1]) {
        return Err(usage(format!("π = {pi:?} is not strictly increasing within [1, {}]", x.rank())));
    }
    if w.iter().chain(u).any(|&s| s >= x.letters()) {
        return Err(usage("word uses a variable the point does not cover"));
    }
    // prefix[k][i] = Σ_{j < i} x(w_j, π_k), with 0-based j.
    let prefix: Vec<Vec<i64>> = pi
        .iter()
        .map(|&vertex| {
            let mut acc = vec![0i64; w.len() + 1];
            for (i, &s) in w.iter().enumerate() {
                acc[i + 1] = acc[i] + x.get(s, vertex);
            }
            acc
        })
        .collect();
    // Sum over positions strictly between 1-based a and b, weighted at π_k.
    let gap = |k: usize, a: usize, b: usize| prefix[k][b - 1] - prefix[k][a];

    let mut best = Trop::NegInf;
    let mut alpha = vec![0usize; u.len()];
    embed(w, u, 0, 0, &mut alpha, &mut |alpha| {
        let mut total = 0i64;
        let mut prev = 0;
        for (k, &a) in alpha.iter().enumerate() {
            total += gap(k, prev, a);
            prev = a;
        }
        total += gap(u.len(), prev, w.len() + 1);
        best = best.oplus(Trop::Fin(total));
    });
    Ok(best)
}

/// Visit every strictly increasing 1-based position tuple at which `u` reads
/// inside `w`.
fn embed(
    w: &[usize],
    u: &[usize],
    k: usize,
    after: usize,
    alpha: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if k == u.len() {
        visit(alpha);
        return;
    }
    let remaining = u.len() - k - 1;
    for pos in after + 1..=w.len() - remaining.min(w.len()) {
        if w[pos - 1] == u[k] {
            alpha[k] = pos;
            embed(w, u, k + 1, pos, alpha, visit);
        }
    }
}

/// `u` occurs as a scattered subword of `w`.
pub fn is_scattered_subword(u: &[usize], w: &[usize]) -> bool {
    let mut it = w.iter();
    u.iter().all(|c| it.any(|d| d == c))
}

/// A semigroup whose elements can be multiplied and sampled.
pub trait Semigroup: Sync {
    type Element: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;

    /// Reject elements of the wrong rank or shape.
    fn check(&self, a: &Self::Element) -> Result<()>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Element;

    fn name(&self) -> String;
}

/// `UT_n` over the integer tropical semiring. Samples draw each entry on or
/// above the diagonal uniformly from `{-∞} ∪ [min, max]`.
#[derive(Clone, Debug)]
pub struct UpperTriangular {
    pub n: usize,
    pub entry_min: i64,
    pub entry_max: i64,
}

impl UpperTriangular {
    pub fn new(n: usize) -> Self {
        UpperTriangular { n, entry_min: -3, entry_max: 3 }
    }
}

impl Semigroup for UpperTriangular {
    type Element = TropMatrix;

    fn multiply(&self, a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
        a.mul(b)
    }

    fn check(&self, a: &TropMatrix) -> Result<()> {
        if a.dim() != self.n || !a.is_upper_triangular() {
            return Err(usage(format!("element is not a {0}x{0} upper triangular matrix", self.n)));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> TropMatrix {
        let n = self.n;
        let mut rows = vec![vec![Trop::NegInf; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for entry in row.iter_mut().skip(i) {
                let v = rng.gen_range(self.entry_min - 1..=self.entry_max);
                if v >= self.entry_min {
                    *entry = Trop::Fin(v);
                }
            }
        }
        TropMatrix::square(rows).expect("square by construction")
    }

    fn name(&self) -> String {
        format!("UT_{}", self.n)
    }
}

/// The plactic monoid of rank `n`. Samples insert a uniformly random word of
/// length at most `max_word_len`.
#[derive(Clone, Debug)]
pub struct Plactic {
    pub n: usize,
    pub max_word_len: usize,
}

impl Plactic {
    pub fn new(n: usize) -> Self {
        Plactic { n, max_word_len: 10 }
    }
}

impl Semigroup for Plactic {
    type Element = Tableau;

    fn multiply(&self, a: &Tableau, b: &Tableau) -> Result<Tableau> {
        a.multiply(b)
    }

    fn check(&self, a: &Tableau) -> Result<()> {
        if a.rank() != self.n {
            return Err(usage(format!("tableau of rank {} used in P_{}", a.rank(), self.n)));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Tableau {
        let len = rng.gen_range(0..=self.max_word_len);
        let letters = (0..len).map(|_| rng.gen_range(1..=self.n)).collect();
        Tableau::from_word(&Word::new(self.n, letters).expect("letters drawn from [1, n]"))
    }

    fn name(&self) -> String {
        format!("P_{}", self.n)
    }
}

/// Both sides of an identity evaluated under one assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation<E> {
    pub lhs: E,
    pub rhs: E,
    pub equal: bool,
}

pub fn eval_word<S: Semigroup>(word: &[usize], assign: &[S::Element], sg: &S) -> Result<S::Element> {
    let (&first, rest) = word.split_first().ok_or_else(|| usage("cannot evaluate the empty word"))?;
    rest.iter().try_fold(assign[first].clone(), |acc, &s| sg.multiply(&acc, &assign[s]))
}

/// Substitute `assign[s]` for variable `s` and multiply out both sides.
pub fn eval_identity<S: Semigroup>(
    id: &Identity,
    assign: &[S::Element],
    sg: &S,
) -> Result<Evaluation<S::Element>> {
    if assign.len() != id.alphabet.len() {
        return Err(usage(format!(
            "assignment covers {} of {} variables",
            assign.len(),
            id.alphabet.len()
        )));
    }
    for a in assign {
        sg.check(a)?;
    }
    let lhs = eval_word(&id.lhs, assign, sg)?;
    let rhs = eval_word(&id.rhs, assign, sg)?;
    let equal = lhs == rhs;
    Ok(Evaluation { lhs, rhs, equal })
}

/// Outcome of randomized identity checking.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleOutcome<E> {
    Held { trials: u64 },
    Counterexample { trial: u64, assignment: Vec<E>, evaluation: Evaluation<E> },
}

/// Random generator for trial `trial` under `seed`: one ChaCha stream per
/// trial, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Test `id` on `trials` random assignments. With `jobs > 1` trials run on a
/// thread pool; the reported counterexample is still the lowest-numbered
/// failing trial.
pub fn sample_check<S: Semigroup>(
    id: &Identity,
    sg: &S,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<SampleOutcome<S::Element>> {
    let run = |trial: u64| -> Result<Option<SampleOutcome<S::Element>>> {
        let mut rng = trial_rng(seed, trial);
        let assignment: Vec<S::Element> = id.alphabet.iter().map(|_| sg.sample(&mut rng)).collect();
        let evaluation = eval_identity(id, &assignment, sg)?;
        Ok((!evaluation.equal).then_some(SampleOutcome::Counterexample {
            trial,
            assignment,
            evaluation,
        }))
    };
    let first = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| usage(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            (0..trials).into_par_iter().map(run).find_first(|r| !matches!(r, Ok(None)))
        })
    } else {
        (0..trials).map(run).find(|r| !matches!(r, Ok(None)))
    };
    match first {
        Some(r) => Ok(r?.expect("only failing trials are kept")),
        None => Ok(SampleOutcome::Held { trials }),
    }
}

/// Limits for the random search of a separating point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Random points tried per word and coordinate range.
    pub points_per_range: usize,
    /// Coordinate ranges `[1, 1]`, `[1, 10]`, `[1, 100]`, ...
    pub ranges: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { points_per_range: 200, ranges: 5 }
    }
}

/// A word `u` and a point at which `f_u` differs on the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub u: Vec<usize>,
    pub point: PolyPoint,
}

/// All words over `letters` variables of length exactly `len`, in
/// lexicographic order.
fn words_of_length(letters: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Words of length at most `max_len`, longest first.
fn words_up_to(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0..=max_len).rev().flat_map(|len| words_of_length(letters, len)).collect()
}

/// Search words `u` with `|u| <= n - 1` (longest first) for a positive
/// integer point where `f_u` of the two sides differ, with `π = (1, ..., |u|+1)`.
/// `None` means the budget ran out; it is not evidence that the identity holds.
pub fn find_separating(
    id: &Identity,
    n: usize,
    budget: &SearchBudget,
    seed: u64,
) -> Result<Option<Separation>> {
    if n == 0 {
        return Err(usage("rank must be at least 1"));
    }
    let m = id.alphabet.len();
    for (index, u) in words_up_to(m, n - 1).into_iter().enumerate() {
        let on_lhs = is_scattered_subword(&u, &id.lhs);
        let on_rhs = is_scattered_subword(&u, &id.rhs);
        if !on_lhs && !on_rhs {
            continue;
        }
        let pi: Vec<usize> = (1..=u.len() + 1).collect();
        let mut rng = trial_rng(seed, index as u64);
        for level in 0..budget.ranges {
            let max = 10i64.checked_pow(level).ok_or(Error::Overflow)?;
            let attempts = if level == 0 { 1 } else { budget.points_per_range };
            for _ in 0..attempts {
                let values =
                    (0..m).map(|_| (0..n).map(|_| rng.gen_range(1..=max)).collect()).collect();
                let point = PolyPoint::new(n, values)?;
                if f_eval(&id.lhs, &u, &pi, &point)? != f_eval(&id.rhs, &u, &pi, &point)? {
                    return Ok(Some(Separation { u, point }));
                }
            }
        }
    }
    Ok(None)
}

/// The constants of the witness construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    /// `1 + max |f_{z,π}(x)|` over both sides, `|z| <= n - 1`, all `π`.
    pub f_bound: i64,
    pub s: i64,
    pub l: i64,
    pub g: i64,
}

impl Constants {
    /// `S = 1 + max x`, `L = (n+1)(S+F)`, `G = (n+1)(L+F)`, where `F` is the
    /// polynomial bound multiplied by `slack`.
    pub fn derive(id: &Identity, n: usize, x: &PolyPoint, slack: i64) -> Result<Constants> {
        let mut bound = 0i64;
        for z in words_up_to(id.alphabet.len(), n - 1) {
            for pi in increasing_sequences(n, z.len() + 1) {
                for side in id.sides() {
                    if let Trop::Fin(v) = f_eval(side, &z, &pi, x)? {
                        bound = bound.max(v.checked_abs().ok_or(Error::Overflow)?);
                    }
                }
            }
        }
        let checked = |a: i64, b: i64| a.checked_mul(b).ok_or(Error::Overflow);
        let f_bound = checked(bound + 1, slack)?;
        let n1 = n as i64 + 1;
        let s = x.max_value() + 1;
        let l = checked(n1, s.checked_add(f_bound).ok_or(Error::Overflow)?)?;
        let g = checked(n1, l.checked_add(f_bound).ok_or(Error::Overflow)?)?;
        Ok(Constants { f_bound, s, l, g })
    }
}

/// All strictly increasing sequences of `len` elements of `[n]`.
fn increasing_sequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, len, &mut Vec::new(), &mut out);
    out
}

/// The matrix assigned to variable `letter`:
/// `G + x(letter, p)` on the diagonal, `G + L` at `(p, q)` when `u_k = letter`
/// for some `p <= k < q` with `k <= |u|`, and `G + S` elsewhere above it.
pub fn witness_matrix(
    n: usize,
    u: &[usize],
    x: &PolyPoint,
    c: &Constants,
    letter: usize,
) -> Result<TropMatrix> {
    let add = |a: i64, b: i64| a.checked_add(b).ok_or(Error::Overflow);
    let mut rows = vec![vec![Trop::NegInf; n]; n];
    for p in 1..=n {
        for q in p..=n {
            let value = if p == q {
                add(c.g, x.get(letter, p))?
            } else if (p..q).any(|k| k <= u.len() && u[k - 1] == letter) {
                add(c.g, c.l)?
            } else {
                add(c.g, c.s)?
            };
            rows[p - 1][q - 1] = Trop::Fin(value);
        }
    }
    TropMatrix::square(rows)
}

/// Witness matrices with the constants that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessMatrices {
    pub constants: Constants,
    pub matrices: Vec<TropMatrix>,
    pub lhs: TropMatrix,
    pub rhs: TropMatrix,
}

/// Build and check the falsifying matrices for a separation `(u, x)`.
///
/// Checks that each matrix satisfies (A)-(D), that the `(1, |u|+1)` entries
/// of the two evaluated sides differ, and that on every side containing `u`
/// that entry is the dominant term `|w|·G + |u|·L + f_u^w(x)`.
pub fn build_witness_matrices(
    id: &Identity,
    n: usize,
    u: &[usize],
    x: &PolyPoint,
    slack: i64,
) -> Result<WitnessMatrices> {
    if u.len() >= n {
        return Err(usage(format!("|u| = {} must be below n = {n}", u.len())));
    }
    if x.rank() != n || x.letters() != id.alphabet.len() {
        return Err(usage("point does not match the identity and rank"));
    }
    let pi: Vec<usize> = (1..=u.len() + 1).collect();
    let f_sides = [f_eval(&id.lhs, u, &pi, x)?, f_eval(&id.rhs, u, &pi, x)?];
    if f_sides[0] == f_sides[1] {
        return Err(Error::Precondition(format!(
            "f_u does not separate the sides at this point (u = {})",
            id.spell(u)
        )));
    }
    let constants = Constants::derive(id, n, x, slack)?;
    let matrices = (0..id.alphabet.len())
        .map(|letter| witness_matrix(n, u, x, &constants, letter))
        .collect::<Result<Vec<_>>>()?;
    for (letter, a) in matrices.iter().enumerate() {
        if let Some(v) = check_abcd(a)? {
            return Err(Error::ConstantsTooSmall(format!(
                "matrix for '{}' fails {v}",
                id.alphabet[letter]
            )));
        }
    }
    let sg = UpperTriangular::new(n);
    let eval = eval_identity(id, &matrices, &sg)?;
    let col = u.len();
    let entries = [eval.lhs.get(0, col), eval.rhs.get(0, col)];
    for ((side, f), entry) in id.sides().into_iter().zip(f_sides).zip(entries) {
        let Trop::Fin(f) = f else { continue };
        let expected = (side.len() as i64)
            .checked_mul(constants.g)
            .and_then(|a| a.checked_add((u.len() as i64).checked_mul(constants.l)?))
            .and_then(|a| a.checked_add(f))
            .ok_or(Error::Overflow)?;
        if entry != Trop::Fin(expected) {
            return Err(Error::ConstantsTooSmall(format!(
                "entry (1, {}) is {entry}, dominant term predicts {expected}",
                col + 1
            )));
        }
    }
    if entries[0] == entries[1] {
        return Err(Error::ConstantsTooSmall(format!(
            "evaluated sides agree at (1, {})",
            col + 1
        )));
    }
    Ok(WitnessMatrices { constants, matrices, lhs: eval.lhs, rhs: eval.rhs })
}

/// How a witness certifies that the identity fails in `P_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The sides have different content; `letter` occurs a different number
    /// of times and is sent to the one-box tableau `1`, the rest to the empty
    /// tableau.
    Content { letter: char },
    /// Matrices falsifying the identity in `UT_n` and lying in the image of
    /// the singleton block.
    Tropical {
        u: String,
        point: PolyPoint,
        constants: Constants,
        matrices: Vec<MatrixJson>,
        matrix_lhs: MatrixJson,
        matrix_rhs: MatrixJson,
    },
}

/// A self-contained certificate that an identity fails in `P_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityWitness {
    pub identity: String,
    pub n: usize,
    pub seed: u64,
    pub certificate: Certificate,
    /// One tableau per variable, in alphabet order.
    pub tableaux: Vec<Tableau>,
    pub tableau_lhs: Tableau,
    pub tableau_rhs: Tableau,
}

/// Produce a plactic counterexample to `id` in rank `n`, or `None` if the
/// separation search exhausts its budget.
pub fn falsify(
    id: &Identity,
    n: usize,
    budget: &SearchBudget,
    seed: u64,
) -> Result<Option<IdentityWitness>> {
    if n == 0 {
        return Err(usage("rank must be at least 1"));
    }
    let plactic = Plactic::new(n);
    let (left, right) = id.contents();
    if let Some(letter) = (0..left.len()).find(|&s| left[s] != right[s]) {
        let tableaux: Vec<Tableau> = (0..left.len())
            .map(|s| {
                let mut t = Tableau::empty(n);
                if s == letter {
                    t.insert(1)?;
                }
                Ok(t)
            })
            .collect::<Result<_>>()?;
        let eval = eval_identity(id, &tableaux, &plactic)?;
        if eval.equal {
            return Err(Error::InvariantViolation("content witness evaluates equal".to_string()));
        }
        return Ok(Some(IdentityWitness {
            identity: id.to_string(),
            n,
            seed,
            certificate: Certificate::Content { letter: id.alphabet[letter] },
            tableaux,
            tableau_lhs: eval.lhs,
            tableau_rhs: eval.rhs,
        }));
    }

    let Some(sep) = find_separating(id, n, budget, seed)? else {
        return Ok(None);
    };
    let mut built = None;
    for slack in [1, 10, 100] {
        match build_witness_matrices(id, n, &sep.u, &sep.point, slack) {
            Ok(w) => {
                built = Some(w);
                break;
            }
            Err(Error::ConstantsTooSmall(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let built = built.ok_or_else(|| {
        Error::ConstantsTooSmall("dominance failed even with enlarged constants".to_string())
    })?;
    let tableaux = built.matrices.iter().map(decode_triangular).collect::<Result<Vec<_>>>()?;
    let eval = eval_identity(id, &tableaux, &plactic)?;
    if eval.equal {
        return Err(Error::InvariantViolation(
            "matrices separate the identity but their tableaux do not".to_string(),
        ));
    }
    Ok(Some(IdentityWitness {
        identity: id.to_string(),
        n,
        seed,
        certificate: Certificate::Tropical {
            u: id.spell(&sep.u),
            point: sep.point,
            constants: built.constants,
            matrices: built.matrices.iter().map(MatrixJson::from).collect(),
            matrix_lhs: MatrixJson::from(&built.lhs),
            matrix_rhs: MatrixJson::from(&built.rhs),
        },
        tableaux,
        tableau_lhs: eval.lhs,
        tableau_rhs: eval.rhs,
    }))
}

/// Re-check a witness from its own data: rebuild matrices from the
/// constants, re-decode the tableaux, recompute both evaluations and confirm
/// that they differ.
pub fn verify_witness(w: &IdentityWitness) -> Result<()> {
    let id: Identity = w.identity.parse()?;
    let n = w.n;
    let fail = |msg: String| Err(Error::Precondition(format!("witness rejected: {msg}")));
    if w.tableaux.len() != id.alphabet.len() {
        return fail("one tableau per variable required".to_string());
    }
    let plactic = Plactic::new(n);
    let eval = eval_identity(&id, &w.tableaux, &plactic)?;
    if eval.equal {
        return fail("tableau evaluations coincide".to_string());
    }
    if eval.lhs != w.tableau_lhs || eval.rhs != w.tableau_rhs {
        return fail("recorded tableau evaluations are wrong".to_string());
    }
    match &w.certificate {
        Certificate::Content { letter } => {
            let s = id.alphabet.iter().position(|c| c == letter);
            let (left, right) = id.contents();
            match s {
                Some(s) if left[s] != right[s] => Ok(()),
                _ => fail(format!("'{letter}' does not have unequal content")),
            }
        }
        Certificate::Tropical { u, point, constants, matrices, matrix_lhs, matrix_rhs } => {
            let u = id.parse_word(u)?;
            if u.len() >= n {
                return fail("separating word too long".to_string());
            }
            if point.rank() != n || point.letters() != id.alphabet.len() {
                return fail("point has the wrong shape".to_string());
            }
            let rebuilt = (0..id.alphabet.len())
                .map(|s| witness_matrix(n, &u, point, constants, s))
                .collect::<Result<Vec<_>>>()?;
            if matrices.len() != rebuilt.len() {
                return fail("one matrix per variable required".to_string());
            }
            for (s, (stored, a)) in matrices.iter().zip(&rebuilt).enumerate() {
                if &stored.clone().into_matrix(n)? != a {
                    return fail(format!("matrix {s} does not match its constants"));
                }
                if let Some(v) = check_abcd(a)? {
                    return fail(format!("matrix {s} fails {v}"));
                }
                if decode_triangular(a)? != w.tableaux[s] {
                    return fail(format!("tableau {s} is not the decoding of its matrix"));
                }
                if &represent_singleton(n, &w.tableaux[s].column_reading())? != a {
                    return fail(format!("matrix {s} is not the image of its tableau"));
                }
            }
            let ut = eval_identity(&id, &rebuilt, &UpperTriangular::new(n))?;
            if ut.lhs != matrix_lhs.clone().into_matrix(n)?
                || ut.rhs != matrix_rhs.clone().into_matrix(n)?
            {
                return fail("recorded matrix evaluations are wrong".to_string());
            }
            if ut.lhs.get(0, u.len()) == ut.rhs.get(0, u.len()) {
                return fail(format!("matrix evaluations agree at (1, {})", u.len() + 1));
            }
            Ok(())
        }
    }
}
