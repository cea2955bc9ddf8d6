//! Words, semi-standard tableaux and the plactic monoid.
//!
//! Rows are numbered from the bottom: row 1 is the longest row and is stored
//! first. Entries weakly increase along rows and strictly increase reading up
//! each column.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// A word over `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(usage("rank must be at least 1"));
        }
        if let Some(&x) = letters.iter().find(|&&x| x == 0 || x > n) {
            return Err(usage(format!("letter {x} is outside [1, {n}]")));
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Word { n, letters: Vec::new() }
    }

    /// Parse either a digit string such as `"542152153123"` (ranks up to 9) or
    /// a JSON integer array such as `"[1, 10, 2]"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            let letters: Vec<usize> = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
                position: e.column().saturating_sub(1),
                message: e.to_string(),
            })?;
            return Self::new(n, letters);
        }
        if n > 9 {
            return Err(Error::Parse {
                position: 0,
                message: format!("digit strings need rank <= 9 (got {n}); use a JSON array"),
            });
        }
        let letters = trimmed
            .chars()
            .enumerate()
            .map(|(position, c)| match c.to_digit(10) {
                Some(d) if d >= 1 && (d as usize) <= n => Ok(d as usize),
                _ => Err(Error::Parse {
                    position,
                    message: format!("'{c}' is not a letter of [{n}]"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { n, letters })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.n != other.n {
            return Err(usage(format!("words of ranks {} and {} concatenated", self.n, other.n)));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { n: self.n, letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 9 {
            for x in &self.letters {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.letters)
        }
    }
}

/// Number of occurrences of each letter `1..=n`, at index `letter - 1`.
pub fn content(w: &Word) -> Vec<usize> {
    let mut counts = vec![0; w.n];
    for &x in &w.letters {
        counts[x - 1] += 1;
    }
    counts
}

/// A semi-standard Young tableau over `[n]`, rows stored bottom-up.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct Tableau {
    n: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TableauJson {
    n: usize,
    rows_bottom_up: Vec<Vec<usize>>,
}

impl TryFrom<TableauJson> for Tableau {
    type Error = Error;

    fn try_from(j: TableauJson) -> Result<Self> {
        Tableau::new(j.n, j.rows_bottom_up)
    }
}

impl From<Tableau> for TableauJson {
    fn from(t: Tableau) -> Self {
        TableauJson { n: t.n, rows_bottom_up: t.rows }
    }
}

impl Tableau {
    pub fn empty(n: usize) -> Self {
        Tableau { n, rows: Vec::new() }
    }

    /// Build from explicit rows (bottom row first), checking every tableau
    /// condition.
    pub fn new(n: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(usage("rank must be at least 1"));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidTableau(format!("row {} is empty", r + 1)));
            }
            if let Some(&x) = row.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::InvalidTableau(format!("entry {x} is outside [1, {n}]")));
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::InvalidTableau(format!("row {} is not weakly increasing", r + 1)));
            }
            if r > 0 {
                let below = &rows[r - 1];
                if row.len() > below.len() {
                    return Err(Error::InvalidTableau(format!(
                        "row {} is longer than the row beneath it",
                        r + 1
                    )));
                }
                if let Some(c) = (0..row.len()).find(|&c| row[c] <= below[c]) {
                    return Err(Error::InvalidTableau(format!(
                        "column {} does not strictly increase at row {}",
                        c + 1,
                        r + 1
                    )));
                }
            }
        }
        Ok(Tableau { n, rows })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Rows from the bottom (longest) row upwards.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Schensted row insertion of `x`, bumping upwards.
    pub fn insert(&mut self, x: usize) -> Result<()> {
        if x == 0 || x > self.n {
            return Err(usage(format!("letter {x} is outside [1, {}]", self.n)));
        }
        let mut carry = x;
        for row in &mut self.rows {
            let pos = row.partition_point(|&y| y <= carry);
            if pos == row.len() {
                row.push(carry);
                return Ok(());
            }
            carry = std::mem::replace(&mut row[pos], carry);
        }
        self.rows.push(vec![carry]);
        Ok(())
    }

    /// The tableau obtained by inserting `x`.
    pub fn row_insert(&self, x: usize) -> Result<Tableau> {
        let mut t = self.clone();
        t.insert(x)?;
        Ok(t)
    }

    pub fn from_word(w: &Word) -> Tableau {
        let mut t = Tableau::empty(w.n);
        for &x in &w.letters {
            // Letters of a `Word` are already in range.
            t.insert(x).expect("word letters lie in [1, n]");
        }
        t
    }

    /// Read down each column, columns taken left to right.
    pub fn column_reading(&self) -> Word {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut letters = Vec::with_capacity(self.size());
        for c in 0..width {
            for row in self.rows.iter().rev() {
                if let Some(&x) = row.get(c) {
                    letters.push(x);
                }
            }
        }
        Word { n: self.n, letters }
    }

    /// Read each row left to right, rows taken top to bottom.
    pub fn row_reading(&self) -> Word {
        let letters = self.rows.iter().rev().flatten().copied().collect();
        Word { n: self.n, letters }
    }

    /// Plactic product: insert the reading of `other` into `self`.
    pub fn multiply(&self, other: &Tableau) -> Result<Tableau> {
        if self.n != other.n {
            return Err(usage(format!("tableaux of ranks {} and {} multiplied", self.n, other.n)));
        }
        let mut t = self.clone();
        for &x in &other.column_reading().letters {
            t.insert(x)?;
        }
        Ok(t)
    }

    /// `i_{x,y}`: how many times `y` occurs in row `x`.
    pub fn parameters(&self) -> TabParams {
        let mut p = TabParams::zero(self.n);
        for (r, row) in self.rows.iter().enumerate() {
            for &y in row {
                p.counts[r * self.n + (y - 1)] += 1;
            }
        }
        p
    }

    pub fn from_parameters(p: &TabParams) -> Result<Tableau> {
        p.validate()?;
        let n = p.n;
        let mut rows = Vec::new();
        for x in 1..=n {
            let mut row = Vec::new();
            for y in x..=n {
                let count = usize::try_from(p.get(x, y))
                    .map_err(|_| usage(format!("i_({x},{y}) is too large to materialise")))?;
                row.extend(std::iter::repeat_n(y, count));
            }
            if row.is_empty() {
                break;
            }
            rows.push(row);
        }
        Tableau::new(n, rows)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return writeln!(f, "(empty)");
        }
        for row in self.rows.iter().rev() {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `u` and `v` represent the same plactic element.
pub fn knuth_equivalent(u: &Word, v: &Word) -> Result<bool> {
    if u.n != v.n {
        return Err(usage(format!("words of ranks {} and {} compared", u.n, v.n)));
    }
    Ok(Tableau::from_word(u) == Tableau::from_word(v))
}

/// Tableau parameters `i_{x,y}` (`1 <= x <= y <= n`): the number of `y`s in
/// row `x`. Entries with `x > y` are always zero.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TabParams {
    n: usize,
    counts: Vec<u64>,
}

impl TabParams {
    pub fn zero(n: usize) -> Self {
        TabParams { n, counts: vec![0; n * n] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        if x == 0 || y == 0 || x > self.n || y > self.n || x > y {
            return 0;
        }
        self.counts[(x - 1) * self.n + (y - 1)]
    }

    pub fn set(&mut self, x: usize, y: usize, value: u64) -> Result<()> {
        if x == 0 || x > y || y > self.n {
            return Err(usage(format!("parameter i_({x},{y}) is outside 1 <= x <= y <= {}", self.n)));
        }
        self.counts[(x - 1) * self.n + (y - 1)] = value;
        Ok(())
    }

    /// Check `Σ_{y=x}^{x+t} i_{x,y} >= Σ_{y=x+1}^{x+t+1} i_{x+1,y}` for all
    /// `1 <= x < n`, `0 <= t < n - x`, reporting the first failing `(x, t)`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for x in 1..n {
            let (mut lower, mut upper) = (0u128, 0u128);
            for t in 0..n - x {
                lower += u128::from(self.get(x, x + t));
                upper += u128::from(self.get(x + 1, x + t + 1));
                if lower < upper {
                    return Err(Error::InvalidParameters { x, t });
                }
            }
        }
        Ok(())
    }

    /// `i_{x+1,y+1} >= i_{x,y}` for all `1 <= x < y < n`.
    pub fn is_diagonally_increasing(&self) -> bool {
        (1..self.n).all(|y| (1..y).all(|x| self.get(x + 1, y + 1) >= self.get(x, y)))
    }
}
