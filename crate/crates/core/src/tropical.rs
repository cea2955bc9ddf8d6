//! Exact max-plus arithmetic over `Z ∪ {-∞}` and square matrices over it.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{usage, Error, Result};
use crate::subset::Subset;

/// An element of the integer tropical semiring.
///
/// `NegInf` is declared first so the derived order puts it below every finite
/// value, making `⊕` plain `max`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Trop {
    NegInf,
    Fin(i64),
}

impl Trop {
    pub const ZERO: Trop = Trop::NegInf;
    pub const ONE: Trop = Trop::Fin(0);

    /// Tropical sum `max(a, b)`.
    pub fn oplus(self, other: Trop) -> Trop {
        self.max(other)
    }

    /// Tropical product `a + b`, absorbing `-∞`; integer overflow is an error.
    pub fn otimes(self, other: Trop) -> Result<Trop> {
        match (self, other) {
            (Trop::Fin(a), Trop::Fin(b)) => a.checked_add(b).map(Trop::Fin).ok_or(Error::Overflow),
            _ => Ok(Trop::NegInf),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Trop::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Trop::Fin(a) => Some(a),
            Trop::NegInf => None,
        }
    }
}

impl From<i64> for Trop {
    fn from(a: i64) -> Self {
        Trop::Fin(a)
    }
}

impl From<Option<i64>> for Trop {
    fn from(a: Option<i64>) -> Self {
        a.map_or(Trop::NegInf, Trop::Fin)
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::NegInf => write!(f, "-inf"),
            Trop::Fin(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for Trop {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.finite().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Trop {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Option::<i64>::deserialize(deserializer)?.into())
    }
}

/// Both semiring operations at once: `(a ⊕ b, a ⊗ b)`.
pub fn trop_scalar_ops(a: Trop, b: Trop) -> Result<(Trop, Trop)> {
    Ok((a.oplus(b), a.otimes(b)?))
}

/// A row/column label: a vertex of `[n]` or a subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Label {
    Vertex(usize),
    Set(Subset),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Vertex(i) => write!(f, "{i}"),
            Label::Set(s) => write!(f, "{s}"),
        }
    }
}

/// A square matrix over [`Trop`] with labelled rows and columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropMatrix {
    labels: Vec<Label>,
    entries: Vec<Trop>,
}

impl TropMatrix {
    /// All entries `-∞`.
    pub fn neg_inf(labels: Vec<Label>) -> Result<Self> {
        check_labels(&labels)?;
        let d = labels.len();
        Ok(TropMatrix { labels, entries: vec![Trop::NegInf; d * d] })
    }

    /// `0` on the diagonal and `-∞` elsewhere.
    pub fn identity(labels: Vec<Label>) -> Result<Self> {
        let mut m = Self::neg_inf(labels)?;
        for i in 0..m.dim() {
            m.set(i, i, Trop::ONE);
        }
        Ok(m)
    }

    pub fn from_rows(labels: Vec<Label>, rows: Vec<Vec<Trop>>) -> Result<Self> {
        check_labels(&labels)?;
        let d = labels.len();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(usage(format!("matrix rows do not form a {d}x{d} square")));
        }
        Ok(TropMatrix { labels, entries: rows.into_iter().flatten().collect() })
    }

    /// Labels `1..=n`.
    pub fn vertex_labels(n: usize) -> Vec<Label> {
        (1..=n).map(Label::Vertex).collect()
    }

    /// An `n x n` matrix indexed by `[n]` from plain rows.
    pub fn square(rows: Vec<Vec<Trop>>) -> Result<Self> {
        Self::from_rows(Self::vertex_labels(rows.len()), rows)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> Trop {
        self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Trop) {
        let d = self.dim();
        self.entries[i * d + j] = value;
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Entry addressed by labels.
    pub fn at(&self, row: &Label, col: &Label) -> Result<Trop> {
        let i = self.position(row).ok_or_else(|| usage(format!("no row labelled {row}")))?;
        let j = self.position(col).ok_or_else(|| usage(format!("no column labelled {col}")))?;
        Ok(self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<Trop>> {
        self.entries.chunks(self.dim().max(1)).take(self.dim()).map(<[Trop]>::to_vec).collect()
    }

    /// Tropical product; both factors must carry identical label lists.
    pub fn mul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.labels != other.labels {
            return Err(usage("matrix index lists differ"));
        }
        let d = self.dim();
        let mut out = vec![Trop::NegInf; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Trop::NegInf {
                    continue;
                }
                for j in 0..d {
                    let b = other.entries[k * d + j];
                    if b == Trop::NegInf {
                        continue;
                    }
                    let c = a.otimes(b)?;
                    let slot = &mut out[i * d + j];
                    if c > *slot {
                        *slot = c;
                    }
                }
            }
        }
        Ok(TropMatrix { labels: self.labels.clone(), entries: out })
    }

    /// All entries below the diagonal are `-∞`.
    pub fn is_upper_triangular(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.get(i, j) == Trop::NegInf))
    }

    /// Every finite entry sits at a position `(p, q)` with `leq(p, q)`.
    pub fn is_chain_structured<F>(&self, leq: F) -> bool
    where
        F: Fn(&Label, &Label) -> bool,
    {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| !self.get(i, j).is_finite() || leq(&self.labels[i], &self.labels[j]))
        })
    }

    /// The principal submatrix on the given row/column positions.
    pub fn submatrix(&self, positions: &[usize]) -> Result<TropMatrix> {
        let labels = positions.iter().map(|&p| self.labels[p]).collect();
        let rows = positions
            .iter()
            .map(|&i| positions.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        Self::from_rows(labels, rows)
    }

    /// Re-label the matrix, keeping entries.
    pub fn relabel(&self, labels: Vec<Label>) -> Result<TropMatrix> {
        if labels.len() != self.dim() {
            return Err(usage("relabelling changes the dimension"));
        }
        check_labels(&labels)?;
        Ok(TropMatrix { labels, entries: self.entries.clone() })
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                Trop::NegInf => ".".to_string(),
                Trop::Fin(a) => a.to_string(),
            })
            .collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        let label_width = self.labels.iter().map(|l| l.to_string().len()).max().unwrap_or(0);
        for (i, label) in self.labels.iter().enumerate() {
            write!(f, "{:>label_width$} |", label.to_string())?;
            for cell in &cells[i * self.dim()..(i + 1) * self.dim()] {
                write!(f, " {cell:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// JSON form of a label: an integer vertex or an ascending subset array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelJson {
    Vertex(usize),
    Set(Vec<usize>),
}

/// JSON form of a matrix: `{"labels": [...], "rows": [[...], ...]}` with
/// `null` for `-∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<LabelJson>,
    pub rows: Vec<Vec<Trop>>,
}

impl MatrixJson {
    /// Rebuild the matrix; subset labels are read as subsets of `[n]`.
    pub fn into_matrix(self, n: usize) -> Result<TropMatrix> {
        let labels = self
            .labels
            .into_iter()
            .map(|l| match l {
                LabelJson::Vertex(i) => Ok(Label::Vertex(i)),
                LabelJson::Set(xs) => Subset::new(n, &xs).map(Label::Set),
            })
            .collect::<Result<Vec<_>>>()?;
        TropMatrix::from_rows(labels, self.rows)
    }
}

impl From<&TropMatrix> for MatrixJson {
    fn from(m: &TropMatrix) -> Self {
        let labels = m
            .labels
            .iter()
            .map(|l| match l {
                Label::Vertex(i) => LabelJson::Vertex(*i),
                Label::Set(s) => LabelJson::Set(s.members()),
            })
            .collect();
        MatrixJson { labels, rows: m.rows() }
    }
}

impl Serialize for TropMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(serializer)
    }
}

fn check_labels(labels: &[Label]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(usage(format!("duplicate label {l}")));
        }
    }
    Ok(())
}
