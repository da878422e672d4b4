//! Matrix-represented matroids.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{self, Span, Vector};

/// Ground-set identifier. Labels are ordered numerically; "least label"
/// always refers to this order.
pub type Label = u32;
pub type LabelSet = BTreeSet<Label>;

/// The matroid of the columns of a matrix over a finite field.
///
/// Loops and parallel columns are allowed. Values are immutable: minors
/// return new matroids and keep the labels of surviving columns.
#[derive(Clone, Debug)]
pub struct RepMatroid {
    field: Arc<FieldSpec>,
    rows: usize,
    columns: Vec<Vector>,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl PartialEq for RepMatroid {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.columns == other.columns
            && self.labels == other.labels
    }
}

impl Eq for RepMatroid {}

/// Parallel-class structure of a matroid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplificationMap {
    /// Each nonloop label mapped to the least label of its parallel class.
    pub representative: BTreeMap<Label, Label>,
    pub loops: LabelSet,
}

impl SimplificationMap {
    pub fn point_count(&self) -> usize {
        self.representative
            .iter()
            .filter(|(l, r)| l == r)
            .count()
    }

    pub fn class_of(&self, rep: Label) -> LabelSet {
        self.representative
            .iter()
            .filter(|(_, &r)| r == rep)
            .map(|(&l, _)| l)
            .collect()
    }
}

/// All lines of a simple matroid, indexed by column position.
#[derive(Clone, Debug)]
pub(crate) struct LineStructure {
    pub lines: Vec<Vec<usize>>,
    pair_line: Vec<u32>,
    m: usize,
}

impl LineStructure {
    pub fn line_of(&self, a: usize, b: usize) -> usize {
        debug_assert_ne!(a, b);
        self.pair_line[a * self.m + b] as usize
    }
}

/// Cap on the number of points for which all lines are materialized.
const LINE_CAP: usize = 4096;

impl RepMatroid {
    pub fn new(
        field: Arc<FieldSpec>,
        rows: usize,
        columns: Vec<Vector>,
        labels: Vec<Label>,
    ) -> Result<RepMatroid> {
        if columns.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns but {} labels",
                columns.len(),
                labels.len()
            )));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, (col, &l)) in columns.iter().zip(&labels).enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {l} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            if let Some(bad) = col.iter().find(|x| !field.contains(**x)) {
                return Err(Error::InvalidElement { value: bad.0, order: field.order() });
            }
            if index.insert(l, i).is_some() {
                return Err(Error::DuplicateLabel(l));
            }
        }
        Ok(RepMatroid { field, rows, columns, labels, index })
    }

    /// Columns labelled `0..m` in order.
    pub fn from_columns(field: Arc<FieldSpec>, rows: usize, columns: Vec<Vector>) -> Result<RepMatroid> {
        let labels = (0..columns.len() as Label).collect();
        RepMatroid::new(field, rows, columns, labels)
    }

    fn rebuild(&self, rows: usize, columns: Vec<Vector>, labels: Vec<Label>) -> RepMatroid {
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        RepMatroid { field: self.field.clone(), rows, columns, labels, index }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_set(&self) -> LabelSet {
        self.labels.iter().copied().collect()
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn column_at(&self, pos: usize) -> &[FieldElem] {
        &self.columns[pos]
    }

    pub fn label_at(&self, pos: usize) -> Label {
        self.labels[pos]
    }

    pub fn contains_label(&self, l: Label) -> bool {
        self.index.contains_key(&l)
    }

    pub fn position(&self, l: Label) -> Result<usize> {
        self.index.get(&l).copied().ok_or(Error::UnknownLabel(l))
    }

    pub fn column(&self, l: Label) -> Result<&[FieldElem]> {
        Ok(&self.columns[self.position(l)?])
    }

    pub fn positions<'a>(&self, s: impl IntoIterator<Item = &'a Label>) -> Result<Vec<usize>> {
        s.into_iter().map(|&l| self.position(l)).collect()
    }

    pub fn labels_of(&self, positions: &[usize]) -> LabelSet {
        positions.iter().map(|&i| self.labels[i]).collect()
    }

    pub(crate) fn span_of_positions(&self, positions: &[usize]) -> Span {
        let mut s = Span::new(self.rows);
        for &i in positions {
            s.insert(&self.field, &self.columns[i]);
        }
        s
    }

    pub fn rank_of_positions(&self, positions: &[usize]) -> usize {
        self.span_of_positions(positions).rank()
    }

    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.len()).collect();
        self.rank_of_positions(&all)
    }

    pub fn rank_of<'a>(&self, s: impl IntoIterator<Item = &'a Label>) -> Result<usize> {
        Ok(self.rank_of_positions(&self.positions(s)?))
    }

    pub fn is_independent<'a>(&self, s: impl IntoIterator<Item = &'a Label>) -> Result<bool> {
        let pos = self.positions(s)?;
        let mut uniq = pos.clone();
        uniq.sort_unstable();
        uniq.dedup();
        Ok(uniq.len() == pos.len() && self.rank_of_positions(&pos) == pos.len())
    }

    pub fn is_loop(&self, l: Label) -> Result<bool> {
        Ok(linalg::is_zero(self.column(l)?))
    }

    pub(crate) fn closure_positions(&self, positions: &[usize]) -> Vec<usize> {
        let span = self.span_of_positions(positions);
        (0..self.len())
            .filter(|&i| span.contains(&self.field, &self.columns[i]))
            .collect()
    }

    /// Labels whose columns lie in the span of `s`.
    pub fn closure<'a>(&self, s: impl IntoIterator<Item = &'a Label>) -> Result<LabelSet> {
        let pos = self.positions(s)?;
        Ok(self.labels_of(&self.closure_positions(&pos)))
    }

    /// `M / C`: eliminate on the columns of `C` in order, then drop the pivot
    /// rows and the columns of `C`.
    pub fn contract<'a>(&self, c: impl IntoIterator<Item = &'a Label>) -> Result<RepMatroid> {
        let cpos: BTreeSet<usize> = self.positions(c)?.into_iter().collect();
        let f = &self.field;
        let mut cols = self.columns.clone();
        let mut pivot_rows = Vec::new();
        for &cp in &cpos {
            let col = &cols[cp];
            let Some(r) = (0..self.rows).find(|r| !pivot_rows.contains(r) && !col[*r].is_zero()) else {
                continue;
            };
            let pivot_col = cols[cp].clone();
            let inv = f.inv(pivot_col[r])?;
            // Row operation: for each other row t, row_t -= (pivot_col[t]/pivot) * row_r.
            for col in cols.iter_mut() {
                let x = col[r];
                if x.is_zero() {
                    continue;
                }
                let xr = f.mul(x, inv);
                for t in 0..self.rows {
                    if t != r && !pivot_col[t].is_zero() {
                        col[t] = f.sub(col[t], f.mul(pivot_col[t], xr));
                    }
                }
            }
            pivot_rows.push(r);
        }
        let keep_rows: Vec<usize> = (0..self.rows).filter(|r| !pivot_rows.contains(r)).collect();
        let mut columns = Vec::new();
        let mut labels = Vec::new();
        for (i, col) in cols.iter().enumerate() {
            if cpos.contains(&i) {
                continue;
            }
            columns.push(keep_rows.iter().map(|&r| col[r]).collect());
            labels.push(self.labels[i]);
        }
        Ok(self.rebuild(keep_rows.len(), columns, labels))
    }

    pub fn delete<'a>(&self, d: impl IntoIterator<Item = &'a Label>) -> Result<RepMatroid> {
        let dpos: BTreeSet<usize> = self.positions(d)?.into_iter().collect();
        let keep: Vec<usize> = (0..self.len()).filter(|i| !dpos.contains(i)).collect();
        Ok(self.restrict_positions(&keep))
    }

    /// `M | S`, keeping the original column order.
    pub fn restrict<'a>(&self, s: impl IntoIterator<Item = &'a Label>) -> Result<RepMatroid> {
        let mut pos = self.positions(s)?;
        pos.sort_unstable();
        pos.dedup();
        Ok(self.restrict_positions(&pos))
    }

    pub(crate) fn restrict_positions(&self, pos: &[usize]) -> RepMatroid {
        let columns = pos.iter().map(|&i| self.columns[i].clone()).collect();
        let labels = pos.iter().map(|&i| self.labels[i]).collect();
        self.rebuild(self.rows, columns, labels)
    }

    /// One column per parallel class (the least label's own column), no loops.
    pub fn simplify(&self) -> (RepMatroid, SimplificationMap) {
        let mut classes: HashMap<Vector, Label> = HashMap::new();
        let mut map = SimplificationMap::default();
        for (col, &l) in self.columns.iter().zip(&self.labels) {
            if linalg::is_zero(col) {
                map.loops.insert(l);
                continue;
            }
            let key = linalg::normalize(&self.field, col);
            let rep = classes.entry(key).or_insert(l);
            if l < *rep {
                *rep = l;
            }
        }
        for (col, &l) in self.columns.iter().zip(&self.labels) {
            if !linalg::is_zero(col) {
                let rep = classes[&linalg::normalize(&self.field, col)];
                map.representative.insert(l, rep);
            }
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| map.representative.get(&self.labels[i]) == Some(&self.labels[i]))
            .collect();
        (self.restrict_positions(&keep), map)
    }

    /// `ε(M)`: the number of points.
    pub fn point_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        for col in &self.columns {
            if !linalg::is_zero(col) {
                seen.insert(linalg::normalize(&self.field, col));
            }
        }
        seen.len()
    }

    pub fn is_simple(&self) -> bool {
        self.point_count() == self.len()
    }

    fn require_simple(&self) -> Result<()> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(Error::NotSimple)
        }
    }

    pub(crate) fn normalized_index(&self) -> HashMap<Vector, usize> {
        self.columns
            .iter()
            .enumerate()
            .map(|(i, c)| (linalg::normalize(&self.field, c), i))
            .collect()
    }

    pub(crate) fn line_structure(&self) -> Result<LineStructure> {
        self.require_simple()?;
        let m = self.len();
        if m > LINE_CAP {
            return Err(Error::OverCap { what: "line enumeration", size: m as u64, cap: LINE_CAP as u64 });
        }
        let f = &self.field;
        let lookup = self.normalized_index();
        let mut pair_line = vec![u32::MAX; m * m];
        let mut lines = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if pair_line[i * m + j] != u32::MAX {
                    continue;
                }
                let (vi, vj) = (&self.columns[i], &self.columns[j]);
                let mut pts = vec![i];
                for t in f.elements() {
                    let w = linalg::normalize(f, &linalg::axpy(f, vj, t, vi));
                    if let Some(&k) = lookup.get(&w) {
                        pts.push(k);
                    }
                }
                pts.sort_unstable();
                pts.dedup();
                let id = lines.len() as u32;
                for &a in &pts {
                    for &b in &pts {
                        if a != b {
                            pair_line[a * m + b] = id;
                        }
                    }
                }
                lines.push(pts);
            }
        }
        Ok(LineStructure { lines, pair_line, m })
    }

    /// All rank-2 flats of a simple matroid, each as its full point set.
    pub fn lines(&self) -> Result<Vec<LabelSet>> {
        let ls = self.line_structure()?;
        Ok(ls.lines.iter().map(|l| self.labels_of(l)).collect())
    }

    /// `Some(n)` when this simple matroid is PG(n-1, q): it has
    /// `(q^n - 1)/(q - 1)` points and every line has exactly `q + 1` points.
    pub fn is_projective_geometry(&self, q: u64) -> Result<Option<usize>> {
        self.require_simple()?;
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q = {q}")));
        }
        let n = self.rank();
        let expected = linalg::projective_count(q, n as u32);
        if expected != Some(self.len() as u64) {
            return Ok(None);
        }
        if n >= 2 {
            let ls = self.line_structure()?;
            if ls.lines.iter().any(|l| l.len() as u64 != q + 1) {
                return Ok(None);
            }
        }
        Ok(Some(n))
    }

    /// An equivalent representation with exactly `rank` rows.
    pub fn reduced_rows(&self) -> RepMatroid {
        let m = self.len();
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|r| (0..m).map(|c| self.columns[c][r]).collect())
            .collect();
        let piv = linalg::rref(&self.field, &mut rows);
        rows.truncate(piv.len());
        let columns = (0..m).map(|c| rows.iter().map(|row| row[c]).collect()).collect();
        self.rebuild(piv.len(), columns, self.labels.clone())
    }

    /// The same matrix read over an extension field through the canonical embedding.
    pub fn embed_into(&self, big: Arc<FieldSpec>) -> Result<RepMatroid> {
        let img = big.embedding_of(&self.field)?;
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|x| img[x.0 as usize]).collect())
            .collect();
        RepMatroid::new(big, self.rows, columns, self.labels.clone())
    }

    pub fn relabel(&self, labels: Vec<Label>) -> Result<RepMatroid> {
        RepMatroid::new(self.field.clone(), self.rows, self.columns.clone(), labels)
    }

    /// Appends columns with fresh labels.
    pub fn with_columns(&self, extra: Vec<(Label, Vector)>) -> Result<RepMatroid> {
        let mut columns = self.columns.clone();
        let mut labels = self.labels.clone();
        for (l, c) in extra {
            columns.push(c);
            labels.push(l);
        }
        RepMatroid::new(self.field.clone(), self.rows, columns, labels)
    }

    pub fn max_label(&self) -> Option<Label> {
        self.labels.iter().copied().max()
    }
}
