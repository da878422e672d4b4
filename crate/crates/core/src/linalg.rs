//! Elimination over a [`FieldSpec`].
//!
//! Pivoting is always leftmost nonzero column, topmost nonzero row, so every
//! reduced form produced here is deterministic.

use crate::field::{FieldElem, FieldSpec};

pub type Vector = Vec<FieldElem>;

/// Scales `v` so that its first nonzero entry is 1. Zero vectors are returned unchanged.
pub fn normalize(f: &FieldSpec, v: &[FieldElem]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(&lead) => {
            let s = f.inv(lead).expect("nonzero");
            v.iter().map(|&x| f.mul(s, x)).collect()
        }
    }
}

pub fn is_zero(v: &[FieldElem]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn scale(f: &FieldSpec, s: FieldElem, v: &[FieldElem]) -> Vector {
    v.iter().map(|&x| f.mul(s, x)).collect()
}

/// `a + s*b`
pub fn axpy(f: &FieldSpec, a: &[FieldElem], s: FieldElem, b: &[FieldElem]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(s, y))).collect()
}

pub fn dot(f: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
    a.iter()
        .zip(b)
        .fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// An incrementally built subspace, kept fully reduced.
#[derive(Clone, Debug)]
pub struct Span {
    dim: usize,
    basis: Vec<(usize, Vector)>,
}

impl Span {
    pub fn new(dim: usize) -> Span {
        Span { dim, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, f: &FieldSpec, v: &[FieldElem]) -> Vector {
        let mut w = v.to_vec();
        for (piv, b) in &self.basis {
            let c = w[*piv];
            if !c.is_zero() {
                w = axpy(f, &w, f.neg(c), b);
            }
        }
        w
    }

    pub fn contains(&self, f: &FieldSpec, v: &[FieldElem]) -> bool {
        is_zero(&self.reduce(f, v))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, f: &FieldSpec, v: &[FieldElem]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let w = self.reduce(f, v);
        let Some(piv) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let w = normalize(f, &w);
        for (_, b) in self.basis.iter_mut() {
            let c = b[piv];
            if !c.is_zero() {
                *b = axpy(f, b, f.neg(c), &w);
            }
        }
        self.basis.push((piv, w));
        true
    }
}

pub fn rank_of(f: &FieldSpec, dim: usize, vectors: &[&[FieldElem]]) -> usize {
    let mut s = Span::new(dim);
    for v in vectors {
        s.insert(f, v);
    }
    s.rank()
}

/// Row-major matrix reduced in place to reduced row echelon form.
/// Returns the pivot columns in order.
pub fn rref(f: &FieldSpec, rows: &mut [Vector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(r) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, r);
        let s = f.inv(rows[top][col]).expect("nonzero pivot");
        rows[top] = scale(f, s, &rows[top]);
        for r in 0..rows.len() {
            if r != top {
                let c = rows[r][col];
                if !c.is_zero() {
                    rows[r] = axpy(f, &rows[r], f.neg(c), &rows[top].clone());
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

/// Inverse of a square matrix, or `None` when singular.
pub fn invert(f: &FieldSpec, m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { FieldElem::ONE } else { FieldElem::ZERO }));
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(f: &FieldSpec, m: &[Vector], v: &[FieldElem]) -> Vector {
    m.iter().map(|row| dot(f, row, v)).collect()
}

pub fn mat_mul(f: &FieldSpec, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(FieldElem::ZERO, |acc, t| f.add(acc, f.mul(row[t], b[t][j])))
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { FieldElem::ONE } else { FieldElem::ZERO }).collect())
        .collect()
}

/// Number of projective points of `F^dim`, or `None` on overflow.
pub fn projective_count(order: u64, dim: u32) -> Option<u64> {
    let top = order.checked_pow(dim)?;
    Some((top - 1) / (order - 1))
}

/// Normalized nonzero vectors of `F^dim` (first nonzero coordinate 1), in the
/// canonical order: leading position ascending, then the trailing
/// coordinates as a base-|F| integer with the earliest coordinate most
/// significant.
pub fn projective_points(f: &FieldSpec, dim: usize) -> Vec<Vector> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        let count = q.pow(free as u32);
        for idx in 0..count {
            let mut v = vec![FieldElem::ZERO; dim];
            v[lead] = FieldElem::ONE;
            let mut rest = idx;
            for pos in (lead + 1..dim).rev() {
                v[pos] = FieldElem((rest % q) as u32);
                rest /= q;
            }
            out.push(v);
        }
    }
    out
}
