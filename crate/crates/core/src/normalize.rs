//! Bringing a GF(q^2)-representation of a spanning PG(n-1, q) restriction
//! into a form where the geometry's columns are GF(q)-valued.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::linalg::{self, Span, Vector};
use crate::matroid::{Label, LabelSet, RepMatroid};
use crate::pg_handle::PgHandle;

/// `A -> row_op * A * diag(column_scalars)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveTransform {
    pub row_op: Vec<Vector>,
    pub column_scalars: BTreeMap<Label, FieldElem>,
}

impl ProjectiveTransform {
    pub fn identity(m: &RepMatroid) -> ProjectiveTransform {
        ProjectiveTransform {
            row_op: linalg::identity(m.rows()),
            column_scalars: m.labels().iter().map(|&l| (l, FieldElem::ONE)).collect(),
        }
    }

    /// An invertible row operation and nonzero column scalars drawn from `rng`.
    pub fn random(field: &FieldSpec, m: &RepMatroid, rng: &mut impl Rng) -> ProjectiveTransform {
        let r = m.rows();
        let q = field.order();
        let row_op = loop {
            let cand: Vec<Vector> = (0..r)
                .map(|_| (0..r).map(|_| FieldElem(rng.gen_range(0..q))).collect())
                .collect();
            if linalg::invert(field, &cand).is_some() {
                break cand;
            }
        };
        let column_scalars = m.labels().iter().map(|&l| (l, FieldElem(rng.gen_range(1..q)))).collect();
        ProjectiveTransform { row_op, column_scalars }
    }

    pub fn apply(&self, m: &RepMatroid) -> Result<RepMatroid> {
        let f = m.field();
        if self.row_op.len() != m.rows() || self.row_op.iter().any(|row| row.len() != m.rows()) {
            return Err(Error::DimensionMismatch(format!(
                "row operation is not {0}x{0}",
                m.rows()
            )));
        }
        if linalg::invert(f, &self.row_op).is_none() {
            return Err(Error::InvalidParameter("row operation is singular".into()));
        }
        let mut columns = Vec::with_capacity(m.len());
        for (i, &l) in m.labels().iter().enumerate() {
            let s = *self.column_scalars.get(&l).ok_or(Error::UnknownLabel(l))?;
            if s.is_zero() {
                return Err(Error::InvalidParameter(format!("zero scalar on column {l}")));
            }
            columns.push(linalg::scale(f, s, &linalg::mat_vec(f, &self.row_op, m.column_at(i))));
        }
        RepMatroid::new(f.clone(), m.rows(), columns, m.labels().to_vec())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ProjectiveTransform, f: &FieldSpec) -> ProjectiveTransform {
        let row_op = linalg::mat_mul(f, &next.row_op, &self.row_op);
        let column_scalars = self
            .column_scalars
            .iter()
            .map(|(&l, &s)| (l, f.mul(s, next.column_scalars.get(&l).copied().unwrap_or(FieldElem::ONE))))
            .collect();
        ProjectiveTransform { row_op, column_scalars }
    }
}

fn least_basis(m: &RepMatroid, r: &LabelSet) -> Result<Vec<usize>> {
    let f = m.field();
    let mut span = Span::new(m.rows());
    let mut basis = Vec::new();
    for &l in r {
        let p = m.position(l)?;
        if span.insert(f, m.column_at(p)) {
            basis.push(p);
        }
    }
    Ok(basis)
}

/// Row operation `T` with `T * A_B = [I; 0]` for the full-column-rank block `A_B`.
fn to_identity(f: &FieldSpec, m: &RepMatroid, basis: &[usize]) -> Vec<Vector> {
    let rows = m.rows();
    let n = basis.len();
    let mut aug: Vec<Vector> = (0..rows)
        .map(|i| {
            let mut row: Vector = basis.iter().map(|&b| m.column_at(b)[i]).collect();
            row.extend((0..rows).map(|j| if i == j { FieldElem::ONE } else { FieldElem::ZERO }));
            row
        })
        .collect();
    let piv = linalg::rref(f, &mut aug);
    debug_assert_eq!(&piv[..n], &(0..n).collect::<Vec<_>>()[..]);
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Normalizes a representation of `M` in which `M | r` is a spanning
/// PG(n-1, q), `n >= 3`, over the host GF(q^2).
///
/// 1. take the least-labeled basis `B` of `r`;
/// 2. row-reduce so that `B` becomes the identity;
/// 3. scale rows so the least-labeled member with no zero coordinate becomes all-ones;
/// 4. scale every column so its first nonzero entry is 1;
/// 5. check that every member entry now lies in GF(q).
pub fn normalize_spanning_pg(m: &RepMatroid, r: &LabelSet, q: u64) -> Result<(RepMatroid, ProjectiveTransform, PgHandle)> {
    let f: Arc<FieldSpec> = m.field().clone();
    if f.half_order()? as u64 != q {
        return Err(Error::NotASubfield { s: q, order: f.order() });
    }
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    let rank = m.rank();
    if rank < 3 {
        return Err(Error::Precondition(format!("rank {rank} is below 3")));
    }
    let restricted = m.restrict(r)?;
    if !restricted.is_simple() || restricted.is_projective_geometry(q)? != Some(rank) {
        return Err(Error::NotProjectiveGeometry(format!("the given set is not a spanning PG({}, {q})", rank - 1)));
    }

    let basis = least_basis(m, r)?;
    let t = to_identity(&f, m, &basis);
    let ones = r
        .iter()
        .map(|&l| m.position(l))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|p| linalg::mat_vec(&f, &t, m.column_at(p)))
        .find(|v| v[..rank].iter().all(|x| !x.is_zero()))
        .ok_or_else(|| Error::InvariantViolated("no member with all coordinates nonzero".into()))?;
    let mut d = linalg::identity(m.rows());
    for i in 0..rank {
        d[i][i] = f.inv(ones[i])?;
    }
    let row_op = linalg::mat_mul(&f, &d, &t);
    let mut column_scalars = BTreeMap::new();
    for (i, &l) in m.labels().iter().enumerate() {
        let v = linalg::mat_vec(&f, &row_op, m.column_at(i));
        let lead = v.iter().find(|x| !x.is_zero()).copied().ok_or(Error::Loop(l))?;
        column_scalars.insert(l, f.inv(lead)?);
    }
    let transform = ProjectiveTransform { row_op, column_scalars };
    let out = transform.apply(m)?;
    for &l in r {
        let col = out.column(l)?;
        if col.iter().any(|&x| !f.in_subfield(x, q)) {
            return Err(Error::InvariantViolated(format!("member {l} is not GF({q})-valued after normalization")));
        }
    }
    let handle = PgHandle::certify(out.clone(), r.clone(), q)?;
    Ok((out, transform, handle))
}
