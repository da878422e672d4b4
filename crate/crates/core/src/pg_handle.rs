//! A distinguished GF(q)-represented projective-geometry restriction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{self, Vector};
use crate::matroid::{Label, LabelSet, RepMatroid};

/// A restriction `R = M | members` of a matroid over GF(q^2), certified at
/// construction to be a projective geometry over GF(q) whose columns have
/// every entry in GF(q).
#[derive(Clone, Debug)]
pub struct PgHandle {
    host: RepMatroid,
    members: LabelSet,
    q: u64,
    rank: usize,
    omega: FieldElem,
    point_of: HashMap<Vector, Label>,
}

impl PgHandle {
    pub fn certify(host: RepMatroid, members: LabelSet, q: u64) -> Result<PgHandle> {
        let f = host.field().clone();
        if f.half_order()? as u64 != q {
            return Err(Error::NotASubfield { s: q, order: f.order() });
        }
        let r = host.restrict(&members)?;
        if !r.is_simple() {
            return Err(Error::NotProjectiveGeometry("the members are not simple".into()));
        }
        let rank = r
            .is_projective_geometry(q)?
            .ok_or_else(|| Error::NotProjectiveGeometry(format!("{} members do not form PG(n-1, {q})", r.len())))?;
        let mut point_of = HashMap::new();
        for (i, &l) in r.labels().iter().enumerate() {
            let col = r.column_at(i);
            if let Some(x) = col.iter().find(|&&x| !f.in_subfield(x, q)) {
                return Err(Error::NotProjectiveGeometry(format!("member {l} has entry {x} outside GF({q})")));
            }
            point_of.insert(linalg::normalize(&f, col), l);
        }
        let omega = f.pick_omega(q)?;
        Ok(PgHandle { host, members, q, rank, omega, point_of })
    }

    pub fn host(&self) -> &RepMatroid {
        &self.host
    }

    pub fn members(&self) -> &LabelSet {
        &self.members
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `n` for `R = PG(n-1, q)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The element used to split GF(q^2) as `GF(q) + omega GF(q)`.
    pub fn omega(&self) -> FieldElem {
        self.omega
    }

    pub fn is_spanning(&self) -> bool {
        self.rank == self.host.rank()
    }

    pub fn restriction(&self) -> RepMatroid {
        self.host.restrict(&self.members).expect("members are host labels")
    }

    /// The member parallel to `v`, if any.
    pub fn point_of(&self, v: &[FieldElem]) -> Option<Label> {
        self.point_of.get(&linalg::normalize(self.host.field(), v)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_epg, build_pg, build_pg_over_extension, subfield_points};

    #[test]
    fn certifies_embedded_geometry() {
        let m = build_pg_over_extension(2, 2).unwrap();
        let h = PgHandle::certify(m.clone(), m.label_set(), 2).unwrap();
        assert_eq!(h.rank(), 3);
        assert!(h.is_spanning());
        assert_eq!(h.restriction().len(), 7);
    }

    #[test]
    fn certifies_canonical_geometry_of_extended_geometry() {
        let m = build_epg(3, 2, 1).unwrap();
        let pts = subfield_points(&m, 2).unwrap();
        let h = PgHandle::certify(m, pts, 2).unwrap();
        assert_eq!((h.rank(), h.members().len()), (4, 15));
    }

    #[test]
    fn rejects_non_geometries() {
        let m = build_epg(2, 2, 1).unwrap();
        let all = m.label_set();
        assert!(matches!(PgHandle::certify(m, all, 2), Err(Error::NotProjectiveGeometry(_))));
        let pg = build_pg(2, 2).unwrap();
        assert!(PgHandle::certify(pg.clone(), pg.label_set(), 2).is_err());
    }

    #[test]
    fn rejects_scaled_members() {
        let m = build_pg_over_extension(2, 2).unwrap();
        let f = m.field().clone();
        let omega = f.pick_omega(2).unwrap();
        let cols: Vec<Vector> = m.columns().iter().map(|c| linalg::scale(&f, omega, c)).collect();
        let scaled = RepMatroid::new(f, 3, cols, m.labels().to_vec()).unwrap();
        assert!(matches!(
            PgHandle::certify(scaled.clone(), scaled.label_set(), 2),
            Err(Error::NotProjectiveGeometry(_))
        ));
    }
}
