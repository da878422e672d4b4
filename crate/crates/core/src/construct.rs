//! Projective geometries, the extended geometries PG^(k)(n-1, q), and their
//! point-count formulas.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldElem, FieldSpec};
use crate::linalg::{self, Vector};
use crate::matroid::{Label, LabelSet, RepMatroid};

/// Parameters of the vector set `Z(n-1, q, k)`: vectors whose first `k`
/// entries range over GF(q^2) and whose remaining `n-k` entries range over GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZSetSpec {
    pub n: usize,
    pub q: u64,
    pub k: usize,
}

impl ZSetSpec {
    pub fn new(n: usize, q: u64, k: usize) -> Result<ZSetSpec> {
        if k > n {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
        }
        prime_power(q)?;
        Ok(ZSetSpec { n, q, k })
    }

    /// `q^(2k) * q^(n-k)`
    pub fn size(&self) -> Option<u64> {
        self.q.checked_pow((self.n + self.k) as u32)
    }

    /// Every vector of the set over `host = GF(q^2)`, first coordinate varying slowest.
    pub fn vectors(&self, host: &FieldSpec) -> Result<Vec<Vector>> {
        let sub = host.subfield_elements(self.q)?;
        let big: Vec<FieldElem> = host.elements().collect();
        let radices: Vec<&[FieldElem]> = (0..self.n)
            .map(|i| if i < self.k { big.as_slice() } else { sub.as_slice() })
            .collect();
        let total = self.size().ok_or(Error::Overflow("Z-set size"))?;
        if total > 1 << 24 {
            return Err(Error::OverCap { what: "Z-set enumeration", size: total, cap: 1 << 24 });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; self.n];
        for _ in 0..total {
            out.push(idx.iter().zip(&radices).map(|(&i, r)| r[i]).collect());
            for pos in (0..self.n).rev() {
                idx[pos] += 1;
                if idx[pos] < radices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
        Ok(out)
    }
}

fn field_of_order(q: u64) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::of_order(q)?))
}

/// The host field GF(q^2).
pub fn quadratic_extension(q: u64) -> Result<Arc<FieldSpec>> {
    let (p, e) = prime_power(q)?;
    Ok(Arc::new(FieldSpec::new(p, 2 * e)?))
}

/// PG(n-1, q) over GF(q): one column per 1-dimensional subspace, scaled so
/// the first nonzero coordinate is 1.
pub fn build_pg(n_minus_1: usize, q: u64) -> Result<RepMatroid> {
    let f = field_of_order(q)?;
    build_pg_in(f, n_minus_1 + 1)
}

/// PG(n-1, |F|) over the given field.
pub fn build_pg_in(f: Arc<FieldSpec>, n: usize) -> Result<RepMatroid> {
    if n == 0 {
        return Err(Error::InvalidParameter("PG needs rank at least 1".into()));
    }
    let count = linalg::projective_count(f.order() as u64, n as u32).ok_or(Error::Overflow("PG point count"))?;
    if count > 1 << 22 {
        return Err(Error::OverCap { what: "projective geometry", size: count, cap: 1 << 22 });
    }
    let pts = linalg::projective_points(&f, n);
    RepMatroid::from_columns(f, n, pts)
}

/// PG(n-1, q) with GF(q)-valued columns inside GF(q^2), via the canonical embedding.
pub fn build_pg_over_extension(n_minus_1: usize, q: u64) -> Result<RepMatroid> {
    build_pg(n_minus_1, q)?.embed_into(quadratic_extension(q)?)
}

/// PG^(k)(n-1, q): the simplification of the matroid of all vectors of
/// `Z(n-1, q, k)` over GF(q^2). Labels are positions in the Z-set
/// enumeration; each point keeps the least label of its parallel class.
pub fn build_epg(n_minus_1: usize, q: u64, k: usize) -> Result<RepMatroid> {
    let n = n_minus_1 + 1;
    let z = ZSetSpec::new(n, q, k)?;
    let host = quadratic_extension(q)?;
    let vectors = z.vectors(&host)?;
    let full = RepMatroid::from_columns(host, n, vectors)?;
    Ok(full.simplify().0)
}

/// The points of a simple matroid over GF(q^2) whose columns are parallel to
/// a GF(q)-valued vector.
pub fn subfield_points(m: &RepMatroid, q: u64) -> Result<LabelSet> {
    let f = m.field();
    f.subfield_elements(q)?;
    let mut out = LabelSet::new();
    for (i, &l) in m.labels().iter().enumerate() {
        let v = linalg::normalize(f, m.column_at(i));
        if !linalg::is_zero(&v) && v.iter().all(|&x| f.in_subfield(x, q)) {
            out.insert(l);
        }
    }
    Ok(out)
}

fn checked_pow(base: u128, exp: u32, what: &'static str) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

/// `(q^(n+k) - 1)/(q - 1) - q (q^(2k) - 1)/(q^2 - 1)`, exactly.
pub fn epg_size_formula(n: u64, q: u64, k: u64) -> Result<u128> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q}")));
    }
    const WHAT: &str = "extended projective geometry size";
    let q = q as u128;
    let exp = u32::try_from(n + k).map_err(|_| Error::Overflow(WHAT))?;
    let a = (checked_pow(q, exp, WHAT)? - 1) / (q - 1);
    let q2 = q.checked_mul(q).ok_or(Error::Overflow(WHAT))?;
    let b = (checked_pow(q2, k as u32, WHAT)? - 1) / (q2 - 1);
    let b = b.checked_mul(q).ok_or(Error::Overflow(WHAT))?;
    Ok(a - b)
}

/// The growth rate `h(n)` of the class of k-element GF(q^2)-projections of
/// GF(q)-geometries. Same value as [`epg_size_formula`].
pub fn growth_rate_formula(n: u64, q: u64, k: u64) -> Result<u128> {
    epg_size_formula(n, q, k)
}

/// `(ell^r - 1)/(ell - 1)`: the maximum point count of a rank-r matroid
/// with no `U(2, ell+2)`-minor.
pub fn kung_bound(ell: u64, r: u64) -> Result<u128> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!("ell = {ell} must be at least 2")));
    }
    let exp = u32::try_from(r).map_err(|_| Error::Overflow("Kung bound"))?;
    Ok((checked_pow(ell as u128, exp, "Kung bound")? - 1) / (ell as u128 - 1))
}

/// The simplified matroid of all vectors of `host^n` whose first entry lies
/// in `{a*omega + b : a, b in GF(q)}` and whose other entries lie in GF(q).
pub fn build_extension_rep(host: Arc<FieldSpec>, omega: FieldElem, n: usize) -> Result<RepMatroid> {
    let q = host.half_order()? as u64;
    if !host.contains(omega) {
        return Err(Error::InvalidElement { value: omega.0, order: host.order() });
    }
    if host.in_subfield(omega, q) {
        return Err(Error::OmegaInSubfield(q as u32));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let sub = host.subfield_elements(q)?;
    let first: Vec<FieldElem> = sub
        .iter()
        .flat_map(|&a| sub.iter().map(move |&b| (a, b)))
        .map(|(a, b)| host.add(host.mul(a, omega), b))
        .collect();
    let mut vectors = Vec::new();
    let tail = (sub.len() as u64).pow(n as u32 - 1);
    for &x in &first {
        for idx in 0..tail {
            let mut v = vec![x];
            let mut rest = idx;
            let mut t = vec![FieldElem::ZERO; n - 1];
            for pos in (0..n - 1).rev() {
                t[pos] = sub[(rest % sub.len() as u64) as usize];
                rest /= sub.len() as u64;
            }
            v.extend(t);
            vectors.push(v);
        }
    }
    Ok(RepMatroid::from_columns(host, n, vectors)?.simplify().0)
}

/// A member of the class of k-element projections, with its provenance.
#[derive(Clone, Debug)]
pub struct ProjectionMember {
    /// `si(M' / C)`.
    pub matroid: RepMatroid,
    /// `M'`: PG(n'-1, q) inside GF(q^2) plus the columns of `C`.
    pub host: RepMatroid,
    pub contracted: LabelSet,
}

const PROJECTION_RETRIES: u32 = 64;

/// Adds `k` random GF(q^2) columns to PG(n'-1, q), retrying until they are
/// independent, and returns the simplified contraction by them.
pub fn random_projection_member(n_prime: usize, q: u64, k: usize, seed: u64) -> Result<ProjectionMember> {
    if n_prime <= k {
        return Err(Error::InvalidParameter(format!("n' = {n_prime} must exceed k = {k}")));
    }
    let pg = build_pg_over_extension(n_prime - 1, q)?;
    let host = pg.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = pg.max_label().map_or(0, |l| l + 1);
    for _ in 0..PROJECTION_RETRIES {
        let extra: Vec<(Label, Vector)> = (0..k)
            .map(|i| {
                let v = (0..n_prime).map(|_| FieldElem(rng.gen_range(0..host.order()))).collect();
                (base + i as Label, v)
            })
            .collect();
        let m = pg.with_columns(extra)?;
        let c: LabelSet = (0..k as Label).map(|i| base + i).collect();
        if m.rank_of(&c)? == k {
            let matroid = m.contract(&c)?.simplify().0;
            return Ok(ProjectionMember { matroid, host: m, contracted: c });
        }
    }
    Err(Error::RetryBudgetExhausted(PROJECTION_RETRIES))
}

/// The extremal member: contracting `e_i + omega e_{k+i}` (`i < k`) from
/// PG(n'-1, q) gives PG^(k)(n'-k-1, q). Requires `n' >= 2k`.
pub fn extremal_projection_member(n_prime: usize, q: u64, k: usize) -> Result<ProjectionMember> {
    if n_prime < 2 * k || n_prime == 0 {
        return Err(Error::InvalidParameter(format!("n' = {n_prime} must be at least 2k = {}", 2 * k)));
    }
    let pg = build_pg_over_extension(n_prime - 1, q)?;
    let host = pg.field().clone();
    let omega = host.pick_omega(q)?;
    let base = pg.max_label().map_or(0, |l| l + 1);
    let extra: Vec<(Label, Vector)> = (0..k)
        .map(|i| {
            let mut v = vec![FieldElem::ZERO; n_prime];
            v[i] = FieldElem::ONE;
            v[k + i] = omega;
            (base + i as Label, v)
        })
        .collect();
    let m = pg.with_columns(extra)?;
    let c: LabelSet = (0..k as Label).map(|i| base + i).collect();
    let matroid = m.contract(&c)?.simplify().0;
    Ok(ProjectionMember { matroid, host: m, contracted: c })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg_examples() {
        let pg = build_pg(2, 2).unwrap();
        assert_eq!((pg.len(), pg.rank()), (7, 3));
        assert_eq!(build_pg(0, 7).unwrap().len(), 1);
        assert_eq!(build_pg(1, 3).unwrap().len(), 4);
        assert!(build_pg(2, 6).is_err());
    }

    #[test]
    fn epg_examples() {
        let m = build_epg(2, 2, 1).unwrap();
        assert_eq!((m.len(), m.rank()), (13, 3));
        let m = build_epg(1, 2, 1).unwrap();
        assert_eq!((m.len(), m.rank()), (5, 2));
        assert_eq!(build_epg(3, 2, 0).unwrap().len(), 15);
        assert!(build_epg(1, 2, 3).is_err());
    }

    #[test]
    fn z_set_parallel_classes() {
        // 16 vectors: zero, 12 singleton classes and one class of 3 (the GF(4)* multiples of e1)
        let host = quadratic_extension(2).unwrap();
        let z = ZSetSpec::new(3, 2, 1).unwrap();
        let vs = z.vectors(&host).unwrap();
        assert_eq!(vs.len(), 16);
        let full = RepMatroid::from_columns(host, 3, vs).unwrap();
        let (_, map) = full.simplify();
        assert_eq!(map.loops.len(), 1);
        let mut sizes: Vec<usize> = map
            .representative
            .values()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|&r| map.class_of(r).len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, [vec![1; 12], vec![3]].concat());
    }

    #[test]
    fn formula_values() {
        assert_eq!(epg_size_formula(3, 2, 0).unwrap(), 7);
        assert_eq!(epg_size_formula(3, 2, 1).unwrap(), 13);
        assert_eq!(epg_size_formula(2, 2, 1).unwrap(), 5);
        assert_eq!(growth_rate_formula(4, 2, 1).unwrap(), 29);
        assert_eq!(growth_rate_formula(5, 2, 1).unwrap(), 61);
        assert_eq!(growth_rate_formula(3, 3, 1).unwrap(), 37);
        assert_eq!(kung_bound(2, 3).unwrap(), 7);
        assert_eq!(kung_bound(5, 0).unwrap(), 0);
        assert_eq!(kung_bound(4, 2).unwrap(), 5);
        assert!(kung_bound(1, 3).is_err());
        assert_eq!(epg_size_formula(200, 3, 1), Err(Error::Overflow("extended projective geometry size")));
    }

    #[test]
    fn extension_rep_rejects_subfield_omega() {
        let host = quadratic_extension(3).unwrap();
        assert_eq!(build_extension_rep(host.clone(), FieldElem(1), 3), Err(Error::OmegaInSubfield(3)));
        let w = host.pick_omega(3).unwrap();
        let m = build_extension_rep(host.clone(), w, 3).unwrap();
        assert_eq!(m.len() as u128, epg_size_formula(3, 3, 1).unwrap());
        // the first-entry set {a*w + b} is all of GF(9)
        let sub = host.subfield_elements(3).unwrap();
        let mut firsts: Vec<FieldElem> = sub
            .iter()
            .flat_map(|&a| sub.iter().map(move |&b| (a, b)))
            .map(|(a, b)| host.add(host.mul(a, w), b))
            .collect();
        firsts.sort();
        firsts.dedup();
        assert_eq!(firsts.len(), 9);
    }

    #[test]
    fn projection_members() {
        let m = random_projection_member(3, 2, 0, 1).unwrap();
        assert_eq!(m.matroid.len(), 7);
        let m = random_projection_member(4, 2, 1, 5).unwrap();
        assert_eq!(m.matroid.rank(), 3);
        let x = extremal_projection_member(4, 2, 1).unwrap();
        assert_eq!(x.matroid.len() as u128, epg_size_formula(3, 2, 1).unwrap());
        assert!(random_projection_member(2, 2, 2, 0).is_err());
    }

    #[test]
    fn subfield_points_of_epg() {
        let m = build_epg(3, 2, 1).unwrap();
        let r = subfield_points(&m, 2).unwrap();
        assert_eq!(r.len(), 15);
        assert_eq!(m.restrict(&r).unwrap().is_projective_geometry(2).unwrap(), Some(4));
    }
}
