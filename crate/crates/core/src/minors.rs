//! Exhaustive search for projective-geometry restrictions and minors.
//!
//! A PG(n-1, Q) restriction is grown one rank at a time from its least
//! point `a`: given a sub-geometry `S` of rank `i`, pick the least new point
//! `x` outside `cl(S)` and, for every `p` in `S`, `Q - 1` further points of
//! the line through `x` and `p`. Every PG(n-1, Q) restriction arises this
//! way, so the search is complete. Sub-geometries that failed to extend are
//! memoized.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::linalg::{self, Span};
use crate::matroid::{LabelSet, LineStructure, RepMatroid};

/// Largest ground set accepted by the searches.
pub const MINOR_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    /// An independent set `C` of the input.
    pub contract: LabelSet,
    /// Labels of `si(M / C)` forming the PG restriction.
    pub restriction: LabelSet,
}

struct RestrictionSearch<'a> {
    m: &'a RepMatroid,
    lines: LineStructure,
    n: usize,
    q: usize,
    failed: HashSet<Vec<usize>>,
    member: Vec<bool>,
}

impl RestrictionSearch<'_> {
    fn line_meets_members(&self, a: usize, b: usize) -> bool {
        self.lines.lines[self.lines.line_of(a, b)].iter().any(|&p| self.member[p])
    }

    /// Whether every line spanned by `s` through one of `fresh` has exactly `q + 1` points of `s`.
    fn lines_are_full(&self, s: &[usize], fresh: &[usize]) -> bool {
        let mut in_s = vec![false; self.m.len()];
        for &p in s {
            in_s[p] = true;
        }
        let mut seen = HashSet::new();
        for &u in fresh {
            for &v in s {
                if u == v {
                    continue;
                }
                let id = self.lines.line_of(u, v);
                if seen.insert(id) && self.lines.lines[id].iter().filter(|&&p| in_s[p]).count() != self.q + 1 {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&mut self, s: Vec<usize>, span: &Span, first: usize) -> Option<Vec<usize>> {
        if span.rank() == self.n {
            return Some(s);
        }
        if self.failed.contains(&s) {
            return None;
        }
        let f = self.m.field().clone();
        for x in first + 1..self.m.len() {
            if span.contains(&f, self.m.column_at(x)) {
                continue;
            }
            for &p in &s {
                self.member[p] = true;
            }
            let mut fresh = vec![x];
            let found = self.choose(&s, 0, x, &mut fresh);
            for &p in &s {
                self.member[p] = false;
            }
            if let Some(fresh) = found {
                let mut next = s.clone();
                next.extend_from_slice(&fresh);
                next.sort_unstable();
                let mut nspan = span.clone();
                nspan.insert(&f, self.m.column_at(x));
                if let Some(done) = self.extend(next, &nspan, first) {
                    return Some(done);
                }
            }
        }
        self.failed.insert(s);
        None
    }

    /// Picks `q - 1` points on each line `x p`, `p` in `s`, in turn.
    /// Returns the first choice that completes into a full sub-geometry.
    fn choose(&mut self, s: &[usize], idx: usize, x: usize, fresh: &mut Vec<usize>) -> Option<Vec<usize>> {
        if idx == s.len() {
            let mut all = s.to_vec();
            all.extend_from_slice(fresh);
            return self.lines_are_full(&all, fresh).then(|| fresh.clone());
        }
        let p = s[idx];
        let line = &self.lines.lines[self.lines.line_of(x, p)];
        let cands: Vec<usize> = line.iter().copied().filter(|&y| y > x && y != p).collect();
        if cands.len() < self.q - 1 {
            return None;
        }
        let mut pick = Vec::with_capacity(self.q - 1);
        self.combos(s, idx, x, &cands, 0, &mut pick, fresh)
    }

    #[allow(clippy::too_many_arguments)]
    fn combos(
        &mut self,
        s: &[usize],
        idx: usize,
        x: usize,
        cands: &[usize],
        start: usize,
        pick: &mut Vec<usize>,
        fresh: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if pick.len() == self.q - 1 {
            let before = fresh.len();
            fresh.extend_from_slice(pick);
            let out = self.choose(s, idx + 1, x, fresh);
            fresh.truncate(before);
            return out;
        }
        for i in start..cands.len() {
            if cands.len() - i < self.q - 1 - pick.len() {
                break;
            }
            let y = cands[i];
            // every new line must meet the current sub-geometry
            if fresh[1..].iter().any(|&z| !self.line_meets_members(y, z)) {
                continue;
            }
            pick.push(y);
            if let Some(out) = self.combos(s, idx, x, cands, i + 1, pick, fresh) {
                return Some(out);
            }
            pick.pop();
        }
        None
    }
}

fn target_size(n: usize, q: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("target rank must be positive".into()));
    }
    prime_power(q)?;
    linalg::projective_count(q, n as u32).ok_or(Error::Overflow("target geometry size"))
}

/// A set of labels on which `m` restricts to PG(n-1, q), if one exists.
pub fn find_pg_restriction(m: &RepMatroid, n: usize, q: u64) -> Result<Option<LabelSet>> {
    let size = target_size(n, q)?;
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    if m.len() > MINOR_CAP {
        return Err(Error::OverCap { what: "restriction search", size: m.len() as u64, cap: MINOR_CAP as u64 });
    }
    if (m.len() as u64) < size || m.rank() < n {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(m.labels_of(&[0])));
    }
    let mut search = RestrictionSearch {
        m,
        lines: m.line_structure()?,
        n,
        q: q as usize,
        failed: HashSet::new(),
        member: vec![false; m.len()],
    };
    let f = m.field().clone();
    for a in 0..m.len() {
        if ((m.len() - a) as u64) < size {
            break;
        }
        let mut span = Span::new(m.rows());
        span.insert(&f, m.column_at(a));
        if let Some(found) = search.extend(vec![a], &span, a) {
            return Ok(Some(m.labels_of(&found)));
        }
    }
    Ok(None)
}

/// Independent sets of size at most `max_size`, one per spanned flat, in
/// order of size and then of discovery.
fn contraction_candidates(m: &RepMatroid, max_size: usize) -> Vec<Vec<usize>> {
    let f = m.field().clone();
    let mut out = vec![Vec::new()];
    let mut level: Vec<(Vec<usize>, Span)> = vec![(Vec::new(), Span::new(m.rows()))];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for _ in 0..max_size.min(m.rank()) {
        let mut next = Vec::new();
        for (c, span) in &level {
            for x in 0..m.len() {
                if span.contains(&f, m.column_at(x)) {
                    continue;
                }
                let mut nspan = span.clone();
                nspan.insert(&f, m.column_at(x));
                let key: Vec<usize> = (0..m.len()).filter(|&i| nspan.contains(&f, m.column_at(i))).collect();
                if seen.insert(key) {
                    let mut nc = c.clone();
                    nc.push(x);
                    out.push(nc.clone());
                    next.push((nc, nspan));
                }
            }
        }
        level = next;
    }
    out
}

fn check_witness(m: &RepMatroid, n: usize, q: u64, w: &MinorWitness) -> Result<bool> {
    if !m.is_independent(&w.contract)? {
        return Ok(false);
    }
    let r = m.contract(&w.contract)?.restrict(&w.restriction)?;
    Ok(r.is_simple() && r.len() == w.restriction.len() && r.is_projective_geometry(q)? == Some(n))
}

/// Whether some contraction of `m` by at most `max_contract` elements has a
/// PG(n-1, q) restriction after simplification. The witness is re-verified
/// before it is returned.
pub fn has_pg_minor(m: &RepMatroid, n: usize, q: u64, max_contract: usize) -> Result<Option<MinorWitness>> {
    let size = target_size(n, q)?;
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    if m.len() > MINOR_CAP {
        return Err(Error::OverCap { what: "minor search", size: m.len() as u64, cap: MINOR_CAP as u64 });
    }
    let rank = m.rank();
    let cands: Vec<Vec<usize>> = contraction_candidates(m, max_contract)
        .into_iter()
        .filter(|c| rank - c.len() >= n)
        .collect();
    let found = cands
        .par_iter()
        .map(|c| -> Result<Option<MinorWitness>> {
            let contract = m.labels_of(c);
            let (si, _) = m.contract(&contract)?.simplify();
            if (si.len() as u64) < size {
                return Ok(None);
            }
            Ok(find_pg_restriction(&si, n, q)?.map(|restriction| MinorWitness { contract, restriction }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(None),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!(),
        Some(Ok(Some(w))) => {
            if !check_witness(m, n, q, &w)? {
                return Err(Error::InvariantViolated(format!("minor witness {w:?} failed re-verification")));
            }
            Ok(Some(w))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_epg, build_pg};

    #[test]
    fn whole_geometry() {
        let m = build_pg(2, 4).unwrap();
        assert_eq!(find_pg_restriction(&m, 3, 4).unwrap(), Some(m.label_set()));
    }

    #[test]
    fn count_prune() {
        let m = build_epg(2, 2, 1).unwrap();
        assert_eq!(find_pg_restriction(&m, 3, 4).unwrap(), None);
    }

    #[test]
    fn five_point_line() {
        let m = build_epg(1, 2, 1).unwrap();
        let found = find_pg_restriction(&m, 2, 4).unwrap().unwrap();
        assert_eq!(found.len(), 5);
    }

    #[test]
    fn fano_planes_in_pg32() {
        let m = build_pg(3, 2).unwrap();
        let s = find_pg_restriction(&m, 3, 2).unwrap().unwrap();
        let r = m.restrict(&s).unwrap();
        assert_eq!(r.is_projective_geometry(2).unwrap(), Some(3));
        assert_eq!(find_pg_restriction(&m, 3, 3).unwrap(), None);
    }

    #[test]
    fn no_non_fano_inside_pg23() {
        // every 7-point subset of rank 3 in PG(2,3) fails: PG(2,2) is not ternary
        let m = build_pg(2, 3).unwrap();
        assert_eq!(find_pg_restriction(&m, 3, 2).unwrap(), None);
    }

    #[test]
    fn minor_by_contraction() {
        let m = build_pg(3, 2).unwrap();
        let w = has_pg_minor(&m, 3, 2, 1).unwrap().unwrap();
        assert!(w.contract.is_empty());
        let w = has_pg_minor(&m, 2, 2, 2).unwrap().unwrap();
        assert!(w.contract.is_empty());
    }

    #[test]
    fn minor_needs_contraction() {
        // AG(2,3) has only 3-point lines; contracting a point leaves its 4 parallel classes
        let pg = build_pg(2, 3).unwrap();
        let line = pg.lines().unwrap().remove(0);
        let ag = pg.delete(&line).unwrap();
        assert_eq!(ag.len(), 9);
        assert_eq!(has_pg_minor(&ag, 2, 3, 0).unwrap(), None);
        let w = has_pg_minor(&ag, 2, 3, 1).unwrap().unwrap();
        assert_eq!((w.contract.len(), w.restriction.len()), (1, 4));
    }

    #[test]
    fn extended_geometry_has_no_big_plane() {
        let m = build_epg(3, 2, 1).unwrap();
        assert_eq!(has_pg_minor(&m, 3, 4, 1).unwrap(), None);
        assert!(has_pg_minor(&m, 2, 4, 2).unwrap().is_some());
    }

    #[test]
    fn candidates_are_one_per_flat() {
        let m = build_pg(2, 2).unwrap();
        let c = contraction_candidates(&m, 2);
        // empty set, 7 points, 7 lines
        assert_eq!(c.len(), 15);
    }
}
