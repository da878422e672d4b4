//! Lines, matchings and unstable sets relative to a spanning GF(q)-geometry
//! `R` inside a GF(q^2)-represented matroid `M`, plus constellations.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::{build_epg, build_pg_over_extension, epg_size_formula};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::iso::{matroid_isomorphic, ISO_CAP};
use crate::linalg::{self, Vector};
use crate::matroid::{Label, LabelSet, RepMatroid};
use crate::normalize::{normalize_spanning_pg, ProjectiveTransform};
use crate::pg_handle::PgHandle;

/// The unique line `L` of `R` with `e` in `cl_M(L)`.
///
/// The column of `e` is split as `v + omega v'` with `v`, `v'` GF(q)-valued;
/// `L` is the set of members in the GF(q)-span of `v` and `v'`.
pub fn line_through(r: &PgHandle, e: Label) -> Result<LabelSet> {
    let m = r.host();
    let f = m.field();
    let col = m.column(e)?;
    if linalg::is_zero(col) {
        return Err(Error::Loop(e));
    }
    let mut v = Vec::with_capacity(col.len());
    let mut w = Vec::with_capacity(col.len());
    for &x in col {
        let (a, b) = f.decompose(r.omega(), x)?;
        v.push(a);
        w.push(b);
    }
    if linalg::rank_of(f, col.len(), &[&v, &w]) < 2 {
        return Err(Error::ParallelToGeometry(e));
    }
    let sub = f.subfield_elements(r.q())?;
    let mut line = LabelSet::new();
    for &a in &sub {
        for &b in &sub {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let p: Vector = v.iter().zip(&w).map(|(&x, &y)| f.add(f.mul(a, x), f.mul(b, y))).collect();
            let l = r
                .point_of(&p)
                .ok_or_else(|| Error::Precondition(format!("element {e} is not spanned by the geometry")))?;
            line.insert(l);
        }
    }
    Ok(line)
}

/// `(q^(2k) - 1)(q^(2k+3) - 1)/(q - 1)^2`: the bound on exceptional lines.
pub fn pg_matching_bound(q: u64, k: u64) -> Result<u128> {
    const WHAT: &str = "matching bound";
    let q = q as u128;
    let e = |x: u64| -> Result<u128> {
        let x = u32::try_from(x).map_err(|_| Error::Overflow(WHAT))?;
        q.checked_pow(x).ok_or(Error::Overflow(WHAT))
    };
    let a = (e(2 * k)? - 1) / (q - 1);
    let b = (e(2 * k + 3)? - 1) / (q - 1);
    a.checked_mul(b).ok_or(Error::Overflow(WHAT))
}

fn degree_threshold(q: u64, k: u64) -> Result<u128> {
    let x = u32::try_from(2 * k + 3).map_err(|_| Error::Overflow("degree threshold"))?;
    let top = (q as u128).checked_pow(x).ok_or(Error::Overflow("degree threshold"))?;
    Ok((top - 1) / (q as u128 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchingOutcome {
    /// `k + 1` mutually skew lines.
    Matching(Vec<LabelSet>),
    /// A flat `F` of rank at most `k` meeting every line outside `exceptional`.
    Cover { flat: LabelSet, exceptional: Vec<LabelSet> },
}

fn union<'a>(sets: impl IntoIterator<Item = &'a LabelSet>) -> LabelSet {
    sets.into_iter().flatten().copied().collect()
}

fn check_lines(r: &PgHandle, rm: &RepMatroid, lines: &[LabelSet]) -> Result<()> {
    for l in lines {
        if !l.is_subset(r.members()) || l.len() as u64 != r.q() + 1 || rm.rank_of(l)? != 2 {
            return Err(Error::NotALine(format!("{l:?} is not a line of the geometry")));
        }
    }
    Ok(())
}

impl MatchingOutcome {
    /// Checks the outcome against `lines` from scratch.
    pub fn verify(&self, r: &PgHandle, lines: &[LabelSet], k: usize) -> Result<()> {
        let rm = r.restriction();
        check_lines(r, &rm, lines)?;
        let fail = |msg: String| Err(Error::InvariantViolated(msg));
        match self {
            MatchingOutcome::Matching(ls) => {
                if ls.len() != k + 1 {
                    return fail(format!("matching has {} lines, expected {}", ls.len(), k + 1));
                }
                if ls.iter().any(|l| !lines.contains(l)) {
                    return fail("matching uses a line outside the input".into());
                }
                if rm.rank_of(&union(ls))? != 2 * ls.len() {
                    return fail("matched lines are not mutually skew".into());
                }
            }
            MatchingOutcome::Cover { flat, exceptional } => {
                let rank = rm.rank_of(flat)?;
                if rank > k || rm.closure(flat)? != *flat {
                    return fail(format!("cover set is not a flat of rank at most {k}"));
                }
                if exceptional.iter().any(|l| !lines.contains(l)) {
                    return fail("exceptional line outside the input".into());
                }
                for l in lines {
                    if l.is_disjoint(flat) && !exceptional.contains(l) {
                        return fail(format!("line {l:?} misses the flat and is not exceptional"));
                    }
                }
                if exceptional.len() as u128 > pg_matching_bound(r.q(), k as u64)? {
                    return fail(format!("{} exceptional lines exceed the bound", exceptional.len()));
                }
                if rank == k && !exceptional.is_empty() {
                    return fail("flat of rank k with exceptional lines".into());
                }
            }
        }
        Ok(())
    }
}

/// Grows `start` into a matching by adding, for each centre in turn, the
/// first input line through it that leaves the closure of the centres and
/// the lines chosen so far.
fn extend_through_centres(
    rm: &RepMatroid,
    lines: &[LabelSet],
    centres: &[Label],
    start: Vec<LabelSet>,
) -> Result<Option<Vec<LabelSet>>> {
    let mut chosen = start;
    for &c in centres {
        let mut base: LabelSet = centres.iter().copied().collect();
        base.extend(union(&chosen));
        let flat = rm.closure(&base)?;
        match lines.iter().find(|l| l.contains(&c) && !l.is_subset(&flat)) {
            Some(l) => chosen.push(l.clone()),
            None => return Ok(None),
        }
    }
    Ok(Some(chosen))
}

/// Either `k + 1` mutually skew lines from `lines`, or a flat of rank at
/// most `k` meeting all but a bounded set of them.
pub fn find_line_matching(r: &PgHandle, lines: &[LabelSet], k: usize) -> Result<MatchingOutcome> {
    let rm = r.restriction();
    let mut uniq: Vec<LabelSet> = Vec::new();
    for l in lines {
        if !uniq.contains(l) {
            uniq.push(l.clone());
        }
    }
    let lines = uniq;
    check_lines(r, &rm, &lines)?;
    let threshold = degree_threshold(r.q(), k as u64)?;
    let mut degree: BTreeMap<Label, u128> = BTreeMap::new();
    for l in &lines {
        for &p in l {
            *degree.entry(p).or_default() += 1;
        }
    }
    let mut centres: Vec<Label> = Vec::new();
    for (&e, &d) in &degree {
        if d > threshold {
            let mut cand = centres.clone();
            cand.push(e);
            if rm.rank_of(&cand)? == cand.len() {
                centres = cand;
            }
        }
    }
    let outcome = if centres.len() > k {
        let sub = &centres[..=k];
        let ls = extend_through_centres(&rm, &lines, sub, Vec::new())?
            .ok_or_else(|| Error::InvariantViolated("high-degree centres did not extend to a matching".into()))?;
        MatchingOutcome::Matching(ls)
    } else {
        let flat = rm.closure(&centres)?;
        let skew: Vec<LabelSet> = lines.iter().filter(|l| l.is_disjoint(&flat)).cloned().collect();
        let mut result = None;
        if centres.len() == k {
            if let Some(first) = skew.first() {
                let ls = extend_through_centres(&rm, &lines, &centres, vec![first.clone()])?
                    .ok_or_else(|| Error::InvariantViolated("skew line did not extend to a matching".into()))?;
                result = Some(MatchingOutcome::Matching(ls));
            }
        }
        if result.is_none() {
            let mut greedy: Vec<LabelSet> = Vec::new();
            for l in &skew {
                let mut cand = greedy.clone();
                cand.push(l.clone());
                if rm.rank_of(&union(&cand))? == 2 * cand.len() {
                    greedy = cand;
                }
            }
            if greedy.len() > k {
                greedy.truncate(k + 1);
                result = Some(MatchingOutcome::Matching(greedy));
            }
        }
        result.unwrap_or(MatchingOutcome::Cover { flat, exceptional: skew })
    };
    outcome.verify(r, &lines, k)?;
    Ok(outcome)
}

/// An independent set of non-geometry points whose carrier lines in `R`
/// form a matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnstableSet {
    pub elements: Vec<Label>,
    pub line_map: BTreeMap<Label, LabelSet>,
}

impl UnstableSet {
    pub fn from_elements(r: &PgHandle, elements: Vec<Label>) -> Result<UnstableSet> {
        let line_map = elements
            .iter()
            .map(|&e| Ok((e, line_through(r, e)?)))
            .collect::<Result<_>>()?;
        let x = UnstableSet { elements, line_map };
        x.validate(r)?;
        Ok(x)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn validate(&self, r: &PgHandle) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidUnstableSet(msg));
        let m = r.host();
        if self.line_map.len() != self.elements.len() {
            return bad("line map does not match the elements".into());
        }
        for &e in &self.elements {
            if r.members().contains(&e) {
                return bad(format!("{e} is a point of the geometry"));
            }
            let line = match line_through(r, e) {
                Ok(l) => l,
                Err(err) => return bad(format!("{e}: {err}")),
            };
            if self.line_map.get(&e) != Some(&line) {
                return bad(format!("{e} is recorded on the wrong line"));
            }
        }
        if !m.is_independent(&self.elements)? {
            return bad("elements are dependent".into());
        }
        let rm = r.restriction();
        if rm.rank_of(&union(self.line_map.values()))? != 2 * self.elements.len() {
            return bad("carrier lines are not a matching".into());
        }
        Ok(())
    }
}

/// Point counts certifying the cover outcome of [`find_unstable_set`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub contract: LabelSet,
    /// `eps(M / C)`
    pub contracted_points: usize,
    /// `eps(R / C)`
    pub geometry_points: usize,
    /// `(q^2 + 1)` times the matching bound.
    pub slack: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnstableOutcome {
    Unstable(UnstableSet),
    Cover(CoverCertificate),
}

/// Either an `R`-unstable set of size `k + 1`, or a flat `C` of `R` of rank
/// at most `k` with `eps(M / C) <= eps(R / C) + (q^2 + 1) f(q, k)`.
pub fn find_unstable_set(r: &PgHandle, k: usize) -> Result<UnstableOutcome> {
    if !r.is_spanning() {
        return Err(Error::Precondition("the geometry does not span".into()));
    }
    let m = r.host();
    let mut enriched: BTreeMap<LabelSet, Vec<Label>> = BTreeMap::new();
    for (i, &e) in m.labels().iter().enumerate() {
        let col = m.column_at(i);
        if r.members().contains(&e) || linalg::is_zero(col) || r.point_of(col).is_some() {
            continue;
        }
        enriched.entry(line_through(r, e)?).or_default().push(e);
    }
    let lines: Vec<LabelSet> = enriched.keys().cloned().collect();
    match find_line_matching(r, &lines, k)? {
        MatchingOutcome::Matching(ls) => {
            let elements = ls.iter().map(|l| enriched[l][0]).collect();
            Ok(UnstableOutcome::Unstable(UnstableSet::from_elements(r, elements)?))
        }
        MatchingOutcome::Cover { flat, .. } => {
            let q = r.q() as u128;
            let slack = pg_matching_bound(r.q(), k as u64)?
                .checked_mul(q * q + 1)
                .ok_or(Error::Overflow("unstable-set slack"))?;
            let contracted_points = m.contract(&flat)?.point_count();
            let geometry_points = r.restriction().contract(&flat)?.point_count();
            if contracted_points as u128 > geometry_points as u128 + slack {
                return Err(Error::InvariantViolated(format!(
                    "eps(M/C) = {contracted_points} exceeds eps(R/C) + {slack} = {}",
                    geometry_points as u128 + slack
                )));
            }
            Ok(UnstableOutcome::Cover(CoverCertificate { contract: flat, contracted_points, geometry_points, slack }))
        }
    }
}

/// `si((M / X) | E(R))`. With `n' = r(M)` and `k = |X|` this is
/// PG^(k)(n'-k-1, q); the point count is always checked against the
/// formula, and the isomorphism whenever the result is small enough to test.
pub fn contract_unstable(r: &PgHandle, x: &UnstableSet) -> Result<RepMatroid> {
    x.validate(r)?;
    if !r.is_spanning() {
        return Err(Error::Precondition("the geometry does not span".into()));
    }
    let k = x.len();
    let n_prime = r.rank();
    if n_prime < 2 * k {
        return Err(Error::Precondition(format!("rank {n_prime} is below 2k = {}", 2 * k)));
    }
    let out = r.host().contract(&x.elements)?.restrict(r.members())?.simplify().0;
    let expected = epg_size_formula((n_prime - k) as u64, r.q(), k as u64)?;
    if out.len() as u128 != expected {
        return Err(Error::InvariantViolated(format!("contraction has {} points, expected {expected}", out.len())));
    }
    if out.len() <= ISO_CAP && n_prime > k {
        let target = build_epg(n_prime - k - 1, r.q(), k)?;
        if !matroid_isomorphic(&out, &target)? {
            return Err(Error::InvariantViolated("contraction is not the extended geometry".into()));
        }
    }
    Ok(out)
}

const INSTANCE_RETRIES: u32 = 1000;

/// PG(n'-1, q) inside GF(q^2) plus one point on each of `k` random mutually
/// skew lines, scrambled by a random projective transformation and then
/// normalized (when `n' >= 3`). Returns the geometry and the added points.
pub fn random_unstable_instance(n_prime: usize, q: u64, k: usize, seed: u64) -> Result<(PgHandle, UnstableSet)> {
    if n_prime < 2 * k || n_prime == 0 {
        return Err(Error::InvalidParameter(format!("n' = {n_prime} must be positive and at least 2k")));
    }
    let pg = build_pg_over_extension(n_prime - 1, q)?;
    let f = pg.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = pg.labels().to_vec();
    let mut chosen: Vec<Label> = Vec::new();
    let mut tries = 0;
    while chosen.len() < 2 * k {
        tries += 1;
        if tries > INSTANCE_RETRIES {
            return Err(Error::RetryBudgetExhausted(INSTANCE_RETRIES));
        }
        let a = labels[rng.gen_range(0..labels.len())];
        let b = labels[rng.gen_range(0..labels.len())];
        let mut cand = chosen.clone();
        cand.extend([a, b]);
        if pg.rank_of(&cand)? == cand.len() {
            chosen = cand;
        }
    }
    let outside: Vec<FieldElem> = f.nonzero_elements().filter(|&x| !f.in_subfield(x, q)).collect();
    let base = pg.max_label().map_or(0, |l| l + 1);
    let extra: Vec<(Label, Vector)> = chosen
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            let lambda = outside[rng.gen_range(0..outside.len())];
            let v = linalg::axpy(&f, pg.column(pair[0]).unwrap(), lambda, pg.column(pair[1]).unwrap());
            (base + i as Label, v)
        })
        .collect();
    let host = pg.with_columns(extra)?;
    let members = pg.label_set();
    let handle = if n_prime >= 3 {
        let scrambled = ProjectiveTransform::random(&f, &host, &mut rng).apply(&host)?;
        normalize_spanning_pg(&scrambled, &members, q)?.2
    } else {
        PgHandle::certify(host, members, q)?
    };
    let x = UnstableSet::from_elements(&handle, (0..k as Label).map(|i| base + i).collect())?;
    Ok((handle, x))
}

/// An independent set of centres, each with an independent set of partners
/// spanning lines of at least `ell + 2` points, and the points of those lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstellationCert {
    pub centres: Vec<Label>,
    pub stars: BTreeMap<Label, Vec<Label>>,
    /// The restriction `K`: centres plus every point on the star lines.
    pub support: LabelSet,
}

impl ConstellationCert {
    pub fn verify(&self, m: &RepMatroid, s: usize, ell: usize, j: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolated(msg));
        if self.centres.len() != s || !m.is_independent(&self.centres)? {
            return fail(format!("centres are not an independent {s}-set"));
        }
        let k = m.restrict(&self.support)?;
        for e in &self.centres {
            let star = self.stars.get(e).ok_or_else(|| Error::InvariantViolated(format!("no star at {e}")))?;
            if star.len() != j || !k.is_independent(star)? {
                return fail(format!("star at {e} is not an independent {j}-set"));
            }
            for f in star {
                let line = k.closure([e, f])?;
                if line.len() < ell + 2 {
                    return fail(format!("line {e} {f} has {} points in K", line.len()));
                }
            }
        }
        if k.rank() > s * (j + 1) {
            return fail(format!("K has rank {} above {}", k.rank(), s * (j + 1)));
        }
        Ok(())
    }
}

/// An `(s, ell, j)`-constellation restriction of the simple matroid `m`.
///
/// A point is a usable centre exactly when the points on its lines of at
/// least `ell + 2` points have rank at least `j`, and usable centres may be
/// combined freely, so a greedy choice in label order decides existence.
pub fn find_constellation(m: &RepMatroid, s: usize, ell: usize, j: usize) -> Result<Option<ConstellationCert>> {
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    let ls = m.line_structure()?;
    let n = m.len();
    let mut centres: Vec<usize> = Vec::new();
    let mut stars: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    let mut support: Vec<usize> = Vec::new();
    for e in 0..n {
        if centres.len() == s {
            break;
        }
        let mut cand = centres.clone();
        cand.push(e);
        if m.rank_of_positions(&cand) != cand.len() {
            continue;
        }
        let mut star: Vec<usize> = Vec::new();
        let mut star_lines: Vec<usize> = Vec::new();
        for f in 0..n {
            if star.len() == j {
                break;
            }
            if f == e {
                continue;
            }
            let id = ls.line_of(e, f);
            if ls.lines[id].len() < ell + 2 {
                continue;
            }
            let mut s2 = star.clone();
            s2.push(f);
            if m.rank_of_positions(&s2) == s2.len() {
                star = s2;
                star_lines.push(id);
            }
        }
        if star.len() < j {
            continue;
        }
        centres = cand;
        support.push(e);
        for id in star_lines {
            support.extend(&ls.lines[id]);
        }
        stars.insert(m.label_at(e), star.iter().map(|&p| m.label_at(p)).collect());
    }
    if centres.len() < s {
        return Ok(None);
    }
    let cert = ConstellationCert {
        centres: centres.iter().map(|&p| m.label_at(p)).collect(),
        stars,
        support: m.labels_of(&support),
    };
    cert.verify(m, s, ell, j)?;
    Ok(Some(cert))
}

/// `eps(M) - eps(R)`, after checking that every listed set spans a line of
/// `M` with more than `q + 1` points.
pub fn distinct_points_excess(r: &PgHandle, long_lines: &[LabelSet]) -> Result<i64> {
    let m = r.host();
    for l in long_lines {
        if m.rank_of(l)? != 2 {
            return Err(Error::NotALine(format!("{l:?} does not have rank 2")));
        }
        let pts = m.restrict(&m.closure(l)?)?.point_count();
        if pts as u64 <= r.q() + 1 {
            return Err(Error::NotALine(format!("{l:?} spans a line of only {pts} points")));
        }
    }
    Ok(m.point_count() as i64 - r.restriction().point_count() as i64)
}
