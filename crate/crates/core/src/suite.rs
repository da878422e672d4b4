//! Seeded property suites behind `epg verify`.
//!
//! Every record compares an expected value, derived from a closed formula,
//! an independent oracle, or a trivial case, against the computed one.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{
    build_epg, build_extension_rep, build_pg, build_pg_over_extension, epg_size_formula, extremal_projection_member,
    growth_rate_formula, kung_bound, random_projection_member, subfield_points, ZSetSpec,
};
use crate::density::{
    find_skew_dense_subset, is_weakly_round, rank_threshold, skew_density_bound, weakly_round_restriction,
    DensityFunction,
};
use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::geometry::{
    contract_unstable, find_constellation, find_line_matching, random_unstable_instance,
    UnstableSet,
};
use crate::iso::{matroid_isomorphic, ISO_CAP};
use crate::matroid::{Label, LabelSet, RepMatroid};
use crate::minors::has_pg_minor;
use crate::normalize::{normalize_spanning_pg, ProjectiveTransform};
use crate::pg_handle::PgHandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Construct,
    Density,
    Fields,
    Geometry,
    Minors,
    Normalize,
}

impl Suite {
    /// Sorted by name.
    pub const ALL: [Suite; 6] =
        [Suite::Construct, Suite::Density, Suite::Fields, Suite::Geometry, Suite::Minors, Suite::Normalize];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Construct => "construct",
            Suite::Density => "density",
            Suite::Fields => "fields",
            Suite::Geometry => "geometry",
            Suite::Minors => "minors",
            Suite::Normalize => "normalize",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Oracle,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: Suite,
    pub name: String,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub pass: bool,
    pub records: Vec<CheckRecord>,
}

impl RunReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> RunReport {
        let mut out = self.clone();
        for r in &mut out.records {
            r.elapsed_ms = 0;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Instances whose vector enumeration would exceed this are skipped.
    pub max_elements: usize,
    pub max_contract: usize,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> SuiteConfig {
        SuiteConfig { seed, max_elements: 60_000, max_contract: 1 }
    }
}

/// Runs `suites` concurrently; records come back grouped by suite name.
pub fn run(suites: &[Suite], cfg: &SuiteConfig, command: &str) -> RunReport {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let records: Vec<CheckRecord> = suites.par_iter().map(|&s| run_suite(s, cfg)).collect::<Vec<_>>().concat();
    let pass = records.iter().all(|r| r.pass);
    RunReport { command: command.to_string(), seed: cfg.seed, pass, records }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut rec = Recorder { suite, cfg: *cfg, records: Vec::new() };
    match suite {
        Suite::Fields => fields(&mut rec),
        Suite::Construct => construct(&mut rec),
        Suite::Geometry => geometry(&mut rec),
        Suite::Density => density(&mut rec),
        Suite::Normalize => normalize(&mut rec),
        Suite::Minors => minors(&mut rec),
    }
    rec.records
}

struct Recorder {
    suite: Suite,
    cfg: SuiteConfig,
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }

    /// `f` returns `(expected, actual)`; an error fails the record.
    fn compare<T: fmt::Display>(
        &mut self,
        name: &str,
        parameters: String,
        provenance: Provenance,
        f: impl FnOnce() -> Result<(T, T)>,
    ) {
        let start = Instant::now();
        let (expected, actual, pass) = match f() {
            Ok((e, a)) => {
                let (e, a) = (e.to_string(), a.to_string());
                let pass = e == a;
                (e, a, pass)
            }
            Err(err) => ("no error".into(), format!("error: {err}"), false),
        };
        self.records.push(CheckRecord {
            suite: self.suite,
            name: name.into(),
            parameters,
            expected,
            actual,
            provenance,
            pass,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }

    fn holds(&mut self, name: &str, parameters: String, provenance: Provenance, f: impl FnOnce() -> Result<bool>) {
        self.compare(name, parameters, provenance, || Ok((true, f()?)));
    }

    /// `eps(M) <= (l^r - 1)/(l - 1)` with `l` the field order, tight exactly on geometries.
    fn kung(&mut self, what: &str, m: &RepMatroid) {
        self.holds("kung bound", what.to_string(), Provenance::Formula, || {
            let ell = m.field().order() as u64;
            let (si, _) = m.simplify();
            let bound = kung_bound(ell, si.rank() as u64)?;
            let tight = si.len() as u128 == bound;
            let is_pg = si.rank() == 0 || si.is_projective_geometry(ell)?.is_some();
            Ok(si.len() as u128 <= bound && tight == is_pg)
        });
    }
}

fn fields(rec: &mut Recorder) {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let f = match FieldSpec::of_order(q) {
            Ok(f) => f,
            Err(e) => {
                rec.compare("construct field", format!("q={q}"), Provenance::Trivial, || Err::<(u8, u8), _>(e));
                continue;
            }
        };
        let mut rng = rec.rng(q);
        let trials: Vec<[FieldElem; 3]> = (0..300)
            .map(|_| [0; 3].map(|_: u8| FieldElem(rng.gen_range(0..q as u32))))
            .collect();
        rec.holds("ring axioms", format!("q={q} samples=300"), Provenance::Trivial, || {
            Ok(trials.iter().all(|&[a, b, c]| {
                f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    && f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                    && f.mul(a, b) == f.mul(b, a)
                    && f.add(a, f.neg(a)).is_zero()
            }))
        });
        rec.holds("inverses", format!("q={q}"), Provenance::Trivial, || {
            for a in f.nonzero_elements() {
                if f.mul(a, f.inv(a)?) != FieldElem::ONE {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        rec.compare("generator order", format!("q={q}"), Provenance::Trivial, || {
            let g = f.generator();
            let order = (1..q).find(|&i| f.pow(g, i) == FieldElem::ONE).unwrap_or(0);
            Ok((q - 1, order))
        });
        let p = f.characteristic() as u64;
        for d in 1..=f.degree() {
            if f.degree() % d != 0 {
                continue;
            }
            let s = p.pow(d);
            rec.compare("frobenius fixed field", format!("q={q} s={s}"), Provenance::Formula, || {
                let fixed = f.elements().filter(|&x| f.frobenius(x, s).map(|y| y == x).unwrap_or(false)).count();
                Ok((s as usize, fixed))
            });
        }
    }
    for q in [2u64, 3, 4, 5] {
        rec.holds("decompose round trip", format!("q^2={}", q * q), Provenance::Trivial, || {
            let f = FieldSpec::of_order(q * q)?;
            let omega = f.pick_omega(q)?;
            for x in f.elements() {
                let (v, w) = f.decompose(omega, x)?;
                if !f.in_subfield(v, q) || !f.in_subfield(w, q) || f.add(v, f.mul(omega, w)) != x {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
}

fn construct(rec: &mut Recorder) {
    for q in [2u64, 3] {
        for k in 0..=2usize {
            for n in k.max(1)..=5 {
                let size = ZSetSpec::new(n, q, k).ok().and_then(|z| z.size());
                if size.is_none_or(|s| s as usize > rec.cfg.max_elements) {
                    continue;
                }
                let params = format!("n={n} q={q} k={k}");
                let mut built = None;
                rec.compare("epg point count", params.clone(), Provenance::Formula, || {
                    let m = build_epg(n - 1, q, k)?;
                    let len = m.len() as u128;
                    built = Some(m);
                    Ok((epg_size_formula(n as u64, q, k as u64)?, len))
                });
                if let Some(m) = built {
                    rec.kung(&format!("epg {params}"), &m);
                }
            }
        }
    }
    for (q, k) in [(2u64, 1usize), (2, 2), (3, 1)] {
        rec.holds("epg(k,q,k) is PG(k,q^2)", format!("q={q} k={k}"), Provenance::Oracle, || {
            matroid_isomorphic(&build_epg(k, q, k)?, &build_pg(k, q * q)?)
        });
    }
    for q in [2u64, 3] {
        for n in 1..=4usize {
            rec.compare("k=0 is PG", format!("n={n} q={q}"), Provenance::Trivial, || {
                Ok((build_pg(n - 1, q)?.len(), build_epg(n - 1, q, 0)?.len()))
            });
        }
    }
    for q in [2u64, 3] {
        rec.holds("omega independence", format!("q^2={} n=3", q * q), Provenance::Oracle, || {
            let f = Arc::new(FieldSpec::of_order(q * q)?);
            let omegas: Vec<FieldElem> = f.elements().filter(|&x| !f.in_subfield(x, q)).collect();
            let first = build_extension_rep(f.clone(), omegas[0], 3)?;
            for &w in &omegas[1..] {
                if !matroid_isomorphic(&first, &build_extension_rep(f.clone(), w, 3)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
    }
    let q = 2;
    for k in 1..=2usize {
        for n_prime in 2 * k..=k + 4 {
            let rank = (n_prime - k) as u64;
            for t in 0..5u64 {
                let seed = rec.cfg.seed.wrapping_add(t * 1000 + (k * 10 + n_prime) as u64);
                let mut member = None;
                rec.holds("projection member below formula", format!("n'={n_prime} q={q} k={k} seed={seed}"), Provenance::Formula, || {
                    let m = random_projection_member(n_prime, q, k, seed)?.matroid;
                    let ok = m.rank() as u64 <= rank && m.len() as u128 <= growth_rate_formula(rank, q, k as u64)?;
                    member = Some(m);
                    Ok(ok)
                });
                if let Some(m) = member {
                    rec.kung(&format!("projection member n'={n_prime} k={k}"), &m);
                }
            }
            if n_prime >= 2 * k {
                rec.compare("extremal member meets formula", format!("n'={n_prime} q={q} k={k}"), Provenance::Formula, || {
                    let m = extremal_projection_member(n_prime, q, k)?.matroid;
                    Ok((growth_rate_formula(rank, q, k as u64)?, m.len() as u128))
                });
            }
        }
    }
    for (n, want) in [(3u64, 13u128), (4, 29), (5, 61)] {
        rec.compare("growth table q=2 k=1", format!("n={n}"), Provenance::Formula, || {
            Ok((want, growth_rate_formula(n, 2, 1)?))
        });
    }
}

fn random_lines(lines: &[LabelSet], rng: &mut ChaCha8Rng) -> Vec<LabelSet> {
    let p = rng.gen_range(0.02..0.6);
    lines.iter().filter(|_| rng.gen_bool(p)).cloned().collect()
}

fn geometry(rec: &mut Recorder) {
    let mut rng = rec.rng(101);
    for n in [4usize, 5] {
        let pg = match build_pg_over_extension(n - 1, 2).and_then(|m| {
            let all = m.label_set();
            PgHandle::certify(m, all, 2)
        }) {
            Ok(h) => h,
            Err(e) => {
                rec.compare("build geometry", format!("n={n}"), Provenance::Trivial, || Err::<(u8, u8), _>(e));
                continue;
            }
        };
        let all_lines = pg.restriction().lines().unwrap_or_default();
        for t in 0..50 {
            let k = t % 2;
            let lines = random_lines(&all_lines, &mut rng);
            rec.holds("matching dichotomy", format!("PG({},2) k={k} lines={} trial={t}", n - 1, lines.len()), Provenance::Oracle, || {
                let out = find_line_matching(&pg, &lines, k)?;
                out.verify(&pg, &lines, k)?;
                Ok(true)
            });
        }
    }

    let mut t = 0u64;
    for q in [2u64, 3] {
        for k in 1..=2usize {
            for n_prime in (2 * k).max(2)..=5 {
                t += 1;
                let seed = rec.cfg.seed.wrapping_add(t);
                let params = format!("n'={n_prime} q={q} k={k} seed={seed}");
                let mut out = None;
                rec.compare("unstable contraction point count", params.clone(), Provenance::Formula, || {
                    let (h, x) = random_unstable_instance(n_prime, q, k, seed)?;
                    let m = contract_unstable(&h, &x)?;
                    let len = m.len() as u128;
                    out = Some(m);
                    Ok((epg_size_formula((n_prime - k) as u64, q, k as u64)?, len))
                });
                if let Some(m) = out {
                    if m.len() <= ISO_CAP && n_prime > k {
                        rec.holds("unstable contraction is epg", params, Provenance::Oracle, || {
                            matroid_isomorphic(&m, &build_epg(n_prime - k - 1, q, k)?)
                        });
                    }
                }
            }
        }
    }

    rec.compare("GF(4) line instance", "PG(2,2)+(1,w,0)".into(), Provenance::Trivial, || {
        let pg = build_pg_over_extension(2, 2)?;
        let f = pg.field().clone();
        let omega = f.pick_omega(2)?;
        let host = pg.with_columns(vec![(7, vec![FieldElem::ONE, omega, FieldElem::ZERO])])?;
        let h = PgHandle::certify(host, pg.label_set(), 2)?;
        let x = UnstableSet::from_elements(&h, vec![7])?;
        let m = contract_unstable(&h, &x)?;
        Ok(("5 points rank 2".to_string(), format!("{} points rank {}", m.len(), m.rank())))
    });

    rec.compare("constellation in PG(2,4)", "s=3 l=3 j=2".into(), Provenance::Oracle, || {
        let m = build_pg(2, 4)?;
        let c = find_constellation(&m, 3, 3, 2)?;
        if let Some(c) = &c {
            c.verify(&m, 3, 3, 2)?;
        }
        Ok((true, c.is_some()))
    });
    rec.compare("no constellation in PG(2,2)", "s=1 l=2 j=1".into(), Provenance::Trivial, || {
        Ok((false, find_constellation(&build_pg(2, 2)?, 1, 2, 1)?.is_some()))
    });
}

fn brute_force_weakly_round(m: &RepMatroid) -> bool {
    let n = m.len();
    let r = m.rank();
    (0u32..1 << n).all(|mask| {
        let a: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        m.rank_of_positions(&a) >= r || m.rank_of_positions(&b) + 2 > r
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_subset(m: &RepMatroid, p: f64, rng: &mut ChaCha8Rng) -> Vec<Label> {
    m.labels().iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

fn density(rec: &mut Recorder) {
    let mut rng = rec.rng(202);
    let pg22 = build_pg(2, 2).expect("PG(2,2)");
    let pg32 = build_pg(3, 2).expect("PG(3,2)");
    rec.holds("weak roundness vs brute force", "all restrictions of PG(2,2)".into(), Provenance::Oracle, || {
        for mask in 1u32..1 << 7 {
            let keep: Vec<Label> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
            let m = pg22.restrict(&keep)?;
            if is_weakly_round(&m)? != brute_force_weakly_round(&m) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    rec.holds("weak roundness vs brute force", "40 seeded restrictions of PG(3,2), at most 12 elements".into(), Provenance::Oracle, || {
        for _ in 0..40 {
            let mut s = random_subset(&pg32, 0.5, &mut rng);
            s.truncate(12);
            let m = pg32.restrict(&s)?;
            if is_weakly_round(&m)? != brute_force_weakly_round(&m) {
                return Ok(false);
            }
        }
        Ok(true)
    });

    let pg42 = build_pg(4, 2).expect("PG(4,2)");
    for t in 0..100 {
        let p = rng.gen_range(0.1..0.95);
        let mut s = random_subset(&pg42, p, &mut rng);
        if s.is_empty() {
            s.push(0);
        }
        let frac = [rat(1, 2), rat(2, 3), rat(3, 4), rat(9, 10)][t % 4].clone();
        rec.holds("weakly round restriction", format!("PG(4,2) trial={t} size={}", s.len()), Provenance::Oracle, || {
            let m = pg42.restrict(&s)?;
            let c = frac * BigRational::from_integer(BigInt::from(m.point_count()));
            let f = DensityFunction::golden(&c, m.rank())?;
            let n = weakly_round_restriction(&m, &f)?;
            Ok(brute_or_scan_round(&n)? && f.exceeded_by(n.point_count(), n.rank())?)
        });
    }

    rec.compare("rank threshold", "l=4 alpha=1 r=2".into(), Provenance::Formula, || {
        Ok((4, rank_threshold(4, &rat(1, 1), 2)?))
    });

    let mut done = 0;
    let mut t = 0;
    while done < 50 && t < 1000 {
        t += 1;
        let Some((a, b, lambda, mu, k)) = skew_instance(&pg42, &mut rng) else { continue };
        done += 1;
        rec.holds("skew dense subset", format!("PG(4,2) trial={done} |A|={} |B|={} mu={mu} k={k}", a.len(), b.len()), Provenance::Oracle, || {
            let out = find_skew_dense_subset(&pg42, &a, &b, &lambda, &mu, 2, k)?;
            let ra = pg42.rank_of(&out)?;
            let both: LabelSet = out.union(&b).copied().collect();
            let skew = pg42.rank_of(&both)? == ra + pg42.rank_of(&b)?;
            let bound = skew_density_bound(&lambda, &mu, 2, k, ra);
            Ok(out.is_subset(&a) && skew && BigRational::from_integer(BigInt::from(out.len())) > bound)
        });
    }
}

fn brute_or_scan_round(m: &RepMatroid) -> Result<bool> {
    if m.len() <= 14 {
        Ok(brute_force_weakly_round(m))
    } else {
        is_weakly_round(m)
    }
}

/// A random `(A, B, lambda, mu, k)` meeting the skew-subset preconditions for `ell = 2`.
pub(crate) fn skew_instance(
    m: &RepMatroid,
    rng: &mut ChaCha8Rng,
) -> Option<(LabelSet, LabelSet, BigRational, BigRational, usize)> {
    let k = rng.gen_range(0..=2usize);
    let mut labels = m.labels().to_vec();
    labels.shuffle(rng);
    let mut b: Vec<Label> = Vec::new();
    for &x in &labels {
        if b.len() == k {
            break;
        }
        let mut cand = b.clone();
        cand.push(x);
        if m.rank_of(&cand).ok()? == cand.len() {
            b = cand;
        }
    }
    let b: LabelSet = b.into_iter().collect();
    let p = rng.gen_range(0.5..1.0);
    let a: LabelSet = labels.iter().copied().filter(|x| !b.contains(x) && rng.gen_bool(p)).collect();
    let mu = [rat(3, 2), rat(2, 1), rat(5, 2), rat(3, 1)][rng.gen_range(0..4)].clone();
    let ra = m.rank_of(&a).ok()?;
    let eps = m.restrict(&a).ok()?.point_count() as i64;
    let lambda = rat(9 * eps, 10) / (0..ra).fold(BigRational::from_integer(1.into()), |acc, _| acc * &mu);
    let t = b.len();
    if t >= 1 && skew_density_bound(&lambda, &mu, 2, t - 1, 1) < rat(1, 1) {
        return None;
    }
    Some((a, b, lambda, mu, k))
}

fn normalize(rec: &mut Recorder) {
    let mut rng = rec.rng(303);
    let pg = build_pg_over_extension(2, 2).expect("PG(2,2) over GF(4)");
    for t in 0..50 {
        let transform = ProjectiveTransform::random(pg.field(), &pg, &mut rng);
        let subsets: Vec<Vec<Label>> = (0..200).map(|_| random_subset(&pg, 0.4, &mut rng)).collect();
        rec.holds("normalize scrambled PG(2,2)", format!("trial={t}"), Provenance::Oracle, || {
            let scrambled = transform.apply(&pg)?;
            let (out, _, _) = normalize_spanning_pg(&scrambled, &pg.label_set(), 2)?;
            let valued = out.columns().iter().flatten().all(|&x| pg.field().in_subfield(x, 2));
            for s in &subsets {
                if out.rank_of(s)? != pg.rank_of(s)? {
                    return Ok(false);
                }
            }
            Ok(valued)
        });
    }
    for (n, q) in [(3usize, 3u64), (4, 2)] {
        let m = build_pg_over_extension(n - 1, q).expect("geometry over the extension");
        let transform = ProjectiveTransform::random(m.field(), &m, &mut rng);
        rec.holds("normalize is idempotent", format!("PG({},{q})", n - 1), Provenance::Trivial, || {
            let scrambled = transform.apply(&m)?;
            let (once, _, _) = normalize_spanning_pg(&scrambled, &m.label_set(), q)?;
            Ok(normalize_spanning_pg(&once, &m.label_set(), q)?.0 == once)
        });
    }
    rec.holds("normalize with canonical PG of epg", "n=4 q=2 k=1".into(), Provenance::Oracle, || {
        let m = build_epg(3, 2, 1)?;
        let r = subfield_points(&m, 2)?;
        let scrambled = ProjectiveTransform::random(m.field(), &m, &mut rng).apply(&m)?;
        let (out, _, h) = normalize_spanning_pg(&scrambled, &r, 2)?;
        Ok(h.rank() == 4 && matroid_isomorphic(&out, &m)?)
    });
}

fn minors(rec: &mut Recorder) {
    let budget = rec.cfg.max_contract.min(1);
    rec.compare("no PG(2,4) minor in epg", format!("n=4 q=2 k=1 max_contract={budget}"), Provenance::Oracle, || {
        let m = build_epg(3, 2, 1)?;
        Ok(("absent", if has_pg_minor(&m, 3, 4, budget)?.is_some() { "found" } else { "absent" }))
    });
    rec.compare("PG(2,4) minor in PG(3,4)", format!("max_contract={budget}"), Provenance::Trivial, || {
        let m = build_pg(3, 4)?;
        let found = match has_pg_minor(&m, 3, 4, budget)? {
            Some(w) => {
                let minor = m.contract(&w.contract)?.restrict(&w.restriction)?;
                minor.is_simple() && minor.is_projective_geometry(4)? == Some(3)
            }
            None => false,
        };
        Ok(("found", if found { "found" } else { "absent" }))
    });
    rec.compare("PG(1,4) minor in epg", format!("n=4 q=2 k=1 max_contract={budget}"), Provenance::Oracle, || {
        let m = build_epg(3, 2, 1)?;
        Ok(("found", if has_pg_minor(&m, 2, 4, budget)?.is_some() { "found" } else { "absent" }))
    });
    rec.compare("Fano restriction of PG(3,2)", "n=3 q=2".into(), Provenance::Trivial, || {
        let m = build_pg(3, 2)?;
        Ok(("found", if has_pg_minor(&m, 3, 2, 0)?.is_some() { "found" } else { "absent" }))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn fields_and_minors_pass() {
        let cfg = SuiteConfig::new(7);
        let report = run(&[Suite::Minors, Suite::Fields], &cfg, "verify");
        assert!(report.pass, "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.records[0].suite, Suite::Fields);
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = SuiteConfig::new(3);
        let a = run(&[Suite::Normalize], &cfg, "verify normalize");
        let b = run(&[Suite::Normalize], &cfg, "verify normalize");
        assert_eq!(a.without_timing(), b.without_timing());
    }
}
