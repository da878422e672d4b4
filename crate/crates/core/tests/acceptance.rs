//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the lines are always printed. Every matroid
//! built along the way is fed to a Kung-bound tracker that is reported as
//! its own criterion at the end.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use epg_core::construct::{build_pg_over_extension, quadratic_extension};
use epg_core::density::{find_skew_dense_subset, is_weakly_round, weakly_round_restriction, DensityFunction};
use epg_core::geometry::{contract_unstable, find_line_matching, random_unstable_instance, MatchingOutcome, UnstableSet};
use epg_core::minors::has_pg_minor;
use epg_core::normalize::{normalize_spanning_pg, ProjectiveTransform};
use epg_core::{
    build_epg, build_extension_rep, build_pg, extremal_projection_member, find_isomorphism, random_projection_member,
    FieldElem, FieldSpec, Label, LabelSet, PgHandle, RepMatroid,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: epg_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ipow(b: u128, e: u64) -> u128 {
    (0..e).fold(1, |acc, _| acc * b)
}

/// `(q^(n+k) - 1)/(q - 1) - q (q^(2k) - 1)/(q^2 - 1)`
fn epg_count(n: u64, q: u64, k: u64) -> u128 {
    let q = q as u128;
    (ipow(q, n + k) - 1) / (q - 1) - q * (ipow(q, 2 * k) - 1) / (q * q - 1)
}

fn matching_bound(q: u64, k: u64) -> u128 {
    let q = q as u128;
    (ipow(q, 2 * k) - 1) * (ipow(q, 2 * k + 3) - 1) / ((q - 1) * (q - 1))
}

#[derive(Default)]
struct Kung {
    checked: usize,
    tight: usize,
    failures: Vec<String>,
}

impl Kung {
    fn track(&mut self, what: &str, m: &RepMatroid) {
        self.checked += 1;
        let ell = m.field().order() as u128;
        let (si, _) = m.simplify();
        let r = si.rank() as u64;
        let bound = if r == 0 { 0 } else { (ipow(ell, r) - 1) / (ell - 1) };
        let eps = si.len() as u128;
        let full_lines = match si.lines() {
            Ok(lines) => lines.iter().all(|l| l.len() as u128 == ell + 1),
            Err(e) => {
                self.failures.push(format!("{what}: {e}"));
                return;
            }
        };
        let is_pg = r <= 1 || full_lines;
        if eps > bound {
            self.failures.push(format!("{what}: {eps} points exceed {bound}"));
        } else if (eps == bound) != is_pg {
            self.failures.push(format!("{what}: tight={} but geometry={is_pg}", eps == bound));
        }
        if eps == bound {
            self.tight += 1;
        }
    }
}

/// Projective functionals over the field of `m`, in `m.rows()` coordinates.
fn functionals(f: &FieldSpec, dim: usize) -> Vec<Vec<FieldElem>> {
    let q = f.order() as u64;
    let total = ipow(q as u128, dim as u64) as u64;
    (1..total)
        .filter_map(|mut x| {
            let mut v = vec![FieldElem::ZERO; dim];
            for c in v.iter_mut().rev() {
                *c = FieldElem((x % q) as u32);
                x /= q;
            }
            let lead = v.iter().find(|c| !c.is_zero())?;
            (*lead == FieldElem::ONE).then_some(v)
        })
        .collect()
}

fn kernel(m: &RepMatroid, phi: &[FieldElem]) -> LabelSet {
    let f = m.field();
    m.labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let col = m.column_at(*i);
            phi.iter().zip(col).fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))).is_zero()
        })
        .map(|(_, &l)| l)
        .collect()
}

/// Hyperplanes of `m`, from kernels of all functionals.
fn hyperplane_family(m: &RepMatroid) -> Result<BTreeSet<LabelSet>, String> {
    let r = m.rank();
    let mut out = BTreeSet::new();
    for phi in functionals(m.field(), m.rows()) {
        let k = kernel(m, &phi);
        if ok(m.rank_of(&k))? + 1 == r {
            out.insert(k);
        }
    }
    Ok(out)
}

/// Checks that `pairs` is a bijection carrying the hyperplanes of `a` onto those of `b`.
fn certify_iso(a: &RepMatroid, b: &RepMatroid, pairs: &[(Label, Label)]) -> Result<(), String> {
    let phi: BTreeMap<Label, Label> = pairs.iter().copied().collect();
    let image: BTreeSet<Label> = phi.values().copied().collect();
    ensure(phi.len() == a.len() && image == b.label_set() && a.label_set().iter().all(|l| phi.contains_key(l)), || {
        "witness is not a bijection".into()
    })?;
    let ha = hyperplane_family(a)?;
    let hb = hyperplane_family(b)?;
    let mapped: BTreeSet<LabelSet> = ha.iter().map(|h| h.iter().map(|l| phi[l]).collect()).collect();
    ensure(mapped == hb, || "witness does not carry hyperplanes onto hyperplanes".into())
}

fn isomorphic(a: &RepMatroid, b: &RepMatroid) -> Result<bool, String> {
    match ok(find_isomorphism(a, b))? {
        Some(w) => certify_iso(a, b, &w).map(|_| true),
        None => Ok(false),
    }
}

fn criterion_1(kung: &mut Kung) -> Outcome {
    let mut cases = 0;
    for q in [2u64, 3] {
        for k in 0..=2u64 {
            for n in k.max(1)..=5 {
                let m = ok(build_epg(n as usize - 1, q, k as usize))?;
                kung.track(&format!("epg n={n} q={q} k={k}"), &m);
                let want = epg_count(n, q, k);
                ensure(m.len() as u128 == want && m.is_simple(), || {
                    format!("n={n} q={q} k={k}: {} points, formula {want}", m.len())
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameter triples"))
}

fn criterion_2(kung: &mut Kung) -> Outcome {
    for (q, k) in [(2u64, 1usize), (2, 2), (3, 1)] {
        let a = ok(build_epg(k, q, k))?;
        let b = ok(build_pg(k, q * q))?;
        kung.track("epg(k,q,k)", &a);
        kung.track("pg(k,q^2)", &b);
        ensure(isomorphic(&a, &b)?, || format!("q={q} k={k} not isomorphic"))?;
    }
    Ok("3 pairs".into())
}

fn criterion_3(kung: &mut Kung) -> Outcome {
    let m = ok(build_epg(3, 2, 1))?;
    kung.track("epg(3,2,1)", &m);
    ensure((m.rank(), m.len()) == (4, 29), || format!("rank {} with {} points", m.rank(), m.len()))?;
    ensure(ok(has_pg_minor(&m, 3, 4, 1))?.is_none(), || "found a PG(2,4)-minor".into())?;
    let pg = ok(build_pg(3, 4))?;
    kung.track("pg(3,4)", &pg);
    let w = ok(has_pg_minor(&pg, 3, 4, 1))?.ok_or("positive control found nothing")?;
    let minor = ok(ok(pg.contract(&w.contract))?.restrict(&w.restriction))?;
    kung.track("PG(2,4) minor", &minor);
    ensure(minor.is_simple() && isomorphic(&minor, &ok(build_pg(2, 4))?)?, || "witness is not PG(2,4)".into())?;
    Ok(format!("control witness contracts {} element(s)", w.contract.len()))
}

fn criterion_4(kung: &mut Kung) -> Outcome {
    let mut combos = Vec::new();
    for q in [2u64, 3] {
        for k in 1..=2usize {
            for n in (2 * k).max(2)..=5 {
                combos.push((q, k, n));
            }
        }
    }
    for i in 0..20 {
        let (q, k, n) = combos[i % combos.len()];
        let seed = 1000 + i as u64;
        let (h, x) = ok(random_unstable_instance(n, q, k, seed))?;
        kung.track("unstable host", h.host());
        let out = ok(contract_unstable(&h, &x))?;
        let direct = ok(ok(h.host().contract(&x.elements))?.restrict(h.members()))?.simplify().0;
        kung.track("unstable contraction", &direct);
        let want = epg_count((n - k) as u64, q, k as u64);
        ensure(direct.len() as u128 == want && direct.rank() == n - k && out.len() == direct.len(), || {
            format!("q={q} k={k} n'={n} seed={seed}: {} points, expected {want}", direct.len())
        })?;
        if n > k {
            let target = ok(build_epg(n - k - 1, q, k))?;
            ensure(isomorphic(&direct, &target)?, || format!("q={q} k={k} n'={n} seed={seed}: not the extended geometry"))?;
        }
    }
    let pg = ok(build_pg_over_extension(2, 2))?;
    let f = pg.field().clone();
    let omega = ok(f.pick_omega(2))?;
    let host = ok(pg.with_columns(vec![(7, vec![FieldElem::ONE, omega, FieldElem::ZERO])]))?;
    let h = ok(PgHandle::certify(host, pg.label_set(), 2))?;
    let x = ok(UnstableSet::from_elements(&h, vec![7]))?;
    let line = ok(contract_unstable(&h, &x))?;
    kung.track("GF(4) line instance", &line);
    ensure((line.len(), line.rank()) == (5, 2), || format!("{} points of rank {}", line.len(), line.rank()))?;
    Ok("20 seeded instances and the GF(4) line".into())
}

fn verify_matching(h: &PgHandle, lines: &[LabelSet], k: usize, out: &MatchingOutcome) -> Result<(), String> {
    let rm = h.restriction();
    match out {
        MatchingOutcome::Matching(ls) => {
            let all: LabelSet = ls.iter().flatten().copied().collect();
            ensure(ls.len() == k + 1 && ls.iter().all(|l| lines.contains(l)), || "matching shape".into())?;
            ensure(ok(rm.rank_of(&all))? == 2 * ls.len(), || "matched lines are not skew".into())
        }
        MatchingOutcome::Cover { flat, exceptional } => {
            let r = ok(rm.rank_of(flat))?;
            ensure(r <= k && ok(rm.closure(flat))? == *flat, || "cover is not a flat of rank <= k".into())?;
            for l in lines {
                ensure(!l.is_disjoint(flat) || exceptional.contains(l), || format!("line {l:?} uncovered"))?;
            }
            ensure(exceptional.len() as u128 <= matching_bound(h.q(), k as u64), || "too many exceptional lines".into())?;
            ensure(r < k || exceptional.is_empty(), || "rank-k cover with exceptional lines".into())
        }
    }
}

fn criterion_5(kung: &mut Kung) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut matchings, mut covers) = (0, 0);
    for n in [4usize, 5] {
        let m = ok(build_pg_over_extension(n - 1, 2))?;
        kung.track("pg over GF(4)", &m);
        let members = m.label_set();
        let h = ok(PgHandle::certify(m, members, 2))?;
        let all = ok(h.restriction().lines())?;
        for t in 0..50 {
            let k = t % 2;
            let p = rng.gen_range(0.02..0.6);
            let lines: Vec<LabelSet> = all.iter().filter(|_| rng.gen_bool(p)).cloned().collect();
            let out = ok(find_line_matching(&h, &lines, k))?;
            verify_matching(&h, &lines, k, &out).map_err(|e| format!("PG({},2) trial {t}: {e}", n - 1))?;
            match out {
                MatchingOutcome::Matching(_) => matchings += 1,
                MatchingOutcome::Cover { .. } => covers += 1,
            }
        }
    }
    Ok(format!("{matchings} matchings, {covers} covers"))
}

fn in_gf2(f: &FieldSpec, x: FieldElem) -> bool {
    f.mul(x, x) == x
}

fn criterion_6(kung: &mut Kung) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pg = ok(build_pg_over_extension(2, 2))?;
    let f = pg.field().clone();
    for t in 0..50 {
        let scrambled = ok(ProjectiveTransform::random(&f, &pg, &mut rng).apply(&pg))?;
        let (out, _, _) = ok(normalize_spanning_pg(&scrambled, &pg.label_set(), 2))?;
        kung.track("normalized PG(2,2)", &out);
        ensure(out.columns().iter().flatten().all(|&x| in_gf2(&f, x)), || format!("trial {t}: entry outside GF(2)"))?;
        for _ in 0..200 {
            let s: Vec<Label> = pg.labels().iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            ensure(ok(out.rank_of(&s))? == ok(pg.rank_of(&s))?, || format!("trial {t}: rank of {s:?} changed"))?;
        }
    }
    Ok("50 trials x 200 subsets".into())
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

/// Weak roundness from ambient functionals: some kernel misses part of `m`
/// and leaves a remainder of rank at most `r - 2`.
fn functional_weakly_round(m: &RepMatroid) -> Result<bool, String> {
    let r = m.rank();
    let all = m.label_set();
    for phi in functionals(m.field(), m.rows()) {
        let k = kernel(m, &phi);
        if k == all {
            continue;
        }
        let rest: LabelSet = all.difference(&k).copied().collect();
        if ok(m.rank_of(&rest))? + 2 <= r {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `count > c phi^(-d)` for `d >= 0`, using `phi^d = F_d phi + F_(d-1)`.
fn exceeds_golden(count: usize, c: &BigRational, d: usize) -> bool {
    let (mut fprev, mut fcur) = (BigInt::one(), BigInt::zero());
    for _ in 0..d {
        let next = &fcur + &fprev;
        fprev = fcur;
        fcur = next;
    }
    let e = BigRational::from_integer(BigInt::from(count));
    let x = &e * BigRational::from_integer(fcur);
    let y = c - &e * BigRational::from_integer(fprev);
    if !y.is_positive() {
        return true;
    }
    if x.is_zero() {
        return false;
    }
    let t = y / x;
    let s = &t * rat(2, 1) - BigRational::one();
    !s.is_positive() || &s * &s < rat(5, 1)
}

fn corpus(rng: &mut ChaCha8Rng) -> Result<Vec<(String, RepMatroid)>, String> {
    let mut out = Vec::new();
    let pg22 = ok(build_pg(2, 2))?;
    for mask in 1u32..1 << 7 {
        let keep: Vec<Label> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
        out.push((format!("PG(2,2)|{keep:?}"), ok(pg22.restrict(&keep))?));
    }
    for (name, m) in [
        ("PG(1,4)", build_pg(1, 4)),
        ("PG(1,9)", build_pg(1, 9)),
        ("epg(1,2,1)", build_epg(1, 2, 1)),
        ("epg(1,3,1)", build_epg(1, 3, 1)),
        ("pg(2,2) over GF(4)", build_pg_over_extension(2, 2)),
    ] {
        out.push((name.to_string(), ok(m)?));
    }
    for (name, base) in [("PG(3,2)", build_pg(3, 2)), ("PG(2,3)", build_pg(2, 3)), ("epg(2,2,1)", build_epg(2, 2, 1))] {
        let base = ok(base)?;
        for t in 0..20 {
            let mut keep: Vec<Label> = base.labels().iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            keep.truncate(12);
            out.push((format!("{name} sample {t}"), ok(base.restrict(&keep))?));
        }
    }
    let f = Arc::new(FieldSpec::new(2, 1).map_err(|e| e.to_string())?);
    let e = |v: [u32; 4]| v.map(FieldElem).to_vec();
    let triangles = vec![e([1, 0, 0, 0]), e([0, 1, 0, 0]), e([1, 1, 0, 0]), e([0, 0, 1, 0]), e([0, 0, 0, 1]), e([0, 0, 1, 1])];
    out.push(("two triangles".into(), ok(RepMatroid::from_columns(f, 4, triangles))?));
    Ok(out)
}

fn criterion_7(kung: &mut Kung) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let corpus = corpus(&mut rng)?;
    for (name, m) in &corpus {
        ensure(m.len() <= 12, || format!("{name} is too large"))?;
        ensure(ok(is_weakly_round(m))? == brute_force_weakly_round(m), || format!("{name}: disagrees with brute force"))?;
    }
    let pg = ok(build_pg(4, 2))?;
    kung.track("PG(4,2)", &pg);
    for t in 0..100 {
        let p = rng.gen_range(0.1..0.95);
        let mut keep: Vec<Label> = pg.labels().iter().copied().filter(|_| rng.gen_bool(p)).collect();
        if keep.is_empty() {
            keep.push(0);
        }
        let m = ok(pg.restrict(&keep))?;
        let frac = [rat(1, 2), rat(2, 3), rat(3, 4), rat(9, 10)][t % 4].clone();
        let c = frac * BigRational::from_integer(BigInt::from(m.point_count()));
        let f = ok(DensityFunction::golden(&c, m.rank()))?;
        let n = ok(weakly_round_restriction(&m, &f))?;
        kung.track("weakly round restriction", &n);
        ensure(n.label_set().is_subset(&m.label_set()), || format!("trial {t}: not a restriction"))?;
        ensure(functional_weakly_round(&n)?, || format!("trial {t}: output is not weakly round"))?;
        ensure(exceeds_golden(n.point_count(), &c, m.rank() - n.rank()), || format!("trial {t}: output is not dense"))?;
    }
    Ok(format!("{} corpus matroids, 100 restrictions", corpus.len()))
}

fn criterion_8(kung: &mut Kung) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m = ok(build_pg(4, 2))?;
    kung.track("PG(4,2)", &m);
    let mut done = 0;
    let mut attempts = 0;
    while done < 50 {
        attempts += 1;
        ensure(attempts < 10_000, || "could not draw instances".into())?;
        let k = rng.gen_range(0..=2usize);
        let mut b: Vec<Label> = Vec::new();
        while b.len() < k {
            let x = rng.gen_range(0..m.len() as Label);
            let mut cand = b.clone();
            cand.push(x);
            if ok(m.rank_of(&cand))? == cand.len() {
                b = cand;
            }
        }
        let b: LabelSet = b.into_iter().collect();
        let p = rng.gen_range(0.5..1.0);
        let a: LabelSet = m.labels().iter().copied().filter(|x| !b.contains(x) && rng.gen_bool(p)).collect();
        let mu = [rat(3, 2), rat(2, 1), rat(5, 2), rat(3, 1)][rng.gen_range(0..4)].clone();
        let ra = ok(m.rank_of(&a))?;
        let mu_pow = |r: usize| (0..r).fold(BigRational::one(), |acc, _| acc * &mu);
        let lambda = rat(9 * a.len() as i64, 10) / mu_pow(ra);
        let ratio = (&mu - BigRational::one()) / rat(2, 1);
        let ratio_pow = |e: usize| (0..e).fold(BigRational::one(), |acc, _| acc * &ratio);
        if k >= 1 && &lambda * ratio_pow(k - 1) * &mu < BigRational::one() {
            continue;
        }
        done += 1;
        let out = ok(find_skew_dense_subset(&m, &a, &b, &lambda, &mu, 2, k))?;
        let r_out = ok(m.rank_of(&out))?;
        let union: LabelSet = out.union(&b).copied().collect();
        ensure(out.is_subset(&a), || format!("instance {done}: output leaves A"))?;
        ensure(ok(m.rank_of(&union))? == r_out + ok(m.rank_of(&b))?, || format!("instance {done}: not skew"))?;
        let bound = &lambda * ratio_pow(k) * mu_pow(r_out);
        ensure(BigRational::from_integer(BigInt::from(out.len())) > bound, || format!("instance {done}: too sparse"))?;
        kung.track("skew dense subset", &ok(m.restrict(&out))?);
    }
    Ok(format!("50 instances from {attempts} draws"))
}

fn criterion_10(kung: &mut Kung) -> Outcome {
    for q in [2u64, 3] {
        let host = ok(quadratic_extension(q))?;
        let omegas: Vec<FieldElem> = host.elements().filter(|&x| host.pow(x, q) != x).collect();
        let first = ok(build_extension_rep(host.clone(), omegas[0], 3))?;
        kung.track("extension rep", &first);
        for &w in &omegas[1..] {
            let other = ok(build_extension_rep(host.clone(), w, 3))?;
            kung.track("extension rep", &other);
            ensure(isomorphic(&first.simplify().0, &other.simplify().0)?, || format!("q={q}: omega {w} differs"))?;
        }
    }
    Ok("all omega over GF(4) and GF(9)".into())
}

fn criterion_11(kung: &mut Kung) -> Outcome {
    let q = 2u64;
    let mut pairs = Vec::new();
    for k in 1..=2usize {
        for rank in k..=4 {
            pairs.push((k, rank));
        }
    }
    let mut seen_equality: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for i in 0..50 {
        let (k, rank) = pairs[i % pairs.len()];
        let member = ok(random_projection_member(rank + k, q, k, 11_000 + i as u64))?;
        kung.track("projection member", &member.matroid);
        let bound = epg_count(rank as u64, q, k as u64);
        let eps = member.matroid.point_count() as u128;
        ensure(member.matroid.rank() <= rank && eps <= bound, || format!("k={k} rank={rank}: {eps} > {bound}"))?;
        *seen_equality.entry((k, rank)).or_default() |= eps == bound;
    }
    for &(k, rank) in &pairs {
        let extremal = ok(extremal_projection_member(rank + k, q, k))?;
        kung.track("extremal member", &extremal.matroid);
        let eps = extremal.matroid.point_count() as u128;
        ensure(eps == epg_count(rank as u64, q, k as u64), || format!("k={k} rank={rank}: extremal has {eps}"))?;
        seen_equality.insert((k, rank), true);
    }
    ensure(seen_equality.values().all(|&b| b), || "a parameter pair never attains the formula".into())?;
    Ok(format!("50 random members over {} parameter pairs", pairs.len()))
}

fn main() -> ExitCode {
    let mut kung = Kung::default();
    type Criterion = fn(&mut Kung) -> Outcome;
    let criteria: [(u32, &str, Criterion); 10] = [
        (1, "point counts of extended geometries", criterion_1),
        (2, "epg(k,q,k) is PG(k,q^2)", criterion_2),
        (3, "no PG(2,4)-minor in epg(3,2,1)", criterion_3),
        (4, "unstable contraction gives the extended geometry", criterion_4),
        (5, "line matching dichotomy", criterion_5),
        (6, "normalization of scrambled PG(2,2)", criterion_6),
        (7, "weak roundness", criterion_7),
        (8, "skew dense subsets", criterion_8),
        (10, "omega independence", criterion_10),
        (11, "projection members against the growth rate", criterion_11),
    ];
    let mut failed = 0;
    let mut report = |id: u32, what: &str, res: Outcome, ms: u128| {
        match res {
            Ok(detail) => println!("criterion {id:>2}: PASS  {what} ({detail}) [{ms} ms]"),
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {what}: {e} [{ms} ms]");
            }
        }
    };
    for (id, what, run) in criteria {
        let start = Instant::now();
        let res = run(&mut kung);
        report(id, what, res, start.elapsed().as_millis());
    }
    let res = if kung.failures.is_empty() {
        Ok(format!("{} matroids, {} tight", kung.checked, kung.tight))
    } else {
        Err(kung.failures.join("; "))
    };
    report(9, "Kung bound on every constructed matroid", res, 0);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
