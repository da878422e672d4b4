//! Density thresholds, weak roundness, and skew dense subsets.
//!
//! Thresholds involving the golden ratio are kept exact as elements
//! `a + b sqrt(5)` of Q(sqrt 5) with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::construct::{epg_size_formula, kung_bound};
use crate::error::{Error, Result};
use crate::iso::hyperplanes;
use crate::matroid::{Label, LabelSet, RepMatroid};

/// `a + b sqrt(5)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
}

impl Quad {
    pub fn rational(a: BigRational) -> Quad {
        Quad { a, b: BigRational::zero() }
    }

    pub fn int(n: i64) -> Quad {
        Quad::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `(1 + sqrt 5)/2`
    pub fn phi() -> Quad {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        Quad { a: half.clone(), b: half }
    }

    /// `sqrt 5 - 1`
    pub fn sqrt5_minus_one() -> Quad {
        Quad { a: -BigRational::one(), b: BigRational::one() }
    }

    pub fn pow(&self, n: u32) -> Quad {
        let mut out = Quad::int(1);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `phi^n` for any integer `n`, using `1/phi = phi - 1`.
    pub fn phi_pow(n: i64) -> Quad {
        if n >= 0 {
            Quad::phi().pow(n as u32)
        } else {
            (&Quad::phi() - &Quad::int(1)).pow(n.unsigned_abs() as u32)
        }
    }

    pub fn scale(&self, s: &BigRational) -> Quad {
        Quad { a: &self.a * s, b: &self.b * s }
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // opposite signs: compare a^2 with 5 b^2
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(5));
                if a2 > b2 {
                    x
                } else {
                    x.reverse()
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &BigRational| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * 5f64.sqrt()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt(5)", self.a, self.b)
        }
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, o: &Quad) -> Quad {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, o: &Quad) -> Quad {
        Quad { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, o: &Quad) -> Quad {
        let five = BigRational::from_integer(BigInt::from(5));
        Quad {
            a: &self.a * &o.a + &self.b * &o.b * five,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -&self.a, b: -&self.b }
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, o: &Quad) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Quad {
    fn cmp(&self, o: &Quad) -> Ordering {
        (self - o).signum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityKind {
    /// `0 < f(1) <= f(2)` and `f(n) >= f(n-1) + f(n-2)`.
    Fibonacci,
    /// `g(1) >= alpha` and `g(n) >= 2 g(n-1)`.
    Doubling { alpha: BigRational },
}

/// A threshold function on ranks `1..=values.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityFunction {
    kind: DensityKind,
    values: Vec<Quad>,
}

impl DensityFunction {
    pub fn new(kind: DensityKind, values: Vec<Quad>) -> Result<DensityFunction> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if values.is_empty() {
            return bad("a density function needs at least one value".into());
        }
        match &kind {
            DensityKind::Fibonacci => {
                if values[0].signum() != Ordering::Greater {
                    return bad("f(1) must be positive".into());
                }
                if values.len() > 1 && values[0] > values[1] {
                    return bad("f(1) exceeds f(2)".into());
                }
                for n in 2..values.len() {
                    if values[n] < &values[n - 1] + &values[n - 2] {
                        return bad(format!("f({}) < f({}) + f({})", n + 1, n, n - 1));
                    }
                }
            }
            DensityKind::Doubling { alpha } => {
                if !alpha.is_positive() {
                    return bad("alpha must be positive".into());
                }
                if values[0] < Quad::rational(alpha.clone()) {
                    return bad("g(1) is below alpha".into());
                }
                for n in 1..values.len() {
                    if values[n] < &values[n - 1] + &values[n - 1] {
                        return bad(format!("g({}) < 2 g({})", n + 1, n));
                    }
                }
            }
        }
        Ok(DensityFunction { kind, values })
    }

    /// `f(n) = phi^(n - r) * scale` for `n = 1..=r`.
    pub fn golden(scale: &BigRational, r: usize) -> Result<DensityFunction> {
        let values = (1..=r as i64).map(|n| Quad::phi_pow(n - r as i64).scale(scale)).collect();
        DensityFunction::new(DensityKind::Fibonacci, values)
    }

    /// `g(n) = alpha 2^(n-1)` for `n = 1..=r`.
    pub fn doubling(alpha: &BigRational, r: usize) -> Result<DensityFunction> {
        let values = (0..r as u32)
            .map(|i| Quad::rational(alpha * BigRational::from_integer(BigInt::from(2).pow(i))))
            .collect();
        DensityFunction::new(DensityKind::Doubling { alpha: alpha.clone() }, values)
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    pub fn max_rank(&self) -> usize {
        self.values.len()
    }

    pub fn at(&self, n: usize) -> Result<&Quad> {
        if n == 0 || n > self.values.len() {
            return Err(Error::InvalidParameter(format!("rank {n} outside 1..={}", self.values.len())));
        }
        Ok(&self.values[n - 1])
    }

    /// `count > f(n)`
    pub fn exceeded_by(&self, count: usize, n: usize) -> Result<bool> {
        Ok(Quad::int(count as i64) > *self.at(n)?)
    }
}

fn eps(m: &RepMatroid, s: &LabelSet) -> Result<usize> {
    Ok(m.restrict(s)?.point_count())
}

/// A partition `(E ∩ H, E - H)` with `r(E - H) <= r(M) - 2` for a hyperplane
/// `H`, or `None` when `m` is weakly round. Hyperplanes are scanned as
/// kernels of projective functionals in canonical order.
pub fn weak_roundness_witness(m: &RepMatroid) -> Result<Option<(LabelSet, LabelSet)>> {
    let r = m.rank();
    if r <= 2 {
        return Ok(None);
    }
    let red = m.reduced_rows();
    for h in hyperplanes(&red)? {
        let mut in_h = vec![false; red.len()];
        for &p in &h {
            in_h[p] = true;
        }
        let rest: Vec<usize> = (0..red.len()).filter(|&p| !in_h[p]).collect();
        if red.rank_of_positions(&rest) + 2 <= r {
            return Ok(Some((red.labels_of(&h), red.labels_of(&rest))));
        }
    }
    Ok(None)
}

pub fn is_weakly_round(m: &RepMatroid) -> Result<bool> {
    Ok(weak_roundness_witness(m)?.is_none())
}

/// A weakly round restriction `N` with `eps(N) > f(r(N))`.
///
/// While `N` is not weakly round, move to the side `A` of the witness
/// partition if `eps(A) > f(r(N) - 1)`, and otherwise to `B`, which then
/// has `eps(B) > f(r(N) - 2)`.
pub fn weakly_round_restriction(m: &RepMatroid, f: &DensityFunction) -> Result<RepMatroid> {
    if f.kind() != &DensityKind::Fibonacci {
        return Err(Error::Precondition("weakly round restriction needs a Fibonacci-type function".into()));
    }
    let r = m.rank();
    if r == 0 {
        return Err(Error::Precondition("rank 0".into()));
    }
    if !f.exceeded_by(m.point_count(), r)? {
        return Err(Error::Precondition(format!("eps(M) = {} does not exceed f({r})", m.point_count())));
    }
    let mut n = m.clone();
    while let Some((a, b)) = weak_roundness_witness(&n)? {
        let rn = n.rank();
        n = if f.exceeded_by(eps(&n, &a)?, rn - 1)? {
            n.restrict(&a)?
        } else if f.exceeded_by(eps(&n, &b)?, rn - 2)? {
            n.restrict(&b)?
        } else {
            return Err(Error::InvariantViolated(format!("neither side of a rank-{rn} partition is dense")));
        };
    }
    if n.rank() == 0 || !f.exceeded_by(n.point_count(), n.rank())? {
        return Err(Error::InvariantViolated("restriction lost its density".into()));
    }
    Ok(n)
}

/// The least `r >= 1` with `alpha (sqrt 5 - 1)^r >= 2 (ell^(r_target-1) - 1)/(ell - 1)`.
pub fn rank_threshold(ell: u64, alpha: &BigRational, r_target: usize) -> Result<usize> {
    if ell < 2 || r_target == 0 || !alpha.is_positive() {
        return Err(Error::InvalidParameter("need ell >= 2, r_target >= 1 and alpha > 0".into()));
    }
    let kung = kung_bound(ell, r_target as u64 - 1)?;
    let rhs = Quad::rational(BigRational::from_integer(BigInt::from(2u8) * BigInt::from(kung)));
    let base = Quad::sqrt5_minus_one();
    let mut lhs = Quad::rational(alpha.clone());
    for r in 1..=100_000 {
        lhs = &lhs * &base;
        if lhs >= rhs {
            return Ok(r);
        }
    }
    Err(Error::Overflow("rank threshold"))
}

/// A weakly round restriction `N` with `eps(N) > g(r(N))` and `r(N) >= r_target`.
///
/// Runs [`weakly_round_restriction`] with `f(n) = phi^(n - r(M)) g(r(M))`,
/// which dominates `g` below `r(M)`; the rank bound then follows from the
/// Kung bound for `U(ell)` and is re-checked.
pub fn weakly_round_with_rank_guarantee(
    m: &RepMatroid,
    ell: u64,
    alpha: &BigRational,
    g: &DensityFunction,
    r_target: usize,
) -> Result<RepMatroid> {
    if ell < m.field().order() as u64 {
        return Err(Error::Precondition(format!("ell = {ell} is below the field order {}", m.field().order())));
    }
    match g.kind() {
        DensityKind::Doubling { alpha: a } if a >= alpha => {}
        _ => return Err(Error::Precondition("g must be a doubling function with g(1) >= alpha".into())),
    }
    let r = m.rank();
    if r == 0 || !g.exceeded_by(m.point_count(), r)? {
        return Err(Error::Precondition(format!("eps(M) = {} does not exceed g({r})", m.point_count())));
    }
    let needed = rank_threshold(ell, alpha, r_target)?;
    if r < needed {
        return Err(Error::ThresholdUnmet { have: r, needed });
    }
    let top = g.at(r)?;
    if !top.b.is_zero() {
        return Err(Error::InvalidParameter("g must be rational-valued".into()));
    }
    let f = DensityFunction::golden(&top.a, r)?;
    let n = weakly_round_restriction(m, &f)?;
    let rn = n.rank();
    if !is_weakly_round(&n)? || !g.exceeded_by(n.point_count(), rn)? {
        return Err(Error::InvariantViolated("restriction fails its density or roundness".into()));
    }
    if (n.point_count() as u128) <= kung_bound(ell, r_target as u64 - 1)? || rn < r_target {
        return Err(Error::InvariantViolated(format!("restriction has rank {rn} below {r_target}")));
    }
    Ok(n)
}

/// `lambda ((mu - 1)/ell)^k mu^r`
pub fn skew_density_bound(lambda: &BigRational, mu: &BigRational, ell: u64, k: usize, r: usize) -> BigRational {
    let ratio = (mu - BigRational::one()) / BigRational::from_integer(BigInt::from(ell));
    lambda * pow(&ratio, k) * pow(mu, r)
}

fn pow(x: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

fn exceeds(count: usize, bound: &BigRational) -> bool {
    BigRational::from_integer(BigInt::from(count)) > *bound
}

/// An inclusion-minimal subset of `a` with `eps > lambda mu^r`.
fn minimal_dense(m: &RepMatroid, a: &LabelSet, lambda: &BigRational, mu: &BigRational) -> Result<LabelSet> {
    let dense = |s: &LabelSet| -> Result<bool> {
        Ok(exceeds(eps(m, s)?, &(lambda * pow(mu, m.rank_of(s)?))))
    };
    let mut cur = a.clone();
    loop {
        let mut shrunk = false;
        for &x in a {
            if !cur.contains(&x) {
                continue;
            }
            let mut smaller = cur.clone();
            smaller.remove(&x);
            if dense(&smaller)? {
                cur = smaller;
                shrunk = true;
            }
        }
        if !shrunk {
            return Ok(cur);
        }
    }
}

/// One step: a subset of `a` skew to the nonloop `e` with density scaled by `(mu-1)/ell`.
fn skew_to_point(
    m: &RepMatroid,
    a: &LabelSet,
    e: Label,
    lambda: &BigRational,
    mu: &BigRational,
    ell: u64,
) -> Result<LabelSet> {
    if !m.closure(a)?.contains(&e) {
        return Ok(a.clone());
    }
    let a = minimal_dense(m, a, lambda, mu)?;
    if !m.closure(&a)?.contains(&e) {
        return Ok(a);
    }
    let mut ground = a.clone();
    ground.insert(e);
    let n = m.restrict(&ground)?;
    let r = n.rank();
    let mut basis = vec![e];
    for &x in &a {
        let mut cand = basis.clone();
        cand.push(x);
        if n.rank_of(&cand)? == cand.len() {
            basis = cand;
        }
    }
    let w = n.closure(&basis[2..])?;
    let mut h0 = w.clone();
    h0.insert(e);
    let h0 = n.closure(&h0)?;
    let mut best: Option<(usize, LabelSet)> = None;
    let mut seen: Vec<LabelSet> = Vec::new();
    for &x in &ground {
        if h0.contains(&x) {
            continue;
        }
        let mut s = w.clone();
        s.insert(x);
        let h = n.closure(&s)?;
        if seen.contains(&h) {
            continue;
        }
        let part: LabelSet = h.intersection(&a).copied().collect();
        let count = eps(m, &part)?;
        if best.as_ref().is_none_or(|(c, _)| count > *c) {
            best = Some((count, part));
        }
        seen.push(h);
    }
    let (count, part) = best.ok_or_else(|| Error::InvariantViolated("no hyperplane avoids the point".into()))?;
    let needed = skew_density_bound(lambda, mu, ell, 1, r - 1);
    if !exceeds(count, &needed) {
        return Err(Error::InvariantViolated(format!("majority hyperplane has only {count} points")));
    }
    Ok(part)
}

/// A subset `A'` of `a` skew to `b` with `eps(A') > lambda ((mu-1)/ell)^k mu^r(A')`.
///
/// Processes a basis of `b` one element at a time, contracting each
/// processed element. Requires `mu <= ell + 1` and, when `b` has rank
/// `t >= 1`, `lambda ((mu-1)/ell)^(t-1) mu >= 1`.
#[allow(clippy::too_many_arguments)]
pub fn find_skew_dense_subset(
    m: &RepMatroid,
    a: &LabelSet,
    b: &LabelSet,
    lambda: &BigRational,
    mu: &BigRational,
    ell: u64,
    k: usize,
) -> Result<LabelSet> {
    let pre = |msg: String| Err(Error::Precondition(msg));
    if !a.is_disjoint(b) {
        return pre("A and B intersect".into());
    }
    if !lambda.is_positive() || *mu <= BigRational::one() {
        return pre("need lambda > 0 and mu > 1".into());
    }
    if ell < 2 || ell < m.field().order() as u64 {
        return pre(format!("ell = {ell} is below 2 or the field order"));
    }
    if *mu > BigRational::from_integer(BigInt::from(ell + 1)) {
        return pre(format!("mu exceeds ell + 1 = {}", ell + 1));
    }
    let t = m.rank_of(b)?;
    if t > k {
        return pre(format!("r(B) = {t} exceeds k = {k}"));
    }
    if !exceeds(eps(m, a)?, &(lambda * pow(mu, m.rank_of(a)?))) {
        return pre("A is not dense enough".into());
    }
    if t >= 1 && skew_density_bound(lambda, mu, ell, t - 1, 1) < BigRational::one() {
        return pre("lambda ((mu-1)/ell)^(r(B)-1) mu is below 1".into());
    }

    let mut basis: Vec<Label> = Vec::new();
    for &x in b {
        let mut cand = basis.clone();
        cand.push(x);
        if m.rank_of(&cand)? == cand.len() {
            basis = cand;
        }
    }
    let mut cur_m = m.clone();
    let mut cur_a = a.clone();
    for (i, &e) in basis.iter().enumerate() {
        let lam = skew_density_bound(lambda, mu, ell, i, 0);
        cur_a = skew_to_point(&cur_m, &cur_a, e, &lam, mu, ell)?;
        cur_m = cur_m.contract([&e])?;
    }

    let ra = m.rank_of(&cur_a)?;
    let union: LabelSet = cur_a.union(b).copied().collect();
    if m.rank_of(&union)? != ra + t {
        return Err(Error::InvariantViolated("result is not skew to B".into()));
    }
    if !exceeds(eps(m, &cur_a)?, &skew_density_bound(lambda, mu, ell, k, ra)) {
        return Err(Error::InvariantViolated("result is not dense enough".into()));
    }
    Ok(cur_a)
}

/// `eps(M) - |PG^(k)(r(M)-1, q)|`
pub fn density_vs_epg(m: &RepMatroid, q: u64, k: usize) -> Result<i128> {
    let size = epg_size_formula(m.rank() as u64, q, k as u64)?;
    Ok(m.point_count() as i128 - size as i128)
}
