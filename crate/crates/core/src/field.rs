//! Exact arithmetic in GF(p^e).
//!
//! Elements are encoded as integers `c0 + c1*p + ... + c_{e-1}*p^{e-1}` over
//! the polynomial basis `1, x, ..., x^{e-1}` of `GF(p)[x] / (modulus)`. The
//! modulus is the lexicographically least monic irreducible polynomial of
//! degree `e`, compared on the coefficient tuple `(c_{e-1}, ..., c_0)`; that
//! order coincides with the integer encoding of the low coefficients, so the
//! search is a plain scan.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Full addition tables are kept for fields up to this order.
const ADD_TABLE_MAX: u32 = 256;

/// An element of a finite field, stored as its radix-p encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field GF(p^e) with its arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FieldElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 || p > u32::MAX as u64 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p), in place.
/// Coefficients are stored lowest degree first.
fn poly_rem(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        a.pop();
    }
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut divisor = digits(v as u32, p, d as u32);
            divisor.push(1);
            let mut r = m.to_vec();
            poly_rem(&mut r, &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^e) with the deterministic modulus and generator.
    pub fn new(p: u32, e: u32) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p, e, cap: MAX_FIELD_ORDER });
        }
        let q = order as u32;

        let mut modulus = None;
        for v in 0..q {
            let mut m = digits(v, p, e);
            m.push(1);
            if is_irreducible(&m, p) {
                modulus = Some(m);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of every degree exists");

        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            generator: FieldElem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add: None,
        };
        spec.neg = (0..q)
            .map(|v| undigits(&digits(v, p, e).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p))
            .collect();

        let n = q - 1;
        let mut found = None;
        for g in 1..q {
            let mut x = 1u32;
            let mut order = 0u32;
            loop {
                x = spec.slow_mul(x, g);
                order += 1;
                if x == 1 {
                    break;
                }
            }
            if order == n {
                found = Some(g);
                break;
            }
        }
        let g = found.expect("the multiplicative group is cyclic");
        spec.generator = FieldElem(g);
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp.push(x);
            log[x as usize] = i;
            x = spec.slow_mul(x, g);
        }
        spec.exp = exp;
        spec.log = log;

        if q <= ADD_TABLE_MAX && p != 2 {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = spec.slow_add(a, b);
                }
            }
            spec.add = Some(table);
        }
        Ok(spec)
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        let (p, e) = prime_power(q)?;
        FieldSpec::new(p, e)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let da = digits(a, self.p, self.e);
        let db = digits(b, self.p, self.e);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let da = digits(a, self.p, self.e);
        let db = digits(b, self.p, self.e);
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        poly_rem(&mut prod, &self.modulus, self.p);
        prod.resize(self.e as usize, 0);
        undigits(&prod, self.p)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, lowest degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q).map(FieldElem)
    }

    pub fn element(&self, value: u32) -> Result<FieldElem> {
        if value < self.q {
            Ok(FieldElem(value))
        } else {
            Err(Error::InvalidElement { value, order: self.q })
        }
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 < self.q
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => FieldElem(t[(a.0 * self.q + b.0) as usize]),
            None => FieldElem(self.slow_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(FieldElem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, n: u64) -> FieldElem {
        if n == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let ord = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (n % ord) % ord;
        FieldElem(self.exp[l as usize])
    }

    /// Discrete logarithm to the base of [`FieldSpec::generator`].
    pub fn log(&self, a: FieldElem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a.0 as usize])
    }

    pub fn exp(&self, i: u64) -> FieldElem {
        FieldElem(self.exp[(i % (self.q - 1) as u64) as usize])
    }

    /// Returns `d` when `s = p^d` with `d | e`.
    fn subfield_degree(&self, s: u64) -> Result<u32> {
        let err = Error::NotASubfield { s, order: self.q };
        let (p, d) = prime_power(s).map_err(|_| err.clone())?;
        if p != self.p || !self.e.is_multiple_of(d) {
            return Err(err);
        }
        Ok(d)
    }

    pub fn is_subfield_order(&self, s: u64) -> bool {
        self.subfield_degree(s).is_ok()
    }

    /// `a^s` for a subfield order `s`.
    pub fn frobenius(&self, a: FieldElem, s: u64) -> Result<FieldElem> {
        self.subfield_degree(s)?;
        Ok(self.pow(a, s))
    }

    /// The subfield of order `s`: the fixed points of `x -> x^s`, sorted by encoding.
    pub fn subfield_elements(&self, s: u64) -> Result<Vec<FieldElem>> {
        self.subfield_degree(s)?;
        Ok(self.elements().filter(|&x| self.pow(x, s) == x).collect())
    }

    pub fn in_subfield(&self, a: FieldElem, s: u64) -> bool {
        self.pow(a, s) == a
    }

    /// The order `q` of the subfield when this field has order `q^2`.
    pub fn half_order(&self) -> Result<u32> {
        if !self.e.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "GF({}) is not a quadratic extension",
                self.q
            )));
        }
        Ok(self.p.pow(self.e / 2))
    }

    /// Least-encoded element of GF(q^2) outside GF(q).
    pub fn pick_omega(&self, q: u64) -> Result<FieldElem> {
        if (q as u128) * (q as u128) != self.q as u128 {
            return Err(Error::InvalidParameter(format!(
                "field of order {} is not GF({}^2)",
                self.q, q
            )));
        }
        self.subfield_degree(q)?;
        Ok(self
            .elements()
            .find(|&x| self.pow(x, q) != x)
            .expect("a proper subfield misses some element"))
    }

    /// Writes `x = v + omega * v'` with `v, v'` in GF(q), where this field is GF(q^2).
    pub fn decompose(&self, omega: FieldElem, x: FieldElem) -> Result<(FieldElem, FieldElem)> {
        let q = self.half_order()? as u64;
        let omega_conj = self.pow(omega, q);
        let denom = self.sub(omega, omega_conj);
        if denom.is_zero() {
            return Err(Error::OmegaInSubfield(q as u32));
        }
        // x^q = v + omega^q v', so x - x^q = (omega - omega^q) v'.
        let v_prime = self.div(self.sub(x, self.pow(x, q)), denom)?;
        let v = self.sub(x, self.mul(omega, v_prime));
        Ok((v, v_prime))
    }

    /// Image of each element of `small` (indexed by encoding) in this field.
    ///
    /// The embedding sends the generator `x` of `small`'s polynomial basis to
    /// the least-encoded root of `small`'s modulus in this field.
    pub fn embedding_of(&self, small: &FieldSpec) -> Result<Vec<FieldElem>> {
        if small.p != self.p || !self.e.is_multiple_of(small.e) {
            return Err(Error::NotASubfield { s: small.q as u64, order: self.q });
        }
        let eval = |coeffs: &[u32], at: FieldElem| {
            coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| {
                self.add(self.mul(acc, at), FieldElem(c))
            })
        };
        let root = self
            .elements()
            .find(|&t| eval(&small.modulus, t).is_zero())
            .expect("the modulus of a subfield splits in the extension");
        Ok(small
            .elements()
            .map(|a| eval(&digits(a.0, small.p, small.e), root))
            .collect())
    }
}
