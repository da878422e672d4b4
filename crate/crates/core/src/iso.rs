//! Isomorphism testing for small simple represented matroids.
//!
//! Backtracking with forward checking. Candidate images must agree on a
//! per-point invariant (line and hyperplane size profiles), on membership in
//! the span of the mapped points, and on collinearity with every mapped
//! point. Once the mapped points span a hyperplane of the first matroid, its
//! image hyperplane is fixed and membership in it must be respected. A
//! complete assignment is accepted only if it maps the hyperplanes of one
//! matroid exactly onto the hyperplanes of the other, which characterizes
//! isomorphism.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::{self, Span};
use crate::matroid::{Label, LineStructure, RepMatroid};

/// Maximum number of points accepted by [`matroid_isomorphic`].
pub const ISO_CAP: usize = 512;

const FUNCTIONAL_CAP: u64 = 1 << 20;

type Bits = Box<[u64]>;

fn bits_from(positions: impl IntoIterator<Item = usize>, m: usize) -> Bits {
    let mut b = vec![0u64; m.div_ceil(64)].into_boxed_slice();
    for p in positions {
        b[p / 64] |= 1 << (p % 64);
    }
    b
}

fn bit(b: &Bits, p: usize) -> bool {
    b[p / 64] >> (p % 64) & 1 == 1
}

/// Kernels of the projective functionals of the row-reduced representation
/// that cut out a hyperplane of the matroid, as position sets.
pub(crate) fn hyperplanes(m: &RepMatroid) -> Result<Vec<Vec<usize>>> {
    let red = m.reduced_rows();
    let r = red.rows();
    if r == 0 {
        return Ok(Vec::new());
    }
    let f = red.field().clone();
    let count = linalg::projective_count(f.order() as u64, r as u32).unwrap_or(u64::MAX);
    if count > FUNCTIONAL_CAP {
        return Err(Error::OverCap { what: "functional enumeration", size: count, cap: FUNCTIONAL_CAP });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for phi in linalg::projective_points(&f, r) {
        let kernel: Vec<usize> = (0..red.len())
            .filter(|&i| linalg::dot(&f, &phi, red.column_at(i)).is_zero())
            .collect();
        if red.rank_of_positions(&kernel) + 1 == r && seen.insert(kernel.clone()) {
            out.push(kernel);
        }
    }
    Ok(out)
}

struct Prepared {
    m: RepMatroid,
    lines: LineStructure,
    invariant: Vec<Vec<usize>>,
    hyperplanes: Vec<Bits>,
    hyps_through: Vec<Vec<usize>>,
}

fn prepare(m: &RepMatroid) -> Result<Prepared> {
    let m = m.reduced_rows();
    let lines = m.line_structure()?;
    let hyps = hyperplanes(&m)?;
    let n = m.len();
    let mut invariant: Vec<Vec<usize>> = vec![Vec::new(); n];
    for l in &lines.lines {
        for &p in l {
            invariant[p].push(l.len());
        }
    }
    let mut hyp_sizes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for h in &hyps {
        for &p in h {
            hyp_sizes[p].push(h.len());
        }
    }
    for (inv, hs) in invariant.iter_mut().zip(hyp_sizes) {
        inv.sort_unstable();
        inv.push(usize::MAX);
        let mut hs = hs;
        hs.sort_unstable();
        inv.extend(hs);
    }
    let mut hyps_through = vec![Vec::new(); n];
    for (id, h) in hyps.iter().enumerate() {
        for &p in h {
            hyps_through[p].push(id);
        }
    }
    let hyperplanes = hyps.into_iter().map(|h| bits_from(h, n)).collect();
    Ok(Prepared { m, lines, invariant, hyperplanes, hyps_through })
}

const NONE: usize = usize::MAX;

/// Forward-checking backtracking. Each unmapped point of `a` keeps a domain
/// of possible images; the point with the smallest domain is mapped next.
struct Search<'a> {
    a: &'a Prepared,
    b: &'a Prepared,
    rank: usize,
    image: Vec<usize>,
    preimage: Vec<usize>,
    mapped: Vec<usize>,
    line_map: Vec<usize>,
    line_inv: Vec<usize>,
    hyp_map: Vec<usize>,
    hyp_inv: Vec<usize>,
    b_hyps: HashSet<Bits>,
}

/// Undo information for one assignment.
struct Trail {
    lines: Vec<usize>,
    hyps: Vec<usize>,
}

impl Search<'_> {
    /// Maps `e` to `f`, extending the line and hyperplane correspondences.
    fn assign(&mut self, e: usize, f: usize, trail: &mut Trail) -> bool {
        for i in 0..self.mapped.len() {
            let x = self.mapped[i];
            let la = self.a.lines.line_of(e, x);
            let lb = self.b.lines.line_of(f, self.image[x]);
            if self.a.lines.lines[la].len() != self.b.lines.lines[lb].len() {
                return false;
            }
            match (self.line_map[la], self.line_inv[lb]) {
                (NONE, NONE) => {
                    self.line_map[la] = lb;
                    self.line_inv[lb] = la;
                    trail.lines.push(la);
                }
                (m, i) if m == lb && i == la => {}
                _ => return false,
            }
        }
        self.image[e] = f;
        self.preimage[f] = e;
        self.mapped.push(e);
        let fa = self.a.m.field();
        for &ha in &self.a.hyps_through[e] {
            if self.hyp_map[ha] != NONE {
                if !bit(&self.b.hyperplanes[self.hyp_map[ha]], f) {
                    return false;
                }
                continue;
            }
            let h = &self.a.hyperplanes[ha];
            let mut span = Span::new(self.a.m.rows());
            for &x in &self.mapped {
                if bit(h, x) {
                    span.insert(fa, self.a.m.column_at(x));
                }
            }
            if span.rank() + 1 < self.rank {
                continue;
            }
            let mut matches = self.b.hyps_through[f].iter().copied().filter(|&hb| {
                self.hyp_inv[hb] == NONE
                    && self.mapped.iter().all(|&x| bit(h, x) == bit(&self.b.hyperplanes[hb], self.image[x]))
            });
            let (Some(hb), None) = (matches.next(), matches.next()) else {
                return false;
            };
            self.hyp_map[ha] = hb;
            self.hyp_inv[hb] = ha;
            trail.hyps.push(ha);
        }
        true
    }

    fn unassign(&mut self, e: usize, trail: Trail) {
        for la in trail.lines {
            self.line_inv[self.line_map[la]] = NONE;
            self.line_map[la] = NONE;
        }
        for ha in trail.hyps {
            self.hyp_inv[self.hyp_map[ha]] = NONE;
            self.hyp_map[ha] = NONE;
        }
        if self.mapped.last() == Some(&e) {
            self.mapped.pop();
            self.preimage[self.image[e]] = NONE;
            self.image[e] = NONE;
        }
    }

    /// Whether `x -> y` is still possible given the pair `e -> f` just made.
    fn compatible(&self, e: usize, f: usize, x: usize, y: usize, new_hyps: &[usize]) -> bool {
        if self.preimage[y] != NONE {
            return false;
        }
        let la = self.a.lines.line_of(e, x);
        let lb = self.b.lines.line_of(f, y);
        if self.a.lines.lines[la].len() != self.b.lines.lines[lb].len() {
            return false;
        }
        let (m, i) = (self.line_map[la], self.line_inv[lb]);
        if (m != NONE && m != lb) || (i != NONE && i != la) {
            return false;
        }
        new_hyps
            .iter()
            .all(|&ha| bit(&self.a.hyperplanes[ha], x) == bit(&self.b.hyperplanes[self.hyp_map[ha]], y))
    }

    fn verify(&self) -> bool {
        let n = self.a.m.len();
        self.a.hyperplanes.iter().all(|h| {
            let mapped = bits_from((0..n).filter(|&p| bit(h, p)).map(|p| self.image[p]), n);
            self.b_hyps.contains(&mapped)
        })
    }

    fn run(&mut self, domains: &[Vec<usize>], span_a: &Span, span_b: &Span) -> bool {
        let fa = self.a.m.field().clone();
        let fb = self.b.m.field().clone();
        // extend to a basis first, then take the most constrained point
        let spanning = span_a.rank() == self.rank;
        let Some(e) = (0..domains.len())
            .filter(|&x| self.image[x] == NONE)
            .filter(|&x| spanning || !span_a.contains(&fa, self.a.m.column_at(x)))
            .min_by_key(|&x| domains[x].len())
        else {
            return self.verify();
        };
        let e_in = span_a.contains(&fa, self.a.m.column_at(e));
        for &f in &domains[e] {
            if span_b.contains(&fb, self.b.m.column_at(f)) != e_in {
                continue;
            }
            let mut trail = Trail { lines: Vec::new(), hyps: Vec::new() };
            if !self.assign(e, f, &mut trail) {
                self.unassign(e, trail);
                continue;
            }
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(domains.len());
            let mut dead = false;
            for (x, dom) in domains.iter().enumerate() {
                if self.image[x] != NONE {
                    next.push(Vec::new());
                    continue;
                }
                let d: Vec<usize> =
                    dom.iter().copied().filter(|&y| self.compatible(e, f, x, y, &trail.hyps)).collect();
                dead |= d.is_empty();
                next.push(d);
                if dead {
                    break;
                }
            }
            if !dead {
                let (mut sa, mut sb) = (span_a.clone(), span_b.clone());
                sa.insert(&fa, self.a.m.column_at(e));
                sb.insert(&fb, self.b.m.column_at(f));
                if self.run(&next, &sa, &sb) {
                    return true;
                }
            }
            self.unassign(e, trail);
        }
        false
    }
}

/// A rank-preserving bijection between the ground sets, as label pairs, if one exists.
pub fn find_isomorphism(a: &RepMatroid, b: &RepMatroid) -> Result<Option<Vec<(Label, Label)>>> {
    if !a.is_simple() || !b.is_simple() {
        return Err(Error::NotSimple);
    }
    for m in [a, b] {
        if m.len() > ISO_CAP {
            return Err(Error::OverCap { what: "isomorphism test", size: m.len() as u64, cap: ISO_CAP as u64 });
        }
    }
    if a.len() != b.len() || a.rank() != b.rank() {
        return Ok(None);
    }
    let pa = prepare(a)?;
    let pb = prepare(b)?;
    if pa.hyperplanes.len() != pb.hyperplanes.len() || pa.lines.lines.len() != pb.lines.lines.len() {
        return Ok(None);
    }
    let mut ia = pa.invariant.clone();
    let mut ib = pb.invariant.clone();
    ia.sort();
    ib.sort();
    if ia != ib {
        return Ok(None);
    }
    let n = pa.m.len();
    let domains: Vec<Vec<usize>> =
        (0..n).map(|e| (0..n).filter(|&f| pb.invariant[f] == pa.invariant[e]).collect()).collect();
    let mut search = Search {
        a: &pa,
        b: &pb,
        rank: pa.m.rank(),
        image: vec![NONE; n],
        preimage: vec![NONE; n],
        mapped: Vec::with_capacity(n),
        line_map: vec![NONE; pa.lines.lines.len()],
        line_inv: vec![NONE; pb.lines.lines.len()],
        hyp_map: vec![NONE; pa.hyperplanes.len()],
        hyp_inv: vec![NONE; pb.hyperplanes.len()],
        b_hyps: pb.hyperplanes.iter().cloned().collect(),
    };
    let empty = Span::new(pa.m.rows());
    if !search.run(&domains, &empty, &Span::new(pb.m.rows())) {
        return Ok(None);
    }
    Ok(Some((0..n).map(|x| (pa.m.label_at(x), pb.m.label_at(search.image[x]))).collect()))
}

pub fn matroid_isomorphic(a: &RepMatroid, b: &RepMatroid) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}
