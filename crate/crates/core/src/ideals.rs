//! Term orders and Buchberger's algorithm over the rationals.
//!
//! Internally polynomials are kept primitive with integer coefficients and
//! exponent vectors permuted so that index 0 is the highest-priority
//! variable. Pair selection uses the normal strategy (smallest lcm first,
//! ties by pair index) with the Gebauer-Möller update, so the resulting
//! reduced basis does not depend on anything but the input order.

use std::cmp::Ordering;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::format_poly;
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("computation exceeded its deadline")]
    Timeout,
    #[error("ring arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    GrevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::GrevLex => "grevlex",
        })
    }
}

impl std::str::FromStr for OrderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grevlex" => Ok(OrderKind::GrevLex),
            other => Err(format!("unknown term order `{}`", other)),
        }
    }
}

/// A monomial order given by a kind, a variable priority and an optional
/// leading elimination block.
///
/// `priority[0]` is the largest variable. With `block = Some(k)` the first
/// `k` variables in priority order form a block compared first (by
/// degree-reverse-lex); the remaining variables are compared by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    block: Option<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, arity: usize) -> Self {
        TermOrder { kind, priority: (0..arity).collect(), block: None }
    }

    pub fn lex(arity: usize) -> Self {
        Self::new(OrderKind::Lex, arity)
    }

    pub fn grevlex(arity: usize) -> Self {
        Self::new(OrderKind::GrevLex, arity)
    }

    /// Same kind with `priority[0] > priority[1] > ...`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut check = priority.clone();
        check.sort_unstable();
        assert!(check.iter().enumerate().all(|(i, &v)| i == v), "priority must be a permutation");
        TermOrder { kind, priority, block: None }
    }

    /// Block order in which every variable of `eliminate` is larger than
    /// any monomial in the remaining ones; the rest keep the relative
    /// priority of `base`.
    pub fn elimination(base: &TermOrder, eliminate: &[usize]) -> Self {
        let mut priority: Vec<usize> = base.priority.iter().copied().filter(|v| eliminate.contains(v)).collect();
        let k = priority.len();
        priority.extend(base.priority.iter().copied().filter(|v| !eliminate.contains(v)));
        TermOrder { kind: base.kind, priority, block: Some(k) }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    /// Order on a ring with `extra` new variables appended, all smaller
    /// than the existing ones.
    pub fn extended(&self, extra: usize) -> Self {
        let mut priority = self.priority.clone();
        let n = priority.len();
        priority.extend(n..n + extra);
        TermOrder { kind: self.kind, priority, block: self.block }
    }

    pub fn describe(&self) -> String {
        match self.block {
            None => self.kind.to_string(),
            Some(k) => format!("block({}; {})", k, self.kind),
        }
    }

    fn internal(&self, m: &Monomial) -> IMono {
        let e: Box<[u16]> = self
            .priority
            .iter()
            .map(|&v| u16::try_from(m.exponent(v)).expect("exponent fits in u16"))
            .collect();
        IMono::new(e)
    }

    fn external(&self, m: &IMono) -> Monomial {
        let mut e = vec![0u32; self.priority.len()];
        for (k, &v) in self.priority.iter().enumerate() {
            e[v] = m.e[k] as u32;
        }
        Monomial::new(e)
    }

    /// Compares two monomials of the ring.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_internal(&self.internal(a), &self.internal(b))
    }

    fn cmp_internal(&self, a: &IMono, b: &IMono) -> Ordering {
        match self.block {
            None => match self.kind {
                OrderKind::Lex => a.e.cmp(&b.e),
                OrderKind::GrevLex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.e, &b.e)),
            },
            Some(k) => {
                let (a1, a2) = a.e.split_at(k);
                let (b1, b2) = b.e.split_at(k);
                grevlex_slice(a1, b1).then_with(|| match self.kind {
                    OrderKind::Lex => a2.cmp(b2),
                    OrderKind::GrevLex => grevlex_slice(a2, b2),
                })
            }
        }
    }

    /// Leading monomial of `p`.
    pub fn leading_monomial(&self, p: &Polynomial) -> Option<Monomial> {
        p.monomials().max_by(|a, b| self.cmp(a, b)).cloned()
    }
}

fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

fn grevlex_slice(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
struct IMono {
    deg: u32,
    e: Box<[u16]>,
}

impl IMono {
    fn new(e: Box<[u16]>) -> Self {
        let deg = e.iter().map(|&x| x as u32).sum();
        IMono { deg, e }
    }

    fn divides(&self, other: &IMono) -> bool {
        self.deg <= other.deg && self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &IMono) -> IMono {
        IMono { deg: self.deg + other.deg, e: self.e.iter().zip(other.e.iter()).map(|(a, b)| a + b).collect() }
    }

    fn div(&self, other: &IMono) -> IMono {
        IMono { deg: self.deg - other.deg, e: self.e.iter().zip(other.e.iter()).map(|(a, b)| a - b).collect() }
    }

    fn lcm(&self, other: &IMono) -> IMono {
        IMono::new(self.e.iter().zip(other.e.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    fn coprime(&self, other: &IMono) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn is_one(&self) -> bool {
        self.deg == 0
    }
}

/// Integer polynomial with terms sorted in decreasing term order.
type IPoly = Vec<(IMono, BigInt)>;

fn content(p: &IPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides by the content and makes the leading coefficient positive.
/// Returns the divisor used.
fn make_primitive(p: &mut IPoly) -> BigInt {
    if p.is_empty() {
        return BigInt::one();
    }
    let mut g = content(p);
    if p[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in p.iter_mut() {
            *c = &*c / &g;
        }
    }
    g
}

/// `a·p - c·m·g`, dropping the leading terms of `p` and `m·g`, which are
/// assumed to cancel.
fn combine(ord: &TermOrder, a: &BigInt, p: &[(IMono, BigInt)], c: &BigInt, m: &IMono, g: &[(IMono, BigInt)]) -> IPoly {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (1, 1);
    while i < p.len() || j < g.len() {
        if j >= g.len() {
            out.push((p[i].0.clone(), a * &p[i].1));
            i += 1;
            continue;
        }
        let gm = m.mul(&g[j].0);
        if i >= p.len() {
            out.push((gm, -(c * &g[j].1)));
            j += 1;
            continue;
        }
        match ord.cmp_internal(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push((p[i].0.clone(), a * &p[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(c * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = a * &p[i].1 - c * &g[j].1;
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` by `basis`. Returns a primitive remainder `r`
/// and the factor `k` with `r = k · NF(p)`.
fn reduce_full(ord: &TermOrder, p: IPoly, basis: &[&IPoly], deadline: Option<Instant>) -> Result<(IPoly, Rational), GroebnerError> {
    let mut p = p;
    let mut rem: IPoly = Vec::new();
    let mut scale = Rational::one();
    let mut steps = 0usize;
    while !p.is_empty() {
        let lm = &p[0].0;
        let reducer = basis.iter().find(|g| g[0].0.divides(lm));
        match reducer {
            None => {
                let t = p.remove(0);
                rem.push(t);
            }
            Some(g) => {
                let m = lm.div(&g[0].0);
                let gg = p[0].1.gcd(&g[0].1);
                let a = &g[0].1 / &gg;
                let c = &p[0].1 / &gg;
                p = combine(ord, &a, &p, &c, &m, g);
                if !a.is_one() {
                    for (_, x) in rem.iter_mut() {
                        *x = &*x * &a;
                    }
                    scale *= Rational::from_integer(a);
                }
                steps += 1;
                if steps.is_multiple_of(16) {
                    if let Some(d) = deadline {
                        if Instant::now() > d {
                            return Err(GroebnerError::Timeout);
                        }
                    }
                    let mut g = content(&p);
                    for (_, x) in &rem {
                        if g.is_one() {
                            break;
                        }
                        g = g.gcd(x);
                    }
                    if !g.is_zero() && !g.is_one() {
                        for (_, x) in p.iter_mut().chain(rem.iter_mut()) {
                            *x = &*x / &g;
                        }
                        scale /= Rational::from_integer(g);
                    }
                }
            }
        }
    }
    let g = make_primitive(&mut rem);
    scale /= Rational::from_integer(g);
    Ok((rem, scale))
}

fn to_internal(ord: &TermOrder, p: &Polynomial) -> IPoly {
    let prim = p.primitive_part();
    let mut v: IPoly = prim.terms().map(|(m, c)| (ord.internal(m), c.to_integer())).collect();
    v.sort_by(|a, b| ord.cmp_internal(&b.0, &a.0));
    make_primitive(&mut v);
    v
}

fn to_external_monic(ord: &TermOrder, p: &IPoly) -> Polynomial {
    let lc = Rational::from_integer(p[0].1.clone());
    Polynomial::from_terms(ord.arity(), p.iter().map(|(m, c)| (ord.external(m), Rational::from_integer(c.clone()) / &lc)))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: IMono,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuchbergerOptions {
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_processed: usize,
    pub zero_reductions: usize,
    pub pairs_skipped: usize,
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: TermOrder,
    generators: Vec<Polynomial>,
    internal: Vec<IPoly>,
    stats: BuchbergerStats,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.generators == other.generators
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn arity(&self) -> usize {
        self.order.arity()
    }

    /// Monic generators sorted by increasing leading monomial.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn stats(&self) -> &BuchbergerStats {
        &self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|g| self.order.external(&g[0].0)).collect()
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.arity(), self.arity(), "arity mismatch");
        if p.is_zero() {
            return p.clone();
        }
        let denom = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let scaled = p.scale(&Rational::from_integer(denom.clone()));
        let mut ip: IPoly = scaled.terms().map(|(m, c)| (self.order.internal(m), c.to_integer())).collect();
        ip.sort_by(|a, b| self.order.cmp_internal(&b.0, &a.0));
        let refs: Vec<&IPoly> = self.internal.iter().collect();
        let (rem, scale) = reduce_full(&self.order, ip, &refs, None).expect("no deadline");
        if rem.is_empty() {
            return Polynomial::zero(self.arity());
        }
        // rem = scale · NF(denom · p)
        let factor = Rational::one() / (scale * Rational::from_integer(denom));
        Polynomial::from_terms(self.arity(), rem.iter().map(|(m, c)| (self.order.external(m), Rational::from_integer(c.clone()) * &factor)))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether every polynomial of `gens` lies in the ideal.
    pub fn contains_all(&self, gens: &[Polynomial]) -> bool {
        gens.iter().all(|g| self.contains(g))
    }

    /// First polynomial of `gens` outside the ideal.
    pub fn first_outside<'a>(&self, gens: &'a [Polynomial]) -> Option<&'a Polynomial> {
        gens.iter().find(|g| !self.contains(g))
    }

    pub fn to_json(&self, names: &[String]) -> String {
        let doc = serde_json::json!({
            "order": self.order.describe(),
            "vars": names,
            "generators": self.generators.iter().map(|g| format_poly(g, names)).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&doc).expect("basis serializes")
    }
}

/// Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder) -> GroebnerBasis {
    buchberger_with(gens, order, BuchbergerOptions::default()).expect("no deadline")
}

pub fn buchberger_with(gens: &[Polynomial], order: &TermOrder, opts: BuchbergerOptions) -> Result<GroebnerBasis, GroebnerError> {
    let arity = order.arity();
    for g in gens {
        if g.arity() != arity {
            return Err(GroebnerError::ArityMismatch { left: arity, right: g.arity() });
        }
    }
    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = BuchbergerStats::default();

    let unit = |order: &TermOrder, stats: BuchbergerStats| {
        let one = vec![(IMono::new(vec![0u16; arity].into_boxed_slice()), BigInt::one())];
        GroebnerBasis { order: order.clone(), generators: vec![to_external_monic(order, &one)], internal: vec![one], stats }
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let basis: Vec<&IPoly> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let (ip, _) = reduce_full(order, to_internal(order, g), &basis, opts.deadline)?;
        if ip.is_empty() {
            continue;
        }
        if ip[0].0.is_one() {
            return Ok(unit(order, stats));
        }
        insert(&mut polys, &mut active, &mut pairs, ip, &mut stats);
    }

    while !pairs.is_empty() {
        if let Some(d) = opts.deadline {
            if Instant::now() > d {
                return Err(GroebnerError::Timeout);
            }
        }
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp_internal(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        stats.pairs_processed += 1;
        let s = spoly(order, &polys[pair.i], &polys[pair.j], &pair.lcm);
        if s.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        let basis: Vec<&IPoly> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let (r, _) = reduce_full(order, s, &basis, opts.deadline)?;
        if r.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        if r[0].0.is_one() {
            // the reduced basis of the unit ideal is {1} regardless of options
            return Ok(unit(order, stats));
        }
        insert(&mut polys, &mut active, &mut pairs, r, &mut stats);
    }

    // minimal basis: the active set already has pairwise non-dividing
    // leading monomials
    let mut kept: Vec<IPoly> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    kept.sort_by(|a, b| order.cmp_internal(&a[0].0, &b[0].0));
    let mut reduced: Vec<IPoly> = Vec::with_capacity(kept.len());
    for k in 0..kept.len() {
        let others: Vec<&IPoly> = kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let head = vec![kept[k][0].clone()];
        let tail: IPoly = kept[k][1..].to_vec();
        let (tail_r, _) = reduce_tail(order, head, tail, &others, opts.deadline)?;
        reduced.push(tail_r);
    }
    let generators = reduced.iter().map(|p| to_external_monic(order, p)).collect();
    Ok(GroebnerBasis { order: order.clone(), generators, internal: reduced, stats })
}

/// Reduces the tail of `head + tail` while keeping the head term, returning
/// a primitive polynomial.
fn reduce_tail(ord: &TermOrder, head: IPoly, tail: IPoly, others: &[&IPoly], deadline: Option<Instant>) -> Result<(IPoly, Rational), GroebnerError> {
    if tail.is_empty() {
        let mut h = head;
        make_primitive(&mut h);
        return Ok((h, Rational::one()));
    }
    let (r, k) = reduce_full(ord, tail, others, deadline)?;
    // head + r/k scaled by k
    let num = k.numer().clone();
    let den = k.denom().clone();
    let mut out: IPoly = Vec::with_capacity(r.len() + 1);
    out.push((head[0].0.clone(), &head[0].1 * &num));
    for (m, c) in r {
        out.push((m, c * &den));
    }
    make_primitive(&mut out);
    Ok((out, Rational::one()))
}

fn spoly(ord: &TermOrder, f: &IPoly, g: &IPoly, lcm: &IMono) -> IPoly {
    let mf = lcm.div(&f[0].0);
    let mg = lcm.div(&g[0].0);
    let gg = f[0].1.gcd(&g[0].1);
    let a = &g[0].1 / &gg;
    let c = &f[0].1 / &gg;
    // a·mf·f - c·mg·g with leading terms cancelling
    let f_shift: IPoly = f.iter().map(|(m, x)| (m.mul(&mf), x.clone())).collect();
    let mut s = combine(ord, &a, &f_shift, &c, &mg, g);
    make_primitive(&mut s);
    s
}

/// Gebauer-Möller update after adding `h`.
fn insert(polys: &mut Vec<IPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: IPoly, stats: &mut BuchbergerStats) {
    let t = polys.len();
    let lh = h[0].0.clone();
    polys.push(h);
    active.push(true);

    let mut cands: Vec<Pair> = (0..t)
        .filter(|&i| active[i])
        .map(|i| Pair { i, j: t, lcm: polys[i][0].0.lcm(&lh) })
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    // chain criterion among the new pairs
    while let Some(p) = (!cands.is_empty()).then(|| cands.remove(0)) {
        let coprime = polys[p.i][0].0.coprime(&lh);
        let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        } else {
            stats.pairs_skipped += 1;
        }
    }
    // product criterion
    let before = kept.len();
    kept.retain(|p| !polys[p.i][0].0.coprime(&lh));
    stats.pairs_skipped += before - kept.len();

    let before = pairs.len();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm) && polys[p.i][0].0.lcm(&lh) != p.lcm && polys[p.j][0].0.lcm(&lh) != p.lcm)
    });
    stats.pairs_skipped += before - pairs.len();
    pairs.extend(kept);

    for i in 0..t {
        if active[i] && lh.divides(&polys[i][0].0) {
            active[i] = false;
        }
    }
}

/// Whether `p` lies in the ideal generated by `gens`.
pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial], order: &TermOrder) -> bool {
    buchberger(gens, order).contains(p)
}

/// Rabinowitsch test: `p ∈ √(gens)` iff `1 ∈ (gens, 1 - t·p)`.
pub fn radical_membership(p: &Polynomial, gens: &[Polynomial], order: &TermOrder) -> bool {
    radical_membership_with(p, gens, order, None).expect("no deadline")
}

pub fn radical_membership_with(p: &Polynomial, gens: &[Polynomial], order: &TermOrder, deadline: Option<Instant>) -> Result<bool, GroebnerError> {
    let n = order.arity();
    let mut ext: Vec<Polynomial> = gens.iter().map(|g| g.extend_arity(1)).collect();
    let t = Polynomial::var(n + 1, n);
    ext.push(&Polynomial::one(n + 1) - &(&t * &p.extend_arity(1)));
    let gb = buchberger_with(&ext, &order.extended(1), BuchbergerOptions { deadline })?;
    Ok(gb.is_unit())
}

/// Generators of `(gens) ∩ k[keep]`, from a Gröbner basis under an
/// elimination block order.
pub fn eliminate(gens: &[Polynomial], keep: &[usize], order: &TermOrder) -> Vec<Polynomial> {
    eliminate_with(gens, keep, order, None).expect("no deadline")
}

pub fn eliminate_with(gens: &[Polynomial], keep: &[usize], order: &TermOrder, deadline: Option<Instant>) -> Result<Vec<Polynomial>, GroebnerError> {
    let elim: Vec<usize> = (0..order.arity()).filter(|v| !keep.contains(v)).collect();
    let block = TermOrder::elimination(order, &elim);
    let gb = buchberger_with(gens, &block, BuchbergerOptions { deadline })?;
    Ok(gb.generators().iter().filter(|g| g.monomials().all(|m| m.only_uses(|i| keep.contains(&i)))).cloned().collect())
}

/// Gröbner basis of the saturation `(gens) : q^∞` under `order`.
pub fn saturate(gens: &[Polynomial], q: &Polynomial, order: &TermOrder) -> GroebnerBasis {
    saturate_with(gens, q, order, None).expect("no deadline")
}

pub fn saturate_with(gens: &[Polynomial], q: &Polynomial, order: &TermOrder, deadline: Option<Instant>) -> Result<GroebnerBasis, GroebnerError> {
    assert!(!q.is_zero(), "saturation by zero");
    let n = order.arity();
    let mut ext: Vec<Polynomial> = gens.iter().map(|g| g.extend_arity(1)).collect();
    let t = Polynomial::var(n + 1, n);
    ext.push(&(&t * &q.extend_arity(1)) - &Polynomial::one(n + 1));
    let block = TermOrder::elimination(&order.extended(1), &[n]);
    let gb = buchberger_with(&ext, &block, BuchbergerOptions { deadline })?;
    let kept: Vec<Polynomial> = gb.generators().iter().filter_map(|g| g.restrict_arity(n)).collect();
    // the t-free part is already a reduced basis for the inner order
    buchberger_with(&kept, order, BuchbergerOptions { deadline })
}
