//! Weighted projective stabilizers and line bundles on orbifold `P^1`.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::SurfaceFamily;
use crate::poly::{int, rat, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("stabilizer of an empty support")]
    EmptySupport,
    #[error("coordinate {index} out of range for {len} degrees")]
    BadCoordinate { index: usize, len: usize },
    #[error("tuple {0:?} is not an orbifold P^1 of Fano type")]
    NotFano(Vec<u64>),
}

/// gcd of the degrees of the coordinates in `support`.
pub fn stabilizer_order(support: &[usize], degrees: &[u64]) -> Result<u64, OrbifoldError> {
    if support.is_empty() {
        return Err(OrbifoldError::EmptySupport);
    }
    let mut g = 0u64;
    for &i in support {
        let d = *degrees.get(i).ok_or(OrbifoldError::BadCoordinate { index: i, len: degrees.len() })?;
        g = g.gcd(&d);
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationDatum {
    /// Pattern like `[*:0:*]`, `*` marking the nonzero coordinates.
    pub label: String,
    pub support: Vec<usize>,
    /// Number of points of `P(S)` with exactly this support; `None` for a
    /// whole curve.
    pub points: Option<u64>,
    pub stabilizer: u64,
    pub index: u64,
}

fn support_label(support: &[usize]) -> String {
    let parts: Vec<&str> = (0..3).map(|i| if support.contains(&i) { "*" } else { "0" }).collect();
    format!("[{}]", parts.join(":"))
}

// Dense univariate polynomials over Q, lowest degree first.
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().expect("nonempty") / &lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &q * c;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct nonzero complex roots.
fn distinct_nonzero_roots(p: &[Rational]) -> u64 {
    let p = trim(p.to_vec());
    let low = p.iter().take_while(|c| c.is_zero()).count();
    let h: Vec<Rational> = p[low.min(p.len())..].to_vec();
    if h.len() <= 1 {
        return 0;
    }
    let dh: Vec<Rational> = h.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect();
    let g = poly_gcd(&h, &dh);
    ((h.len() - 1) - (g.len() - 1)) as u64
}

/// Restriction of `f` to the coordinate plane `x_i, x_j` (others zero),
/// then `x_j = 1`, as a polynomial in `x_i`.
fn dehomogenized(f: &Polynomial, i: usize, j: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for (m, c) in f.terms() {
        if !m.only_uses(|k| k == i || k == j) {
            continue;
        }
        let e = m.exponent(i) as usize;
        if out.len() <= e {
            out.resize(e + 1, Rational::zero());
        }
        out[e] += c;
    }
    trim(out)
}

fn vanishes_on_axis(f: &Polynomial, i: usize) -> bool {
    !f.terms().any(|(m, c)| !c.is_zero() && m.only_uses(|k| k == i))
}

/// Whether `x_i` vanishes identically on `f = 0`, i.e. `f` is a multiple
/// of `x_i` by a nonzero constant.
fn coordinate_is_zero_on(f: &Polynomial, i: usize) -> bool {
    f.len() == 1 && f.terms().all(|(m, _)| m.total_degree() == 1 && m.exponent(i) == 1)
}

/// Points of `P(S)` whose stabilizer exceeds the generic one, grouped by
/// support. The generic stabilizer `d` is the gcd of the degrees of the
/// coordinates that do not vanish on `S`.
pub fn ramification_data(family: &SurfaceFamily) -> Vec<RamificationDatum> {
    let f = family.equation();
    let deg = family.d;
    let live: Vec<usize> = (0..3).filter(|&i| !coordinate_is_zero_on(&f, i)).collect();
    let d = stabilizer_order(&live, &deg).expect("some coordinate survives");
    let mut out = Vec::new();
    for (i, &stab) in deg.iter().enumerate() {
        if vanishes_on_axis(&f, i) {
            out.push(RamificationDatum { label: support_label(&[i]), support: vec![i], points: Some(1), stabilizer: stab, index: stab / d });
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let g = dehomogenized(&f, i, j);
        let stab = deg[i].gcd(&deg[j]);
        if g.is_empty() {
            // A whole curve of points with this stabilizer.
            if stab > d {
                out.push(RamificationDatum { label: support_label(&[i, j]), support: vec![i, j], points: None, stabilizer: stab, index: stab / d });
            }
            continue;
        }
        let roots = distinct_nonzero_roots(&g);
        let points = roots * stab / deg[j];
        if points > 0 {
            out.push(RamificationDatum { label: support_label(&[i, j]), support: vec![i, j], points: Some(points), stabilizer: stab, index: stab / d });
        }
    }
    out.retain(|r| r.index > 1);
    out
}

/// Ramification indices with multiplicity, sorted.
pub fn ramification_indices(family: &SurfaceFamily) -> Vec<u64> {
    let mut v: Vec<u64> = ramification_data(family)
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.index, r.points.unwrap_or(1) as usize))
        .collect();
    v.sort_unstable();
    v
}

/// Ramification indices of an orbifold `P^1`, sorted, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbifoldTuple {
    pub e: Vec<u64>,
}

impl OrbifoldTuple {
    pub fn new(mut e: Vec<u64>) -> Result<Self, OrbifoldError> {
        e.sort_unstable();
        let t = OrbifoldTuple { e };
        if t.e.len() > 3 || t.e.iter().any(|&x| x < 2) || !deg_canonical(&t).is_negative() {
            return Err(OrbifoldError::NotFano(t.e));
        }
        Ok(t)
    }

    pub fn lcm(&self) -> u64 {
        self.e.iter().fold(1, |l, &x| l.lcm(&x))
    }

    /// The family of the classification this tuple belongs to.
    pub fn family(&self) -> &'static str {
        match self.e.as_slice() {
            [] => "none",
            [_] => "(a)",
            [_, _] => "(a,b)",
            [2, 2, _] => "(2,2,n)",
            [2, 3, 3] | [2, 3, 4] | [2, 3, 5] => "(2,3,k)",
            _ => "other",
        }
    }
}

impl std::fmt::Display for OrbifoldTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `-2 + sum (1 - 1/e_i)`.
pub fn deg_canonical(tuple: &OrbifoldTuple) -> Rational {
    tuple.e.iter().fold(int(-2), |acc, &e| acc + Rational::one() - rat(1, e as i64))
}

/// Every sorted tuple of length at most three with entries in `[2, e_max]`
/// and negative canonical degree.
pub fn fano_tuples(e_max: u64) -> Vec<OrbifoldTuple> {
    let mut out = vec![OrbifoldTuple { e: vec![] }];
    for a in 2..=e_max {
        out.push(OrbifoldTuple { e: vec![a] });
        for b in a..=e_max {
            out.push(OrbifoldTuple { e: vec![a, b] });
            for c in b..=e_max {
                let t = OrbifoldTuple { e: vec![a, b, c] };
                if deg_canonical(&t).is_negative() {
                    out.push(t);
                }
            }
        }
    }
    out
}

pub fn tau_power(tau: u64, m: u64) -> u64 {
    tau / m.gcd(&tau)
}

/// An orbifold line bundle through its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbiLineBundle {
    pub degree: Rational,
    pub tau: Vec<u64>,
}

/// Normal form `n0 [pt] + sum k_i [Q_i / e_i]` with `0 <= k_i < e_i`; two
/// bundles are isomorphic iff their normal forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleClass {
    pub n0: i64,
    pub k: Vec<u64>,
}

impl BundleClass {
    pub fn anticanonical(tuple: &OrbifoldTuple) -> Self {
        BundleClass { n0: 2 - tuple.e.len() as i64, k: vec![1; tuple.e.len()] }
    }

    pub fn degree(&self, tuple: &OrbifoldTuple) -> Rational {
        self.k.iter().zip(&tuple.e).fold(int(self.n0), |acc, (&k, &e)| acc + rat(k as i64, e as i64))
    }

    pub fn power(&self, tuple: &OrbifoldTuple, m: u64) -> Self {
        let mut n0 = self.n0 * m as i64;
        let mut k = Vec::with_capacity(self.k.len());
        for (&ki, &e) in self.k.iter().zip(&tuple.e) {
            let total = ki * m;
            n0 += (total / e) as i64;
            k.push(total % e);
        }
        BundleClass { n0, k }
    }

    pub fn invariants(&self, tuple: &OrbifoldTuple) -> OrbiLineBundle {
        OrbiLineBundle {
            degree: self.degree(tuple),
            tau: self.k.iter().zip(&tuple.e).map(|(&k, &e)| e / k.gcd(&e)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautSolution {
    pub c: u64,
    pub exists: bool,
    pub unique: bool,
    pub bundle: Option<OrbiLineBundle>,
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|c| n.is_multiple_of(*c)).collect()
}

/// Candidate orders `c` of a root of `-K`: `deg(-K)/c` must lie in
/// `(1/lcm) Z`, so `c` divides `lcm * deg(-K)`.
pub fn root_order_candidates(tuple: &OrbifoldTuple) -> Vec<u64> {
    let n = -deg_canonical(tuple) * int(tuple.lcm() as i64);
    let n = n.to_integer().to_u64().expect("Fano tuples have positive anticanonical degree");
    divisors(n)
}

fn mod_inverse(c: u64, e: u64) -> Option<u64> {
    if e == 1 {
        return Some(0);
    }
    (1..e).find(|&k| (c * k) % e == 1)
}

/// Roots `L` with `L^c = -K`: each `tau_i(-K) = e_i` forces
/// `gcd(c, e_i) = 1`, which fixes `k_i = c^{-1} mod e_i`; then `n0` is
/// determined by the degree and must be an integer.
pub fn taut_bundle_solutions(tuple: &OrbifoldTuple) -> Vec<TautSolution> {
    let minus_k = BundleClass::anticanonical(tuple);
    let r = tuple.e.len() as i64;
    root_order_candidates(tuple)
        .into_iter()
        .map(|c| {
            let ks: Option<Vec<u64>> = tuple.e.iter().map(|&e| if c.gcd(&e) == 1 { mod_inverse(c, e) } else { None }).collect();
            let bundle = ks.and_then(|k| {
                let carry: i64 = k.iter().zip(&tuple.e).map(|(&ki, &e)| ((c * ki) / e) as i64).sum();
                let rest = (2 - r) - carry;
                (rest % c as i64 == 0).then(|| BundleClass { n0: rest / c as i64, k })
            });
            debug_assert!(bundle.as_ref().is_none_or(|b| b.power(tuple, c) == minus_k));
            TautSolution { c, exists: bundle.is_some(), unique: bundle.is_some(), bundle: bundle.map(|b| b.invariants(tuple)) }
        })
        .collect()
}

/// Exhaustive search over normal forms with `|n0| <= bound`.
pub fn taut_bundle_search(tuple: &OrbifoldTuple, c: u64, bound: i64) -> Vec<BundleClass> {
    let minus_k = BundleClass::anticanonical(tuple);
    let mut ks: Vec<Vec<u64>> = vec![vec![]];
    for &e in &tuple.e {
        ks = ks.into_iter().flat_map(|k| (0..e).map(move |x| [k.clone(), vec![x]].concat())).collect();
    }
    let mut out = Vec::new();
    for k in ks {
        for n0 in -bound..=bound {
            let l = BundleClass { n0, k: k.clone() };
            if l.power(tuple, c) == minus_k {
                out.push(l);
            }
        }
    }
    out
}

/// JSON atlas of `fano_tuples(e_max)` with canonical degrees and the
/// roots of `-K`.
pub fn atlas_json(e_max: u64) -> serde_json::Value {
    let tuples: Vec<serde_json::Value> = fano_tuples(e_max)
        .iter()
        .map(|t| {
            let roots: Vec<serde_json::Value> = taut_bundle_solutions(t)
                .into_iter()
                .map(|s| {
                    serde_json::json!({
                        "c": s.c,
                        "exists": s.exists,
                        "unique": s.unique,
                        "degree": s.bundle.as_ref().map(|b| b.degree.to_string()),
                        "tau": s.bundle.as_ref().map(|b| b.tau.clone()),
                    })
                })
                .collect();
            serde_json::json!({
                "e": t.e,
                "family": t.family(),
                "deg_k": deg_canonical(t).to_string(),
                "roots": roots,
            })
        })
        .collect();
    serde_json::json!({ "e_max": e_max, "tuples": tuples })
}

/// Indices listed for each surface type: `d2/d, d3/d` for A_n and
/// `d1/d, d2/d` for the smooth case (only those above 1), `(n-2, 2, 2)` for
/// D_n and `(2, 3, k)` for the E types.
pub fn expected_indices(family: &SurfaceFamily) -> Vec<u64> {
    use crate::catalog::SurfaceKind::*;
    let d = family.d;
    let mut v = match family.kind {
        Smooth => {
            let g = d[0].gcd(&d[1]);
            vec![d[0] / g, d[1] / g]
        }
        A(_) => {
            let g = d[0].gcd(&d[1]).gcd(&d[2]);
            vec![d[1] / g, d[2] / g]
        }
        D(n) => vec![n as u64 - 2, 2, 2],
        E6 => vec![2, 3, 3],
        E7 => vec![2, 3, 4],
        E8 => vec![2, 3, 5],
    };
    v.retain(|&r| r > 1);
    v.sort_unstable();
    v
}

/// Checks the orbifold classification statements for entries up to
/// `max_index`.
pub fn verify_atlas(max_index: u64) -> crate::report::Report {
    let mut r = crate::report::Report::new(format!("orbifold max-index={}", max_index));
    let tuples = fano_tuples(max_index);
    let stray: Vec<String> = tuples.iter().filter(|t| t.family() == "other").map(|t| t.to_string()).collect();
    r.check("fano-families", stray.is_empty(), || format!("unexpected tuples {}", stray.join(" ")));
    let m = max_index.saturating_sub(1);
    let listed = 1 + m + m * (m + 1) / 2 + m + (3..=5).filter(|&k| k <= max_index).count() as u64;
    r.check("fano-count", tuples.len() as u64 == listed, || format!("{} tuples, expected {}", tuples.len(), listed));
    if max_index >= 5 {
        let k = deg_canonical(&OrbifoldTuple { e: vec![2, 3, 5] });
        r.check("deg-k-235", k == rat(-1, 30), || format!("deg K = {}", k));
    }
    let only_minus_k: Vec<String> = tuples
        .iter()
        .filter(|t| matches!(t.e.as_slice(), [2, 3, _]) || matches!(t.e.as_slice(), [2, 2, n] if n % 2 == 0))
        .filter(|t| t.e.len() == 3)
        .filter(|t| taut_bundle_solutions(t).iter().any(|s| s.exists && s.c != 1))
        .map(|t| t.to_string())
        .collect();
    r.check("taut-is-minus-k", only_minus_k.is_empty(), || format!("extra roots of -K on {}", only_minus_k.join(" ")));
    let odd_square: Vec<String> = tuples
        .iter()
        .filter(|t| matches!(t.e.as_slice(), [2, 2, n] if n % 2 == 1))
        .filter(|t| taut_bundle_solutions(t).iter().any(|s| s.c == 2 && s.exists))
        .map(|t| t.to_string())
        .collect();
    r.check("no-square-root-22odd", odd_square.is_empty(), || format!("square roots of -K on {}", odd_square.join(" ")));
    let search_bound = max_index.min(10);
    let disagree: Vec<String> = fano_tuples(search_bound)
        .iter()
        .flat_map(|t| {
            taut_bundle_solutions(t).into_iter().filter_map(move |s| {
                let hits = taut_bundle_search(t, s.c, 8);
                (s.exists != !hits.is_empty() || s.unique != (hits.len() == 1)).then(|| format!("{} c={}", t, s.c))
            })
        })
        .collect();
    r.check("taut-search-agrees", disagree.is_empty(), || disagree.join("; "));
    let bad_pairs: Vec<String> = (1..=40u64)
        .flat_map(|a| (1..=40u64).map(move |b| (a, b)))
        .filter(|&(a, b)| !divisor_condition_equiv(a, b))
        .map(|(a, b)| format!("({},{})", a, b))
        .collect();
    r.check("divisor-conditions", bad_pairs.is_empty(), || bad_pairs.join(" "));
    let rows: Vec<String> = SurfaceFamily::all_listed(max_index.min(20) as u32)
        .iter()
        .filter(|f| ramification_indices(f) != expected_indices(f))
        .map(|f| format!("{}: {:?}", f.kind, ramification_indices(f)))
        .collect();
    r.check("ramification", rows.is_empty(), || rows.join("; "));
    r
}

fn condition_one(a: u64, b: u64) -> BTreeSet<u64> {
    let m = a.gcd(&b);
    divisors(a / m + b / m).into_iter().filter(|c| c.gcd(&a) == 1 && c.gcd(&b) == 1).collect()
}

fn condition_two(a: u64, b: u64) -> BTreeSet<u64> {
    divisors(a + b).into_iter().filter(|c| c.gcd(&a).gcd(&b) == 1).collect()
}

/// The sets `{c | c divides a'+b', gcd(c,a) = gcd(c,b) = 1}` and
/// `{c | c divides a+b, gcd(c,a,b) = 1}`.
pub fn divisor_condition_sets(a: u64, b: u64) -> (BTreeSet<u64>, BTreeSet<u64>) {
    (condition_one(a, b), condition_two(a, b))
}

pub fn divisor_condition_equiv(a: u64, b: u64) -> bool {
    let (one, two) = divisor_condition_sets(a, b);
    one == two
}
