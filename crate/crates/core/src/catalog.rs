//! Concrete objects: the ADE surfaces, the slices `X_n`, degree tuples and
//! the 27-parameter exceptional ansatz.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ideals::{buchberger, radical_membership, saturate_with, GroebnerBasis, GroebnerError, TermOrder};
use crate::parse::{default_names, format_poly, parse_poly};
use crate::poisson::{gradient, surface_bracket_from_f, xyz_names, PoissonError, PoissonMatrix};
use crate::poly::{int, rat, GradingData, Monomial, Polynomial, Rational};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("weights {weights:?} are not allowed for {kind}: {reason}")]
    IllegalWeights { kind: SurfaceKind, weights: Vec<u64>, reason: String },
    #[error("invalid slice parameters n={n}, s={s}, t={t}: {reason}")]
    BadSlice { n: u32, s: u64, t: Rational, reason: String },
    #[error(transparent)]
    Poisson(#[from] PoissonError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::Smooth => write!(f, "smooth"),
            SurfaceKind::A(n) => write!(f, "A{}", n),
            SurfaceKind::D(n) => write!(f, "D{}", n),
            SurfaceKind::E6 => write!(f, "E6"),
            SurfaceKind::E7 => write!(f, "E7"),
            SurfaceKind::E8 => write!(f, "E8"),
        }
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        let index = |rest: &str| rest.parse::<u32>().map_err(|_| format!("bad family `{}`", s));
        match lower.as_str() {
            "smooth" => Ok(SurfaceKind::Smooth),
            "e6" => Ok(SurfaceKind::E6),
            "e7" => Ok(SurfaceKind::E7),
            "e8" => Ok(SurfaceKind::E8),
            _ if lower.starts_with('a') => Ok(SurfaceKind::A(index(&lower[1..])?)),
            _ if lower.starts_with('d') => Ok(SurfaceKind::D(index(&lower[1..])?)),
            _ => Err(format!("unknown family `{}`", s)),
        }
    }
}

/// A surface type together with weights `(s; d1, d2, d3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceFamily {
    pub kind: SurfaceKind,
    pub s: u64,
    pub d: [u64; 3],
}

fn gcd_all(v: &[u64]) -> u64 {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

impl SurfaceFamily {
    pub fn new(kind: SurfaceKind, s: u64, d: [u64; 3]) -> Result<Self, CatalogError> {
        let bad = |reason: &str| CatalogError::IllegalWeights { kind, weights: vec![s, d[0], d[1], d[2]], reason: reason.into() };
        if s == 0 || d.contains(&0) {
            return Err(bad("weights must be positive"));
        }
        match kind {
            SurfaceKind::Smooth => {
                if d[0] + d[1] != s {
                    return Err(bad("need d1 + d2 = s"));
                }
                if d[0].gcd(&d[1]) != 1 {
                    return Err(bad("d1 and d2 must be coprime"));
                }
            }
            SurfaceKind::A(n) => {
                if n < 1 {
                    return Err(bad("A_n needs n >= 1"));
                }
                if d[0] != s || (n as u64 + 1) * d[0] != d[1] + d[2] {
                    return Err(bad("need d1 = s and (n+1) d1 = d2 + d3"));
                }
                if gcd_all(&d) != 1 {
                    return Err(bad("degrees must be coprime"));
                }
            }
            SurfaceKind::D(n) => {
                if n < 4 {
                    return Err(bad("D_n needs n >= 4"));
                }
                if (s, d) != (1, [2, n as u64 - 2, n as u64 - 1]) {
                    return Err(bad("need (s, d) = (1; 2, n-2, n-1)"));
                }
            }
            SurfaceKind::E6 | SurfaceKind::E7 | SurfaceKind::E8 => {
                if (s, d) != Self::standard(kind).map(|f| (f.s, f.d)).expect("E types have standard weights") {
                    return Err(bad("weights are fixed for E types"));
                }
            }
        }
        Ok(SurfaceFamily { kind, s, d })
    }

    /// The listed weights; for A_n the choice `(1; 1, 1, n)` and for the
    /// smooth case `(5; 2, 3, 5)`.
    pub fn standard(kind: SurfaceKind) -> Result<Self, CatalogError> {
        let (s, d) = match kind {
            SurfaceKind::Smooth => (5, [2, 3, 5]),
            SurfaceKind::A(n) => (1, [1, 1, n as u64]),
            SurfaceKind::D(n) => (1, [2, (n as u64).saturating_sub(2), (n as u64).saturating_sub(1)]),
            SurfaceKind::E6 => (1, [3, 4, 6]),
            SurfaceKind::E7 => (1, [4, 6, 9]),
            SurfaceKind::E8 => (1, [6, 10, 15]),
        };
        match kind {
            SurfaceKind::E6 | SurfaceKind::E7 | SurfaceKind::E8 => Ok(SurfaceFamily { kind, s, d }),
            _ => Self::new(kind, s, d),
        }
    }

    pub fn grading(&self) -> GradingData {
        GradingData::new(self.s, self.d.to_vec())
    }

    /// Defining equation in `C[x, y, z]`.
    pub fn equation(&self) -> Polynomial {
        let names = xyz_names();
        let text = match self.kind {
            SurfaceKind::Smooth => "z".to_string(),
            SurfaceKind::A(n) => format!("x^{} + y*z", n + 1),
            SurfaceKind::D(n) => format!("x^{} + x*y^2 + z^2", n - 1),
            SurfaceKind::E6 => "x^4 + y^3 + z^2".to_string(),
            SurfaceKind::E7 => "x^3*y + y^3 + z^2".to_string(),
            SurfaceKind::E8 => "x^5 + y^3 + z^2".to_string(),
        };
        parse_poly(&text, &names).expect("catalog equations parse")
    }

    pub fn is_singular(&self) -> bool {
        self.kind != SurfaceKind::Smooth
    }

    /// Every row of the classification list with its listed weights, D_n
    /// and A_n for `n` up to `max_index`.
    pub fn all_listed(max_index: u32) -> Vec<SurfaceFamily> {
        let mut out = vec![SurfaceFamily::standard(SurfaceKind::Smooth).expect("standard")];
        out.extend((1..=max_index).map(|n| SurfaceFamily::standard(SurfaceKind::A(n)).expect("standard")));
        out.extend((4..=max_index.max(4)).map(|n| SurfaceFamily::standard(SurfaceKind::D(n)).expect("standard")));
        for k in [SurfaceKind::E6, SurfaceKind::E7, SurfaceKind::E8] {
            out.push(SurfaceFamily::standard(k).expect("standard"));
        }
        out
    }
}

pub fn make_surface(family: &SurfaceFamily) -> Result<(Polynomial, PoissonMatrix, GradingData), CatalogError> {
    let family = SurfaceFamily::new(family.kind, family.s, family.d)?;
    let f = family.equation();
    let theta = surface_bracket_from_f(&f, xyz_names())?;
    Ok((f, theta, family.grading()))
}

pub fn verify_surface(family: &SurfaceFamily) -> Result<Report, CatalogError> {
    let (f, theta, grading) = make_surface(family)?;
    Ok(verify_surface_equation(&format!("surface {}", family.kind), &f, &theta, &grading, family.is_singular()))
}

/// Checks for an arbitrary surface equation; the radical check is only run
/// when `singular` is set.
pub fn verify_surface_equation(job: &str, f: &Polynomial, theta: &PoissonMatrix, grading: &GradingData, singular: bool) -> Report {
    let mut r = Report::new(job);
    let failures = theta.jacobi_failures();
    r.check("jacobi", failures.is_empty(), || describe_jacobi(theta, &failures));
    let deg = theta.check_degree_homogeneity(grading, None);
    r.check("degree", deg.all_pass(), || deg.describe_failures());
    if singular {
        let jac = gradient(f, 3);
        let order = TermOrder::grevlex(3);
        let missing: Vec<String> = (0..3)
            .filter(|&i| !radical_membership(&Polynomial::var(3, i), &jac, &order))
            .map(|i| theta.names()[i].clone())
            .collect();
        r.check("radical", missing.is_empty(), || format!("not in the radical of the Jacobian ideal: {}", missing.join(", ")));
    }
    let expected = grading.d.iter().sum::<u64>() as i64 - grading.s as i64;
    let found = f.homogeneous_degree(&grading.degree_weights(3)).expect("arity 3");
    r.check("f-degree", found.admits(&int(expected)) && found.is_homogeneous(), || format!("expected {}, found {:?}", expected, found));
    r
}

fn describe_jacobi(theta: &PoissonMatrix, failures: &[((usize, usize, usize), Polynomial)]) -> String {
    failures
        .iter()
        .take(3)
        .map(|((i, j, k), p)| format!("J({},{},{}) = {}", i + 1, j + 1, k + 1, theta.format(p)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// The slice `X_n` in variables `(x, h, y, e0, e1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceXn {
    pub n: u32,
    pub s: u64,
    pub t: Rational,
    pub f: Polynomial,
    pub theta: PoissonMatrix,
    pub grading: GradingData,
}

pub fn xn_names() -> Vec<String> {
    ["x", "h", "y", "e0", "e1"].iter().map(|s| s.to_string()).collect()
}

/// `Δ = h² + 4xy`.
pub fn xn_delta() -> Polynomial {
    parse_poly("h^2 + 4*x*y", &xn_names()).expect("delta parses")
}

/// Degrees of `(x, h, y, e0, e1)`: `(s-2t, s, s+2t, (n-½)s-t, (n-½)s+t)`.
pub fn xn_degrees(n: u32, s: u64, t: &Rational) -> Result<Vec<u64>, CatalogError> {
    let bad = |reason: &str| CatalogError::BadSlice { n, s, t: t.clone(), reason: reason.into() };
    if n < 2 {
        return Err(bad("n must be at least 2"));
    }
    let sr = int(s as i64);
    if *t < Rational::zero() || t * int(2) >= sr {
        return Err(bad("need 0 <= t < s/2"));
    }
    let half = rat(1, 2);
    let e = (int(n as i64) - half) * &sr;
    let raw = [&sr - t * int(2), sr.clone(), &sr + t * int(2), &e - t, &e + t];
    raw.iter()
        .map(|v| {
            if v.is_integer() {
                Ok(v.to_integer().try_into().expect("positive degree"))
            } else {
                Err(bad(&format!("degree {} is not an integer", v)))
            }
        })
        .collect()
}

pub fn make_xn(n: u32, s: u64, t: Rational) -> Result<SliceXn, CatalogError> {
    let d = xn_degrees(n, s, &t)?;
    let names = xn_names();
    let p = |text: &str| parse_poly(text, &names).expect("slice entries parse");
    let top = xn_delta().pow(n - 1).scale(&int(2 * n as i64));
    let theta = PoissonMatrix::from_upper(
        names.clone(),
        5,
        [
            ((0, 1), p("-2*x")),
            ((0, 2), p("h")),
            ((0, 4), p("e0")),
            ((1, 2), p("-2*y")),
            ((1, 3), p("e0")),
            ((1, 4), p("-e1")),
            ((2, 3), p("e1")),
            ((3, 4), top),
        ],
    )?;
    let f = &p("-y*e0^2 + h*e0*e1 + x*e1^2") + &xn_delta().pow(n);
    let grading = GradingData::new(s, d).with_w(vec![int(2), int(0), int(-2), int(1), int(-1)]);
    Ok(SliceXn { n, s, t, f, theta, grading })
}

/// The matrix reconstructed in the normal-form argument, in variables
/// `x1..x5` with parameters `c1, c2, kappa`. Here `Δ = ½x1² + x2x3`.
pub fn reconstructed_matrix(n: u32) -> PoissonMatrix {
    let mut names = default_names(5);
    names.extend(["c1", "c2", "kappa"].iter().map(|s| s.to_string()));
    let p = |text: &str| parse_poly(text, &names).expect("entries parse");
    let delta = p("1/2*x1^2 + x2*x3");
    let top = &delta.pow(n - 1) * &p("kappa").scale(&int(n as i64));
    PoissonMatrix::from_upper(
        names.clone(),
        5,
        [
            ((0, 1), p("x2")),
            ((0, 2), p("-x3")),
            ((0, 3), p("1/2*x4")),
            ((0, 4), p("-1/2*x5")),
            ((1, 2), p("x1")),
            ((1, 4), p("c1*x4")),
            ((2, 3), p("c2*x5")),
            ((3, 4), top),
        ],
    )
    .expect("reconstructed matrix is well formed")
}

pub fn verify_xn(slice: &SliceXn) -> Report {
    let mut r = Report::new(format!("xn n={} s={} t={}", slice.n, slice.s, slice.t));
    let theta = &slice.theta;
    let failures = theta.jacobi_failures();
    r.check("jacobi", failures.is_empty(), || describe_jacobi(theta, &failures));
    match theta.check_pfaffian_condition(&slice.f) {
        Ok(lambda) => r.pass("pfaffian", Some(format!("lambda = {}", lambda))),
        Err(e) => r.fail("pfaffian", e.to_string()),
    }
    let deg = theta.check_degree_homogeneity(&slice.grading, Some(&slice.f));
    r.check("degree", deg.all_pass(), || deg.describe_failures());
    let grad = gradient(&slice.f, 5);
    r.check("kernel", theta.kernel_check(&grad), || "theta * grad f != 0".into());
    let recon = reconstructed_matrix(slice.n);
    let locus = buchberger(&[recon.parse("c1*c2 - 1/2").expect("parses")], &TermOrder::grevlex(recon.arity()));
    let bad: Vec<_> = recon.jacobiators().into_iter().filter(|(_, j)| !locus.contains(j)).collect();
    r.check("reconstructed-jacobi", bad.is_empty(), || describe_jacobi(&recon, &bad));
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TupleCase {
    Case1,
    Case2,
    Case3,
}

/// A degree tuple from one of the three parametric families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTuple {
    pub case: TupleCase,
    pub s: u64,
    pub a: u64,
    pub raw: [u64; 5],
    /// `raw` divided by its gcd.
    pub normalized: [u64; 5],
    pub exceptional: bool,
}

impl DegreeTuple {
    fn new(case: TupleCase, s: u64, a: u64, raw: [u64; 5]) -> Self {
        let g = gcd_all(&raw);
        let normalized = raw.map(|x| x / g);
        DegreeTuple { case, s, a, raw, normalized, exceptional: case == TupleCase::Case1 && a == 3 * s }
    }
}

/// Case 1: `(a, 2a-2s, 2a-s, 3a-3s, 4a-4s)`, `a >= 2s`.
/// Case 2: `(2s, a, 3s, a+s, a+2s)`, `2s <= a <= 3s`.
/// Case 3: `(2s, 3s, a, a+s, a+2s)`, `a >= 3s`.
pub fn enumerate_degree_tuples(s: u64, a_max: u64) -> Vec<DegreeTuple> {
    let mut out = Vec::new();
    for a in 2 * s..=a_max {
        out.push(DegreeTuple::new(TupleCase::Case1, s, a, [a, 2 * a - 2 * s, 2 * a - s, 3 * a - 3 * s, 4 * a - 4 * s]));
    }
    for a in 2 * s..=a_max.min(3 * s) {
        out.push(DegreeTuple::new(TupleCase::Case2, s, a, [2 * s, a, 3 * s, a + s, a + 2 * s]));
    }
    for a in 3 * s..=a_max {
        out.push(DegreeTuple::new(TupleCase::Case3, s, a, [2 * s, 3 * s, a, a + s, a + 2 * s]));
    }
    out
}

const ANSATZ_JSON: &str = include_str!("../fixtures/exceptional_ansatz.json");

/// The 27-parameter ansatz for degrees `(3, 4, 5, 6, 8)`, `s = 1`, in
/// variables `x1..x5` followed by parameters `a1..a27`.
pub fn exceptional_ansatz() -> (PoissonMatrix, GradingData) {
    PoissonMatrix::from_json(ANSATZ_JSON).expect("ansatz fixture is valid")
}

pub const ANSATZ_PARAMS: usize = 27;

/// Drops the first `offset` variables of a polynomial that does not
/// involve them.
fn drop_leading(p: &Polynomial, offset: usize) -> Polynomial {
    let arity = p.arity() - offset;
    Polynomial::from_terms(
        arity,
        p.terms().map(|(m, c)| {
            debug_assert!(m.exponents()[..offset].iter().all(|&e| e == 0));
            (Monomial::new(m.exponents()[offset..].to_vec()), c.clone())
        }),
    )
}

/// Every coefficient, as a polynomial in `a1..a27`, of every monomial in
/// every Jacobiator. Duplicates (up to scalars) are removed.
pub fn jacobi_coefficient_ideal(theta: &PoissonMatrix) -> Vec<Polynomial> {
    let n = theta.size();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (_, j) in theta.jacobiators() {
        for (_, c) in j.coefficients_in(|i| i < n) {
            let c = drop_leading(&c, n).primitive_part();
            if seen.insert(format_poly(&c, &default_names(c.arity()))) {
                out.push(c);
            }
        }
    }
    out
}

pub fn param_names() -> Vec<String> {
    (1..=ANSATZ_PARAMS).map(|i| format!("a{}", i)).collect()
}

fn params_poly(text: &str) -> Polynomial {
    parse_poly(text, &param_names()).expect("relation parses")
}

/// The 26 linear relations stated for the solution line.
pub fn displayed_line_relations() -> Vec<Polynomial> {
    [
        "a1", "a2", "a3", "a5 - 4*a4", "a6", "a7 + 2*a4", "a8 - 4*a4", "a9 + 20*a4", "a10 + 2*a4", "a11 - 4*a4", "a12",
        "a13", "a14", "a15 + a4", "a16", "a17", "a18", "a19", "a20", "a21", "a22", "a23 + 2*a4", "a24", "a25 + 5*a4",
        "a26", "a27",
    ]
    .iter()
    .map(|t| params_poly(t))
    .collect()
}

/// Relations of the curve actually cut out by the saturated Jacobi ideal:
/// with `u = 2 a4` it is `(a5, a7, a8, a9, a10, a11, a15, a23, a25) =
/// (2u, -u, 2u, -10u², -u, 2u, -u/2, u, -5u²/2)` and all other `a_i = 0`.
pub fn computed_curve_relations() -> Vec<Polynomial> {
    [
        "a1", "a2", "a3", "a5 - 4*a4", "a6", "a7 + 2*a4", "a8 - 4*a4", "a9 + 40*a4^2", "a10 + 2*a4", "a11 - 4*a4", "a12",
        "a13", "a14", "a15 + a4", "a16", "a17", "a18", "a19", "a20", "a21", "a22", "a23 - 2*a4", "a24", "a25 + 10*a4^2",
        "a26", "a27",
    ]
    .iter()
    .map(|t| params_poly(t))
    .collect()
}

/// A point of the displayed line with `a4 = 1`.
pub fn displayed_line_point() -> Vec<Rational> {
    line_point(&displayed_line_relations())
}

/// A point of the computed curve with `a4 = 1`.
pub fn computed_curve_point() -> Vec<Rational> {
    line_point(&computed_curve_relations())
}

fn line_point(relations: &[Polynomial]) -> Vec<Rational> {
    // each relation is a_i - g(a4): evaluate g at a4 = 1
    let mut point = vec![Rational::zero(); ANSATZ_PARAMS];
    point[3] = Rational::one();
    for r in relations {
        let lead = (0..ANSATZ_PARAMS).rev().find(|&i| i != 3 && r.terms().any(|(m, _)| m.exponent(i) > 0)).expect("relation names a parameter");
        let mut probe = point.clone();
        probe[lead] = Rational::zero();
        point[lead] = -r.evaluate(&probe).expect("arity 27");
    }
    point
}

/// The ansatz with parameters replaced by `values`, as a matrix on
/// `x1..x5`.
pub fn ansatz_at(values: &[Rational]) -> PoissonMatrix {
    let (theta, _) = exceptional_ansatz();
    let arity = theta.arity();
    let mut images: Vec<Polynomial> = (0..5).map(|i| Polynomial::var(arity, i)).collect();
    images.extend(values.iter().map(|v| Polynomial::constant(arity, v.clone())));
    let mapped = theta.map_entries(|p| p.substitute(&images).expect("images sized to arity"));
    let names = default_names(5);
    let mut upper = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            upper.push(((i, j), mapped.entry(i, j).restrict_arity(5).expect("no parameters left")));
        }
    }
    PoissonMatrix::from_upper(names, 5, upper).expect("same shape")
}

/// Outcome of the exceptional-case computation.
#[derive(Clone, Debug)]
pub struct ExceptionalOutcome {
    pub report: Report,
    pub coefficients: Vec<Polynomial>,
    pub saturation: GroebnerBasis,
}

/// Builds the coefficient ideal of the ansatz, saturates it by `a4·a15`
/// and compares the result with the stated solution line.
pub fn exceptional_case_elimination(order: &TermOrder, deadline: Option<Instant>) -> Result<ExceptionalOutcome, CatalogError> {
    let (theta, grading) = exceptional_ansatz();
    let pnames = param_names();
    let mut r = Report::new("eliminate-exceptional");
    let deg = theta.check_degree_homogeneity(&grading, None);
    r.check("ansatz-degrees", deg.all_pass(), || deg.describe_failures());
    r.check("condition-star-5", check_condition_star(&theta, 4, &[1]), || "no disjoint pair of entries contains x5".into());
    let coefficients = jacobi_coefficient_ideal(&theta);
    r.pass("coefficient-ideal", Some(format!("{} distinct coefficients", coefficients.len())));
    let q = params_poly("a4*a15");
    let sat = saturate_with(&coefficients, &q, order, deadline)?;
    let fmt = |p: &Polynomial| format_poly(p, &pnames);

    let line = displayed_line_relations();
    match sat.first_outside(&line) {
        None => r.pass("line-in-saturation", None),
        Some(p) => r.fail("line-in-saturation", format!("{} is not in the saturation", fmt(p))),
    }
    let line_gb = buchberger(&line, order);
    match line_gb.first_outside(sat.generators()) {
        None => r.pass("saturation-in-line", None),
        Some(p) => r.fail("saturation-in-line", format!("{} is not in the line ideal", fmt(p))),
    }
    let a18 = params_poly("a18");
    r.check("a18-in-saturation", sat.contains(&a18), || "a18 does not vanish on the saturated locus".into());

    let curve = computed_curve_relations();
    let curve_gb = buchberger(&curve, order);
    let equal = sat.contains_all(&curve) && curve_gb.contains_all(sat.generators());
    r.check("saturation-equals-computed-curve", equal, || "saturation differs from the computed curve".into());

    for (name, point) in [("displayed-point-is-poisson", displayed_line_point()), ("curve-point-is-poisson", computed_curve_point())] {
        let m = ansatz_at(&point);
        let failures = m.jacobi_failures();
        r.check(name, failures.is_empty(), || describe_jacobi(&m, &failures));
    }
    Ok(ExceptionalOutcome { report: r, coefficients, saturation: sat })
}

/// Whether two entries with disjoint index pairs contain `x_var` and
/// `x_var^l` for some `l` in `powers`. `var` is 0-based; the coefficient
/// of a monomial may be a polynomial in parameter variables.
pub fn check_condition_star(theta: &PoissonMatrix, var: usize, powers: &[u32]) -> bool {
    let n = theta.size();
    let contains_power = |i: usize, j: usize, l: u32| {
        let mut e = vec![0u32; theta.arity()];
        e[var] = l;
        theta.entry(i, j).coefficients_in(|k| k < n).contains_key(&Monomial::new(e))
    };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.iter().any(|&(i1, i2)| {
        contains_power(i1, i2, 1)
            && pairs.iter().any(|&(i3, i4)| {
                let disjoint = ![i1, i2].contains(&i3) && ![i1, i2].contains(&i4);
                disjoint && powers.iter().any(|&l| contains_power(i3, i4, l))
            })
    })
}
