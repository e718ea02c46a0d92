//! Triangular coordinate changes, the w-homogenization loop and monomial
//! Poisson subalgebras of `C[u, v]`.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::error::PolyError;
use crate::parse::{format_poly, parse_poly};
use crate::poisson::PoissonMatrix;
use crate::poly::{cmp_paper_order, int, GradingData, Monomial, Polynomial, Rational};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("image of variable {var} is not of the form c*x + (earlier variables)")]
    NotTriangular { var: usize },
    #[error("order must list each of the {0} variables once")]
    BadOrder(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("w-weights are required")]
    MissingWeights,
    #[error("bracket with variable {var} is not of the form w*x + lower terms: offending term {term}")]
    Shape { var: usize, term: String },
    #[error("zero denominator w_i - w(q) for variable {var} at term {term}")]
    ZeroDenominator { var: usize, term: String },
    #[error("no progress after {0} steps")]
    NoProgress(usize),
}

/// `x_i ↦ c_i x_i + q_i` where `q_i` only involves variables that come
/// before `x_i` in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularSubstitution {
    order: Vec<usize>,
    images: Vec<Polynomial>,
}

impl TriangularSubstitution {
    pub fn identity(arity: usize) -> Self {
        TriangularSubstitution { order: (0..arity).collect(), images: (0..arity).map(|i| Polynomial::var(arity, i)).collect() }
    }

    /// Validates `images` against the declared `order` (earliest first).
    pub fn new(order: Vec<usize>, images: Vec<Polynomial>) -> Result<Self, NormalFormError> {
        let arity = images.len();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..arity).collect::<Vec<_>>() {
            return Err(NormalFormError::BadOrder(arity));
        }
        for (pos, &v) in order.iter().enumerate() {
            let img = &images[v];
            if img.arity() != arity {
                return Err(PolyError::ArityMismatch { left: arity, right: img.arity() }.into());
            }
            let earlier = &order[..pos];
            let lin = img.coefficient(&Monomial::var(arity, v));
            let rest_ok = img
                .terms()
                .filter(|(m, _)| **m != Monomial::var(arity, v))
                .all(|(m, _)| m.only_uses(|k| earlier.contains(&k)));
            if lin.is_zero() || !rest_ok {
                return Err(NormalFormError::NotTriangular { var: v });
            }
        }
        Ok(TriangularSubstitution { order, images })
    }

    /// In index order: `x_i ↦ x_i + tails[i]`.
    pub fn from_tails(tails: Vec<Polynomial>) -> Result<Self, NormalFormError> {
        let arity = tails.len();
        let images = tails.into_iter().enumerate().map(|(i, t)| &Polynomial::var(arity, i) + &t).collect();
        Self::new((0..arity).collect(), images)
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, p)| *p == Polynomial::var(self.arity(), i))
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.images).expect("arity checked at construction")
    }

    /// `self` followed by `next`: the images of `next` rewritten in the
    /// original variables.
    pub fn then(&self, next: &TriangularSubstitution) -> TriangularSubstitution {
        let images = next.images.iter().map(|p| self.apply(p)).collect();
        TriangularSubstitution { order: self.order.clone(), images }
    }

    /// Back-substitution along the declared order.
    pub fn invert(&self) -> TriangularSubstitution {
        let arity = self.arity();
        let mut inv: Vec<Polynomial> = (0..arity).map(|i| Polynomial::var(arity, i)).collect();
        for &v in &self.order {
            let x = Polynomial::var(arity, v);
            let c = self.images[v].coefficient(&Monomial::var(arity, v));
            let tail = &self.images[v] - &x.scale(&c);
            let tail_inv = tail.substitute(&inv).expect("same arity");
            inv[v] = (&x - &tail_inv).scale(&(Rational::one() / c));
        }
        TriangularSubstitution { order: self.order.clone(), images: inv }
    }

    pub fn to_json(&self, names: &[String]) -> String {
        let map: BTreeMap<&str, String> =
            names.iter().zip(&self.images).map(|(n, p)| (n.as_str(), format_poly(p, names))).collect();
        serde_json::to_string_pretty(&map).expect("substitution serializes")
    }

    pub fn from_json(text: &str, names: &[String]) -> Result<Self, String> {
        let map: BTreeMap<String, String> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let arity = names.len();
        let mut images: Vec<Polynomial> = (0..arity).map(|i| Polynomial::var(arity, i)).collect();
        for (k, v) in map {
            let i = names.iter().position(|n| *n == k).ok_or_else(|| format!("unknown variable `{}`", k))?;
            images[i] = parse_poly(&v, names).map_err(|e| e.to_string())?;
        }
        Self::new((0..arity).collect(), images).map_err(|e| e.to_string())
    }
}

/// Poisson matrix in the new coordinates `y_i = sub(x_i)`:
/// `Θ'_ij = {y_i, y_j}` rewritten through the inverse substitution.
pub fn transport_poisson(theta: &PoissonMatrix, sub: &TriangularSubstitution) -> PoissonMatrix {
    let inv = sub.invert();
    let n = theta.size();
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = theta.bracket(&sub.images[i], &sub.images[j]).expect("same arity");
            upper.push(((i, j), inv.apply(&b)));
        }
    }
    PoissonMatrix::from_upper(theta.names().to_vec(), n, upper).expect("same shape")
}

/// One replacement `x_var ↦ x_var + coefficient·term`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WStep {
    pub var: usize,
    /// The `≺`-maximal offending monomial before the step.
    pub term: Monomial,
    pub coefficient: Rational,
    pub denominator: Rational,
}

#[derive(Clone, Debug)]
pub struct WHomogenized {
    pub substitution: TriangularSubstitution,
    pub theta: PoissonMatrix,
    pub trace: Vec<WStep>,
}

const MAX_W_STEPS: usize = 10_000;

/// Makes every `{x_alpha1, x_i}` w-homogeneous of degree `w_i` by the
/// replacement loop, treating variables in index order.
pub fn w_homogenize(theta: &PoissonMatrix, grading: &GradingData, alpha1: usize) -> Result<WHomogenized, NormalFormError> {
    let arity = theta.arity();
    let w = grading.w_weights(arity).ok_or(NormalFormError::MissingWeights)?;
    let mut current = theta.clone();
    let mut total = TriangularSubstitution::identity(arity);
    let mut trace = Vec::new();
    for i in 0..theta.size() {
        if i == alpha1 {
            continue;
        }
        loop {
            let b = current.entry(alpha1, i).clone();
            let xi = Monomial::var(arity, i);
            if let Some((m, _)) = b.terms().find(|(m, _)| **m != xi && cmp_paper_order(m, &xi).is_ge()) {
                return Err(NormalFormError::Shape { var: i, term: current.format(&Polynomial::monomial(m.clone(), int(1))) });
            }
            if b.coefficient(&xi) != w[i] {
                return Err(NormalFormError::Shape { var: i, term: current.format(&Polynomial::var(arity, i)) });
            }
            let offending = b.terms().rev().find(|(m, _)| m.weighted_degree(&w) != w[i]);
            let (m, c) = match offending {
                None => break,
                Some((m, c)) => (m.clone(), c.clone()),
            };
            let denominator = &w[i] - m.weighted_degree(&w);
            if denominator.is_zero() {
                return Err(NormalFormError::ZeroDenominator { var: i, term: current.format(&Polynomial::monomial(m, int(1))) });
            }
            let coefficient = c / &denominator;
            let mut tails = vec![Polynomial::zero(arity); arity];
            tails[i] = Polynomial::monomial(m.clone(), coefficient.clone());
            let step = TriangularSubstitution::from_tails(tails)?;
            current = transport_poisson(&current, &step);
            total = total.then(&step);
            trace.push(WStep { var: i, term: m, coefficient, denominator });
            if trace.len() > MAX_W_STEPS {
                return Err(NormalFormError::NoProgress(MAX_W_STEPS));
            }
        }
    }
    Ok(WHomogenized { substitution: total, theta: current, trace })
}

/// Monomials in the variables `vars` of weighted degree `degree`.
pub fn monomials_of_degree(arity: usize, vars: &[usize], weights: &[u64], degree: u64) -> Vec<Monomial> {
    fn go(vars: &[usize], weights: &[u64], left: u64, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            if left == 0 {
                out.push(Monomial::new(acc.clone()));
            }
            return;
        };
        let w = weights[v];
        let max = left.checked_div(w).unwrap_or(0);
        for e in 0..=max {
            acc[v] = e as u32;
            go(rest, weights, left - e * w, acc, out);
        }
        acc[v] = 0;
    }
    let mut out = Vec::new();
    go(vars, weights, degree, &mut vec![0; arity], &mut out);
    out.sort_by(cmp_paper_order);
    out
}

/// A random degree-preserving substitution `x_i ↦ x_i + q_i` where `q_i`
/// uses only variables of smaller index; `x_alpha1` is left alone.
/// Coefficients are small integers.
pub fn random_triangular_perturbation<R: Rng>(grading: &GradingData, alpha1: usize, rng: &mut R) -> TriangularSubstitution {
    let n = grading.d.len();
    let tails = (0..n)
        .map(|i| {
            if i == alpha1 {
                return Polynomial::zero(n);
            }
            let earlier: Vec<usize> = (0..i).collect();
            let mut terms = Vec::new();
            for m in monomials_of_degree(n, &earlier, &grading.d, grading.d[i]) {
                if rng.gen_bool(0.7) {
                    terms.push((m, int(rng.gen_range(-3..=3))));
                }
            }
            Polynomial::from_terms(n, terms)
        })
        .collect();
    TriangularSubstitution::from_tails(tails).expect("tails use earlier variables only")
}

/// Per-variable check that the offending monomials of the trace strictly
/// decrease in `≺`.
pub fn trace_is_decreasing(trace: &[WStep]) -> bool {
    let mut last: BTreeMap<usize, &Monomial> = BTreeMap::new();
    for step in trace {
        if let Some(prev) = last.get(&step.var) {
            if cmp_paper_order(&step.term, prev).is_ge() {
                return false;
            }
        }
        last.insert(step.var, &step.term);
    }
    true
}

/// Perturbs `theta` by `trials` seeded random substitutions and checks that
/// `w_homogenize` restores w-homogeneity.
pub fn w_round_trip(theta: &PoissonMatrix, grading: &GradingData, alpha1: usize, seed: u64, trials: usize) -> Report {
    let mut r = Report::new(format!("whomog seed={} trials={}", seed, trials));
    let mut errors = Vec::new();
    let mut unadapted = Vec::new();
    let mut increasing = Vec::new();
    let mut moved = Vec::new();
    let mut perturbed = 0;
    for k in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let sub = random_triangular_perturbation(grading, alpha1, &mut rng);
        let start = transport_poisson(theta, &sub);
        if !is_w_adapted(&start, grading, alpha1) {
            perturbed += 1;
        }
        match w_homogenize(&start, grading, alpha1) {
            Err(e) => errors.push(format!("trial {}: {}", k, e)),
            Ok(out) => {
                if !is_w_adapted(&out.theta, grading, alpha1) {
                    unadapted.push(k);
                }
                if !trace_is_decreasing(&out.trace) {
                    increasing.push(k);
                }
                if out.substitution.images()[alpha1] != Polynomial::var(theta.arity(), alpha1) {
                    moved.push(k);
                }
            }
        }
    }
    let list = |v: &[usize]| format!("trials {:?}", v);
    r.check("terminates", errors.is_empty(), || errors.join("; "));
    r.check("adapted", unadapted.is_empty(), || list(&unadapted));
    r.check("decreasing", increasing.is_empty(), || list(&increasing));
    r.check("alpha1-fixed", moved.is_empty(), || list(&moved));
    r.pass("perturbed", Some(format!("{} of {} starts were not adapted", perturbed, trials)));
    r
}

/// Whether `{x_alpha1, x_i}` is w-homogeneous of degree `w_i` for all `i`.
pub fn is_w_adapted(theta: &PoissonMatrix, grading: &GradingData, alpha1: usize) -> bool {
    let w = match grading.w_weights(theta.arity()) {
        Some(w) => w,
        None => return false,
    };
    (0..theta.size()).all(|i| theta.entry(alpha1, i).homogeneous_degree(&w).expect("sized").admits(&w[i]))
}

/// Monomial bracket for `{u, v} = 1`:
/// `{u^a v^b, u^a' v^b'} = (ab' - a'b) u^(a+a'-1) v^(b+b'-1)`.
pub fn bracket_uv(m1: &Monomial, m2: &Monomial) -> Polynomial {
    let (a, b) = (m1.exponent(0) as i64, m1.exponent(1) as i64);
    let (a2, b2) = (m2.exponent(0) as i64, m2.exponent(1) as i64);
    let c = a * b2 - a2 * b;
    if c == 0 {
        return Polynomial::zero(2);
    }
    Polynomial::monomial(Monomial::new(vec![(a + a2 - 1) as u32, (b + b2 - 1) as u32]), int(c))
}

/// Subalgebra of `C[u, v]` spanned by products of monomial generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSubalgebra {
    pub generators: Vec<Monomial>,
    pub deg_u: u64,
    pub deg_v: u64,
}

/// `x^i y^j z^k` with `x = u^(n+1)`, `y = v^(n+1)`, `z = uv`.
pub fn a_type_monomial(n: u32, i: u32, j: u32, k: u32) -> Monomial {
    Monomial::new(vec![(n + 1) * i + k, (n + 1) * j + k])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed,
    Witness { left: Monomial, right: Monomial, bracket: Polynomial },
}

impl MonomialSubalgebra {
    pub fn new(generators: Vec<Monomial>) -> Self {
        MonomialSubalgebra { generators, deg_u: 1, deg_v: 1 }
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        m.exponent(0) as u64 * self.deg_u + m.exponent(1) as u64 * self.deg_v
    }

    pub fn max_generator_degree(&self) -> u64 {
        self.generators.iter().map(|g| self.degree(g)).max().unwrap_or(0)
    }

    pub fn default_bound(&self) -> u64 {
        4 * self.max_generator_degree()
    }

    /// All monomials of the algebra with degree at most `bound`.
    pub fn elements_up_to(&self, bound: u64) -> Vec<Monomial> {
        let mut seen: HashSet<(u32, u32)> = HashSet::new();
        seen.insert((0, 0));
        let mut frontier = vec![(0u32, 0u32)];
        while let Some((a, b)) = frontier.pop() {
            for g in &self.generators {
                let next = (a + g.exponent(0), b + g.exponent(1));
                let m = Monomial::new(vec![next.0, next.1]);
                if self.degree(&m) <= bound && self.degree(g) > 0 && seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        let mut out: Vec<Monomial> = seen.into_iter().map(|(a, b)| Monomial::new(vec![a, b])).collect();
        out.sort_by_key(|m| (self.degree(m), m.exponent(0)));
        out
    }

    /// Brackets of pairs of algebra monomials up to `degree_bound` that
    /// leave the algebra.
    pub fn bracket_failures(&self, degree_bound: u64) -> Vec<(Monomial, Monomial, Polynomial)> {
        let elems = self.elements_up_to(degree_bound);
        let members: HashSet<Monomial> = self.elements_up_to(2 * degree_bound).into_iter().collect();
        let gens: Vec<&Monomial> = self.generators.iter().collect();
        // generators first so that witnesses are as small as possible
        let mut pairs: Vec<(&Monomial, &Monomial)> = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                pairs.push((a, b));
            }
        }
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i + 1..] {
                pairs.push((a, b));
            }
        }
        let failures: Vec<(Monomial, Monomial, Polynomial)> = pairs
            .par_iter()
            .filter_map(|&(a, b)| {
                let br = bracket_uv(a, b);
                let outside = br.monomials().any(|m| !members.contains(m));
                outside.then(|| (a.clone(), b.clone(), br))
            })
            .collect();
        let mut seen = HashSet::new();
        failures.into_iter().filter(|(a, b, _)| seen.insert((a.clone(), b.clone()))).collect()
    }

    pub fn closure_check(&self, degree_bound: u64) -> Closure {
        assert!(degree_bound >= self.max_generator_degree(), "bound below generator degrees");
        match self.bracket_failures(degree_bound).into_iter().next() {
            None => Closure::Closed,
            Some((left, right, bracket)) => Closure::Witness { left, right, bracket },
        }
    }
}

pub fn uv_names() -> Vec<String> {
    vec!["u".to_string(), "v".to_string()]
}

/// Weights `w(x_i)` defined by `{z, φ(x_i)} = w(x_i) φ(x_i)` for the
/// images `(z, x z^m, x², x³, y)`.
pub fn w_weights_of_images(n: u32, m: u32) -> Vec<Rational> {
    let z = a_type_monomial(n, 0, 0, 1);
    let images = [z.clone(), a_type_monomial(n, 1, 0, m), a_type_monomial(n, 2, 0, 0), a_type_monomial(n, 3, 0, 0), a_type_monomial(n, 0, 1, 0)];
    images
        .iter()
        .map(|phi| {
            let br = bracket_uv(&z, phi);
            if br.is_zero() {
                Rational::zero()
            } else {
                assert_eq!(br.len(), 1);
                let (mono, c) = br.terms().next().expect("one term");
                assert_eq!(mono, phi, "z acts diagonally on monomials");
                c.clone()
            }
        })
        .collect()
}

/// `Σ w(x_i)` for the five images; equals `-5(n+1)`.
pub fn w_weight_obstruction(n: u32) -> Rational {
    w_weights_of_images(n, 1).into_iter().fold(Rational::zero(), |acc, w| acc + w)
}
