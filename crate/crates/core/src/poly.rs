//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in a ring of fixed arity and stores its terms in a
//! `BTreeMap` keyed by [`Monomial`]. Monomials are ordered by the
//! "highest variable first" order (see [`cmp_paper_order`]), so every
//! iteration and every formatted output is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for building small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector of a monic monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The monomial `x_i` (0-based index).
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, weights: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(weights)
            .filter(|(&e, _)| e > 0)
            .fold(Rational::zero(), |acc, (&e, w)| acc + w * int(e as i64))
    }

    /// True when every variable outside `allowed` has exponent zero.
    pub fn only_uses(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == 0 || allowed(i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends `extra` zero exponents.
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }
}

/// The order `≺` on monic monomials: compare exponents from the highest
/// variable index downward; the first differing exponent decides.
pub fn cmp_paper_order(a: &Monomial, b: &Monomial) -> Ordering {
    debug_assert_eq!(a.arity(), b.arity());
    for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_paper_order(self, other).then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`Polynomial::homogeneous_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    /// The zero polynomial is homogeneous of every degree.
    Any,
    Degree(Rational),
    NotHomogeneous { first: Monomial, second: Monomial },
}

impl WeightedDegree {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, WeightedDegree::NotHomogeneous { .. })
    }

    /// True if the polynomial is zero or homogeneous of exactly `degree`.
    pub fn admits(&self, degree: &Rational) -> bool {
        match self {
            WeightedDegree::Any => true,
            WeightedDegree::Degree(d) => d == degree,
            WeightedDegree::NotHomogeneous { .. } => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(arity), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let arity = m.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { arity, terms }
    }

    /// The variable `x_i` (0-based index).
    pub fn var(arity: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(arity, i), Rational::one())
    }

    /// Builds a polynomial from possibly repeated terms, merging equal
    /// monomials and dropping zero coefficients.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `≺` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Whether `m` occurs with a nonzero coefficient.
    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        m.arity() == self.arity && self.terms.contains_key(m)
    }

    /// The `≺`-largest term.
    pub fn max_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a monic monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `x_i` (0-based).
    pub fn derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.arity {
            return Err(PolyError::IndexOutOfRange { index: i, arity: self.arity });
        }
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(i) > 0).map(|(m, c)| {
            let e = m.exponent(i);
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            (Monomial::new(exps), c * int(e as i64))
        });
        Ok(Polynomial::from_terms(self.arity, terms))
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.arity).map(|i| self.derivative(i).expect("index in range")).collect()
    }

    /// Common weighted degree of all terms.
    pub fn homogeneous_degree(&self, weights: &[Rational]) -> Result<WeightedDegree, PolyError> {
        if weights.len() != self.arity {
            return Err(PolyError::ArityMismatch { left: self.arity, right: weights.len() });
        }
        let mut iter = self.terms.keys();
        let first = match iter.next() {
            None => return Ok(WeightedDegree::Any),
            Some(m) => m,
        };
        let degree = first.weighted_degree(weights);
        for m in iter {
            if m.weighted_degree(weights) != degree {
                return Ok(WeightedDegree::NotHomogeneous { first: first.clone(), second: m.clone() });
            }
        }
        Ok(WeightedDegree::Degree(degree))
    }

    /// Ring homomorphism sending `x_i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.arity {
            return Err(PolyError::ArityMismatch { left: self.arity, right: images.len() });
        }
        let target = match images.first() {
            Some(p) => p.arity,
            None => return Ok(Polynomial::from_terms(0, self.terms.clone())),
        };
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(PolyError::ArityMismatch { left: target, right: bad.arity });
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|_| vec![Polynomial::one(target)]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Embeds into a ring with `extra` additional trailing variables.
    pub fn extend_arity(&self, extra: usize) -> Polynomial {
        Polynomial {
            arity: self.arity + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect(),
        }
    }

    /// Drops trailing variables; `None` if any of them occurs.
    pub fn restrict_arity(&self, arity: usize) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponents()[arity..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.insert(Monomial::new(m.exponents()[..arity].to_vec()), c.clone());
        }
        Some(Polynomial { arity, terms })
    }

    /// Collects coefficients with respect to the variables for which
    /// `is_main` holds. Each key is a monomial in those variables (other
    /// exponents zeroed), each value the coefficient polynomial in the
    /// remaining variables.
    pub fn coefficients_in(&self, is_main: impl Fn(usize) -> bool) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (main, rest): (Vec<u32>, Vec<u32>) = m
                .exponents()
                .iter()
                .enumerate()
                .map(|(i, &e)| if is_main(i) { (e, 0) } else { (0, e) })
                .unzip();
            out.entry(Monomial::new(main))
                .or_insert_with(|| Polynomial::zero(self.arity))
                .add_term(Monomial::new(rest), c.clone());
        }
        out
    }

    /// Multiplies through by the least common denominator and divides by
    /// the content, leaving a primitive integer polynomial with positive
    /// `≺`-leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.terms.values().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.max_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            g = -g;
        }
        let terms = self.terms.keys().cloned().zip(ints).map(|(m, c)| (m, Rational::from_integer(c / &g)));
        Polynomial { arity: self.arity, terms: terms.collect() }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch { left: self.arity, right: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::parse::default_names(self.arity);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&crate::parse::format_poly(self, &refs))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Degrees and weights attached to a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    /// Weight of the symplectic form; brackets have degree `-s`.
    pub s: u64,
    /// Conical degree of each ring variable.
    pub d: Vec<u64>,
    /// Optional auxiliary `w`-weights.
    pub w: Option<Vec<Rational>>,
}

impl GradingData {
    pub fn new(s: u64, d: Vec<u64>) -> Self {
        GradingData { s, d, w: None }
    }

    pub fn with_w(mut self, w: Vec<Rational>) -> Self {
        self.w = Some(w);
        self
    }

    /// Conical degrees as rationals, padded with zeros up to `arity`
    /// (parameter variables carry degree zero).
    pub fn degree_weights(&self, arity: usize) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.d.iter().map(|&d| int(d as i64)).collect();
        v.resize(arity, Rational::zero());
        v
    }

    /// `w`-weights padded with zeros up to `arity`.
    pub fn w_weights(&self, arity: usize) -> Option<Vec<Rational>> {
        self.w.as_ref().map(|w| {
            let mut v = w.clone();
            v.resize(arity, Rational::zero());
            v
        })
    }

    pub fn gcd(&self) -> u64 {
        self.d.iter().fold(0u64, |acc, &x| acc.gcd(&x))
    }

    /// Expected degree of `{x_i, x_j}`; negative values mean the entry must vanish.
    pub fn bracket_degree(&self, i: usize, j: usize) -> i64 {
        self.d[i] as i64 + self.d[j] as i64 - self.s as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(text: &str, vars: &[&str]) -> Polynomial {
        parse_poly(text, vars).unwrap()
    }

    const X5: [&str; 5] = ["x1", "x2", "x3", "x4", "x5"];
    const SLICE: [&str; 5] = ["x", "h", "y", "e0", "e1"];

    #[test]
    fn difference_of_squares() {
        let v = ["x", "y"];
        assert_eq!(&p("x + y", &v) * &p("x - y", &v), p("x^2 - y^2", &v));
    }

    #[test]
    fn delta_squared_matches_convolution() {
        let delta = p("h^2 + 4*x*y", &SLICE);
        let sq = delta.pow(2);
        assert_eq!(sq, p("h^4 + 8*h^2*x*y + 16*x^2*y^2", &SLICE));
        // brute-force convolution over the term list
        let mut conv = Polynomial::zero(5);
        for (m1, c1) in delta.terms() {
            for (m2, c2) in delta.terms() {
                conv = &conv + &Polynomial::monomial(m1.mul(m2), c1 * c2);
            }
        }
        assert_eq!(sq, conv);
    }

    #[test]
    fn additive_inverse_is_empty() {
        let q = p("x1^2*x3 - 1/2*x5", &X5);
        let z = &q + &q.scale(&int(-1));
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert_eq!(a.checked_add(&b), Err(PolyError::ArityMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x1^2*x3", &X5).derivative(0).unwrap(), p("2*x1*x3", &X5));
        let fn2 = p("-y*e0^2 + h*e0*e1 + x*e1^2 + h^4 + 8*h^2*x*y + 16*x^2*y^2", &SLICE);
        assert_eq!(fn2.derivative(4).unwrap(), p("h*e0 + 2*x*e1", &SLICE));
        assert!(Polynomial::constant(5, int(7)).derivative(2).unwrap().is_zero());
        assert!(matches!(fn2.derivative(5), Err(PolyError::IndexOutOfRange { .. })));
    }

    #[test]
    fn homogeneous_degrees() {
        let fn3 = p("-y*e0^2 + h*e0*e1 + x*e1^2", &SLICE) + p("h^2 + 4*x*y", &SLICE).pow(3);
        let d: Vec<Rational> = [2, 2, 2, 5, 5].iter().map(|&x| int(x)).collect();
        // sum of degrees minus 2s with s = 2
        assert_eq!(fn3.homogeneous_degree(&d).unwrap(), WeightedDegree::Degree(int(16 - 4)));

        let v = ["x", "y"];
        let w = [int(1), int(1)];
        match p("x + y^2", &v).homogeneous_degree(&w).unwrap() {
            WeightedDegree::NotHomogeneous { first, second } => {
                let mut got = vec![first, second];
                got.sort();
                let mut want = vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 2])];
                want.sort();
                assert_eq!(got, want);
            }
            other => panic!("expected witnesses, got {:?}", other),
        }

        let delta = p("h^2 + 4*x*y", &["x", "h", "y"]);
        assert_eq!(delta.homogeneous_degree(&[int(1), int(0), int(-1)]).unwrap(), WeightedDegree::Degree(int(0)));
        assert_eq!(Polynomial::zero(2).homogeneous_degree(&w).unwrap(), WeightedDegree::Any);
    }

    #[test]
    fn contains_monomial_queries() {
        let th23 = p("x5 + a5*x1*x3 + a6*x2^2", &["x1", "x2", "x3", "x4", "x5", "a5", "a6"]);
        assert!(th23.contains_monomial(&Monomial::new(vec![0, 0, 0, 0, 1, 0, 0])));
        assert!(!p("x^2", &["x"]).contains_monomial(&Monomial::new(vec![1])));
        for n in 1..6u32 {
            let dn = p("h^2 + 4*x*y", &SLICE).pow(n);
            let hpow = Monomial::new(vec![0, 2 * n, 0, 0, 0]);
            assert_eq!(dn.coefficient(&hpow), int(1));
        }
    }

    #[test]
    fn paper_order_examples() {
        let m = |e: Vec<u32>| Monomial::new(e);
        assert_eq!(cmp_paper_order(&m(vec![5, 0, 0]), &m(vec![0, 1, 0])), Ordering::Less);
        assert_eq!(cmp_paper_order(&m(vec![1, 0, 1]), &m(vec![1, 0, 1])), Ordering::Equal);
        assert_eq!(cmp_paper_order(&m(vec![1, 0, 1]), &m(vec![0, 1, 1])), Ordering::Less);
    }

    #[test]
    fn substitution_examples() {
        let v = ["x", "y", "z"];
        let f = p("x^2 + y*z", &v);
        let images = vec![p("x", &v), p("y", &v), p("z - y", &v)];
        assert_eq!(f.substitute(&images).unwrap(), p("x^2 + y*z - y^2", &v));
        let id: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(3, i)).collect();
        assert_eq!(f.substitute(&id).unwrap(), f);
    }

    #[test]
    fn cubic_moves_to_d4_form() {
        // (x+y)^3 + (x+y)*y^2 has three distinct roots; x -> x - y undoes the shift
        let v = ["x", "y"];
        let q = p("x^3 + 3*x^2*y + 4*x*y^2 + 2*y^3", &v);
        let change = vec![p("x - y", &v), p("y", &v)];
        assert_eq!(q.substitute(&change).unwrap(), p("x^3 + x*y^2", &v));
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let q = p("1/2*x1 - 3/4*x2", &X5);
        assert_eq!(q.primitive_part(), p("-2*x1 + 3*x2", &X5));
    }
}
