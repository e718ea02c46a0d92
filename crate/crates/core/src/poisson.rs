//! Poisson matrices, brackets, Jacobiators and the Pfaffian condition.
//!
//! A [`PoissonMatrix`] acts on the first `n` variables of its ring. Any
//! further variables are parameters: they have zero bracket with everything
//! and carry conical degree zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{ParseError, PolyError};
use crate::parse::{format_poly, parse_poly};
use crate::poly::{int, GradingData, Polynomial, Rational, WeightedDegree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Pfaffian vector needs an odd number of variables, got {0}")]
    EvenSize(usize),
    #[error("indices ({0}, {1}, {2}) must be distinct and below {3}")]
    BadTriple(usize, usize, usize, usize),
    #[error("entry ({0}, {1}) breaks skew-symmetry")]
    NotSkew(usize, usize),
    #[error("entry index ({0}, {1}) invalid for size {2}")]
    BadEntry(usize, usize, usize),
    #[error("expected a polynomial in 3 variables, got arity {0}")]
    NotSurface(usize),
    #[error("invalid matrix json: {0}")]
    Json(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonMatrix {
    n: usize,
    names: Vec<String>,
    entries: Vec<Polynomial>,
}

impl PoissonMatrix {
    /// Builds the skew matrix from entries `(i, j)` with `i < j` (0-based).
    /// Entries not listed are zero.
    pub fn from_upper(
        names: Vec<String>,
        n: usize,
        upper: impl IntoIterator<Item = ((usize, usize), Polynomial)>,
    ) -> Result<Self, PoissonError> {
        let arity = names.len();
        assert!(n <= arity, "matrix size exceeds ring arity");
        let mut entries = vec![Polynomial::zero(arity); n * n];
        for ((i, j), p) in upper {
            if i >= j || j >= n {
                return Err(PoissonError::BadEntry(i, j, n));
            }
            if p.arity() != arity {
                return Err(PolyError::ArityMismatch { left: arity, right: p.arity() }.into());
            }
            entries[j * n + i] = -&p;
            entries[i * n + j] = p;
        }
        Ok(PoissonMatrix { n, names, entries })
    }

    /// Builds from a full matrix, rejecting non-skew input.
    pub fn from_rows(names: Vec<String>, rows: Vec<Vec<Polynomial>>) -> Result<Self, PoissonError> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(PoissonError::BadEntry(i, row.len(), n));
        }
        let mut upper = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if !row[i].is_zero() {
                return Err(PoissonError::NotSkew(i, i));
            }
            for (j, below) in rows.iter().enumerate().skip(i + 1) {
                if below[i] != -&row[j] {
                    return Err(PoissonError::NotSkew(i, j));
                }
                upper.push(((i, j), row[j].clone()));
            }
        }
        Self::from_upper(names, n, upper)
    }

    pub fn zero(names: Vec<String>, n: usize) -> Self {
        Self::from_upper(names, n, std::iter::empty()).expect("empty matrix")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.arity(), i)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_poly(p, &self.names)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, ParseError> {
        parse_poly(text, &self.names)
    }

    /// Applies `op` to every entry.
    pub fn map_entries(&self, op: impl Fn(&Polynomial) -> Polynomial) -> Self {
        let mut upper = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                upper.push(((i, j), op(self.entry(i, j))));
            }
        }
        Self::from_upper(self.names.clone(), self.n, upper).expect("same shape")
    }

    /// Same matrix with entry `(i, j)` (and its mirror) replaced.
    pub fn with_entry(&self, i: usize, j: usize, p: Polynomial) -> Self {
        let (a, b, p) = if i < j { (i, j, p) } else { (j, i, -p) };
        let mut upper = Vec::new();
        for r in 0..self.n {
            for c in r + 1..self.n {
                let e = if (r, c) == (a, b) { p.clone() } else { self.entry(r, c).clone() };
                upper.push(((r, c), e));
            }
        }
        Self::from_upper(self.names.clone(), self.n, upper).expect("same shape")
    }

    fn check(&self, p: &Polynomial) -> Result<(), PolyError> {
        if p.arity() != self.arity() {
            return Err(PolyError::ArityMismatch { left: self.arity(), right: p.arity() });
        }
        Ok(())
    }

    /// `{x_i, g} = Σ_j Θ_ij ∂g/∂x_j`.
    pub fn bracket_var(&self, i: usize, g: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(g)?;
        if i >= self.n {
            return Ok(Polynomial::zero(self.arity()));
        }
        let mut out = Polynomial::zero(self.arity());
        for j in 0..self.n {
            let t = self.entry(i, j);
            if t.is_zero() {
                continue;
            }
            let dg = g.derivative(j)?;
            if !dg.is_zero() {
                out = &out + &(t * &dg);
            }
        }
        Ok(out)
    }

    /// `{f, g} = Σ_{i,j} ∂f/∂x_i ∂g/∂x_j Θ_ij`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(f)?;
        self.check(g)?;
        let mut out = Polynomial::zero(self.arity());
        for i in 0..self.n {
            let df = f.derivative(i)?;
            if df.is_zero() {
                continue;
            }
            out = &out + &(&df * &self.bracket_var(i, g)?);
        }
        Ok(out)
    }

    /// `J_ijk = {x_i,{x_j,x_k}} + {x_j,{x_k,x_i}} + {x_k,{x_i,x_j}}`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Result<Polynomial, PoissonError> {
        let n = self.n;
        if i >= n || j >= n || k >= n || i == j || j == k || i == k {
            return Err(PoissonError::BadTriple(i, j, k, n));
        }
        let a = self.bracket_var(i, self.entry(j, k))?;
        let b = self.bracket_var(j, self.entry(k, i))?;
        let c = self.bracket_var(k, self.entry(i, j))?;
        Ok(&(&a + &b) + &c)
    }

    /// All `J_ijk` with `i < j < k`, in lexicographic order of the triple.
    pub fn jacobiators(&self) -> Vec<((usize, usize, usize), Polynomial)> {
        let n = self.n;
        let mut triples = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    triples.push((i, j, k));
                }
            }
        }
        triples
            .into_par_iter()
            .map(|(i, j, k)| ((i, j, k), self.jacobiator(i, j, k).expect("valid triple")))
            .collect()
    }

    /// Nonvanishing Jacobiators only.
    pub fn jacobi_failures(&self) -> Vec<((usize, usize, usize), Polynomial)> {
        self.jacobiators().into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Pfaffian of the principal submatrix on `idx`, expanded along its
    /// first row.
    pub fn pfaffian_of(&self, idx: &[usize]) -> Polynomial {
        let arity = self.arity();
        if idx.is_empty() {
            return Polynomial::one(arity);
        }
        if idx.len() % 2 == 1 {
            return Polynomial::zero(arity);
        }
        let first = idx[0];
        let mut out = Polynomial::zero(arity);
        for k in 1..idx.len() {
            let a = self.entry(first, idx[k]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
            let term = a * &self.pfaffian_of(&rest);
            out = if k % 2 == 1 { &out + &term } else { &out - &term };
        }
        out
    }

    /// Component `i` is `(-1)^i` times the Pfaffian with row and column `i`
    /// removed (0-based `i`).
    pub fn pfaffian_vector(&self) -> Result<Vec<Polynomial>, PoissonError> {
        if self.n.is_multiple_of(2) {
            return Err(PoissonError::EvenSize(self.n));
        }
        Ok((0..self.n)
            .into_par_iter()
            .map(|i| {
                let rest: Vec<usize> = (0..self.n).filter(|&k| k != i).collect();
                let pf = self.pfaffian_of(&rest);
                if i % 2 == 0 {
                    pf
                } else {
                    -pf
                }
            })
            .collect())
    }

    /// Finds the rational `λ` with `λ·grad(f) = pf(Θ)`.
    pub fn check_pfaffian_condition(&self, f: &Polynomial) -> Result<Rational, PfaffianMismatch> {
        self.check(f).map_err(|e| PfaffianMismatch { component: 0, reason: e.to_string() })?;
        let pf = self.pfaffian_vector().map_err(|e| PfaffianMismatch { component: 0, reason: e.to_string() })?;
        let mut lambda: Option<Rational> = None;
        for (i, v) in pf.iter().enumerate() {
            let g = f.derivative(i).expect("index in range");
            let mismatch = |reason: String| PfaffianMismatch { component: i, reason };
            match (g.is_zero(), v.is_zero()) {
                (true, true) => continue,
                (true, false) => return Err(mismatch("gradient component vanishes, Pfaffian does not".into())),
                // only λ = 0 would fit, which is degenerate
                (false, true) => return Err(mismatch("Pfaffian component vanishes, gradient does not".into())),
                (false, false) => {
                    let (m, gc) = g.max_term().expect("nonzero");
                    let l = v.coefficient(m) / gc;
                    if &g.scale(&l) != v {
                        return Err(mismatch("component is not a multiple of the gradient".into()));
                    }
                    if let Some(prev) = &lambda {
                        if *prev != l {
                            return Err(mismatch(format!("scalar {} differs from earlier {}", l, prev)));
                        }
                    }
                    lambda = Some(l);
                }
            }
        }
        match lambda {
            Some(l) if !l.is_zero() => Ok(l),
            _ => Err(PfaffianMismatch { component: 0, reason: "no nonzero scalar relates grad(f) and pf".into() }),
        }
    }

    /// Whether `Θ·v = 0`.
    pub fn kernel_check(&self, v: &[Polynomial]) -> bool {
        if v.len() != self.n {
            return false;
        }
        (0..self.n).all(|i| {
            let mut acc = Polynomial::zero(self.arity());
            for (j, vj) in v.iter().enumerate() {
                let t = self.entry(i, j);
                if !t.is_zero() && !vj.is_zero() {
                    acc = &acc + &(t * vj);
                }
            }
            acc.is_zero()
        })
    }

    /// Checks `deg Θ_ij = d_i + d_j - s` for every nonzero entry, and
    /// `deg f = Σ d_i - 2s` when `f` is given.
    pub fn check_degree_homogeneity(&self, grading: &GradingData, f: Option<&Polynomial>) -> DegreeReport {
        let weights = grading.degree_weights(self.arity());
        let mut entries = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let expected = grading.bracket_degree(i, j);
                let found = self.entry(i, j).homogeneous_degree(&weights).expect("weights sized to arity");
                let ok = if expected < 0 { found == WeightedDegree::Any } else { found.admits(&int(expected)) };
                entries.push(EntryDegree { i, j, expected, found, ok });
            }
        }
        let f_degree = f.map(|f| {
            let expected = grading.d.iter().sum::<u64>() as i64 - 2 * grading.s as i64;
            let found = f.homogeneous_degree(&weights).expect("weights sized to arity");
            let ok = matches!(&found, WeightedDegree::Degree(d) if *d == int(expected));
            EntryDegree { i: usize::MAX, j: usize::MAX, expected, found, ok }
        });
        DegreeReport { entries, f_degree }
    }

    pub fn to_json(&self, grading: &GradingData) -> String {
        let mut entries = BTreeMap::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let e = self.entry(i, j);
                if !e.is_zero() {
                    entries.insert(format!("{},{}", i + 1, j + 1), self.format(e));
                }
            }
        }
        let doc = MatrixJson {
            vars: self.names[..self.n].to_vec(),
            params: self.names[self.n..].to_vec(),
            s: grading.s,
            d: grading.d.clone(),
            w: grading.w.as_ref().map(|w| w.iter().map(|x| x.to_string()).collect()),
            entries,
        };
        serde_json::to_string_pretty(&doc).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<(PoissonMatrix, GradingData), PoissonError> {
        let doc: MatrixJson = serde_json::from_str(text).map_err(|e| PoissonError::Json(e.to_string()))?;
        let n = doc.vars.len();
        if doc.d.len() != n {
            return Err(PoissonError::Json(format!("{} degrees for {} variables", doc.d.len(), n)));
        }
        let mut names = doc.vars.clone();
        names.extend(doc.params.iter().cloned());
        let mut upper = Vec::new();
        for (key, text) in &doc.entries {
            let (i, j) = parse_key(key).ok_or_else(|| PoissonError::Json(format!("bad entry key `{}`", key)))?;
            if i == 0 || j == 0 || i >= j || j > n {
                return Err(PoissonError::Json(format!("bad entry key `{}`", key)));
            }
            upper.push(((i - 1, j - 1), parse_poly(text, &names)?));
        }
        let mut grading = GradingData::new(doc.s, doc.d.clone());
        if let Some(w) = &doc.w {
            let parsed: Result<Vec<Rational>, _> = w.iter().map(|x| x.parse::<Rational>()).collect();
            grading.w = Some(parsed.map_err(|e| PoissonError::Json(format!("bad w-weight: {}", e)))?);
        }
        Ok((PoissonMatrix::from_upper(names, n, upper)?, grading))
    }
}

fn parse_key(key: &str) -> Option<(usize, usize)> {
    let (a, b) = key.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<String>,
    s: u64,
    d: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<String>>,
    entries: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("Pfaffian condition fails at component {component}: {reason}")]
pub struct PfaffianMismatch {
    pub component: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDegree {
    pub i: usize,
    pub j: usize,
    pub expected: i64,
    pub found: WeightedDegree,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub entries: Vec<EntryDegree>,
    pub f_degree: Option<EntryDegree>,
}

impl DegreeReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.ok) && self.f_degree.as_ref().is_none_or(|e| e.ok)
    }

    /// Failing entries as 0-based index pairs.
    pub fn failures(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|e| !e.ok).map(|e| (e.i, e.j)).collect()
    }

    pub fn describe_failures(&self) -> String {
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .filter(|e| !e.ok)
            .map(|e| format!("theta({},{}) expected degree {}, found {:?}", e.i + 1, e.j + 1, e.expected, e.found))
            .collect();
        if let Some(f) = self.f_degree.as_ref().filter(|f| !f.ok) {
            parts.push(format!("f expected degree {}, found {:?}", f.expected, f.found));
        }
        parts.join("; ")
    }
}

/// Poisson matrix of a surface `f(x, y, z)`:
/// `Θ_12 = ∂f/∂z`, `Θ_13 = -∂f/∂y`, `Θ_23 = ∂f/∂x`.
pub fn surface_bracket_from_f(f: &Polynomial, names: Vec<String>) -> Result<PoissonMatrix, PoissonError> {
    if names.len() < 3 || f.arity() != names.len() {
        return Err(PoissonError::NotSurface(f.arity()));
    }
    let fx = f.derivative(0)?;
    let fy = f.derivative(1)?;
    let fz = f.derivative(2)?;
    PoissonMatrix::from_upper(names, 3, [((0, 1), fz), ((0, 2), -fy), ((1, 2), fx)])
}

pub fn xyz_names() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

impl PoissonMatrix {
    /// Constant skew matrix `((0,1),(-1,0))` on `C[u, v]`.
    pub fn standard_plane() -> Self {
        let names = vec!["u".to_string(), "v".to_string()];
        PoissonMatrix::from_upper(names, 2, [((0, 1), Polynomial::one(2))]).expect("2x2")
    }
}

/// `grad(f)` restricted to the first `n` variables.
pub fn gradient(f: &Polynomial, n: usize) -> Vec<Polynomial> {
    (0..n).map(|i| f.derivative(i).expect("index in range")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn surface(f: &str) -> (Polynomial, PoissonMatrix) {
        let f = parse_poly(f, &xyz_names()).unwrap();
        let m = surface_bracket_from_f(&f, xyz_names()).unwrap();
        (f, m)
    }

    #[test]
    fn a_n_surface_entries() {
        let (f, m) = surface("x^4 + y*z");
        assert_eq!(m.format(m.entry(0, 1)), "y");
        assert_eq!(m.format(m.entry(0, 2)), "-z");
        assert_eq!(m.format(m.entry(1, 2)), "4*x^3");
        assert_eq!(m.pfaffian_vector().unwrap(), gradient(&f, 3));
        assert_eq!(m.check_pfaffian_condition(&f), Ok(int(1)));
        assert!(m.jacobi_failures().is_empty());
    }

    #[test]
    fn e8_surface_entries() {
        let (_, m) = surface("x^5 + y^3 + z^2");
        assert_eq!(m.format(m.entry(0, 1)), "2*z");
        assert_eq!(m.format(m.entry(0, 2)), "-3*y^2");
        assert_eq!(m.format(m.entry(1, 2)), "5*x^4");
    }

    #[test]
    fn constant_matrix_is_poisson() {
        let (_, m) = surface("z");
        assert!(m.jacobi_failures().is_empty());
        let names: Vec<String> = (1..=5).map(|i| format!("x{}", i)).collect();
        let c = PoissonMatrix::from_upper(names, 5, [((0, 1), Polynomial::constant(5, int(3))), ((2, 4), Polynomial::one(5))]).unwrap();
        assert!(c.jacobi_failures().is_empty());
    }

    #[test]
    fn zero_matrix_pfaffian_vector() {
        let z = PoissonMatrix::zero(xyz_names(), 3);
        assert!(z.pfaffian_vector().unwrap().iter().all(Polynomial::is_zero));
        assert!(z.kernel_check(&[Polynomial::zero(3), Polynomial::zero(3), Polynomial::zero(3)]));
    }

    #[test]
    fn even_size_rejected() {
        assert_eq!(PoissonMatrix::standard_plane().pfaffian_vector(), Err(PoissonError::EvenSize(2)));
    }

    #[test]
    fn bad_triples() {
        let (_, m) = surface("z");
        assert!(m.jacobiator(0, 0, 1).is_err());
        assert!(m.jacobiator(0, 1, 3).is_err());
    }

    #[test]
    fn non_skew_rows_rejected() {
        let v = |s: &str| parse_poly(s, &["u", "v"]).unwrap();
        let rows = vec![vec![v("0"), v("u")], vec![v("u"), v("0")]];
        assert_eq!(PoissonMatrix::from_rows(vec!["u".into(), "v".into()], rows), Err(PoissonError::NotSkew(0, 1)));
    }

    #[test]
    fn json_round_trip() {
        let (_, m) = surface("x^3 + x*y^2 + z^2");
        let g = GradingData::new(1, vec![2, 2, 3]);
        let text = m.to_json(&g);
        let (back, g2) = PoissonMatrix::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(g2, g);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["entries"]["1,2"], "2*z");
        assert!(PoissonMatrix::from_json(r#"{"vars":["a"],"s":1,"d":[1,2],"entries":{}}"#).is_err());
    }
}
