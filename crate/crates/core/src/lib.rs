//! Exact algebra for weighted-homogeneous Poisson structures on affine
//! space: polynomials over Q, Poisson matrices, Gröbner bases, normal
//! forms, a catalog of hypersurface families and orbifold line bundles.

pub mod catalog;
pub mod error;
pub mod ideals;
pub mod normal_form;
pub mod orbifold;
pub mod parse;
pub mod poisson;
pub mod poly;
pub mod report;

pub use error::{ParseError, PolyError};
pub use ideals::{buchberger, GroebnerBasis, OrderKind, TermOrder};
pub use parse::{default_names, format_poly, parse_poly};
pub use poisson::PoissonMatrix;
pub use poly::{GradingData, Monomial, Polynomial, Rational};
pub use report::{Check, Report, Status};
