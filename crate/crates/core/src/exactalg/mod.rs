//! Exact arithmetic: rationals, monomials, term orders, sparse multivariate
//! polynomials and a real quadratic field.

pub mod field;
pub mod json;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod surd;

pub use field::{Field, OrderedField, Ring};
pub use json::{IdealCollection, IdealJson, PolyJson};
pub use monomial::{lcm_monomial, Monomial};
pub use order::{compare, TermOrder};
pub use parse::parse_polynomial;
pub use polynomial::{Polynomial, VarContext};
pub use rational::{format_rational, parse_rational, Rational};
pub use surd::QuadSurd;
