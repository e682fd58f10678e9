//! Exact linear algebra on quotient algebras of zero-dimensional polynomial
//! ideals.
//!
//! The pipeline: parse a polynomial system over Q, compute a reduced Groebner
//! basis ([`groebner`]), build the finite-dimensional quotient algebra with its
//! standard-monomial basis ([`quotient`]), and then work with multiplication
//! matrices — characteristic polynomials, traces, determinants, a numeric
//! eigenvalue solver with exact multiplicities, Hermite trace-form signatures
//! for real root counting ([`hermite`]), the U-resultant ([`uresultant`]), and
//! mod-p trace/discriminant checks in monogenic orders Z[theta]
//! ([`numberfield`]).
//!
//! Everything symbolic is exact rational arithmetic; floating point enters
//! only in the numeric eigenvalue stage ([`numeric`]).

pub mod error;
pub mod groebner;
pub mod hermite;
pub mod matrix;
pub mod monomial;
pub mod multipoly;
pub mod numberfield;
pub mod numeric;
pub(crate) mod par;
pub mod parse;
pub mod quotient;
pub mod rational;
pub mod system;
pub mod unipoly;
pub mod uresultant;

pub use error::{Error, Result};
pub use groebner::{buchberger, is_zero_dimensional, normal_form, standard_monomials, GroebnerBasis, QuotientBasis};
pub use matrix::{RationalMatrix, RealMatrix};
pub use monomial::{monomial_compare, Monomial, MonomialOrder, OrderKind};
pub use multipoly::MultiPoly;
pub use quotient::{
    char_poly_direct, char_poly_via_traces, LocalCheckReport, QuotientAlgebra, SolutionPoint,
    SolutionSet, SolveOptions,
};
pub use rational::Rational;
pub use system::SystemFile;
pub use unipoly::UniPoly;
