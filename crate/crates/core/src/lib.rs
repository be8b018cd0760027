//! Exact computation with dominant rational maps of projective space.
//!
//! The crate tracks three intertwined questions about a rational map or a
//! pair of maps:
//!
//! * what happens to degrees under composition — the common factor of the
//!   raw composed coordinates is extracted exactly, witnessing any drop;
//! * what the induced pullback does on the cohomology of products of
//!   projective spaces — a truncated-polynomial model of the Kunneth ring
//!   evaluates correspondence composition and its excess class;
//! * how fast degrees grow under iteration — degree sequences, certified
//!   root enclosures for characteristic polynomials, and the exact dynamical
//!   degrees of monomial maps.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! no operation rounds. See the `cli` crate for the command-line surface.

pub mod catalog;
pub mod cohom;
pub mod det;
pub mod gcd;
pub mod monomial;
pub mod parser;
pub mod poly;
pub mod probe;
pub mod projmap;
pub mod rational;
pub mod scenario;
pub mod serial;
pub mod spectral;

pub use monomial::Monomial;
pub use poly::{ArithOp, Poly, PolyError, TermBudget};
pub use rational::Rat;

/// Library version echoed into every CLI report.
pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
