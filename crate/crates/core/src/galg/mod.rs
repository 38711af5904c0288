//! Exact engine for a finitely generated Grassmann algebra.
//!
//! Elements are finite sums of monomials over named atoms. Even atoms commute
//! with everything; odd atoms anticommute pairwise and square to zero.
//! Normalization orders each monomial's odd factors by the global canonical
//! order on `(name, conjugated, dot_order)`, tracking the permutation sign, so
//! structural equality of normal forms is semantic equality. Coefficients are
//! exact Gaussian rationals; nothing is floated.
//!
//! Conventions:
//!
//! * Distinct odd atoms fully anticommute: `{theta, thetac} = 0`. The relation
//!   `{psi, psic} = 1` sometimes quoted for such pairs belongs to the
//!   *quantized* fermion operators and enters only the spectral layer; using
//!   it here for the coordinates would collapse the algebra.
//! * Berezin integration is left differentiation: `berezin(e, [v, w])`
//!   applies the left derivative in `v`, then in `w` (the innermost measure
//!   factor first). The resulting orientation is [`TOP_COEFFICIENT_SIGN`].

mod atom;
pub mod coeff;
mod expr;
mod text;

pub use atom::{atoms, Atom, Parity};
pub use coeff::{Coeff, Rat};
pub use expr::{Factor, GalgError, GradedExpr, Monomial};
pub use text::{parse_expr, AtomTable, ParseError};

/// Orientation of the iterated Berezin integral: for odd atoms `v != w`,
/// `berezin(v*w, [v, w]) == TOP_COEFFICIENT_SIGN`, i.e. integrating the
/// product written in measure order yields +1. Pinned by a unit test.
pub const TOP_COEFFICIENT_SIGN: i64 = 1;
