//! Supersymmetric quantum mechanics toolkit.
//!
//! The crate layers an exact Grassmann engine ([`galg`]) under a superspace
//! calculus ([`superspace`]), reduces superspace actions to component form
//! ([`reduction`]), and follows the resulting models numerically: partner
//! spectra on a grid ([`spectra`]) and sine-Gordon soliton checks with a
//! fermion zero mode ([`soliton`]).
//!
//! The `parallel` feature (default) routes the data-parallel kernels through
//! rayon; disabling it falls back to equivalent sequential loops. Both paths
//! produce identical bytes: parallel maps preserve ordering and never reduce
//! floating-point sums in a nondeterministic order.

pub mod galg;
pub mod par;
pub mod poly;
pub mod reduction;
pub mod soliton;
pub mod spectra;
pub mod superspace;

pub use galg::{Atom, GradedExpr, Parity};
