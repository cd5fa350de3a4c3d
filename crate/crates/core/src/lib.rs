//! Exact computation in the quantum matrix algebra `O_q(M_{m,n})` and the
//! quantum grassmannian `O_q(G(m,n))`.
//!
//! Scalars are integer Laurent polynomials in a formal variable `t`, with
//! `q = t^m` and `p = t^2`. On top of that the crate provides PBW normal forms,
//! quantum minors, quadratic relation discovery, Ore localisation at a
//! consecutive minor with its dehomogenisation maps, and the `Z^n` cocycle twist
//! that realises column cycling as an isomorphism `T(O_q(G(m,n))) -> O_q(G(m,n))`.

pub mod error;
pub mod grass;
pub mod linalg;
pub mod minors;
pub mod model;
pub mod qmatrix;
pub mod report;
pub mod scalar;
pub mod twist;

pub use error::{Error, Result};
pub use linalg::{kernel_basis, ScalarMatrix};
pub use minors::{
    consecutive_minor, cycle_index_set, maximal_minor, minor_content, quantum_minor, tilde, IndexPair, IndexSet,
};
pub use qmatrix::{normalize, Content, Gen, NCPoly, Word};
pub use report::{Check, Report, Status};
pub use scalar::{monomial_ratio, p_power, q_power, LaurentScalar};
