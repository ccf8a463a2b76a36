//! Exact-arithmetic quantum-group invariants.
//!
//! The pipeline runs from `U_q(sl2)` representations through a balanced tensor
//! structure (braiding, twist, dualities) to colored framed-link invariants,
//! the semisimplified fusion ring at a root of unity, and genus-`g` surface
//! invariants. A Hopf-axiom checker for finite-dimensional algebras and a
//! rewriting engine for the quantum coordinate algebra `SL_q(2)` sit beside it.

pub mod axioms;
pub mod fusion;
pub mod hopfcheck;
pub mod links;
pub mod matrix;
pub mod qcoords;
pub mod ribbon;
pub mod ring;
pub mod uqsl2;

pub use matrix::Matrix;
pub use ring::{CycloScalar, Cyclotomic, Generic, LaurentScalar, RingTag, Scalar, ScalarRing};
