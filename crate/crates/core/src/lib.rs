//! Exact constructions for qudit spin bases and their algebra.
//!
//! This crate builds, over exact cyclotomic arithmetic:
//!
//! - the cyclic operators `v_{ra}` and their eigenvector bases,
//! - complete sets of mutually unbiased bases in prime dimension and the
//!   five tensor-product bases in dimension 4,
//! - the Weyl pair `(x, z)`, the `d^2` generalized Pauli matrices
//!   `u_ab = x^a z^b` and the order-`d^3` Pauli group `q^a x^b z^c`,
//! - symmetry-adapted bases for cyclic systems (ring molecular orbitals
//!   and spin waves),
//!
//! together with exact checkers for the identities these objects satisfy:
//! unbiasedness, `q`-commutation, trace orthogonality, commutator and
//! anticommutator structure, the partition into commuting classes and
//! group closure. Every identity check in exact mode admits no tolerance;
//! an approximate floating-point mode is available for export and for
//! parameters outside the exact subset.

pub mod arith;
pub mod basis;
pub mod cyclic;
pub mod error;
pub mod matrix;
pub mod mub;
pub mod pauli_group;
pub mod scalar;
pub mod verify;
pub mod weyl;

pub use basis::{ApproxBasis, Basis, BasisVector, VectorLabel};
pub use error::{Error, Result};
pub use matrix::{ApproxMatrix, GPMatrix, MatrixLabel};
pub use scalar::{ApproxScalar, CycloScalar};
pub use weyl::{Bracket, OperatorParams, PauliLabel};
