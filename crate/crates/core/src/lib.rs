//! Certification toolkit for three-qubit states built around a family of
//! X-shaped entanglement witnesses.
//!
//! The crate provides, bottom up:
//!
//! * [`linalg`]: dense complex matrices, a cyclic Jacobi eigensolver, rank
//!   and positivity tests, partial transposes;
//! * [`xstate`]: the closed calculus of X-shaped three-qubit operators
//!   (partial transpose, local bit flips, positivity) in coefficient form;
//! * [`witness`]: a one-parameter family of entanglement witnesses obtained
//!   as Choi matrices of a positive bilinear map, and the pairing and kill
//!   tests they induce on product vectors;
//! * [`products`]: the product vectors annihilated by each witness, the
//!   parameter surfaces they live on, and the ten-element kill sets cut out
//!   by triples of witnesses;
//! * [`faces`]: separable states supported on a kill set, their simplex
//!   structure, unique-decomposition certificates and coefficient matrices;
//! * [`pptlab`]: positive-partial-transpose checks and line-segment
//!   extensions that produce PPT entangled states just outside a face.
//!
//! Randomized consistency sweeps live in [`sweeps`]; they run on rayon when
//! the default `parallel` feature is enabled and fall back to plain
//! iterators without it.
//!
//! Conventions: qubits are ordered A, B, C; the computational basis of
//! `C^8` is indexed `i = 4*i_A + 2*i_B + i_C`, i.e. `|000>, |001>, ...,
//! |111>` in lexicographic order.

#![forbid(unsafe_code)]

pub mod error;
mod exec;
pub mod faces;
pub mod linalg;
pub mod pptlab;
pub mod products;
pub mod sampling;
pub mod sweeps;
pub mod witness;
pub mod xstate;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, Party, Tolerances};
pub use witness::{Triple, Witness, WitnessLabel};
pub use xstate::XState;

/// Hilbert space dimension for three qubits.
pub const DIM: usize = 8;
