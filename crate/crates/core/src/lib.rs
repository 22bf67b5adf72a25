//! Gram-Schmidt orthogonalization and energy-preserving, non-orthogonal
//! transforms of linearly independent real vector sets.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO, file formats and the command-line front end
//! live in the `linoep-cli` crate.
//!
//! * [`vectorspace`] holds the inner-product primitives.
//! * [`gsom`] is classical Gram-Schmidt with the coefficient-matrix and
//!   column-sum bookkeeping behind the Parseval identity.
//! * [`linoep`] is the backward recursion producing a linearly independent,
//!   non-orthogonal, energy-preserving set, and its `n + 1` vector extension
//!   whose members sum back to the input sum.
//! * [`crossterm`] classifies how a set cancels its cross terms, builds
//!   seeded example sets and sweeps every ordering of an input.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod crossterm;
mod error;
pub mod gsom;
pub mod linoep;
pub mod permutation;
pub mod vectorspace;

pub use crossterm::{
    classify, cross_term, make_cancellation_example, make_nested_example, permutation_sweep,
    sweep_permutation, CrossTermReport, Family, SweepEntry, SweepResult, MAX_EXHAUSTIVE_N,
};
pub use error::{Error, Result};
pub use gsom::{gsom_energy_identity, gsom_transform, GsomEnergy, GsomResult};
pub use linoep::{
    energy_report, linoep, linoep_transform, noep_extend, EnergyReport, Linoep, LinoepResult,
};
pub use permutation::LexicographicPermutations;
pub use vectorspace::{
    gram, inner, is_linearly_independent, norm, norm_sq, sum_vectors, DenseVector, GramMatrix,
    SquareMatrix, VectorSet, DEFAULT_TOL,
};
