//! Exact machinery for surgery presentations of 3-manifolds.
//!
//! * [`linkdiag`]: combinatorial framed-link diagrams, linking numbers and the
//!   local rewrites (crossing switches, blow-up gadgets, handle slides,
//!   blow-downs) used to turn a surgery link into one made of unknots.
//! * [`intlattice`]: symmetric integer forms. Smith normal form, surgery
//!   homology, inertia, short vectors and the diagonalizability test.
//! * [`calculus`]: free-group words, replayable Kirby-move scripts, the
//!   unknotting pipeline, embedding certificates and the definite-lattice
//!   obstruction.
//!
//! Everything here is pure and allocation-only; file formats and the command
//! line live in the `dominance` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod calculus;
pub mod intlattice;
pub mod linkdiag;
mod sign;

pub use num_bigint::BigInt;
pub use sign::Sign;

/// Unbounded integer used for framings and form entries.
pub type Integer = BigInt;
