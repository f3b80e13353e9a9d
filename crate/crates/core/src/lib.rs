//! Exact-arithmetic engine for the Stone–von Neumann representation of
//! finite Heisenberg groups, the Weil representation of Sp(2m, F_q), the
//! metaplectic 2-cocycle over p-adic fields, and desk-scale theta lifts.
//!
//! Everything is computed over exact coefficient fields: cyclotomic number
//! fields in characteristic 0, or finite extensions of F_l ("modular"
//! coefficients) with l different from the residual characteristic p.
//! There is no floating point anywhere in the computational paths.
//!
//! The crate is `no_std` (alloc required); IO, JSON and the command-line
//! surface live in the companion `weilrep-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coeff;
pub mod field;
pub mod finitefield;
pub mod heisenberg;
pub mod matrix;
pub mod padic;
pub mod poly;
pub mod rng;
pub mod symplectic;
pub mod theta;
pub mod weil;

pub use field::{Field, Rat};
