//! Automatic power series over F_p.
//!
//! * [`algebra`] — exact arithmetic over F_p (polynomials, series, resultants).
//! * [`dfao`] — deterministic finite automata with output: evaluation,
//!   minimization, series-level constructions and the file codec.
//! * [`christol`] — algebraic equation → automaton (Ore and diagonal routes).
//! * [`inverse`] — automaton → certified equation, compositional powers,
//!   exact order and break sequences.
//! * [`nottingham`] — Witt vectors, break predictions, closed forms and
//!   conjugacy normal forms in the Nottingham group.
//! * [`classify`] — sparseness hierarchy, witnesses and synchronization.
//! * [`enumerate`] — exhaustive search for small finite-order automata.
//! * [`catalog`] — named series with machine-checked expectations.

pub mod algebra;
pub mod catalog;
pub mod christol;
pub mod classify;
pub mod dfao;
pub mod enumerate;
pub mod inverse;
pub mod nottingham;
pub mod error;

pub use error::{Error, Result};
