//! From automata back to equations: certified equation recovery,
//! compositional powers, exact finite-order tests and break sequences.

mod breaks;
mod compose;
mod guess;
mod order;

pub use breaks::{break_sequence, break_sequence_of, depth, BREAK_PRECISION_CAP};
pub use compose::{ball_selects, compose_power, power_step};
pub use guess::{guess_equation, hermite_pade, CertifiedEquation, GuessCaps};
pub use order::{
    exact_order, exact_order_with, truncated_order, Order, OrderEvidence, OrderReport, CERTIFY_PRECISION,
    FILTER_PRECISION,
};
