//! The Nottingham group over F₂: Witt vectors, break predictions, closed
//! formulas for named series, sparse involutions and conjugacy normal forms.

pub mod closed_forms;
pub mod conjugacy;
pub mod ks;
pub mod sparse;
pub mod witt;

pub use closed_forms::ClosedForm;
pub use conjugacy::{
    conjugate, normalize_order8, phi_series, phi_twist, recognize_order4_13, Order4Class, ORDER8_PRECISION,
};
pub use ks::{convert_breaks, ks_breaks, BreakData, Numbering};
pub use sparse::{klopsch, klopsch_equation, sparse_rep, SparseRep};
pub use witt::{F2Algebra, WittVec, F2};
