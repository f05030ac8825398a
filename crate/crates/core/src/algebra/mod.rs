//! Exact arithmetic over F_p: polynomials in one and two variables,
//! rational functions, truncated power series, Cartier operators,
//! resultants, Newton polygons and Hensel lifting.

pub mod bipoly;
pub mod fp;
pub mod hensel;
pub mod linalg;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod resultant;
pub mod series;

pub use bipoly::{BiPoly, Squarefree};
pub use linalg::KernelBuilder;
pub use hensel::{disc_valuation, hensel_root, hensel_root_coefficientwise, truncated_solutions};
pub use newton::{newton_slopes, NewtonSlopes, Place};
pub use parse::{parse_bipoly, parse_poly, parse_series};
pub use poly::FpPoly;
pub use ratfn::RatFn;
pub use resultant::{resultant_x, resultant_y};
pub use series::{TruncSeries, DEFAULT_PRECISION};
