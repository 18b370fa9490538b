//! Exact arithmetic in `ℤ[t, x]` and its fraction field, truncated power
//! series, and a parser for rational expressions.

pub mod expr;
pub mod poly;
pub mod rat;
pub mod series;

pub use expr::parse_expr;
pub use poly::{cross_diff_div, Monomial, Poly2};
pub use rat::{ratio, RatFun2};
pub use series::{series_expand, series_expand_box, SeriesTable};
