//! Exact multivariate polynomials over the rationals and the linear algebra
//! used to compare them.

mod linalg;
mod parse;
mod poly;

pub use linalg::{combine, express_in_span, matrix_rank, rational_rank, row_reduce, SpanResult};
pub use parse::parse_rational;
pub use poly::{rat, ExactPolynomial, Monomial, Variable};
