//! Exact computations with pfaffinants: linear functionals on skew-symmetric
//! matrices built from symmetric Temperley-Lieb diagrams.

pub mod diagrams;
pub mod cli;
pub mod error;
pub mod networks;
pub mod exact_poly;
pub mod immanants;
pub mod pfaffian_core;
pub mod pfaffinants;
pub mod schur_q;
pub mod uncross;

pub use error::{Error, Result};
