//! Exact counting, enumeration and verification of meaningful compositions of
//! differential operations on ℝⁿ.
//!
//! Family A holds `∇_1 .. ∇_n` (grad, curl, div and their analogues); family B
//! adds the Gateaux derivative `∇_0`. The number of meaningful order-`k`
//! compositions is a walk count on a 0/1 adjacency matrix, and everything else in
//! the crate (characteristic polynomials, recurrences, sequence checks, ℝ³
//! identities) hangs off that matrix.
//!
//! ```
//! use diffops::exactalg::count_order_k;
//! use diffops::opgraph::{build_space, Family};
//!
//! let space = build_space(3, Family::B).unwrap();
//! assert_eq!(count_order_k(&space, 10).unwrap(), 2048.into());
//! ```

pub mod cli;
pub mod closedform;
pub mod enumerate;
pub mod error;
pub mod exactalg;
pub mod opgraph;
pub mod report;
pub mod sequences;
pub mod symcalc3;

pub use error::{Error, Result};
