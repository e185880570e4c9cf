//! Exact enumeration of rooted hypermaps by vertices, edges and faces.
//!
//! The generating polynomial `H_r(m, n, λ)` for hypermaps with `r` darts is
//! evaluated at integer points through a convolution recursion over an
//! auxiliary series `F`, and its integer coefficients are then recovered by
//! exact tensor-product interpolation. An independent brute-force enumerator
//! of 3-constellations cross-checks the result for small `r`.
//!
//! All arithmetic is exact. Nothing in this crate touches floating point.

pub mod error;
pub mod exactmath;
pub mod exec;
pub mod fseries;
pub mod henum;
pub mod interpolate;
pub mod oracle;
pub mod pipeline;

pub use error::{Error, Result};
pub use exactmath::{BigInt, BigRat, PolySym3};
pub use exec::Exec;
pub use fseries::FGrid;
pub use henum::HGrid;
pub use interpolate::{CoeffTable, Triple};
pub use pipeline::{compute_table, TableStats};
