//! Exact evaluation and verification of trigonometric character sums.
//!
//! Families of sums such as
//!
//! ```text
//!   Σ_{0<n<k/2} χ(n) · sin^a(bπn/k) / sin^{a+1}(πn/k)
//! ```
//!
//! with χ the real primitive character mod k admit closed forms built from
//! class numbers h(−k), Gauss sums, and finite combinatorial coefficients.
//! This crate computes both sides of each such evaluation exactly — the sum
//! term by term in the cyclotomic field Q(ζ_{4k·lcm(c)}), the closed form
//! from integer arithmetic — and demands exact equality, with a
//! double-precision cross-check on the side. No identity check involves a
//! floating-point tolerance.
//!
//! Module map:
//! - [`characters`]: Jacobi symbols, real primitive Dirichlet characters,
//!   exact Gauss sums.
//! - [`cyclotomic`]: arithmetic in Q(ζ_M), trigonometric constants, √k, and
//!   exact value extraction.
//! - [`closedform`]: class numbers and every closed-form coefficient,
//!   including the two general theorems' right-hand sides.
//! - [`sums`]: the sum families and their direct exact/float evaluation.
//! - [`harness`]: pairing, verification reports, table reproduction, grids,
//!   JSON/CSV serialization.

pub mod characters;
pub mod closedform;
pub mod cyclotomic;
pub mod harness;
pub mod sums;

mod error;
mod poly;

pub use error::{Error, Result};
