//! Nuttall Q, incomplete Toronto, Rice Ie and incomplete Lipschitz-Hankel integrals.
//!
//! Each function has several evaluation routes (closed forms, truncated series,
//! exact series) plus bounds, and every route can be checked against a
//! quadrature oracle built from the defining integral.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod capacity;
pub mod error;
pub mod fading;
pub mod hyper;
pub mod identities;
pub mod ilhi;
pub mod kernel;
pub mod nuttall;
pub mod oracle;
pub mod quad;
pub mod rice;
pub mod solve;
mod sum;
pub mod toronto;
mod types;

pub use error::{Error, Result};
pub use types::{EvalResult, Interval, Method};
