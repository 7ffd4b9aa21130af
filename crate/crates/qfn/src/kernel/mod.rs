//! Scalar kernels shared by every module.

mod bessel;
mod gamma;
mod incgamma;
mod marcum;

pub use bessel::bessel_i;
pub(crate) use bessel::{i_scaled, ln_i};
pub use gamma::{gamma, ln_gamma, pochhammer, rgamma, EULER};
pub(crate) use gamma::{gamma_unchecked, ln_gamma_pos};
pub use incgamma::{expint_e1, gamma_p, gamma_q, ln_lower_inc_gamma, ln_upper_inc_gamma, lower_inc_gamma, upper_inc_gamma};
pub use marcum::{gaussian_q, half_ceil, half_floor, marcum_p, marcum_q};
