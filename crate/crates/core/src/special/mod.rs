//! Real-valued special functions.

pub mod bessel;
pub mod gamma;
pub mod hypergeometric;
pub mod meijer;

pub use bessel::{bessel_k, ln_bessel_k};
pub use gamma::{gamma, ln_gamma, pochhammer, pochhammer_real, rgamma, upper_incomplete_gamma};
pub use hypergeometric::{hyp_1f2, hyp_2f1};
pub use meijer::{meijer_g, MeijerSlice};
