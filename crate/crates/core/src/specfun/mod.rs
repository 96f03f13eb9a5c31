//! Gamma-family functions and generalized hypergeometric series.

mod continuation;
mod gamma;
mod hyper;
mod identities;

pub use continuation::{hyp2f1, hyp2f1_real};
pub use gamma::{digamma, digamma_real, gamma, pochhammer, rgamma, EULER_GAMMA};
pub use hyper::{hyper, hyper_with, HyperParams, SeriesOptions};
pub use identities::{
    gauss_sum_at_1, in_whipple2_region, in_whipple_region, three_f2_unit_value,
    whipple2_residual, whipple_residual, whipple_samples,
};

pub(crate) use gamma::gamma_real;
