#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimation;
pub mod eval;
pub mod oracle;
pub mod order;
pub mod product_ratio;
mod quadrature;
pub mod sampling;
pub mod skd;
pub mod skew;
pub mod special;

pub use error::{Result, SkdError};
pub use estimation::{fit_mle, fit_mom, FitResult};
pub use eval::{EvalResult, Method};
pub use oracle::OracleReport;
pub use order::{order_stat_cdf, order_stat_pdf, OrderSpec};
pub use product_ratio::PairLaw;
pub use sampling::SampleStream;
pub use skd::{pdf_standard, MomentSpec, SkdParams, Summary};
pub use skew::SkewParams;
