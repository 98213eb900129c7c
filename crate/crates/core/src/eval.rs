use serde::{Deserialize, Serialize};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    ClosedForm,
    MellinBarnes,
    QuadratureFallback,
}

/// A numerical value together with the route that produced it and an
/// estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn new(value: f64, abs_error_estimate: f64, method: Method) -> Self {
        let abs_error_estimate = if abs_error_estimate.is_finite() {
            abs_error_estimate.abs()
        } else {
            f64::MAX
        };
        Self {
            value,
            abs_error_estimate,
            method,
        }
    }
}
