//! Generalized hypergeometric series `₁F₂` and the Gauss function `₂F₁`.

use super::gamma::{gamma, rgamma};
use crate::error::{domain, Result, SkdError};
use crate::eval::{EvalResult, Method};

const TERM_EPS: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;
/// Beyond this distance from 1 the direct `₂F₁` series is used on `[0, 1)`.
const DIRECT_LIMIT: f64 = 0.9;
/// Minimum distance of `c - a - b` from an integer for the `1 - x` connection.
const CONNECTION_GAP: f64 = 1e-3;

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// Sums `Σ t_k` with `t_{k+1} = t_k · ratio(k)`. Stops once two successive
/// terms are below `TERM_EPS` times the running sum (or vanish exactly).
fn sum_series(routine: &'static str, mut ratio: impl FnMut(f64) -> f64) -> Result<EvalResult> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        term *= ratio(k as f64);
        sum += term;
        abs_sum += term.abs();
        if term == 0.0 {
            return Ok(EvalResult::new(
                sum,
                4.0 * f64::EPSILON * abs_sum,
                Method::Series,
            ));
        }
        if term.abs() < TERM_EPS * sum.abs() {
            small_run += 1;
            if small_run == 2 {
                let err = 4.0 * f64::EPSILON * abs_sum + term.abs();
                return Ok(EvalResult::new(sum, err, Method::Series));
            }
        } else {
            small_run = 0;
        }
        if !sum.is_finite() {
            return Err(SkdError::Overflow(routine));
        }
    }
    Err(SkdError::Convergence {
        routine,
        estimate: sum,
        error: term.abs(),
    })
}

/// `₁F₂(a; b1, b2; x)`, an entire function of `x`.
pub fn hyp_1f2(a: f64, b1: f64, b2: f64, x: f64) -> Result<EvalResult> {
    if !(a.is_finite() && b1.is_finite() && b2.is_finite() && x.is_finite()) {
        return Err(domain("hyp_1f2 requires finite arguments"));
    }
    if is_nonpositive_integer(b1) || is_nonpositive_integer(b2) {
        return Err(domain(format!(
            "hyp_1f2 denominator parameter is a pole: b1={b1}, b2={b2}"
        )));
    }
    if x == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::Series));
    }
    sum_series("hyp_1f2 series", |k| {
        (a + k) * x / ((b1 + k) * (b2 + k) * (k + 1.0))
    })
}

fn series_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<EvalResult> {
    sum_series("hyp_2f1 series", |k| {
        (a + k) * (b + k) * x / ((c + k) * (k + 1.0))
    })
}

/// `₂F₁` on `[0, 1)`.
fn hyp_2f1_unit(a: f64, b: f64, c: f64, x: f64) -> Result<EvalResult> {
    if x == 0.0 {
        return Ok(EvalResult::new(1.0, 0.0, Method::Series));
    }
    let s = c - a - b;
    if x > DIRECT_LIMIT && (s - s.round()).abs() >= CONNECTION_GAP {
        // Expansion about x = 1:
        // F = A ₂F₁(a, b; 1-s; 1-x) + B (1-x)^s ₂F₁(c-a, c-b; 1+s; 1-x)
        let y = 1.0 - x;
        let gc = gamma(c)?;
        let coef_a = gc * gamma(s)? * rgamma(c - a) * rgamma(c - b);
        let coef_b = gc * gamma(-s)? * rgamma(a) * rgamma(b);
        let mut value = 0.0;
        let mut err = 0.0;
        if coef_a != 0.0 {
            let f = series_2f1(a, b, 1.0 - s, y)?;
            value += coef_a * f.value;
            err += (coef_a * f.abs_error_estimate).abs()
                + 4.0 * f64::EPSILON * (coef_a * f.value).abs();
        }
        if coef_b != 0.0 {
            let f = series_2f1(c - a, c - b, 1.0 + s, y)?;
            let w = coef_b * y.powf(s);
            value += w * f.value;
            err += (w * f.abs_error_estimate).abs() + 4.0 * f64::EPSILON * (w * f.value).abs();
        }
        if !value.is_finite() {
            return Err(SkdError::Overflow("hyp_2f1 connection formula"));
        }
        return Ok(EvalResult::new(value, err, Method::ClosedForm));
    }
    if x > 0.5 && s < 0.0 {
        // Euler: F = (1-x)^s ₂F₁(c-a, c-b; c; x); the transformed terms decay
        // like k^{-s-1} instead of k^{s-1}.
        let pre = (1.0 - x).powf(s);
        let f = series_2f1(c - a, c - b, c, x)?;
        let value = pre * f.value;
        let err = (pre * f.abs_error_estimate).abs() + 4.0 * f64::EPSILON * value.abs();
        return Ok(EvalResult::new(value, err, Method::Series));
    }
    series_2f1(a, b, c, x)
}

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` for `x < 1`.
pub fn hyp_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<EvalResult> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && x.is_finite()) {
        return Err(domain("hyp_2f1 requires finite arguments"));
    }
    if is_nonpositive_integer(c) {
        return Err(domain(format!("hyp_2f1 parameter c={c} is a pole")));
    }
    if x >= 1.0 {
        return Err(domain(format!("hyp_2f1 requires x < 1, got {x}")));
    }
    if x >= 0.0 {
        return hyp_2f1_unit(a, b, c, x);
    }
    // Pfaff: F(a, b; c; x) = (1-x)^{-a} F(a, c-b; c; x/(x-1)).
    let w = x / (x - 1.0);
    let pre = (1.0 - x).powf(-a);
    let f = hyp_2f1_unit(a, c - b, c, w)?;
    let value = pre * f.value;
    let err = (pre * f.abs_error_estimate).abs() + 4.0 * f64::EPSILON * value.abs();
    Ok(EvalResult::new(value, err, f.method))
}
