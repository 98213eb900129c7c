//! Meijer G-function on a fixed set of parameter layouts, evaluated by
//! numerical integration of its Mellin–Barnes representation.
//!
//! With the substitution `s = -σ` the defining contour integral becomes
//!
//! ```text
//! G = (1/2πi) ∫ Φ(σ) dσ,
//! Φ(σ) = Π Γ(b_j + σ) Π Γ(1 - a_j - σ) / (Π Γ(1 - b_k - σ) Π Γ(a_k + σ)) · x^{-σ}
//! ```
//!
//! over a vertical line `Re σ = c` between the left poles of `Γ(b_j + σ)` and
//! the right poles of `Γ(1 - a_j - σ)`. Repeated or integer-spaced poles need
//! no special treatment on such a line. `c` is placed at the saddle point of
//! `|Φ|` on the real axis, which removes the leading oscillation, and the
//! conjugate symmetry `Φ(c̄) = conj Φ(c)` halves the line.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{ln_gamma_complex, ln_gamma_pos, sin_pi};
use crate::error::{domain, Result, SkdError};
use crate::eval::{EvalResult, Method};
use crate::quadrature::adaptive_gk;

/// Layouts `(m, n, p, q)` accepted by [`MeijerSlice::new`].
pub const SUPPORTED_LAYOUTS: [(usize, usize, usize, usize); 6] = [
    (2, 1, 1, 3),
    (2, 0, 0, 2),
    (4, 0, 0, 4),
    (4, 1, 1, 5),
    (2, 2, 2, 2),
    (2, 3, 3, 3),
];

const MAX_TAU: f64 = 1e4;

/// Parameters of `G^{m,n}_{p,q}(x | a; b)`.
///
/// `a_top` holds `a_1..a_n`, `a_bottom` holds `a_{n+1}..a_p`, `b_top` holds
/// `b_1..b_m` and `b_bottom` holds `b_{m+1}..b_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerSlice {
    a_top: Vec<f64>,
    a_bottom: Vec<f64>,
    b_top: Vec<f64>,
    b_bottom: Vec<f64>,
}

impl MeijerSlice {
    pub fn new(
        a_top: Vec<f64>,
        a_bottom: Vec<f64>,
        b_top: Vec<f64>,
        b_bottom: Vec<f64>,
    ) -> Result<Self> {
        let layout = (
            b_top.len(),
            a_top.len(),
            a_top.len() + a_bottom.len(),
            b_top.len() + b_bottom.len(),
        );
        if !SUPPORTED_LAYOUTS.contains(&layout) {
            return Err(SkdError::Unsupported(format!(
                "Meijer-G layout (m, n, p, q) = {layout:?} is not supported"
            )));
        }
        let all = a_top.iter().chain(&a_bottom).chain(&b_top).chain(&b_bottom);
        if all.clone().any(|v| !v.is_finite()) {
            return Err(domain("Meijer-G parameters must be finite"));
        }
        Ok(Self {
            a_top,
            a_bottom,
            b_top,
            b_bottom,
        })
    }

    /// `(m, n, p, q)`.
    pub fn layout(&self) -> (usize, usize, usize, usize) {
        (
            self.b_top.len(),
            self.a_top.len(),
            self.a_top.len() + self.a_bottom.len(),
            self.b_top.len() + self.b_bottom.len(),
        )
    }

    pub fn a_top(&self) -> &[f64] {
        &self.a_top
    }

    pub fn a_bottom(&self) -> &[f64] {
        &self.a_bottom
    }

    pub fn b_top(&self) -> &[f64] {
        &self.b_top
    }

    pub fn b_bottom(&self) -> &[f64] {
        &self.b_bottom
    }

    fn ln_phi(&self, ln_x: f64, s: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = -s * ln_x;
        for &b in &self.b_top {
            acc += ln_gamma_complex(s + b);
        }
        for &a in &self.a_top {
            acc += ln_gamma_complex(one - a - s);
        }
        for &b in &self.b_bottom {
            acc -= ln_gamma_complex(one - b - s);
        }
        for &a in &self.a_bottom {
            acc -= ln_gamma_complex(s + a);
        }
        acc
    }

    /// `ln |Φ(c)|` on the real axis.
    fn ln_phi_real(&self, ln_x: f64, c: f64) -> f64 {
        let mut acc = -c * ln_x;
        for &b in &self.b_top {
            acc += ln_abs_gamma(b + c);
        }
        for &a in &self.a_top {
            acc += ln_abs_gamma(1.0 - a - c);
        }
        for &b in &self.b_bottom {
            acc -= ln_abs_gamma(1.0 - b - c);
        }
        for &a in &self.a_bottom {
            acc -= ln_abs_gamma(a + c);
        }
        acc
    }
}

fn ln_abs_gamma(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma_pos(x)
    } else {
        let s = sin_pi(x).abs();
        if s == 0.0 {
            f64::INFINITY
        } else {
            (PI / s).ln() - ln_gamma_pos(1.0 - x)
        }
    }
}

fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if (hi - lo).abs() <= 1e-10 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Chooses the contour abscissa at the minimum of `ln |Φ|` inside `(lo, hi)`.
fn saddle(h: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let width = hi - lo;
    let candidates: Vec<f64> = if width.is_finite() {
        let margin = 1e-3 * width;
        (0..=64)
            .map(|k| lo + margin + (width - 2.0 * margin) * k as f64 / 64.0)
            .collect()
    } else {
        (0..48).map(|k| lo + 1e-3 * 2f64.powi(k)).collect()
    };
    let values: Vec<f64> = candidates.iter().map(|&c| h(c)).collect();
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if v.is_finite() && (!values[best].is_finite() || *v < values[best]) {
            best = k;
        }
    }
    let left = candidates[best.saturating_sub(1)];
    let right = candidates[(best + 1).min(candidates.len() - 1)];
    if left == right {
        return candidates[best];
    }
    golden_min(h, left, right)
}

/// Evaluates `G^{m,n}_{p,q}(x)` for `x > 0` by Mellin–Barnes quadrature.
pub fn meijer_g(slice: &MeijerSlice, x: f64) -> Result<EvalResult> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("meijer_g requires finite x > 0, got {x}")));
    }
    let lower = slice
        .b_top
        .iter()
        .map(|b| -b)
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = slice
        .a_top
        .iter()
        .map(|a| 1.0 - a)
        .fold(f64::INFINITY, f64::min);
    if !(lower < upper) {
        return Err(domain(format!(
            "no vertical contour separates the pole families (need {lower} < {upper})"
        )));
    }
    let ln_x = x.ln();
    let h = |c: f64| slice.ln_phi_real(ln_x, c);
    let c = saddle(&h, lower, upper);
    let h0 = h(c);
    if h0 < -745.0 {
        // The whole contour lies below the smallest subnormal.
        return Ok(EvalResult::new(0.0, 0.0, Method::MellinBarnes));
    }

    // Width of the central peak from the curvature of ln|Φ| at the saddle.
    let step = 1e-3 * (1.0 + c.abs());
    let curv = (h(c + step) - 2.0 * h0 + h(c - step)) / (step * step);
    let mut width = if curv.is_finite() && curv > 0.0 {
        (2.0 / curv.sqrt()).clamp(1e-3, 4.0)
    } else {
        1.0
    };

    let integrand = |tau: f64| {
        let v = slice.ln_phi(ln_x, Complex64::new(c, tau));
        if v.re < -745.0 {
            0.0
        } else {
            v.exp().re
        }
    };
    // Per-panel accuracy target, kept above the kernel's rounding floor.
    let panel_tol = 1e-13 * h0.exp() * width;
    let mut total = 0.0;
    let mut abs_total = 0.0;
    let mut error = 0.0;
    let mut tau = 0.0;
    loop {
        let end = tau + width;
        let piece = adaptive_gk(&integrand, tau, end, panel_tol, 1e-13, 200);
        total += piece.value;
        abs_total += piece.abs_integral;
        error += piece.error;
        tau = end;
        let envelope = slice.ln_phi(ln_x, Complex64::new(c, tau)).re.exp();
        let negligible =
            piece.abs_integral <= 1e-17 * abs_total && envelope * width <= 1e-17 * abs_total;
        if negligible || envelope < 1e-300 {
            error += envelope * width;
            break;
        }
        if tau > MAX_TAU {
            return Err(SkdError::Convergence {
                routine: "meijer_g contour integral",
                estimate: total / PI,
                error: (error + envelope * width) / PI,
            });
        }
        width = (width * 1.5).min(8.0);
    }
    let err = (error + 50.0 * f64::EPSILON * abs_total) / PI;
    Ok(EvalResult::new(total / PI, err, Method::MellinBarnes))
}
