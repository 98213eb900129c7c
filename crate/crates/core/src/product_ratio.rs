//! Laws of the product `XY` and the ratio `X/Y` of two independent centred
//! variables sharing the parameters `(α, ζ, δ)`.
//!
//! Both follow from the Mellin transform of `|X|`,
//! `E|X|^{w} = Γ(α+w) Γ(ζ+w) / (Γ(α)Γ(ζ) δ^w)`. With `s = (α+ζ)/2` and
//! `ν = α-ζ`:
//!
//! ```text
//! product:  f(z) = δ^{2s} |z|^{s-1} / (2 (Γ(α)Γ(ζ))²) · G^{4,0}_{0,4}(δ²|z| | ν/2, ν/2, -ν/2, -ν/2)
//! ratio:    f(z) = |z|^{s-1} / (2 (Γ(α)Γ(ζ))²) · G^{2,2}_{2,2}(|z| | 1-α-s, 1-ζ-s; ν/2, -ν/2)
//! ```
//!
//! The ratio law does not depend on `δ`. For `|z| ≤ 1` its density reduces to
//! `C |z|^{α-1} ₂F₁(2α, α+ζ; 2α+2ζ; 1-|z|)`.

use crate::error::{domain, Result, SkdError};
use crate::eval::{EvalResult, Method};
use crate::skd::SkdParams;
use crate::special::gamma::ln_gamma_pos;
use crate::special::hypergeometric::hyp_2f1;
use crate::special::meijer::{meijer_g, MeijerSlice};

/// Shared parameters of two independent centred factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairLaw {
    params: SkdParams,
}

impl PairLaw {
    pub fn new(alpha: f64, zeta: f64, delta: f64) -> Result<Self> {
        Ok(Self {
            params: SkdParams::new(alpha, zeta, delta, 0.0)?,
        })
    }

    /// Fails with [`SkdError::Unsupported`] unless the location is zero.
    pub fn from_params(p: &SkdParams) -> Result<Self> {
        if p.gamma_loc() != 0.0 {
            return Err(SkdError::Unsupported(format!(
                "product and ratio laws need gamma_loc = 0, got {}",
                p.gamma_loc()
            )));
        }
        Ok(Self { params: *p })
    }

    /// Law of each factor.
    pub fn marginal(&self) -> SkdParams {
        self.params
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha()
    }

    pub fn zeta(&self) -> f64 {
        self.params.zeta()
    }

    pub fn delta(&self) -> f64 {
        self.params.delta()
    }

    fn s(&self) -> f64 {
        0.5 * (self.alpha() + self.zeta())
    }

    fn nu(&self) -> f64 {
        self.alpha() - self.zeta()
    }

    /// `ln (Γ(α)Γ(ζ))²`.
    fn ln_gamma_sq(&self) -> f64 {
        2.0 * (ln_gamma_pos(self.alpha()) + ln_gamma_pos(self.zeta()))
    }
}

fn check_nonzero(z: f64) -> Result<()> {
    if z.is_nan() {
        return Err(domain("argument must be a number"));
    }
    if z == 0.0 {
        return Err(SkdError::Singularity { at: 0.0 });
    }
    Ok(())
}

/// Scales a Meijer evaluation by `exp(ln_pref)`.
fn scaled(g: EvalResult, ln_pref: f64) -> EvalResult {
    let f = ln_pref.exp();
    EvalResult::new(g.value * f, g.abs_error_estimate * f, g.method)
}

/// `1/2 + sgn(z) · mass`, clamped to `[0, 1]`.
fn centred(z: f64, mass: EvalResult) -> EvalResult {
    let m = mass.value.clamp(0.0, 0.5);
    let v = if z > 0.0 { 0.5 + m } else { 0.5 - m };
    EvalResult::new(v, mass.abs_error_estimate, mass.method)
}

/// Density of `XY` with its error estimate. Singular at `z = 0`.
pub fn product_pdf_eval(law: &PairLaw, z: f64) -> Result<EvalResult> {
    check_nonzero(z)?;
    let y = z.abs();
    if y.is_infinite() {
        return Ok(EvalResult::new(0.0, 0.0, Method::ClosedForm));
    }
    let (s, h) = (law.s(), 0.5 * law.nu());
    let d2 = law.delta() * law.delta();
    let slice = MeijerSlice::new(vec![], vec![], vec![h, h, -h, -h], vec![])?;
    let g = meijer_g(&slice, d2 * y)?;
    let ln_pref = s * d2.ln() + (s - 1.0) * y.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq();
    Ok(scaled(g, ln_pref))
}

pub fn product_pdf(law: &PairLaw, z: f64) -> Result<f64> {
    product_pdf_eval(law, z).map(|r| r.value)
}

/// Distribution function of `XY` with its error estimate.
pub fn product_cdf_eval(law: &PairLaw, z: f64) -> Result<EvalResult> {
    if z.is_nan() {
        return Err(domain("argument must be a number"));
    }
    if z == 0.0 {
        return Ok(EvalResult::new(0.5, 0.0, Method::ClosedForm));
    }
    if z.is_infinite() {
        let v = if z > 0.0 { 1.0 } else { 0.0 };
        return Ok(EvalResult::new(v, 0.0, Method::ClosedForm));
    }
    let y = z.abs();
    let (s, h) = (law.s(), 0.5 * law.nu());
    let d2 = law.delta() * law.delta();
    let x = d2 * y;
    let slice = MeijerSlice::new(vec![1.0 - s], vec![], vec![h, h, -h, -h], vec![-s])?;
    let g = meijer_g(&slice, x)?;
    let ln_pref = s * x.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq();
    Ok(centred(z, scaled(g, ln_pref)))
}

pub fn product_cdf(law: &PairLaw, z: f64) -> Result<f64> {
    product_cdf_eval(law, z).map(|r| r.value)
}

/// `ln C` for the hypergeometric form of the ratio density,
/// `C = Γ(2α)Γ(2ζ)Γ(α+ζ)² / (2 Γ(α)²Γ(ζ)² Γ(2α+2ζ))`.
fn ratio_ln_const(law: &PairLaw) -> f64 {
    let (a, b) = (law.alpha(), law.zeta());
    ln_gamma_pos(2.0 * a) + ln_gamma_pos(2.0 * b) + 2.0 * ln_gamma_pos(a + b)
        - std::f64::consts::LN_2
        - law.ln_gamma_sq()
        - ln_gamma_pos(2.0 * a + 2.0 * b)
}

/// Ratio density for `0 < y ≤ 1` from the hypergeometric form.
fn ratio_pdf_unit(law: &PairLaw, y: f64) -> Result<EvalResult> {
    let (a, b) = (law.alpha(), law.zeta());
    let f = hyp_2f1(2.0 * a, a + b, 2.0 * (a + b), 1.0 - y)?;
    let ln_pref = ratio_ln_const(law) + (a - 1.0) * y.ln();
    Ok(scaled(f, ln_pref))
}

/// Density of `X/Y` through the Meijer-G representation.
pub fn ratio_pdf_meijer(law: &PairLaw, z: f64) -> Result<EvalResult> {
    check_nonzero(z)?;
    let y = z.abs();
    if y.is_infinite() {
        return Ok(EvalResult::new(0.0, 0.0, Method::ClosedForm));
    }
    let (a, b, s, h) = (law.alpha(), law.zeta(), law.s(), 0.5 * law.nu());
    let slice = MeijerSlice::new(vec![1.0 - a - s, 1.0 - b - s], vec![], vec![h, -h], vec![])?;
    let g = meijer_g(&slice, y)?;
    let ln_pref = (s - 1.0) * y.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq();
    Ok(scaled(g, ln_pref))
}

/// Density of `X/Y` with its error estimate. The hypergeometric form is used
/// on `|z| ≤ 1` and mapped to `|z| > 1` by `f(z) = f(1/z)/z²`; the Meijer-G
/// form takes over if the series fails.
pub fn ratio_pdf_eval(law: &PairLaw, z: f64) -> Result<EvalResult> {
    check_nonzero(z)?;
    let y = z.abs();
    if y.is_infinite() {
        return Ok(EvalResult::new(0.0, 0.0, Method::ClosedForm));
    }
    let (inner, jacobian) = if y <= 1.0 {
        (y, 1.0)
    } else {
        (1.0 / y, 1.0 / (y * y))
    };
    let r = match ratio_pdf_unit(law, inner) {
        Ok(r) if r.value.is_finite() => r,
        _ => ratio_pdf_meijer(law, inner)?,
    };
    Ok(EvalResult::new(
        r.value * jacobian,
        r.abs_error_estimate * jacobian,
        r.method,
    ))
}

pub fn ratio_pdf(law: &PairLaw, z: f64) -> Result<f64> {
    ratio_pdf_eval(law, z).map(|r| r.value)
}

/// Distribution function of `X/Y` with its error estimate.
pub fn ratio_cdf_eval(law: &PairLaw, z: f64) -> Result<EvalResult> {
    if z.is_nan() {
        return Err(domain("argument must be a number"));
    }
    if z == 0.0 {
        return Ok(EvalResult::new(0.5, 0.0, Method::ClosedForm));
    }
    if z.is_infinite() {
        let v = if z > 0.0 { 1.0 } else { 0.0 };
        return Ok(EvalResult::new(v, 0.0, Method::ClosedForm));
    }
    let y = z.abs();
    if y > 1.0 {
        // |X/Y| > y  ⇔  |Y/X| < 1/y, and Y/X has the same law.
        let inner = ratio_cdf_eval(law, 1.0 / y)?;
        let mass = EvalResult::new(1.0 - inner.value, inner.abs_error_estimate, inner.method);
        return Ok(centred(z, mass));
    }
    let (a, b, s, h) = (law.alpha(), law.zeta(), law.s(), 0.5 * law.nu());
    let slice = MeijerSlice::new(
        vec![1.0 - s, 1.0 - a - s, 1.0 - b - s],
        vec![],
        vec![h, -h],
        vec![-s],
    )?;
    let g = meijer_g(&slice, y)?;
    let ln_pref = s * y.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq();
    Ok(centred(z, scaled(g, ln_pref)))
}

pub fn ratio_cdf(law: &PairLaw, z: f64) -> Result<f64> {
    ratio_cdf_eval(law, z).map(|r| r.value)
}

/// The closed forms exactly as originally printed. They fail the
/// normalisation checks and are kept only for comparison.
pub mod verbatim {
    use super::*;

    fn abs_nonzero(z: f64) -> Result<f64> {
        check_nonzero(z)?;
        Ok(z.abs())
    }

    /// `δ^{α+ζ} |z|^{s-1} / (2 (Γ(α)Γ(ζ))²) · G^{4,0}_{0,4}(δ|z| | ν/2, -ν/2, ν/2, -ν/2)`.
    pub fn product_pdf(law: &PairLaw, z: f64) -> Result<f64> {
        let y = abs_nonzero(z)?;
        let (s, h, d) = (law.s(), 0.5 * law.nu(), law.delta());
        let slice = MeijerSlice::new(vec![], vec![], vec![h, -h, h, -h], vec![])?;
        let g = meijer_g(&slice, d * y)?.value;
        let ln_pref =
            2.0 * s * d.ln() + (s - 1.0) * y.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq();
        Ok(g * ln_pref.exp())
    }

    /// `δ^{α+ζ} / (2 (Γ(α)Γ(ζ))²) · [δ^s (Γ(α)Γ(ζ))² + sgn(z) |z|^s G^{4,1}_{1,5}(δ|z| | 1-s; ν/2, -ν/2, ν/2, -ν/2, -s)]`.
    pub fn product_cdf(law: &PairLaw, z: f64) -> Result<f64> {
        if z.is_nan() {
            return Err(domain("argument must be a number"));
        }
        let (s, h, d) = (law.s(), 0.5 * law.nu(), law.delta());
        let outer = (2.0 * s * d.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq()).exp();
        let constant = (s * d.ln() + law.ln_gamma_sq()).exp();
        if z == 0.0 {
            return Ok(outer * constant);
        }
        let y = z.abs();
        let slice = MeijerSlice::new(vec![1.0 - s], vec![], vec![h, -h, h, -h], vec![-s])?;
        let g = meijer_g(&slice, d * y)?.value;
        Ok(outer * (constant + z.signum() * y.powf(s) * g))
    }

    /// `δ^{α+ζ} |z|^{-1-α} · 2αζ(α+ζ)² B(2α,2ζ) / ((2α+2ζ)_2 B(α,ζ)²) · ₂F₁(1+α+ζ, 1+2α; 2+2α+2ζ; 1-1/|z|)`.
    pub fn ratio_pdf(law: &PairLaw, z: f64) -> Result<f64> {
        let y = abs_nonzero(z)?;
        let (a, b, d) = (law.alpha(), law.zeta(), law.delta());
        let ln_beta = |p: f64, q: f64| ln_gamma_pos(p) + ln_gamma_pos(q) - ln_gamma_pos(p + q);
        let c = 2.0 * (a + b);
        let ln_coef = std::f64::consts::LN_2
            + a.ln()
            + b.ln()
            + 2.0 * (a + b).ln()
            + ln_beta(2.0 * a, 2.0 * b)
            - c.ln()
            - (c + 1.0).ln()
            - 2.0 * ln_beta(a, b);
        let f = hyp_2f1(1.0 + a + b, 1.0 + 2.0 * a, 2.0 + c, 1.0 - 1.0 / y)?.value;
        let ln_pref = (a + b) * d.ln() - (1.0 + a) * y.ln() + ln_coef;
        Ok(f * ln_pref.exp())
    }

    /// `δ^{α+ζ} |z|^{s-1} / (2 (Γ(α)Γ(ζ))²) · G^{2,2}_{2,2}(δ|z| | 1-(3α+ζ)/2, 1-(α+3ζ)/2; 1-ν/2, 1+ν/2)`.
    pub fn ratio_pdf_meijer(law: &PairLaw, z: f64) -> Result<f64> {
        let y = abs_nonzero(z)?;
        let (a, b, s, h, d) = (
            law.alpha(),
            law.zeta(),
            law.s(),
            0.5 * law.nu(),
            law.delta(),
        );
        let slice = MeijerSlice::new(
            vec![1.0 - a - s, 1.0 - b - s],
            vec![],
            vec![1.0 - h, 1.0 + h],
            vec![],
        )?;
        let g = meijer_g(&slice, d * y)?.value;
        let ln_pref =
            2.0 * s * d.ln() + (s - 1.0) * y.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq();
        Ok(g * ln_pref.exp())
    }

    /// `δ^{α+ζ} / (2 (Γ(α)Γ(ζ))²) · [δ^s Γ(1+α)Γ(1+ζ)Γ(α)Γ(ζ) + sgn(z) |z|^s G^{2,3}_{3,3}(δ|z| | 1-(3α+ζ)/2, 1-(α+3ζ)/2, 1-s; 1-ν/2, 1+ν/2, -s)]`.
    pub fn ratio_cdf(law: &PairLaw, z: f64) -> Result<f64> {
        if z.is_nan() {
            return Err(domain("argument must be a number"));
        }
        let (a, b, s, h, d) = (
            law.alpha(),
            law.zeta(),
            law.s(),
            0.5 * law.nu(),
            law.delta(),
        );
        let outer = (2.0 * s * d.ln() - std::f64::consts::LN_2 - law.ln_gamma_sq()).exp();
        let constant =
            (s * d.ln() + ln_gamma_pos(1.0 + a) + ln_gamma_pos(1.0 + b) + 0.5 * law.ln_gamma_sq())
                .exp();
        if z == 0.0 {
            return Ok(outer * constant);
        }
        let y = z.abs();
        let slice = MeijerSlice::new(
            vec![1.0 - a - s, 1.0 - b - s, 1.0 - s],
            vec![],
            vec![1.0 - h, 1.0 + h],
            vec![-s],
        )?;
        let g = meijer_g(&slice, d * y)?.value;
        Ok(outer * (constant + z.signum() * y.powf(s) * g))
    }
}
