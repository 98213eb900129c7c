//! Modified Bessel function of the second kind for real order.
//!
//! The order is reduced to `μ ∈ [-1/2, 1/2)`; `K_μ` and `K_{μ+1}` are obtained
//! from Temme's series when `x < 2` and from Steed's continued fraction
//! otherwise, then the forward recurrence in order (stable for `K`) climbs to
//! the requested order. Everything is carried in log-scaled form so that very
//! large orders at small arguments and very large arguments do not overflow or
//! underflow before the caller decides what to do with the result.

use std::f64::consts::PI;

use super::gamma::rgamma1p;
use crate::error::{domain, Result, SkdError};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

/// `(ln K_ν(x), ln K_{ν+1}(x))` for `ν >= 0`, `x > 0`.
fn ln_bessel_k_pair(nu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let mu2 = mu * mu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // (K_μ, K_{μ+1}) = exp(log_scale) * (k_mu, k_mu1)
    let (mut k_mu, mut k_mu1, mut log_scale);
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let gampl = rgamma1p(mu); // 1/Γ(1+μ)
        let gammi = rgamma1p(-mu); // 1/Γ(1-μ)
        let (gam1, gam2) = temme_gammas(mu, gampl, gammi);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..=MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SkdError::Convergence {
                routine: "bessel_k Temme series",
                estimate: sum,
                error: f64::NAN,
            });
        }
        k_mu = sum;
        k_mu1 = sum1 * xi2;
        log_scale = 0.0;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 2..=MAX_ITER {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SkdError::Convergence {
                routine: "bessel_k continued fraction",
                estimate: s,
                error: f64::NAN,
            });
        }
        h *= a1;
        // K_μ = sqrt(π/2x) e^{-x} / s
        k_mu = 1.0 / s;
        k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
        log_scale = 0.5 * (PI / (2.0 * x)).ln() - x;
    }

    let steps = nl as u64;
    for i in 1..=steps {
        let next = (mu + i as f64) * xi2 * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
        if k_mu1 > 1e250 {
            k_mu *= 1e-250;
            k_mu1 *= 1e-250;
            log_scale += 250.0 * std::f64::consts::LN_10;
        }
    }
    Ok((k_mu.ln() + log_scale, k_mu1.ln() + log_scale))
}

/// `Γ₁(μ) = (1/Γ(1-μ) - 1/Γ(1+μ)) / 2μ` and `Γ₂(μ) = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2`.
fn temme_gammas(mu: f64, gampl: f64, gammi: f64) -> (f64, f64) {
    use super::gamma::RGAMMA_COEFFS;
    // Γ₁ is an even series in μ built from the odd-power coefficients of
    // 1/Γ(1+μ); summing it directly avoids the 0/0 at μ = 0.
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut pow = 1.0;
    for k in (1..RGAMMA_COEFFS.len()).step_by(2) {
        gam1 -= RGAMMA_COEFFS[k] * pow;
        pow *= mu2;
    }
    (gam1, 0.5 * (gammi + gampl))
}

fn check_args(x: f64) -> Result<()> {
    if !(x > 0.0) || x.is_nan() {
        return Err(domain(format!("bessel_k requires x > 0, got {x}")));
    }
    Ok(())
}

/// `ln K_ν(x)` for real order `ν` and `x > 0`.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_args(x)?;
    if !nu.is_finite() {
        return Err(domain(format!(
            "bessel_k requires a finite order, got {nu}"
        )));
    }
    if x.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(ln_bessel_k_pair(nu.abs(), x)?.0)
}

/// Modified Bessel function of the second kind `K_ν(x)`.
///
/// Values that underflow are returned as `0`; values too large for an `f64`
/// are reported as [`SkdError::Overflow`].
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let l = ln_bessel_k(nu, x)?;
    let v = l.exp();
    if v.is_infinite() {
        return Err(SkdError::Overflow("bessel_k"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_integer_closed_form() {
        let expect = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!(rel(bessel_k(0.5, 1.0).unwrap(), expect) < 1e-14);
        for &x in &[1e-6, 0.3, 1.9, 2.1, 17.0, 300.0] {
            let k12 = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!(rel(bessel_k(0.5, x).unwrap(), k12) < 1e-13, "x={x}");
            let k32 = k12 * (1.0 + 1.0 / x);
            assert!(rel(bessel_k(1.5, x).unwrap(), k32) < 1e-13, "x={x}");
            let k52 = k12 * (1.0 + 3.0 / x + 3.0 / (x * x));
            assert!(rel(bessel_k(2.5, x).unwrap(), k52) < 1e-13, "x={x}");
        }
    }

    #[test]
    fn reference_values() {
        // 25-digit references.
        assert!(rel(bessel_k(0.0, 2.0).unwrap(), 0.113_893_872_749_533_435_6) < 1e-13);
        assert!(rel(bessel_k(0.7, 3.1).unwrap(), 0.033_170_914_890_682_696_09) < 1e-13);
    }

    #[test]
    fn even_in_order() {
        for &(nu, x) in &[(0.7, 3.1), (2.3, 0.01), (5.4, 40.0), (0.2, 1.99)] {
            assert_eq!(bessel_k(nu, x).unwrap(), bessel_k(-nu, x).unwrap());
        }
    }

    #[test]
    fn branch_continuity_at_two() {
        for &nu in &[0.0, 0.3, 1.0, 3.7] {
            let lo = bessel_k(nu, 2.0 - 1e-12).unwrap();
            let hi = bessel_k(nu, 2.0).unwrap();
            assert!(rel(lo, hi) < 1e-11, "nu={nu}");
        }
    }

    #[test]
    fn extremes() {
        assert!(bessel_k(0.0, 800.0).unwrap() == 0.0);
        assert!(ln_bessel_k(0.0, 800.0).unwrap().is_finite());
        assert!(matches!(bessel_k(200.0, 1e-8), Err(SkdError::Overflow(_))));
        assert!(ln_bessel_k(200.0, 1e-8).unwrap().is_finite());
        assert!(matches!(bessel_k(1.0, 0.0), Err(SkdError::Domain(_))));
        assert!(matches!(bessel_k(1.0, -2.0), Err(SkdError::Domain(_))));
    }

    #[test]
    fn wronskian_like_recurrence() {
        // K_{ν+1}(x) - K_{ν-1}(x) = (2ν/x) K_ν(x)
        for &(nu, x) in &[(1.3, 0.7), (2.6, 5.0), (0.9, 25.0)] {
            let lhs = bessel_k(nu + 1.0, x).unwrap() - bessel_k(nu - 1.0, x).unwrap();
            let rhs = 2.0 * nu / x * bessel_k(nu, x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12);
        }
    }
}
