//! The skew K-distribution `φ(x) = 2 f(x) F(λx)`.
//!
//! For `γ = 0` the construction has unit mass for every `λ`. For `γ ≠ 0` the
//! factor `F(λx)` is not centred on the density and the mass differs from
//! one; [`mass`] reports it and no renormalisation is applied.

use crate::error::{domain, Result, SkdError};
use crate::quadrature::{adaptive_gk, exp_sinh, tanh_sinh, Integral};
use crate::skd::SkdParams;

/// Largest moment order accepted by [`skew_moment`].
pub const MAX_SKEW_MOMENT_ORDER: u32 = 16;

const SKEW_TOL: f64 = 1e-13;

/// A base distribution together with the skewness regulator `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewParams {
    base: SkdParams,
    lambda: f64,
}

impl SkewParams {
    pub fn new(base: SkdParams, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(SkdError::InvalidParameter(format!(
                "lambda must be finite, got {lambda}"
            )));
        }
        Ok(Self { base, lambda })
    }

    pub fn base(&self) -> &SkdParams {
        &self.base
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Density away from the centre, where it is finite.
    fn density(&self, x: f64) -> f64 {
        match self.base.pdf(x) {
            Ok(f) if f > 0.0 => 2.0 * f * self.base.cdf(self.lambda * x),
            _ => 0.0,
        }
    }
}

/// `2 f(x) F(λx)`.
pub fn skew_pdf(sp: &SkewParams, x: f64) -> Result<f64> {
    let f = sp.base.pdf(x)?;
    if f == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * f * sp.base.cdf_eval(sp.lambda * x)?.value)
}

fn checked(r: Integral, routine: &'static str) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(SkdError::Convergence {
            routine,
            estimate: r.value,
            error: r.error,
        })
    }
}

/// Points where the integrand is singular or kinked: the centre of the base
/// density, and the point where `λx` crosses it.
fn break_points(sp: &SkewParams) -> Vec<f64> {
    let g = sp.base.gamma_loc();
    let mut pts = vec![g];
    if sp.lambda != 0.0 {
        let c = g / sp.lambda;
        if c != g && c.is_finite() {
            pts.push(c);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts
}

/// `∫_lo^hi w(t) φ(t) dt`, split at the break points. Either limit may be
/// infinite; `scale` is the length scale of the tails.
fn integrate(sp: &SkewParams, w: impl Fn(f64) -> f64, lo: f64, hi: f64, scale: f64) -> Integral {
    let g = |t: f64| {
        let d = sp.density(t);
        if d == 0.0 {
            0.0
        } else {
            w(t) * d
        }
    };
    let mut total = Integral {
        value: 0.0,
        error: 0.0,
        abs_integral: 0.0,
        converged: true,
    };
    if !(lo < hi) {
        return total;
    }
    let breaks = break_points(sp);
    let mut pts = vec![lo];
    pts.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    pts.push(hi);
    for piece in pts.windows(2) {
        let (a, b) = (piece[0], piece[1]);
        let r = if a == f64::NEG_INFINITY {
            exp_sinh(|t| g(2.0 * b - t), b, scale, SKEW_TOL)
        } else if b == f64::INFINITY {
            exp_sinh(g, a, scale, SKEW_TOL)
        } else if breaks.contains(&a) || breaks.contains(&b) {
            tanh_sinh(g, a, b, SKEW_TOL)
        } else {
            adaptive_gk(g, a, b, 1e-16, SKEW_TOL, 64)
        };
        total.value += r.value;
        total.error += r.error;
        total.abs_integral += r.abs_integral;
        total.converged &= r.converged;
    }
    total
}

fn mass_between(sp: &SkewParams, lo: f64, hi: f64, routine: &'static str) -> Result<f64> {
    checked(integrate(sp, |_| 1.0, lo, hi, sp.base.std_dev()), routine)
}

/// Total mass of the skewed density: exactly one when `γ = 0`, otherwise
/// obtained by quadrature.
pub fn mass(sp: &SkewParams) -> Result<f64> {
    if sp.base.gamma_loc() == 0.0 {
        return Ok(1.0);
    }
    mass_between(sp, f64::NEG_INFINITY, f64::INFINITY, "skew mass")
}

/// Distribution function `∫_{-∞}^{x} φ`.
pub fn skew_cdf(sp: &SkewParams, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(domain("skew_cdf requires a number"));
    }
    if x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let g = sp.base.gamma_loc();
    let v = if x <= g {
        mass_between(sp, f64::NEG_INFINITY, x, "skew lower tail")?
    } else if x.is_infinite() {
        mass(sp)?
    } else {
        mass(sp)? - mass_between(sp, x, f64::INFINITY, "skew upper tail")?
    };
    Ok(v.max(0.0))
}

/// [`skew_cdf`] at many points. The points are visited in increasing order
/// and the mass between neighbours is accumulated.
pub fn skew_cdf_many(sp: &SkewParams, xs: &[f64]) -> Result<Vec<f64>> {
    if xs.iter().any(|x| x.is_nan()) {
        return Err(domain("skew_cdf_many requires numbers"));
    }
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let g = sp.base.gamma_loc();
    let total = mass(sp)?;
    let mut out = vec![0.0; xs.len()];

    // Points left of the centre accumulate upward from -∞, points right of it
    // accumulate downward from +∞, so neither side inherits the other's error.
    let split = order.partition_point(|&i| xs[i] <= g);
    let (left, right) = order.split_at(split);
    let mut acc = 0.0;
    let mut prev = f64::NEG_INFINITY;
    for &i in left {
        let x = xs[i];
        acc += mass_between(sp, prev, x, "skew lower tail")?;
        prev = x;
        out[i] = acc.min(total);
    }
    let mut upper = 0.0;
    let mut prev = f64::INFINITY;
    for &i in right.iter().rev() {
        let x = xs[i];
        upper += mass_between(sp, x, prev, "skew upper tail")?;
        prev = x;
        out[i] = (total - upper).max(0.0);
    }
    Ok(out)
}

/// Raw moment `∫ xⁿ φ` by quadrature, for `n ≤ 16`.
pub fn skew_moment(sp: &SkewParams, n: u32) -> Result<f64> {
    if n > MAX_SKEW_MOMENT_ORDER {
        return Err(domain(format!(
            "skew moment order must be at most {MAX_SKEW_MOMENT_ORDER}, got {n}"
        )));
    }
    let scale = sp.base.std_dev() * (1.0 + f64::from(n));
    let p = n as i32;
    let r = integrate(sp, |t| t.powi(p), f64::NEG_INFINITY, f64::INFINITY, scale);
    if !(r.error <= 1e-9 * r.abs_integral.max(f64::MIN_POSITIVE)) {
        return Err(SkdError::Convergence {
            routine: "skew moment",
            estimate: r.value,
            error: r.error,
        });
    }
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_routes_agree() {
        let base = SkdParams::new(2.0, 2.0, 1.0, 0.0).unwrap();
        let sp = SkewParams::new(base, 1.5).unwrap();
        let xs = [-7.0, -2.0, -0.3, 0.0, 0.4, 1.0, 3.0, 12.0];
        let many = skew_cdf_many(&sp, &xs).unwrap();
        for (x, m) in xs.iter().zip(&many) {
            let one = skew_cdf(&sp, *x).unwrap();
            assert!((one - m).abs() < 1e-11, "x={x}: {one} vs {m}");
        }
    }

    #[test]
    fn zero_lambda_reduces_to_base() {
        let base = SkdParams::new(2.5, 1.0, 0.5, 0.0).unwrap();
        let sp = SkewParams::new(base, 0.0).unwrap();
        for &x in &[-3.0, -0.5, 0.7, 4.0] {
            assert_eq!(skew_pdf(&sp, x).unwrap(), base.pdf(x).unwrap());
            assert!((skew_cdf(&sp, x).unwrap() - base.cdf(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn moment_order_guard() {
        let sp = SkewParams::new(SkdParams::standard(2.0, 2.0).unwrap(), 1.0).unwrap();
        assert!(skew_moment(&sp, 17).is_err());
        assert!((skew_moment(&sp, 0).unwrap() - 1.0).abs() < 1e-10);
    }
}
