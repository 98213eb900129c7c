//! Order statistics of an iid sample.

use crate::error::{Result, SkdError};
use crate::skd::SkdParams;
use crate::special::gamma::ln_gamma_pos;

/// Largest sample size accepted by [`OrderSpec`].
pub const MAX_SAMPLE_SIZE: u32 = 10_000;

/// The `r`-th smallest of `n` observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderSpec {
    n: u32,
    r: u32,
}

impl OrderSpec {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if n == 0 || n > MAX_SAMPLE_SIZE {
            return Err(SkdError::InvalidParameter(format!(
                "sample size must be in 1..={MAX_SAMPLE_SIZE}, got {n}"
            )));
        }
        if r == 0 || r > n {
            return Err(SkdError::InvalidParameter(format!(
                "rank must be in 1..={n}, got {r}"
            )));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

fn ln_choose(n: u32, k: u32) -> f64 {
    let (n, k) = (f64::from(n), f64::from(k));
    ln_gamma_pos(n + 1.0) - ln_gamma_pos(k + 1.0) - ln_gamma_pos(n - k + 1.0)
}

/// `Λ(x) = F(x) - 1/2`, odd about the centre.
pub fn lambda_fn(p: &SkdParams, x: f64) -> Result<f64> {
    p.centered_cdf(x)
}

/// `ln(F^j (1-F)^{n-j})` with `0 · ln 0` read as 0.
fn ln_power_pair(ln_f: f64, ln_g: f64, j: u32, n: u32) -> f64 {
    let a = if j == 0 { 0.0 } else { f64::from(j) * ln_f };
    let b = if n == j { 0.0 } else { f64::from(n - j) * ln_g };
    a + b
}

/// Distribution function of the `r`-th order statistic,
/// `Σ_{j=r}^{n} C(n, j) F^j (1 - F)^{n-j}`.
pub fn order_stat_cdf(p: &SkdParams, spec: OrderSpec, x: f64) -> Result<f64> {
    let (f, g) = p.cdf_pair(x)?;
    let (ln_f, ln_g) = (f.ln(), g.ln());
    let (n, r) = (spec.n, spec.r);
    // Neumaier-compensated sum of the binomial terms.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in r..=n {
        let t = (ln_choose(n, j) + ln_power_pair(ln_f, ln_g, j, n)).exp();
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    Ok((sum + comp).clamp(0.0, 1.0))
}

/// Density of the `r`-th order statistic,
/// `n! / ((r-1)! (n-r)!) f F^{r-1} (1 - F)^{n-r}`.
pub fn order_stat_pdf(p: &SkdParams, spec: OrderSpec, x: f64) -> Result<f64> {
    let density = p.pdf(x)?;
    if density == 0.0 {
        return Ok(0.0);
    }
    let (f, g) = p.cdf_pair(x)?;
    let (n, r) = (spec.n, spec.r);
    let ln_coef = ln_gamma_pos(f64::from(n) + 1.0)
        - ln_gamma_pos(f64::from(r))
        - ln_gamma_pos(f64::from(n - r) + 1.0);
    let ln_rest = ln_power_pair(f.ln(), g.ln(), r - 1, n - 1);
    Ok((ln_coef + ln_rest + density.ln()).exp())
}
