//! Seeded random variates.
//!
//! A variate is drawn from the gamma mixture that defines the family:
//! `β ~ Gamma(ζ, rate δ)`, then a magnitude `M ~ Gamma(α, scale β)`, then an
//! equiprobable sign, giving `γ ± M`. Skewed variates are obtained by
//! accepting a symmetric proposal `X` with probability `F(λX)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::skd::SkdParams;

/// Standard gamma variate with unit scale (Marsaglia–Tsang). Shapes below one
/// use `G(a) = G(a + 1) U^{1/a}`.
pub(crate) fn standard_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    if shape < 1.0 {
        let g = standard_gamma(rng, shape + 1.0);
        let u: f64 = rng.random();
        // U in (0, 1]: avoid ln 0 when the generator yields exactly zero.
        let u = 1.0 - u;
        return g * (u.ln() / shape).exp();
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u > 0.0 && u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// A deterministic stream of variates for fixed parameters and seed.
#[derive(Debug, Clone)]
pub struct SampleStream {
    params: SkdParams,
    seed: u64,
    counter: u64,
    rng: ChaCha20Rng,
}

impl SampleStream {
    pub fn new(params: SkdParams, seed: u64) -> Self {
        Self {
            params,
            seed,
            counter: 0,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn params(&self) -> &SkdParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of variates emitted so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    fn draw(&mut self) -> f64 {
        let p = self.params;
        let beta = standard_gamma(&mut self.rng, p.zeta()) / p.delta();
        let magnitude = standard_gamma(&mut self.rng, p.alpha()) * beta;
        let negative: bool = self.rng.random();
        if negative {
            p.gamma_loc() - magnitude
        } else {
            p.gamma_loc() + magnitude
        }
    }

    /// Next variate of the symmetric distribution.
    pub fn sample(&mut self) -> f64 {
        let x = self.draw();
        self.counter += 1;
        x
    }

    /// Next variate of the skewed distribution with regulator `lambda`.
    pub fn sample_skew(&mut self, lambda: f64) -> Result<f64> {
        if !lambda.is_finite() {
            return Err(crate::error::domain(format!(
                "lambda must be finite, got {lambda}"
            )));
        }
        loop {
            let x = self.draw();
            let accept = self.params.cdf_eval(lambda * x)?.value;
            let u: f64 = self.rng.random();
            if u < accept {
                self.counter += 1;
                return Ok(x);
            }
        }
    }

    /// Draws `n` symmetric variates.
    pub fn take_samples(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample()).collect()
    }

    /// Draws `n` skewed variates.
    pub fn take_skew_samples(&mut self, n: usize, lambda: f64) -> Result<Vec<f64>> {
        (0..n).map(|_| self.sample_skew(lambda)).collect()
    }
}
