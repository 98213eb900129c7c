//! The symmetric K-distribution.
//!
//! ```text
//! f(x) = δ^s / (Γ(α) Γ(ζ)) |x-γ|^{s-1} K_ν(2 √(δ |x-γ|)),   s = (α+ζ)/2, ν = α-ζ
//! ```
//!
//! Everything to one side of the centre depends on `u = δ |x - γ|` only. The
//! mass between the centre and distance `y` is
//!
//! ```text
//! H(u) = (1/(Γ(α)Γ(ζ))) ∫₀^u t^{s-1} K_ν(2√t) dt,   F(x) = 1/2 + sgn(x-γ) H(u).
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkdError};
use crate::eval::{EvalResult, Method};
use crate::quadrature::{exp_sinh, laguerre_20, laguerre_32, tanh_sinh};
use crate::special::bessel::ln_bessel_k;
use crate::special::gamma::{gamma, ln_gamma_pos, pochhammer, pochhammer_real, rgamma};
use crate::special::hypergeometric::hyp_1f2;

/// Largest moment order accepted by the moment routines.
pub const MAX_MOMENT_ORDER: u32 = 64;

/// Below this `u` the head mass is summed from series when the series is
/// accurate enough; otherwise, and above it, the tail mass is integrated.
const SERIES_LIMIT: f64 = 12.0;
/// `ν` closer than this to an integer is treated by quadrature unless it is
/// an integer exactly.
const INTEGER_GAP: f64 = 1e-3;
const CDF_TOL: f64 = 1e-13;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// Parameters `(α, ζ, δ, γ)` of a symmetric K-distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct SkdParams {
    alpha: f64,
    zeta: f64,
    delta: f64,
    gamma_loc: f64,
    ln_gamma_alpha: f64,
    ln_gamma_zeta: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    alpha: f64,
    zeta: f64,
    delta: f64,
    gamma_loc: f64,
}

impl TryFrom<RawParams> for SkdParams {
    type Error = SkdError;
    fn try_from(r: RawParams) -> Result<Self> {
        SkdParams::new(r.alpha, r.zeta, r.delta, r.gamma_loc)
    }
}

impl From<SkdParams> for RawParams {
    fn from(p: SkdParams) -> Self {
        RawParams {
            alpha: p.alpha,
            zeta: p.zeta,
            delta: p.delta,
            gamma_loc: p.gamma_loc,
        }
    }
}

/// Which moment to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentSpec {
    order: u32,
    central: bool,
}

impl MomentSpec {
    pub fn raw(order: u32) -> Result<Self> {
        Self::new(order, false)
    }

    pub fn central(order: u32) -> Result<Self> {
        Self::new(order, true)
    }

    pub fn new(order: u32, central: bool) -> Result<Self> {
        if order > MAX_MOMENT_ORDER {
            return Err(SkdError::InvalidParameter(format!(
                "moment order {order} exceeds {MAX_MOMENT_ORDER}"
            )));
        }
        Ok(Self { order, central })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_central(&self) -> bool {
        self.central
    }
}

/// Mean, variance, skewness and (non-excess) kurtosis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

/// Head and tail masses on one side of the centre.
#[derive(Debug, Clone, Copy)]
struct SideMass {
    /// Mass between the centre and the point, in `[0, 1/2]`.
    head: f64,
    /// Mass beyond the point, `1/2 - head`.
    tail: f64,
    error: f64,
    method: Method,
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * f64::from(n - i) / f64::from(i + 1);
    }
    c.round()
}

impl SkdParams {
    pub fn new(alpha: f64, zeta: f64, delta: f64, gamma_loc: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("zeta", zeta), ("delta", delta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(SkdError::InvalidParameter(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        if !gamma_loc.is_finite() {
            return Err(SkdError::InvalidParameter(format!(
                "gamma_loc must be finite, got {gamma_loc}"
            )));
        }
        Ok(Self {
            alpha,
            zeta,
            delta,
            gamma_loc,
            ln_gamma_alpha: ln_gamma_pos(alpha),
            ln_gamma_zeta: ln_gamma_pos(zeta),
        })
    }

    /// Standard form: `δ = 1`, `γ = 0`.
    pub fn standard(alpha: f64, zeta: f64) -> Result<Self> {
        Self::new(alpha, zeta, 1.0, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma_loc(&self) -> f64 {
        self.gamma_loc
    }

    /// The same distribution with the shapes ordered so that `α ≤ ζ`.
    pub fn canonical(&self) -> Self {
        if self.alpha <= self.zeta {
            *self
        } else {
            Self::new(self.zeta, self.alpha, self.delta, self.gamma_loc)
                .expect("swapping valid shapes stays valid")
        }
    }

    pub fn with_location(&self, gamma_loc: f64) -> Result<Self> {
        Self::new(self.alpha, self.zeta, self.delta, gamma_loc)
    }

    fn s(&self) -> f64 {
        0.5 * (self.alpha + self.zeta)
    }

    fn nu(&self) -> f64 {
        (self.alpha - self.zeta).abs()
    }

    fn ln_gamma_product(&self) -> f64 {
        self.ln_gamma_alpha + self.ln_gamma_zeta
    }

    /// Standard deviation, a natural length scale.
    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn variance(&self) -> f64 {
        self.alpha * (self.alpha + 1.0) * self.zeta * (self.zeta + 1.0) / (self.delta * self.delta)
    }

    /// `ln f` at distance `y > 0` from the centre.
    fn ln_pdf_at_distance(&self, y: f64) -> f64 {
        let s = self.s();
        let u = self.delta * y;
        let ln_k = ln_bessel_k(self.nu(), 2.0 * u.sqrt()).unwrap_or(f64::NEG_INFINITY);
        s * self.delta.ln() - self.ln_gamma_product() + (s - 1.0) * y.ln() + ln_k
    }

    /// Density at the centre, where the Bessel factor is singular.
    fn pdf_at_center(&self) -> Result<f64> {
        let m = self.alpha.min(self.zeta);
        let nu = self.nu();
        if nu > 0.0 {
            // K_ν(z) ~ Γ(ν)/2 (z/2)^{-ν}: f ~ δ^m Γ(ν) / (2Γ(α)Γ(ζ)) y^{m-1}
            if m > 1.0 {
                Ok(0.0)
            } else if m == 1.0 {
                Ok(self.delta * gamma(nu)? * (-self.ln_gamma_product()).exp() / 2.0)
            } else {
                Err(SkdError::Singularity { at: self.gamma_loc })
            }
        } else if self.alpha > 1.0 {
            // K_0(z) ~ -ln(z/2): f ~ y^{α-1} ln(1/y)
            Ok(0.0)
        } else {
            Err(SkdError::Singularity { at: self.gamma_loc })
        }
    }

    /// Probability density. Raises [`SkdError::Singularity`] exactly at the
    /// centre when the density is unbounded there.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(domain("pdf requires a number"));
        }
        let y = (x - self.gamma_loc).abs();
        if y == 0.0 {
            return self.pdf_at_center();
        }
        if y.is_infinite() {
            return Ok(0.0);
        }
        Ok(self.ln_pdf_at_distance(y).exp())
    }

    /// Natural log of the density; `-∞` where the density vanishes.
    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(domain("log_pdf requires a number"));
        }
        let y = (x - self.gamma_loc).abs();
        if y == 0.0 {
            return Ok(self.pdf_at_center()?.ln());
        }
        if y.is_infinite() {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(self.ln_pdf_at_distance(y))
    }

    /// Head mass from the ₁F₂ closed form (non-integer `ν`).
    fn head_hypergeometric(&self, u: f64) -> Result<(f64, f64)> {
        let (a, z) = (self.alpha, self.zeta);
        let nu = a - z;
        let pre = PI / (2.0 * nu_sin(nu)) * (-self.ln_gamma_product()).exp();
        let fz = hyp_1f2(z, z - a + 1.0, z + 1.0, u)?;
        let fa = hyp_1f2(a, a - z + 1.0, a + 1.0, u)?;
        let cz = u.powf(z) * rgamma(z - a + 1.0) / z;
        let ca = u.powf(a) * rgamma(a - z + 1.0) / a;
        let tz = cz * fz.value;
        let ta = ca * fa.value;
        let head = pre * (tz - ta);
        let err = pre.abs()
            * ((cz * fz.abs_error_estimate).abs()
                + (ca * fa.abs_error_estimate).abs()
                + 4.0 * f64::EPSILON * (tz.abs() + ta.abs()));
        Ok((head, err))
    }

    /// Head mass for integer `ν = n` from the term-wise integral of the
    /// logarithmic series of `K_n`.
    fn head_integer_series(&self, u: f64) -> Result<(f64, f64)> {
        let n = self.nu().round() as u32;
        let m = self.alpha.min(self.zeta);
        let big_m = self.alpha.max(self.zeta);
        let ln_u = u.ln();
        // ½ Σ_{k<n} (-1)^k (n-k-1)!/k! u^{m+k}/(m+k)
        let mut finite = 0.0;
        let mut finite_abs = 0.0;
        if n > 0 {
            let mut c = gamma(f64::from(n))? * u.powf(m); // (n-1)!/0! u^m
            for k in 0..n {
                let kf = f64::from(k);
                let t = c / (m + kf);
                let signed = if k % 2 == 0 { t } else { -t };
                finite += signed;
                finite_abs += t.abs();
                if k + 1 < n {
                    c *= u / ((kf + 1.0) * f64::from(n - k - 1));
                }
            }
            finite *= 0.5;
            finite_abs *= 0.5;
        }
        // ½ (-1)^n Σ_k u^{M+k}/(k!(n+k)!(M+k)) [ψ(k+1)+ψ(n+k+1) - ln u + 1/(M+k)]
        let nf = f64::from(n);
        let mut c = (big_m * ln_u - ln_gamma_pos(nf + 1.0)).exp();
        let mut h_k = 0.0; // harmonic number H_k
        let mut h_nk: f64 = (1..=n).map(|j| 1.0 / f64::from(j)).sum(); // H_{n+k}
        let mut log_sum = 0.0;
        let mut log_abs = 0.0;
        let mut small_run = 0;
        let mut converged = false;
        for k in 0..10_000u32 {
            let kf = f64::from(k);
            let bracket = -2.0 * EULER_GAMMA + h_k + h_nk - ln_u + 1.0 / (big_m + kf);
            let t = c / (big_m + kf) * bracket;
            log_sum += t;
            log_abs += t.abs();
            if t.abs() < 1e-17 * (finite + 0.5 * log_sum).abs().max(1e-300) || c == 0.0 {
                small_run += 1;
                if small_run == 2 {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
            c *= u / ((kf + 1.0) * (nf + kf + 1.0));
            h_k += 1.0 / (kf + 1.0);
            h_nk += 1.0 / (nf + kf + 1.0);
        }
        if !converged {
            return Err(SkdError::Convergence {
                routine: "cdf integer-order series",
                estimate: log_sum,
                error: f64::NAN,
            });
        }
        let sign = if n.is_multiple_of(2) { 0.5 } else { -0.5 };
        let norm = (-self.ln_gamma_product()).exp();
        let head = norm * (finite + sign * log_sum);
        let err = norm * 8.0 * f64::EPSILON * (finite_abs + 0.5 * log_abs);
        Ok((head, err))
    }

    /// `t^{s-1} K_ν(2√t) / (Γ(α)Γ(ζ))`, the one-sided density in `u` units.
    fn unit_density(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let ln_k = ln_bessel_k(self.nu(), 2.0 * t.sqrt()).unwrap_or(f64::NEG_INFINITY);
        ((self.s() - 1.0) * t.ln() + ln_k - self.ln_gamma_product()).exp()
    }

    fn head_quadrature(&self, u: f64) -> (f64, f64, bool) {
        let r = tanh_sinh(|t| self.unit_density(t), 0.0, u, 1e-14);
        (r.value, r.error, r.converged)
    }

    /// Tail mass beyond `u` by Gauss–Laguerre in `w = 2√t` after factoring
    /// out `e^{-w}`; the 20-point rule supplies the error estimate.
    fn tail_laguerre(&self, u: f64) -> (f64, f64) {
        let w0 = 2.0 * u.sqrt();
        let p = 2.0 * self.s() - 1.0;
        let nu = self.nu();
        // T = e^{-w0}/(Γ(α)Γ(ζ)) ∫₀^∞ e^{-t} (w/2)^{2s-1} K_ν(w) e^{w} dt, w = w0 + t;
        // the exponentials are combined inside each term.
        let shift = -w0 - self.ln_gamma_product();
        let eval = |(nodes, weights): &(Vec<f64>, Vec<f64>)| -> f64 {
            let mut acc = 0.0;
            for (t, wt) in nodes.iter().zip(weights) {
                let w = w0 + t;
                let ln_k = ln_bessel_k(nu, w).unwrap_or(f64::NEG_INFINITY);
                acc += wt * (p * (0.5 * w).ln() + ln_k + w + shift).exp();
            }
            acc
        };
        let t32 = eval(laguerre_32());
        let t20 = eval(laguerre_20());
        (t32, (t32 - t20).abs() + 8.0 * f64::EPSILON * t32)
    }

    fn tail_quadrature(&self, u: f64) -> (f64, f64, bool) {
        let scale = (self.alpha * self.zeta).max(1.0);
        let r = exp_sinh(|t| self.unit_density(t), u, scale, 1e-14);
        (r.value, r.error, r.converged)
    }

    /// Head and tail masses at `u = δ |x - γ| > 0`.
    fn side_mass(&self, u: f64) -> Result<SideMass> {
        if u.is_infinite() {
            return Ok(SideMass {
                head: 0.5,
                tail: 0.0,
                error: 0.0,
                method: Method::ClosedForm,
            });
        }
        let from_head = |head: f64, error: f64, method| SideMass {
            head,
            tail: 0.5 - head,
            error,
            method,
        };
        let from_tail = |tail: f64, error: f64, method| SideMass {
            head: 0.5 - tail,
            tail,
            error,
            method,
        };
        let nu = self.nu();
        let gap = (nu - nu.round()).abs();
        if u <= SERIES_LIMIT {
            if gap == 0.0 {
                if let Ok((h, e)) = self.head_integer_series(u) {
                    if e <= CDF_TOL {
                        return Ok(from_head(h, e, Method::Series));
                    }
                }
            } else if gap >= INTEGER_GAP {
                if let Ok((h, e)) = self.head_hypergeometric(u) {
                    if e <= CDF_TOL {
                        return Ok(from_head(h, e, Method::ClosedForm));
                    }
                }
            }
            let (t, e) = self.tail_laguerre(u);
            if e <= CDF_TOL.min(1e-10 * t) {
                return Ok(from_tail(t, e, Method::QuadratureFallback));
            }
            let (h, e, ok) = self.head_quadrature(u);
            if !ok {
                return Err(SkdError::Convergence {
                    routine: "cdf head quadrature",
                    estimate: h,
                    error: e,
                });
            }
            return Ok(from_head(h, e, Method::QuadratureFallback));
        }
        let (t, e) = self.tail_laguerre(u);
        if e <= 1e-15f64.max(1e-10 * t) {
            return Ok(from_tail(t, e, Method::QuadratureFallback));
        }
        let (t, e, ok) = self.tail_quadrature(u);
        if !ok {
            return Err(SkdError::Convergence {
                routine: "cdf tail quadrature",
                estimate: t,
                error: e,
            });
        }
        Ok(from_tail(t, e, Method::QuadratureFallback))
    }

    /// Distribution function with routing information and an error estimate.
    pub fn cdf_eval(&self, x: f64) -> Result<EvalResult> {
        if x.is_nan() {
            return Err(domain("cdf requires a number"));
        }
        let d = x - self.gamma_loc;
        if d == 0.0 {
            return Ok(EvalResult::new(0.5, 0.0, Method::ClosedForm));
        }
        let m = self.side_mass(self.delta * d.abs())?;
        let value = if d > 0.0 {
            if m.head <= 0.25 {
                0.5 + m.head
            } else {
                1.0 - m.tail
            }
        } else if m.head <= 0.25 {
            0.5 - m.head
        } else {
            m.tail
        };
        Ok(EvalResult::new(value.clamp(0.0, 1.0), m.error, m.method))
    }

    /// Distribution function. Non-convergence of the fallback quadrature
    /// (not observed in practice) yields its best estimate.
    pub fn cdf(&self, x: f64) -> f64 {
        match self.cdf_eval(x) {
            Ok(r) => r.value,
            Err(SkdError::Convergence { estimate, .. }) => {
                let d = x - self.gamma_loc;
                if d > 0.0 {
                    1.0 - estimate.clamp(0.0, 0.5)
                } else {
                    estimate.clamp(0.0, 0.5)
                }
            }
            Err(_) => f64::NAN,
        }
    }

    /// `(F(x), 1 - F(x))`, each computed without cancellation.
    pub fn cdf_pair(&self, x: f64) -> Result<(f64, f64)> {
        if x.is_nan() {
            return Err(domain("cdf requires a number"));
        }
        let d = x - self.gamma_loc;
        if d == 0.0 {
            return Ok((0.5, 0.5));
        }
        let m = self.side_mass(self.delta * d.abs())?;
        let near = 0.5 + m.head;
        if d > 0.0 {
            Ok((near.min(1.0), m.tail.max(0.0)))
        } else {
            Ok((m.tail.max(0.0), near.min(1.0)))
        }
    }

    /// `F(x) - 1/2`, odd about the centre.
    pub fn centered_cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(domain("cdf requires a number"));
        }
        let d = x - self.gamma_loc;
        if d == 0.0 {
            return Ok(0.0);
        }
        let m = self.side_mass(self.delta * d.abs())?;
        Ok(if d > 0.0 { m.head } else { -m.head })
    }

    /// Probability mass beyond distance `y >= 0` on one side of the centre.
    fn tail_beyond(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            return Ok(0.5);
        }
        Ok(self.side_mass(self.delta * y)?.tail)
    }

    /// Quantile function: `x` with `F(x) = u` to within `1e-10`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain(format!("quantile requires 0 < u < 1, got {u}")));
        }
        if u == 0.5 {
            return Ok(self.gamma_loc);
        }
        // Solve for the distance y whose one-sided tail mass is p.
        let (p, sign) = if u < 0.5 { (u, -1.0) } else { (1.0 - u, 1.0) };
        let mut lo = 0.0;
        let mut hi = self.std_dev();
        while self.tail_beyond(hi)? > p {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(SkdError::Convergence {
                    routine: "quantile bracket",
                    estimate: lo,
                    error: f64::INFINITY,
                });
            }
        }
        let mut y = 0.5 * (lo + hi);
        for _ in 0..200 {
            let t = self.tail_beyond(y)?;
            let resid = t - p;
            if resid.abs() <= 1e-14f64.max(1e-12 * p) {
                break;
            }
            if resid > 0.0 {
                lo = y;
            } else {
                hi = y;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
            // Newton step on the tail mass, whose derivative is -f.
            let f = self.pdf(self.gamma_loc + y).unwrap_or(0.0);
            let step = if f > 0.0 { y + resid / f } else { f64::NAN };
            y = if step > lo && step < hi {
                step
            } else {
                0.5 * (lo + hi)
            };
        }
        Ok(self.gamma_loc + sign * y)
    }

    /// `n`-th raw moment from the parity-filtered binomial sum.
    pub fn moment(&self, n: u32) -> Result<f64> {
        MomentSpec::raw(n)?;
        let mut sum = 0.0;
        for k in 0..=n {
            let j = n - k;
            if j % 2 == 1 {
                continue;
            }
            let shape = pochhammer(self.alpha, j) * pochhammer(self.zeta, j);
            sum +=
                binomial(n, k) * self.gamma_loc.powi(k as i32) * shape / self.delta.powi(j as i32);
        }
        Ok(sum)
    }

    /// The same moment from the Pochhammer form with `(n)_{1-k}` read as
    /// `Γ(n+1-k)/Γ(n)`. Defined for `n >= 1` only.
    pub fn moment_pochhammer_form(&self, n: u32) -> Result<f64> {
        MomentSpec::raw(n)?;
        if n == 0 {
            return Err(SkdError::Unsupported(
                "the Pochhammer moment form is undefined for n = 0".into(),
            ));
        }
        let nf = f64::from(n);
        let mut sum = 0.0;
        for k in 0..=n {
            let j = n - k;
            if j % 2 == 1 {
                continue;
            }
            let kf = f64::from(k);
            let num = nf
                * self.gamma_loc.powi(k as i32)
                * pochhammer(self.alpha, j)
                * pochhammer(self.zeta, j);
            let den = self.delta.powi(j as i32) * gamma(kf + 1.0)? * pochhammer_real(nf, 1.0 - kf)?;
            sum += num / den;
        }
        Ok(sum)
    }

    /// Moment selected by a [`MomentSpec`].
    pub fn moment_of(&self, spec: MomentSpec) -> Result<f64> {
        if spec.central {
            self.central_moment(spec.order)
        } else {
            self.moment(spec.order)
        }
    }

    /// `n`-th central moment by the binomial shift of the raw moments about
    /// the mean. Odd orders are zero by symmetry.
    pub fn central_moment(&self, n: u32) -> Result<f64> {
        MomentSpec::central(n)?;
        if n % 2 == 1 {
            return Ok(0.0);
        }
        let mu1 = self.gamma_loc;
        let mut sum = 0.0;
        for j in 0..=n {
            sum += binomial(n, j) * self.moment(j)? * (-mu1).powi((n - j) as i32);
        }
        Ok(sum)
    }

    /// `n`-th cumulant from the moment recursion
    /// `κ_n = μ_n - Σ_{m=1}^{n-1} C(n-1, m-1) κ_m μ_{n-m}`.
    pub fn cumulant(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(domain("cumulants start at order 1"));
        }
        MomentSpec::raw(n)?;
        let moments = (0..=n)
            .map(|k| self.moment(k))
            .collect::<Result<Vec<_>>>()?;
        let mut kappa = vec![0.0; n as usize + 1];
        for order in 1..=n {
            let mut acc = moments[order as usize];
            for m in 1..order {
                acc -=
                    binomial(order - 1, m - 1) * kappa[m as usize] * moments[(order - m) as usize];
            }
            kappa[order as usize] = acc;
        }
        if n % 2 == 1 && n > 1 {
            // Odd cumulants beyond the mean vanish by symmetry.
            return Ok(0.0);
        }
        Ok(kappa[n as usize])
    }

    pub fn summary(&self) -> Summary {
        let (a, z) = (self.alpha, self.zeta);
        Summary {
            mean: self.gamma_loc,
            variance: self.variance(),
            skewness: 0.0,
            kurtosis: (a + 2.0) * (a + 3.0) * (z + 2.0) * (z + 3.0)
                / (a * (a + 1.0) * z * (z + 1.0)),
        }
    }
}

/// `sin(πν)` with exact zeros at integers.
fn nu_sin(nu: f64) -> f64 {
    crate::special::gamma::sin_pi(nu)
}

/// Density of the standard form (`δ = 1`, `γ = 0`).
pub fn pdf_standard(alpha: f64, zeta: f64, x: f64) -> Result<f64> {
    SkdParams::standard(alpha, zeta)?.pdf(x)
}
