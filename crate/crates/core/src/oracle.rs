//! Independent numerical references: adaptive Gauss–Kronrod quadrature on
//! mapped intervals, Kolmogorov–Smirnov distances, convolution integrals for
//! the product and ratio laws, and a self-check suite built from them.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkdError};
use crate::eval::{EvalResult, Method};
use crate::product_ratio::{self, PairLaw};
use crate::quadrature::adaptive_gk;
use crate::skd::SkdParams;
use crate::skew::{self, SkewParams};

const MAX_SEGMENTS: usize = 4000;

/// Outcome of comparing an analytic value with its numerical reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub analytic: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Set when the analytic side is a known-faulty printed formula; names
    /// the discrepancy it documents.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub errata: Option<String>,
}

impl OracleReport {
    pub fn new(name: impl Into<String>, analytic: f64, reference: f64, tolerance: f64) -> Self {
        let abs_err = (analytic - reference).abs();
        let rel_err = if reference != 0.0 {
            abs_err / reference.abs()
        } else if abs_err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        Self {
            name: name.into(),
            analytic,
            reference,
            abs_err,
            rel_err,
            tolerance,
            pass: abs_err <= tolerance || rel_err <= tolerance,
            errata: None,
        }
    }

    pub fn with_errata(mut self, note: impl Into<String>) -> Self {
        self.errata = Some(note.into());
        self
    }

    /// A failure that is not explained by a documented erratum.
    pub fn is_unexpected_failure(&self) -> bool {
        !self.pass && self.errata.is_none()
    }
}

/// Power of the substitution `x = c + (b-c) u^k` applied next to a declared
/// singular point `c`. An integrand behaving like `|x-c|^p` with `p > -1`
/// becomes `u^{k(1+p)-1}`, bounded for every `p ≥ -1 + 1/k`.
const SINGULAR_POWER: i32 = 4;

fn finite(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// `x(u)` and `dx/du` for `u ∈ [0, 1]` on a piece starting at `a` and
/// heading towards `b` (either may be infinite).
fn piece_map(a: f64, b: f64, singular_start: bool, u: f64) -> (f64, f64) {
    let k = SINGULAR_POWER;
    let (v, dv) = if singular_start {
        (u.powi(k), f64::from(k) * u.powi(k - 1))
    } else {
        (u, 1.0)
    };
    if b.is_finite() {
        (a + (b - a) * v, (b - a).abs() * dv)
    } else {
        // x = a ± v/(1-v)
        let d = 1.0 - v;
        let sign = if b > a { 1.0 } else { -1.0 };
        (a + sign * v / d, dv / (d * d))
    }
}

/// `∫ f` over the piece between `a` and `b` (`a` finite unless both are
/// infinite), oriented from `a` towards `b` and returned for increasing x.
fn integrate_piece(
    f: &mut impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    singular: (bool, bool),
    abs_tol: f64,
    rel_tol: f64,
) -> (f64, f64, bool) {
    if !a.is_finite() && !b.is_finite() {
        let (l, le, lc) = integrate_piece(f, 0.0, a, (false, false), 0.5 * abs_tol, rel_tol);
        let (r, re, rc) = integrate_piece(f, 0.0, b, (false, false), 0.5 * abs_tol, rel_tol);
        return (l + r, le + re, lc && rc);
    }
    if !a.is_finite() {
        return integrate_piece(f, b, a, (singular.1, singular.0), abs_tol, rel_tol);
    }
    if b.is_finite() && singular.0 && singular.1 {
        let m = 0.5 * (a + b);
        let (l, le, lc) = integrate_piece(f, a, m, (true, false), 0.5 * abs_tol, rel_tol);
        let (r, re, rc) = integrate_piece(f, b, m, (true, false), 0.5 * abs_tol, rel_tol);
        return (l + r, le + re, lc && rc);
    }
    if b.is_finite() && singular.1 {
        return integrate_piece(f, b, a, (true, false), abs_tol, rel_tol);
    }
    let r = adaptive_gk(
        |u: f64| {
            let (x, w) = piece_map(a, b, singular.0, u);
            if w == 0.0 {
                0.0
            } else {
                finite(f(x)) * w
            }
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
        MAX_SEGMENTS,
    );
    (r.value, r.error, r.converged)
}

/// `∫_lo^hi f` with absolute and relative targets. `breakpoints` inside the
/// range split it; those inside or at either end are treated as singular.
fn integrate(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
    breakpoints: &[f64],
) -> Result<EvalResult> {
    if lo.is_nan() || hi.is_nan() || !(lo <= hi) {
        return Err(domain(format!("invalid integration range [{lo}, {hi}]")));
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|c| c.is_finite() && *c > lo && *c < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![lo];
    edges.extend(cuts);
    edges.push(hi);
    let is_singular = |x: f64| x.is_finite() && breakpoints.contains(&x);
    let pieces = (edges.len() - 1) as f64;
    let (mut value, mut error, mut converged) = (0.0, 0.0, true);
    for w in edges.windows(2) {
        let flags = (is_singular(w[0]), is_singular(w[1]));
        let (v, e, c) = integrate_piece(&mut f, w[0], w[1], flags, abs_tol / pieces, rel_tol);
        value += v;
        error += e;
        converged &= c;
    }
    if !(converged || error <= abs_tol.max(rel_tol * value.abs())) {
        return Err(SkdError::Convergence {
            routine: "oracle quadrature",
            estimate: value,
            error,
        });
    }
    Ok(EvalResult::new(value, error, Method::QuadratureFallback))
}

/// `∫_lo^hi f` to absolute accuracy `tol`. Either limit may be infinite;
/// `breakpoints` mark points where `f` may be singular or kinked; interior ones
/// split the range and an endpoint listed there is treated as singular.
pub fn quad_integrate(
    f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    breakpoints: &[f64],
) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    integrate(f, lo, hi, tol, 0.0, breakpoints)
}

/// Density with the singular centre read as zero, for use as an integrand.
pub fn pdf_or_zero(p: &SkdParams, x: f64) -> f64 {
    p.pdf(x).unwrap_or(0.0)
}

/// `∫_lo^hi w(x) f(x) dx` computed in the offset `y = x - γ`, so that mass
/// within rounding distance of the centre is not lost when forming `γ + y`.
/// The target is met when the error is below `abs_tol` or `rel_tol · |I|`.
pub fn integrate_against_pdf(
    p: &SkdParams,
    mut w: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<EvalResult> {
    let g = p.gamma_loc();
    let centred = p.with_location(0.0)?;
    integrate(
        |y| {
            let d = pdf_or_zero(&centred, y);
            if d == 0.0 {
                0.0
            } else {
                w(g + y) * d
            }
        },
        lo - g,
        hi - g,
        abs_tol,
        rel_tol,
        &[0.0],
    )
}

/// Two-sided Kolmogorov–Smirnov distance between the sample and `cdf`.
pub fn ks_statistic(samples: &[f64], mut cdf: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut xs = sorted_samples(samples)?;
    for x in &mut xs {
        *x = cdf(*x);
    }
    Ok(ks_from_sorted_cdf(&xs))
}

/// As [`ks_statistic`], with the distribution function evaluated on the
/// whole sorted sample at once.
pub fn ks_statistic_batch(
    samples: &[f64],
    cdf_many: impl FnOnce(&[f64]) -> Result<Vec<f64>>,
) -> Result<f64> {
    let xs = sorted_samples(samples)?;
    let fs = cdf_many(&xs)?;
    Ok(ks_from_sorted_cdf(&fs))
}

fn sorted_samples(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.len() < 10 {
        return Err(domain(format!(
            "KS statistic needs at least 10 samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(domain("samples must be numbers"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(xs)
}

/// `max_i max(i/n - F_i, F_i - (i-1)/n)` over the sorted sample's CDF values.
/// Tied samples share the empirical step at the end of the tie.
fn ks_from_sorted_cdf(fs: &[f64]) -> f64 {
    let n = fs.len() as f64;
    fs.iter()
        .enumerate()
        .map(|(i, &f)| {
            let i = i as f64;
            ((i + 1.0) / n - f).max(f - i / n)
        })
        .fold(0.0, f64::max)
}

/// Critical KS value `1.95/√n` at significance 0.001.
pub fn ks_critical(n: usize) -> f64 {
    1.95 / (n as f64).sqrt()
}

/// Fraction of `samples` at or below `x`, with its binomial standard error.
pub fn empirical_cdf(samples: &[f64], x: f64) -> (f64, f64) {
    let n = samples.len() as f64;
    let k = samples.iter().filter(|&&v| v <= x).count() as f64;
    let p = k / n;
    (p, (p * (1.0 - p) / n).sqrt())
}

/// `2 ∫₀^∞ f(x) f(|z|/x) dx / x`, evaluated as `4 ∫_{c}^{∞} f(eᵘ) f(|z|e^{-u}) du`
/// with `c = ln|z| / 2`, which uses the symmetry `u ↦ ln|z| - u`.
pub fn product_pdf_reference(law: &PairLaw, z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(domain("argument must be a number"));
    }
    if z == 0.0 {
        return Err(SkdError::Singularity { at: 0.0 });
    }
    let p = law.marginal();
    let y = z.abs();
    let c = 0.5 * y.ln();
    let f = |u: f64| pdf_or_zero(&p, u.exp()) * pdf_or_zero(&p, y * (-u).exp());
    let r = integrate(f, c, f64::INFINITY, 1e-300, 1e-12, &[c + 1.0, c + 4.0])?;
    Ok(4.0 * r.value)
}

/// `2 ∫₀^∞ f(|z|y) f(y) y dy`, evaluated in `u = ln y`.
pub fn ratio_pdf_reference(law: &PairLaw, z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(domain("argument must be a number"));
    }
    if z == 0.0 {
        return Err(SkdError::Singularity { at: 0.0 });
    }
    let p = law.marginal();
    let y = z.abs();
    let f = |u: f64| {
        let t = u.exp();
        pdf_or_zero(&p, y * t) * pdf_or_zero(&p, t) * t * t
    };
    let centre = -law.delta().ln();
    let breaks = [centre, centre - y.ln()];
    let r = integrate(f, f64::NEG_INFINITY, f64::INFINITY, 1e-300, 1e-12, &breaks)?;
    Ok(2.0 * r.value)
}

/// The 36-point parameter grid: every `(α, δ, γ)` combination of
/// `α ∈ {0.6, 1, 2.5, 6}`, `δ ∈ {0.5, 1, 4}`, `γ ∈ {-2, 0, 3}`, with `ζ`
/// cycling through the shape values so that every shape pair appears.
pub fn standard_grid() -> Vec<SkdParams> {
    let shapes = [0.6, 1.0, 2.5, 6.0];
    let deltas = [0.5, 1.0, 4.0];
    let locations = [-2.0, 0.0, 3.0];
    let mut grid = Vec::with_capacity(36);
    for (i, &a) in shapes.iter().enumerate() {
        for (j, &d) in deltas.iter().enumerate() {
            for (k, &g) in locations.iter().enumerate() {
                let b = shapes[(i + j + 2 * k) % 4];
                grid.push(SkdParams::new(a, b, d, g).expect("grid parameters are valid"));
            }
        }
    }
    grid
}

fn label(p: &SkdParams) -> String {
    format!(
        "({}, {}, {}, {})",
        p.alpha(),
        p.zeta(),
        p.delta(),
        p.gamma_loc()
    )
}

fn push_checked(
    out: &mut Vec<OracleReport>,
    name: String,
    analytic: Result<f64>,
    reference: Result<f64>,
    tol: f64,
) {
    let report = match (analytic, reference) {
        (Ok(a), Ok(r)) => OracleReport::new(name, a, r, tol),
        (a, r) => {
            let mut rep =
                OracleReport::new(name, a.unwrap_or(f64::NAN), r.unwrap_or(f64::NAN), tol);
            rep.pass = false;
            rep
        }
    };
    out.push(report);
}

/// Runs the verification suite and returns one report per check. Reports
/// for the printed product and ratio formulas carry an erratum note and are
/// expected to fail.
pub fn selfcheck() -> Vec<OracleReport> {
    let mut out = Vec::new();
    for p in standard_grid() {
        let g = p.gamma_loc();
        let mass = integrate_against_pdf(&p, |_| 1.0, f64::NEG_INFINITY, f64::INFINITY, 1e-10, 0.0)
            .map(|r| r.value);
        push_checked(
            &mut out,
            format!("normalization {}", label(&p)),
            Ok(1.0),
            mass,
            1e-8,
        );
        out.push(OracleReport::new(
            format!("median {}", label(&p)),
            p.cdf(g),
            0.5,
            1e-12,
        ));
        for x in [g - 1.5 * p.std_dev(), g + 0.3 * p.std_dev()] {
            let r = integrate_against_pdf(&p, |_| 1.0, f64::NEG_INFINITY, x, 1e-12, 0.0)
                .map(|r| r.value);
            push_checked(
                &mut out,
                format!("cdf {} at {x:.6}", label(&p)),
                Ok(p.cdf(x)),
                r,
                1e-9,
            );
        }
        for n in 1..=4u32 {
            let k = n as i32;
            let r = integrate_against_pdf(
                &p,
                |t| t.powi(k),
                f64::NEG_INFINITY,
                f64::INFINITY,
                1e-300,
                1e-11,
            )
            .map(|r| r.value);
            push_checked(
                &mut out,
                format!("moment {n} {}", label(&p)),
                p.moment(n),
                r,
                1e-7,
            );
        }
    }

    let laws = [(1.0, 1.0, 1.0), (2.0, 3.0, 1.0), (0.8, 2.5, 2.0)];
    for &(a, b, d) in &laws {
        let law = PairLaw::new(a, b, d).expect("valid law");
        for z in [0.25, 1.0, 3.0] {
            let reference = product_pdf_reference(&law, z);
            let name = format!("product pdf ({a}, {b}, {d}) at {z}");
            push_checked(
                &mut out,
                name.clone(),
                product_ratio::product_pdf(&law, z),
                reference.clone(),
                1e-5,
            );
            push_checked(
                &mut out,
                format!("{name} [printed form]"),
                product_ratio::verbatim::product_pdf(&law, z),
                reference,
                1e-5,
            );
            if let Some(last) = out.last_mut() {
                *last = last
                    .clone()
                    .with_errata("product density argument and prefactor");
            }
            let reference = ratio_pdf_reference(&law, z);
            let name = format!("ratio pdf ({a}, {b}, {d}) at {z}");
            push_checked(
                &mut out,
                name.clone(),
                product_ratio::ratio_pdf(&law, z),
                reference.clone(),
                1e-5,
            );
            push_checked(
                &mut out,
                format!("{name} [printed form]"),
                product_ratio::verbatim::ratio_pdf(&law, z),
                reference,
                1e-5,
            );
            if let Some(last) = out.last_mut() {
                *last = last
                    .clone()
                    .with_errata("ratio density scale dependence and parameters");
            }
        }
        out.push(OracleReport::new(
            format!("product cdf ({a}, {b}, {d}) at 0"),
            product_ratio::product_cdf(&law, 0.0).unwrap_or(f64::NAN),
            0.5,
            1e-12,
        ));
        let printed = product_ratio::verbatim::product_cdf(&law, 0.0).unwrap_or(f64::NAN);
        out.push(
            OracleReport::new(
                format!("product cdf ({a}, {b}, {d}) at 0 [printed form]"),
                printed,
                0.5,
                1e-12,
            )
            .with_errata("product distribution function additive constant"),
        );
        let printed = product_ratio::verbatim::ratio_cdf(&law, 0.0).unwrap_or(f64::NAN);
        out.push(
            OracleReport::new(
                format!("ratio cdf ({a}, {b}, {d}) at 0 [printed form]"),
                printed,
                0.5,
                1e-12,
            )
            .with_errata("ratio distribution function additive constant"),
        );
    }

    let base = SkdParams::new(2.0, 2.0, 1.0, 0.0).expect("valid base");
    for lambda in [-3.0, -1.0, 0.0, 1.0, 3.0] {
        let sp = SkewParams::new(base, lambda).expect("finite lambda");
        let m = quad_integrate(
            |x| skew::skew_pdf(&sp, x).unwrap_or(0.0),
            f64::NEG_INFINITY,
            f64::INFINITY,
            1e-10,
            &[0.0],
        )
        .map(|r| r.value);
        push_checked(
            &mut out,
            format!("skew normalization lambda={lambda}"),
            Ok(1.0),
            m,
            1e-7,
        );
    }
    out
}
