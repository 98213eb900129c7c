//! Parameter estimation by the method of moments and by maximum likelihood.
//!
//! Even central moments are `μ_{2k} = (α)_{2k} (ζ)_{2k} / δ^{2k}`, so the
//! scale-free ratios
//!
//! ```text
//! β₂ = μ₄/μ₂² = p(α) p(ζ),   p(a) = (a+2)(a+3) / (a(a+1))
//! r₆ = μ₆/μ₂³ = q(α) q(ζ),   q(a) = (a+2)(a+3)(a+4)(a+5) / (a(a+1))²
//! ```
//!
//! involve the shapes only. Both are symmetric in `(α, ζ)`; estimates are
//! reported with `α ≤ ζ`.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkdError};
use crate::skd::SkdParams;

/// Default bounds on each shape parameter.
pub const SHAPE_BOUNDS: (f64, f64) = (1e-2, 1e3);
/// Default cap on likelihood evaluations.
pub const MLE_MAX_EVALUATIONS: usize = 2000;

const MOM_MIN_SAMPLES: usize = 100;
const MLE_MIN_SAMPLES: usize = 30;
/// Largest finite log-density contribution, `ln(f64::MAX)`.
const LN_MAX: f64 = 709.782_712_893_384;
/// Smallest log-density contribution, about `ln` of the smallest subnormal.
const LN_MIN: f64 = -745.0;

/// Outcome of a fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: SkdParams,
    /// Log-likelihood for maximum likelihood; the residual of the sixth-moment
    /// equation for the method of moments.
    pub objective: f64,
    pub converged: bool,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn p_ratio(a: f64) -> f64 {
    (a + 2.0) * (a + 3.0) / (a * (a + 1.0))
}

fn ln_q_ratio(a: f64) -> f64 {
    ((a + 2.0) * (a + 3.0) * (a + 4.0) * (a + 5.0)).ln() - 2.0 * (a * (a + 1.0)).ln()
}

/// Inverse of the decreasing map `p` for `t > 1`.
fn p_inverse(t: f64) -> f64 {
    // (t-1) a² + (t-5) a - 6 = 0, positive root in the cancellation-free form.
    let b = t - 5.0;
    let disc = (b * b + 24.0 * (t - 1.0)).sqrt();
    if b <= 0.0 {
        (disc - b) / (2.0 * (t - 1.0))
    } else {
        12.0 / (b + disc)
    }
}

struct SampleMoments {
    mean: f64,
    m2: f64,
    m4: f64,
    m6: f64,
}

fn sample_moments(samples: &[f64]) -> SampleMoments {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let (mut m2, mut m4, mut m6) = (0.0, 0.0, 0.0);
    for &x in samples {
        let d2 = (x - mean) * (x - mean);
        m2 += d2;
        m4 += d2 * d2;
        m6 += d2 * d2 * d2;
    }
    SampleMoments {
        mean,
        m2: m2 / n,
        m4: m4 / n,
        m6: m6 / n,
    }
}

/// Method-of-moments fit.
///
/// The kurtosis equation gives `ζ` as a function of `α`; the sixth-moment
/// equation is then solved for `α` by bracketing on `[lo, α*]`, where `α*`
/// is the point with `α = ζ`. Among several roots the largest `α` is taken.
/// If the sixth-moment equation has no root the closest point is returned
/// with `converged = false`.
pub fn fit_mom(samples: &[f64]) -> Result<FitResult> {
    fit_mom_bounded(samples, SHAPE_BOUNDS)
}

/// [`fit_mom`] with explicit shape bounds.
pub fn fit_mom_bounded(samples: &[f64], bounds: (f64, f64)) -> Result<FitResult> {
    if samples.len() < MOM_MIN_SAMPLES {
        return Err(domain(format!(
            "method of moments needs at least {MOM_MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(domain("samples must be finite"));
    }
    let (lo, hi) = bounds;
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(domain(format!("invalid shape bounds ({lo}, {hi})")));
    }
    let m = sample_moments(samples);
    if !(m.m2 > 0.0) {
        return Err(SkdError::InfeasibleMoments(
            "sample variance is zero".into(),
        ));
    }
    let beta2 = m.m4 / (m.m2 * m.m2);
    let ln_r6 = (m.m6 / (m.m2 * m.m2 * m.m2)).ln();
    let min_beta2 = p_ratio(hi) * p_ratio(hi);
    let max_beta2 = p_ratio(lo) * p_ratio(lo);
    if !(beta2 > min_beta2) {
        return Err(SkdError::InfeasibleMoments(format!(
            "sample kurtosis {beta2} is not above the attainable minimum {min_beta2}"
        )));
    }
    if beta2 > max_beta2 {
        return Err(SkdError::InfeasibleMoments(format!(
            "sample kurtosis {beta2} exceeds the attainable maximum {max_beta2}"
        )));
    }

    let zeta_of = |a: f64| p_inverse(beta2 / p_ratio(a));
    let residual = |a: f64| ln_q_ratio(a) + ln_q_ratio(zeta_of(a)) - ln_r6;
    let a_star = p_inverse(beta2.sqrt());
    // ζ(α) stays inside the box only while p(α) ≥ β₂ / p(lo).
    let a_min = {
        let t = beta2 / p_ratio(lo);
        if t > 1.0 {
            p_inverse(t).max(lo)
        } else {
            lo
        }
    };
    let a_max = a_star.min(hi);

    let steps = 400;
    let grid: Vec<f64> = (0..=steps)
        .map(|k| a_min * (a_max / a_min).powf(k as f64 / steps as f64))
        .collect();
    let values: Vec<f64> = grid.iter().map(|&a| residual(a)).collect();
    let mut iterations = grid.len();

    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if v.abs() < values[best].abs() {
            best = k;
        }
    }
    // With several roots, take the one with the least unequal shapes.
    let bracket = (0..steps)
        .rev()
        .find(|&k| values[k].signum() != values[k + 1].signum());

    let (alpha, objective, converged) = match bracket {
        Some(k) => {
            let (mut x0, mut x1) = (grid[k], grid[k + 1]);
            let mut f0 = values[k];
            for _ in 0..200 {
                let mid = (x0 * x1).sqrt();
                let fm = residual(mid);
                iterations += 1;
                if fm == 0.0 || (x1 - x0) <= 1e-14 * x1 {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if fm.signum() == f0.signum() {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            let a = (x0 * x1).sqrt();
            (a, residual(a).abs(), true)
        }
        None => (grid[best], values[best].abs(), false),
    };
    let zeta = zeta_of(alpha).clamp(lo, hi);
    let alpha = alpha.clamp(lo, hi);
    let delta = (alpha * (alpha + 1.0) * zeta * (zeta + 1.0) / m.m2).sqrt();
    let params = SkdParams::new(alpha, zeta, delta, m.mean)?.canonical();
    let mut warnings = Vec::new();
    if !converged {
        warnings.push(format!(
            "sixth-moment equation has no root on the feasible shape interval; \
             closest residual {objective:e} returned"
        ));
    }
    Ok(FitResult {
        params,
        objective,
        converged,
        iterations,
        warnings,
    })
}

/// Log-likelihood with singular or vanishing contributions clamped to the
/// representable range. Returns the number of clamped points as well.
fn log_likelihood(p: &SkdParams, samples: &[f64]) -> (f64, usize) {
    let mut total = 0.0;
    let mut clamped = 0;
    for &x in samples {
        let v = match p.log_pdf(x) {
            Ok(v) if v.is_finite() => v,
            Ok(v) if v > 0.0 => {
                clamped += 1;
                LN_MAX
            }
            Ok(_) => {
                clamped += 1;
                LN_MIN
            }
            Err(SkdError::Singularity { .. }) => {
                clamped += 1;
                LN_MAX
            }
            Err(_) => {
                clamped += 1;
                LN_MIN
            }
        };
        total += v.clamp(LN_MIN, LN_MAX);
    }
    (total, clamped)
}

/// Log-likelihood of the sample, with singular contributions clamped.
pub fn log_likelihood_of(p: &SkdParams, samples: &[f64]) -> f64 {
    log_likelihood(p, samples).0
}

/// Maximum-likelihood fit by Nelder–Mead in `(ln α, ln ζ, ln δ, γ)`, starting
/// from `init`, with at most [`MLE_MAX_EVALUATIONS`] likelihood evaluations.
pub fn fit_mle(samples: &[f64], init: &SkdParams) -> Result<FitResult> {
    fit_mle_capped(samples, init, MLE_MAX_EVALUATIONS)
}

/// [`fit_mle`] with an explicit evaluation cap.
pub fn fit_mle_capped(
    samples: &[f64],
    init: &SkdParams,
    max_evaluations: usize,
) -> Result<FitResult> {
    if samples.len() < MLE_MIN_SAMPLES {
        return Err(domain(format!(
            "maximum likelihood needs at least {MLE_MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(domain("samples must be finite"));
    }
    if max_evaluations == 0 {
        return Err(domain("evaluation cap must be positive"));
    }
    let (lo, hi) = (SHAPE_BOUNDS.0.ln(), SHAPE_BOUNDS.1.ln());
    let spread = {
        let m = sample_moments(samples);
        m.m2.sqrt().max(f64::MIN_POSITIVE)
    };
    let project = |t: [f64; 4]| -> [f64; 4] {
        [
            t[0].clamp(lo, hi),
            t[1].clamp(lo, hi),
            t[2].clamp(-700.0, 700.0),
            t[3],
        ]
    };
    let to_params = |t: [f64; 4]| {
        SkdParams::new(t[0].exp(), t[1].exp(), t[2].exp(), t[3]).expect("projected point is valid")
    };
    let clamped_any = Cell::new(0usize);
    let evaluations = Cell::new(0usize);
    let objective = |t: [f64; 4]| -> f64 {
        evaluations.set(evaluations.get() + 1);
        let (ll, clamped) = log_likelihood(&to_params(t), samples);
        clamped_any.set(clamped_any.get().max(clamped));
        -ll
    };

    let start = project([
        init.alpha().ln(),
        init.zeta().ln(),
        init.delta().ln(),
        init.gamma_loc(),
    ]);
    let steps = [0.1, 0.1, 0.1, 0.05 * spread];
    let mut simplex: Vec<([f64; 4], f64)> = Vec::with_capacity(5);
    simplex.push((start, objective(start)));
    for (i, &step) in steps.iter().enumerate() {
        let mut t = start;
        t[i] += step;
        let t = project(t);
        simplex.push((t, objective(t)));
    }
    let init_value = simplex[0].1;

    let mut converged = false;
    let mut iterations = 0usize;
    // Evaluations consumed per iteration are at most 6 (shrink step).
    while evaluations.get() + 6 <= max_evaluations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[4].1);
        let size = simplex[1..]
            .iter()
            .map(|(t, _)| {
                (0..4)
                    .map(|i| {
                        let scale = if i == 3 { spread } else { 1.0 };
                        ((t[i] - simplex[0].0[i]) / scale).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if (worst - best).abs() <= 1e-10 * (1.0 + best.abs()) && size < 1e-6 {
            converged = true;
            break;
        }
        iterations += 1;
        let mut centroid = [0.0; 4];
        for (t, _) in &simplex[..4] {
            for i in 0..4 {
                centroid[i] += t[i] / 4.0;
            }
        }
        let along = |c: f64| {
            let w = simplex[4].0;
            let mut t = [0.0; 4];
            for i in 0..4 {
                t[i] = centroid[i] + c * (centroid[i] - w[i]);
            }
            project(t)
        };
        let xr = along(1.0);
        let fr = objective(xr);
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = objective(xe);
            simplex[4] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[3].1 {
            simplex[4] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[4].1 {
                let xc = along(0.5);
                (xc, objective(xc))
            } else {
                let xc = along(-0.5);
                (xc, objective(xc))
            };
            if fc < fr.min(simplex[4].1) {
                simplex[4] = (xc, fc);
            } else {
                let b = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let mut t = [0.0; 4];
                    for i in 0..4 {
                        t[i] = b[i] + 0.5 * (v.0[i] - b[i]);
                    }
                    let t = project(t);
                    *v = (t, objective(t));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (best_t, best_f) = simplex[0];
    debug_assert!(best_f <= init_value);
    let mut warnings = Vec::new();
    let clamped_any = clamped_any.get();
    if clamped_any > 0 {
        warnings.push(format!(
            "{clamped_any} sample(s) fell on a singular or vanishing density; \
             their log-density was clamped"
        ));
    }
    if !converged {
        warnings.push(format!(
            "evaluation cap of {max_evaluations} reached before the simplex converged"
        ));
    }
    Ok(FitResult {
        params: to_params(best_t).canonical(),
        objective: -best_f,
        converged,
        iterations,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_inverse() {
        for &a in &[0.01, 0.3, 1.0, 2.0, 17.0, 999.0] {
            let back = p_inverse(p_ratio(a));
            assert!(((back - a) / a).abs() < 1e-12, "{a} -> {back}");
        }
    }

    #[test]
    fn rejects_short_samples() {
        assert!(fit_mom(&[1.0; 10]).is_err());
        let p = SkdParams::standard(1.0, 1.0).unwrap();
        assert!(fit_mle(&[1.0; 10], &p).is_err());
    }

    #[test]
    fn constant_sample_is_infeasible() {
        assert!(matches!(
            fit_mom(&[2.0; 200]),
            Err(SkdError::InfeasibleMoments(_))
        ));
    }
}
