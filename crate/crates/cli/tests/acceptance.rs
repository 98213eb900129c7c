//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::f64::consts::{LN_2, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use skdist_core::estimation::log_likelihood_of;
use skdist_core::oracle::{
    empirical_cdf, integrate_against_pdf, ks_critical, ks_statistic, ks_statistic_batch,
    product_pdf_reference, quad_integrate, ratio_pdf_reference, standard_grid,
};
use skdist_core::product_ratio::{product_pdf, ratio_pdf, ratio_pdf_eval};
use skdist_core::skew::{skew_cdf_many, skew_pdf, SkewParams};
use skdist_core::special::{bessel_k, hyp_2f1};
use skdist_core::{
    fit_mle, fit_mom, order_stat_cdf, Method, OrderSpec, PairLaw, SampleStream, SkdParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn require(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn laws() -> [PairLaw; 3] {
    [
        PairLaw::new(1.0, 1.0, 1.0).unwrap(),
        PairLaw::new(2.0, 3.0, 1.0).unwrap(),
        PairLaw::new(0.8, 2.5, 2.0).unwrap(),
    ]
}

const Z_POINTS: [f64; 5] = [0.05, 0.25, 1.0, 3.0, 10.0];

fn normalization() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in standard_grid() {
        let m = integrate_against_pdf(&p, |_| 1.0, f64::NEG_INFINITY, f64::INFINITY, 1e-12, 0.0)
            .map_err(|e| format!("{p:?}: {e}"))?;
        worst = worst.max((m.value - 1.0).abs());
    }
    let elapsed = start.elapsed();
    require(
        worst <= 1e-8 && elapsed < Duration::from_secs(60),
        format!(
            "36 points, max |mass - 1| = {worst:.2e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn median() -> Outcome {
    let worst = standard_grid()
        .iter()
        .map(|p| (p.cdf(p.gamma_loc()) - 0.5).abs())
        .fold(0.0, f64::max);
    require(worst <= 1e-12, format!("max |F(γ) - 1/2| = {worst:.2e}"))
}

fn moments() -> Outcome {
    let mut worst = 0.0f64;
    for p in standard_grid() {
        for n in 1..=8u32 {
            let k = n as i32;
            let analytic = p.moment(n).map_err(|e| e.to_string())?;
            let q = integrate_against_pdf(
                &p,
                |x| x.powi(k),
                f64::NEG_INFINITY,
                f64::INFINITY,
                0.0,
                1e-11,
            )
            .map_err(|e| format!("{p:?} n={n}: {e}"))?;
            // Odd moments about zero vanish; measure them against ∫|x|ⁿ f.
            let scale = q.value.abs().max(
                integrate_against_pdf(
                    &p,
                    |x| x.abs().powi(k),
                    f64::NEG_INFINITY,
                    f64::INFINITY,
                    0.0,
                    1e-11,
                )
                .map_err(|e| e.to_string())?
                .value,
            );
            let err = (analytic - q.value).abs()
                / if q.value != 0.0 && analytic != 0.0 {
                    q.value.abs()
                } else {
                    scale
                };
            worst = worst.max(err);
        }
    }
    let mu2 = SkdParams::new(2.0, 3.0, 1.0, 0.0)
        .unwrap()
        .moment(2)
        .unwrap();
    let var = SkdParams::new(1.0, 1.0, 2.0, 0.0)
        .unwrap()
        .central_moment(2)
        .unwrap();
    let kurt = SkdParams::new(1.0, 1.0, 1.0, 0.0)
        .unwrap()
        .summary()
        .kurtosis;
    let spots =
        (mu2 - 72.0).abs() <= 1e-10 && (var - 1.0).abs() <= 1e-10 && (kurt - 36.0).abs() <= 1e-10;
    require(
        worst <= 1e-7 && spots,
        format!(
            "n ≤ 8, max rel err = {worst:.2e}; μ₂ = {mu2}, variance = {var}, kurtosis = {kurt}"
        ),
    )
}

fn cumulants() -> Outcome {
    let mut worst = 0.0f64;
    for p in standard_grid() {
        let (a, z, d) = (p.alpha(), p.zeta(), p.delta());
        let poch = |x: f64, k: i32| (0..k).map(|i| x + f64::from(i)).product::<f64>();
        let var = poch(a, 2) * poch(z, 2) / d.powi(2);
        let fourth = poch(a, 4) * poch(z, 4) / d.powi(4);
        let expected = fourth - 3.0 * var * var;
        let k4 = p.cumulant(4).map_err(|e| e.to_string())?;
        worst = worst.max(rel(k4, expected));
    }
    require(worst <= 1e-10, format!("max rel err of κ₄ = {worst:.2e}"))
}

fn sampler() -> Outcome {
    let grid = standard_grid();
    let mut lines = Vec::new();
    let mut ok = true;
    for (i, p) in grid.iter().step_by(4).enumerate() {
        let start = Instant::now();
        let xs = SampleStream::new(*p, 1000 + i as u64).take_samples(100_000);
        let d = ks_statistic(&xs, |x| p.cdf(x)).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        ok &= d < ks_critical(xs.len()) && t < Duration::from_secs(30);
        lines.push(format!("{d:.4}"));
    }
    require(
        ok && lines.len() == 9,
        format!(
            "KS at N = 1e5 vs {:.5}: [{}]",
            ks_critical(100_000),
            lines.join(", ")
        ),
    )
}

fn order_statistics() -> Outcome {
    let p = SkdParams::new(2.0, 3.0, 1.0, 0.0).unwrap();
    let spec = OrderSpec::new(5, 2).unwrap();
    let mut stream = SampleStream::new(p, 2024);
    let second: Vec<f64> = (0..1_000_000)
        .map(|_| {
            let mut draw: [f64; 5] = std::array::from_fn(|_| stream.sample());
            draw.sort_by(f64::total_cmp);
            draw[1]
        })
        .collect();
    let mut worst = 0.0f64;
    for x in [-8.0, -3.0, -1.0, 0.5, 4.0] {
        let (emp, se) = empirical_cdf(&second, x);
        let exact = order_stat_cdf(&p, spec, x).map_err(|e| e.to_string())?;
        worst = worst.max((emp - exact).abs() / se);
    }
    require(worst < 3.0, format!("max |MC - exact| = {worst:.2} SE"))
}

fn product_law() -> Outcome {
    let mut worst_abs = 0.0f64;
    let mut worst_mass = 0.0f64;
    let mut worst_m2 = 0.0f64;
    for law in laws() {
        for z in Z_POINTS {
            let a = product_pdf(&law, z).map_err(|e| e.to_string())?;
            let r = product_pdf_reference(&law, z).map_err(|e| e.to_string())?;
            worst_abs = worst_abs.max((a - r).abs());
        }
        let f = |z: f64| product_pdf(&law, z).unwrap_or(0.0);
        let half =
            quad_integrate(f, 0.0, f64::INFINITY, 1e-10, &[0.0, 1.0]).map_err(|e| e.to_string())?;
        worst_mass = worst_mass.max((2.0 * half.value - 1.0).abs());
        let var = law.marginal().variance();
        let m2 = quad_integrate(
            |z| z * z * f(z),
            0.0,
            f64::INFINITY,
            1e-9 * var * var,
            &[0.0, 1.0],
        )
        .map_err(|e| e.to_string())?;
        worst_m2 = worst_m2.max(rel(2.0 * m2.value, var * var));
    }
    require(
        worst_abs <= 1e-5 && worst_mass <= 1e-6 && worst_m2 <= 1e-4,
        format!(
            "max |pdf - reference| = {worst_abs:.2e}, max |mass - 1| = {worst_mass:.2e}, \
             max rel err of E[Z²] = {worst_m2:.2e}"
        ),
    )
}

fn ratio_law() -> Outcome {
    let mut worst_ref = 0.0f64;
    let mut worst_inv = 0.0f64;
    let mut worst_scale = 0.0f64;
    for law in laws() {
        for z in Z_POINTS {
            let a = ratio_pdf_eval(&law, z).map_err(|e| e.to_string())?;
            if a.method == Method::MellinBarnes {
                return Err(format!("hypergeometric route not used at z = {z}"));
            }
            let r = ratio_pdf_reference(&law, z).map_err(|e| e.to_string())?;
            worst_ref = worst_ref.max((a.value - r).abs());
            let inv = ratio_pdf(&law, 1.0 / z).map_err(|e| e.to_string())? / (z * z);
            worst_inv = worst_inv.max((a.value - inv).abs());
            let lo = PairLaw::new(law.alpha(), law.zeta(), 0.5).unwrap();
            let hi = PairLaw::new(law.alpha(), law.zeta(), 3.0).unwrap();
            let d = ratio_pdf(&lo, z).map_err(|e| e.to_string())?
                - ratio_pdf(&hi, z).map_err(|e| e.to_string())?;
            worst_scale = worst_scale.max(d.abs());
        }
    }
    require(
        worst_ref <= 1e-5 && worst_inv <= 1e-8 && worst_scale <= 1e-9,
        format!(
            "max |pdf - reference| = {worst_ref:.2e}, inversion {worst_inv:.2e}, \
             δ-invariance {worst_scale:.2e}"
        ),
    )
}

fn skew_law() -> Outcome {
    let base = SkdParams::new(2.0, 2.0, 1.0, 0.0).unwrap();
    let mut worst_mass = 0.0f64;
    for lambda in [-3.0, -1.0, 0.0, 1.0, 3.0] {
        let sp = SkewParams::new(base, lambda).unwrap();
        let m = quad_integrate(
            |x| skew_pdf(&sp, x).unwrap_or(0.0),
            f64::NEG_INFINITY,
            f64::INFINITY,
            1e-11,
            &[0.0],
        )
        .map_err(|e| e.to_string())?;
        worst_mass = worst_mass.max((m.value - 1.0).abs());
    }
    let flat = SkewParams::new(base, 0.0).unwrap();
    let worst_reduction = (-400..=400)
        .map(|i| 0.05 * f64::from(i) + 0.001)
        .map(|x| (skew_pdf(&flat, x).unwrap() - base.pdf(x).unwrap()).abs())
        .fold(0.0, f64::max);
    let sp = SkewParams::new(base, 2.0).unwrap();
    let xs = SampleStream::new(base, 77)
        .take_skew_samples(100_000, 2.0)
        .map_err(|e| e.to_string())?;
    let d = ks_statistic_batch(&xs, |s| skew_cdf_many(&sp, s)).map_err(|e| e.to_string())?;
    require(
        worst_mass <= 1e-7 && worst_reduction <= 1e-12 && d < ks_critical(xs.len()),
        format!(
            "max |mass - 1| = {worst_mass:.2e}, reduction {worst_reduction:.2e}, \
             KS {d:.4} vs {:.5}",
            ks_critical(xs.len())
        ),
    )
}

fn fitting() -> Outcome {
    let truth = SkdParams::new(2.0, 3.0, 1.0, 0.0).unwrap();
    let xs = SampleStream::new(truth, 1).take_samples(100_000);
    let mom = fit_mom(&xs).map_err(|e| e.to_string())?;
    let fit = fit_mle(&xs, &mom.params).map_err(|e| e.to_string())?;
    let p = fit.params;
    let ll_truth = log_likelihood_of(&truth, &xs);
    // The location is zero, so it is held to 10% of the unit scale 1/δ.
    let close = rel(p.alpha(), 2.0) <= 0.1
        && rel(p.zeta(), 3.0) <= 0.1
        && rel(p.delta(), 1.0) <= 0.1
        && p.gamma_loc().abs() <= 0.1;
    require(
        close && fit.objective >= ll_truth - 2.0,
        format!(
            "fit ({:.4}, {:.4}, {:.4}, {:.4}), ll - ll_truth = {:.3}",
            p.alpha(),
            p.zeta(),
            p.delta(),
            p.gamma_loc(),
            fit.objective - ll_truth
        ),
    )
}

fn special_functions() -> Outcome {
    let k0 = bessel_k(0.0, 2.0).map_err(|e| e.to_string())?;
    let khalf = bessel_k(0.5, 1.0).map_err(|e| e.to_string())?;
    let f21 = hyp_2f1(1.0, 1.0, 2.0, 0.5)
        .map_err(|e| e.to_string())?
        .value;
    let errs = [
        (k0 - 0.113_893_872_749_533_43).abs(),
        (khalf - (PI / 2.0).sqrt() * (-1.0f64).exp()).abs(),
        (f21 - 2.0 * LN_2).abs(),
    ];
    require(
        errs.iter().all(|&e| e <= 1e-9),
        format!("errors {:.1e}, {:.1e}, {:.1e}", errs[0], errs[1], errs[2]),
    )
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &[
            "sample", "--alpha", "2", "--zeta", "3", "--count", "1000", "--seed", "42",
        ],
        &[
            "sample", "--alpha", "2", "--zeta", "2", "--count", "200", "--seed", "7", "--lambda",
            "1.5",
        ],
        &[
            "tabulate", "--alpha", "0.6", "--zeta", "2.5", "--lo", "-10", "--hi", "10", "--n",
            "41", "--format", "json",
        ],
        &[
            "prodratio",
            "--alpha",
            "2",
            "--zeta",
            "3",
            "--lo",
            "-5",
            "--hi",
            "5",
            "--n",
            "11",
        ],
    ];
    for args in runs {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_skdist"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        if a.status.code() != Some(0) || a.stdout != b.stdout || a.stdout.is_empty() {
            return Err(format!("outputs differ or failed for {args:?}"));
        }
    }
    Ok(format!(
        "{} invocations repeated bit-identically",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("normalization", normalization),
        ("cdf median", median),
        ("moments", moments),
        ("cumulant identity", cumulants),
        ("sampler", sampler),
        ("order statistics", order_statistics),
        ("product law", product_law),
        ("ratio law", ratio_law),
        ("skew law", skew_law),
        ("fitting round trip", fitting),
        ("special functions", special_functions),
        ("cli determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
