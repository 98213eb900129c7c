//! Gamma function family.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result, SkdError};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Taylor coefficients of `1/Γ(1+z) = Σ RGAMMA_COEFFS[k] z^k`.
pub(crate) const RGAMMA_COEFFS: [f64; 30] = [
    1.0,
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -0.000_001_250_493_482_142_670_657,
    0.000_001_133_027_231_981_695_882,
    -2.056_338_416_977_607_103e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_510e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
    -1.181_259_301_697_458_770e-16,
    1.186_692_254_751_600_333e-18,
    1.412_380_655_318_031_782e-18,
    -2.298_745_684_435_370_207e-19,
    1.714_406_321_927_337_434e-20,
];

/// Stirling-series coefficients `B_{2k} / (2k (2k-1))`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `1/Γ(1+z) - 1` for `|z| <= 1/2`, without cancellation near zero.
fn rgamma1p_minus_one(z: f64) -> f64 {
    let mut acc = 0.0;
    for &c in RGAMMA_COEFFS[1..].iter().rev() {
        acc = acc * z + c;
    }
    acc * z
}

/// `1/Γ(1+z)` for `|z| <= 1/2`.
pub(crate) fn rgamma1p(z: f64) -> f64 {
    1.0 + rgamma1p_minus_one(z)
}

fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for &c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

/// Natural logarithm of the gamma function for positive `x`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(domain(format!("ln_gamma requires finite x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(1+x)/x keeps the argument inside the Taylor window.
        -(rgamma1p_minus_one(x)).ln_1p() - x.ln()
    } else if x <= 1.5 {
        -(rgamma1p_minus_one(x - 1.0)).ln_1p()
    } else if x <= 2.5 {
        let z = x - 2.0;
        z.ln_1p() - (rgamma1p_minus_one(z)).ln_1p()
    } else if x < 15.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        prod.ln() + ln_gamma_pos(y)
    } else {
        (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_tail(x)
    }
}

/// `sin(πx)` with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// The gamma function on the real line. Poles return `±∞`-free `NaN`-free
/// domain errors.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("gamma requires finite x, got {x}")));
    }
    if x > 0.0 {
        let v = ln_gamma_pos(x).exp();
        if v.is_infinite() {
            return Err(SkdError::Overflow("gamma"));
        }
        return Ok(v);
    }
    if x == x.floor() {
        return Err(domain(format!("gamma has a pole at {x}")));
    }
    // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
    let g1 = ln_gamma_pos(1.0 - x).exp();
    Ok(PI / (sin_pi(x) * g1))
}

/// Reciprocal gamma function, entire; zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        if x > 171.0 {
            return 0.0;
        }
        return (-ln_gamma_pos(x)).exp();
    }
    if x == x.floor() {
        return 0.0;
    }
    sin_pi(x) * ln_gamma_pos(1.0 - x).exp() / PI
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// `Γ(a+m)/Γ(a)` for real `m`, the analytic continuation of the rising
/// factorial to non-integer and negative subscripts.
pub fn pochhammer_real(a: f64, m: f64) -> Result<f64> {
    if m == m.floor() && (0.0..1e6).contains(&m) {
        return Ok(pochhammer(a, m as u32));
    }
    let top = a + m;
    if a > 0.0 && top > 0.0 {
        return Ok((ln_gamma_pos(top) - ln_gamma_pos(a)).exp());
    }
    let r = rgamma(a);
    if r == 0.0 {
        return Err(domain(format!("Γ({a}) is infinite")));
    }
    Ok(gamma(top)? * r)
}

/// Upper incomplete gamma function `Γ(a, x) = ∫_x^∞ t^{a-1} e^{-t} dt`.
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(domain(format!(
            "upper_incomplete_gamma requires a > 0, got {a}"
        )));
    }
    if !(x >= 0.0) {
        return Err(domain(format!(
            "upper_incomplete_gamma requires x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return gamma(a);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let log_prefix = a * x.ln() - x;
    if x < a + 1.0 {
        // Γ(a) - γ(a, x) with the lower function from its power series.
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut k = 1.0;
        loop {
            term *= x / (a + k);
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
            k += 1.0;
            if k > 10_000.0 {
                return Err(SkdError::Convergence {
                    routine: "upper_incomplete_gamma series",
                    estimate: sum,
                    error: term,
                });
            }
        }
        Ok(gamma(a)? - (log_prefix.exp() * sum))
    } else {
        // Modified Lentz evaluation of the Legendre continued fraction.
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        let mut i = 1.0;
        loop {
            let an = -i * (i - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
            i += 1.0;
            if i > 10_000.0 {
                return Err(SkdError::Convergence {
                    routine: "upper_incomplete_gamma continued fraction",
                    estimate: log_prefix.exp() * h,
                    error: (del - 1.0).abs(),
                });
            }
        }
        Ok(log_prefix.exp() * h)
    }
}

/// Log-gamma of a complex argument (principal value is not guaranteed;
/// the result is correct modulo `2πi`, which is all `exp` needs).
pub(crate) fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(LN_PI, 0.0)
            - s.ln()
            - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + acc * inv - shift
}
