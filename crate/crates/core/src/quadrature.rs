//! Numerical integration kernels.
//!
//! `adaptive_gk` is a globally adaptive 21-point Gauss–Kronrod bisection
//! scheme. `tanh_sinh` and `exp_sinh` are double-exponential rules for finite
//! intervals with endpoint singularities and for half-infinite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

/// Result of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Integral {
    pub value: f64,
    pub error: f64,
    /// Integral of `|f|`, used to judge cancellation.
    pub abs_integral: f64,
    pub converged: bool,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_826_368_896,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

fn gk21(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = finite_or_zero(f(center));
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = finite_or_zero(f(center - dx));
        let f2 = finite_or_zero(f(center + dx));
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment {
        a,
        b,
        value,
        error,
        abs: resabs,
    }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Stops when the summed error estimate is at most
/// `max(abs_tol, rel_tol · |I|)` or after `max_segments` subintervals.
pub(crate) fn adaptive_gk(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            error: 0.0,
            abs_integral: 0.0,
            converged: true,
        };
    }
    let first = gk21(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    let mut frozen = Vec::new();
    heap.push(first);
    let mut count = 1;
    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let mut v = 0.0;
        let mut e = 0.0;
        let mut s = 0.0;
        for seg in heap.iter().chain(frozen.iter()) {
            v += seg.value;
            e += seg.error;
            s += seg.abs;
        }
        (v, e, s)
    };
    let (mut value, mut error, mut abs_integral) = (first.value, first.error, first.abs);
    loop {
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Integral {
                value,
                error,
                abs_integral,
                converged: true,
            };
        }
        if count >= max_segments {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let width = (worst.b - worst.a).abs();
        let scale = worst.a.abs().max(worst.b.abs()).max(f64::MIN_POSITIVE);
        if width <= 1e3 * f64::EPSILON * scale || mid == worst.a || mid == worst.b {
            frozen.push(worst);
            continue;
        }
        let left = gk21(&mut f, worst.a, mid);
        let right = gk21(&mut f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_integral += left.abs + right.abs - worst.abs;
        heap.push(left);
        heap.push(right);
        count += 1;
        if count % 64 == 0 {
            (value, error, abs_integral) = totals(&heap, &frozen);
        }
    }
    let (value, error, abs_integral) = totals(&heap, &frozen);
    Integral {
        value,
        error,
        abs_integral,
        converged: error <= abs_tol.max(rel_tol * value.abs()),
    }
}

const DE_TMAX: f64 = 4.5;
const DE_MAX_LEVEL: u32 = 10;
const DE_MIN_LEVEL: u32 = 3;

/// Evaluates a double-exponential rule level by level. `term(t)` returns
/// `w(t) f(x(t))` for the substitution being used.
fn de_levels(mut term: impl FnMut(f64) -> f64, tol: f64) -> Integral {
    let mut h = 1.0;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let k_max = DE_TMAX as i64;
    for k in -k_max..=k_max {
        let v = finite_or_zero(term(k as f64));
        sum += v;
        abs_sum += v.abs();
    }
    let mut prev = h * sum;
    let mut error = f64::INFINITY;
    for level in 1..=DE_MAX_LEVEL {
        h *= 0.5;
        let n = (DE_TMAX / h) as i64;
        let mut k = 1;
        while k <= n {
            let t = k as f64 * h;
            let a = finite_or_zero(term(t));
            let b = finite_or_zero(term(-t));
            sum += a + b;
            abs_sum += a.abs() + b.abs();
            k += 2;
        }
        let cur = h * sum;
        error = (cur - prev).abs();
        prev = cur;
        let floor = 10.0 * f64::EPSILON * h * abs_sum;
        if level >= DE_MIN_LEVEL && error <= (tol * cur.abs()).max(floor) {
            return Integral {
                value: cur,
                error: error.max(floor),
                abs_integral: h * abs_sum,
                converged: true,
            };
        }
    }
    Integral {
        value: prev,
        error,
        abs_integral: h * abs_sum,
        converged: false,
    }
}

/// Tanh-sinh quadrature of `f` over the finite interval `[a, b]`. Nodes are
/// placed by their offset from the nearer endpoint, so integrable endpoint
/// singularities are resolved without cancellation.
pub(crate) fn tanh_sinh(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            error: 0.0,
            abs_integral: 0.0,
            converged: true,
        };
    }
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let term = |t: f64| {
        let s = FRAC_PI_2 * t.sinh();
        let c = FRAC_PI_2 * t.cosh();
        let e = (-2.0 * s.abs()).exp();
        // 1 - tanh|s| and the weight sech²(s) · π/2 cosh t
        let comp = 2.0 * e / (1.0 + e);
        let w = c * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 {
            return 0.0;
        }
        let x = if t == 0.0 {
            center
        } else if t > 0.0 {
            b - half * comp
        } else {
            a + half * comp
        };
        w * f(x)
    };
    let mut r = de_levels(term, tol);
    r.value *= half;
    r.error *= half.abs();
    r.abs_integral *= half.abs();
    r
}

/// Exp-sinh quadrature of `f` over `[a, ∞)`. `scale` sets the length over
/// which the bulk of the integrand is expected to sit.
pub(crate) fn exp_sinh(mut f: impl FnMut(f64) -> f64, a: f64, scale: f64, tol: f64) -> Integral {
    let term = |t: f64| {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let w = scale * FRAC_PI_2 * t.cosh() * e;
        if !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        let v = f(a + scale * e);
        if v == 0.0 {
            0.0
        } else {
            w * v
        }
    };
    de_levels(term, tol)
}

/// Nodes and weights of the `n`-point Gauss–Laguerre rule for
/// `∫₀^∞ e^{-t} g(t) dt`.
fn laguerre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - x[i - 2])
            }
        };
        let mut pp = 1.0;
        let mut p2 = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
            }
            pp = (nf * p1 - nf * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        x[i] = z;
        w[i] = -1.0 / (pp * nf * p2);
    }
    (x, w)
}

pub(crate) fn laguerre_32() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| laguerre_rule(32))
}

pub(crate) fn laguerre_20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| laguerre_rule(20))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk_is_exact_for_high_degree_polynomials() {
        let r = adaptive_gk(|x| x.powi(30), -1.0, 1.0, 1e-14, 0.0, 1);
        assert!((r.value - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn gk_handles_endpoint_singularity() {
        let r = adaptive_gk(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-11, 1e-11, 2000);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let r = tanh_sinh(|x| x.powf(-0.8), 0.0, 1.0, 1e-13);
        assert!(r.converged);
        assert!((r.value - 5.0).abs() < 1e-11, "{}", r.value);
        let r = tanh_sinh(|x| (1.0 - x).ln(), 0.0, 1.0, 1e-13);
        assert!((r.value + 1.0).abs() < 1e-13);
    }

    #[test]
    fn exp_sinh_decaying_tail() {
        let r = exp_sinh(|x| (-x).exp(), 0.0, 1.0, 1e-13);
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = exp_sinh(|x| (-x).exp() * x.sqrt(), 3.0, 1.0, 1e-13);
        // Γ(3/2, 3)
        assert!(
            (r.value - 0.098_911_986_634_777_4).abs() < 1e-12,
            "{}",
            r.value
        );
    }

    #[test]
    fn laguerre_rules_integrate_polynomials() {
        for (rule, deg) in [(laguerre_20(), 39), (laguerre_32(), 63)] {
            let (x, w) = rule;
            let mut fact = 1.0f64;
            for k in 0..=deg {
                if k > 0 {
                    fact *= k as f64;
                }
                let s: f64 = x.iter().zip(w).map(|(t, wt)| wt * t.powi(k)).sum();
                assert!(((s - fact) / fact).abs() < 1e-11, "k={k}: {s} vs {fact}");
            }
        }
    }
}
