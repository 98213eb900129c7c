use skdist_core::oracle::{
    empirical_cdf, product_pdf_reference, quad_integrate, ratio_pdf_reference,
};
use skdist_core::product_ratio::{
    product_cdf, product_pdf, ratio_cdf, ratio_pdf, ratio_pdf_eval, ratio_pdf_meijer, verbatim,
};
use skdist_core::{Method, PairLaw, SampleStream, SkdError, SkdParams};

fn law(a: f64, z: f64, d: f64) -> PairLaw {
    PairLaw::new(a, z, d).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn pairs(l: &PairLaw, seed: u64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut s = SampleStream::new(l.marginal(), seed);
    (0..n).map(|_| (s.sample(), s.sample())).unzip()
}

#[test]
fn requires_zero_location() {
    let shifted = SkdParams::new(2.0, 3.0, 1.0, 0.5).unwrap();
    assert!(matches!(
        PairLaw::from_params(&shifted),
        Err(SkdError::Unsupported(_))
    ));
    let centred = SkdParams::new(2.0, 3.0, 1.0, 0.0).unwrap();
    let l = PairLaw::from_params(&centred).unwrap();
    assert_eq!((l.alpha(), l.zeta(), l.delta()), (2.0, 3.0, 1.0));
    assert_eq!(l.marginal(), centred);
}

#[test]
fn product_pdf_is_even_and_singular_at_zero() {
    let l = law(2.0, 3.0, 1.5);
    for z in [0.3, 1.0, 4.0] {
        assert_eq!(product_pdf(&l, z).unwrap(), product_pdf(&l, -z).unwrap());
    }
    assert!(matches!(
        product_pdf(&l, 0.0),
        Err(SkdError::Singularity { .. })
    ));
}

#[test]
fn product_pdf_matches_convolution() {
    for l in [law(1.0, 1.0, 1.0), law(2.0, 3.0, 1.0), law(0.8, 2.5, 2.0)] {
        for z in [0.25, 1.0, 3.0] {
            let a = product_pdf(&l, z).unwrap();
            let b = product_pdf_reference(&l, z).unwrap();
            assert!(
                (a - b).abs() < 1e-5 && rel(a, b) < 1e-8,
                "{l:?} z={z}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn product_mass_and_second_moment() {
    for l in [law(1.0, 1.0, 1.0), law(2.0, 3.0, 1.0), law(0.8, 2.5, 2.0)] {
        let half = quad_integrate(
            |z| product_pdf(&l, z).unwrap(),
            0.0,
            f64::INFINITY,
            1e-10,
            &[0.0, 1.0],
        )
        .unwrap();
        assert!((2.0 * half.value - 1.0).abs() < 1e-6, "{l:?}");
        let var = l.marginal().variance();
        let m2 = quad_integrate(
            |z| z * z * product_pdf(&l, z).unwrap(),
            0.0,
            f64::INFINITY,
            1e-8 * var * var,
            &[0.0, 1.0],
        )
        .unwrap();
        assert!(rel(2.0 * m2.value, var * var) < 1e-4, "{l:?}");
    }
}

#[test]
fn product_cdf_properties() {
    let l = law(2.0, 3.0, 1.0);
    assert_eq!(product_cdf(&l, 0.0).unwrap(), 0.5);
    for z in [0.5, 2.0] {
        let s = product_cdf(&l, z).unwrap() + product_cdf(&l, -z).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
    }
    for z in [0.2, 1.0, 7.0] {
        let head = quad_integrate(|t| product_pdf(&l, t).unwrap(), 0.0, z, 1e-12, &[0.0]).unwrap();
        assert!(
            (product_cdf(&l, z).unwrap() - 0.5 - head.value).abs() < 1e-9,
            "z={z}"
        );
    }
    assert_eq!(product_cdf(&l, f64::INFINITY).unwrap(), 1.0);
    assert_eq!(product_cdf(&l, f64::NEG_INFINITY).unwrap(), 0.0);
}

#[test]
fn product_cdf_matches_monte_carlo() {
    let l = law(2.0, 3.0, 1.0);
    let (x, y) = pairs(&l, 21, 1_000_000);
    let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a * b).collect();
    for t in [-1.0, 0.5, 2.0] {
        let (emp, se) = empirical_cdf(&z, t);
        let exact = product_cdf(&l, t).unwrap();
        assert!((emp - exact).abs() < 3.0 * se, "z={t}: {emp} vs {exact}");
    }
}

#[test]
fn ratio_pdf_symmetries() {
    let l = law(1.7, 0.9, 3.0);
    for z in [0.5, 2.0] {
        assert_eq!(ratio_pdf(&l, z).unwrap(), ratio_pdf(&l, -z).unwrap());
    }
    let inv = ratio_pdf(&l, 0.5).unwrap() / 4.0;
    assert!((ratio_pdf(&l, 2.0).unwrap() - inv).abs() < 1e-8);
    for z in [0.03, 0.4, 1.0, 1.3, 8.0, 120.0] {
        let a = ratio_pdf(&l, z).unwrap();
        let b = ratio_pdf(&l, 1.0 / z).unwrap() / (z * z);
        assert!(rel(a, b) < 1e-8, "z={z}");
    }
    assert!(matches!(
        ratio_pdf(&l, 0.0),
        Err(SkdError::Singularity { .. })
    ));
}

#[test]
fn ratio_pdf_matches_convolution() {
    for d in [0.5, 1.0, 3.0] {
        let l = law(1.0, 2.0, d);
        for z in [0.3, 1.0, 5.0] {
            let a = ratio_pdf(&l, z).unwrap();
            let b = ratio_pdf_reference(&l, z).unwrap();
            assert!(
                (a - b).abs() < 1e-5 && rel(a, b) < 1e-8,
                "d={d} z={z}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn ratio_pdf_is_scale_free() {
    for (a, b) in [(1.0, 2.0), (2.0, 2.0), (0.7, 4.5)] {
        for z in [0.1, 0.9, 1.0, 2.5, 30.0] {
            let lo = ratio_pdf(&law(a, b, 0.5), z).unwrap();
            let hi = ratio_pdf(&law(a, b, 3.0), z).unwrap();
            assert!((lo - hi).abs() < 1e-9, "({a},{b}) z={z}");
        }
    }
}

#[test]
fn ratio_routes_agree() {
    for l in [law(1.0, 1.0, 1.0), law(2.0, 3.0, 1.0), law(0.8, 2.5, 2.0)] {
        for z in [0.2, 1.0, 4.0] {
            let primary = ratio_pdf_eval(&l, z).unwrap();
            assert_ne!(primary.method, Method::MellinBarnes);
            let meijer = ratio_pdf_meijer(&l, z).unwrap();
            assert_eq!(meijer.method, Method::MellinBarnes);
            assert!(rel(primary.value, meijer.value) < 1e-9, "{l:?} z={z}");
        }
    }
}

#[test]
fn ratio_cdf_properties() {
    let l = law(2.0, 2.0, 1.0);
    assert_eq!(ratio_cdf(&l, 0.0).unwrap(), 0.5);
    for z in [0.3, 1.0, 2.0, 9.0] {
        let s = ratio_cdf(&l, z).unwrap() + ratio_cdf(&l, -z).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
        let head =
            quad_integrate(|t| ratio_pdf(&l, t).unwrap(), 0.0, z, 1e-12, &[0.0, 1.0]).unwrap();
        assert!(
            (ratio_cdf(&l, z).unwrap() - 0.5 - head.value).abs() < 1e-9,
            "z={z}"
        );
    }
    assert!((ratio_cdf(&l, 1.0).unwrap() - 0.75).abs() < 1e-12);
}

#[test]
fn ratio_cdf_matches_monte_carlo() {
    let l = law(2.0, 2.0, 1.0);
    let (x, y) = pairs(&l, 22, 1_000_000);
    let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a / b).collect();
    for t in [-2.0, 0.7, 3.0] {
        let (emp, se) = empirical_cdf(&z, t);
        let exact = ratio_cdf(&l, t).unwrap();
        assert!((emp - exact).abs() < 3.0 * se, "z={t}: {emp} vs {exact}");
    }
}

#[test]
fn cdfs_are_monotone() {
    for l in [law(1.0, 1.0, 1.0), law(2.0, 3.0, 0.5), law(0.8, 2.5, 2.0)] {
        let (mut pp, mut pr) = (0.0, 0.0);
        for i in 0..200 {
            let z = -10.0 + 20.0 * f64::from(i) / 199.0;
            let cp = product_cdf(&l, z).unwrap();
            let cr = ratio_cdf(&l, z).unwrap();
            assert!(cp >= pp && cr >= pr, "{l:?} z={z}");
            assert!((0.0..=1.0).contains(&cp) && (0.0..=1.0).contains(&cr));
            pp = cp;
            pr = cr;
        }
    }
}

#[test]
fn uncorrected_forms() {
    // At unit scale the uncorrected product density coincides with the
    // corrected one; away from it the scale enters with the wrong power.
    let unit = law(2.0, 3.0, 1.0);
    for z in [0.25, 1.0, 3.0] {
        let a = verbatim::product_pdf(&unit, z).unwrap();
        assert!(rel(a, product_pdf(&unit, z).unwrap()) < 1e-9);
    }
    let scaled = law(0.8, 2.5, 2.0);
    let ratio = verbatim::product_pdf(&scaled, 1.0).unwrap() / product_pdf(&scaled, 1.0).unwrap();
    assert!(rel(ratio, 3.646) < 1e-3, "{ratio}");

    // The uncorrected ratio density is not normalized even at unit scale.
    let r = verbatim::ratio_pdf(&law(1.0, 1.0, 1.0), 1.0).unwrap()
        / ratio_pdf(&law(1.0, 1.0, 1.0), 1.0).unwrap();
    assert!(rel(r, 0.8) < 1e-6, "{r}");
}
