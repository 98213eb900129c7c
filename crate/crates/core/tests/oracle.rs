use skdist_core::oracle::{
    integrate_against_pdf, ks_critical, ks_statistic, product_pdf_reference, quad_integrate,
    ratio_pdf_reference, selfcheck, standard_grid,
};
use skdist_core::{OracleReport, PairLaw, SkdParams};

#[test]
fn quadrature_examples() {
    let e = quad_integrate(|t| (-t).exp(), 0.0, f64::INFINITY, 1e-13, &[]).unwrap();
    assert!((e.value - 1.0).abs() < 1e-12);
    assert!(e.abs_error_estimate <= 1e-13);

    let s = quad_integrate(|t| 1.0 / t.sqrt(), 0.0, 1.0, 1e-12, &[0.0]).unwrap();
    assert!((s.value - 2.0).abs() < 1e-10);

    let p = SkdParams::new(2.0, 3.0, 1.0, 0.0).unwrap();
    let m = quad_integrate(
        |x| p.pdf(x).unwrap(),
        f64::NEG_INFINITY,
        f64::INFINITY,
        1e-12,
        &[0.0],
    )
    .unwrap();
    assert!((m.value - 1.0).abs() < 1e-8);

    assert!(quad_integrate(|t| t, 0.0, 1.0, 0.0, &[]).is_err());
}

#[test]
fn integration_in_offset_coordinates() {
    let p = SkdParams::new(0.6, 0.6, 4.0, 3.0).unwrap();
    let m =
        integrate_against_pdf(&p, |_| 1.0, f64::NEG_INFINITY, f64::INFINITY, 1e-12, 0.0).unwrap();
    assert!((m.value - 1.0).abs() < 1e-8);
    let mean =
        integrate_against_pdf(&p, |x| x, f64::NEG_INFINITY, f64::INFINITY, 1e-12, 0.0).unwrap();
    assert!((mean.value - 3.0).abs() < 1e-8);
}

#[test]
fn ks_examples() {
    let p = SkdParams::new(2.0, 3.0, 1.0, 0.0).unwrap();
    let point_mass = vec![0.0; 1_000];
    assert_eq!(ks_statistic(&point_mass, |x| p.cdf(x)).unwrap(), 0.5);
    assert!(ks_statistic(&[0.0; 5], |x| p.cdf(x)).is_err());
    assert!((ks_critical(10_000) - 0.0195).abs() < 1e-15);
}

#[test]
fn product_reference() {
    let law = PairLaw::new(1.0, 1.0, 1.0).unwrap();
    let v = product_pdf_reference(&law, 1.0).unwrap();
    assert!(v.is_finite() && v > 0.0);
    assert_eq!(v, product_pdf_reference(&law, -1.0).unwrap());

    let law = PairLaw::new(2.0, 3.0, 1.0).unwrap();
    let half = quad_integrate(
        |z| product_pdf_reference(&law, z).unwrap(),
        0.0,
        f64::INFINITY,
        1e-7,
        &[0.0, 1.0],
    )
    .unwrap();
    assert!((2.0 * half.value - 1.0).abs() < 1e-5, "{}", half.value);
}

#[test]
fn ratio_reference() {
    let law = PairLaw::new(1.0, 2.0, 1.0).unwrap();
    let wide = PairLaw::new(1.0, 2.0, 4.0).unwrap();
    for z in [0.3, 1.0, 5.0] {
        let r = ratio_pdf_reference(&law, z).unwrap();
        assert_eq!(r, ratio_pdf_reference(&law, -z).unwrap());
        let inv = ratio_pdf_reference(&law, 1.0 / z).unwrap() / (z * z);
        assert!((r - inv).abs() < 1e-7);
        assert!((r - ratio_pdf_reference(&wide, z).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn standard_grid_covers_every_pair() {
    let grid = standard_grid();
    assert_eq!(grid.len(), 36);
    let shapes = [0.6, 1.0, 2.5, 6.0];
    for a in shapes {
        for b in shapes {
            assert!(
                grid.iter().any(|p| p.alpha() == a && p.zeta() == b),
                "({a}, {b})"
            );
        }
    }
}

#[test]
fn report_pass_rule() {
    assert!(OracleReport::new("abs", 1e-12, 0.0, 1e-10).pass);
    assert!(OracleReport::new("rel", 1e6 + 1.0, 1e6, 1e-5).pass);
    let r = OracleReport::new("fail", 1.1, 1.0, 1e-3);
    assert!(!r.pass && r.is_unexpected_failure());
    assert!(!r.with_errata("known").is_unexpected_failure());
}

#[test]
fn selfcheck_passes_apart_from_errata() {
    let reports = selfcheck();
    assert!(reports.len() > 300);
    let unexpected: Vec<_> = reports
        .iter()
        .filter(|r| r.is_unexpected_failure())
        .collect();
    assert!(unexpected.is_empty(), "{unexpected:#?}");
    assert!(reports.iter().any(|r| r.errata.is_some() && !r.pass));
    for r in &reports {
        assert_eq!(
            r.pass,
            r.abs_err <= r.tolerance || r.rel_err <= r.tolerance,
            "{}",
            r.name
        );
    }
}
