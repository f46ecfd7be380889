//! Verifiers for the limiting BMO inequalities and the gradient forms of the Lorentz bound.

use oscillkit::harness::{
    beta_interval, compare_i_j, der_gate, der_terms, verify_devore_der, verify_fs_limiting, BetaProfile, CompareConfig, DerConfig, Expectation, FsConfig,
    FunctionSpec, Shape, Verdict,
};
use oscillkit::{ClosedForm, Error, PowerLogTerm, RadialProfile};

#[test]
fn fs_limiting_holds_for_log_abs() {
    let cfg = FsConfig { f: FunctionSpec::new(Shape::LogAbs, 1), q: 2.0, b: -2.0, xi: -1.0, n: None, t_grid: None, beta_profile: None };
    let r = verify_fs_limiting(&cfg).unwrap();
    assert_eq!(r.verdict, Verdict::HoldsWithStableConstant, "{:?}", r.ratio);
    assert!(r.band_constant < 1.0 && r.band_lower > 0.1);
}

#[test]
fn fs_counterexample_left_side_keeps_growing() {
    let (q, b) = (2.0, -1.6);
    let (lo, hi) = beta_interval(q, b);
    assert!((lo - 0.1).abs() < 1e-12 && (hi - 1.1).abs() < 1e-12);
    let prof = BetaProfile { beta: None, t: (4..=8).map(|e| 10f64.powi(-e)).collect() };
    let cfg = FsConfig { f: FunctionSpec::new(Shape::LogAbs, 1), q, b, xi: 0.0, n: Some(256), t_grid: None, beta_profile: Some(prof) };
    let r = verify_fs_limiting(&cfg).unwrap();
    let c = &r.companions[0];
    assert_eq!(c.expectation, Expectation::Diverges);
    assert!((c.metric("beta").unwrap() - 0.85).abs() < 1e-12);
    assert!(c.metric("lhs_partial_sum_growth").unwrap() >= 2.0);
    assert!(c.metric("rhs_relative_change").unwrap() < 0.1);
}

#[test]
fn fs_rejects_positive_xi_and_nonnegative_b() {
    let f = FunctionSpec::new(Shape::LogAbs, 1);
    let pos = FsConfig { f: f.clone(), q: 2.0, b: -2.0, xi: 0.5, n: Some(64), t_grid: None, beta_profile: None };
    assert!(verify_fs_limiting(&pos).is_err());
    let flat = FsConfig { f, q: 2.0, b: 0.5, xi: -1.0, n: Some(64), t_grid: None, beta_profile: None };
    assert!(matches!(verify_fs_limiting(&flat), Err(Error::Gate(_))));
}

#[test]
fn gradient_bound_is_two_sided_on_the_extremal_family() {
    let prof = RadialProfile::integral(4.0, 2, PowerLogTerm::new(1.0, 0.0, -2.0, 0.0)).unwrap();
    let cfg = DerConfig { profile: prof, p: 4.0, q: 2.0, k: 1, n: Some(256), t_grid: None, domain: (-1.0, 1.0), two_sided: true };
    let r = verify_devore_der(&cfg).unwrap();
    assert_eq!(r.verdict, Verdict::HoldsWithStableConstant, "{:?}", r.ratio);
    assert!(r.band_lower > 0.05 && r.band_constant < 0.5);
}

#[test]
fn gradient_bound_gate() {
    // d = 1, p = 2: k = 1 is not below d(1 − 1/p) = 1/2
    assert!(matches!(der_gate(2.0, 2.0, 1, 1), Err(Error::Gate(_))));
    let prof = RadialProfile::term(PowerLogTerm::new(1.0, -0.25, 0.0, 0.0), 1, 1.0).unwrap();
    let cfg = DerConfig { profile: prof, p: 2.0, q: 2.0, k: 1, n: Some(64), t_grid: None, domain: (-1.0, 1.0), two_sided: false };
    assert!(matches!(verify_devore_der(&cfg), Err(Error::Gate(_))));
    // the endpoint k = d(1 − 1/p) is admitted only for q = 1
    assert!(der_gate(2.0, 1.0, 1, 2).is_ok());
    assert!(matches!(der_gate(2.0, 1.5, 1, 2), Err(Error::Gate(_))));
}

#[test]
fn gradient_terms_of_an_indicator() {
    // g = 1 on (0, 1): I(t) = (r/q)^{1/q} t^{1/r − 1/p}, J(t) = 1
    let g = ClosedForm::new(1.0, |_| 1.0);
    let (p, q) = (6.0, 1.0);
    let r = 2.0 * p / (2.0 + p);
    for t in [1e-1, 1e-3, 1e-5] {
        let (i, j) = der_terms(&g, p, q, 1, 2, t).unwrap();
        let expect = (r / q) * t.powf(1.0 / r - 1.0 / p);
        assert!((i / expect - 1.0).abs() < 1e-6, "{i} vs {expect}");
        assert!((j - 1.0).abs() < 1e-9);
    }
}

#[test]
fn modulus_bound_is_dominated_inside_the_range() {
    // d = 2, p = 4: d/p = 1/2 < k = 1 < d(1 − 1/p) = 3/2
    let prof = RadialProfile::term(PowerLogTerm::new(1.0, 0.0, 1.0, 0.0), 2, 1.0).unwrap();
    let cfg = CompareConfig {
        profile: Some(prof),
        p: 4.0,
        q: 1.0,
        k: 1,
        n: None,
        t_grid: None,
        domain: (-1.0, 1.0),
        caps: (1..=6).map(|e| 10f64.powi(-e)).collect(),
    };
    let r = compare_i_j(&cfg).unwrap();
    assert_eq!(r.theorem_id, "compare_modulus_gradient");
    assert_eq!(r.verdict, Verdict::HoldsWithStableConstant, "{:?}", r.ratio);
    assert_eq!(r.companions.len(), 2);
    assert!(r.all_consistent());
}
