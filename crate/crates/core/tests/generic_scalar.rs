use nonclassical::{
    critical_temperatures, d1_unitary, evolved_moments, squeezing_report, thermal_squeezing, witness_matrix, Complex,
    ModelParams, ModelParams64, Real, ValidatedParams,
};

fn build<T: Real>() -> ValidatedParams<T> {
    let c = |re: f64, im: f64| Complex::new(T::lit(re), T::lit(im));
    ModelParams::new(T::lit(1.0), c(0.1, -0.04), c(0.05, 0.02), c(0.3, 0.1)).validate().unwrap()
}

/// The pipeline quantities a user would read off, as f64.
fn summary<T: Real>() -> Vec<f64> {
    let v = build::<T>();
    let (t, theta) = (T::lit(1.3), T::lit(0.15));
    let m = evolved_moments(&v, t, 4);
    let th = thermal_squeezing(&v, theta).unwrap();
    vec![
        d1_unitary(&v, t).as_f64(),
        squeezing_report(&m, 2).unwrap().dk.as_f64(),
        th.d1.as_f64(),
        th.d2_zhang.as_f64(),
        witness_matrix(&v, theta).unwrap().det.as_f64(),
        critical_temperatures(&v).theta_star.unwrap().as_f64(),
    ]
}

#[test]
fn single_precision_tracks_double() {
    for (a, b) in summary::<f32>().iter().zip(summary::<f64>()) {
        assert!((a - b).abs() < 1e-5 * (1.0 + b.abs()), "{a} vs {b}");
    }
}

#[test]
fn params_round_trip_through_json() {
    let p: ModelParams64 = *build::<f64>().params();
    let text = serde_json::to_string(&p).unwrap();
    let back: ModelParams64 = serde_json::from_str(&text).unwrap();
    assert_eq!(p, back);
    let minimal: ModelParams64 = serde_json::from_str(r#"{"omega":2.0,"omega1":[0.1,0.0]}"#).unwrap();
    assert_eq!(minimal.omega2, Complex::new(0.0, 0.0));
    assert!(minimal.validate().is_ok());
}
