//! Property tests for the contract invariants that hold over whole input
//! families rather than single examples.

use minkgarch::garch::{variance_filter, GarchParams};
use minkgarch::minkowski::{
    classify_regime, extract_shock, in_cone, metric_flow, signed_variance, MetricParams,
    REGIME_TOL,
};
use minkgarch::series::{
    log_returns, moments, parse_price_csv, PriceSeries, ReturnKind, ReturnSeries, Timestamp,
};
use minkgarch::stylized::{dark_root, fit_power_law, minkowski_embedding, rotate_hyperbola, AcfCurve};
use proptest::prelude::*;

fn price_series(prices: Vec<f64>) -> PriceSeries {
    let ts = (0..prices.len())
        .map(|i| Timestamp::parse(&format!("{:04}-{:02}-{:02}", 2000 + i / 372, 1 + (i / 31) % 12, 1 + i % 31)).unwrap())
        .collect();
    PriceSeries::new(ts, prices).unwrap()
}

fn garch_params() -> impl Strategy<Value = GarchParams> {
    (1e-4..1.0f64, 0.0..0.5f64, 0.0..0.5f64)
        .prop_map(|(k, a, b)| GarchParams::new(k, a, b).unwrap())
}

fn metric_params() -> impl Strategy<Value = MetricParams> {
    (1e-4..1.0f64, 0.0..0.5f64, 0.0..0.49f64)
        .prop_map(|(a0, a1, b)| MetricParams::new(a0, a1, b).unwrap())
}

proptest! {
    #[test]
    fn log_returns_are_scale_invariant(
        prices in prop::collection::vec(0.01..1e4f64, 2..40),
        c in 0.01..100.0f64,
    ) {
        let base = log_returns(&price_series(prices.clone())).unwrap();
        let scaled = log_returns(&price_series(prices.iter().map(|p| c * p).collect())).unwrap();
        for (a, b) in base.values.iter().zip(&scaled.values) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn moments_are_translation_covariant(
        values in prop::collection::vec(-10.0..10.0f64, 4..60),
        shift in -5.0..5.0f64,
    ) {
        let base = ReturnSeries::from_values(values.clone(), ReturnKind::Log);
        let shifted = ReturnSeries::from_values(
            values.iter().map(|v| v + shift).collect(),
            ReturnKind::Log,
        );
        // constant input makes both sides reject; nothing to compare then
        if let (Ok(a), Ok(b)) = (moments(&base), moments(&shifted)) {
            prop_assert!((b.mean - (a.mean + shift)).abs() < 1e-9);
            prop_assert!((b.variance - a.variance).abs() < 1e-9 * a.variance.max(1.0));
            prop_assert!((b.fourth_moment - a.fourth_moment).abs() < 1e-8 * a.fourth_moment.max(1.0));
            prop_assert!((b.excess_kurtosis - a.excess_kurtosis).abs() < 1e-6);
        }
    }

    #[test]
    fn price_csv_round_trips(prices in prop::collection::vec(0.01..1e6f64, 1..30)) {
        let series = price_series(prices);
        let parsed = parse_price_csv(&series.to_csv_string()).unwrap();
        prop_assert_eq!(series, parsed);
    }

    #[test]
    fn mu4_dominates_variance_squared(values in prop::collection::vec(-10.0..10.0f64, 4..60)) {
        if let Ok(m) = moments(&ReturnSeries::from_values(values, ReturnKind::Log)) {
            prop_assert!(m.fourth_moment >= m.variance * m.variance * (1.0 - 1e-12));
        }
    }

    #[test]
    fn variance_path_stays_positive(
        params in garch_params(),
        returns in prop::collection::vec(-5.0..5.0f64, 0..80),
        sigma0 in 1e-8..10.0f64,
    ) {
        let r = ReturnSeries::from_values(returns, ReturnKind::Log);
        let path = variance_filter(&r, &params, sigma0).unwrap();
        prop_assert_eq!(path.values.len(), r.len() + 1);
        prop_assert!(path.values.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn metric_flow_reduces_to_variance_filter(
        params in garch_params(),
        returns in prop::collection::vec(-5.0..5.0f64, 1..60),
        sigma0 in 1e-8..10.0f64,
    ) {
        let mp = MetricParams::new(params.kappa(), params.alpha(), params.beta()).unwrap();
        let shocks: Vec<f64> = returns.iter().map(|r| r * r).collect();
        let r = ReturnSeries::from_values(returns, ReturnKind::Log);
        let garch_path = variance_filter(&r, &params, sigma0).unwrap();
        let metric_path = metric_flow(&shocks, &mp, sigma0).unwrap();
        for (a, b) in garch_path.values.iter().zip(&metric_path.g_values) {
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn metric_flow_round_trips_shocks(
        params in metric_params().prop_filter("alpha1 > 0", |p| p.alpha1() > 1e-3),
        shocks in prop::collection::vec(0.0..10.0f64, 1..60),
        g0 in -2.0..2.0f64,
    ) {
        let path = metric_flow(&shocks, &params, g0).unwrap();
        for t in 1..path.len() {
            let eps = extract_shock(path.g_values[t], path.g_values[t - 1], &params).unwrap();
            prop_assert!((eps - shocks[t - 1]).abs() < 1e-10 * shocks[t - 1].max(1.0));
        }
    }

    #[test]
    fn positive_start_never_goes_dark(
        params in metric_params(),
        shocks in prop::collection::vec(0.0..10.0f64, 0..80),
        g0 in 1e-6..5.0f64,
    ) {
        let path = metric_flow(&shocks, &params, g0).unwrap();
        prop_assert!(path.g_values.iter().all(|&g| g > 0.0));
    }

    #[test]
    fn flow_is_bounded_below_by_the_shockless_iterate(
        params in metric_params(),
        shocks in prop::collection::vec(0.0..10.0f64, 1..60),
    ) {
        // from g0 = -1: g[t] >= (alpha0/(1-beta))·(1-beta^t) - beta^t
        let path = metric_flow(&shocks, &params, -1.0).unwrap();
        let (a0, b) = (params.alpha0(), params.beta());
        for (t, &g) in path.g_values.iter().enumerate() {
            let bound = (a0 / (1.0 - b)) * (1.0 - b.powi(t as i32)) - b.powi(t as i32);
            prop_assert!(g >= bound - 1e-10, "g[{t}] = {g} below {bound}");
        }
        // and stepwise: g[t] >= alpha0 + beta·g[t-1]
        for t in 1..path.len() {
            prop_assert!(path.g_values[t] >= a0 + b * path.g_values[t - 1] - 1e-12);
        }
    }

    #[test]
    fn signed_variance_is_homogeneous(
        g in -10.0..10.0f64,
        x_sq in 0.0..100.0f64,
        c in 0.0..10.0f64,
    ) {
        let lhs = signed_variance(g, c * x_sq).value;
        let rhs = c * signed_variance(g, x_sq).value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn regimes_match_their_g(values in prop::collection::vec(-3.0..3.0f64, 1..40)) {
        let path = minkgarch::MetricPath::from_g_values(values);
        for (g, r) in path.g_values.iter().zip(&path.regimes) {
            prop_assert_eq!(r.kind, classify_regime(*g, REGIME_TOL).kind);
            prop_assert_eq!(r.g, *g);
        }
    }

    #[test]
    fn cone_construction_lands_on_the_cone(
        d in -10.0..10.0f64,
        s in -10.0..10.0f64,
        k in 0.01..10.0f64,
    ) {
        let check = in_cone((d + k.sqrt(), s), (d, s), k);
        prop_assert!(check.on_cone, "residual {}", check.residual);
    }

    #[test]
    fn rotation_identity_and_isometry(x in -10.0..10.0f64, x_star in -10.0..10.0f64) {
        let (u, v) = rotate_hyperbola(x, x_star);
        prop_assert!((u * u - v * v - 2.0 * x * x_star).abs() < 1e-12);
        prop_assert!((u * u + v * v - (x * x + x_star * x_star)).abs() < 1e-12);
    }

    #[test]
    fn exact_power_laws_recover_and_embed(
        c in 0.05..5.0f64,
        beta in 0.05..0.9f64,
    ) {
        let lags: Vec<usize> = (1..=40).collect();
        let values: Vec<f64> = lags.iter().map(|&t| c * (t as f64).powf(-beta)).collect();
        let curve = AcfCurve { lags, values };
        let fit = fit_power_law(&curve).unwrap();
        prop_assert!((fit.c - c).abs() < 1e-10 * c);
        prop_assert!((fit.beta - beta).abs() < 1e-10);
        let emb = minkowski_embedding(&curve, &fit, true).unwrap();
        for p in &emb.points {
            prop_assert!((p.x * p.x_star - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn dark_roots_are_opposite(mu4 in 0.1..100.0f64, kurt in 0.01..30.0f64) {
        match dark_root(mu4, kurt) {
            Ok(r) => {
                prop_assert_eq!(r.plus, -r.minus);
                prop_assert!(r.plus >= 0.0);
            }
            Err(_) => prop_assert!(mu4 / kurt - 3.0 < 0.0),
        }
    }
}
