use proptest::prelude::*;
use qfn::capacity::{optimal_cutoff_rician, RicianChannel};
use qfn::fading::{outage, FadingModel, OutageQuery, OutageRoute};
use qfn::identities::check_kdf_toronto;
use qfn::ilhi::{ilhi_halfint, ilhi_series, IlhiQuery};
use qfn::nuttall::{nuttall_series, NuttallQuery};
use qfn::rice::{rice_ie_bounds, rice_ie_series, RiceIeQuery};
use qfn::toronto::{toronto_marcum_special, toronto_series, TorontoQuery};
use qfn::Error;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn nuttall_decreases_in_b(m in 0.0..4.0f64, n in 0.0..3.0f64, a in 0.0..4.0f64, b in 0.05..5.0f64, db in 0.01..1.0f64) {
        let hi = nuttall_series(&NuttallQuery::new(m, n, a, b), 1e-16).unwrap().value;
        let lo = nuttall_series(&NuttallQuery::new(m, n, a, b + db), 1e-16).unwrap().value;
        prop_assert!(lo <= hi * (1.0 + 1e-14));
    }

    #[test]
    fn toronto_marcum_case(m in 0.0..6.0f64, r in 0.0..3.0f64, b in 0.05..5.0f64) {
        let t = toronto_series(&TorontoQuery::new(m, 0.5 * (m - 1.0).max(-0.5), r, b), 1e-16).unwrap().value;
        prop_assume!(m >= 1.0);
        let p = toronto_marcum_special(m, r, b).unwrap();
        prop_assert!((t - p).abs() < 1e-12, "{} vs {}", t, p);
        prop_assert!((-1e-15..=1.0 + 1e-15).contains(&t));
    }

    #[test]
    fn rice_bounds_contain_value(k in 0.01..0.99f64, x in 0.05..20.0f64) {
        let q = RiceIeQuery::new(k, x);
        let v = rice_ie_series(&q, 1e-16).unwrap().value;
        let iv = rice_ie_bounds(&q).unwrap();
        prop_assert!(iv.lo <= v * (1.0 + 1e-12) && v <= iv.hi * (1.0 + 1e-12), "{:?} {}", iv, v);
    }

    #[test]
    fn ilhi_halfint_agrees_with_series(m in -0.4..4.0f64, j in 0u32..4, a in 0.2..4.0f64, x in 0.05..8.0f64) {
        let n = j as f64 - 0.5;
        prop_assume!(m > n - 1.0);
        let q = IlhiQuery::new(m, n, a, x);
        let s = ilhi_series(&q, 1e-16).unwrap().value;
        // a cancelling closed form must refuse rather than answer badly
        match ilhi_halfint(&q) {
            Ok(h) => prop_assert!((s - h.value).abs() <= 1e-9 * s.abs(), "{:?}: {} vs {}", q, s, h.value),
            Err(e) => prop_assert!(matches!(e, Error::LossOfSignificance(_)), "{}", e),
        }
    }

    #[test]
    fn outage_is_a_cdf(eta in 0.1..5.0f64, mu in 0.5..3.0f64, alpha in 1.0..3.0f64, g in 0.01..10.0f64, dg in 0.01..2.0f64) {
        prop_assume!((eta - 1.0).abs() > 1e-3);
        let m = FadingModel::AlphaEtaMu { alpha, eta, mu };
        let p1 = outage(&OutageQuery::new(m, 1.0, g), OutageRoute::Analytic).unwrap();
        let p2 = outage(&OutageQuery::new(m, 1.0, g + dg), OutageRoute::Analytic).unwrap();
        prop_assert!((0.0..=1.0).contains(&p1));
        prop_assert!(p1 <= p2 + 1e-14);
    }

    #[test]
    fn eta_lambda_duality(lambda in -0.95..0.95f64, mu in 0.5..3.0f64, g in 0.05..5.0f64) {
        prop_assume!(lambda.abs() > 1e-3);
        let eta = (1.0 - lambda) / (1.0 + lambda);
        let a = outage(&OutageQuery::new(FadingModel::LambdaMu { lambda, mu }, 1.0, g), OutageRoute::Analytic).unwrap();
        let b = outage(&OutageQuery::new(FadingModel::EtaMu { eta, mu }, 1.0, g), OutageRoute::Analytic).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn kdf_toronto_identity(a in 0.3..3.0f64, b in 0.3..3.0f64, x in 0.05..4.0f64, y in 0.2..4.0f64) {
        let r = check_kdf_toronto(a, b, x, y).unwrap();
        prop_assert!(r.residual < 1e-10, "{:?}", r);
    }

    #[test]
    fn siso_cutoff_condition(n in 0.0..4.0f64, db in -10.0..20.0f64) {
        let ch = RicianChannel::new(n, 10f64.powf(db / 10.0), 1.0);
        let (g0, res) = optimal_cutoff_rician(&ch).unwrap();
        prop_assert!(g0 > 0.0 && g0 < 1.0);
        prop_assert!(res <= 1e-8);
    }
}
