//! Frozen high-precision values (see data/golden.py) against every route that applies.

use qfn::fading::{outage, FadingModel, OutageQuery, OutageRoute};
use qfn::ilhi::{ilhi_eval, ilhi_routes, IlhiQuery};
use qfn::kernel::marcum_q;
use qfn::nuttall::{nuttall_eval, NuttallQuery};
use qfn::rice::{rice_ie_eval, RiceIeQuery};
use qfn::toronto::{toronto_eval, toronto_routes, TorontoQuery};
use qfn::Method;

struct Row {
    func: String,
    p: [f64; 4],
    value: f64,
}

fn rows() -> Vec<Row> {
    include_str!("data/golden.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let n: Vec<f64> = f[1..].iter().map(|s| s.parse().unwrap()).collect();
            Row { func: f[0].to_string(), p: [n[0], n[1], n[2], n[3]], value: n[4] }
        })
        .collect()
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn select(func: &str) -> Vec<Row> {
    let v: Vec<Row> = rows().into_iter().filter(|r| r.func == func).collect();
    assert!(!v.is_empty());
    v
}

#[test]
fn nuttall_exact_routes() {
    for r in select("nuttall") {
        let [m, n, a, b] = r.p;
        let q = NuttallQuery::new(m, n, a, b);
        let mut routes = vec![Method::Series, Method::Oracle];
        if (m - n - 1.0).rem_euclid(2.0) == 0.0 && m > n {
            routes.push(Method::Kdf);
        }
        for method in routes {
            let v = nuttall_eval(&q, method, 20).unwrap().value;
            let tol = if method == Method::Oracle { 1e-10 } else { 1e-12 };
            assert!(rel(v, r.value) < tol, "{method} {:?}: {v} vs {}", r.p, r.value);
        }
    }
}

#[test]
fn toronto_exact_routes() {
    for r in select("toronto") {
        let [m, n, rr, b] = r.p;
        let q = TorontoQuery::new(m, n, rr, b);
        for method in toronto_routes(&q).into_iter().filter(|m| *m != Method::Poly) {
            let v = toronto_eval(&q, method, 20).unwrap().value;
            assert!(rel(v, r.value) < 1e-10, "{method} {:?}: {v} vs {}", r.p, r.value);
        }
    }
}

#[test]
fn rice_exact_routes() {
    for r in select("rice") {
        let q = RiceIeQuery::new(r.p[0], r.p[1]);
        for method in [Method::Series, Method::Humbert, Method::Oracle] {
            let v = rice_ie_eval(&q, method, 20).unwrap().value;
            assert!(rel(v, r.value) < 1e-11, "{method} {:?}: {v} vs {}", r.p, r.value);
        }
    }
}

#[test]
fn ilhi_exact_routes() {
    for r in select("ilhi") {
        let [m, n, a, x] = r.p;
        let q = IlhiQuery::new(m, n, a, x);
        for method in ilhi_routes(&q).into_iter().filter(|m| *m != Method::Poly) {
            let v = ilhi_eval(&q, method, 30).unwrap().value;
            assert!(rel(v, r.value) < 1e-10, "{method} {:?}: {v} vs {}", r.p, r.value);
        }
    }
}

#[test]
fn marcum_values() {
    for r in select("marcum") {
        let v = marcum_q(r.p[0], r.p[1], r.p[2]).unwrap();
        assert!(rel(v, r.value) < 1e-12, "{:?}: {v} vs {}", r.p, r.value);
    }
}

#[test]
fn eta_mu_outage() {
    for r in select("eta_mu_t") {
        let [eta, mu, t, _] = r.p;
        // α = 2, γ̄ = 1 gives t = γ_th; α = 3 with γ_th = t^{2/3} must agree
        let models = [
            (FadingModel::EtaMu { eta, mu }, t),
            (FadingModel::AlphaEtaMu { alpha: 3.0, eta, mu }, t.powf(2.0 / 3.0)),
            (FadingModel::LambdaMu { lambda: (1.0 - eta) / (1.0 + eta), mu }, t),
        ];
        for (model, g) in models {
            let q = OutageQuery::new(model, 1.0, g);
            for route in [OutageRoute::Analytic, OutageRoute::Oracle] {
                let v = outage(&q, route).unwrap();
                assert!(rel(v, r.value) < 1e-10, "{model} {route:?}: {v} vs {}", r.value);
            }
        }
    }
}

#[test]
fn kappa_mu_outage() {
    for r in select("kappa_mu_t") {
        let [kappa, mu, t, _] = r.p;
        let mut models = vec![(FadingModel::KappaMu { kappa, mu }, t), (FadingModel::AlphaKappaMu { alpha: 1.0, kappa, mu }, t * t)];
        if mu == 1.0 {
            models.push((FadingModel::Rician { n: kappa.sqrt() }, t));
        }
        for (model, g) in models {
            let q = OutageQuery::new(model, 1.0, g);
            for route in [OutageRoute::Analytic, OutageRoute::Oracle] {
                let v = outage(&q, route).unwrap();
                assert!(rel(v, r.value) < 1e-10, "{model} {route:?}: {v} vs {}", r.value);
            }
        }
    }
}
