//! wasm-bindgen exports for the demo page in `www/`.
//!
//! Every function returns plain numbers or a `Vec<f64>`; failures become
//! JS exceptions carrying the library's message.

use qfn::fading::{outage, FadingModel, OutageQuery, OutageRoute};
use qfn::ilhi::{ilhi_bounds, ilhi_eval, IlhiQuery};
use qfn::nuttall::{nuttall_eval, nuttall_trunc_bound, nuttall_upper, NuttallQuery};
use qfn::rice::{rice_ie_bounds, rice_ie_eval, RiceIeQuery};
use qfn::toronto::{toronto_bounds, toronto_eval, TorontoQuery};
use qfn::{oracle, Method};
use wasm_bindgen::prelude::*;

fn js(e: impl ToString) -> JsError {
    JsError::new(&e.to_string())
}

fn method(name: &str) -> Result<Method, JsError> {
    Method::parse(name).ok_or_else(|| js(format!("unknown method '{name}'")))
}

/// Evaluates `func` (nuttall, toronto, rice-ie, ilhi) by `route`.
/// Returns `[value, oracle, est_error]`. Unused parameters are ignored.
#[wasm_bindgen]
pub fn evaluate(func: &str, route: &str, p1: f64, p2: f64, p3: f64, p4: f64) -> Result<Vec<f64>, JsError> {
    let m = method(route)?;
    let (r, o) = match func {
        "nuttall" => (nuttall_eval(&NuttallQuery::new(p1, p2, p3, p4), m, 20), oracle::nuttall(p1, p2, p3, p4)),
        "toronto" => (toronto_eval(&TorontoQuery::new(p1, p2, p3, p4), m, 20), oracle::toronto(p1, p2, p3, p4)),
        "rice-ie" => (rice_ie_eval(&RiceIeQuery::new(p1, p2), m, 20), oracle::rice_ie(p1, p2)),
        "ilhi" => (ilhi_eval(&IlhiQuery::new(p1, p2, p3, p4), m, 30), oracle::ilhi(p1, p2, p3, p4)),
        _ => return Err(js(format!("unknown function '{func}'"))),
    };
    let r = r.map_err(js)?;
    Ok(vec![r.value, o.map_err(js)?, r.est_error])
}

/// `[lower, oracle, upper]` for `func`. Nuttall has no lower bound, so its
/// first entry is the truncation bound at p = 20 instead.
#[wasm_bindgen]
pub fn bracket(func: &str, p1: f64, p2: f64, p3: f64, p4: f64) -> Result<Vec<f64>, JsError> {
    let (iv, o) = match func {
        "nuttall" => {
            let q = NuttallQuery::new(p1, p2, p3, p4);
            let o = oracle::nuttall(p1, p2, p3, p4).map_err(js)?;
            return Ok(vec![nuttall_trunc_bound(&q, 20).map_err(js)?, o, nuttall_upper(&q).map_err(js)?]);
        }
        "toronto" => (toronto_bounds(&TorontoQuery::new(p1, p2, p3, p4)), oracle::toronto(p1, p2, p3, p4)),
        "rice-ie" => (rice_ie_bounds(&RiceIeQuery::new(p1, p2)), oracle::rice_ie(p1, p2)),
        "ilhi" => (ilhi_bounds(&IlhiQuery::new(p1, p2, p3, p4)), oracle::ilhi(p1, p2, p3, p4)),
        _ => return Err(js(format!("unknown function '{func}'"))),
    };
    let iv = iv.map_err(js)?;
    Ok(vec![iv.lo, o.map_err(js)?, iv.hi])
}

/// Outage probability curve: `points` thresholds evenly spaced in dB over
/// `[lo_db, hi_db]`, for the named model with shape parameters `(s1, s2)` and
/// `alpha` (ignored by the models without one).
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn outage_curve(
    model: &str,
    alpha: f64,
    s1: f64,
    s2: f64,
    gamma_bar_db: f64,
    lo_db: f64,
    hi_db: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    let m = match model {
        "eta-mu" => FadingModel::AlphaEtaMu { alpha, eta: s1, mu: s2 },
        "lambda-mu" => FadingModel::AlphaLambdaMu { alpha, lambda: s1, mu: s2 },
        "kappa-mu" => FadingModel::AlphaKappaMu { alpha, kappa: s1, mu: s2 },
        "rician" => FadingModel::Rician { n: s1 },
        _ => return Err(js(format!("unknown model '{model}'"))),
    };
    if !(2..=2000).contains(&points) {
        return Err(js("points must be between 2 and 2000"));
    }
    let lin = |db: f64| 10f64.powf(db / 10.0);
    (0..points)
        .map(|i| {
            let db = lo_db + (hi_db - lo_db) * i as f64 / (points - 1) as f64;
            outage(&OutageQuery::new(m, lin(gamma_bar_db), lin(db)), OutageRoute::Analytic).map_err(js)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports_run_natively() {
        let v = evaluate("rice-ie", "series", 0.0, 1.0, 0.0, 0.0).unwrap();
        assert!((v[0] - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        let b = bracket("rice-ie", 0.6, 0.4, 0.0, 0.0).unwrap();
        assert!(b[0] < b[1] && b[1] < b[2]);
        let c = outage_curve("eta-mu", 2.0, 0.5, 1.0, 10.0, -10.0, 20.0, 31).unwrap();
        assert!(c.windows(2).all(|w| w[0] <= w[1]));
    }
}
