//! Rice Ie-function Ie(k,x) = ∫₀ˣ e^{−t} I₀(kt) dt, 0 ≤ k ≤ 1.

use crate::error::{domain, Error, Result};
use crate::hyper::humbert_phi1;
use crate::kernel::{gaussian_q, i_scaled, ln_gamma_pos, ln_lower_inc_gamma};
use crate::nuttall::gross_factor;
use crate::oracle;
use crate::sum::Acc;
use crate::types::{EvalResult, Interval, Method};

pub const DEFAULT_L: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiceIeQuery {
    pub k: f64,
    pub x: f64,
}

impl RiceIeQuery {
    pub fn new(k: f64, x: f64) -> Self {
        RiceIeQuery { k, x }
    }

    fn check(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.k) || !(self.x >= 0.0) || !self.x.is_finite() {
            return domain(format!("Rice Ie needs 0 <= k <= 1 and x >= 0 (got {self:?})"));
        }
        Ok(())
    }
}

fn term(q: &RiceIeQuery, l: usize) -> Result<f64> {
    if q.x == 0.0 || (q.k == 0.0 && l > 0) {
        return Ok(0.0);
    }
    let lf = l as f64;
    let lk = if l == 0 { 0.0 } else { 2.0 * lf * q.k.ln() };
    let lg = ln_lower_inc_gamma(1.0 + 2.0 * lf, q.x)?;
    Ok((lk + lg - 2.0 * ln_gamma_pos(lf + 1.0) - 2.0 * lf * std::f64::consts::LN_2).exp())
}

/// Σ_l k^{2l} γ(1+2l, x) / (l!² 4^l).
pub fn rice_ie_series(q: &RiceIeQuery, tol: f64) -> Result<EvalResult> {
    q.check()?;
    let mut acc = Acc::new();
    let mut prev = f64::INFINITY;
    for l in 0..100_000 {
        let t = term(q, l)?;
        acc.add(t);
        let s = acc.value();
        if (l as f64) > 0.5 * q.k * q.x && t <= prev && t <= tol * s {
            return Ok(EvalResult::new(s, Method::Series, 2.0 * t + 1e-16 * s, l + 1));
        }
        prev = t;
    }
    Err(Error::Convergence { what: "Rice Ie series", terms: 100_000 })
}

/// Truncated series with Gross factors, l = 0..=L.
pub fn rice_ie_poly(q: &RiceIeQuery, big_l: usize) -> Result<EvalResult> {
    q.check()?;
    if big_l == 0 {
        return domain("poly route needs L >= 1");
    }
    let mut acc = Acc::new();
    for l in 0..=big_l {
        acc.add(gross_factor(big_l, l) * term(q, l)?);
    }
    let v = acc.value();
    let exact = rice_ie_series(q, 1e-17)?.value;
    Ok(EvalResult::new(v, Method::Poly, exact - v, big_l + 1))
}

/// First `terms` terms of the exact series, without Gross factors.
pub fn rice_ie_partial(q: &RiceIeQuery, terms: usize) -> Result<EvalResult> {
    q.check()?;
    let mut acc = Acc::new();
    for l in 0..terms {
        acc.add(term(q, l)?);
    }
    let v = acc.value();
    Ok(EvalResult::new(v, Method::Series, rice_ie_series(q, 1e-17)?.value - v, terms))
}

/// 1/√(1−k²) − e^{−(1+k)x} Φ₁(½, 1, 1; 2k/(1+k), 2kx) / (1+k).
pub fn rice_ie_humbert(q: &RiceIeQuery) -> Result<EvalResult> {
    q.check()?;
    let k = q.k;
    if k >= 1.0 {
        return domain("Humbert route needs k < 1");
    }
    if q.x == 0.0 {
        return Ok(EvalResult::new(0.0, Method::Humbert, 0.0, 0));
    }
    let phi = humbert_phi1(0.5, 1.0, 1.0, 2.0 * k / (1.0 + k), 2.0 * k * q.x)?;
    let head = 1.0 / (1.0 - k * k).sqrt();
    let tail = (-(1.0 + k) * q.x).exp() * phi / (1.0 + k);
    Ok(EvalResult::new(head - tail, Method::Humbert, 1e-15 * (head + tail), 0))
}

pub fn rice_ie_eval(q: &RiceIeQuery, method: Method, big_l: usize) -> Result<EvalResult> {
    match method {
        Method::Humbert => rice_ie_humbert(q),
        Method::Poly => rice_ie_poly(q, big_l),
        Method::Series => rice_ie_series(q, 1e-16),
        Method::Oracle => {
            q.check()?;
            Ok(EvalResult::new(oracle::rice_ie(q.k, q.x)?, Method::Oracle, 1e-12, 0))
        }
        other => domain(format!("Rice Ie has no {other} route")),
    }
}

/// e^{−x} I₀(kx)
fn e_i0(k: f64, x: f64) -> f64 {
    i_scaled(0.0, k * x) * (-(1.0 - k) * x).exp()
}

fn upper(k: f64, x: f64) -> f64 {
    let s1m = (2.0 * x * (1.0 - k)).sqrt();
    let s1p = (2.0 * x * (1.0 + k)).sqrt();
    1.0 + (k / (2.0 * (1.0 - k))).sqrt() + (2.0 * k).sqrt() * gaussian_q(s1p) / (1.0 + k).sqrt()
        - e_i0(k, x)
        - (k / (2.0 * (1.0 + k))).sqrt()
        - (2.0 * k).sqrt() * gaussian_q(s1m) / (1.0 - k).sqrt()
}

fn lower(k: f64, x: f64) -> f64 {
    let r = (1.0 - k * k).sqrt();
    let a = x.sqrt() * (1.0 + r).sqrt();
    let b = x.sqrt() * (1.0 - r).sqrt();
    (2.0 * gaussian_q(b + a) + 2.0 * gaussian_q(b - a) - e_i0(k, x) - 1.0) / r
}

/// Closed-form bracket built from Gaussian Q functions.
pub fn rice_ie_bounds(q: &RiceIeQuery) -> Result<Interval> {
    q.check()?;
    if !(q.k > 0.0 && q.k < 1.0) || !(q.x > 0.0) {
        return domain("Rice Ie bounds need 0 < k < 1 and x > 0");
    }
    Ok(Interval { lo: lower(q.k, q.x), hi: upper(q.k, q.x) })
}

/// Truncation-error bound for the L-term polynomial: the closed-form upper bound minus poly_L.
pub fn rice_ie_trunc_bound(q: &RiceIeQuery, big_l: usize) -> Result<f64> {
    q.check()?;
    if !(q.k < 1.0) {
        return domain("truncation bound needs k < 1");
    }
    Ok(upper(q.k, q.x) - rice_ie_poly(q, big_l)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cases() {
        for m in [Method::Humbert, Method::Series, Method::Poly] {
            assert_eq!(rice_ie_eval(&RiceIeQuery::new(0.4, 0.0), m, 20).unwrap().value, 0.0);
            let v = rice_ie_eval(&RiceIeQuery::new(0.0, 1.0), m, 20).unwrap().value;
            assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-15, "{m}");
        }
    }

    #[test]
    fn humbert_refuses_unit_k() {
        assert!(rice_ie_humbert(&RiceIeQuery::new(1.0, 1.0)).is_err());
    }
}
