//! I-Bessel incomplete Lipschitz-Hankel integrals Ie_{m,n}(x;a) = ∫₀ˣ yᵐ e^{−ay} I_n(y) dy.

use crate::error::{domain, Error, Result};
use crate::hyper::{gauss_2f1, humbert_phi1, kummer_1f1};
use crate::kernel::{gamma_unchecked, half_ceil, half_floor, ln_gamma_pos, ln_lower_inc_gamma, marcum_q, pochhammer, rgamma};
use crate::nuttall::gross_factor;
use crate::oracle;
use crate::sum::Acc;
use crate::types::{EvalResult, Interval, Method};
use std::f64::consts::PI;

pub const DEFAULT_L: usize = 30;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlhiQuery {
    pub m: f64,
    pub n: f64,
    pub a: f64,
    pub x: f64,
}

impl IlhiQuery {
    pub fn new(m: f64, n: f64, a: f64, x: f64) -> Self {
        IlhiQuery { m, n, a, x }
    }

    fn check(&self) -> Result<()> {
        let IlhiQuery { m, n, a, x } = *self;
        if !(x > 0.0) || !x.is_finite() || !m.is_finite() || !(n >= -1.0) || !n.is_finite() || !a.is_finite() {
            return domain(format!("ILHI query needs x > 0, n >= -1, finite m and a (got {self:?})"));
        }
        if !(m + n.abs() > -1.0) {
            return domain(format!("ILHI diverges at the origin unless m + |n| > -1 (got {self:?})"));
        }
        Ok(())
    }
}

fn is_int(x: f64) -> bool {
    x == x.floor()
}

fn is_half_int(x: f64) -> bool {
    let t = 2.0 * x;
    t == t.floor() && (t as i64).rem_euclid(2) == 1
}

fn series_term(q: &IlhiQuery, n: f64, l: usize) -> Result<f64> {
    let lf = l as f64;
    let nl = n + lf + 1.0;
    let s = q.m + n + 2.0 * lf + 1.0;
    let lg = ln_lower_inc_gamma(s, q.a * q.x)? - s * q.a.ln() - ln_gamma_pos(lf + 1.0) - (n + 2.0 * lf) * std::f64::consts::LN_2;
    if nl > 0.0 {
        return Ok((lg - ln_gamma_pos(nl)).exp());
    }
    // only n + l + 1 in (−1, 0] reaches here
    Ok(lg.exp() * rgamma(nl))
}

// I_{−k} = I_k for integer k
fn series_order(q: &IlhiQuery) -> Result<f64> {
    if !(q.a > 0.0) {
        return domain("series route needs a > 0");
    }
    let n = if q.n < 0.0 && is_int(q.n) { -q.n } else { q.n };
    if !(q.m + n + 1.0 > 0.0) {
        return domain("series route needs m + n > -1");
    }
    Ok(n)
}

/// Σ_l γ(m+n+2l+1, ax) / (l! Γ(n+l+1) 2^{n+2l} a^{m+n+2l+1}).
pub fn ilhi_series(q: &IlhiQuery, tol: f64) -> Result<EvalResult> {
    q.check()?;
    let n = series_order(q)?;
    let mut acc = Acc::new();
    let mut prev = f64::INFINITY;
    for l in 0..MAX_TERMS {
        let t = series_term(q, n, l)?;
        acc.add(t);
        let s = acc.value();
        if (l as f64) > 0.5 * q.x && t.abs() <= prev && t.abs() <= tol * s.abs() {
            return Ok(EvalResult::new(s, Method::Series, 2.0 * t.abs() + 1e-16 * acc.abs(), l + 1));
        }
        if t != 0.0 {
            prev = t.abs();
        }
    }
    Err(Error::Convergence { what: "ILHI series", terms: MAX_TERMS })
}

/// Truncated series with Gross factors, l = 0..=L.
pub fn ilhi_poly(q: &IlhiQuery, big_l: usize) -> Result<EvalResult> {
    q.check()?;
    if big_l == 0 {
        return domain("poly route needs L >= 1");
    }
    let n = series_order(q)?;
    let mut acc = Acc::new();
    for l in 0..=big_l {
        acc.add(gross_factor(big_l, l) * series_term(q, n, l)?);
    }
    let v = acc.value();
    let exact = ilhi_series(q, 1e-17)?.value;
    Ok(EvalResult::new(v, Method::Poly, exact - v, big_l + 1))
}

/// First `terms` terms of the exact series, without Gross factors.
pub fn ilhi_partial(q: &IlhiQuery, terms: usize) -> Result<EvalResult> {
    q.check()?;
    let n = series_order(q)?;
    let mut acc = Acc::new();
    for l in 0..terms {
        acc.add(series_term(q, n, l)?);
    }
    let v = acc.value();
    Ok(EvalResult::new(v, Method::Series, ilhi_series(q, 1e-17)?.value - v, terms))
}

// ∫₀ˣ y^{s−1} e^{−py} dy, s > 0, any real p
fn power_exp(s: f64, p: f64, x: f64) -> Result<f64> {
    if p > 0.0 {
        Ok((ln_lower_inc_gamma(s, p * x)? - s * p.ln()).exp())
    } else if p == 0.0 {
        Ok(x.powf(s) / s)
    } else {
        Ok(x.powf(s) / s * kummer_1f1(s, s + 1.0, -p * x)?)
    }
}

/// Terminating form for half-integer n ≥ −½. Exact for any real m > n − 1 and any real a.
pub fn ilhi_halfint(q: &IlhiQuery) -> Result<EvalResult> {
    q.check()?;
    let IlhiQuery { m, n, a, x } = *q;
    if !is_half_int(n) || n < -0.5 || !(m > n - 1.0) {
        return domain(format!("halfint route needs half-integer n >= -1/2 and m > n - 1 (got {q:?})"));
    }
    let kmax = if n < 0.0 { 0 } else { (n - 0.5).round() as usize };
    // (−1)^{n+1/2}; I_{−1/2} is the cosh form
    let tail_sign = if n < 0.0 || kmax % 2 == 1 { 1.0 } else { -1.0 };
    let mut acc = Acc::new();
    for k in 0..=kmax {
        let kf = k as f64;
        let ck = if n < 0.0 { 1.0 } else { gamma_unchecked(n + kf + 0.5) / (gamma_unchecked(kf + 1.0) * gamma_unchecked(n - kf + 0.5)) };
        let c = ck / (PI.sqrt() * 2f64.powf(kf + 0.5));
        let s = m - kf + 0.5;
        let sk = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc.add(c * sk * power_exp(s, a - 1.0, x)?);
        acc.add(c * tail_sign * power_exp(s, a + 1.0, x)?);
    }
    let v = acc.value();
    let est = 1e-15 * acc.abs();
    if est > 1e-10 * v.abs() {
        return Err(Error::LossOfSignificance("half-integer ILHI closed form"));
    }
    Ok(EvalResult::new(v, Method::Halfint, est, kmax + 1))
}

fn check_a_above_one(q: &IlhiQuery, what: &str) -> Result<()> {
    if !(q.a > 1.0) {
        return domain(format!("{what} route needs a > 1 (got a = {})", q.a));
    }
    Ok(())
}

/// Closed form for m + n ∈ ℕ, a > 1: complete integral minus a finite sum of Φ₁ tails.
pub fn ilhi_mn_integer(q: &IlhiQuery) -> Result<EvalResult> {
    q.check()?;
    check_a_above_one(q, "mn_integer")?;
    let IlhiQuery { m, n, a, x } = *q;
    let sum = m + n;
    if !(sum >= 0.0) || !is_int(sum) || !(n > -0.5) || sum > 170.0 {
        return domain(format!("mn_integer route needs m + n in N and n > -1/2 (got {q:?})"));
    }
    let big_n = sum.round() as usize;
    let head = complete(m, n, a)?;
    let norm = rgamma(n + 1.0) / 2f64.powf(n);
    let z = 2.0 / (1.0 + a);
    let mut acc = Acc::new();
    // C(N,l) l! = N!/(N−l)!
    let mut falling = 1.0;
    for l in 0..=big_n {
        if l > 0 {
            falling *= (big_n - l + 1) as f64;
        }
        let lf = l as f64;
        let phi = humbert_phi1(n + 0.5, 1.0 + lf, 1.0 + 2.0 * n, z, 2.0 * x)?;
        let pre = falling * x.powi((big_n - l) as i32) * (-x * (1.0 + a)).exp() / (1.0 + a).powi(l as i32 + 1);
        acc.add(pre * phi);
    }
    let tail = norm * acc.value();
    let v = head - tail;
    let est = 1e-14 * (head.abs() + tail.abs());
    if est > 1e-9 * v.abs().max(1e-300) && est > 1e-12 {
        return Err(Error::LossOfSignificance("ILHI complete-minus-tail difference"));
    }
    Ok(EvalResult::new(v, Method::MnInteger, est, big_n + 1))
}

/// Closed form for m = −n, a > 1.
pub fn ilhi_neg_n(q: &IlhiQuery) -> Result<EvalResult> {
    q.check()?;
    check_a_above_one(q, "neg_n")?;
    let IlhiQuery { m, n, a, x } = *q;
    if m != -n || !(n > -0.5) {
        return domain(format!("neg_n route needs m = -n with n > -1/2 (got {q:?})"));
    }
    let z = 2.0 / (1.0 + a);
    let norm = rgamma(n + 1.0) / (2f64.powf(n) * (1.0 + a));
    let head = norm * gauss_2f1(n + 0.5, 1.0, 1.0 + 2.0 * n, z)?;
    let tail = norm * humbert_phi1(n + 0.5, 1.0, 1.0 + 2.0 * n, z, 2.0 * x)? * (-x * (1.0 + a)).exp();
    let v = head - tail;
    let est = 1e-14 * (head.abs() + tail.abs());
    Ok(EvalResult::new(v, Method::NegN, est, 0))
}

/// m = n = 0: (Q₁(b,c) − Q₁(c,b)) / √(a²−1) with b, c = √x √(a ± √(a²−1)).
pub fn ilhi_zero(q: &IlhiQuery) -> Result<EvalResult> {
    q.check()?;
    check_a_above_one(q, "zero")?;
    if q.m != 0.0 || q.n != 0.0 {
        return domain("zero route needs m = n = 0");
    }
    let w = ((q.a + 1.0) * (q.a - 1.0)).sqrt();
    let b = q.x.sqrt() * (q.a + w).sqrt();
    // a − w = 1/(a + w)
    let c = q.x.sqrt() / (q.a + w).sqrt();
    let v = (marcum_q(1.0, b, c)? - marcum_q(1.0, c, b)?) / w;
    Ok(EvalResult::new(v, Method::Zero, 1e-14 / w, 0))
}

pub fn ilhi_eval(q: &IlhiQuery, method: Method, big_l: usize) -> Result<EvalResult> {
    match method {
        Method::Halfint => ilhi_halfint(q),
        Method::MnInteger => ilhi_mn_integer(q),
        Method::NegN => ilhi_neg_n(q),
        Method::Zero => ilhi_zero(q),
        Method::Poly => ilhi_poly(q, big_l),
        Method::Series => ilhi_series(q, 1e-16),
        Method::Oracle => {
            q.check()?;
            Ok(EvalResult::new(oracle::ilhi(q.m, q.n, q.a, q.x)?, Method::Oracle, 1e-12, 0))
        }
        other => domain(format!("ILHI has no {other} route")),
    }
}

/// Routes whose preconditions hold for `q`.
pub fn ilhi_routes(q: &IlhiQuery) -> Vec<Method> {
    [Method::Halfint, Method::MnInteger, Method::NegN, Method::Zero, Method::Series]
        .into_iter()
        .filter(|&m| !matches!(ilhi_eval(q, m, DEFAULT_L), Err(Error::Domain(_))))
        .collect()
}

fn best(q: &IlhiQuery) -> Result<f64> {
    match ilhi_halfint(q) {
        Ok(r) => Ok(r.value),
        Err(_) => Ok(ilhi_series(q, 1e-17)?.value),
    }
}

/// Rounded-index interval [Ie_{⌊m⌋₀.₅,⌊n⌋₀.₅}, Ie_{⌈m⌉₀.₅,⌈n⌉₀.₅}].
pub fn ilhi_bounds(q: &IlhiQuery) -> Result<Interval> {
    q.check()?;
    if !(q.m > 0.0) || !(q.n > 0.0) || !(q.a > 0.0) || q.m < q.n {
        return domain("ILHI bounds need m >= n > 0 and a > 0");
    }
    let lo = best(&IlhiQuery { m: half_floor(q.m), n: half_floor(q.n), ..*q })?;
    let hi = best(&IlhiQuery { m: half_ceil(q.m), n: half_ceil(q.n), ..*q })?;
    Ok(Interval { lo, hi })
}

/// Truncation bound Ie_{m,⌈n⌉₀.₅} − poly_L.
pub fn ilhi_trunc_bound(q: &IlhiQuery, big_l: usize) -> Result<f64> {
    q.check()?;
    if !(q.a > 0.0) {
        return domain("ILHI truncation bound needs a > 0");
    }
    let hi = best(&IlhiQuery { n: half_ceil(q.n), ..*q })?;
    Ok(hi - ilhi_poly(q, big_l)?.value)
}

// Ie_{m,n}(∞; a) = (n+1)_m ₂F₁((m+n+1)/2, (m+n)/2+1; n+1; 1/a²) / (a^{m+n+1} 2ⁿ)
fn complete(m: f64, n: f64, a: f64) -> Result<f64> {
    let s = m + n;
    let f = gauss_2f1(0.5 * (s + 1.0), 0.5 * s + 1.0, n + 1.0, 1.0 / (a * a))?;
    Ok(pochhammer(n + 1.0, m)? * f / (a.powf(s + 1.0) * 2f64.powf(n)))
}

/// Upper approximation by the x → ∞ limit; a > 1.
pub fn ilhi_upper_approx(q: &IlhiQuery) -> Result<f64> {
    q.check()?;
    check_a_above_one(q, "upper approximation")?;
    if !(q.n > -1.0) || !(q.m + q.n > -1.0) {
        return domain("upper approximation needs n > -1 and m + n > -1");
    }
    complete(q.m, q.n, q.a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosh_order() {
        // ∫₀ˣ y^{1/2} e^{−2y} I_{−1/2}(y) dy = √(2/π) ∫₀ˣ e^{−2y} cosh y dy
        let x: f64 = 1.3;
        let want = (2.0 / PI).sqrt() * 0.5 * ((1.0 - (-x).exp()) + (1.0 - (-3.0 * x).exp()) / 3.0);
        let got = ilhi_halfint(&IlhiQuery::new(0.5, -0.5, 2.0, x)).unwrap().value;
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn zero_route_limit() {
        let v = ilhi_zero(&IlhiQuery::new(0.0, 0.0, 1.7, 60.0)).unwrap().value;
        assert!((v - 1.0 / (1.7f64 * 1.7 - 1.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn refuses_bad_routes() {
        let q = IlhiQuery::new(0.3, 0.2, 0.8, 1.0);
        assert!(ilhi_zero(&q).is_err());
        assert!(ilhi_halfint(&q).is_err());
        assert!(ilhi_neg_n(&q).is_err());
        assert_eq!(ilhi_routes(&q), vec![Method::Series]);
    }
}
