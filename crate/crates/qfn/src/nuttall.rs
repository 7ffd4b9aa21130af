//! Nuttall Q-function Q_{m,n}(a,b) = ∫_b^∞ x^m e^{−(x²+a²)/2} I_n(ax) dx.

use crate::error::{domain, Error, Result};
use crate::hyper::{kdf_f1110, kummer_1f1};
use crate::kernel::{
    gamma_unchecked, half_ceil, i_scaled, ln_gamma_pos, ln_upper_inc_gamma, lower_inc_gamma, marcum_q, rgamma, upper_inc_gamma,
};
use crate::oracle;
use crate::solve::bracket_root;
use crate::sum::Acc;
use crate::types::{EvalResult, Method};
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};

pub const DEFAULT_P: usize = 20;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuttallQuery {
    pub m: f64,
    pub n: f64,
    pub a: f64,
    pub b: f64,
}

impl NuttallQuery {
    pub fn new(m: f64, n: f64, a: f64, b: f64) -> Self {
        NuttallQuery { m, n, a, b }
    }

    fn check(&self) -> Result<()> {
        let NuttallQuery { m, n, a, b } = *self;
        if !m.is_finite() || !(n >= -1.0) || !n.is_finite() || !(a >= 0.0) || !(b >= 0.0) || !a.is_finite() || !b.is_finite() {
            return domain(format!("Nuttall query needs finite m, n >= -1, a >= 0, b >= 0 (got {self:?})"));
        }
        Ok(())
    }
}

/// Gross factor Γ(p+l) p^{1−2l} / (p−l)! written as a product ≤ 1.
pub fn gross_factor(p: usize, l: usize) -> f64 {
    let pf = p as f64;
    (1..l).map(|j| 1.0 - (j * j) as f64 / (pf * pf)).product()
}

// log of a^{n+2l} e^{−a²/2} / (l! Γ(n+l+1) 2^{(n−m+2l+1)/2}), excluding the gamma factor
fn ln_coef(q: &NuttallQuery, l: usize) -> Option<f64> {
    let lf = l as f64;
    let nl = q.n + lf + 1.0;
    if nl <= 0.0 && nl == nl.floor() {
        return None;
    }
    let pow = q.n + 2.0 * lf;
    let la = if q.a == 0.0 {
        if pow == 0.0 {
            0.0
        } else {
            return None;
        }
    } else {
        pow * q.a.ln()
    };
    Some(la - 0.5 * q.a * q.a - ln_gamma_pos(lf + 1.0) - ln_gamma_pos(nl) - 0.5 * (q.n - q.m + 2.0 * lf + 1.0) * LN_2)
}

fn series_term(q: &NuttallQuery, l: usize) -> Result<f64> {
    let Some(c) = ln_coef(q, l) else { return Ok(0.0) };
    let s = 0.5 * (q.m + q.n + 2.0 * l as f64 + 1.0);
    let y = 0.5 * q.b * q.b;
    Ok((c + ln_upper_inc_gamma(s, y)?).exp())
}

/// Exact series Σ_l a^{n+2l} e^{−a²/2} Γ((m+n+2l+1)/2, b²/2) / (l! Γ(n+l+1) 2^{(n−m+2l+1)/2}).
pub fn nuttall_series(q: &NuttallQuery, tol: f64) -> Result<EvalResult> {
    q.check()?;
    let lam = 0.5 * q.a * q.a;
    let mut acc = Acc::new();
    let mut prev = f64::INFINITY;
    for l in 0..MAX_TERMS {
        let t = series_term(q, l)?;
        acc.add(t);
        if q.a == 0.0 && l > 0 {
            return Ok(EvalResult::new(acc.value(), Method::Series, 0.0, 1));
        }
        let s = acc.value();
        if (l as f64) > lam && t <= prev && t <= tol * s {
            let est = 2.0 * t + 1e-16 * s * ((l + 1) as f64).sqrt();
            return Ok(EvalResult::new(s, Method::Series, est, l + 1));
        }
        if t > 0.0 {
            prev = t;
        }
    }
    Err(Error::Convergence { what: "Nuttall series", terms: MAX_TERMS })
}

// Γ(s, y) for positive integer s by the terminating sum
fn upper_gamma_int(s: usize, y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..s {
        term *= y / k as f64;
        sum += term;
    }
    gamma_unchecked(s as f64) * (-y).exp() * sum
}

/// Truncated series with the Gross factors, l = 0..=p.
pub fn nuttall_poly(q: &NuttallQuery, p: usize) -> Result<EvalResult> {
    q.check()?;
    if p == 0 {
        return domain("poly route needs p >= 1");
    }
    let s0 = 0.5 * (q.m + q.n + 1.0);
    let integer = s0 >= 1.0 && s0 == s0.floor();
    let y = 0.5 * q.b * q.b;
    let mut acc = Acc::new();
    for l in 0..=p {
        let g = gross_factor(p, l);
        let t = if integer {
            match ln_coef(q, l) {
                Some(c) => c.exp() * upper_gamma_int(s0 as usize + l, y),
                None => 0.0,
            }
        } else {
            series_term(q, l)?
        };
        acc.add(g * t);
    }
    let value = acc.value();
    let exact = nuttall_series(q, 1e-17)?.value;
    Ok(EvalResult::new(value, Method::Poly, exact - value, p + 1))
}

/// First `terms` terms of the exact series, without Gross factors.
pub fn nuttall_partial(q: &NuttallQuery, terms: usize) -> Result<EvalResult> {
    q.check()?;
    let mut acc = Acc::new();
    for l in 0..terms {
        acc.add(series_term(q, l)?);
    }
    let v = acc.value();
    Ok(EvalResult::new(v, Method::Series, nuttall_series(q, 1e-17)?.value - v, terms))
}

/// Q_{m,n}(a, 0) = aⁿ Γ((m+n+1)/2) ₁F₁((m+n+1)/2; n+1; a²/2) / (n! 2^{(n−m+1)/2} e^{a²/2}).
fn full_range(q: &NuttallQuery) -> Result<f64> {
    let al = 0.5 * (q.m + q.n + 1.0);
    let an = if q.n == 0.0 { 1.0 } else { q.a.powf(q.n) };
    // e^{−z}₁F₁(α; n+1; z) via the Kummer-transformed argument
    let f = kummer_1f1(q.n + 1.0 - al, q.n + 1.0, -0.5 * q.a * q.a)?;
    Ok(an * gamma_unchecked(al) * f * rgamma(q.n + 1.0) / 2f64.powf(0.5 * (q.n - q.m + 1.0)))
}

/// Closed form via ₁F₁ and the KdF F^{1,0}_{1,1}. Needs m + n > −1 and n > −1.
pub fn nuttall_kdf(q: &NuttallQuery) -> Result<EvalResult> {
    q.check()?;
    if !(q.m + q.n > -1.0) || !(q.n > -1.0) {
        return domain(format!("KdF route needs m + n > -1 and n > -1 (m={}, n={})", q.m, q.n));
    }
    let g = full_range(q)?;
    if q.b == 0.0 {
        return Ok(EvalResult::new(g, Method::Kdf, 1e-16 * g, 1));
    }
    let al = 0.5 * (q.m + q.n + 1.0);
    let an = if q.n == 0.0 { 1.0 } else { q.a.powf(q.n) };
    let f = kdf_f1110(al, al + 1.0, q.n + 1.0, 0.25 * q.a * q.a * q.b * q.b, -0.5 * q.b * q.b)?;
    let h = an * q.b.powf(q.m + q.n + 1.0) * rgamma(q.n + 1.0) / ((q.m + q.n + 1.0) * 2f64.powf(q.n)) * (-0.5 * q.a * q.a).exp() * f;
    let v = g - h;
    let est = 4e-16 * (g.abs() + h.abs());
    if v < 1e-9 * g {
        return Err(Error::LossOfSignificance("Nuttall KdF form (G - H cancels)"));
    }
    Ok(EvalResult::new(v, Method::Kdf, est, 0))
}

// ∫_{u0}^∞ u^j e^{−u²/2} du
fn gauss_moment_tail(j: usize, u0: f64) -> Result<f64> {
    let s = 0.5 * (j as f64 + 1.0);
    let scale = 2f64.powf(0.5 * (j as f64 - 1.0));
    let y = 0.5 * u0 * u0;
    if u0 >= 0.0 {
        Ok(scale * upper_inc_gamma(s, y)?)
    } else {
        let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(scale * (gamma_unchecked(s) + sign * lower_inc_gamma(s, y)?))
    }
}

fn is_half_int(x: f64) -> bool {
    let t = 2.0 * x;
    t == t.floor() && (t as i64).rem_euclid(2) == 1
}

/// Closed form for half-integer m ≥ n ≥ −½, m ≥ ½, from the terminating expansion of I_n.
pub fn nuttall_halfint(q: &NuttallQuery) -> Result<EvalResult> {
    q.check()?;
    let NuttallQuery { m, n, a, b } = *q;
    if !is_half_int(m) || !is_half_int(n) || m < n || m < 0.5 || n < -0.5 || !(a > 0.0) {
        return domain(format!("halfint route needs half-integer m >= n >= -1/2, m >= 1/2, a > 0 (got {q:?})"));
    }
    let (kmax, sign_n) = if n == -0.5 {
        (0, -1.0)
    } else {
        let k = (n - 0.5).round() as usize;
        (k, if k.is_multiple_of(2) { 1.0 } else { -1.0 })
    };
    let mut acc = Acc::new();
    for k in 0..=kmax {
        let kf = k as f64;
        let c = if n == -0.5 { 1.0 } else { gamma_unchecked(n + kf + 0.5) / (gamma_unchecked(kf + 1.0) * gamma_unchecked(n - kf + 0.5)) };
        let pre = c / (2.0 * a).powi(k as i32);
        let lpow = (m - 0.5).round() as usize - k;
        let sk = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut binom = 1.0;
        for j in 0..=lpow {
            if j > 0 {
                binom *= (lpow - j + 1) as f64 / j as f64;
            }
            let e = (lpow - j) as i32;
            let plus = binom * a.powi(e) * gauss_moment_tail(j, b - a)?;
            let minus = binom * (-a).powi(e) * gauss_moment_tail(j, b + a)?;
            acc.add(pre * sk * plus);
            acc.add(-pre * sign_n * minus);
        }
    }
    let v = acc.value() / (2.0 * PI * a).sqrt();
    let est = 1e-15 * acc.abs() / (2.0 * PI * a).sqrt();
    if est > 1e-9 * v.abs().max(1e-300) && est > 1e-12 {
        return Err(Error::LossOfSignificance("half-integer Nuttall closed form"));
    }
    Ok(EvalResult::new(v, Method::Halfint, est, kmax + 1))
}

/// Integer-order Q_{M,N}(a,b), M − N odd and positive, N ≥ 0, by the index recursion
/// down to Q_{k,k−1} = a^{k−1} Q_k(a,b).
pub fn nuttall_integer(mm: i64, nn: i64, a: f64, b: f64) -> Result<f64> {
    if nn < 0 || mm - nn < 1 || (mm - nn) % 2 == 0 || !(a >= 0.0) || !(b >= 0.0) {
        return domain(format!("integer Nuttall recursion needs N >= 0, M - N odd positive (M={mm}, N={nn})"));
    }
    let mut memo = HashMap::new();
    integer_rec(mm, nn, a, b, &mut memo)
}

fn integer_rec(mm: i64, nn: i64, a: f64, b: f64, memo: &mut HashMap<(i64, i64), f64>) -> Result<f64> {
    if let Some(v) = memo.get(&(mm, nn)) {
        return Ok(*v);
    }
    let v = if mm - nn == 1 {
        let k = mm as f64;
        let ak = if mm == 1 { 1.0 } else { a.powi((mm - 1) as i32) };
        ak * marcum_q(k, a, b)?
    } else {
        let bes =
            if b == 0.0 && mm > 1 { 0.0 } else { b.powi((mm - 1) as i32) * (-0.5 * (a - b) * (a - b)).exp() * i_scaled(nn as f64, a * b) };
        a * integer_rec(mm - 1, nn + 1, a, b, memo)? + bes + (mm + nn - 1) as f64 * integer_rec(mm - 2, nn, a, b, memo)?
    };
    memo.insert((mm, nn), v);
    Ok(v)
}

/// Evaluate by the named route; `p` is used by the poly route.
pub fn nuttall_eval(q: &NuttallQuery, method: Method, p: usize) -> Result<EvalResult> {
    match method {
        Method::Kdf => nuttall_kdf(q),
        Method::Poly => nuttall_poly(q, p),
        Method::Series => nuttall_series(q, 1e-16),
        Method::Halfint => nuttall_halfint(q),
        Method::Oracle => {
            q.check()?;
            Ok(EvalResult::new(oracle::nuttall(q.m, q.n, q.a, q.b)?, Method::Oracle, 1e-12, 0))
        }
        other => domain(format!("Nuttall Q has no {other} route")),
    }
}

/// Closed-form upper bound aⁿ Γ((m+n+1)/2) ₁F₁((m+n+1)/2, n+1, a²/2) / (n! 2^{(n−m+1)/2} e^{a²/2}).
///
/// It equals Q_{m,n}(a, 0), so it majorizes Q_{m,n}(a, b) for every b ≥ 0.
pub fn nuttall_upper(q: &NuttallQuery) -> Result<f64> {
    q.check()?;
    if !(q.m + q.n > -1.0) || !(q.n > -1.0) {
        return domain(format!("upper bound needs m + n > -1 and n > -1 (m={}, n={})", q.m, q.n));
    }
    full_range(q)
}

/// Upper bound on the truncation error of the p-term polynomial:
/// Q_{⌈m⌉₀.₅,⌈n⌉₀.₅}(a,b) − poly_p, relying on Q being non-increasing in both indices.
pub fn nuttall_trunc_bound(q: &NuttallQuery, p: usize) -> Result<f64> {
    let up = NuttallQuery { m: half_ceil(q.m), n: half_ceil(q.n), ..*q };
    let hi = match nuttall_halfint(&up) {
        Ok(r) => r.value,
        Err(_) => nuttall_series(&up, 1e-16)?.value,
    };
    Ok(hi - nuttall_poly(q, p)?.value)
}

/// Residual of the index recursion using oracle values.
pub fn nuttall_recursion_check(m: i64, n: i64, a: f64, b: f64) -> Result<f64> {
    if m < 2 || n < 1 {
        return domain("recursion check needs integer m >= 2, n >= 1");
    }
    let (mf, nf) = (m as f64, n as f64);
    let lhs = oracle::nuttall(mf, nf, a, b)?;
    let bes = if b == 0.0 { 0.0 } else { b.powf(mf - 1.0) * (-0.5 * (a - b) * (a - b)).exp() * i_scaled(nf, a * b) };
    let rhs = a * oracle::nuttall(mf - 1.0, nf + 1.0, a, b)? + bes + (mf + nf - 1.0) * oracle::nuttall(mf - 2.0, nf, a, b)?;
    Ok(lhs - rhs)
}

/// Normalized 𝒬_{m,n}(a,b) = Q_{m,n}(a,b)/aⁿ.
pub fn normalized_nuttall(q: &NuttallQuery, method: Method, p: usize) -> Result<EvalResult> {
    if q.n != 0.0 && !(q.a > 0.0) {
        return domain("normalized Nuttall needs a > 0 when n != 0");
    }
    let r = nuttall_eval(q, method, p)?;
    let s = if q.n == 0.0 { 1.0 } else { q.a.powf(q.n) };
    Ok(EvalResult::new(r.value / s, r.method, r.est_error / s, r.terms))
}

/// b such that Q_{m,n}(a, b) = target, for 0 < target ≤ Q_{m,n}(a, 0).
pub fn inverse_nuttall_b(m: f64, n: f64, a: f64, target: f64) -> Result<f64> {
    let q0 = NuttallQuery::new(m, n, a, 0.0);
    let top = nuttall_series(&q0, 1e-16)?.value;
    if !(target > 0.0) || target > top * (1.0 + 1e-14) {
        return domain(format!("target {target} outside (0, Q(a,0) = {top}]"));
    }
    if target >= top {
        return Ok(0.0);
    }
    let f = |b: f64| -> Result<f64> { Ok(nuttall_series(&NuttallQuery::new(m, n, a, b), 1e-16)?.value / target - 1.0) };
    let mut hi = 1.0 + a;
    while f(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e4 {
            return Err(Error::Solver("could not bracket the inverse Nuttall root".into()));
        }
    }
    bracket_root(f, 0.0, hi, 1e-15)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gross_factor_edges() {
        assert_eq!(gross_factor(20, 0), 1.0);
        assert_eq!(gross_factor(20, 1), 1.0);
        let direct = gamma_unchecked(23.0) * 20f64.powi(-5) / gamma_unchecked(18.0);
        assert!((gross_factor(20, 3) - direct).abs() < 1e-14);
    }

    #[test]
    fn b_zero_is_one_for_marcum() {
        let q = NuttallQuery::new(1.0, 0.0, 0.6, 0.0);
        assert!((nuttall_series(&q, 1e-16).unwrap().value - 1.0).abs() < 1e-14);
        assert!((nuttall_kdf(&q).unwrap().value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn refuses_kdf_for_negative_order_sum() {
        let q = NuttallQuery::new(-1.0, 0.0, 1.0, 1.0);
        assert!(matches!(nuttall_kdf(&q), Err(Error::Domain(_))));
        assert!(nuttall_series(&q, 1e-16).is_ok());
    }
}
