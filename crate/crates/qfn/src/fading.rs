//! SNR densities and outage probabilities for generalized fading models.
//!
//! Every model here depends on γ only through t = (γ/γ̄)^{α/2}, so outage is
//! a function of t_th; the α = 2 models share the code path of their parents.

use crate::error::{domain, Result};
use crate::ilhi::{ilhi_mn_integer, ilhi_series, IlhiQuery};
use crate::kernel::{gamma_p, ln_gamma_pos, ln_i};
use crate::quad::Quadrature;
use crate::toronto::{toronto_series, TorontoQuery};
use std::f64::consts::{LN_2, PI};
use std::fmt;

const PDF_Q: Quadrature = Quadrature { abs_tol: 1e-15, rel_tol: 1e-12, max_subdivisions: 20_000 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel {
    AlphaEtaMu {
        alpha: f64,
        eta: f64,
        mu: f64,
    },
    AlphaLambdaMu {
        alpha: f64,
        lambda: f64,
        mu: f64,
    },
    AlphaKappaMu {
        alpha: f64,
        kappa: f64,
        mu: f64,
    },
    EtaMu {
        eta: f64,
        mu: f64,
    },
    LambdaMu {
        lambda: f64,
        mu: f64,
    },
    KappaMu {
        kappa: f64,
        mu: f64,
    },
    /// Nakagami-n parameter; Rician factor K = n².
    Rician {
        n: f64,
    },
}

// Canonical three-parameter form.
#[derive(Debug, Clone, Copy)]
enum Family {
    Eta { alpha: f64, eta: f64, mu: f64 },
    Lambda { alpha: f64, lambda: f64, mu: f64 },
    Kappa { alpha: f64, kappa: f64, mu: f64 },
    Rice { k: f64 },
}

impl FadingModel {
    pub fn name(&self) -> &'static str {
        match self {
            FadingModel::AlphaEtaMu { .. } => "alpha-eta-mu",
            FadingModel::AlphaLambdaMu { .. } => "alpha-lambda-mu",
            FadingModel::AlphaKappaMu { .. } => "alpha-kappa-mu",
            FadingModel::EtaMu { .. } => "eta-mu",
            FadingModel::LambdaMu { .. } => "lambda-mu",
            FadingModel::KappaMu { .. } => "kappa-mu",
            FadingModel::Rician { .. } => "rician",
        }
    }

    fn family(&self) -> Family {
        match *self {
            FadingModel::AlphaEtaMu { alpha, eta, mu } => Family::Eta { alpha, eta, mu },
            FadingModel::EtaMu { eta, mu } => Family::Eta { alpha: 2.0, eta, mu },
            FadingModel::AlphaLambdaMu { alpha, lambda, mu } => Family::Lambda { alpha, lambda, mu },
            FadingModel::LambdaMu { lambda, mu } => Family::Lambda { alpha: 2.0, lambda, mu },
            FadingModel::AlphaKappaMu { alpha, kappa, mu } => Family::Kappa { alpha, kappa, mu },
            FadingModel::KappaMu { kappa, mu } => Family::Kappa { alpha: 2.0, kappa, mu },
            FadingModel::Rician { n } => Family::Rice { k: n * n },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        let good = match self.family() {
            Family::Eta { alpha, eta, mu } => ok(alpha) && ok(eta) && ok(mu),
            Family::Lambda { alpha, lambda, mu } => ok(alpha) && lambda > -1.0 && lambda < 1.0 && ok(mu),
            Family::Kappa { alpha, kappa, mu } => ok(alpha) && ok(kappa) && ok(mu),
            Family::Rice { k } => k >= 0.0 && k.is_finite(),
        };
        if !good {
            return domain(format!("invalid fading parameters {self}"));
        }
        Ok(())
    }

    fn alpha(&self) -> f64 {
        match self.family() {
            Family::Eta { alpha, .. } | Family::Lambda { alpha, .. } | Family::Kappa { alpha, .. } => alpha,
            Family::Rice { .. } => 2.0,
        }
    }

    // pdf(γ) ~ γ^s near the origin
    fn origin_exponent(&self) -> f64 {
        match self.family() {
            Family::Eta { alpha, mu, .. } | Family::Lambda { alpha, mu, .. } => alpha * mu - 1.0,
            Family::Kappa { alpha, mu, .. } => 0.5 * alpha * mu - 1.0,
            Family::Rice { .. } => 0.0,
        }
    }
}

impl fmt::Display for FadingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FadingModel::AlphaEtaMu { alpha, eta, mu } => write!(f, "alpha-eta-mu(alpha={alpha}, eta={eta}, mu={mu})"),
            FadingModel::AlphaLambdaMu { alpha, lambda, mu } => {
                write!(f, "alpha-lambda-mu(alpha={alpha}, lambda={lambda}, mu={mu})")
            }
            FadingModel::AlphaKappaMu { alpha, kappa, mu } => {
                write!(f, "alpha-kappa-mu(alpha={alpha}, kappa={kappa}, mu={mu})")
            }
            FadingModel::EtaMu { eta, mu } => write!(f, "eta-mu(eta={eta}, mu={mu})"),
            FadingModel::LambdaMu { lambda, mu } => write!(f, "lambda-mu(lambda={lambda}, mu={mu})"),
            FadingModel::KappaMu { kappa, mu } => write!(f, "kappa-mu(kappa={kappa}, mu={mu})"),
            FadingModel::Rician { n } => write!(f, "rician(n={n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageQuery {
    pub model: FadingModel,
    /// Average SNR, linear.
    pub gamma_bar: f64,
    /// Threshold SNR, linear.
    pub gamma_th: f64,
}

impl OutageQuery {
    pub fn new(model: FadingModel, gamma_bar: f64, gamma_th: f64) -> Self {
        OutageQuery { model, gamma_bar, gamma_th }
    }

    fn check(&self) -> Result<()> {
        self.model.validate()?;
        if !(self.gamma_bar > 0.0) || !self.gamma_bar.is_finite() || !(self.gamma_th >= 0.0) || !self.gamma_th.is_finite() {
            return domain(format!("outage needs gamma_bar > 0 and gamma_th >= 0 (got {self:?})"));
        }
        Ok(())
    }

    fn t_th(&self) -> f64 {
        (self.gamma_th / self.gamma_bar).powf(0.5 * self.model.alpha())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutageRoute {
    Analytic,
    Oracle,
}

// η-μ in its first format: η = (1−λ)/(1+λ)
fn eta_of_lambda(lambda: f64) -> f64 {
    (1.0 - lambda) / (1.0 + lambda)
}

fn ln_pdf_eta(alpha: f64, eta: f64, mu: f64, gamma: f64, gbar: f64) -> f64 {
    let t = (gamma / gbar).powf(0.5 * alpha);
    let ln_t = 0.5 * alpha * (gamma / gbar).ln();
    if eta == 1.0 {
        // Nakagami limit: t ~ Gamma(2μ, rate 2μ)
        let m2 = 2.0 * mu;
        return alpha.ln() + m2 * m2.ln() - LN_2 - ln_gamma_pos(m2) + m2 * ln_t - m2 * t - gamma.ln();
    }
    let nu = mu - 0.5;
    let z = (eta * eta - 1.0).abs() * mu * t / (2.0 * eta);
    alpha.ln() + (mu + 0.5) * (eta + 1.0).ln() + 0.5 * PI.ln() + (mu + 0.5) * mu.ln()
        - LN_2
        - ln_gamma_pos(mu)
        - 0.5 * eta.ln()
        - nu * (eta - 1.0).abs().ln()
        + (mu + 0.5) * ln_t
        - gamma.ln()
        - (1.0 + eta).powi(2) * mu * t / (2.0 * eta)
        + ln_i(nu, z)
}

fn ln_pdf_kappa(alpha: f64, kappa: f64, mu: f64, gamma: f64, gbar: f64) -> f64 {
    let t = (gamma / gbar).powf(0.5 * alpha);
    let ln_t = 0.5 * alpha * (gamma / gbar).ln();
    alpha.ln() + mu.ln() + 0.5 * (1.0 + mu) * (1.0 + kappa).ln() - LN_2 - 0.5 * (mu - 1.0) * kappa.ln() - mu * kappa
        + 0.5 * (1.0 + mu) * ln_t
        - gamma.ln()
        - mu * (1.0 + kappa) * t
        + ln_i(mu - 1.0, 2.0 * mu * (kappa * (1.0 + kappa) * t).sqrt())
}

fn ln_pdf_rice(k: f64, gamma: f64, gbar: f64) -> f64 {
    let x = gamma / gbar;
    (1.0 + k).ln() - gbar.ln() - k - (1.0 + k) * x + ln_i(0.0, 2.0 * (k * (1.0 + k) * x).sqrt())
}

/// Density of the instantaneous SNR at `gamma` > 0.
pub fn snr_pdf(model: &FadingModel, gamma_bar: f64, gamma: f64) -> Result<f64> {
    model.validate()?;
    if !(gamma_bar > 0.0) || !(gamma >= 0.0) {
        return domain("snr_pdf needs gamma_bar > 0, gamma >= 0");
    }
    if gamma == 0.0 {
        let s = model.origin_exponent();
        return Ok(if s > 0.0 {
            0.0
        } else if s < 0.0 {
            f64::INFINITY
        } else {
            snr_pdf(model, gamma_bar, 1e-300)?
        });
    }
    let lp = match model.family() {
        Family::Eta { alpha, eta, mu } => ln_pdf_eta(alpha, eta, mu, gamma, gamma_bar),
        Family::Lambda { alpha, lambda, mu } => ln_pdf_eta(alpha, eta_of_lambda(lambda), mu, gamma, gamma_bar),
        Family::Kappa { alpha, kappa, mu } => ln_pdf_kappa(alpha, kappa, mu, gamma, gamma_bar),
        Family::Rice { k } => ln_pdf_rice(k, gamma, gamma_bar),
    };
    Ok(lp.exp())
}

fn oracle_outage(q: &OutageQuery) -> Result<f64> {
    let f = |g: f64| if g > 0.0 { snr_pdf(&q.model, q.gamma_bar, g).unwrap_or(f64::NAN) } else { 0.0 };
    let mut pts = vec![0.0];
    for p in [0.25 * q.gamma_bar, q.gamma_bar, 4.0 * q.gamma_bar] {
        if p < q.gamma_th {
            pts.push(p);
        }
    }
    pts.push(q.gamma_th);
    let s = q.model.origin_exponent();
    let (v, _) = if s < 0.0 { PDF_Q.integrate_endpoint(f, &pts, s)? } else { PDF_Q.integrate_points(f, &pts)? };
    Ok(v)
}

// (prefactor, ILHI query) with Ie_{μ−½,μ−½}(|u|; |a|)
fn eta_ilhi(eta: f64, mu: f64, t: f64) -> (f64, IlhiQuery) {
    let ln_pre = 0.5 * PI.ln() + (mu + 0.5) * LN_2 + mu * eta.ln() - ln_gamma_pos(mu) - 2.0 * mu * (eta - 1.0).abs().ln();
    let x = (mu * (eta * eta - 1.0) * t / (2.0 * eta)).abs();
    let a = ((eta + 1.0) / (eta - 1.0)).abs();
    (ln_pre.exp(), IlhiQuery::new(mu - 0.5, mu - 0.5, a, x))
}

fn lambda_ilhi(lambda: f64, mu: f64, t: f64) -> (f64, IlhiQuery) {
    let ln_pre = 0.5 * PI.ln() + mu * (1.0 - lambda * lambda).ln() - ln_gamma_pos(mu) - (mu - 0.5) * LN_2 - 2.0 * mu * lambda.abs().ln();
    let x = (2.0 * lambda * mu * t / (lambda * lambda - 1.0)).abs();
    (ln_pre.exp(), IlhiQuery::new(mu - 0.5, mu - 0.5, 1.0 / lambda.abs(), x))
}

fn clamp01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

fn analytic_outage(q: &OutageQuery) -> Result<f64> {
    let t = q.t_th();
    let v = match q.model.family() {
        Family::Eta { eta: 1.0, mu, .. } => gamma_p(2.0 * mu, 2.0 * mu * t)?,
        Family::Lambda { lambda: 0.0, mu, .. } => gamma_p(2.0 * mu, 2.0 * mu * t)?,
        Family::Eta { eta, mu, .. } => {
            let (pre, iq) = eta_ilhi(eta, mu, t);
            pre * ilhi_series(&iq, 1e-16)?.value
        }
        Family::Lambda { lambda, mu, .. } => {
            let (pre, iq) = lambda_ilhi(lambda, mu, t);
            pre * ilhi_series(&iq, 1e-16)?.value
        }
        Family::Kappa { kappa, mu, .. } => {
            let b = (mu * (1.0 + kappa) * t).sqrt();
            toronto_series(&TorontoQuery::new(2.0 * mu - 1.0, mu - 1.0, (kappa * mu).sqrt(), b), 1e-16)?.value
        }
        Family::Rice { k } => {
            let b = ((1.0 + k) * t).sqrt();
            toronto_series(&TorontoQuery::new(1.0, 0.0, k.sqrt(), b), 1e-16)?.value
        }
    };
    Ok(v)
}

/// Outage probability P(γ ≤ γ_th), equivalently the SNR CDF at γ_th.
pub fn outage(q: &OutageQuery, route: OutageRoute) -> Result<f64> {
    q.check()?;
    if q.gamma_th == 0.0 {
        return Ok(0.0);
    }
    let v = match route {
        OutageRoute::Analytic => analytic_outage(q)?,
        OutageRoute::Oracle => oracle_outage(q)?,
    };
    Ok(clamp01(v))
}

/// Outage through the finite Φ₁ sum; η-μ and λ-μ families with 2μ ∈ ℕ.
pub fn outage_humbert(q: &OutageQuery) -> Result<f64> {
    q.check()?;
    if q.gamma_th == 0.0 {
        return Ok(0.0);
    }
    let t = q.t_th();
    let (pre, iq) = match q.model.family() {
        Family::Eta { eta, mu, .. } if eta != 1.0 => eta_ilhi(eta, mu, t),
        Family::Lambda { lambda, mu, .. } if lambda != 0.0 => lambda_ilhi(lambda, mu, t),
        _ => return domain(format!("Φ₁ outage form needs an eta-mu or lambda-mu model with eta != 1 (got {})", q.model)),
    };
    let two_mu = 2.0 * iq.n + 1.0;
    if two_mu != two_mu.round() {
        return domain(format!("Φ₁ outage form needs 2μ in N (got μ = {})", 0.5 * two_mu));
    }
    Ok(clamp01(pre * ilhi_mn_integer(&iq)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rayleigh_reduction() {
        let m = FadingModel::Rician { n: 0.0 };
        let p = snr_pdf(&m, 2.0, 1.5).unwrap();
        assert!((p - (-0.75f64).exp() / 2.0).abs() < 1e-15);
        let q = OutageQuery::new(m, 2.0, 1.5);
        let want = -(-0.75f64).exp_m1();
        assert!((outage(&q, OutageRoute::Analytic).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn zero_threshold() {
        let q = OutageQuery::new(FadingModel::EtaMu { eta: 0.5, mu: 1.0 }, 1.0, 0.0);
        assert_eq!(outage(&q, OutageRoute::Analytic).unwrap(), 0.0);
        assert_eq!(outage(&q, OutageRoute::Oracle).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_lambda() {
        let q = OutageQuery::new(FadingModel::LambdaMu { lambda: 1.0, mu: 1.0 }, 1.0, 1.0);
        assert!(outage(&q, OutageRoute::Analytic).is_err());
    }
}
