//! Truncated channel inversion with fixed rate (TIFR) over Rician channels:
//! SISO, MISO/SIMO, and MIMO eigenmode inversion with externally supplied
//! Wishart coefficients.
//!
//! Cutoffs solve ∫_{γ₀}^∞ (1/γ₀ − 1/γ) p(γ) dγ = 1 by bracketing.

use crate::error::{domain, Error, Result};
use crate::kernel::{i_scaled, marcum_q, upper_inc_gamma};
use crate::nuttall::{inverse_nuttall_b, nuttall_series, NuttallQuery};
use crate::solve::{bracket_root, expand_upper};
use crate::toronto::{toronto_series, TorontoQuery};

const XTOL: f64 = 1e-15;

fn nuttall(m: f64, n: f64, a: f64, b: f64) -> Result<f64> {
    Ok(nuttall_series(&NuttallQuery::new(m, n, a, b), 1e-17)?.value)
}

fn positive(v: f64, what: &str) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return domain(format!("{what} must be positive and finite (got {v})"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TifrResult {
    /// Spectral efficiency C/B in bits/s/Hz.
    pub capacity_per_hz: f64,
    pub cutoff_gamma0: f64,
    /// Outage probability at the threshold used in the capacity.
    pub outage_at_cutoff: f64,
    /// Cutoff-condition residual when γ₀ came from a solver.
    pub solver_residual: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianChannel {
    /// Nakagami-n parameter, K = n².
    pub n_rice: f64,
    pub gamma_bar: f64,
    pub bandwidth_hz: f64,
}

impl RicianChannel {
    pub fn new(n_rice: f64, gamma_bar: f64, bandwidth_hz: f64) -> Self {
        RicianChannel { n_rice, gamma_bar, bandwidth_hz }
    }

    fn check(&self) -> Result<()> {
        if !(self.n_rice >= 0.0) || !self.n_rice.is_finite() {
            return domain(format!("Nakagami-n must be >= 0 (got {})", self.n_rice));
        }
        positive(self.gamma_bar, "gamma_bar")?;
        positive(self.bandwidth_hz, "bandwidth")
    }

    fn k1(&self) -> f64 {
        1.0 + self.n_rice * self.n_rice
    }

    fn b_of(&self, g: f64) -> f64 {
        (2.0 * g * self.k1() / self.gamma_bar).sqrt()
    }

    /// ∫_{γ₀}^∞ p(γ)/γ dγ
    pub fn inverse_moment(&self, gamma0: f64) -> Result<f64> {
        self.check()?;
        positive(gamma0, "gamma0")?;
        let a = self.n_rice * std::f64::consts::SQRT_2;
        Ok(2.0 * self.k1() / self.gamma_bar * nuttall(-1.0, 0.0, a, self.b_of(gamma0))?)
    }

    pub fn outage(&self, gamma_th: f64) -> Result<f64> {
        self.check()?;
        if gamma_th == 0.0 {
            return Ok(0.0);
        }
        let b = (self.k1() * gamma_th / self.gamma_bar).sqrt();
        Ok(toronto_series(&TorontoQuery::new(1.0, 0.0, self.n_rice, b), 1e-17)?.value)
    }
}

/// SISO TIFR spectral efficiency at cutoff γ₀ and outage threshold γ_th.
pub fn tifr_capacity_rician(ch: &RicianChannel, gamma0: f64, gamma_th: f64) -> Result<TifrResult> {
    ch.check()?;
    if !(gamma_th >= 0.0) {
        return domain("gamma_th must be >= 0");
    }
    let i11 = ch.inverse_moment(gamma0)?;
    let p = ch.outage(gamma_th)?;
    Ok(TifrResult {
        capacity_per_hz: (1.0 / i11).ln_1p() / std::f64::consts::LN_2 * (1.0 - p),
        cutoff_gamma0: gamma0,
        outage_at_cutoff: p,
        solver_residual: None,
    })
}

// γ̄ Q₁ / (γ̄ + 2(1+n²) Q_{−1,0})
fn siso_fixed_point(ch: &RicianChannel, g: f64) -> Result<f64> {
    let a = ch.n_rice * std::f64::consts::SQRT_2;
    let b = ch.b_of(g);
    let q1 = marcum_q(1.0, a, b)?;
    let qm = nuttall(-1.0, 0.0, a, b)?;
    Ok(ch.gamma_bar * q1 / (ch.gamma_bar + 2.0 * ch.k1() * qm))
}

/// Optimal SISO cutoff and its fixed-point residual |γ₀ − rhs(γ₀)|.
pub fn optimal_cutoff_rician(ch: &RicianChannel) -> Result<(f64, f64)> {
    ch.check()?;
    // rhs ≤ Q₁ < 1, and rhs ≫ γ₀ as γ₀ → 0
    let g = |x: f64| -> Result<f64> { Ok(x - siso_fixed_point(ch, x)?) };
    let lo = 1e-12 * ch.gamma_bar.min(1.0);
    let g0 = bracket_root(g, lo, 1.0, XTOL)?;
    let res = (g0 - siso_fixed_point(ch, g0)?).abs();
    Ok((g0, res))
}

/// SISO capacity at the optimal cutoff, with γ_th = γ₀.
pub fn tifr_optimal_rician(ch: &RicianChannel) -> Result<TifrResult> {
    let (g0, res) = optimal_cutoff_rician(ch)?;
    let mut r = tifr_capacity_rician(ch, g0, g0)?;
    r.solver_residual = Some(res);
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisoSimoChannel {
    /// Rician K-factor.
    pub k: f64,
    /// LOS power mᴴm.
    pub los_power: f64,
    pub n_ant: u32,
    pub gamma_bar: f64,
}

impl MisoSimoChannel {
    pub fn new(k: f64, los_power: f64, n_ant: u32, gamma_bar: f64) -> Self {
        MisoSimoChannel { k, los_power, n_ant, gamma_bar }
    }

    fn check(&self) -> Result<()> {
        positive(self.k, "K")?;
        positive(self.los_power, "LOS power")?;
        positive(self.gamma_bar, "gamma_bar")?;
        if self.n_ant == 0 {
            return domain("antenna count must be >= 1");
        }
        Ok(())
    }

    pub fn mu_k(&self) -> f64 {
        (self.k + 1.0) / self.gamma_bar
    }

    // non-centrality s = K mᴴm
    fn s(&self) -> f64 {
        self.k * self.los_power
    }

    /// ∫_{γ₀}^∞ p(γ)/γ dγ = 2μ_K (2s)^{−(n−1)/2} Q_{n−2,n−1}(√(2s), √(2μ_K γ₀)).
    pub fn inverse_moment(&self, gamma0: f64) -> Result<f64> {
        self.check()?;
        positive(gamma0, "gamma0")?;
        let n = self.n_ant as f64;
        let a = (2.0 * self.s()).sqrt();
        let q = nuttall(n - 2.0, n - 1.0, a, (2.0 * self.mu_k() * gamma0).sqrt())?;
        Ok(2.0 * self.mu_k() * (2.0 * self.s()).powf(-0.5 * (n - 1.0)) * q)
    }

    /// Outage T_{√(μ_K γ_th)}(2n−1, n−1, √s).
    pub fn outage(&self, gamma_th: f64) -> Result<f64> {
        self.check()?;
        if gamma_th == 0.0 {
            return Ok(0.0);
        }
        let n = self.n_ant as f64;
        let b = (self.mu_k() * gamma_th).sqrt();
        Ok(toronto_series(&TorontoQuery::new(2.0 * n - 1.0, n - 1.0, self.s().sqrt(), b), 1e-17)?.value)
    }

    /// Density of the SNR, for quadrature cross-checks.
    pub fn pdf(&self, gamma: f64) -> f64 {
        if !(gamma > 0.0) {
            return 0.0;
        }
        let n = self.n_ant as f64;
        let (mu, s) = (self.mu_k(), self.s());
        let z = 2.0 * (mu * s * gamma).sqrt();
        mu * (mu * gamma / s).powf(0.5 * (n - 1.0)) * i_scaled(n - 1.0, z) * (z - s - mu * gamma).exp()
    }
}

pub fn em_tifr_miso_simo(ch: &MisoSimoChannel, gamma0: f64, gamma_th: f64) -> Result<TifrResult> {
    ch.check()?;
    if !(gamma_th >= 0.0) {
        return domain("gamma_th must be >= 0");
    }
    let i11 = ch.inverse_moment(gamma0)?;
    let p = ch.outage(gamma_th)?;
    Ok(TifrResult {
        capacity_per_hz: (1.0 / i11).ln_1p() / std::f64::consts::LN_2 * (1.0 - p),
        cutoff_gamma0: gamma0,
        outage_at_cutoff: p,
        solver_residual: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisoCutoff {
    pub gamma0: f64,
    /// |γ₀ − Q_n(·) + γ₀ ∫_{γ₀}^∞ p/γ|
    pub residual: f64,
    /// Closed form through the inverse Nuttall function, when its target is admissible.
    pub closed_form: Option<f64>,
    /// The target −(2s)^{(n−1)/2}/μ_K handed to the inverse Nuttall function.
    pub closed_form_target: f64,
}

fn miso_residual(ch: &MisoSimoChannel, g: f64) -> Result<f64> {
    let n = ch.n_ant as f64;
    let tail = marcum_q(n, (2.0 * ch.s()).sqrt(), (2.0 * ch.mu_k() * g).sqrt())?;
    Ok(tail - g * ch.inverse_moment(g)? - g)
}

fn solve_cutoff(mut h: impl FnMut(f64) -> Result<f64>, scale: f64) -> Result<f64> {
    let lo = 1e-12 * scale;
    if h(lo)? <= 0.0 {
        return Err(Error::Solver(format!("cutoff condition has no sign change above {lo:e}")));
    }
    let hi = expand_upper(&mut h, lo, scale, 1e6 * scale)?;
    bracket_root(h, lo, hi, XTOL * hi)
}

pub fn optimal_cutoff_miso(ch: &MisoSimoChannel) -> Result<MisoCutoff> {
    ch.check()?;
    let g0 = solve_cutoff(|g| miso_residual(ch, g), ch.gamma_bar.min(1.0))?;
    let residual = miso_residual(ch, g0)?.abs();
    let n = ch.n_ant as f64;
    let target = -(2.0 * ch.s()).powf(0.5 * (n - 1.0)) / ch.mu_k();
    let closed_form = inverse_nuttall_b(n - 2.0, n - 1.0, (2.0 * ch.s()).sqrt(), target).ok().map(|b| b * b / (2.0 * ch.mu_k()));
    Ok(MisoCutoff { gamma0: g0, residual, closed_form, closed_form_target: target })
}

/// Wishart expansion data for the unordered-eigenvalue density of HHᴴ.
#[derive(Debug, Clone, PartialEq)]
pub struct MimoCoeffs {
    /// min(Nt, Nr)
    pub m: usize,
    /// max(Nt, Nr)
    pub n: usize,
    /// Number of non-zero non-centrality eigenvalues.
    pub t: usize,
    /// ω_{m−t+1}, …, ω_m
    pub omega: Vec<f64>,
    /// c_{ij}, row-major m × m.
    pub c: Vec<Vec<f64>>,
    /// Normalizer K_{m,n}^{ω}.
    pub k_norm: f64,
    /// Rician K-factor entering μ_K = (K+1)/γ̄.
    pub k_factor: f64,
}

impl MimoCoeffs {
    pub fn d(&self) -> usize {
        self.n - self.m
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n < self.m {
            return domain(format!("MIMO coefficients need 1 <= m <= n (got m={}, n={})", self.m, self.n));
        }
        if self.t > self.m || self.omega.len() != self.t {
            return domain(format!("MIMO coefficients need t <= m and |omega| = t (got t={}, |omega|={})", self.t, self.omega.len()));
        }
        if self.c.len() != self.m || self.c.iter().any(|r| r.len() != self.m) {
            return domain(format!("c must be {0} x {0}", self.m));
        }
        if self.omega.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return domain("omega entries must be positive");
        }
        if self.c.iter().flatten().any(|v| !v.is_finite()) || !self.k_norm.is_finite() {
            return domain("c and k_norm must be finite");
        }
        if !(self.k_factor >= 0.0) || !self.k_factor.is_finite() {
            return domain("k_factor must be >= 0");
        }
        Ok(())
    }

    pub fn mu_k(&self, gamma_bar: f64) -> f64 {
        (self.k_factor + 1.0) / gamma_bar
    }

    // (1/m) Σ_i [Σ_{j≤m−t} c Γ(d+i+j−1+shift, μγ₀) + Σ_{j>m−t} c e^{ω} Q_{d+2i−1+2shift,d}(√(2ω), √(2μγ₀)) / (2^{i−1+shift+d/2} ω^{d/2})]
    // shift = 0 gives the tail mass, shift = −1 gives ∫ p/γ divided by μ_K.
    fn moment(&self, mu: f64, gamma0: f64, shift: i32) -> Result<f64> {
        let d = self.d() as f64;
        let b = (2.0 * mu * gamma0).sqrt();
        let mut acc = 0.0;
        for i in 1..=self.m {
            let fi = i as f64;
            for j in 1..=self.m {
                let c = self.c[i - 1][j - 1];
                if c == 0.0 {
                    continue;
                }
                if j <= self.m - self.t {
                    acc += c * upper_inc_gamma(d + fi + j as f64 - 1.0 + shift as f64, mu * gamma0)?;
                } else {
                    let w = self.omega[j - (self.m - self.t) - 1];
                    let q = nuttall(d + 2.0 * fi - 1.0 + 2.0 * shift as f64, d, (2.0 * w).sqrt(), b)?;
                    let ln_den = (fi - 1.0 + shift as f64 + 0.5 * d) * std::f64::consts::LN_2 + 0.5 * d * w.ln() - w;
                    acc += c * q * (-ln_den).exp();
                }
            }
        }
        Ok(self.k_norm * acc / self.m as f64)
    }

    /// Tail mass ∫_{γ₀}^∞ p(γ) dγ.
    pub fn tail(&self, gamma_bar: f64, gamma0: f64) -> Result<f64> {
        self.validate()?;
        if gamma0 == 0.0 {
            return self.moment(self.mu_k(gamma_bar), 0.0, 0);
        }
        self.moment(self.mu_k(gamma_bar), gamma0, 0)
    }

    /// ∫_{γ₀}^∞ p(γ)/γ dγ.
    pub fn inverse_moment(&self, gamma_bar: f64, gamma0: f64) -> Result<f64> {
        self.validate()?;
        positive(gamma0, "gamma0")?;
        let mu = self.mu_k(gamma_bar);
        Ok(mu * self.moment(mu, gamma0, -1)?)
    }

    /// The eigenvalue SNR density built from the coefficients.
    pub fn pdf(&self, gamma_bar: f64, gamma: f64) -> f64 {
        if !(gamma > 0.0) {
            return 0.0;
        }
        let mu = self.mu_k(gamma_bar);
        let d = self.d() as f64;
        let mut acc = 0.0;
        for i in 1..=self.m {
            let fi = i as f64;
            for j in 1..=self.m {
                let c = self.c[i - 1][j - 1];
                if j <= self.m - self.t {
                    let e = d + fi + j as f64 - 2.0;
                    acc += c * mu * (e * (mu * gamma).ln() - mu * gamma).exp();
                } else {
                    // ₀F₁(d+1; z)/d! = z^{−d/2} I_d(2√z)
                    let w = self.omega[j - (self.m - self.t) - 1];
                    let z = mu * gamma * w;
                    let s = 2.0 * z.sqrt();
                    let ln = (d + fi) * mu.ln() + (d + fi - 1.0) * gamma.ln() - 0.5 * d * z.ln() + s - mu * gamma;
                    acc += c * i_scaled(d, s) * ln.exp();
                }
            }
        }
        self.k_norm * acc / self.m as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MimoResult {
    /// m log₂(1 + κ)(1 − P_out), bits/s/Hz.
    pub capacity_per_hz: f64,
    pub outage: f64,
    /// Per-eigenmode SNR after inversion, 1/(m ∫_{γ₀}^∞ p/γ).
    pub kappa: f64,
}

pub fn mimo_em_ti(coeffs: &MimoCoeffs, gamma_bar: f64, gamma0: f64) -> Result<MimoResult> {
    coeffs.validate()?;
    positive(gamma_bar, "gamma_bar")?;
    let kappa = 1.0 / (coeffs.m as f64 * coeffs.inverse_moment(gamma_bar, gamma0)?);
    let outage = 1.0 - coeffs.tail(gamma_bar, gamma0)?;
    let capacity_per_hz = coeffs.m as f64 * kappa.ln_1p() / std::f64::consts::LN_2 * (1.0 - outage);
    Ok(MimoResult { capacity_per_hz, outage, kappa })
}

fn mimo_residual(coeffs: &MimoCoeffs, gamma_bar: f64, g: f64) -> Result<f64> {
    Ok(coeffs.tail(gamma_bar, g)? - g * coeffs.inverse_moment(gamma_bar, g)? - g)
}

/// Cutoff γ₀ with ∫_{γ₀}^∞ (1/γ₀ − 1/γ) p dγ = 1 for the eigenvalue density; returns (γ₀, residual).
pub fn mimo_optimal_cutoff(coeffs: &MimoCoeffs, gamma_bar: f64) -> Result<(f64, f64)> {
    coeffs.validate()?;
    positive(gamma_bar, "gamma_bar")?;
    let g0 = solve_cutoff(|g| mimo_residual(coeffs, gamma_bar, g), gamma_bar.min(1.0))?;
    Ok((g0, mimo_residual(coeffs, gamma_bar, g0)?.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rayleigh_inverse_moment() {
        // n = 0: ∫_{γ₀}^∞ e^{−γ/γ̄}/(γ̄ γ) dγ = E₁(γ₀/γ̄)/γ̄
        let ch = RicianChannel::new(0.0, 2.0, 1.0);
        let want = crate::kernel::expint_e1(0.05).unwrap() / 2.0;
        assert!((ch.inverse_moment(0.1).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn siso_cutoff_residual() {
        let ch = RicianChannel::new(1.0, 5.0, 1.0);
        let (g0, res) = optimal_cutoff_rician(&ch).unwrap();
        assert!(g0 > 0.0 && g0 <= 1.0, "{g0}");
        assert!(res <= 1e-8);
    }

    #[test]
    fn mimo_single_mode_is_simo() {
        let ch = MisoSimoChannel::new(1.0, 1.0, 2, 5.0);
        let w = ch.k * ch.los_power;
        let co = MimoCoeffs { m: 1, n: 2, t: 1, omega: vec![w], c: vec![vec![1.0]], k_norm: (-w).exp(), k_factor: 1.0 };
        let a = mimo_em_ti(&co, 5.0, 0.3).unwrap();
        let b = em_tifr_miso_simo(&ch, 0.3, 0.3).unwrap();
        assert!((a.capacity_per_hz - b.capacity_per_hz).abs() < 1e-12);
        assert!((a.outage - b.outage_at_cutoff).abs() < 1e-12);
    }
}
