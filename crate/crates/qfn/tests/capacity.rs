//! Capacity closed forms against direct quadrature of the SNR density.

use qfn::capacity::*;
use qfn::fading::{snr_pdf, FadingModel};
use qfn::quad::Quadrature;

fn quad() -> Quadrature {
    Quadrature::new(1e-15, 1e-13, 200_000).unwrap()
}

fn tail_points(g0: f64, gb: f64) -> [f64; 4] {
    [g0, g0.max(gb), g0.max(4.0 * gb), f64::INFINITY]
}

fn central_2x2() -> MimoCoeffs {
    MimoCoeffs { m: 2, n: 2, t: 0, omega: vec![], c: vec![vec![2.0, -1.0], vec![-1.0, 1.0]], k_norm: 1.0, k_factor: 0.0 }
}

#[test]
fn siso_inverse_moment_and_outage() {
    let q = quad();
    for &(n, gb) in &[(0.0, 1.0), (0.5, 2.0), (1.0, 5.0), (3.0, 0.5)] {
        let ch = RicianChannel::new(n, gb, 1.0);
        let model = FadingModel::Rician { n };
        for &g0 in &[0.01, 0.3, 2.0] {
            let (im, _) = q.integrate_points(|g| snr_pdf(&model, gb, g).unwrap() / g, &tail_points(g0, gb)).unwrap();
            let got = ch.inverse_moment(g0).unwrap();
            assert!((im - got).abs() < 1e-12 * im, "n={n} gb={gb} g0={g0}: {got} vs {im}");
            let (p, _) = q.integrate_points(|g| snr_pdf(&model, gb, g).unwrap(), &[0.0, g0]).unwrap();
            assert!((p - ch.outage(g0).unwrap()).abs() < 1e-13);
        }
    }
}

#[test]
fn siso_cutoff_condition_by_quadrature() {
    let q = quad();
    for &(n, gb) in &[(0.0, 0.2), (1.0, 5.0), (2.0, 31.6)] {
        let ch = RicianChannel::new(n, gb, 1.0);
        let best = tifr_optimal_rician(&ch).unwrap();
        assert!(best.solver_residual.unwrap() <= 1e-8);
        let g0 = best.cutoff_gamma0;
        let model = FadingModel::Rician { n };
        let (lhs, _) = q.integrate_points(|g| (1.0 / g0 - 1.0 / g) * snr_pdf(&model, gb, g).unwrap(), &tail_points(g0, gb)).unwrap();
        assert!((lhs - 1.0).abs() < 1e-10, "n={n} gb={gb}: {lhs}");
    }
}

#[test]
fn miso_against_density() {
    let q = quad();
    for &(k, lp, na, gb) in &[(1.0, 1.0, 2, 5.0), (3.0, 2.0, 4, 1.0), (0.5, 3.0, 3, 10.0), (2.0, 1.0, 1, 2.0)] {
        let ch = MisoSimoChannel::new(k, lp, na, gb);
        let (total, _) = q.integrate_points(|g| ch.pdf(g), &[0.0, gb, 4.0 * gb, f64::INFINITY]).unwrap();
        assert!((total - 1.0).abs() < 1e-12);
        for &g0 in &[0.05, 0.5, 3.0] {
            let (im, _) = q.integrate_points(|g| ch.pdf(g) / g, &tail_points(g0, gb)).unwrap();
            assert!((im - ch.inverse_moment(g0).unwrap()).abs() < 1e-12 * im);
            let (p, _) = q.integrate_points(|g| ch.pdf(g), &[0.0, g0]).unwrap();
            assert!((p - ch.outage(g0).unwrap()).abs() < 1e-13);
        }
        let cut = optimal_cutoff_miso(&ch).unwrap();
        assert!(cut.residual <= 1e-8);
        // the inverse-Nuttall target is never admissible
        assert!(cut.closed_form.is_none() && cut.closed_form_target < 0.0);
    }
}

#[test]
fn mimo_against_density() {
    let q = quad();
    let gb = 3.0;
    // arbitrary non-central coefficients: the closed forms are linear in c, so any c exercises them
    let noncentral = MimoCoeffs { m: 2, n: 3, t: 1, omega: vec![1.5], c: vec![vec![0.7, 0.2], vec![0.1, 0.4]], k_norm: 0.9, k_factor: 2.0 };
    for co in [central_2x2(), noncentral] {
        for &g0 in &[0.05, 0.5, 3.0] {
            let (im, _) = q.integrate_points(|g| co.pdf(gb, g) / g, &tail_points(g0, gb)).unwrap();
            assert!((im - co.inverse_moment(gb, g0).unwrap()).abs() < 1e-12 * im.abs());
            let (t, _) = q.integrate_points(|g| co.pdf(gb, g), &tail_points(g0, gb)).unwrap();
            assert!((t - co.tail(gb, g0).unwrap()).abs() < 1e-12);
        }
    }
    let c = central_2x2();
    let (total, _) = q.integrate_points(|g| c.pdf(gb, g), &[0.0, gb, 4.0 * gb, f64::INFINITY]).unwrap();
    assert!((total - 1.0).abs() < 1e-12);
    let (g0, res) = mimo_optimal_cutoff(&c, gb).unwrap();
    assert!(res <= 1e-8);
    let r = mimo_em_ti(&c, gb, g0).unwrap();
    assert!(r.capacity_per_hz > 0.0 && (0.0..1.0).contains(&r.outage));
}

#[test]
fn mimo_reduces_to_simo() {
    for &(k, lp, na, gb) in &[(1.0, 1.0, 2u32, 5.0), (3.0, 2.0, 4, 1.0)] {
        let ch = MisoSimoChannel::new(k, lp, na, gb);
        let w = k * lp;
        let co = MimoCoeffs { m: 1, n: na as usize, t: 1, omega: vec![w], c: vec![vec![1.0]], k_norm: (-w).exp(), k_factor: k };
        for &g0 in &[0.1, 0.7] {
            let a = mimo_em_ti(&co, gb, g0).unwrap();
            let b = em_tifr_miso_simo(&ch, g0, g0).unwrap();
            assert!((a.capacity_per_hz - b.capacity_per_hz).abs() < 1e-12);
        }
        let (g_mimo, _) = mimo_optimal_cutoff(&co, gb).unwrap();
        let g_miso = optimal_cutoff_miso(&ch).unwrap().gamma0;
        assert!((g_mimo - g_miso).abs() < 1e-12);
    }
}

#[test]
fn rejects_bad_input() {
    assert!(RicianChannel::new(-1.0, 1.0, 1.0).inverse_moment(0.1).is_err());
    assert!(MisoSimoChannel::new(1.0, 1.0, 0, 1.0).outage(0.1).is_err());
    let mut c = central_2x2();
    c.c.pop();
    assert!(c.validate().is_err());
}
