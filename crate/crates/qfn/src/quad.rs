//! Adaptive Gauss-Kronrod (7/15) quadrature with a global error heap.

use crate::error::{domain, Error, Result};
use crate::sum::Acc;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { abs_tol: 1e-15, rel_tol: 1e-12, max_subdivisions: 50_000 }
    }
}

#[derive(Clone, Copy)]
enum Map {
    Id,
    // x = lo − ln u, u ∈ (0, 1]
    Tail(f64),
    // x = lo + w^q
    Power(f64, f64),
}

impl Map {
    #[inline]
    fn eval(self, f: &dyn Fn(f64) -> f64, t: f64) -> f64 {
        match self {
            Map::Id => f(t),
            Map::Tail(lo) => {
                if t <= 0.0 {
                    return 0.0;
                }
                let v = f(lo - t.ln());
                if v == 0.0 {
                    0.0
                } else {
                    v / t
                }
            }
            Map::Power(lo, q) => {
                if t <= 0.0 {
                    return 0.0;
                }
                q * t.powf(q - 1.0) * f(lo + t.powf(q))
            }
        }
    }
}

struct Seg {
    a: f64,
    b: f64,
    map: Map,
    val: f64,
    err: f64,
    order: usize,
}

impl PartialEq for Seg {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err && self.order == o.order
    }
}
impl Eq for Seg {}
impl PartialOrd for Seg {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Seg {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err).then(o.order.cmp(&self.order))
    }
}

fn kronrod(f: &dyn Fn(f64) -> f64, map: Map, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = map.eval(f, c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = map.eval(f, c - dx) + map.eval(f, c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    let k = k * h;
    let g = g * h;
    let err = (k - g).abs();
    if !k.is_finite() {
        return (k, f64::INFINITY);
    }
    (k, err)
}

impl Quadrature {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol >= 1e-13) || max_subdivisions == 0 || max_subdivisions > 1_000_000 {
            return domain("quadrature needs abs_tol > 0, rel_tol >= 1e-13, 1 <= max_subdivisions <= 1e6");
        }
        Ok(Quadrature { abs_tol, rel_tol, max_subdivisions })
    }

    /// ∫_lo^hi f; `hi` may be +∞.
    pub fn integrate(&self, f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<(f64, f64)> {
        self.integrate_points(f, &[lo, hi])
    }

    /// Integral over consecutive breakpoints; the last one may be +∞.
    pub fn integrate_points(&self, f: impl Fn(f64) -> f64, pts: &[f64]) -> Result<(f64, f64)> {
        self.run(&f, pts, None)
    }

    /// Like [`Quadrature::integrate_points`], with an integrable endpoint behaviour
    /// f(x) ~ (x − pts[0])^s, s > −1, removed by a power substitution.
    pub fn integrate_endpoint(&self, f: impl Fn(f64) -> f64, pts: &[f64], s: f64) -> Result<(f64, f64)> {
        if !(s > -1.0) {
            return domain(format!("endpoint exponent {s} is not integrable"));
        }
        self.run(&f, pts, Some(s))
    }

    fn run(&self, f: &dyn Fn(f64) -> f64, pts: &[f64], sing: Option<f64>) -> Result<(f64, f64)> {
        if pts.len() < 2 {
            return domain("need at least two breakpoints");
        }
        let mut segs = Vec::new();
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !(a <= b) || a.is_infinite() {
                return domain(format!("bad integration range [{a}, {b}]"));
            }
            if a == b {
                continue;
            }
            let first = segs.is_empty();
            match (b.is_infinite(), sing.filter(|_| first)) {
                (false, None) => segs.push((a, b, Map::Id)),
                (true, None) => segs.push((0.0, 1.0, Map::Tail(a))),
                (false, Some(s)) => segs.push((0.0, (b - a).powf(1.0 + s), Map::Power(a, 1.0 / (1.0 + s)))),
                (true, Some(s)) => {
                    segs.push((0.0, 1.0, Map::Power(a, 1.0 / (1.0 + s))));
                    segs.push((0.0, 1.0, Map::Tail(a + 1.0)));
                }
            }
        }
        if segs.is_empty() {
            return Ok((0.0, 0.0));
        }
        let mut heap = BinaryHeap::new();
        let mut order = 0;
        let mut total = 0.0;
        let mut total_err = 0.0;
        for (a, b, map) in segs {
            let (val, err) = kronrod(f, map, a, b);
            total += val;
            total_err += err;
            heap.push(Seg { a, b, map, val, err, order });
            order += 1;
        }
        let mut frozen: Vec<Seg> = Vec::new();
        let mut splits = 0;
        loop {
            if !total.is_finite() {
                return Err(Error::Accuracy { best: total, err: f64::INFINITY });
            }
            let tol = self.abs_tol.max(self.rel_tol * total.abs());
            if total_err <= tol {
                break;
            }
            if splits >= self.max_subdivisions {
                let best = sum_segments(&heap, &frozen);
                return Err(Error::Accuracy { best, err: total_err });
            }
            let Some(s) = heap.pop() else { break };
            let mid = 0.5 * (s.a + s.b);
            if !(mid > s.a && mid < s.b) || (s.b - s.a) < 1e-14 * s.a.abs().max(s.b.abs()) {
                // cannot refine further; keep its error
                frozen.push(s);
                if heap.is_empty() {
                    break;
                }
                continue;
            }
            let (v1, e1) = kronrod(f, s.map, s.a, mid);
            let (v2, e2) = kronrod(f, s.map, mid, s.b);
            total += v1 + v2 - s.val;
            total_err += e1 + e2 - s.err;
            heap.push(Seg { a: s.a, b: mid, map: s.map, val: v1, err: e1, order });
            heap.push(Seg { a: mid, b: s.b, map: s.map, val: v2, err: e2, order: order + 1 });
            order += 2;
            splits += 1;
        }
        let err: f64 = heap.iter().chain(frozen.iter()).map(|s| s.err).sum();
        Ok((sum_segments(&heap, &frozen), err))
    }
}

fn sum_segments(heap: &BinaryHeap<Seg>, frozen: &[Seg]) -> f64 {
    let mut all: Vec<(usize, f64)> = heap.iter().chain(frozen.iter()).map(|s| (s.order, s.val)).collect();
    all.sort_by_key(|p| p.0);
    let mut acc = Acc::new();
    for (_, v) in all {
        acc.add(v);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let q = Quadrature::default();
        let (v, _) = q.integrate(|_| 1.0, 0.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let (v, _) = q.integrate(|x| (-x).exp(), 0.0, f64::INFINITY).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        let q = Quadrature::default();
        let (v, _) = q.integrate_endpoint(|x| x.powf(-0.75), &[0.0, 1.0], -0.75).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        let (v, _) = q.integrate_endpoint(|x| x.powf(-0.5) * (-x).exp(), &[0.0, f64::INFINITY], -0.5).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_best() {
        let q = Quadrature::new(1e-300, 1e-13, 3).unwrap();
        let r = q.integrate(|x| (50.0 * x).sin().abs(), 0.0, 10.0);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }

    #[test]
    fn bad_config_refused() {
        assert!(Quadrature::new(1e-12, 1e-15, 10).is_err());
        assert!(Quadrature::new(1e-12, 1e-10, 2_000_000).is_err());
    }
}
