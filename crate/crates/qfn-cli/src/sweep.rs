//! Parameter sweeps to CSV: one column per route plus the oracle.

use crate::num::{db_to_linear, parse_decimal};
use qfn::capacity::RicianChannel;
use qfn::fading::{outage, outage_humbert, FadingModel, OutageQuery, OutageRoute};
use qfn::ilhi::{ilhi_eval, ilhi_poly, ilhi_upper_approx, IlhiQuery};
use qfn::nuttall::{nuttall_eval, nuttall_poly, nuttall_upper, NuttallQuery};
use qfn::rice::{rice_ie_bounds, rice_ie_eval, rice_ie_poly, RiceIeQuery};
use qfn::toronto::{toronto_bounds, toronto_eval, toronto_poly, toronto_upper_approx, TorontoQuery};
use qfn::{oracle, Method};
use rayon::prelude::*;
use std::collections::BTreeMap;

pub const MAX_POINTS: usize = 1_000_000;

pub type Params = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Nuttall,
    Toronto,
    RiceIe,
    Ilhi,
    Outage,
    CapacitySiso,
}

impl Target {
    pub fn parse(s: &str) -> Option<Target> {
        Some(match s {
            "nuttall" => Target::Nuttall,
            "toronto" => Target::Toronto,
            "rice-ie" => Target::RiceIe,
            "ilhi" => Target::Ilhi,
            "outage" => Target::Outage,
            "capacity-siso" => Target::CapacitySiso,
            _ => return None,
        })
    }

    /// Parameter names; the SNR ones also accept a `_db` spelling.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Target::Nuttall => &["m", "n", "a", "b", "p"],
            Target::Toronto => &["m", "n", "r", "b", "p"],
            Target::RiceIe => &["k", "x", "p"],
            Target::Ilhi => &["m", "n", "a", "x", "p"],
            Target::Outage => &["alpha", "eta", "lambda", "kappa", "mu", "n", "gamma_bar", "gamma_th"],
            Target::CapacitySiso => &["n", "gamma_bar", "gamma0", "gamma_th"],
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Target::Nuttall => &["kdf", "halfint", "series", "poly", "upper_bound", "oracle"],
            Target::Toronto => &["halfint", "odd", "kdf", "via_nuttall", "series", "poly", "lower", "upper", "upper_approx", "oracle"],
            Target::RiceIe => &["humbert", "series", "poly", "lower", "upper", "oracle"],
            Target::Ilhi => &["halfint", "mn_integer", "neg_n", "zero", "series", "poly", "upper_approx", "oracle"],
            Target::Outage => &["analytic", "humbert", "oracle"],
            Target::CapacitySiso => &["capacity_per_hz", "outage", "inverse_moment"],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    /// `name=start:stop:count`
    pub fn parse(s: &str) -> Result<Axis, String> {
        let (name, spec) = s.split_once('=').ok_or_else(|| format!("grid '{s}' is not name=start:stop:count"))?;
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid '{s}' is not name=start:stop:count"));
        }
        let count: usize = parts[2].parse().map_err(|_| format!("grid count '{}' is not a positive integer", parts[2]))?;
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        Ok(Axis { name: name.to_string(), start: parse_decimal(parts[0])?, stop: parse_decimal(parts[1])?, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: Target,
    pub model: Option<String>,
    pub fixed: Params,
    pub axes: Vec<Axis>,
}

fn canonical(target: Target, name: &str) -> Result<(String, bool), String> {
    let (base, db) = match name.strip_suffix("_db") {
        Some(b) if b.starts_with("gamma") => (b, true),
        _ => (name, false),
    };
    if !target.params().contains(&base) {
        return Err(format!("unknown parameter '{name}' (expected one of {})", target.params().join(", ")));
    }
    Ok((base.to_string(), db))
}

/// Builds a fading model from its name and parameters.
pub fn fading_model(name: &str, p: &Params) -> Result<FadingModel, String> {
    let get = |k: &str| p.get(k).copied().ok_or_else(|| format!("model {name} needs --{k}"));
    let alpha = || p.get("alpha").copied().ok_or_else(|| format!("model {name} needs --alpha"));
    let m = match name {
        "eta-mu" => FadingModel::EtaMu { eta: get("eta")?, mu: get("mu")? },
        "lambda-mu" => FadingModel::LambdaMu { lambda: get("lambda")?, mu: get("mu")? },
        "kappa-mu" => FadingModel::KappaMu { kappa: get("kappa")?, mu: get("mu")? },
        "alpha-eta-mu" => FadingModel::AlphaEtaMu { alpha: alpha()?, eta: get("eta")?, mu: get("mu")? },
        "alpha-lambda-mu" => FadingModel::AlphaLambdaMu { alpha: alpha()?, lambda: get("lambda")?, mu: get("mu")? },
        "alpha-kappa-mu" => FadingModel::AlphaKappaMu { alpha: alpha()?, kappa: get("kappa")?, mu: get("mu")? },
        "rician" => FadingModel::Rician { n: get("n")? },
        _ => {
            return Err(format!(
                "unknown model '{name}' (eta-mu, lambda-mu, kappa-mu, alpha-eta-mu, alpha-lambda-mu, alpha-kappa-mu, rician)"
            ))
        }
    };
    m.validate().map_err(|e| e.to_string())?;
    Ok(m)
}

fn get(p: &Params, k: &str) -> Result<f64, String> {
    p.get(k).copied().ok_or_else(|| format!("missing parameter '{k}'"))
}

fn ok<T>(r: qfn::Result<T>, f: impl Fn(T) -> f64) -> Option<f64> {
    r.ok().map(f)
}

fn evaluate(target: Target, model: Option<&str>, p: &Params) -> Result<Vec<Option<f64>>, String> {
    let order = |p: &Params| p.get("p").map_or(20, |v| *v as usize);
    Ok(match target {
        Target::Nuttall => {
            let q = NuttallQuery::new(get(p, "m")?, get(p, "n")?, get(p, "a")?, get(p, "b")?);
            vec![
                ok(nuttall_eval(&q, Method::Kdf, 0), |r| r.value),
                ok(nuttall_eval(&q, Method::Halfint, 0), |r| r.value),
                ok(nuttall_eval(&q, Method::Series, 0), |r| r.value),
                ok(nuttall_poly(&q, order(p)), |r| r.value),
                ok(nuttall_upper(&q), |v| v),
                ok(oracle::nuttall(q.m, q.n, q.a, q.b), |v| v),
            ]
        }
        Target::Toronto => {
            let q = TorontoQuery::new(get(p, "m")?, get(p, "n")?, get(p, "r")?, get(p, "b")?);
            let bounds = toronto_bounds(&q);
            let mut v: Vec<Option<f64>> = [Method::Halfint, Method::Odd, Method::Kdf, Method::ViaNuttall, Method::Series]
                .iter()
                .map(|&m| ok(toronto_eval(&q, m, 0), |r| r.value))
                .collect();
            v.push(ok(toronto_poly(&q, order(p)), |r| r.value));
            v.push(bounds.as_ref().ok().map(|i| i.lo));
            v.push(bounds.as_ref().ok().map(|i| i.hi));
            v.push(ok(toronto_upper_approx(&q), |u| u.value));
            v.push(ok(oracle::toronto(q.m, q.n, q.r, q.b), |v| v));
            v
        }
        Target::RiceIe => {
            let q = RiceIeQuery::new(get(p, "k")?, get(p, "x")?);
            let bounds = rice_ie_bounds(&q);
            vec![
                ok(rice_ie_eval(&q, Method::Humbert, 0), |r| r.value),
                ok(rice_ie_eval(&q, Method::Series, 0), |r| r.value),
                ok(rice_ie_poly(&q, order(p)), |r| r.value),
                bounds.as_ref().ok().map(|i| i.lo),
                bounds.as_ref().ok().map(|i| i.hi),
                ok(oracle::rice_ie(q.k, q.x), |v| v),
            ]
        }
        Target::Ilhi => {
            let q = IlhiQuery::new(get(p, "m")?, get(p, "n")?, get(p, "a")?, get(p, "x")?);
            let mut v: Vec<Option<f64>> = [Method::Halfint, Method::MnInteger, Method::NegN, Method::Zero, Method::Series]
                .iter()
                .map(|&m| ok(ilhi_eval(&q, m, 0), |r| r.value))
                .collect();
            let p_order = p.get("p").map_or(30, |v| *v as usize);
            v.push(ok(ilhi_poly(&q, p_order), |r| r.value));
            v.push(ok(ilhi_upper_approx(&q), |v| v));
            v.push(ok(oracle::ilhi(q.m, q.n, q.a, q.x), |v| v));
            v
        }
        Target::Outage => {
            let name = model.ok_or("outage sweep needs --model")?;
            let q = OutageQuery::new(fading_model(name, p)?, get(p, "gamma_bar")?, get(p, "gamma_th")?);
            vec![ok(outage(&q, OutageRoute::Analytic), |v| v), ok(outage_humbert(&q), |v| v), ok(outage(&q, OutageRoute::Oracle), |v| v)]
        }
        Target::CapacitySiso => {
            let ch = RicianChannel::new(get(p, "n")?, get(p, "gamma_bar")?, 1.0);
            let g0 = get(p, "gamma0")?;
            let gth = p.get("gamma_th").copied().unwrap_or(g0);
            let r = qfn::capacity::tifr_capacity_rician(&ch, g0, gth);
            vec![r.as_ref().ok().map(|r| r.capacity_per_hz), r.as_ref().ok().map(|r| r.outage_at_cutoff), ok(ch.inverse_moment(g0), |v| v)]
        }
    })
}

fn fmt_cell(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:e}"),
        _ => String::new(),
    }
}

/// Total grid size, refusing anything above [`MAX_POINTS`].
pub fn grid_size(axes: &[Axis]) -> Result<usize, String> {
    let mut n: usize = 1;
    for a in axes {
        n = n.checked_mul(a.count).filter(|&n| n <= MAX_POINTS).ok_or_else(|| format!("grid exceeds {MAX_POINTS} points"))?;
    }
    Ok(n)
}

/// Runs the sweep and returns the CSV text (LF line endings, header first).
pub fn run_sweep(spec: &SweepSpec) -> Result<String, String> {
    if spec.axes.is_empty() || spec.axes.len() > 2 {
        return Err("a sweep needs one or two --grid axes".into());
    }
    let total = grid_size(&spec.axes)?;
    let mut fixed = Params::new();
    let mut header = Vec::new();
    let mut axis_db = Vec::new();
    for a in &spec.axes {
        let (base, db) = canonical(spec.target, &a.name)?;
        if spec.fixed.contains_key(&base) || header.contains(&a.name) {
            return Err(format!("parameter '{}' is both swept and fixed", a.name));
        }
        header.push(a.name.clone());
        axis_db.push((base, db));
    }
    for (k, v) in &spec.fixed {
        let (base, db) = canonical(spec.target, k)?;
        fixed.insert(base, if db { db_to_linear(*v) } else { *v });
    }
    header.extend(spec.target.columns().iter().map(|s| s.to_string()));
    let inner = spec.axes.get(1).map_or(1, |a| a.count);
    let rows: Result<Vec<String>, String> = (0..total)
        .into_par_iter()
        .map(|i| {
            let idx = [i / inner, i % inner];
            let mut p = fixed.clone();
            let mut shown = Vec::new();
            for (j, a) in spec.axes.iter().enumerate() {
                let x = a.value(idx[j]);
                let (base, db) = &axis_db[j];
                p.insert(base.clone(), if *db { db_to_linear(x) } else { x });
                shown.push(format!("{x:e}"));
            }
            let vals = evaluate(spec.target, spec.model.as_deref(), &p)?;
            shown.extend(vals.into_iter().map(fmt_cell));
            Ok(shown.join(","))
        })
        .collect();
    let mut out = header.join(",");
    out.push('\n');
    for r in rows? {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a = Axis::parse("b=0:4:81").unwrap();
        assert_eq!((a.count, a.value(80)), (81, 4.0));
        assert_eq!(Axis::parse("b=1:9:1").unwrap().value(0), 1.0);
        assert!(Axis::parse("b=0:4").is_err());
        assert!(Axis::parse("b=0:4:0").is_err());
    }

    #[test]
    fn refuses_huge_grid() {
        let a = Axis { name: "b".into(), start: 0.0, stop: 1.0, count: 1001 };
        assert!(grid_size(&[a.clone(), a]).is_err());
    }
}
