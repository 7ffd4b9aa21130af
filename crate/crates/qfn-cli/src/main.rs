use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfn::capacity::{
    em_tifr_miso_simo, mimo_em_ti, mimo_optimal_cutoff, optimal_cutoff_miso, tifr_capacity_rician, tifr_optimal_rician, MisoSimoChannel,
    RicianChannel,
};
use qfn::fading::{outage, outage_humbert, OutageQuery, OutageRoute};
use qfn::ilhi::{ilhi_bounds, ilhi_eval, ilhi_poly, ilhi_upper_approx, IlhiQuery};
use qfn::kernel::marcum_q;
use qfn::nuttall::{nuttall_eval, nuttall_poly, nuttall_trunc_bound, nuttall_upper, NuttallQuery};
use qfn::rice::{rice_ie_bounds, rice_ie_eval, rice_ie_poly, rice_ie_trunc_bound, RiceIeQuery};
use qfn::toronto::{toronto_bounds, toronto_eval, toronto_poly, toronto_trunc_bound, toronto_upper_approx, TorontoQuery};
use qfn::{oracle, EvalResult, Method};
use qfn_cli::coeffs::parse_coeffs;
use qfn_cli::num::{db_to_linear, parse_decimal};
use qfn_cli::sweep::{fading_model, run_sweep, Axis, Params, SweepSpec, Target};
use qfn_cli::tables::{run_table, TableId, TableReport};
use qfn_cli::verify::{run_verify, VerifyConfig, VerifyReport};
use serde::Serialize;

const USAGE: u8 = 2;
const NUMERIC: u8 = 1;

#[derive(Parser)]
#[command(name = "qfn", version, about = "Generalized Marcum-type functions, fading outage and TIFR capacity")]
struct Cli {
    /// Output format (default: json for verify, csv for sweep, text otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// PRNG seed; echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function by a chosen route.
    Eval {
        #[arg(value_enum)]
        function: Func,
        #[command(flatten)]
        p: FuncArgs,
        /// Route (kdf, poly, series, oracle, halfint, odd, via-nuttall, humbert, mn-integer, neg-n, zero).
        #[arg(long)]
        method: Option<String>,
        /// Polynomial order for --method poly (default 20, 30 for ilhi).
        #[arg(long = "p")]
        order: Option<usize>,
    },
    /// Bounds, approximations and truncation bounds for one function.
    Bounds {
        #[arg(value_enum)]
        function: Func,
        #[command(flatten)]
        p: FuncArgs,
        /// Truncation order for the polynomial and its truncation bound.
        #[arg(long = "p", default_value_t = 20)]
        order: usize,
    },
    /// Reproduce one of the accuracy tables (I to V).
    Table { id: String },
    /// Evaluate every route over a one- or two-axis grid and emit CSV.
    Sweep {
        /// nuttall, toronto, rice-ie, ilhi, outage or capacity-siso.
        target: String,
        /// Swept axis, name=start:stop:count (give one or two).
        #[arg(long, required = true)]
        grid: Vec<String>,
        /// Fixed parameter, name=value (repeatable).
        #[arg(long = "set")]
        set: Vec<String>,
        /// Fading model for outage sweeps.
        #[arg(long)]
        model: Option<String>,
        #[command(flatten)]
        fixed: SweepFixed,
    },
    /// Outage probability of a fading model.
    Outage {
        /// eta-mu, lambda-mu, kappa-mu, alpha-eta-mu, alpha-lambda-mu, alpha-kappa-mu or rician.
        #[arg(long)]
        model: String,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        snr: Snr,
        #[arg(long, value_parser = decimal)]
        gamma_th: Option<f64>,
        #[arg(long, value_parser = decimal, conflicts_with = "gamma_th")]
        gamma_th_db: Option<f64>,
    },
    /// TIFR capacity and cutoff.
    Capacity {
        #[arg(value_enum)]
        system: System,
        #[command(flatten)]
        snr: Snr,
        /// Nakagami-n parameter (siso).
        #[arg(long, value_parser = decimal)]
        n: Option<f64>,
        /// Rician factor (miso/simo, or overrides the coefficient file for mimo).
        #[arg(long, value_parser = decimal)]
        k_factor: Option<f64>,
        /// Line-of-sight power ‖h̄‖² (miso/simo).
        #[arg(long, value_parser = decimal)]
        los_power: Option<f64>,
        /// Number of antennas on the multi-antenna side (miso/simo).
        #[arg(long)]
        antennas: Option<u32>,
        /// JSON coefficient file (mimo).
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Cutoff; the optimal cutoff is solved for when absent.
        #[arg(long, value_parser = decimal)]
        gamma0: Option<f64>,
        /// Outage threshold (defaults to the cutoff).
        #[arg(long, value_parser = decimal)]
        gamma_th: Option<f64>,
    },
    /// Run the property suite.
    Verify {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        draws: u64,
        #[arg(long, default_value = "1e-7", value_parser = decimal)]
        tol: f64,
        /// Fail on known issues too.
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Func {
    Nuttall,
    Toronto,
    RiceIe,
    Ilhi,
    Marcum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum System {
    Siso,
    Miso,
    Simo,
    Mimo,
}

fn decimal(s: &str) -> Result<f64, String> {
    parse_decimal(s)
}

#[derive(Args, Default)]
struct FuncArgs {
    #[arg(long, value_parser = decimal, allow_hyphen_values = true)]
    m: Option<f64>,
    #[arg(long, value_parser = decimal, allow_hyphen_values = true)]
    n: Option<f64>,
    #[arg(long, value_parser = decimal)]
    a: Option<f64>,
    #[arg(long, value_parser = decimal)]
    b: Option<f64>,
    #[arg(long, value_parser = decimal)]
    r: Option<f64>,
    #[arg(long, value_parser = decimal)]
    k: Option<f64>,
    #[arg(long, value_parser = decimal)]
    x: Option<f64>,
}

#[derive(Args)]
struct Shape {
    #[arg(long, value_parser = decimal)]
    alpha: Option<f64>,
    #[arg(long, value_parser = decimal)]
    eta: Option<f64>,
    #[arg(long, value_parser = decimal, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, value_parser = decimal)]
    kappa: Option<f64>,
    #[arg(long, value_parser = decimal)]
    mu: Option<f64>,
    /// Nakagami-n parameter (rician model).
    #[arg(long = "nakagami-n", value_parser = decimal)]
    nakagami_n: Option<f64>,
}

#[derive(Args)]
struct Snr {
    /// Average SNR, linear.
    #[arg(long, value_parser = decimal)]
    gamma_bar: Option<f64>,
    /// Average SNR in dB.
    #[arg(long, value_parser = decimal, allow_hyphen_values = true, conflicts_with = "gamma_bar")]
    gamma_bar_db: Option<f64>,
}

// fixed parameters accepted as plain flags by sweep
#[derive(Args)]
struct SweepFixed {
    #[command(flatten)]
    func: FuncArgs,
    #[command(flatten)]
    shape: Shape,
    #[command(flatten)]
    snr: Snr,
    #[arg(long, value_parser = decimal)]
    gamma_th: Option<f64>,
    #[arg(long, value_parser = decimal)]
    gamma0: Option<f64>,
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: USAGE, msg: msg.into() }
}

fn numeric(msg: impl ToString) -> Failure {
    Failure { code: NUMERIC, msg: msg.to_string() }
}

/// A finished report: the rendered text and whether it counts as success.
struct Report {
    body: String,
    ok: bool,
}

#[derive(Serialize)]
struct Seeded<'a, T: Serialize> {
    seed: u64,
    #[serde(flatten)]
    report: &'a T,
}

fn json<T: Serialize>(seed: u64, v: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Seeded { seed, report: v }).expect("report serializes");
    s.push('\n');
    s
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

impl Snr {
    fn value(&self) -> Option<f64> {
        self.gamma_bar.or(self.gamma_bar_db.map(db_to_linear))
    }

    fn require(&self) -> Result<f64, Failure> {
        self.value().ok_or_else(|| usage("needs --gamma-bar or --gamma-bar-db"))
    }
}

impl FuncArgs {
    fn pairs(&self) -> [(&'static str, Option<f64>); 7] {
        [("m", self.m), ("n", self.n), ("a", self.a), ("b", self.b), ("r", self.r), ("k", self.k), ("x", self.x)]
    }

    /// The values of `want`, in order; any other flag that was given is a usage error.
    fn take(&self, func: &str, want: &[&str]) -> Result<Vec<f64>, Failure> {
        for (name, v) in self.pairs() {
            if v.is_some() && !want.contains(&name) {
                return Err(usage(format!("{func} does not take --{name}")));
            }
        }
        want.iter()
            .map(|w| self.pairs().iter().find(|p| p.0 == *w).and_then(|p| p.1).ok_or_else(|| usage(format!("{func} needs --{w}"))))
            .collect()
    }
}

impl Shape {
    fn params(&self) -> Params {
        let mut p = Params::new();
        for (k, v) in [
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("lambda", self.lambda),
            ("kappa", self.kappa),
            ("mu", self.mu),
            ("n", self.nakagami_n),
        ] {
            if let Some(v) = v {
                p.insert(k.into(), v);
            }
        }
        p
    }
}

fn func_name(f: Func) -> &'static str {
    match f {
        Func::Nuttall => "nuttall",
        Func::Toronto => "toronto",
        Func::RiceIe => "rice-ie",
        Func::Ilhi => "ilhi",
        Func::Marcum => "marcum",
    }
}

#[derive(Serialize)]
struct EvalOut {
    function: &'static str,
    params: Vec<(&'static str, f64)>,
    value: f64,
    method: &'static str,
    est_error: f64,
    terms: usize,
}

fn cmd_eval(seed: u64, fmt: Format, f: Func, a: &FuncArgs, method: Option<&str>, p_order: Option<usize>) -> Result<Report, Failure> {
    let method = match method {
        Some(s) => Some(Method::parse(s).ok_or_else(|| usage(format!("unknown method '{s}'")))?),
        None => None,
    };
    if p_order.is_some() && method != Some(Method::Poly) {
        return Err(usage("--p only applies to --method poly"));
    }
    let names: &[&'static str] = match f {
        Func::Nuttall => &["m", "n", "a", "b"],
        Func::Toronto => &["m", "n", "r", "b"],
        Func::RiceIe => &["k", "x"],
        Func::Ilhi => &["m", "n", "a", "x"],
        Func::Marcum => &["m", "a", "b"],
    };
    let v = a.take(func_name(f), names)?;
    let route = method.unwrap_or(Method::Series);
    let order = p_order.unwrap_or(if f == Func::Ilhi { 30 } else { 20 });
    let r: qfn::Result<EvalResult> = match f {
        Func::Nuttall => nuttall_eval(&NuttallQuery::new(v[0], v[1], v[2], v[3]), route, order),
        Func::Toronto => toronto_eval(&TorontoQuery::new(v[0], v[1], v[2], v[3]), route, order),
        Func::RiceIe => rice_ie_eval(&RiceIeQuery::new(v[0], v[1]), route, order),
        Func::Ilhi => ilhi_eval(&IlhiQuery::new(v[0], v[1], v[2], v[3]), route, order),
        Func::Marcum => {
            if method.is_some() {
                return Err(usage("marcum has a single route"));
            }
            marcum_q(v[0], v[1], v[2]).map(|x| EvalResult { value: x, method: Method::Series, est_error: 0.0, terms: 0 })
        }
    };
    let r = r.map_err(numeric)?;
    let out = EvalOut {
        function: func_name(f),
        params: names.iter().copied().zip(v.iter().copied()).collect(),
        value: r.value,
        method: r.method.name(),
        est_error: r.est_error,
        terms: r.terms,
    };
    let body = match fmt {
        Format::Json => json(seed, &out),
        Format::Csv => format!(
            "function,{},value,method,est_error,terms,seed\n{},{},{},{},{},{},{}\n",
            names.join(","),
            out.function,
            v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(","),
            num(out.value),
            out.method,
            num(out.est_error),
            out.terms,
            seed
        ),
        Format::Text => {
            let params: Vec<String> = out.params.iter().map(|(k, x)| format!("{k}={x}")).collect();
            format!(
                "{}({})\nvalue     {:.10}\nmethod    {}\nest_error {:e}\nterms     {}\nseed      {}\n",
                out.function,
                params.join(", "),
                out.value,
                out.method,
                out.est_error,
                out.terms,
                seed
            )
        }
    };
    Ok(Report { body, ok: true })
}

#[derive(Serialize)]
struct Quantity {
    name: &'static str,
    value: Option<f64>,
    error: Option<String>,
}

fn quantity(name: &'static str, r: qfn::Result<f64>) -> Quantity {
    match r {
        Ok(v) => Quantity { name, value: Some(v), error: None },
        Err(e) => Quantity { name, value: None, error: Some(e.to_string()) },
    }
}

#[derive(Serialize)]
struct BoundsOut {
    function: &'static str,
    params: Vec<(&'static str, f64)>,
    truncation_order: usize,
    quantities: Vec<Quantity>,
    /// Whether the oracle lies inside the lower/upper interval.
    bracketed: Option<bool>,
}

fn cmd_bounds(seed: u64, fmt: Format, f: Func, a: &FuncArgs, p: usize) -> Result<Report, Failure> {
    let (names, qs): (&[&'static str], Vec<Quantity>) = match f {
        Func::Nuttall => {
            let v = a.take("nuttall", &["m", "n", "a", "b"])?;
            let q = NuttallQuery::new(v[0], v[1], v[2], v[3]);
            let poly = nuttall_poly(&q, p).map(|r| r.value);
            (
                &["m", "n", "a", "b"],
                vec![
                    quantity("oracle", oracle::nuttall(q.m, q.n, q.a, q.b)),
                    quantity("upper", nuttall_upper(&q)),
                    quantity("poly", poly),
                    quantity("truncation_bound", nuttall_trunc_bound(&q, p)),
                ],
            )
        }
        Func::Toronto => {
            let v = a.take("toronto", &["m", "n", "r", "b"])?;
            let q = TorontoQuery::new(v[0], v[1], v[2], v[3]);
            let iv = toronto_bounds(&q);
            (
                &["m", "n", "r", "b"],
                vec![
                    quantity("oracle", oracle::toronto(q.m, q.n, q.r, q.b)),
                    quantity("lower", iv.clone().map(|i| i.lo)),
                    quantity("upper", iv.map(|i| i.hi)),
                    quantity("upper_approx", toronto_upper_approx(&q).map(|u| u.value)),
                    quantity("poly", toronto_poly(&q, p).map(|r| r.value)),
                    quantity("truncation_bound", toronto_trunc_bound(&q, p)),
                ],
            )
        }
        Func::RiceIe => {
            let v = a.take("rice-ie", &["k", "x"])?;
            let q = RiceIeQuery::new(v[0], v[1]);
            let iv = rice_ie_bounds(&q);
            (
                &["k", "x"],
                vec![
                    quantity("oracle", oracle::rice_ie(q.k, q.x)),
                    quantity("lower", iv.clone().map(|i| i.lo)),
                    quantity("upper", iv.map(|i| i.hi)),
                    quantity("poly", rice_ie_poly(&q, p).map(|r| r.value)),
                    quantity("truncation_bound", rice_ie_trunc_bound(&q, p)),
                ],
            )
        }
        Func::Ilhi => {
            let v = a.take("ilhi", &["m", "n", "a", "x"])?;
            let q = IlhiQuery::new(v[0], v[1], v[2], v[3]);
            let iv = ilhi_bounds(&q);
            (
                &["m", "n", "a", "x"],
                vec![
                    quantity("oracle", oracle::ilhi(q.m, q.n, q.a, q.x)),
                    quantity("lower", iv.clone().map(|i| i.lo)),
                    quantity("upper", iv.map(|i| i.hi)),
                    quantity("upper_approx", ilhi_upper_approx(&q)),
                    quantity("poly", ilhi_poly(&q, p).map(|r| r.value)),
                    quantity("truncation_bound", qfn::ilhi::ilhi_trunc_bound(&q, p)),
                ],
            )
        }
        Func::Marcum => return Err(usage("marcum has no bound suite")),
    };
    let v: Vec<f64> = a.take(func_name(f), names)?;
    let get = |n: &str| qs.iter().find(|q| q.name == n).and_then(|q| q.value);
    let bracketed = match (get("oracle"), get("lower"), get("upper")) {
        (Some(o), Some(lo), Some(hi)) => Some(lo <= o && o <= hi),
        (Some(o), None, Some(hi)) => Some(o <= hi),
        _ => None,
    };
    let out = BoundsOut {
        function: func_name(f),
        params: names.iter().copied().zip(v.iter().copied()).collect(),
        truncation_order: p,
        quantities: qs,
        bracketed,
    };
    let body = match fmt {
        Format::Json => json(seed, &out),
        Format::Csv => {
            let mut s = String::from("function,quantity,value,error,seed\n");
            for q in &out.quantities {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    out.function,
                    q.name,
                    q.value.map(num).unwrap_or_default(),
                    csv_field(q.error.as_deref().unwrap_or("")),
                    seed
                );
            }
            s
        }
        Format::Text => {
            let params: Vec<String> = out.params.iter().map(|(k, x)| format!("{k}={x}")).collect();
            let mut s = format!("{}({})  truncation order {}\n", out.function, params.join(", "), p);
            for q in &out.quantities {
                let shown = match (&q.value, &q.error) {
                    (Some(v), _) => format!("{v:.10}"),
                    (None, Some(e)) => format!("refused: {e}"),
                    _ => String::new(),
                };
                let _ = writeln!(s, "{:<17} {}", q.name, shown);
            }
            if let Some(b) = out.bracketed {
                let _ = writeln!(s, "bracketed         {}", if b { "yes" } else { "NO" });
            }
            let _ = writeln!(s, "seed              {seed}");
            s
        }
    };
    Ok(Report { body, ok: true })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into())
}

fn render_table(seed: u64, fmt: Format, t: &TableReport) -> String {
    match fmt {
        Format::Json => json(seed, t),
        Format::Csv => {
            let mut s = String::from("table,row,column,printed,value,diff,graded,pass,seed\n");
            for r in &t.rows {
                for c in &r.cells {
                    let diff = match (c.printed, c.value) {
                        (Some(p), Some(v)) => num(v - p),
                        _ => String::new(),
                    };
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{}",
                        t.table,
                        csv_field(&r.label),
                        c.column,
                        c.printed.map(num).unwrap_or_default(),
                        c.value.map(num).unwrap_or_default(),
                        diff,
                        c.graded,
                        c.pass,
                        seed
                    );
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("Table {}: {}\ntolerance {}\n", t.table, t.title, t.tolerance);
            for r in &t.rows {
                let _ = writeln!(s, "\n{}", r.label);
                for c in &r.cells {
                    let mark = match (c.graded, c.pass) {
                        (false, _) => "",
                        (true, true) => "ok",
                        (true, false) => "MISMATCH",
                    };
                    let shown = match (&c.value, &c.error) {
                        (Some(v), _) => format!("{v:.6}"),
                        (None, Some(e)) => format!("refused ({e})"),
                        _ => "-".into(),
                    };
                    let _ = writeln!(s, "  {:<16} {:<12} printed {:<10} {}", c.column, shown, opt(c.printed), mark);
                }
            }
            let fails = t.failures();
            if !fails.is_empty() {
                let _ = writeln!(s, "\nmismatches:");
                for (r, c) in fails {
                    let got = c.value.map_or_else(|| c.error.clone().unwrap_or_default(), |v| format!("{v:.6}"));
                    let _ = writeln!(s, "  {} {}: got {} printed {}", r.label, c.column, got, opt(c.printed));
                }
            }
            let _ = writeln!(s, "\n{}\nseed {}", if t.pass { "PASS" } else { "FAIL" }, seed);
            s
        }
    }
}

fn parse_kv(s: &str) -> Result<(String, f64), Failure> {
    let (k, v) = s.split_once('=').ok_or_else(|| usage(format!("expected name=value, got '{s}'")))?;
    Ok((k.trim().replace('-', "_"), parse_decimal(v.trim()).map_err(usage)?))
}

fn cmd_sweep(target: &str, grid: &[String], set: &[String], model: Option<String>, fx: &SweepFixed) -> Result<Report, Failure> {
    let target = Target::parse(target).ok_or_else(|| usage(format!("unknown sweep target '{target}'")))?;
    let axes = grid.iter().map(|g| Axis::parse(g).map_err(usage)).collect::<Result<Vec<_>, _>>()?;
    let mut fixed = Params::new();
    let mut put = |k: &str, v: f64| -> Result<(), Failure> {
        if fixed.insert(k.to_string(), v).is_some() {
            return Err(usage(format!("parameter '{k}' given twice")));
        }
        Ok(())
    };
    for (k, v) in fx.func.pairs() {
        if let Some(v) = v {
            put(k, v)?;
        }
    }
    for (k, v) in fx.shape.params() {
        put(&k, v)?;
    }
    for (k, v) in [("gamma_bar", fx.snr.gamma_bar), ("gamma_bar_db", fx.snr.gamma_bar_db), ("gamma_th", fx.gamma_th), ("gamma0", fx.gamma0)]
    {
        if let Some(v) = v {
            put(k, v)?;
        }
    }
    for s in set {
        let (k, v) = parse_kv(s)?;
        put(&k, v)?;
    }
    let spec = SweepSpec { target, model, fixed, axes };
    let body = run_sweep(&spec).map_err(usage)?;
    Ok(Report { body, ok: true })
}

#[derive(Serialize)]
struct OutageOut {
    model: String,
    gamma_bar: f64,
    gamma_th: f64,
    analytic: Quantity,
    humbert: Quantity,
    oracle: Quantity,
}

fn cmd_outage(
    seed: u64,
    fmt: Format,
    model: &str,
    shape: &Shape,
    snr: &Snr,
    gth: Option<f64>,
    gth_db: Option<f64>,
) -> Result<Report, Failure> {
    let m = fading_model(model, &shape.params()).map_err(usage)?;
    let gb = snr.require()?;
    let gth = gth.or(gth_db.map(db_to_linear)).ok_or_else(|| usage("needs --gamma-th or --gamma-th-db"))?;
    let q = OutageQuery::new(m, gb, gth);
    let out = OutageOut {
        model: m.to_string(),
        gamma_bar: gb,
        gamma_th: gth,
        analytic: quantity("analytic", outage(&q, OutageRoute::Analytic)),
        humbert: quantity("humbert", outage_humbert(&q)),
        oracle: quantity("oracle", outage(&q, OutageRoute::Oracle)),
    };
    if out.analytic.value.is_none() && out.oracle.value.is_none() {
        return Err(numeric(out.oracle.error.unwrap_or_default()));
    }
    let body = match fmt {
        Format::Json => json(seed, &out),
        Format::Csv => format!(
            "model,gamma_bar,gamma_th,analytic,humbert,oracle,seed\n{},{},{},{},{},{},{}\n",
            csv_field(&out.model),
            num(gb),
            num(gth),
            out.analytic.value.map(num).unwrap_or_default(),
            out.humbert.value.map(num).unwrap_or_default(),
            out.oracle.value.map(num).unwrap_or_default(),
            seed
        ),
        Format::Text => {
            let mut s = format!("{}\ngamma_bar {gb}  gamma_th {gth}\n", out.model);
            for q in [&out.analytic, &out.humbert, &out.oracle] {
                let shown = q.value.map_or_else(|| format!("refused: {}", q.error.clone().unwrap_or_default()), |v| format!("{v:.10}"));
                let _ = writeln!(s, "{:<9} {}", q.name, shown);
            }
            let _ = writeln!(s, "seed      {seed}");
            s
        }
    };
    Ok(Report { body, ok: true })
}

#[derive(Serialize)]
struct CapacityOut {
    system: &'static str,
    gamma_bar: f64,
    gamma0: f64,
    gamma_th: f64,
    cutoff_solved: bool,
    cutoff_residual: Option<f64>,
    capacity_bits_per_hz: f64,
    outage: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_capacity(
    seed: u64,
    fmt: Format,
    system: System,
    snr: &Snr,
    n: Option<f64>,
    k_factor: Option<f64>,
    los_power: Option<f64>,
    antennas: Option<u32>,
    coeffs: Option<&PathBuf>,
    gamma0: Option<f64>,
    gamma_th: Option<f64>,
) -> Result<Report, Failure> {
    let gb = snr.require()?;
    let reject = |flag: &str, given: bool| if given { Err(usage(format!("--{flag} does not apply here"))) } else { Ok(()) };
    let out = match system {
        System::Siso => {
            reject("k-factor", k_factor.is_some())?;
            reject("los-power", los_power.is_some())?;
            reject("antennas", antennas.is_some())?;
            reject("coeffs", coeffs.is_some())?;
            let ch = RicianChannel::new(n.ok_or_else(|| usage("siso needs --n"))?, gb, 1.0);
            let (r, solved) = match gamma0 {
                Some(g0) => (tifr_capacity_rician(&ch, g0, gamma_th.unwrap_or(g0)), false),
                None => {
                    if gamma_th.is_some() {
                        return Err(usage("--gamma-th needs --gamma0"));
                    }
                    (tifr_optimal_rician(&ch), true)
                }
            };
            let r = r.map_err(numeric)?;
            let g0 = r.cutoff_gamma0;
            CapacityOut {
                system: "siso",
                gamma_bar: gb,
                gamma0: g0,
                gamma_th: gamma_th.unwrap_or(g0),
                cutoff_solved: solved,
                cutoff_residual: r.solver_residual,
                capacity_bits_per_hz: r.capacity_per_hz,
                outage: r.outage_at_cutoff,
            }
        }
        System::Miso | System::Simo => {
            reject("n", n.is_some())?;
            reject("coeffs", coeffs.is_some())?;
            let ch = MisoSimoChannel::new(
                k_factor.ok_or_else(|| usage("needs --k-factor"))?,
                los_power.ok_or_else(|| usage("needs --los-power"))?,
                antennas.ok_or_else(|| usage("needs --antennas"))?,
                gb,
            );
            let (g0, res) = match gamma0 {
                Some(g0) => (g0, None),
                None => {
                    let c = optimal_cutoff_miso(&ch).map_err(numeric)?;
                    (c.gamma0, Some(c.residual))
                }
            };
            let gth = gamma_th.unwrap_or(g0);
            let r = em_tifr_miso_simo(&ch, g0, gth).map_err(numeric)?;
            CapacityOut {
                system: if system == System::Miso { "miso" } else { "simo" },
                gamma_bar: gb,
                gamma0: g0,
                gamma_th: gth,
                cutoff_solved: res.is_some(),
                cutoff_residual: res,
                capacity_bits_per_hz: r.capacity_per_hz,
                outage: r.outage_at_cutoff,
            }
        }
        System::Mimo => {
            reject("n", n.is_some())?;
            reject("los-power", los_power.is_some())?;
            reject("antennas", antennas.is_some())?;
            reject("gamma-th", gamma_th.is_some())?;
            let path = coeffs.ok_or_else(|| usage("mimo needs --coeffs <file>"))?;
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let co = parse_coeffs(&text, k_factor).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let (g0, res) = match gamma0 {
                Some(g0) => (g0, None),
                None => {
                    let (g0, res) = mimo_optimal_cutoff(&co, gb).map_err(numeric)?;
                    (g0, Some(res))
                }
            };
            let r = mimo_em_ti(&co, gb, g0).map_err(numeric)?;
            CapacityOut {
                system: "mimo",
                gamma_bar: gb,
                gamma0: g0,
                gamma_th: g0,
                cutoff_solved: res.is_some(),
                cutoff_residual: res,
                capacity_bits_per_hz: r.capacity_per_hz,
                outage: r.outage,
            }
        }
    };
    let body = match fmt {
        Format::Json => json(seed, &out),
        Format::Csv => format!(
            "system,gamma_bar,gamma0,gamma_th,cutoff_solved,cutoff_residual,capacity_bits_per_hz,outage,seed\n{},{},{},{},{},{},{},{},{}\n",
            out.system,
            num(out.gamma_bar),
            num(out.gamma0),
            num(out.gamma_th),
            out.cutoff_solved,
            out.cutoff_residual.map(num).unwrap_or_default(),
            num(out.capacity_bits_per_hz),
            num(out.outage),
            seed
        ),
        Format::Text => format!(
            "{} gamma_bar {}\ncutoff    {:.10}{}\ngamma_th  {:.10}\ncapacity  {:.10} bit/s/Hz\noutage    {:.10}\nseed      {}\n",
            out.system,
            out.gamma_bar,
            out.gamma0,
            out.cutoff_residual.map(|r| format!("  (solved, residual {r:e})")).unwrap_or_default(),
            out.gamma_th,
            out.capacity_bits_per_hz,
            out.outage,
            seed
        ),
    };
    Ok(Report { body, ok: true })
}

fn render_verify(fmt: Format, r: &VerifyReport) -> String {
    match fmt {
        // the report already carries the seed
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from(
                "property,criterion,pass,known_issue,checked,refused,failed,worst_residual,threshold,analytic_fraction,seed\n",
            );
            for p in &r.properties {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    p.name,
                    p.criterion.map(|c| c.to_string()).unwrap_or_default(),
                    p.pass,
                    p.known_issue.is_some(),
                    p.checked,
                    p.refused,
                    p.failed,
                    num(p.worst_residual),
                    num(p.threshold),
                    p.analytic_fraction.map(num).unwrap_or_default(),
                    r.seed
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!("verify: seed {} draws {} tol {:e}\n", r.seed, r.draws, r.tol);
            for p in &r.properties {
                let status = match (p.pass, p.known_issue.is_some()) {
                    (true, _) => "PASS ",
                    (false, true) => "KNOWN",
                    (false, false) => "FAIL ",
                };
                let _ = writeln!(
                    s,
                    "{status} {:<40} worst {:.3e} (limit {:.1e}) n={} refused={}",
                    p.name, p.worst_residual, p.threshold, p.checked, p.refused
                );
                if !p.pass {
                    for e in &p.examples {
                        let _ = writeln!(s, "        {e}");
                    }
                }
            }
            let _ = writeln!(s, "{}", if r.pass { "PASS" } else { "FAIL" });
            s
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let seed = cli.seed;
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.cmd {
        Cmd::Eval { function, p, method, order } => cmd_eval(seed, fmt(Format::Text), *function, p, method.as_deref(), *order),
        Cmd::Bounds { function, p, order } => cmd_bounds(seed, fmt(Format::Text), *function, p, *order),
        Cmd::Table { id } => {
            let id = TableId::parse(id).ok_or_else(|| usage(format!("unknown table '{id}' (I, II, III, IV or V)")))?;
            let t = run_table(id);
            Ok(Report { body: render_table(seed, fmt(Format::Text), &t), ok: t.pass })
        }
        Cmd::Sweep { target, grid, set, model, fixed } => {
            if cli.format.is_some_and(|f| f != Format::Csv) {
                return Err(usage("sweep writes CSV only"));
            }
            cmd_sweep(target, grid, set, model.clone(), fixed)
        }
        Cmd::Outage { model, shape, snr, gamma_th, gamma_th_db } => {
            cmd_outage(seed, fmt(Format::Text), model, shape, snr, *gamma_th, *gamma_th_db)
        }
        Cmd::Capacity { system, snr, n, k_factor, los_power, antennas, coeffs, gamma0, gamma_th } => {
            cmd_capacity(seed, fmt(Format::Text), *system, snr, *n, *k_factor, *los_power, *antennas, coeffs.as_ref(), *gamma0, *gamma_th)
        }
        Cmd::Verify { draws, tol, strict } => {
            if tol.is_nan() || *tol <= 0.0 {
                return Err(usage("--tol must be positive"));
            }
            let r = run_verify(&VerifyConfig { draws: *draws as usize, seed, tol: *tol });
            let ok = if *strict { r.properties.iter().all(|p| p.pass) } else { r.pass };
            Ok(Report { body: render_verify(fmt(Format::Json), &r), ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(report) => {
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &report.body) {
                        eprintln!("qfn: {}: {e}", path.display());
                        return ExitCode::from(USAGE);
                    }
                }
                None => print!("{}", report.body),
            }
            ExitCode::from(if report.ok { 0 } else { NUMERIC })
        }
        Err(f) => {
            eprintln!("qfn: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
