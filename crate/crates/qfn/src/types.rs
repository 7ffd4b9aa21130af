use std::fmt;

/// Evaluation route tag carried by every [`EvalResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Kdf,
    Poly,
    Series,
    Oracle,
    Halfint,
    Odd,
    ViaNuttall,
    Humbert,
    MnInteger,
    NegN,
    Zero,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Kdf => "kdf",
            Method::Poly => "poly",
            Method::Series => "series",
            Method::Oracle => "oracle",
            Method::Halfint => "halfint",
            Method::Odd => "odd",
            Method::ViaNuttall => "via_nuttall",
            Method::Humbert => "humbert",
            Method::MnInteger => "mn_integer",
            Method::NegN => "neg_n",
            Method::Zero => "zero",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        let all = [
            Method::Kdf,
            Method::Poly,
            Method::Series,
            Method::Oracle,
            Method::Halfint,
            Method::Odd,
            Method::ViaNuttall,
            Method::Humbert,
            Method::MnInteger,
            Method::NegN,
            Method::Zero,
        ];
        let s = s.replace('-', "_");
        all.into_iter().find(|m| m.name() == s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
    pub terms: usize,
}

impl EvalResult {
    pub(crate) fn new(value: f64, method: Method, est_error: f64, terms: usize) -> Self {
        EvalResult { value, method, est_error: est_error.abs(), terms }
    }
}

/// Closed interval `[lo, hi]` returned by the bound operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}
