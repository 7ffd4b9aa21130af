/// Neumaier compensated accumulator that also tracks the sum of magnitudes.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Acc {
    s: f64,
    c: f64,
    abs: f64,
}

impl Acc {
    pub fn new() -> Self {
        Acc::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }

    pub fn abs(&self) -> f64 {
        self.abs
    }
}
