//! Seeded low-discrepancy sampling for property batteries.

/// Two-dimensional Halton sequence in bases 2 and 3, started at `seed + 1`.
#[derive(Debug, Clone)]
pub struct Halton {
    index: u64,
}

fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while n > 0 {
        r += f * (n % base) as f64;
        n /= base;
        f *= inv;
    }
    r
}

impl Halton {
    pub fn new(seed: u64) -> Self {
        Halton { index: seed.wrapping_add(1) }
    }

    /// Next point of `[0, 1)²`.
    pub fn next_pair(&mut self) -> (f64, f64) {
        let i = self.index;
        self.index += 1;
        (radical_inverse(i, 2), radical_inverse(i, 3))
    }

    /// Next point of `[0, 1)` (base 2 coordinate).
    pub fn next_unit(&mut self) -> f64 {
        self.next_pair().0
    }
}
