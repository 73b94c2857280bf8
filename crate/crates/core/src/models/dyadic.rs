//! Exact numbers `(a + b√2) / 2^k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `(a + b√2) / 2^k`, kept normalized: `k = 0` or not both `a` and `b` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicRt2 {
    a: i64,
    b: i64,
    k: u32,
}

impl DyadicRt2 {
    pub const ZERO: DyadicRt2 = DyadicRt2 { a: 0, b: 0, k: 0 };
    pub const ONE: DyadicRt2 = DyadicRt2 { a: 1, b: 0, k: 0 };
    /// `1/√2 = √2/2`.
    pub const INV_SQRT2: DyadicRt2 = DyadicRt2 { a: 0, b: 1, k: 1 };

    pub fn new(a: i64, b: i64, k: u32) -> Self {
        let mut d = DyadicRt2 { a, b, k };
        d.normalize();
        d
    }

    pub fn int(a: i64) -> Self {
        DyadicRt2 { a, b: 0, k: 0 }
    }

    pub fn parts(self) -> (i64, i64, u32) {
        (self.a, self.b, self.k)
    }

    /// Denominator exponent after normalization.
    pub fn level(self) -> u32 {
        self.k
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Whether the value involves √2.
    pub fn has_sqrt2(self) -> bool {
        self.b != 0
    }

    pub fn to_f64(self) -> f64 {
        (self.a as f64 + self.b as f64 * std::f64::consts::SQRT_2) / (2f64).powi(self.k as i32)
    }

    fn normalize(&mut self) {
        if self.a == 0 && self.b == 0 {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.a % 2 == 0 && self.b % 2 == 0 {
            self.a /= 2;
            self.b /= 2;
            self.k -= 1;
        }
    }

    fn scaled(self, k: u32) -> (i64, i64) {
        let s = 1i64
            .checked_shl(k - self.k)
            .expect("dyadic exponent overflow");
        (
            self.a.checked_mul(s).expect("dyadic overflow"),
            self.b.checked_mul(s).expect("dyadic overflow"),
        )
    }
}

impl Add for DyadicRt2 {
    type Output = DyadicRt2;

    fn add(self, o: DyadicRt2) -> DyadicRt2 {
        let k = self.k.max(o.k);
        let (a1, b1) = self.scaled(k);
        let (a2, b2) = o.scaled(k);
        DyadicRt2::new(a1 + a2, b1 + b2, k)
    }
}

impl Neg for DyadicRt2 {
    type Output = DyadicRt2;

    fn neg(self) -> DyadicRt2 {
        DyadicRt2 {
            a: -self.a,
            b: -self.b,
            k: self.k,
        }
    }
}

impl Sub for DyadicRt2 {
    type Output = DyadicRt2;

    fn sub(self, o: DyadicRt2) -> DyadicRt2 {
        self + (-o)
    }
}

impl Mul for DyadicRt2 {
    type Output = DyadicRt2;

    fn mul(self, o: DyadicRt2) -> DyadicRt2 {
        let m = |x: i64, y: i64| x.checked_mul(y).expect("dyadic overflow");
        let a = m(self.a, o.a) + 2 * m(self.b, o.b);
        let b = m(self.a, o.b) + m(self.b, o.a);
        DyadicRt2::new(a, b, self.k + o.k)
    }
}

impl fmt::Display for DyadicRt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a, self.b) {
            (a, 0) => a.to_string(),
            (0, b) => match b {
                1 => "√2".to_string(),
                -1 => "-√2".to_string(),
                b => format!("{b}√2"),
            },
            (a, b) => format!("({a}{}{}√2)", if b < 0 { "-" } else { "+" }, b.abs()),
        };
        if self.k == 0 {
            f.write_str(&num)
        } else {
            write!(f, "{num}/{}", 1u64 << self.k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(DyadicRt2::new(2, 4, 1), DyadicRt2::new(1, 2, 0));
        assert_eq!(DyadicRt2::new(0, 0, 5), DyadicRt2::ZERO);
        assert_eq!(DyadicRt2::new(2, 1, 1).parts(), (2, 1, 1));
    }

    #[test]
    fn inverse_sqrt2_squared_is_half() {
        let h = DyadicRt2::INV_SQRT2 * DyadicRt2::INV_SQRT2;
        assert_eq!(h, DyadicRt2::new(1, 0, 1));
        assert_eq!(h + h, DyadicRt2::ONE);
    }

    #[test]
    fn display() {
        assert_eq!(DyadicRt2::INV_SQRT2.to_string(), "√2/2");
        assert_eq!(DyadicRt2::new(1, -1, 2).to_string(), "(1-1√2)/4");
        assert_eq!((-DyadicRt2::ONE).to_string(), "-1");
    }
}
