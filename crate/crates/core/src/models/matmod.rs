//! 2×2 matrices over `Z/m`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatMod {
    /// Row-major entries, each reduced into `0..m`.
    pub e: [u32; 4],
    pub m: u32,
}

impl MatMod {
    pub fn new(rows: [[i64; 2]; 2], m: u32) -> Self {
        let r = |x: i64| x.rem_euclid(i64::from(m)) as u32;
        MatMod {
            e: [r(rows[0][0]), r(rows[0][1]), r(rows[1][0]), r(rows[1][1])],
            m,
        }
    }

    pub fn identity(m: u32) -> Self {
        MatMod::new([[1, 0], [0, 1]], m)
    }

    pub fn det(&self) -> u32 {
        let m = self.m;
        (self.e[0] * self.e[3] % m + m - self.e[1] * self.e[2] % m) % m
    }

    /// Every matrix over `Z/m`, in lexicographic entry order.
    pub fn all(m: u32) -> Vec<MatMod> {
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        out.push(MatMod { e: [a, b, c, d], m });
                    }
                }
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det(), self.m) == 1
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn mat_mul(p: &MatMod, q: &MatMod) -> MatMod {
    assert_eq!(p.m, q.m, "modulus mismatch");
    let m = p.m;
    let [a, b, c, d] = p.e;
    let [e, f, g, h] = q.e;
    MatMod {
        e: [
            (a * e + b * g) % m,
            (a * f + b * h) % m,
            (c * e + d * g) % m,
            (c * f + d * h) % m,
        ],
        m,
    }
}

impl fmt::Display for MatMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]] mod {}",
            self.e[0], self.e[1], self.e[2], self.e[3], self.m
        )
    }
}
