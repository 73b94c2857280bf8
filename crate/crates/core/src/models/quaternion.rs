//! Quaternions with exact `DyadicRt2` components.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use super::dyadic::DyadicRt2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion {
    pub w: DyadicRt2,
    pub x: DyadicRt2,
    pub y: DyadicRt2,
    pub z: DyadicRt2,
}

impl Quaternion {
    pub const fn new(w: DyadicRt2, x: DyadicRt2, y: DyadicRt2, z: DyadicRt2) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(
            DyadicRt2::int(w),
            DyadicRt2::int(x),
            DyadicRt2::int(y),
            DyadicRt2::int(z),
        )
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn components(&self) -> [DyadicRt2; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn scale(self, s: DyadicRt2) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `w² + x² + y² + z²`, exactly.
    pub fn norm2(self) -> DyadicRt2 {
        self.components()
            .iter()
            .fold(DyadicRt2::ZERO, |acc, &c| acc + c * c)
    }
}

/// Hamilton product.
pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    Quaternion::new(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, o: Quaternion) -> Quaternion {
        quat_mul(&self, &o)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_relations() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let m1 = -Quaternion::one();
        assert_eq!(i * i, m1);
        assert_eq!(j * j, m1);
        assert_eq!(k * k, m1);
        assert_eq!(i * j, k);
        assert_eq!(i * j, -(j * i));
        assert_eq!(j * k, -(k * j));
        assert_eq!(k * i, -(i * k));
    }

    #[test]
    fn one_is_neutral() {
        let q = Quaternion::new(
            DyadicRt2::INV_SQRT2,
            DyadicRt2::ZERO,
            -DyadicRt2::INV_SQRT2,
            DyadicRt2::ZERO,
        );
        assert_eq!(Quaternion::one() * q, q);
        assert_eq!(q * Quaternion::one(), q);
        assert_eq!(q.norm2(), DyadicRt2::ONE);
    }
}
