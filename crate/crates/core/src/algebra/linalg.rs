//! 3-vectors and 3×3 matrices over ℚ(√2).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::QSqrt2;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Vec3(pub [QSqrt2; 3]);

impl Vec3 {
    pub fn new(x: QSqrt2, y: QSqrt2, z: QSqrt2) -> Self {
        Self([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(x.into(), y.into(), z.into())
    }

    pub fn x(&self) -> QSqrt2 {
        self.0[0]
    }
    pub fn y(&self) -> QSqrt2 {
        self.0[1]
    }
    pub fn z(&self) -> QSqrt2 {
        self.0[2]
    }

    pub fn dot(&self, other: &Self) -> QSqrt2 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a, b, c] = self.0;
        let [d, e, f] = o.0;
        Self::new(b * f - c * e, c * d - a * f, a * e - b * d)
    }

    pub fn scale(&self, k: QSqrt2) -> Self {
        Self(self.0.map(|v| v * k))
    }

    /// `det[a b c]` with the vectors as columns.
    pub fn triple(a: &Self, b: &Self, c: &Self) -> QSqrt2 {
        a.dot(&b.cross(c))
    }
}

impl Add for Vec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2])
    }
}

impl Sub for Vec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2])
    }
}

impl Neg for Vec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mat3(pub [[QSqrt2; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Self(rows.map(|r| r.map(QSqrt2::from_int)))
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// Cofactor expansion along the first row.
    pub fn determinant(&self) -> QSqrt2 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_orthogonal(&self) -> bool {
        *self * self.transpose() == Self::identity()
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        let r = |i: usize| self.0[i][0] * v.0[0] + self.0[i][1] * v.0[1] + self.0[i][2] * v.0[2];
        Vec3::new(r(0), r(1), r(2))
    }

    pub fn entries_as_strings(&self) -> [[String; 3]; 3] {
        self.0.map(|r| r.map(|v| v.to_string()))
    }
}

impl Mul for Mat3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [[QSqrt2::default(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).fold(QSqrt2::default(), |acc, k| acc + self.0[i][k] * o.0[k][j]);
            }
        }
        Self(out)
    }
}

impl Neg for Mat3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|r| r.map(|v| -v)))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} {} {}", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}

impl Serialize for Mat3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries_as_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = <[[String; 3]; 3]>::deserialize(d)?;
        let mut out = [[QSqrt2::default(); 3]; 3];
        for (i, row) in raw.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                out[i][j] = s.parse().map_err(serde::de::Error::custom)?;
            }
        }
        Ok(Mat3(out))
    }
}
