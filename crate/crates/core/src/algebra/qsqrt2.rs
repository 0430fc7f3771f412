//! Exact numbers of the form `a + b√2` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of ℚ(√2), stored as `rat + irr·√2`.
///
/// Both parts are kept in lowest terms by [`Rational64`], so derived
/// equality and hashing are exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    rat: Rational64,
    irr: Rational64,
}

impl QSqrt2 {
    pub const fn new(rat: Rational64, irr: Rational64) -> Self {
        Self { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational64::from_integer(n), Rational64::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Rational64::new(num, den), Rational64::zero())
    }

    /// `√2` itself.
    pub fn sqrt2() -> Self {
        Self::new(Rational64::zero(), Rational64::one())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::new(Rational64::zero(), Rational64::new(1, 2))
    }

    pub fn rat_part(&self) -> Rational64 {
        self.rat
    }

    pub fn sqrt2_part(&self) -> Rational64 {
        self.irr
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.rat, -self.irr)
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rational64 {
        self.rat * self.rat - Rational64::from_integer(2) * self.irr * self.irr
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.irr);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² against 2b².
        let a2 = self.rat * self.rat;
        let b2 = Rational64::from_integer(2) * self.irr * self.irr;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Self::new(c.rat / n, c.irr / n))
    }

    /// Floating-point approximation. Only used for drawing.
    pub fn to_f64(&self) -> f64 {
        let r = |q: Rational64| *q.numer() as f64 / *q.denom() as f64;
        r(self.rat) + r(self.irr) * std::f64::consts::SQRT_2
    }
}

fn sign_of(q: &Rational64) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl Add for QSqrt2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.rat + rhs.rat, self.irr + rhs.irr)
    }
}

impl Sub for QSqrt2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.rat - rhs.rat, self.irr - rhs.irr)
    }
}

impl Neg for QSqrt2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rat, -self.irr)
    }
}

impl Mul for QSqrt2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let two = Rational64::from_integer(2);
        Self::new(
            self.rat * rhs.rat + two * self.irr * rhs.irr,
            self.rat * rhs.irr + self.irr * rhs.rat,
        )
    }
}

impl Div for QSqrt2 {
    type Output = Self;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("division by zero in Q(sqrt2)")
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        QSqrt2::is_zero(self)
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Renders as `p/q+r/s√2`, the interchange form used in the JSON and CSV
/// outputs. Zero parts are still printed so the form is fixed-width in
/// structure: `0+1/2√2`, `-1+0√2`.
impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rat)?;
        if self.irr.is_negative() {
            write!(f, "{}√2", self.irr)
        } else {
            write!(f, "+{}√2", self.irr)
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QSqrt2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a Q(√2) literal: {s:?}"));
        let body = s.trim().strip_suffix("√2").ok_or_else(bad)?;
        // Split at the sign that starts the √2 coefficient (not a leading sign).
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (rat, irr) = body.split_at(split);
        let irr = irr.strip_prefix('+').unwrap_or(irr);
        let rat: Rational64 = rat.parse().map_err(|_| bad())?;
        let irr: Rational64 = irr.parse().map_err(|_| bad())?;
        Ok(Self::new(rat, irr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
        QSqrt2::new(Rational64::new(a.0, a.1), Rational64::new(b.0, b.1))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(QSqrt2::sqrt2() * QSqrt2::sqrt2(), QSqrt2::from_int(2));
        assert_eq!(QSqrt2::inv_sqrt2() * QSqrt2::sqrt2(), QSqrt2::from_int(1));
    }

    #[test]
    fn sign_with_mixed_parts() {
        // 3 - 2√2 ≈ 0.17
        assert_eq!(q((3, 1), (-2, 1)).signum(), 1);
        // 1 - √2 < 0
        assert_eq!(q((1, 1), (-1, 1)).signum(), -1);
        assert_eq!(q((-7, 5), (1, 1)).signum(), 1);
        assert_eq!(QSqrt2::zero().signum(), 0);
    }

    #[test]
    fn tau_value() {
        // (2√2 + 1)/7 is positive and below 1.
        let tau = q((1, 7), (2, 7));
        assert_eq!(tau.signum(), 1);
        assert!(tau < QSqrt2::from_int(1));
        assert!((tau.to_f64() - 0.546918).abs() < 1e-6);
    }

    #[test]
    fn display_and_parse() {
        let x = q((-1, 2), (3, 7));
        assert_eq!(x.to_string(), "-1/2+3/7√2");
        assert_eq!("-1/2+3/7√2".parse::<QSqrt2>().unwrap(), x);
        assert_eq!("0-1/2√2".parse::<QSqrt2>().unwrap(), -QSqrt2::inv_sqrt2());
        assert_eq!(QSqrt2::from_int(1).to_string(), "1+0√2");
        assert!("12".parse::<QSqrt2>().is_err());
    }

    proptest! {
        #[test]
        fn field_laws(a in -50i64..50, b in -50i64..50, c in 1i64..20,
                      d in -50i64..50, e in -50i64..50, f in 1i64..20) {
            let x = q((a, c), (b, c));
            let y = q((d, f), (e, f));
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x + y) - y, x);
            if !y.is_zero() {
                prop_assert_eq!((x * y) / y, x);
            }
            prop_assert_eq!(x.to_string().parse::<QSqrt2>().unwrap(), x);
            let approx = x.to_f64();
            if approx.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), approx.signum() as i32);
            }
        }
    }
}
