use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// A Gaussian integer `re + im*i`.
///
/// Operators panic on 64-bit overflow instead of wrapping; every value
/// produced by the correlation code is bounded by the sequence length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    #[inline]
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    #[inline]
    pub const fn conj(self) -> Self {
        GaussInt { re: self.re, im: -self.im }
    }

    /// Squared modulus `|z|^2`.
    #[inline]
    pub fn norm(self) -> i128 {
        let re = self.re as i128;
        let im = self.im as i128;
        re * re + im * im
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(GaussInt::new(self.re.checked_add(rhs.re)?, self.im.checked_add(rhs.im)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(GaussInt::new(self.re.checked_sub(rhs.re)?, self.im.checked_sub(rhs.im)?))
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let re = self.re.checked_mul(rhs.re)?.checked_sub(self.im.checked_mul(rhs.im)?)?;
        let im = self.re.checked_mul(rhs.im)?.checked_add(self.im.checked_mul(rhs.re)?)?;
        Some(GaussInt::new(re, im))
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// Multiplies by `i^k`.
    #[inline]
    pub fn mul_i_pow(self, k: u8) -> Self {
        match k & 3 {
            0 => self,
            1 => GaussInt::new(-self.im, self.re),
            2 => GaussInt::new(-self.re, -self.im),
            _ => GaussInt::new(self.im, -self.re),
        }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("GaussInt addition overflow")
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("GaussInt subtraction overflow")
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("GaussInt multiplication overflow")
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> Self {
        GaussInt::new(-self.re, -self.im)
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::new(re, 0)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}
