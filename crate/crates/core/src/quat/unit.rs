use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use super::GaussInt;

/// A fourth root of unity `i^k`, stored as the exponent `k mod 4`.
///
/// Exponent order doubles as the lexicographic order used for canonical
/// forms: `+1 < +i < -1 < -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Unit4(u8);

impl Unit4 {
    pub const ONE: Unit4 = Unit4(0);
    pub const I: Unit4 = Unit4(1);
    pub const MINUS_ONE: Unit4 = Unit4(2);
    pub const MINUS_I: Unit4 = Unit4(3);
    pub const ALL: [Unit4; 4] = [Unit4(0), Unit4(1), Unit4(2), Unit4(3)];

    #[inline]
    pub const fn from_exponent(k: u8) -> Self {
        Unit4(k & 3)
    }

    #[inline]
    pub const fn exponent(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn conj(self) -> Self {
        Unit4(self.0.wrapping_neg() & 3)
    }

    #[inline]
    pub const fn inverse(self) -> Self {
        self.conj()
    }

    #[inline]
    pub fn to_gauss(self) -> GaussInt {
        match self.0 {
            0 => GaussInt::new(1, 0),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::new(-1, 0),
            _ => GaussInt::new(0, -1),
        }
    }

    #[inline]
    pub fn to_complex(self) -> Complex64 {
        let g = self.to_gauss();
        Complex64::new(g.re as f64, g.im as f64)
    }

    /// Multiplies a complex number by this unit without rounding.
    #[inline]
    pub fn rotate_complex(self, z: Complex64) -> Complex64 {
        match self.0 {
            0 => z,
            1 => Complex64::new(-z.im, z.re),
            2 => -z,
            _ => Complex64::new(z.im, -z.re),
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            '+' => Some(Unit4::ONE),
            '-' => Some(Unit4::MINUS_ONE),
            'i' => Some(Unit4::I),
            'I' => Some(Unit4::MINUS_I),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self.0 {
            0 => '+',
            1 => 'i',
            2 => '-',
            _ => 'I',
        }
    }

    /// Inverse of [`Unit4::to_gauss`]; `None` unless `g` is a unit.
    pub fn from_gauss(g: GaussInt) -> Option<Self> {
        match (g.re, g.im) {
            (1, 0) => Some(Unit4::ONE),
            (0, 1) => Some(Unit4::I),
            (-1, 0) => Some(Unit4::MINUS_ONE),
            (0, -1) => Some(Unit4::MINUS_I),
            _ => None,
        }
    }
}

impl Mul for Unit4 {
    type Output = Unit4;

    #[inline]
    fn mul(self, rhs: Unit4) -> Unit4 {
        Unit4((self.0 + rhs.0) & 3)
    }
}

impl fmt::Display for Unit4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_adds_exponents() {
        for a in Unit4::ALL {
            for b in Unit4::ALL {
                let prod = a.to_gauss() * b.to_gauss();
                assert_eq!((a * b).to_gauss(), prod);
            }
            assert_eq!((a * a.conj()), Unit4::ONE);
            assert_eq!(a.to_gauss().norm(), 1);
        }
    }

    #[test]
    fn rotate_complex_is_exact_multiplication() {
        let z = Complex64::new(0.25, -3.5);
        for u in Unit4::ALL {
            assert_eq!(u.rotate_complex(z), u.to_complex() * z);
        }
    }

    #[test]
    fn char_round_trip() {
        for u in Unit4::ALL {
            assert_eq!(Unit4::from_char(u.to_char()), Some(u));
            assert_eq!(Unit4::from_gauss(u.to_gauss()), Some(u));
        }
        assert_eq!(Unit4::from_char('x'), None);
    }
}
