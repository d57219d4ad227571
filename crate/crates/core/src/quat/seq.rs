use std::fmt;
use std::str::FromStr;

use super::{GaussInt, Unit4};
use crate::error::{Error, Result};

/// A nonempty sequence over `{+1, -1, +i, -i}` with cyclic indexing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuatSeq {
    elems: Vec<Unit4>,
}

/// Largest length that fits the 2-bit packed form in a `u128`.
pub const MAX_PACKED_LEN: usize = 64;

impl QuatSeq {
    pub fn new(elems: Vec<Unit4>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(QuatSeq { elems })
    }

    pub fn from_exponents(exps: &[u8]) -> Result<Self> {
        Self::new(exps.iter().map(|&k| Unit4::from_exponent(k)).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false; sequences are nonempty by construction.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn as_slice(&self) -> &[Unit4] {
        &self.elems
    }

    /// Element at `j mod len`.
    #[inline]
    pub fn at(&self, j: usize) -> Unit4 {
        self.elems[j % self.elems.len()]
    }

    /// Sum of the elements.
    pub fn sum(&self) -> GaussInt {
        sum_units(&self.elems)
    }

    /// `rotate(A, t)[j] = A[(j + t) mod len]`; negative shifts rotate the other way.
    pub fn rotate(&self, t: i64) -> QuatSeq {
        let len = self.len() as i64;
        let shift = t.rem_euclid(len) as usize;
        let mut elems = self.elems.clone();
        elems.rotate_left(shift);
        QuatSeq { elems }
    }

    pub fn unit_mul(&self, u: Unit4) -> QuatSeq {
        QuatSeq { elems: self.elems.iter().map(|&a| a * u).collect() }
    }

    pub fn conjugate(&self) -> QuatSeq {
        QuatSeq { elems: self.elems.iter().map(|a| a.conj()).collect() }
    }

    /// Elements at even indices.
    pub fn even_part(&self) -> Vec<Unit4> {
        self.elems.iter().step_by(2).copied().collect()
    }

    /// Elements at odd indices.
    pub fn odd_part(&self) -> Vec<Unit4> {
        self.elems.iter().skip(1).step_by(2).copied().collect()
    }

    /// Builds `A[2j] = even[j]`, `A[2j+1] = odd[j]`.
    pub fn interleave(even: &[Unit4], odd: &[Unit4]) -> Result<QuatSeq> {
        if even.len() != odd.len() {
            return Err(Error::LengthMismatch(even.len(), odd.len()));
        }
        let mut elems = Vec::with_capacity(2 * even.len());
        for (&a, &b) in even.iter().zip(odd) {
            elems.push(a);
            elems.push(b);
        }
        QuatSeq::new(elems)
    }

    /// 2-bit packed exponents, element `j` in bits `2j..2j+2`.
    pub fn pack(&self) -> Result<u128> {
        if self.len() > MAX_PACKED_LEN {
            return Err(Error::UnsupportedLength {
                len: self.len(),
                reason: "packed form holds at most 64 elements",
            });
        }
        Ok(pack_units(&self.elems))
    }

    pub fn unpack(bits: u128, len: usize) -> Result<QuatSeq> {
        if len > MAX_PACKED_LEN {
            return Err(Error::UnsupportedLength {
                len,
                reason: "packed form holds at most 64 elements",
            });
        }
        let elems = (0..len).map(|j| Unit4::from_exponent((bits >> (2 * j)) as u8)).collect();
        QuatSeq::new(elems)
    }
}

pub(crate) fn pack_units(elems: &[Unit4]) -> u128 {
    elems
        .iter()
        .enumerate()
        .fold(0u128, |acc, (j, u)| acc | ((u.exponent() as u128) << (2 * j)))
}

pub(crate) fn sum_units(elems: &[Unit4]) -> GaussInt {
    let mut counts = [0i64; 4];
    for u in elems {
        counts[u.exponent() as usize] += 1;
    }
    GaussInt::new(counts[0] - counts[2], counts[1] - counts[3])
}

/// Parses the one-line text form: `+` is 1, `-` is -1, `i` is i, `I` is -i.
pub fn parse_seq(text: &str) -> Result<QuatSeq> {
    let elems = text
        .chars()
        .enumerate()
        .map(|(pos, ch)| Unit4::from_char(ch).ok_or(Error::InvalidSymbol { ch, pos }))
        .collect::<Result<Vec<_>>>()?;
    QuatSeq::new(elems)
}

pub fn format_seq(seq: &QuatSeq) -> String {
    seq.elems.iter().map(|u| u.to_char()).collect()
}

impl FromStr for QuatSeq {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_seq(s)
    }
}

impl fmt::Display for QuatSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_seq(self))
    }
}
