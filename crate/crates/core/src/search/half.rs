//! Enumeration of half-length subsequences with a fixed sum, and their
//! precomputed DFT tables.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::feasibility::achievable_sum;
use crate::quat::{dft_with, sum_units, GaussInt, QuatSeq, RootTable, Unit4};

/// A length-`k` subsequence with its length-`k` DFT table.
#[derive(Clone, Debug)]
pub struct HalfCandidate {
    pub elems: Vec<Unit4>,
    pub sum: GaussInt,
    /// `DFT_k(h, s)` for `s = 0..k`.
    pub dft: Vec<Complex64>,
    /// Exact `DFT_k(h, k/2) = sum_j h_j (-1)^j` when `k` is even.
    pub alt_sum: Option<GaussInt>,
}

impl HalfCandidate {
    pub fn new(elems: Vec<Unit4>, table: &RootTable) -> Self {
        let k = elems.len();
        debug_assert_eq!(table.len(), k);
        let dft = (0..k).map(|s| dft_with(table, &elems, s)).collect();
        let alt_sum = (k % 2 == 0).then(|| {
            let flipped: Vec<Unit4> = elems
                .iter()
                .enumerate()
                .map(|(j, &u)| if j % 2 == 1 { u * Unit4::MINUS_ONE } else { u })
                .collect();
            sum_units(&flipped)
        });
        HalfCandidate { sum: sum_units(&elems), elems, dft, alt_sum }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `xi_l^s * DFT_k(h, s mod k)` for `s = 0..2k`: the odd-index
    /// contribution to the interleaved transform.
    pub fn twiddled(&self, full: &RootTable) -> Vec<Complex64> {
        let k = self.len();
        (0..2 * k).map(|s| full.pow(s) * self.dft[s % k]).collect()
    }
}

/// Lexicographic depth-first enumeration of unit sequences with a given sum.
#[derive(Debug)]
pub struct HalfSequences {
    k: usize,
    target: GaussInt,
    prefix: Vec<u8>,
    prefix_sum: GaussInt,
    next_digit: u8,
    done: bool,
}

impl HalfSequences {
    pub fn new(k: usize, target: GaussInt) -> Self {
        HalfSequences {
            k,
            target,
            prefix: Vec::with_capacity(k),
            prefix_sum: GaussInt::ZERO,
            next_digit: 0,
            done: !achievable_sum(k, target),
        }
    }

    fn backtrack(&mut self) -> bool {
        match self.prefix.pop() {
            Some(d) => {
                self.prefix_sum = self.prefix_sum - Unit4::from_exponent(d).to_gauss();
                self.next_digit = d + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for HalfSequences {
    type Item = Vec<Unit4>;

    fn next(&mut self) -> Option<Vec<Unit4>> {
        if self.done {
            return None;
        }
        loop {
            if self.prefix.len() == self.k {
                let out = self.prefix.iter().map(|&d| Unit4::from_exponent(d)).collect();
                if !self.backtrack() {
                    self.done = true;
                }
                return Some(out);
            }
            if self.next_digit == 4 {
                if !self.backtrack() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let digit = self.next_digit;
            let sum = self.prefix_sum + Unit4::from_exponent(digit).to_gauss();
            let remaining = self.k - self.prefix.len() - 1;
            if achievable_sum(remaining, self.target - sum) {
                self.prefix.push(digit);
                self.prefix_sum = sum;
                self.next_digit = 0;
            } else {
                self.next_digit += 1;
            }
        }
    }
}

/// Every length-`k` unit sequence summing to `target`, lexicographic in
/// the exponents, with DFT tables attached. Empty if the sum is out of reach.
pub fn gen_half_candidates(k: usize, target: GaussInt) -> impl Iterator<Item = HalfCandidate> {
    let table = RootTable::shared(k.max(1));
    HalfSequences::new(k, target).map(move |elems| HalfCandidate::new(elems, &table))
}

/// `DFT(interleave(h0, h1), s) = DFT_k(h0, s mod k) + xi_l^s DFT_k(h1, s mod k)`.
pub fn combined_dft(h0: &HalfCandidate, h1: &HalfCandidate, s: usize) -> Result<Complex64> {
    let k = h0.len();
    if h1.len() != k {
        return Err(Error::LengthMismatch(k, h1.len()));
    }
    if s >= 2 * k {
        return Err(Error::IndexOutOfRange { index: s, len: 2 * k });
    }
    let full: Arc<RootTable> = RootTable::shared(2 * k);
    Ok(h0.dft[s % k] + full.pow(s) * h1.dft[s % k])
}

pub fn interleave_halves(h0: &HalfCandidate, h1: &HalfCandidate) -> Result<QuatSeq> {
    QuatSeq::interleave(&h0.elems, &h1.elems)
}
