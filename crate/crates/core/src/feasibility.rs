//! Admissible PSD values at the half and quarter points, and the even/odd
//! subsequence sums compatible with a chosen half-point pair.
//!
//! Roles follow the balance normalization: `A` sums to 0 and `B` to `1 + i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::is_sum_of_two_squares;
use crate::quat::GaussInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Half,
    Quarter,
}

/// `(PSD(A, s), PSD(B, s))` at `s = l/2` or `s = l/4`, summing to `2l + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FeasiblePsdPair {
    pub point: Point,
    pub value_a: u64,
    pub value_b: u64,
}

impl fmt::Display for FeasiblePsdPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.value_a, self.value_b)
    }
}

pub fn psd_total(len: usize) -> u64 {
    2 * len as u64 + 2
}

fn both_two_squares(x: u64, total: u64) -> bool {
    is_sum_of_two_squares(x as u128) && is_sum_of_two_squares((total - x) as u128)
}

/// Half-point pairs: `value_a = 2l mod 8` (and `0 mod 16` when `4 | l`),
/// both values sums of two squares. Ascending in `value_a`.
pub fn eligible_half_pairs(len: usize) -> Result<Vec<FeasiblePsdPair>> {
    if len == 0 || len % 2 != 0 {
        return Err(Error::OddLength(len));
    }
    let total = psd_total(len);
    let residue = (2 * len as u64) % 8;
    Ok((0..=total)
        .filter(|x| x % 8 == residue)
        .filter(|x| len % 4 != 0 || x % 16 == 0)
        .filter(|&x| both_two_squares(x, total))
        .map(|x| FeasiblePsdPair { point: Point::Half, value_a: x, value_b: total - x })
        .collect())
}

/// Quarter-point pairs for `4 | l`: `value_a = 0 mod 8`, both values sums
/// of two squares.
pub fn eligible_quarter_pairs(len: usize) -> Result<Vec<FeasiblePsdPair>> {
    if len == 0 || len % 4 != 0 {
        return Err(Error::NotMultipleOfFour(len));
    }
    let total = psd_total(len);
    Ok((0..=total)
        .filter(|x| x % 8 == 0)
        .filter(|&x| both_two_squares(x, total))
        .map(|x| FeasiblePsdPair { point: Point::Quarter, value_a: x, value_b: total - x })
        .collect())
}

/// Even- and odd-index sums of `A` and `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsumAssignment {
    pub alpha0: GaussInt,
    pub alpha1: GaussInt,
    pub beta0: GaussInt,
    pub beta1: GaussInt,
}

impl fmt::Display for SubsumAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha0={} alpha1={} beta0={} beta1={}",
            self.alpha0, self.alpha1, self.beta0, self.beta1
        )
    }
}

/// Whether `k` units can sum to `g`.
pub fn achievable_sum(k: usize, g: GaussInt) -> bool {
    let reach = g.re.unsigned_abs() + g.im.unsigned_abs();
    reach <= k as u64 && (g.re + g.im).rem_euclid(2) == (k % 2) as i64
}

/// Gaussian integers `z` with `|z|^2 = target`, sorted by `(re, im)`.
fn gauss_with_norm(target: i128, bound: i64) -> Vec<GaussInt> {
    let mut out = Vec::new();
    for re in -bound..=bound {
        for im in -bound..=bound {
            let z = GaussInt::new(re, im);
            if z.norm() == target {
                out.push(z);
            }
        }
    }
    out
}

/// All `alpha0` with `4|alpha0|^2 = value_a`, each achievable by `l/2` units.
pub fn alpha0_options(len: usize, value_a: u64) -> Vec<GaussInt> {
    let k = len / 2;
    if value_a % 4 != 0 {
        return Vec::new();
    }
    gauss_with_norm((value_a / 4) as i128, k as i64)
        .into_iter()
        .filter(|&a| achievable_sum(k, a) && achievable_sum(k, -a))
        .filter(|a| len % 4 != 0 || (a.re % 2 == 0 && a.im % 2 == 0))
        .collect()
}

/// All `beta0` with `|2 beta0 - 1 - i|^2 = value_b`, with both `beta0` and
/// `1 + i - beta0` achievable by `l/2` units.
pub fn beta0_options(len: usize, value_b: u64) -> Vec<GaussInt> {
    let k = len / 2;
    let k_i = k as i64;
    let one_i = GaussInt::new(1, 1);
    let mut out = Vec::new();
    for re in -k_i..=k_i {
        for im in -k_i..=k_i {
            let b = GaussInt::new(re, im);
            let w = GaussInt::new(2 * re - 1, 2 * im - 1);
            if w.norm() == value_b as i128 && achievable_sum(k, b) && achievable_sum(k, one_i - b) {
                out.push(b);
            }
        }
    }
    out
}

/// Every `(alpha0, beta0)` combination for the half-point pair, ordered by
/// `alpha0` then `beta0`, each in `(re, im)` order.
pub fn enumerate_subsums(len: usize, half: &FeasiblePsdPair) -> Vec<SubsumAssignment> {
    let one_i = GaussInt::new(1, 1);
    let alphas = alpha0_options(len, half.value_a);
    let betas = beta0_options(len, half.value_b);
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for &alpha0 in &alphas {
        for &beta0 in &betas {
            out.push(SubsumAssignment { alpha0, alpha1: -alpha0, beta0, beta1: one_i - beta0 });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(pairs: &[FeasiblePsdPair]) -> Vec<(u64, u64)> {
        pairs.iter().map(|p| (p.value_a, p.value_b)).collect()
    }

    #[test]
    fn half_lists() {
        assert_eq!(values(&eligible_half_pairs(6).unwrap()), vec![(4, 10)]);
        assert_eq!(values(&eligible_half_pairs(28).unwrap()), vec![(0, 58), (32, 26)]);
        assert_eq!(values(&eligible_half_pairs(30).unwrap()), vec![(4, 58), (36, 26), (52, 10)]);
        assert_eq!(values(&eligible_half_pairs(32).unwrap()), vec![(16, 50), (32, 34), (64, 2)]);
        assert_eq!(
            values(&eligible_half_pairs(34).unwrap()),
            vec![(20, 50), (36, 34), (52, 18), (68, 2)]
        );
        assert!(matches!(eligible_half_pairs(7), Err(Error::OddLength(7))));
    }

    #[test]
    fn quarter_lists() {
        assert_eq!(
            values(&eligible_quarter_pairs(28).unwrap()),
            vec![(0, 58), (8, 50), (32, 26), (40, 18)]
        );
        assert_eq!(
            values(&eligible_quarter_pairs(32).unwrap()),
            vec![(8, 58), (16, 50), (32, 34), (40, 26), (64, 2)]
        );
        assert!(eligible_quarter_pairs(30).is_err());
    }

    #[test]
    fn subsums_for_length_34() {
        let half = FeasiblePsdPair { point: Point::Half, value_a: 36, value_b: 34 };
        let subs = enumerate_subsums(34, &half);
        assert!(subs.iter().any(|s| s.alpha0 == GaussInt::new(0, -3) && s.beta0 == GaussInt::new(-1, -2)));
        for s in &subs {
            assert_eq!(4 * s.alpha0.norm(), 36);
            assert_eq!(GaussInt::new(2 * s.beta0.re - 1, 2 * s.beta0.im - 1).norm(), 34);
            assert_eq!(s.alpha0 + s.alpha1, GaussInt::ZERO);
            assert_eq!(s.beta0 + s.beta1, GaussInt::new(1, 1));
            // l = 2 mod 4: |alpha0|^2 is odd.
            assert_eq!(s.alpha0.norm() % 2, 1);
        }
        let mut sorted = subs.clone();
        sorted.sort_by_key(|s| (s.alpha0, s.beta0));
        assert_eq!(sorted, subs);
    }

    #[test]
    fn zero_alpha() {
        assert_eq!(alpha0_options(28, 0), vec![GaussInt::ZERO]);
        for a in alpha0_options(28, 32) {
            assert!(a.re % 2 == 0 && a.im % 2 == 0);
        }
    }

    #[test]
    fn pairs_are_consistent() {
        for len in (2..=64).step_by(2) {
            for p in eligible_half_pairs(len).unwrap() {
                assert_eq!(p.value_a + p.value_b, psd_total(len));
                assert!(is_sum_of_two_squares(p.value_a as u128));
                assert!(is_sum_of_two_squares(p.value_b as u128));
            }
        }
    }
}
