//! Exhaustive reference enumerations for small lengths.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::feasibility::eligible_half_pairs;
use crate::quat::{dft_exact_quarter, paf, GaussInt, QuatSeq, Unit4};

use super::filters::{filter_t1, filter_t2, filter_t3};
use super::Side;

pub const BRUTE_MAX_LEN: usize = 8;

/// Balance target of a side: 0 for A, `1 + i` for B.
pub fn side_sum(side: Side) -> GaussInt {
    match side {
        Side::A => GaussInt::ZERO,
        Side::B => GaussInt::new(1, 1),
    }
}

/// All unit sequences of length `len` in lexicographic exponent order.
fn all_sequences(len: usize) -> impl Iterator<Item = QuatSeq> {
    (0..1u64 << (2 * len)).map(move |code| {
        let exps: Vec<u8> = (0..len).map(|j| ((code >> (2 * (len - 1 - j))) & 3) as u8).collect();
        QuatSeq::from_exponents(&exps).expect("nonempty")
    })
}

fn paf_lags(seq: &QuatSeq) -> Vec<GaussInt> {
    (1..=seq.len() / 2).map(|s| paf(seq, s).expect("lag in range")).collect()
}

/// Every pair `(A, B)` of length `len` with `sum A = 0`, `sum B = 1 + i`
/// and `PAF(A, s) + PAF(B, s) = -2` for `s = 1..=l/2`, sorted.
pub fn brute_force_search(len: usize) -> Result<Vec<(QuatSeq, QuatSeq)>> {
    if len == 0 || len % 2 != 0 {
        return Err(Error::OddLength(len));
    }
    if len > BRUTE_MAX_LEN {
        return Err(Error::UnsupportedLength { len, reason: "exhaustive search is limited to length 8" });
    }
    let mut by_paf: BTreeMap<Vec<GaussInt>, Vec<QuatSeq>> = BTreeMap::new();
    let mut a_side = Vec::new();
    for seq in all_sequences(len) {
        let sum = seq.sum();
        if sum == side_sum(Side::B) {
            by_paf.entry(paf_lags(&seq)).or_default().push(seq);
        } else if sum == side_sum(Side::A) {
            a_side.push(seq);
        }
    }
    let mut pairs = Vec::new();
    for a in a_side {
        let wanted: Vec<GaussInt> =
            paf_lags(&a).into_iter().map(|v| GaussInt::new(-2 - v.re, -v.im)).collect();
        if let Some(bs) = by_paf.get(&wanted) {
            pairs.extend(bs.iter().map(|b| (a.clone(), b.clone())));
        }
    }
    pairs.sort();
    Ok(pairs)
}

/// Survivor counts of the single-side cascade over every balanced sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SideCascade {
    pub balanced: usize,
    pub forced_half: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub survivors: Vec<QuatSeq>,
}

/// Runs the cascade on all balanced sequences of one side, optionally with
/// the first element pinned. The half-point PSD must be the side's value
/// in some eligible half pair.
pub fn side_cascade(len: usize, side: Side, first: Option<Unit4>) -> Result<SideCascade> {
    let halves = eligible_half_pairs(len)?;
    if len > 2 * BRUTE_MAX_LEN {
        return Err(Error::UnsupportedLength { len, reason: "side cascade is limited to length 16" });
    }
    let half_ok = |v: u64| {
        halves.iter().any(|p| match side {
            Side::A => p.value_a == v,
            Side::B => p.value_b == v,
        })
    };
    let mut out = SideCascade::default();
    for seq in all_sequences(len) {
        if first.is_some_and(|u| seq.as_slice()[0] != u) || seq.sum() != side_sum(side) {
            continue;
        }
        out.balanced += 1;
        let half = dft_exact_quarter(&seq, len / 2).expect("half point is exact").norm() as u64;
        if !half_ok(half) {
            continue;
        }
        out.forced_half += 1;
        if !filter_t1(&seq) {
            continue;
        }
        out.t1 += 1;
        if !filter_t2(&seq, side) {
            continue;
        }
        out.t2 += 1;
        if !filter_t3(&seq) {
            continue;
        }
        out.t3 += 1;
        out.survivors.push(seq);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::verify_pair;

    #[test]
    fn length_two_by_hand() {
        // A = [x, -x] has PAF(A, 1) = -2; B must have PAF(B, 1) = 0, i.e.
        // b1 = +-i b0, and b0 + b1 = 1 + i: B = [1, i] or [i, 1].
        let pairs = brute_force_search(2).unwrap();
        assert_eq!(pairs.len(), 4 * 2);
        for (a, b) in &pairs {
            assert!(verify_pair(a, b).unwrap().holds);
            assert!(["+i", "i+"].contains(&b.to_string().as_str()));
        }
    }

    #[test]
    fn length_four_pairs_verify() {
        let pairs = brute_force_search(4).unwrap();
        assert!(!pairs.is_empty());
        assert!(pairs.iter().all(|(a, b)| verify_pair(a, b).unwrap().holds));
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(brute_force_search(3).is_err());
        assert!(brute_force_search(10).is_err());
    }

    #[test]
    fn length_six_b_cascade() {
        let c = side_cascade(6, Side::B, Some(Unit4::ONE)).unwrap();
        assert_eq!((c.balanced, c.forced_half, c.t1, c.t2, c.t3), (100, 36, 20, 20, 4));
    }
}
