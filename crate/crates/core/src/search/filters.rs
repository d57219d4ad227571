//! The candidate tests: PSD bound (T1), quarter-point congruences (T2) and
//! Galois-orbit norm products (T3), plus the join key.

use std::fmt;

use crate::cyclotomic::{norm_order, norm_product_complement, norm_product_psd, norm_to_u128};
use crate::feasibility::{eligible_quarter_pairs, psd_total};
use crate::numtheory::check_norm_condition;
use crate::quat::{dft_exact_quarter, paf_unchecked, psd_profile, GaussInt, QuatSeq};

use super::{canonicalize, Side};

pub const PSD_TOLERANCE: f64 = 1e-6;

/// T1: `PSD(seq, s) <= 2l + 2` for every `s = 1..l-1`.
pub fn filter_t1(seq: &QuatSeq) -> bool {
    let bound = psd_total(seq.len()) as f64 + PSD_TOLERANCE;
    psd_profile(seq).iter().skip(1).all(|&v| v <= bound)
}

/// Whether `v`, the exact quarter-point PSD of a `side` sequence, fits an
/// eligible quarter pair.
pub(crate) fn quarter_value_ok(len: usize, side: Side, v: u64, pairs: &[u64]) -> bool {
    let total = psd_total(len);
    if v > total {
        return false;
    }
    let a_value = match side {
        Side::A => v,
        Side::B => total - v,
    };
    pairs.binary_search(&a_value).is_ok()
}

/// `value_a` of every eligible quarter pair, ascending; empty unless `4 | l`.
pub(crate) fn quarter_a_values(len: usize) -> Vec<u64> {
    eligible_quarter_pairs(len)
        .map(|ps| ps.into_iter().map(|p| p.value_a).collect())
        .unwrap_or_default()
}

/// T2: exact PSD at `l/4` and `3l/4` must be a member of an eligible
/// quarter pair in the role of `side`. Vacuous unless `4 | l`.
pub fn filter_t2(seq: &QuatSeq, side: Side) -> bool {
    let len = seq.len();
    if len % 4 != 0 {
        return true;
    }
    let values = quarter_a_values(len);
    [len / 4, 3 * len / 4].iter().all(|&s| {
        let z = dft_exact_quarter(seq, s).expect("quarter point is exact");
        quarter_value_ok(len, side, z.norm() as u64, &values)
    })
}

/// Divisor/class pairs `(d, s)` tested by T3.
pub fn t3_classes(len: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 2..=len {
        if len % d == 0 {
            out.push((d, 1));
            if d % 4 == 0 {
                out.push((d, 3));
            }
        }
    }
    out
}

fn product_admissible(value: &num_bigint::BigInt, n: usize, complement: bool) -> bool {
    match norm_to_u128(value) {
        Some(m) => check_norm_condition(m, n as u64).map(|v| v.holds).unwrap_or(true),
        // Negative complement: some PSD exceeds the total.
        None if complement && value.sign() == num_bigint::Sign::Minus => false,
        None => true,
    }
}

/// T3: for every divisor `d > 1` of `l` and orbit class, both the product of
/// the sequence's own PSD values and the product of the partner's implied
/// values `2l + 2 - PSD` satisfy the norm condition. Products too wide for
/// 128-bit factorization are not tested.
pub fn filter_t3(seq: &QuatSeq) -> bool {
    let len = seq.len();
    let total = psd_total(len) as i64;
    t3_classes(len).into_iter().all(|(d, s)| {
        let n = norm_order(len, d).expect("divisor of length");
        let own = norm_product_psd(seq, d, s).expect("valid orbit");
        if !product_admissible(&own, n, false) {
            return false;
        }
        match norm_product_complement(seq, d, s, total) {
            Ok(c) => product_admissible(&c, n, true),
            Err(_) => true,
        }
    })
}

/// Byte encoding of `PAF(seq, 1..=l/2)` as little-endian `i16` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchKey(pub Vec<u8>);

impl MatchKey {
    pub fn from_paf(values: &[GaussInt]) -> Self {
        let mut bytes = Vec::with_capacity(values.len() * 4);
        for v in values {
            bytes.extend_from_slice(&(v.re as i16).to_le_bytes());
            bytes.extend_from_slice(&(v.im as i16).to_le_bytes());
        }
        MatchKey(bytes)
    }

    pub fn of(seq: &QuatSeq) -> Self {
        let elems = seq.as_slice();
        let lags: Vec<GaussInt> = (1..=seq.len() / 2).map(|s| paf_unchecked(elems, s)).collect();
        Self::from_paf(&lags)
    }

    pub fn values(&self) -> Vec<GaussInt> {
        self.0
            .chunks_exact(4)
            .map(|c| {
                let re = i16::from_le_bytes([c[0], c[1]]) as i64;
                let im = i16::from_le_bytes([c[2], c[3]]) as i64;
                GaussInt::new(re, im)
            })
            .collect()
    }

    /// Each value `v` replaced by `-2 - v`.
    pub fn complement(&self) -> Self {
        let flipped: Vec<GaussInt> =
            self.values().into_iter().map(|v| GaussInt::new(-2 - v.re, -v.im)).collect();
        Self::from_paf(&flipped)
    }
}

impl fmt::Debug for MatchKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MatchKey").field(&self.values()).finish()
    }
}

/// A sequence with its lag-`1..=l/2` PAF values and full PSD profile.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateRecord {
    pub seq: QuatSeq,
    pub side: Side,
    pub paf: Vec<GaussInt>,
    pub psd: Vec<f64>,
    pub canonical: bool,
}

impl CandidateRecord {
    pub fn new(seq: QuatSeq, side: Side) -> Self {
        let elems = seq.as_slice();
        let paf = (1..=seq.len() / 2).map(|s| paf_unchecked(elems, s)).collect();
        let psd = psd_profile(&seq);
        let canonical = canonicalize(&seq, side).1;
        CandidateRecord { seq, side, paf, psd, canonical }
    }

    pub fn key(&self) -> MatchKey {
        MatchKey::from_paf(&self.paf)
    }

    /// Whether the sequence passes every enabled test.
    pub fn passes(&self, t1: bool, t2: bool, t3: bool) -> bool {
        (!t1 || filter_t1(&self.seq))
            && (!t2 || filter_t2(&self.seq, self.side))
            && (!t3 || filter_t3(&self.seq))
    }
}
