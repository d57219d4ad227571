//! Orbit representatives used to prune symmetric duplicates.
//!
//! A side: orbit under all rotations and unit multiples, restricted to the
//! members whose even-index sum is the normalized associate of the orbit's
//! even sums (zero, or `re > 0, im >= 0`). B side: orbit under rotations,
//! restricted to members whose even-index sum is the smaller of the two
//! subsums. The representative is the lexicographic minimum of the
//! restricted orbit.

use crate::quat::{sum_units, GaussInt, QuatSeq, Unit4};

use super::Side;

/// The unit associate of `g` with `re > 0, im >= 0`, or zero.
pub fn normalize_alpha0(g: GaussInt) -> GaussInt {
    if g == GaussInt::ZERO {
        return g;
    }
    (0..4)
        .map(|k| g.mul_i_pow(k))
        .find(|z| z.re > 0 && z.im >= 0)
        .expect("one associate lies in the first quadrant")
}

/// The smaller of `beta0` and `sum - beta0`, by `(re, im)`.
pub fn normalize_beta0(beta0: GaussInt, sum: GaussInt) -> GaussInt {
    beta0.min(sum - beta0)
}

fn even_sum(elems: &[Unit4]) -> GaussInt {
    let evens: Vec<Unit4> = elems.iter().step_by(2).copied().collect();
    sum_units(&evens)
}

/// Orbit representative and whether `seq` is it.
pub fn canonicalize(seq: &QuatSeq, side: Side) -> (QuatSeq, bool) {
    let len = seq.len();
    let elems = seq.as_slice();
    let (target, units): (GaussInt, &[Unit4]) = match side {
        Side::A => (normalize_alpha0(even_sum(elems)), &Unit4::ALL),
        Side::B => (normalize_beta0(even_sum(elems), seq.sum()), &[Unit4::ONE]),
    };
    let mut best: Option<Vec<Unit4>> = None;
    let mut buf = vec![Unit4::ONE; len];
    for &u in units {
        for t in 0..len {
            for (j, slot) in buf.iter_mut().enumerate() {
                *slot = elems[(j + t) % len] * u;
            }
            if len % 2 == 0 && even_sum(&buf) != target {
                continue;
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
    }
    let best = best.expect("the orbit reaches its normalized subsum");
    let is_rep = best.as_slice() == elems;
    (QuatSeq::new(best).expect("nonempty"), is_rep)
}

/// Every distinct element of the orbit of `seq` under the full symmetry
/// group of its side: all rotations, times unit multiples on the A side.
pub fn orbit(seq: &QuatSeq, side: Side) -> Vec<QuatSeq> {
    let units: &[Unit4] = match side {
        Side::A => &Unit4::ALL,
        Side::B => &[Unit4::ONE],
    };
    let mut out: Vec<QuatSeq> = units
        .iter()
        .flat_map(|&u| (0..seq.len() as i64).map(move |t| seq.unit_mul(u).rotate(t)))
        .collect();
    out.sort();
    out.dedup();
    out
}
