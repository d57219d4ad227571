//! Exact verification of the pair condition.

use std::fmt;

use crate::error::{Error, Result};
use crate::quat::{paf_unchecked, GaussInt, QuatSeq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDiagnostic {
    pub holds: bool,
    /// `(s, PAF(A, s) + PAF(B, s))` for every lag where the sum is not -2.
    pub failing_lags: Vec<(usize, GaussInt)>,
    pub alpha: GaussInt,
    pub beta: GaussInt,
}

impl fmt::Display for PairDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} alpha={} beta={}", if self.holds { "ok" } else { "FAIL" }, self.alpha, self.beta)?;
        for (s, v) in &self.failing_lags {
            write!(f, " lag{s}={v}")?;
        }
        Ok(())
    }
}

/// Checks `PAF(A, s) + PAF(B, s) = -2` exactly for `s = 1..=l/2`.
pub fn verify_pair(a: &QuatSeq, b: &QuatSeq) -> Result<PairDiagnostic> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let target = GaussInt::new(-2, 0);
    let failing_lags: Vec<(usize, GaussInt)> = (1..=a.len() / 2)
        .map(|s| (s, paf_unchecked(a.as_slice(), s) + paf_unchecked(b.as_slice(), s)))
        .filter(|&(_, v)| v != target)
        .collect();
    Ok(PairDiagnostic {
        holds: failing_lags.is_empty(),
        failing_lags,
        alpha: a.sum(),
        beta: b.sum(),
    })
}
