//! Periodic autocorrelation and the length-`l` DFT of quaternary sequences.
//!
//! The DFT uses `xi_l = exp(2*pi*i/l)`, so `DFT(A, s) = sum_j a_j xi_l^(j s)`
//! and `PSD(A, s) = |DFT(A, s)|^2`. At `s` with `4 s = 0 mod l` the powers of
//! `xi_l` are units, and the transform is evaluated exactly in `Z[i]`.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use super::{GaussInt, QuatSeq, Unit4};
use crate::error::{Error, Result};

/// Powers `xi_l^m` for `m = 0..l`.
#[derive(Debug)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(len: usize) -> Self {
        let roots = (0..len)
            .map(|m| {
                // Exact values at the quarter points keep those PSDs integral.
                if (4 * m) % len == 0 {
                    Unit4::from_exponent((4 * m / len) as u8).to_complex()
                } else {
                    let (sin, cos) = (TAU * m as f64 / len as f64).sin_cos();
                    Complex64::new(cos, sin)
                }
            })
            .collect();
        RootTable { roots }
    }

    /// Shared table for `len`, built on first use.
    pub fn shared(len: usize) -> Arc<RootTable> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RootTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("root table cache poisoned");
        guard.entry(len).or_insert_with(|| Arc::new(RootTable::new(len))).clone()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `xi_l^m`, with `m` reduced mod `l`.
    #[inline]
    pub fn pow(&self, m: usize) -> Complex64 {
        self.roots[m % self.roots.len()]
    }
}

/// PAF values at every lag `0..l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PafVector(pub Vec<GaussInt>);

impl PafVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, s: usize) -> GaussInt {
        self.0[s]
    }

    pub fn as_slice(&self) -> &[GaussInt] {
        &self.0
    }
}

/// `PAF(A, s) = sum_j a_j * conj(a_{j+s})`.
pub fn paf(seq: &QuatSeq, s: usize) -> Result<GaussInt> {
    let len = seq.len();
    if s >= len {
        return Err(Error::IndexOutOfRange { index: s, len });
    }
    Ok(paf_unchecked(seq.as_slice(), s))
}

#[inline]
pub(crate) fn paf_unchecked(elems: &[Unit4], s: usize) -> GaussInt {
    let len = elems.len();
    let mut counts = [0i64; 4];
    for j in 0..len {
        let u = elems[j] * elems[(j + s) % len].conj();
        counts[u.exponent() as usize] += 1;
    }
    GaussInt::new(counts[0] - counts[2], counts[1] - counts[3])
}

pub fn paf_vector(seq: &QuatSeq) -> PafVector {
    PafVector((0..seq.len()).map(|s| paf_unchecked(seq.as_slice(), s)).collect())
}

/// Floating-point `DFT(A, s)`.
pub fn dft(seq: &QuatSeq, s: usize) -> Result<Complex64> {
    let len = seq.len();
    if s >= len {
        return Err(Error::IndexOutOfRange { index: s, len });
    }
    Ok(dft_with(&RootTable::shared(len), seq.as_slice(), s))
}

#[inline]
pub(crate) fn dft_with(table: &RootTable, elems: &[Unit4], s: usize) -> Complex64 {
    let len = table.len();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut m = 0usize;
    for &a in elems {
        acc += a.rotate_complex(table.roots[m]);
        m += s;
        if m >= len {
            m -= len;
        }
    }
    acc
}

/// True when `xi_l^s` is a fourth root of unity.
#[inline]
pub fn is_exact_point(len: usize, s: usize) -> bool {
    (4 * s) % len == 0
}

/// Exact `DFT(A, s)` for `s` in `{0, l/4, l/2, 3l/4}` (whichever are integers).
pub fn dft_exact_quarter(seq: &QuatSeq, s: usize) -> Result<GaussInt> {
    let len = seq.len();
    if s >= len {
        return Err(Error::IndexOutOfRange { index: s, len });
    }
    if !is_exact_point(len, s) {
        return Err(Error::NotExactPoint { s, len });
    }
    let step = (4 * s / len) as u8;
    let mut counts = [0i64; 4];
    let mut twist = 0u8;
    for &a in seq.as_slice() {
        counts[((a.exponent() + twist) & 3) as usize] += 1;
        twist = (twist + step) & 3;
    }
    Ok(GaussInt::new(counts[0] - counts[2], counts[1] - counts[3]))
}

/// `PSD(A, s) = |DFT(A, s)|^2`; exact at the quarter points.
pub fn psd(seq: &QuatSeq, s: usize) -> Result<f64> {
    if s < seq.len() && is_exact_point(seq.len(), s) {
        return Ok(dft_exact_quarter(seq, s)?.norm() as f64);
    }
    Ok(dft(seq, s)?.norm_sqr())
}

/// `PSD(A, s)` for every `s = 0..l`.
pub fn psd_profile(seq: &QuatSeq) -> Vec<f64> {
    let table = RootTable::shared(seq.len());
    (0..seq.len())
        .map(|s| {
            if is_exact_point(seq.len(), s) {
                dft_exact_quarter(seq, s).expect("exact point").norm() as f64
            } else {
                dft_with(&table, seq.as_slice(), s).norm_sqr()
            }
        })
        .collect()
}

/// `PSD(A, s)` evaluated as `sum_j PAF(A, j) xi_l^(-j s)`.
pub fn psd_from_paf(seq: &QuatSeq, s: usize) -> Result<f64> {
    let len = seq.len();
    if s >= len {
        return Err(Error::IndexOutOfRange { index: s, len });
    }
    let table = RootTable::shared(len);
    let pafs = paf_vector(seq);
    let total: Complex64 = pafs
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, v)| v.to_complex() * table.pow((len - j % len) * s))
        .sum();
    Ok(total.re)
}
