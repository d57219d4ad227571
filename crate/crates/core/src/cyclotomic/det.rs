//! Fraction-free (Bareiss) determinants of integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant with 128-bit intermediates; `None` if any step overflows.
pub(crate) fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let size = m.len();
    if size == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..size - 1 {
        if m[k][k] == 0 {
            let Some(pivot) = (k + 1..size).find(|&r| m[r][k] != 0) else {
                return Some(0);
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let d = m[size - 1][size - 1];
    Some(if negate { -d } else { d })
}

pub(crate) fn det_bigint(rows: &[Vec<i128>]) -> BigInt {
    let mut m: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(pivot) => {
                    m.swap(k, pivot);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant; the 128-bit path is tried first.
pub(crate) fn determinant(rows: Vec<Vec<i128>>) -> BigInt {
    match det_i128(rows.clone()) {
        Some(d) => BigInt::from(d),
        None => det_bigint(&rows),
    }
}
