//! Exact arithmetic in `Z[xi_n]` and the Galois-orbit norm products.
//!
//! Elements are coefficient vectors in the power basis `1, xi, ..., xi^(phi-1)`
//! reduced modulo the cyclotomic polynomial. The absolute norm is the
//! determinant of multiplication by the element on that basis, which is the
//! resultant of `Phi_n` and the element's polynomial.

mod det;

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

pub use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quat::{psd, QuatSeq};

pub const MAX_ORDER: usize = 512;

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Result<Vec<i64>> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("poisoned").get(&n) {
        return Ok(p.clone());
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = div_exact_monic(&num, &cyclotomic_polynomial(d)?);
    }
    cache.lock().expect("poisoned").insert(n, num.clone());
    Ok(num)
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// `Z[xi_n]` for a fixed `n`, with the reduced power basis images of
/// `xi^e`, `e = 0..n`.
#[derive(Debug)]
pub struct CyclotomicContext {
    n: usize,
    phi: usize,
    poly: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicContext {
    pub fn new(n: usize) -> Result<Self> {
        let poly = cyclotomic_polynomial(n)?;
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            cur = mul_by_xi(&cur, &poly);
        }
        Ok(CyclotomicContext { n, phi, poly, powers })
    }

    /// Context for `n`, built once and shared.
    pub fn shared(n: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CyclotomicContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ctx) = cache.lock().expect("poisoned").get(&n) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(CyclotomicContext::new(n)?);
        cache.lock().expect("poisoned").insert(n, ctx.clone());
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.poly
    }
}

fn mul_by_xi(v: &[i64], poly: &[i64]) -> Vec<i64> {
    let phi = v.len();
    let top = v[phi - 1];
    let mut out = vec![0i64; phi];
    out[1..].copy_from_slice(&v[..phi - 1]);
    if top != 0 {
        for (o, &c) in out.iter_mut().zip(poly) {
            *o -= top * c;
        }
    }
    out
}

/// An element of `Z[xi_n]` in the reduced power basis.
#[derive(Clone, Debug)]
pub struct CycInt {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<i64>,
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl CycInt {
    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        CycInt { ctx: ctx.clone(), coeffs: vec![0; ctx.phi] }
    }

    pub fn constant(ctx: &Arc<CyclotomicContext>, c: i64) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = c;
        z
    }

    /// `sum_e counts[e] * xi^e` with `counts.len() == n`.
    pub fn from_power_counts(ctx: &Arc<CyclotomicContext>, counts: &[i64]) -> Result<Self> {
        let mut coeffs = vec![0i64; ctx.phi];
        for (e, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (dst, &p) in coeffs.iter_mut().zip(&ctx.powers[e % ctx.n]) {
                *dst = p
                    .checked_mul(c)
                    .and_then(|v| dst.checked_add(v))
                    .ok_or(Error::Overflow("cyclotomic coefficient"))?;
            }
        }
        Ok(CycInt { ctx: ctx.clone(), coeffs })
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("cyclotomic add")))
            .collect::<Result<_>>()?;
        Ok(CycInt { ctx: self.ctx.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("cyclotomic sub")))
            .collect::<Result<_>>()?;
        Ok(CycInt { ctx: self.ctx.clone(), coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.ctx.n;
        let mut counts = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).ok_or(Error::Overflow("cyclotomic mul"))?;
                let slot = &mut counts[(i + j) % n];
                *slot = slot.checked_add(prod).ok_or(Error::Overflow("cyclotomic mul"))?;
            }
        }
        Self::from_power_counts(&self.ctx, &counts)
    }

    /// Image under `xi -> xi^-1`, i.e. complex conjugation.
    pub fn conj(&self) -> Result<Self> {
        let n = self.ctx.n;
        let mut counts = vec![0i64; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            counts[(n - k) % n] += c;
        }
        Self::from_power_counts(&self.ctx, &counts)
    }

    /// Numeric value at `xi_n^j`.
    pub fn evaluate(&self, j: usize) -> Complex64 {
        let n = self.ctx.n;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let angle = TAU * ((k * j) % n) as f64 / n as f64;
                Complex64::from_polar(c as f64, angle)
            })
            .sum()
    }

    /// Matrix of multiplication by `self` on the power basis (column `k`
    /// holds `self * xi^k`).
    fn multiplication_matrix(&self) -> Vec<Vec<i128>> {
        let phi = self.ctx.phi;
        let mut rows = vec![vec![0i128; phi]; phi];
        let mut col = self.coeffs.clone();
        for k in 0..phi {
            for (r, &v) in col.iter().enumerate() {
                rows[r][k] = v as i128;
            }
            if k + 1 < phi {
                col = mul_by_xi(&col, &self.ctx.poly);
            }
        }
        rows
    }
}

/// Exact `DFT(A, t)` as an element of `Z[xi_n]`; needs `4 | n` and
/// `l | t * n` so that `xi_l^t` and `i` are powers of `xi_n`.
pub fn dft_as_cyc(seq: &QuatSeq, t: usize, ctx: &Arc<CyclotomicContext>) -> Result<CycInt> {
    let len = seq.len();
    let n = ctx.n;
    if n % 4 != 0 || (t * n) % len != 0 {
        return Err(Error::IncompatibleOrder { t, n, len });
    }
    let step = (t * n / len) % n;
    let quarter = n / 4;
    let mut counts = vec![0i64; n];
    let mut e = 0usize;
    for a in seq.as_slice() {
        counts[(e + a.exponent() as usize * quarter) % n] += 1;
        e = (e + step) % n;
    }
    CycInt::from_power_counts(ctx, &counts)
}

/// Exponents `e = s mod 4`, `0 <= e < n`, coprime to `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisOrbit {
    pub n: usize,
    pub class: usize,
    pub exponents: Vec<usize>,
}

pub fn galois_orbit(n: usize, s: usize) -> Result<GaloisOrbit> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::NotMultipleOfFour(n));
    }
    if s != 1 && s != 3 {
        return Err(Error::InvalidOrbitClass(s));
    }
    let exponents = (0..n / 4).map(|j| 4 * j + s).filter(|e| e.gcd(&n) == 1).collect();
    Ok(GaloisOrbit { n, class: s, exponents })
}

/// Product of all Galois conjugates of `x`.
pub fn absolute_norm(x: &CycInt) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    det::determinant(x.multiplication_matrix())
}

/// `lcm(4, d)` after checking `d > 1`, `d | len`.
pub fn norm_order(len: usize, d: usize) -> Result<usize> {
    if d < 2 || len % d != 0 {
        return Err(Error::InvalidDivisor { d, len });
    }
    Ok(4usize.lcm(&d))
}

/// PSD frequencies `(e mod d) * l / d` over `galois_orbit(lcm(4, d), s)`.
pub fn orbit_frequencies(len: usize, d: usize, s: usize) -> Result<Vec<usize>> {
    let n = norm_order(len, d)?;
    Ok(galois_orbit(n, s)?.exponents.iter().map(|e| (e % d) * (len / d)).collect())
}

/// `DFT(A, (e0 mod d) * l / d)` for the first orbit exponent `e0`; its
/// conjugates under `U_4` run over the whole orbit.
fn orbit_element(seq: &QuatSeq, d: usize, s: usize) -> Result<CycInt> {
    let len = seq.len();
    let n = norm_order(len, d)?;
    let e0 = galois_orbit(n, s)?.exponents[0];
    let ctx = CyclotomicContext::shared(n)?;
    dft_as_cyc(seq, (e0 % d) * (len / d), &ctx)
}

/// Exact `prod PSD(A, f)` over [`orbit_frequencies`]`(l, d, s)`.
pub fn norm_product_psd(seq: &QuatSeq, d: usize, s: usize) -> Result<BigInt> {
    Ok(absolute_norm(&orbit_element(seq, d, s)?))
}

/// Exact `prod (total - PSD(A, f))` over [`orbit_frequencies`]`(l, d, s)`.
///
/// Every conjugate of `total - x*conj(x)` is real and they come in equal
/// pairs, so its absolute norm is the square of the wanted product; the
/// sign comes from a floating evaluation.
pub fn norm_product_complement(seq: &QuatSeq, d: usize, s: usize, total: i64) -> Result<BigInt> {
    let x = orbit_element(seq, d, s)?;
    let ctx = x.context().clone();
    let e = CycInt::constant(&ctx, total).sub(&x.mul(&x.conj()?)?)?;
    let squared = absolute_norm(&e);
    if squared.is_zero() {
        return Ok(squared);
    }
    let root = squared.sqrt();
    if &root * &root != squared {
        return Err(Error::NotASquare(squared.to_string()));
    }
    let mut float_product = 1.0f64;
    for f in orbit_frequencies(seq.len(), d, s)? {
        float_product *= total as f64 - psd(seq, f)?;
    }
    Ok(if float_product < 0.0 { -root } else { root })
}

/// Converts an exact norm to `u128` for factorization; `None` if negative
/// or wider than 128 bits.
pub fn norm_to_u128(v: &BigInt) -> Option<u128> {
    if v.sign() == Sign::Minus {
        return None;
    }
    v.abs().to_u128()
}
