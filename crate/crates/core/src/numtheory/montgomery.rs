//! Montgomery multiplication for odd 128-bit moduli.

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a0, a1) = (a & MASK, a >> 64);
    let (b0, b1) = (b & MASK, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Residues mod an odd `n > 1`, kept in Montgomery form `x * 2^128 mod n`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Montgomery {
    n: u128,
    neg_inv: u128,
    one: u128,
    r2: u128,
}

impl Montgomery {
    pub fn new(n: u128) -> Self {
        debug_assert!(n > 1 && n & 1 == 1);
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let one = (u128::MAX % n + 1) % n;
        let mut r2 = one;
        let mut m = Montgomery { n, neg_inv: inv.wrapping_neg(), one, r2: 0 };
        for _ in 0..128 {
            r2 = m.add(r2, r2);
        }
        m.r2 = r2;
        m
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.n
    }

    #[inline]
    pub fn one(&self) -> u128 {
        self.one
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.neg_inv);
        let (mh, _) = mul_wide(m, self.n);
        let carry = (lo != 0) as u128;
        let (t, o1) = hi.overflowing_add(mh);
        let (t, o2) = t.overflowing_add(carry);
        if o1 || o2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    #[inline]
    pub fn to_mont(&self, x: u128) -> u128 {
        self.mul(x % self.n, self.r2)
    }

    #[inline]
    pub fn from_mont(&self, x: u128) -> u128 {
        self.redc(0, x)
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let (s, o) = a.overflowing_add(b);
        if o || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.n)
        }
    }

    #[inline]
    pub fn half(&self, a: u128) -> u128 {
        if a & 1 == 0 {
            a >> 1
        } else {
            (a >> 1) + (self.n >> 1) + 1
        }
    }

    pub fn pow(&self, base: u128, mut exp: u128) -> u128 {
        let mut result = self.one;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn mul_matches_bigint(n in any::<u128>(), a in any::<u128>(), b in any::<u128>()) {
            let n = (n | 1).max(3);
            let m = Montgomery::new(n);
            let (a, b) = (a % n, b % n);
            let got = m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
            let want = BigUint::from(a) * BigUint::from(b) % BigUint::from(n);
            prop_assert_eq!(BigUint::from(got), want);
        }

        #[test]
        fn add_sub_half(n in any::<u128>(), a in any::<u128>(), b in any::<u128>()) {
            let n = (n | 1).max(3);
            let m = Montgomery::new(n);
            let (a, b) = (a % n, b % n);
            let s = m.add(a, b);
            prop_assert_eq!(BigUint::from(s), (BigUint::from(a) + BigUint::from(b)) % BigUint::from(n));
            prop_assert_eq!(m.add(m.sub(a, b), b), a);
            prop_assert_eq!(m.add(m.half(a), m.half(a)), a);
        }
    }
}
