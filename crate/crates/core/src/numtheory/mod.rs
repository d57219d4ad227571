//! Integer predicates behind the norm tests: factorization, square-free
//! parts, two-squares and multiplicative-order conditions.

mod montgomery;
mod prime;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
pub use prime::is_prime;
use prime::{pollard_brent, small_primes};

/// Prime factorization as `(prime, exponent)` pairs, primes increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization(pub Vec<(u128, u32)>);

impl Factorization {
    pub fn value(&self) -> u128 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (idx, &(p, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Complete factorization of `m >= 1`; `m = 0` yields the empty list too.
pub fn factorize(m: u128) -> Factorization {
    let mut factors: Vec<(u128, u32)> = Vec::new();
    if m <= 1 {
        return Factorization(factors);
    }
    let mut rest = m;
    for (idx, &p) in small_primes().iter().enumerate() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        // Large prime cofactors would otherwise run the whole table.
        if idx % 1024 == 1023 && is_prime(rest) {
            break;
        }
    }
    if rest > 1 {
        let mut stack = vec![rest];
        while let Some(x) = stack.pop() {
            if x == 1 {
                continue;
            }
            if is_prime(x) {
                match factors.iter_mut().find(|(p, _)| *p == x) {
                    Some(entry) => entry.1 += 1,
                    None => factors.push((x, 1)),
                }
            } else {
                let f = pollard_brent(x);
                stack.push(f);
                stack.push(x / f);
            }
        }
    }
    factors.sort_unstable();
    Factorization(factors)
}

/// Product of the primes dividing `m` to an odd power.
pub fn squarefree_part(m: u128) -> u128 {
    factorize(m).0.iter().filter(|(_, e)| e % 2 == 1).map(|&(p, _)| p).product()
}

/// True iff `m = x^2 + y^2` for integers `x, y`.
pub fn is_sum_of_two_squares(m: u128) -> bool {
    m == 0 || factorize(m).0.iter().all(|&(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// Least `f >= 1` with `p^f = 1 mod q`.
pub fn multiplicative_order(p: u128, q: u64) -> Result<u64> {
    if q < 2 || p.gcd(&(q as u128)) != 1 {
        return Err(Error::NotCoprime { p, q: q as u128 });
    }
    let q = q as u128;
    let base = p % q;
    let mut x = base;
    let mut f = 1u64;
    while x != 1 {
        x = x * base % q;
        f += 1;
    }
    Ok(f)
}

/// `(a/q)` for an odd prime `q`, via Euler's criterion.
pub fn legendre_symbol(a: i128, q: u64) -> Result<i8> {
    if q < 3 || q % 2 == 0 || !is_prime(q as u128) {
        return Err(Error::NotOddPrime(q));
    }
    let qq = q as u128;
    let r = a.rem_euclid(q as i128) as u128;
    if r == 0 {
        return Ok(0);
    }
    let mut result = 1u128;
    let mut base = r;
    let mut e = (qq - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % qq;
        }
        base = base * base % qq;
        e >>= 1;
    }
    Ok(if result == 1 { 1 } else { -1 })
}

/// Which primes may divide the square-free part of `|x|^2` for `x` in
/// `Z[xi_n]`, `4 | n`: `p = 2` or `p = 1 mod 4`, and for each odd prime
/// `q | n` either `p = q` or the order of `p` mod `q` is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCondition {
    pub n: u64,
    pub odd_primes: Vec<u64>,
}

impl NormCondition {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n % 4 != 0 {
            return Err(Error::NotMultipleOfFour(n as usize));
        }
        let odd_primes = factorize(n as u128)
            .primes()
            .filter(|&p| p != 2)
            .map(|p| p as u64)
            .collect();
        Ok(NormCondition { n, odd_primes })
    }

    pub fn admits(&self, p: u128) -> bool {
        if p != 2 && p % 4 != 1 {
            return false;
        }
        self.odd_primes.iter().all(|&q| {
            p == q as u128
                || multiplicative_order(p, q).map(|f| f % 2 == 1).unwrap_or(false)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormVerdict {
    pub holds: bool,
    /// Primes of the square-free part that violate the condition.
    pub violations: Vec<u128>,
}

/// Tests every prime of `squarefree_part(m)` against [`NormCondition`] for `n`.
///
/// `m = 0` holds trivially: the condition only constrains nonzero norms.
pub fn check_norm_condition(m: u128, n: u64) -> Result<NormVerdict> {
    let cond = NormCondition::new(n)?;
    if m == 0 {
        return Ok(NormVerdict { holds: true, violations: Vec::new() });
    }
    let violations: Vec<u128> = factorize(m)
        .0
        .into_iter()
        .filter(|&(p, e)| e % 2 == 1 && !cond.admits(p))
        .map(|(p, _)| p)
        .collect();
    Ok(NormVerdict { holds: violations.is_empty(), violations })
}

/// The norm condition for `n` in closed form: admissible primes are the
/// `exceptional` ones plus every prime in one of `classes` mod `modulus`,
/// where `modulus = 4 * prod(odd q | n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleResidues {
    pub n: u64,
    pub modulus: u64,
    pub classes: Vec<u64>,
    pub exceptional: Vec<u64>,
}

impl AdmissibleResidues {
    pub fn admits(&self, p: u64) -> bool {
        self.exceptional.contains(&p) || self.classes.binary_search(&(p % self.modulus)).is_ok()
    }
}

impl fmt::Display for AdmissibleResidues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self.classes.iter().map(u64::to_string).collect();
        write!(f, "p = {} mod {}", classes.join(","), self.modulus)?;
        if !self.exceptional.is_empty() {
            let ex: Vec<String> = self.exceptional.iter().map(u64::to_string).collect();
            write!(f, " or p in {{{}}}", ex.join(","))?;
        }
        Ok(())
    }
}

/// Combines the per-prime conditions by CRT and checks the result against
/// [`NormCondition::admits`] for every prime below `bound`.
pub fn admissible_residues(n: u64, bound: u64) -> Result<AdmissibleResidues> {
    let cond = NormCondition::new(n)?;
    let modulus = 4 * cond.odd_primes.iter().product::<u64>();
    let classes: Vec<u64> = (1..modulus)
        .filter(|&r| {
            r % 4 == 1
                && cond.odd_primes.iter().all(|&q| {
                    r % q != 0 && multiplicative_order(r as u128, q).is_ok_and(|f| f % 2 == 1)
                })
        })
        .collect();
    let exceptional: Vec<u64> = std::iter::once(2)
        .chain(cond.odd_primes.iter().copied())
        .filter(|&p| cond.admits(p as u128))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let closed = AdmissibleResidues { n, modulus, classes, exceptional };
    for &p in small_primes().iter().take_while(|&&p| (p as u64) < bound) {
        if closed.admits(p as u64) != cond.admits(p as u128) {
            return Err(Error::ResidueMismatch { p: p as u64, n: n as usize });
        }
    }
    Ok(closed)
}
