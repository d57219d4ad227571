//! A length-30 pair built from quadratic characters modulo 61.

use crate::numtheory::legendre_symbol;
use crate::quat::{QuatSeq, Unit4};

const P: u64 = 61;
const LEN: usize = 30;

fn chi(x: u64) -> Unit4 {
    match legendre_symbol(x as i128, P).expect("61 is an odd prime") {
        1 => Unit4::ONE,
        -1 => Unit4::MINUS_ONE,
        _ => unreachable!("argument is a unit mod 61"),
    }
}

/// `A_j = chi(2 * 4^j - 1)`, `B_0 = i`, `B_j = chi(4^j - 1)` for `j >= 1`,
/// with `chi` the quadratic character mod 61.
pub fn jp30_pair() -> (QuatSeq, QuatSeq) {
    let mut a = Vec::with_capacity(LEN);
    let mut b = Vec::with_capacity(LEN);
    let mut pow = 1u64;
    for j in 0..LEN {
        a.push(chi((2 * pow + P - 1) % P));
        b.push(if j == 0 { Unit4::I } else { chi((pow + P - 1) % P) });
        pow = pow * 4 % P;
    }
    (QuatSeq::new(a).expect("nonempty"), QuatSeq::new(b).expect("nonempty"))
}
