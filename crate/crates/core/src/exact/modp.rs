//! Rank modulo the Mersenne prime 2^61 − 1.
//!
//! Used only as a screen: reduction mod p can only lose rank, so a full
//! modular rank proves full rational rank, while a deficient modular rank
//! must be confirmed exactly before it is trusted.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{MatrixQ, Q};

pub const P: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_i64(x: i64) -> u64 {
    let r = x.rem_euclid(P as i64);
    r as u64
}

fn reduce_int(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let mut r = x % &p;
    if r < BigInt::zero() {
        r += &p;
    }
    r.to_u64().expect("reduced below P")
}

/// Image of a rational, `None` when p divides the denominator.
pub fn reduce(x: &Q) -> Option<u64> {
    let d = reduce_int(x.denom());
    (d != 0).then(|| mul(reduce_int(x.numer()), inv(d)))
}

/// Rank of a row-major matrix over F_p; the input is consumed.
pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let iv = inv(m[r][c]);
        for i in r + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let f = mul(m[i][c], iv);
            let (top, rest) = m.split_at_mut(i);
            for (x, &y) in rest[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                *x = sub(*x, mul(f, y));
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Reduction of a rational matrix, `None` if some denominator vanishes.
pub fn reduce_matrix(m: &MatrixQ) -> Option<Vec<Vec<u64>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| reduce(&m[(i, j)])).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qr;

    #[test]
    fn arithmetic() {
        assert_eq!(mul(inv(7), 7), 1);
        assert_eq!(add(P - 1, 1), 0);
        assert_eq!(sub(0, 1), P - 1);
        let half = reduce(&qr(1, 2)).unwrap();
        assert_eq!(mul(half, 2), 1);
    }

    #[test]
    fn rank_matches_exact() {
        let m = MatrixQ::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(reduce_matrix(&m).unwrap()), m.rank());
    }
}
