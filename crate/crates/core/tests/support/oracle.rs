//! Arbitrary-precision power series for J0 and J1.
//!
//! Works in binary fixed point with `PRECISION_BITS` fractional bits on
//! big integers. The argument (an `f64`) is converted exactly, so the only
//! error is truncation in the divisions, far below double precision.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const PRECISION_BITS: u32 = 640;

fn exact_parts(t: f64) -> (BigInt, i32) {
    // t = mantissa * 2^exponent exactly.
    let bits = t.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exponent) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    let m = BigInt::from(mantissa);
    (if t < 0.0 { -m } else { m }, exponent)
}

fn shift(value: BigInt, by: i64) -> BigInt {
    if by >= 0 {
        value << (by as usize)
    } else {
        value >> ((-by) as usize)
    }
}

fn to_f64(value: &BigInt) -> f64 {
    // Keep 80 significant bits before the float conversion.
    let bits = value.bits() as i64;
    let drop = (bits - 80).max(0);
    let head = shift(value.clone(), -drop).to_f64().unwrap();
    head * 2f64.powi((drop - PRECISION_BITS as i64) as i32)
}

fn series(t: f64, order: u32) -> f64 {
    let p = PRECISION_BITS as i64;
    let (m, e) = exact_parts(t.abs());
    // q = t^2 / 4 in fixed point.
    let q = shift(&m * &m, 2 * e as i64 - 2 + p);
    let mut term = match order {
        0 => BigInt::from(1) << PRECISION_BITS,
        _ => shift(m.clone(), e as i64 - 1 + p),
    };
    let mut sum = term.clone();
    let t2 = t * t / 4.0;
    let mut k: u64 = 1;
    loop {
        let denom = BigInt::from(k) * BigInt::from(k + order as u64);
        term = -((&term * &q) >> PRECISION_BITS) / denom;
        sum += &term;
        if term.is_zero() || ((k * k) as f64 > t2 && term.abs().bits() < 8) {
            break;
        }
        k += 1;
    }
    let v = to_f64(&sum);
    if order == 1 && t < 0.0 {
        -v
    } else {
        v
    }
}

pub fn j0(t: f64) -> f64 {
    series(t, 0)
}

pub fn j1(t: f64) -> f64 {
    series(t, 1)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod self_check {
    #[test]
    fn oracle_matches_known_values() {
        assert!((super::j0(5.0) + 0.177596771314338304).abs() < 1e-17);
        assert!((super::j1(100.0) + 0.077145352014112158).abs() < 1e-17);
        assert_eq!(super::j0(0.0), 1.0);
    }
}
