//! Dense integer polynomials, coefficients stored low degree first.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntPoly = Vec<BigInt>;

pub fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn from_i64(cs: &[i64]) -> IntPoly {
    let mut p: IntPoly = cs.iter().map(|&c| BigInt::from(c)).collect();
    trim(&mut p);
    p
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[BigInt], s: &BigInt) -> IntPoly {
    let mut out: IntPoly = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

/// Division by a monic polynomial; returns (quotient, remainder).
pub fn divrem_monic(a: &[BigInt], f: &[BigInt]) -> (IntPoly, IntPoly) {
    debug_assert!(f.last().is_some_and(|c| c.is_one()));
    let d = f.len() - 1;
    let mut r: IntPoly = a.to_vec();
    trim(&mut r);
    if r.len() <= d {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - d];
    for i in (d..r.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            r[i - d + j] -= &c * &f[j];
        }
        q[i - d] = c;
    }
    r.truncate(d);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn reduce_monic(a: &[BigInt], f: &[BigInt]) -> IntPoly {
    divrem_monic(a, f).1
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The cyclotomic polynomial Φ_N, by exact division of z^N − 1 by Φ_d for proper divisors d.
pub fn cyclotomic(n: u64) -> IntPoly {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = divrem_monic(&num, &cyclotomic(d));
        debug_assert!(r.is_empty());
        num = q;
    }
    num
}

/// Minimal polynomial of 2cos(π/m) over Q (monic, integer coefficients).
pub fn minimal_poly(m: u32) -> Result<IntPoly> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("minimal_poly needs m >= 3, got {m}")));
    }
    let phi = cyclotomic(2 * m as u64);
    let deg = phi.len() - 1;
    let e = deg / 2;
    // z^{-e} Φ(z) = c_e + Σ_k c_{e+k} (z^k + z^{-k}); z^k + z^{-k} = D_k(y).
    let mut dk: Vec<IntPoly> = vec![from_i64(&[2]), from_i64(&[0, 1])];
    let y = from_i64(&[0, 1]);
    while dk.len() <= e {
        let k = dk.len();
        let next = sub(&mul(&y, &dk[k - 1]), &dk[k - 2]);
        dk.push(next);
    }
    let mut out = vec![phi[e].clone()];
    trim(&mut out);
    for k in 1..=e {
        out = add(&out, &scale(&dk[k], &phi[e + k]));
    }
    Ok(out)
}

/// V_k(x) = U_k(x/2): V₀ = 1, V₁ = x, V_{k+1} = x V_k − V_{k−1}.
pub fn chebyshev_v(k: usize) -> IntPoly {
    let x = from_i64(&[0, 1]);
    let mut prev = from_i64(&[1]);
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = sub(&mul(&x, &cur), &prev);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn content(p: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(10), from_i64(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic(12), from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn minimal_polys() {
        assert_eq!(minimal_poly(3).unwrap(), from_i64(&[-1, 1]));
        assert_eq!(minimal_poly(4).unwrap(), from_i64(&[-2, 0, 1]));
        assert_eq!(minimal_poly(5).unwrap(), from_i64(&[-1, -1, 1]));
        assert_eq!(minimal_poly(6).unwrap(), from_i64(&[-3, 0, 1]));
        assert_eq!(minimal_poly(7).unwrap(), from_i64(&[1, -2, -1, 1]));
        assert!(minimal_poly(2).is_err());
    }

    #[test]
    fn minimal_poly_vanishes_numerically() {
        for m in 3..40u32 {
            let f = minimal_poly(m).unwrap();
            let totient = (1..=2 * m).filter(|k| num_integer::gcd(*k, 2 * m) == 1).count();
            assert_eq!(f.len() - 1, totient / 2, "degree for m={m}");
            let x = 2.0 * (std::f64::consts::PI / m as f64).cos();
            let v: f64 = f.iter().rev().fold(0.0, |acc, c| {
                acc * x + num_traits::ToPrimitive::to_f64(c).unwrap()
            });
            let scale: f64 = f
                .iter()
                .enumerate()
                .map(|(i, c)| num_traits::ToPrimitive::to_f64(&c.abs()).unwrap() * x.powi(i as i32))
                .sum();
            assert!(v.abs() < 1e-9 * scale, "m={m} residual {v}");
        }
    }

    #[test]
    fn chebyshev_recurrence() {
        assert_eq!(chebyshev_v(2), from_i64(&[-1, 0, 1]));
        assert_eq!(chebyshev_v(3), from_i64(&[0, -2, 0, 1]));
    }
}
