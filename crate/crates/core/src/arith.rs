//! Integer utilities: extended Euclid, n-ary Bezout vectors, totients,
//! factorization, and a deterministic primality test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("bezout_vector requires a nonzero vector")]
    ZeroVector,
    #[error("primality candidate {0} exceeds the deterministic test bound")]
    PrimalityRange(BigInt),
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        if a.is_negative() {
            return (-a, BigInt::from(-1), BigInt::zero());
        }
        return (a.clone(), BigInt::one(), BigInt::zero());
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Nonnegative gcd of a slice; zero for the empty slice.
pub fn gcd_slice(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// n-ary Bezout: returns `b` with `a . b = gcd(a)`. Errors on the zero vector.
pub fn bezout_vector(a: &[BigInt]) -> Result<Vec<BigInt>, ArithError> {
    if a.iter().all(|x| x.is_zero()) {
        return Err(ArithError::ZeroVector);
    }
    let mut coeffs = vec![BigInt::zero(); a.len()];
    let mut g = a[0].clone();
    if g.is_negative() {
        coeffs[0] = BigInt::from(-1);
        g = -g;
    } else {
        coeffs[0] = BigInt::one();
    }
    for i in 1..a.len() {
        let (g2, x, y) = ext_gcd(&g, &a[i]);
        for c in coeffs.iter_mut().take(i) {
            *c *= &x;
        }
        coeffs[i] = y;
        g = g2;
    }
    Ok(coeffs)
}

/// Rounded division: quotient `q` minimizing `|n - q*d|`, ties toward zero
/// remainder magnitude either way. Requires `d != 0`.
pub fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    assert!(!d.is_zero(), "division by zero");
    let (mut q, r) = n.div_rem(d);
    if (&r * 2u8).magnitude() > d.magnitude() {
        if (r.is_negative()) == (d.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Inverse of `a` modulo `m > 0`, in `{0, ..., m-1}`; `None` when not coprime.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(a, m);
    if !g.is_one() {
        return None;
    }
    Some(x.mod_floor(m))
}

pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    mod_inverse(&BigInt::from(a), &BigInt::from(m))
        .map(|v| u64::try_from(&v).expect("inverse fits"))
}

/// Prime factorization of `n >= 1` by trial division, as `(prime, exponent)`
/// pairs in increasing order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().map(|(p, e)| (p - 1) * p.pow(e - 1)).product()
}

/// Units modulo `k`, in increasing order.
pub fn units_mod(k: u64) -> Vec<u64> {
    (1..k).filter(|&u| gcd_u64(u, k) == 1).collect()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Deterministic primality for the witness search. Uses trial division for
/// small inputs and Miller-Rabin with the 12-base set proven complete below
/// 3.3 * 10^24; larger candidates are rejected as out of range rather than
/// answered probabilistically.
pub fn is_prime(n: &BigInt) -> Result<bool, ArithError> {
    if n < &BigInt::from(2) {
        return Ok(false);
    }
    if let Ok(small) = u64::try_from(n) {
        if small < 1 << 20 {
            return Ok(is_prime_trial(small));
        }
    }
    let bound = BigInt::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    if n >= &bound {
        return Err(ArithError::PrimalityRange(n.clone()));
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let one = BigInt::one();
    let two = BigInt::from(2);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in &BASES {
        let b = BigInt::from(b);
        if &b >= n {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ext_gcd_basic() {
        let (g, x, y) = ext_gcd(&b(3), &b(5));
        assert_eq!(g, b(1));
        assert_eq!(b(3) * x + b(5) * y, b(1));
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_vector(&[b(1), b(0), b(0), b(0)]).unwrap(), vec![b(1), b(0), b(0), b(0)]);
        assert_eq!(bezout_vector(&[b(3), b(5)]).unwrap(), vec![b(2), b(-1)]);
        assert_eq!(bezout_vector(&[b(4), b(6)]).unwrap(), vec![b(-1), b(1)]);
        assert!(bezout_vector(&[b(0), b(0)]).is_err());
    }

    #[test]
    fn bezout_resubstitution() {
        let cases: Vec<Vec<BigInt>> = vec![
            vec![b(12), b(18), b(-30)],
            vec![b(0), b(7), b(0), b(21)],
            vec![b(-5), b(3)],
            vec![b(100), b(331), b(7), b(0)],
        ];
        for a in cases {
            let bz = bezout_vector(&a).unwrap();
            let dot: BigInt = a.iter().zip(&bz).map(|(x, y)| x * y).sum();
            assert_eq!(dot, gcd_slice(&a));
        }
    }

    #[test]
    fn rounding_division() {
        for (n, d) in [(7, 2), (-7, 2), (7, -2), (-7, -2), (9, 3), (10, 7), (1, 5)] {
            let q = div_round(&b(n), &b(d));
            let r = b(n) - &q * b(d);
            assert!((&r * 2u8).magnitude() <= b(d).magnitude(), "n={n} d={d} q={q} r={r}");
        }
        assert_eq!(div_round(&b(9), &b(3)), b(3));
    }

    #[test]
    fn totients_and_units() {
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(units_mod(6), vec![1, 5]);
        assert_eq!(units_mod(5), vec![1, 2, 3, 4]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&b(2)).unwrap());
        assert!(is_prime(&b(97)).unwrap());
        assert!(!is_prime(&b(1)).unwrap());
        assert!(!is_prime(&b(1_000_003 * 2)).unwrap());
        assert!(is_prime(&b(1_000_003)).unwrap());
        // Above the trial range, the Miller-Rabin set kicks in.
        assert!(is_prime(&BigInt::from(2_147_483_647u64)).unwrap());
        assert!(!is_prime(&BigInt::from(2_147_483_649u64)).unwrap());
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse_u64(3, 5), Some(2));
        assert_eq!(mod_inverse_u64(2, 4), None);
        assert_eq!(mod_inverse_u64(12, 5), Some(3));
    }
}
