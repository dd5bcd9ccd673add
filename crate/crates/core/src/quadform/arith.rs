//! Elementary number theory on `BigInt`: factorization, valuations, Legendre
//! symbols and squarefree parts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Factorization("0".into()));
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while m.is_multiple_of(&bp) {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let r = m.to_u64().ok_or_else(|| Error::Factorization(n.to_string()))?;
        let mut primes = Vec::new();
        factor_u64(r, &mut primes);
        primes.sort_unstable();
        for q in primes {
            match out.last_mut() {
                Some((last, e)) if *last == BigInt::from(q) => *e += 1,
                _ => out.push((BigInt::from(q), 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `(v_p(x), x / p^{v_p(x)})` for nonzero `x`.
pub fn valuation(x: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut u = x.clone();
    let mut k = 0;
    while !u.is_zero() && u.is_multiple_of(&bp) {
        u /= &bp;
        k += 1;
    }
    (k, u)
}

/// Legendre symbol `(a / p)` for an odd prime `p`; 0 when `p | a`.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Signed squarefree integer in the square class of `n`.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let mut s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor(n)? {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn factorization() {
        let f = factor(&BigInt::from(-3145728)).unwrap();
        assert_eq!(f, vec![(BigInt::from(2), 20), (BigInt::from(3), 1)]);
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let f = factor(&big).unwrap();
        assert_eq!(f.len(), 2);
        assert!(factor(&BigInt::zero()).is_err());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(-64)).unwrap(), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(1156)).unwrap(), BigInt::from(1));
        assert_eq!(squarefree_part(&BigInt::from(-12)).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(&BigInt::from(2), 7), 1);
        assert_eq!(legendre(&BigInt::from(3), 7), -1);
        assert_eq!(legendre(&BigInt::from(-1), 5), 1);
        assert_eq!(legendre(&BigInt::from(14), 7), 0);
    }
}
