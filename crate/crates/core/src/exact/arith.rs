//! Integer and rational helpers: primality, factorization, modular inverses,
//! and the textual rational format used by the file schemas.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Integer, Rational};
use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first thirteen prime bases; deterministic below 3.3e24
/// and overwhelmingly reliable above.
pub fn is_prime(n: &Integer) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in SMALL_PRIMES.iter() {
        let bp = BigInt::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in SMALL_PRIMES.iter() {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigInt::from(n))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

fn pollard_rho(n: &Integer) -> Integer {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of |n| as ascending (prime, exponent) pairs; empty for ±1.
pub fn factor_integer(n: &Integer) -> Vec<(Integer, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut out: Vec<(Integer, u32)> = Vec::new();
    let mut p = 2u64;
    while p < 10_000 && m > BigInt::one() {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    let mut big: Vec<Integer> = Vec::new();
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if is_prime(&x) {
            big.push(x);
            continue;
        }
        let d = pollard_rho(&x);
        stack.push(&x / &d);
        stack.push(d);
    }
    for q in big {
        match out.iter_mut().find(|(p, _)| p == &q) {
            Some(entry) => entry.1 += 1,
            None => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Integer, p: &Integer) -> u32 {
    assert!(!n.is_zero());
    let mut m = n.clone();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo `m`, if it exists; result in [0, m).
pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Reduction of a rational with denominator coprime to `q` into [0, q).
pub fn rational_mod(r: &Rational, q: u64) -> Option<u64> {
    let m = BigInt::from(q);
    let inv = mod_inverse(r.denom(), &m)?;
    Some((r.numer() * inv).mod_floor(&m).to_u64().expect("residue fits"))
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a Integer>>(it: I) -> Integer {
    it.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

/// Parses "p/q", "p", or "-p/q" into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Euler's totient of a small integer.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_and_primes() {
        let f = factor_integer(&BigInt::from(360));
        let expect: Vec<(BigInt, u32)> =
            vec![(2.into(), 3), (3.into(), 2), (5.into(), 1)];
        assert_eq!(f, expect);
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_prime(&BigInt::from(561)));
        let big = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let f = factor_integer(&big);
        assert_eq!(f.len(), 2);
        assert!(factor_integer(&BigInt::from(-1)).is_empty());
    }

    #[test]
    fn modular_inverse_of_two_mod_five() {
        assert_eq!(mod_inverse(&2.into(), &5.into()), Some(3.into()));
        assert_eq!(rational_mod(&Rational::new(1.into(), 2.into()), 5), Some(3));
        assert_eq!(rational_mod(&Rational::new(1.into(), 2.into()), 4), None);
    }

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert_eq!(euler_phi(12), 4);
    }
}
