//! Polynomial factorization over prime fields (square-free decomposition,
//! distinct-degree and equal-degree splitting) and over the rationals
//! (Zassenhaus: modular factorization, quadratic Hensel lifting, and
//! exhaustive recombination).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::is_prime;
use super::poly::{IntPoly, QPoly};
use super::{Integer, Rational};
use crate::error::{Error, Result};

/// Fixed seed for equal-degree splitting, so factorizations are reproducible.
const SPLIT_SEED: u64 = 0x5eed_cafe;

/// Polynomial over ℤ/p, ascending coefficients in [0, p), trimmed.
pub type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

pub(crate) fn fp_add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub(crate) fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub(crate) fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(c)
}

fn fp_scale(a: &[u64], s: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&x| mulmod(x, s, p)).collect())
}

pub(crate) fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => fp_scale(a, inv_mod(l, p), p),
    }
}

pub(crate) fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let li = inv_mod(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], li, p);
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulmod(c, bj, p)) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// (g, s, t) with s·a + t·b = g monic.
fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let li = inv_mod(*r0.last().unwrap(), p);
    (fp_scale(&r0, li, p), fp_scale(&s0, li, p), fp_scale(&t0, li, p))
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn fp_powmod(base: &[u64], e: &BigInt, m: &[u64], p: u64) -> FpPoly {
    let mut result = fp_divrem(&[1], m, p).1;
    let mut b = fp_divrem(base, m, p).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            result = fp_divrem(&fp_mul(&result, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
    }
    result
}

fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

fn degree(a: &[u64]) -> usize {
    a.len().saturating_sub(1)
}

/// Square-free decomposition of a monic polynomial over ℤ/p.
fn fp_squarefree(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    if degree(f) == 0 {
        return out;
    }
    let df = fp_derivative(f, p);
    let mut c = fp_gcd(f, &df, p);
    let mut w = fp_divrem(f, &c, p).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = fp_gcd(&w, &c, p);
        let z = fp_divrem(&w, &y, p).0;
        if degree(&z) > 0 {
            out.push((fp_monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = fp_divrem(&c, &w, p).0;
    }
    if degree(&c) > 0 {
        // c is a p-th power: take the p-th root coefficientwise.
        let root: FpPoly = c.iter().step_by(p as usize).copied().collect();
        for (g, m) in fp_squarefree(&fp_monic(&root, p), p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
fn fp_ddf(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = fp_divrem(&x, &rest, p).1;
    let mut d = 1;
    while degree(&rest) >= 2 * d {
        h = fp_powmod(&h, &BigInt::from(p), &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if !is_one(&g) {
            out.push((g.clone(), d));
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if degree(&rest) > 0 {
        let dr = degree(&rest);
        out.push((fp_monic(&rest, p), dr));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a product of distinct
/// irreducibles of degree `d`.
fn fp_edf(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    if degree(g) == d {
        return vec![fp_monic(g, p)];
    }
    let n = degree(g);
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a² + … + a^(2^(d−1)).
            let mut acc = fp_divrem(&a, g, p).1;
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = fp_divrem(&fp_mul(&cur, &cur, p), g, p).1;
                acc = fp_add(&acc, &cur, p);
            }
            acc
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
            fp_sub(&fp_powmod(&a, &e, g, p), &[1], p)
        };
        let h = fp_gcd(&b, g, p);
        if degree(&h) > 0 && degree(&h) < n {
            let other = fp_divrem(g, &h, p).0;
            let mut out = fp_edf(&h, d, p, rng);
            out.extend(fp_edf(&other, d, p, rng));
            return out;
        }
    }
}

/// Full factorization of a monic polynomial over ℤ/p, sorted by degree then
/// by coefficient sequence.
pub(crate) fn fp_factor(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (sq, mult) in fp_squarefree(f, p) {
        for (g, d) in fp_ddf(&sq, p) {
            for h in fp_edf(&g, d, p, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    out
}

pub(crate) fn reduce_mod_p(f: &[Integer], p: u64) -> FpPoly {
    let bp = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect())
}

/// Factorization of f over the field with p elements: monic irreducible
/// factors with multiplicities; f equals their product up to a unit.
pub fn factor_mod_p(f: &IntPoly, p: &Integer) -> Result<Vec<(FpPoly, usize)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let p = p
        .to_u64()
        .filter(|&x| x < (1u64 << 32))
        .ok_or_else(|| Error::InvalidInput("prime too large for modular factorization".into()))?;
    let fbar = reduce_mod_p(f.coeffs(), p);
    if fbar.is_empty() {
        return Err(Error::InvalidInput(format!("polynomial vanishes mod {p}")));
    }
    Ok(fp_factor(&fp_monic(&fbar, p), p))
}

// ---------------------------------------------------------------------------
// Arithmetic in (ℤ/M)[x] with big moduli, for Hensel lifting.

type ZPoly = Vec<Integer>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmod(a: &[Integer], m: &Integer) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zadd(a: &[Integer], b: &[Integer], m: &Integer) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zsub(a: &[Integer], b: &[Integer], m: &Integer) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zmod(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn zmul(a: &[Integer], b: &[Integer], m: &Integer) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    zmod(&c, m)
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[Integer], b: &[Integer], m: &Integer) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (ztrim(q), ztrim(r))
}

fn to_z(a: &[u64]) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// One quadratic Hensel step from modulus m to m².
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &[Integer],
    g: &[Integer],
    h: &[Integer],
    s: &[Integer],
    t: &[Integer],
    m2: &Integer,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zsub(f, &zmul(g, h, m2), m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e, m2), h, m2);
    let g2 = zadd(&zadd(g, &zmul(t, &e, m2), m2), &zmul(&q, g, m2), m2);
    let h2 = zadd(h, &r, m2);
    let b = zsub(&zadd(&zmul(s, &g2, m2), &zmul(t, &h2, m2), m2), &[BigInt::one()], m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b, m2), &h2, m2);
    let s2 = zsub(s, &d, m2);
    let t2 = zsub(&zsub(t, &zmul(t, &b, m2), m2), &zmul(&c, &g2, m2), m2);
    (g2, h2, s2, t2)
}

/// Lifts f ≡ lc(f)·∏ factors (mod p) to modulus p^(2^rounds). Returns the
/// monic lifted factors.
fn hensel_lift(f: &[Integer], factors: &[FpPoly], p: u64, rounds: u32) -> Vec<ZPoly> {
    let bp = BigInt::from(p);
    let big_m = bp.pow(1u32 << rounds);
    let mut target = zmod(f, &big_m);
    let mut out = Vec::new();
    for (i, fac) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            let lc = target.last().unwrap().clone();
            let inv = super::arith::mod_inverse(&lc, &big_m).expect("unit leading coefficient");
            out.push(zmod(&target.iter().map(|c| c * &inv).collect::<Vec<_>>(), &big_m));
            break;
        }
        let lcp = target.last().unwrap().mod_floor(&bp).to_u64().unwrap();
        let g0 = fp_scale(fac, lcp, p);
        let h0 = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
        let (_, s0, t0) = fp_ext_gcd(&g0, &h0, p);
        let (mut g, mut h, mut s, mut t) = (to_z(&g0), to_z(&h0), to_z(&s0), to_z(&t0));
        let mut m = bp.clone();
        for _ in 0..rounds {
            let m2 = &m * &m;
            let tm = zmod(&target, &m2);
            let r = hensel_step(&tm, &g, &h, &s, &t, &m2);
            g = r.0;
            h = r.1;
            s = r.2;
            t = r.3;
            m = m2;
        }
        let lc = g.last().unwrap().clone();
        let inv = super::arith::mod_inverse(&lc, &big_m).expect("unit leading coefficient");
        out.push(zmod(&g.iter().map(|c| c * &inv).collect::<Vec<_>>(), &big_m));
        target = h;
    }
    out
}

fn symmetric(a: &[Integer], m: &Integer) -> ZPoly {
    let half = m / 2u32;
    ztrim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn primitive(a: &[Integer]) -> ZPoly {
    let content = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|c| c / &content * &sign).collect()
}

/// Exact division over ℤ, if the quotient is integral with zero remainder.
fn exact_divide(a: &[Integer], b: &[Integer]) -> Option<ZPoly> {
    let (q, r) = QPoly::from_ints(a).divrem(&QPoly::from_ints(b));
    if !r.is_zero() {
        return None;
    }
    q.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors over ℤ of a primitive square-free polynomial.
fn zassenhaus(f: &[Integer]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![primitive(f)];
    }
    let lc = f.last().unwrap().clone();
    let mut p = 3u64;
    let fbar = loop {
        if !(lc.clone() % p).is_zero() {
            let fb = reduce_mod_p(f, p);
            let fm = fp_monic(&fb, p);
            if degree(&fp_gcd(&fm, &fp_derivative(&fm, p), p)) == 0 {
                break fm;
            }
        }
        p = super::arith::next_prime(p);
    };
    let modular: Vec<FpPoly> = fp_factor(&fbar, p).into_iter().map(|(g, _)| g).collect();
    if modular.len() == 1 {
        return vec![primitive(f)];
    }
    // Coefficient bound for factors of f, scaled by the leading coefficient.
    let norm1 = f.iter().fold(BigInt::zero(), |acc, c| acc + c.abs());
    let bound = (BigInt::one() << n) * norm1 * lc.abs() * 2u32 + 1u32;
    let bp = BigInt::from(p);
    let mut rounds = 0u32;
    while bp.pow(1u32 << rounds) <= bound {
        rounds += 1;
    }
    let m = bp.pow(1u32 << rounds);
    let mut lifted = hensel_lift(f, &modular, p, rounds);
    let mut rest: ZPoly = f.to_vec();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), s) {
            let lcr = rest.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lcr], |acc, &i| zmul(&acc, &lifted[i], &m));
            let cand = primitive(&symmetric(&prod, &m));
            if let Some(q) = exact_divide(&rest, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        found.push(primitive(&rest));
    }
    found
}

/// Factorization over ℚ into primitive irreducible integer polynomials with
/// multiplicities, sorted by degree then coefficients.
pub fn factor_over_q(f: &QPoly) -> Vec<(Vec<Integer>, usize)> {
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in zassenhaus(&part.primitive_part()) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    out
}

pub fn is_irreducible_over_q(f: &IntPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let fs = factor_over_q(&f.to_qpoly());
    fs.len() == 1 && fs[0].1 == 1
}

/// Rational roots by the rational root test (used as an independent check).
pub fn rational_roots(f: &IntPoly) -> Vec<Rational> {
    let c = f.coeffs();
    let mut roots = Vec::new();
    let q = f.to_qpoly();
    if c[0].is_zero() {
        roots.push(Rational::zero());
    }
    let low = c.iter().find(|x| !x.is_zero()).unwrap().abs();
    let lead = c.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut d = Vec::new();
        let mut i = BigInt::one();
        while &i * &i <= *n {
            if (n % &i).is_zero() {
                d.push(i.clone());
                d.push(n / &i);
            }
            i += 1u32;
        }
        d
    };
    for a in divisors(&low) {
        for b in divisors(&lead) {
            for s in [BigInt::one(), -BigInt::one()] {
                let r = Rational::new(&a * &s, b.clone());
                if !roots.contains(&r) && super::poly::Scalar::is_zero(&q.eval(&r)) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c).unwrap()
    }

    #[test]
    fn factor_mod_p_examples() {
        assert_eq!(
            factor_mod_p(&ip(&[1, 0, 1]), &5.into()).unwrap(),
            vec![(vec![2, 1], 1), (vec![3, 1], 1)]
        );
        assert_eq!(factor_mod_p(&ip(&[1, 0, 1]), &3.into()).unwrap(), vec![(vec![1, 0, 1], 1)]);
        assert_eq!(factor_mod_p(&ip(&[-1, 1]), &7.into()).unwrap(), vec![(vec![6, 1], 1)]);
        assert!(matches!(factor_mod_p(&ip(&[1, 1]), &9.into()), Err(Error::NotPrime(_))));
    }

    #[test]
    fn repeated_and_characteristic_powers() {
        // (x+1)^2 mod 2 and x^4 + 1 = (x+1)^4 mod 2
        assert_eq!(factor_mod_p(&ip(&[1, 0, 1]), &2.into()).unwrap(), vec![(vec![1, 1], 2)]);
        assert_eq!(factor_mod_p(&ip(&[1, 0, 0, 0, 1]), &2.into()).unwrap(), vec![(vec![1, 1], 4)]);
        // x^4+1 splits into two quadratics mod 3
        let f = factor_mod_p(&ip(&[1, 0, 0, 0, 1]), &3.into()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, m)| g.len() == 3 && *m == 1));
    }

    #[test]
    fn factorization_over_rationals() {
        // x^4 + 1 is irreducible over ℚ though reducible mod every prime.
        assert!(is_irreducible_over_q(&ip(&[1, 0, 0, 0, 1])));
        assert!(is_irreducible_over_q(&ip(&[-2, 0, 1])));
        assert!(!is_irreducible_over_q(&ip(&[-1, 0, 1])));
        // (x^2 - 2)(x^2 + x + 1)(2x - 3)
        let f = ip(&[-2, 0, 1]).to_qpoly().mul(&ip(&[1, 1, 1]).to_qpoly()).mul(&ip(&[-3, 2]).to_qpoly());
        let fs = factor_over_q(&f);
        let expect: Vec<(Vec<Integer>, usize)> = vec![
            (vec![(-3).into(), 2.into()], 1),
            (vec![(-2).into(), 0.into(), 1.into()], 1),
            (vec![1.into(), 1.into(), 1.into()], 1),
        ];
        assert_eq!(fs, expect);
        assert_eq!(rational_roots(&ip(&[-3, 2])), vec![Rational::new(3.into(), 2.into())]);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible; (x^2-2)(x^2-3) = x^4 - 5x^2 + 6 is not.
        assert!(is_irreducible_over_q(&ip(&[1, 0, -10, 0, 1])));
        assert_eq!(factor_over_q(&ip(&[6, 0, -5, 0, 1]).to_qpoly()).len(), 2);
    }
}
