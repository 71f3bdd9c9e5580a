//! Brute-force reference implementations used to cross-check the library.
//! Everything here works on plain u64 residues and shares no code with the
//! finite ring module.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};
use sepcert_core::{Matrix, NumberField, Rational, SeparationCertificate};

pub fn mod_u64(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().unwrap()
}

pub fn inv_mod(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(q as i128) as u64)
}

pub fn rational_mod(r: &Rational, q: u64) -> Option<u64> {
    let d = inv_mod(mod_u64(r.denom(), q), q)?;
    Some(((mod_u64(r.numer(), q) as u128 * d as u128) % q as u128) as u64)
}

/// Remainder of a modulo the monic g, coefficients mod q.
pub fn poly_rem(a: &[u64], g: &[u64], q: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut a: Vec<u64> = a.iter().map(|c| c % q).collect();
    while a.len() > dg {
        let lead = a.pop().unwrap();
        let shift = a.len() - dg;
        for (i, &c) in g[..dg].iter().enumerate() {
            let sub = (lead as u128 * c as u128 % q as u128) as u64;
            a[shift + i] = (a[shift + i] + q - sub) % q;
        }
    }
    a.resize(dg, 0);
    a
}

pub fn poly_mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % q as u128) as u64;
        }
    }
    out
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// ℤ[x]/(g, q) with elements stored as residue vectors of length deg g.
#[derive(Clone, Debug)]
pub struct Ring {
    pub q: u64,
    pub g: Vec<u64>,
}

impl Ring {
    pub fn deg(&self) -> usize {
        self.g.len() - 1
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        poly_rem(&poly_mul(a, b, self.q), &self.g, self.q)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.q).collect()
    }

    pub fn element(&self, coords: &[Rational]) -> Option<Vec<u64>> {
        let c = coords.iter().map(|r| rational_mod(r, self.q)).collect::<Option<Vec<_>>>()?;
        Some(poly_rem(&c, &self.g, self.q))
    }

    /// Row-major reduction of a matrix, one residue vector per entry.
    pub fn matrix(&self, m: &Matrix) -> Option<Vec<Vec<u64>>> {
        m.rows().iter().flatten().map(|e| self.element(e.coords())).collect()
    }

    pub fn mat_mul(&self, a: &[Vec<u64>], b: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.deg()]; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = vec![0; self.deg()];
                for k in 0..n {
                    acc = self.add(&acc, &self.mul(&a[i * n + k], &b[k * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
        out
    }

    pub fn identity(&self, n: usize) -> Vec<Vec<u64>> {
        let mut one = vec![0; self.deg()];
        one[0] = 1 % self.q;
        (0..n * n).map(|i| if i % (n + 1) == 0 { one.clone() } else { vec![0; self.deg()] }).collect()
    }
}

/// Whether g divides the minimal polynomial of k modulo q.
pub fn divides_min_poly(k: &NumberField, q: u64, g: &[u64]) -> bool {
    if g.last() != Some(&1) {
        return false;
    }
    let f: Vec<u64> = k.minimal_poly().coeffs().iter().map(|c| mod_u64(c, q)).collect();
    poly_rem(&f, g, q).iter().all(|&c| c == 0)
}

type Tuple = Vec<Vec<Vec<u64>>>;

/// Breadth-first closure of tuples of matrices.
pub fn closure(rings: &[Ring], n: usize, gens: &[Tuple], cap: usize) -> Option<HashSet<Tuple>> {
    let id: Tuple = rings.iter().map(|r| r.identity(n)).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Tuple = rings.iter().enumerate().map(|(i, r)| r.mat_mul(&x[i], &g[i], n)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// Outcome of re-deriving a certificate's claim from scratch.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub separated: bool,
    pub closure_order: usize,
}

/// Recomputes φ on the subgroup and the target from the certificate's
/// moduli, polynomials and conjugator, then searches the closure.
pub fn check_separation(
    cert: &SeparationCertificate,
    subgroup: &[Matrix],
    h: &Matrix,
    cap: usize,
) -> Result<OracleCheck, String> {
    let k = h.field();
    let rings: Vec<Ring> = cert.components.iter().map(|c| Ring { q: c.modulus, g: c.poly.clone() }).collect();
    for r in &rings {
        if !divides_min_poly(k, r.q, &r.g) {
            return Err(format!("{:?} does not divide the minimal polynomial mod {}", r.g, r.q));
        }
    }
    let p = &cert.conjugator;
    let p_inv = p.inverse().map_err(|e| e.to_string())?;
    let image = |m: &Matrix| -> Result<Tuple, String> {
        let c = p_inv.mul(m).mul(p);
        rings.iter().map(|r| r.matrix(&c).ok_or_else(|| format!("denominator not invertible mod {}", r.q))).collect()
    };
    let gens = subgroup.iter().map(&image).collect::<Result<Vec<_>, _>>()?;
    let target = image(h)?;
    let n = h.n();
    let set = closure(&rings, n, &gens, cap).ok_or("closure cap exceeded")?;
    Ok(OracleCheck { separated: !set.contains(&target), closure_order: set.len() })
}

pub fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().abs())
}
