//! Dense univariate polynomials over exact fields, plus the integer
//! polynomial type used for defining polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{Integer, Rational};
use crate::error::{Error, Result};

/// Arithmetic needed by [`Poly`]. Elements carry their own context (for a
/// number field, the field itself), so constants are produced from an
/// existing element.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Polynomial with ascending coefficients and no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The monic linear polynomial x - root.
    pub fn linear(root: &F) -> Self {
        Poly::new(vec![root.neg(), root.one_like()])
    }

    pub fn x(ctx: &F) -> Self {
        Poly::new(vec![ctx.zero_like(), ctx.one_like()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut c = long.coeffs.clone();
        for (i, s) in short.coeffs.iter().enumerate() {
            c[i] = c[i].add(s);
        }
        Poly::new(c)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(Scalar::neg).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut c = vec![z; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, s: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let z = lead_inv.zero_like();
        let mut quot = vec![z; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·other = g, g monic.
    pub fn ext_gcd(&self, other: &Self, ctx: &F) -> (Self, Self, Self) {
        let one = Poly::constant(ctx.one_like());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = l.inv();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&c.from_int_like(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitution x ↦ x + shift.
    pub fn shift(&self, shift: &F) -> Self {
        let lin = Poly::new(vec![shift.clone(), shift.one_like()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = match self.coeffs.first() {
            Some(c) => Poly::constant(c.one_like()),
            None => return Poly::zero(),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square-free decomposition (characteristic zero): pairs (a_i, i) with
    /// self = lead · ∏ a_i^i, each a_i monic square-free and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.divrem(&a).0;
        let mut c = df.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let ai = b.gcd(&d);
            b = b.divrem(&ai).0;
            c = d.divrem(&ai).0;
            if ai.degree().unwrap_or(0) > 0 {
                out.push((ai, i));
            }
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

pub type QPoly = Poly<Rational>;

impl QPoly {
    /// Clears denominators and content, giving a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn primitive_part(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    pub fn from_ints(c: &[Integer]) -> Self {
        Poly::new(c.iter().cloned().map(Rational::from_integer).collect())
    }
}

/// Nonzero integer polynomial, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl TryFrom<Vec<Integer>> for IntPoly {
    type Error = Error;
    fn try_from(v: Vec<Integer>) -> Result<Self> {
        IntPoly::new(v)
    }
}

impl From<IntPoly> for Vec<Integer> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().unwrap().is_one()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_ints(&self.coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let t = if i > 0 && c.is_one() {
                mono
            } else if i > 0 && *c == -BigInt::one() {
                format!("-{mono}")
            } else {
                format!("{c}{mono}")
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = q(&[-1, 0, 1]);
        let b = q(&[1, 1]);
        let (quo, rem) = a.divrem(&b);
        assert_eq!(quo, q(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&q(&[-1, 1])), q(&[-1, 1]));
        let (g, s, t) = q(&[1, 0, 1]).ext_gcd(&q(&[0, 1]), &Rational::one());
        assert_eq!(g, q(&[1]));
        assert_eq!(s.mul(&q(&[1, 0, 1])).add(&t.mul(&q(&[0, 1]))), q(&[1]));
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x+2)
        let f = q(&[-1, 1]).pow(2).mul(&q(&[2, 1]));
        let sf = f.squarefree_decomposition();
        assert_eq!(sf, vec![(q(&[2, 1]), 1), (q(&[-1, 1]), 2)]);
    }

    #[test]
    fn shift_and_display() {
        assert_eq!(q(&[0, 0, 1]).shift(&Rational::one()), q(&[1, 2, 1]));
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).unwrap().to_string(), "x^2 + 1");
        assert!(IntPoly::from_i64(&[0, 0]).is_err());
        assert_eq!(q(&[2, 4]).primitive_part(), vec![BigInt::from(1), BigInt::from(2)]);
    }
}
