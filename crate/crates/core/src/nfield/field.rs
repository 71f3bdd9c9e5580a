use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::arith::{euler_phi, format_rational, lcm_all};
use crate::exact::factor::is_irreducible_over_q;
use crate::exact::{IntPoly, Integer, QPoly, Rational};

#[derive(Debug)]
struct FieldData {
    poly: IntPoly,
    degree: usize,
    /// Coordinates of α^(n+k) for k = 0..n−1, used to reduce products.
    reduction: Vec<Vec<Rational>>,
}

/// K = ℚ[x]/(f) for a monic irreducible integer polynomial f. The rationals
/// are represented with f = x.
#[derive(Clone, Debug)]
pub struct NumberField {
    data: Arc<FieldData>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.poly == other.data.poly
    }
}

impl Eq for NumberField {}

impl Hash for NumberField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.poly.hash(state);
    }
}

impl NumberField {
    pub fn new(minimal_poly: IntPoly) -> Result<Self> {
        if !minimal_poly.is_monic() {
            return Err(Error::InvalidInput(format!("{minimal_poly} is not monic")));
        }
        if minimal_poly.degree() == 0 {
            return Err(Error::InvalidInput("constant minimal polynomial".into()));
        }
        if !is_irreducible_over_q(&minimal_poly) {
            return Err(Error::Reducible(minimal_poly.to_string()));
        }
        Ok(Self::new_unchecked(minimal_poly))
    }

    fn new_unchecked(poly: IntPoly) -> Self {
        let n = poly.degree();
        let f: Vec<Rational> = poly.coeffs().iter().cloned().map(Rational::from_integer).collect();
        // α^n = −Σ f_i α^i, then multiply by α repeatedly.
        let mut cur: Vec<Rational> = f[..n].iter().map(|c| -c).collect();
        let mut reduction = Vec::with_capacity(n);
        for _ in 0..n {
            reduction.push(cur.clone());
            let top = cur[n - 1].clone();
            let mut next = vec![Rational::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..n {
                next[i] -= &top * &f[i];
            }
            cur = next;
        }
        NumberField { data: Arc::new(FieldData { poly, degree: n, reduction }) }
    }

    pub fn rationals() -> Self {
        Self::new_unchecked(IntPoly::from_i64(&[0, 1]).unwrap())
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn minimal_poly(&self) -> &IntPoly {
        &self.data.poly
    }

    pub fn is_rationals(&self) -> bool {
        self.data.degree == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![Rational::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = r;
        e
    }

    /// The distinguished root α (for ℚ, the root of x, i.e. 0).
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_rational(-Rational::from_integer(self.data.poly.coeffs()[0].clone()));
        }
        let mut e = self.zero();
        e.coords[1] = Rational::one();
        e
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement> {
        if coords.len() > self.degree() || coords.is_empty() {
            return Err(Error::InvalidInput(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.degree()
            )));
        }
        let mut c = coords;
        c.resize(self.degree(), Rational::zero());
        Ok(FieldElement { field: self.clone(), coords: c })
    }

    /// Discriminant of the minimal polynomial: (−1)^(n(n−1)/2)·N(f′(α)).
    pub fn discriminant(&self) -> Integer {
        let n = self.degree();
        if n == 1 {
            return BigInt::one();
        }
        let df = self.data.poly.to_qpoly().derivative();
        let e = self.from_qpoly(&df);
        let norm = e.norm();
        debug_assert!(norm.is_integer());
        let d = norm.to_integer();
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// Image of a rational polynomial under x ↦ α.
    pub fn from_qpoly(&self, p: &QPoly) -> FieldElement {
        let alpha = self.generator();
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &alpha) + &self.from_rational(c.clone());
        }
        acc
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.data.poly)
    }
}

/// Σ coords[i]·αⁱ in a number field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> Integer {
        lcm_all(self.coords.iter().map(|c| c.denom()))
    }

    fn check_field(&self, other: &Self) {
        assert!(self.field == other.field, "mixing elements of different fields");
    }

    /// Matrix of multiplication by self in the power basis; column j holds
    /// the coordinates of self·α^j.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.field.degree();
        let alpha = self.field.generator();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = &cur * &alpha;
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self) -> Rational {
        if self.field.degree() == 1 {
            return self.coords[0].clone();
        }
        rational_det(self.multiplication_matrix())
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero field element".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.recip()));
        }
        let a = QPoly::new(self.coords.clone());
        let f = self.field.minimal_poly().to_qpoly();
        let (g, s, _) = a.ext_gcd(&f, &Rational::one());
        debug_assert!(g.degree() == Some(0));
        Ok(self.field.from_qpoly(&s))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(result)
    }

    /// Exact multiplicative order if the element is a root of unity. Only
    /// orders w with φ(w) ≤ [K:ℚ] are possible, hence w ≤ 2·[K:ℚ]².
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() || !self.norm().abs().is_one() {
            return None;
        }
        let n = self.field.degree() as u64;
        let mut cur = self.clone();
        for w in 1..=(2 * n * n).max(2) {
            if euler_phi(w) <= n && cur.is_one() {
                return Some(w);
            }
            cur = &cur * self;
        }
        None
    }

    /// Total order on coordinates, used for deterministic tie-breaking.
    pub fn cmp_coords(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

/// Order w if u is a root of unity, none otherwise.
pub fn is_root_of_unity(u: &FieldElement) -> Option<u64> {
    u.root_of_unity_order()
}

pub(crate) fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

impl<'a> Add for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &'a FieldElement) -> FieldElement {
        self.check_field(o);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        FieldElement { field: self.field.clone(), coords }
    }
}

impl<'a> Sub for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &'a FieldElement) -> FieldElement {
        self.check_field(o);
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        FieldElement { field: self.field.clone(), coords }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl<'a> Mul for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &'a FieldElement) -> FieldElement {
        self.check_field(o);
        let n = self.field.degree();
        if n == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &o.coords[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<Rational> = prod[..n].to_vec();
        for (k, c) in prod[n..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.data.reduction[k].iter().enumerate() {
                coords[i] += c * r;
            }
        }
        FieldElement { field: self.field.clone(), coords }
    }
}

impl crate::exact::Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
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
        self.inverse().expect("inverse of zero field element")
    }
    fn is_one(&self) -> bool {
        FieldElement::is_one(self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            let t = if i == 0 {
                format_rational(c)
            } else if c.is_one() {
                mono
            } else if *c == -Rational::one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", format_rational(c))
            };
            terms.push(t);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(IntPoly::from_i64(c).unwrap()).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            NumberField::new(IntPoly::from_i64(&[-1, 0, 1]).unwrap()),
            Err(Error::Reducible(_))
        ));
        assert!(NumberField::new(IntPoly::from_i64(&[1, 0, 2]).unwrap()).is_err());
        assert_eq!(field(&[1, 0, 1]).discriminant(), BigInt::from(-4));
        assert_eq!(field(&[-2, 0, 1]).discriminant(), BigInt::from(8));
        assert_eq!(NumberField::rationals().discriminant(), BigInt::from(1));
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = field(&[1, 0, 1]);
        let i = k.generator();
        assert_eq!(&i * &i, k.from_int(-1));
        let z = &k.from_int(2) + &i;
        assert_eq!(z.norm(), Rational::from_integer(5.into()));
        let zi = z.inverse().unwrap();
        assert!((&z * &zi).is_one());
        assert_eq!(z.to_string(), "2 + a");
        assert_eq!((-&z).to_string(), "-2 - a");
    }

    #[test]
    fn roots_of_unity() {
        let q = NumberField::rationals();
        assert_eq!(is_root_of_unity(&q.from_int(-1)), Some(2));
        assert_eq!(is_root_of_unity(&q.from_int(2)), None);
        assert_eq!(is_root_of_unity(&q.from_int(1)), Some(1));
        let k = field(&[1, 1, 1]);
        assert_eq!(is_root_of_unity(&k.generator()), Some(3));
        assert_eq!(is_root_of_unity(&(-&k.generator())), Some(6));
        let g = field(&[1, 0, 1]);
        assert_eq!(is_root_of_unity(&g.generator()), Some(4));
        let e = &g.from_int(1) + &g.generator();
        assert_eq!(is_root_of_unity(&e), None);
    }

    #[test]
    fn cubic_reduction() {
        let k = field(&[-2, 0, 0, 1]);
        let a = k.generator();
        let a3 = a.pow(3).unwrap();
        assert_eq!(a3, k.from_int(2));
        assert_eq!(a.pow(-3).unwrap(), k.from_rational(Rational::new(1.into(), 2.into())));
        assert_eq!(a.norm(), Rational::from_integer(2.into()));
    }
}
