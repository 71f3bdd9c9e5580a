//! Finite quotient rings ℤ[x]/(f, q), entrywise residue maps on matrices,
//! breadth-first group closure and product homomorphisms.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::arith::{is_prime_u64, rational_mod};
use crate::exact::factor::reduce_mod_p;
use crate::exact::{IntMatrix, Integer};
use crate::nfield::{FieldElement, Matrix, NumberField};

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

/// Remainder of `a` modulo a monic polynomial over ℤ/q.
fn monic_rem(a: &[u64], m: &[u64], q: u64) -> Vec<u64> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > d {
        let c = r.pop().unwrap();
        if c == 0 {
            continue;
        }
        let base = r.len() - d;
        for (j, &mj) in m[..d].iter().enumerate() {
            r[base + j] = (r[base + j] + q - mulmod(c, mj, q)) % q;
        }
    }
    r.resize(d, 0);
    r
}

/// ℤ[x]/(g, q) for a monic g; elements are coefficient vectors of length
/// deg g, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    q: u64,
    poly: Vec<u64>,
}

impl FiniteRing {
    pub fn new(q: u64, poly: Vec<u64>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidInput(format!("modulus {q} below 2")));
        }
        if q >= 1 << 32 {
            return Err(Error::InvalidInput(format!("modulus {q} too large")));
        }
        let mut poly: Vec<u64> = poly.into_iter().map(|c| c % q).collect();
        while poly.last() == Some(&0) {
            poly.pop();
        }
        if poly.len() < 2 || *poly.last().unwrap() != 1 {
            return Err(Error::InvalidInput("defining polynomial must be monic of positive degree mod q".into()));
        }
        Ok(FiniteRing { q, poly })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// Number of elements, if it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        self.q.checked_pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    pub fn one(&self) -> Vec<u64> {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut e = self.zero();
        e[0] = c % self.q;
        e
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.q).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.degree();
        if d == 1 {
            return vec![mulmod(a[0], b[0], self.q)];
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, self.q)) % self.q;
            }
        }
        monic_rem(&prod, &self.poly, self.q)
    }

    pub fn reduce_poly(&self, a: &[u64]) -> Vec<u64> {
        monic_rem(&a.iter().map(|c| c % self.q).collect::<Vec<_>>(), &self.poly, self.q)
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// Units are exactly the elements whose multiplication map is bijective.
    pub fn is_unit(&self, a: &[u64]) -> bool {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut x = vec![0u64; d];
        for j in 0..d {
            x.iter_mut().for_each(|c| *c = 0);
            x[j] = 1;
            cols.push(self.mul(a, &x));
        }
        let rows: Vec<Vec<Integer>> =
            (0..d).map(|i| (0..d).map(|j| BigInt::from(cols[j][i])).collect()).collect();
        let det = IntMatrix::from_rows(rows).expect("square").det();
        det.gcd(&BigInt::from(self.q)).is_one()
    }

    /// Inverse of a unit, by walking its powers.
    pub fn inverse(&self, a: &[u64]) -> Option<Vec<u64>> {
        if !self.is_unit(a) {
            return None;
        }
        let one = self.one();
        let mut prev = one.clone();
        let mut cur = a.to_vec();
        while cur != one {
            prev = cur.clone();
            cur = self.mul(&cur, a);
        }
        Some(if a == one.as_slice() { one } else { prev })
    }

    pub fn identity(&self, n: usize) -> FiniteMatrix {
        let d = self.degree();
        let mut data = vec![0u64; n * n * d];
        for i in 0..n {
            data[(i * n + i) * d] = 1;
        }
        FiniteMatrix { n, d, data }
    }

    pub fn matrix(&self, n: usize, entries: &[Vec<u64>]) -> FiniteMatrix {
        let d = self.degree();
        assert_eq!(entries.len(), n * n);
        let mut data = Vec::with_capacity(n * n * d);
        for e in entries {
            data.extend(self.reduce_poly(e));
        }
        FiniteMatrix { n, d, data }
    }

    pub fn mat_mul(&self, a: &FiniteMatrix, b: &FiniteMatrix) -> FiniteMatrix {
        let (n, d, q) = (a.n, a.d, self.q);
        let mut data = vec![0u64; n * n * d];
        // Entries are below q < 2^32, so each product fits in a u64 and the
        // sums of up to n·d of them fit in a u128.
        let mut acc = vec![0u128; 2 * d - 1];
        let mut r = vec![0u64; 2 * d - 1];
        for i in 0..n {
            for j in 0..n {
                acc.fill(0);
                for k in 0..n {
                    let (x, y) = (a.entry(i, k), b.entry(k, j));
                    for (s, &xs) in x.iter().enumerate() {
                        if xs == 0 {
                            continue;
                        }
                        for (t, &yt) in y.iter().enumerate() {
                            acc[s + t] += (xs * yt) as u128;
                        }
                    }
                }
                for (rk, ak) in r.iter_mut().zip(&acc) {
                    *rk = (ak % q as u128) as u64;
                }
                for top in (d..2 * d - 1).rev() {
                    let c = r[top];
                    if c == 0 {
                        continue;
                    }
                    for (t, &mt) in self.poly[..d].iter().enumerate() {
                        let idx = top - d + t;
                        r[idx] = (r[idx] + q - mulmod(c, mt, q)) % q;
                    }
                }
                data[(i * n + j) * d..(i * n + j + 1) * d].copy_from_slice(&r[..d]);
            }
        }
        FiniteMatrix { n, d, data }
    }

    pub fn det(&self, m: &FiniteMatrix) -> Vec<u64> {
        // Laplace expansion along the first row; matrices here are small.
        fn rec(ring: &FiniteRing, m: &FiniteMatrix, rows: &[usize], cols: &[usize]) -> Vec<u64> {
            if rows.len() == 1 {
                return m.entry(rows[0], cols[0]).to_vec();
            }
            let mut acc = ring.zero();
            for (k, &c) in cols.iter().enumerate() {
                let e = m.entry(rows[0], c);
                if ring.is_zero(e) {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let mut t = ring.mul(e, &rec(ring, m, &rows[1..], &rest));
                if k % 2 == 1 {
                    t = t.iter().map(|&x| (ring.q - x) % ring.q).collect();
                }
                acc = ring.add(&acc, &t);
            }
            acc
        }
        let idx: Vec<usize> = (0..m.n).collect();
        rec(self, m, &idx, &idx)
    }

    pub fn is_invertible(&self, m: &FiniteMatrix) -> bool {
        self.is_unit(&self.det(m))
    }

    /// Multiplicative order of an invertible matrix, if at most `cap`.
    pub fn matrix_order(&self, m: &FiniteMatrix, cap: usize) -> Result<u64> {
        let id = self.identity(m.n);
        let mut cur = m.clone();
        let mut k = 1u64;
        while cur != id {
            cur = self.mat_mul(&cur, m);
            k += 1;
            if k as usize > cap {
                return Err(Error::CapExceeded(cap));
            }
        }
        Ok(k)
    }

    pub fn mat_pow(&self, m: &FiniteMatrix, mut e: u64) -> FiniteMatrix {
        let mut result = self.identity(m.n);
        let mut b = m.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mat_mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mat_mul(&b, &b);
            }
        }
        result
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[x]/({}, {:?})", self.q, self.poly)
    }
}

/// n×n matrix over a finite ring, stored row-major with each entry's
/// coefficients constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMatrix {
    n: usize,
    d: usize,
    data: Vec<u64>,
}

impl FiniteMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &[u64] {
        let s = (i * self.n + j) * self.d;
        &self.data[s..s + self.d]
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.data
    }

    /// Row-major entries as coefficient vectors.
    pub fn entries(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.d).map(|c| c.to_vec()).collect()
    }

    /// Canonical byte encoding: entries row-major, coefficients constant
    /// term first, each as 8 little-endian bytes.
    pub fn encode(&self) -> Vec<u8> {
        self.data.iter().flat_map(|c| c.to_le_bytes()).collect()
    }
}

impl fmt::Display for FiniteMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: &[u64]| {
            if self.d == 1 {
                e[0].to_string()
            } else {
                format!("{e:?}")
            }
        };
        let rows: Vec<String> = (0..self.n)
            .map(|i| format!("[{}]", (0..self.n).map(|j| show(self.entry(i, j))).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Elements reachable from the identity by right multiplication with the
/// generators, in breadth-first order.
#[derive(Clone, Debug)]
pub struct Closure<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> Closure<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }
}

/// Breadth-first closure of a finite group from its generators. In a finite
/// group the monoid generated by the generators is already the group.
pub fn bfs_closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    Ok(Closure { elements, index })
}

/// Closure of pairwise commuting generators, built one cyclic extension at
/// a time: ⟨S, x⟩ is the disjoint union of the cosets x^i·S below the first
/// power of x that lands in S.
pub fn abelian_closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<Closure<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0);
    for x in gens {
        let base = elements.len();
        // Index of S in ⟨S, x⟩, found before any coset is enumerated.
        let mut k = 1;
        let mut y = x.clone();
        while !index.contains_key(&y) {
            k += 1;
            if base * k > cap {
                return Err(Error::CapExceeded(cap));
            }
            y = mul(&y, x);
        }
        let mut y = x.clone();
        for _ in 1..k {
            for i in 0..base {
                let z = mul(&y, &elements[i]);
                index.insert(z.clone(), elements.len());
                elements.push(z);
            }
            y = mul(&y, x);
        }
    }
    Ok(Closure { elements, index })
}

/// A finite matrix group given by generators and its enumerated elements.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    pub ring: FiniteRing,
    pub n: usize,
    pub generators: Vec<FiniteMatrix>,
    pub closure: Closure<FiniteMatrix>,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.closure.len()
    }

    pub fn contains(&self, m: &FiniteMatrix) -> bool {
        self.closure.contains(m)
    }
}

pub fn group_closure(ring: &FiniteRing, n: usize, gens: &[FiniteMatrix], cap: usize) -> Result<FiniteMatrixGroup> {
    for (i, g) in gens.iter().enumerate() {
        if !ring.is_invertible(g) {
            return Err(Error::NotInvertible(format!("generator {i} modulo {}", ring.q)));
        }
    }
    let closure = bfs_closure(ring.identity(n), gens, |a, b| ring.mat_mul(a, b), cap)?;
    Ok(FiniteMatrixGroup { ring: ring.clone(), n, generators: gens.to_vec(), closure })
}

/// Entrywise reduction K → ℤ[x]/(g, q), where g divides f modulo q and α ↦ x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueMap {
    field: NumberField,
    ring: FiniteRing,
    avoid: Vec<Integer>,
}

fn check_coprime(q: u64, field: &NumberField, avoid: &[Integer]) -> Result<()> {
    let bq = BigInt::from(q);
    for a in avoid {
        if !a.gcd(&bq).is_one() {
            return Err(Error::ResidueUndefined(format!("modulus {q} shares a factor with {a}")));
        }
    }
    let disc = field.discriminant();
    if !disc.gcd(&bq).is_one() {
        return Err(Error::ResidueUndefined(format!(
            "modulus {q} shares a factor with the discriminant {disc}"
        )));
    }
    Ok(())
}

pub fn build_residue_map(field: &NumberField, q: &Integer, avoid: &[Integer]) -> Result<ResidueMap> {
    let q = q
        .to_u64()
        .filter(|&x| x >= 2)
        .ok_or_else(|| Error::InvalidInput(format!("modulus {q} out of range")))?;
    check_coprime(q, field, avoid)?;
    let ring = FiniteRing::new(q, reduce_mod_p(field.minimal_poly().coeffs(), q))?;
    Ok(ResidueMap { field: field.clone(), ring, avoid: avoid.to_vec() })
}

impl ResidueMap {
    /// A map onto ℤ[x]/(g, q) for a monic g dividing f modulo q, under the
    /// same admissibility conditions as [`build_residue_map`].
    pub fn with_ring(field: &NumberField, ring: FiniteRing, avoid: &[Integer]) -> Result<Self> {
        check_coprime(ring.q, field, avoid)?;
        let f = reduce_mod_p(field.minimal_poly().coeffs(), ring.q);
        if ring.reduce_poly(&f).iter().any(|&c| c != 0) {
            return Err(Error::ResidueUndefined(format!(
                "{:?} does not divide the minimal polynomial modulo {}",
                ring.poly, ring.q
            )));
        }
        Ok(ResidueMap { field: field.clone(), ring, avoid: avoid.to_vec() })
    }

    /// Composition with the quotient by a monic factor of f modulo q.
    pub fn compose_factor(&self, factor: &[u64]) -> Result<ResidueMap> {
        ResidueMap::with_ring(&self.field, FiniteRing::new(self.ring.q, factor.to_vec())?, &self.avoid)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.q
    }

    pub fn apply_element(&self, e: &FieldElement) -> Result<Vec<u64>> {
        let coeffs = e
            .coords()
            .iter()
            .map(|c| {
                rational_mod(c, self.ring.q).ok_or_else(|| {
                    Error::ResidueUndefined(format!("denominator of {e} is not invertible modulo {}", self.ring.q))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(self.ring.reduce_poly(&coeffs))
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Result<FiniteMatrix> {
        let entries = m
            .rows()
            .iter()
            .flatten()
            .map(|e| self.apply_element(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.ring.matrix(m.n(), &entries))
    }

    /// Whether the target ring is a field: q prime and g irreducible mod q.
    pub fn is_field(&self) -> bool {
        is_prime_u64(self.ring.q) && {
            let fac = crate::exact::factor::fp_factor(&self.ring.poly, self.ring.q);
            fac.len() == 1 && fac[0].1 == 1
        }
    }
}

/// Product of residue maps on a common source field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDescription {
    components: Vec<ResidueMap>,
}

impl HomDescription {
    pub fn new(components: Vec<ResidueMap>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::InvalidInput("empty homomorphism".into()))?;
        if components.iter().any(|c| c.field != first.field) {
            return Err(Error::MixedFields);
        }
        Ok(HomDescription { components })
    }

    pub fn single(map: ResidueMap) -> Self {
        HomDescription { components: vec![map] }
    }

    pub fn components(&self) -> &[ResidueMap] {
        &self.components
    }

    pub fn field(&self) -> &NumberField {
        &self.components[0].field
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Result<Vec<FiniteMatrix>> {
        self.components.iter().map(|c| c.apply_matrix(m)).collect()
    }

    pub fn identity(&self, n: usize) -> Vec<FiniteMatrix> {
        self.components.iter().map(|c| c.ring.identity(n)).collect()
    }

    pub fn mul(&self, a: &[FiniteMatrix], b: &[FiniteMatrix]) -> Vec<FiniteMatrix> {
        self.components.iter().zip(a.iter().zip(b)).map(|(c, (x, y))| c.ring.mat_mul(x, y)).collect()
    }

    /// Closure of tuples of images under componentwise multiplication.
    pub fn closure(&self, n: usize, gens: &[Vec<FiniteMatrix>], cap: usize) -> Result<Closure<Vec<FiniteMatrix>>> {
        for g in gens {
            for (c, m) in self.components.iter().zip(g) {
                if !c.ring.is_invertible(m) {
                    return Err(Error::NotInvertible(format!("image modulo {}", c.ring.q)));
                }
            }
        }
        let mul = |a: &Vec<FiniteMatrix>, b: &Vec<FiniteMatrix>| self.mul(a, b);
        let commute = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| mul(a, b) == mul(b, a)));
        if commute {
            abelian_closure(self.identity(n), gens, mul, cap)
        } else {
            bfs_closure(self.identity(n), gens, mul, cap)
        }
    }
}

/// Concatenation of the component lists of several homomorphisms.
pub fn product_hom(maps: &[HomDescription]) -> Result<HomDescription> {
    HomDescription::new(maps.iter().flat_map(|m| m.components.iter().cloned()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{IntPoly, Rational};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn map(k: &NumberField, m: u64, avoid: &[i64]) -> Result<ResidueMap> {
        build_residue_map(k, &BigInt::from(m), &avoid.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
    }

    #[test]
    fn residue_examples() {
        let k = q();
        let r = map(&k, 5, &[2]).unwrap();
        assert_eq!(r.apply_element(&k.from_rational(Rational::new(1.into(), 2.into()))).unwrap(), vec![3]);
        assert!(matches!(map(&k, 4, &[2]), Err(Error::ResidueUndefined(_))));

        let k2 = NumberField::new(IntPoly::from_i64(&[-2, 0, 1]).unwrap()).unwrap();
        let r = map(&k2, 7, &[]).unwrap();
        let r3 = r.compose_factor(&[4, 1]).unwrap();
        assert_eq!(r3.apply_element(&k2.generator()).unwrap(), vec![3]);
        assert!(r.compose_factor(&[1, 1]).is_err());
        assert!(matches!(map(&k2, 2, &[]), Err(Error::ResidueUndefined(_))));
    }

    #[test]
    fn matrix_images() {
        let k = q();
        let r = map(&k, 5, &[2]).unwrap();
        let m = Matrix::from_rationals(
            &k,
            &[
                vec![Rational::one(), Rational::new(1.into(), 2.into())],
                vec![Rational::from_integer(0.into()), Rational::one()],
            ],
        )
        .unwrap();
        let img = r.apply_matrix(&m).unwrap();
        assert_eq!(img, r.ring().matrix(2, &[vec![1], vec![3], vec![0], vec![1]]));
        assert_eq!(img.encode().len(), 32);
        let bad = map(&k, 6, &[]).unwrap();
        assert!(matches!(bad.apply_matrix(&m), Err(Error::ResidueUndefined(_))));
    }

    #[test]
    fn closures() {
        let k = q();
        let r3 = map(&k, 3, &[]).unwrap();
        let u = Matrix::from_i64(&k, &[&[1, 1], &[0, 1]]).unwrap();
        let g = group_closure(r3.ring(), 2, &[r3.apply_matrix(&u).unwrap()], 100).unwrap();
        assert_eq!(g.order(), 3);
        let r5 = map(&k, 5, &[]).unwrap();
        let t = Matrix::from_i64(&k, &[&[2, 0], &[0, 1]]).unwrap();
        let gens = vec![r5.apply_matrix(&t).unwrap(), r5.apply_matrix(&u).unwrap()];
        assert_eq!(group_closure(r5.ring(), 2, &gens, 100).unwrap().order(), 20);
        assert_eq!(group_closure(r5.ring(), 2, &gens, 10).unwrap_err(), Error::CapExceeded(10));
        let sing = r5.ring().matrix(2, &[vec![1], vec![2], vec![2], vec![4]]);
        assert!(matches!(group_closure(r5.ring(), 2, &[sing], 100), Err(Error::NotInvertible(_))));
        assert_eq!(group_closure(r5.ring(), 2, &[r5.ring().identity(2)], 100).unwrap().order(), 1);
    }

    #[test]
    fn abelian_closure_matches_bfs() {
        let mul = |a: &u64, b: &u64| a * b % 101;
        for gens in [vec![3u64], vec![10, 100], vec![4, 16, 1], vec![1], vec![]] {
            let a = abelian_closure(1, &gens, mul, 1000).unwrap();
            let b = bfs_closure(1, &gens, mul, 1000).unwrap();
            let mut x = a.elements().to_vec();
            let mut y = b.elements().to_vec();
            x.sort();
            y.sort();
            assert_eq!(x, y, "{gens:?}");
        }
        assert_eq!(abelian_closure(1, &[3u64], mul, 100).unwrap().len(), 100);
        assert_eq!(abelian_closure(1, &[3u64], mul, 99).unwrap_err(), Error::CapExceeded(99));
    }

    #[test]
    fn products() {
        let k = q();
        let h3 = HomDescription::single(map(&k, 3, &[]).unwrap());
        let h5 = HomDescription::single(map(&k, 5, &[]).unwrap());
        let p = product_hom(&[h3.clone(), h5]).unwrap();
        let six = Matrix::from_i64(&k, &[&[6]]).unwrap();
        let one = Matrix::from_i64(&k, &[&[1]]).unwrap();
        let a = p.apply_matrix(&six).unwrap();
        assert_eq!(a[0].coefficients(), &[0]);
        assert_eq!(a[1].coefficients(), &[1]);
        assert_ne!(a, p.apply_matrix(&one).unwrap());
        assert_eq!(product_hom(&[h3.clone()]).unwrap(), h3);
        let kg = NumberField::new(IntPoly::from_i64(&[1, 0, 1]).unwrap()).unwrap();
        let hg = HomDescription::single(map(&kg, 3, &[]).unwrap());
        assert_eq!(product_hom(&[h3, hg]), Err(Error::MixedFields));
    }

    #[test]
    fn gaussian_ring_mod_three_is_a_field() {
        let k = NumberField::new(IntPoly::from_i64(&[1, 0, 1]).unwrap()).unwrap();
        let r = map(&k, 3, &[]).unwrap();
        assert!(r.is_field());
        let ring = r.ring();
        for a in 0..3 {
            for b in 0..3 {
                let e = vec![a, b];
                if a == 0 && b == 0 {
                    assert!(!ring.is_unit(&e));
                    continue;
                }
                let inv = ring.inverse(&e).unwrap();
                assert_eq!(ring.mul(&e, &inv), ring.one());
            }
        }
        let r5 = map(&k, 5, &[]).unwrap();
        assert!(!r5.is_field());
    }
}
