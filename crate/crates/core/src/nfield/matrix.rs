use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Poly, Rational};

use super::field::{FieldElement, NumberField};

pub type Vector = Vec<FieldElement>;

/// Square matrix over a number field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: NumberField,
    n: usize,
    entries: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn new(field: &NumberField, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::InvalidInput("matrix is not square".into()));
            }
            if r.iter().any(|e| e.field() != field) {
                return Err(Error::MixedFields);
            }
        }
        Ok(Matrix { field: field.clone(), n, entries: rows })
    }

    pub fn from_rationals(field: &NumberField, rows: &[Vec<Rational>]) -> Result<Self> {
        Matrix::new(
            field,
            rows.iter()
                .map(|r| r.iter().map(|x| field.from_rational(x.clone())).collect())
                .collect(),
        )
    }

    pub fn from_i64(field: &NumberField, rows: &[&[i64]]) -> Result<Self> {
        Matrix::new(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    pub fn identity(field: &NumberField, n: usize) -> Self {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &NumberField, n: usize, c: &FieldElement) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { field.zero() }).collect())
            .collect();
        Matrix { field: field.clone(), n, entries }
    }

    pub fn diagonal_matrix(field: &NumberField, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { diag[i].clone() } else { field.zero() }).collect())
            .collect();
        Matrix { field: field.clone(), n, entries }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &NumberField, cols: &[Vector]) -> Result<Self> {
        let n = cols.len();
        Matrix::new(field, (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vector {
        (0..self.n).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = self.field.zero();
                        for k in 0..n {
                            if !self.entries[i][k].is_zero() && !o.entries[k][j].is_zero() {
                                acc = &acc + &(&self.entries[i][k] * &o.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Matrix { field: self.field.clone(), n, entries }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Matrix {
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        let entries = self.entries.iter().map(|r| r.iter().map(|a| a * c).collect()).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vector {
        self.entries
            .iter()
            .map(|r| r.iter().zip(v).fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect()).collect();
        Matrix { field: self.field.clone(), n, entries }
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.n).fold(self.field.zero(), |acc, i| &acc + &self.entries[i][i])
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| if i == j { self.entries[i][j].is_one() } else { self.entries[i][j].is_zero() })
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.entries[i][j].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    pub fn commutes_with(&self, o: &Matrix) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn det(&self) -> FieldElement {
        let mut m = self.entries.clone();
        let n = self.n;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap(p, c);
                det = -&det;
            }
            let piv_inv = m[c][c].inverse().expect("nonzero pivot");
            det = &det * &m[c][c];
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] * &piv_inv;
                for k in c..n {
                    m[r][k] = &m[r][k] - &(&f * &m[c][k]);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(&self.field, n).entries;
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
            a.swap(p, c);
            inv.swap(p, c);
            let piv_inv = a[c][c].inverse()?;
            for k in 0..n {
                a[c][k] = &a[c][k] * &piv_inv;
                inv[c][k] = &inv[c][k] * &piv_inv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    a[r][k] = &a[r][k] - &(&f * &a[c][k]);
                    inv[r][k] = &inv[r][k] - &(&f * &inv[c][k]);
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), n, entries: inv })
    }

    pub fn pow(&self, e: i64) -> Result<Matrix> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result = Matrix::identity(&self.field, self.n);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(result)
    }

    /// P⁻¹·self·P.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> Matrix {
        p_inv.mul(self).mul(p)
    }

    /// Lower-right block obtained by deleting the first row and column.
    pub fn minor_block(&self) -> Matrix {
        let entries = self.entries[1..].iter().map(|r| r[1..].to_vec()).collect();
        Matrix { field: self.field.clone(), n: self.n - 1, entries }
    }

    /// Block matrix diag(1, self).
    pub fn bordered(&self) -> Matrix {
        let n = self.n + 1;
        let mut entries = vec![vec![self.field.zero(); n]; n];
        entries[0][0] = self.field.one();
        for i in 1..n {
            for j in 1..n {
                entries[i][j] = self.entries[i - 1][j - 1].clone();
            }
        }
        Matrix { field: self.field.clone(), n, entries }
    }

    /// Entrywise image of a rational matrix in a larger field.
    pub fn embed_into(&self, target: &NumberField) -> Result<Matrix> {
        if !self.field.is_rationals() {
            return Err(Error::UnsupportedTower);
        }
        Matrix::new(
            target,
            self.entries
                .iter()
                .map(|r| r.iter().map(|e| target.from_rational(e.coords()[0].clone())).collect())
                .collect(),
        )
    }

    /// Basis of the right kernel from the reduced row echelon form: one vector
    /// per free column, in increasing column order, with that free entry 1.
    pub fn kernel(&self) -> Vec<Vector> {
        kernel_of(&self.field, &self.entries, self.n)
    }

    /// Characteristic polynomial det(xI − M) by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Poly<FieldElement> {
        let n = self.n;
        let k = &self.field;
        let mut coeffs = vec![k.zero(); n + 1];
        coeffs[n] = k.one();
        let mut m = Matrix::scalar(k, n, &k.zero());
        let ident = Matrix::identity(k, n);
        for step in 1..=n {
            m = self.mul(&m).add(&ident.scale(&coeffs[n - step + 1]));
            let tr = self.mul(&m).trace();
            let inv = k.from_rational(Rational::new((-1).into(), (step as i64).into()));
            coeffs[n - step] = &tr * &inv;
        }
        Poly::new(coeffs)
    }
}

pub(crate) fn kernel_of(field: &NumberField, rows: &[Vec<FieldElement>], cols: usize) -> Vec<Vector> {
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        for k in 0..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in 0..cols {
                a[i][k] = &a[i][k] - &(&f * &a[r][k]);
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[i][free];
        }
        out.push(v);
    }
    out
}

/// Solves W·X = B for X, all given as column lists. W must have full column
/// rank and B must lie in its column space.
pub(crate) fn solve_columns(w: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let n = w.first().map(|c| c.len()).unwrap_or(0);
    let d = w.len();
    let k = b.len();
    let mut aug: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| w.iter().map(|c| c[i].clone()).chain(b.iter().map(|c| c[i].clone())).collect())
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..d {
        let p = (r..n).find(|&i| !aug[i][c].is_zero()).expect("full column rank");
        aug.swap(p, r);
        let inv = aug[r][c].inverse().unwrap();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i == r || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            let pivot_row = aug[r].clone();
            for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * y);
            }
        }
        pivots.push(r);
        r += 1;
    }
    (0..k).map(|j| (0..d).map(|i| aug[pivots[i]][d + j].clone()).collect()).collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Labelled invertible generators of a matrix group over a number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescription {
    field: NumberField,
    n: usize,
    generators: Vec<(String, Matrix)>,
}

impl GroupDescription {
    pub fn new(field: &NumberField, n: usize, generators: Vec<(String, Matrix)>) -> Result<Self> {
        for (i, (label, m)) in generators.iter().enumerate() {
            if m.n() != n {
                return Err(Error::InvalidInput(format!("generator {label} has wrong dimension")));
            }
            if m.field() != field {
                return Err(Error::MixedFields);
            }
            if m.det().is_zero() {
                return Err(Error::NotInvertible(format!("generator {label}")));
            }
            if generators[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::InvalidInput(format!("duplicate label {label}")));
            }
        }
        Ok(GroupDescription { field: field.clone(), n, generators })
    }

    /// Labels g1, g2, … assigned in order.
    pub fn from_matrices(field: &NumberField, n: usize, mats: Vec<Matrix>) -> Result<Self> {
        let gens = mats.into_iter().enumerate().map(|(i, m)| (format!("g{}", i + 1), m)).collect();
        GroupDescription::new(field, n, gens)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[(String, Matrix)] {
        &self.generators
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|(_, m)| m.clone()).collect()
    }

    /// First pair of generators (by index) that fail to commute.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if !self.generators[i].1.commutes_with(&self.generators[j].1) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}
