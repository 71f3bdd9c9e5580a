//! Integer matrices, Smith normal form, and the lattice toolkit built on it.
//!
//! Lattices are row lattices: a basis is a list of row vectors, and every
//! lattice operation (membership, kernels, intersections, saturation,
//! quotients) is reduced to a single Smith normal form computation with
//! tracked transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::Integer;
use crate::error::{Error, Result};

pub type IntVec = Vec<Integer>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Integer>>,
}

impl IntMatrix {
    pub fn from_rows(data: Vec<Vec<Integer>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("empty integer matrix".into()));
        }
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged integer matrix".into()));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_i64(data: &[&[i64]]) -> Result<Self> {
        IntMatrix::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: n,
            data: identity_rows(n),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i][j]
    }

    pub fn row_vectors(&self) -> &[Vec<Integer>] {
        &self.data
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data: mat_mul(&self.data, &other.data, other.cols),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data: transpose(&self.data, self.cols),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Integer {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        det_bareiss(&self.data)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn identity_rows(n: usize) -> Vec<Vec<Integer>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Integer>], b: &[Vec<Integer>], bcols: usize) -> Vec<Vec<Integer>> {
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(BigInt::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<Integer>], cols: usize) -> Vec<Vec<Integer>> {
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub(crate) fn det_bareiss(m: &[Vec<Integer>]) -> Integer {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Result of a Smith normal form computation on a k×n matrix A:
/// `u · A · v = d`, with `vinv` the inverse of `v`.
#[derive(Clone, Debug)]
pub(crate) struct Snf {
    pub d: Vec<Vec<Integer>>,
    pub u: Vec<Vec<Integer>>,
    pub v: Vec<Vec<Integer>>,
    pub vinv: Vec<Vec<Integer>>,
    pub rank: usize,
}

impl Snf {
    pub fn diag(&self, i: usize) -> Integer {
        if i < self.rank {
            self.d[i][i].clone()
        } else {
            BigInt::zero()
        }
    }
}

struct SnfState {
    a: Vec<Vec<Integer>>,
    u: Vec<Vec<Integer>>,
    v: Vec<Vec<Integer>>,
    vinv: Vec<Vec<Integer>>,
    rows: usize,
    cols: usize,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap(i, k);
        self.u.swap(i, k);
    }

    /// row_i += c · row_k
    fn add_row(&mut self, i: usize, k: usize, c: &Integer) {
        for j in 0..self.cols {
            let t = &self.a[k][j] * c;
            self.a[i][j] += t;
        }
        for j in 0..self.rows {
            let t = &self.u[k][j] * c;
            self.u[i][j] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(j, l);
        }
        self.vinv.swap(j, l);
    }

    /// col_j += c · col_l
    fn add_col(&mut self, j: usize, l: usize, c: &Integer) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &r[l] * c;
            r[j] += t;
        }
        for k in 0..self.cols {
            let t = &self.vinv[j][k] * c;
            self.vinv[l][k] -= t;
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

/// Smith normal form by elementary row/column reduction, pivoting on the
/// entry of least absolute value and reducing by Euclidean division against
/// the current pivot.
pub(crate) fn snf_raw(a: &[Vec<Integer>], cols: usize) -> Snf {
    let rows = a.len();
    let mut st = SnfState {
        a: a.to_vec(),
        u: identity_rows(rows),
        v: identity_rows(cols),
        vinv: identity_rows(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = st.min_pivot(t) else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !st.a[i][t].is_zero() {
                    let q = st.a[i][t].div_floor(&st.a[t][t]);
                    st.add_row(i, t, &-q);
                    if !st.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !st.a[t][j].is_zero() {
                    let q = st.a[t][j].div_floor(&st.a[t][t]);
                    st.add_col(j, t, &-q);
                    if !st.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // Move the smallest remainder on the cross into the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !st.a[i][t].is_zero() && st.a[i][t].abs() < st.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !st.a[t][j].is_zero() && st.a[t][j].abs() < st.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    st.swap_rows(t, best.0);
                }
                if best.1 != t {
                    st.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = st.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&st.a[i][j] % &pivot).is_zero())
            });
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a[t][t].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    Snf {
        d: st.a,
        u: st.u,
        v: st.v,
        vinv: st.vinv,
        rank: t,
    }
}

/// Smith normal form: returns (D, U, V) with U·A·V = D, D diagonal with
/// nonnegative entries d₁ | d₂ | …, and U, V unimodular.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = snf_raw(&a.data, a.cols);
    (
        IntMatrix { rows: a.rows, cols: a.cols, data: s.d },
        IntMatrix { rows: a.rows, cols: a.rows, data: s.u },
        IntMatrix { rows: a.cols, cols: a.cols, data: s.v },
    )
}

/// Basis of the integer kernel {v : A·v = 0}, as column vectors of V.
pub fn lattice_kernel(a: &IntMatrix) -> Vec<IntVec> {
    right_kernel(&a.data, a.cols)
}

pub(crate) fn right_kernel(a: &[Vec<Integer>], cols: usize) -> Vec<IntVec> {
    let s = snf_raw(a, cols);
    (s.rank..cols)
        .map(|j| {
            let mut v: IntVec = s.v.iter().map(|r| r[j].clone()).collect();
            normalize_sign(&mut v);
            v
        })
        .collect()
}

/// Flip sign so the last nonzero coordinate is positive.
pub(crate) fn normalize_sign(v: &mut [Integer]) {
    if let Some(x) = v.iter().rev().find(|x| !x.is_zero()) {
        if x.is_negative() {
            for y in v.iter_mut() {
                *y = -&*y;
            }
        }
    }
}

/// Linear combination Σ c_i · rows_i.
pub(crate) fn combine(c: &[Integer], rows: &[IntVec], dim: usize) -> IntVec {
    let mut out = vec![BigInt::zero(); dim];
    for (ci, r) in c.iter().zip(rows) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            *o += ci * x;
        }
    }
    out
}

pub(crate) fn scale_vec(v: &[Integer], k: &Integer) -> IntVec {
    v.iter().map(|x| x * k).collect()
}

pub(crate) fn add_vec(a: &[Integer], b: &[Integer]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_vec(a: &[Integer], b: &[Integer]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn unit_vec(dim: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

/// Integer solution c of c · rows = target, if one exists.
pub(crate) fn solve_left(rows: &[IntVec], dim: usize, target: &[Integer]) -> Option<IntVec> {
    if rows.is_empty() {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let s = snf_raw(rows, dim);
    // y·D = target·V, c = y·U
    let tv: IntVec = (0..dim).map(|j| {
        target.iter().zip(&s.v).fold(BigInt::zero(), |acc, (t, vr)| acc + t * &vr[j])
    }).collect();
    let mut y = vec![BigInt::zero(); rows.len()];
    for (j, tj) in tv.iter().enumerate() {
        if j < s.rank {
            let (q, r) = tj.div_rem(&s.d[j][j]);
            if !r.is_zero() {
                return None;
            }
            y[j] = q;
        } else if !tj.is_zero() {
            return None;
        }
    }
    Some(combine(&y, &s.u, rows.len()))
}

/// A sublattice of ℤ^dim, stored as an independent list of row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<IntVec>,
}

/// Structure of ℤ^dim / L: coordinates y = x·V split into cyclic factors
/// ℤ/invariants[i] (invariant 0 meaning a free ℤ factor).
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub invariants: Vec<Integer>,
    v: Vec<IntVec>,
    vinv: Vec<IntVec>,
}

impl QuotientStructure {
    /// Coordinates of x in the quotient decomposition (not reduced).
    pub fn coords(&self, x: &[Integer]) -> IntVec {
        let dim = self.invariants.len();
        (0..dim)
            .map(|j| x.iter().zip(&self.v).fold(BigInt::zero(), |acc, (t, vr)| acc + t * &vr[j]))
            .collect()
    }

    /// Lift of a quotient coordinate vector back to ℤ^dim.
    pub fn lift(&self, y: &[Integer]) -> IntVec {
        combine(y, &self.vinv, self.invariants.len())
    }

    /// Lifts of the standard generators of the free part.
    pub fn free_lifts(&self) -> Vec<IntVec> {
        self.invariants
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_zero())
            .map(|(i, _)| self.vinv[i].clone())
            .collect()
    }

    /// Order of the torsion part (product of nonzero invariants).
    pub fn torsion_order(&self) -> Integer {
        self.invariants
            .iter()
            .filter(|d| !d.is_zero())
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn free_rank(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_zero()).count()
    }

    /// Representatives of the torsion part, in lexicographic order of the
    /// reduced coordinates. Panics above `limit` representatives.
    pub fn torsion_representatives(&self, limit: usize) -> Option<Vec<IntVec>> {
        let dim = self.invariants.len();
        let finite: Vec<usize> = (0..dim)
            .filter(|&i| !self.invariants[i].is_zero() && !self.invariants[i].is_one())
            .collect();
        let total = self.torsion_order();
        if total > BigInt::from(limit) {
            return None;
        }
        let mut reps = vec![vec![BigInt::zero(); dim]];
        for &i in &finite {
            let di: i64 = (&self.invariants[i]).try_into().ok()?;
            let mut next = Vec::new();
            for r in &reps {
                for k in 0..di {
                    let mut y = r.clone();
                    y[i] = BigInt::from(k);
                    next.push(y);
                }
            }
            reps = next;
        }
        Some(reps.iter().map(|y| self.lift(y)).collect())
    }
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { dim, basis: identity_rows(dim) }
    }

    /// Lattice spanned by arbitrary (possibly dependent) generators.
    pub fn from_generators(dim: usize, gens: &[IntVec]) -> Self {
        let gens: Vec<IntVec> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        if gens.is_empty() {
            return Lattice::zero(dim);
        }
        let s = snf_raw(&gens, dim);
        // rows(A) = rows(D·V⁻¹)
        let basis = (0..s.rank)
            .map(|i| scale_vec(&s.vinv[i], &s.d[i][i]))
            .collect();
        let mut l = Lattice { dim, basis };
        l.reduce();
        l
    }

    /// Replaces the basis with its row Hermite normal form, which makes
    /// bases canonical and small.
    fn reduce(&mut self) {
        let mut rows = std::mem::take(&mut self.basis);
        let mut out: Vec<IntVec> = Vec::new();
        let mut col = 0;
        while !rows.is_empty() && col < self.dim {
            // Euclid down the column.
            loop {
                rows.sort_by(|a, b| {
                    let za = a[col].is_zero();
                    let zb = b[col].is_zero();
                    za.cmp(&zb).then(a[col].abs().cmp(&b[col].abs()))
                });
                if rows[0][col].is_zero() {
                    break;
                }
                let mut changed = false;
                for i in 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[0][col]);
                    let r0 = rows[0].clone();
                    rows[i] = sub_vec(&rows[i], &scale_vec(&r0, &q));
                    changed = true;
                }
                if !changed || rows.iter().skip(1).all(|r| r[col].is_zero()) {
                    break;
                }
            }
            if !rows[0][col].is_zero() {
                let mut p = rows.remove(0);
                if p[col].is_negative() {
                    p = p.iter().map(|x| -x).collect();
                }
                for prev in out.iter_mut() {
                    let q = prev[col].div_floor(&p[col]);
                    *prev = sub_vec(prev, &scale_vec(&p, &q));
                }
                out.push(p);
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            col += 1;
        }
        self.basis = out;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        solve_left(&self.basis, self.dim, v).is_some()
    }

    pub fn coordinates(&self, v: &[Integer]) -> Option<IntVec> {
        solve_left(&self.basis, self.dim, v)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut g = self.basis.clone();
        g.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.dim, &g)
    }

    pub fn scaled(&self, k: &Integer) -> Lattice {
        Lattice::from_generators(self.dim, &self.basis.iter().map(|b| scale_vec(b, k)).collect::<Vec<_>>())
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.dim);
        }
        // a·B1 = b·B2  ⇔  (a, b)·[B1; −B2] = 0
        let k1 = self.basis.len();
        let mut stacked: Vec<IntVec> = self.basis.clone();
        stacked.extend(other.basis.iter().map(|r| r.iter().map(|x| -x).collect()));
        let kern = left_kernel(&stacked, self.dim);
        let gens: Vec<IntVec> = kern
            .iter()
            .map(|ab| combine(&ab[..k1], &self.basis, self.dim))
            .collect();
        Lattice::from_generators(self.dim, &gens)
    }

    /// ℚ-span of the lattice intersected with ℤ^dim.
    pub fn saturation(&self) -> Lattice {
        if self.is_zero() {
            return Lattice::zero(self.dim);
        }
        let perp = right_kernel(&self.basis, self.dim);
        if perp.is_empty() {
            return Lattice::full(self.dim);
        }
        // {x : x · y = 0 for all y ∈ perp}
        let perp_t: Vec<IntVec> = perp;
        let gens = right_kernel(&perp_t, self.dim);
        Lattice::from_generators(self.dim, &gens)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    pub fn quotient(&self) -> QuotientStructure {
        let rows = if self.basis.is_empty() {
            vec![vec![BigInt::zero(); self.dim]]
        } else {
            self.basis.clone()
        };
        let s = snf_raw(&rows, self.dim);
        QuotientStructure {
            invariants: (0..self.dim).map(|i| s.diag(i)).collect(),
            v: s.v,
            vinv: s.vinv,
        }
    }

    /// Index in ℤ^dim when finite.
    pub fn index(&self) -> Option<Integer> {
        (self.rank() == self.dim).then(|| self.quotient().torsion_order())
    }
}

/// {x : x · rows = 0}
pub(crate) fn left_kernel(rows: &[IntVec], dim: usize) -> Vec<IntVec> {
    let t = transpose(rows, dim);
    right_kernel(&t, rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVec {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    fn diag_of(d: &IntMatrix) -> Vec<Integer> {
        (0..d.rows().min(d.cols())).map(|i| d.get(i, i).clone()).collect()
    }

    #[test]
    fn snf_examples_match_determinantal_divisors() {
        let (d, u, vv) = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).unwrap());
        assert_eq!(diag_of(&d), v(&[1, 6]));
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(vv.det().abs(), BigInt::one());
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]).unwrap();
        let (d, u, vv) = smith_normal_form(&a);
        assert_eq!(diag_of(&d), v(&[2, 4]));
        assert_eq!(u.mul(&a).mul(&vv), d);
        let (d, _, _) = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(d, IntMatrix::identity(3));
    }

    #[test]
    fn kernels() {
        let k = lattice_kernel(&IntMatrix::from_i64(&[&[1, 2]]).unwrap());
        assert_eq!(k.len(), 1);
        assert!(k[0] == v(&[-2, 1]) || k[0] == v(&[2, -1]));
        assert!(lattice_kernel(&IntMatrix::identity(2)).is_empty());
        assert_eq!(lattice_kernel(&IntMatrix::from_i64(&[&[0, 0]]).unwrap()).len(), 2);
    }

    #[test]
    fn lattice_operations() {
        let a = Lattice::from_generators(2, &[v(&[2, 0]), v(&[0, 3])]);
        let b = Lattice::from_generators(2, &[v(&[3, 0]), v(&[0, 2])]);
        let i = a.intersect(&b);
        assert_eq!(i.index(), Some(BigInt::from(36)));
        assert!(i.contains(&v(&[6, 6])));
        assert!(!i.contains(&v(&[2, 6])));
        let s = Lattice::from_generators(2, &[v(&[2, 4])]).saturation();
        assert_eq!(s, Lattice::from_generators(2, &[v(&[1, 2])]));
        let q = Lattice::from_generators(3, &[v(&[2, 0, 0]), v(&[0, 2, 0])]).quotient();
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.torsion_order(), BigInt::from(4));
        assert_eq!(q.torsion_representatives(100).unwrap().len(), 4);
    }

    #[test]
    fn solve_left_finds_combinations() {
        let rows = vec![v(&[2, 0]), v(&[1, 1])];
        let c = solve_left(&rows, 2, &v(&[3, 1])).unwrap();
        assert_eq!(combine(&c, &rows, 2), v(&[3, 1]));
        assert!(solve_left(&rows, 2, &v(&[1, 0])).is_none());
    }
}
