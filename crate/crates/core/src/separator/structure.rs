//! Diagonal characters of upper triangular abelian groups: unipotent
//! elements, exact membership and the splitting S ⊇ S₁ ⊇ S⁺.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{combine, normalize_sign, solve_left};
use crate::exact::{Integer, Lattice};
use crate::nfield::{triangularize_abelian, GroupDescription, Matrix, NumberField};
use crate::units::{analyze, UnitList};

type IntVec = Vec<Integer>;

/// (M − I)^n = 0.
pub fn is_unipotent(m: &Matrix) -> bool {
    let n = m.n();
    let nil = m.sub(&Matrix::identity(m.field(), n));
    let mut acc = Matrix::identity(m.field(), n);
    for _ in 0..n {
        acc = acc.mul(&nil);
    }
    acc.rows().iter().flatten().all(|e| e.is_zero())
}

/// ∏ g_i^{e_i}, left to right.
pub fn word(gens: &[Matrix], e: &[Integer], n: usize, field: &NumberField) -> Result<Matrix> {
    let mut acc = Matrix::identity(field, n);
    for (g, k) in gens.iter().zip(e) {
        if k.is_zero() {
            continue;
        }
        let k = k.to_i64().ok_or_else(|| Error::InvalidInput("exponent out of range".into()))?;
        acc = acc.mul(&g.pow(k)?);
    }
    Ok(acc)
}

pub(crate) fn group_word(g: &GroupDescription, e: &[Integer]) -> Result<Matrix> {
    word(&g.matrices(), e, g.n(), g.field())
}

/// {e : ∏ g^e has all diagonal entries 1} for upper triangular generators.
pub fn diagonal_kernel(gens: &[Matrix], n: usize, relation_bound: u32) -> Result<Lattice> {
    let k = gens.len();
    let mut lat = Lattice::full(k);
    if k == 0 {
        return Ok(lat);
    }
    for s in 0..n {
        let field = gens[0].field();
        let list = UnitList::new(field, gens.iter().map(|g| g.get(s, s).clone()).collect(), relation_bound)?;
        lat = lat.intersect(&analyze(&list)?.exact);
    }
    Ok(lat)
}

/// Exponents e with diag(∏ g^e) = diag(x), for upper triangular generators.
pub fn diagonal_log(gens: &[Matrix], x: &Matrix, relation_bound: u32) -> Result<Option<IntVec>> {
    let k = gens.len();
    let n = x.n();
    if (0..n).any(|s| x.get(s, s).is_zero()) {
        return Ok(None);
    }
    let mut lat = Lattice::full(k + 1);
    for s in 0..n {
        let mut units: Vec<_> = gens.iter().map(|g| g.get(s, s).clone()).collect();
        units.push(x.get(s, s).clone());
        let list = UnitList::new(x.field(), units, relation_bound)?;
        lat = lat.intersect(&analyze(&list)?.exact);
    }
    let basis = lat.basis();
    let last: Vec<IntVec> = basis.iter().map(|b| vec![b[k].clone()]).collect();
    let Some(c) = solve_left(&last, 1, &[BigInt::one()]) else {
        return Ok(None);
    };
    let rel = combine(&c, basis, k + 1);
    Ok(Some(rel[..k].iter().map(|v| -v).collect()))
}

/// Outcome of a unipotent-freeness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentCheck {
    pub free: bool,
    /// A non-trivial unipotent element of the group, in the input basis.
    pub witness: Option<Matrix>,
    /// Its exponents over the generators.
    pub exponents: Option<IntVec>,
}

/// Triangularizes the abelian group and inspects the kernel of the diagonal
/// characters: the group is unipotent-free iff every basis element of that
/// kernel evaluates to the identity.
pub fn check_unipotent_free(h: &GroupDescription, relation_bound: u32) -> Result<UnipotentCheck> {
    let (_, t) = triangularize_abelian(h)?;
    let ker = diagonal_kernel(&t.matrices(), h.n(), relation_bound)?;
    for b in ker.basis() {
        let mut e = b.clone();
        normalize_sign(&mut e);
        let w = group_word(h, &e)?;
        if !w.is_identity() {
            return Ok(UnipotentCheck { free: false, witness: Some(w), exponents: Some(e) });
        }
    }
    Ok(UnipotentCheck { free: true, witness: None, exponents: None })
}

pub(crate) fn require_unipotent_free(h: &GroupDescription, relation_bound: u32) -> Result<()> {
    let c = check_unipotent_free(h, relation_bound)?;
    match c.witness {
        Some(w) => Err(Error::NotUnipotentFree { witness: w.to_string() }),
        None => Ok(()),
    }
}

/// Exact membership of x in an upper triangular unipotent-free abelian group.
pub(crate) fn triangular_membership(gens: &[Matrix], x: &Matrix, relation_bound: u32) -> Result<Option<IntVec>> {
    if !x.is_upper_triangular() {
        return Ok(None);
    }
    let Some(e) = diagonal_log(gens, x, relation_bound)? else {
        return Ok(None);
    };
    let w = word(gens, &e, x.n(), x.field())?;
    Ok((w == *x).then_some(e))
}

/// Exponents of x over the generators of an abelian unipotent-free group,
/// or None when x lies outside it.
pub fn abelian_membership(h: &GroupDescription, x: &Matrix, relation_bound: u32) -> Result<Option<IntVec>> {
    if x.field() != h.field() {
        return Err(Error::MixedFields);
    }
    if x.n() != h.n() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    require_unipotent_free(h, relation_bound)?;
    let (p, t) = triangularize_abelian(h)?;
    let p_inv = p.inverse()?;
    triangular_membership(&t.matrices(), &x.conjugate(&p, &p_inv), relation_bound)
}

/// S⁺ = S ∩ U⁺, a finite-index S₁ ⊇ S⁺ with S₁/S⁺ free abelian, and coset
/// representatives of S₁ in S. Exponent vectors are over the generators of S.
#[derive(Clone, Debug)]
pub struct SPlusSplit {
    pub s_plus: Vec<Matrix>,
    pub s_plus_exponents: Vec<IntVec>,
    /// Generators that together with S⁺ generate S₁.
    pub free: Vec<Matrix>,
    pub free_exponents: Vec<IntVec>,
    pub reps: Vec<Matrix>,
    pub rep_exponents: Vec<IntVec>,
}

impl SPlusSplit {
    /// Rank of S₁/S⁺.
    pub fn rank(&self) -> usize {
        self.free.len()
    }
}

pub fn split_s_plus(s: &GroupDescription, relation_bound: u32, rep_limit: usize) -> Result<SPlusSplit> {
    let gens = s.matrices();
    if gens.iter().any(|g| !g.is_upper_triangular()) {
        return Err(Error::InvalidInput("generators must be upper triangular".into()));
    }
    if let Some((i, j)) = s.non_commuting_pair() {
        return Err(Error::NotCommuting(i, j));
    }
    let ker = diagonal_kernel(&gens, s.n(), relation_bound)?;
    let mut s_plus = Vec::new();
    let mut s_plus_exponents = Vec::new();
    for b in ker.basis() {
        let mut e = b.clone();
        normalize_sign(&mut e);
        let w = group_word(s, &e)?;
        if !w.is_identity() {
            s_plus.push(w);
            s_plus_exponents.push(e);
        }
    }
    let quotient = ker.quotient();
    let mut free = Vec::new();
    let mut free_exponents = Vec::new();
    for mut e in quotient.free_lifts() {
        normalize_sign(&mut e);
        free.push(group_word(s, &e)?);
        free_exponents.push(e);
    }
    let rep_exponents = quotient.torsion_representatives(rep_limit).ok_or(Error::CapExceeded(rep_limit))?;
    let reps = rep_exponents.iter().map(|e| group_word(s, e)).collect::<Result<_>>()?;
    Ok(SPlusSplit { s_plus, s_plus_exponents, free, free_exponents, reps, rep_exponents })
}
