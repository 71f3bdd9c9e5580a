//! Simultaneous triangularization of commuting matrices over a number field.

use crate::error::{Error, Result};
use crate::exact::IntPoly;

use super::field::{FieldElement, NumberField};
use super::matrix::{solve_columns, GroupDescription, Matrix, Vector};
use super::roots::{factor_over_field, kpoly_to_string, KPoly};

/// A common eigenvector together with the eigenvalue of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonEigenvector {
    pub vector: Vector,
    pub eigenvalues: Vec<FieldElement>,
}

pub(crate) fn needs_extension(factor: &KPoly) -> Error {
    Error::NeedsFieldExtension {
        coefficients: factor
            .coeffs()
            .iter()
            .map(|c| c.coords().iter().map(crate::exact::arith::format_rational).collect())
            .collect(),
        factor: kpoly_to_string(factor),
    }
}

fn check_commuting(gens: &[Matrix]) -> Result<()> {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].commutes_with(&gens[j]) {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    Ok(())
}

fn unit_columns(field: &NumberField, n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

fn common_eigenvector_unchecked(field: &NumberField, n: usize, gens: &[Matrix]) -> Result<CommonEigenvector> {
    let mut w = unit_columns(field, n);
    for m in gens {
        let mw: Vec<Vector> = w.iter().map(|c| m.apply(c)).collect();
        let r = Matrix::from_columns(field, &solve_columns(&w, &mw))?;
        let fac = factor_over_field(&r.char_poly());
        let Some(lambda) = fac.roots.first() else {
            return Err(needs_extension(&fac.nonlinear[0]));
        };
        let shifted = r.sub(&Matrix::scalar(field, r.n(), lambda));
        let ker = shifted.kernel();
        w = ker
            .iter()
            .map(|k| {
                (0..n)
                    .map(|i| {
                        w.iter()
                            .zip(k)
                            .fold(field.zero(), |acc, (col, c)| &acc + &(&col[i] * c))
                    })
                    .collect()
            })
            .collect();
    }
    let vector = w.swap_remove(0);
    let pivot = vector.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
    let inv = vector[pivot].inverse()?;
    let eigenvalues = gens.iter().map(|m| &m.apply(&vector)[pivot] * &inv).collect();
    Ok(CommonEigenvector { vector, eigenvalues })
}

/// A vector v ≠ 0 with M·v = λ_M·v for every generator. Eigenvalues are
/// taken in descending coordinate order and kernel vectors from the reduced
/// row echelon form, so the result is deterministic.
pub fn common_eigenvector(gens: &[Matrix]) -> Result<CommonEigenvector> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    check_commuting(gens)?;
    common_eigenvector_unchecked(first.field(), first.n(), gens)
}

fn triangularizer(field: &NumberField, n: usize, gens: &[Matrix]) -> Result<Matrix> {
    if n == 1 || gens.iter().all(Matrix::is_upper_triangular) {
        return Ok(Matrix::identity(field, n));
    }
    let v = common_eigenvector_unchecked(field, n, gens)?.vector;
    let pivot = v.iter().position(|x| !x.is_zero()).unwrap();
    let mut cols = vec![v];
    cols.extend(unit_columns(field, n).into_iter().enumerate().filter(|(j, _)| *j != pivot).map(|(_, c)| c));
    let q = Matrix::from_columns(field, &cols)?;
    let q_inv = q.inverse()?;
    let blocks: Vec<Matrix> = gens.iter().map(|m| m.conjugate(&q, &q_inv).minor_block()).collect();
    let inner = triangularizer(field, n - 1, &blocks)?;
    Ok(q.mul(&inner.bordered()))
}

/// (P, G′) with G′ = P⁻¹·G·P upper triangular, generator by generator.
pub fn triangularize_abelian(g: &GroupDescription) -> Result<(Matrix, GroupDescription)> {
    let mats = g.matrices();
    check_commuting(&mats)?;
    let p = triangularizer(g.field(), g.n(), &mats)?;
    let p_inv = p.inverse()?;
    let gens = g
        .generators()
        .iter()
        .map(|(l, m)| (l.clone(), m.conjugate(&p, &p_inv)))
        .collect();
    Ok((p, GroupDescription::new(g.field(), g.n(), gens)?))
}

/// The field ℚ[x]/(f) for f irreducible of degree at least 2 over the base ℚ.
/// Rational matrices move into it with [`Matrix::embed_into`].
pub fn extend_by_rational_root(base: &NumberField, f: &IntPoly) -> Result<NumberField> {
    if !base.is_rationals() {
        return Err(Error::UnsupportedTower);
    }
    if f.degree() <= 1 {
        return Err(Error::Reducible(f.to_string()));
    }
    NumberField::new(f.clone())
}
