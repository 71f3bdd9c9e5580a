//! Separation from the Borel subgroup and from the trivial group.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::arith::next_prime;
use crate::exact::Integer;
use crate::nfield::{FieldElement, GroupDescription, Matrix, NumberField};
use crate::residue::{build_residue_map, FiniteMatrix, HomDescription, ResidueMap};

/// Distinct denominators above 1 of the entries of the matrices and their
/// inverses, ascending.
pub fn denominators(mats: &[Matrix]) -> Result<Vec<Integer>> {
    let mut out: Vec<Integer> = Vec::new();
    for m in mats {
        for x in [m.clone(), m.inverse()?] {
            for e in x.rows().iter().flatten() {
                let d = e.denominator();
                if !d.is_one() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn admissible_prime(q: u64, field: &NumberField, avoid: &[Integer]) -> Option<ResidueMap> {
    build_residue_map(field, &BigInt::from(q), avoid).ok()
}

fn primes_up_to(limit: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(2u64), |&p| Some(next_prime(p))).take_while(move |&p| p <= limit)
}

/// Residue map modulo p that exposes a lower-triangular entry of h.
#[derive(Clone, Debug)]
pub struct BorelSeparation {
    pub prime: u64,
    /// Position (row, column) of the surviving entry below the diagonal.
    pub entry: (usize, usize),
    pub hom: HomDescription,
    pub h_image: FiniteMatrix,
}

impl BorelSeparation {
    /// The image of h has a nonzero entry below the diagonal, while every
    /// upper triangular matrix maps to an upper triangular one.
    pub fn image_is_lower(&self) -> bool {
        let ring = self.hom.components()[0].ring();
        !ring.is_zero(self.h_image.entry(self.entry.0, self.entry.1))
    }
}

fn lower_entry(h: &Matrix) -> Option<(usize, usize, FieldElement)> {
    let n = h.n();
    (1..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .find(|&(i, j)| !h.get(i, j).is_zero())
        .map(|(i, j)| (i, j, h.get(i, j).clone()))
}

/// Smallest prime p, coprime to the denominators of Γ and h and to the field
/// discriminant, that does not divide the norm of the first nonzero entry of
/// h below the diagonal.
pub fn separate_from_borel(gamma: &GroupDescription, h: &Matrix, search_limit: u64) -> Result<BorelSeparation> {
    let (i, j, c) = lower_entry(h).ok_or_else(|| Error::NotApplicable("h is upper triangular".into()))?;
    let mut mats = gamma.matrices();
    mats.push(h.clone());
    let avoid = denominators(&mats)?;
    let norm = c.norm();
    let num = norm.numer().clone();
    for p in primes_up_to(search_limit) {
        if num.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        let Some(map) = admissible_prime(p, gamma.field(), &avoid) else { continue };
        let h_image = map.apply_matrix(h)?;
        let sep = BorelSeparation { prime: p, entry: (i, j), hom: HomDescription::single(map), h_image };
        if sep.image_is_lower() {
            return Ok(sep);
        }
    }
    Err(Error::ModulusNotFound(search_limit))
}

/// Smallest admissible prime under which h does not map to the identity.
pub(crate) fn separate_from_identity(
    field: &NumberField,
    h: &Matrix,
    avoid: &[Integer],
    search_limit: u64,
) -> Result<HomDescription> {
    if h.is_identity() {
        return Err(Error::InSubgroup);
    }
    for p in primes_up_to(search_limit) {
        let Some(map) = admissible_prime(p, field, avoid) else { continue };
        let Ok(img) = map.apply_matrix(h) else { continue };
        if img != map.ring().identity(h.n()) {
            return Ok(HomDescription::single(map));
        }
    }
    Err(Error::ModulusNotFound(search_limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn bs12() -> GroupDescription {
        let k = q();
        let t = Matrix::from_i64(&k, &[&[2, 0], &[0, 1]]).unwrap();
        let a = Matrix::from_i64(&k, &[&[1, 1], &[0, 1]]).unwrap();
        GroupDescription::new(&k, 2, vec![("t".into(), t), ("a".into(), a)]).unwrap()
    }

    #[test]
    fn borel_examples() {
        let k = q();
        let g = bs12();
        let s = separate_from_borel(&g, &Matrix::from_i64(&k, &[&[1, 0], &[1, 1]]).unwrap(), 1000).unwrap();
        assert_eq!((s.prime, s.entry), (3, (1, 0)));
        assert!(s.image_is_lower());
        let s = separate_from_borel(&g, &Matrix::from_i64(&k, &[&[1, 0], &[6, 1]]).unwrap(), 1000).unwrap();
        assert_eq!(s.prime, 5);
        let up = Matrix::from_i64(&k, &[&[3, 1], &[0, 1]]).unwrap();
        assert!(matches!(separate_from_borel(&g, &up, 1000), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn identity_separation() {
        let k = q();
        let avoid = vec![BigInt::from(2), BigInt::from(3)];
        let h = Matrix::from_i64(&k, &[&[3, 0], &[0, 1]]).unwrap();
        let hom = separate_from_identity(&k, &h, &avoid, 1000).unwrap();
        assert_eq!(hom.components()[0].modulus(), 5);
        let h = Matrix::from_rationals(
            &k,
            &[vec![Rational::new(7.into(), 2.into()), Rational::from_integer(0.into())], vec![
                Rational::from_integer(0.into()),
                Rational::from_integer(1.into()),
            ]],
        )
        .unwrap();
        assert_eq!(separate_from_identity(&k, &h, &avoid, 1000).unwrap().components()[0].modulus(), 7);
        assert_eq!(
            separate_from_identity(&k, &Matrix::identity(&k, 2), &avoid, 1000).unwrap_err(),
            Error::InSubgroup
        );
    }
}
