//! The Baumslag–Solitar group BS(1,2) = ⟨t, a | t·a·t⁻¹ = a²⟩ inside
//! GL₂(ℤ[1/2]) and its finite quotients modulo odd primes.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::arith::is_prime_u64;
use crate::nfield::{GroupDescription, Matrix, NumberField};
use crate::residue::build_residue_map;

/// ⟨t = diag(2, 1), a = [[1, 1], [0, 1]]⟩ over ℚ.
pub fn bs12_group() -> GroupDescription {
    let k = NumberField::rationals();
    let t = Matrix::from_i64(&k, &[&[2, 0], &[0, 1]]).expect("square");
    let a = Matrix::from_i64(&k, &[&[1, 1], &[0, 1]]).expect("square");
    GroupDescription::new(&k, 2, vec![("t".into(), t), ("a".into(), a)]).expect("valid generators")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bs12Row {
    pub prime: u64,
    /// Order of the image of a.
    pub order: u64,
    pub odd: bool,
    /// τ(t)·τ(a)·τ(t)⁻¹ = τ(a)².
    pub relation_holds: bool,
}

pub fn bs12_odd_order(primes: &[u64]) -> Result<Vec<Bs12Row>> {
    let g = bs12_group();
    let k = g.field().clone();
    let mats = g.matrices();
    let (t, a) = (&mats[0], &mats[1]);
    let t_inv = t.inverse()?;
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if p == 2 {
            return Err(Error::InvalidInput("2 is a denominator of the group".into()));
        }
        let map = build_residue_map(&k, &BigInt::from(p), &[BigInt::from(2)])?;
        let ring = map.ring();
        let (ti, ai, tinv) = (map.apply_matrix(t)?, map.apply_matrix(a)?, map.apply_matrix(&t_inv)?);
        let order = ring.matrix_order(&ai, p as usize + 1)?;
        let lhs = ring.mat_mul(&ring.mat_mul(&ti, &ai), &tinv);
        let relation_holds = lhs == ring.mat_mul(&ai, &ai);
        rows.push(Bs12Row { prime: p, order, odd: order % 2 == 1, relation_holds });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_orders() {
        let rows = bs12_odd_order(&[3, 5, 97]).unwrap();
        assert_eq!(rows.iter().map(|r| r.order).collect::<Vec<_>>(), vec![3, 5, 97]);
        assert!(rows.iter().all(|r| r.odd && r.relation_holds));
        assert!(matches!(bs12_odd_order(&[2]), Err(Error::InvalidInput(_))));
        assert!(matches!(bs12_odd_order(&[9]), Err(Error::NotPrime(_))));
    }

    #[test]
    fn exact_relation() {
        let g = bs12_group();
        let m = g.matrices();
        let lhs = m[0].mul(&m[1]).mul(&m[0].inverse().unwrap());
        assert_eq!(lhs, m[1].mul(&m[1]));
    }
}
