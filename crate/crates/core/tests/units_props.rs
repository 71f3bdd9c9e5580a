use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use sepcert_core::nfield::is_root_of_unity;
use sepcert_core::units::{
    complement_subgroup, decompose_power, exponent_lattice, free_basis, torsion_relation_lattice,
};
use sepcert_core::{FieldElement, NumberField, Rational, UnitList};

const BOUND: u32 = 8;

/// Small rationals with only the primes 2, 3, 5.
const POOL: [(i64, i64); 10] = [(-1, 1), (2, 1), (3, 1), (5, 1), (4, 1), (6, 1), (9, 1), (1, 2), (10, 1), (-12, 1)];

fn q() -> NumberField {
    NumberField::rationals()
}

fn rat(k: &NumberField, (n, d): (i64, i64)) -> FieldElement {
    k.from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn product(units: &[FieldElement], e: &[BigInt]) -> FieldElement {
    units.iter().zip(e).fold(units[0].field().one(), |acc, (u, x)| &acc * &u.pow(x.to_i64().unwrap()).unwrap())
}

/// (sign, v_2, v_3, v_5) of a nonzero rational built from the pool.
fn key(x: &FieldElement) -> (bool, [i64; 3]) {
    let r = x.as_rational().unwrap();
    let mut v = [0i64; 3];
    for (i, p) in [2i64, 3, 5].into_iter().enumerate() {
        for (part, s) in [(r.numer().abs(), 1), (r.denom().abs(), -1)] {
            let mut n = part;
            while (&n % p).is_zero() {
                n /= p;
                v[i] += s;
            }
        }
    }
    (r.is_negative(), v)
}

fn mul_key(a: (bool, [i64; 3]), b: (bool, [i64; 3]), sign: i64) -> (bool, [i64; 3]) {
    (a.0 ^ b.0, [a.1[0] + sign * b.1[0], a.1[1] + sign * b.1[1], a.1[2] + sign * b.1[2]])
}

/// Index of ⟨sub⟩ in ⟨ambient⟩ by coset enumeration over a window of
/// exponents, with membership decided against an enumerated box of ⟨sub⟩.
fn coset_count(ambient: &[FieldElement], sub: &[FieldElement], window: i64, reach: i64) -> usize {
    let mut members: HashSet<(bool, [i64; 3])> = HashSet::from([(false, [0; 3])]);
    for s in sub {
        let ks = key(s);
        let mut next = HashSet::new();
        for m in &members {
            let mut acc = *m;
            for _ in 0..reach {
                acc = mul_key(acc, ks, 1);
                next.insert(acc);
            }
            let mut acc = *m;
            for _ in 0..reach {
                acc = mul_key(acc, ks, -1);
                next.insert(acc);
            }
            next.insert(*m);
        }
        members = next;
    }
    let mut reps: Vec<(bool, [i64; 3])> = Vec::new();
    let mut e = vec![0i64; ambient.len()];
    loop {
        let x = ambient.iter().zip(&e).fold((false, [0; 3]), |acc, (u, &k)| {
            (0..k).fold(acc, |a, _| mul_key(a, key(u), 1))
        });
        if !reps.iter().any(|r| members.contains(&mul_key(x, *r, -1))) {
            reps.push(x);
        }
        let Some(i) = e.iter().position(|&k| k < window) else { break };
        e[i] += 1;
        for k in &mut e[..i] {
            *k = 0;
        }
    }
    reps.len()
}

fn pool_units() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::sample::subsequence(POOL.to_vec(), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relation_vectors_give_roots_of_unity(picks in pool_units()) {
        let k = q();
        let units: Vec<FieldElement> = picks.iter().map(|&p| rat(&k, p)).collect();
        let list = UnitList::new(&k, units.clone(), BOUND).unwrap();
        for v in torsion_relation_lattice(&list).unwrap() {
            prop_assert!(is_root_of_unity(&product(&units, &v)).is_some(), "{:?}", v);
        }
        for v in exponent_lattice(&list).unwrap() {
            prop_assert!(product(&units, &v).is_one(), "{:?}", v);
        }
    }

    #[test]
    fn free_basis_is_free_and_spanning(picks in pool_units()) {
        let k = q();
        let units: Vec<FieldElement> = picks.iter().map(|&p| rat(&k, p)).collect();
        let list = UnitList::new(&k, units.clone(), BOUND).unwrap();
        let Ok(basis) = free_basis(&list) else {
            prop_assert!(units.iter().all(|u| is_root_of_unity(u).is_some()));
            return Ok(());
        };
        let p = basis.torsion_order as i64;
        let gens: Vec<FieldElement> = basis.basis_indices.iter().map(|&i| units[i].pow(p).unwrap()).collect();
        // No nontrivial relation among the basis powers with exponents in [−3, 3].
        let r = gens.len();
        let mut e = vec![-3i64; r];
        loop {
            if e.iter().any(|&x| x != 0) {
                let x = gens.iter().zip(&e).fold(k.one(), |acc, (g, &c)| &acc * &g.pow(c).unwrap());
                prop_assert!(!x.is_one(), "relation {:?}", e);
            }
            let Some(i) = e.iter().position(|&x| x < 3) else { break };
            e[i] += 1;
            for x in &mut e[..i] {
                *x = -3;
            }
        }
        // u_j^D always lies in ⟨gens⟩ times torsion; u_j^p does exactly when the basis spans the powers.
        let gkeys: Vec<[i64; 3]> = gens.iter().map(|g| key(g).1).collect();
        let d = basis.index.to_i64().unwrap();
        let window = 8 * d;
        let reached = |target: [i64; 3]| {
            let mut e = vec![-window; r];
            loop {
                let mut v = [0i64; 3];
                for (g, &c) in gkeys.iter().zip(&e) {
                    for t in 0..3 {
                        v[t] += c * g[t];
                    }
                }
                if v == target {
                    return true;
                }
                let Some(i) = e.iter().position(|&x| x < window) else { return false };
                e[i] += 1;
                for x in &mut e[..i] {
                    *x = -window;
                }
            }
        };
        let mut all_powers = true;
        for u in &units {
            let ku = key(u).1;
            prop_assert!(reached(ku.map(|x| x * d)), "{}^{} not reached", u, d);
            all_powers &= reached(ku.map(|x| x * p));
        }
        prop_assert_eq!(all_powers, basis.spans_powers);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn complement_index_matches_coset_enumeration(picks in pool_units(), mix in prop::collection::vec(0i64..=2, 3)) {
        let k = q();
        let ambient_units: Vec<FieldElement> = picks.iter().map(|&p| rat(&k, p)).collect();
        let ambient = UnitList::new(&k, ambient_units.clone(), BOUND).unwrap();
        let z = ambient_units.iter().zip(&mix).fold(k.one(), |acc, (u, &c)| &acc * &u.pow(c).unwrap());
        prop_assume!(is_root_of_unity(&z).is_none());
        let g = free_basis(&UnitList::new(&k, vec![z.clone()], BOUND).unwrap()).unwrap();
        let c = complement_subgroup(&ambient, &g).unwrap();
        let d = c.index.to_i64().unwrap();
        prop_assume!(d <= 16);
        let mut sub = c.generators.clone();
        sub.extend(g.generators().unwrap());
        prop_assert_eq!(coset_count(&ambient_units, &sub, d - 1, 24) as i64, d);

        // ν^d = κ·∏ z_i^{q_i}, re-multiplied exactly.
        let nu = ambient_units[0].clone();
        let dec = decompose_power(&nu, &c.index, &c).unwrap();
        let zs = g.generators().unwrap();
        let rhs = zs.iter().zip(&dec.q).fold(dec.kappa.clone(), |acc, (z, e)| &acc * &z.pow(e.to_i64().unwrap()).unwrap());
        prop_assert_eq!(nu.pow(d).unwrap(), rhs);
    }
}

#[test]
fn decompositions_over_the_rationals() {
    let k = q();
    let ambient = UnitList::new(&k, vec![k.from_int(-1), k.from_int(2), k.from_int(3)], BOUND).unwrap();
    let g = free_basis(&UnitList::new(&k, vec![k.from_int(4)], BOUND).unwrap()).unwrap();
    let c = complement_subgroup(&ambient, &g).unwrap();
    let d = c.index.clone();
    let mut counts = BTreeMap::new();
    for nu in [2, 3, 1] {
        let dec = decompose_power(&k.from_int(nu), &d, &c).unwrap();
        counts.insert(nu, (dec.kappa.clone(), dec.q.clone()));
        let zs = g.generators().unwrap();
        let rhs = zs.iter().zip(&dec.q).fold(dec.kappa, |acc, (z, e)| &acc * &z.pow(e.to_i64().unwrap()).unwrap());
        assert_eq!(k.from_int(nu).pow(d.to_i64().unwrap()).unwrap(), rhs);
    }
    assert!(counts[&1].0.is_one());
    assert!(counts[&1].1.iter().all(Zero::is_zero));
}
