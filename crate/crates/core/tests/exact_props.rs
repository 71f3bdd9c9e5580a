mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use sepcert_core::exact::{factor_mod_p, lattice_kernel, smith_normal_form, IntMatrix, IntPoly, Lattice};

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

/// Determinant by exact rational elimination.
fn det(m: &IntMatrix) -> BigRational {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> =
        m.row_vectors().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Monic polynomials of degree d over ℤ/p, brute force.
fn monic_polys(d: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (0..p).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().map(|mut v| {
        v.push(1);
        v
    }).collect()
}

fn irreducible_by_search(g: &[u64], p: u64) -> bool {
    let deg = g.len() - 1;
    (1..=deg / 2).all(|d| monic_polys(d, p).iter().all(|h| oracle::trim(oracle::poly_rem(g, h, p)).len() > 0))
}

fn matrix_strategy(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in matrix_strategy(4, 4, 9)) {
        let a = int_matrix(&rows);
        let (d, u, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
        prop_assert!(det(&u).abs().is_one());
        prop_assert!(det(&v).abs().is_one());
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    prop_assert!(d.get(i, j).is_zero());
                }
            }
            prop_assert!(!d.get(i, i).is_negative());
            if i + 1 < 4 {
                let (x, y) = (d.get(i, i), d.get(i + 1, i + 1));
                let divides = if x.is_zero() { y.is_zero() } else { (y % x).is_zero() };
                prop_assert!(divides, "divisor chain broken at {}", i);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn factorization_mod_p_multiplies_back(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
        lower in prop::collection::vec(-40i64..=40, 0..=6),
        lead in 1i64..=4,
    ) {
        let mut c = lower.clone();
        c.push(lead);
        prop_assume!(lead % p as i64 != 0);
        let f = IntPoly::from_i64(&c).unwrap();
        let fac = factor_mod_p(&f, &BigInt::from(p)).unwrap();
        let mut prod = vec![1u64];
        for (g, e) in &fac {
            prop_assert_eq!(g.last(), Some(&1));
            prop_assert!(irreducible_by_search(g, p), "{:?} reducible mod {}", g, p);
            for _ in 0..*e {
                prod = oracle::poly_mul(&prod, g, p);
            }
        }
        let lc = lead.rem_euclid(p as i64) as u64;
        let scaled: Vec<u64> = prod.iter().map(|&x| x * lc % p).collect();
        let fbar: Vec<u64> = c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        prop_assert_eq!(oracle::trim(scaled), oracle::trim(fbar));
        let keys: Vec<(usize, Vec<u64>)> = fac.iter().map(|(g, _)| (g.len(), g.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        prop_assert_eq!(keys, sorted);
    }

    #[test]
    fn kernel_vectors_are_exact_and_complete(rows in (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| matrix_strategy(r, c, 4))) {
        let a = int_matrix(&rows);
        let cols = rows[0].len();
        let ker = lattice_kernel(&a);
        prop_assert_eq!(ker.len(), cols - rank(&rows));
        for v in &ker {
            for row in a.row_vectors() {
                let dot: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                prop_assert!(dot.is_zero());
            }
        }
        let span = Lattice::from_generators(cols, &ker);
        let mut v = vec![-5i64; cols];
        loop {
            let dot_zero = rows.iter().all(|r| r.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>() == 0);
            if dot_zero {
                let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                prop_assert!(span.contains(&bv), "{:?} missing from the kernel span", v);
            }
            let Some(i) = v.iter().position(|&x| x < 5) else { break };
            v[i] += 1;
            for x in &mut v[..i] {
                *x = -5;
            }
        }
    }
}
