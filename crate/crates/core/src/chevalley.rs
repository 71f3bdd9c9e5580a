//! Moduli q such that every element of a unit subgroup that is congruent to
//! 1 modulo q is an r-th power inside the subgroup.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::arith::factor_integer;
use crate::exact::factor::{fp_factor, reduce_mod_p};
use crate::exact::matrix::{scale_vec, sub_vec, unit_vec};
use crate::exact::{lattice_kernel, IntMatrix, Integer, Lattice};
use crate::nfield::{FieldElement, NumberField};
use crate::residue::{build_residue_map, FiniteRing, HomDescription, ResidueMap};
use crate::units::{analyze, UnitList};

pub const DEFAULT_SEARCH_LIMIT: u64 = 100_000;

/// Largest image subgroup enumerated for a single candidate modulus.
const IMAGE_CAP: usize = 1_000_000;

type IntVec = Vec<Integer>;

/// A certified modulus together with the presentation of the image of the
/// unit subgroup in the residue units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyModulus {
    pub q: u64,
    pub r: u64,
    pub units: UnitList,
    /// k_i: smallest k with x_i^k in the subgroup generated by x_1..x_(i−1).
    pub image_steps: Vec<u64>,
    /// Triangular basis of the kernel of ℤ^m → residue units.
    pub kernel: Vec<IntVec>,
    /// Number of candidate moduli examined, including the winner.
    pub candidates_tested: u64,
}

impl ChevalleyModulus {
    pub fn image_order(&self) -> u64 {
        self.image_steps.iter().product()
    }
}

/// Kernel of the map e ↦ ∏ x_i^{e_i} into the units of a finite ring, by
/// incremental enumeration of the image subgroup. Gives up as soon as a
/// kernel vector fails `keep`.
fn image_kernel<F>(ring: &FiniteRing, images: &[Vec<u64>], cap: usize, keep: F) -> Option<(Vec<u64>, Vec<IntVec>)>
where
    F: Fn(&IntVec) -> bool,
{
    let m = images.len();
    let mut table: HashMap<Vec<u64>, Vec<i64>> = HashMap::new();
    table.insert(ring.one(), vec![0; m]);
    let mut steps = Vec::with_capacity(m);
    let mut kernel = Vec::with_capacity(m);
    for (i, x) in images.iter().enumerate() {
        let mut k = 1u64;
        let mut pw = x.clone();
        let coset_exps = loop {
            if let Some(e) = table.get(&pw) {
                break e.clone();
            }
            pw = ring.mul(&pw, x);
            k += 1;
            if k as usize > cap {
                return None;
            }
        };
        let mut rel: IntVec = coset_exps.iter().map(|&c| BigInt::from(-c)).collect();
        rel[i] = BigInt::from(k);
        if !keep(&rel) {
            return None;
        }
        kernel.push(rel);
        steps.push(k);
        if table.len().saturating_mul(k as usize) > cap {
            return None;
        }
        let base: Vec<(Vec<u64>, Vec<i64>)> = table.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        let mut xt = x.clone();
        for t in 1..k {
            for (elem, exps) in &base {
                let mut e = exps.clone();
                e[i] = t as i64;
                table.insert(ring.mul(elem, &xt), e);
            }
            xt = ring.mul(&xt, x);
        }
    }
    Some((steps, kernel))
}

/// Largest prime order handled by baby-step giant-step.
const BSGS_LIMIT: u128 = 1 << 40;

fn bsgs(ring: &FiniteRing, g: &[u64], h: &[u64], n: u128) -> Option<u128> {
    let m = (n as f64).sqrt().ceil() as u128 + 1;
    let mut table = HashMap::new();
    let mut x = ring.one();
    for j in 0..m {
        table.entry(x.clone()).or_insert(j);
        x = ring.mul(&x, g);
    }
    let step = ring_pow(ring, g, (n - m % n) % n);
    let mut y = h.to_vec();
    for i in 0..=m {
        if let Some(&j) = table.get(&y) {
            return Some((i * m + j) % n);
        }
        y = ring.mul(&y, &step);
    }
    None
}

/// Pohlig–Hellman logarithm of h to the base of a generator of a cyclic
/// group of order c.
fn discrete_log(ring: &FiniteRing, g: &[u64], h: &[u64], c: u128, primes: &[(u128, u32)]) -> Option<BigInt> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(l, e) in primes {
        let le = l.pow(e);
        let ge = ring_pow(ring, g, c / le);
        let he = ring_pow(ring, h, c / le);
        let g0 = ring_pow(ring, &ge, le / l);
        let (mut xl, mut lk) = (0u128, 1u128);
        for _ in 0..e {
            let t = ring.mul(&ring_pow(ring, &ge, (le - xl) % le), &he);
            let d = bsgs(ring, &g0, &ring_pow(ring, &t, le / (lk * l)), l)?;
            xl += d * lk;
            lk *= l;
        }
        // x ≡ xl (mod l^e), combined with the previous residues.
        let le = BigInt::from(le);
        let inv = modulus.extended_gcd(&le).x;
        let t = ((BigInt::from(xl) - &x) * inv).mod_floor(&le);
        x += &modulus * t;
        modulus *= le;
    }
    Some(x)
}

fn primitive_element(ring: &FiniteRing, c: u128, primes: &[(u128, u32)]) -> Option<Vec<u64>> {
    let (q, d) = (ring.modulus() as u128, ring.degree());
    let one = ring.one();
    (1..(c + 1).min(1 << 20)).find_map(|mut n| {
        let x: Vec<u64> = (0..d)
            .map(|_| {
                let digit = (n % q) as u64;
                n /= q;
                digit
            })
            .collect();
        primes.iter().all(|&(l, _)| ring_pow(ring, &x, c / l) != one).then_some(x)
    })
}

/// As [`image_kernel`], through discrete logarithms in ∏ F_(p^d)^× when q
/// is squarefree and f is squarefree mod every prime p | q. `None` when
/// that does not apply.
fn log_image_kernel<F>(f: &[Integer], q: u64, images: &[Vec<u64>], cap: usize, keep: F) -> Option<Option<(Vec<u64>, Vec<IntVec>)>>
where
    F: Fn(&IntVec) -> bool,
{
    let mut components = Vec::new();
    for (p, e) in factor_integer(&BigInt::from(q)) {
        let p = p.to_u64()?;
        if e > 1 {
            return None;
        }
        for (g, mult) in fp_factor(&reduce_mod_p(f, p), p) {
            if mult > 1 {
                return None;
            }
            components.push(FiniteRing::new(p, g).ok()?);
        }
    }
    let m = images.len();
    let t = components.len();
    // Rows of [A | diag(c)], one per cyclic factor.
    let mut rows: Vec<IntVec> = Vec::with_capacity(t);
    for (j, ring) in components.iter().enumerate() {
        let c = (ring.modulus() as u128).checked_pow(ring.degree() as u32)? - 1;
        let primes = factor_integer(&BigInt::from(c))
            .iter()
            .map(|(l, e)| Some((l.to_u128()?, *e)))
            .collect::<Option<Vec<_>>>()?;
        if primes.iter().any(|&(l, _)| l > BSGS_LIMIT) {
            return None;
        }
        let gen = primitive_element(ring, c, &primes)?;
        let mut row = vec![BigInt::zero(); m + t];
        for (i, x) in images.iter().enumerate() {
            row[i] = discrete_log(ring, &gen, &ring.reduce_poly(x), c, &primes)?;
        }
        row[m + j] = BigInt::from(c);
        rows.push(row);
    }
    // The kernel, with coordinates reversed so that the row Hermite form is
    // lower triangular in the original order.
    let gens: Vec<IntVec> = lattice_kernel(&IntMatrix::from_rows(rows).ok()?)
        .into_iter()
        .map(|v| v[..m].iter().rev().cloned().collect())
        .collect();
    let hnf = Lattice::from_generators(m, &gens);
    if hnf.rank() != m {
        return None;
    }
    let mut basis: Vec<IntVec> = hnf.basis().iter().rev().map(|v| v.iter().rev().cloned().collect()).collect();
    let mut steps = Vec::with_capacity(m);
    let mut order = 1u128;
    for i in 0..m {
        let (head, tail) = basis.split_at_mut(i);
        let row = &mut tail[0];
        for j in (0..i).rev() {
            let k = &head[j][j];
            let shift = (&row[j] + k - 1u32).div_floor(k);
            if !shift.is_zero() {
                *row = sub_vec(row, &scale_vec(&head[j], &shift));
            }
        }
        if !keep(row) {
            return Some(None);
        }
        let k = row[i].to_u64()?;
        order = order.saturating_mul(k as u128);
        if order > cap as u128 {
            return Some(None);
        }
        steps.push(k);
    }
    Some(Some((steps, basis)))
}

fn admissible(q: u64, avoid: &[Integer], disc: &Integer) -> bool {
    let bq = BigInt::from(q);
    disc.gcd(&bq).is_one() && avoid.iter().all(|a| a.gcd(&bq).is_one())
}

struct Candidate {
    steps: Vec<u64>,
    kernel: Vec<IntVec>,
}

/// Order of the unit group of ℤ[x]/(f, q), and for squarefree q its cyclic
/// factors. Over p^e ∥ q the ring is a product of local rings with residue
/// fields of size p^deg(g), one for each distinct irreducible factor g of f
/// mod p; when e = 1 those fields are the whole story.
fn unit_group_structure(f: &[Integer], q: u64) -> Option<(u128, Option<Vec<u128>>)> {
    let n = (f.len() - 1) as u32;
    let mut total = 1u128;
    let mut cyclic = Some(Vec::new());
    for (p, e) in factor_integer(&BigInt::from(q)) {
        let p = p.to_u64()? as u128;
        let factors = fp_factor(&reduce_mod_p(f, p as u64), p as u64);
        let spent: u32 = factors.iter().map(|(g, _)| (g.len() - 1) as u32).sum();
        let mut local = p.checked_pow(e * n - spent)?;
        for (g, _) in &factors {
            let c = p.checked_pow((g.len() - 1) as u32)? - 1;
            local = local.checked_mul(c)?;
            if let Some(cs) = cyclic.as_mut() {
                cs.push(c);
            }
        }
        if e > 1 || spent < n {
            cyclic = None;
        }
        total = total.checked_mul(local)?;
    }
    Some((total, cyclic))
}

fn valuation_u128(mut x: u128, l: u128) -> u32 {
    let mut v = 0;
    while x % l == 0 {
        x /= l;
        v += 1;
    }
    v
}

/// Whether an abelian group with the given ℓ-adic invariant valuations can be
/// a quotient of a subgroup of ∏ ℤ/c_j.
fn fits(local: &[(u128, Vec<u32>)], cyclic: &[u128]) -> bool {
    local.iter().all(|(l, a)| {
        let mut b: Vec<u32> = cyclic.iter().map(|&c| valuation_u128(c, *l)).collect();
        b.sort_unstable_by(|x, y| y.cmp(x));
        a.iter().enumerate().all(|(i, &ai)| ai <= b.get(i).copied().unwrap_or(0))
    })
}

fn ring_pow(ring: &FiniteRing, x: &[u64], mut e: u128) -> Vec<u64> {
    let mut acc = ring.one();
    let mut b = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = ring.mul(&b, &b);
        }
    }
    acc
}

/// Order of a unit from a multiple of it and that multiple's factorization.
fn element_order(ring: &FiniteRing, x: &[u64], group_order: u128, primes: &[u128]) -> u128 {
    let one = ring.one();
    let mut ord = group_order;
    for &p in primes {
        while ord % p == 0 && ring_pow(ring, x, ord / p) == one {
            ord /= p;
        }
    }
    ord
}

/// The target lattice and its index, shared by every candidate modulus.
struct Target {
    lattice: Lattice,
    index: Integer,
    /// For each prime ℓ dividing the index, the ℓ-adic valuations of the
    /// invariant factors of ℤ^m / lattice, largest first.
    local: Vec<(u128, Vec<u32>)>,
}

impl Target {
    fn new(lattice: Lattice) -> Self {
        let index = lattice.index().expect("contains r·ℤ^m");
        let invariants: Vec<u128> = lattice.quotient().invariants.iter().filter_map(|d| d.to_u128()).collect();
        let local = factor_integer(&index)
            .iter()
            .filter_map(|(l, _)| l.to_u128())
            .map(|l| {
                let mut a: Vec<u32> =
                    invariants.iter().map(|&d| valuation_u128(d, l)).filter(|&v| v > 0).collect();
                a.sort_unstable_by(|x, y| y.cmp(x));
                (l, a)
            })
            .collect();
        Target { lattice, index, local }
    }
}

fn test_modulus(field: &NumberField, units: &[(FieldElement, FieldElement)], target: &Target, q: u64) -> Option<Candidate> {
    // Cheap necessary conditions first: [ℤ^m : target] divides the image
    // order, which divides the unit group order, and ℤ^m / target is a
    // quotient of the image.
    let structure = unit_group_structure(field.minimal_poly().coeffs(), q);
    if let Some((order, cyclic)) = &structure {
        if !(BigInt::from(*order) % &target.index).is_zero() {
            return None;
        }
        if cyclic.as_ref().is_some_and(|c| !fits(&target.local, c)) {
            return None;
        }
    }
    let ring = FiniteRing::new(q, reduce_mod_p(field.minimal_poly().coeffs(), q)).ok()?;
    let map = ResidueMap::with_ring(field, ring.clone(), &[]).ok()?;
    let mut images = Vec::with_capacity(units.len());
    for (u, ui) in units {
        let x = map.apply_element(u).ok()?;
        let xi = map.apply_element(ui).ok()?;
        if ring.mul(&x, &xi) != ring.one() {
            return None;
        }
        images.push(x);
    }
    // Each ord(x_i)·e_i is a kernel vector, and the image is at least as
    // large as the lcm of the orders.
    if let Some((order, _)) = structure {
        let primes: Vec<u128> = factor_integer(&BigInt::from(order))
            .iter()
            .filter_map(|(p, _)| p.to_u128())
            .collect();
        let m = units.len();
        let mut lcm = 1u128;
        for (i, x) in images.iter().enumerate() {
            let k = element_order(&ring, x, order, &primes);
            if !target.lattice.contains(&scale_vec(&unit_vec(m, i), &BigInt::from(k))) {
                return None;
            }
            lcm = lcm.lcm(&k);
            if lcm > IMAGE_CAP as u128 {
                return None;
            }
        }
    }
    let keep = |v: &IntVec| target.lattice.contains(v);
    let (steps, kernel) = match log_image_kernel(field.minimal_poly().coeffs(), q, &images, IMAGE_CAP, keep) {
        Some(found) => found?,
        None => image_kernel(&ring, &images, IMAGE_CAP, keep)?,
    };
    Some(Candidate { steps, kernel })
}

fn with_inverses(units: &UnitList) -> Result<Vec<(FieldElement, FieldElement)>> {
    units.units().iter().map(|u| Ok((u.clone(), u.inverse()?))).collect()
}

/// r·ℤ^m + (exact relations of the unit list).
pub(crate) fn power_lattice(units: &UnitList, r: u64) -> Result<Lattice> {
    let m = units.len();
    let s = analyze(units)?;
    let mut gens: Vec<IntVec> = (0..m).map(|i| scale_vec(&unit_vec(m, i), &BigInt::from(r))).collect();
    gens.extend(s.exact.basis().iter().cloned());
    Ok(Lattice::from_generators(m, &gens))
}

/// Whether q certifies the r-th power property for the unit list.
pub fn certifies(units: &UnitList, r: u64, q: u64) -> Result<bool> {
    let target = Target::new(power_lattice(units, r)?);
    Ok(test_modulus(units.field(), &with_inverses(units)?, &target, q).is_some())
}

/// Smallest admissible q ≤ search_limit whose kernel lies in r·ℤ^m + Λ₀.
pub fn chevalley_modulus(units: &UnitList, r: u64, avoid: &[Integer], search_limit: u64) -> Result<ChevalleyModulus> {
    chevalley_modulus_parallel(units, r, avoid, search_limit, 1)
}

/// As [`chevalley_modulus`], testing candidates on `jobs` threads. The
/// smallest certified modulus is returned regardless of completion order.
pub fn chevalley_modulus_parallel(
    units: &UnitList,
    r: u64,
    avoid: &[Integer],
    search_limit: u64,
    jobs: usize,
) -> Result<ChevalleyModulus> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let field = units.field();
    let disc = field.discriminant();
    let target = Target::new(power_lattice(units, r)?);
    // A certified image surjects onto ℤ^m / target, so it cannot fit under
    // the enumeration cap when that quotient alone does not.
    if target.index > BigInt::from(IMAGE_CAP) {
        return Err(Error::CapExceeded(IMAGE_CAP));
    }
    let pairs = with_inverses(units)?;
    let found = |q: u64| -> Option<Candidate> {
        if !admissible(q, avoid, &disc) {
            return None;
        }
        test_modulus(field, &pairs, &target, q)
    };
    let result = if jobs <= 1 {
        (2..=search_limit).find_map(|q| found(q).map(|c| (q, c)))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        let chunk = 64 * jobs as u64;
        let mut start = 2u64;
        let mut hit = None;
        while start <= search_limit && hit.is_none() {
            let end = (start + chunk - 1).min(search_limit);
            hit = pool.install(|| (start..=end).into_par_iter().find_map_first(|q| found(q).map(|c| (q, c))));
            start = end + 1;
        }
        hit
    };
    let (q, c) = result.ok_or(Error::ModulusNotFound(search_limit))?;
    Ok(ChevalleyModulus {
        q,
        r,
        units: units.clone(),
        image_steps: c.steps,
        kernel: c.kernel,
        candidates_tested: q - 1,
    })
}

/// The certified modulus paired with the residue map onto ℤ[x]/(f, q).
pub fn power_residue_map(
    field: &NumberField,
    units: &UnitList,
    r: u64,
    avoid: &[Integer],
    search_limit: u64,
) -> Result<(ChevalleyModulus, HomDescription)> {
    if units.field() != field {
        return Err(Error::MixedFields);
    }
    let cm = chevalley_modulus(units, r, avoid, search_limit)?;
    let map = build_residue_map(field, &BigInt::from(cm.q), avoid)?;
    Ok((cm, HomDescription::single(map)))
}

/// Whether every kernel vector of the certificate is in r·ℤ^m + Λ₀.
pub fn check_certificate(cm: &ChevalleyModulus) -> Result<bool> {
    let target = power_lattice(&cm.units, cm.r)?;
    Ok(cm.kernel.iter().all(|v| target.contains(v)) && cm.kernel.iter().all(|v| !v.iter().all(Zero::is_zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::DEFAULT_RELATION_BOUND;

    fn ul(xs: &[i64]) -> UnitList {
        let k = NumberField::rationals();
        UnitList::new(&k, xs.iter().map(|&x| k.from_int(x)).collect(), DEFAULT_RELATION_BOUND).unwrap()
    }

    fn two() -> Vec<Integer> {
        vec![BigInt::from(2)]
    }

    #[test]
    fn examples() {
        let cm = chevalley_modulus(&ul(&[-1, 2]), 2, &two(), DEFAULT_SEARCH_LIMIT).unwrap();
        assert_eq!(cm.q, 15);
        assert_eq!(cm.image_order(), 8);
        assert!(check_certificate(&cm).unwrap());
        assert_eq!(chevalley_modulus(&ul(&[2]), 2, &two(), DEFAULT_SEARCH_LIMIT).unwrap().q, 3);
        assert_eq!(chevalley_modulus(&ul(&[1]), 5, &two(), DEFAULT_SEARCH_LIMIT).unwrap().q, 3);
        assert_eq!(chevalley_modulus(&ul(&[1]), 5, &[], DEFAULT_SEARCH_LIMIT).unwrap().q, 2);
        assert!(certifies(&ul(&[-1, 2]), 2, 105).unwrap());
        assert!(!certifies(&ul(&[-1, 2]), 2, 13).unwrap());
        assert_eq!(
            chevalley_modulus(&ul(&[-1, 2]), 2, &two(), 14),
            Err(Error::ModulusNotFound(14))
        );
    }

    #[test]
    fn parallel_search_agrees() {
        let a = chevalley_modulus(&ul(&[-1, 2, 3]), 4, &[BigInt::from(6)], DEFAULT_SEARCH_LIMIT).unwrap();
        let b = chevalley_modulus_parallel(&ul(&[-1, 2, 3]), 4, &[BigInt::from(6)], DEFAULT_SEARCH_LIMIT, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn logarithms_match_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (f, q) in [(vec![0i64, 1], 101u64), (vec![1, 0, 1], 13), (vec![1, 0, 1], 17), (vec![1, 0, 1], 221), (vec![-2, 0, 1], 77), (vec![3, 0, 1], 11), (vec![1, 1, 0, 1], 7)] {
            let f: Vec<Integer> = f.into_iter().map(BigInt::from).collect();
            let ring = FiniteRing::new(q, reduce_mod_p(&f, q)).unwrap();
            for _ in 0..20 {
                let m = rng.gen_range(1..4);
                let images: Vec<Vec<u64>> = (0..m)
                    .map(|_| loop {
                        let x: Vec<u64> = (0..ring.degree()).map(|_| rng.gen_range(0..q)).collect();
                        if ring.is_unit(&x) {
                            break x;
                        }
                    })
                    .collect();
                let enumerated = image_kernel(&ring, &images, 1 << 20, |_| true);
                let logs = log_image_kernel(&f, q, &images, 1 << 20, |_| true).expect("applies");
                assert_eq!(enumerated, logs, "q={q} {images:?}");
            }
        }
        let f: Vec<Integer> = [1, 0, 1].into_iter().map(BigInt::from).collect();
        assert!(log_image_kernel(&f, 18, &[vec![5, 0]], 100, |_| true).is_none());
        assert!(log_image_kernel(&f, 2, &[vec![1, 0]], 100, |_| true).is_none());
    }

    #[test]
    fn residue_contract() {
        let k = NumberField::rationals();
        let (cm, hom) = power_residue_map(&k, &ul(&[-1, 2]), 2, &two(), DEFAULT_SEARCH_LIMIT).unwrap();
        assert_eq!(cm.q, 15);
        let m = hom.components()[0].clone();
        assert_eq!(m.apply_element(&k.from_int(16)).unwrap(), vec![1]);
        assert_ne!(m.apply_element(&k.from_int(4)).unwrap(), vec![1]);
    }
}
