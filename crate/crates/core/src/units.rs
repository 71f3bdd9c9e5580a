//! Structure of finitely generated subgroups of K^×: torsion, relation
//! lattices, free bases, complements and power decompositions.
//!
//! Relations are found in two stages. A valuation map V (p-adic valuations
//! of norms, plus valuations at degree-one primes through p-adic roots of
//! the minimal polynomial) vanishes on torsion, so every torsion relation
//! lies in ker V. Inside ker V, kernel basis elements are tested for being
//! roots of unity exactly and the remaining ones are related pairwise by a
//! bounded search. The result is certified whenever the unresolved part of
//! ker V has rank at most one.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::arith::{factor_integer, valuation};
use crate::exact::factor::{fp_factor, reduce_mod_p};
use crate::exact::matrix::{combine, left_kernel, scale_vec, solve_left, unit_vec};
use crate::exact::{Integer, Lattice};
use crate::nfield::{FieldElement, NumberField};

pub const DEFAULT_RELATION_BOUND: u32 = 8;

type IntVec = Vec<Integer>;

/// Explicit generators of a subgroup of K^×.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitList {
    field: NumberField,
    units: Vec<FieldElement>,
    relation_bound: u32,
}

impl UnitList {
    pub fn new(field: &NumberField, units: Vec<FieldElement>, relation_bound: u32) -> Result<Self> {
        if units.is_empty() {
            return Err(Error::InvalidInput("empty unit list".into()));
        }
        for u in &units {
            if u.field() != field {
                return Err(Error::MixedFields);
            }
            if u.is_zero() {
                return Err(Error::InvalidInput("zero is not a unit".into()));
            }
        }
        Ok(UnitList { field: field.clone(), units, relation_bound })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn units(&self) -> &[FieldElement] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn relation_bound(&self) -> u32 {
        self.relation_bound
    }

    /// ∏ u_i^{e_i}.
    pub fn product(&self, e: &[Integer]) -> Result<FieldElement> {
        let mut acc = self.field.one();
        for (u, k) in self.units.iter().zip(e) {
            if k.is_zero() {
                continue;
            }
            let k = k
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("exponent out of range".into()))?;
            acc = &acc * &u.pow(k)?;
        }
        Ok(acc)
    }

    fn extended(&self, x: &FieldElement) -> Result<UnitList> {
        let mut units = self.units.clone();
        units.push(x.clone());
        UnitList::new(&self.field, units, self.relation_bound)
    }

    /// Exponents e with ∏ u_i^{e_i} = x, if x lies in the generated group.
    pub fn discrete_log(&self, x: &FieldElement) -> Result<Option<IntVec>> {
        let m = self.len();
        let s = analyze(&self.extended(x)?)?;
        let basis = s.exact.basis();
        let last: Vec<Integer> = basis.iter().map(|b| b[m].clone()).collect();
        let Some(c) = solve_left(&last.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>(), 1, &[BigInt::one()]) else {
            return Ok(None);
        };
        let rel = combine(&c, basis, m + 1);
        Ok(Some(rel[..m].iter().map(|x| -x).collect()))
    }
}

/// Relation data of a unit list.
#[derive(Clone, Debug)]
pub struct UnitStructure {
    /// {e : ∏ u^e is a root of unity}.
    pub torsion_lattice: Lattice,
    /// {e : ∏ u^e = 1}.
    pub exact: Lattice,
    /// Order of the torsion subgroup.
    pub torsion_order: u64,
    /// Exponents of a generator of the torsion subgroup.
    pub torsion_exponents: IntVec,
}

fn padic_root(f: &[Integer], r: u64, p: &Integer, k: u32) -> Integer {
    let m = p.pow(k);
    let df: Vec<Integer> = f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let eval = |g: &[Integer], x: &Integer| g.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(&m));
    let mut x = BigInt::from(r);
    for _ in 0..=k.max(1).ilog2() + 1 {
        let fx = eval(f, &x);
        let dfx = eval(&df, &x);
        let inv = crate::exact::arith::mod_inverse(&dfx, &m).expect("simple root");
        x = (&x - fx * inv).mod_floor(&m);
    }
    x
}

/// Valuation coordinates of each unit, one column per valuation.
fn valuation_matrix(list: &UnitList) -> Vec<IntVec> {
    let k = &list.field;
    let n = k.degree() as u32;
    let f = k.minimal_poly().coeffs().to_vec();
    let mut primes: Vec<Integer> = Vec::new();
    for u in &list.units {
        let nm = u.norm();
        for x in [nm.numer().clone(), nm.denom().clone(), u.denominator()] {
            for (p, _) in factor_integer(&x) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
    }
    primes.sort();
    let mut cols: Vec<Vec<Integer>> = Vec::new();
    for p in &primes {
        cols.push(
            list.units
                .iter()
                .map(|u| {
                    let nm = u.norm();
                    BigInt::from(valuation(nm.numer(), p)) - BigInt::from(valuation(nm.denom(), p))
                })
                .collect(),
        );
        if k.degree() == 1 {
            continue;
        }
        let Some(pu) = p.to_u64().filter(|&x| x < 1 << 32) else { continue };
        let simple_roots: Vec<u64> = fp_factor(&reduce_mod_p(&f, pu), pu)
            .into_iter()
            .filter(|(g, mult)| g.len() == 2 && *mult == 1)
            .map(|(g, _)| (pu - g[0]) % pu)
            .collect();
        for r in simple_roots {
            cols.push(
                list.units
                    .iter()
                    .map(|u| {
                        let c = u.denominator();
                        let g: Vec<Integer> = u.coords().iter().map(|x| (x * &c).to_integer()).collect();
                        let cn = c.pow(n);
                        let big_n = (u.norm() * crate::exact::Rational::from_integer(cn)).to_integer();
                        let prec = valuation(&big_n, p) + 1;
                        let root = padic_root(&f, r, p, prec);
                        let m = p.pow(prec);
                        let val = g.iter().rev().fold(BigInt::zero(), |acc, x| (acc * &root + x).mod_floor(&m));
                        BigInt::from(valuation(&val, p)) - BigInt::from(valuation(&c, p))
                    })
                    .collect(),
            );
        }
    }
    // Transpose to one row per unit.
    (0..list.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn is_torsion(x: &FieldElement) -> bool {
    x.root_of_unity_order().is_some()
}

fn signed_range(b: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=b).flat_map(|a| [a, -a]))
}

/// Torsion lattice, exact lattice and torsion order of a unit list.
pub fn analyze(list: &UnitList) -> Result<UnitStructure> {
    let m = list.len();
    let vm = valuation_matrix(list);
    let width = vm.first().map(|r| r.len()).unwrap_or(0);
    let kernel: Vec<IntVec> = if width == 0 {
        (0..m).map(|i| unit_vec(m, i)).collect()
    } else {
        left_kernel(&vm, width)
    };
    let mut relations: Vec<IntVec> = Vec::new();
    let mut free: Vec<(IntVec, FieldElement)> = Vec::new();
    for b in &kernel {
        let beta = list.product(b)?;
        if is_torsion(&beta) {
            relations.push(b.clone());
        } else {
            free.push((b.clone(), beta));
        }
    }
    if let Some((pivot_vec, pivot)) = free.first() {
        let bound = list.relation_bound as i64;
        for (vec, beta) in &free[1..] {
            let mut found = None;
            'search: for b in 1..=bound {
                let bb = beta.pow(b)?;
                for a in signed_range(bound) {
                    if is_torsion(&(&pivot.pow(a)? * &bb)) {
                        found = Some((a, b));
                        break 'search;
                    }
                }
            }
            let (a, b) = found.ok_or(Error::BoundExceeded(list.relation_bound))?;
            let rel = combine(&[BigInt::from(a), BigInt::from(b)], &[pivot_vec.clone(), vec.clone()], m);
            relations.push(rel);
        }
    }
    let torsion_lattice = Lattice::from_generators(m, &relations).saturation();

    // Torsion subgroup generated by the images of the lattice basis.
    let tbasis = torsion_lattice.basis().to_vec();
    let zetas: Vec<FieldElement> = tbasis.iter().map(|b| list.product(b)).collect::<Result<_>>()?;
    let orders: Vec<u64> = zetas.iter().map(|z| z.root_of_unity_order().expect("torsion")).collect();
    let p = orders.iter().fold(1u64, |acc, &w| acc.lcm(&w));
    let mut gen_exps = vec![BigInt::zero(); m];
    for (ell, e) in factor_integer(&BigInt::from(p)) {
        let ell = ell.to_u64().unwrap();
        let pe = ell.pow(e);
        let j = orders.iter().position(|&w| w % pe == 0 && (w / pe) % ell != 0).unwrap();
        gen_exps = combine(
            &[BigInt::one(), BigInt::from(orders[j] / pe)],
            &[gen_exps, tbasis[j].clone()],
            m,
        );
    }
    let zeta = list.product(&gen_exps)?;
    debug_assert_eq!(zeta.root_of_unity_order(), Some(p));

    // Discrete logs of the basis images with respect to zeta; the exact
    // lattice is the kernel of c ↦ Σ c_j·k_j mod p.
    let exact = if p == 1 {
        torsion_lattice.clone()
    } else {
        let mut powers = vec![list.field.one()];
        for _ in 1..p {
            powers.push(&powers[powers.len() - 1] * &zeta);
        }
        let mut rows: Vec<IntVec> = zetas
            .iter()
            .map(|z| vec![BigInt::from(powers.iter().position(|w| w == z).expect("power of generator"))])
            .collect();
        rows.push(vec![BigInt::from(p)]);
        let ker = left_kernel(&rows, 1);
        let gens: Vec<IntVec> = ker.iter().map(|c| combine(&c[..tbasis.len()], &tbasis, m)).collect();
        Lattice::from_generators(m, &gens)
    };
    Ok(UnitStructure { torsion_lattice, exact, torsion_order: p, torsion_exponents: gen_exps })
}

/// (p, generator of the torsion subgroup); the generator is absent when p = 1.
pub fn torsion_order(list: &UnitList) -> Result<(u64, Option<FieldElement>)> {
    let s = analyze(list)?;
    let g = if s.torsion_order == 1 { None } else { Some(list.product(&s.torsion_exponents)?) };
    Ok((s.torsion_order, g))
}

/// Flip sign so the last nonzero coordinate is positive.
fn oriented(v: &[Integer]) -> IntVec {
    let mut v = v.to_vec();
    crate::exact::matrix::normalize_sign(&mut v);
    v
}

/// Basis (Hermite form, rows oriented with positive last nonzero entry) of
/// the relations e with ∏ u_i^{e_i} = 1.
pub fn exponent_lattice(list: &UnitList) -> Result<Vec<IntVec>> {
    Ok(analyze(list)?.exact.basis().iter().map(|b| oriented(b)).collect())
}

/// Basis of the relations e with ∏ u_i^{e_i} a root of unity.
pub fn torsion_relation_lattice(list: &UnitList) -> Result<Vec<IntVec>> {
    Ok(analyze(list)?.torsion_lattice.basis().iter().map(|b| oriented(b)).collect())
}

/// Free basis data: G = ⟨u_i^p : i ∈ I⟩ ≅ ℤ^|I| and D = [⟨u⟩ : G].
#[derive(Clone, Debug)]
pub struct UnitBasis {
    pub units: UnitList,
    pub torsion_order: u64,
    pub torsion_generator: Option<FieldElement>,
    /// Zero-based indices into the unit list, ascending.
    pub basis_indices: Vec<usize>,
    /// Exact relation lattice of the unit list.
    pub exponent_lattice: Lattice,
    pub torsion_lattice: Lattice,
    pub index: Integer,
    /// Whether G also equals ⟨u_j^p : all j⟩.
    pub spans_powers: bool,
}

impl UnitBasis {
    /// Exponent vectors (in the unit list's coordinates) of the generators u_i^p.
    pub fn generator_vectors(&self) -> Vec<IntVec> {
        let m = self.units.len();
        self.basis_indices
            .iter()
            .map(|&i| scale_vec(&unit_vec(m, i), &BigInt::from(self.torsion_order)))
            .collect()
    }

    pub fn generators(&self) -> Result<Vec<FieldElement>> {
        self.generator_vectors().iter().map(|v| self.units.product(v)).collect()
    }

    /// Rank of G.
    pub fn rank(&self) -> usize {
        self.basis_indices.len()
    }
}

pub fn free_basis(list: &UnitList) -> Result<UnitBasis> {
    let s = analyze(list)?;
    let m = list.len();
    if s.torsion_lattice.rank() == m {
        return Err(Error::AllTorsion);
    }
    let mut indices = Vec::new();
    let mut gens: Vec<IntVec> = s.torsion_lattice.basis().to_vec();
    let mut rank = gens.len();
    for i in 0..m {
        let mut trial = gens.clone();
        trial.push(unit_vec(m, i));
        let r = Lattice::from_generators(m, &trial).rank();
        if r > rank {
            indices.push(i);
            gens = trial;
            rank = r;
        }
    }
    let p = BigInt::from(s.torsion_order);
    let mut g_gens: Vec<IntVec> = s.exact.basis().to_vec();
    g_gens.extend(indices.iter().map(|&i| scale_vec(&unit_vec(m, i), &p)));
    let g_lattice = Lattice::from_generators(m, &g_gens);
    let index = g_lattice.index().expect("full rank");
    let spans_powers = (0..m).all(|j| g_lattice.contains(&scale_vec(&unit_vec(m, j), &p)));
    let torsion_generator = if s.torsion_order == 1 { None } else { Some(list.product(&s.torsion_exponents)?) };
    Ok(UnitBasis {
        units: list.clone(),
        torsion_order: s.torsion_order,
        torsion_generator,
        basis_indices: indices,
        exponent_lattice: s.exact,
        torsion_lattice: s.torsion_lattice,
        index,
        spans_powers,
    })
}

/// T with T ∩ G = {1} and d = [ambient : T·G] finite.
#[derive(Clone, Debug)]
pub struct Complement {
    pub ambient: UnitList,
    pub ambient_relations: Lattice,
    /// Exponent vectors of the generators of T, in ambient coordinates.
    pub t_vectors: Vec<IntVec>,
    /// Exponent vectors of the generators of G, in ambient coordinates.
    pub g_vectors: Vec<IntVec>,
    pub generators: Vec<FieldElement>,
    pub index: Integer,
}

pub fn complement_subgroup(ambient: &UnitList, g: &UnitBasis) -> Result<Complement> {
    let m = ambient.len();
    let s = analyze(ambient)?;
    let mut g_vectors = Vec::new();
    for z in g.generators()? {
        let e = ambient
            .discrete_log(&z)?
            .ok_or_else(|| Error::NotInProduct(format!("{z} is not in the ambient group")))?;
        g_vectors.push(e);
    }
    let mut n_gens = s.exact.basis().to_vec();
    n_gens.extend(g_vectors.iter().cloned());
    let n_lattice = Lattice::from_generators(m, &n_gens);
    let sat = n_lattice.saturation();
    // Prefer standard basis vectors as complement generators when they
    // complete the saturation to all of ℤ^m.
    let mut chosen: Vec<IntVec> = Vec::new();
    let mut current = sat.clone();
    for i in 0..m {
        let trial = current.sum(&Lattice::from_generators(m, &[unit_vec(m, i)]));
        if trial.rank() > current.rank() {
            chosen.push(unit_vec(m, i));
            current = trial;
        }
    }
    let t_vectors = if current.index() == Some(BigInt::one()) {
        chosen
    } else {
        n_lattice.quotient().free_lifts()
    };
    let mut all = n_gens.clone();
    all.extend(t_vectors.iter().cloned());
    let index = Lattice::from_generators(m, &all).index().expect("full rank");
    let generators = t_vectors.iter().map(|v| ambient.product(v)).collect::<Result<_>>()?;
    Ok(Complement { ambient: ambient.clone(), ambient_relations: s.exact, t_vectors, g_vectors, generators, index })
}

/// ν^d = κ·∏ z_i^{q_i} with κ ∈ T and z_i the generators of G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerDecomposition {
    pub kappa: FieldElement,
    /// Exponents of κ over the generators of T.
    pub kappa_exponents: IntVec,
    pub q: IntVec,
}

pub fn decompose_power(nu: &FieldElement, d: &Integer, c: &Complement) -> Result<PowerDecomposition> {
    let m = c.ambient.len();
    let e = c
        .ambient
        .discrete_log(nu)?
        .ok_or_else(|| Error::NotInProduct(format!("{nu} is not in the ambient group")))?;
    let target = scale_vec(&e, d);
    let mut rows = c.t_vectors.clone();
    rows.extend(c.g_vectors.iter().cloned());
    rows.extend(c.ambient_relations.basis().iter().cloned());
    let coeffs = solve_left(&rows, m, &target)
        .ok_or_else(|| Error::NotInProduct(format!("{nu}^{d} is not in T·G")))?;
    let nt = c.t_vectors.len();
    let ng = c.g_vectors.len();
    let kappa_exponents = coeffs[..nt].to_vec();
    let q = coeffs[nt..nt + ng].to_vec();
    let mut kappa = c.ambient.field().one();
    for (t, k) in c.generators.iter().zip(&kappa_exponents) {
        let k = k.to_i64().ok_or_else(|| Error::InvalidInput("exponent out of range".into()))?;
        kappa = &kappa * &t.pow(k)?;
    }
    Ok(PowerDecomposition { kappa, kappa_exponents, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPoly;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn ul(k: &NumberField, xs: &[i64]) -> UnitList {
        UnitList::new(k, xs.iter().map(|&x| k.from_int(x)).collect(), DEFAULT_RELATION_BOUND).unwrap()
    }

    fn v(x: &[i64]) -> IntVec {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn torsion_examples() {
        let k = q();
        assert_eq!(torsion_order(&ul(&k, &[-1])).unwrap(), (2, Some(k.from_int(-1))));
        assert_eq!(torsion_order(&ul(&k, &[2, -2])).unwrap().0, 2);
        assert_eq!(torsion_order(&ul(&k, &[2, 3])).unwrap(), (1, None));
    }

    #[test]
    fn lattice_examples() {
        let k = q();
        assert_eq!(exponent_lattice(&ul(&k, &[2, 4])).unwrap(), vec![v(&[-2, 1])]);
        assert!(exponent_lattice(&ul(&k, &[2, 3])).unwrap().is_empty());
        assert_eq!(exponent_lattice(&ul(&k, &[-1])).unwrap(), vec![v(&[2])]);
        assert_eq!(torsion_relation_lattice(&ul(&k, &[-1])).unwrap(), vec![v(&[1])]);
    }

    #[test]
    fn free_basis_examples() {
        let k = q();
        let b = free_basis(&ul(&k, &[2, 4, 8])).unwrap();
        assert_eq!((b.torsion_order, b.basis_indices.clone()), (1, vec![0]));
        let b = free_basis(&ul(&k, &[2, 3])).unwrap();
        assert_eq!(b.basis_indices, vec![0, 1]);
        let b = free_basis(&ul(&k, &[2, -2])).unwrap();
        assert_eq!((b.torsion_order, b.basis_indices.clone(), b.index.clone()), (2, vec![0], BigInt::from(4)));
        assert_eq!(b.generators().unwrap(), vec![k.from_int(4)]);
        assert!(matches!(free_basis(&ul(&k, &[-1, 1])), Err(Error::AllTorsion)));
        let b = free_basis(&ul(&k, &[4, 27, 6])).unwrap();
        assert_eq!(b.basis_indices, vec![0, 1]);
        assert!(!b.spans_powers);
    }

    #[test]
    fn complement_examples() {
        let k = q();
        let g = free_basis(&ul(&k, &[4])).unwrap();
        let c = complement_subgroup(&ul(&k, &[-1, 2, 3]), &g).unwrap();
        assert_eq!(c.generators, vec![k.from_int(3)]);
        assert_eq!(c.index, BigInt::from(4));
        let d = decompose_power(&k.from_int(2), &c.index, &c).unwrap();
        assert_eq!((d.kappa, d.q), (k.from_int(1), v(&[2])));
        let d = decompose_power(&k.from_int(3), &c.index, &c).unwrap();
        assert_eq!((d.kappa, d.q), (k.from_int(81), v(&[0])));
        let d = decompose_power(&k.from_int(1), &c.index, &c).unwrap();
        assert_eq!((d.kappa, d.q), (k.from_int(1), v(&[0])));
        assert!(matches!(decompose_power(&k.from_int(5), &c.index, &c), Err(Error::NotInProduct(_))));

        let c = complement_subgroup(&ul(&k, &[2]), &free_basis(&ul(&k, &[2])).unwrap()).unwrap();
        assert!(c.generators.is_empty());
        assert_eq!(c.index, BigInt::from(1));
        let c = complement_subgroup(&ul(&k, &[-1, 2]), &g).unwrap();
        assert!(c.generators.is_empty());
        assert_eq!(c.index, BigInt::from(4));
    }

    #[test]
    fn quadratic_units_are_related_by_search() {
        let k = NumberField::new(IntPoly::from_i64(&[-2, 0, 1]).unwrap()).unwrap();
        let eps = &k.from_int(1) + &k.generator();
        let e3 = eps.pow(3).unwrap();
        let e5 = (-&eps).pow(5).unwrap();
        let list = UnitList::new(&k, vec![e3, e5], DEFAULT_RELATION_BOUND).unwrap();
        let s = analyze(&list).unwrap();
        assert_eq!(s.torsion_order, 2);
        assert_eq!(s.torsion_lattice.rank(), 1);
        for b in s.exact.basis() {
            assert!(list.product(b).unwrap().is_one());
        }
        let tight = UnitList::new(list.field(), list.units().to_vec(), 2).unwrap();
        assert_eq!(analyze(&tight).unwrap_err(), Error::BoundExceeded(2));
    }

    #[test]
    fn gaussian_primes_are_separated_by_valuations() {
        let k = NumberField::new(IntPoly::from_i64(&[1, 0, 1]).unwrap()).unwrap();
        let i = k.generator();
        let a = &k.from_int(2) + &i;
        let b = &k.from_int(2) - &i;
        let c = &k.from_int(3) + &(&k.from_int(2) * &i);
        let d = &k.from_int(3) - &(&k.from_int(2) * &i);
        let list = UnitList::new(&k, vec![a, b, c, d, i.clone()], DEFAULT_RELATION_BOUND).unwrap();
        let s = analyze(&list).unwrap();
        assert_eq!(s.torsion_order, 4);
        assert_eq!(s.exact.basis(), &[v(&[0, 0, 0, 0, 4])]);
        let e = list.discrete_log(&(-&i)).unwrap().unwrap();
        assert_eq!(list.product(&e).unwrap(), -&i);
        assert_eq!(list.discrete_log(&k.from_int(2)).unwrap(), None);
    }
}
