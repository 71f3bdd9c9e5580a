//! The inductive construction: normalization of a free family of upper
//! triangular generators at a pivot coordinate, the two cases for the
//! target's pivot entry, and the recursion on the non-basis generators.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::chevalley::chevalley_modulus_parallel;
use crate::error::{Error, Result};
use crate::exact::matrix::{add_vec, scale_vec, unit_vec};
use crate::exact::{Integer, Lattice};
use crate::nfield::{FieldElement, Matrix, NumberField};
use crate::residue::{build_residue_map, FiniteMatrix, HomDescription};
use crate::units::{complement_subgroup, decompose_power, free_basis, UnitBasis, UnitList};

use super::borel::separate_from_identity;
use super::certificate::merge_homs;
use super::structure::word;
use super::Config;

type IntVec = Vec<Integer>;

/// Data of one induction step for generators g_1..g_m.
#[derive(Clone, Debug)]
pub struct InductionState {
    pub generators: Vec<Matrix>,
    /// Coordinate s at which λ_{m,s} is not a root of unity (zero-based).
    pub pivot: usize,
    /// p: order of the torsion of ⟨λ_{1s},…,λ_{ms}⟩.
    pub torsion_order: u64,
    /// I (zero-based, ascending).
    pub basis: Vec<usize>,
    /// D = [⟨λ_{is}⟩ : ⟨λ_{is}^p : i ∈ I⟩].
    pub index: Integer,
    /// ḡ_1..ḡ_m.
    pub normalized: Vec<Matrix>,
    /// Exponents of each ḡ_t over g_1..g_m.
    pub exponents: Vec<IntVec>,
    pub unit_basis: UnitBasis,
}

impl InductionState {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// [⟨g⟩ : ⟨ḡ⟩] for independent generators.
    pub fn normalized_index(&self) -> Option<Integer> {
        Lattice::from_generators(self.rank(), &self.exponents).index()
    }

    /// p^|I|·D^(m−|I|).
    pub fn index_bound(&self) -> Integer {
        let i = self.basis.len();
        BigInt::from(self.torsion_order).pow(i as u32) * self.index.pow((self.rank() - i) as u32)
    }

    /// Whether ḡ_t has pivot entry exactly 1 for every t outside I.
    pub fn pivot_entries_are_one(&self) -> bool {
        (0..self.rank())
            .filter(|t| !self.basis.contains(t))
            .all(|t| self.normalized[t].get(self.pivot, self.pivot).is_one())
    }

    pub fn pivot_entries(&self) -> Vec<FieldElement> {
        self.generators.iter().map(|g| g.get(self.pivot, self.pivot).clone()).collect()
    }
}

/// Builds ḡ_i = g_i^p for i ∈ I and ḡ_t = w_t·g_t^D for t ∉ I, where w_t is
/// the product of the g_i^(−p·t_i) that cancels λ_{ts}^D.
pub fn normalize_generators(gens: &[Matrix], relation_bound: u32) -> Result<InductionState> {
    let m = gens.len();
    let last = gens.last().ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let field = last.field().clone();
    let n = last.n();
    if gens.iter().any(|g| !g.is_upper_triangular()) {
        return Err(Error::InvalidInput("generators must be upper triangular".into()));
    }
    let pivot = (0..n)
        .find(|&s| last.get(s, s).root_of_unity_order().is_none())
        .ok_or(Error::AllTorsion)?;
    let lambdas: Vec<FieldElement> = gens.iter().map(|g| g.get(pivot, pivot).clone()).collect();
    let list = UnitList::new(&field, lambdas.clone(), relation_bound)?;
    let ub = free_basis(&list)?;
    let p = ub.torsion_order;
    let big_p = BigInt::from(p);
    let d = ub.index.clone();
    let d_i64 = d.to_i64().ok_or_else(|| Error::InvalidInput("index out of range".into()))?;
    let z_list = UnitList::new(&field, ub.generators()?, relation_bound)?;
    let mut normalized = Vec::with_capacity(m);
    let mut exponents = Vec::with_capacity(m);
    for t in 0..m {
        if ub.basis_indices.contains(&t) {
            normalized.push(gens[t].pow(p as i64)?);
            exponents.push(scale_vec(&unit_vec(m, t), &big_p));
            continue;
        }
        let target = lambdas[t].pow(d_i64)?;
        let logs = z_list
            .discrete_log(&target)?
            .ok_or_else(|| Error::NotInLattice(format!("{target} is not in the span of the basis")))?;
        let mut w_exp = vec![BigInt::zero(); m];
        for (k, &i) in ub.basis_indices.iter().enumerate() {
            w_exp[i] = -(&big_p * &logs[k]);
        }
        let w = word(gens, &w_exp, n, &field)?;
        let gt = w.mul(&gens[t].pow(d_i64)?);
        if !gt.get(pivot, pivot).is_one() {
            return Err(Error::NotInLattice(format!("pivot entry of normalized generator {t} is not 1")));
        }
        normalized.push(gt);
        exponents.push(add_vec(&scale_vec(&unit_vec(m, t), &d), &w_exp));
    }
    Ok(InductionState {
        generators: gens.to_vec(),
        pivot,
        torsion_order: p,
        basis: ub.basis_indices.clone(),
        index: d,
        normalized,
        exponents,
        unit_basis: ub,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// d fails to divide some q_j.
    Case1,
    /// d divides every q_j.
    Case2,
}

impl Route {
    pub fn of(q: &[Integer], d: &Integer) -> Route {
        if q.iter().any(|x| !x.is_multiple_of(d)) {
            Route::Case1
        } else {
            Route::Case2
        }
    }
}

/// Structural record of one normalized step.
#[derive(Clone, Debug)]
pub struct LevelTrace {
    pub depth: usize,
    pub rank: usize,
    pub pivot: usize,
    pub torsion_order: u64,
    pub basis: Vec<usize>,
    pub index: Integer,
    pub normalized_index: Option<Integer>,
    pub index_bound: Integer,
    pub pivot_entries_one: bool,
    /// Pivot entries of the normalized generators ḡ_t, t ∉ I.
    pub normalized_pivots: Vec<FieldElement>,
    /// d = [U′ : T·G].
    pub d: Integer,
    pub q: IntVec,
    pub route: Route,
    /// r of the power residue map: d in the first case, d·E in the second.
    pub r: u64,
    pub modulus: u64,
    /// 1, or 2 when the ambient unit group had to be enlarged.
    pub attempts: usize,
}

pub(crate) struct Engine<'a> {
    pub field: NumberField,
    pub n: usize,
    pub avoid: Vec<Integer>,
    pub config: &'a Config,
    pub levels: Vec<LevelTrace>,
}

impl Engine<'_> {
    fn images(&self, hom: &HomDescription, gens: &[Matrix]) -> Result<Vec<Vec<FiniteMatrix>>> {
        gens.iter().map(|g| hom.apply_matrix(g)).collect()
    }

    /// φ(h) lies outside the closure of φ(gens).
    pub fn separates(&self, hom: &HomDescription, gens: &[Matrix], h: &Matrix) -> Result<bool> {
        let closure = hom.closure(self.n, &self.images(hom, gens)?, self.config.closure_cap)?;
        Ok(!closure.contains(&hom.apply_matrix(h)?))
    }

    fn tuple_order(&self, hom: &HomDescription, g: &Matrix) -> Result<u64> {
        let imgs = hom.apply_matrix(g)?;
        let mut e = 1u64;
        for (c, x) in hom.components().iter().zip(&imgs) {
            e = e.lcm(&c.ring().matrix_order(x, self.config.closure_cap)?);
        }
        Ok(e)
    }

    fn power_map(&self, units: &UnitList, r: u64) -> Result<(u64, HomDescription)> {
        let cm = chevalley_modulus_parallel(units, r, &self.avoid, self.config.search_limit, self.config.jobs)?;
        let map = build_residue_map(&self.field, &BigInt::from(cm.q), &self.avoid)?;
        Ok((cm.q, HomDescription::single(map)))
    }

    /// φ with φ(h) ∉ φ(⟨gens⟩) for independent upper triangular generators
    /// (modulo the trivial unitriangular part) and h ∉ ⟨gens⟩.
    pub fn separate_free(&mut self, gens: &[Matrix], h: &Matrix, depth: usize) -> Result<HomDescription> {
        if gens.is_empty() {
            return separate_from_identity(&self.field, h, &self.avoid, self.config.search_limit);
        }
        let state = normalize_generators(gens, self.config.relation_bound)?;
        let m = gens.len();
        let reps = Lattice::from_generators(m, &state.exponents)
            .quotient()
            .torsion_representatives(self.config.closure_cap)
            .ok_or(Error::CapExceeded(self.config.closure_cap))?;
        let mut homs = Vec::with_capacity(reps.len());
        for e in &reps {
            let c = word(gens, e, self.n, &self.field)?;
            let hc = c.inverse()?.mul(h);
            homs.push(self.separate_normalized(&state, &hc, depth)?);
        }
        let hom = merge_homs(&homs)?;
        if !self.separates(&hom, gens, h)? {
            return Err(Error::FallbackExhausted);
        }
        Ok(hom)
    }

    fn separate_normalized(&mut self, state: &InductionState, h: &Matrix, depth: usize) -> Result<HomDescription> {
        let s = state.pivot;
        let nu = h.get(s, s).clone();
        let basis = &state.unit_basis.basis_indices;
        let m = state.rank();
        let mut units = state.pivot_entries();
        units.push(nu.clone());
        for attempt in 1..=2 {
            if attempt == 2 {
                for t in 0..self.n {
                    let x = h.get(t, t);
                    if !units.contains(x) {
                        units.push(x.clone());
                    }
                }
            }
            let ambient = UnitList::new(&self.field, units.clone(), self.config.relation_bound)?;
            let comp = complement_subgroup(&ambient, &state.unit_basis)?;
            let d = comp.index.clone();
            let dec = decompose_power(&nu, &d, &comp)?;
            let route = Route::of(&dec.q, &d);
            let d_u64 = d.to_u64().ok_or_else(|| Error::InvalidInput("index out of range".into()))?;
            let (r, modulus, hom) = match route {
                Route::Case1 => {
                    let (q, hom) = self.power_map(&ambient, d_u64)?;
                    (d_u64, q, hom)
                }
                Route::Case2 => {
                    let mut hbar = h.clone();
                    for (k, &i) in basis.iter().enumerate() {
                        let e = (-(&dec.q[k] / &d))
                            .to_i64()
                            .ok_or_else(|| Error::InvalidInput("exponent out of range".into()))?;
                        hbar = state.normalized[i].pow(e)?.mul(&hbar);
                    }
                    let rest: Vec<Matrix> =
                        (0..m).filter(|t| !basis.contains(t)).map(|t| state.normalized[t].clone()).collect();
                    let phi1 = self.separate_free(&rest, &hbar, depth + 1)?;
                    let mut e = 1u64;
                    for &i in basis {
                        e = e.lcm(&self.tuple_order(&phi1, &state.normalized[i])?);
                    }
                    let ell = d_u64
                        .checked_mul(e)
                        .ok_or_else(|| Error::InvalidInput("power exponent out of range".into()))?;
                    let (q, phil) = self.power_map(&ambient, ell)?;
                    (ell, q, merge_homs(&[phil, phi1])?)
                }
            };
            let ok = self.separates(&hom, &state.normalized, h)?;
            self.levels.push(LevelTrace {
                depth,
                rank: m,
                pivot: s,
                torsion_order: state.torsion_order,
                basis: basis.clone(),
                index: state.index.clone(),
                normalized_index: state.normalized_index(),
                index_bound: state.index_bound(),
                pivot_entries_one: state.pivot_entries_are_one(),
                normalized_pivots: (0..m)
                    .filter(|t| !basis.contains(t))
                    .map(|t| state.normalized[t].get(s, s).clone())
                    .collect(),
                d,
                q: dec.q.clone(),
                route,
                r,
                modulus,
                attempts: attempt,
            });
            if ok {
                return Ok(hom);
            }
        }
        Err(Error::FallbackExhausted)
    }
}
