//! Separation of a target element from an abelian unipotent-free subgroup by
//! a homomorphism onto a finite matrix group.

pub mod borel;
pub mod bs12;
pub mod certificate;
pub mod claim;
pub mod structure;

use num_bigint::BigInt;

use crate::chevalley::DEFAULT_SEARCH_LIMIT;
use crate::error::{Error, Result};
use crate::exact::arith::next_prime;
use crate::exact::factor::fp_factor;
use crate::nfield::{triangularize_abelian, GroupDescription, Matrix};
use crate::residue::{build_residue_map, HomDescription, DEFAULT_CLOSURE_CAP};
use crate::units::DEFAULT_RELATION_BOUND;

pub use borel::{denominators, separate_from_borel, BorelSeparation};
pub use bs12::{bs12_group, bs12_odd_order, Bs12Row};
pub use certificate::{
    build_certificate, finite_index_lift, verify_certificate, verify_certificate_with_cap, ResidueSpec,
    SeparationCertificate, Verification,
};
pub use claim::{normalize_generators, InductionState, LevelTrace, Route};
pub use structure::{
    abelian_membership, check_unipotent_free, diagonal_kernel, diagonal_log, is_unipotent, split_s_plus, word,
    SPlusSplit, UnipotentCheck,
};

/// Primes tried by the fast path.
const FAST_PATH_LIMIT: u64 = 200;
/// Primes tried when the inductive construction runs out of resources.
const DIRECT_LIMIT: u64 = 2000;
/// Closure cap for one candidate of the direct search.
const DIRECT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub relation_bound: u32,
    pub search_limit: u64,
    pub closure_cap: usize,
    /// Try single small primes before the inductive construction.
    pub fast_path: bool,
    /// Threads for the modulus search.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            relation_bound: DEFAULT_RELATION_BOUND,
            search_limit: DEFAULT_SEARCH_LIMIT,
            closure_cap: DEFAULT_CLOSURE_CAP,
            fast_path: false,
            jobs: 1,
        }
    }
}

/// How a certificate was obtained.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub fast_path: bool,
    /// The inductive construction ran out of resources and the certificate
    /// came from the direct search.
    pub direct: bool,
    /// The target was not upper triangular after conjugation.
    pub borel: bool,
    /// Rank of S₁/S⁺.
    pub initial_rank: usize,
    /// Number of cosets of S₁ in the subgroup.
    pub cosets: usize,
    pub levels: Vec<LevelTrace>,
}

impl Trace {
    /// Deepest recursion level reached, counting the top level as 1.
    pub fn max_depth(&self) -> usize {
        self.levels.iter().map(|l| l.depth + 1).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub certificate: SeparationCertificate,
    pub trace: Trace,
}

fn validate(gamma: &GroupDescription, subgroup: &GroupDescription, h: &Matrix) -> Result<()> {
    if gamma.field() != subgroup.field() || gamma.field() != h.field() {
        return Err(Error::MixedFields);
    }
    if gamma.n() != subgroup.n() || gamma.n() != h.n() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    if let Some((i, j)) = subgroup.non_commuting_pair() {
        return Err(Error::NotCommuting(i, j));
    }
    h.inverse()?;
    Ok(())
}

fn finish(
    hom: &HomDescription,
    p: &Matrix,
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    h: &Matrix,
    cap: usize,
) -> Result<Option<SeparationCertificate>> {
    let cert = build_certificate(hom, p, gamma, subgroup, h, cap)?;
    Ok(verify_certificate_with_cap(&cert, gamma, subgroup, h, cap).ok.then_some(cert))
}

/// Single residue maps modulo primes up to `limit`, each irreducible factor
/// component before the whole ring, until one separates.
fn direct_search(
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    h: &Matrix,
    p: &Matrix,
    avoid: &[crate::exact::Integer],
    limit: u64,
    cap: usize,
) -> Option<SeparationCertificate> {
    let field = gamma.field();
    let mut q = 2;
    while q <= limit {
        if let Ok(map) = build_residue_map(field, &BigInt::from(q), avoid) {
            let mut homs: Vec<HomDescription> = Vec::new();
            let factors = fp_factor(map.ring().poly(), q);
            if factors.len() > 1 {
                homs.extend(
                    factors
                        .iter()
                        .filter_map(|(g, _)| map.compose_factor(g).ok())
                        .map(HomDescription::single),
                );
            }
            homs.push(HomDescription::single(map));
            for hom in &homs {
                if let Ok(Some(cert)) = finish(hom, p, gamma, subgroup, h, cap) {
                    return Some(cert);
                }
            }
        }
        q = next_prime(q);
    }
    None
}

/// A verified certificate separating h from the abelian unipotent-free
/// subgroup, with the structural trace of the construction.
pub fn separate_abelian(
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    h: &Matrix,
    config: &Config,
) -> Result<Separation> {
    validate(gamma, subgroup, h)?;
    let field = gamma.field().clone();
    let n = gamma.n();
    let (p, tri) = if subgroup.generators().is_empty() {
        (Matrix::identity(&field, n), subgroup.clone())
    } else {
        triangularize_abelian(subgroup)?
    };
    let p_inv = p.inverse()?;
    structure::require_unipotent_free(&tri, config.relation_bound)?;
    let hc = h.conjugate(&p, &p_inv);
    let tri_gens = tri.matrices();
    if structure::triangular_membership(&tri_gens, &hc, config.relation_bound)?.is_some() {
        return Err(Error::InSubgroup);
    }
    let mut conj: Vec<Matrix> = gamma.matrices().iter().map(|g| g.conjugate(&p, &p_inv)).collect();
    conj.extend(tri_gens.iter().cloned());
    conj.push(hc.clone());
    let avoid = denominators(&conj)?;
    let mut trace = Trace::default();

    if config.fast_path {
        let cap = config.closure_cap.min(DIRECT_CAP);
        if let Some(cert) = direct_search(gamma, subgroup, h, &p, &avoid, FAST_PATH_LIMIT, cap) {
            trace.fast_path = true;
            return Ok(Separation { certificate: cert, trace });
        }
    }

    let built = if !hc.is_upper_triangular() {
        trace.borel = true;
        let gc = GroupDescription::from_matrices(&field, n, conj)?;
        separate_from_borel(&gc, &hc, config.search_limit).map(|b| b.hom)
    } else {
        let split = split_s_plus(&tri, config.relation_bound, config.closure_cap)?;
        if !split.s_plus.is_empty() {
            return Err(Error::NotUnipotentFree { witness: split.s_plus[0].conjugate(&p_inv, &p).to_string() });
        }
        trace.initial_rank = split.rank();
        trace.cosets = split.reps.len();
        let mut engine = claim::Engine { field: field.clone(), n, avoid: avoid.clone(), config, levels: Vec::new() };
        let homs = split
            .reps
            .iter()
            .map(|c| engine.separate_free(&split.free, &c.inverse()?.mul(&hc), 0))
            .collect::<Result<Vec<_>>>();
        trace.levels = engine.levels;
        homs.and_then(|hs| certificate::merge_homs(&hs))
    };
    let failure = match built.and_then(|hom| finish(&hom, &p, gamma, subgroup, h, config.closure_cap)) {
        Ok(Some(cert)) => return Ok(Separation { certificate: cert, trace }),
        Ok(None) => Error::FallbackExhausted,
        Err(e) if e.is_resource() => e,
        Err(e) => return Err(e),
    };
    let cap = config.closure_cap.min(DIRECT_CAP);
    match direct_search(gamma, subgroup, h, &p, &avoid, DIRECT_LIMIT, cap) {
        Some(cert) => {
            trace.direct = true;
            Ok(Separation { certificate: cert, trace })
        }
        None => Err(failure),
    }
}
