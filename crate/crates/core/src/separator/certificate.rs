//! Separation certificates: a product of residue maps together with the
//! images it assigns, checkable without repeating any search.

use crate::error::{Error, Result};
use crate::nfield::{GroupDescription, Matrix, NumberField};
use crate::residue::{FiniteMatrix, FiniteRing, HomDescription, ResidueMap, DEFAULT_CLOSURE_CAP};

use super::structure::abelian_membership;
use super::Config;

/// One component ℤ[x]/(g, q) of a certificate, stored as raw data so that a
/// corrupted certificate can still be loaded and rejected by the verifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSpec {
    pub modulus: u64,
    /// Monic g, constant term first.
    pub poly: Vec<u64>,
}

impl From<&ResidueMap> for ResidueSpec {
    fn from(m: &ResidueMap) -> Self {
        ResidueSpec { modulus: m.modulus(), poly: m.ring().poly().to_vec() }
    }
}

/// φ: Γ → F with φ(h) outside the closure of φ(H). The map sends g to the
/// componentwise reduction of P⁻¹·g·P, where P is the conjugator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub field: NumberField,
    pub n: usize,
    pub conjugator: Matrix,
    pub components: Vec<ResidueSpec>,
    pub gamma_images: Vec<(String, Vec<FiniteMatrix>)>,
    pub subgroup_images: Vec<(String, Vec<FiniteMatrix>)>,
    pub h_image: Vec<FiniteMatrix>,
    /// Order of the closure of the subgroup images.
    pub closure_order: u64,
}

impl SeparationCertificate {
    /// Rebuilds the residue maps; fails if a component is not a residue map
    /// of the field.
    pub fn hom(&self) -> Result<HomDescription> {
        let maps = self
            .components
            .iter()
            .map(|c| ResidueMap::with_ring(&self.field, FiniteRing::new(c.modulus, c.poly.clone())?, &[]))
            .collect::<Result<Vec<_>>>()?;
        HomDescription::new(maps)
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.modulus).collect()
    }
}

/// Result of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verification {
    fn pass() -> Self {
        Verification { ok: true, reason: None }
    }

    fn fail(reason: impl Into<String>) -> Self {
        Verification { ok: false, reason: Some(reason.into()) }
    }
}

/// Product of several homomorphisms with repeated components dropped.
pub(crate) fn merge_homs(homs: &[HomDescription]) -> Result<HomDescription> {
    let mut comps: Vec<ResidueMap> = Vec::new();
    for h in homs {
        for c in h.components() {
            if !comps.contains(c) {
                comps.push(c.clone());
            }
        }
    }
    HomDescription::new(comps)
}

fn images(
    hom: &HomDescription,
    p: &Matrix,
    p_inv: &Matrix,
    g: &GroupDescription,
) -> Result<Vec<(String, Vec<FiniteMatrix>)>> {
    g.generators()
        .iter()
        .map(|(l, m)| Ok((l.clone(), hom.apply_matrix(&m.conjugate(p, p_inv))?)))
        .collect()
}

fn check_shapes(gamma: &GroupDescription, subgroup: &GroupDescription, h: &Matrix) -> Result<()> {
    if gamma.field() != subgroup.field() || gamma.field() != h.field() {
        return Err(Error::MixedFields);
    }
    if gamma.n() != subgroup.n() || gamma.n() != h.n() {
        return Err(Error::InvalidInput("dimension mismatch".into()));
    }
    Ok(())
}

/// Evaluates the homomorphism on Γ, H and h and records the closure order of
/// the H images. The result is not checked; see [`verify_certificate`].
pub fn build_certificate(
    hom: &HomDescription,
    conjugator: &Matrix,
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    h: &Matrix,
    cap: usize,
) -> Result<SeparationCertificate> {
    check_shapes(gamma, subgroup, h)?;
    let p_inv = conjugator.inverse()?;
    let subgroup_images = images(hom, conjugator, &p_inv, subgroup)?;
    let gens: Vec<Vec<FiniteMatrix>> = subgroup_images.iter().map(|(_, m)| m.clone()).collect();
    let closure = hom.closure(gamma.n(), &gens, cap)?;
    Ok(SeparationCertificate {
        field: gamma.field().clone(),
        n: gamma.n(),
        conjugator: conjugator.clone(),
        components: hom.components().iter().map(ResidueSpec::from).collect(),
        gamma_images: images(hom, conjugator, &p_inv, gamma)?,
        subgroup_images,
        h_image: hom.apply_matrix(&h.conjugate(conjugator, &p_inv))?,
        closure_order: closure.len() as u64,
    })
}

pub fn verify_certificate(
    cert: &SeparationCertificate,
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    h: &Matrix,
) -> Verification {
    verify_certificate_with_cap(cert, gamma, subgroup, h, DEFAULT_CLOSURE_CAP)
}

/// Recomputes every image from the residue data, checks that each Γ
/// generator and its inverse map to mutually inverse matrices, and checks
/// that the image of h lies outside the closure of the subgroup images.
pub fn verify_certificate_with_cap(
    cert: &SeparationCertificate,
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    h: &Matrix,
    cap: usize,
) -> Verification {
    if check_shapes(gamma, subgroup, h).is_err() || cert.field != *gamma.field() || cert.n != gamma.n() {
        return Verification::fail("field or dimension mismatch");
    }
    if cert.conjugator.field() != gamma.field() || cert.conjugator.n() != cert.n {
        return Verification::fail("conjugator has the wrong shape");
    }
    let hom = match cert.hom() {
        Ok(h) => h,
        Err(e) => return Verification::fail(format!("image mismatch: {e}")),
    };
    let Ok(p_inv) = cert.conjugator.inverse() else {
        return Verification::fail("conjugator is singular");
    };
    let p = &cert.conjugator;
    let id = hom.identity(cert.n);
    for (group, stored, what) in [(gamma, &cert.gamma_images, "ambient"), (subgroup, &cert.subgroup_images, "subgroup")] {
        if stored.len() != group.generators().len() {
            return Verification::fail(format!("image mismatch: wrong number of {what} generators"));
        }
        for ((label, m), (slabel, img)) in group.generators().iter().zip(stored) {
            if label != slabel {
                return Verification::fail(format!("image mismatch: label {slabel} where {label} was expected"));
            }
            let c = m.conjugate(p, &p_inv);
            let recomputed = match hom.apply_matrix(&c) {
                Ok(x) => x,
                Err(e) => return Verification::fail(format!("image mismatch at {label}: {e}")),
            };
            if recomputed != *img {
                return Verification::fail(format!("image mismatch at {label}"));
            }
            let inv = match c.inverse().and_then(|ci| hom.apply_matrix(&ci)) {
                Ok(x) => x,
                Err(e) => return Verification::fail(format!("image mismatch at {label}^-1: {e}")),
            };
            if hom.mul(&recomputed, &inv) != id {
                return Verification::fail(format!("image mismatch: {label} and its inverse are inconsistent"));
            }
        }
    }
    let h_image = match hom.apply_matrix(&h.conjugate(p, &p_inv)) {
        Ok(x) => x,
        Err(e) => return Verification::fail(format!("image mismatch at h: {e}")),
    };
    let gens: Vec<Vec<FiniteMatrix>> = cert.subgroup_images.iter().map(|(_, m)| m.clone()).collect();
    let closure = match hom.closure(cert.n, &gens, cap) {
        Ok(c) => c,
        Err(e) => return Verification::fail(format!("closure: {e}")),
    };
    if closure.len() as u64 != cert.closure_order {
        return Verification::fail(format!(
            "image mismatch: closure order {} differs from the recorded {}",
            closure.len(),
            cert.closure_order
        ));
    }
    if closure.contains(&h_image) {
        return Verification::fail("membership: the image of h lies in the image of the subgroup");
    }
    if h_image != cert.h_image {
        return Verification::fail("image mismatch at h");
    }
    Verification::pass()
}

/// Combines per-coset certificates for a finite-index H′ < H, where the i-th
/// certificate separates reps[i]⁻¹·h from H′, into one separating h from H.
pub fn finite_index_lift(
    gamma: &GroupDescription,
    subgroup: &GroupDescription,
    sub: &GroupDescription,
    reps: &[Matrix],
    certs: &[SeparationCertificate],
    h: &Matrix,
    config: &Config,
) -> Result<SeparationCertificate> {
    let cap = config.closure_cap;
    if reps.len() != certs.len() || reps.is_empty() {
        return Err(Error::InvalidInput("one certificate per coset representative is required".into()));
    }
    for (i, r) in reps.iter().enumerate() {
        let x = r.inverse()?.mul(h);
        if abelian_membership(sub, &x, config.relation_bound)?.is_some() {
            return Err(Error::CosetMembership(i));
        }
    }
    let p = &certs[0].conjugator;
    if certs.iter().any(|c| c.conjugator != *p) {
        return Err(Error::InvalidInput("certificates use different conjugators".into()));
    }
    let homs = certs.iter().map(|c| c.hom()).collect::<Result<Vec<_>>>()?;
    let hom = merge_homs(&homs)?;
    let cert = build_certificate(&hom, p, gamma, subgroup, h, cap)?;
    let v = verify_certificate_with_cap(&cert, gamma, subgroup, h, cap);
    if !v.ok {
        return Err(Error::InvalidInput(format!("lifted certificate fails: {}", v.reason.unwrap_or_default())));
    }
    Ok(cert)
}
