//! JSON encodings of problems and certificates.
//!
//! Rationals are strings "p/q". A field element is either a single rational
//! string (an element of ℚ) or an array of them, the coordinates ascending
//! in the distinguished root. Matrices are arrays of rows. Finite-ring
//! entries are arrays of residues, constant term first. Output is
//! deterministic: the same value always serializes to the same bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::arith::{format_rational, parse_rational};
use crate::exact::{IntPoly, Integer};
use crate::nfield::{FieldElement, GroupDescription, Matrix, NumberField};
use crate::residue::{FiniteMatrix, FiniteRing};
use crate::separator::{Config, ResidueSpec, SeparationCertificate};

pub const CERTIFICATE_FORMAT: &str = "sepcert-certificate/1";

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_integer(v: &Value) -> Result<Integer> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| perr(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| perr(format!("not an integer: {s:?}"))),
        _ => Err(perr(format!("expected an integer, found {v}"))),
    }
}

fn parse_rational_value(v: &Value) -> Result<crate::exact::Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => Err(perr(format!("expected a rational, found {v}"))),
    }
}

/// Field from minimal polynomial coefficients, constant term first. An
/// absent or empty list, or [0, 1], gives ℚ.
pub fn parse_field(coeffs: &[Value]) -> Result<NumberField> {
    if coeffs.is_empty() {
        return Ok(NumberField::rationals());
    }
    let c = coeffs.iter().map(parse_integer).collect::<Result<Vec<_>>>()?;
    let f = IntPoly::new(c).map_err(|e| perr(e.to_string()))?;
    if f.degree() == 1 && f.is_monic() && f.coeffs()[0] == Integer::from(0) {
        return Ok(NumberField::rationals());
    }
    NumberField::new(f)
}

pub fn field_to_json(k: &NumberField) -> Value {
    Value::Array(k.minimal_poly().coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn parse_element(k: &NumberField, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Array(xs) => {
            let coords = xs.iter().map(parse_rational_value).collect::<Result<Vec<_>>>()?;
            k.element(coords).map_err(|e| perr(e.to_string()))
        }
        _ => Ok(k.from_rational(parse_rational_value(v)?)),
    }
}

pub fn element_to_json(e: &FieldElement) -> Value {
    match e.as_rational() {
        Some(r) if e.field().is_rationals() => Value::String(format_rational(r)),
        _ => Value::Array(e.coords().iter().map(|c| Value::String(format_rational(c))).collect()),
    }
}

pub fn parse_matrix(k: &NumberField, n: usize, rows: &[Vec<Value>]) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(perr(format!("matrix is not {n}×{n}")));
    }
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|v| parse_element(k, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(k, entries).map_err(|e| perr(e.to_string()))
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<Value>> {
    m.rows().iter().map(|r| r.iter().map(element_to_json).collect()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GeneratorJson {
    label: String,
    matrix: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    relation_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search_limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closure_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fast_path: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    jobs: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ProblemJson {
    #[serde(default)]
    field: Vec<Value>,
    n: usize,
    gamma: Vec<GeneratorJson>,
    subgroup: Vec<GeneratorJson>,
    target: Vec<Vec<Value>>,
    #[serde(default)]
    config: ConfigJson,
}

/// Γ, H, h and the search configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub gamma: GroupDescription,
    pub subgroup: GroupDescription,
    pub target: Matrix,
    pub config: Config,
}

fn parse_generators(k: &NumberField, n: usize, gens: &[GeneratorJson]) -> Result<GroupDescription> {
    let mats = gens
        .iter()
        .map(|g| Ok((g.label.clone(), parse_matrix(k, n, &g.matrix)?)))
        .collect::<Result<Vec<_>>>()?;
    GroupDescription::new(k, n, mats)
}

fn generators_to_json(g: &GroupDescription) -> Vec<GeneratorJson> {
    g.generators()
        .iter()
        .map(|(l, m)| GeneratorJson { label: l.clone(), matrix: matrix_to_json(m) })
        .collect()
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let p: ProblemJson = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let k = parse_field(&p.field)?;
    let d = Config::default();
    let config = Config {
        relation_bound: p.config.relation_bound.unwrap_or(d.relation_bound),
        search_limit: p.config.search_limit.unwrap_or(d.search_limit),
        closure_cap: p.config.closure_cap.unwrap_or(d.closure_cap),
        fast_path: p.config.fast_path.unwrap_or(d.fast_path),
        jobs: p.config.jobs.unwrap_or(d.jobs),
    };
    Ok(Problem {
        gamma: parse_generators(&k, p.n, &p.gamma)?,
        subgroup: parse_generators(&k, p.n, &p.subgroup)?,
        target: parse_matrix(&k, p.n, &p.target)?,
        config,
    })
}

pub fn problem_to_json(p: &Problem) -> String {
    let d = Config::default();
    let c = &p.config;
    let out = ProblemJson {
        field: field_to_json(p.gamma.field()).as_array().cloned().unwrap_or_default(),
        n: p.gamma.n(),
        gamma: generators_to_json(&p.gamma),
        subgroup: generators_to_json(&p.subgroup),
        target: matrix_to_json(&p.target),
        config: ConfigJson {
            relation_bound: (c.relation_bound != d.relation_bound).then_some(c.relation_bound),
            search_limit: (c.search_limit != d.search_limit).then_some(c.search_limit),
            closure_cap: (c.closure_cap != d.closure_cap).then_some(c.closure_cap),
            fast_path: (c.fast_path != d.fast_path).then_some(c.fast_path),
            jobs: (c.jobs != d.jobs).then_some(c.jobs),
        },
    };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GroupJson {
    #[serde(default)]
    field: Vec<Value>,
    n: usize,
    generators: Vec<GeneratorJson>,
}

/// A bare generator list: {"field": [...], "n": .., "generators": [...]}.
pub fn parse_group(text: &str) -> Result<GroupDescription> {
    let g: GroupJson = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let k = parse_field(&g.field)?;
    parse_generators(&k, g.n, &g.generators)
}

pub fn group_to_json(g: &GroupDescription) -> String {
    let out = GroupJson {
        field: field_to_json(g.field()).as_array().cloned().unwrap_or_default(),
        n: g.n(),
        generators: generators_to_json(g),
    };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ComponentJson {
    modulus: u64,
    polynomial: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ImageJson {
    label: String,
    images: Vec<Vec<Vec<Vec<u64>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CertificateJson {
    format: String,
    field: Vec<Value>,
    n: usize,
    conjugator: Vec<Vec<Value>>,
    components: Vec<ComponentJson>,
    gamma_images: Vec<ImageJson>,
    subgroup_images: Vec<ImageJson>,
    h_image: Vec<Vec<Vec<Vec<u64>>>>,
    closure_order: u64,
}

fn finite_to_json(m: &FiniteMatrix) -> Vec<Vec<Vec<u64>>> {
    let n = m.n();
    let e = m.entries();
    (0..n).map(|i| e[i * n..(i + 1) * n].to_vec()).collect()
}

fn tuple_to_json(t: &[FiniteMatrix]) -> Vec<Vec<Vec<Vec<u64>>>> {
    t.iter().map(finite_to_json).collect()
}

fn parse_tuple(rings: &[FiniteRing], n: usize, t: &[Vec<Vec<Vec<u64>>>]) -> Result<Vec<FiniteMatrix>> {
    if t.len() != rings.len() {
        return Err(perr("image tuple length differs from the number of components"));
    }
    rings
        .iter()
        .zip(t)
        .map(|(r, rows)| {
            if rows.len() != n || rows.iter().any(|row| row.len() != n) {
                return Err(perr(format!("finite matrix is not {n}×{n}")));
            }
            let entries: Vec<Vec<u64>> = rows.iter().flatten().cloned().collect();
            if entries.iter().flatten().any(|&c| c >= r.modulus()) {
                return Err(perr("residue out of range"));
            }
            Ok(r.matrix(n, &entries))
        })
        .collect()
}

pub fn certificate_to_json(c: &SeparationCertificate) -> String {
    let images = |xs: &[(String, Vec<FiniteMatrix>)]| {
        xs.iter().map(|(l, t)| ImageJson { label: l.clone(), images: tuple_to_json(t) }).collect()
    };
    let out = CertificateJson {
        format: CERTIFICATE_FORMAT.into(),
        field: field_to_json(&c.field).as_array().cloned().unwrap_or_default(),
        n: c.n,
        conjugator: matrix_to_json(&c.conjugator),
        components: c
            .components
            .iter()
            .map(|s| ComponentJson { modulus: s.modulus, polynomial: s.poly.clone() })
            .collect(),
        gamma_images: images(&c.gamma_images),
        subgroup_images: images(&c.subgroup_images),
        h_image: tuple_to_json(&c.h_image),
        closure_order: c.closure_order,
    };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}

/// Loads a certificate without validating the residue maps; that is left to
/// the verifier so that corrupted certificates are rejected with a reason.
pub fn parse_certificate(text: &str) -> Result<SeparationCertificate> {
    let c: CertificateJson = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    if c.format != CERTIFICATE_FORMAT {
        return Err(perr(format!("unknown certificate format {:?}", c.format)));
    }
    let k = parse_field(&c.field)?;
    let rings = c
        .components
        .iter()
        .map(|s| FiniteRing::new(s.modulus, s.polynomial.clone()).map_err(|e| perr(e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let images = |xs: &[ImageJson]| {
        xs.iter()
            .map(|i| Ok((i.label.clone(), parse_tuple(&rings, c.n, &i.images)?)))
            .collect::<Result<Vec<_>>>()
    };
    Ok(SeparationCertificate {
        field: k.clone(),
        n: c.n,
        conjugator: parse_matrix(&k, c.n, &c.conjugator)?,
        components: c
            .components
            .iter()
            .map(|s| ResidueSpec { modulus: s.modulus, poly: s.polynomial.clone() })
            .collect(),
        gamma_images: images(&c.gamma_images)?,
        subgroup_images: images(&c.subgroup_images)?,
        h_image: parse_tuple(&rings, c.n, &c.h_image)?,
        closure_order: c.closure_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separator::{separate_abelian, verify_certificate};

    const DIAG: &str = r#"{
        "field": [],
        "n": 2,
        "gamma": [
            {"label": "x", "matrix": [["2", "0"], ["0", "1"]]},
            {"label": "y", "matrix": [["3", "0"], ["0", "1"]]}
        ],
        "subgroup": [{"label": "z", "matrix": [["4", "0"], ["0", "1"]]}],
        "target": [["2", "0"], ["0", "1"]]
    }"#;

    #[test]
    fn problem_round_trip() {
        let p = parse_problem(DIAG).unwrap();
        assert_eq!(p.config, Config::default());
        let text = problem_to_json(&p);
        assert_eq!(parse_problem(&text).unwrap(), p);
        assert_eq!(problem_to_json(&parse_problem(&text).unwrap()), text);
    }

    #[test]
    fn certificate_round_trip() {
        let p = parse_problem(DIAG).unwrap();
        let s = separate_abelian(&p.gamma, &p.subgroup, &p.target, &p.config).unwrap();
        let text = certificate_to_json(&s.certificate);
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back, s.certificate);
        assert_eq!(certificate_to_json(&back), text);
        assert!(verify_certificate(&back, &p.gamma, &p.subgroup, &p.target).ok);
    }

    #[test]
    fn elements_in_extensions() {
        let k = parse_field(&[Value::from(-2), Value::from(0), Value::from(1)]).unwrap();
        let e = parse_element(&k, &serde_json::json!(["1", "1/2"])).unwrap();
        assert_eq!(element_to_json(&e), serde_json::json!(["1", "1/2"]));
        let r = parse_element(&k, &serde_json::json!("3/4")).unwrap();
        assert_eq!(element_to_json(&r), serde_json::json!(["3/4", "0"]));
    }

    #[test]
    fn malformed_inputs() {
        let bad = DIAG.replace(r#"["0", "1"]]}"#, r#"["0"]]}"#);
        assert!(matches!(parse_problem(&bad), Err(Error::Parse(_))));
        assert!(matches!(parse_problem("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_problem(&DIAG.replace("\"2\"", "\"two\"")), Err(Error::Parse(_))));
    }
}
