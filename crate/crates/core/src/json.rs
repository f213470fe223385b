//! JSON encodings.
//!
//! Ring elements are strings (`"3"`, `"-1/2"`); readers also accept JSON
//! integers. Descriptors are `{"kind":"Q"}`, `{"kind":"Fp","p":5}` or
//! `{"kind":"Zn","n":9}`. Output goes through [`serde_json::Value`], whose
//! map type keeps keys sorted, so the printed form is canonical.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgebraParams, Parity, Quaternion};
use crate::biderivations::{BiderivationSpace, RealPartAdjudication, Symmetry};
use crate::derivations::{DerivationParams, DerivationSpace};
use crate::error::{Error, Result};
use crate::linear::{BilinMap, LinMap};
use crate::local::LocalVerdict;
use crate::ring::{Ring, RingElement};

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RingJson {
    Q,
    Fp { p: u64 },
    Zn { n: u64 },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
enum ElemJson {
    Str(String),
    Int(i64),
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct AlgebraJson {
    ring: RingJson,
    a: ElemJson,
    b: ElemJson,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct QuaternionJson {
    coeffs: Vec<ElemJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct LinMapJson {
    matrix: Vec<Vec<ElemJson>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct BilinMapJson {
    values: Vec<Vec<QuaternionJson>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
enum ParamsJson {
    Even { lambda: ElemJson },
    Odd { mu: ElemJson, nu: ElemJson },
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct DerivationSpaceJson {
    degree: u8,
    dim: usize,
    basis: Vec<LinMapJson>,
    params_form: Vec<ParamsJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
struct BiderivationSpaceJson {
    degree: u8,
    symmetry: String,
    dim: usize,
    basis: Vec<BilinMapJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(tag = "verdict", rename_all = "snake_case")]
enum VerdictJson {
    Derivation {
        params: ParamsJson,
    },
    NotLocal {
        witness: Vec<ElemJson>,
        reason: String,
    },
}

fn parse_text<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn from_value<T: for<'a> Deserialize<'a>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("JSON DTOs always serialize")
}

/// Pretty-printed canonical form.
pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

// --- rings and elements ---

fn ring_dto(ring: Ring) -> RingJson {
    match ring {
        Ring::Rationals => RingJson::Q,
        Ring::PrimeField(p) => RingJson::Fp { p },
        Ring::ResidueRing(n) => RingJson::Zn { n },
    }
}

fn ring_from_dto(r: RingJson) -> Result<Ring> {
    match r {
        RingJson::Q => Ok(Ring::Rationals),
        RingJson::Fp { p } => Ring::prime_field(p),
        RingJson::Zn { n } => Ring::residue_ring(n),
    }
}

pub fn ring_to_json(ring: Ring) -> Value {
    to_value(&ring_dto(ring))
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    ring_from_dto(from_value(v, "ring descriptor")?)
}

fn elem_dto(x: &RingElement) -> ElemJson {
    ElemJson::Str(x.to_string())
}

fn elem_from_dto(ring: Ring, e: &ElemJson) -> Result<RingElement> {
    match e {
        ElemJson::Str(s) => ring.parse(s),
        ElemJson::Int(i) => Ok(ring.from_i64(*i)),
    }
}

pub fn element_to_json(x: &RingElement) -> Value {
    to_value(&elem_dto(x))
}

pub fn element_from_json(ring: Ring, v: &Value) -> Result<RingElement> {
    elem_from_dto(ring, &from_value(v, "ring element")?)
}

// --- algebra context and elements ---

pub fn algebra_to_json(params: &AlgebraParams) -> Value {
    to_value(&AlgebraJson {
        ring: ring_dto(params.ring()),
        a: elem_dto(params.a()),
        b: elem_dto(params.b()),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<AlgebraParams> {
    let dto: AlgebraJson = from_value(v, "algebra")?;
    let ring = ring_from_dto(dto.ring)?;
    AlgebraParams::new(
        ring,
        elem_from_dto(ring, &dto.a)?,
        elem_from_dto(ring, &dto.b)?,
    )
}

fn quaternion_dto(x: &Quaternion) -> QuaternionJson {
    QuaternionJson {
        coeffs: x.coeffs().iter().map(elem_dto).collect(),
    }
}

fn quaternion_from_dto(params: &AlgebraParams, q: &QuaternionJson) -> Result<Quaternion> {
    coeff_list(params, &q.coeffs)
}

fn coeff_list(params: &AlgebraParams, coeffs: &[ElemJson]) -> Result<Quaternion> {
    let v = coeffs
        .iter()
        .map(|e| elem_from_dto(params.ring(), e))
        .collect::<Result<Vec<_>>>()?;
    params.from_vector(&v)
}

pub fn quaternion_to_json(x: &Quaternion) -> Value {
    to_value(&quaternion_dto(x))
}

pub fn quaternion_from_json(params: &AlgebraParams, v: &Value) -> Result<Quaternion> {
    quaternion_from_dto(params, &from_value(v, "quaternion")?)
}

pub fn parse_quaternion(params: &AlgebraParams, text: &str) -> Result<Quaternion> {
    quaternion_from_dto(params, &parse_text(text, "quaternion")?)
}

// --- maps ---

fn linmap_dto(m: &LinMap) -> LinMapJson {
    LinMapJson {
        matrix: m
            .matrix()
            .iter()
            .map(|row| row.iter().map(elem_dto).collect())
            .collect(),
    }
}

fn linmap_from_dto(params: &AlgebraParams, m: &LinMapJson) -> Result<LinMap> {
    if m.matrix.len() != 4 || m.matrix.iter().any(|r| r.len() != 4) {
        return Err(Error::Parse("matrix must be 4 rows of 4 entries".into()));
    }
    let flat = m
        .matrix
        .iter()
        .flatten()
        .map(|e| elem_from_dto(params.ring(), e))
        .collect::<Result<Vec<_>>>()?;
    LinMap::from_flat(params, &flat)
}

pub fn linmap_to_json(m: &LinMap) -> Value {
    to_value(&linmap_dto(m))
}

pub fn linmap_from_json(params: &AlgebraParams, v: &Value) -> Result<LinMap> {
    linmap_from_dto(params, &from_value(v, "linear map")?)
}

pub fn parse_linmap(params: &AlgebraParams, text: &str) -> Result<LinMap> {
    linmap_from_dto(params, &parse_text(text, "linear map")?)
}

fn bilinmap_dto(b: &BilinMap) -> BilinMapJson {
    BilinMapJson {
        values: b
            .values()
            .iter()
            .map(|row| row.iter().map(quaternion_dto).collect())
            .collect(),
    }
}

fn bilinmap_from_dto(params: &AlgebraParams, b: &BilinMapJson) -> Result<BilinMap> {
    if b.values.len() != 4 || b.values.iter().any(|r| r.len() != 4) {
        return Err(Error::Parse(
            "values must be 4 rows of 4 quaternions".into(),
        ));
    }
    let mut out = BilinMap::zero(params);
    for (p, row) in b.values.iter().enumerate() {
        for (q, v) in row.iter().enumerate() {
            out.set_value(p, q, quaternion_from_dto(params, v)?);
        }
    }
    Ok(out)
}

pub fn bilinmap_to_json(b: &BilinMap) -> Value {
    to_value(&bilinmap_dto(b))
}

pub fn bilinmap_from_json(params: &AlgebraParams, v: &Value) -> Result<BilinMap> {
    bilinmap_from_dto(params, &from_value(v, "bilinear map")?)
}

pub fn parse_bilinmap(params: &AlgebraParams, text: &str) -> Result<BilinMap> {
    bilinmap_from_dto(params, &parse_text(text, "bilinear map")?)
}

// --- derivation parameters and solution spaces ---

fn params_dto(p: &DerivationParams) -> ParamsJson {
    match p {
        DerivationParams::Even { lambda } => ParamsJson::Even {
            lambda: elem_dto(lambda),
        },
        DerivationParams::Odd { mu, nu } => ParamsJson::Odd {
            mu: elem_dto(mu),
            nu: elem_dto(nu),
        },
    }
}

fn params_from_dto(ring: Ring, p: &ParamsJson) -> Result<DerivationParams> {
    Ok(match p {
        ParamsJson::Even { lambda } => DerivationParams::Even {
            lambda: elem_from_dto(ring, lambda)?,
        },
        ParamsJson::Odd { mu, nu } => DerivationParams::Odd {
            mu: elem_from_dto(ring, mu)?,
            nu: elem_from_dto(ring, nu)?,
        },
    })
}

pub fn derivation_params_to_json(p: &DerivationParams) -> Value {
    to_value(&params_dto(p))
}

pub fn derivation_params_from_json(ring: Ring, v: &Value) -> Result<DerivationParams> {
    params_from_dto(ring, &from_value(v, "derivation parameters")?)
}

pub fn derivation_space_to_json(s: &DerivationSpace) -> Value {
    to_value(&DerivationSpaceJson {
        degree: s.degree.value(),
        dim: s.dim(),
        basis: s.maps.iter().map(linmap_dto).collect(),
        params_form: s.params_form.iter().map(params_dto).collect(),
    })
}

/// Reads back a derivation space: its degree, basis maps and closed-form coordinates.
pub fn derivation_space_from_json(
    params: &AlgebraParams,
    v: &Value,
) -> Result<(Parity, Vec<LinMap>, Vec<DerivationParams>)> {
    let dto: DerivationSpaceJson = from_value(v, "derivation space")?;
    let degree = Parity::from_u8(dto.degree)?;
    let maps = dto
        .basis
        .iter()
        .map(|m| linmap_from_dto(params, m))
        .collect::<Result<Vec<_>>>()?;
    let forms = dto
        .params_form
        .iter()
        .map(|p| params_from_dto(params.ring(), p))
        .collect::<Result<Vec<_>>>()?;
    if maps.len() != dto.dim || forms.len() != dto.dim {
        return Err(Error::Parse("dim disagrees with the basis length".into()));
    }
    Ok((degree, maps, forms))
}

pub fn symmetry_from_name(s: &str) -> Result<Symmetry> {
    match s {
        "any" => Ok(Symmetry::Any),
        "skew" => Ok(Symmetry::SuperSkew),
        "sym" => Ok(Symmetry::SuperSymmetric),
        _ => Err(Error::Parse(format!("unknown symmetry {s:?}"))),
    }
}

pub fn biderivation_space_to_json(s: &BiderivationSpace) -> Value {
    to_value(&BiderivationSpaceJson {
        degree: s.spec.degree.value(),
        symmetry: s.spec.symmetry.name().to_string(),
        dim: s.dim(),
        basis: s.maps.iter().map(bilinmap_dto).collect(),
    })
}

pub fn biderivation_space_from_json(
    params: &AlgebraParams,
    v: &Value,
) -> Result<(Parity, Symmetry, Vec<BilinMap>)> {
    let dto: BiderivationSpaceJson = from_value(v, "biderivation space")?;
    let maps = dto
        .basis
        .iter()
        .map(|b| bilinmap_from_dto(params, b))
        .collect::<Result<Vec<_>>>()?;
    if maps.len() != dto.dim {
        return Err(Error::Parse("dim disagrees with the basis length".into()));
    }
    Ok((
        Parity::from_u8(dto.degree)?,
        symmetry_from_name(&dto.symmetry)?,
        maps,
    ))
}

// --- verdicts ---

pub fn local_verdict_to_json(v: &LocalVerdict) -> Value {
    to_value(&match v {
        LocalVerdict::IsDerivation(p) => VerdictJson::Derivation {
            params: params_dto(p),
        },
        LocalVerdict::NotLocal { witness, reason } => VerdictJson::NotLocal {
            witness: witness.coeffs().iter().map(elem_dto).collect(),
            reason: reason.clone(),
        },
    })
}

pub fn local_verdict_from_json(params: &AlgebraParams, v: &Value) -> Result<LocalVerdict> {
    Ok(match from_value::<VerdictJson>(v, "local verdict")? {
        VerdictJson::Derivation { params: p } => {
            LocalVerdict::IsDerivation(params_from_dto(params.ring(), &p)?)
        }
        VerdictJson::NotLocal { witness, reason } => LocalVerdict::NotLocal {
            witness: coeff_list(params, &witness)?,
            reason,
        },
    })
}

pub fn adjudication_to_json(a: &RealPartAdjudication) -> Value {
    serde_json::json!({
        "displayed_x3y3": a.displayed_x3y3.to_string(),
        "basis_value_x3y3": a.basis_value_x3y3.to_string(),
        "certified_x3y3": a.certified_x3y3.to_string(),
        "certified_x4y4": a.certified_x4y4.to_string(),
        "canonical_eval_x3y3": a.canonical_eval_x3y3.to_string(),
        "basis_matches_family": a.basis_matches_family,
        "consistent": a.consistent(),
        "displayed_is_certified": a.displayed_is_certified(),
    })
}
