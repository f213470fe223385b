//! Local superderivations: linear maps `Δ` such that every point `x` has a
//! superderivation `d_x` of the given degree with `Δ(x) = d_x(x)`.
//!
//! [`classify_local`] decides locality from a finite probe set and then
//! fits a single superderivation; [`exhaustive_local_check`] is the literal
//! definition over a small prime field and serves as its oracle.

use crate::algebra::{AlgebraParams, Parity, Quaternion};
use crate::derivations::{family_basis, family_size, is_superderivation, DerivationParams};
use crate::error::{Error, Result};
use crate::linear::{LinMap, Matrix};
use crate::ring::Ring;

/// Largest prime accepted by [`exhaustive_local_check`].
pub const EXHAUSTIVE_PRIME_LIMIT: u64 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    IsDerivation(DerivationParams),
    NotLocal { witness: Quaternion, reason: String },
}

impl LocalVerdict {
    pub fn is_derivation(&self) -> bool {
        matches!(self, LocalVerdict::IsDerivation(_))
    }
}

/// Outcome of the exhaustive sweep.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    Local,
    NotLocal(Quaternion),
}

/// Finds family coordinates with `d(x) = Δ(x)`, or `None` when the 4-equation
/// system in `λ` (degree 0) or `(μ, ν)` (degree 1) has no solution.
pub fn pointwise_solvable(
    delta: &LinMap,
    degree: Parity,
    x: &Quaternion,
) -> Result<Option<DerivationParams>> {
    let params = delta.params();
    params.ring().require_field()?;
    let target = delta.apply(x)?;
    let family = family_basis(params, degree);
    pointwise_with_family(&family, degree, x, &target)
}

fn pointwise_with_family(
    family: &[LinMap],
    degree: Parity,
    x: &Quaternion,
    target: &Quaternion,
) -> Result<Option<DerivationParams>> {
    let ring = x.params().ring();
    let columns: Vec<_> = family
        .iter()
        .map(|f| f.apply_unchecked(x).to_vector())
        .collect();
    let system = Matrix::from_columns(ring, 4, &columns)?;
    match system.solve(&target.to_vector())? {
        Some(coords) => Ok(Some(DerivationParams::from_coords(degree, &coords)?)),
        None => Ok(None),
    }
}

/// `1, i, j, k` followed by `e_p + e_q` for `p < q`.
pub fn probe_set(params: &AlgebraParams) -> Vec<Quaternion> {
    let basis = params.basis_elements();
    let mut probes = basis.to_vec();
    for p in 0..4 {
        for q in p + 1..4 {
            probes.push(&basis[p] + &basis[q]);
        }
    }
    probes
}

/// Decides whether `Δ` is a local superderivation of the given degree and,
/// if so, returns the superderivation it coincides with.
///
/// A failed global fit after all probes pass is reported as
/// `InternalContradiction`.
pub fn classify_local(delta: &LinMap, degree: Parity) -> Result<LocalVerdict> {
    let params = delta.params();
    let ring = params.ring();
    ring.require_field()?;
    let family = family_basis(params, degree);

    for x in probe_set(params) {
        let target = delta.apply_unchecked(&x);
        if pointwise_with_family(&family, degree, &x, &target)?.is_none() {
            let reason = format!(
                "no degree-{degree} superderivation d satisfies d({x}) = Δ({x}) = {target}"
            );
            return Ok(LocalVerdict::NotLocal { witness: x, reason });
        }
    }

    // Fit one member of the family to all 16 entries.
    let columns: Vec<_> = family.iter().map(LinMap::to_flat).collect();
    let system = Matrix::from_columns(ring, 16, &columns)?;
    let coords = system.solve(&delta.to_flat())?.ok_or_else(|| {
        Error::InternalContradiction(format!(
            "every probe is pointwise solvable but no degree-{degree} superderivation equals Δ:\n{delta}"
        ))
    })?;
    let found = DerivationParams::from_coords(degree, &coords)?;
    if let Err(v) = is_superderivation(delta, degree) {
        return Err(Error::InternalContradiction(format!(
            "fitted map fails the superderivation check: {v}"
        )));
    }
    Ok(LocalVerdict::IsDerivation(found))
}

/// Tests the definition of locality at every point of `H^{a,b}` over `F_p`, `p <= 7`.
/// Points are visited in lexicographic order of their coordinates.
pub fn exhaustive_local_check(delta: &LinMap, degree: Parity) -> Result<Locality> {
    let params = delta.params();
    let ring = params.ring();
    match ring {
        Ring::PrimeField(p) if p <= EXHAUSTIVE_PRIME_LIMIT => {}
        _ => return Err(Error::EnumerationTooLarge(ring)),
    }
    let family = family_basis(params, degree);
    debug_assert_eq!(family.len(), family_size(degree));
    let elements: Vec<_> = ring.elements().expect("prime field").collect();
    for c1 in &elements {
        for c2 in &elements {
            for c3 in &elements {
                for c4 in &elements {
                    let x = params.quaternion([c1.clone(), c2.clone(), c3.clone(), c4.clone()])?;
                    let target = delta.apply_unchecked(&x);
                    if pointwise_with_family(&family, degree, &x, &target)?.is_none() {
                        return Ok(Locality::NotLocal(x));
                    }
                }
            }
        }
    }
    Ok(Locality::Local)
}
