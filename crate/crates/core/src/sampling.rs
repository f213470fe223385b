//! Random elements and maps for sweeps and property checks.

use rand::Rng;

use crate::algebra::{AlgebraParams, Parity, Quaternion};
use crate::linear::LinMap;
use crate::ring::{Ring, RingElement};

/// Uniform over a modular ring; over the rationals, `n/d` with `|n| <= 5`, `1 <= d <= 3`.
pub fn random_element<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> RingElement {
    match ring.modulus() {
        Some(m) => ring.from_residue(rng.gen_range(0..m)),
        None => {
            let n = rng.gen_range(-5i64..=5);
            let d = rng.gen_range(1i64..=3);
            &ring.from_i64(n) * &ring.from_i64(d).try_invert().expect("nonzero")
        }
    }
}

pub fn random_quaternion<R: Rng + ?Sized>(params: &AlgebraParams, rng: &mut R) -> Quaternion {
    let ring = params.ring();
    params
        .quaternion(std::array::from_fn(|_| random_element(ring, rng)))
        .expect("same ring")
}

/// A matrix with independent uniform entries.
pub fn random_linmap<R: Rng + ?Sized>(params: &AlgebraParams, rng: &mut R) -> LinMap {
    let ring = params.ring();
    let flat: Vec<_> = (0..16).map(|_| random_element(ring, rng)).collect();
    LinMap::from_flat(params, &flat).expect("16 entries")
}

/// A random map that agrees with *some* superderivation of the given degree
/// at each basis element separately (the shape left after probing `1, i, j, k`).
///
/// Degree 0: columns 1, 2 vanish, `Δ(j) ∈ R k`, `Δ(k) ∈ R j`.
/// Degree 1: column 1 vanishes, `Δ(i) ∈ R j + R k`, `Δ(j), Δ(k) ∈ R 1`.
pub fn random_basis_consistent<R: Rng + ?Sized>(
    params: &AlgebraParams,
    degree: Parity,
    rng: &mut R,
) -> LinMap {
    let ring = params.ring();
    let mut m = LinMap::zero(params);
    let slots: &[(usize, usize)] = match degree {
        Parity::Even => &[(3, 2), (2, 3)],
        Parity::Odd => &[(2, 1), (3, 1), (0, 2), (0, 3)],
    };
    for &(r, c) in slots {
        m.set_entry(r, c, random_element(ring, rng));
    }
    m
}

/// A random member of the closed-form superderivation family.
pub fn random_derivation<R: Rng + ?Sized>(
    params: &AlgebraParams,
    degree: Parity,
    rng: &mut R,
) -> LinMap {
    let ring = params.ring();
    let coords: Vec<_> = (0..crate::derivations::family_size(degree))
        .map(|_| random_element(ring, rng))
        .collect();
    crate::derivations::DerivationParams::from_coords(degree, &coords)
        .and_then(|p| p.to_linmap(params))
        .expect("well-formed coordinates")
}
