//! Superderivations of `H^{a,b}`: the graded Leibniz check, the exact
//! solver, the closed-form families, inner superderivations and the
//! super-commutator on `Der_s`.

use std::fmt;

use crate::algebra::{basis_parity, signed, AlgebraParams, Parity, Quaternion, BASIS_NAMES};
use crate::error::{Error, Result};
use crate::linear::{constraint_matrix, nullspace, LinMap, Matrix, SolutionSpace};
use crate::ring::RingElement;

/// Coordinates of a homogeneous superderivation in the closed-form family of
/// its degree.
///
/// Degree 0 maps are `λ` times `j -> k, k -> -a j` (and `1, i -> 0`).
/// Degree 1 maps send `j -> μ`, `k -> ν`, `i -> -b⁻¹ν j + b⁻¹μ k` and `1 -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationParams {
    Even { lambda: RingElement },
    Odd { mu: RingElement, nu: RingElement },
}

impl DerivationParams {
    pub fn degree(&self) -> Parity {
        match self {
            DerivationParams::Even { .. } => Parity::Even,
            DerivationParams::Odd { .. } => Parity::Odd,
        }
    }

    pub fn zero(params: &AlgebraParams, degree: Parity) -> DerivationParams {
        let z = params.ring().zero();
        match degree {
            Parity::Even => DerivationParams::Even { lambda: z },
            Parity::Odd => DerivationParams::Odd {
                mu: z.clone(),
                nu: z,
            },
        }
    }

    /// Builds the parameters from a coordinate vector (`[λ]` or `[μ, ν]`).
    pub fn from_coords(degree: Parity, coords: &[RingElement]) -> Result<DerivationParams> {
        match (degree, coords) {
            (Parity::Even, [lambda]) => Ok(DerivationParams::Even {
                lambda: lambda.clone(),
            }),
            (Parity::Odd, [mu, nu]) => Ok(DerivationParams::Odd {
                mu: mu.clone(),
                nu: nu.clone(),
            }),
            _ => Err(Error::Domain(format!(
                "degree {degree} needs {} coordinates, got {}",
                family_size(degree),
                coords.len()
            ))),
        }
    }

    pub fn coords(&self) -> Vec<RingElement> {
        match self {
            DerivationParams::Even { lambda } => vec![lambda.clone()],
            DerivationParams::Odd { mu, nu } => vec![mu.clone(), nu.clone()],
        }
    }

    pub fn to_linmap(&self, params: &AlgebraParams) -> Result<LinMap> {
        let ring = params.ring();
        let mut m = LinMap::zero(params);
        match self {
            DerivationParams::Even { lambda } => {
                if lambda.ring() != ring {
                    return Err(Error::Domain("λ outside the algebra's ring".into()));
                }
                m.set_entry(2, 3, -(params.a() * lambda));
                m.set_entry(3, 2, lambda.clone());
            }
            DerivationParams::Odd { mu, nu } => {
                if mu.ring() != ring || nu.ring() != ring {
                    return Err(Error::Domain("μ, ν outside the algebra's ring".into()));
                }
                m.set_entry(0, 2, mu.clone());
                m.set_entry(0, 3, nu.clone());
                m.set_entry(2, 1, -(params.b_inv() * nu));
                m.set_entry(3, 1, params.b_inv() * mu);
            }
        }
        Ok(m)
    }

    /// Reads the canonical coordinates off a matrix: `λ = m_43`, `μ = m_13`, `ν = m_14`.
    pub fn read_from(d: &LinMap, degree: Parity) -> DerivationParams {
        match degree {
            Parity::Even => DerivationParams::Even {
                lambda: d.entry(3, 2).clone(),
            },
            Parity::Odd => DerivationParams::Odd {
                mu: d.entry(0, 2).clone(),
                nu: d.entry(0, 3).clone(),
            },
        }
    }
}

impl fmt::Display for DerivationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationParams::Even { lambda } => write!(f, "λ = {lambda}"),
            DerivationParams::Odd { mu, nu } => write!(f, "μ = {mu}, ν = {nu}"),
        }
    }
}

/// Dimension of the closed-form family: 1 for degree 0, 2 for degree 1.
pub fn family_size(degree: Parity) -> usize {
    match degree {
        Parity::Even => 1,
        Parity::Odd => 2,
    }
}

/// Basis of the closed-form family, one map per coordinate.
pub fn family_basis(params: &AlgebraParams, degree: Parity) -> Vec<LinMap> {
    let ring = params.ring();
    (0..family_size(degree))
        .map(|t| {
            let coords: Vec<_> = (0..family_size(degree))
                .map(|s| if s == t { ring.one() } else { ring.zero() })
                .collect();
            DerivationParams::from_coords(degree, &coords)
                .and_then(|p| p.to_linmap(params))
                .expect("well-formed family coordinates")
        })
        .collect()
}

/// Why a map fails to be a superderivation of the requested degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationViolation {
    /// `D(e_q)` has a component outside `A_{|e_q| + degree}`.
    Grading { basis: usize },
    /// `D(e_p e_q) != D(e_p) e_q + (-1)^{degree |e_p|} e_p D(e_q)`.
    Leibniz { left: usize, right: usize },
}

impl fmt::Display for DerivationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationViolation::Grading { basis } => {
                write!(f, "image of {} has the wrong parity", BASIS_NAMES[*basis])
            }
            DerivationViolation::Leibniz { left, right } => write!(
                f,
                "graded Leibniz rule fails at ({}, {})",
                BASIS_NAMES[*left], BASIS_NAMES[*right]
            ),
        }
    }
}

/// `D(xy) - D(x) y - (-1)^{degree |x|} x D(y)` for basis elements `x = e_p`, `y = e_q`.
fn leibniz_defect(d: &LinMap, degree: Parity, p: usize, q: usize) -> Quaternion {
    let params = d.params();
    let (ep, eq) = (params.basis(p), params.basis(q));
    let lhs = d.apply_unchecked(&(&ep * &eq));
    let first = &d.column(p) * &eq;
    let second = signed(&ep * &d.column(q), degree.times(basis_parity(p)).is_odd());
    &(&lhs - &first) - &second
}

/// Checks the grading condition and then the graded Leibniz rule on all 16
/// basis pairs, returning the first violation.
pub fn is_superderivation(d: &LinMap, degree: Parity) -> Result<(), DerivationViolation> {
    for q in 0..4 {
        let wrong = d
            .column(q)
            .component(basis_parity(q) + degree + Parity::Odd);
        if !wrong.is_zero() {
            return Err(DerivationViolation::Grading { basis: q });
        }
    }
    for p in 0..4 {
        for q in 0..4 {
            if !leibniz_defect(d, degree, p, q).is_zero() {
                return Err(DerivationViolation::Leibniz { left: p, right: q });
            }
        }
    }
    Ok(())
}

/// Every scalar constraint a degree-`degree` superderivation satisfies,
/// as a list of linear residuals in the matrix entries.
pub fn superderivation_residuals(d: &LinMap, degree: Parity) -> Vec<RingElement> {
    let mut out = Vec::with_capacity(8 + 64);
    for r in 0..4 {
        for c in 0..4 {
            if basis_parity(r) != basis_parity(c) + degree {
                out.push(d.entry(r, c).clone());
            }
        }
    }
    for p in 0..4 {
        for q in 0..4 {
            out.extend(leibniz_defect(d, degree, p, q).to_vector());
        }
    }
    out
}

/// The solved space of homogeneous superderivations of one degree.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub degree: Parity,
    pub space: SolutionSpace,
    pub maps: Vec<LinMap>,
    /// Closed-form coordinates of each basis map.
    pub params_form: Vec<DerivationParams>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Solves the grading and Leibniz constraints for the 16 matrix entries.
///
/// Each basis vector is matched against the closed-form family; a mismatch
/// is reported as `InternalContradiction`.
pub fn solve_superderivations(params: &AlgebraParams, degree: Parity) -> Result<DerivationSpace> {
    let ring = params.ring();
    ring.require_field()?;
    let a = constraint_matrix(ring, 16, |v| {
        let d = LinMap::from_flat(params, v).expect("16 entries");
        superderivation_residuals(&d, degree)
    })?;
    let space = nullspace(&a)?;
    let maps = space.as_linmaps(params)?;
    let mut params_form = Vec::with_capacity(maps.len());
    for m in &maps {
        let form = DerivationParams::read_from(m, degree);
        if form.to_linmap(params)? != *m {
            return Err(Error::InternalContradiction(format!(
                "solved degree-{degree} superderivation does not match the closed form:\n{m}"
            )));
        }
        params_form.push(form);
    }
    Ok(DerivationSpace {
        degree,
        space,
        maps,
        params_form,
    })
}

/// `Der_s = Der_0 ⊕ Der_1` as a subspace of the 16-dimensional matrix space.
pub fn solve_all_superderivations(params: &AlgebraParams) -> Result<SolutionSpace> {
    let even = solve_superderivations(params, Parity::Even)?;
    let odd = solve_superderivations(params, Parity::Odd)?;
    let basis = even
        .space
        .basis()
        .iter()
        .chain(odd.space.basis())
        .cloned()
        .collect();
    SolutionSpace::new(params.ring(), 16, basis)
}

/// `I_x(y) = [x, y]_s`.
pub fn inner_superderivation(x: &Quaternion) -> LinMap {
    let params = x.params();
    let images = params
        .basis_elements()
        .map(|e| x.lie_super(&e).expect("same algebra"));
    LinMap::from_images(params, images)
}

/// `(I_{x_0}, I_{x_1})`, the homogeneous parts of `I_x` of degree 0 and 1.
pub fn inner_decomposition(x: &Quaternion) -> (LinMap, LinMap) {
    let (x0, x1) = x.grade_split();
    (inner_superderivation(&x0), inner_superderivation(&x1))
}

/// `dim Der_s - dim span{I_1, I_i, I_j, I_k}`.
pub fn outer_dimension(params: &AlgebraParams) -> Result<usize> {
    let ring = params.ring();
    ring.require_field()?;
    let der = solve_all_superderivations(params)?;
    let inner: Vec<Vec<RingElement>> = params
        .basis_elements()
        .iter()
        .map(|e| inner_superderivation(e).to_flat())
        .collect();
    for (v, name) in inner.iter().zip(BASIS_NAMES) {
        if !der.contains(v)? {
            return Err(Error::InternalContradiction(format!(
                "I_{name} is not in the solved superderivation space"
            )));
        }
    }
    let inner_rank = Matrix::from_columns(ring, 16, &inner)?.rank()?;
    Ok(der.dim() - inner_rank)
}

/// `[D, E]_s = DE - (-1)^{|D||E|} ED` for homogeneous superderivations.
pub fn superbracket(d: (&LinMap, Parity), e: (&LinMap, Parity)) -> Result<LinMap> {
    let ((dm, dp), (em, ep)) = (d, e);
    for (m, p, which) in [(dm, dp, "left"), (em, ep, "right")] {
        if let Err(v) = is_superderivation(m, p) {
            return Err(Error::InputNotDerivation(format!(
                "{which} operand of degree {p}: {v}"
            )));
        }
    }
    let de = dm.compose(em)?;
    let ed = em.compose(dm)?;
    let bracket = if dp.times(ep).is_odd() {
        de.add(&ed)?
    } else {
        de.sub(&ed)?
    };
    if let Err(v) = is_superderivation(&bracket, dp + ep) {
        return Err(Error::InternalContradiction(format!(
            "superbracket left Der_s: {v}"
        )));
    }
    Ok(bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn hq(a: i64, b: i64) -> AlgebraParams {
        AlgebraParams::from_i64(Ring::Rationals, a, b).unwrap()
    }

    #[test]
    fn closed_forms_are_superderivations() {
        let h = hq(2, 3);
        let r = h.ring();
        let even = DerivationParams::Even { lambda: r.one() }
            .to_linmap(&h)
            .unwrap();
        assert_eq!(is_superderivation(&even, Parity::Even), Ok(()));
        let odd = DerivationParams::Odd {
            mu: r.from_i64(4),
            nu: r.from_i64(-1),
        }
        .to_linmap(&h)
        .unwrap();
        assert_eq!(is_superderivation(&odd, Parity::Odd), Ok(()));
        assert!(is_superderivation(&odd, Parity::Even).is_err());
    }

    #[test]
    fn closed_form_apply_examples() {
        let h = hq(2, 3);
        let r = h.ring();
        let even = DerivationParams::Even { lambda: r.one() }
            .to_linmap(&h)
            .unwrap();
        assert_eq!(even.apply(&h.basis(2)).unwrap(), h.basis(3));
        let odd = DerivationParams::Odd {
            mu: r.one(),
            nu: r.zero(),
        }
        .to_linmap(&h)
        .unwrap();
        assert_eq!(odd.apply(&h.basis(1)).unwrap(), h.basis(3).scale(h.b_inv()));
    }

    #[test]
    fn zero_and_identity() {
        let h = hq(1, 1);
        for deg in [Parity::Even, Parity::Odd] {
            assert_eq!(is_superderivation(&LinMap::zero(&h), deg), Ok(()));
        }
        assert_eq!(
            is_superderivation(&LinMap::identity(&h), Parity::Even),
            Err(DerivationViolation::Leibniz { left: 0, right: 0 })
        );
        assert_eq!(
            is_superderivation(&LinMap::identity(&h), Parity::Odd),
            Err(DerivationViolation::Grading { basis: 0 })
        );
    }

    #[test]
    fn solver_dimensions_over_q() {
        let h = hq(1, 1);
        let even = solve_superderivations(&h, Parity::Even).unwrap();
        assert_eq!(even.dim(), 1);
        let m = &even.maps[0];
        assert_eq!(m.entry(2, 3), &-m.entry(3, 2));
        assert_eq!(solve_superderivations(&h, Parity::Odd).unwrap().dim(), 2);
    }

    #[test]
    fn solver_over_f5() {
        let f5 = Ring::prime_field(5).unwrap();
        let h = AlgebraParams::from_i64(f5, 2, 3).unwrap();
        let even = solve_superderivations(&h, Parity::Even).unwrap();
        assert_eq!(even.dim(), 1);
        let m = &even.maps[0];
        assert_eq!(m.entry(2, 3), &(&f5.from_i64(-2) * m.entry(3, 2)));
    }

    #[test]
    fn solver_refuses_residue_rings() {
        let z9 = Ring::residue_ring(9).unwrap();
        let h = AlgebraParams::from_i64(z9, 2, 4).unwrap();
        assert!(matches!(
            solve_superderivations(&h, Parity::Even),
            Err(Error::UnsupportedRing(_))
        ));
        assert!(matches!(
            outer_dimension(&h),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn inner_examples() {
        let h = hq(2, 3);
        let r = h.ring();
        assert!(inner_superderivation(&h.one()).is_zero());
        assert_eq!(
            inner_superderivation(&h.basis(1)),
            DerivationParams::Even {
                lambda: r.from_i64(2)
            }
            .to_linmap(&h)
            .unwrap()
        );
        assert_eq!(
            inner_superderivation(&h.basis(2)),
            DerivationParams::Odd {
                mu: r.from_i64(-6),
                nu: r.zero()
            }
            .to_linmap(&h)
            .unwrap()
        );
    }

    #[test]
    fn outer_dimension_vanishes() {
        assert_eq!(outer_dimension(&hq(1, 1)).unwrap(), 0);
        let f7 = Ring::prime_field(7).unwrap();
        assert_eq!(
            outer_dimension(&AlgebraParams::from_i64(f7, 3, 5).unwrap()).unwrap(),
            0
        );
        assert_eq!(solve_all_superderivations(&hq(1, 1)).unwrap().dim(), 3);
    }

    #[test]
    fn bracket_examples() {
        let h = hq(2, 3);
        let r = h.ring();
        let d = DerivationParams::Even {
            lambda: r.from_i64(5),
        }
        .to_linmap(&h)
        .unwrap();
        assert!(superbracket((&d, Parity::Even), (&d, Parity::Even))
            .unwrap()
            .is_zero());

        let ii = inner_superderivation(&h.basis(1));
        let ij = inner_superderivation(&h.basis(2));
        let expected = inner_superderivation(&h.basis(3).scale(&r.from_i64(2)));
        assert_eq!(
            superbracket((&ii, Parity::Even), (&ij, Parity::Odd)).unwrap(),
            expected
        );

        let e = DerivationParams::Odd {
            mu: r.one(),
            nu: r.zero(),
        }
        .to_linmap(&h)
        .unwrap();
        let ee = superbracket((&e, Parity::Odd), (&e, Parity::Odd)).unwrap();
        assert_eq!(ee, e.compose(&e).unwrap().scale(&r.from_i64(2)));
        assert_eq!(is_superderivation(&ee, Parity::Even), Ok(()));

        assert!(matches!(
            superbracket((&LinMap::identity(&h), Parity::Even), (&d, Parity::Even)),
            Err(Error::InputNotDerivation(_))
        ));
    }
}
