//! Super-biderivations of `H^{a,b}`.
//!
//! A bilinear map `δ` of degree `γ` is a super-biderivation when, for all
//! homogeneous `x, y, z`,
//!
//! ```text
//! (L1) δ(xy, z) = (-1)^{γ|x|} x δ(y, z) + (-1)^{|y||z|} δ(x, z) y
//! (L2) δ(x, yz) = δ(x, y) z + (-1)^{(γ+|x|)|y|} y δ(x, z)
//! ```
//!
//! and `δ(A_α, A_β) ⊆ A_{α+β+γ}`. By bilinearity it suffices to check basis triples.

use std::fmt;

use crate::algebra::{basis_parity, signed, AlgebraParams, Parity, Quaternion, BASIS_NAMES};
use crate::error::{Error, Result};
use crate::linear::{constraint_matrix, nullspace, BilinMap, SolutionSpace};
use crate::ring::RingElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Any,
    /// `δ(x, y) = -(-1)^{|x||y|} δ(y, x)`
    SuperSkew,
    /// `δ(x, y) = (-1)^{|x||y|} δ(y, x)`
    SuperSymmetric,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Any => "any",
            Symmetry::SuperSkew => "skew",
            Symmetry::SuperSymmetric => "sym",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiderivationSpec {
    pub degree: Parity,
    pub symmetry: Symmetry,
}

impl BiderivationSpec {
    pub fn new(degree: Parity, symmetry: Symmetry) -> Self {
        BiderivationSpec { degree, symmetry }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    L1,
    L2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiderivationViolation {
    /// `δ(e_p, e_q)` leaves `A_{|e_p| + |e_q| + γ}`.
    Degree { left: usize, right: usize },
    /// An identity fails at the basis triple `(x, y, z)`.
    Identity {
        identity: Identity,
        triple: [usize; 3],
    },
}

impl fmt::Display for BiderivationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiderivationViolation::Degree { left, right } => write!(
                f,
                "value at ({}, {}) has the wrong parity",
                BASIS_NAMES[*left], BASIS_NAMES[*right]
            ),
            BiderivationViolation::Identity {
                identity,
                triple: [x, y, z],
            } => write!(
                f,
                "{identity:?} fails at ({}, {}, {})",
                BASIS_NAMES[*x], BASIS_NAMES[*y], BASIS_NAMES[*z]
            ),
        }
    }
}

fn l1_defect(b: &BilinMap, degree: Parity, x: usize, y: usize, z: usize) -> Quaternion {
    let params = b.params();
    let (ex, ey, ez) = (params.basis(x), params.basis(y), params.basis(z));
    let (px, py, pz) = (basis_parity(x), basis_parity(y), basis_parity(z));
    let lhs = b.eval_unchecked(&(&ex * &ey), &ez);
    let first = signed(&ex * b.value(y, z), degree.times(px).is_odd());
    let second = signed(b.value(x, z) * &ey, py.times(pz).is_odd());
    &(&lhs - &first) - &second
}

fn l2_defect(b: &BilinMap, degree: Parity, x: usize, y: usize, z: usize) -> Quaternion {
    let params = b.params();
    let (ey, ez) = (params.basis(y), params.basis(z));
    let (px, py) = (basis_parity(x), basis_parity(y));
    let lhs = b.eval_unchecked(&params.basis(x), &(&ey * &ez));
    let first = b.value(x, y) * &ez;
    let second = signed(&ey * b.value(x, z), (degree + px).times(py).is_odd());
    &(&lhs - &first) - &second
}

/// The part of `δ(e_p, e_q)` that must vanish for degree `γ`.
fn degree_defect(b: &BilinMap, degree: Parity, p: usize, q: usize) -> Quaternion {
    let allowed = basis_parity(p) + basis_parity(q) + degree;
    b.value(p, q).component(allowed + Parity::Odd)
}

/// `δ(e_p, e_q) + s (-1)^{|e_p||e_q|} δ(e_q, e_p)`, zero exactly when the
/// requested symmetry holds at `(p, q)`; `s = +1` for skew, `-1` for symmetric.
fn symmetry_defect(b: &BilinMap, symmetry: Symmetry, p: usize, q: usize) -> Option<Quaternion> {
    let swap_odd = basis_parity(p).times(basis_parity(q)).is_odd();
    let swapped = signed(b.value(q, p).clone(), swap_odd);
    match symmetry {
        Symmetry::Any => None,
        Symmetry::SuperSkew => Some(b.value(p, q) + &swapped),
        Symmetry::SuperSymmetric => Some(b.value(p, q) - &swapped),
    }
}

/// Checks the degree condition on the 16 basis pairs, then (L1) and (L2) on
/// the 64 basis triples, returning the first violation.
pub fn is_super_biderivation(b: &BilinMap, degree: Parity) -> Result<(), BiderivationViolation> {
    for p in 0..4 {
        for q in 0..4 {
            if !degree_defect(b, degree, p, q).is_zero() {
                return Err(BiderivationViolation::Degree { left: p, right: q });
            }
        }
    }
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                if !l1_defect(b, degree, x, y, z).is_zero() {
                    return Err(BiderivationViolation::Identity {
                        identity: Identity::L1,
                        triple: [x, y, z],
                    });
                }
                if !l2_defect(b, degree, x, y, z).is_zero() {
                    return Err(BiderivationViolation::Identity {
                        identity: Identity::L2,
                        triple: [x, y, z],
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn has_symmetry(b: &BilinMap, symmetry: Symmetry) -> bool {
    (0..4).all(|p| (0..4).all(|q| symmetry_defect(b, symmetry, p, q).is_none_or(|d| d.is_zero())))
}

/// All linear residuals of the constraint system for `spec`.
pub fn biderivation_residuals(b: &BilinMap, spec: BiderivationSpec) -> Vec<RingElement> {
    let mut out = Vec::new();
    for p in 0..4 {
        for q in 0..4 {
            out.extend(degree_defect(b, spec.degree, p, q).to_vector());
            if let Some(d) = symmetry_defect(b, spec.symmetry, p, q) {
                out.extend(d.to_vector());
            }
        }
    }
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                out.extend(l1_defect(b, spec.degree, x, y, z).to_vector());
                out.extend(l2_defect(b, spec.degree, x, y, z).to_vector());
            }
        }
    }
    out
}

/// `(skew, sym)` with `skew + sym = δ`.
pub fn symmetry_split(b: &BilinMap) -> (BilinMap, BilinMap) {
    let params = b.params();
    let half = params.ring().half();
    let swapped = |p: usize, q: usize| {
        signed(
            b.value(q, p).clone(),
            basis_parity(p).times(basis_parity(q)).is_odd(),
        )
    };
    let skew = BilinMap::from_fn(params, |p, q| (b.value(p, q) - &swapped(p, q)).scale(&half));
    let sym = BilinMap::from_fn(params, |p, q| (b.value(p, q) + &swapped(p, q)).scale(&half));
    (skew, sym)
}

#[derive(Clone, Debug)]
pub struct BiderivationSpace {
    pub spec: BiderivationSpec,
    pub space: SolutionSpace,
    pub maps: Vec<BilinMap>,
}

impl BiderivationSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Solves the stacked constraints in the 64 tensor entries.
pub fn solve_biderivations(
    params: &AlgebraParams,
    spec: BiderivationSpec,
) -> Result<BiderivationSpace> {
    let ring = params.ring();
    ring.require_field()?;
    let a = constraint_matrix(ring, 64, |v| {
        let b = BilinMap::from_flat(params, v).expect("64 entries");
        biderivation_residuals(&b, spec)
    })?;
    let space = nullspace(&a)?;
    let maps = space.as_bilinmaps(params)?;
    Ok(BiderivationSpace { spec, space, maps })
}

/// The one-parameter family of degree-0 super-biderivations, `δ = (λ/2) [x, y]_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalFamily {
    pub lambda: RingElement,
}

impl CanonicalFamily {
    pub fn new(lambda: RingElement) -> Self {
        CanonicalFamily { lambda }
    }

    /// Values on basis pairs: `δ(i,j) = λk`, `δ(i,k) = -aλj`, `δ(j,i) = -λk`,
    /// `δ(j,j) = -bλ`, `δ(k,i) = aλj`, `δ(k,k) = -abλ`, all others zero.
    pub fn to_bilinmap(&self, params: &AlgebraParams) -> Result<BilinMap> {
        if self.lambda.ring() != params.ring() {
            return Err(Error::Domain("λ outside the algebra's ring".into()));
        }
        let l = &self.lambda;
        let (a, b) = (params.a(), params.b());
        let [one, _, j, k] = params.basis_elements();
        let mut m = BilinMap::zero(params);
        m.set_value(1, 2, k.scale(l));
        m.set_value(1, 3, j.scale(&-(a * l)));
        m.set_value(2, 1, k.scale(&-l));
        m.set_value(2, 2, one.scale(&-(b * l)));
        m.set_value(3, 1, j.scale(&(a * l)));
        m.set_value(3, 3, one.scale(&-(&(a * b) * l)));
        Ok(m)
    }
}

/// Closed form of the canonical family:
/// `-bλ x₃y₃ - abλ x₄y₄ + aλ(x₄y₂ - x₂y₄) j + λ(x₂y₃ - x₃y₂) k`.
///
/// The `x₃y₃` coefficient is `-bλ`, as certified by [`adjudicate_real_part`].
pub fn canonical_eval(lambda: &RingElement, x: &Quaternion, y: &Quaternion) -> Result<Quaternion> {
    x.params().check_same(y.params())?;
    let params = x.params();
    if lambda.ring() != params.ring() {
        return Err(Error::Domain("λ outside the algebra's ring".into()));
    }
    let (a, b) = (params.a(), params.b());
    let [_, x2, x3, x4] = x.coeffs();
    let [_, y2, y3, y4] = y.coeffs();
    let real = &(&-(b * lambda) * &(x3 * y3)) - &(&(&(a * b) * lambda) * &(x4 * y4));
    let j = &(a * lambda) * &(&(x4 * y2) - &(x2 * y4));
    let k = lambda * &(&(x2 * y3) - &(x3 * y2));
    params.quaternion([real, params.ring().zero(), j, k])
}

/// The real-part coefficients of `x₃y₃` and `x₄y₄` read off the solved
/// degree-0 skew space (normalized so that `δ(i, j) = k`), next to the
/// closed-form values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPartAdjudication {
    /// `-ab`, the `x₃y₃` coefficient of the symmetric-looking displayed formula.
    pub displayed_x3y3: RingElement,
    /// `-b`, the coefficient obtained from the basis values `δ(j, j) = -bλ`.
    pub basis_value_x3y3: RingElement,
    pub certified_x3y3: RingElement,
    pub certified_x4y4: RingElement,
    /// `x₃y₃` coefficient produced by [`canonical_eval`] at `λ = 1`.
    pub canonical_eval_x3y3: RingElement,
    /// Whether the normalized solver basis equals the canonical tensor at `λ = 1`.
    pub basis_matches_family: bool,
}

impl RealPartAdjudication {
    /// Solver basis, closed-form tensor and `canonical_eval` all agree.
    pub fn consistent(&self) -> bool {
        self.basis_matches_family && self.certified_x3y3 == self.canonical_eval_x3y3
    }

    pub fn displayed_is_certified(&self) -> bool {
        self.displayed_x3y3 == self.certified_x3y3
    }
}

pub fn adjudicate_real_part(params: &AlgebraParams) -> Result<RealPartAdjudication> {
    let ring = params.ring();
    let solved = solve_biderivations(
        params,
        BiderivationSpec::new(Parity::Even, Symmetry::SuperSkew),
    )?;
    let [basis] = solved.maps.as_slice() else {
        return Err(Error::InternalContradiction(format!(
            "degree-0 skew space has dimension {}, expected 1",
            solved.dim()
        )));
    };
    let lambda = basis.value(1, 2).coeff(3).clone();
    let normalized = basis.scale(&lambda.try_invert().map_err(|_| {
        Error::InternalContradiction("solved basis has δ(i, j) without a k-component".into())
    })?);
    let [_, _, j, k] = params.basis_elements();
    let one = ring.one();
    Ok(RealPartAdjudication {
        displayed_x3y3: -(params.a() * params.b()),
        basis_value_x3y3: -params.b().clone(),
        certified_x3y3: normalized.value(2, 2).coeff(0).clone(),
        certified_x4y4: normalized.value(3, 3).coeff(0).clone(),
        canonical_eval_x3y3: canonical_eval(&one, &j, &j)?.coeff(0).clone(),
        basis_matches_family: normalized
            == CanonicalFamily::new(one.clone()).to_bilinmap(params)?
            && canonical_eval(&one, &k, &k)?.coeff(0) == normalized.value(3, 3).coeff(0),
    })
}
