//! The generalized quaternion algebra `H^{a,b}` with its Z2-grading.
//!
//! Basis order is `1, i, j, k` everywhere in the crate. The even part is
//! spanned by `1, i` and the odd part by `j, k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

pub const BASIS_NAMES: [&str; 4] = ["1", "i", "j", "k"];

/// Degree in Z2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_u8(v: u8) -> Result<Parity> {
        match v {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::Domain(format!("parity must be 0 or 1, got {v}"))),
        }
    }

    pub fn value(self) -> u8 {
        self as u8
    }

    /// `self * other` in Z2, i.e. the exponent of `(-1)^{|x||y|}`.
    pub fn times(self, other: Parity) -> Parity {
        if self == Parity::Odd && other == Parity::Odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Parity of the basis element `e_p` (0-based: 1, i even; j, k odd).
pub fn basis_parity(p: usize) -> Parity {
    if p < 2 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Debug)]
struct Inner {
    ring: Ring,
    a: RingElement,
    b: RingElement,
    b_inv: RingElement,
    /// `table[p][q] = (c, r)` means `e_p e_q = c e_r`.
    table: [[(RingElement, usize); 4]; 4],
}

/// The parameters `(a, b)` of `H^{a,b}` together with its structure constants.
///
/// Cheap to clone; every [`Quaternion`] carries a handle.
#[derive(Clone, Debug)]
pub struct AlgebraParams(Arc<Inner>);

impl AlgebraParams {
    pub fn new(ring: Ring, a: RingElement, b: RingElement) -> Result<AlgebraParams> {
        let ring = ring.validate()?;
        if a.ring() != ring || b.ring() != ring {
            return Err(Error::Domain(
                "a and b must lie in the coefficient ring".into(),
            ));
        }
        a.try_invert()?;
        let b_inv = b.try_invert()?;

        let one = ring.one();
        let ab = &a * &b;
        // e_p e_q for p, q in {1, i, j, k}
        let table = [
            [
                (one.clone(), 0),
                (one.clone(), 1),
                (one.clone(), 2),
                (one.clone(), 3),
            ],
            [(one.clone(), 1), (-&a, 0), (one.clone(), 3), (-&a, 2)],
            [(one.clone(), 2), (-&one, 3), (-&b, 0), (b.clone(), 1)],
            [(one.clone(), 3), (a.clone(), 2), (-&b, 1), (-&ab, 0)],
        ];
        Ok(AlgebraParams(Arc::new(Inner {
            ring,
            a,
            b,
            b_inv,
            table,
        })))
    }

    /// Convenience constructor from integers.
    pub fn from_i64(ring: Ring, a: i64, b: i64) -> Result<AlgebraParams> {
        AlgebraParams::new(ring, ring.from_i64(a), ring.from_i64(b))
    }

    pub fn ring(&self) -> Ring {
        self.0.ring
    }

    pub fn a(&self) -> &RingElement {
        &self.0.a
    }

    pub fn b(&self) -> &RingElement {
        &self.0.b
    }

    pub fn b_inv(&self) -> &RingElement {
        &self.0.b_inv
    }

    /// Structure constant: `e_p e_q = c e_r`, returned as `(c, r)`.
    pub fn basis_product(&self, p: usize, q: usize) -> (&RingElement, usize) {
        let (c, r) = &self.0.table[p][q];
        (c, *r)
    }

    pub fn zero(&self) -> Quaternion {
        let z = self.ring().zero();
        Quaternion::new_unchecked(self.clone(), [z.clone(), z.clone(), z.clone(), z])
    }

    pub fn one(&self) -> Quaternion {
        self.basis(0)
    }

    /// The basis element `e_p`, 0-based.
    pub fn basis(&self, p: usize) -> Quaternion {
        let mut x = self.zero();
        x.coeffs[p] = self.ring().one();
        x
    }

    pub fn basis_elements(&self) -> [Quaternion; 4] {
        std::array::from_fn(|p| self.basis(p))
    }

    pub fn quaternion(&self, coeffs: [RingElement; 4]) -> Result<Quaternion> {
        if coeffs.iter().any(|c| c.ring() != self.ring()) {
            return Err(Error::Domain(
                "coefficient outside the algebra's ring".into(),
            ));
        }
        Ok(Quaternion::new_unchecked(self.clone(), coeffs))
    }

    pub fn quaternion_i64(&self, coeffs: [i64; 4]) -> Quaternion {
        Quaternion::new_unchecked(self.clone(), coeffs.map(|c| self.ring().from_i64(c)))
    }

    /// Builds `v_1 1 + v_2 i + v_3 j + v_4 k`.
    pub fn from_vector(&self, v: &[RingElement]) -> Result<Quaternion> {
        let coeffs: [RingElement; 4] = v
            .to_vec()
            .try_into()
            .map_err(|_| Error::Domain(format!("expected 4 coordinates, got {}", v.len())))?;
        self.quaternion(coeffs)
    }

    pub fn same(&self, other: &AlgebraParams) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.a == other.0.a && self.0.b == other.0.b)
    }

    pub(crate) fn check_same(&self, other: &AlgebraParams) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "algebra mismatch: {self} vs {other}"
            )))
        }
    }
}

impl PartialEq for AlgebraParams {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for AlgebraParams {}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{{{},{}}} over {}", self.0.a, self.0.b, self.0.ring)
    }
}

/// `x_1 1 + x_2 i + x_3 j + x_4 k`.
///
/// Operators panic on mismatched algebras; use the named methods for a checked variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    params: AlgebraParams,
    coeffs: [RingElement; 4],
}

impl Quaternion {
    fn new_unchecked(params: AlgebraParams, coeffs: [RingElement; 4]) -> Quaternion {
        Quaternion { params, coeffs }
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn coeffs(&self) -> &[RingElement; 4] {
        &self.coeffs
    }

    pub fn coeff(&self, p: usize) -> &RingElement {
        &self.coeffs[p]
    }

    /// The coefficient column `(x_1, x_2, x_3, x_4)`.
    pub fn to_vector(&self) -> Vec<RingElement> {
        self.coeffs.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }

    pub fn scale(&self, c: &RingElement) -> Quaternion {
        Quaternion::new_unchecked(self.params.clone(), self.coeffs.clone().map(|x| c * &x))
    }

    /// `(x_0, x_1)` with `x_0` even and `x_1` odd.
    pub fn grade_split(&self) -> (Quaternion, Quaternion) {
        let z = self.params.ring().zero();
        let [c1, c2, c3, c4] = self.coeffs.clone();
        let even = Quaternion::new_unchecked(self.params.clone(), [c1, c2, z.clone(), z.clone()]);
        let odd = Quaternion::new_unchecked(self.params.clone(), [z.clone(), z, c3, c4]);
        (even, odd)
    }

    /// The homogeneous component of the given parity.
    pub fn component(&self, parity: Parity) -> Quaternion {
        let (even, odd) = self.grade_split();
        match parity {
            Parity::Even => even,
            Parity::Odd => odd,
        }
    }

    /// Parity of a homogeneous element; zero counts as even.
    pub fn parity_of(&self) -> Result<Parity> {
        let (even, odd) = self.grade_split();
        match (even.is_zero(), odd.is_zero()) {
            (_, true) => Ok(Parity::Even),
            (true, false) => Ok(Parity::Odd),
            (false, false) => Err(Error::NotHomogeneous),
        }
    }

    pub fn qmul(&self, other: &Quaternion) -> Result<Quaternion> {
        self.params.check_same(&other.params)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_add(&self, other: &Quaternion) -> Result<Quaternion> {
        self.params.check_same(&other.params)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    fn zip(
        &self,
        other: &Quaternion,
        f: impl Fn(&RingElement, &RingElement) -> RingElement,
    ) -> Quaternion {
        let coeffs = std::array::from_fn(|p| f(&self.coeffs[p], &other.coeffs[p]));
        Quaternion::new_unchecked(self.params.clone(), coeffs)
    }

    fn mul_unchecked(&self, other: &Quaternion) -> Quaternion {
        let ring = self.params.ring();
        let mut out: [RingElement; 4] = std::array::from_fn(|_| ring.zero());
        for (p, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (c, r) = self.params.basis_product(p, q);
                out[r] = &out[r] + &(&(x * y) * c);
            }
        }
        Quaternion::new_unchecked(self.params.clone(), out)
    }

    /// Lie superproduct `[x, y]_s`, extended bilinearly over the grade components.
    pub fn lie_super(&self, other: &Quaternion) -> Result<Quaternion> {
        self.params.check_same(&other.params)?;
        Ok(self.graded_sum(other, |x, y, sign_odd| {
            let yx = y * x;
            if sign_odd {
                &(x * y) + &yx
            } else {
                &(x * y) - &yx
            }
        }))
    }

    /// Jordan superproduct `x o_s y`, extended bilinearly over the grade components.
    pub fn jordan_super(&self, other: &Quaternion) -> Result<Quaternion> {
        self.params.check_same(&other.params)?;
        let half = self.params.ring().half();
        Ok(self
            .graded_sum(other, |x, y, sign_odd| {
                let yx = y * x;
                if sign_odd {
                    &(x * y) - &yx
                } else {
                    &(x * y) + &yx
                }
            })
            .scale(&half))
    }

    /// Sums `f(x_α, y_β, |x_α||y_β| odd)` over the four grade-component pairs.
    fn graded_sum(
        &self,
        other: &Quaternion,
        f: impl Fn(&Quaternion, &Quaternion, bool) -> Quaternion,
    ) -> Quaternion {
        let (x0, x1) = self.grade_split();
        let (y0, y1) = other.grade_split();
        let mut acc = self.params.zero();
        for (x, px) in [(&x0, Parity::Even), (&x1, Parity::Odd)] {
            for (y, py) in [(&y0, Parity::Even), (&y1, Parity::Odd)] {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = &acc + &f(x, y, px.times(py).is_odd());
            }
        }
        acc
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (c, name) in self.coeffs.iter().zip(BASIS_NAMES) {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if name == "1" {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}){name}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn expect_same(x: &Quaternion, y: &Quaternion) {
    if let Err(e) = x.params.check_same(&y.params) {
        panic!("{e}");
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        expect_same(self, rhs);
        self.zip(rhs, |x, y| x + y)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        expect_same(self, rhs);
        self.zip(rhs, |x, y| x - y)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        expect_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new_unchecked(self.params.clone(), self.coeffs.clone().map(|c| -c))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        &self + &rhs
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        &self - &rhs
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        &self * &rhs
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

/// `x` if `odd` is false, `-x` otherwise; spells out `(-1)^{...} x`.
pub(crate) fn signed(x: Quaternion, odd: bool) -> Quaternion {
    if odd {
        -x
    } else {
        x
    }
}
