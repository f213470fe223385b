//! Exact linear algebra: dense matrices over a field, reduced row echelon
//! form and nullspaces, plus the two map types acting on `H^{a,b}`.
//!
//! Flattening conventions used by every solver:
//! - a [`LinMap`] is flattened row-major, `m_11, m_12, ..., m_44` (16 unknowns);
//! - a [`BilinMap`] is flattened by `(p, q, component)` lexicographically,
//!   i.e. index `16 p + 4 q + c` (64 unknowns).

use std::fmt;

use crate::algebra::{AlgebraParams, Quaternion};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

/// A dense `rows x cols` matrix over a single ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<RingElement>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|x| x.ring() != ring) {
            return Err(Error::Domain("matrix entry outside the ring".into()));
        }
        let n_rows = rows.len();
        Ok(Matrix {
            ring,
            rows: n_rows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(ring, rows).expect("rectangular input")
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<RingElement>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Domain(format!(
                    "column {c} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[RingElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, x)| !a.is_zero() && !x.is_zero())
                    .fold(self.ring.zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry found scanning columns left to right.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        self.ring.require_field()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).try_invert()?;
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pivot_entry = m.get(row, c);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&factor * pivot_entry);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Solves `self * v = rhs`, returning the solution with all free variables set to zero.
    pub fn solve(&self, rhs: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
        if rhs.len() != self.rows {
            return Err(Error::Domain("right-hand side has the wrong length".into()));
        }
        let mut aug = Matrix::zeros(self.ring, self.rows, self.cols + 1);
        for (r, b) in rhs.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b.clone());
        }
        let (reduced, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut sol = vec![self.ring.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            sol[p] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(sol))
    }
}

/// Computes a basis of `{v : A v = 0}`. Deterministic: one basis vector per
/// free column in ascending order, with that free variable set to 1 and the
/// other free variables set to 0.
pub fn nullspace(a: &Matrix) -> Result<SolutionSpace> {
    let (reduced, pivots) = a.rref()?;
    let ring = a.ring;
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); a.cols];
            v[f] = ring.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(r, f);
            }
            v
        })
        .collect();
    Ok(SolutionSpace {
        ring,
        ambient_dim: a.cols,
        basis,
    })
}

/// Assembles the matrix of a linear constraint map. `residuals` must be linear
/// in its argument; column `u` of the result is `residuals(e_u)`.
pub fn constraint_matrix(
    ring: Ring,
    unknowns: usize,
    residuals: impl Fn(&[RingElement]) -> Vec<RingElement>,
) -> Result<Matrix> {
    let columns: Vec<Vec<RingElement>> = (0..unknowns)
        .map(|u| {
            let mut e = vec![ring.zero(); unknowns];
            e[u] = ring.one();
            residuals(&e)
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    Matrix::from_columns(ring, rows, &columns)
}

/// A subspace given by an exact basis of coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    ring: Ring,
    ambient_dim: usize,
    basis: Vec<Vec<RingElement>>,
}

impl SolutionSpace {
    pub fn new(ring: Ring, ambient_dim: usize, basis: Vec<Vec<RingElement>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Domain("basis vector of the wrong length".into()));
        }
        Ok(SolutionSpace {
            ring,
            ambient_dim,
            basis,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<RingElement>] {
        &self.basis
    }

    fn basis_matrix(&self) -> Result<Matrix> {
        Matrix::from_columns(self.ring, self.ambient_dim, &self.basis)
    }

    /// True when the basis vectors are linearly independent.
    pub fn is_independent(&self) -> Result<bool> {
        Ok(self.basis_matrix()?.rank()? == self.dim())
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Domain("vector of the wrong length".into()));
        }
        self.basis_matrix()?.solve(v)
    }

    pub fn contains(&self, v: &[RingElement]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn as_linmaps(&self, params: &AlgebraParams) -> Result<Vec<LinMap>> {
        self.basis
            .iter()
            .map(|v| LinMap::from_flat(params, v))
            .collect()
    }

    pub fn as_bilinmaps(&self, params: &AlgebraParams) -> Result<Vec<BilinMap>> {
        self.basis
            .iter()
            .map(|v| BilinMap::from_flat(params, v))
            .collect()
    }
}

/// A linear self-map of `H^{a,b}` given by its matrix in the basis `1, i, j, k`,
/// acting on coefficient columns from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    params: AlgebraParams,
    m: [[RingElement; 4]; 4],
}

impl LinMap {
    pub fn new(params: &AlgebraParams, m: [[RingElement; 4]; 4]) -> Result<LinMap> {
        if m.iter().flatten().any(|x| x.ring() != params.ring()) {
            return Err(Error::Domain(
                "matrix entry outside the algebra's ring".into(),
            ));
        }
        Ok(LinMap {
            params: params.clone(),
            m,
        })
    }

    pub fn from_i64(params: &AlgebraParams, m: [[i64; 4]; 4]) -> LinMap {
        let ring = params.ring();
        LinMap {
            params: params.clone(),
            m: m.map(|row| row.map(|v| ring.from_i64(v))),
        }
    }

    pub fn zero(params: &AlgebraParams) -> LinMap {
        LinMap::from_i64(params, [[0; 4]; 4])
    }

    pub fn identity(params: &AlgebraParams) -> LinMap {
        let mut id = LinMap::zero(params);
        for p in 0..4 {
            id.m[p][p] = params.ring().one();
        }
        id
    }

    /// Matrix with column `q` equal to the coordinates of `f(e_q)`.
    pub fn from_images(params: &AlgebraParams, images: [Quaternion; 4]) -> LinMap {
        let ring = params.ring();
        let mut m: [[RingElement; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| ring.zero()));
        for (q, img) in images.iter().enumerate() {
            for (r, row) in m.iter_mut().enumerate() {
                row[q] = img.coeff(r).clone();
            }
        }
        LinMap {
            params: params.clone(),
            m,
        }
    }

    /// Row-major reshape of 16 coefficients.
    pub fn from_flat(params: &AlgebraParams, v: &[RingElement]) -> Result<LinMap> {
        if v.len() != 16 {
            return Err(Error::Domain(format!(
                "expected 16 entries, got {}",
                v.len()
            )));
        }
        LinMap::new(
            params,
            std::array::from_fn(|r| std::array::from_fn(|c| v[4 * r + c].clone())),
        )
    }

    pub fn to_flat(&self) -> Vec<RingElement> {
        self.m.iter().flatten().cloned().collect()
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn matrix(&self) -> &[[RingElement; 4]; 4] {
        &self.m
    }

    /// Entry `(r, c)`, 0-based.
    pub fn entry(&self, r: usize, c: usize) -> &RingElement {
        &self.m[r][c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, v: RingElement) {
        assert_eq!(v.ring(), self.params.ring());
        self.m[r][c] = v;
    }

    /// `from_vector(M to_vector(x))`.
    pub fn apply(&self, x: &Quaternion) -> Result<Quaternion> {
        self.params.check_same(x.params())?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &Quaternion) -> Quaternion {
        let ring = self.params.ring();
        let coeffs = std::array::from_fn(|r| {
            self.m[r]
                .iter()
                .zip(x.coeffs())
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(ring.zero(), |acc, (a, b)| &acc + &(a * b))
        });
        self.params.quaternion(coeffs).expect("same ring")
    }

    /// Image of the basis element `e_q`: column `q`.
    pub fn column(&self, q: usize) -> Quaternion {
        self.params
            .quaternion(std::array::from_fn(|r| self.m[r][q].clone()))
            .expect("same ring")
    }

    /// Matrix of the composition `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        self.params.check_same(&other.params)?;
        let ring = self.params.ring();
        let m = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                (0..4).fold(ring.zero(), |acc, t| {
                    &acc + &(&self.m[r][t] * &other.m[t][c])
                })
            })
        });
        Ok(LinMap {
            params: self.params.clone(),
            m,
        })
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.params.check_same(&other.params)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.params.check_same(&other.params)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    pub fn scale(&self, c: &RingElement) -> LinMap {
        LinMap {
            params: self.params.clone(),
            m: self.m.clone().map(|row| row.map(|x| c * &x)),
        }
    }

    fn zip(&self, other: &LinMap, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> LinMap {
        let m = std::array::from_fn(|r| std::array::from_fn(|c| f(&self.m[r][c], &other.m[r][c])));
        LinMap {
            params: self.params.clone(),
            m,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(RingElement::is_zero)
    }
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A bilinear map `H x H -> H` given by its values on basis pairs:
/// `values[p][q] = δ(e_p, e_q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinMap {
    params: AlgebraParams,
    values: [[Quaternion; 4]; 4],
}

impl BilinMap {
    pub fn new(params: &AlgebraParams, values: [[Quaternion; 4]; 4]) -> Result<BilinMap> {
        for v in values.iter().flatten() {
            params.check_same(v.params())?;
        }
        Ok(BilinMap {
            params: params.clone(),
            values,
        })
    }

    pub fn zero(params: &AlgebraParams) -> BilinMap {
        BilinMap {
            params: params.clone(),
            values: std::array::from_fn(|_| std::array::from_fn(|_| params.zero())),
        }
    }

    /// The tensor of `(x, y) -> f(x, y)` read off on basis pairs.
    pub fn from_fn(params: &AlgebraParams, f: impl Fn(usize, usize) -> Quaternion) -> BilinMap {
        BilinMap {
            params: params.clone(),
            values: std::array::from_fn(|p| std::array::from_fn(|q| f(p, q))),
        }
    }

    pub fn from_flat(params: &AlgebraParams, v: &[RingElement]) -> Result<BilinMap> {
        if v.len() != 64 {
            return Err(Error::Domain(format!(
                "expected 64 entries, got {}",
                v.len()
            )));
        }
        let mut values: [[Quaternion; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| params.zero()));
        for (p, row) in values.iter_mut().enumerate() {
            for (q, cell) in row.iter_mut().enumerate() {
                let base = 16 * p + 4 * q;
                *cell = params.from_vector(&v[base..base + 4])?;
            }
        }
        Ok(BilinMap {
            params: params.clone(),
            values,
        })
    }

    pub fn to_flat(&self) -> Vec<RingElement> {
        self.values
            .iter()
            .flatten()
            .flat_map(|x| x.to_vector())
            .collect()
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.params
    }

    pub fn values(&self) -> &[[Quaternion; 4]; 4] {
        &self.values
    }

    pub fn value(&self, p: usize, q: usize) -> &Quaternion {
        &self.values[p][q]
    }

    pub fn set_value(&mut self, p: usize, q: usize, v: Quaternion) {
        assert!(self.params.same(v.params()));
        self.values[p][q] = v;
    }

    /// `Σ_p Σ_q x_p y_q δ(e_p, e_q)`.
    pub fn eval(&self, x: &Quaternion, y: &Quaternion) -> Result<Quaternion> {
        self.params.check_same(x.params())?;
        self.params.check_same(y.params())?;
        Ok(self.eval_unchecked(x, y))
    }

    pub(crate) fn eval_unchecked(&self, x: &Quaternion, y: &Quaternion) -> Quaternion {
        let mut acc = self.params.zero();
        for (p, xp) in x.coeffs().iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for (q, yq) in y.coeffs().iter().enumerate() {
                if yq.is_zero() {
                    continue;
                }
                acc = &acc + &self.values[p][q].scale(&(xp * yq));
            }
        }
        acc
    }

    /// The linear map `y -> δ(x, y)`.
    pub fn left_slice(&self, x: &Quaternion) -> Result<LinMap> {
        self.params.check_same(x.params())?;
        let images = self
            .params
            .basis_elements()
            .map(|e| self.eval_unchecked(x, &e));
        Ok(LinMap::from_images(&self.params, images))
    }

    /// The linear map `y -> δ(y, x)`.
    pub fn right_slice(&self, x: &Quaternion) -> Result<LinMap> {
        self.params.check_same(x.params())?;
        let images = self
            .params
            .basis_elements()
            .map(|e| self.eval_unchecked(&e, x));
        Ok(LinMap::from_images(&self.params, images))
    }

    pub fn add(&self, other: &BilinMap) -> Result<BilinMap> {
        self.params.check_same(&other.params)?;
        Ok(BilinMap::from_fn(&self.params, |p, q| {
            &self.values[p][q] + &other.values[p][q]
        }))
    }

    pub fn scale(&self, c: &RingElement) -> BilinMap {
        BilinMap::from_fn(&self.params, |p, q| self.values[p][q].scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Quaternion::is_zero)
    }
}
