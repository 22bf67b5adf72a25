//! Real inner-product-space primitives.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};

/// Default tolerance for rank and orthogonality residual checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// A vector in `R^m` with finite entries and `m >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    entries: Vec<f64>,
}

impl DenseVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(index) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(DenseVector { entries })
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    /// The zero vector of dimension `dim` (at least 1).
    pub fn zeros(dim: usize) -> Self {
        DenseVector {
            entries: vec![0.0; dim.max(1)],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    /// `self * factor`. Finite inputs can overflow to infinity here; callers
    /// only scale by coefficients derived from the vectors themselves.
    pub(crate) fn scaled(&self, factor: f64) -> Self {
        DenseVector {
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// `self += factor * other`
    pub(crate) fn add_scaled(&mut self, factor: f64, other: &DenseVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += factor * b;
        }
    }

    pub(crate) fn add_assign(&mut self, other: &DenseVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
    }

    /// `self - other`
    pub(crate) fn sub(&self, other: &DenseVector) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        DenseVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Index<usize> for DenseVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.entries[index]
    }
}

/// An ordered, non-empty list of vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet {
    vectors: Vec<DenseVector>,
}

impl VectorSet {
    pub fn new(vectors: Vec<DenseVector>) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptySet)?;
        let dim = first.dim();
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        Ok(VectorSet { vectors })
    }

    /// Builds a set from rows of raw numbers.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| DenseVector::from_slice(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    /// Number of vectors, `n`.
    #[inline]
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// Always false; kept for API symmetry with slices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Dimension of the ambient space, `m`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn vectors(&self) -> &[DenseVector] {
        &self.vectors
    }

    pub fn iter(&self) -> core::slice::Iter<'_, DenseVector> {
        self.vectors.iter()
    }

    pub fn into_vectors(self) -> Vec<DenseVector> {
        self.vectors
    }

    /// The set reordered so that member `i` of the result is `self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::InvalidPermutation);
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation);
            }
            seen[p] = true;
        }
        Ok(VectorSet {
            vectors: perm.iter().map(|&p| self.vectors[p].clone()).collect(),
        })
    }

    /// Largest Euclidean norm among the members.
    pub fn max_norm(&self) -> f64 {
        self.vectors.iter().map(norm).fold(0.0, f64::max)
    }
}

impl Index<usize> for VectorSet {
    type Output = DenseVector;

    fn index(&self, index: usize) -> &DenseVector {
        &self.vectors[index]
    }
}

impl<'a> IntoIterator for &'a VectorSet {
    type Item = &'a DenseVector;
    type IntoIter = core::slice::Iter<'a, DenseVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.vectors.iter()
    }
}

/// Dense row-major `n x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n.max(1))
    }
}

/// Pairwise inner products `G[i][j] = <v_i, v_j>`.
pub type GramMatrix = SquareMatrix;

fn check_dims(a: &DenseVector, b: &DenseVector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `sum_k a_k * b_k`.
pub fn inner(a: &DenseVector, b: &DenseVector) -> Result<f64> {
    check_dims(a, b)?;
    Ok(dot(a.as_slice(), b.as_slice()))
}

/// Energy of a vector, `<a, a>`.
pub fn norm_sq(a: &DenseVector) -> f64 {
    dot(a.as_slice(), a.as_slice())
}

pub fn norm(a: &DenseVector) -> f64 {
    libm::sqrt(norm_sq(a))
}

pub fn gram(set: &VectorSet) -> GramMatrix {
    let n = set.len();
    let mut g = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = dot(set[i].as_slice(), set[j].as_slice());
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    g
}

/// Entrywise sum of the members.
pub fn sum_vectors(set: &VectorSet) -> DenseVector {
    let mut acc = DenseVector::zeros(set.dim());
    for v in set {
        acc.add_assign(v);
    }
    acc
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance)
    }
}

/// Numerical rank test by Gram-Schmidt with column pivoting.
///
/// At each step the remaining vector with the largest residual is taken as
/// the pivot; it counts towards the rank when its residual norm exceeds
/// `tol * max_i ||v_i||`. The set is independent when the rank reaches `n`,
/// so `n > m` is always rejected.
pub fn is_linearly_independent(set: &VectorSet, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = set.len();
    if n > set.dim() {
        return Ok(false);
    }
    let threshold = tol * set.max_norm();
    let mut residuals: Vec<Vec<f64>> = set.iter().map(|v| v.as_slice().to_vec()).collect();

    for step in 0..n {
        let (pivot, pivot_norm) = (step..n)
            .map(|j| (j, libm::sqrt(dot(&residuals[j], &residuals[j]))))
            .fold(
                (step, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot_norm <= threshold || pivot_norm == 0.0 {
            return Ok(false);
        }
        residuals.swap(step, pivot);
        let (done, rest) = residuals.split_at_mut(step + 1);
        let q: Vec<f64> = done[step].iter().map(|x| x / pivot_norm).collect();
        for r in rest.iter_mut() {
            let proj = dot(&q, r);
            for (x, qx) in r.iter_mut().zip(&q) {
                *x -= proj * qx;
            }
        }
    }
    Ok(true)
}
