//! Classical Gram-Schmidt with coefficient-matrix bookkeeping.
//!
//! For an input `y_1..y_n` the transform produces orthogonal `s_1..s_n` and a
//! unit lower-triangular matrix `C` with `y_k = sum_i C[k][i] s_i`. The column
//! sums `c_i = sum_{k>=i} C[k][i]` give `sum y = sum c_i s_i`, and because the
//! `s_i` are orthogonal, `||sum y||^2 = sum c_i^2 ||s_i||^2`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vectorspace::{check_tol, dot, norm_sq, DenseVector, SquareMatrix, VectorSet};

#[derive(Debug, Clone, PartialEq)]
pub struct GsomResult {
    /// The `s_i`.
    pub orthogonal_set: VectorSet,
    /// Unit lower-triangular `C[k][i]`.
    pub coeff_matrix: SquareMatrix,
    /// Column sums of `coeff_matrix`.
    pub column_sums: Vec<f64>,
}

impl GsomResult {
    /// Rebuilds `y_k = s_k + sum_{i<k} C[k][i] s_i`.
    pub fn reconstruct(&self) -> VectorSet {
        let s = &self.orthogonal_set;
        let rebuilt = (0..s.len())
            .map(|k| {
                let mut y = s[k].clone();
                for i in 0..k {
                    y.add_scaled(self.coeff_matrix.get(k, i), &s[i]);
                }
                y
            })
            .collect();
        VectorSet::new(rebuilt).expect("reconstruction preserves shape")
    }

    /// `sum_i c_i s_i`, which equals the input sum.
    pub fn weighted_sum(&self) -> DenseVector {
        let mut acc = DenseVector::zeros(self.orthogonal_set.dim());
        for (c, s) in self.column_sums.iter().zip(&self.orthogonal_set) {
            acc.add_scaled(*c, s);
        }
        acc
    }
}

/// Orthogonalizes `input` in order.
///
/// Coefficients follow the classical update `C[k][i] = <y_k, s_i> / <s_i, s_i>`
/// against the original `y_k`. Fails with `NotLinearlyIndependent` when some
/// residual has `||s_k|| <= tol * max ||y||`.
pub fn gsom_transform(input: &VectorSet, tol: f64) -> Result<GsomResult> {
    check_tol(tol)?;
    let n = input.len();
    let threshold_sq = {
        let t = tol * input.max_norm();
        t * t
    };
    let mut coeff_matrix = SquareMatrix::identity(n);
    let mut ortho: Vec<DenseVector> = Vec::with_capacity(n);
    let mut energies: Vec<f64> = Vec::with_capacity(n);

    for (k, y) in input.iter().enumerate() {
        let mut s = y.clone();
        for (i, (prev, &energy)) in ortho.iter().zip(&energies).enumerate() {
            let c = dot(y.as_slice(), prev.as_slice()) / energy;
            coeff_matrix.set(k, i, c);
            s.add_scaled(-c, prev);
        }
        let energy = norm_sq(&s);
        if energy <= threshold_sq || energy == 0.0 {
            return Err(Error::NotLinearlyIndependent);
        }
        ortho.push(s);
        energies.push(energy);
    }

    let column_sums = (0..n)
        .map(|i| (i..n).map(|k| coeff_matrix.get(k, i)).sum())
        .collect();
    Ok(GsomResult {
        orthogonal_set: VectorSet::new(ortho)?,
        coeff_matrix,
        column_sums,
    })
}

/// Both sides of the Parseval identity for a Gram-Schmidt result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsomEnergy {
    /// `||sum y||^2` with `y` rebuilt from the result.
    pub lhs: f64,
    /// `sum c_i^2 ||s_i||^2`.
    pub rhs: f64,
    pub residual: f64,
}

pub fn gsom_energy_identity(result: &GsomResult) -> GsomEnergy {
    let ys = result.reconstruct();
    let lhs = norm_sq(&crate::vectorspace::sum_vectors(&ys));
    let rhs = result
        .column_sums
        .iter()
        .zip(&result.orthogonal_set)
        .map(|(c, s)| c * c * norm_sq(s))
        .sum();
    GsomEnergy {
        lhs,
        rhs,
        residual: libm::fabs(lhs - rhs),
    }
}
