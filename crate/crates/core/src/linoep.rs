//! Linearly independent, non-orthogonal, energy-preserving (LINOEP) transform
//! and its non-orthogonal energy-preserving (NOEP) extension.
//!
//! The transform runs backwards over the input. With `S_k = c_{k+1} + ... + c_n`
//! it sets
//!
//! ```text
//! c_n = y_n
//! c_k = y_k - alpha_k S_k,   alpha_k = <y_k, S_k> / <S_k, S_k>,   k = n-1, ..., 1
//! ```
//!
//! so every `c_k` is orthogonal to the sum of the vectors after it. The `c_i`
//! are generally not pairwise orthogonal, yet `||sum c||^2 = sum ||c_i||^2`
//! telescopes level by level.
//!
//! Summing the rows of `y_k = c_k + alpha_k S_k` gives
//! `sum y = p2 + p1` with `p2 = sum c_i` and `p1 = sum_i beta_i c_{i+1}`,
//! `beta_i = alpha_1 + ... + alpha_i`. Splitting `p1` into its component along
//! `z1 = p2` (coefficient `gamma`) and the orthogonal remainder `z2` yields
//! `n + 1` vectors `d_i = (1 + gamma) c_i`, `d_{n+1} = z2` that sum to `sum y`
//! and preserve its energy.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vectorspace::{
    check_tol, dot, is_linearly_independent, norm_sq, sum_vectors, DenseVector, VectorSet,
};

/// Output of [`linoep_transform`]: the `c_i` and the recursion coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Linoep {
    pub c_set: VectorSet,
    /// `alpha_1 ..= alpha_{n-1}`; `alphas[k - 1]` is `alpha_k`.
    pub alphas: Vec<f64>,
    /// `S_1 ..= S_{n-1}`; `tail_sums[k - 1]` is `S_k`.
    pub tail_sums: Vec<DenseVector>,
}

impl Linoep {
    /// Rebuilds `y_k = c_k + alpha_k S_k` (and `y_n = c_n`).
    pub fn reconstruct(&self) -> VectorSet {
        let n = self.c_set.len();
        let rebuilt = (0..n)
            .map(|k| {
                let mut y = self.c_set[k].clone();
                if k + 1 < n {
                    y.add_scaled(self.alphas[k], &self.tail_sums[k]);
                }
                y
            })
            .collect();
        VectorSet::new(rebuilt).expect("reconstruction preserves shape")
    }
}

/// The LINOEP vectors together with the `n + 1` vector NOEP extension.
#[derive(Debug, Clone, PartialEq)]
pub struct LinoepResult {
    pub c_set: VectorSet,
    pub alphas: Vec<f64>,
    pub tail_sums: Vec<DenseVector>,
    /// `beta_i = alpha_1 + ... + alpha_i`, accumulated left to right.
    pub betas: Vec<f64>,
    pub gamma: f64,
    /// `(1 + gamma) c_1, ..., (1 + gamma) c_n, z2`.
    pub d_set: VectorSet,
    pub z2: DenseVector,
}

impl LinoepResult {
    pub fn transform(&self) -> Linoep {
        Linoep {
            c_set: self.c_set.clone(),
            alphas: self.alphas.clone(),
            tail_sums: self.tail_sums.clone(),
        }
    }
}

/// Runs the backward recursion on `input`.
///
/// `n = 1` is the identity. The input must be linearly independent at `tol`;
/// a tail sum with `||S_k|| <= tol * max ||y||` is reported as
/// `DegenerateTailSum`.
pub fn linoep_transform(input: &VectorSet, tol: f64) -> Result<Linoep> {
    check_tol(tol)?;
    if !is_linearly_independent(input, tol)? {
        return Err(Error::NotLinearlyIndependent);
    }
    let n = input.len();
    let scale = tol * input.max_norm();
    let threshold_sq = scale * scale;

    let mut c_rev: Vec<DenseVector> = Vec::with_capacity(n);
    let mut alphas_rev = Vec::with_capacity(n - 1);
    let mut tails_rev = Vec::with_capacity(n - 1);

    let last = input[n - 1].clone();
    let mut running = last.clone();
    c_rev.push(last);

    for k in (0..n - 1).rev() {
        let tail = running.clone();
        let tail_energy = norm_sq(&tail);
        if tail_energy <= threshold_sq || tail_energy == 0.0 {
            return Err(Error::DegenerateTailSum { k: k + 1 });
        }
        let y = &input[k];
        let alpha = dot(y.as_slice(), tail.as_slice()) / tail_energy;
        let mut c = y.clone();
        c.add_scaled(-alpha, &tail);
        running.add_assign(&c);
        c_rev.push(c);
        alphas_rev.push(alpha);
        tails_rev.push(tail);
    }

    c_rev.reverse();
    alphas_rev.reverse();
    tails_rev.reverse();
    Ok(Linoep {
        c_set: VectorSet::new(c_rev)?,
        alphas: alphas_rev,
        tail_sums: tails_rev,
    })
}

/// Extends a LINOEP set by one vector so that the `n + 1` members sum to
/// `original_sum` while still preserving energy.
///
/// `original_sum` is the caller's `sum y`; the extension is checked against it
/// and a disagreement beyond `1e-10` relative (to the larger of
/// `||original_sum||` and `||p1|| + ||p2||`) is reported as `SumMismatch`.
pub fn noep_extend(partial: Linoep, original_sum: &DenseVector, tol: f64) -> Result<LinoepResult> {
    check_tol(tol)?;
    let Linoep {
        c_set,
        alphas,
        tail_sums,
    } = partial;
    let n = c_set.len();
    if alphas.len() + 1 != n || tail_sums.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: alphas.len(),
        });
    }
    let m = c_set.dim();
    if original_sum.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: original_sum.dim(),
        });
    }

    let betas: Vec<f64> = alphas
        .iter()
        .scan(0.0, |acc, a| {
            *acc += a;
            Some(*acc)
        })
        .collect();

    let p2 = sum_vectors(&c_set);
    let mut p1 = DenseVector::zeros(m);
    for (beta, c) in betas.iter().zip(c_set.iter().skip(1)) {
        p1.add_scaled(*beta, c);
    }

    let z1 = &p2;
    let z1_energy = norm_sq(z1);
    let scale = tol * c_set.max_norm();
    if z1_energy <= scale * scale || z1_energy == 0.0 {
        return Err(Error::DegenerateTailSum { k: 0 });
    }
    let gamma = dot(p1.as_slice(), z1.as_slice()) / z1_energy;
    let mut z2 = p1.clone();
    z2.add_scaled(-gamma, z1);

    let mut d: Vec<DenseVector> = c_set.iter().map(|c| c.scaled(1.0 + gamma)).collect();
    d.push(z2.clone());
    let d_set = VectorSet::new(d)?;

    let residual = crate::vectorspace::norm(&sum_vectors(&d_set).sub(original_sum));
    let reference = crate::vectorspace::norm(original_sum)
        .max(crate::vectorspace::norm(&p1) + crate::vectorspace::norm(&p2));
    if residual > 1e-10 * reference {
        return Err(Error::SumMismatch { residual });
    }

    Ok(LinoepResult {
        c_set,
        alphas,
        tail_sums,
        betas,
        gamma,
        d_set,
        z2,
    })
}

/// [`linoep_transform`] followed by [`noep_extend`] against the input's own sum.
pub fn linoep(input: &VectorSet, tol: f64) -> Result<LinoepResult> {
    let partial = linoep_transform(input, tol)?;
    noep_extend(partial, &sum_vectors(input), tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    /// `||sum v_i||^2`
    pub sum_energy: f64,
    /// `sum ||v_i||^2`
    pub component_energy: f64,
    /// `|sum_energy - component_energy|`, the magnitude of the total cross term.
    pub residual: f64,
}

pub fn energy_report(set: &VectorSet) -> EnergyReport {
    let sum_energy = norm_sq(&sum_vectors(set));
    let component_energy = set.iter().map(norm_sq).sum();
    EnergyReport {
        sum_energy,
        component_energy,
        residual: libm::fabs(sum_energy - component_energy),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set(rows: &[&[f64]]) -> VectorSet {
        VectorSet::from_rows(rows).unwrap()
    }

    fn assert_vec(v: &DenseVector, expected: &[f64]) {
        assert_eq!(v.dim(), expected.len());
        for (a, b) in v.as_slice().iter().zip(expected) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-14);
        }
    }

    #[test]
    fn orthogonal_input_is_fixed_point() {
        let r = linoep_transform(&set(&[&[1., 0.], &[0., 1.]]), 1e-10).unwrap();
        assert_eq!(r.c_set, set(&[&[1., 0.], &[0., 1.]]));
        assert_eq!(r.alphas, vec![0.0]);
    }

    #[test]
    fn pair_example() {
        let r = linoep(&set(&[&[1., 1.], &[0., 1.]]), 1e-10).unwrap();
        assert_vec(&r.c_set[1], &[0., 1.]);
        assert_abs_diff_eq!(r.alphas[0], 1.0);
        assert_vec(&r.c_set[0], &[1., 0.]);
        assert_eq!(r.betas, vec![1.0]);
        assert_abs_diff_eq!(r.gamma, 0.5, epsilon = 1e-15);
        assert_vec(&r.z2, &[-0.5, 0.5]);
        assert_vec(&r.d_set[0], &[1.5, 0.]);
        assert_vec(&r.d_set[1], &[0., 1.5]);
        assert_vec(&r.d_set[2], &[-0.5, 0.5]);
        assert_vec(&sum_vectors(&r.d_set), &[1., 2.]);
        let e = energy_report(&r.d_set);
        assert_abs_diff_eq!(e.sum_energy, 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.component_energy, 5.0, epsilon = 1e-14);
    }

    #[test]
    fn three_vector_example() {
        let r = linoep(&set(&[&[1., 0., 0.], &[1., 1., 0.], &[0., 0., 1.]]), 1e-10).unwrap();
        assert_vec(&r.c_set[2], &[0., 0., 1.]);
        assert_abs_diff_eq!(r.alphas[1], 0.0);
        assert_vec(&r.c_set[1], &[1., 1., 0.]);
        assert_abs_diff_eq!(r.alphas[0], 1.0 / 3.0, epsilon = 1e-15);
        assert_vec(&r.c_set[0], &[2. / 3., -1. / 3., -1. / 3.]);
        assert_abs_diff_eq!(r.gamma, 3.0 / 11.0, epsilon = 1e-15);
        assert_vec(&r.z2, &[-4. / 33., 5. / 33., 5. / 33.]);
        for i in 0..3 {
            assert_vec(&r.d_set[i], r.c_set[i].scaled(14.0 / 11.0).as_slice());
        }
        let e = energy_report(&r.c_set);
        assert_abs_diff_eq!(e.sum_energy, 11.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.component_energy, 11.0 / 3.0, epsilon = 1e-14);
        assert!(e.residual < 1e-14);
        let e = energy_report(&r.d_set);
        assert_abs_diff_eq!(e.component_energy, 6.0, epsilon = 1e-14);
    }

    #[test]
    fn orthonormal_extension_is_trivial() {
        let r = linoep(&set(&[&[1., 0., 0.], &[0., 1., 0.], &[0., 0., 1.]]), 1e-10).unwrap();
        assert_eq!(r.betas, vec![0.0, 0.0]);
        assert_eq!(r.gamma, 0.0);
        assert_eq!(r.z2.as_slice(), &[0., 0., 0.]);
        for i in 0..3 {
            assert_eq!(r.d_set[i], r.c_set[i]);
        }
    }

    #[test]
    fn single_vector_is_identity() {
        let r = linoep(&set(&[&[3., 4.]]), 1e-10).unwrap();
        assert_eq!(r.c_set, set(&[&[3., 4.]]));
        assert!(r.alphas.is_empty() && r.betas.is_empty());
        assert_eq!(r.gamma, 0.0);
        assert_eq!(r.d_set, set(&[&[3., 4.], &[0., 0.]]));
    }

    #[test]
    fn correlated_pair_energy() {
        let e = energy_report(&set(&[&[1., 0.], &[1., 0.]]));
        assert_eq!(
            (e.sum_energy, e.component_energy, e.residual),
            (4.0, 2.0, 2.0)
        );
    }

    #[test]
    fn dependent_input_is_rejected() {
        assert_eq!(
            linoep_transform(&set(&[&[1., 1.], &[2., 2.]]), 1e-10),
            Err(Error::NotLinearlyIndependent)
        );
    }

    #[test]
    fn wrong_reference_sum_is_rejected() {
        let partial = linoep_transform(&set(&[&[1., 1.], &[0., 1.]]), 1e-10).unwrap();
        let bogus = DenseVector::from_slice(&[1., 3.]).unwrap();
        assert!(matches!(
            noep_extend(partial, &bogus, 1e-10),
            Err(Error::SumMismatch { .. })
        ));
    }

    #[test]
    fn extension_rejects_wrong_dimension() {
        let partial = linoep_transform(&set(&[&[1., 1.], &[0., 1.]]), 1e-10).unwrap();
        let sum = DenseVector::from_slice(&[1., 2., 0.]).unwrap();
        assert_eq!(
            noep_extend(partial, &sum, 1e-10),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn reconstruct_recovers_input() {
        let y = set(&[&[1., 2., 0.], &[0., 1., 3.], &[2., 0., 1.]]);
        let r = linoep_transform(&y, 1e-10).unwrap();
        let back = r.reconstruct();
        for (a, b) in back.iter().zip(&y) {
            assert_vec(a, b.as_slice());
        }
    }
}
