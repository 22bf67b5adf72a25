//! Cross terms of a vector set and the ways they can vanish.
//!
//! `||sum v||^2 = sum ||v_i||^2 + sum_{i != j} <v_i, v_j>`, so a set preserves
//! energy exactly when its total cross term is zero. Over the reals the cross
//! term is `2 sum_{i<j} <v_i, v_j>` and a zero can come from pairwise
//! orthogonality, from a nested ordering (each vector orthogonal to the sum of
//! those after it), or from plain cancellation among nonzero products.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linoep::{energy_report, linoep, linoep_transform, LinoepResult};
use crate::permutation::LexicographicPermutations;
use crate::vectorspace::{
    check_tol, dot, gram, is_linearly_independent, norm, norm_sq, sum_vectors, DenseVector,
    GramMatrix, VectorSet, DEFAULT_TOL,
};

/// Largest set for which nested orderings are searched exhaustively (8! runs).
pub const MAX_EXHAUSTIVE_N: usize = 8;

const GENERATOR_ATTEMPTS: usize = 1000;
/// Minimum |cos| between generated vectors that must not be orthogonal.
const GENERATOR_MIN_COSINE: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Every off-diagonal inner product vanishes.
    PairwiseOrthogonal,
    /// Under this ordering each vector is orthogonal to the sum of the ones
    /// after it. `perm[i]` is the index of the `i`-th vector in the ordering.
    Nested(Vec<usize>),
    /// Energy is preserved, but neither of the above explains it.
    Cancellation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossTermReport {
    pub gram: GramMatrix,
    /// `2 * sum_{i<j} G[i][j]`.
    pub total_cross_term: f64,
    /// `||sum v||^2 - sum ||v_i||^2`, the same quantity computed from the energies.
    pub energy_difference: f64,
    /// `|total_cross_term| <= tol * sum ||v_i||^2`
    pub is_energy_preserving: bool,
    /// Empty unless produced by [`classify`]. Sorted: pairwise, nested
    /// (lexicographic), cancellation.
    pub families: Vec<Family>,
}

impl CrossTermReport {
    pub fn is_pairwise_orthogonal(&self) -> bool {
        self.families.contains(&Family::PairwiseOrthogonal)
    }

    pub fn is_cancellation(&self) -> bool {
        self.families.contains(&Family::Cancellation)
    }

    pub fn nested_permutations(&self) -> impl Iterator<Item = &[usize]> {
        self.families.iter().filter_map(|f| match f {
            Family::Nested(p) => Some(p.as_slice()),
            _ => None,
        })
    }
}

/// Gram matrix and total cross term of `set`, without classification.
pub fn cross_term(set: &VectorSet, tol: f64) -> Result<CrossTermReport> {
    check_tol(tol)?;
    let g = gram(set);
    let n = set.len();
    let mut upper = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            upper += g.get(i, j);
        }
    }
    let total_cross_term = 2.0 * upper;
    let component_energy: f64 = (0..n).map(|i| g.get(i, i)).sum();
    let energy_difference = norm_sq(&sum_vectors(set)) - component_energy;
    Ok(CrossTermReport {
        gram: g,
        total_cross_term,
        energy_difference,
        is_energy_preserving: libm::fabs(total_cross_term) <= tol * component_energy,
        families: Vec::new(),
    })
}

/// Whether `set` taken in the order `perm` is nested-orthogonal at `tol`.
fn is_nested(set: &VectorSet, perm: &[usize], tol: f64) -> bool {
    let n = perm.len();
    let mut tail = set[perm[n - 1]].clone();
    for i in (0..n - 1).rev() {
        let v = &set[perm[i]];
        let p = dot(v.as_slice(), tail.as_slice());
        if libm::fabs(p) > tol * norm(v) * norm(&tail) {
            return false;
        }
        tail.add_assign(v);
    }
    true
}

fn is_pairwise_orthogonal(set: &VectorSet, g: &GramMatrix, tol: f64) -> bool {
    let n = set.len();
    let norms: Vec<f64> = set.iter().map(norm).collect();
    (0..n).all(|i| (i + 1..n).all(|j| libm::fabs(g.get(i, j)) <= tol * norms[i] * norms[j]))
}

/// Cross-term report together with every solution family the set belongs to.
///
/// Nested orderings are searched over all `n!` permutations, so `n` is capped
/// at [`MAX_EXHAUSTIVE_N`].
pub fn classify(set: &VectorSet, tol: f64) -> Result<CrossTermReport> {
    let n = set.len();
    if n < 2 {
        return Err(Error::TooFewVectors {
            required: 2,
            found: n,
        });
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooManyPermutations {
            n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    let mut report = cross_term(set, tol)?;
    let pairwise = is_pairwise_orthogonal(set, &report.gram, tol);
    if pairwise {
        report.families.push(Family::PairwiseOrthogonal);
    }
    let mut nested_any = false;
    for perm in LexicographicPermutations::new(n) {
        if is_nested(set, &perm, tol) {
            nested_any = true;
            report.families.push(Family::Nested(perm));
        }
    }
    if report.is_energy_preserving && !pairwise && !nested_any {
        report.families.push(Family::Cancellation);
    }
    Ok(report)
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> DenseVector {
    DenseVector::new((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .expect("uniform draws are finite")
}

fn cosine(a: &DenseVector, b: &DenseVector) -> f64 {
    libm::fabs(dot(a.as_slice(), b.as_slice())) / (norm(a) * norm(b))
}

fn all_pairs_non_orthogonal(set: &VectorSet) -> bool {
    let n = set.len();
    (0..n).all(|i| (i + 1..n).all(|j| cosine(&set[i], &set[j]) >= GENERATOR_MIN_COSINE))
}

/// Three vectors in `R^3` whose pairwise products are all nonzero but sum to
/// zero, so energy is preserved by cancellation alone.
///
/// `c1`, `c2` are drawn with `|<c1, c2>| >= 0.1`, then `c3 = t w` for a random
/// direction `w` with `t = -<c1, c2> / <c1 + c2, w>`.
pub fn make_cancellation_example(seed: u64) -> Result<VectorSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let c1 = random_vector(&mut rng, 3);
        let c2 = random_vector(&mut rng, 3);
        let w = random_vector(&mut rng, 3);
        let c12 = dot(c1.as_slice(), c2.as_slice());
        if libm::fabs(c12) < 0.1 {
            continue;
        }
        let mut s = c1.clone();
        s.add_assign(&c2);
        let denom = dot(s.as_slice(), w.as_slice());
        if libm::fabs(denom) < GENERATOR_MIN_COSINE * norm(&s) * norm(&w) {
            continue;
        }
        let c3 = w.scaled(-c12 / denom);
        let Ok(set) = VectorSet::new(alloc::vec![c1, c2, c3]) else {
            continue;
        };
        if !all_pairs_non_orthogonal(&set) {
            continue;
        }
        let Ok(report) = classify(&set, DEFAULT_TOL) else {
            continue;
        };
        if libm::fabs(report.total_cross_term) <= 1e-12 && report.families == [Family::Cancellation]
        {
            return Ok(set);
        }
    }
    Err(Error::GenerationFailed {
        attempts: GENERATOR_ATTEMPTS,
    })
}

/// Three vectors with `c1 ⟂ c2 + c3` and `c2 ⟂ c3` but `<c1, c2> != 0`,
/// obtained by running the LINOEP transform on a random independent set.
pub fn make_nested_example(seed: u64) -> Result<VectorSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let draw: Vec<DenseVector> = (0..3).map(|_| random_vector(&mut rng, 3)).collect();
        let Ok(input) = VectorSet::new(draw) else {
            continue;
        };
        if !is_linearly_independent(&input, DEFAULT_TOL)? {
            continue;
        }
        let Ok(out) = linoep_transform(&input, DEFAULT_TOL) else {
            continue;
        };
        let c = out.c_set;
        if cosine(&c[0], &c[1]) < GENERATOR_MIN_COSINE
            || cosine(&c[0], &c[2]) < GENERATOR_MIN_COSINE
        {
            continue;
        }
        let Ok(report) = classify(&c, DEFAULT_TOL) else {
            continue;
        };
        if !report.is_pairwise_orthogonal()
            && !report.is_cancellation()
            && report.nested_permutations().any(|p| p == [0, 1, 2])
        {
            return Ok(c);
        }
    }
    Err(Error::GenerationFailed {
        attempts: GENERATOR_ATTEMPTS,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    /// `perm[i]` is the input index placed at position `i`.
    pub permutation: Vec<usize>,
    pub result: LinoepResult,
    /// `|‖Σc‖² − Σ‖c_i‖²|` for this ordering.
    pub energy_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// In lexicographic permutation order.
    pub entries: Vec<SweepEntry>,
}

/// LINOEP plus NOEP extension of `input` reordered by `perm`.
pub fn sweep_permutation(input: &VectorSet, perm: &[usize], tol: f64) -> Result<SweepEntry> {
    let permuted = input.permuted(perm)?;
    let result = linoep(&permuted, tol)?;
    let energy_residual = energy_report(&result.c_set).residual;
    Ok(SweepEntry {
        permutation: perm.to_vec(),
        result,
        energy_residual,
    })
}

/// Runs [`sweep_permutation`] for every ordering of `input`, in lexicographic
/// order.
pub fn permutation_sweep(input: &VectorSet, tol: f64) -> Result<SweepResult> {
    check_tol(tol)?;
    let n = input.len();
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooManyPermutations {
            n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    if !is_linearly_independent(input, tol)? {
        return Err(Error::NotLinearlyIndependent);
    }
    let entries = LexicographicPermutations::new(n)
        .map(|perm| sweep_permutation(input, &perm, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(rows: &[&[f64]]) -> VectorSet {
        VectorSet::from_rows(rows).unwrap()
    }

    fn basis3() -> VectorSet {
        set(&[&[1., 0., 0.], &[0., 1., 0.], &[0., 0., 1.]])
    }

    #[test]
    fn cross_term_examples() {
        assert_eq!(cross_term(&basis3(), 1e-10).unwrap().total_cross_term, 0.0);
        assert_eq!(
            cross_term(&set(&[&[1., 0.], &[1., 0.]]), 1e-10)
                .unwrap()
                .total_cross_term,
            2.0
        );
        let r = cross_term(&set(&[&[2., 0.], &[1., 1.], &[1., -5.]]), 1e-10).unwrap();
        assert_eq!(
            (r.gram.get(0, 1), r.gram.get(0, 2), r.gram.get(1, 2)),
            (2., 2., -4.)
        );
        assert_eq!(r.total_cross_term, 0.0);
        assert!(r.is_energy_preserving);
    }

    #[test]
    fn orthonormal_basis_is_pairwise_and_every_nesting() {
        let r = classify(&basis3(), 1e-10).unwrap();
        assert!(r.is_pairwise_orthogonal());
        assert_eq!(r.nested_permutations().count(), 6);
        assert!(!r.is_cancellation());
    }

    #[test]
    fn linoep_output_is_nested_only() {
        let s = set(&[&[2. / 3., -1. / 3., -1. / 3.], &[1., 1., 0.], &[0., 0., 1.]]);
        let r = classify(&s, 1e-10).unwrap();
        assert!(!r.is_pairwise_orthogonal());
        let nested: Vec<_> = r.nested_permutations().collect();
        assert_eq!(nested, vec![&[0, 1, 2][..], &[0, 2, 1][..]]);
        assert!(!r.is_cancellation());
    }

    #[test]
    fn cancellation_example_in_plane() {
        let r = classify(&set(&[&[2., 0.], &[1., 1.], &[1., -5.]]), 1e-10).unwrap();
        assert_eq!(r.families, vec![Family::Cancellation]);
    }

    #[test]
    fn non_preserving_set_has_no_family() {
        let r = classify(&set(&[&[1., 0.], &[1., 0.]]), 1e-10).unwrap();
        assert!(r.families.is_empty());
        assert!(!r.is_energy_preserving);
    }

    #[test]
    fn classify_limits() {
        assert_eq!(
            classify(&set(&[&[1., 0.]]), 1e-10),
            Err(Error::TooFewVectors {
                required: 2,
                found: 1
            })
        );
        let rows: Vec<Vec<f64>> = (0..9)
            .map(|i| (0..9).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let big = VectorSet::from_rows(&rows).unwrap();
        assert_eq!(
            classify(&big, 1e-10),
            Err(Error::TooManyPermutations { n: 9, limit: 8 })
        );
        assert_eq!(
            permutation_sweep(&big, 1e-10),
            Err(Error::TooManyPermutations { n: 9, limit: 8 })
        );
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            make_cancellation_example(7).unwrap(),
            make_cancellation_example(7).unwrap()
        );
        assert_eq!(
            make_nested_example(7).unwrap(),
            make_nested_example(7).unwrap()
        );
        assert_ne!(
            make_nested_example(7).unwrap(),
            make_nested_example(8).unwrap()
        );
    }

    #[test]
    fn generated_sets_meet_their_contracts() {
        for seed in 0..20 {
            let c = make_cancellation_example(seed).unwrap();
            let r = classify(&c, 1e-9).unwrap();
            assert_eq!(r.families, vec![Family::Cancellation]);
            assert!(r.total_cross_term.abs() <= 1e-12);

            let c = make_nested_example(seed).unwrap();
            assert!(dot(c[0].as_slice(), c[1].as_slice()).abs() > 1e-6);
            assert!(dot(c[0].as_slice(), c[2].as_slice()).abs() > 1e-6);
            let r = classify(&c, 1e-9).unwrap();
            assert_eq!(r.families.len(), 2);
            assert!(r
                .nested_permutations()
                .all(|p| p == [0, 1, 2] || p == [0, 2, 1]));
        }
    }

    #[test]
    fn sweep_of_pair() {
        let sweep = permutation_sweep(&set(&[&[1., 1.], &[0., 1.]]), 1e-10).unwrap();
        assert_eq!(sweep.entries.len(), 2);
        let swapped = &sweep.entries[1];
        assert_eq!(swapped.permutation, vec![1, 0]);
        assert_eq!(swapped.result.c_set, set(&[&[-0.5, 0.5], &[1., 1.]]));
    }

    #[test]
    fn sweep_of_orthonormal_basis() {
        let b = basis3();
        let sweep = permutation_sweep(&b, 1e-10).unwrap();
        assert_eq!(sweep.entries.len(), 6);
        for e in &sweep.entries {
            assert_eq!(e.result.c_set, b.permuted(&e.permutation).unwrap());
            assert_eq!(e.energy_residual, 0.0);
        }
    }

    #[test]
    fn sweep_rejects_dependent_input() {
        assert_eq!(
            permutation_sweep(&set(&[&[1., 1.], &[2., 2.]]), 1e-10),
            Err(Error::NotLinearlyIndependent)
        );
    }
}
