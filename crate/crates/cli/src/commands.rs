use rayon::prelude::*;

use linoep_core::{
    classify, energy_report, gsom_energy_identity, gsom_transform, inner, is_linearly_independent,
    linoep, norm, sum_vectors, sweep_permutation, DenseVector, Error as CoreError,
    LexicographicPermutations, LinoepResult, VectorSet, MAX_EXHAUSTIVE_N,
};

use crate::report::{
    nums, vector, vectors, CommandName, CrossTerm, Energy, FamilyEntry, Num, RunReport, SweepRecord,
};
use crate::CliError;

fn max_abs_diff(a: &DenseVector, b: &DenseVector) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn set_diff(a: &VectorSet, b: &VectorSet) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| max_abs_diff(x, y))
        .fold(0.0, f64::max)
}

/// |<a, b>| / (||a|| ||b||), zero when either vector vanishes.
fn cosine(a: &DenseVector, b: &DenseVector) -> f64 {
    let denom = norm(a) * norm(b);
    if denom == 0.0 {
        0.0
    } else {
        inner(a, b).expect("same dimension").abs() / denom
    }
}

pub fn gsom(input: &VectorSet, tol: f64) -> Result<RunReport, CliError> {
    let r = gsom_transform(input, tol)?;
    let s = &r.orthogonal_set;
    let n = s.len();
    let mut ortho: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            ortho = ortho.max(cosine(&s[i], &s[j]));
        }
    }
    let e = gsom_energy_identity(&r);

    let mut report = RunReport::ok(CommandName::Gsom, input, tol);
    report.s_vectors = Some(vectors(s));
    report.coefficients = Some(r.coeff_matrix.rows().map(nums).collect());
    report.column_sums = Some(nums(&r.column_sums));
    report.energy.insert(
        "parseval",
        Energy {
            sum_energy: Num(e.lhs),
            component_energy: Num(e.rhs),
            residual: Num(e.residual),
        },
    );
    report.residuals.insert("orthogonality", Num(ortho));
    report
        .residuals
        .insert("reconstruction", Num(set_diff(&r.reconstruct(), input)));
    report.residuals.insert(
        "weighted_sum",
        Num(max_abs_diff(&r.weighted_sum(), &sum_vectors(input))),
    );
    report.residuals.insert("parseval", Num(e.residual));
    Ok(report)
}

fn linoep_fields(report: &mut RunReport, input: &VectorSet, r: &LinoepResult) {
    let nested = r
        .c_set
        .iter()
        .zip(&r.tail_sums)
        .map(|(c, s)| cosine(c, s))
        .fold(0.0, f64::max);
    let c_energy = energy_report(&r.c_set);
    report.alphas = Some(nums(&r.alphas));
    report.betas = Some(nums(&r.betas));
    report.gamma = Some(Num(r.gamma));
    report.c_vectors = Some(vectors(&r.c_set));
    report.energy.insert("c", c_energy.into());
    report.residuals.insert("nested_orthogonality", Num(nested));
    report.residuals.insert(
        "reconstruction",
        Num(set_diff(&r.transform().reconstruct(), input)),
    );
    report.residuals.insert("energy", Num(c_energy.residual));
}

pub fn linoep_cmd(input: &VectorSet, tol: f64) -> Result<RunReport, CliError> {
    let r = linoep(input, tol)?;
    let mut report = RunReport::ok(CommandName::Linoep, input, tol);
    linoep_fields(&mut report, input, &r);
    Ok(report)
}

pub fn noep(input: &VectorSet, tol: f64) -> Result<RunReport, CliError> {
    let r = linoep(input, tol)?;
    let mut report = RunReport::ok(CommandName::Noep, input, tol);
    linoep_fields(&mut report, input, &r);

    let sum_y = sum_vectors(input);
    let d_energy = energy_report(&r.d_set);
    let z1 = sum_vectors(&r.c_set);
    report.d_vectors = Some(vectors(&r.d_set));
    report.z2 = Some(vector(&r.z2));
    report.energy.insert("d", d_energy.into());
    report
        .residuals
        .insert("sum", Num(max_abs_diff(&sum_vectors(&r.d_set), &sum_y)));
    report.residuals.insert(
        "noep_energy",
        Num((linoep_core::norm_sq(&sum_y) - d_energy.component_energy).abs()),
    );
    report
        .residuals
        .insert("z_orthogonality", Num(cosine(&z1, &r.z2)));
    Ok(report)
}

pub fn analyze(input: &VectorSet, tol: f64) -> Result<RunReport, CliError> {
    let r = classify(input, tol)?;
    let mut report = RunReport::ok(CommandName::Analyze, input, tol);
    report.energy.insert("set", energy_report(input).into());
    report.residuals.insert(
        "cross_term",
        Num((r.total_cross_term - r.energy_difference).abs()),
    );
    report.families = Some(r.families.iter().map(FamilyEntry::from).collect());
    report.cross_term = Some(CrossTerm {
        total: Num(r.total_cross_term),
        energy_difference: Num(r.energy_difference),
        is_energy_preserving: r.is_energy_preserving,
        gram: r.gram.rows().map(nums).collect(),
    });
    Ok(report)
}

/// Every ordering (or just `only`) of `input`, evaluated in parallel and
/// reported in lexicographic order.
pub fn sweep(
    input: &VectorSet,
    tol: f64,
    limit_n: usize,
    only: Option<&[usize]>,
) -> Result<RunReport, CliError> {
    let n = input.len();
    let limit = limit_n.min(MAX_EXHAUSTIVE_N);
    if only.is_none() && n > limit {
        return Err(CoreError::TooManyPermutations { n, limit }.into());
    }
    if !is_linearly_independent(input, tol)? {
        return Err(CoreError::NotLinearlyIndependent.into());
    }
    let perms: Vec<Vec<usize>> = match only {
        Some(p) => vec![p.to_vec()],
        None => LexicographicPermutations::new(n).collect(),
    };
    let entries = perms
        .par_iter()
        .map(|p| sweep_permutation(input, p, tol))
        .collect::<Result<Vec<_>, _>>()?;

    let sum_y = sum_vectors(input);
    let mut max_energy: f64 = 0.0;
    let mut max_sum: f64 = 0.0;
    let records = entries
        .iter()
        .map(|e| {
            let sum_residual = max_abs_diff(&sum_vectors(&e.result.d_set), &sum_y);
            max_energy = max_energy.max(e.energy_residual);
            max_sum = max_sum.max(sum_residual);
            SweepRecord {
                permutation: e.permutation.clone(),
                alphas: nums(&e.result.alphas),
                gamma: Num(e.result.gamma),
                c_vectors: vectors(&e.result.c_set),
                d_vectors: vectors(&e.result.d_set),
                energy_residual: Num(e.energy_residual),
                sum_residual: Num(sum_residual),
            }
        })
        .collect();

    let mut report = RunReport::ok(CommandName::Sweep, input, tol);
    report.entries = Some(records);
    report.residuals.insert("max_energy", Num(max_energy));
    report.residuals.insert("max_sum", Num(max_sum));
    Ok(report)
}
