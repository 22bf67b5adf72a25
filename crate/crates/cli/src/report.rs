//! Machine-readable run reports.
//!
//! Every floating-point value is written as a decimal string with 17
//! significant digits (`{:.16e}`), which round-trips any `f64` exactly.
//! Fields that a command does not produce are omitted.

use std::collections::BTreeMap;

use linoep_core::{DenseVector, EnergyReport, Family, VectorSet};
use serde::{Serialize, Serializer};

/// An `f64` serialized as a full-precision decimal string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn format(x: f64) -> String {
        format!("{x:.16e}")
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&Num::format(self.0))
    }
}

pub fn nums(xs: &[f64]) -> Vec<Num> {
    xs.iter().copied().map(Num).collect()
}

pub fn vector(v: &DenseVector) -> Vec<Num> {
    nums(v.as_slice())
}

pub fn vectors(set: &VectorSet) -> Vec<Vec<Num>> {
    set.iter().map(vector).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Gsom,
    Linoep,
    Noep,
    Analyze,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub tol: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct Energy {
    pub sum_energy: Num,
    pub component_energy: Num,
    pub residual: Num,
}

impl From<EnergyReport> for Energy {
    fn from(e: EnergyReport) -> Self {
        Energy {
            sum_energy: Num(e.sum_energy),
            component_energy: Num(e.component_energy),
            residual: Num(e.residual),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossTerm {
    pub total: Num,
    pub energy_difference: Num,
    pub is_energy_preserving: bool,
    pub gram: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FamilyEntry {
    PairwiseOrthogonal,
    Nested { permutation: Vec<usize> },
    Cancellation,
}

impl From<&Family> for FamilyEntry {
    fn from(f: &Family) -> Self {
        match f {
            Family::PairwiseOrthogonal => FamilyEntry::PairwiseOrthogonal,
            Family::Nested(p) => FamilyEntry::Nested {
                permutation: p.clone(),
            },
            Family::Cancellation => FamilyEntry::Cancellation,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub permutation: Vec<usize>,
    pub alphas: Vec<Num>,
    pub gamma: Num,
    pub c_vectors: Vec<Vec<Num>>,
    pub d_vectors: Vec<Vec<Num>>,
    pub energy_residual: Num,
    pub sum_residual: Num,
}

/// Report for one CLI invocation. Field names are part of the CLI contract.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: CommandName,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_vectors: Option<Vec<Vec<Num>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<Num>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_sums: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betas: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_vectors: Option<Vec<Vec<Num>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_vectors: Option<Vec<Vec<Num>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z2: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub energy: BTreeMap<&'static str, Energy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_term: Option<CrossTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<FamilyEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<SweepRecord>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub residuals: BTreeMap<&'static str, Num>,
}

impl RunReport {
    pub fn ok(command: CommandName, input: &VectorSet, tol: f64) -> Self {
        RunReport {
            n: Some(input.len()),
            m: Some(input.dim()),
            tolerances: Some(Tolerances { tol: Num(tol) }),
            ..Self::bare(command, Status::Ok)
        }
    }

    pub fn error(command: CommandName, code: i32, kind: &'static str) -> Self {
        RunReport {
            code: Some(code),
            error: Some(kind),
            ..Self::bare(command, Status::Error)
        }
    }

    fn bare(command: CommandName, status: Status) -> Self {
        RunReport {
            command,
            status,
            code: None,
            error: None,
            n: None,
            m: None,
            tolerances: None,
            permutation: None,
            s_vectors: None,
            coefficients: None,
            column_sums: None,
            alphas: None,
            betas: None,
            gamma: None,
            c_vectors: None,
            d_vectors: None,
            z2: None,
            energy: BTreeMap::new(),
            cross_term: None,
            families: None,
            entries: None,
            residuals: BTreeMap::new(),
        }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
