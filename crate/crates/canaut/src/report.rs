//! JSON shapes written by the command-line tool.

use std::collections::BTreeMap;

use canaut_core::analysis::Analysis;
use canaut_core::autgroup::matrix_entries;
use canaut_core::charlattice::SurveyReport;
use canaut_core::error::{Error, ErrorClass};
use canaut_core::surface::ValidityReport;
use canaut_core::Tolerances;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceJson {
    pub cluster: f64,
    #[serde(rename = "match")]
    pub matching: f64,
}

impl From<&Tolerances> for ToleranceJson {
    fn from(t: &Tolerances) -> Self {
        Self {
            cluster: t.cluster,
            matching: t.matching,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub shape: String,
    pub name: String,
    pub split: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub equation: String,
    pub valid: bool,
    pub support_size: usize,
    pub kernel_order: Option<usize>,
    pub mobius_type: Option<String>,
    pub order: Option<usize>,
    pub structure: Option<StructureJson>,
    /// Each generator as four `[re, im]` entries, row-major.
    pub generators: Vec<[[f64; 2]; 4]>,
    pub violations: Vec<ViolationJson>,
    pub warnings: Vec<String>,
    pub tolerances: ToleranceJson,
}

impl AnalysisReport {
    pub fn new(a: &Analysis, tol: &Tolerances) -> Result<Self, Error> {
        let generators = match &a.group {
            Some(g) => g
                .generators()?
                .into_iter()
                .map(|i| matrix_entries(&g.matrices[i]))
                .collect(),
            None => Vec::new(),
        };
        Ok(Self {
            equation: a.equation.clone(),
            valid: a.validity.is_valid,
            support_size: a.validity.support_size,
            kernel_order: a.group.as_ref().map(|g| g.kernel_order),
            mobius_type: a.group.as_ref().map(|g| g.mobius_type.to_string()),
            order: a.group.as_ref().map(|g| g.order),
            structure: a.structure.as_ref().map(|s| StructureJson {
                shape: s.shape.to_string(),
                name: s.human_name.clone(),
                split: s.split(),
            }),
            generators,
            violations: violations(&a.validity),
            warnings: a.warnings.clone(),
            tolerances: tol.into(),
        })
    }
}

fn violations(v: &ValidityReport) -> Vec<ViolationJson> {
    v.violations
        .iter()
        .map(|x| ViolationJson {
            code: x.code.as_str().to_string(),
            message: x.message.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityJson {
    pub valid: bool,
    pub violations: Vec<ViolationJson>,
    pub support_size: usize,
    pub warnings: Vec<String>,
}

impl From<&ValidityReport> for ValidityJson {
    fn from(v: &ValidityReport) -> Self {
        Self {
            valid: v.is_valid,
            violations: violations(v),
            support_size: v.support_size,
            warnings: v.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub class: String,
    pub message: String,
}

/// Written in place of a report when a line or command fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub equation: String,
    pub error: ErrorBody,
}

impl ErrorReport {
    pub fn new(equation: &str, e: &Error) -> Self {
        let class = match e.class() {
            ErrorClass::Usage => "parse",
            ErrorClass::InvalidSurface => "invalid_surface",
            ErrorClass::Numerical => "numerical",
        };
        Self {
            equation: equation.to_string(),
            error: ErrorBody {
                class: class.into(),
                message: e.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyJson {
    pub surfaces: usize,
    pub orders: Vec<u64>,
    pub primes: Vec<u64>,
    pub max_det: i64,
    pub witnesses: BTreeMap<String, String>,
    pub invariant_factors: Vec<(u64, u64)>,
}

impl From<&SurveyReport> for SurveyJson {
    fn from(r: &SurveyReport) -> Self {
        Self {
            surfaces: r.surfaces,
            orders: r.orders.iter().copied().collect(),
            primes: r.primes.iter().copied().collect(),
            max_det: r.max_det,
            witnesses: r
                .witnesses
                .iter()
                .map(|(p, eq)| (p.to_string(), eq.clone()))
                .collect(),
            invariant_factors: r.invariant_factors.iter().copied().collect(),
        }
    }
}
