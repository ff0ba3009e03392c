//! Serializable run reports.
//!
//! Every report echoes the command, seed and node budget next to a version
//! stamp. There is no timestamp, so equal inputs give byte-identical JSON.

use num_rational::Ratio;
use pauli_core::games::{SynReport, ValueEstimate};
use pauli_core::solvers::SolveReport;
use serde::{Deserialize, Serialize};

use crate::verify::CriterionResult;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub budget: u64,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn new(command: &str, seed: u64, budget: u64, body: Body) -> Self {
        Self { version: VERSION.to_string(), command: command.to_string(), seed, budget, body }
    }

    /// Whether every check carried by the report passed.
    pub fn passed(&self) -> bool {
        match &self.body {
            Body::Count(c) => c.enumerated.as_ref().is_none_or(|e| *e == c.closed_form),
            Body::Enumerate(_) => true,
            Body::Spectra(s) => s.matches_closed_form.unwrap_or(true),
            Body::Solver(s) => s.certificate_valid,
            Body::Game(_) => true,
            Body::Walks(w) => w.cover_valid && w.bound_holds,
            Body::Verify(v) => v.passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Body {
    Count(CountReport),
    Enumerate(EnumerateReport),
    Spectra(SpectraReport),
    Solver(SolverReport),
    Game(GameReport),
    Walks(WalksReport),
    Verify(VerifyReport),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub k: usize,
    /// Decimal, since counts overflow 64 bits quickly.
    pub closed_form: String,
    pub enumerated: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectraReport {
    pub graph: String,
    pub n: usize,
    pub vertices: usize,
    /// For `b` these are the eigenvalues of `BBᵀ`.
    pub spectrum: Vec<Eigenvalue>,
    pub max: f64,
    pub lambda: f64,
    pub ratio: f64,
    pub residual: Option<f64>,
    pub integral: bool,
    pub expected: Option<Vec<Eigenvalue>>,
    pub matches_closed_form: Option<bool>,
    pub predicted_ratio: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub problem: String,
    pub n: usize,
    pub optimum: Option<String>,
    pub lower: String,
    pub upper: String,
    pub lower_value: f64,
    pub upper_value: f64,
    pub certificate_path: Option<String>,
    pub nodes: u64,
    pub proof_closed: bool,
    /// Independent re-check of the certificate.
    pub certificate_valid: bool,
    pub notes: Vec<String>,
}

pub fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_value(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl SolverReport {
    pub fn from_solve(r: &SolveReport, certificate_path: Option<String>, certificate_valid: bool) -> Self {
        Self {
            problem: r.problem.clone(),
            n: r.n,
            optimum: r.optimum().map(ratio_string),
            lower: ratio_string(r.lower),
            upper: ratio_string(r.upper),
            lower_value: ratio_value(r.lower),
            upper_value: ratio_value(r.upper),
            certificate_path,
            nodes: r.nodes,
            proof_closed: r.proof_closed,
            certificate_valid,
            notes: Vec::new(),
        }
    }

    pub fn from_syn(r: &SynReport, certificate_path: Option<String>, certificate_valid: bool) -> Self {
        let mut s = Self::from_solve(&r.report, certificate_path, certificate_valid);
        if let Some(lost) = r.lost_rounds {
            s.notes.push(format!("{lost} of {} rounds lost by the certificate", r.rounds));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub game: String,
    pub n: usize,
    pub copies: usize,
    pub strategy: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ci_high: Option<f64>,
    pub samples: u64,
    pub mc_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub worst_round: Option<f64>,
    /// Set when the strategy came out of a search.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SolverReport>,
    pub notes: Vec<String>,
}

impl GameReport {
    pub fn from_estimate(v: &ValueEstimate) -> Self {
        let (value, mean, ci_low, ci_high) = match v.interval {
            Some((lo, hi)) => (None, Some(v.value), Some(lo), Some(hi)),
            None => (Some(v.value), None, None, None),
        };
        Self {
            game: v.game.clone(),
            n: v.n,
            copies: v.copies,
            strategy: v.strategy.clone(),
            mode: v.mode.clone(),
            value,
            exact: v.exact.map(|r| format!("{}/{}", r.numer(), r.denom())),
            mean,
            ci_low,
            ci_high,
            samples: v.samples,
            mc_seed: v.seed,
            worst_round: v.worst_round,
            search: None,
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalksReport {
    pub n: usize,
    pub k: usize,
    pub pval: String,
    pub degree: usize,
    pub r_vertices: usize,
    pub lambda_over_d: f64,
    pub vertices: usize,
    pub theta: usize,
    pub cover_valid: bool,
    pub alpha_lower: usize,
    pub alpha_upper: usize,
    pub closed: bool,
    pub t_lower: f64,
    pub t_upper: f64,
    pub bound: f64,
    pub bound_holds: bool,
    pub bound_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub n_max: usize,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}
