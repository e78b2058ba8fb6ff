//! The quasi-supremum solver.
//!
//! `x ∨̃ y` is the unique minimizer of `σ(z) = ‖z − x‖ + ‖z − y‖` over the common upper
//! bounds `(x + C) ∩ (y + C)`. Euclidean Lorentz and orthant spaces have closed forms;
//! every other space goes through consensus Douglas–Rachford splitting with restarts
//! that detect flat minima.

mod closed_form;
mod minimality;
mod oracle;
mod quasisup;
pub(crate) mod splitting;

use serde::{Deserialize, Serialize};

pub use closed_form::{lorentz_quasi_abs, lorentz_quasi_sup};
pub use minimality::{
    is_minimal_upper_bound, minimality_check, MinimalityOptions, MinimalityReport,
};
pub use oracle::{brute_force_quasi_sup, GridSpec, OracleResult};
pub(crate) use quasisup::lift_above;
pub use quasisup::{closed_form_quasi_sup, quasi_sup, quasi_sup_splitting};

use crate::error::{Error, Result};
use crate::{NormSpec, Vector};

/// Splitting and restart controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    /// Consensus residual at which an iteration counts as converged.
    pub tol_primal: f64,
    /// Largest change of σ between iterations at convergence.
    pub tol_obj: f64,
    pub max_iter: usize,
    /// Number of runs from distinct feasible starts, including the first.
    pub n_restarts: usize,
    pub seed: u64,
    /// Distance above which two minimizers count as distinct; `None` means `1e−4·(1+‖x−y‖)`.
    pub sep_tol: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol_primal: 1e-8,
            tol_obj: 1e-10,
            max_iter: 100_000,
            n_restarts: 8,
            seed: 0,
            sep_tol: None,
        }
    }
}

impl SolverOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, n: usize) -> Self {
        self.n_restarts = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("solver option {what}")));
        if !(self.tol_primal > 0.0) || !(self.tol_obj > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.max_iter == 0 || self.n_restarts == 0 {
            return bad("max_iter and n_restarts must be positive");
        }
        if matches!(self.sep_tol, Some(s) if !(s > 0.0)) {
            return bad("sep_tol must be positive");
        }
        Ok(())
    }

    pub fn separation(&self, gap: f64) -> f64 {
        self.sep_tol.unwrap_or(1e-4 * (1.0 + gap))
    }
}

/// Outcome class of a quasi-supremum computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Unique,
    FlatMinimum,
    Infeasible,
    MaxIter,
}

/// Which algorithm produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvePath {
    ClosedForm,
    Splitting,
    Grid,
}

/// Result of a quasi-supremum computation.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiSupResult {
    pub z: Vector,
    pub sigma_value: f64,
    pub status: Status,
    /// Largest cone violation of `z − x` and `z − y`.
    pub feasibility_residual: f64,
    /// Spread of σ among converged restarts plus the last σ change.
    pub optimality_gap_estimate: f64,
    /// Distinct near-minimizers, lexicographically sorted; empty unless flat.
    pub witnesses: Vec<Vector>,
    pub iterations: usize,
    pub path: SolvePath,
}

/// `‖z − x‖ + ‖z − y‖`.
pub fn sigma(x: &Vector, y: &Vector, z: &Vector, norm: NormSpec) -> Result<f64> {
    crate::error::check_dim(x.len(), y.len())?;
    crate::error::check_dim(x.len(), z.len())?;
    Ok(norm.dist(z, x) + norm.dist(z, y))
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    z: Vec<f64>,
    sigma_value: f64,
    status: Status,
    feasibility_residual: f64,
    optimality_gap_estimate: f64,
    witnesses: Vec<Vec<f64>>,
    iterations: usize,
    path: SolvePath,
}

impl Serialize for QuasiSupResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResultJson {
            z: self.z.as_slice().to_vec(),
            sigma_value: self.sigma_value,
            status: self.status,
            feasibility_residual: self.feasibility_residual,
            optimality_gap_estimate: self.optimality_gap_estimate,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| w.as_slice().to_vec())
                .collect(),
            iterations: self.iterations,
            path: self.path,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiSupResult {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ResultJson::deserialize(d)?;
        Ok(QuasiSupResult {
            z: Vector::from_vec(r.z),
            sigma_value: r.sigma_value,
            status: r.status,
            feasibility_residual: r.feasibility_residual,
            optimality_gap_estimate: r.optimality_gap_estimate,
            witnesses: r.witnesses.into_iter().map(Vector::from_vec).collect(),
            iterations: r.iterations,
            path: r.path,
        })
    }
}

/// Lexicographic order on coordinates rounded to multiples of `quantum`, then on exact
/// coordinates, so that solver jitter below `quantum` does not decide the order.
pub(crate) fn lex_cmp(a: &Vector, b: &Vector, quantum: f64) -> std::cmp::Ordering {
    let key = |v: f64| (v / quantum).round();
    a.iter()
        .zip(b.iter())
        .map(|(u, v)| key(*u).total_cmp(&key(*v)))
        .chain(a.iter().zip(b.iter()).map(|(u, v)| u.total_cmp(v)))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Greedy selection of mutually separated points from a lexicographically sorted list.
pub(crate) fn separated(points: &[Vector], sep: f64, norm: NormSpec) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for p in points {
        if out.iter().all(|q| norm.dist(p, q) > sep) {
            out.push(p.clone());
        }
    }
    out
}
