use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::closed_form::lorentz_quasi_sup;
use super::splitting::{consensus_dr, Block, DrOutcome, DrSettings};
use super::{lex_cmp, separated, QuasiSupResult, SolvePath, SolverOptions, Status};
use crate::error::{Error, Result};
use crate::spaces::{Cone, OrderedSpace};
use crate::Vector;

/// The quasi-supremum `x ∨̃ y`.
///
/// Uses the closed form when one exists and splitting with restarts otherwise.
pub fn quasi_sup(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    opts: &SolverOptions,
) -> Result<QuasiSupResult> {
    match closed_form_quasi_sup(space, x, y)? {
        Some(r) => Ok(r),
        None => quasi_sup_splitting(space, x, y, opts),
    }
}

/// Closed-form quasi-supremum, when the space has one.
///
/// Euclidean Lorentz spaces use `½(x+y) + ½⌈x−y⌉`; orthants with a finite exponent use the
/// coordinatewise maximum, the only upper bound that no other upper bound undercuts.
pub fn closed_form_quasi_sup(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
) -> Result<Option<QuasiSupResult>> {
    space.check(x)?;
    space.check(y)?;
    let z = match space.cone() {
        Cone::Lorentz { axis } if space.norm_spec().is_euclidean() => lorentz_quasi_sup(axis, x, y),
        Cone::Standard { .. } if !space.norm_spec().is_infinite() => x.zip_map(y, f64::max),
        _ => return Ok(None),
    };
    let norm = space.norm_spec();
    Ok(Some(QuasiSupResult {
        sigma_value: norm.dist(&z, x) + norm.dist(&z, y),
        feasibility_residual: residual(space, x, y, &z)?,
        z,
        status: Status::Unique,
        optimality_gap_estimate: 0.0,
        witnesses: Vec::new(),
        iterations: 0,
        path: SolvePath::ClosedForm,
    }))
}

fn residual(space: &OrderedSpace, x: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
    Ok(space.leq_violation(x, z)?.max(space.leq_violation(y, z)?))
}

/// Shifts `z` along the order unit by the least amount making it an upper bound of `lower`.
pub(crate) fn lift_above(space: &OrderedSpace, lower: &[&Vector], z: &Vector) -> Result<Vector> {
    let cone = space.cone();
    let mut lam = 0.0f64;
    for l in lower {
        lam = lam.max(cone.shift_into(&(z - *l))?);
    }
    if lam == 0.0 {
        return Ok(z.clone());
    }
    Ok(z + cone.order_unit()? * lam)
}

struct Run {
    z: Vector,
    sigma: f64,
    outcome: DrOutcome,
}

/// Quasi-supremum by consensus splitting, ignoring any closed form.
///
/// Runs `n_restarts` solves from random upper bounds. Converged points whose σ values
/// agree but which lie more than the separation tolerance apart make the result
/// [`Status::FlatMinimum`].
pub fn quasi_sup_splitting(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    opts: &SolverOptions,
) -> Result<QuasiSupResult> {
    space.check(x)?;
    space.check(y)?;
    opts.validate()?;
    let norm = space.norm_spec();
    let gap = norm.dist(x, y);
    let cone = space.cone();
    let ub = match space.upper_bound_any(x, y) {
        Ok(z) => z,
        Err(Error::NotGenerating) => return infeasible(space, x, y),
        Err(e) => return Err(e),
    };
    let scale = 0.5 + gap;
    let settings = DrSettings {
        tol_primal: opts.tol_primal,
        tol_obj: opts.tol_obj,
        max_iter: opts.max_iter,
    };
    let sigma = |z: &Vector| norm.dist(z, x) + norm.dist(z, y);

    let runs: Vec<Result<Run>> = (0..opts.n_restarts)
        .into_par_iter()
        .map(|k| {
            let start = if k == 0 {
                ub.clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(k as u64);
                &ub + cone.sample(&mut rng)? * scale
            };
            let blocks = [
                Block::Distance {
                    center: x,
                    norm,
                    weight: 1.0,
                },
                Block::Distance {
                    center: y,
                    norm,
                    weight: 1.0,
                },
                Block::Above { base: x, cone },
                Block::Above { base: y, cone },
            ];
            let outcome = consensus_dr(&blocks, &start, settings, sigma)?;
            let z = lift_above(space, &[x, y], &outcome.z)?;
            Ok(Run {
                sigma: sigma(&z),
                z,
                outcome,
            })
        })
        .collect();
    let runs: Vec<Run> = runs.into_iter().collect::<Result<_>>()?;
    let iterations: usize = runs.iter().map(|r| r.outcome.iterations).sum();

    let converged: Vec<&Run> = runs.iter().filter(|r| r.outcome.converged).collect();
    if converged.is_empty() {
        let best = runs
            .iter()
            .min_by(|a, b| a.sigma.total_cmp(&b.sigma))
            .expect("at least one restart");
        // A stalled consensus far from feasibility means the two translated cones miss each other.
        let status = if best.outcome.residual > 1e-3 * (1.0 + gap) {
            Status::Infeasible
        } else {
            Status::MaxIter
        };
        return Ok(QuasiSupResult {
            z: best.z.clone(),
            sigma_value: best.sigma,
            status,
            feasibility_residual: residual(space, x, y, &best.z)?,
            optimality_gap_estimate: best.outcome.objective_change,
            witnesses: Vec::new(),
            iterations,
            path: SolvePath::Splitting,
        });
    }

    let best = converged
        .iter()
        .min_by(|a, b| a.sigma.total_cmp(&b.sigma))
        .expect("nonempty");
    let sigma_min = best.sigma;
    let sigma_tol = opts.tol_obj.max(10.0 * opts.tol_primal) * (1.0 + sigma_min);
    let mut near: Vec<Vector> = converged
        .iter()
        .filter(|r| r.sigma <= sigma_min + sigma_tol)
        .map(|r| r.z.clone())
        .collect();
    let sep = opts.separation(gap);
    near.sort_by(|a, b| lex_cmp(a, b, sep));
    let reps = separated(&near, sep, norm);
    let spread = converged
        .iter()
        .map(|r| r.sigma - sigma_min)
        .filter(|d| *d <= sigma_tol)
        .fold(0.0, f64::max);
    let gap_estimate = spread.max(best.outcome.objective_change);

    if reps.len() >= 2 {
        let z = reps[0].clone();
        return Ok(QuasiSupResult {
            sigma_value: sigma(&z),
            feasibility_residual: residual(space, x, y, &z)?,
            z,
            status: Status::FlatMinimum,
            optimality_gap_estimate: gap_estimate,
            witnesses: reps,
            iterations,
            path: SolvePath::Splitting,
        });
    }
    Ok(QuasiSupResult {
        z: best.z.clone(),
        sigma_value: sigma_min,
        status: Status::Unique,
        feasibility_residual: residual(space, x, y, &best.z)?,
        optimality_gap_estimate: gap_estimate,
        witnesses: Vec::new(),
        iterations,
        path: SolvePath::Splitting,
    })
}

fn infeasible(space: &OrderedSpace, x: &Vector, y: &Vector) -> Result<QuasiSupResult> {
    let z = (x + y) * 0.5;
    let norm = space.norm_spec();
    Ok(QuasiSupResult {
        sigma_value: norm.dist(&z, x) + norm.dist(&z, y),
        feasibility_residual: residual(space, x, y, &z)?,
        z,
        status: Status::Infeasible,
        optimality_gap_estimate: f64::INFINITY,
        witnesses: Vec::new(),
        iterations: 0,
        path: SolvePath::Splitting,
    })
}
