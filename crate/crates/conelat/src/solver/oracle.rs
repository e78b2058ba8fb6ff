//! Exhaustive grid search for the quasi-supremum, independent of the splitting solver.
//!
//! The base level scans a box with `points_per_axis` points per coordinate. A level
//! then shrinks the box to the cells that can still hold the true minimizer: the grid
//! point nearest the minimizer is within half a cell diagonal `r` of it, so its order
//! violation is at most `L·r` and its σ at most `σ_best + 2c·r`, where `L` and `c` are
//! Lipschitz constants of the violation and of the norm. Refinement stops when the box
//! no longer shrinks.
//!
//! Near a tangential contact the certified box narrows only like `√r`, so it stalls
//! well above the requested accuracy, and along a curved edge of the feasible set the
//! improving region is a sliver no grid pattern catches. The problem is convex, so a
//! final ellipsoid method started from the last certified box finishes the job.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{separated, QuasiSupResult, SolvePath, Status};
use crate::error::{Error, Result};
use crate::spaces::{OrderedSpace, MEMBERSHIP_TOL};
use crate::Vector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub points_per_axis: usize,
    /// Maximum number of refinement levels after the base scan.
    pub refinements: usize,
    /// Points per axis for refinement levels.
    pub refine_points: usize,
    /// Ellipsoid iterations after the grid levels; 0 disables the polish.
    pub polish_iters: usize,
    /// Per-coordinate `[lo, hi]`; `None` means automatic bounds.
    pub bounds: Option<Vec<(f64, f64)>>,
    /// σ slack for counting grid points as tied minima; `None` means `1e−9·(1+σ)`.
    pub flat_tol: Option<f64>,
    /// Distance above which tied minima count as distinct; `None` means `1e−4·(1+‖x−y‖)`.
    pub sep_tol: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points_per_axis: 81,
            refinements: 12,
            refine_points: 41,
            polish_iters: 2000,
            bounds: None,
            flat_tol: None,
            sep_tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub result: QuasiSupResult,
    /// Largest coordinate step of the base scan.
    pub grid_step: f64,
    /// Largest coordinate step of the last grid level.
    pub final_step: f64,
    /// Number of scanned grid levels, the base scan included.
    pub levels: usize,
    /// Ellipsoid bound on σ at the best feasible center minus the minimum; `None` when
    /// the polish did not run or met no feasible center.
    pub polish_bound: Option<f64>,
}

const MAX_DIM: usize = 4;

struct Level {
    lo: Vec<f64>,
    step: Vec<f64>,
    n_pts: usize,
}

impl Level {
    fn new(bounds: &[(f64, f64)], n_pts: usize) -> Self {
        let lo = bounds.iter().map(|b| b.0).collect();
        let step = bounds
            .iter()
            .map(|b| (b.1 - b.0) / (n_pts - 1) as f64)
            .collect();
        Level { lo, step, n_pts }
    }

    fn max_step(&self) -> f64 {
        self.step.iter().copied().fold(0.0, f64::max)
    }

    fn coord(&self, i: usize, j: usize) -> f64 {
        self.lo[i] + j as f64 * self.step[i]
    }

    /// The point with row-major flat index `k`, last coordinate fastest.
    fn point(&self, mut k: usize) -> Vector {
        let n = self.lo.len();
        let n_pts = self.n_pts;
        let mut p = Vector::zeros(n);
        for i in (0..n).rev() {
            p[i] = self.coord(i, k % n_pts);
            k /= n_pts;
        }
        p
    }

    fn half_diagonal(&self) -> f64 {
        0.5 * self.step.iter().map(|h| h * h).sum::<f64>().sqrt()
    }
}

/// Calls `f` on every grid point of the level, in lexicographic index order.
fn scan(level: &Level, mut f: impl FnMut(&Vector)) {
    let n = level.lo.len();
    let n_pts = level.n_pts;
    let mut idx = vec![0usize; n];
    let mut p = Vector::from_column_slice(&level.lo);
    loop {
        f(&p);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n_pts {
                p[k] = level.lo[k] + idx[k] as f64 * level.step[k];
                break;
            }
            idx[k] = 0;
            p[k] = level.lo[k];
        }
    }
}

/// Central-difference gradient of `f` at `z`.
fn gradient(f: &impl Fn(&Vector) -> f64, z: &Vector) -> Vector {
    let h = 1e-7 * (1.0 + z.amax());
    let mut p = z.clone();
    Vector::from_iterator(
        z.len(),
        (0..z.len()).map(|i| {
            p[i] = z[i] + h;
            let up = f(&p);
            p[i] = z[i] - h;
            let down = f(&p);
            p[i] = z[i];
            (up - down) / (2.0 * h)
        }),
    )
}

/// Grid-search quasi-supremum for spaces of dimension at most four.
pub fn brute_force_quasi_sup(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    grid: &GridSpec,
) -> Result<OracleResult> {
    space.check(x)?;
    space.check(y)?;
    let n = space.dim();
    if n > MAX_DIM {
        return Err(Error::Unsupported(format!(
            "grid oracle needs dimension ≤ {MAX_DIM}, got {n}"
        )));
    }
    if grid.points_per_axis < 2 || grid.refine_points < 2 {
        return Err(Error::InvalidArgument(
            "grid needs at least two points per axis".into(),
        ));
    }
    let n_pts = grid.points_per_axis;
    let norm = space.norm_spec();
    let cone = space.cone();
    let gap = norm.dist(x, y);
    let bounds = match &grid.bounds {
        Some(b) => {
            if b.len() != n || b.iter().any(|(lo, hi)| !(lo < hi)) {
                return Err(Error::InvalidArgument(
                    "grid bounds must be one increasing pair per axis".into(),
                ));
            }
            b.clone()
        }
        None => {
            let ub = space.upper_bound_any(x, y)?;
            (0..n)
                .map(|i| {
                    let lo = x[i].min(y[i]) - 1.0;
                    let hi = x[i].max(y[i]) + gap + 1.0;
                    (lo.min(ub[i] - 1.0), hi.max(ub[i] + 1.0))
                })
                .collect()
        }
    };
    let sigma = |z: &Vector| norm.dist(z, x) + norm.dist(z, y);
    let violation = |z: &Vector| -> f64 {
        let a = cone.violation(&(z - x)).unwrap_or(f64::INFINITY);
        let b = cone.violation(&(z - y)).unwrap_or(f64::INFINITY);
        a.max(b)
    };
    // ‖v‖_p ≤ c‖v‖₂
    let p = norm.p();
    let c_norm = if p >= 2.0 {
        1.0
    } else {
        (n as f64).powf(1.0 / p - 0.5)
    };
    let l_viol = cone.violation_lipschitz();

    let mut level = Level::new(&bounds, n_pts);
    let base_step = level.max_step();
    let mut evaluated = 0usize;
    let mut sig = Vec::new();
    let mut viol = Vec::new();
    let mut evaluate = |level: &Level, sig: &mut Vec<f64>, viol: &mut Vec<f64>| {
        sig.clear();
        viol.clear();
        scan(level, |z| {
            sig.push(sigma(z));
            viol.push(violation(z));
        });
        evaluated += sig.len();
    };
    let best_index = |sig: &[f64], viol: &[f64]| -> Option<usize> {
        (0..sig.len())
            .filter(|&k| viol[k] <= MEMBERSHIP_TOL)
            .min_by(|&a, &b| sig[a].total_cmp(&sig[b]))
    };

    evaluate(&level, &mut sig, &mut viol);
    let k0 = best_index(&sig, &viol).ok_or(Error::EmptyGrid)?;
    let mut best_sigma = sig[k0];
    let mut best = level.point(k0);

    // Ties at the base level; indices ascend in lexicographic coordinate order.
    let flat_tol = grid.flat_tol.unwrap_or(1e-9 * (1.0 + best_sigma));
    let tied: Vec<Vector> = (0..sig.len())
        .filter(|&k| viol[k] <= MEMBERSHIP_TOL && sig[k] <= best_sigma + flat_tol)
        .map(|k| level.point(k))
        .collect();
    let sep = grid.sep_tol.unwrap_or(1e-4 * (1.0 + gap));
    let reps = separated(&tied, sep, norm);
    if reps.len() >= 2 {
        let z = reps[0].clone();
        let result = QuasiSupResult {
            sigma_value: sigma(&z),
            feasibility_residual: violation(&z),
            z,
            status: Status::FlatMinimum,
            optimality_gap_estimate: 2.0 * c_norm * level.half_diagonal(),
            witnesses: reps,
            iterations: evaluated,
            path: SolvePath::Grid,
        };
        return Ok(OracleResult {
            result,
            grid_step: base_step,
            final_step: base_step,
            levels: 1,
            polish_bound: None,
        });
    }

    let mut levels = 1;
    let mut width = bounds.iter().map(|(lo, hi)| hi - lo).fold(0.0, f64::max);
    for _ in 0..grid.refinements {
        let r = level.half_diagonal();
        let s_cap = best_sigma + 2.0 * c_norm * r + 1e-12 * (1.0 + best_sigma);
        let v_cap = l_viol * r + MEMBERSHIP_TOL;
        let mut lo = vec![usize::MAX; n];
        let mut hi = vec![0usize; n];
        for k in 0..sig.len() {
            if viol[k] <= v_cap && sig[k] <= s_cap {
                let mut rest = k;
                for i in (0..n).rev() {
                    let j = rest % level.n_pts;
                    rest /= level.n_pts;
                    lo[i] = lo[i].min(j);
                    hi[i] = hi[i].max(j);
                }
            }
        }
        // The cells around the candidates, clipped to the current box.
        let window: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let j_lo = lo[i].saturating_sub(1);
                let j_hi = (hi[i] + 1).min(level.n_pts - 1);
                (level.coord(i, j_lo), level.coord(i, j_hi))
            })
            .collect();
        let new_width = window.iter().map(|(a, b)| b - a).fold(0.0, f64::max);
        if !(new_width < 0.9 * width) || window.iter().any(|(a, b)| !(a < b)) {
            break;
        }
        width = new_width;
        level = Level::new(&window, grid.refine_points);
        levels += 1;
        evaluate(&level, &mut sig, &mut viol);
        if let Some(k) = best_index(&sig, &viol) {
            if sig[k] < best_sigma {
                best_sigma = sig[k];
                best = level.point(k);
            }
        }
    }

    let certified_gap = 2.0 * c_norm * level.half_diagonal();
    let mut polish_bound = None;
    if grid.polish_iters > 0 {
        // Central-cut ellipsoid method from the ball around the last certified box, which
        // still holds the minimizer. Infeasible centers cut along the violation gradient,
        // feasible ones along the σ gradient; both functions are convex. At a feasible
        // center σ exceeds the minimum by at most √(gᵀPg).
        let lo = Vector::from_column_slice(&level.lo);
        let span =
            Vector::from_iterator(n, level.step.iter().map(|h| h * (level.n_pts - 1) as f64));
        let mut c = &lo + &span * 0.5;
        let r = 0.5 * span.norm();
        let mut shape = DMatrix::<f64>::identity(n, n) * (r * r);
        let nf = n as f64;
        let stop = 1e-12 * (1.0 + best_sigma);
        for _ in 0..grid.polish_iters {
            let v = violation(&c);
            evaluated += 1 + 2 * n;
            let feasible = v <= MEMBERSHIP_TOL;
            let mut sc = f64::INFINITY;
            if feasible {
                sc = sigma(&c);
                if sc < best_sigma {
                    best_sigma = sc;
                    best = c.clone();
                }
            }
            let objective = v <= 0.0;
            let g = if objective {
                gradient(&sigma, &c)
            } else {
                gradient(&violation, &c)
            };
            let gpg = g.dot(&(&shape * &g));
            if !gpg.is_finite() || gpg <= 0.0 {
                break;
            }
            let width = gpg.sqrt();
            if objective {
                let bound = sc - best_sigma + width;
                polish_bound = Some(polish_bound.map_or(bound, |b: f64| b.min(bound)));
                if width <= stop {
                    break;
                }
            } else if v - width > MEMBERSHIP_TOL {
                // The whole ellipsoid is infeasible; rounding has lost the minimizer.
                break;
            }
            let step = &shape * &g / width;
            c -= &step / (nf + 1.0);
            if n == 1 {
                shape *= 0.25;
            } else {
                shape = (&shape - &step * step.transpose() * (2.0 / (nf + 1.0)))
                    * (nf * nf / (nf * nf - 1.0));
                shape = (&shape + shape.transpose()) * 0.5;
            }
        }
    }
    let result = QuasiSupResult {
        sigma_value: best_sigma,
        feasibility_residual: violation(&best),
        z: best,
        status: Status::Unique,
        optimality_gap_estimate: certified_gap,
        witnesses: Vec::new(),
        iterations: evaluated,
        path: SolvePath::Grid,
    };
    Ok(OracleResult {
        result,
        grid_step: base_step,
        final_step: level.max_step(),
        levels,
        polish_bound,
    })
}
