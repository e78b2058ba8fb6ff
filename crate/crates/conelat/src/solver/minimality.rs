//! Minimality of an upper bound.
//!
//! `z` is a minimal upper bound of `{x, y}` exactly when
//! `D = {d ∈ C : z − x − d ∈ C, z − y − d ∈ C}` is `{0}`. `D` is compact for proper
//! cones, so it is probed by projecting far-away points `c·u` onto it for a panel of
//! directions `u`; any projection of visible length is a witness against minimality.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::splitting::{consensus_dr, Block, DrSettings};
use crate::error::{Error, Result};
use crate::spaces::{basis, OrderedSpace};
use crate::Vector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MinimalityOptions {
    /// Order slack accepted for `x ≤ z`, `y ≤ z` and for witnesses.
    pub tol: f64,
    /// Random probe directions on top of the `2n` signed coordinate directions and the
    /// direction from the pair's midpoint to `z`.
    pub n_dirs: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Splitting tolerance per probe; probes are shrunk to exact feasibility afterwards,
    /// so this only needs to resolve lengths well below the witness floor.
    pub tol_primal: f64,
}

impl Default for MinimalityOptions {
    fn default() -> Self {
        MinimalityOptions {
            tol: 1e-6,
            n_dirs: 16,
            seed: 0,
            max_iter: 5_000,
            tol_primal: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// A nonzero `d ∈ D`, so that `z − d` is a smaller upper bound.
    pub witness: Option<Vec<f64>>,
    /// Largest probe length seen; zero up to solver accuracy when minimal.
    pub max_extent: f64,
    pub directions_tested: usize,
}

/// Largest `s·d`, `s ∈ [0, 1]`, with violation at most `tol`, by bisection on `s`.
fn shrink_into(d: &Vector, tol: f64, violation: impl Fn(&Vector) -> Result<f64>) -> Result<Vector> {
    if violation(d)? <= tol {
        return Ok(d.clone());
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if violation(&(d * mid))? <= tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(d * lo)
}

/// Whether `z` is a minimal upper bound of `x` and `y`, with default probing options.
pub fn is_minimal_upper_bound(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    tol: f64,
) -> Result<bool> {
    let opts = MinimalityOptions {
        tol,
        ..Default::default()
    };
    Ok(minimality_check(space, x, y, z, &opts)?.minimal)
}

/// Probes `D` along `±eᵢ` and `n_dirs` random directions, stopping at the first witness.
pub fn minimality_check(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    opts: &MinimalityOptions,
) -> Result<MinimalityReport> {
    space.check(x)?;
    space.check(y)?;
    space.check(z)?;
    if !(opts.tol > 0.0) || !(opts.tol_primal > 0.0) || opts.max_iter == 0 {
        return Err(Error::InvalidArgument(
            "minimality tolerances and iteration cap must be positive".into(),
        ));
    }
    let v = space.leq_violation(x, z)?.max(space.leq_violation(y, z)?);
    if v > opts.tol {
        return Err(Error::NotUpperBound(v));
    }
    let cone = space.cone();
    let n = space.dim();
    let a = z - x;
    let b = z - y;
    let zero = Vector::zeros(n);
    let reach = 4.0 * (1.0 + a.norm() + b.norm());
    // Relaxing curved cones by `tol` thickens D to width about √tol along boundary rays,
    // so witnesses must be an order of magnitude longer than that.
    let floor = 10.0 * opts.tol.sqrt() * (1.0 + z.norm());

    let mut dirs: Vec<Vector> = Vec::with_capacity(2 * n + opts.n_dirs + 1);
    // From z down toward the pair first: smaller upper bounds usually lie that way.
    let mid = (&a + &b) * 0.5;
    if mid.norm() > 0.0 {
        dirs.push(&mid / mid.norm());
    }
    for i in 0..n {
        dirs.push(basis(n, i));
        dirs.push(-basis(n, i));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.n_dirs {
        let mut u = Vector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
        let nu = u.norm();
        if nu > 0.0 {
            u /= nu;
            dirs.push(u);
        }
    }

    let settings = DrSettings {
        tol_primal: opts.tol_primal,
        tol_obj: opts.tol_primal,
        max_iter: opts.max_iter,
    };
    let mut max_extent = 0.0f64;
    for (k, u) in dirs.iter().enumerate() {
        let target = u * reach;
        let blocks = [
            Block::Quadratic { target: &target },
            Block::Above { base: &zero, cone },
            Block::Below { top: &a, cone },
            Block::Below { top: &b, cone },
        ];
        let out = consensus_dr(&blocks, &zero, settings, |d| {
            0.5 * d.norm_squared() - target.dot(d)
        })?;
        // D is convex and holds 0, so shrinking the probe toward 0 makes it exactly feasible.
        let d = shrink_into(&out.z, opts.tol, |d| {
            Ok(cone
                .violation(d)?
                .max(cone.violation(&(&a - d))?)
                .max(cone.violation(&(&b - d))?))
        })?;
        let len = d.norm();
        max_extent = max_extent.max(len);
        if len > floor {
            return Ok(MinimalityReport {
                minimal: false,
                witness: Some(d.as_slice().to_vec()),
                max_extent,
                directions_tested: k + 1,
            });
        }
    }
    Ok(MinimalityReport {
        minimal: true,
        witness: None,
        max_extent,
        directions_tested: dirs.len(),
    })
}
