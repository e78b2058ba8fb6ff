//! Consensus Douglas–Rachford splitting over a list of proximable blocks.

use crate::error::Result;
use crate::spaces::{Cone, NormSpec};
use crate::Vector;

/// Prox step parameter.
pub(crate) const STEP: f64 = 1.0;
/// Over-relaxation factor.
pub(crate) const RELAXATION: f64 = 1.8;

/// One term of a separable convex objective.
pub(crate) enum Block<'a> {
    /// `weight · ‖z − center‖`.
    Distance {
        center: &'a Vector,
        norm: NormSpec,
        weight: f64,
    },
    /// Indicator of `base + C`.
    Above { base: &'a Vector, cone: &'a Cone },
    /// Indicator of `top − C`.
    Below { top: &'a Vector, cone: &'a Cone },
    /// `½‖z‖² − ⟨target, z⟩`.
    Quadratic { target: &'a Vector },
}

impl Block<'_> {
    fn prox_in_place(&self, w: &mut Vector, gamma: f64) -> Result<()> {
        match self {
            Block::Distance {
                center,
                norm,
                weight,
            } => norm.prox_dist_in_place(w, center, gamma * weight),
            Block::Above { base, cone } => {
                *w -= *base;
                cone.project_in_place(w)?;
                *w += *base;
            }
            Block::Below { top, cone } => {
                // top − P_C(top − w)
                w.neg_mut();
                *w += *top;
                cone.project_in_place(w)?;
                w.neg_mut();
                *w += *top;
            }
            Block::Quadratic { target } => {
                w.axpy(gamma, target, 1.0);
                *w /= 1.0 + gamma;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct DrSettings {
    pub tol_primal: f64,
    pub tol_obj: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct DrOutcome {
    pub z: Vector,
    pub iterations: usize,
    /// Largest distance between a block output and the consensus point.
    pub residual: f64,
    pub objective_change: f64,
    pub converged: bool,
}

/// Minimizes the sum of the blocks starting with every block copy at `start`.
///
/// Stops once every block output is within `tol_primal` of the consensus point and the
/// objective moved by less than `tol_obj`.
pub(crate) fn consensus_dr(
    blocks: &[Block<'_>],
    start: &Vector,
    settings: DrSettings,
    objective: impl Fn(&Vector) -> f64,
) -> Result<DrOutcome> {
    let m = blocks.len();
    let inv_m = 1.0 / m as f64;
    let mut u: Vec<Vector> = vec![start.clone(); m];
    let mut p: Vec<Vector> = vec![start.clone(); m];
    let mut zbar = start.clone();
    let mut prev_obj = objective(&zbar);
    let mut residual = f64::INFINITY;
    let mut change = f64::INFINITY;
    for it in 1..=settings.max_iter {
        zbar.fill(0.0);
        for ui in &u {
            zbar.axpy(inv_m, ui, 1.0);
        }
        residual = 0.0;
        for ((block, pi), ui) in blocks.iter().zip(p.iter_mut()).zip(u.iter_mut()) {
            // pᵢ = prox(2 z̄ − uᵢ)
            pi.copy_from(&zbar);
            *pi *= 2.0;
            *pi -= &*ui;
            block.prox_in_place(pi, STEP)?;
            // uᵢ += λ (pᵢ − z̄)
            let mut d2 = 0.0;
            for ((uk, pk), zk) in ui.iter_mut().zip(pi.iter()).zip(zbar.iter()) {
                let d = pk - zk;
                d2 += d * d;
                *uk += RELAXATION * d;
            }
            residual = f64::max(residual, d2.sqrt());
        }
        let obj = objective(&zbar);
        change = (obj - prev_obj).abs();
        prev_obj = obj;
        if residual < settings.tol_primal && change < settings.tol_obj {
            return Ok(DrOutcome {
                z: zbar,
                iterations: it,
                residual,
                objective_change: change,
                converged: true,
            });
        }
    }
    Ok(DrOutcome {
        z: zbar,
        iterations: settings.max_iter,
        residual,
        objective_change: change,
        converged: false,
    })
}
