//! The algebra derived from the quasi-supremum.
//!
//! `x ∧̃ y = −((−x) ∨̃ (−y))`, `⌈x⌉ = (−x) ∨̃ x`, `x⁺ = 0 ∨̃ x` and `x⁻ = 0 ∨̃ (−x)`.
//! Every operation here needs a unique quasi-supremum and fails with
//! [`Error::Unresolved`] otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{lorentz_quasi_abs, quasi_sup, SolverOptions, Status};
use crate::spaces::{Cone, OrderedSpace};
use crate::{sampling, Vector};

/// `x ∨̃ y` when it is unique.
pub fn quasi_sup_unique(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    opts: &SolverOptions,
) -> Result<Vector> {
    let r = quasi_sup(space, x, y, opts)?;
    match r.status {
        Status::Unique => Ok(r.z),
        s => Err(Error::Unresolved(s)),
    }
}

/// `x ∧̃ y = −((−x) ∨̃ (−y))`.
pub fn quasi_inf(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    opts: &SolverOptions,
) -> Result<Vector> {
    Ok(-quasi_sup_unique(space, &(-x), &(-y), opts)?)
}

/// `⌈x⌉ = (−x) ∨̃ x`.
pub fn quasi_abs(space: &OrderedSpace, x: &Vector, opts: &SolverOptions) -> Result<Vector> {
    space.check(x)?;
    if let Cone::Lorentz { axis } = space.cone() {
        if space.norm_spec().is_euclidean() {
            return Ok(lorentz_quasi_abs(axis, x));
        }
    }
    quasi_sup_unique(space, &(-x), x, opts)
}

/// `x⁺ = 0 ∨̃ x`.
pub fn pos_part(space: &OrderedSpace, x: &Vector, opts: &SolverOptions) -> Result<Vector> {
    quasi_sup_unique(space, &Vector::zeros(x.len()), x, opts)
}

/// `x⁻ = 0 ∨̃ (−x)`.
pub fn neg_part(space: &OrderedSpace, x: &Vector, opts: &SolverOptions) -> Result<Vector> {
    quasi_sup_unique(space, &Vector::zeros(x.len()), &(-x), opts)
}

/// `x = pos − neg` with both parts positive.
#[derive(Debug, Clone, PartialEq)]
pub struct AndoDecomposition {
    pub pos: Vector,
    pub neg: Vector,
    /// `max(‖x⁺‖, ‖x⁻‖) / ‖x‖`, zero for `x = 0`.
    pub ratio: f64,
}

/// The decomposition `x ↦ (x⁺, x⁻)`, continuous and positively homogeneous.
pub fn ando_decompose(
    space: &OrderedSpace,
    x: &Vector,
    opts: &SolverOptions,
) -> Result<AndoDecomposition> {
    space.check(x)?;
    let nx = space.norm(x);
    if nx == 0.0 {
        let zero = Vector::zeros(x.len());
        return Ok(AndoDecomposition {
            pos: zero.clone(),
            neg: zero,
            ratio: 0.0,
        });
    }
    let pos = pos_part(space, x, opts)?;
    let neg = neg_part(space, x, opts)?;
    let ratio = space.norm(&pos).max(space.norm(&neg)) / nx;
    Ok(AndoDecomposition { pos, neg, ratio })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    /// Largest norm defect for equalities, largest cone violation for order inequalities.
    pub max_violation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identities: Vec<IdentityRecord>,
    /// True iff every record passed on every applicable triple.
    pub pass: bool,
    /// Triples on which every needed quasi-supremum was unique.
    pub applicable: usize,
    /// Triples skipped because some quasi-supremum was flat, infeasible or stalled.
    pub inapplicable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdentityOptions {
    pub tol: f64,
    pub solver: SolverOptions,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            tol: 1e-6,
            solver: SolverOptions::default(),
        }
    }
}

/// Names of the checked identities, in report order.
pub const IDENTITY_NAMES: [&str; 13] = [
    "idempotence",
    "positive-homogeneity",
    "negative-scaling",
    "translation",
    "parts-positive",
    "abs-positive-homogeneous-even",
    "jordan-decomposition",
    "positive-elements",
    "abs-idempotence",
    "sum-and-difference",
    "half-sum-formulas",
    "triangle",
    "reverse-triangle",
];

/// Defects of every identity on one triple; `z` serves as translation and positive element.
fn defects(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    opts: &SolverOptions,
) -> Result<[f64; 13]> {
    let cone = space.cone();
    let n = x.len();
    let zero = Vector::zeros(n);
    let d = |a: &Vector, b: &Vector| space.norm(&(a - b));
    let viol = |a: &Vector| cone.violation(a);
    let sup = |a: &Vector, b: &Vector| quasi_sup_unique(space, a, b, opts);
    let inf = |a: &Vector, b: &Vector| quasi_inf(space, a, b, opts);
    let abs = |a: &Vector| quasi_abs(space, a, opts);
    let pos = |a: &Vector| pos_part(space, a, opts);

    let s = sup(x, y)?;
    let i = inf(x, y)?;
    let ax = abs(x)?;
    let ay = abs(y)?;
    let xp = pos(x)?;
    let xm = neg_part(space, x, opts)?;

    let idem = d(&sup(x, x)?, x).max(d(&inf(x, x)?, x));

    let (a, b) = (2.5, -2.0);
    let homog =
        d(&sup(&(x * a), &(y * a))?, &(&s * a)).max(d(&inf(&(x * a), &(y * a))?, &(&i * a)));
    let neg_scale =
        d(&sup(&(x * b), &(y * b))?, &(&i * b)).max(d(&inf(&(x * b), &(y * b))?, &(&s * b)));
    let trans =
        d(&sup(&(x + z), &(y + z))?, &(&s + z)).max(d(&inf(&(x + z), &(y + z))?, &(&i + z)));

    let parts = viol(&xp)?.max(viol(&xm)?).max(d(&xm, &pos(&(-x))?));
    let abs_props = viol(&ax)?
        .max(d(&abs(&(x * b))?, &(&ax * b.abs())))
        .max(d(&abs(&(x * a))?, &(&ax * a)))
        .max(d(&abs(&(-x))?, &ax));
    let jordan = d(x, &(&xp - &xm))
        .max(space.norm(&inf(&xp, &xm)?))
        .max(d(&ax, &(&xp + &xm)));

    let c = cone.project(z)?;
    let positive = space
        .norm(&inf(&c, &zero)?)
        .max(d(&pos(&c)?, &c))
        .max(d(&abs(&c)?, &c));
    let abs_idem = d(&abs(&ax)?, &ax);
    let axy = abs(&(x - y))?;
    let sum_diff = d(&(&s + &i), &(x + y)).max(d(&(&s - &i), &axy));
    let half = d(&s, &((x + y + &axy) * 0.5)).max(d(&i, &((x + y - &axy) * 0.5)));

    let tri = viol(&(&ax + &ay - (x + y)))?.max(viol(&(&ax + &ay + (x + y)))?);
    let lower = [x - &ay, -x - &ay, y - &ax, -y - &ax];
    let mut rev = 0.0f64;
    for top in [abs(&(x + y))?, axy] {
        for w in &lower {
            rev = rev.max(viol(&(&top - w))?);
        }
    }
    Ok([
        idem, homog, neg_scale, trans, parts, abs_props, jordan, positive, abs_idem, sum_diff,
        half, tri, rev,
    ])
}

fn report(worst: [f64; 13], tol: f64, applicable: usize, inapplicable: usize) -> IdentityReport {
    let identities: Vec<IdentityRecord> = IDENTITY_NAMES
        .iter()
        .zip(worst)
        .map(|(name, v)| IdentityRecord {
            name: name.to_string(),
            max_violation: v,
            pass: v <= tol,
        })
        .collect();
    let pass = applicable > 0 && identities.iter().all(|r| r.pass);
    IdentityReport {
        identities,
        pass,
        applicable,
        inapplicable,
    }
}

/// Checks every identity on the triple `(x, y, z)`.
///
/// A non-unique quasi-supremum anywhere marks the triple inapplicable instead of failing.
pub fn identity_suite(
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    opts: &IdentityOptions,
) -> Result<IdentityReport> {
    space.check(x)?;
    space.check(y)?;
    space.check(z)?;
    match defects(space, x, y, z, &opts.solver) {
        Ok(w) => Ok(report(w, opts.tol, 1, 0)),
        Err(Error::Unresolved(_)) => Ok(report([0.0; 13], opts.tol, 0, 1)),
        Err(e) => Err(e),
    }
}

/// Runs [`identity_suite`] on `n_triples` Gaussian triples and keeps the worst defects.
pub fn identity_sweep(
    space: &OrderedSpace,
    n_triples: usize,
    seed: u64,
    opts: &IdentityOptions,
) -> Result<IdentityReport> {
    let mut worst = [0.0f64; 13];
    let (mut applicable, mut inapplicable) = (0, 0);
    for k in 0..n_triples {
        let mut rng = sampling::stream(seed, k as u64);
        let x = sampling::gaussian(&mut rng, space.dim());
        let y = sampling::gaussian(&mut rng, space.dim());
        let z = sampling::gaussian(&mut rng, space.dim());
        match defects(space, &x, &y, &z, &opts.solver) {
            Ok(w) => {
                applicable += 1;
                for (m, v) in worst.iter_mut().zip(w) {
                    *m = m.max(v);
                }
            }
            Err(Error::Unresolved(_)) => inapplicable += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(report(worst, opts.tol, applicable, inapplicable))
}
