//! Reproduction of the worked examples and a conformance run over every module.
//!
//! Each registered case recomputes its expected values from closed-form expressions and
//! records one [`Deviation`] per check. Property suites run alongside under a seed and
//! are reported separately from the worked examples.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{self, TransferVerdict};
use crate::order_metrics::{normality_check, OrderSample, PropertyFlavor, PropertyKind, Verdict};
use crate::quasilattice::{identity_sweep, IdentityOptions};
use crate::solver::{
    brute_force_quasi_sup, closed_form_quasi_sup, lorentz_quasi_abs, minimality_check, quasi_sup,
    quasi_sup_splitting, sigma, GridSpec, MinimalityOptions, SolverOptions, Status,
};
use crate::spaces::{basis, Cone, NormSpec, OrderedSpace, DEFAULT_POLY_GRID};
use crate::{sampling, vector, Vector};

/// Default tolerance for closed-form cases.
pub const CASE_TOL: f64 = 1e-6;
/// Tolerance for cases that go through splitting.
pub const SPLITTING_CASE_TOL: f64 = 1e-4;
/// Slack on order relations that hold with equality on the cone boundary.
const ORDER_TOL: f64 = 1e-9;

/// One measured check: pass iff `deviation ≤ tol`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub check: String,
    pub deviation: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case_id: String,
    /// Worked example with values fixed in advance, as opposed to a sampled suite.
    pub reference: bool,
    pub pass: bool,
    pub deviations: Vec<Deviation>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub seed: u64,
    /// True iff every reference case passes; suites do not affect it.
    pub pass: bool,
    pub suites_pass: bool,
    pub cases: Vec<CaseReport>,
    pub runtime_ms: u64,
}

impl ConformanceReport {
    /// Zeroes all timings so reports compare byte for byte.
    pub fn without_timings(mut self) -> Self {
        self.runtime_ms = 0;
        for c in &mut self.cases {
            c.runtime_ms = 0;
        }
        self
    }
}

#[derive(Default)]
struct Checks(Vec<Deviation>);

impl Checks {
    fn push(&mut self, check: impl Into<String>, deviation: f64, tol: f64) {
        // NaN deviations fail.
        let pass = deviation <= tol;
        self.0.push(Deviation {
            check: check.into(),
            deviation,
            tol,
            pass,
        });
    }

    /// Largest coordinate difference.
    fn close(&mut self, check: impl Into<String>, got: &Vector, want: &Vector, tol: f64) {
        let d = if got.len() == want.len() {
            (got - want).amax()
        } else {
            f64::INFINITY
        };
        self.push(check, d, tol);
    }

    fn scalar(&mut self, check: impl Into<String>, got: f64, want: f64, tol: f64) {
        self.push(check, (got - want).abs(), tol);
    }

    fn holds(&mut self, check: impl Into<String>, cond: bool) {
        self.push(check, if cond { 0.0 } else { 1.0 }, 0.0);
    }

    /// Passes iff `value ≤ limit`.
    fn at_most(&mut self, check: impl Into<String>, value: f64, limit: f64) {
        self.push(check, value, limit);
    }

    /// Passes iff `value > limit`; the recorded deviation is the shortfall.
    fn above(&mut self, check: impl Into<String>, value: f64, limit: f64) {
        let d = if value > limit {
            0.0
        } else {
            limit - value + f64::MIN_POSITIVE
        };
        self.push(check, d, 0.0);
    }

    fn status(&mut self, check: impl Into<String>, got: Status, want: Status) {
        self.holds(format!("{}: {:?}", check.into(), got), got == want);
    }
}

/// A registered worked example.
#[derive(Debug, Clone, Copy)]
pub struct ExampleCase {
    pub id: &'static str,
    pub description: &'static str,
    pub tolerance: f64,
    run: fn(u64, &mut Checks) -> Result<()>,
}

/// All registered worked examples, in run order.
pub fn registry() -> Vec<ExampleCase> {
    vec![
        ExampleCase {
            id: "ex-5.6",
            description: "ℓ∞ orthant in ℝ³: flat distance-sum minimum over (1, 0, t)",
            tolerance: CASE_TOL,
            run: ex_5_6,
        },
        ExampleCase {
            id: "ex-5.7",
            description: "ℓ∞ with the cone on rays (±1, ±1, 1): flat minimum σ = 2 on (1, t, 1)",
            tolerance: CASE_TOL,
            run: ex_5_7,
        },
        ExampleCase {
            id: "ex-5.10",
            description: "Lorentz ℝ³: 0 ∨̃ (0, 0, 2) = (1, 0, 1), incomparable minimal upper bounds",
            tolerance: CASE_TOL,
            run: ex_5_10,
        },
        ExampleCase {
            id: "ex-5.11",
            description: "half Lorentz ℝ³: four quasi-suprema and non-associativity",
            tolerance: SPLITTING_CASE_TOL,
            run: ex_5_11,
        },
        ExampleCase {
            id: "ex-5.13",
            description: "quadratics nonnegative on [0, 1]: a quasi-supremum that is not minimal",
            tolerance: SPLITTING_CASE_TOL,
            run: ex_5_13,
        },
        ExampleCase {
            id: "ex-6.7",
            description: "weighted cone truncated to ℝ¹⁶⁰²: no normality constant",
            tolerance: CASE_TOL,
            run: ex_6_7,
        },
        ExampleCase {
            id: "prop-7.7",
            description: "Lorentz ℝ³: a one-parameter family of minimal upper bounds of {0, 2e}",
            tolerance: CASE_TOL,
            run: prop_7_7,
        },
    ]
}

pub fn find_case(id: &str) -> Result<ExampleCase> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

fn finish(case_id: &str, reference: bool, started: Instant, checks: Checks) -> CaseReport {
    CaseReport {
        case_id: case_id.to_string(),
        reference,
        pass: !checks.0.is_empty() && checks.0.iter().all(|d| d.pass),
        deviations: checks.0,
        runtime_ms: started.elapsed().as_millis() as u64,
    }
}

/// Runs one worked example. Library errors inside the case count as failed checks.
pub fn run_example(id: &str, seed: u64) -> Result<CaseReport> {
    let case = find_case(id)?;
    Ok(run_case(&case, seed))
}

fn run_case(case: &ExampleCase, seed: u64) -> CaseReport {
    let started = Instant::now();
    let mut checks = Checks::default();
    if let Err(e) = (case.run)(seed, &mut checks) {
        checks.push(format!("error: {e}"), f64::INFINITY, 0.0);
    }
    finish(case.id, true, started, checks)
}

/// Runs the named worked examples only; an empty list gives an empty, passing report.
pub fn run_cases(ids: &[&str], seed: u64) -> Result<ConformanceReport> {
    let started = Instant::now();
    let cases = ids
        .iter()
        .map(|id| run_example(id, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(seed, cases, started))
}

/// Every worked example followed by the property suites.
pub fn run_all(seed: u64) -> ConformanceReport {
    let started = Instant::now();
    let mut cases: Vec<CaseReport> = registry().iter().map(|c| run_case(c, seed)).collect();
    for (id, suite) in suites() {
        let t = Instant::now();
        let mut checks = Checks::default();
        if let Err(e) = suite(seed, &mut checks) {
            checks.push(format!("error: {e}"), f64::INFINITY, 0.0);
        }
        cases.push(finish(id, false, t, checks));
    }
    assemble(seed, cases, started)
}

fn assemble(seed: u64, cases: Vec<CaseReport>, started: Instant) -> ConformanceReport {
    ConformanceReport {
        seed,
        pass: cases.iter().filter(|c| c.reference).all(|c| c.pass),
        suites_pass: cases.iter().filter(|c| !c.reference).all(|c| c.pass),
        cases,
        runtime_ms: started.elapsed().as_millis() as u64,
    }
}

type Suite = fn(u64, &mut Checks) -> Result<()>;

fn suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("suite:identities", suite_identities),
        ("suite:abs-norm-preserved", suite_abs_norm),
        ("suite:oracle", suite_oracle),
        ("suite:abs-monotone-operators", suite_abs_monotone),
        ("suite:positively-attained", suite_attained),
    ]
}

fn solver_opts(seed: u64) -> SolverOptions {
    SolverOptions::default().with_seed(seed)
}

fn lorentz3() -> OrderedSpace {
    OrderedSpace::lorentz(3).expect("dimension 3 is valid")
}

/// `{x₀ ≥ (x₁² + x₂²)^½, x₁ ≥ 0}` with the Euclidean norm.
pub fn half_lorentz3() -> Result<OrderedSpace> {
    Ok(OrderedSpace::new(
        Cone::half_lorentz(basis(3, 0), basis(3, 1))?,
        NormSpec::l2(),
    ))
}

/// Quadratics `(a, b, c) ↦ at² + bt + c` nonnegative on `[0, 1]`, Euclidean coefficients.
pub fn poly_space() -> Result<OrderedSpace> {
    Ok(OrderedSpace::new(
        Cone::poly_nonneg(DEFAULT_POLY_GRID)?,
        NormSpec::l2(),
    ))
}

/// `ℓ∞` on ℝ³ with the cone generated by `(±1, ±1, 1)`.
pub fn four_ray_space() -> Result<OrderedSpace> {
    let rays = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .map(|&(a, b)| vector(&[a, b, 1.0]))
        .collect();
    Ok(OrderedSpace::new(
        Cone::polyhedral_from_generators(rays)?,
        NormSpec::linf(),
    ))
}

/// Truncation of the cone `{x₁ ≥ (Σ_{m≥2} x_m²/m)^½}` to the first `dim` coordinates.
pub fn weighted_truncation(dim: usize) -> Result<OrderedSpace> {
    let w = Vector::from_fn(dim - 1, |i, _| 1.0 / (i as f64 + 2.0));
    Ok(OrderedSpace::new(
        Cone::weighted_lorentz(w)?,
        NormSpec::l2(),
    ))
}

/// Default truncation dimension of the weighted example.
pub const WEIGHTED_DIM: usize = 1602;

/// The pair `0 ≤ x ≤ y = 2e₁` with `x = e₁ + √m·e_m`, `m = ⌈(2α)²⌉ + 1` (1-based), so
/// `‖x‖/‖y‖ = √(1+m)/2 > α` while both relations hold with equality on the boundary.
pub fn weighted_witness(alpha: f64, dim: usize) -> Result<(Vector, Vector)> {
    let m = (2.0 * alpha).powi(2).ceil() as usize + 1;
    if m > dim {
        return Err(Error::InvalidArgument(format!(
            "α = {alpha} needs dimension at least {m}"
        )));
    }
    let mut x = Vector::zeros(dim);
    x[0] = 1.0;
    x[m - 1] = (m as f64).sqrt();
    Ok((x, basis(dim, 0) * 2.0))
}

fn check_flat(
    checks: &mut Checks,
    space: &OrderedSpace,
    x: &Vector,
    y: &Vector,
    seed: u64,
) -> Result<()> {
    let r = quasi_sup(space, x, y, &solver_opts(seed))?;
    checks.status("status", r.status, Status::FlatMinimum);
    checks.holds(
        format!("at least two witnesses ({})", r.witnesses.len()),
        r.witnesses.len() >= 2,
    );
    for (i, w) in r.witnesses.iter().enumerate() {
        checks.scalar(
            format!("witness {i} σ"),
            sigma(x, y, w, space.norm_spec())?,
            2.0,
            CASE_TOL,
        );
        let v = space.leq_violation(x, w)?.max(space.leq_violation(y, w)?);
        checks.at_most(format!("witness {i} upper bound"), v, CASE_TOL);
    }
    Ok(())
}

fn ex_5_6(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = OrderedSpace::standard(3, NormSpec::linf())?;
    let x = vector(&[1.0, -1.0, 0.0]);
    let y = Vector::zeros(3);
    check_flat(checks, &space, &x, &y, seed)?;
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let z = vector(&[1.0, 0.0, t]);
        checks.scalar(
            format!("σ(1, 0, {t})"),
            sigma(&x, &y, &z, space.norm_spec())?,
            2.0,
            CASE_TOL,
        );
        checks.holds(
            format!("(1, 0, {t}) upper bound"),
            space.leq(&x, &z, 0.0)? && space.leq(&y, &z, 0.0)?,
        );
    }
    Ok(())
}

fn ex_5_7(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = four_ray_space()?;
    let x = Vector::zeros(3);
    let y = vector(&[2.0, 0.0, 0.0]);
    check_flat(checks, &space, &x, &y, seed)?;
    for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let z = vector(&[1.0, t, 1.0]);
        checks.scalar(
            format!("σ(1, {t}, 1)"),
            sigma(&x, &y, &z, space.norm_spec())?,
            2.0,
            CASE_TOL,
        );
        let v = space
            .leq_violation(&x, &z)?
            .max(space.leq_violation(&y, &z)?);
        checks.at_most(format!("(1, {t}, 1) upper bound"), v, ORDER_TOL);
    }
    Ok(())
}

fn ex_5_10(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = lorentz3();
    let x = Vector::zeros(3);
    let y = vector(&[0.0, 0.0, 2.0]);
    let want = vector(&[1.0, 0.0, 1.0]);
    let closed =
        closed_form_quasi_sup(&space, &x, &y)?.ok_or(Error::Unsupported("closed form".into()))?;
    checks.close("closed form", &closed.z, &want, CASE_TOL);
    checks.status("closed form status", closed.status, Status::Unique);
    let split = quasi_sup_splitting(&space, &x, &y, &solver_opts(seed))?;
    checks.close("splitting", &split.z, &want, CASE_TOL);
    checks.status("splitting status", split.status, Status::Unique);
    for t in [0.5, 1.0, 2.0] {
        for s in [1.0, -1.0] {
            let z = vector(&[(t * t + 1.0f64).sqrt(), s * t, 1.0]);
            let above = space.leq(&x, &z, ORDER_TOL)? && space.leq(&y, &z, ORDER_TOL)?;
            checks.holds(
                format!("(√(t²+1), {}, 1), t = {t}: upper bound", s * t),
                above,
            );
            let comparable = space.leq(&want, &z, ORDER_TOL)? || space.leq(&z, &want, ORDER_TOL)?;
            checks.holds(
                format!("(√(t²+1), {}, 1), t = {t}: incomparable", s * t),
                !comparable,
            );
        }
    }
    Ok(())
}

/// `(−29 − 8√2 + 9√3 + 12√6)/23`.
pub fn kappa() -> f64 {
    (-29.0 - 8.0 * 2f64.sqrt() + 9.0 * 3f64.sqrt() + 12.0 * 6f64.sqrt()) / 23.0
}

fn ex_5_11(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = half_lorentz3()?;
    let opts = solver_opts(seed);
    let sup = |p: &Vector, q: &Vector| -> Result<Vector> {
        let r = quasi_sup(&space, p, q, &opts)?;
        match r.status {
            Status::Unique => Ok(r.z),
            s => Err(Error::Unresolved(s)),
        }
    };
    let a = Vector::zeros(3);
    let b = vector(&[0.0, -1.0, 1.0]);
    let c = vector(&[0.0, -1.0, -1.0]);
    let s3 = 3f64.sqrt();
    let k = kappa();
    let ab = sup(&a, &b)?;
    checks.close(
        "a ∨̃ b",
        &ab,
        &vector(&[2.0 * (2.0 - s3).sqrt(), 0.0, s3 - 1.0]),
        SPLITTING_CASE_TOL,
    );
    let bc = sup(&b, &c)?;
    checks.close("b ∨̃ c", &bc, &vector(&[1.0, -1.0, 0.0]), SPLITTING_CASE_TOL);
    let a_bc = sup(&a, &bc)?;
    checks.close(
        "a ∨̃ (b ∨̃ c)",
        &a_bc,
        &vector(&[2.0, 0.0, 0.0]),
        SPLITTING_CASE_TOL,
    );
    let ab_c = sup(&ab, &c)?;
    checks.close(
        "(a ∨̃ b) ∨̃ c",
        &ab_c,
        &vector(&[(1.0 + (1.0 + k).powi(2)).sqrt(), 0.0, k]),
        SPLITTING_CASE_TOL,
    );
    checks.above(
        "non-associativity margin > 0.1",
        (&a_bc - &ab_c).norm(),
        0.1,
    );
    // The second coordinate of a quasi-supremum is the larger of the two.
    checks.scalar(
        "(a ∨̃ b)₂ = max(a₂, b₂)",
        ab[1],
        a[1].max(b[1]),
        SPLITTING_CASE_TOL,
    );
    Ok(())
}

fn ex_5_13(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = poly_space()?;
    let x = vector(&[0.0, 1.0, 0.0]);
    let y = vector(&[0.0, -1.0, 1.0]);
    let q = 0.5 * (2.0 - 3f64.sqrt());
    let want = vector(&[q, -q, 1.0]);
    let r = quasi_sup(&space, &x, &y, &solver_opts(seed))?;
    checks.status("status", r.status, Status::Unique);
    checks.close("x ∨̃ y", &r.z, &want, SPLITTING_CASE_TOL);
    let m = minimality_check(
        &space,
        &x,
        &y,
        &r.z,
        &MinimalityOptions {
            seed,
            ..Default::default()
        },
    )?;
    checks.holds("x ∨̃ y is not a minimal upper bound", !m.minimal);
    if let Some(w) = &m.witness {
        let w = vector(w);
        let below = &r.z - &w;
        let v = space
            .leq_violation(&x, &below)?
            .max(space.leq_violation(&y, &below)?);
        checks.at_most("reported witness stays above x and y", v, CASE_TOL);
    }
    let w = vector(&[1.0, -1.0, 1.0]);
    let v = space
        .leq_violation(&x, &w)?
        .max(space.leq_violation(&y, &w)?);
    checks.at_most("(1, −1, 1) is an upper bound", v, ORDER_TOL);
    checks.at_most(
        "(1, −1, 1) ≤ x ∨̃ y",
        space.leq_violation(&w, &r.z)?,
        SPLITTING_CASE_TOL,
    );
    checks.above("(1, −1, 1) ≠ x ∨̃ y", (&r.z - &w).norm(), 0.1);
    let (lo, hi) = (vector(&[0.0, -1.0, 1.0]), vector(&[0.0, 0.0, 1.0]));
    checks.holds(
        "0 ≤ (0, −1, 1) ≤ (0, 0, 1)",
        space.leq(&Vector::zeros(3), &lo, 0.0)? && space.leq(&lo, &hi, 0.0)?,
    );
    checks.scalar("‖(0, −1, 1)‖ = √2", space.norm(&lo), 2f64.sqrt(), 1e-12);
    checks.above(
        "‖(0, −1, 1)‖ > ‖(0, 0, 1)‖",
        space.norm(&lo),
        space.norm(&hi),
    );
    Ok(())
}

/// Random pairs solved in the truncated weighted space.
const WEIGHTED_PAIRS: u64 = 3;

fn ex_6_7(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = weighted_truncation(WEIGHTED_DIM)?;
    let zero = Vector::zeros(WEIGHTED_DIM);
    for alpha in [1.0, 2.0, 4.0, 8.0] {
        let (x, y) = weighted_witness(alpha, WEIGHTED_DIM)?;
        let order = space
            .leq_violation(&zero, &x)?
            .max(space.leq_violation(&x, &y)?);
        checks.at_most(format!("α = {alpha}: 0 ≤ x ≤ y"), order, ORDER_TOL);
        checks.above(
            format!("α = {alpha}: ‖x‖/‖y‖ > α"),
            space.norm(&x) / space.norm(&y),
            alpha,
        );
        let sample = [OrderSample { z: None, x, y }];
        let r = normality_check(
            &space,
            PropertyFlavor::new(PropertyKind::Normal, alpha)?,
            &sample,
            ORDER_TOL,
        )?;
        checks.holds(
            format!("α = {alpha}: normality counterexample"),
            r.verdict == Verdict::CounterexampleFound,
        );
    }
    // One restart suffices: the norm is strictly convex, so the minimizer is unique.
    let opts = solver_opts(seed).with_restarts(1);
    for k in 0..WEIGHTED_PAIRS {
        let mut rng = sampling::stream(seed, k);
        let x = sampling::gaussian(&mut rng, WEIGHTED_DIM);
        let y = sampling::gaussian(&mut rng, WEIGHTED_DIM);
        let r = quasi_sup(&space, &x, &y, &opts)?;
        checks.status(format!("random pair {k} status"), r.status, Status::Unique);
        let v = space
            .leq_violation(&x, &r.z)?
            .max(space.leq_violation(&y, &r.z)?);
        checks.at_most(format!("random pair {k} upper bound"), v, CASE_TOL);
    }
    Ok(())
}

/// `z_t = √(t²+1)·v + e + t·f` for the axis `v = e₁` and `e = e₂`, `f = e₃`.
pub fn hyperbola_point(t: f64) -> Vector {
    vector(&[(t * t + 1.0).sqrt(), 1.0, t])
}

fn prop_7_7(seed: u64, checks: &mut Checks) -> Result<()> {
    let space = lorentz3();
    let x = Vector::zeros(3);
    let y = basis(3, 1) * 2.0;
    let ts = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let opts = MinimalityOptions {
        seed,
        ..Default::default()
    };
    for t in ts {
        let z = hyperbola_point(t);
        let m = minimality_check(&space, &x, &y, &z, &opts)?;
        checks.holds(format!("z({t}) is a minimal upper bound"), m.minimal);
    }
    let mut closest = f64::INFINITY;
    for (i, s) in ts.iter().enumerate() {
        for t in &ts[i + 1..] {
            closest = closest.min((hyperbola_point(*s) - hyperbola_point(*t)).norm());
        }
    }
    checks.above("pairwise separation > 0.1", closest, 0.1);
    Ok(())
}

/// Triples per family in the identity suite.
pub const IDENTITY_TRIPLES: usize = 100;

/// The families the identity suite covers.
pub fn identity_families() -> Result<Vec<(String, OrderedSpace)>> {
    let mut v = vec![(
        "standard-3".to_string(),
        OrderedSpace::standard(3, NormSpec::l2())?,
    )];
    for n in [2, 3, 5, 8] {
        v.push((format!("lorentz-{n}"), OrderedSpace::lorentz(n)?));
    }
    v.push(("half-lorentz-3".to_string(), half_lorentz3()?));
    Ok(v)
}

fn suite_identities(seed: u64, checks: &mut Checks) -> Result<()> {
    let opts = IdentityOptions {
        solver: solver_opts(seed),
        ..Default::default()
    };
    for (name, space) in identity_families()? {
        let r = identity_sweep(&space, IDENTITY_TRIPLES, seed, &opts)?;
        for rec in &r.identities {
            checks.at_most(format!("{name}: {}", rec.name), rec.max_violation, opts.tol);
        }
        checks.holds(
            format!("{name}: {} applicable triples", r.applicable),
            r.applicable > 0,
        );
    }
    Ok(())
}

fn suite_abs_norm(seed: u64, checks: &mut Checks) -> Result<()> {
    for n in 2..=8 {
        let axis = basis(n, 0);
        let mut worst = 0.0f64;
        for k in 0..200 {
            let mut rng = sampling::stream(seed, k);
            let x = sampling::gaussian(&mut rng, n);
            worst = worst.max((lorentz_quasi_abs(&axis, &x).norm() - x.norm()).abs());
        }
        checks.at_most(format!("lorentz-{n}: |‖⌈x⌉‖ − ‖x‖|"), worst, 1e-9);
    }
    Ok(())
}

/// Registered ℝ³ pairs with a unique quasi-supremum, compared against the grid oracle.
fn oracle_pairs() -> Result<Vec<(&'static str, OrderedSpace, Vector, Vector)>> {
    Ok(vec![
        (
            "lorentz (0,0,0) (0,0,2)",
            lorentz3(),
            Vector::zeros(3),
            vector(&[0.0, 0.0, 2.0]),
        ),
        (
            "half-lorentz a b",
            half_lorentz3()?,
            Vector::zeros(3),
            vector(&[0.0, -1.0, 1.0]),
        ),
        (
            "half-lorentz b c",
            half_lorentz3()?,
            vector(&[0.0, -1.0, 1.0]),
            vector(&[0.0, -1.0, -1.0]),
        ),
        (
            "polynomial x y",
            poly_space()?,
            vector(&[0.0, 1.0, 0.0]),
            vector(&[0.0, -1.0, 1.0]),
        ),
    ])
}

fn suite_oracle(seed: u64, checks: &mut Checks) -> Result<()> {
    for (name, space, x, y) in oracle_pairs()? {
        let r = quasi_sup(&space, &x, &y, &solver_opts(seed))?;
        let o = brute_force_quasi_sup(&space, &x, &y, &GridSpec::default())?;
        checks.at_most(
            format!("{name}: position"),
            (&r.z - &o.result.z).norm(),
            2.0 * o.grid_step,
        );
        checks.at_most(
            format!("{name}: σ"),
            (r.sigma_value - o.result.sigma_value).abs(),
            1e-4,
        );
    }
    Ok(())
}

fn suite_abs_monotone(seed: u64, checks: &mut Checks) -> Result<()> {
    let s = lorentz3();
    let r = operators::absolute_monotonicity_experiment(&s, &s, 1000, seed)?;
    checks.holds(
        "lorentz-3: not vacuous",
        r.verdict != TransferVerdict::Vacuous,
    );
    checks.at_most(
        "lorentz-3: max ‖T‖/‖S‖",
        r.max_ratio,
        1.0 + operators::TRANSFER_TOL,
    );
    Ok(())
}

fn suite_attained(seed: u64, checks: &mut Checks) -> Result<()> {
    for n in [3, 5] {
        let s = OrderedSpace::lorentz(n)?;
        let mut worst = 0.0f64;
        for k in 0..100 {
            let mut rng = sampling::stream(seed, k);
            let t = operators::random_positive_operator(&s, &s, &mut rng)?;
            worst = worst
                .max(operators::positively_attained_check(&t, 1e-4, seed)?.positively_attained_gap);
        }
        checks.at_most(format!("lorentz-{n}: ‖T‖ − ‖T‖₊"), worst, 1e-4);
    }
    Ok(())
}
