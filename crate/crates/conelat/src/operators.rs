//! Linear maps between ordered spaces: positivity, operator and Robinson norms, and
//! sampled order properties of the operator space.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::order_metrics::PropertyKind;
use crate::sampling;
use crate::spaces::{basis, Cone, NormSpec, OrderedSpace, SpaceJson};
use crate::Vector;

/// A dense linear map from `domain` to `codomain`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<f64>,
    domain: OrderedSpace,
    codomain: OrderedSpace,
}

impl OperatorMatrix {
    pub fn new(
        entries: DMatrix<f64>,
        domain: OrderedSpace,
        codomain: OrderedSpace,
    ) -> Result<Self> {
        check_dim(codomain.dim(), entries.nrows())?;
        check_dim(domain.dim(), entries.ncols())?;
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "operator entries must be finite".into(),
            ));
        }
        Ok(OperatorMatrix {
            entries,
            domain,
            codomain,
        })
    }

    /// Builds from rows, each of length `domain.dim()`.
    pub fn from_rows(
        rows: &[Vec<f64>],
        domain: OrderedSpace,
        codomain: OrderedSpace,
    ) -> Result<Self> {
        check_dim(codomain.dim(), rows.len())?;
        for r in rows {
            check_dim(domain.dim(), r.len())?;
        }
        let m = DMatrix::from_fn(rows.len(), domain.dim(), |i, j| rows[i][j]);
        Self::new(m, domain, codomain)
    }

    pub fn identity(space: OrderedSpace) -> Self {
        let n = space.dim();
        OperatorMatrix {
            entries: DMatrix::identity(n, n),
            domain: space.clone(),
            codomain: space,
        }
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn domain(&self) -> &OrderedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &OrderedSpace {
        &self.codomain
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.domain.dim(), x.len())?;
        Ok(&self.entries * x)
    }

    /// Same spaces, entries combined as `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &OperatorMatrix, b: f64) -> Result<OperatorMatrix> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::InvalidArgument(
                "operators act between different spaces".into(),
            ));
        }
        Ok(OperatorMatrix {
            entries: &self.entries * a + &other.entries * b,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorJson {
    entries: Vec<Vec<f64>>,
    domain: SpaceJson,
    codomain: SpaceJson,
}

impl Serialize for OperatorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = (0..self.entries.nrows())
            .map(|i| self.entries.row(i).iter().copied().collect())
            .collect();
        OperatorJson {
            entries: rows,
            domain: (&self.domain).into(),
            codomain: (&self.codomain).into(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = OperatorJson::deserialize(d)?;
        let domain = OrderedSpace::try_from(j.domain).map_err(D::Error::custom)?;
        let codomain = OrderedSpace::try_from(j.codomain).map_err(D::Error::custom)?;
        OperatorMatrix::from_rows(&j.entries, domain, codomain).map_err(D::Error::custom)
    }
}

/// `f ⊗ y : x ↦ f(x)·y`, with norm `‖f‖′‖y‖`.
pub fn rank_one(
    f: &Vector,
    y: &Vector,
    domain: OrderedSpace,
    codomain: OrderedSpace,
) -> Result<OperatorMatrix> {
    check_dim(domain.dim(), f.len())?;
    check_dim(codomain.dim(), y.len())?;
    OperatorMatrix::new(y * f.transpose(), domain, codomain)
}

/// `‖f‖′·‖y‖`, the norm of `f ⊗ y`.
pub fn rank_one_norm(
    f: &Vector,
    y: &Vector,
    domain: &OrderedSpace,
    codomain: &OrderedSpace,
) -> f64 {
    domain.norm_spec().dual().norm(f) * codomain.norm(y)
}

/// True iff the cone is `{0}`: every `±eᵢ` projects to zero exactly when the polar cone
/// is the whole space.
pub fn cone_is_zero(cone: &Cone) -> Result<bool> {
    let n = cone.dim();
    for i in 0..n {
        for s in [1.0, -1.0] {
            if cone.project(&(basis(n, i) * s))?.norm() > 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub positive: bool,
    /// True when every extreme ray was checked; false for sampled curved cones.
    pub exact: bool,
    pub rays_checked: usize,
    /// Largest codomain violation of an image of a unit ray.
    pub worst_violation: f64,
    /// A unit ray whose image leaves the codomain cone.
    pub witness: Option<Vec<f64>>,
}

/// Finitely many rays generating the cone, when known.
fn finite_rays(cone: &Cone) -> Option<Vec<Vector>> {
    match cone {
        Cone::Standard { dim } => Some((0..*dim).map(|i| basis(*dim, i)).collect()),
        Cone::Polyhedral(p) if !p.generators().is_empty() => Some(p.generators().to_vec()),
        Cone::PolyNonneg(p) => Some(p.rays().generators().to_vec()),
        _ => None,
    }
}

/// Maps an arbitrary vector to an extreme ray of a curved cone, if the family has a
/// parametrization of its extreme rays.
fn curved_ray(cone: &Cone, u: &Vector) -> Option<Vector> {
    match cone {
        Cone::Lorentz { axis } | Cone::HalfLorentz { axis, .. } => {
            let mut w = u - axis * axis.dot(u);
            if let Cone::HalfLorentz { half, .. } = cone {
                let s = half.dot(&w);
                if s < 0.0 {
                    w.axpy(-s, half, 1.0);
                }
            }
            let n = w.norm();
            (n > 1e-12).then(|| axis + w / n)
        }
        Cone::WeightedLorentz { weights } => {
            let r = u.rows(1, u.len() - 1);
            let wr = r
                .iter()
                .zip(weights.iter())
                .map(|(v, w)| w * v * v)
                .sum::<f64>()
                .sqrt();
            if wr <= 1e-12 {
                return None;
            }
            let mut out = Vector::zeros(u.len());
            out[0] = 1.0;
            for (o, v) in out.iter_mut().skip(1).zip(r.iter()) {
                *o = v / wr;
            }
            Some(out)
        }
        _ => None,
    }
}

const REFINE_ITERS: usize = 50;

/// Checks `T(X₊) ⊆ Y₊`.
///
/// Exact for cones with finitely many known generators. Curved cones are checked on
/// `n_rays` random extreme rays plus rays from the coordinate axes, after which the worst
/// ray is pushed toward larger violation by finite-difference ascent. Other cones are
/// checked on `n_rays` random members.
pub fn operator_positive(
    t: &OperatorMatrix,
    tol: f64,
    n_rays: usize,
    seed: u64,
) -> Result<PositivityReport> {
    let dom = t.domain.cone();
    let cod = t.codomain.cone();
    let viol = |r: &Vector| -> Result<f64> { cod.violation(&(&t.entries * r)) };
    let n = t.domain.dim();

    let (rays, exact): (Vec<Vector>, bool) = match finite_rays(dom) {
        Some(r) => (r, true),
        None => {
            let mut rays = Vec::new();
            let mut rng = sampling::stream(seed, 0);
            for i in 0..n {
                for s in [1.0, -1.0] {
                    if let Some(r) = curved_ray(dom, &(basis(n, i) * s)) {
                        rays.push(r);
                    }
                }
            }
            for _ in 0..n_rays {
                let g = sampling::gaussian(&mut rng, n);
                match curved_ray(dom, &g) {
                    Some(r) => rays.push(r),
                    None => {
                        let c = dom.sample(&mut rng)?;
                        let nc = c.norm();
                        if nc > 0.0 {
                            rays.push(c / nc);
                        }
                    }
                }
            }
            (rays, false)
        }
    };
    let mut worst = (f64::NEG_INFINITY, Vector::zeros(n));
    for r in &rays {
        let unit = r / r.norm();
        let v = viol(&unit)?;
        if v > worst.0 {
            worst = (v, unit);
        }
    }
    if !exact && worst.0 <= tol {
        // Ascent over the ray parametrization from the worst sampled ray.
        let mut u = worst.1.clone();
        if curved_ray(dom, &u).is_some() {
            let f = |u: &Vector| -> Result<f64> {
                match curved_ray(dom, u) {
                    Some(r) => viol(&(&r / r.norm())),
                    None => Ok(f64::NEG_INFINITY),
                }
            };
            let mut fu = f(&u)?;
            let mut step = 0.5;
            for _ in 0..REFINE_ITERS {
                let h = 1e-6;
                let mut g = Vector::zeros(n);
                for i in 0..n {
                    let e = basis(n, i) * h;
                    g[i] = (f(&(&u + &e))? - f(&(&u - &e))?) / (2.0 * h);
                }
                let gn = g.norm();
                if gn == 0.0 || !gn.is_finite() {
                    break;
                }
                let cand = &u + g * (step / gn);
                let fc = f(&cand)?;
                if fc > fu {
                    u = cand;
                    fu = fc;
                } else {
                    step *= 0.5;
                }
            }
            if let Some(r) = curved_ray(dom, &u) {
                let unit = &r / r.norm();
                if fu > worst.0 {
                    worst = (fu, unit);
                }
            }
        }
    }
    let positive = worst.0 <= tol;
    Ok(PositivityReport {
        positive,
        exact,
        rays_checked: rays.len(),
        worst_violation: worst.0.max(0.0),
        witness: (!positive).then(|| worst.1.as_slice().to_vec()),
    })
}

/// Derivative of `‖y‖` in the given norm, any subgradient at kinks.
fn norm_gradient(norm: NormSpec, y: &Vector) -> Vector {
    let p = norm.p();
    let ny = norm.norm(y);
    if ny == 0.0 {
        return Vector::zeros(y.len());
    }
    if p == 2.0 {
        return y / ny;
    }
    if p == 1.0 {
        return y.map(f64::signum);
    }
    if p.is_infinite() {
        let k = y.iamax();
        let mut g = Vector::zeros(y.len());
        g[k] = y[k].signum();
        return g;
    }
    y.map(|v| v.signum() * (v.abs() / ny).powf(p - 1.0))
}

/// Largest singular value and a top right singular vector, by power iteration on `TᵀT`.
fn spectral(m: &DMatrix<f64>) -> (f64, Vector) {
    let g = m.transpose() * m;
    let n = g.nrows();
    let mut rng = sampling::stream(0, 0);
    let mut v = sampling::unit_vector(&mut rng, n);
    let mut lam = 0.0;
    for _ in 0..100_000 {
        let w = &g * &v;
        let nw = w.norm();
        if nw == 0.0 {
            return (0.0, v);
        }
        let next = v.dot(&w);
        v = w / nw;
        // Relative 1e−13 on λ = σ² leaves the singular value far inside 1e−10.
        if (next - lam).abs() <= 1e-13 * next {
            lam = next;
            break;
        }
        lam = next;
    }
    let w = &g * &v;
    (v.dot(&w).max(lam).max(0.0).sqrt(), v)
}

/// An operator norm value, exact or a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    /// False for norm pairs other than ℓ2 → ℓ2, which are estimated from below.
    pub exact: bool,
}

const ASCENT_STARTS: usize = 64;
const POWER_ITERS: usize = 1000;

/// `‖T‖`; exact for ℓ2 → ℓ2 and a sampled lower bound otherwise.
pub fn operator_norm(t: &OperatorMatrix) -> NormEstimate {
    let (pn, qn) = (t.domain.norm_spec(), t.codomain.norm_spec());
    if pn.is_euclidean() && qn.is_euclidean() {
        return NormEstimate {
            value: spectral(&t.entries).0,
            exact: true,
        };
    }
    let n = t.domain.dim();
    let mut starts: Vec<Vector> = (0..n).map(|i| basis(n, i)).collect();
    let mut rng = sampling::stream(0, 1);
    for _ in 0..ASCENT_STARTS {
        starts.push(sampling::gaussian(&mut rng, n));
    }
    let dual = pn.dual();
    let mut best = 0.0f64;
    for s in starts {
        let mut x = &s / pn.norm(&s);
        let mut fx = qn.norm(&(&t.entries * &x));
        // Conditional gradient with full steps: ‖T·‖ is convex, so jumping to the unit
        // vector that maximizes the linearization never decreases it.
        for _ in 0..POWER_ITERS {
            let g = t.entries.transpose() * norm_gradient(qn, &(&t.entries * &x));
            let cand = norm_gradient(dual, &g);
            let fc = qn.norm(&(&t.entries * &cand));
            if !(fc > fx * (1.0 + 1e-15)) {
                break;
            }
            x = cand;
            fx = fc;
        }
        best = best.max(fx);
    }
    NormEstimate {
        value: best,
        exact: false,
    }
}

/// Step-halving ascent of `‖Tx‖` with `retract` mapping back to the feasible unit set.
fn ascend(
    t: &OperatorMatrix,
    mut x: Vector,
    iters: usize,
    retract: impl Fn(Vector) -> Result<Vector>,
) -> Result<(Vector, f64)> {
    let qn = t.codomain.norm_spec();
    let mut fx = qn.norm(&(&t.entries * &x));
    let mut step = 0.5;
    for _ in 0..iters {
        let y = &t.entries * &x;
        let g = t.entries.transpose() * norm_gradient(qn, &y);
        let gn = g.norm();
        if gn == 0.0 {
            break;
        }
        let cand = retract(&x + g * (step / gn))?;
        let fc = qn.norm(&(&t.entries * &cand));
        if fc > fx {
            x = cand;
            fx = fc;
        } else {
            step *= 0.5;
        }
    }
    Ok((x, fx))
}

/// Default sample count for [`robinson_norm`].
pub const ROBINSON_SAMPLES: usize = 500;

/// `‖T‖₊ = sup{‖Tx‖ : x ≥ 0, ‖x‖ = 1}`, estimated from below.
///
/// Starts from `n_samples` random positive unit vectors and, for Euclidean domains, the
/// cone projections of `±` a top right singular vector. Each start is refined for
/// `refine_iters` steps of projected ascent with step halving.
pub fn robinson_norm(
    t: &OperatorMatrix,
    n_samples: usize,
    refine_iters: usize,
    seed: u64,
) -> Result<f64> {
    let cone = t.domain.cone();
    let pn = t.domain.norm_spec();
    let mut starts = Vec::new();
    if pn.is_euclidean() {
        let (_, v) = spectral(&t.entries);
        starts.push(cone.project(&v)?);
        starts.push(cone.project(&(-&v))?);
    }
    let mut rng = sampling::stream(seed, 0);
    for _ in 0..n_samples {
        starts.push(cone.sample(&mut rng)?);
    }
    let retract = |v: Vector| -> Result<Vector> {
        let p = cone.project(&v)?;
        let n = pn.norm(&p);
        Ok(if n > 0.0 { p / n } else { p })
    };
    let mut best: Option<f64> = None;
    for s in starts {
        let ns = pn.norm(&s);
        if !(ns > 1e-12) {
            continue;
        }
        let (_, f) = ascend(t, s / ns, refine_iters, &retract)?;
        best = Some(best.map_or(f, |b| b.max(f)));
    }
    best.ok_or(Error::DegenerateCone)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorNormReport {
    pub op_norm: f64,
    pub op_norm_exact: bool,
    pub robinson_norm_lb: f64,
    /// `op_norm − robinson_norm_lb`; small means positively attained as far as sampled.
    pub positively_attained_gap: f64,
    pub n_rays: usize,
    pub refinement_iters: usize,
    pub pass: bool,
}

/// Compares `‖T‖` with the Robinson norm of a positive operator.
pub fn positively_attained_check(
    t: &OperatorMatrix,
    tol: f64,
    seed: u64,
) -> Result<OperatorNormReport> {
    if !operator_positive(t, 1e-9, 200, seed)?.positive {
        return Err(Error::NotPositive);
    }
    let op = operator_norm(t);
    let rob = robinson_norm(t, ROBINSON_SAMPLES, REFINE_ITERS, seed)?;
    let gap = op.value - rob;
    Ok(OperatorNormReport {
        op_norm: op.value,
        op_norm_exact: op.exact,
        robinson_norm_lb: rob,
        positively_attained_gap: gap,
        n_rays: ROBINSON_SAMPLES,
        refinement_iters: REFINE_ITERS,
        pass: gap <= tol,
    })
}

/// Orthonormal basis of the orthogonal complement of the unit vector `v`, as columns.
fn complement_basis(v: &Vector) -> DMatrix<f64> {
    let n = v.len();
    let mut cols: Vec<Vector> = Vec::with_capacity(n - 1);
    for i in 0..n {
        let mut e = basis(n, i);
        e.axpy(-v.dot(&e), v, 1.0);
        for c in &cols {
            let d = c.dot(&e);
            e.axpy(-d, c, 1.0);
        }
        let ne = e.norm();
        if ne > 1e-8 && cols.len() < n - 1 {
            cols.push(e / ne);
        }
    }
    DMatrix::from_columns(&cols)
}

/// A random positive operator between the two spaces.
///
/// Nonnegative combinations of rank-ones `f ⊗ y` with `f` in the dual cone and `y` in
/// the codomain cone; between Lorentz spaces with a common axis `v`, also maps
/// `λ(v vᵀ + R)` with `R` a random orthogonal map of `v⊥`; between orthants, also
/// entrywise nonnegative matrices.
pub fn random_positive_operator<R: Rng + ?Sized>(
    domain: &OrderedSpace,
    codomain: &OrderedSpace,
    rng: &mut R,
) -> Result<OperatorMatrix> {
    let (n, m) = (domain.dim(), codomain.dim());
    let mut a = DMatrix::zeros(m, n);
    for _ in 0..rng.gen_range(1..=3) {
        let f = domain.cone().sample_dual(rng)?;
        let y = codomain.cone().sample(rng)?;
        a += (&y * f.transpose()) * rng.gen_range(0.0..1.0);
    }
    match (domain.cone(), codomain.cone()) {
        (Cone::Lorentz { axis: v }, Cone::Lorentz { axis: w }) if v == w && n > 1 => {
            let b = complement_basis(v);
            for _ in 0..rng.gen_range(0..=2) {
                let g =
                    DMatrix::from_fn(n - 1, n - 1, |_, _| rng.sample(rand_distr::StandardNormal));
                let q = g.qr().q();
                let rot = v * v.transpose() + &b * q * b.transpose();
                a += rot * rng.gen_range(0.0..1.0);
            }
        }
        (Cone::Standard { .. }, Cone::Standard { .. }) if rng.gen_bool(0.5) => {
            a += DMatrix::from_fn(m, n, |_, _| {
                if rng.gen_bool(0.3) {
                    0.0
                } else {
                    rng.gen_range(0.0..1.0)
                }
            });
        }
        _ => {}
    }
    OperatorMatrix::new(a, domain.clone(), codomain.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransferVerdict {
    HoldsOnSample,
    CounterexampleFound,
    /// The codomain cone is `{0}`, so the operator order is trivial.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub kind: PropertyKind,
    pub alpha: f64,
    pub beta: f64,
    /// The constant `αβ` expected for the operator space.
    pub bound: f64,
    pub trials: usize,
    pub max_ratio: f64,
    pub verdict: TransferVerdict,
    /// False when some operator norm was only estimated from below.
    pub norms_exact: bool,
}

/// Tolerance on ratios in the operator order experiments.
pub const TRANSFER_TOL: f64 = 1e-6;

/// Samples operators whose order relation holds by construction and checks the normality
/// inequality of `kind` with constant `αβ` in the operator norm.
///
/// With random positive `A, B`: plain uses `0 ≤ A ≤ A + B`; absolute uses
/// `±(A − B)/2 ≤ (A + B)/2`; max and sum use `X − B ≤ X ≤ X + B′` with `X = A − A′`.
pub fn normality_transfer_check(
    x_space: &OrderedSpace,
    y_space: &OrderedSpace,
    kind: PropertyKind,
    alpha: f64,
    beta: f64,
    n_trials: usize,
    seed: u64,
) -> Result<TransferReport> {
    if kind.is_conormal() {
        return Err(Error::InvalidArgument(format!(
            "{kind} is not a normality property"
        )));
    }
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidArgument(
            "alpha and beta must be positive".into(),
        ));
    }
    let bound = alpha * beta;
    let mut report = TransferReport {
        kind,
        alpha,
        beta,
        bound,
        trials: 0,
        max_ratio: 0.0,
        verdict: TransferVerdict::Vacuous,
        norms_exact: true,
    };
    if cone_is_zero(y_space.cone())? {
        return Ok(report);
    }
    let mut norm = |t: &OperatorMatrix| {
        let e = operator_norm(t);
        report.norms_exact &= e.exact;
        e.value
    };
    let mut max_ratio = 0.0f64;
    for k in 0..n_trials {
        let mut rng = sampling::stream(seed, k as u64);
        let a = random_positive_operator(x_space, y_space, &mut rng)?;
        let b = random_positive_operator(x_space, y_space, &mut rng)?;
        let (num, den) = match kind {
            PropertyKind::Normal => (norm(&a), norm(&a.combine(1.0, &b, 1.0)?)),
            PropertyKind::AbsNormal => (
                norm(&a.combine(0.5, &b, -0.5)?),
                norm(&a.combine(0.5, &b, 0.5)?),
            ),
            _ => {
                let a2 = random_positive_operator(x_space, y_space, &mut rng)?;
                let b2 = random_positive_operator(x_space, y_space, &mut rng)?;
                let x = a.combine(1.0, &a2, -1.0)?;
                let lo = norm(&x.combine(1.0, &b, -1.0)?);
                let hi = norm(&x.combine(1.0, &b2, 1.0)?);
                (
                    norm(&x),
                    if kind == PropertyKind::MaxNormal {
                        lo.max(hi)
                    } else {
                        lo + hi
                    },
                )
            }
        };
        let r = if den > 0.0 {
            num / den
        } else if num > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        max_ratio = max_ratio.max(r);
    }
    report.trials = n_trials;
    report.max_ratio = max_ratio;
    report.verdict = if max_ratio <= bound * (1.0 + TRANSFER_TOL) {
        TransferVerdict::HoldsOnSample
    } else {
        TransferVerdict::CounterexampleFound
    };
    Ok(report)
}

/// `±T ≤ S ⇒ ‖T‖ ≤ ‖S‖` for operators built as `T = (A − B)/2`, `S = (A + B)/2`.
pub fn absolute_monotonicity_experiment(
    x_space: &OrderedSpace,
    y_space: &OrderedSpace,
    n_trials: usize,
    seed: u64,
) -> Result<TransferReport> {
    normality_transfer_check(
        x_space,
        y_space,
        PropertyKind::AbsNormal,
        1.0,
        1.0,
        n_trials,
        seed,
    )
}
