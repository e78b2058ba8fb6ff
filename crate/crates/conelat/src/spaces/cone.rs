//! Closed convex cones with membership, Euclidean projection, duals and sampling.

use rand::Rng;
use rand_distr::StandardNormal;

use super::polyhedral::Polyhedral;
use crate::error::{check_dim, Error, Result};
use crate::Vector;

/// Default number of sample points for the polynomial-nonnegativity cone.
pub const DEFAULT_POLY_GRID: usize = 257;

/// A closed convex cone in `ℝⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Cone {
    /// The nonnegative orthant.
    Standard { dim: usize },
    /// `{x : ⟨axis, x⟩ ≥ ‖x − ⟨axis, x⟩ axis‖₂}` with a unit axis.
    Lorentz { axis: Vector },
    /// A Lorentz cone cut by the half-space `⟨half, x⟩ ≥ 0`, with `half ⟂ axis`.
    HalfLorentz { axis: Vector, half: Vector },
    /// A finitely generated cone.
    Polyhedral(Polyhedral),
    /// Coefficients `(a, b, c)` of `a t² + b t + c` nonnegative at grid points of `[0, 1]`.
    PolyNonneg(PolyNonneg),
    /// `{x : x₀ ≥ (Σ_{i≥1} wᵢ xᵢ²)^½}` with positive weights `w₁, …, w_{n−1}`.
    WeightedLorentz { weights: Vector },
    /// The dual `{f : ⟨f, x⟩ ≥ 0 for x in the inner cone}`.
    Dual(Box<Cone>),
}

/// The polynomial-nonnegativity cone in coefficient space `ℝ³`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyNonneg {
    grid: Vec<f64>,
    /// Evaluation functionals `(t², t, 1)`, not normalized.
    evaluations: Vec<Vector>,
    /// Extreme rays of the discretized cone, used for projection.
    rays: Polyhedral,
}

impl PolyNonneg {
    /// Chebyshev points mapped to `[0, 1]`, endpoints included.
    pub fn chebyshev(points: usize) -> Result<Self> {
        if points < 3 {
            return Err(Error::InvalidArgument(
                "polynomial grid needs at least 3 points".into(),
            ));
        }
        let grid = (0..points)
            .map(|k| {
                let c = (std::f64::consts::PI * k as f64 / (points - 1) as f64).cos();
                (0.5 - 0.5 * c).clamp(0.0, 1.0)
            })
            .collect();
        Self::with_grid(grid)
    }

    pub fn with_grid(mut grid: Vec<f64>) -> Result<Self> {
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        if grid.len() < 3 || grid.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return Err(Error::InvalidArgument(
                "polynomial grid needs at least 3 distinct points in [0, 1]".into(),
            ));
        }
        if grid[0] != 0.0 || *grid.last().unwrap() != 1.0 {
            return Err(Error::InvalidArgument(
                "polynomial grid must include 0 and 1".into(),
            ));
        }
        let evaluations: Vec<Vector> = grid
            .iter()
            .map(|&t| Vector::from_vec(vec![t * t, t, 1.0]))
            .collect();
        let rays = Polyhedral::from_normals(evaluations.clone())?;
        Ok(PolyNonneg {
            grid,
            evaluations,
            rays,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn evaluations(&self) -> &[Vector] {
        &self.evaluations
    }

    pub fn rays(&self) -> &Polyhedral {
        &self.rays
    }

    /// Largest negative polynomial value on the grid.
    pub fn violation(&self, x: &Vector) -> f64 {
        let (a, b, c) = (x[0], x[1], x[2]);
        let p = |t: f64| (a * t + b) * t + c;
        let mut low = p(0.0).min(p(1.0));
        if a > 0.0 {
            // A convex parabola attains its grid minimum next to the vertex.
            let vertex = -b / (2.0 * a);
            if vertex > 0.0 && vertex < 1.0 {
                let k = self.grid.partition_point(|&t| t < vertex);
                low = low.min(p(self.grid[k])).min(p(self.grid[k - 1]));
            }
        }
        (-low).max(0.0)
    }
}

impl Cone {
    pub fn standard(dim: usize) -> Result<Cone> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(Cone::Standard { dim })
    }

    /// Lorentz cone around `axis` (normalized; zero is rejected).
    pub fn lorentz(axis: Vector) -> Result<Cone> {
        Ok(Cone::Lorentz {
            axis: unit(axis, "Lorentz axis")?,
        })
    }

    /// Lorentz cone in `ℝⁿ` around the first basis vector.
    pub fn lorentz_e1(dim: usize) -> Result<Cone> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Cone::lorentz(basis(dim, 0))
    }

    pub fn half_lorentz(axis: Vector, half: Vector) -> Result<Cone> {
        check_dim(axis.len(), half.len())?;
        if axis.len() < 2 {
            return Err(Error::InvalidArgument(
                "half-Lorentz cone needs dimension ≥ 2".into(),
            ));
        }
        let axis = unit(axis, "Lorentz axis")?;
        let half = unit(half, "half-space normal")?;
        if axis.dot(&half).abs() > 1e-9 {
            return Err(Error::InvalidArgument(
                "half-space normal must be orthogonal to the axis".into(),
            ));
        }
        Ok(Cone::HalfLorentz { axis, half })
    }

    pub fn polyhedral_from_generators(generators: Vec<Vector>) -> Result<Cone> {
        Ok(Cone::Polyhedral(Polyhedral::from_generators(generators)?))
    }

    pub fn polyhedral_from_normals(normals: Vec<Vector>) -> Result<Cone> {
        Ok(Cone::Polyhedral(Polyhedral::from_normals(normals)?))
    }

    pub fn poly_nonneg(points: usize) -> Result<Cone> {
        Ok(Cone::PolyNonneg(PolyNonneg::chebyshev(points)?))
    }

    pub fn weighted_lorentz(weights: Vector) -> Result<Cone> {
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument(
                "weights must be positive and finite".into(),
            ));
        }
        Ok(Cone::WeightedLorentz { weights })
    }

    pub fn dim(&self) -> usize {
        match self {
            Cone::Standard { dim } => *dim,
            Cone::Lorentz { axis } | Cone::HalfLorentz { axis, .. } => axis.len(),
            Cone::Polyhedral(p) => p.dim(),
            Cone::PolyNonneg(_) => 3,
            Cone::WeightedLorentz { weights } => weights.len() + 1,
            Cone::Dual(inner) => inner.dim(),
        }
    }

    /// Short machine name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Cone::Standard { .. } => "standard",
            Cone::Lorentz { .. } => "lorentz",
            Cone::HalfLorentz { .. } => "half_lorentz",
            Cone::Polyhedral(_) => "polyhedral",
            Cone::PolyNonneg(_) => "polynonneg",
            Cone::WeightedLorentz { .. } => "weighted_lorentz",
            Cone::Dual(_) => "dual",
        }
    }

    /// How far `x` is from satisfying the defining inequalities (0 inside).
    ///
    /// Lorentz-type cones report `‖Px‖ − ⟨axis, x⟩`, polyhedral cones the most negative
    /// product with a unit normal, the polynomial cone the most negative grid value,
    /// and duals the Euclidean distance to the cone.
    pub fn violation(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(match self {
            Cone::Standard { .. } => x.iter().map(|v| -v).fold(0.0, f64::max),
            Cone::Lorentz { axis } => lorentz_gap(axis, x).max(0.0),
            Cone::HalfLorentz { axis, half } => lorentz_gap(axis, x).max(-half.dot(x)).max(0.0),
            Cone::Polyhedral(p) => p.violation(x),
            Cone::PolyNonneg(p) => p.violation(x),
            Cone::WeightedLorentz { weights } => (weighted_radius(weights, x) - x[0]).max(0.0),
            Cone::Dual(inner) => {
                let mut neg = -x;
                inner.project_in_place(&mut neg)?;
                neg.norm()
            }
        })
    }

    /// Lipschitz constant of [`Cone::violation`] with respect to Euclidean displacement.
    pub fn violation_lipschitz(&self) -> f64 {
        match self {
            Cone::Standard { .. } | Cone::Polyhedral(_) | Cone::Dual(_) => 1.0,
            Cone::Lorentz { .. } | Cone::HalfLorentz { .. } => std::f64::consts::SQRT_2,
            Cone::PolyNonneg(_) => 3f64.sqrt(),
            Cone::WeightedLorentz { weights } => {
                1.0 + weights.iter().fold(0.0, |m: f64, w| m.max(w.sqrt()))
            }
        }
    }

    /// Membership with absolute slack `tol` on the defining inequalities.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.violation(x)? <= tol)
    }

    /// Euclidean projection onto the cone.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.len())?;
        let mut out = x.clone();
        self.project_in_place(&mut out)?;
        Ok(out)
    }

    pub(crate) fn project_in_place(&self, x: &mut Vector) -> Result<()> {
        match self {
            Cone::Standard { .. } => x.iter_mut().for_each(|v| *v = v.max(0.0)),
            Cone::Lorentz { axis } => project_lorentz(axis, x),
            Cone::HalfLorentz { axis, half } => {
                let s = half.dot(x);
                if s < 0.0 {
                    // The projection lies in the boundary hyperplane of the half-space.
                    x.axpy(-s, half, 1.0);
                }
                project_lorentz(axis, x);
            }
            Cone::Polyhedral(p) => p.project_in_place(x)?,
            Cone::PolyNonneg(p) => p.rays.project_in_place(x)?,
            Cone::WeightedLorentz { weights } => project_weighted(weights, x),
            Cone::Dual(inner) => {
                // Moreau: P_{K*}(x) = x + P_K(−x).
                let mut neg = -&*x;
                inner.project_in_place(&mut neg)?;
                *x += neg;
            }
        }
        Ok(())
    }

    /// The dual cone with respect to the Euclidean pairing.
    pub fn dual(&self) -> Result<Cone> {
        Ok(match self {
            Cone::Standard { .. } | Cone::Lorentz { .. } => self.clone(),
            Cone::HalfLorentz { .. } => Cone::Dual(Box::new(self.clone())),
            Cone::Polyhedral(p) => Cone::Polyhedral(p.dual()),
            Cone::PolyNonneg(p) => Cone::Polyhedral(p.rays.dual()),
            Cone::WeightedLorentz { weights } => Cone::WeightedLorentz {
                weights: weights.map(|w| 1.0 / w),
            },
            Cone::Dual(inner) => (**inner).clone(),
        })
    }

    /// An interior point, used to shift points into the cone.
    pub fn order_unit(&self) -> Result<Vector> {
        Ok(match self {
            Cone::Standard { dim } => Vector::from_element(*dim, 1.0),
            Cone::Lorentz { axis } => axis.clone(),
            Cone::HalfLorentz { axis, half } => axis + half * 0.5,
            Cone::Polyhedral(p) => {
                if !p.is_generating() {
                    return Err(Error::NotGenerating);
                }
                if p.generators().is_empty() {
                    p.normals()
                        .iter()
                        .fold(Vector::zeros(p.dim()), |a, n| a + n)
                } else {
                    p.generators()
                        .iter()
                        .fold(Vector::zeros(p.dim()), |a, g| a + g)
                }
            }
            Cone::PolyNonneg(_) => Vector::from_vec(vec![0.0, 0.0, 1.0]),
            Cone::WeightedLorentz { weights } => basis(weights.len() + 1, 0),
            Cone::Dual(inner) => inner.dual_order_unit()?,
        })
    }

    /// An interior point of the dual cone.
    fn dual_order_unit(&self) -> Result<Vector> {
        match self {
            Cone::HalfLorentz { axis, .. } => Ok(axis.clone()),
            Cone::Dual(inner) => inner.order_unit(),
            other => {
                if !other.is_proper() {
                    return Err(Error::NotGenerating);
                }
                other.dual()?.order_unit()
            }
        }
    }

    /// True iff the cone contains no line.
    pub fn is_proper(&self) -> bool {
        match self {
            Cone::Polyhedral(p) => p.is_proper(),
            Cone::Dual(inner) => inner.is_generating(),
            _ => true,
        }
    }

    /// True iff `C − C` is the whole space.
    pub fn is_generating(&self) -> bool {
        match self {
            Cone::Polyhedral(p) => p.is_generating(),
            Cone::Dual(inner) => inner.is_proper(),
            _ => true,
        }
    }

    /// A random cone element; about a quarter of the samples lie on the boundary.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vector> {
        let n = self.dim();
        Ok(match self {
            Cone::Standard { .. } => Vector::from_fn(n, |_, _| {
                if rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.sample::<f64, _>(StandardNormal).abs()
                }
            }),
            Cone::Lorentz { axis } => sample_lorentz(axis, rng),
            Cone::HalfLorentz { axis, half } => {
                let mut s = sample_lorentz(axis, rng);
                let h = half.dot(&s);
                if h < 0.0 {
                    // reflection through the boundary hyperplane preserves the Lorentz cone
                    s.axpy(-2.0 * h, half, 1.0);
                }
                s
            }
            Cone::Polyhedral(p) if !p.generators().is_empty() => {
                let gens = p.generators();
                let mut s = Vector::zeros(n);
                let active = rng.gen_range(1..=gens.len().min(n + 1));
                for _ in 0..active {
                    let g = &gens[rng.gen_range(0..gens.len())];
                    s.axpy(rng.gen_range(0.0..2.0), g, 1.0);
                }
                s
            }
            Cone::PolyNonneg(p) => {
                let gens = p.rays.generators();
                let mut s = Vector::zeros(3);
                for _ in 0..rng.gen_range(1..=3) {
                    let g = &gens[rng.gen_range(0..gens.len())];
                    s.axpy(rng.gen_range(0.0..2.0), g, 1.0);
                }
                s
            }
            Cone::WeightedLorentz { weights } => {
                let t: f64 = rng.gen_range(0.1..2.0);
                let rho = if rng.gen_bool(0.25) {
                    1.0
                } else {
                    rng.gen_range(0.0..1.0)
                };
                let mut r = if rng.gen_bool(0.5) {
                    Vector::from_fn(weights.len(), |_, _| rng.sample(StandardNormal))
                } else {
                    // sparse directions reach the thin far end of the cone
                    let mut e = Vector::zeros(weights.len());
                    e[rng.gen_range(0..weights.len())] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    e
                };
                let wr = weighted_norm(weights, r.as_slice());
                if wr > 0.0 {
                    r *= rho * t / wr;
                }
                let mut s = Vector::zeros(n);
                s[0] = t;
                s.rows_mut(1, n - 1).copy_from(&r);
                s
            }
            _ => {
                let g = Vector::from_fn(n, |_, _| rng.sample(StandardNormal));
                self.project(&g)?
            }
        })
    }

    /// An element of the dual cone whose Euclidean norm is 1, drawn at random.
    pub fn sample_dual<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vector> {
        let d = self.dual()?;
        for _ in 0..100 {
            let s = d.sample(rng)?;
            let n = s.norm();
            if n > 1e-12 {
                return Ok(s / n);
            }
        }
        Err(Error::DegenerateCone)
    }

    /// Minimal `λ ≥ 0` with `w + λ e ∈ C`, where `e` is the order unit.
    pub fn shift_into(&self, w: &Vector) -> Result<f64> {
        check_dim(self.dim(), w.len())?;
        match self {
            Cone::Lorentz { axis } => return Ok(lorentz_gap(axis, w).max(0.0)),
            Cone::WeightedLorentz { weights } => {
                return Ok((weighted_radius(weights, w) - w[0]).max(0.0))
            }
            Cone::Standard { .. } => return Ok(w.iter().map(|v| -v).fold(0.0, f64::max)),
            _ => {}
        }
        let e = self.order_unit()?;
        let inside = |lam: f64| -> Result<bool> { Ok(self.violation(&(w + &e * lam))? <= 0.0) };
        if inside(0.0)? {
            return Ok(0.0);
        }
        let mut hi = w.norm().max(1e-12);
        let mut grow = 0;
        while !inside(hi)? {
            hi *= 2.0;
            grow += 1;
            if grow > 200 {
                return Err(Error::NotGenerating);
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if inside(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        Ok(hi)
    }
}

pub(crate) fn basis(dim: usize, i: usize) -> Vector {
    let mut e = Vector::zeros(dim);
    e[i] = 1.0;
    e
}

fn unit(v: Vector, what: &str) -> Result<Vector> {
    let n = v.norm();
    if n > 0.0 && n.is_finite() {
        Ok(v / n)
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} must be a nonzero finite vector"
        )))
    }
}

/// `‖Px‖ − ⟨v, x⟩`, nonpositive exactly on the cone.
fn lorentz_gap(axis: &Vector, x: &Vector) -> f64 {
    let t = axis.dot(x);
    let r2 = (x.norm_squared() - t * t).max(0.0);
    r2.sqrt() - t
}

/// Closed-form projection onto the Lorentz cone.
pub(crate) fn project_lorentz(axis: &Vector, x: &mut Vector) {
    let t = axis.dot(x);
    // r = x − t·axis
    x.axpy(-t, axis, 1.0);
    let nr = x.norm();
    if nr <= t {
        x.axpy(t, axis, 1.0);
    } else if nr <= -t {
        x.fill(0.0);
    } else {
        let a = 0.5 * (t + nr);
        *x *= a / nr;
        x.axpy(a, axis, 1.0);
    }
}

fn weighted_norm(weights: &Vector, r: &[f64]) -> f64 {
    weights
        .iter()
        .zip(r)
        .map(|(w, v)| w * v * v)
        .sum::<f64>()
        .sqrt()
}

fn weighted_radius(weights: &Vector, x: &Vector) -> f64 {
    weighted_norm(weights, &x.as_slice()[1..])
}

/// Projection onto `{x₀ ≥ (Σ wᵢ xᵢ²)^½}`.
///
/// Outside the cone and its polar, the projection is `t = t₀/(1−2μ)`, `rᵢ = r₀ᵢ/(1+2μwᵢ)`
/// for the multiplier `μ` at which `(t, r)` reaches the boundary.
fn project_weighted(weights: &Vector, x: &mut Vector) {
    let t0 = x[0];
    let r0 = &x.as_slice()[1..];
    let inner = weighted_norm(weights, r0);
    if inner <= t0 {
        return;
    }
    let polar = r0
        .iter()
        .zip(weights.iter())
        .map(|(v, w)| v * v / w)
        .sum::<f64>()
        .sqrt();
    if polar <= -t0 {
        x.fill(0.0);
        return;
    }
    // (radius(μ), d radius/dμ) in one pass.
    let radius = |mu: f64| -> (f64, f64) {
        let (mut r2, mut dr2) = (0.0, 0.0);
        for (w, v) in weights.iter().zip(r0) {
            let d = 1.0 / (1.0 + 2.0 * mu * w);
            let wv2 = w * v * v * d * d;
            r2 += wv2;
            dr2 -= 4.0 * w * wv2 * d;
        }
        let r = r2.sqrt();
        (r, if r > 0.0 { dr2 / (2.0 * r) } else { 0.0 })
    };
    let mu = if t0 == 0.0 {
        0.5
    } else {
        // g(μ) = |t₀| − |1−2μ|·radius(μ) changes sign once on the bracket; safeguarded
        // Newton keeps the bracket and falls back to bisection.
        let g = |mu: f64| -> (f64, f64) {
            let (r, dr) = radius(mu);
            let s = 1.0 - 2.0 * mu;
            (t0.abs() - s.abs() * r, 2.0 * s.signum() * r - s.abs() * dr)
        };
        let (mut lo, mut hi) = if t0 > 0.0 {
            (0.0, 0.5)
        } else {
            let mut hi = 1.0;
            while g(hi).0 > 0.0 && hi < 1e300 {
                hi *= 2.0;
            }
            (0.5, hi)
        };
        // g(lo) < 0 < g(hi) for t₀ > 0, reversed for t₀ < 0.
        let increasing = t0 > 0.0;
        let mut mu = 0.5 * (lo + hi);
        for _ in 0..200 {
            let (v, dv) = g(mu);
            if v == 0.0 {
                break;
            }
            if (v < 0.0) == increasing {
                lo = mu;
            } else {
                hi = mu;
            }
            let newton = mu - v / dv;
            let next = if dv != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            let done = (next - mu).abs() <= 4.0 * f64::EPSILON * mu.abs().max(1.0)
                || hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0);
            mu = next;
            if done {
                break;
            }
        }
        mu
    };
    let r: Vec<f64> = weights
        .iter()
        .zip(r0)
        .map(|(w, v)| v / (1.0 + 2.0 * mu * w))
        .collect();
    let rad = weighted_norm(weights, &r);
    x[0] = rad;
    x.as_mut_slice()[1..].copy_from_slice(&r);
}

fn sample_lorentz<R: Rng + ?Sized>(axis: &Vector, rng: &mut R) -> Vector {
    let n = axis.len();
    let t: f64 = rng.gen_range(0.1..2.0);
    if n == 1 {
        return axis * t;
    }
    let mut u = Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
    u.axpy(-axis.dot(&u), axis, 1.0);
    let nu = u.norm();
    if nu > 0.0 {
        u /= nu;
    }
    let rho = if rng.gen_bool(0.25) {
        1.0
    } else {
        rng.gen_range(0.0..1.0)
    };
    (axis + u * rho) * t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    fn close(a: &Vector, b: &Vector, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn lorentz_membership_examples() {
        let c = Cone::lorentz_e1(3).unwrap();
        assert!(c.contains(&v(&[1.0, 0.0, 1.0]), 0.0).unwrap());
        assert!(!c.contains(&v(&[1.0, 0.0, 1.1]), 1e-9).unwrap());
        assert!(matches!(
            c.violation(&v(&[1.0, 0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn standard_and_pyramid_membership() {
        assert!(!Cone::standard(3)
            .unwrap()
            .contains(&v(&[1.0, -1.0, 0.0]), 1e-9)
            .unwrap());
        let rays = vec![
            v(&[1.0, 1.0, 1.0]),
            v(&[1.0, -1.0, 1.0]),
            v(&[-1.0, -1.0, 1.0]),
            v(&[-1.0, 1.0, 1.0]),
        ];
        let c = Cone::polyhedral_from_generators(rays).unwrap();
        assert!(c.contains(&v(&[0.0, 0.0, 1.0]), 0.0).unwrap());
    }

    #[test]
    fn lorentz_projection_cases() {
        let c = Cone::lorentz_e1(3).unwrap();
        assert!(close(
            &c.project(&v(&[1.0, 0.0, 0.0])).unwrap(),
            &v(&[1.0, 0.0, 0.0]),
            0.0
        ));
        assert!(close(
            &c.project(&v(&[-2.0, 0.0, 0.0])).unwrap(),
            &v(&[0.0, 0.0, 0.0]),
            0.0
        ));
        assert!(close(
            &c.project(&v(&[0.0, 0.0, 2.0])).unwrap(),
            &v(&[1.0, 0.0, 1.0]),
            1e-15
        ));
    }

    #[test]
    fn lorentz_axis_is_normalized_and_zero_rejected() {
        let Cone::Lorentz { axis } = Cone::lorentz(v(&[2.0, 0.0])).unwrap() else {
            unreachable!()
        };
        assert_eq!(axis, v(&[1.0, 0.0]));
        assert!(Cone::lorentz(v(&[0.0, 0.0])).is_err());
        assert!(Cone::half_lorentz(v(&[1.0, 0.0, 0.0]), v(&[1.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn polynomial_grid_has_endpoints() {
        let Cone::PolyNonneg(p) = Cone::poly_nonneg(DEFAULT_POLY_GRID).unwrap() else {
            unreachable!()
        };
        assert_eq!(p.grid().len(), DEFAULT_POLY_GRID);
        assert_eq!(p.grid()[0], 0.0);
        assert_eq!(*p.grid().last().unwrap(), 1.0);
        // t² − t + ¼ = (t − ½)² ≥ 0, while t² − t has a negative minimum.
        assert_eq!(p.violation(&v(&[1.0, -1.0, 0.25])), 0.0);
        assert!(p.violation(&v(&[1.0, -1.0, 0.0])) > 0.2);
    }

    #[test]
    fn polynomial_violation_equals_scan_over_grid() {
        let Cone::PolyNonneg(p) = Cone::poly_nonneg(33).unwrap() else {
            unreachable!()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let x = Vector::from_fn(3, |_, _| rng.gen_range(-2.0..2.0));
            let scan = p
                .evaluations()
                .iter()
                .map(|e| -e.dot(&x))
                .fold(0.0, f64::max);
            assert!((p.violation(&x) - scan).abs() < 1e-14, "{x}");
        }
    }

    /// Projection oracle: minimize distance over a dense sample of the cone boundary and 0.
    fn weighted_projection_oracle(w: &[f64], x: &[f64]) -> Vec<f64> {
        // In ℝ³: boundary points (t, t cos θ/√w₁, t sin θ/√w₂).
        let mut best = (x.iter().map(|v| v * v).sum::<f64>(), vec![0.0; 3]);
        for i in 0..4000 {
            let th = 2.0 * std::f64::consts::PI * i as f64 / 4000.0;
            let d = [1.0, th.cos() / w[0].sqrt(), th.sin() / w[1].sqrt()];
            let dd: f64 = d.iter().map(|v| v * v).sum();
            let t = (d.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / dd).max(0.0);
            let p: Vec<f64> = d.iter().map(|v| v * t).collect();
            let dist: f64 = p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
            if dist < best.0 {
                best = (dist, p);
            }
        }
        best.1
    }

    #[test]
    fn weighted_projection_matches_boundary_search() {
        let w = [0.5, 1.0 / 3.0];
        let c = Cone::weighted_lorentz(v(&w)).unwrap();
        for x in [
            [0.5, 2.0, -1.0],
            [-0.5, 1.0, 2.0],
            [0.0, 1.0, 1.0],
            [-3.0, 0.1, 0.1],
        ] {
            let got = c.project(&v(&x)).unwrap();
            let want = weighted_projection_oracle(&w, &x);
            assert!(close(&got, &v(&want), 2e-3), "{x:?}: {got} vs {want:?}");
            assert!(c.violation(&got).unwrap() < 1e-12);
        }
    }

    #[test]
    fn half_lorentz_projection_is_kkt_point() {
        let c = Cone::half_lorentz(v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])).unwrap();
        let x = v(&[0.3, -1.0, 2.0]);
        let p = c.project(&x).unwrap();
        assert!(p[1].abs() < 1e-15);
        // In the plane x₂ = 0 the projection is the Lorentz one of (0.3, 2).
        let want = Cone::lorentz_e1(2)
            .unwrap()
            .project(&v(&[0.3, 2.0]))
            .unwrap();
        assert!((p[0] - want[0]).abs() < 1e-15 && (p[2] - want[1]).abs() < 1e-15);
    }

    #[test]
    fn duals_of_each_variant() {
        let l = Cone::lorentz_e1(3).unwrap();
        assert_eq!(l.dual().unwrap(), l);
        let w = Cone::weighted_lorentz(v(&[0.5, 0.25])).unwrap();
        assert_eq!(
            w.dual().unwrap(),
            Cone::weighted_lorentz(v(&[2.0, 4.0])).unwrap()
        );
        let h = Cone::half_lorentz(v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])).unwrap();
        let hd = h.dual().unwrap();
        // L + R₊h contains h itself and (1, 5, 1)
        assert!(hd.contains(&v(&[0.0, 1.0, 0.0]), 1e-12).unwrap());
        assert!(hd.contains(&v(&[1.0, 5.0, 1.0]), 1e-12).unwrap());
        assert!(!hd.contains(&v(&[1.0, -1.0, 1.0]), 1e-6).unwrap());
        assert_eq!(hd.dual().unwrap(), h);
    }

    #[test]
    fn samples_lie_in_their_cones() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cones = [
            Cone::standard(4).unwrap(),
            Cone::lorentz_e1(5).unwrap(),
            Cone::half_lorentz(v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])).unwrap(),
            Cone::poly_nonneg(DEFAULT_POLY_GRID).unwrap(),
            Cone::weighted_lorentz(v(&[0.5, 0.25, 0.2])).unwrap(),
            Cone::half_lorentz(v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]))
                .unwrap()
                .dual()
                .unwrap(),
        ];
        for c in &cones {
            for _ in 0..50 {
                let s = c.sample(&mut rng).unwrap();
                assert!(c.violation(&s).unwrap() < 1e-9, "{} {s}", c.kind());
            }
        }
    }

    #[test]
    fn shift_into_is_minimal() {
        let c = Cone::half_lorentz(v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])).unwrap();
        let w = v(&[-1.0, -2.0, 0.5]);
        let lam = c.shift_into(&w).unwrap();
        let e = c.order_unit().unwrap();
        assert!(c.violation(&(&w + &e * lam)).unwrap() == 0.0);
        assert!(c.violation(&(&w + &e * (lam * (1.0 - 1e-6)))).unwrap() > 0.0);
    }
}
