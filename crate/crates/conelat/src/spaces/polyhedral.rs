//! Finitely generated cones: ray/facet enumeration, NNLS projection, Dykstra.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::Vector;

/// Largest dimension for which the missing representation is enumerated.
pub const MAX_ENUMERATION_DIM: usize = 4;

const FEASIBILITY_SLACK: f64 = 1e-10;
const DUPLICATE_TOL: f64 = 1e-9;

/// A polyhedral cone `cone(generators) = {x : ⟨n, x⟩ ≥ 0 for every normal n}`.
///
/// Normals are stored with unit length so that membership slack is a distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedral {
    dim: usize,
    generators: Vec<Vector>,
    normals: Vec<Vector>,
    /// In ℝ³: the facets, for exact projection.
    facets: Vec<Facet3>,
    rays3: Vec<[f64; 3]>,
}

impl Polyhedral {
    /// Builds the cone spanned by `generators`; facets are enumerated when `dim ≤ 4`.
    pub fn from_generators(generators: Vec<Vector>) -> Result<Self> {
        let dim = common_dim(&generators)?;
        let generators = nonzero_unit(generators);
        if generators.is_empty() {
            return Err(Error::DegenerateCone);
        }
        let normals = if dim <= MAX_ENUMERATION_DIM {
            extreme_rays(&generators, dim)?
        } else {
            Vec::new()
        };
        Ok(Polyhedral::assemble(dim, generators, normals))
    }

    /// Builds `{x : ⟨n, x⟩ ≥ 0}`; extreme rays are enumerated when `dim ≤ 4`.
    pub fn from_normals(normals: Vec<Vector>) -> Result<Self> {
        let dim = common_dim(&normals)?;
        let normals = nonzero_unit(normals);
        if normals.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one nonzero normal is required".into(),
            ));
        }
        let generators = if dim <= MAX_ENUMERATION_DIM {
            match extreme_rays(&normals, dim) {
                // No rays: the half-spaces cut out the zero cone.
                Err(Error::DegenerateCone) => Vec::new(),
                r => r?,
            }
        } else {
            Vec::new()
        };
        Ok(Polyhedral::assemble(dim, generators, normals))
    }

    /// Both representations supplied by the caller; they are cross-checked.
    pub fn from_both(generators: Vec<Vector>, normals: Vec<Vector>) -> Result<Self> {
        let dim = common_dim(&generators)?;
        if common_dim(&normals)? != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: normals[0].len(),
            });
        }
        let cone = Polyhedral::assemble(dim, nonzero_unit(generators), nonzero_unit(normals));
        for g in &cone.generators {
            if cone.normals.iter().any(|n| n.dot(g) < -1e-9) {
                return Err(Error::InvalidArgument(
                    "generators violate the supplied half-spaces".into(),
                ));
            }
        }
        Ok(cone)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Unit generators; empty when only normals were given in dimension above 4.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// Unit facet normals; empty when only generators were given in dimension above 4.
    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    fn assemble(dim: usize, generators: Vec<Vector>, normals: Vec<Vector>) -> Polyhedral {
        let facets = if dim == 3 {
            facets_3d(&generators, &normals)
        } else {
            Vec::new()
        };
        let rays3 = if facets.is_empty() {
            Vec::new()
        } else {
            generators.iter().map(arr3).collect()
        };
        Polyhedral {
            dim,
            generators,
            normals,
            facets,
            rays3,
        }
    }

    /// The dual cone: generators and normals trade places.
    pub fn dual(&self) -> Polyhedral {
        Polyhedral::assemble(self.dim, self.normals.clone(), self.generators.clone())
    }

    /// Largest violated half-space product, or distance to the cone without normals.
    pub fn violation(&self, x: &Vector) -> f64 {
        if self.normals.is_empty() {
            let p = nnls_project(&self.generators, x);
            return (x - p).norm();
        }
        self.normals.iter().map(|n| -n.dot(x)).fold(0.0, f64::max)
    }

    pub fn project_in_place(&self, x: &mut Vector) -> Result<()> {
        if self.normals.is_empty() || self.violation(x) > 0.0 {
            if !self.facets.is_empty() {
                let p = self.project_3d(x);
                x.copy_from(&p);
            } else if self.generators.is_empty() {
                let p = dykstra_halfspaces(&self.normals, x, 1e-10, 100_000)?;
                x.copy_from(&p);
            } else {
                let p = nnls_project(&self.generators, x);
                x.copy_from(&p);
            }
        }
        Ok(())
    }

    /// Exact projection of a point outside a solid pointed cone in ℝ³.
    ///
    /// The projection lies in the relative interior of one face, so it is the nearest of
    /// the per-face candidates that land inside their face: 0, the ray projections, and
    /// the facet-plane projections falling between the facet's two rays.
    fn project_3d(&self, x: &Vector) -> Vector {
        let x = arr3(x);
        let xx = dot3(&x, &x);
        let mut best = [0.0; 3];
        let mut best_d = xx;
        for g in &self.rays3 {
            let t = dot3(g, &x);
            if t > 0.0 && xx - t * t < best_d {
                best_d = xx - t * t;
                best = [g[0] * t, g[1] * t, g[2] * t];
            }
        }
        for f in &self.facets {
            let s = dot3(&f.normal, &x);
            if s >= 0.0 || s * s >= best_d {
                continue;
            }
            let p = [
                x[0] - s * f.normal[0],
                x[1] - s * f.normal[1],
                x[2] - s * f.normal[2],
            ];
            let (pi, pj) = (dot3(&f.a, &p), dot3(&f.b, &p));
            if pi - f.cos * pj >= 0.0 && pj - f.cos * pi >= 0.0 {
                best_d = s * s;
                best = p;
            }
        }
        Vector::from_column_slice(&best)
    }

    /// True iff the generators span the whole space.
    pub fn is_generating(&self) -> bool {
        if self.generators.is_empty() {
            // Only normals known: solid iff some point strictly satisfies every inequality,
            // and summing unit normals of a pointed dual gives such a point.
            let e: Vector = self
                .normals
                .iter()
                .fold(Vector::zeros(self.dim), |a, n| a + n);
            return self.normals.iter().all(|n| n.dot(&e) > 1e-12);
        }
        rank(&self.generators, self.dim) == self.dim
    }

    /// True iff the cone contains no line.
    pub fn is_proper(&self) -> bool {
        if self.normals.is_empty() {
            // Pointed iff some functional is strictly positive on every generator.
            let e: Vector = self
                .generators
                .iter()
                .fold(Vector::zeros(self.dim), |a, g| a + g);
            return self.generators.iter().all(|g| g.dot(&e) > 1e-12);
        }
        rank(&self.normals, self.dim) == self.dim
    }
}

/// A facet of a cone in ℝ³: unit normal, its two unit boundary rays and their cosine.
#[derive(Debug, Clone, PartialEq)]
struct Facet3 {
    normal: [f64; 3],
    a: [f64; 3],
    b: [f64; 3],
    cos: f64,
}

fn arr3(v: &Vector) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Facets of a solid pointed cone in ℝ³: for each normal, the two generators on its
/// plane that are farthest apart. Empty unless both representations are complete.
fn facets_3d(generators: &[Vector], normals: &[Vector]) -> Vec<Facet3> {
    if generators.len() < 3 || normals.len() < 3 {
        return Vec::new();
    }
    let mut facets = Vec::with_capacity(normals.len());
    for n in normals {
        let on: Vec<usize> = (0..generators.len())
            .filter(|&i| n.dot(&generators[i]).abs() <= 1e-9)
            .collect();
        let mut pair = None;
        let mut widest = f64::INFINITY;
        for (k, &i) in on.iter().enumerate() {
            for &j in &on[k + 1..] {
                let c = generators[i].dot(&generators[j]);
                if c < widest {
                    widest = c;
                    pair = Some((i, j));
                }
            }
        }
        match pair {
            Some((i, j)) if widest < 1.0 - 1e-12 => facets.push(Facet3 {
                normal: arr3(n),
                a: arr3(&generators[i]),
                b: arr3(&generators[j]),
                cos: widest,
            }),
            // A normal touching fewer than two rays: the data is not a solid pointed cone.
            _ => return Vec::new(),
        }
    }
    facets
}

fn common_dim(vs: &[Vector]) -> Result<usize> {
    let first = vs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty list of vectors".into()))?;
    let dim = first.len();
    if dim == 0 {
        return Err(Error::InvalidArgument("zero-dimensional vectors".into()));
    }
    for v in vs {
        crate::error::check_dim(dim, v.len())?;
    }
    Ok(dim)
}

fn nonzero_unit(vs: Vec<Vector>) -> Vec<Vector> {
    vs.into_iter()
        .filter_map(|v| {
            let n = v.norm();
            (n > 0.0).then(|| v / n)
        })
        .collect()
}

pub(crate) fn rank(vs: &[Vector], dim: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let m = DMatrix::from_columns(vs);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    let r = sv.iter().filter(|&&s| s > 1e-10 * top.max(1e-300)).count();
    r.min(dim)
}

/// Null vector of `dim − 1` linearly independent rows via signed cofactors.
fn cofactor_normal(rows: &[&Vector], dim: usize) -> Vector {
    if dim == 1 {
        return Vector::from_element(1, 1.0);
    }
    let mut out = Vector::zeros(dim);
    for j in 0..dim {
        let minor = DMatrix::from_fn(dim - 1, dim - 1, |r, c| {
            let col = if c < j { c } else { c + 1 };
            rows[r][col]
        });
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        out[j] = sign * minor.determinant();
    }
    out
}

/// Extreme rays of the pointed cone `{x : ⟨a, x⟩ ≥ 0 for a in constraints}` for `dim ≤ 4`.
///
/// Each candidate is the line cut out by `dim − 1` constraints, kept when feasible.
pub(crate) fn extreme_rays(constraints: &[Vector], dim: usize) -> Result<Vec<Vector>> {
    if dim > MAX_ENUMERATION_DIM {
        return Err(Error::Unsupported(format!(
            "ray enumeration is limited to dimension {MAX_ENUMERATION_DIM}"
        )));
    }
    if rank(constraints, dim) < dim {
        return Err(Error::Unsupported(
            "cone with a lineality space (or a lower-dimensional dual)".into(),
        ));
    }
    let feasible = |r: &Vector| constraints.iter().all(|a| a.dot(r) >= -FEASIBILITY_SLACK);
    let mut rays: Vec<Vector> = Vec::new();
    let push = |r: Vector, rays: &mut Vec<Vector>| {
        if !rays.iter().any(|q| (q - &r).norm() < DUPLICATE_TOL) {
            rays.push(r);
        }
    };
    let mut idx: Vec<usize> = (0..dim - 1).collect();
    let m = constraints.len();
    if dim - 1 > m {
        return Err(Error::DegenerateCone);
    }
    loop {
        let rows: Vec<&Vector> = idx.iter().map(|&i| &constraints[i]).collect();
        let r = cofactor_normal(&rows, dim);
        let n = r.norm();
        if n > 1e-12 {
            let r = r / n;
            if feasible(&r) {
                push(r.clone(), &mut rays);
            }
            let neg = -r;
            if feasible(&neg) {
                push(neg, &mut rays);
            }
        }
        // next combination
        let k = dim - 1;
        if k == 0 {
            break;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    if rays.is_empty() {
        return Err(Error::DegenerateCone);
    }
    Ok(rays)
}

/// Lawson–Hanson nonnegative least squares: `argmin_{c ≥ 0} ‖A c − b‖₂`.
pub fn nnls(a: &DMatrix<f64>, b: &Vector) -> Vector {
    let (_, m) = a.shape();
    let mut x = Vector::zeros(m);
    let mut passive = vec![false; m];
    let scale = a
        .column_iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let tol = 1e-13 * scale * (1.0 + b.norm()) * (m as f64).sqrt();
    let mut w = a.tr_mul(&(b - a * &x));
    for _outer in 0..(3 * m + 10) {
        let pick = (0..m)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = pick else { break };
        passive[j] = true;
        for _inner in 0..(3 * m + 10) {
            let cols: Vec<usize> = (0..m).filter(|&i| passive[i]).collect();
            let s_p = least_squares(a, &cols, b);
            if s_p.iter().all(|&s| s > 0.0) {
                x.fill(0.0);
                for (k, &i) in cols.iter().enumerate() {
                    x[i] = s_p[k];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &i) in cols.iter().enumerate() {
                if s_p[k] <= 0.0 {
                    let denom = x[i] - s_p[k];
                    if denom > 0.0 {
                        alpha = alpha.min(x[i] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for (k, &i) in cols.iter().enumerate() {
                x[i] += alpha * (s_p[k] - x[i]);
                if x[i] <= 1e-15 * (1.0 + x[i].abs()) || s_p[k] <= 0.0 && alpha == 0.0 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
        }
        w = a.tr_mul(&(b - a * &x));
    }
    x
}

fn least_squares(a: &DMatrix<f64>, cols: &[usize], b: &Vector) -> Vector {
    let sub = a.select_columns(cols);
    if cols.len() == 1 {
        let c = sub.column(0);
        return Vector::from_element(1, c.dot(b) / c.norm_squared());
    }
    let svd = sub.svd(true, true);
    svd.solve(b, 1e-14)
        .unwrap_or_else(|_| Vector::zeros(cols.len()))
}

/// Euclidean projection onto `cone(generators)` via NNLS.
pub fn nnls_project(generators: &[Vector], x: &Vector) -> Vector {
    let a = DMatrix::from_columns(generators);
    let c = nnls(&a, x);
    a * c
}

/// Dykstra's alternating projections onto `{⟨n, x⟩ ≥ 0}` for each normal.
pub fn dykstra_halfspaces(
    normals: &[Vector],
    x0: &Vector,
    tol: f64,
    max_iter: usize,
) -> Result<Vector> {
    let mut x = x0.clone();
    let mut incr: Vec<Vector> = vec![Vector::zeros(x0.len()); normals.len()];
    let mut change = f64::INFINITY;
    for _ in 0..max_iter {
        let prev = x.clone();
        for (n, q) in normals.iter().zip(incr.iter_mut()) {
            let y = &x + &*q;
            let s = n.dot(&y);
            let nn = n.norm_squared();
            x = if s < 0.0 {
                &y - n * (s / nn)
            } else {
                y.clone()
            };
            *q = y - &x;
        }
        change = (&x - prev).norm();
        if change <= tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        what: "Dykstra projection",
        iterations: max_iter,
        residual: change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    fn four_rays() -> Vec<Vector> {
        vec![
            v(&[1.0, 1.0, 1.0]),
            v(&[1.0, -1.0, 1.0]),
            v(&[-1.0, -1.0, 1.0]),
            v(&[-1.0, 1.0, 1.0]),
        ]
    }

    #[test]
    fn face_projection_in_r3_matches_nnls() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        // A polygon over 40 points of a circle and the four-ray cone.
        let ring: Vec<Vector> = (0..40)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 40.0;
                v(&[a.cos(), a.sin(), 1.5])
            })
            .collect();
        for gens in [four_rays(), ring] {
            let c = Polyhedral::from_generators(gens).unwrap();
            assert!(!c.facets.is_empty() && !c.rays3.is_empty());
            for _ in 0..500 {
                let x = v(&[
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                    rng.gen_range(-3.0..3.0),
                ]);
                let mut p = x.clone();
                c.project_in_place(&mut p).unwrap();
                let q = nnls_project(c.generators(), &x);
                assert!((&p - &q).norm() < 1e-9 * (1.0 + x.norm()), "{x} {p} {q}");
            }
        }
    }

    #[test]
    fn pyramid_facets_are_the_four_expected_planes() {
        let c = Polyhedral::from_generators(four_rays()).unwrap();
        assert_eq!(c.normals().len(), 4);
        let s = 1.0 / 2f64.sqrt();
        for want in [[s, 0.0, s], [-s, 0.0, s], [0.0, s, s], [0.0, -s, s]] {
            assert!(
                c.normals().iter().any(|n| (n - v(&want)).norm() < 1e-12),
                "{want:?}"
            );
        }
        assert!(c.is_proper() && c.is_generating());
    }

    #[test]
    fn membership_of_axis_and_outside_point() {
        let c = Polyhedral::from_generators(four_rays()).unwrap();
        assert_eq!(c.violation(&v(&[0.0, 0.0, 1.0])), 0.0);
        assert!(c.violation(&v(&[2.0, 0.0, 1.0])) > 0.5);
    }

    #[test]
    fn normals_to_generators_round_trip() {
        let c = Polyhedral::from_generators(four_rays()).unwrap();
        let back = Polyhedral::from_normals(c.normals().to_vec()).unwrap();
        assert_eq!(back.generators().len(), 4);
        for g in c.generators() {
            assert!(back.generators().iter().any(|h| (h - g).norm() < 1e-12));
        }
    }

    #[test]
    fn orthant_rays_from_coordinate_normals() {
        let normals = (0..3)
            .map(|i| Vector::from_fn(3, |j, _| f64::from(i == j)))
            .collect();
        let c = Polyhedral::from_normals(normals).unwrap();
        assert_eq!(c.generators().len(), 3);
    }

    #[test]
    fn half_space_is_rejected_for_enumeration() {
        let r = Polyhedral::from_normals(vec![v(&[0.0, 0.0, 1.0])]);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }

    #[test]
    fn nnls_matches_hand_solution() {
        // b = 2 a1 + 0 a2 exactly; the second column would need a negative weight.
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let x = nnls(&a, &v(&[2.0, -1.0]));
        // Projection of (2,-1) onto cone{(1,0),(1,1)} is (2,0).
        assert!((x[0] - 2.0).abs() < 1e-12 && x[1].abs() < 1e-12);
    }

    #[test]
    fn nnls_and_dykstra_agree_on_pyramid() {
        let c = Polyhedral::from_generators(four_rays()).unwrap();
        for x in [
            v(&[3.0, 0.2, 0.5]),
            v(&[-1.0, 2.0, -0.3]),
            v(&[0.1, 0.1, -4.0]),
        ] {
            let a = nnls_project(c.generators(), &x);
            let b = dykstra_halfspaces(c.normals(), &x, 1e-13, 200_000).unwrap();
            assert!((a - b).norm() < 1e-9);
        }
    }
}
