//! Ordered spaces: a cone, an ℓp norm and derived flags.

use serde::{Deserialize, Serialize};

use super::cone::{Cone, PolyNonneg, DEFAULT_POLY_GRID};
use super::norm::NormSpec;
use super::polyhedral::Polyhedral;
use crate::error::{check_dim, Error, Result};
use crate::Vector;

/// Default absolute slack on the defining cone inequalities.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// `ℝⁿ` ordered by a closed cone and normed by an ℓp norm.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedSpace {
    cone: Cone,
    norm: NormSpec,
    monotone_hint: Option<bool>,
}

impl OrderedSpace {
    pub fn new(cone: Cone, norm: NormSpec) -> Self {
        // The orthant is monotone for every ℓp norm; the Lorentz cone and its subcones for ℓ2.
        // Under ℓ2, 0 ≤ (0,−1,1) ≤ (0,0,1) in the polynomial cone but ‖(0,−1,1)‖ = √2.
        let monotone_hint = match &cone {
            Cone::Standard { .. } => Some(true),
            Cone::Lorentz { .. } | Cone::HalfLorentz { .. } if norm.is_euclidean() => Some(true),
            Cone::PolyNonneg(_) if norm.is_euclidean() => Some(false),
            _ => None,
        };
        OrderedSpace {
            cone,
            norm,
            monotone_hint,
        }
    }

    pub fn with_monotone_hint(mut self, hint: Option<bool>) -> Self {
        self.monotone_hint = hint;
        self
    }

    /// `ℝⁿ` with the Lorentz cone around `e₁` and the Euclidean norm.
    pub fn lorentz(dim: usize) -> Result<Self> {
        Ok(Self::new(Cone::lorentz_e1(dim)?, NormSpec::l2()))
    }

    /// `ℝⁿ` with the nonnegative orthant and the given norm.
    pub fn standard(dim: usize, norm: NormSpec) -> Result<Self> {
        Ok(Self::new(Cone::standard(dim)?, norm))
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn norm_spec(&self) -> NormSpec {
        self.norm
    }

    pub fn norm(&self, x: &Vector) -> f64 {
        self.norm.norm(x)
    }

    pub fn is_proper(&self) -> bool {
        self.cone.is_proper()
    }

    pub fn is_generating(&self) -> bool {
        self.cone.is_generating()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.norm.is_strictly_convex()
    }

    pub fn is_smooth(&self) -> bool {
        self.norm.is_smooth()
    }

    pub fn monotone_hint(&self) -> Option<bool> {
        self.monotone_hint
    }

    /// Same coordinates, dual exponent, dual cone.
    pub fn dual(&self) -> Result<OrderedSpace> {
        Ok(OrderedSpace::new(self.cone.dual()?, self.norm.dual()))
    }

    pub fn check(&self, x: &Vector) -> Result<()> {
        check_dim(self.dim(), x.len())
    }

    /// `x ≤ y`, i.e. `y − x` lies in the cone up to slack `tol`.
    pub fn leq(&self, x: &Vector, y: &Vector, tol: f64) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        self.cone.contains(&(y - x), tol)
    }

    /// Violation of `x ≤ y`.
    pub fn leq_violation(&self, x: &Vector, y: &Vector) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        self.cone.violation(&(y - x))
    }

    /// Some common upper bound of `x` and `y`.
    ///
    /// The orthant uses the coordinatewise maximum; other cones shift `x` along an
    /// interior order unit by the least amount that also dominates `y`.
    pub fn upper_bound_any(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check(x)?;
        self.check(y)?;
        if let Cone::Standard { .. } = self.cone {
            return Ok(x.zip_map(y, f64::max));
        }
        if !self.cone.is_generating() {
            return Err(Error::NotGenerating);
        }
        let e = self.cone.order_unit()?;
        let lam = self.cone.shift_into(&(x - y))?;
        Ok(x + e * lam)
    }
}

/// Cone descriptor as it appears in JSON files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConeJson {
    Standard,
    Lorentz {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        axis: Option<Vec<f64>>,
    },
    HalfLorentz {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        axis: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        half: Option<Vec<f64>>,
    },
    Polyhedral {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normals: Option<Vec<Vec<f64>>>,
    },
    Polynonneg {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid_points: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<Vec<f64>>,
    },
    WeightedLorentz {
        weights: Vec<f64>,
    },
    Dual {
        of: Box<ConeJson>,
    },
}

/// Space descriptor: `{"dim": n, "norm": {"p": …}, "cone": {"kind": …}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    pub dim: usize,
    pub norm: NormSpec,
    pub cone: ConeJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monotone_hint: Option<bool>,
}

fn vecs(rows: Vec<Vec<f64>>) -> Vec<Vector> {
    rows.into_iter().map(Vector::from_vec).collect()
}

fn axis_or(dim: usize, axis: Option<Vec<f64>>, default: usize) -> Result<Vector> {
    match axis {
        Some(a) => {
            check_dim(dim, a.len())?;
            Ok(Vector::from_vec(a))
        }
        None if default < dim => Ok(super::cone::basis(dim, default)),
        None => Err(Error::Schema(
            "dimension too small for the default axis".into(),
        )),
    }
}

impl ConeJson {
    fn build(self, dim: usize) -> Result<Cone> {
        let cone = match self {
            ConeJson::Standard => Cone::standard(dim)?,
            ConeJson::Lorentz { axis } => Cone::lorentz(axis_or(dim, axis, 0)?)?,
            ConeJson::HalfLorentz { axis, half } => {
                Cone::half_lorentz(axis_or(dim, axis, 0)?, axis_or(dim, half, 1)?)?
            }
            ConeJson::Polyhedral {
                generators,
                normals,
            } => Cone::Polyhedral(match (generators, normals) {
                (Some(g), Some(n)) => Polyhedral::from_both(vecs(g), vecs(n))?,
                (Some(g), None) => Polyhedral::from_generators(vecs(g))?,
                (None, Some(n)) => Polyhedral::from_normals(vecs(n))?,
                (None, None) => {
                    return Err(Error::Schema(
                        "polyhedral cone needs generators or normals".into(),
                    ))
                }
            }),
            ConeJson::Polynonneg { grid_points, grid } => Cone::PolyNonneg(match grid {
                Some(g) => PolyNonneg::with_grid(g)?,
                None => PolyNonneg::chebyshev(grid_points.unwrap_or(DEFAULT_POLY_GRID))?,
            }),
            ConeJson::WeightedLorentz { weights } => {
                Cone::weighted_lorentz(Vector::from_vec(weights))?
            }
            ConeJson::Dual { of } => Cone::Dual(Box::new(of.build(dim)?)),
        };
        check_dim(dim, cone.dim())?;
        Ok(cone)
    }

    fn describe(cone: &Cone) -> ConeJson {
        let rows = |vs: &[Vector]| -> Option<Vec<Vec<f64>>> {
            (!vs.is_empty()).then(|| vs.iter().map(|v| v.as_slice().to_vec()).collect())
        };
        match cone {
            Cone::Standard { .. } => ConeJson::Standard,
            Cone::Lorentz { axis } => ConeJson::Lorentz {
                axis: Some(axis.as_slice().to_vec()),
            },
            Cone::HalfLorentz { axis, half } => ConeJson::HalfLorentz {
                axis: Some(axis.as_slice().to_vec()),
                half: Some(half.as_slice().to_vec()),
            },
            Cone::Polyhedral(p) => ConeJson::Polyhedral {
                generators: rows(p.generators()),
                normals: rows(p.normals()),
            },
            Cone::PolyNonneg(p) => ConeJson::Polynonneg {
                grid_points: None,
                grid: Some(p.grid().to_vec()),
            },
            Cone::WeightedLorentz { weights } => ConeJson::WeightedLorentz {
                weights: weights.as_slice().to_vec(),
            },
            Cone::Dual(inner) => ConeJson::Dual {
                of: Box::new(Self::describe(inner)),
            },
        }
    }
}

impl TryFrom<SpaceJson> for OrderedSpace {
    type Error = Error;

    fn try_from(s: SpaceJson) -> Result<Self> {
        if s.dim == 0 {
            return Err(Error::Schema("dim must be positive".into()));
        }
        let cone = s.cone.build(s.dim)?;
        let space = OrderedSpace::new(cone, s.norm);
        Ok(match s.monotone_hint {
            Some(h) => space.with_monotone_hint(Some(h)),
            None => space,
        })
    }
}

impl From<&OrderedSpace> for SpaceJson {
    fn from(s: &OrderedSpace) -> Self {
        SpaceJson {
            dim: s.dim(),
            norm: s.norm,
            cone: ConeJson::describe(&s.cone),
            monotone_hint: s.monotone_hint,
        }
    }
}

impl Serialize for OrderedSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SpaceJson::deserialize(d)?;
        OrderedSpace::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn order_examples() {
        let l = OrderedSpace::lorentz(3).unwrap();
        let x = v(&[0.3, -1.0, 2.0]);
        assert!(l.leq(&x, &x, 0.0).unwrap());
        assert!(l
            .leq(&v(&[0.0, 0.0, 0.0]), &v(&[1.0, 0.0, 1.0]), 0.0)
            .unwrap());
        let s = OrderedSpace::standard(3, NormSpec::l2()).unwrap();
        assert!(!s
            .leq(&v(&[1.0, 0.0, 0.0]), &v(&[0.0, 0.0, 0.0]), 0.0)
            .unwrap());
    }

    #[test]
    fn upper_bounds_per_family() {
        let s = OrderedSpace::standard(3, NormSpec::l2()).unwrap();
        assert_eq!(
            s.upper_bound_any(&v(&[1.0, -1.0, 0.0]), &v(&[0.0, 0.0, 0.0]))
                .unwrap(),
            v(&[1.0, 0.0, 0.0])
        );

        let l = OrderedSpace::lorentz(3).unwrap();
        let (x, y) = (v(&[0.0, 0.0, 0.0]), v(&[0.0, 0.0, 2.0]));
        let z = l.upper_bound_any(&x, &y).unwrap();
        assert!(l.leq(&x, &z, 1e-12).unwrap() && l.leq(&y, &z, 1e-12).unwrap());

        let p = OrderedSpace::new(
            Cone::poly_nonneg(DEFAULT_POLY_GRID).unwrap(),
            NormSpec::l2(),
        );
        let (x, y) = (v(&[0.0, 1.0, 0.0]), v(&[0.0, -1.0, 1.0]));
        let z = p.upper_bound_any(&x, &y).unwrap();
        assert_eq!((z[0], z[1]), (0.0, 1.0));
        assert!(p.leq(&x, &z, 1e-12).unwrap() && p.leq(&y, &z, 1e-12).unwrap());
    }

    #[test]
    fn non_generating_cone_has_no_upper_bound() {
        let flat = Cone::polyhedral_from_generators(vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])]);
        // Generators spanning a plane cannot be enumerated into facets.
        assert!(flat.is_err());
        let ray = OrderedSpace::new(
            Cone::Dual(Box::new(Cone::Polyhedral(
                Polyhedral::from_both(
                    vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0])],
                    vec![v(&[0.0, 1.0])],
                )
                .unwrap(),
            ))),
            NormSpec::l2(),
        );
        assert!(!ray.is_generating());
        assert_eq!(
            ray.upper_bound_any(&v(&[0.0, 0.0]), &v(&[1.0, 0.0])),
            Err(Error::NotGenerating)
        );
    }

    #[test]
    fn flags() {
        let s = OrderedSpace::standard(2, NormSpec::linf()).unwrap();
        assert!(s.is_proper() && s.is_generating() && !s.is_strictly_convex() && !s.is_smooth());
        assert_eq!(s.monotone_hint(), Some(true));
    }

    #[test]
    fn json_descriptor_round_trip() {
        let text = r#"{"dim":3,"norm":{"p":2},"cone":{"kind":"half_lorentz"}}"#;
        let s: OrderedSpace = serde_json::from_str(text).unwrap();
        assert!(matches!(s.cone(), Cone::HalfLorentz { .. }));
        let again: OrderedSpace =
            serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(again, s);

        let poly = r#"{"dim":3,"norm":{"p":"inf"},"cone":{"kind":"polyhedral","generators":[[1,1,1],[1,-1,1],[-1,-1,1],[-1,1,1]]}}"#;
        let p: OrderedSpace = serde_json::from_str(poly).unwrap();
        assert!(p.norm_spec().is_infinite());

        for bad in [
            r#"{"dim":3,"norm":{"p":2},"cone":{"kind":"nope"}}"#,
            r#"{"dim":2,"norm":{"p":2},"cone":{"kind":"polynonneg"}}"#,
            r#"{"dim":3,"norm":{"p":2},"cone":{"kind":"lorentz","axis":[1,0]}}"#,
            r#"{"dim":3,"norm":{"p":2},"cone":{"kind":"standard"},"extra":1}"#,
        ] {
            assert!(serde_json::from_str::<OrderedSpace>(bad).is_err(), "{bad}");
        }
    }
}
