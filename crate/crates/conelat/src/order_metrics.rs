//! Sampled evidence for normality, conormality and regularity.
//!
//! Normality checks look for counterexamples on samples whose order preconditions hold
//! by construction. Conormality is measured by solving the optimal decomposition problem
//! for each sampled direction; the largest achieved ratio is a lower bound for the best
//! constant. Nothing here proves a property; a reported failure carries a witness.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling;
use crate::solver::splitting::{consensus_dr, Block, DrSettings};
use crate::solver::{lift_above, quasi_sup, SolverOptions, Status};
use crate::spaces::OrderedSpace;
use crate::Vector;

/// The eight normality and conormality properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyKind {
    /// `z ≤ x ≤ y ⇒ ‖x‖ ≤ α·max(‖y‖, ‖z‖)`
    MaxNormal,
    /// `z ≤ x ≤ y ⇒ ‖x‖ ≤ α·(‖y‖ + ‖z‖)`
    SumNormal,
    /// `±x ≤ y ⇒ ‖x‖ ≤ α‖y‖`
    AbsNormal,
    /// `0 ≤ x ≤ y ⇒ ‖x‖ ≤ α‖y‖`
    Normal,
    /// `x = a − b`, `a, b ≥ 0`, `‖a‖ + ‖b‖ ≤ α‖x‖`
    SumConormal,
    /// `x = a − b`, `a, b ≥ 0`, `max(‖a‖, ‖b‖) ≤ α‖x‖`
    MaxConormal,
    /// `±x ≤ a`, `‖a‖ ≤ α‖x‖`
    AbsConormal,
    /// `0, x ≤ a`, `‖a‖ ≤ α‖x‖`
    Conormal,
}

impl PropertyKind {
    pub const ALL: [PropertyKind; 8] = [
        PropertyKind::MaxNormal,
        PropertyKind::SumNormal,
        PropertyKind::AbsNormal,
        PropertyKind::Normal,
        PropertyKind::SumConormal,
        PropertyKind::MaxConormal,
        PropertyKind::AbsConormal,
        PropertyKind::Conormal,
    ];

    pub fn is_conormal(self) -> bool {
        matches!(
            self,
            PropertyKind::SumConormal
                | PropertyKind::MaxConormal
                | PropertyKind::AbsConormal
                | PropertyKind::Conormal
        )
    }

    /// The property of the dual space equivalent to this one.
    pub fn dual(self) -> PropertyKind {
        use PropertyKind::*;
        match self {
            MaxNormal => SumConormal,
            SumNormal => MaxConormal,
            AbsNormal => AbsConormal,
            Normal => Conormal,
            SumConormal => MaxNormal,
            MaxConormal => SumNormal,
            AbsConormal => AbsNormal,
            Conormal => Normal,
        }
    }

    pub fn name(self) -> &'static str {
        use PropertyKind::*;
        match self {
            MaxNormal => "max-normal",
            SumNormal => "sum-normal",
            AbsNormal => "abs-normal",
            Normal => "normal",
            SumConormal => "sum-conormal",
            MaxConormal => "max-conormal",
            AbsConormal => "abs-conormal",
            Conormal => "conormal",
        }
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown flavor {s:?}")))
    }
}

/// A property at a given constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropertyFlavor {
    pub kind: PropertyKind,
    pub alpha: f64,
    /// Allow `+ε` slack; only meaningful for conormal kinds.
    pub approximate: bool,
}

impl PropertyFlavor {
    pub fn new(kind: PropertyKind, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(PropertyFlavor {
            kind,
            alpha,
            approximate: kind.is_conormal(),
        })
    }
}

/// One sampled order configuration: `z ≤ x ≤ y` for max/sum kinds, otherwise a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderSample {
    pub z: Option<Vector>,
    pub x: Vector,
    pub y: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnSample,
    CounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub flavor: PropertyFlavor,
    pub verdict: Verdict,
    /// `[z, x, y]` or `[x, y]` of the worst violation.
    pub witness: Option<Vec<Vec<f64>>>,
    /// Largest observed ratio of `‖x‖` to the bound it must respect.
    pub alpha_lower_bound: f64,
    pub checked: usize,
    /// Samples dropped because their order precondition failed.
    pub filtered: usize,
}

/// `‖x‖` divided by the right-hand side of the normality inequality, or `None` if the
/// order precondition fails by more than `tol`.
pub fn normality_ratio(
    space: &OrderedSpace,
    kind: PropertyKind,
    s: &OrderSample,
    tol: f64,
) -> Result<Option<f64>> {
    let nx = space.norm(&s.x);
    let (ok, rhs) = match kind {
        PropertyKind::MaxNormal | PropertyKind::SumNormal => {
            let Some(z) = &s.z else { return Ok(None) };
            let ok = space.leq(z, &s.x, tol)? && space.leq(&s.x, &s.y, tol)?;
            let (ny, nz) = (space.norm(&s.y), space.norm(z));
            (
                ok,
                if kind == PropertyKind::MaxNormal {
                    ny.max(nz)
                } else {
                    ny + nz
                },
            )
        }
        PropertyKind::AbsNormal => {
            let ok = space.leq(&s.x, &s.y, tol)? && space.leq(&(-&s.x), &s.y, tol)?;
            (ok, space.norm(&s.y))
        }
        PropertyKind::Normal => {
            let ok = space.cone().contains(&s.x, tol)? && space.leq(&s.x, &s.y, tol)?;
            (ok, space.norm(&s.y))
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{kind} is not a normality property"
            )))
        }
    };
    if !ok {
        return Ok(None);
    }
    Ok(Some(if rhs > 0.0 {
        nx / rhs
    } else if nx > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }))
}

/// Evaluates a normality property on every qualifying sample.
///
/// A sample violates the property when `‖x‖ > α·bound + tol`.
pub fn normality_check(
    space: &OrderedSpace,
    flavor: PropertyFlavor,
    sample: &[OrderSample],
    tol: f64,
) -> Result<NormalityReport> {
    if flavor.kind.is_conormal() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a normality property",
            flavor.kind
        )));
    }
    let mut worst: Option<(f64, &OrderSample)> = None;
    let mut violated = false;
    let (mut checked, mut filtered) = (0, 0);
    for s in sample {
        let Some(r) = normality_ratio(space, flavor.kind, s, tol)? else {
            filtered += 1;
            continue;
        };
        checked += 1;
        let nx = space.norm(&s.x);
        let bound = if r > 0.0 && r.is_finite() {
            nx / r
        } else {
            0.0
        };
        if nx > flavor.alpha * bound + tol {
            violated = true;
        }
        if worst.map_or(true, |(w, _)| r > w) {
            worst = Some((r, s));
        }
    }
    let Some((ratio, w)) = worst else {
        return Err(Error::EmptySample);
    };
    let witness = violated.then(|| {
        let mut v = Vec::new();
        if let Some(z) = &w.z {
            v.push(z.as_slice().to_vec());
        }
        v.push(w.x.as_slice().to_vec());
        v.push(w.y.as_slice().to_vec());
        v
    });
    Ok(NormalityReport {
        flavor,
        verdict: if violated {
            Verdict::CounterexampleFound
        } else {
            Verdict::HoldsOnSample
        },
        witness,
        alpha_lower_bound: ratio,
        checked,
        filtered,
    })
}

/// `n` samples for a normality kind, one RNG stream per index.
pub fn normality_sample(
    space: &OrderedSpace,
    kind: PropertyKind,
    n: usize,
    seed: u64,
) -> Result<Vec<OrderSample>> {
    (0..n)
        .map(|k| {
            let mut rng = sampling::stream(seed, k as u64);
            Ok(match kind {
                PropertyKind::MaxNormal | PropertyKind::SumNormal => {
                    let (z, x, y) = sampling::order_triple(space, &mut rng)?;
                    OrderSample { z: Some(z), x, y }
                }
                PropertyKind::AbsNormal => {
                    let (x, y) = sampling::abs_pair(space, &mut rng)?;
                    OrderSample { z: None, x, y }
                }
                PropertyKind::Normal => {
                    let (x, y) = sampling::normal_pair(space, &mut rng)?;
                    OrderSample { z: None, x, y }
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "{other} is not a normality property"
                    )))
                }
            })
        })
        .collect()
}

/// An optimal decomposition of `x` for a conormal kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// The dominating positive element.
    pub a: Vector,
    /// `a − x` for the sum, max and plain kinds.
    pub b: Option<Vector>,
    /// Achieved left-hand side over `‖x‖`; zero for `x = 0`.
    pub ratio: f64,
    pub converged: bool,
}

const GOLDEN_STEPS: usize = 30;

/// Solves the decomposition problem of a conormal kind for one `x`.
///
/// Sum: `min ‖a‖ + ‖a − x‖` over `a ≥ 0, x`, which is `0 ∨̃ x`. Plain: `min ‖a‖` over the
/// same set. Absolute: `min ‖a‖` over `a ≥ ±x`. Max: `min max(‖a‖, ‖a − x‖)`, through
/// golden-section search on the weight of the scalarized problem, keeping the best
/// achieved maximum.
pub fn conormality_solve(
    space: &OrderedSpace,
    kind: PropertyKind,
    x: &Vector,
    opts: &SolverOptions,
) -> Result<Decomposition> {
    space.check(x)?;
    opts.validate()?;
    let nx = space.norm(x);
    let n = x.len();
    let zero = Vector::zeros(n);
    if nx == 0.0 {
        let b = (kind != PropertyKind::AbsConormal).then(|| zero.clone());
        return Ok(Decomposition {
            a: zero,
            b,
            ratio: 0.0,
            converged: true,
        });
    }
    let norm = space.norm_spec();
    let cone = space.cone();
    let settings = DrSettings {
        tol_primal: opts.tol_primal,
        tol_obj: opts.tol_obj,
        max_iter: opts.max_iter,
    };
    let neg_x = -x;
    match kind {
        PropertyKind::SumConormal => {
            let r = quasi_sup(space, &zero, x, opts)?;
            if r.status == Status::Infeasible {
                return Err(Error::NotGenerating);
            }
            let b = &r.z - x;
            let ratio = (space.norm(&r.z) + space.norm(&b)) / nx;
            Ok(Decomposition {
                a: r.z,
                b: Some(b),
                ratio,
                converged: r.status != Status::MaxIter,
            })
        }
        PropertyKind::Conormal | PropertyKind::AbsConormal => {
            let other = if kind == PropertyKind::Conormal {
                &zero
            } else {
                &neg_x
            };
            let start = space.upper_bound_any(x, other)?;
            let blocks = [
                Block::Distance {
                    center: &zero,
                    norm,
                    weight: 1.0,
                },
                Block::Above { base: x, cone },
                Block::Above { base: other, cone },
            ];
            let out = consensus_dr(&blocks, &start, settings, |a| norm.norm(a))?;
            let a = lift_above(space, &[x, other], &out.z)?;
            let ratio = space.norm(&a) / nx;
            let b = (kind == PropertyKind::Conormal).then(|| &a - x);
            Ok(Decomposition {
                a,
                b,
                ratio,
                converged: out.converged,
            })
        }
        PropertyKind::MaxConormal => {
            let start = space.upper_bound_any(x, &zero)?;
            let mut best: Option<(f64, Vector)> = None;
            let mut converged = true;
            // g(λ) = min_a λ‖a‖ + (1−λ)‖a − x‖ is concave; its maximum equals the minimax value.
            let mut solve = |lam: f64| -> Result<f64> {
                let blocks = [
                    Block::Distance {
                        center: &zero,
                        norm,
                        weight: lam,
                    },
                    Block::Distance {
                        center: x,
                        norm,
                        weight: 1.0 - lam,
                    },
                    Block::Above { base: x, cone },
                    Block::Above { base: &zero, cone },
                ];
                let obj = |a: &Vector| lam * norm.norm(a) + (1.0 - lam) * norm.dist(a, x);
                let out = consensus_dr(&blocks, &start, settings, obj)?;
                converged &= out.converged;
                let a = lift_above(space, &[x, &zero], &out.z)?;
                let m = space.norm(&a).max(norm.dist(&a, x));
                if best.as_ref().map_or(true, |(v, _)| m < *v) {
                    best = Some((m, a.clone()));
                }
                Ok(obj(&a))
            };
            let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
            let (mut lo, mut hi) = (0.0, 1.0);
            let mut c = hi - inv_phi * (hi - lo);
            let mut d = lo + inv_phi * (hi - lo);
            let mut gc = solve(c)?;
            let mut gd = solve(d)?;
            for _ in 0..GOLDEN_STEPS {
                if gc > gd {
                    hi = d;
                    d = c;
                    gd = gc;
                    c = hi - inv_phi * (hi - lo);
                    gc = solve(c)?;
                } else {
                    lo = c;
                    c = d;
                    gc = gd;
                    d = lo + inv_phi * (hi - lo);
                    gd = solve(d)?;
                }
            }
            let (m, a) = best.expect("at least one solve");
            let b = &a - x;
            Ok(Decomposition {
                a,
                b: Some(b),
                ratio: m / nx,
                converged,
            })
        }
        other => Err(Error::InvalidArgument(format!(
            "{other} is not a conormality property"
        ))),
    }
}

/// Largest achieved decomposition ratio over `n_samples` random unit vectors.
///
/// Each ratio is exact up to solver accuracy, so the maximum is a lower bound for the
/// best constant of the property.
pub fn conormality_constant_estimate(
    space: &OrderedSpace,
    kind: PropertyKind,
    n_samples: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<f64> {
    if !kind.is_conormal() {
        return Err(Error::InvalidArgument(format!(
            "{kind} is not a conormality property"
        )));
    }
    let mut worst = 0.0f64;
    for k in 0..n_samples {
        let mut rng = sampling::stream(seed, k as u64);
        let u = sampling::unit_vector(&mut rng, space.dim());
        let x = &u / space.norm(&u);
        worst = worst.max(conormality_solve(space, kind, &x, opts)?.ratio);
    }
    Ok(worst)
}

/// The five regularity notions, each a normality property paired with a conormality one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityKind {
    EllisGrosbergKrein,
    BattyRobinson,
    AbsolutelyDaviesNg,
    DaviesNg,
    /// Generating cone plus max-normality; checked at the requested constant.
    Ando,
}

impl RegularityKind {
    pub const ALL: [RegularityKind; 5] = [
        RegularityKind::EllisGrosbergKrein,
        RegularityKind::BattyRobinson,
        RegularityKind::AbsolutelyDaviesNg,
        RegularityKind::DaviesNg,
        RegularityKind::Ando,
    ];

    /// The paired normality and conormality kinds; Andô pairs max-normality with generation.
    pub fn parts(self) -> (PropertyKind, Option<PropertyKind>) {
        use PropertyKind::*;
        match self {
            RegularityKind::EllisGrosbergKrein => (MaxNormal, Some(SumConormal)),
            RegularityKind::BattyRobinson => (SumNormal, Some(MaxConormal)),
            RegularityKind::AbsolutelyDaviesNg => (AbsNormal, Some(AbsConormal)),
            RegularityKind::DaviesNg => (Normal, Some(Conormal)),
            RegularityKind::Ando => (MaxNormal, None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityRecord {
    pub kind: RegularityKind,
    pub holds: bool,
    pub normality_ratio: f64,
    /// `None` when skipped because normality already failed, or for Andô.
    pub conormality_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub alpha: f64,
    pub seed: u64,
    pub normality_samples: usize,
    pub conormality_samples: usize,
    pub generating: bool,
    pub kinds: Vec<RegularityRecord>,
}

/// Conormality estimates use at most this many directions; each needs a convex solve.
pub const CONORMAL_SAMPLE_CAP: usize = 200;

/// Slack on the conormal constant standing in for the `+ε` of the approximate flavors.
pub const APPROXIMATE_SLACK: f64 = 1e-6;

/// Which regularity notions hold at level `alpha` on samples.
pub fn regularity_classify(
    space: &OrderedSpace,
    alpha: f64,
    n_samples: usize,
    seed: u64,
) -> Result<RegularityReport> {
    let opts = SolverOptions::default().with_seed(seed);
    let n_conormal = n_samples.min(CONORMAL_SAMPLE_CAP);
    let mut normal_cache: Vec<(PropertyKind, f64, bool)> = Vec::new();
    let mut conormal_cache: Vec<(PropertyKind, f64)> = Vec::new();
    let generating = space.is_generating();
    let mut kinds = Vec::new();
    for kind in RegularityKind::ALL {
        let (nk, ck) = kind.parts();
        let (n_ratio, n_holds) = match normal_cache.iter().find(|c| c.0 == nk) {
            Some(c) => (c.1, c.2),
            None => {
                let sample = normality_sample(space, nk, n_samples, seed)?;
                let r = normality_check(space, PropertyFlavor::new(nk, alpha)?, &sample, 1e-9)?;
                let v = (r.alpha_lower_bound, r.verdict == Verdict::HoldsOnSample);
                normal_cache.push((nk, v.0, v.1));
                v
            }
        };
        let (holds, c_ratio) = match ck {
            None => (generating && n_holds, None),
            Some(_) if !n_holds || !generating => (false, None),
            Some(ck) => {
                let c = match conormal_cache.iter().find(|c| c.0 == ck) {
                    Some(c) => c.1,
                    None => {
                        let c = conormality_constant_estimate(space, ck, n_conormal, seed, &opts)?;
                        conormal_cache.push((ck, c));
                        c
                    }
                };
                (c <= alpha + APPROXIMATE_SLACK * (1.0 + alpha), Some(c))
            }
        };
        kinds.push(RegularityRecord {
            kind,
            holds,
            normality_ratio: n_ratio,
            conormality_ratio: c_ratio,
        });
    }
    Ok(RegularityReport {
        alpha,
        seed,
        normality_samples: n_samples,
        conormality_samples: n_conormal,
        generating,
        kinds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualSpotcheck {
    pub kind: PropertyKind,
    pub dual_kind: PropertyKind,
    pub alpha: f64,
    /// Whether the property held on the space's samples.
    pub primal_holds: bool,
    pub primal_ratio: f64,
    /// Whether the paired property held on the dual space's samples.
    pub dual_holds: bool,
    pub dual_ratio: f64,
    pub agree: bool,
}

fn holds_at(
    space: &OrderedSpace,
    kind: PropertyKind,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<(bool, f64)> {
    if kind.is_conormal() {
        let opts = SolverOptions::default().with_seed(seed);
        let c =
            conormality_constant_estimate(space, kind, n.min(CONORMAL_SAMPLE_CAP), seed, &opts)?;
        Ok((c <= alpha + APPROXIMATE_SLACK * (1.0 + alpha), c))
    } else {
        let sample = normality_sample(space, kind, n, seed)?;
        let r = normality_check(space, PropertyFlavor::new(kind, alpha)?, &sample, 1e-9)?;
        Ok((r.verdict == Verdict::HoldsOnSample, r.alpha_lower_bound))
    }
}

/// Compares a property of the space with its dual counterpart on the dual space.
///
/// The dual space carries the dual exponent and the dual cone; a normality property at
/// `α` corresponds to the paired approximate conormality property at `α` and back.
pub fn dual_normality_spotcheck(
    space: &OrderedSpace,
    kind: PropertyKind,
    alpha: f64,
    n_samples: usize,
    seed: u64,
) -> Result<DualSpotcheck> {
    PropertyFlavor::new(kind, alpha)?;
    let dual = space.dual()?;
    let (primal_holds, primal_ratio) = holds_at(space, kind, alpha, n_samples, seed)?;
    let (dual_holds, dual_ratio) = holds_at(&dual, kind.dual(), alpha, n_samples, seed)?;
    Ok(DualSpotcheck {
        kind,
        dual_kind: kind.dual(),
        alpha,
        primal_holds,
        primal_ratio,
        dual_holds,
        dual_ratio,
        agree: primal_holds == dual_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::NormSpec;
    use crate::vector;

    #[test]
    fn kind_names_round_trip() {
        for k in PropertyKind::ALL {
            assert_eq!(k.name().parse::<PropertyKind>().unwrap(), k);
            assert_eq!(
                serde_json::to_string(&k).unwrap(),
                format!("\"{}\"", k.name())
            );
            assert_eq!(k.dual().dual(), k);
        }
        assert!("bogus".parse::<PropertyKind>().is_err());
        assert!(PropertyFlavor::new(PropertyKind::Normal, 0.0).is_err());
    }

    #[test]
    fn orthant_sum_decomposition_of_antidiagonal() {
        // x = (1,−1): the split a = (1,0), b = (0,1) is optimal, ratio 2/√2.
        let s = OrderedSpace::standard(2, NormSpec::l2()).unwrap();
        let d = conormality_solve(
            &s,
            PropertyKind::SumConormal,
            &vector(&[1.0, -1.0]),
            &SolverOptions::default(),
        )
        .unwrap();
        assert!((d.ratio - 2f64.sqrt()).abs() < 1e-12);
        assert!((d.a - vector(&[1.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn positive_elements_are_their_own_conormal_bound() {
        let s = OrderedSpace::lorentz(3).unwrap();
        let x = vector(&[2.0, 1.0, 0.5]);
        let d =
            conormality_solve(&s, PropertyKind::Conormal, &x, &SolverOptions::default()).unwrap();
        assert!((d.ratio - 1.0).abs() < 1e-6, "{}", d.ratio);
    }

    #[test]
    fn empty_or_unqualified_sample_is_an_error() {
        let s = OrderedSpace::standard(2, NormSpec::l2()).unwrap();
        let f = PropertyFlavor::new(PropertyKind::Normal, 1.0).unwrap();
        assert_eq!(
            normality_check(&s, f, &[], 1e-9).unwrap_err(),
            Error::EmptySample
        );
        let bad = OrderSample {
            z: None,
            x: vector(&[-1.0, 0.0]),
            y: vector(&[0.0, 0.0]),
        };
        assert_eq!(
            normality_check(&s, f, &[bad], 1e-9).unwrap_err(),
            Error::EmptySample
        );
    }

    #[test]
    fn non_monotone_polynomial_pair_is_a_counterexample() {
        // 0 ≤ (0,−1,1) ≤ (0,0,1) with ‖(0,−1,1)‖ = √2.
        let s = OrderedSpace::new(crate::Cone::poly_nonneg(257).unwrap(), NormSpec::l2());
        let item = OrderSample {
            z: None,
            x: vector(&[0.0, -1.0, 1.0]),
            y: vector(&[0.0, 0.0, 1.0]),
        };
        let r = normality_check(
            &s,
            PropertyFlavor::new(PropertyKind::Normal, 1.0).unwrap(),
            &[item],
            1e-9,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound);
        assert!((r.alpha_lower_bound - 2f64.sqrt()).abs() < 1e-12);
    }
}
