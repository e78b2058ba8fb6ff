//! ℓp norms and their proximal maps.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Vector;

/// An ℓp norm with `1 ≤ p ≤ ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec {
    p: f64,
}

impl NormSpec {
    pub fn new(p: f64) -> Result<Self> {
        if p >= 1.0 {
            Ok(NormSpec { p })
        } else {
            Err(Error::InvalidArgument(format!(
                "norm exponent must lie in [1, inf], got {p}"
            )))
        }
    }

    pub const fn l1() -> Self {
        NormSpec { p: 1.0 }
    }

    pub const fn l2() -> Self {
        NormSpec { p: 2.0 }
    }

    pub const fn linf() -> Self {
        NormSpec { p: f64::INFINITY }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_euclidean(&self) -> bool {
        self.p == 2.0
    }

    pub fn is_infinite(&self) -> bool {
        self.p.is_infinite()
    }

    /// True iff `1 < p < ∞`.
    pub fn is_strictly_convex(&self) -> bool {
        self.p > 1.0 && self.p.is_finite()
    }

    /// True iff `1 < p < ∞`.
    pub fn is_smooth(&self) -> bool {
        self.is_strictly_convex()
    }

    /// The dual exponent `q` with `1/p + 1/q = 1`.
    pub fn dual(&self) -> NormSpec {
        let q = if self.p == 1.0 {
            f64::INFINITY
        } else if self.p.is_infinite() {
            1.0
        } else {
            self.p / (self.p - 1.0)
        };
        NormSpec { p: q }
    }

    pub fn norm(&self, x: &Vector) -> f64 {
        lp_norm(x.as_slice(), self.p)
    }

    /// Norm of `a - b` without allocating.
    pub fn dist(&self, a: &Vector, b: &Vector) -> f64 {
        let p = self.p;
        if p == 2.0 {
            a.iter()
                .zip(b.iter())
                .map(|(u, v)| (u - v) * (u - v))
                .sum::<f64>()
                .sqrt()
        } else if p == 1.0 {
            a.iter().zip(b.iter()).map(|(u, v)| (u - v).abs()).sum()
        } else if p.is_infinite() {
            a.iter()
                .zip(b.iter())
                .fold(0.0, |m, (u, v)| f64::max(m, (u - v).abs()))
        } else {
            let d: Vec<f64> = a.iter().zip(b.iter()).map(|(u, v)| u - v).collect();
            lp_norm(&d, p)
        }
    }

    /// Overwrites `w` with `argmin_z γ‖z − center‖ + ½‖z − w‖₂²`.
    pub fn prox_dist_in_place(&self, w: &mut Vector, center: &Vector, gamma: f64) {
        for (wi, ci) in w.iter_mut().zip(center.iter()) {
            *wi -= ci;
        }
        prox_norm_in_place(w.as_mut_slice(), self.p, gamma);
        for (wi, ci) in w.iter_mut().zip(center.iter()) {
            *wi += ci;
        }
    }

    /// `argmin_z γ‖z‖ + ½‖z − w‖₂²`.
    pub fn prox(&self, w: &Vector, gamma: f64) -> Vector {
        let mut out = w.clone();
        prox_norm_in_place(out.as_mut_slice(), self.p, gamma);
        out
    }

    /// Euclidean projection onto the ball `{‖z‖ ≤ radius}`.
    pub fn project_ball(&self, w: &Vector, radius: f64) -> Vector {
        // Moreau: the ball is the unit sublevel set whose support function is the dual norm.
        let shrunk = self.dual().prox(w, radius);
        w - shrunk
    }
}

impl Default for NormSpec {
    fn default() -> Self {
        NormSpec::l2()
    }
}

/// Overflow-safe ℓp norm.
pub(crate) fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p == 2.0 {
        return x.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    let m = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if p.is_infinite() || m == 0.0 {
        return m;
    }
    m * x
        .iter()
        .map(|v| (v.abs() / m).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

fn prox_norm_in_place(d: &mut [f64], p: f64, gamma: f64) {
    if gamma <= 0.0 {
        return;
    }
    if p == 2.0 {
        let n = lp_norm(d, 2.0);
        let scale = if n <= gamma { 0.0 } else { 1.0 - gamma / n };
        d.iter_mut().for_each(|v| *v *= scale);
    } else if p == 1.0 {
        d.iter_mut()
            .for_each(|v| *v = v.signum() * (v.abs() - gamma).max(0.0));
    } else if p.is_infinite() {
        // prox of γ‖·‖∞ is the residual of projecting onto the ℓ1 ball of radius γ.
        let proj = project_l1_ball(d, gamma);
        d.iter_mut().zip(proj).for_each(|(v, q)| *v -= q);
    } else {
        prox_lp_general(d, p, gamma);
    }
}

/// Sort-based Euclidean projection onto `{‖z‖₁ ≤ radius}`.
pub(crate) fn project_l1_ball(d: &[f64], radius: f64) -> Vec<f64> {
    let total: f64 = d.iter().map(|v| v.abs()).sum();
    if total <= radius {
        return d.to_vec();
    }
    let mut mags: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &m) in mags.iter().enumerate() {
        cumsum += m;
        let t = (cumsum - radius) / (k as f64 + 1.0);
        if m > t {
            theta = t;
        } else {
            break;
        }
    }
    d.iter()
        .map(|v| v.signum() * (v.abs() - theta).max(0.0))
        .collect()
}

/// prox of γ‖·‖_p for 1 < p < ∞, p ≠ 2.
///
/// With `s = ‖z‖_p` fixed, each magnitude solves `a + γ (a/s)^(p−1) = |d_i|`;
/// the outer bisection finds the `s` with `‖a(s)‖_p = s`.
fn prox_lp_general(d: &mut [f64], p: f64, gamma: f64) {
    let q = p / (p - 1.0);
    if lp_norm(d, q) <= gamma {
        d.iter_mut().for_each(|v| *v = 0.0);
        return;
    }
    let mags: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let inner = |s: f64, m: f64| -> f64 {
        if m == 0.0 {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, m);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid + gamma * (mid / s).powf(p - 1.0) > m {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= f64::EPSILON * m {
                break;
            }
        }
        0.5 * (lo + hi)
    };
    let amplitudes = |s: f64| -> Vec<f64> { mags.iter().map(|&m| inner(s, m)).collect() };
    let (mut lo, mut hi) = (0.0, lp_norm(&mags, p));
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid <= 0.0 {
            break;
        }
        if lp_norm(&amplitudes(mid), p) > mid {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let a = amplitudes(0.5 * (lo + hi));
    d.iter_mut().zip(a).for_each(|(v, m)| *v = v.signum() * m);
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Exponent {
    Number(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormJson {
    p: Exponent,
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = if self.p.is_infinite() {
            Exponent::Text("inf".into())
        } else {
            Exponent::Number(self.p)
        };
        NormJson { p }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = NormJson::deserialize(d)?;
        let p = match raw.p {
            Exponent::Number(p) => p,
            Exponent::Text(t) if t == "inf" || t == "infinity" => f64::INFINITY,
            Exponent::Text(t) => return Err(D::Error::custom(format!("bad norm exponent {t:?}"))),
        };
        NormSpec::new(p).map_err(D::Error::custom)
    }
}
