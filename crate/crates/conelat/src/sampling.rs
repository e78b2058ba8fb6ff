//! Random inputs whose order preconditions hold by construction.
//!
//! Every generator takes an explicit RNG; callers derive one stream per sample index from
//! [`stream`] so that results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::spaces::OrderedSpace;
use crate::Vector;

/// The RNG for sample `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard Gaussian vector.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_fn(dim, |_, _| rng.sample(StandardNormal))
}

/// Uniform point on the Euclidean unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let g = gaussian(rng, dim);
        let n = g.norm();
        if n > 1e-12 {
            return g / n;
        }
    }
}

/// `(z, x, y)` with `z ≤ x ≤ y`.
///
/// Half of the triples are generic; the rest reuse [`abs_pair`] as `−y ≤ x ≤ y` or
/// [`normal_pair`] as `0 ≤ x ≤ y`, where extreme norm ratios live.
pub fn order_triple<R: Rng + ?Sized>(
    space: &OrderedSpace,
    rng: &mut R,
) -> Result<(Vector, Vector, Vector)> {
    match rng.gen_range(0..4) {
        0 => {
            let (x, y) = abs_pair(space, rng)?;
            Ok((-&y, x, y))
        }
        1 => {
            let (x, y) = normal_pair(space, rng)?;
            Ok((Vector::zeros(space.dim()), x, y))
        }
        _ => {
            let x = gaussian(rng, space.dim());
            let z = &x - space.cone().sample(rng)?;
            let y = &x + space.cone().sample(rng)?;
            Ok((z, x, y))
        }
    }
}

/// `(x, y)` with `−y ≤ x ≤ y`.
///
/// Half of the pairs put `y` on the order-unit axis at the lowest level dominating `±x`,
/// with `x` a difference of two cone samples; the others add a cone sample to some
/// upper bound of `±x` for a Gaussian `x`.
pub fn abs_pair<R: Rng + ?Sized>(space: &OrderedSpace, rng: &mut R) -> Result<(Vector, Vector)> {
    let cone = space.cone();
    if rng.gen_bool(0.5) {
        let x = cone.sample(rng)? - cone.sample(rng)?;
        let lam = cone.shift_into(&x)?.max(cone.shift_into(&(-&x))?);
        let y = cone.order_unit()? * lam;
        return Ok((x, y));
    }
    let x = gaussian(rng, space.dim());
    let mut y = space.upper_bound_any(&x, &(-&x))?;
    if rng.gen_bool(0.75) {
        y += cone.sample(rng)?;
    }
    Ok((x, y))
}

/// `(x, y)` with `0 ≤ x ≤ y`.
///
/// A quarter of the pairs take `y − x` to be the reflection of `x` through the order-unit
/// axis when that reflection is positive. Such pairs put `x` and `y − x` on opposite
/// sides of the axis, which is where normality fails in thin cones.
pub fn normal_pair<R: Rng + ?Sized>(space: &OrderedSpace, rng: &mut R) -> Result<(Vector, Vector)> {
    let cone = space.cone();
    let x = cone.sample(rng)?;
    if rng.gen_bool(0.25) {
        let e = cone.order_unit()?;
        let e = &e / e.norm();
        let refl = &e * (2.0 * e.dot(&x)) - &x;
        if cone.contains(&refl, 0.0)? {
            let y = &x + refl;
            return Ok((x, y));
        }
    }
    let y = &x + cone.sample(rng)?;
    Ok((x, y))
}
