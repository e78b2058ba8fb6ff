//! Closed forms for the Euclidean Lorentz cone.

use crate::Vector;

/// `⌈w⌉ = (−w) ∨̃ w` for the Lorentz cone around the unit `axis`.
///
/// In the plane spanned by the axis and `w`, with `α = ⟨axis, w⟩` and `n = ‖w − α·axis‖`,
/// the coordinates along the two boundary rays are replaced by their absolute values.
pub fn lorentz_quasi_abs(axis: &Vector, w: &Vector) -> Vector {
    let alpha = axis.dot(w);
    let mut radial = w - axis * alpha;
    let n = radial.norm();
    let a = (alpha + n).abs();
    let b = (alpha - n).abs();
    let mut out = axis * (0.5 * (a + b));
    if n > 0.0 {
        radial *= 0.5 * (a - b) / n;
        out += radial;
    }
    out
}

/// `x ∨̃ y = ½(x + y) + ½⌈x − y⌉` for the Lorentz cone around the unit `axis`.
pub fn lorentz_quasi_sup(axis: &Vector, x: &Vector, y: &Vector) -> Vector {
    let q = lorentz_quasi_abs(axis, &(x - y));
    (x + y + q) * 0.5
}
