//! Cone families shared by the property tests.
#![allow(dead_code)]

use conelat::spaces::DEFAULT_POLY_GRID;
use conelat::{vector, Cone, NormSpec, OrderedSpace, Vector};
use proptest::prelude::*;

pub fn basis(n: usize, i: usize) -> Vector {
    Vector::from_fn(n, |j, _| if i == j { 1.0 } else { 0.0 })
}

pub fn four_ray_cone() -> Cone {
    let rays = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .map(|&(a, b)| vector(&[a, b, 1.0]))
        .collect();
    Cone::polyhedral_from_generators(rays).unwrap()
}

/// Every cone family in ℝ³ with the Euclidean norm.
pub fn families3() -> Vec<(&'static str, OrderedSpace)> {
    let l2 = NormSpec::l2();
    vec![
        ("standard", OrderedSpace::standard(3, l2).unwrap()),
        ("lorentz", OrderedSpace::lorentz(3).unwrap()),
        (
            "half-lorentz",
            OrderedSpace::new(Cone::half_lorentz(basis(3, 0), basis(3, 1)).unwrap(), l2),
        ),
        ("four-ray", OrderedSpace::new(four_ray_cone(), l2)),
        (
            "polynomial",
            OrderedSpace::new(Cone::poly_nonneg(DEFAULT_POLY_GRID).unwrap(), l2),
        ),
    ]
}

/// Cone families in ℝ² with the Euclidean norm.
pub fn families2() -> Vec<(&'static str, OrderedSpace)> {
    let l2 = NormSpec::l2();
    let wedge = Cone::polyhedral_from_generators(vec![vector(&[1.0, 0.2]), vector(&[0.3, 1.0])]);
    vec![
        ("standard-2", OrderedSpace::standard(2, l2).unwrap()),
        ("lorentz-2", OrderedSpace::lorentz(2).unwrap()),
        ("wedge-2", OrderedSpace::new(wedge.unwrap(), l2)),
    ]
}

/// Every family above plus a weighted and a dual cone, for axioms that hold regardless.
pub fn all_cones() -> Vec<(&'static str, Cone)> {
    let mut v: Vec<(&'static str, Cone)> = families3()
        .into_iter()
        .chain(families2())
        .map(|(n, s)| (n, s.cone().clone()))
        .collect();
    v.push((
        "weighted",
        Cone::weighted_lorentz(vector(&[0.5, 1.0 / 3.0, 0.25])).unwrap(),
    ));
    v.push(("dual four-ray", four_ray_cone().dual().unwrap()));
    v
}

pub fn coords(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3.0..3.0f64, n).prop_map(|v| Vector::from_vec(v))
}
