//! Properties of norms, cones and the order they induce.

mod common;

use common::{all_cones, basis, coords, four_ray_cone};
use conelat::sampling::stream;
use conelat::spaces::PolyNonneg;
use conelat::{Cone, NormSpec, OrderedSpace, Vector};
use proptest::prelude::*;

fn slack(x: &Vector) -> f64 {
    1e-9 * (1.0 + x.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_axioms(
        p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY]),
        x in coords(4),
        y in coords(4),
        a in -5.0..5.0f64,
    ) {
        let n = NormSpec::new(p).unwrap();
        prop_assert_eq!(n.is_strictly_convex(), p > 1.0 && p.is_finite());
        prop_assert_eq!(n.is_smooth(), p > 1.0 && p.is_finite());
        prop_assert!(n.norm(&x) >= 0.0);
        prop_assert_eq!(n.norm(&Vector::zeros(4)), 0.0);
        if x.amax() > 0.0 {
            prop_assert!(n.norm(&x) > 0.0);
        }
        prop_assert!((n.norm(&(&x * a)) - a.abs() * n.norm(&x)).abs() <= 1e-12 * (1.0 + n.norm(&x) * a.abs()));
        prop_assert!(n.norm(&(&x + &y)) <= n.norm(&x) + n.norm(&y) + 1e-12);
    }

    #[test]
    fn cones_are_closed_under_sums_and_scaling(seed in any::<u64>(), lam in 0.0..10.0f64) {
        for (name, c) in all_cones() {
            let mut rng = stream(seed, 0);
            let a = c.sample(&mut rng).unwrap();
            let b = c.sample(&mut rng).unwrap();
            let sum = &a + &b;
            prop_assert!(c.contains(&sum, slack(&sum)).unwrap(), "{name}: {sum}");
            let scaled = &a * lam;
            prop_assert!(c.contains(&scaled, slack(&scaled)).unwrap(), "{name}: {scaled}");
        }
    }

    #[test]
    fn projection_is_idempotent_and_nonexpansive(seed in any::<u64>()) {
        for (name, c) in all_cones() {
            let mut rng = stream(seed, 1);
            let x = conelat::sampling::gaussian(&mut rng, c.dim()) * 2.0;
            let y = conelat::sampling::gaussian(&mut rng, c.dim()) * 2.0;
            let px = c.project(&x).unwrap();
            let py = c.project(&y).unwrap();
            prop_assert!(c.contains(&px, slack(&x)).unwrap(), "{name}: {px}");
            prop_assert!((c.project(&px).unwrap() - &px).norm() <= slack(&x), "{name}");
            prop_assert!((&px - &py).norm() <= (&x - &y).norm() + 1e-9, "{name}");
        }
    }

    #[test]
    fn projection_residual_lies_in_the_dual_cone(seed in any::<u64>()) {
        // x = P(x) − (P(x) − x) with the second part in the dual cone, orthogonal to P(x).
        for (name, c) in all_cones() {
            let mut rng = stream(seed, 2);
            let x = conelat::sampling::gaussian(&mut rng, c.dim()) * 2.0;
            let p = c.project(&x).unwrap();
            let r = &p - &x;
            let tol = 1e-8 * (1.0 + x.norm());
            prop_assert!(c.dual().unwrap().contains(&r, tol).unwrap(), "{name}: {r}");
            prop_assert!(r.dot(&p).abs() <= tol, "{name}");
        }
    }

    #[test]
    fn self_dual_cones(seed in any::<u64>()) {
        for c in [Cone::standard(4).unwrap(), Cone::lorentz_e1(4).unwrap()] {
            let mut rng = stream(seed, 3);
            let x = conelat::sampling::gaussian(&mut rng, 4);
            let inside = c.contains(&x, 0.0).unwrap();
            let d = c.dual().unwrap();
            let f = d.sample(&mut rng).unwrap();
            prop_assert!(c.contains(&f, slack(&f)).unwrap());
            if inside {
                prop_assert!(x.dot(&f) >= -slack(&x) * (1.0 + f.norm()));
            } else {
                // The projection residual separates x from the cone.
                let r = c.project(&x).unwrap() - &x;
                prop_assert!(c.contains(&r, slack(&x)).unwrap());
                prop_assert!(x.dot(&r) < 0.0);
            }
        }
    }

    #[test]
    fn order_is_reflexive_and_transitive(seed in any::<u64>()) {
        for (name, c) in all_cones() {
            let s = OrderedSpace::new(c.clone(), NormSpec::l2());
            let mut rng = stream(seed, 4);
            let x = conelat::sampling::gaussian(&mut rng, c.dim());
            let y = &x + c.sample(&mut rng).unwrap();
            let z = &y + c.sample(&mut rng).unwrap();
            prop_assert!(s.leq(&x, &x, 0.0).unwrap(), "{name}");
            prop_assert!(s.leq(&x, &y, slack(&y)).unwrap(), "{name}");
            prop_assert!(s.leq(&y, &z, slack(&z)).unwrap(), "{name}");
            prop_assert!(s.leq(&x, &z, slack(&z)).unwrap(), "{name}");
        }
    }

    #[test]
    fn proper_cones_are_antisymmetric(seed in any::<u64>()) {
        for (name, c) in all_cones() {
            prop_assert!(c.is_proper(), "{name}");
            let mut rng = stream(seed, 5);
            let a = c.sample(&mut rng).unwrap();
            if a.norm() > 1e-3 {
                prop_assert!(!c.contains(&(-&a), 1e-9).unwrap(), "{name}: {a}");
            }
        }
    }

    #[test]
    fn upper_bounds_exist_in_generating_spaces(x in coords(3), y in coords(3)) {
        for (name, s) in common::families3() {
            prop_assert!(s.is_generating());
            let u = s.upper_bound_any(&x, &y).unwrap();
            prop_assert!(s.leq(&x, &u, 1e-9).unwrap() && s.leq(&y, &u, 1e-9).unwrap(), "{name}");
        }
    }

    #[test]
    fn polyhedral_representations_agree(x in coords(3)) {
        let by_rays = four_ray_cone();
        let Cone::Polyhedral(p) = &by_rays else { unreachable!() };
        let by_normals = Cone::polyhedral_from_normals(p.normals().to_vec()).unwrap();
        let v = by_rays.violation(&x).unwrap();
        // Away from the boundary, both descriptions classify points the same way.
        if v == 0.0 || v > 1e-6 {
            let inside = by_normals.violation(&x).unwrap() <= 1e-12;
            prop_assert_eq!(inside, v == 0.0);
        }
    }

    #[test]
    fn polynomial_grid_spans_the_unit_interval(points in 3usize..600) {
        let p = PolyNonneg::chebyshev(points).unwrap();
        let g = p.grid();
        prop_assert!(g.iter().all(|t| (0.0..=1.0).contains(t)));
        prop_assert_eq!(g[0], 0.0);
        prop_assert_eq!(*g.last().unwrap(), 1.0);
    }

    #[test]
    fn lorentz_axes_are_normalized(axis in coords(4)) {
        prop_assume!(axis.norm() > 1e-6);
        let Cone::Lorentz { axis: v } = Cone::lorentz(axis.clone()).unwrap() else { unreachable!() };
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        prop_assert!((&v * axis.norm() - &axis).norm() < 1e-9 * (1.0 + axis.norm()));
    }
}

#[test]
fn half_space_normal_must_be_orthogonal() {
    let skew = &basis(3, 1) + &basis(3, 0) * 0.1;
    assert!(Cone::half_lorentz(basis(3, 0), skew).is_err());
    assert!(Cone::lorentz(Vector::zeros(3)).is_err());
    let Cone::HalfLorentz { axis, half } =
        Cone::half_lorentz(basis(3, 0) * 3.0, basis(3, 1) * 2.0).unwrap()
    else {
        unreachable!()
    };
    assert!((axis.norm() - 1.0).abs() < 1e-15 && (half.norm() - 1.0).abs() < 1e-15);
    assert_eq!(axis.dot(&half), 0.0);
}
