//! Properties of the quasi-supremum solver, its closed forms and the grid oracle.

mod common;

use common::{coords, families2, families3};
use conelat::sampling::{gaussian, stream};
use conelat::solver::{
    brute_force_quasi_sup, closed_form_quasi_sup, is_minimal_upper_bound, quasi_sup,
    quasi_sup_splitting, sigma, GridSpec, SolverOptions, Status,
};
use conelat::{vector, Cone, NormSpec, OrderedSpace, Vector};
use proptest::prelude::*;

fn opts(seed: u64) -> SolverOptions {
    SolverOptions::default().with_seed(seed)
}

/// ℓ₁, ℓ₂ and ℓ∞ over the orthant and the Lorentz cone, plus the ℓ₂ families.
fn mixed_spaces() -> Vec<(&'static str, OrderedSpace)> {
    let mut v = families3();
    for (name, p) in [("l1", 1.0), ("linf", f64::INFINITY), ("l3", 3.0)] {
        let norm = NormSpec::new(p).unwrap();
        v.push((name, OrderedSpace::standard(3, norm).unwrap()));
        v.push((name, OrderedSpace::new(Cone::lorentz_e1(3).unwrap(), norm)));
    }
    v
}

fn check_result(s: &OrderedSpace, x: &Vector, y: &Vector, name: &str) -> Result<(), TestCaseError> {
    let o = opts(0);
    let r = quasi_sup(s, x, y, &o).unwrap();
    let norm = s.norm_spec();
    let gap = norm.dist(x, y);
    prop_assert!(
        r.sigma_value >= gap - 1e-9,
        "{name}: σ {} < ‖x−y‖ {gap}",
        r.sigma_value
    );
    match r.status {
        Status::Unique => {
            let v = s
                .leq_violation(x, &r.z)
                .unwrap()
                .max(s.leq_violation(y, &r.z).unwrap());
            prop_assert!(v <= 1e-6 * (1.0 + r.z.norm()), "{name}: residual {v}");
            prop_assert!(
                (sigma(x, y, &r.z, norm).unwrap() - r.sigma_value).abs() <= 1e-9 * (1.0 + gap)
            );
        }
        Status::FlatMinimum => {
            prop_assert!(r.witnesses.len() >= 2, "{name}");
            let sep = o.separation(gap);
            let s0 = sigma(x, y, &r.witnesses[0], norm).unwrap();
            for (i, w) in r.witnesses.iter().enumerate() {
                let v = s
                    .leq_violation(x, w)
                    .unwrap()
                    .max(s.leq_violation(y, w).unwrap());
                prop_assert!(v <= 1e-6 * (1.0 + w.norm()), "{name}: witness residual {v}");
                prop_assert!(
                    (sigma(x, y, w, norm).unwrap() - s0).abs() <= 1e-6 * (1.0 + gap),
                    "{name}"
                );
                for u in &r.witnesses[i + 1..] {
                    prop_assert!(norm.dist(u, w) > sep, "{name}: witnesses closer than {sep}");
                }
            }
            prop_assert_eq!(&r.z, &r.witnesses[0]);
        }
        other => prop_assert!(false, "{name}: status {other:?}"),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn results_are_feasible_and_bounded_below(x in coords(3), y in coords(3)) {
        for (name, s) in mixed_spaces() {
            check_result(&s, &x, &y, name)?;
        }
    }

    #[test]
    fn closed_form_matches_splitting(n in 2usize..=8, seed in any::<u64>()) {
        let s = OrderedSpace::lorentz(n).unwrap();
        let mut rng = stream(seed, 0);
        let x = gaussian(&mut rng, n);
        let y = gaussian(&mut rng, n);
        let fast = closed_form_quasi_sup(&s, &x, &y).unwrap().unwrap();
        let slow = quasi_sup_splitting(&s, &x, &y, &opts(seed)).unwrap();
        prop_assert_eq!(slow.status, Status::Unique);
        prop_assert!((&fast.z - &slow.z).amax() <= 1e-6, "{} vs {}", fast.z, slow.z);
    }

    #[test]
    fn orthant_closed_form_is_the_coordinatewise_max(x in coords(4), y in coords(4)) {
        for p in [1.5, 2.0, 4.0] {
            let s = OrderedSpace::standard(4, NormSpec::new(p).unwrap()).unwrap();
            let r = closed_form_quasi_sup(&s, &x, &y).unwrap().unwrap();
            prop_assert_eq!(r.z, x.sup(&y));
        }
    }

    #[test]
    fn translation_covariance(x in coords(3), y in coords(3), w in coords(3)) {
        for (name, s) in families3() {
            let a = quasi_sup(&s, &x, &y, &opts(0)).unwrap();
            let b = quasi_sup(&s, &(&x + &w), &(&y + &w), &opts(0)).unwrap();
            prop_assert!((&a.z + &w - &b.z).amax() <= 1e-6, "{name}: {} vs {}", &a.z + &w, b.z);
        }
    }

    #[test]
    fn positive_homogeneity(x in coords(3), y in coords(3), a in 0.1..5.0f64) {
        for (name, s) in families3() {
            let r = quasi_sup(&s, &x, &y, &opts(0)).unwrap();
            let ra = quasi_sup(&s, &(&x * a), &(&y * a), &opts(0)).unwrap();
            prop_assert!((&r.z * a - &ra.z).amax() <= 1e-6 * (1.0 + a), "{name}");
        }
    }

    #[test]
    fn monotone_spaces_give_minimal_upper_bounds(x in coords(3), y in coords(3)) {
        for (name, s) in families3() {
            if s.monotone_hint() != Some(true) {
                continue;
            }
            let r = quasi_sup(&s, &x, &y, &opts(0)).unwrap();
            if r.status == Status::Unique {
                prop_assert!(is_minimal_upper_bound(&s, &x, &y, &r.z, 1e-6).unwrap(), "{name}: {}", r.z);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn solver_matches_grid_oracle(seed in any::<u64>()) {
        for (name, s) in families3().into_iter().chain(families2()) {
            let mut rng = stream(seed, 1);
            let x = gaussian(&mut rng, s.dim());
            let y = gaussian(&mut rng, s.dim());
            let r = quasi_sup(&s, &x, &y, &opts(seed)).unwrap();
            let o = brute_force_quasi_sup(&s, &x, &y, &GridSpec::default()).unwrap();
            prop_assert!((&r.z - &o.result.z).norm() <= 2.0 * o.grid_step, "{name}: {} vs {}", r.z, o.result.z);
            prop_assert!((r.sigma_value - o.result.sigma_value).abs() <= 1e-4, "{name}: σ {} vs {}", r.sigma_value, o.result.sigma_value);
        }
    }
}

#[test]
fn identical_points_have_zero_sigma() {
    for (name, s) in families3() {
        let x = vector(&[0.3, -0.2, 0.7]);
        let r = quasi_sup(&s, &x, &x, &opts(0)).unwrap();
        assert_eq!(r.status, Status::Unique, "{name}");
        assert!(
            (&r.z - &x).amax() <= 1e-6 && r.sigma_value <= 1e-6,
            "{name}: {r:?}"
        );
    }
}

#[test]
fn oracle_reproduces_the_flat_segment() {
    let s = OrderedSpace::standard(3, NormSpec::linf()).unwrap();
    let o = brute_force_quasi_sup(
        &s,
        &vector(&[1.0, -1.0, 0.0]),
        &Vector::zeros(3),
        &GridSpec::default(),
    )
    .unwrap();
    assert_eq!(o.result.status, Status::FlatMinimum);
    let ts: Vec<f64> = o.result.witnesses.iter().map(|w| w[2]).collect();
    assert!(
        ts.iter().all(|t| (-1e-9..=1.0 + 1e-9).contains(t)),
        "{ts:?}"
    );
    assert!(ts.iter().cloned().fold(0.0, f64::max) - ts.iter().cloned().fold(1.0, f64::min) > 0.5);
}
