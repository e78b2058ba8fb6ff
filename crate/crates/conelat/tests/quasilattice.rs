//! Identities of the quasi-lattice operations.

mod common;

use common::{coords, families3};
use conelat::error::Error;
use conelat::quasilattice::{
    ando_decompose, identity_suite, neg_part, pos_part, quasi_abs, quasi_inf, quasi_sup_unique,
    IdentityOptions, IDENTITY_NAMES,
};
use conelat::sampling::{gaussian, stream};
use conelat::solver::SolverOptions;
use conelat::{vector, OrderedSpace, Vector};
use proptest::prelude::*;

const TOL: f64 = 1e-6;

/// Unwraps a result, turning a non-unique quasi-supremum into a rejected case.
macro_rules! unique {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(Error::Unresolved(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    };
}

fn opts() -> SolverOptions {
    SolverOptions::default()
}

fn jordan(s: &OrderedSpace, x: &Vector) -> Result<(), TestCaseError> {
    let p = unique!(pos_part(s, x, &opts()));
    let n = unique!(neg_part(s, x, &opts()));
    let a = unique!(quasi_abs(s, x, &opts()));
    prop_assert!(
        (x - (&p - &n)).norm() <= TOL,
        "x⁺ − x⁻ = {} for {x}",
        &p - &n
    );
    prop_assert!(
        (&a - (&p + &n)).norm() <= TOL,
        "⌈x⌉ = {a}, x⁺ + x⁻ = {}",
        &p + &n
    );
    Ok(())
}

fn sum_and_difference(s: &OrderedSpace, x: &Vector, y: &Vector) -> Result<(), TestCaseError> {
    let sup = unique!(quasi_sup_unique(s, x, y, &opts()));
    let inf = unique!(quasi_inf(s, x, y, &opts()));
    let a = unique!(quasi_abs(s, &(x - y), &opts()));
    prop_assert!((&sup + &inf - (x + y)).norm() <= TOL);
    prop_assert!((&sup - &inf - a).norm() <= TOL);
    Ok(())
}

fn negative_scaling(s: &OrderedSpace, x: &Vector, y: &Vector, a: f64) -> Result<(), TestCaseError> {
    let lhs = unique!(quasi_sup_unique(s, &(x * a), &(y * a), &opts()));
    let inf = unique!(quasi_inf(s, x, y, &opts()));
    prop_assert!((&lhs - inf * a).norm() <= TOL * (1.0 + a.abs()));
    Ok(())
}

fn triangle(s: &OrderedSpace, x: &Vector, y: &Vector) -> Result<(), TestCaseError> {
    let ax = unique!(quasi_abs(s, x, &opts()));
    let ay = unique!(quasi_abs(s, y, &opts()));
    let both = &ax + &ay;
    let sum = x + y;
    prop_assert!(s.cone().violation(&(&both - &sum)).unwrap() <= 1e-8);
    prop_assert!(s.cone().violation(&(&both + &sum)).unwrap() <= 1e-8);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parts_recover_the_vector_and_its_modulus(x in coords(3)) {
        for (_, s) in families3() {
            jordan(&s, &x)?;
        }
    }

    #[test]
    fn sup_and_inf_sum_to_the_pair(x in coords(3), y in coords(3)) {
        for (_, s) in families3() {
            sum_and_difference(&s, &x, &y)?;
        }
    }

    #[test]
    fn negative_scaling_swaps_sup_and_inf(x in coords(3), y in coords(3), a in -4.0..-0.1f64) {
        for (_, s) in families3() {
            negative_scaling(&s, &x, &y, a)?;
        }
    }

    #[test]
    fn modulus_dominates_sums(x in coords(3), y in coords(3)) {
        for (_, s) in families3() {
            triangle(&s, &x, &y)?;
        }
    }

    #[test]
    fn lorentz_modulus_preserves_the_norm(n in 2usize..=8, seed in any::<u64>()) {
        let s = OrderedSpace::lorentz(n).unwrap();
        let x = gaussian(&mut stream(seed, 0), n);
        let a = quasi_abs(&s, &x, &opts()).unwrap();
        prop_assert!((a.norm() - x.norm()).abs() <= 1e-9 * (1.0 + x.norm()));
        prop_assert!(s.cone().violation(&a).unwrap() <= 1e-12);
    }

    #[test]
    fn lorentz_identities_hold_in_every_dimension(n in 2usize..=8, seed in any::<u64>()) {
        let s = OrderedSpace::lorentz(n).unwrap();
        let mut rng = stream(seed, 1);
        let (x, y) = (gaussian(&mut rng, n), gaussian(&mut rng, n));
        jordan(&s, &x)?;
        sum_and_difference(&s, &x, &y)?;
        negative_scaling(&s, &x, &y, -1.5)?;
        triangle(&s, &x, &y)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn identity_suite_passes_on_random_triples(x in coords(3), y in coords(3), z in coords(3)) {
        for (name, s) in families3() {
            let r = identity_suite(&s, &x, &y, &z, &IdentityOptions::default()).unwrap();
            prop_assert_eq!(r.applicable + r.inapplicable, 1);
            prop_assert_eq!(r.identities.len(), IDENTITY_NAMES.len());
            let bad: Vec<_> = r.identities.iter().filter(|i| !i.pass).collect();
            prop_assert!(r.pass && bad.is_empty(), "{name}: {bad:?}");
        }
    }
}

#[test]
fn modulus_is_even_and_homogeneous() {
    let s = OrderedSpace::lorentz(3).unwrap();
    let x = vector(&[0.2, -0.7, 1.1]);
    let a = quasi_abs(&s, &x, &opts()).unwrap();
    let a2 = quasi_abs(&s, &(&x * -2.0), &opts()).unwrap();
    assert!((a2 - a * 2.0).norm() <= 1e-12);
}

#[test]
fn vertical_vector_in_the_lorentz_cone() {
    let s = OrderedSpace::lorentz(3).unwrap();
    let x = vector(&[0.0, 0.0, 1.0]);
    let a = quasi_abs(&s, &x, &opts()).unwrap();
    assert!((a.norm() - 1.0).abs() <= 1e-12);
    assert!((a - vector(&[1.0, 0.0, 0.0])).norm() <= 1e-12);
}

#[test]
fn half_lorentz_sup_is_not_associative() {
    let s = &families3()[2].1;
    let o = opts();
    let a = Vector::zeros(3);
    let b = vector(&[0.0, -1.0, 1.0]);
    let c = vector(&[0.0, -1.0, -1.0]);
    let bc = quasi_sup_unique(s, &b, &c, &o).unwrap();
    let ab = quasi_sup_unique(s, &a, &b, &o).unwrap();
    let left = quasi_sup_unique(s, &a, &bc, &o).unwrap();
    let right = quasi_sup_unique(s, &ab, &c, &o).unwrap();
    assert!((&bc - vector(&[1.0, -1.0, 0.0])).amax() <= 1e-4, "{bc}");
    assert!((&left - vector(&[2.0, 0.0, 0.0])).amax() <= 1e-4, "{left}");
    let (r2, r3, r6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let k = (-29.0 - 8.0 * r2 + 9.0 * r3 + 12.0 * r6) / 23.0;
    let want = vector(&[(1.0 + (1.0 + k).powi(2)).sqrt(), 0.0, k]);
    assert!((&right - &want).amax() <= 1e-4, "{right} vs {want}");
    assert!((left - right).norm() > 0.1);
}

#[test]
fn ando_ratio_conventions() {
    let s = OrderedSpace::lorentz(3).unwrap();
    let o = opts();
    let zero = ando_decompose(&s, &Vector::zeros(3), &o).unwrap();
    assert_eq!(zero.ratio, 0.0);
    let inside = ando_decompose(&s, &vector(&[2.0, 1.0, 0.5]), &o).unwrap();
    assert!((inside.ratio - 1.0).abs() <= 1e-9);
    assert!(inside.neg.norm() <= 1e-9);
    let vertical = ando_decompose(&s, &vector(&[0.0, 0.0, 2.0]), &o).unwrap();
    assert!((vertical.ratio - 0.5f64.sqrt()).abs() <= 1e-12);
    assert!((&vertical.pos - &vertical.neg - vector(&[0.0, 0.0, 2.0])).norm() <= 1e-12);
}
