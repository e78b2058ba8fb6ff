//! Norm and order properties of operators between ordered spaces.

mod common;

use common::{families3, four_ray_cone};
use conelat::operators::{
    absolute_monotonicity_experiment, normality_transfer_check, operator_norm, operator_positive,
    positively_attained_check, random_positive_operator, rank_one, rank_one_norm, robinson_norm,
    OperatorMatrix, TransferVerdict, TRANSFER_TOL,
};
use conelat::order_metrics::{conormality_constant_estimate, PropertyKind};
use conelat::sampling::{gaussian, stream};
use conelat::solver::SolverOptions;
use conelat::{NormSpec, OrderedSpace};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn random_matrix(m: usize, n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = stream(seed, 3);
    DMatrix::from_fn(m, n, |_, _| rng.sample(StandardNormal))
}

fn spaces_with_norms() -> Vec<(&'static str, OrderedSpace)> {
    let mut v = families3();
    for (name, p) in [("l1", 1.0), ("l4", 4.0), ("linf", f64::INFINITY)] {
        v.push((
            name,
            OrderedSpace::standard(3, NormSpec::new(p).unwrap()).unwrap(),
        ));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn robinson_norm_never_exceeds_the_operator_norm(seed in any::<u64>()) {
        for (name, s) in families3() {
            let t = OperatorMatrix::new(random_matrix(3, 3, seed), s.clone(), s).unwrap();
            let rob = robinson_norm(&t, 50, 20, seed).unwrap();
            let op = operator_norm(&t);
            prop_assert!(op.exact);
            prop_assert!(rob <= op.value + 1e-9, "{name}: {rob} > {}", op.value);
            prop_assert!(rob > 0.0);
        }
    }

    #[test]
    fn rank_one_norm_is_the_product_of_norms(seed in any::<u64>()) {
        let mut rng = stream(seed, 4);
        let f = gaussian(&mut rng, 3);
        let y = gaussian(&mut rng, 3);
        for (name, s) in spaces_with_norms() {
            let t = rank_one(&f, &y, s.clone(), s.clone()).unwrap();
            let want = rank_one_norm(&f, &y, &s, &s);
            let got = operator_norm(&t);
            if got.exact {
                prop_assert!((got.value - want).abs() <= 1e-9 * (1.0 + want), "{name}: {} vs {want}", got.value);
            } else {
                prop_assert!(got.value <= want + 1e-9 * (1.0 + want), "{name}: {} > {want}", got.value);
                prop_assert!(got.value >= want * (1.0 - 1e-6), "{name}: {} ≪ {want}", got.value);
            }
        }
    }

    #[test]
    fn dual_functionals_give_positive_rank_ones(seed in any::<u64>()) {
        for (name, s) in families3() {
            let mut rng = stream(seed, 5);
            let f = s.cone().sample_dual(&mut rng).unwrap();
            let y = s.cone().sample(&mut rng).unwrap();
            let t = rank_one(&f, &y, s.clone(), s.clone()).unwrap();
            let r = operator_positive(&t, 1e-9, 100, seed).unwrap();
            prop_assert!(r.positive, "{name}: {:?}", r.witness);
        }
    }

    #[test]
    fn random_positive_operators_are_positive(seed in any::<u64>()) {
        for (name, s) in families3() {
            let t = random_positive_operator(&s, &s, &mut stream(seed, 6)).unwrap();
            prop_assert!(operator_positive(&t, 1e-9, 100, seed).unwrap().positive, "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // x = a − b with max(‖a‖, ‖b‖) ≤ α‖x‖ gives ‖Tx‖ ≤ 2α‖T‖₊‖x‖.
    #[test]
    fn operator_norm_is_controlled_by_the_robinson_norm(n in 2usize..=4, seed in any::<u64>()) {
        let s = OrderedSpace::lorentz(n).unwrap();
        let alpha = conormality_constant_estimate(&s, PropertyKind::MaxConormal, 40, 0, &SolverOptions::default()).unwrap();
        let t = OperatorMatrix::new(random_matrix(n, n, seed), s.clone(), s).unwrap();
        let rob = robinson_norm(&t, 200, 50, seed).unwrap();
        let op = operator_norm(&t).value;
        prop_assert!(rob <= op + 1e-9);
        prop_assert!(op <= 2.0 * alpha * rob + 1e-9, "‖T‖ {op}, ‖T‖₊ {rob}, α {alpha}");
    }

    #[test]
    fn positive_lorentz_operators_attain_their_norm(n in 2usize..=5, seed in any::<u64>()) {
        let s = OrderedSpace::lorentz(n).unwrap();
        let t = random_positive_operator(&s, &s, &mut stream(seed, 8)).unwrap();
        let r = positively_attained_check(&t, 1e-4, seed).unwrap();
        prop_assert!(r.pass && r.positively_attained_gap <= 1e-4, "{r:?}");
        prop_assert!(r.positively_attained_gap >= -1e-9);
    }
}

#[test]
fn lorentz_operator_spaces_are_absolutely_monotone() {
    for n in [2, 3, 5] {
        let s = OrderedSpace::lorentz(n).unwrap();
        for seed in 0..3 {
            let r = absolute_monotonicity_experiment(&s, &s, 200, seed).unwrap();
            assert_eq!(
                r.verdict,
                TransferVerdict::HoldsOnSample,
                "n = {n}, seed {seed}"
            );
            assert!(r.max_ratio <= 1.0 + TRANSFER_TOL, "{}", r.max_ratio);
            assert_eq!(r.trials, 200);
        }
    }
}

#[test]
fn lattice_operator_spaces_are_absolutely_monotone() {
    let s = OrderedSpace::standard(3, NormSpec::l2()).unwrap();
    let r = absolute_monotonicity_experiment(&s, &s, 200, 0).unwrap();
    assert!(r.max_ratio <= 1.0 + TRANSFER_TOL, "{}", r.max_ratio);
}

#[test]
fn normality_transfers_between_lorentz_spaces() {
    let s = OrderedSpace::lorentz(3).unwrap();
    let r = normality_transfer_check(&s, &s, PropertyKind::Normal, 1.0, 1.0, 200, 0).unwrap();
    assert_eq!(r.verdict, TransferVerdict::HoldsOnSample, "{r:?}");
    assert!(normality_transfer_check(&s, &s, PropertyKind::SumConormal, 1.0, 1.0, 1, 0).is_err());
}

#[test]
fn polyhedral_positivity_is_exact() {
    let s = OrderedSpace::new(four_ray_cone(), NormSpec::l2());
    let r = operator_positive(&OperatorMatrix::identity(s.clone()), 0.0, 0, 0).unwrap();
    assert!(r.positive && r.exact && r.rays_checked == 4);
    let flip = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0]));
    let r =
        operator_positive(&OperatorMatrix::new(flip, s.clone(), s).unwrap(), 0.0, 0, 0).unwrap();
    assert!(!r.positive && r.exact);
}

#[test]
fn operator_norm_of_a_diagonal() {
    let s = OrderedSpace::standard(3, NormSpec::l2()).unwrap();
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 1.0]));
    let t = OperatorMatrix::new(d, s.clone(), s).unwrap();
    assert!((operator_norm(&t).value - 3.0).abs() <= 1e-10);
}
