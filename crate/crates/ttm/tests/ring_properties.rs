//! Property suites for the ground ring and its two partial orders.

mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use common::{random_c_nonneg, random_s_nonneg, seeded_rng, torus_point};
use ttm::scalar::rat;
use ttm::RingElem;

fn elem_strategy() -> impl Strategy<Value = RingElem> {
    (
        -12i64..=12,
        1i64..=4,
        -12i64..=12,
        1i64..=4,
        -6i64..=6,
    )
        .prop_map(|(bn, bd, cn, cd, v)| {
            RingElem::new(rat(bn, bd), rat(cn, cd), num_bigint::BigInt::from(v))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn additive_group_axioms(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() + RingElem::zero(), a.clone());
        prop_assert_eq!(a.clone() + (-a.clone()), RingElem::zero());
    }

    #[test]
    fn multiplicative_axioms(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * RingElem::one(), a.clone());
        prop_assert_eq!(RingElem::one() * a.clone(), a.clone());
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(
            (a.clone() + b.clone()) * c.clone(),
            a.clone() * c.clone() + b.clone() * c.clone()
        );
    }

    #[test]
    fn order_reflexive_antisymmetric(a in elem_strategy(), b in elem_strategy()) {
        prop_assert!(a.geq_c(&a));
        prop_assert!(a.geq_s(&a));
        if a.geq_c(&b) && b.geq_c(&a) {
            prop_assert_eq!(a.clone(), b.clone());
        }
        if a.geq_s(&b) && b.geq_s(&a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn smooth_order_implies_continuous(a in elem_strategy(), b in elem_strategy()) {
        if a.geq_s(&b) {
            prop_assert!(a.geq_c(&b));
        }
    }
}

#[test]
fn order_transitive_on_comparable_chains() {
    let mut rng = seeded_rng(11);
    for _ in 0..1000 {
        let a = common::random_elem(&mut rng);
        let b = a.clone() - random_c_nonneg(&mut rng);
        let c = b.clone() - random_c_nonneg(&mut rng);
        assert!(a.geq_c(&b) && b.geq_c(&c), "chain construction");
        assert!(a.geq_c(&c), "continuous order not transitive at {a} {b} {c}");

        let x = common::random_elem(&mut rng);
        let y = x.clone() - random_s_nonneg(&mut rng);
        let z = y.clone() - random_s_nonneg(&mut rng);
        assert!(x.geq_s(&y) && y.geq_s(&z), "smooth chain construction");
        assert!(x.geq_s(&z), "smooth order not transitive at {x} {y} {z}");
    }
}

#[test]
fn smooth_nonneg_samples_are_continuous_nonneg() {
    let mut rng = seeded_rng(12);
    for _ in 0..1000 {
        let mu = random_s_nonneg(&mut rng);
        assert!(mu.geq_s_zero());
        assert!(mu.geq_c_zero(), "{mu} is >=_s 0 but not >=_c 0");
    }
}

#[test]
fn diag_reduction_to_integer_order() {
    let mut rng = seeded_rng(13);
    for _ in 0..500 {
        let v1 = rand::Rng::gen_range(&mut rng, -8i64..=8);
        let v2 = rand::Rng::gen_range(&mut rng, -8i64..=8);
        let a = RingElem::diag(v1);
        let b = RingElem::diag(v2);
        assert_eq!(a.geq_c(&b), v1 >= v2);
        assert_eq!(a.geq_s(&b), v1 >= v2);
    }
}

#[test]
fn exponent_law_matches_product() {
    let mut rng = seeded_rng(14);
    let mut checked = 0usize;
    while checked < 150 {
        let mu1 = common::random_elem(&mut rng);
        let mu2 = common::random_elem(&mut rng);
        let g = torus_point(&mut rng, 1)[0];
        let inner = mu1.power_eval(g).unwrap();
        if inner.norm() < 1e-3 || inner.norm() > 1e3 {
            continue;
        }
        let iterated = mu2.power_eval(inner).unwrap();
        let direct = (&mu1 * &mu2).power_eval(g).unwrap();
        let err = (iterated - direct).norm() / direct.norm().max(1.0);
        assert!(
            err < 1e-9,
            "(g^mu1)^mu2 != g^(mu1 mu2): mu1={mu1} mu2={mu2} g={g} err={err}"
        );
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn power_eval_basic_values() {
    let g = Complex64::new(0.0, 2.0);
    let mu = RingElem::diag(2);
    let val = mu.power_eval(g).unwrap();
    assert!((val - Complex64::new(-4.0, 0.0)).norm() < 1e-12);
}
