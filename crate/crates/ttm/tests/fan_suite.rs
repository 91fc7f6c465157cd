//! Duality, annihilator, kernel, and orbit properties of the fan layer.

mod common;

use common::seeded_rng;
use ttm::fan::{beta_perp, decompose_in_dual, dual_basis, kernel_lie_basis};
use ttm::fixtures;
use ttm::orbits::{chart_orbits, closure_orbits, enumerate_orbits};
use ttm::{RVector, RingElem};

#[test]
fn dual_basis_reproduces_fixture_tables() {
    let fan = fixtures::nontoric_fan();
    for (cone, expected) in fixtures::nontoric_expected_duals() {
        let duals = dual_basis(&fan, &cone).unwrap();
        assert_eq!(duals, expected, "duals differ on cone {cone:?}");
    }
}

#[test]
fn dual_basis_bracket_identity_all_fixtures() {
    for fan in [
        fixtures::nontoric_fan(),
        fixtures::p1_fan(),
        fixtures::p2_fan(),
        fixtures::affine3_fan(),
    ] {
        for cone in fan.maximal_simplices() {
            if cone.len() != fan.n {
                continue;
            }
            let duals = dual_basis(&fan, cone).unwrap();
            for (pos_i, alpha) in duals.iter().enumerate() {
                for (pos_j, &j) in cone.iter().enumerate() {
                    let a = alpha.bracket(fan.ray(j).unwrap()).unwrap();
                    let expected = if pos_i == pos_j {
                        RingElem::one()
                    } else {
                        RingElem::zero()
                    };
                    assert_eq!(a, expected, "bracket at cone {cone:?} ({pos_i},{pos_j})");
                }
            }
        }
    }
}

#[test]
fn decompose_round_trips_random_characters() {
    let fan = fixtures::nontoric_fan();
    let mut rng = seeded_rng(31);
    for cone in fan.maximal_simplices() {
        let duals = dual_basis(&fan, cone).unwrap();
        for _ in 0..100 {
            let coeffs: Vec<RingElem> = (0..fan.n).map(|_| common::random_elem(&mut rng)).collect();
            let mut chi = RVector::zero(fan.n);
            for (mu, alpha) in coeffs.iter().zip(&duals) {
                chi = chi.add(&alpha.scale_left(mu));
            }
            let recovered = decompose_in_dual(&fan, &chi, cone).unwrap();
            assert_eq!(recovered, coeffs, "decomposition differs on {cone:?}");
        }
    }
}

#[test]
fn beta_perp_annihilates_and_contains_its_elements() {
    let fan = fixtures::nontoric_fan();
    // A proper face gives a nontrivial annihilator.
    let perp = beta_perp(&fan, &[1]).unwrap();
    assert!(perp.bc_space.dim() > 0 || !perp.v_lattice.is_empty());
    let mut rng = seeded_rng(32);
    for _ in 0..50 {
        let bc: Vec<ttm::Rat> = {
            // Random combination of the (b, c) solution space basis.
            let mut v = vec![ttm::scalar::rat_i(0); 2 * fan.n];
            for row in perp.bc_space.basis() {
                let c = ttm::scalar::rat_i(rand::Rng::gen_range(&mut rng, -3..=3));
                for (slot, x) in v.iter_mut().zip(row) {
                    *slot = slot.clone() + c.clone() * x.clone();
                }
            }
            v
        };
        let v: Vec<num_bigint::BigInt> = {
            let mut acc = vec![num_bigint::BigInt::from(0); fan.n];
            for gen in &perp.v_lattice {
                let c = num_bigint::BigInt::from(rand::Rng::gen_range(&mut rng, -3i64..=3));
                for (slot, x) in acc.iter_mut().zip(gen) {
                    *slot += c.clone() * x;
                }
            }
            acc
        };
        let alpha = perp.element(&bc, &v).unwrap();
        assert!(perp.contains(&alpha).unwrap());
        let bracket = alpha.bracket(fan.ray(1).unwrap()).unwrap();
        assert!(bracket.is_zero(), "annihilator fails: {bracket}");
    }
    // Duals of the other ray of an enclosing cone are not annihilated.
    let duals = dual_basis(&fan, &[1, 2]).unwrap();
    assert!(!perp.contains(&duals[0]).unwrap());
}

#[test]
fn kernel_lie_is_chart_independent() {
    for fan in [fixtures::nontoric_fan(), fixtures::p2_fan(), fixtures::p1_fan()] {
        let cones = fan.maximal_simplices();
        let first = kernel_lie_basis(&fan, &cones[0]).unwrap();
        assert_eq!(first.dim(), 2 * (fan.m - fan.n));
        for cone in &cones[1..] {
            let other = kernel_lie_basis(&fan, cone).unwrap();
            assert_eq!(first, other, "kernel differs between charts on {cone:?}");
        }
    }
}

#[test]
fn orbit_duality_all_pairs() {
    let fan = fixtures::nontoric_fan();
    let orbits = enumerate_orbits(&fan);
    for a in &orbits {
        for b in &orbits {
            let in_chart = chart_orbits(&fan, &b.simplex).unwrap().contains(&a.simplex);
            let in_closure = closure_orbits(&fan, &a.simplex).unwrap().contains(&b.simplex);
            assert_eq!(
                in_chart, in_closure,
                "chart/closure duality fails for {:?} vs {:?}",
                a.simplex, b.simplex
            );
        }
    }
}
