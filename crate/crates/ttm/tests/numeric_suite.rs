//! Finite-difference oracle for the numeric Jacobian of the chart maps.

mod common;

use num_complex::Complex64;

use common::{seeded_rng, torus_point};
use ttm::canonical::{chart_map_numeric, euler_map_matrix, jacobian_numeric};
use ttm::fixtures;
use ttm::ring::rat_f64;

const STEP: f64 = 1e-7;
const TOL: f64 = 1e-6;

fn finite_difference(
    fan: &ttm::fan::TopologicalFan,
    cone: &[usize],
    z: &[Complex64],
) -> Vec<Vec<f64>> {
    let n = fan.n;
    let m = fan.m;
    let mut out = vec![vec![0.0; 2 * m]; 2 * n];
    for k in 0..m {
        for (offset, delta) in [(0, Complex64::new(STEP, 0.0)), (m, Complex64::new(0.0, STEP))] {
            let mut plus = z.to_vec();
            let mut minus = z.to_vec();
            plus[k] += delta;
            minus[k] -= delta;
            let up = chart_map_numeric(fan, cone, &plus).unwrap();
            let um = chart_map_numeric(fan, cone, &minus).unwrap();
            for j in 0..n {
                let d = (up[j] - um[j]) / (2.0 * STEP);
                out[j][offset + k] = d.re;
                out[n + j][offset + k] = d.im;
            }
        }
    }
    out
}

#[test]
fn jacobian_matches_finite_differences() {
    let mut rng = seeded_rng(51);
    for fan in [fixtures::nontoric_fan(), fixtures::p1_fan(), fixtures::p2_fan()] {
        for cone in fan.maximal_simplices() {
            for _ in 0..8 {
                let z = torus_point(&mut rng, fan.m);
                let exact = jacobian_numeric(&fan, cone, &z).unwrap();
                let fd = finite_difference(&fan, cone, &z);
                let mut worst: f64 = 0.0;
                for (row_a, row_b) in exact.iter().zip(&fd) {
                    for (a, b) in row_a.iter().zip(row_b) {
                        worst = worst.max((a - b).abs());
                    }
                }
                assert!(
                    worst <= TOL,
                    "jacobian deviates from finite differences by {worst:.3e} on {cone:?}"
                );
            }
        }
    }
}

#[test]
fn jacobian_at_base_point_equals_exact_matrix() {
    for fan in [fixtures::nontoric_fan(), fixtures::p1_fan(), fixtures::p2_fan()] {
        let ones = vec![Complex64::new(1.0, 0.0); fan.m];
        for cone in fan.maximal_simplices() {
            let exact = euler_map_matrix(&fan, cone).unwrap();
            let numeric = jacobian_numeric(&fan, cone, &ones).unwrap();
            for i in 0..2 * fan.n {
                for j in 0..2 * fan.m {
                    let expected = rat_f64(&exact.data[i][j]);
                    assert!(
                        (numeric[i][j] - expected).abs() <= 1e-12,
                        "entry ({i},{j}) off at the base point on {cone:?}"
                    );
                }
            }
        }
    }
}
