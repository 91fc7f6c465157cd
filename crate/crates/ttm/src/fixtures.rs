//! Bundled example fans and data sets used by tests, benchmarks, and the
//! CLI `example` verb.
//!
//! The star fixture is a complete nonsingular 2-dimensional fan with four
//! rays whose winding parts disagree with their real parts, so it admits no
//! invariant complex structure ("nontoric" below). The diag fixtures are the
//! classical projective-space fans embedded diagonally.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::fan::TopologicalFan;
use crate::klyachko::KlyachkoData;
use crate::linalg::{Matrix, Subspace};
use crate::ring::{OrderFlavor, RVector, RingElem};
use crate::scalar::{rat_i, Gauss};

fn elem(b: i64, v: i64) -> RingElem {
    RingElem::new(rat_i(b), rat_i(0), BigInt::from(v))
}

fn rv(parts: &[(i64, i64)]) -> RVector {
    RVector::new(parts.iter().map(|&(b, v)| elem(b, v)).collect())
}

/// The complete nonsingular non-toric fan: n = 2, four rays, four maximal
/// cones {1,2}, {2,3}, {3,4}, {1,4}.
pub fn nontoric_fan() -> TopologicalFan {
    let rays = vec![
        rv(&[(1, 1), (0, 0)]),
        rv(&[(0, 0), (1, 1)]),
        rv(&[(-1, -1), (0, -2)]),
        rv(&[(-1, -1), (-1, -1)]),
    ];
    let maximal = vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]];
    TopologicalFan::new(2, rays, maximal).expect("nontoric fixture is well-formed")
}

/// Expected dual vectors of the nontoric fan, one entry per maximal cone in
/// sorted-cone order, each listing the duals in the order of the sorted cone.
pub fn nontoric_expected_duals() -> Vec<(Vec<usize>, Vec<RVector>)> {
    vec![
        (
            vec![1, 2],
            vec![rv(&[(1, 1), (0, 0)]), rv(&[(0, 0), (1, 1)])],
        ),
        (
            vec![1, 4],
            vec![rv(&[(1, 1), (-1, -1)]), rv(&[(0, 0), (-1, -1)])],
        ),
        (
            vec![2, 3],
            vec![rv(&[(0, -2), (1, 1)]), rv(&[(-1, -1), (0, 0)])],
        ),
        (
            vec![3, 4],
            vec![rv(&[(-1, 1), (1, -1)]), rv(&[(0, -2), (-1, 1)])],
        ),
    ]
}

/// Diag projective-line fan: n = 1, rays +1 and -1.
pub fn p1_fan() -> TopologicalFan {
    let rays = vec![rv(&[(1, 1)]), rv(&[(-1, -1)])];
    TopologicalFan::new(1, rays, vec![vec![1], vec![2]]).expect("p1 fixture")
}

/// Diag projective-plane fan: n = 2, rays e1, e2, -e1-e2.
pub fn p2_fan() -> TopologicalFan {
    let rays = vec![
        rv(&[(1, 1), (0, 0)]),
        rv(&[(0, 0), (1, 1)]),
        rv(&[(-1, -1), (-1, -1)]),
    ];
    let maximal = vec![vec![1, 2], vec![2, 3], vec![1, 3]];
    TopologicalFan::new(2, rays, maximal).expect("p2 fixture")
}

/// Diag affine 3-space fan: n = 3, rays e1, e2, e3, one maximal cone.
/// Not complete; used for compatibility counterexamples.
pub fn affine3_fan() -> TopologicalFan {
    let rays = vec![
        rv(&[(1, 1), (0, 0), (0, 0)]),
        rv(&[(0, 0), (1, 1), (0, 0)]),
        rv(&[(0, 0), (0, 0), (1, 1)]),
    ];
    TopologicalFan::new(3, rays, vec![vec![1, 2, 3]]).expect("affine3 fixture")
}

/// A random character in R^n with small integer parts.
pub fn random_character<R: Rng>(rng: &mut R, n: usize) -> RVector {
    RVector::new(
        (0..n)
            .map(|_| {
                RingElem::from_ints(
                    rng.gen_range(-2..=2),
                    rng.gen_range(-2..=2),
                    rng.gen_range(-2..=2),
                )
            })
            .collect(),
    )
}

/// Random Klyachko data built from an explicit global grading, hence always
/// compatible: choose `rank` characters and an invertible frame, then grade
/// each ray by the bracket values. Returns the data together with the
/// generating (character, piece) list.
pub fn random_compatible_data<R: Rng>(
    fan: &TopologicalFan,
    rng: &mut R,
    rank: usize,
    flavor: OrderFlavor,
) -> (KlyachkoData<Gauss>, Vec<(RVector, Subspace<Gauss>)>) {
    let characters: Vec<RVector> = (0..rank).map(|_| random_character(rng, fan.n)).collect();
    // An invertible frame over the Gaussian rationals.
    let frame: Vec<Vec<Gauss>> = loop {
        let cand: Vec<Vec<Gauss>> = (0..rank)
            .map(|_| {
                (0..rank)
                    .map(|_| {
                        Gauss::new(
                            rat_i(rng.gen_range(-2..=2)),
                            rat_i(rng.gen_range(-2..=2)),
                        )
                    })
                    .collect()
            })
            .collect();
        if rank == 0 || Matrix::new(cand.clone()).unwrap().rank() == rank {
            break cand;
        }
    };
    let grading: Vec<(RVector, Subspace<Gauss>)> = characters
        .iter()
        .zip(&frame)
        .map(|(chi, v)| {
            (
                chi.clone(),
                Subspace::span(rank, std::slice::from_ref(v)).unwrap(),
            )
        })
        .collect();
    let mut per_ray = BTreeMap::new();
    for i in 1..=fan.m {
        let beta = fan.ray(i).unwrap();
        let mut groups: BTreeMap<RingElem, Vec<Vec<Gauss>>> = BTreeMap::new();
        for (chi, v) in characters.iter().zip(&frame) {
            let w = chi.bracket(beta).unwrap();
            groups.entry(w).or_default().push(v.clone());
        }
        let pieces: Vec<(RingElem, Subspace<Gauss>)> = groups
            .into_iter()
            .map(|(w, vs)| (w, Subspace::span(rank, &vs).unwrap()))
            .collect();
        per_ray.insert(i, pieces);
    }
    let data = KlyachkoData::new(rank, flavor, per_ray).expect("graded data is valid");
    (data, grading)
}

/// Rank-2 data on the affine 3-space fan whose weight-1 subspaces are three
/// pairwise distinct lines; no grading of C^2 can split all three, so the
/// data is incompatible.
pub fn three_lines_data() -> KlyachkoData<Gauss> {
    let line = |coords: [i64; 2]| {
        let v: Vec<Gauss> = coords.iter().map(|&x| Gauss::from_int(x)).collect();
        Subspace::span(2, &[v]).unwrap()
    };
    let lines = [[1, 0], [0, 1], [1, 1]];
    let complements = [[0, 1], [1, 0], [1, 0]];
    let mut per_ray = BTreeMap::new();
    for ray in 1..=3usize {
        per_ray.insert(
            ray,
            vec![
                (RingElem::one(), line(lines[ray - 1])),
                (RingElem::zero(), line(complements[ray - 1])),
            ],
        );
    }
    KlyachkoData::new(2, OrderFlavor::Smooth, per_ray).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::validate_fan;

    #[test]
    fn fixtures_validate() {
        for fan in [nontoric_fan(), p1_fan(), p2_fan()] {
            let report = validate_fan(&fan).unwrap();
            assert!(report.all_ok(), "diagnostics: {:?}", report.diagnostics);
        }
        let report = validate_fan(&affine3_fan()).unwrap();
        assert!(report.condition1_ok && report.condition2_ok && report.nonsingular);
        assert!(!report.complete);
    }
}
