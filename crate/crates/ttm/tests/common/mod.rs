//! Shared helpers for the integration suites: seeded sampling, independent
//! oracles for compatibility and hom dimensions, and numeric utilities.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ttm::fan::TopologicalFan;
use ttm::klyachko::KlyachkoData;
use ttm::linalg::{Matrix, Subspace};
use ttm::scalar::{rat, rat_i, Gauss, Scalar};
use ttm::{OrderFlavor, RVector, RingElem};

pub const BASE_SEED: u64 = 20240601;

pub fn seeded_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(BASE_SEED.wrapping_add(salt))
}

/// A random point of the compact-ish torus region: moduli in [1/2, 2],
/// arbitrary phases.
pub fn torus_point<R: Rng>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| {
            let modulus = rng.gen_range(0.5..=2.0);
            let phase = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            Complex64::from_polar(modulus, phase)
        })
        .collect()
}

/// A random ring element with small rational real parts and a small winding.
pub fn random_elem<R: Rng>(rng: &mut R) -> RingElem {
    RingElem::new(
        rat(rng.gen_range(-12..=12), rng.gen_range(1..=4)),
        rat(rng.gen_range(-12..=12), rng.gen_range(1..=4)),
        num_bigint::BigInt::from(rng.gen_range(-6i64..=6)),
    )
}

/// A random element with mu >=_c 0 (positive real part, or zero).
pub fn random_c_nonneg<R: Rng>(rng: &mut R) -> RingElem {
    if rng.gen_ratio(1, 8) {
        RingElem::zero()
    } else {
        RingElem::new(
            rat(rng.gen_range(1..=12), rng.gen_range(1..=4)),
            rat(rng.gen_range(-12..=12), rng.gen_range(1..=4)),
            num_bigint::BigInt::from(rng.gen_range(-6i64..=6)),
        )
    }
}

/// A random element with mu >=_s 0: c = 0, b a nonnegative integer with
/// b + v and b - v nonnegative and even.
pub fn random_s_nonneg<R: Rng>(rng: &mut R) -> RingElem {
    let v = rng.gen_range(-4i64..=4);
    let extra = 2 * rng.gen_range(0i64..=3);
    let b = v.abs() + extra;
    RingElem::from_ints(b, 0, v)
}

/// Arbitrary (not necessarily compatible) Klyachko data: per ray, a random
/// invertible frame partitioned into pieces with random distinct weights.
pub fn random_arbitrary_data<R: Rng>(
    fan: &TopologicalFan,
    rng: &mut R,
    rank: usize,
    max_weights: usize,
    flavor: OrderFlavor,
) -> KlyachkoData<Gauss> {
    let mut per_ray = BTreeMap::new();
    for i in 1..=fan.m {
        let frame = random_invertible(rng, rank);
        let piece_count = rng.gen_range(1..=max_weights.min(rank.max(1)));
        // Partition the frame columns into piece_count nonempty groups.
        let mut cut_points: Vec<usize> = (1..rank).collect();
        for k in (1..cut_points.len()).rev() {
            cut_points.swap(k, rng.gen_range(0..=k));
        }
        let mut cuts: Vec<usize> = cut_points.into_iter().take(piece_count - 1).collect();
        cuts.push(0);
        cuts.push(rank);
        cuts.sort_unstable();
        cuts.dedup();
        let mut weights: Vec<RingElem> = Vec::new();
        while weights.len() + 1 < cuts.len() {
            let w = random_elem(rng);
            if !weights.contains(&w) {
                weights.push(w);
            }
        }
        weights.sort();
        let pieces: Vec<(RingElem, Subspace<Gauss>)> = cuts
            .windows(2)
            .zip(weights)
            .map(|(range, w)| {
                let vs: Vec<Vec<Gauss>> = frame[range[0]..range[1]].to_vec();
                (w, Subspace::span(rank, &vs).unwrap())
            })
            .collect();
        per_ray.insert(i, pieces);
    }
    KlyachkoData::new(rank, flavor, per_ray).expect("partitioned frame is valid data")
}

/// Compatible-by-construction data whose characters come from a pool of at
/// most `max_chars` values, bounding the number of distinct weights per ray.
pub fn random_pooled_compatible_data<R: Rng>(
    fan: &TopologicalFan,
    rng: &mut R,
    rank: usize,
    max_chars: usize,
    flavor: OrderFlavor,
) -> (KlyachkoData<Gauss>, Vec<(RVector, Subspace<Gauss>)>) {
    let pool: Vec<RVector> = (0..max_chars.min(rank).max(1))
        .map(|_| ttm::fixtures::random_character(rng, fan.n))
        .collect();
    let assigned: Vec<RVector> = (0..rank)
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    let frame = random_invertible(rng, rank);
    // Merge frame columns sharing a character into one grading piece.
    let mut grouped: Vec<(RVector, Vec<Vec<Gauss>>)> = Vec::new();
    for (chi, v) in assigned.iter().zip(&frame) {
        match grouped.iter_mut().find(|(c, _)| c == chi) {
            Some((_, vs)) => vs.push(v.clone()),
            None => grouped.push((chi.clone(), vec![v.clone()])),
        }
    }
    let grading: Vec<(RVector, Subspace<Gauss>)> = grouped
        .iter()
        .map(|(chi, vs)| (chi.clone(), Subspace::span(rank, vs).unwrap()))
        .collect();
    let mut per_ray = BTreeMap::new();
    for i in 1..=fan.m {
        let beta = fan.ray(i).unwrap();
        let mut groups: BTreeMap<RingElem, Vec<Vec<Gauss>>> = BTreeMap::new();
        for (chi, v) in assigned.iter().zip(&frame) {
            groups
                .entry(chi.bracket(beta).unwrap())
                .or_default()
                .push(v.clone());
        }
        let pieces: Vec<(RingElem, Subspace<Gauss>)> = groups
            .into_iter()
            .map(|(w, vs)| (w, Subspace::span(rank, &vs).unwrap()))
            .collect();
        per_ray.insert(i, pieces);
    }
    let data = KlyachkoData::new(rank, flavor, per_ray).expect("pooled data is valid");
    (data, grading)
}

/// Central finite differences of the chart map, in the real coordinate
/// layout of `jacobian_numeric`.
pub fn finite_difference_jacobian(
    fan: &TopologicalFan,
    cone: &[usize],
    z: &[Complex64],
    step: f64,
) -> Vec<Vec<f64>> {
    let n = fan.n;
    let m = fan.m;
    let mut out = vec![vec![0.0; 2 * m]; 2 * n];
    for k in 0..m {
        for (offset, delta) in [
            (0, Complex64::new(step, 0.0)),
            (m, Complex64::new(0.0, step)),
        ] {
            let mut plus = z.to_vec();
            let mut minus = z.to_vec();
            plus[k] += delta;
            minus[k] -= delta;
            let up = ttm::canonical::chart_map_numeric(fan, cone, &plus).unwrap();
            let um = ttm::canonical::chart_map_numeric(fan, cone, &minus).unwrap();
            for j in 0..n {
                let d = (up[j] - um[j]) / (2.0 * step);
                out[j][offset + k] = d.re;
                out[n + j][offset + k] = d.im;
            }
        }
    }
    out
}

fn random_invertible<R: Rng>(rng: &mut R, rank: usize) -> Vec<Vec<Gauss>> {
    loop {
        let cand: Vec<Vec<Gauss>> = (0..rank)
            .map(|_| {
                (0..rank)
                    .map(|_| {
                        Gauss::new(rat_i(rng.gen_range(-2..=2)), rat_i(rng.gen_range(-2..=2)))
                    })
                    .collect()
            })
            .collect();
        if rank == 0 || Matrix::new(cand.clone()).unwrap().rank() == rank {
            return cand;
        }
    }
}

/// Distributive-lattice oracle for per-cone compatibility: a family of
/// subspaces admits a common splitting exactly when the lattice it generates
/// under sum and intersection is distributive.
pub fn lattice_distributive(ambient: usize, generators: &[Subspace<Gauss>]) -> bool {
    // A family with a common splitting generates a lattice of subspaces
    // spanned by subsets of at most `ambient` lines: at most 2^ambient
    // elements. A closure that outgrows that bound cannot be distributive,
    // so the cap below is a sound early negative (the free modular lattice
    // on four or more generators is infinite).
    let cap = (1usize << ambient) + 2;
    let mut closure: Vec<Subspace<Gauss>> =
        vec![Subspace::zero(ambient), Subspace::full(ambient)];
    for g in generators {
        if !closure.contains(g) {
            closure.push(g.clone());
        }
    }
    if closure.len() > cap {
        return false;
    }
    loop {
        let mut added = false;
        let snapshot = closure.clone();
        for a in &snapshot {
            for b in &snapshot {
                for c in [a.sum(b).unwrap(), a.intersect(b).unwrap()] {
                    if !closure.contains(&c) {
                        closure.push(c);
                        added = true;
                        if closure.len() > cap {
                            return false;
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    for a in &closure {
        for b in &closure {
            for c in &closure {
                let lhs = a.intersect(&b.sum(c).unwrap()).unwrap();
                let rhs = a.intersect(b).unwrap().sum(&a.intersect(c).unwrap()).unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Oracle verdict for whole-fan compatibility via per-cone lattice
/// distributivity (valid when all maximal simplices are full-dimensional).
pub fn oracle_compatible(fan: &TopologicalFan, data: &KlyachkoData<Gauss>) -> bool {
    for cone in fan.maximal_simplices() {
        let mut generators = Vec::new();
        for &i in cone {
            for (w, _) in data.pieces(i).unwrap() {
                generators.push(data.filtration_value(i, w).unwrap());
            }
        }
        if !lattice_distributive(data.rank, &generators) {
            return false;
        }
    }
    true
}

/// Brute-force hom dimension over a chart: the kernel dimension of the
/// linear system expressing that a rank_f x rank_e matrix maps every stored
/// filtration value of the source into the target's value at the same
/// weight, for every ray of the cone.
pub fn brute_hom_dimension(
    e: &KlyachkoData<Gauss>,
    f: &KlyachkoData<Gauss>,
    cone: &[usize],
) -> usize {
    let re = e.rank;
    let rf = f.rank;
    let unknowns = rf * re;
    let mut rows: Vec<Vec<Gauss>> = Vec::new();
    for &i in cone {
        for (w, _) in e.pieces(i).unwrap() {
            let source = e.filtration_value(i, w).unwrap();
            let target = f.filtration_value(i, w).unwrap();
            let pivots: Vec<usize> = target
                .basis()
                .iter()
                .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
                .collect();
            for v in source.basis() {
                // (M v) reduced against the target's echelon rows must vanish.
                for l in 0..rf {
                    let mut row = vec![Gauss::zero(); unknowns];
                    for c in 0..re {
                        // Contribution of M[l][c] itself, minus the
                        // projections onto the echelon rows of the target.
                        row[l * re + c] = row[l * re + c].add(&v[c]);
                        for (k, &p) in pivots.iter().enumerate() {
                            let factor = target.basis()[k][l].mul(&v[c]);
                            row[p * re + c] = row[p * re + c].sub(&factor);
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    let m = Matrix::new(rows).unwrap();
    unknowns - m.rank()
}

/// Max absolute deviation of a complex matrix product chain from the
/// identity.
pub fn deviation_from_identity(chain: &[Vec<Vec<Complex64>>]) -> f64 {
    let mut acc = chain[0].clone();
    for next in &chain[1..] {
        acc = mat_mul(&acc, next);
    }
    let n = acc.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((acc[i][j] - expected).norm());
        }
    }
    worst
}

pub fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let p = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); p]; n];
    for i in 0..n {
        for j in 0..p {
            for l in 0..k {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

/// Reconstruct every stored filtration value of `data` from a grading given
/// as (character, piece) pairs; equality certifies the round trip.
pub fn filtrations_recovered(
    fan: &TopologicalFan,
    data: &KlyachkoData<Gauss>,
    grading: &[(RVector, Subspace<Gauss>)],
) -> bool {
    for i in data.rays() {
        let beta = fan.ray(i).unwrap();
        for (w, _) in data.pieces(i).unwrap() {
            let mut span = Subspace::zero(data.rank);
            for (chi, piece) in grading {
                let bracket = chi.bracket(beta).unwrap();
                if bracket.geq(w, data.flavor) {
                    span = span.sum(piece).unwrap();
                }
            }
            if span != data.filtration_value(i, w).unwrap() {
                return false;
            }
        }
    }
    true
}
