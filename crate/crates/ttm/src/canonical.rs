//! The canonical exact sequence 0 -> X x Lie(Ker lambda) -> sum L_i -> tau X
//! -> 0 at the data level: Klyachko data of all three bundles, the exact
//! Euler map matrix J_I(x0), numeric Jacobians J_I(z), poset-level exactness
//! verification, and line-bundle transition functions.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::fan::{dual_basis, kernel_lie_basis, validate_fan, TopologicalFan};
use crate::klyachko::{CharacterMatrix, KlyachkoData};
use crate::linalg::{realify_subspace, Matrix, Subspace};
use crate::ring::{rat_f64, OrderFlavor, RVector, RingElem};
use crate::scalar::{Gauss, Rat, Scalar};

/// The line bundle L_i: rank 1, smooth flavor; weight 1 at ray i, weight 0
/// elsewhere.
pub fn line_bundle_data(fan: &TopologicalFan, i: usize) -> Result<KlyachkoData<Gauss>> {
    if i == 0 || i > fan.m {
        return Err(Error::UnknownRay(i));
    }
    let mut per_ray = BTreeMap::new();
    for k in 1..=fan.m {
        let weight = if k == i { RingElem::one() } else { RingElem::zero() };
        per_ray.insert(k, vec![(weight, Subspace::full(1))]);
    }
    KlyachkoData::new(1, OrderFlavor::Smooth, per_ray)
}

/// The direct sum of all L_i: rank m; at ray k the coordinate line e_k
/// carries weight 1 and its coordinate complement weight 0.
pub fn sum_line_bundles_data(fan: &TopologicalFan) -> Result<KlyachkoData<Gauss>> {
    let m = fan.m;
    let basis = Matrix::<Gauss>::identity(m).data;
    let mut per_ray = BTreeMap::new();
    for k in 1..=m {
        let line = Subspace::span(m, &[basis[k - 1].clone()])?;
        let complement: Vec<Vec<Gauss>> = (0..m)
            .filter(|&j| j != k - 1)
            .map(|j| basis[j].clone())
            .collect();
        let mut pieces = vec![(RingElem::one(), line)];
        if m > 1 {
            pieces.push((RingElem::zero(), Subspace::span(m, &complement)?));
        }
        per_ray.insert(k, pieces);
    }
    KlyachkoData::new(m, OrderFlavor::Smooth, per_ray)
}

/// The trivial bundle of the given rank: one piece at weight 0 per ray.
pub fn trivial_data<K: Scalar>(fan: &TopologicalFan, rank: usize) -> Result<KlyachkoData<K>> {
    let mut per_ray = BTreeMap::new();
    for k in 1..=fan.m {
        let pieces = if rank == 0 {
            Vec::new()
        } else {
            vec![(RingElem::zero(), Subspace::full(rank))]
        };
        per_ray.insert(k, pieces);
    }
    KlyachkoData::new(rank, OrderFlavor::Smooth, per_ray)
}

/// Real 2n x 2n derivative at the torus identity of the chart change from
/// the `from` cone to the `to` cone: 2x2 blocks [b 0; c v] of the brackets
/// a_ji = bracket(alpha_j^to, beta_i), laid out in (x, y) coordinate blocks.
pub fn chart_change_matrix(
    fan: &TopologicalFan,
    from: &[usize],
    to: &[usize],
) -> Result<Matrix<Rat>> {
    let from_sorted = fan.checked_maximal(from)?;
    let to_sorted = fan.checked_maximal(to)?;
    let n = fan.n;
    let duals_to = dual_basis(fan, &to_sorted)?;
    let mut out = Matrix::zero(2 * n, 2 * n);
    for (j, alpha) in duals_to.iter().enumerate() {
        for (i, &ray) in from_sorted.iter().enumerate() {
            let a = alpha.bracket(fan.ray(ray)?)?;
            out.data[j][i] = a.b.clone();
            out.data[n + j][i] = a.c.clone();
            out.data[n + j][n + i] = Rat::from_integer(a.v.clone());
        }
    }
    Ok(out)
}

/// The tangent bundle data: rank 2n over the rationals (the tangent
/// transitions are only R-linear). Pieces at ray k are expressed in the
/// realified chart coordinates of the designated cone (the first maximal
/// one): the chart line of k at weight 1, its chart complement at weight 0,
/// both pushed through the chart change into the designated coordinates.
pub fn tangent_data(fan: &TopologicalFan) -> Result<KlyachkoData<Rat>> {
    let n = fan.n;
    let designated = fan
        .maximal_simplices()
        .iter()
        .find(|s| s.len() == n)
        .cloned()
        .ok_or_else(|| Error::Precondition("no full-dimensional cone".into()))?;
    let mut per_ray = BTreeMap::new();
    for k in 1..=fan.m {
        let chart = fan.enclosing_maximal(&[k])?;
        let m = chart_change_matrix(fan, &chart, &designated)?;
        let pos = chart.iter().position(|&i| i == k).expect("ray in its chart");
        let chart_line = chart_coordinate_plane(n, &[pos]);
        let others: Vec<usize> = (0..n).filter(|&j| j != pos).collect();
        let line = chart_line.image(&m)?;
        let mut pieces = vec![(RingElem::one(), line)];
        if n > 1 {
            pieces.push((
                RingElem::zero(),
                chart_coordinate_plane(n, &others).image(&m)?,
            ));
        }
        per_ray.insert(k, pieces);
    }
    KlyachkoData::new(2 * n, OrderFlavor::Smooth, per_ray)
}

/// Realified span of the complex coordinate directions at the given
/// positions: for each position p, the plane spanned by x_p and y_p.
fn chart_coordinate_plane(n: usize, positions: &[usize]) -> Subspace<Rat> {
    let vecs: Vec<Vec<Rat>> = positions
        .iter()
        .flat_map(|&p| {
            let mut x = vec![Rat::zero(); 2 * n];
            x[p] = Rat::one();
            let mut y = vec![Rat::zero(); 2 * n];
            y[n + p] = Rat::one();
            [x, y]
        })
        .collect();
    Subspace::span(2 * n, &vecs).expect("coordinate plane")
}

/// The exact Euler map matrix J_I(x0): 2n x 2m rational, columns ordered
/// (x_1..x_m, y_1..y_m), rows (x_j for j in sorted I, then y_j), with
/// identity blocks in the I-columns and bracket blocks elsewhere.
pub fn euler_map_matrix(fan: &TopologicalFan, simplex: &[usize]) -> Result<Matrix<Rat>> {
    let i_sorted = fan.checked_maximal(simplex)?;
    let n = fan.n;
    let m = fan.m;
    let duals = dual_basis(fan, &i_sorted)?;
    let mut out = Matrix::zero(2 * n, 2 * m);
    for (j, alpha) in duals.iter().enumerate() {
        let ray_j = i_sorted[j];
        out.data[j][ray_j - 1] = Rat::one();
        out.data[n + j][m + ray_j - 1] = Rat::one();
        for k in 1..=m {
            if i_sorted.contains(&k) {
                continue;
            }
            let a = alpha.bracket(fan.ray(k)?)?;
            out.data[j][k - 1] = a.b.clone();
            out.data[n + j][k - 1] = a.c.clone();
            out.data[n + j][m + k - 1] = Rat::from_integer(a.v.clone());
        }
    }
    Ok(out)
}

/// The chart map phi_I at a numeric torus point: u_j(z) = z_j prod_{l not in
/// I} z_l^{a_jl} for j in sorted I.
pub fn chart_map_numeric(
    fan: &TopologicalFan,
    simplex: &[usize],
    z: &[Complex64],
) -> Result<Vec<Complex64>> {
    let i_sorted = fan.checked_maximal(simplex)?;
    if z.len() != fan.m {
        return Err(Error::Dimension("chart point length".into()));
    }
    if z.iter().any(|g| g.norm() == 0.0) {
        return Err(Error::Domain("chart map sampled at a zero coordinate".into()));
    }
    let duals = dual_basis(fan, &i_sorted)?;
    let mut out = Vec::with_capacity(fan.n);
    for (j, alpha) in duals.iter().enumerate() {
        let mut u = z[i_sorted[j] - 1];
        for k in 1..=fan.m {
            if i_sorted.contains(&k) {
                continue;
            }
            let a = alpha.bracket(fan.ray(k)?)?;
            u *= a.power_eval(z[k - 1])?;
        }
        out.push(u);
    }
    Ok(out)
}

/// Numeric Jacobian of the chart map at a torus point, as the real
/// 2n x 2m matrix in the same coordinate layout as `euler_map_matrix`.
pub fn jacobian_numeric(
    fan: &TopologicalFan,
    simplex: &[usize],
    z: &[Complex64],
) -> Result<Vec<Vec<f64>>> {
    let i_sorted = fan.checked_maximal(simplex)?;
    if z.len() != fan.m {
        return Err(Error::Dimension("jacobian point length".into()));
    }
    if z.iter().any(|g| g.norm() == 0.0) {
        return Err(Error::Domain("jacobian sampled at a zero coordinate".into()));
    }
    let n = fan.n;
    let m = fan.m;
    let duals = dual_basis(fan, &i_sorted)?;
    let u = chart_map_numeric(fan, &i_sorted, z)?;
    // Holomorphic and antiholomorphic derivative blocks A and B.
    let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    let mut b = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for (j, alpha) in duals.iter().enumerate() {
        a[j][i_sorted[j] - 1] = u[j] / z[i_sorted[j] - 1];
        for k in 1..=m {
            if i_sorted.contains(&k) {
                continue;
            }
            let br = alpha.bracket(fan.ray(k)?)?;
            let bc = Complex64::new(rat_f64(&br.b), rat_f64(&br.c));
            let v = Complex64::new(
                {
                    use num_traits::ToPrimitive;
                    br.v.to_f64().expect("winding exponent fits in f64")
                },
                0.0,
            );
            a[j][k - 1] = (bc + v) / (2.0 * z[k - 1]) * u[j];
            b[j][k - 1] = (bc - v) / (2.0 * z[k - 1].conj()) * u[j];
        }
    }
    // Real form: d(x+iy) -> [[Re A + Re B, -Im A + Im B], [Im A + Im B, Re A - Re B]].
    let mut out = vec![vec![0.0; 2 * m]; 2 * n];
    for j in 0..n {
        for k in 0..m {
            out[j][k] = a[j][k].re + b[j][k].re;
            out[j][m + k] = -a[j][k].im + b[j][k].im;
            out[n + j][k] = a[j][k].im + b[j][k].im;
            out[n + j][m + k] = a[j][k].re - b[j][k].re;
        }
    }
    Ok(out)
}

/// One weight-regime check at one ray of one cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub ray: usize,
    pub regime: String,
    pub kernel_dim: usize,
    pub ok: bool,
}

/// Per-cone part of the Euler sequence verification.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeEulerReport {
    pub simplex: Vec<usize>,
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_matches_lie: bool,
    pub cases: Vec<CaseReport>,
    pub ok: bool,
}

/// Outcome of `verify_euler_sequence`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EulerReport {
    pub ok: bool,
    pub cones: Vec<ConeEulerReport>,
}

fn verify_one_cone(fan: &TopologicalFan, simplex: &[usize]) -> Result<ConeEulerReport> {
    let n = fan.n;
    let m = fan.m;
    let j_mat = euler_map_matrix(fan, simplex)?;
    let rank = j_mat.rank();
    let kernel = Subspace::span(2 * m, &j_mat.kernel())?;
    let lie = kernel_lie_basis(fan, simplex)?;
    let kernel_matches_lie = kernel == lie;
    let sum_data = sum_line_bundles_data(fan)?;
    // Weight regimes, each witnessed by one representative weight.
    let regimes = [
        ("0>=mu", RingElem::zero(), true),
        ("1>=mu,0!>=mu", RingElem::one(), false),
        ("neither", RingElem::from_ints(2, 0, 0), false),
    ];
    let mut cases = Vec::new();
    let mut all_cases_ok = true;
    for &k in simplex {
        let pos = simplex.iter().position(|&i| i == k).expect("ray in simplex");
        for (name, mu, full_kernel) in &regimes {
            // E^k(mu) of the sum of line bundles, realified.
            let e_sub = realify_subspace(&sum_data.filtration_value(k, mu)?);
            // T^k(mu) in chart coordinates: chart lines i with
            // bracket(alpha_i^I, beta_k) = delta_ik dominating mu.
            let mut t_positions = Vec::new();
            for i in 0..n {
                let weight = if i == pos { RingElem::one() } else { RingElem::zero() };
                if weight.geq_s(mu) {
                    t_positions.push(i);
                }
            }
            let t_sub = chart_coordinate_plane(n, &t_positions);
            let image = e_sub.image(&j_mat)?;
            let kernel_dim = e_sub.dim() - image.dim();
            let expected_kernel = if *full_kernel { 2 * (m - n) } else { 0 };
            let ok = image == t_sub && kernel_dim == expected_kernel;
            all_cases_ok &= ok;
            cases.push(CaseReport {
                ray: k,
                regime: (*name).to_string(),
                kernel_dim,
                ok,
            });
        }
    }
    let ok = rank == 2 * n && kernel_matches_lie && kernel.dim() == 2 * (m - n) && all_cases_ok;
    Ok(ConeEulerReport {
        simplex: simplex.to_vec(),
        rank,
        kernel_dim: kernel.dim(),
        kernel_matches_lie,
        cases,
        ok,
    })
}

/// Verify the canonical sequence on every maximal cone: full rank 2n, exact
/// kernel equal to Lie(Ker lambda), and the three weight-regime cases for
/// every ray of the cone.
pub fn verify_euler_sequence_mode(fan: &TopologicalFan, mode: ExecMode) -> Result<EulerReport> {
    let report = validate_fan(fan)?;
    if !report.all_ok() {
        return Err(Error::Precondition(format!(
            "fan must be valid, complete, and nonsingular: {:?}",
            report.diagnostics
        )));
    }
    let simplices: Vec<Vec<usize>> = fan.maximal_simplices().to_vec();
    let outcomes = exec::map_items(mode, simplices, |s| verify_one_cone(fan, &s));
    let cones: Vec<ConeEulerReport> = outcomes.into_iter().collect::<Result<_>>()?;
    let ok = cones.iter().all(|c| c.ok);
    Ok(EulerReport { ok, cones })
}

pub fn verify_euler_sequence(fan: &TopologicalFan) -> Result<EulerReport> {
    verify_euler_sequence_mode(fan, ExecMode::default())
}

/// Transition function of the line bundle L_i between two maximal cones, as
/// a 1x1 character matrix: exponent chi_I - chi_J where chi_K = alpha_i^K
/// when i lies in K and 0 otherwise.
pub fn line_bundle_transition(
    fan: &TopologicalFan,
    i: usize,
    simplex_i: &[usize],
    simplex_j: &[usize],
) -> Result<CharacterMatrix<Rat>> {
    let chi_of = |cone: &[usize]| -> Result<RVector> {
        let sorted = fan.checked_maximal(cone)?;
        match sorted.iter().position(|&r| r == i) {
            Some(pos) => Ok(dual_basis(fan, &sorted)?[pos].clone()),
            None => Ok(RVector::zero(fan.n)),
        }
    };
    if i == 0 || i > fan.m {
        return Err(Error::UnknownRay(i));
    }
    let exponent = chi_of(simplex_i)?.sub(&chi_of(simplex_j)?);
    Ok(CharacterMatrix {
        rows: 1,
        cols: 1,
        entries: vec![vec![Some((Rat::one(), exponent))]],
    })
}
