//! Exact polyhedral feasibility for simplicial cones: Fourier-Motzkin
//! elimination over Q, relative-interior disjointness, and cone membership.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rat;

/// One linear constraint `coeffs . x >= rhs`.
#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rat>,
    rhs: Rat,
}

/// Decide feasibility of a system of inequalities by Fourier-Motzkin
/// elimination. Intended for desk-scale systems only.
fn fm_feasible(mut system: Vec<Ineq>, nvars: usize) -> bool {
    for var in (0..nvars).rev() {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for ineq in system {
            let a = &ineq.coeffs[var];
            if a.is_positive() {
                pos.push(ineq);
            } else if a.is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq);
            }
        }
        // Combine each (lower bound, upper bound) pair on the variable.
        for p in &pos {
            for q in &neg {
                let ap = p.coeffs[var].clone();
                let aq = -q.coeffs[var].clone();
                let coeffs: Vec<Rat> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(cp, cq)| cp * &aq + cq * &ap)
                    .collect();
                let rhs = &p.rhs * &aq + &q.rhs * &ap;
                rest.push(Ineq { coeffs, rhs });
            }
        }
        system = rest;
    }
    system.iter().all(|ineq| !ineq.rhs.is_positive())
}

/// Do the relative interiors of the simplicial cones spanned by `a` and `b`
/// (columns of independent generators in R^dim) intersect? Empty generator
/// sets denote the cone {0}, whose relative interior is {0} itself.
pub fn relative_interiors_meet(dim: usize, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Result<bool> {
    if a.iter().chain(b).any(|v| v.len() != dim) {
        return Err(Error::Dimension("cone generator length".into()));
    }
    if a.is_empty() || b.is_empty() {
        // relint of {0} is {0}; it meets another relint only if both are {0}.
        return Ok(a.is_empty() && b.is_empty());
    }
    // Feasibility of sum lambda_i a_i = sum mu_j b_j with all coefficients
    // >= 1 (homogeneity makes ">= 1" equivalent to "> 0").
    let ka = a.len();
    let kb = b.len();
    let nvars = ka + kb;
    let mut system = Vec::new();
    for row in 0..dim {
        let mut coeffs = Vec::with_capacity(nvars);
        for g in a {
            coeffs.push(g[row].clone());
        }
        for g in b {
            coeffs.push(-g[row].clone());
        }
        system.push(Ineq {
            coeffs: coeffs.clone(),
            rhs: Rat::zero(),
        });
        system.push(Ineq {
            coeffs: coeffs.iter().map(|c| -c).collect(),
            rhs: Rat::zero(),
        });
    }
    for var in 0..nvars {
        let mut coeffs = vec![Rat::zero(); nvars];
        coeffs[var] = Rat::from_integer(1.into());
        system.push(Ineq {
            coeffs,
            rhs: Rat::from_integer(1.into()),
        });
    }
    Ok(fm_feasible(system, nvars))
}

/// Is `point` in the (closed) simplicial cone spanned by the independent
/// generators?
pub fn cone_contains(dim: usize, generators: &[Vec<Rat>], point: &[Rat]) -> Result<bool> {
    if point.len() != dim || generators.iter().any(|g| g.len() != dim) {
        return Err(Error::Dimension("cone membership".into()));
    }
    if generators.is_empty() {
        return Ok(point.iter().all(Zero::is_zero));
    }
    // Columns are the generators; independence makes the coefficients unique.
    let mut cols = Matrix::zero(dim, generators.len());
    for (j, g) in generators.iter().enumerate() {
        for (i, x) in g.iter().enumerate() {
            cols.data[i][j] = x.clone();
        }
    }
    match cols.solve(point)? {
        None => Ok(false),
        Some(lambda) => Ok(lambda.iter().all(|l| !l.is_negative())),
    }
}
