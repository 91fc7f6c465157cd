//! Topological fans: an augmented simplicial complex with ray data in R^n,
//! validation (cone geometry, primitivity, completeness, nonsingularity),
//! dual bases, annihilators beta_I-perp, dual decompositions, and the Lie
//! algebra of the kernel of the quotient cocharacter.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cones;
use crate::error::{Error, Result};
use crate::linalg::{int_kernel, smith_gcd_minors, Matrix, Subspace};
use crate::ring::{RVector, RingElem};
use crate::scalar::{format_rat, parse_rat, rat_i, Rat};

/// A simplicial topological fan: rays beta_i in R^n plus a simplicial
/// complex on the ray indices. Ray indices are 1-based throughout.
#[derive(Clone, Debug)]
pub struct TopologicalFan {
    pub n: usize,
    pub m: usize,
    rays: Vec<RVector>,
    maximal_simplices: Vec<Vec<usize>>,
    simplices: BTreeSet<Vec<usize>>,
}

impl TopologicalFan {
    pub fn new(n: usize, rays: Vec<RVector>, maximal_simplices: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("fan dimension must be positive".into()));
        }
        let m = rays.len();
        if m == 0 {
            return Err(Error::Precondition("fan has no rays".into()));
        }
        if let Some(bad) = rays.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "ray of length {} in a dimension-{n} fan",
                bad.len()
            )));
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for s in &maximal_simplices {
            let mut t = s.clone();
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse(format!("duplicate ray in simplex {s:?}")));
            }
            if t.iter().any(|&i| i == 0 || i > m) {
                return Err(Error::Parse(format!("ray index out of range in {s:?}")));
            }
            if t.len() > n {
                return Err(Error::InvalidSimplex(t));
            }
            maximal.push(t);
        }
        if !maximal.iter().any(|s| s.len() == n) {
            return Err(Error::Precondition(
                "no maximal simplex of full dimension".into(),
            ));
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for s in &maximal {
            used.extend(s.iter().copied());
        }
        if used.len() != m {
            return Err(Error::Precondition(
                "every ray must appear in some maximal simplex".into(),
            ));
        }
        maximal.sort();
        maximal.dedup();
        // Close under subsets, including the empty simplex.
        let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in &maximal {
            let k = s.len();
            for mask in 0..(1u32 << k) {
                let face: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| s[b]).collect();
                simplices.insert(face);
            }
        }
        Ok(TopologicalFan {
            n,
            m,
            rays,
            maximal_simplices: maximal,
            simplices,
        })
    }

    /// The ray beta_i (1-based).
    pub fn ray(&self, i: usize) -> Result<&RVector> {
        if i == 0 || i > self.m {
            return Err(Error::UnknownRay(i));
        }
        Ok(&self.rays[i - 1])
    }

    pub fn rays(&self) -> &[RVector] {
        &self.rays
    }

    /// All simplices of Sigma, including the empty one, in sorted order.
    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn maximal_simplices(&self) -> &[Vec<usize>] {
        &self.maximal_simplices
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        let mut t = s.to_vec();
        t.sort_unstable();
        self.simplices.contains(&t)
    }

    /// Sorted form of a simplex after checking membership in Sigma.
    pub fn checked_simplex(&self, s: &[usize]) -> Result<Vec<usize>> {
        let mut t = s.to_vec();
        t.sort_unstable();
        if self.simplices.contains(&t) {
            Ok(t)
        } else {
            Err(Error::InvalidSimplex(s.to_vec()))
        }
    }

    /// Checked maximal (dimension-n) simplex.
    pub fn checked_maximal(&self, s: &[usize]) -> Result<Vec<usize>> {
        let t = self.checked_simplex(s)?;
        if t.len() != self.n {
            return Err(Error::Precondition(format!(
                "simplex {t:?} is not of full dimension {}",
                self.n
            )));
        }
        Ok(t)
    }

    /// The lexicographically least maximal simplex containing the given
    /// simplex.
    pub fn enclosing_maximal(&self, s: &[usize]) -> Result<Vec<usize>> {
        let t = self.checked_simplex(s)?;
        self.maximal_simplices
            .iter()
            .filter(|ms| ms.len() == self.n)
            .find(|ms| t.iter().all(|i| ms.contains(i)))
            .cloned()
            .ok_or_else(|| Error::InvalidSimplex(t))
    }

    /// The real part b_i of a ray as a rational vector.
    pub fn b_vector(&self, i: usize) -> Result<Vec<Rat>> {
        Ok(self.ray(i)?.components.iter().map(|e| e.b.clone()).collect())
    }

    /// The winding part v_i of a ray as an integer vector.
    pub fn v_vector(&self, i: usize) -> Result<Vec<BigInt>> {
        Ok(self.ray(i)?.components.iter().map(|e| e.v.clone()).collect())
    }
}

/// Outcome of fan validation with per-check diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub condition1_ok: bool,
    pub condition2_ok: bool,
    pub complete: bool,
    pub nonsingular: bool,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diagnostic {
    pub subject: String,
    pub message: String,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.condition1_ok && self.condition2_ok && self.complete && self.nonsingular
    }
}

fn diag(out: &mut Vec<Diagnostic>, subject: impl Into<String>, message: impl Into<String>) {
    out.push(Diagnostic {
        subject: subject.into(),
        message: message.into(),
    });
}

/// Validate the fan conditions: per-simplex independence and disjoint cone
/// interiors, primitive and independent winding vectors, completeness
/// (facet pairing plus sampled covering), and nonsingularity (unimodular
/// winding minors).
pub fn validate_fan(fan: &TopologicalFan) -> Result<ValidationReport> {
    let n = fan.n;
    let mut diagnostics = Vec::new();

    let nonempty: Vec<&Vec<usize>> = fan.simplices().filter(|s| !s.is_empty()).collect();
    let b_gens = |s: &[usize]| -> Result<Vec<Vec<Rat>>> {
        s.iter().map(|&i| fan.b_vector(i)).collect()
    };

    // Condition (1): b-independence per simplex, then pairwise disjoint
    // relative interiors of the spanned cones.
    let mut condition1_ok = true;
    for s in &nonempty {
        let gens = b_gens(s)?;
        if Matrix::new(gens)?.rank() != s.len() {
            condition1_ok = false;
            diag(
                &mut diagnostics,
                format!("{s:?}"),
                "b-vectors are linearly dependent",
            );
        }
    }
    if condition1_ok {
        for (a, b) in nonempty
            .iter()
            .enumerate()
            .flat_map(|(k, a)| nonempty[k + 1..].iter().map(move |b| (a, b)))
        {
            if cones::relative_interiors_meet(n, &b_gens(a)?, &b_gens(b)?)? {
                condition1_ok = false;
                diag(
                    &mut diagnostics,
                    format!("{a:?} vs {b:?}"),
                    "cone relative interiors intersect",
                );
            }
        }
    }

    // Condition (2): primitive winding vectors, independent per simplex.
    let mut condition2_ok = true;
    for i in 1..=fan.m {
        let v = fan.v_vector(i)?;
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            condition2_ok = false;
            diag(&mut diagnostics, format!("ray {i}"), "winding vector is not primitive");
        }
    }
    for s in &nonempty {
        let rows: Vec<Vec<Rat>> = s
            .iter()
            .map(|&i| {
                fan.v_vector(i)
                    .map(|v| v.into_iter().map(Rat::from_integer).collect())
            })
            .collect::<Result<_>>()?;
        if Matrix::new(rows)?.rank() != s.len() {
            condition2_ok = false;
            diag(
                &mut diagnostics,
                format!("{s:?}"),
                "winding vectors are linearly dependent",
            );
        }
    }

    // Nonsingularity: gcd of maximal minors of the winding matrix is 1 for
    // every simplex.
    let mut nonsingular = true;
    for s in &nonempty {
        let cols: Vec<Vec<BigInt>> = s.iter().map(|&i| fan.v_vector(i)).collect::<Result<_>>()?;
        // Rows indexed by ambient coordinate, columns by the simplex rays.
        let mat: Vec<Vec<BigInt>> = (0..n)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        if !smith_gcd_minors(&mat, s.len()).is_one() {
            nonsingular = false;
            diag(
                &mut diagnostics,
                format!("{s:?}"),
                "winding vectors do not extend to a Z-basis",
            );
        }
    }

    // Completeness: every (n-1)-facet of a maximal cone shared by exactly
    // two maximal cones, plus sampled directions all covered.
    let top: Vec<&Vec<usize>> = fan
        .maximal_simplices()
        .iter()
        .filter(|s| s.len() == n)
        .collect();
    let mut complete = fan.maximal_simplices().iter().all(|s| s.len() == n);
    if !complete {
        diag(
            &mut diagnostics,
            "fan",
            "a maximal simplex is not of full dimension",
        );
    }
    for s in &top {
        for omit in 0..n {
            let facet: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != omit)
                .map(|(_, &i)| i)
                .collect();
            let count = top
                .iter()
                .filter(|t| facet.iter().all(|i| t.contains(i)))
                .count();
            if count != 2 {
                complete = false;
                diag(
                    &mut diagnostics,
                    format!("facet {facet:?}"),
                    format!("shared by {count} maximal cones instead of 2"),
                );
            }
        }
    }
    if complete {
        let mut rng = ChaCha8Rng::seed_from_u64(20240601);
        let mut tested = 0usize;
        while tested < 64 {
            let dir: Vec<Rat> = (0..n).map(|_| rat_i(rng.gen_range(-9..=9))).collect();
            if dir.iter().all(Zero::is_zero) {
                continue;
            }
            tested += 1;
            let mut covered = false;
            for s in &top {
                if cones::cone_contains(n, &b_gens(s)?, &dir)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                complete = false;
                diag(
                    &mut diagnostics,
                    format!(
                        "direction ({})",
                        dir.iter().map(format_rat).collect::<Vec<_>>().join(",")
                    ),
                    "not covered by any maximal cone",
                );
                break;
            }
        }
    }

    Ok(ValidationReport {
        condition1_ok,
        condition2_ok,
        complete,
        nonsingular,
        diagnostics,
    })
}

/// Dual basis {alpha_i^I} of the rays of a maximal simplex I, in the order
/// of the sorted simplex: bracket(alpha_i^I, beta_j) = delta_ij 1.
pub fn dual_basis(fan: &TopologicalFan, simplex: &[usize]) -> Result<Vec<RVector>> {
    let i_sorted = fan.checked_maximal(simplex)?;
    let n = fan.n;
    // Column matrices of the b-, c-, v-parts of the rays of I.
    let mut b_cols = Matrix::zero(n, n);
    let mut c_cols = Matrix::zero(n, n);
    let mut v_cols = Matrix::zero(n, n);
    for (j, &ray) in i_sorted.iter().enumerate() {
        let beta = fan.ray(ray)?;
        for k in 0..n {
            b_cols.data[k][j] = beta.components[k].b.clone();
            c_cols.data[k][j] = beta.components[k].c.clone();
            v_cols.data[k][j] = Rat::from_integer(beta.components[k].v.clone());
        }
    }
    let b_inv = b_cols
        .inverse()?
        .ok_or_else(|| Error::NoDual(i_sorted.clone()))?;
    let v_inv = v_cols
        .inverse()?
        .ok_or_else(|| Error::NoDual(i_sorted.clone()))?;
    for row in &v_inv.data {
        for x in row {
            if !x.denom().is_one() {
                return Err(Error::NonRingElement(format!(
                    "dual winding entry {} is not an integer",
                    format_rat(x)
                )));
            }
        }
    }
    // c-rows solve c(alpha_i) V = -b(alpha_i) C, i.e. C_rows = -B_inv C V_inv.
    let c_rows = b_inv.mul(&c_cols)?.mul(&v_inv)?;
    let mut duals = Vec::with_capacity(n);
    for i in 0..n {
        let comps: Vec<RingElem> = (0..n)
            .map(|k| {
                RingElem::new(
                    b_inv.data[i][k].clone(),
                    -c_rows.data[i][k].clone(),
                    v_inv.data[i][k].numer().clone(),
                )
            })
            .collect();
        duals.push(RVector::new(comps));
    }
    // Exact duality check against all rays of I.
    for (i, alpha) in duals.iter().enumerate() {
        for (j, &ray) in i_sorted.iter().enumerate() {
            let br = alpha.bracket(fan.ray(ray)?)?;
            let expect = if i == j { RingElem::one() } else { RingElem::zero() };
            if br != expect {
                return Err(Error::Internal(format!(
                    "dual basis failed verification at ({i},{j})"
                )));
            }
        }
    }
    Ok(duals)
}

/// The annihilator beta_I-perp: continuous part as a rational subspace in the
/// (b_1..b_n, c_1..c_n) coordinates, winding part as a saturated integer
/// lattice in Z^n, plus the defining rays for exact membership tests.
#[derive(Clone, Debug)]
pub struct BetaPerp {
    pub n: usize,
    pub bc_space: Subspace<Rat>,
    pub v_lattice: Vec<Vec<BigInt>>,
    constraint_rays: Vec<RVector>,
}

impl BetaPerp {
    /// Exact membership: bracket with every constraint ray is zero.
    pub fn contains(&self, alpha: &RVector) -> Result<bool> {
        for beta in &self.constraint_rays {
            if !alpha.bracket(beta)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A ring vector from a (b, c) solution and a lattice point.
    pub fn element(&self, bc: &[Rat], v: &[BigInt]) -> Result<RVector> {
        if bc.len() != 2 * self.n || v.len() != self.n {
            return Err(Error::Dimension("beta-perp element coordinates".into()));
        }
        let comps: Vec<RingElem> = (0..self.n)
            .map(|k| RingElem::new(bc[k].clone(), bc[self.n + k].clone(), v[k].clone()))
            .collect();
        let out = RVector::new(comps);
        if !self.contains(&out)? {
            return Err(Error::Domain("coordinates do not satisfy the annihilator".into()));
        }
        Ok(out)
    }
}

/// Compute beta_I-perp for any simplex I of the fan.
pub fn beta_perp(fan: &TopologicalFan, simplex: &[usize]) -> Result<BetaPerp> {
    let i_sorted = fan.checked_simplex(simplex)?;
    let n = fan.n;
    // Continuous system over (b_1..b_n, c_1..c_n): for each i in I,
    //   sum_k b^k b_ik = 0  and  sum_k (b^k c_ik + c^k v_ik) = 0.
    let mut bc_rows: Vec<Vec<Rat>> = Vec::new();
    // Winding system over Z^n: sum_k v^k v_ik = 0.
    let mut v_rows: Vec<Vec<BigInt>> = Vec::new();
    for &i in &i_sorted {
        let beta = fan.ray(i)?;
        let mut row_b = vec![Rat::zero(); 2 * n];
        let mut row_c = vec![Rat::zero(); 2 * n];
        for k in 0..n {
            row_b[k] = beta.components[k].b.clone();
            row_c[k] = beta.components[k].c.clone();
            row_c[n + k] = Rat::from_integer(beta.components[k].v.clone());
        }
        bc_rows.push(row_b);
        bc_rows.push(row_c);
        v_rows.push(beta.components.iter().map(|e| e.v.clone()).collect());
    }
    let bc_space = if bc_rows.is_empty() {
        Subspace::full(2 * n)
    } else {
        let kernel = Matrix::new(bc_rows)?.kernel();
        Subspace::span(2 * n, &kernel)?
    };
    let v_lattice = if v_rows.is_empty() {
        (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                e
            })
            .collect()
    } else {
        int_kernel(&v_rows)
    };
    let constraint_rays: Vec<RVector> = i_sorted
        .iter()
        .map(|&i| fan.ray(i).cloned())
        .collect::<Result<_>>()?;
    Ok(BetaPerp {
        n,
        bc_space,
        v_lattice,
        constraint_rays,
    })
}

/// Coefficients lambda_i = bracket(alpha, beta_i) of alpha in the dual basis
/// of a maximal simplex, with an exact reconstruction check.
pub fn decompose_in_dual(
    fan: &TopologicalFan,
    alpha: &RVector,
    simplex: &[usize],
) -> Result<Vec<RingElem>> {
    let i_sorted = fan.checked_maximal(simplex)?;
    if alpha.len() != fan.n {
        return Err(Error::Dimension("alpha length".into()));
    }
    let duals = dual_basis(fan, &i_sorted)?;
    let mut lambdas = Vec::with_capacity(i_sorted.len());
    for &i in &i_sorted {
        lambdas.push(alpha.bracket(fan.ray(i)?)?);
    }
    let mut recon = RVector::zero(fan.n);
    for (lambda, dual) in lambdas.iter().zip(&duals) {
        recon = recon.add(&dual.scale_left(lambda));
    }
    if &recon != alpha {
        return Err(Error::Internal(
            "dual decomposition failed to reconstruct its input".into(),
        ));
    }
    Ok(lambdas)
}

/// Basis of the Lie algebra of Ker lambda inside R^{2m} with coordinates
/// (x_1..x_m, y_1..y_m): the solution space of
///   x_i + sum_{k not in I} b_ik x_k = 0,
///   y_i + sum_{k not in I} (c_ik x_k + v_ik y_k) = 0,  for i in I,
/// where (b_ik + i c_ik, v_ik) = bracket(alpha_i^I, beta_k).
pub fn kernel_lie_basis(fan: &TopologicalFan, simplex: &[usize]) -> Result<Subspace<Rat>> {
    let i_sorted = fan.checked_maximal(simplex)?;
    let m = fan.m;
    let duals = dual_basis(fan, &i_sorted)?;
    let outside: Vec<usize> = (1..=m).filter(|i| !i_sorted.contains(i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (idx, &i) in i_sorted.iter().enumerate() {
        let mut row_x = vec![Rat::zero(); 2 * m];
        let mut row_y = vec![Rat::zero(); 2 * m];
        row_x[i - 1] = Rat::one();
        row_y[m + i - 1] = Rat::one();
        for &k in &outside {
            let a = duals[idx].bracket(fan.ray(k)?)?;
            row_x[k - 1] = a.b.clone();
            row_y[k - 1] = a.c.clone();
            row_y[m + k - 1] = Rat::from_integer(a.v.clone());
        }
        rows.push(row_x);
        rows.push(row_y);
    }
    let kernel = Matrix::new(rows)?.kernel();
    Subspace::span(2 * m, &kernel)
}

#[derive(Serialize, Deserialize)]
struct RayFile {
    b: Vec<String>,
    c: Vec<String>,
    v: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct FanFile {
    n: usize,
    rays: Vec<RayFile>,
    maximal_simplices: Vec<Vec<usize>>,
}

impl TopologicalFan {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: FanFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("fan file: {e}")))?;
        let mut rays = Vec::with_capacity(file.rays.len());
        for ray in &file.rays {
            if ray.b.len() != file.n || ray.c.len() != file.n || ray.v.len() != file.n {
                return Err(Error::Parse("ray component lists must have length n".into()));
            }
            let comps: Vec<RingElem> = (0..file.n)
                .map(|k| {
                    Ok(RingElem::new(
                        parse_rat(&ray.b[k])?,
                        parse_rat(&ray.c[k])?,
                        BigInt::from(ray.v[k]),
                    ))
                })
                .collect::<Result<_>>()?;
            rays.push(RVector::new(comps));
        }
        TopologicalFan::new(file.n, rays, file.maximal_simplices)
    }

    pub fn to_json(&self) -> String {
        let file = FanFile {
            n: self.n,
            rays: self
                .rays
                .iter()
                .map(|r| RayFile {
                    b: r.components.iter().map(|e| format_rat(&e.b)).collect(),
                    c: r.components.iter().map(|e| format_rat(&e.c)).collect(),
                    v: r
                        .components
                        .iter()
                        .map(|e| {
                            use num_traits::ToPrimitive;
                            e.v.to_i64().expect("winding exponent fits in i64")
                        })
                        .collect(),
                })
                .collect(),
            maximal_simplices: self.maximal_simplices.clone(),
        };
        serde_json::to_string_pretty(&file).expect("fan serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn simplex_closure() {
        let fan = fixtures::nontoric_fan();
        assert_eq!(fan.simplices().count(), 9);
        assert!(fan.contains_simplex(&[]));
        assert!(fan.contains_simplex(&[2, 1]));
        assert!(!fan.contains_simplex(&[1, 3]));
    }

    #[test]
    fn constructor_rejections() {
        let fan = fixtures::nontoric_fan();
        let rays = fan.rays().to_vec();
        assert!(matches!(
            TopologicalFan::new(2, rays.clone(), vec![vec![1, 1]]),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            TopologicalFan::new(2, rays.clone(), vec![vec![1, 5]]),
            Err(Error::Parse(_))
        ));
        assert!(TopologicalFan::new(2, rays, vec![vec![1, 2]]).is_err()); // rays 3,4 unused
    }

    #[test]
    fn fan_json_round_trip() {
        let fan = fixtures::nontoric_fan();
        let text = fan.to_json();
        let back = TopologicalFan::from_json(&text).unwrap();
        assert_eq!(back.rays(), fan.rays());
        assert_eq!(back.maximal_simplices(), fan.maximal_simplices());
    }
}
