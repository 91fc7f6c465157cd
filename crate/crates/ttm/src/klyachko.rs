//! Klyachko data: per-ray weight gradings of a vector space, the derived
//! filtrations E^i(mu), the per-cone compatibility checker with explicit
//! grading witnesses, morphism classification, hom-space dimensions, and
//! symbolic transition cocycles.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex64;

use crate::characters::{char_eval, extends_over_chart};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::fan::{dual_basis, TopologicalFan};
use crate::linalg::{int_solve, realify_matrix, realify_subspace, Matrix, Subspace};
use crate::ring::{OrderFlavor, RVector, RingElem};
use crate::scalar::{Gauss, Rat, Scalar, ToC64};

/// A rank-r vector space with a finite weight grading at every ray; the
/// filtrations E^i(mu) are derived sums of graded pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct KlyachkoData<K: Scalar> {
    pub rank: usize,
    pub flavor: OrderFlavor,
    per_ray: BTreeMap<usize, Vec<(RingElem, Subspace<K>)>>,
}

impl<K: Scalar> KlyachkoData<K> {
    /// Build and validate: per ray the pieces must be nonzero, carry
    /// pairwise distinct weights, and form a direct sum equal to the full
    /// space.
    pub fn new(
        rank: usize,
        flavor: OrderFlavor,
        per_ray: BTreeMap<usize, Vec<(RingElem, Subspace<K>)>>,
    ) -> Result<Self> {
        let mut sorted = BTreeMap::new();
        for (ray, mut pieces) in per_ray {
            pieces.sort_by(|a, b| a.0.cmp(&b.0));
            if pieces.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::BadData(format!("ray {ray}: repeated weight")));
            }
            let mut total = Subspace::zero(rank);
            let mut dim_sum = 0;
            for (weight, piece) in &pieces {
                if piece.ambient_dim() != rank {
                    return Err(Error::BadData(format!(
                        "ray {ray}: piece ambient {} != rank {rank}",
                        piece.ambient_dim()
                    )));
                }
                if rank > 0 && piece.is_zero() {
                    return Err(Error::BadData(format!(
                        "ray {ray}: zero piece at weight {weight}"
                    )));
                }
                dim_sum += piece.dim();
                total = total.sum(piece)?;
            }
            if dim_sum != rank || total.dim() != rank {
                return Err(Error::BadData(format!(
                    "ray {ray}: pieces do not form a direct-sum decomposition"
                )));
            }
            sorted.insert(ray, pieces);
        }
        Ok(KlyachkoData {
            rank,
            flavor,
            per_ray: sorted,
        })
    }

    pub fn rays(&self) -> impl Iterator<Item = usize> + '_ {
        self.per_ray.keys().copied()
    }

    /// The stored grading at a ray, sorted by weight.
    pub fn pieces(&self, ray: usize) -> Result<&[(RingElem, Subspace<K>)]> {
        self.per_ray
            .get(&ray)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownRay(ray))
    }

    /// The stored weights at a ray.
    pub fn weights(&self, ray: usize) -> Result<Vec<RingElem>> {
        Ok(self.pieces(ray)?.iter().map(|(w, _)| w.clone()).collect())
    }

    /// E^i(mu): sum of the pieces whose weight dominates mu in the data's
    /// flavor.
    pub fn filtration_value(&self, ray: usize, mu: &RingElem) -> Result<Subspace<K>> {
        let mut out = Subspace::zero(self.rank);
        for (weight, piece) in self.pieces(ray)? {
            if weight.geq(mu, self.flavor) {
                out = out.sum(piece)?;
            }
        }
        Ok(out)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PieceFile {
    weight: RingElem,
    basis: Vec<Vec<String>>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct DataFile {
    rank: usize,
    flavor: OrderFlavor,
    rays: BTreeMap<String, Vec<PieceFile>>,
}

impl KlyachkoData<Gauss> {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DataFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("data file: {e}")))?;
        let mut per_ray = BTreeMap::new();
        for (ray, pieces) in file.rays {
            let ray: usize = ray
                .parse()
                .map_err(|_| Error::Parse(format!("bad ray index {ray:?}")))?;
            let parsed: Vec<(RingElem, Subspace<Gauss>)> = pieces
                .into_iter()
                .map(|p| {
                    let vecs: Vec<Vec<Gauss>> = p
                        .basis
                        .iter()
                        .map(|v| v.iter().map(|s| crate::scalar::parse_gauss(s)).collect())
                        .collect::<std::result::Result<_, _>>()?;
                    Ok((p.weight, Subspace::span(file.rank, &vecs)?))
                })
                .collect::<Result<_>>()?;
            per_ray.insert(ray, parsed);
        }
        KlyachkoData::new(file.rank, file.flavor, per_ray)
    }

    pub fn to_json(&self) -> String {
        let rays: BTreeMap<String, Vec<PieceFile>> = self
            .per_ray
            .iter()
            .map(|(ray, pieces)| {
                let out = pieces
                    .iter()
                    .map(|(w, p)| PieceFile {
                        weight: w.clone(),
                        basis: p
                            .basis()
                            .iter()
                            .map(|v| v.iter().map(|x| x.to_string()).collect())
                            .collect(),
                    })
                    .collect();
                (ray.to_string(), out)
            })
            .collect();
        let file = DataFile {
            rank: self.rank,
            flavor: self.flavor,
            rays,
        };
        serde_json::to_string_pretty(&file).expect("data serialization")
    }
}

/// Realify complex data: rank doubles, weights persist, pieces realify.
pub fn realify_data(data: &KlyachkoData<Gauss>) -> KlyachkoData<Rat> {
    let per_ray = data
        .per_ray
        .iter()
        .map(|(&ray, pieces)| {
            let real: Vec<(RingElem, Subspace<Rat>)> = pieces
                .iter()
                .map(|(w, p)| (w.clone(), realify_subspace(p)))
                .collect();
            (ray, real)
        })
        .collect();
    KlyachkoData::new(2 * data.rank, data.flavor, per_ray).expect("realified data is valid")
}

/// One piece of a grading witness on a cone: the weight tuple along the
/// sorted simplex, the character realizing those brackets, and the subspace.
#[derive(Clone, Debug)]
pub struct GradedPiece<K: Scalar> {
    pub weights: Vec<RingElem>,
    pub character: RVector,
    pub piece: Subspace<K>,
}

/// A grading witness for one maximal simplex.
#[derive(Clone, Debug)]
pub struct Witness<K: Scalar> {
    pub simplex: Vec<usize>,
    pub pieces: Vec<GradedPiece<K>>,
}

/// Outcome of the compatibility check.
#[derive(Clone, Debug)]
pub struct CompatibilityResult<K: Scalar> {
    pub compatible: bool,
    pub witnesses: Vec<Witness<K>>,
    pub failure: Option<(Vec<usize>, String)>,
}

impl<K: Scalar> CompatibilityResult<K> {
    pub fn witness_for(&self, simplex: &[usize]) -> Option<&Witness<K>> {
        let mut t = simplex.to_vec();
        t.sort_unstable();
        self.witnesses.iter().find(|w| w.simplex == t)
    }
}

/// A character chi with bracket(chi, beta_i) = mu_i for the rays of the
/// simplex: the dual-basis combination for full-dimensional simplices, a
/// linear solve otherwise.
fn character_for_tuple(
    fan: &TopologicalFan,
    simplex: &[usize],
    tuple: &[RingElem],
) -> Result<RVector> {
    let n = fan.n;
    if simplex.len() == n {
        let duals = dual_basis(fan, simplex)?;
        let mut chi = RVector::zero(n);
        for (mu, alpha) in tuple.iter().zip(&duals) {
            chi = chi.add(&alpha.scale_left(mu));
        }
        return Ok(chi);
    }
    // Underdetermined: solve the (b, c) system over Q and the winding system
    // over Z separately.
    let mut bc_rows: Vec<Vec<Rat>> = Vec::new();
    let mut bc_rhs: Vec<Rat> = Vec::new();
    let mut v_rows: Vec<Vec<BigInt>> = Vec::new();
    let mut v_rhs: Vec<BigInt> = Vec::new();
    for (&i, mu) in simplex.iter().zip(tuple) {
        let beta = fan.ray(i)?;
        let mut row_b = vec![Rat::zero(); 2 * n];
        let mut row_c = vec![Rat::zero(); 2 * n];
        for k in 0..n {
            row_b[k] = beta.components[k].b.clone();
            row_c[k] = beta.components[k].c.clone();
            row_c[n + k] = Rat::from_integer(beta.components[k].v.clone());
        }
        bc_rows.push(row_b);
        bc_rhs.push(mu.b.clone());
        bc_rows.push(row_c);
        bc_rhs.push(mu.c.clone());
        v_rows.push(beta.components.iter().map(|e| e.v.clone()).collect());
        v_rhs.push(mu.v.clone());
    }
    let bc = Matrix::new(bc_rows)?
        .solve(&bc_rhs)?
        .ok_or_else(|| Error::Internal("no character realizes the weight tuple".into()))?;
    let v = int_solve(&v_rows, &v_rhs)
        .ok_or_else(|| Error::Internal("no integral character realizes the weight tuple".into()))?;
    let comps = (0..n)
        .map(|k| RingElem::new(bc[k].clone(), bc[n + k].clone(), v[k].clone()))
        .collect();
    Ok(RVector::new(comps))
}

/// Tuple domination in the product order of the data's flavor.
fn tuple_geq(a: &[RingElem], b: &[RingElem], flavor: OrderFlavor) -> bool {
    a.iter().zip(b).all(|(x, y)| x.geq(y, flavor))
}

fn check_one_cone<K: Scalar>(
    fan: &TopologicalFan,
    data: &KlyachkoData<K>,
    simplex: &[usize],
) -> Result<std::result::Result<Witness<K>, String>> {
    let flavor = data.flavor;
    let rank = data.rank;
    // All stored-weight tuples along the simplex, in lexicographic order.
    let weight_lists: Vec<Vec<RingElem>> = simplex
        .iter()
        .map(|&i| data.weights(i))
        .collect::<Result<_>>()?;
    let tuples: Vec<Vec<RingElem>> = weight_lists
        .iter()
        .map(|ws| ws.iter().cloned())
        .multi_cartesian_product()
        .collect();
    // V_t = intersection of the filtration values along the tuple.
    let mut values: Vec<Subspace<K>> = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut v = Subspace::full(rank);
        for (&i, mu) in simplex.iter().zip(t) {
            v = v.intersect(&data.filtration_value(i, mu)?)?;
        }
        values.push(v);
    }
    // Greedy candidate pieces: the canonical complement of the strictly
    // dominating tuples' values inside V_t.
    let mut pieces: Vec<GradedPiece<K>> = Vec::new();
    let mut total = Subspace::zero(rank);
    let mut dim_sum = 0usize;
    for (idx, t) in tuples.iter().enumerate() {
        let mut above = Subspace::zero(rank);
        for (jdx, s) in tuples.iter().enumerate() {
            if jdx != idx && tuple_geq(s, t, flavor) {
                above = above.sum(&values[jdx])?;
            }
        }
        let c = above.complement_in(&values[idx])?;
        if c.is_zero() {
            continue;
        }
        dim_sum += c.dim();
        total = total.sum(&c)?;
        pieces.push(GradedPiece {
            weights: t.clone(),
            character: character_for_tuple(fan, simplex, t)?,
            piece: c,
        });
    }
    // Verification: direct sum recovers the space and every stored
    // filtration value.
    if dim_sum != rank || total.dim() != rank {
        return Ok(Err(format!(
            "graded pieces span dimension {} of {rank}",
            total.dim()
        )));
    }
    for (&i, ws) in simplex.iter().zip(&weight_lists) {
        let pos = simplex.iter().position(|&j| j == i).expect("simplex ray");
        for mu in ws {
            let mut recovered = Subspace::zero(rank);
            for p in &pieces {
                if p.weights[pos].geq(mu, flavor) {
                    recovered = recovered.sum(&p.piece)?;
                }
            }
            if recovered != data.filtration_value(i, mu)? {
                return Ok(Err(format!(
                    "filtration at ray {i}, weight {mu} not recovered"
                )));
            }
        }
    }
    Ok(Ok(Witness {
        simplex: simplex.to_vec(),
        pieces,
    }))
}

/// Check Def-style compatibility: a grading witness per maximal simplex
/// (non-maximal simplices inherit by coarsening). Scheduling is governed by
/// `mode`; results are identical in both modes.
pub fn check_compatibility_mode<K: Scalar + Send + Sync>(
    fan: &TopologicalFan,
    data: &KlyachkoData<K>,
    mode: ExecMode,
) -> Result<CompatibilityResult<K>> {
    for i in 1..=fan.m {
        if data.pieces(i).is_err() {
            return Err(Error::UnknownRay(i));
        }
    }
    let simplices: Vec<Vec<usize>> = fan.maximal_simplices().to_vec();
    let outcomes = exec::map_items(mode, simplices, |s| (s.clone(), check_one_cone(fan, data, &s)));
    let mut witnesses = Vec::new();
    let mut failure = None;
    for (simplex, outcome) in outcomes {
        match outcome? {
            Ok(w) => witnesses.push(w),
            Err(msg) => {
                if failure.is_none() {
                    failure = Some((simplex, msg));
                }
            }
        }
    }
    Ok(CompatibilityResult {
        compatible: failure.is_none(),
        witnesses,
        failure,
    })
}

pub fn check_compatibility<K: Scalar + Send + Sync>(
    fan: &TopologicalFan,
    data: &KlyachkoData<K>,
) -> Result<CompatibilityResult<K>> {
    check_compatibility_mode(fan, data, ExecMode::default())
}

/// Classification of a linear map against two filtrations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MorphismClass {
    NotMorphism,
    Morphism,
    Mono,
    Epi,
    Iso,
}

/// Classify f : E -> F (a rank_F x rank_E matrix over the data's field).
/// Containment is checked at the stored jump weights, which determines it at
/// every weight.
pub fn classify_morphism<K: Scalar>(
    f: &Matrix<K>,
    e: &KlyachkoData<K>,
    g: &KlyachkoData<K>,
) -> Result<MorphismClass> {
    if e.flavor != g.flavor {
        return Err(Error::BadData("mixed order flavors".into()));
    }
    if f.rows != g.rank || f.cols != e.rank {
        return Err(Error::Dimension(format!(
            "morphism matrix is {}x{}, expected {}x{}",
            f.rows, f.cols, g.rank, e.rank
        )));
    }
    let rays: Vec<usize> = e.rays().collect();
    if rays != g.rays().collect::<Vec<_>>() {
        return Err(Error::BadData("data sets grade different rays".into()));
    }
    // Morphism: f(E^i(mu)) inside F^i(mu) at E's jump weights.
    for &i in &rays {
        for mu in e.weights(i)? {
            let image = e.filtration_value(i, &mu)?.image(f)?;
            if !g.filtration_value(i, &mu)?.contains(&image)? {
                return Ok(MorphismClass::NotMorphism);
            }
        }
    }
    let mono = f.kernel().is_empty();
    // Epi: image equality at F's jump weights (with the morphism property
    // this gives equality at every weight).
    let mut epi = true;
    'outer: for &i in &rays {
        for mu in g.weights(i)? {
            let image = e.filtration_value(i, &mu)?.image(f)?;
            if image != g.filtration_value(i, &mu)? {
                epi = false;
                break 'outer;
            }
        }
    }
    // A weightless (rank-0 target) or weightless source still needs ambient
    // surjectivity for epi.
    if epi && Subspace::full(e.rank).image(f)? != Subspace::full(g.rank) {
        epi = false;
    }
    Ok(match (mono, epi) {
        (true, true) => MorphismClass::Iso,
        (true, false) => MorphismClass::Mono,
        (false, true) => MorphismClass::Epi,
        (false, false) => MorphismClass::Morphism,
    })
}

/// dim Hom over the chart of a maximal simplex, from grading witnesses:
/// pairs of pieces whose weight tuples are ordered contribute the product of
/// dimensions.
pub fn hom_dimension<K: Scalar>(
    e_witness: &Witness<K>,
    f_witness: &Witness<K>,
    flavor: OrderFlavor,
) -> Result<usize> {
    if e_witness.simplex != f_witness.simplex {
        return Err(Error::Precondition("witnesses on different simplices".into()));
    }
    let mut total = 0usize;
    for pe in &e_witness.pieces {
        for pf in &f_witness.pieces {
            if tuple_geq(&pf.weights, &pe.weights, flavor) {
                total += pe.piece.dim() * pf.piece.dim();
            }
        }
    }
    Ok(total)
}

/// Equivariant isomorphism over one chart: the multisets of (restricted
/// character, dimension) agree. Restriction to T_I identifies characters
/// modulo beta_I-perp, which on witness pieces means equal weight tuples.
pub fn charts_isomorphic<K: Scalar>(
    e_witness: &Witness<K>,
    f_witness: &Witness<K>,
) -> Result<bool> {
    if e_witness.simplex != f_witness.simplex {
        return Err(Error::Precondition("witnesses on different simplices".into()));
    }
    let collect = |w: &Witness<K>| -> BTreeMap<Vec<RingElem>, usize> {
        let mut map = BTreeMap::new();
        for p in &w.pieces {
            *map.entry(p.weights.clone()).or_insert(0) += p.piece.dim();
        }
        map
    };
    Ok(collect(e_witness) == collect(f_witness))
}

/// A matrix of torus functions t -> a * chi^alpha(t): symbolic cocycles and
/// chart transitions.
#[derive(Clone, Debug)]
pub struct CharacterMatrix<K: Scalar> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Option<(K, RVector)>>>,
}

impl<K: Scalar + ToC64> CharacterMatrix<K> {
    /// Numeric value at a torus point.
    pub fn eval(&self, g: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.cols]; self.rows];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if let Some((scalar, exponent)) = entry {
                    out[i][j] = scalar.to_c64() * char_eval(exponent, g)?;
                }
            }
        }
        Ok(out)
    }

    /// True when every entry is the identity pattern: scalar 1 with zero
    /// exponent on the diagonal, zero off it.
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, entry)| match entry {
                    None => i != j,
                    Some((a, alpha)) => i == j && *a == K::one() && alpha.is_zero(),
                })
            })
    }
}

/// The transition cocycle f_IJ of compatible data between two chart
/// witnesses: entry (i, j) is (a_ij, chi_i - psi_j) with a_ij the base
/// change between the witness bases. Every nonzero entry must extend over
/// the overlap chart; a violation indicates an internal inconsistency.
pub fn transition_cocycle<K: Scalar>(
    fan: &TopologicalFan,
    data: &KlyachkoData<K>,
    wi: &Witness<K>,
    wj: &Witness<K>,
) -> Result<CharacterMatrix<K>> {
    let rank = data.rank;
    // Flatten witness bases with their characters, in piece order.
    let flatten = |w: &Witness<K>| -> (Vec<Vec<K>>, Vec<RVector>) {
        let mut basis = Vec::new();
        let mut chars = Vec::new();
        for p in &w.pieces {
            for v in p.piece.basis() {
                basis.push(v.clone());
                chars.push(p.character.clone());
            }
        }
        (basis, chars)
    };
    let (bi, chi) = flatten(wi);
    let (bj, psi) = flatten(wj);
    if bi.len() != rank || bj.len() != rank {
        return Err(Error::Precondition("witness bases do not span".into()));
    }
    // Columns of the I-witness basis; coordinates of each J-basis vector.
    let mut cols = Matrix::zero(rank, rank);
    for (j, v) in bi.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            cols.data[i][j] = x.clone();
        }
    }
    let overlap: Vec<usize> = wi
        .simplex
        .iter()
        .copied()
        .filter(|i| wj.simplex.contains(i))
        .collect();
    let mut entries = vec![vec![None; rank]; rank];
    for (j, v) in bj.iter().enumerate() {
        let coords = cols
            .solve(v)?
            .ok_or_else(|| Error::Internal("witness basis is singular".into()))?;
        for (i, a) in coords.into_iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let exponent = chi[i].sub(&psi[j]);
            if !extends_over_chart(fan, &exponent, &overlap, data.flavor)? {
                return Err(Error::Internal(format!(
                    "cocycle entry ({i},{j}) does not extend over the overlap"
                )));
            }
            entries[i][j] = Some((a, exponent));
        }
    }
    Ok(CharacterMatrix {
        rows: rank,
        cols: rank,
        entries,
    })
}

/// Chart transition of the manifold itself between two maximal cones: for
/// each j in J (sorted) the exponent list (bracket(alpha_j^J, beta_i))_{i in
/// I}, as a |J| x |I| character matrix with unit scalars.
pub fn manifold_transition(
    fan: &TopologicalFan,
    simplex_i: &[usize],
    simplex_j: &[usize],
) -> Result<CharacterMatrix<Rat>> {
    let i_sorted = fan.checked_maximal(simplex_i)?;
    let j_sorted = fan.checked_maximal(simplex_j)?;
    let duals_j = dual_basis(fan, &j_sorted)?;
    let mut entries = Vec::with_capacity(j_sorted.len());
    for alpha in &duals_j {
        let mut row = Vec::with_capacity(i_sorted.len());
        for &i in &i_sorted {
            let a = alpha.bracket(fan.ray(i)?)?;
            // Encode the single exponent a as a length-1 ring vector.
            row.push(Some((Rat::one(), RVector::new(vec![a]))));
        }
        entries.push(row);
    }
    Ok(CharacterMatrix {
        rows: j_sorted.len(),
        cols: i_sorted.len(),
        entries,
    })
}

/// Realified matrix view of a complex morphism for the R-linear categories.
pub fn realify_morphism(f: &Matrix<Gauss>) -> Matrix<Rat> {
    realify_matrix(f)
}
