//! Holomorphic degeneration: fans and weights on the diagonal diag(Z)
//! correspond to classical toric varieties and Klyachko filtrations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fan::TopologicalFan;
use crate::klyachko::KlyachkoData;
use crate::linalg::Subspace;
use crate::ring::{OrderFlavor, RingElem};
use crate::scalar::Gauss;

/// Classical toric data: integer rays, cones, and optionally the Z-indexed
/// decreasing Klyachko filtrations (stored at their jump values).
#[derive(Clone, Debug)]
pub struct ClassicalToricData {
    pub n: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub filtrations: Option<BTreeMap<usize, Vec<(i64, Subspace<Gauss>)>>>,
}

/// Does the fan come from an ordinary fan: every ray componentwise in
/// diag(Z)?
pub fn is_diag_fan(fan: &TopologicalFan) -> bool {
    fan.rays().iter().all(|r| r.is_diag())
}

/// Extract the ordinary fan underlying a diag topological fan.
pub fn to_toric(fan: &TopologicalFan) -> Result<ClassicalToricData> {
    if !is_diag_fan(fan) {
        return Err(Error::NotHolomorphic(
            "fan has a ray outside diag(Z^n)".into(),
        ));
    }
    Ok(ClassicalToricData {
        n: fan.n,
        rays: (1..=fan.m).map(|i| fan.v_vector(i)).collect::<Result<_>>()?,
        maximal_cones: fan.maximal_simplices().to_vec(),
        filtrations: None,
    })
}

/// Degenerate Klyachko data over a diag fan to classical decreasing
/// filtrations E^rho(j) at integer jumps; every stored weight must lie in
/// diag(Z).
pub fn to_classical_klyachko(
    fan: &TopologicalFan,
    data: &KlyachkoData<Gauss>,
) -> Result<ClassicalToricData> {
    let mut classical = to_toric(fan)?;
    let mut filtrations = BTreeMap::new();
    for ray in data.rays() {
        let mut jumps = Vec::new();
        for (weight, _) in data.pieces(ray)? {
            if !weight.is_diag() {
                return Err(Error::NotHolomorphic(format!(
                    "weight {weight} at ray {ray} is not in diag(Z)"
                )));
            }
            jumps.push(
                weight
                    .v
                    .to_i64()
                    .ok_or_else(|| Error::Domain("jump exceeds i64".into()))?,
            );
        }
        jumps.sort_unstable();
        let values: Vec<(i64, Subspace<Gauss>)> = jumps
            .into_iter()
            .map(|j| {
                data.filtration_value(ray, &RingElem::diag(j))
                    .map(|v| (j, v))
            })
            .collect::<Result<_>>()?;
        filtrations.insert(ray, values);
    }
    classical.filtrations = Some(filtrations);
    Ok(classical)
}

/// Lift classical decreasing filtrations back to Klyachko data: weight
/// (j + 0i, j) at each jump, pieces the successive canonical complements.
pub fn lift_classical(
    fan: &TopologicalFan,
    rank: usize,
    filtrations: &BTreeMap<usize, Vec<(i64, Subspace<Gauss>)>>,
) -> Result<KlyachkoData<Gauss>> {
    if !is_diag_fan(fan) {
        return Err(Error::NotHolomorphic(
            "fan has a ray outside diag(Z^n)".into(),
        ));
    }
    let mut per_ray = BTreeMap::new();
    for (&ray, jumps) in filtrations {
        let mut sorted = jumps.to_vec();
        sorted.sort_by_key(|(j, _)| *j);
        for w in sorted.windows(2) {
            if !w[0].1.contains(&w[1].1)? {
                return Err(Error::BadData(format!(
                    "filtration at ray {ray} is not decreasing"
                )));
            }
        }
        if sorted
            .first()
            .map(|(_, v)| v.dim() != rank)
            .unwrap_or(rank != 0)
        {
            return Err(Error::BadData(format!(
                "filtration at ray {ray} must start at the full space"
            )));
        }
        // From the top jump down: each piece complements the previous value.
        let mut pieces = Vec::new();
        let mut above = Subspace::zero(rank);
        for (j, value) in sorted.iter().rev() {
            let piece = above.complement_in(value)?;
            if !piece.is_zero() {
                pieces.push((RingElem::diag(*j), piece));
            }
            above = value.clone();
        }
        per_ray.insert(ray, pieces);
    }
    KlyachkoData::new(rank, OrderFlavor::Smooth, per_ray)
}
