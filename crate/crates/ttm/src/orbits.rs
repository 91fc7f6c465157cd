//! Orbit-cone correspondence: torus orbits are indexed by simplices of the
//! fan, with complex dimension n - |I|; charts and closures are subset and
//! superset sweeps over Sigma.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fan::TopologicalFan;

/// A torus orbit, recorded by its simplex.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitDescriptor {
    pub simplex: Vec<usize>,
    pub dim: usize,
}

/// One orbit per simplex of Sigma (including the dense orbit at the empty
/// simplex), in sorted simplex order.
pub fn enumerate_orbits(fan: &TopologicalFan) -> Vec<OrbitDescriptor> {
    fan.simplices()
        .map(|s| OrbitDescriptor {
            simplex: s.clone(),
            dim: fan.n - s.len(),
        })
        .collect()
}

/// Orbits whose union is the chart U_I: all subsets of I in Sigma.
pub fn chart_orbits(fan: &TopologicalFan, simplex: &[usize]) -> Result<Vec<Vec<usize>>> {
    let i_sorted = fan.checked_simplex(simplex)?;
    Ok(fan
        .simplices()
        .filter(|s| s.iter().all(|i| i_sorted.contains(i)))
        .cloned()
        .collect())
}

/// Orbits whose union is the closure of O(J): all supersets of J in Sigma.
pub fn closure_orbits(fan: &TopologicalFan, simplex: &[usize]) -> Result<Vec<Vec<usize>>> {
    let j_sorted = fan.checked_simplex(simplex)?;
    Ok(fan
        .simplices()
        .filter(|s| j_sorted.iter().all(|i| s.contains(i)))
        .cloned()
        .collect())
}
