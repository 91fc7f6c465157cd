//! Exact computational calculus for topological toric manifolds and their
//! Klyachko vector-bundle data: arithmetic in the ring R = C x Z, fan
//! validation, dual bases, orbit combinatorics, filtration compatibility,
//! transition cocycles, the canonical Euler-type sequence, and the
//! holomorphic degeneration to classical toric data.

pub mod canonical;
pub mod characters;
pub mod cones;
pub mod error;
pub mod exec;
pub mod fan;
pub mod fixtures;
pub mod holomorphic;
pub mod klyachko;
pub mod linalg;
pub mod orbits;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
pub use ring::{OrderFlavor, RVector, RingElem};
pub use scalar::{Gauss, Rat};
