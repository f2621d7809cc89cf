//! Exact combinatorics of square-tiled surfaces (origamis).
//!
//! * [`origami`]: gluing data, vertex structure, stratum, canonical labels,
//!   holonomy lattice and normality.
//! * [`sl2`]: the SL(2,Z) action, orbits and direction reduction.
//! * [`cylinders`]: cylinder decompositions in rational directions,
//!   saddle connections and cylinder moduli along Teichmüller rays.
//! * [`properties`]: balanced heights, the corners criterion, the
//!   Vorobets witness and the finiteness bound.
//! * [`search`]: exhaustive enumeration, orbit classification, surveys
//!   and corpus files.

pub mod cylinders;
pub mod error;
pub mod origami;
pub mod permutation;
pub mod properties;
pub mod search;
pub mod sl2;

pub use error::OrigamiError;
pub use origami::{HermiteForm, Origami, StratumSignature};
pub use permutation::Permutation;
pub use sl2::{Direction, Matrix2Z};
