//! Pin sequences, centred permutations and the generating functions of the
//! permutation classes they generate.

pub mod classify;
pub mod cperm;
pub mod error;
pub mod growth;
pub mod oracle;
pub mod pimap;
pub mod pinword;
pub mod pipeline;
pub mod render;
pub mod series;
pub mod symmetry;

pub use cperm::{adjacency_condition, normal_form, CentredInterval, CentredPerm, Quadrant, QuadrantProfile};
pub use error::{Error, Result};
pub use pimap::{pi_map, PinDiagram};
pub use pinword::{Direction, FactorMode, PinSpec, PinWord};
pub use symmetry::Symmetry;
pub use growth::{GrowthResult, GrowthTarget};
pub use series::{Poly, RatGF};
