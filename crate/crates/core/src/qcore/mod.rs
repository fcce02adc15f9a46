//! Composite-basis state algebra.

mod basis;
mod map;
mod marginal;
mod state;

pub use basis::{AtomLevel, BasisLabel, GammaSector, PhiSector, ATOM_PAIRS, DIM};
pub use map::{gram_matrix, LinearMapSpec};
pub use marginal::{marginal_distribution, ProbabilityTable, Sector};
pub use state::{inner_product, AtomKet, GammaKet, PhiKet, SectorKet, StateVector};
