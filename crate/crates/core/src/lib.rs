//! Two-atom delayed-choice "memory erasing" simulator.
//!
//! Two atoms share a single excitation. One of them emits a photon γ towards a
//! distant screen, leaving a which-path record in the atomic levels. A second
//! pulse may promote that record to a level that decays by emitting a photon φ
//! whose wavelength exceeds the atomic separation. The crate models the
//! collective (Dicke) emission that actually follows, the independent-emission
//! map that would erase the record, and audits both for isometry and for
//! signaling through Bob's screen statistics.
//!
//! Layout:
//!
//! - [`qcore`]: the fixed 192-dimensional product basis, state algebra,
//!   linear maps with declared domains, and marginals.
//! - [`modes`]: non-orthogonal photon modes, overlap kernels and Gram
//!   embeddings.
//! - [`scenario`]: preparation, pulses and emission channels.
//! - [`screen`]: far-field two-source patterns and fringe visibility.
//! - [`audit`]: isometry and no-signaling reports.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod error;
pub mod modes;
pub mod qcore;
pub mod scenario;
pub mod screen;
pub mod tolerance;

pub use audit::{check_isometry, no_signal_gap, IsometryReport, IsometryVerdict, SignalingReport, SignalingVerdict};
pub use error::{Error, Result};
pub use modes::{embed, overlap_isotropic, Embedding, ModeDictionary, OverlapModel};
pub use num_complex::Complex64;
pub use qcore::{
    inner_product, marginal_distribution, AtomKet, AtomLevel, BasisLabel, GammaKet, GammaSector, LinearMapSpec, PhiKet,
    PhiSector, ProbabilityTable, Sector, StateVector, DIM,
};
pub use scenario::{Evolution, Regime, ScenarioConfig};
pub use screen::{compute_pattern, visibility_from_coherence, CoherenceVisibility, Pattern};
