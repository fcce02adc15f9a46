//! Global numerical thresholds.

/// Algebraic identities (norms, Gram reconstruction, linearity).
pub const ALGEBRAIC: f64 = 1e-12;

/// Physical assertions and report verdicts.
pub const PHYSICAL: f64 = 1e-9;

/// Amplitude allowed outside a map's declared domain before it is an error.
pub const DOMAIN: f64 = 1e-10;

/// Smallest admissible eigenvalue ratio of an input Gram matrix.
pub const INDEPENDENCE: f64 = 1e-10;

/// Most negative eigenvalue accepted in a Gram matrix (clamped to zero).
pub const PSD_SLACK: f64 = 1e-10;

/// Verdict threshold for isometry and signaling reports.
///
/// Double-precision noise in this crate stays at or below 1e-12 while every
/// exercised violation is at least 1e-2, leaving three orders of magnitude on
/// either side.
pub const VERDICT: f64 = PHYSICAL;
