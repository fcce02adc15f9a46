//! Isometry and no-signaling audits.
//!
//! An evolution that maps orthogonal which-path states onto overlapping ones
//! is not an isometry, and the same overlap shows up as a change in Bob's
//! fringe visibility that depends only on Alice's choice. The two reports here
//! check both sides of that link.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{gram_matrix, LinearMapSpec};
use crate::scenario::{evolve, ScenarioConfig};
use crate::screen::{compute_pattern, Pattern};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryVerdict {
    Isometric,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub map_label: String,
    pub gram_in: Vec<Vec<Complex64>>,
    pub gram_out: Vec<Vec<Complex64>>,
    /// `max |gram_out − gram_in|` entrywise.
    pub max_deviation: f64,
    pub verdict: IsometryVerdict,
}

/// Compares pairwise inner products of a map's inputs and outputs.
pub fn check_isometry(m: &LinearMapSpec) -> Result<IsometryReport> {
    if m.inputs().is_empty() {
        return Err(Error::Structural(format!("map {:?} declares no input vectors", m.label())));
    }
    let gin = gram_matrix(m.inputs());
    let gout = gram_matrix(m.outputs());
    let max_deviation = (&gout - &gin).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let rows = |g: &nalgebra::DMatrix<Complex64>| (0..g.nrows()).map(|i| g.row(i).iter().copied().collect()).collect();
    Ok(IsometryReport {
        map_label: m.label().to_owned(),
        gram_in: rows(&gin),
        gram_out: rows(&gout),
        max_deviation,
        verdict: if max_deviation > tolerance::VERDICT {
            IsometryVerdict::Violation
        } else {
            IsometryVerdict::Isometric
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalingVerdict {
    NoSignaling,
    Signaling,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalingReport {
    pub pattern_pulse: Pattern,
    pub pattern_nopulse: Pattern,
    /// Sup-norm of the pattern difference over the grid.
    pub max_gap: f64,
    /// `visibility(pulse) − visibility(no pulse)`.
    pub visibility_gap: f64,
    pub verdict: SignalingVerdict,
}

/// Bob's pattern for Alice's two choices, everything else held fixed.
pub fn no_signal_gap(cfg: &ScenarioConfig) -> Result<SignalingReport> {
    cfg.validate()?;
    let run = |pulse: bool| -> Result<Pattern> {
        let variant = ScenarioConfig { alice_pulse: pulse, ..cfg.clone() };
        compute_pattern(&evolve(&variant)?, &variant)
    };
    let (pattern_pulse, pattern_nopulse) = std::thread::scope(|scope| {
        let with = scope.spawn(|| run(true));
        let without = run(false);
        (with.join().expect("pipeline thread panicked"), without)
    });
    let (pattern_pulse, pattern_nopulse) = (pattern_pulse?, pattern_nopulse?);
    let max_gap = pattern_pulse.max_gap(&pattern_nopulse)?;
    let visibility_gap = pattern_pulse.visibility - pattern_nopulse.visibility;
    Ok(SignalingReport {
        pattern_pulse,
        pattern_nopulse,
        max_gap,
        visibility_gap,
        verdict: if max_gap > tolerance::VERDICT { SignalingVerdict::Signaling } else { SignalingVerdict::NoSignaling },
    })
}
