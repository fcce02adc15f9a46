//! Bob's screen: far-field interference of γ from the two atom positions.
//!
//! Source `g1` sits at `−d/2`, `g2` at `+d/2`. In the Fraunhofer limit a
//! photon from source `j` reaches screen position `x` with phase
//! `k_γ·x·x_j/L`. Everything that is not γ (both atoms and the φ sector) is an
//! orthonormal environment label `E`, so
//!
//! ```text
//! P(x) ∝ Σ_E |c_{1,E} e^{−iqx/2} + c_{2,E} e^{+iqx/2}|²,   q = k_γ d / L
//!      = ρ₁₁ + ρ₂₂ + 2 Re[ρ₁₂ e^{iqx}],                      ρ₁₂ = Σ_E c̄_{1,E} c_{2,E}
//! ```
//!
//! [`compute_pattern`] evaluates the first line on the grid; its visibility is
//! extracted by a least-squares fit of `A + B cos qx + C sin qx` to the grid
//! values. [`visibility_from_coherence`] evaluates `2|ρ₁₂|/(ρ₁₁+ρ₂₂)` directly.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{AtomLevel, BasisLabel, GammaSector, PhiSector, StateVector, ATOM_PAIRS};
use crate::scenario::ScenarioConfig;

const ENVIRONMENT: usize = ATOM_PAIRS * PhiSector::COUNT;

/// Detection probabilities over the screen grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pattern {
    pub positions: Vec<f64>,
    pub probabilities: Vec<f64>,
    pub visibility: f64,
}

impl Pattern {
    /// Peak-picked `(max − min)/(max + min)` over the sampled grid. Can fall
    /// short of [`visibility`](Self::visibility) when the grid misses an
    /// extremum.
    pub fn grid_contrast(&self) -> f64 {
        let max = self.probabilities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.probabilities.iter().copied().fold(f64::INFINITY, f64::min);
        if max + min == 0.0 {
            0.0
        } else {
            (max - min) / (max + min)
        }
    }

    /// Sup-norm distance between two patterns on the same grid.
    pub fn max_gap(&self, other: &Pattern) -> Result<f64> {
        if self.positions != other.positions {
            return Err(Error::Structural("patterns are sampled on different grids".into()));
        }
        Ok(self.probabilities.iter().zip(&other.probabilities).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

/// Symmetric grid over `[−halfwidth, halfwidth]`; `x[n−1−i] = −x[i]` exactly
/// and the centre point is exactly 0.
pub fn screen_positions(halfwidth: f64, points: usize) -> Vec<f64> {
    let span = (points - 1) as f64;
    (0..points).map(|i| halfwidth * ((2 * i) as f64 - span) / span).collect()
}

/// Fringe spacing `λ_γ L / d`.
pub fn fringe_spacing(cfg: &ScenarioConfig) -> f64 {
    cfg.lambda_gamma * cfg.screen_distance / cfg.separation
}

/// Warning when the screen is narrower than one fringe.
pub fn fringe_warning(cfg: &ScenarioConfig) -> Option<String> {
    let spacing = fringe_spacing(cfg);
    let width = 2.0 * cfg.screen_halfwidth;
    (spacing > width).then(|| {
        format!("fringe spacing {spacing} exceeds screen width {width}; fewer than one full fringe is sampled")
    })
}

/// γ-sector block of the reduced density matrix (sources 1 and 2 only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaCoherence {
    pub rho11: f64,
    pub rho22: f64,
    /// `Σ_E conj(c_{1,E}) c_{2,E}`.
    pub rho12: Complex64,
}

fn source_amplitudes(s: &StateVector) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut c1 = vec![Complex64::new(0.0, 0.0); ENVIRONMENT];
    let mut c2 = c1.clone();
    for a1 in AtomLevel::ALL {
        for a2 in AtomLevel::ALL {
            for phi in PhiSector::ALL {
                let e = (a1.index() * AtomLevel::COUNT + a2.index()) * PhiSector::COUNT + phi.index();
                c1[e] = s.amplitude(BasisLabel::new(a1, a2, GammaSector::G1, phi));
                c2[e] = s.amplitude(BasisLabel::new(a1, a2, GammaSector::G2, phi));
            }
        }
    }
    (c1, c2)
}

pub fn gamma_coherence(s: &StateVector) -> GammaCoherence {
    let (c1, c2) = source_amplitudes(s);
    GammaCoherence {
        rho11: c1.iter().map(Complex64::norm_sqr).sum(),
        rho22: c2.iter().map(Complex64::norm_sqr).sum(),
        rho12: c1.iter().zip(&c2).map(|(a, b)| a.conj() * b).sum(),
    }
}

/// Fringe visibility from the γ coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceVisibility {
    pub value: f64,
    /// Only one source carries amplitude; `value` is then 0.
    pub single_source: bool,
}

/// `|ρ₁₂| / ((ρ₁₁ + ρ₂₂)/2)`, computed straight from the amplitudes.
pub fn visibility_from_coherence(s: &StateVector) -> Result<CoherenceVisibility> {
    let coh = gamma_coherence(s);
    let total = coh.rho11 + coh.rho22;
    if total == 0.0 {
        return Err(Error::Precondition("state has no amplitude on either γ source".into()));
    }
    if coh.rho11 == 0.0 || coh.rho22 == 0.0 {
        return Ok(CoherenceVisibility { value: 0.0, single_source: true });
    }
    let value = (coh.rho12.norm() / (0.5 * total)).clamp(0.0, 1.0);
    Ok(CoherenceVisibility { value, single_source: false })
}

/// Bob's detection pattern for state `s` on the screen described by `cfg`.
///
/// The input need not be normalized; the pattern is normalized over the grid.
/// Population in the γ `none` label never reaches the screen.
pub fn compute_pattern(s: &StateVector, cfg: &ScenarioConfig) -> Result<Pattern> {
    cfg.validate()?;
    let (c1, c2) = source_amplitudes(s);
    let weight: f64 = c1.iter().chain(&c2).map(Complex64::norm_sqr).sum();
    if weight == 0.0 {
        return Err(Error::Precondition("state has no amplitude on either γ source".into()));
    }
    let k = std::f64::consts::TAU / cfg.lambda_gamma;
    let (x1, x2) = (-0.5 * cfg.separation, 0.5 * cfg.separation);
    let positions = screen_positions(cfg.screen_halfwidth, cfg.grid_points);
    let raw: Vec<f64> = positions
        .iter()
        .map(|&x| {
            let a1 = Complex64::from_polar(1.0, k * x * x1 / cfg.screen_distance);
            let a2 = Complex64::from_polar(1.0, k * x * x2 / cfg.screen_distance);
            c1.iter().zip(&c2).map(|(p, q)| (p * a1 + q * a2).norm_sqr()).sum()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    let probabilities: Vec<f64> = raw.iter().map(|p| p / total).collect();
    let q = k * cfg.separation / cfg.screen_distance;
    let visibility = fitted_visibility(&positions, &probabilities, q)?;
    Ok(Pattern { positions, probabilities, visibility })
}

/// Fits `A + B cos(qx) + C sin(qx)` and returns `√(B² + C²)/A`, clamped to [0, 1].
fn fitted_visibility(positions: &[f64], values: &[f64], q: f64) -> Result<f64> {
    let n = positions.len();
    let design = DMatrix::from_fn(n, 3, |r, c| match c {
        0 => 1.0,
        1 => (q * positions[r]).cos(),
        _ => (q * positions[r]).sin(),
    });
    let svd = design.svd(true, true);
    let (smax, smin) = svd.singular_values.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &v| (hi.max(v), lo.min(v)));
    if !(smin > 1e-8 * smax) {
        return Err(Error::Parameter(
            "screen grid does not resolve the fringe period; widen the screen or the separation".into(),
        ));
    }
    let coeffs = svd
        .solve(&DVector::from_column_slice(values), 0.0)
        .map_err(|e| Error::Parameter(format!("fringe fit failed: {e}")))?;
    let (a, b, c) = (coeffs[0], coeffs[1], coeffs[2]);
    if !(a > 0.0) {
        return Err(Error::Precondition("pattern has no positive mean".into()));
    }
    Ok((b.hypot(c) / a).clamp(0.0, 1.0))
}
