//! Shared fixtures for the criterion benches.

use eraser_core::{Evolution, Regime, ScenarioConfig};

/// Headline configuration: orthogonal γ, identical φ modes, late decay on.
pub fn headline() -> ScenarioConfig {
    ScenarioConfig::default()
}

/// Finite-time collective emission at partial overlap.
pub fn rate_regime() -> ScenarioConfig {
    ScenarioConfig {
        regime: Regime::Rate,
        gamma_t: 1.0,
        s_phi_override: Some(0.7),
        s_gamma_override: Some(0.2),
        ..ScenarioConfig::default()
    }
}

/// The independent-emission fixture at full φ overlap.
pub fn ingraham() -> ScenarioConfig {
    ScenarioConfig {
        evolution: Evolution::Ingraham,
        s_phi_override: Some(1.0),
        s_gamma_override: Some(0.0),
        ..ScenarioConfig::default()
    }
}
