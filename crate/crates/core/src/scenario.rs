//! The evolution pipeline of one atom pair.
//!
//! 1. [`prepare_after_gamma`]: one atom has emitted γ and sits in `b`, the
//!    other is in `c`; γ is correlated with which atom emitted it.
//! 2. [`apply_pulse2`]: Alice's optional second pulse, `b ↔ b′` on both atoms.
//! 3. Emission of φ from `b′`:
//!    - [`collective_emission_instantaneous`] / [`collective_emission_rate`]:
//!      the symmetric state `Ψ⁺` radiates into the bright mode at rate
//!      `Γ(1+s)`, the antisymmetric `Ψ⁻` into the dark mode at `Γ(1−s)`.
//!    - [`ingraham_emission`]: each atom radiates its own φᵢ independently.
//!      This map is not an isometry and is kept only as an audit fixture.
//! 4. [`late_decay`]: the metastable `Ψ⁻` finally emits φ′, orthogonal to φ.
//!
//! Every step is a [`LinearMapSpec`] acting on atoms ⊗ φ and trivially on γ.
//! The correct emission channels are completed to unitaries on the
//! `{excited, vacuum} ↔ {ground, one photon}` pairs they couple, so they
//! preserve the norm of any state in their domain.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modes::{check_signed_overlap, collective_coordinates, overlap_isotropic, ModeDictionary};
use crate::qcore::{
    AtomKet, AtomLevel, BasisLabel, GammaKet, GammaSector, LinearMapSpec, PhiKet, PhiSector, StateVector,
};
use crate::tolerance;

use AtomLevel::{Bp, A, B, C};

/// How long the φ emission is observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// After all open channels have fully decayed.
    Instantaneous,
    /// After a finite `Γt`.
    Rate,
}

/// Which φ-emission map follows pulse 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Evolution {
    /// Collective (Dicke) emission.
    Correct,
    /// Independent emission from each atom: a nonphysical fixture.
    Ingraham,
}

impl Evolution {
    pub const FIXTURE_TAG: &'static str = "nonphysical fixture";

    pub fn name(self) -> &'static str {
        match self {
            Evolution::Correct => "correct",
            Evolution::Ingraham => "ingraham",
        }
    }

    /// Tag carried by every report derived from this evolution.
    pub fn tag(self) -> Option<&'static str> {
        match self {
            Evolution::Correct => None,
            Evolution::Ingraham => Some(Self::FIXTURE_TAG),
        }
    }
}

/// Physical and numerical parameters of one run.
///
/// Lengths share one arbitrary unit; the defaults read naturally as
/// micrometres. They make γ nearly orthogonal (`s_γ ≈ 0`, separation of ten γ
/// wavelengths) and φ modes identical to double precision (`s_φ = 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub lambda_gamma: f64,
    pub lambda_phi: f64,
    pub separation: f64,
    pub screen_distance: f64,
    pub screen_halfwidth: f64,
    pub grid_points: usize,
    pub s_gamma_override: Option<f64>,
    pub s_phi_override: Option<f64>,
    pub regime: Regime,
    pub gamma_t: f64,
    pub alice_pulse: bool,
    pub evolution: Evolution,
    pub include_late_decay: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            lambda_gamma: 0.5,
            lambda_phi: 1.0e8,
            separation: 5.0,
            screen_distance: 1.0e6,
            screen_halfwidth: 2.0e5,
            grid_points: 201,
            s_gamma_override: None,
            s_phi_override: None,
            regime: Regime::Instantaneous,
            gamma_t: 1.0,
            alice_pulse: true,
            evolution: Evolution::Correct,
            include_late_decay: true,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Parameter(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        positive("lambda_gamma", self.lambda_gamma)?;
        positive("lambda_phi", self.lambda_phi)?;
        positive("separation", self.separation)?;
        positive("screen_distance", self.screen_distance)?;
        positive("screen_halfwidth", self.screen_halfwidth)?;
        if self.grid_points < 3 || self.grid_points.is_multiple_of(2) {
            return Err(Error::Parameter(format!("grid_points must be odd and at least 3, got {}", self.grid_points)));
        }
        for s in [self.s_gamma_override, self.s_phi_override].into_iter().flatten() {
            check_signed_overlap(s)?;
        }
        if !(self.gamma_t >= 0.0) || !self.gamma_t.is_finite() {
            return Err(Error::Parameter(format!("gamma_t must be non-negative, got {}", self.gamma_t)));
        }
        if self.evolution == Evolution::Ingraham && self.regime != Regime::Instantaneous {
            return Err(Error::Parameter("the ingraham fixture only exists in the instantaneous regime".into()));
        }
        Ok(())
    }

    /// γ-mode overlap: the override, else the isotropic kernel.
    pub fn s_gamma(&self) -> Result<f64> {
        match self.s_gamma_override {
            Some(s) => check_signed_overlap(s).map(|_| s),
            None => overlap_isotropic(self.lambda_gamma, self.separation),
        }
    }

    /// φ-mode overlap: the override, else the isotropic kernel.
    pub fn s_phi(&self) -> Result<f64> {
        match self.s_phi_override {
            Some(s) => check_signed_overlap(s).map(|_| s),
            None => overlap_isotropic(self.lambda_phi, self.separation),
        }
    }
}

fn label(atom1: AtomLevel, atom2: AtomLevel, gamma: GammaSector, phi: PhiSector) -> BasisLabel {
    BasisLabel::new(atom1, atom2, gamma, phi)
}

fn ket(atoms: &AtomKet, gamma: GammaSector, phi: PhiSector) -> StateVector {
    StateVector::tensor(atoms, &GammaKet::basis(gamma), &PhiKet::basis(phi))
}

fn ground(gamma: GammaSector, phi: PhiSector) -> StateVector {
    StateVector::basis(label(C, C, gamma, phi))
}

/// `|Ψ⁺⟩ ⊗ |γ⟩ ⊗ |vac⟩`.
pub fn psi_plus(gamma: GammaSector) -> StateVector {
    ket(&AtomKet::psi_plus(), gamma, PhiSector::Vac)
}

/// `|Ψ⁻⟩ ⊗ |γ⟩ ⊗ |vac⟩`.
pub fn psi_minus(gamma: GammaSector) -> StateVector {
    ket(&AtomKet::psi_minus(), gamma, PhiSector::Vac)
}

fn require_no_levels(s: &StateVector, levels: &[AtomLevel], op: &str) -> Result<()> {
    if let Some((l, a)) =
        s.iter().find(|(l, a)| a.norm() > tolerance::DOMAIN && levels.iter().any(|&lv| l.has_atom_level(lv)))
    {
        return Err(Error::Sequencing(format!(
            "{op}: amplitude {:.3e} on {l}; expected excitation only in b′",
            a.norm()
        )));
    }
    Ok(())
}

/// State right after γ emission:
/// `(|b c⟩|γ₁⟩ + |c b⟩|γ₂⟩)/√2`, with γ₁, γ₂ at overlap `s_gamma` written in
/// the orthonormal `g1`, `g2` axes by their Löwdin embedding. The result is
/// renormalized explicitly.
pub fn prepare_after_gamma(s_gamma: f64) -> Result<StateVector> {
    let modes = ModeDictionary::two_mode("gamma1", "gamma2", s_gamma)?;
    let gamma_ket = |mode: usize| {
        let c = modes.coordinates(mode);
        GammaKet::from_coefficients([Complex64::new(0.0, 0.0), c[0], c[1]])
    };
    let vac = PhiKet::basis(PhiSector::Vac);
    let state = StateVector::tensor(&AtomKet::pair(B, C), &gamma_ket(0), &vac)
        + StateVector::tensor(&AtomKet::pair(C, B), &gamma_ket(1), &vac);
    state.normalized()
}

fn swap_b_levels(level: AtomLevel) -> AtomLevel {
    match level {
        B => Bp,
        Bp => B,
        other => other,
    }
}

/// Alice's second pulse: the permutation `b ↔ b′` on both atoms.
pub fn apply_pulse2(s: &StateVector) -> StateVector {
    StateVector::from_terms(
        s.iter().map(|(l, a)| (BasisLabel { atom1: swap_b_levels(l.atom1), atom2: swap_b_levels(l.atom2), ..l }, a)),
    )
}

/// Pulse 2 as a map over the full basis.
pub fn pulse2_map() -> LinearMapSpec {
    static MAP: OnceLock<LinearMapSpec> = OnceLock::new();
    MAP.get_or_init(build_pulse2_map).clone()
}

fn build_pulse2_map() -> LinearMapSpec {
    let inputs: Vec<_> = BasisLabel::all().map(StateVector::basis).collect();
    let outputs = inputs.iter().map(apply_pulse2).collect();
    LinearMapSpec::new("pulse2", inputs, outputs, |_| false).expect("permutation map is well formed")
}

/// Observation window of the φ emission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmissionWindow {
    /// Every channel with a nonzero rate has fully decayed.
    Complete,
    /// Finite `Γt`.
    Finite { gamma_t: f64 },
}

/// `(remaining, emitted)` amplitudes of a channel with relative rate `rate`.
///
/// Amplitudes are taken real and nonnegative. In the complete window a channel
/// with `rate ≤ 1e-12` counts as closed.
fn channel_amplitudes(rate: f64, window: EmissionWindow) -> (f64, f64) {
    match window {
        EmissionWindow::Complete => {
            if rate <= tolerance::ALGEBRAIC {
                (1.0, 0.0)
            } else {
                (0.0, 1.0)
            }
        }
        EmissionWindow::Finite { gamma_t } => {
            let x = rate * gamma_t;
            ((-0.5 * x).exp(), (-(-x).exp_m1()).sqrt())
        }
    }
}

/// Collective φ emission for mode overlap `s_phi`.
///
/// Per γ label: `Ψ⁺⊗vac → r₊ Ψ⁺⊗vac + e₊ |cc, bright⟩` with rate `1+s_phi`,
/// and `Ψ⁻⊗vac → r₋ Ψ⁻⊗vac + e₋ |cc, dark⟩` with rate `1−s_phi`. The
/// ground-plus-photon partners rotate the opposite way so each pair is a
/// rotation. Ground states with φ in `vac` or `late` pass through.
pub fn emission_map(s_phi: f64, window: EmissionWindow) -> Result<LinearMapSpec> {
    check_signed_overlap(s_phi)?;
    if let EmissionWindow::Finite { gamma_t } = window {
        if !(gamma_t >= 0.0) || !gamma_t.is_finite() {
            return Err(Error::Parameter(format!("gamma_t must be non-negative, got {gamma_t}")));
        }
    }
    let channels = [
        (psi_plus as fn(GammaSector) -> StateVector, PhiSector::Bright, 1.0 + s_phi),
        (psi_minus as fn(GammaSector) -> StateVector, PhiSector::Dark, 1.0 - s_phi),
    ];
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for gamma in GammaSector::ALL {
        for (excited, mode, rate) in channels {
            let (remain, emitted) = channel_amplitudes(rate, window);
            let e = excited(gamma);
            let g = ground(gamma, mode);
            inputs.push(e.clone());
            outputs.push(e.clone() * remain + g.clone() * emitted);
            inputs.push(g.clone());
            outputs.push(g * remain - e * emitted);
        }
    }
    LinearMapSpec::new("correct", inputs, outputs, |l| {
        l.atom1 == C && l.atom2 == C && matches!(l.phi, PhiSector::Vac | PhiSector::Late)
    })
}

/// Collective emission observed after every open channel has decayed.
///
/// At `s_phi = 1` the antisymmetric state cannot radiate and stays put; half
/// of the which-path state then remains excited.
pub fn collective_emission_instantaneous(s: &StateVector, s_phi: f64) -> Result<StateVector> {
    require_no_levels(s, &[A, B], "collective emission")?;
    emission_map(s_phi, EmissionWindow::Complete)?.apply(s)
}

/// Collective emission after a finite `gamma_t`, bright and dark rates
/// `Γ(1 ± s_phi)`.
pub fn collective_emission_rate(s: &StateVector, s_phi: f64, gamma_t: f64) -> Result<StateVector> {
    if !(gamma_t >= 0.0) || !gamma_t.is_finite() {
        return Err(Error::Parameter(format!("gamma_t must be non-negative, got {gamma_t}")));
    }
    require_no_levels(s, &[A, B], "collective emission")?;
    emission_map(s_phi, EmissionWindow::Finite { gamma_t })?.apply(s)
}

/// Late decay of the metastable `Ψ⁻`, emitting φ′ into the `late` label.
///
/// `Ψ⁻⊗vac ↔ |cc, late⟩` is a rotation by π/2. Any `Ψ⁺` residue left by the
/// rate regime passes through unchanged: the single `late` label can only
/// host one of the two excitations unitarily.
pub fn late_decay_map() -> LinearMapSpec {
    late_decay_cached().clone()
}

fn late_decay_cached() -> &'static LinearMapSpec {
    static MAP: OnceLock<LinearMapSpec> = OnceLock::new();
    MAP.get_or_init(build_late_decay_map)
}

fn build_late_decay_map() -> LinearMapSpec {
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for gamma in GammaSector::ALL {
        let minus = psi_minus(gamma);
        let late = ground(gamma, PhiSector::Late);
        inputs.push(minus.clone());
        outputs.push(late.clone());
        inputs.push(late);
        outputs.push(-minus);
        inputs.push(psi_plus(gamma));
        outputs.push(psi_plus(gamma));
    }
    LinearMapSpec::new("late_decay", inputs, outputs, |l| l.atom1 == C && l.atom2 == C && l.phi != PhiSector::Late)
        .expect("late decay map is well formed")
}

pub fn late_decay(s: &StateVector) -> Result<StateVector> {
    late_decay_cached().apply(s)
}

/// Independent emission, each atom radiating its own mode:
/// `|b′c⟩⊗vac → |cc⟩⊗φ₁`, `|cb′⟩⊗vac → |cc⟩⊗φ₂`, with φ₁, φ₂ at overlap
/// `s_phi` on the bright/dark axes. Orthogonal inputs land on states with
/// overlap `s_phi`; the output is never renormalized.
pub fn ingraham_map(s_phi: f64) -> Result<LinearMapSpec> {
    let [(b1, d1), (b2, d2)] = collective_coordinates(s_phi)?;
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for gamma in GammaSector::ALL {
        inputs.push(StateVector::basis(label(Bp, C, gamma, PhiSector::Vac)));
        outputs.push(ground(gamma, PhiSector::Bright) * b1 + ground(gamma, PhiSector::Dark) * d1);
        inputs.push(StateVector::basis(label(C, Bp, gamma, PhiSector::Vac)));
        outputs.push(ground(gamma, PhiSector::Bright) * b2 + ground(gamma, PhiSector::Dark) * d2);
    }
    LinearMapSpec::new("ingraham", inputs, outputs, |l| l.atom1 == C && l.atom2 == C)
}

pub fn ingraham_emission(s: &StateVector, s_phi: f64) -> Result<StateVector> {
    require_no_levels(s, &[A, B], "ingraham emission")?;
    ingraham_map(s_phi)?.apply(s)
}

/// Coefficients of `|Ψ⁺⟩`, `|Ψ⁻⟩` (with φ in vacuum) in one γ branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickeDecomposition {
    pub gamma: GammaSector,
    pub plus_amplitude: Complex64,
    pub minus_amplitude: Complex64,
    /// Squared norm of the single-b′ component with φ in vacuum.
    pub excited_weight: f64,
}

pub fn dicke_decompose(s: &StateVector) -> Vec<DickeDecomposition> {
    GammaSector::ALL
        .iter()
        .map(|&gamma| DickeDecomposition {
            gamma,
            plus_amplitude: psi_plus(gamma).inner(s),
            minus_amplitude: psi_minus(gamma).inner(s),
            excited_weight: s.amplitude(label(Bp, C, gamma, PhiSector::Vac)).norm_sqr()
                + s.amplitude(label(C, Bp, gamma, PhiSector::Vac)).norm_sqr(),
        })
        .collect()
}

pub fn dicke_recompose(parts: &[DickeDecomposition]) -> StateVector {
    parts.iter().fold(StateVector::zero(), |acc, d| {
        acc + psi_plus(d.gamma) * d.plus_amplitude + psi_minus(d.gamma) * d.minus_amplitude
    })
}

/// Probability that a prompt φ photon (bright or dark mode) has been emitted.
pub fn prompt_emission_probability(s: &StateVector) -> f64 {
    s.weight_where(|l| matches!(l.phi, PhiSector::Bright | PhiSector::Dark)) / s.norm_sqr()
}

/// Runs the full pipeline for `cfg`.
pub fn evolve(cfg: &ScenarioConfig) -> Result<StateVector> {
    cfg.validate()?;
    let s_phi = cfg.s_phi()?;
    let mut state = prepare_after_gamma(cfg.s_gamma()?)?;
    if cfg.alice_pulse {
        state = apply_pulse2(&state);
        state = match (cfg.evolution, cfg.regime) {
            (Evolution::Correct, Regime::Instantaneous) => collective_emission_instantaneous(&state, s_phi)?,
            (Evolution::Correct, Regime::Rate) => collective_emission_rate(&state, s_phi, cfg.gamma_t)?,
            (Evolution::Ingraham, _) => ingraham_emission(&state, s_phi)?,
        };
        if cfg.include_late_decay {
            state = late_decay(&state)?;
        }
    }
    Ok(state)
}

/// Single-b excitations `{|bc⟩, |cb⟩} ⊗ {none, g1, g2} ⊗ vac`, the sector γ
/// emission leaves the atoms in.
pub fn excited_sector_basis() -> Vec<StateVector> {
    let mut basis = Vec::new();
    for (a1, a2) in [(B, C), (C, B)] {
        for gamma in GammaSector::ALL {
            basis.push(StateVector::basis(label(a1, a2, gamma, PhiSector::Vac)));
        }
    }
    basis
}

/// Pulse 2, emission and (if configured) late decay composed and restricted
/// to [`excited_sector_basis`]. Labelled by the evolution.
pub fn evolution_map(cfg: &ScenarioConfig) -> Result<LinearMapSpec> {
    cfg.validate()?;
    let s_phi = cfg.s_phi()?;
    let emission = match (cfg.evolution, cfg.regime) {
        (Evolution::Correct, Regime::Instantaneous) => emission_map(s_phi, EmissionWindow::Complete)?,
        (Evolution::Correct, Regime::Rate) => emission_map(s_phi, EmissionWindow::Finite { gamma_t: cfg.gamma_t })?,
        (Evolution::Ingraham, _) => ingraham_map(s_phi)?,
    };
    let name = cfg.evolution.name();
    let mut map = pulse2_map().restrict_to(name, excited_sector_basis())?.then(&emission, name)?;
    if cfg.include_late_decay {
        map = map.then(&late_decay_map(), name)?;
    }
    Ok(map)
}
