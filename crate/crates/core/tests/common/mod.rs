#![allow(dead_code)]

use eraser_core::{AtomLevel, BasisLabel, Complex64, GammaSector, PhiSector, StateVector};
use rand::Rng;

/// Random normalized combination of the given vectors with complex Gaussian-ish weights.
pub fn random_combination<R: Rng>(rng: &mut R, vectors: &[StateVector]) -> StateVector {
    let s = vectors.iter().fold(StateVector::zero(), |acc, v| {
        let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        acc + v.clone() * c
    });
    s.normalized().expect("nonzero combination")
}

pub fn labels_where<F: Fn(BasisLabel) -> bool>(pred: F) -> Vec<StateVector> {
    BasisLabel::all().filter(|l| pred(*l)).map(StateVector::basis).collect()
}

/// Single-b′ vacuum states and every ground-state label: the domain of the
/// collective emission and late decay maps.
pub fn emission_domain() -> Vec<StateVector> {
    labels_where(|l| {
        let single = matches!((l.atom1, l.atom2), (AtomLevel::Bp, AtomLevel::C) | (AtomLevel::C, AtomLevel::Bp));
        (single && l.phi == PhiSector::Vac) || (l.atom1 == AtomLevel::C && l.atom2 == AtomLevel::C)
    })
}

/// Excited sector after pulse 2: single-b′ with φ vacuum.
pub fn bp_sector() -> Vec<StateVector> {
    labels_where(|l| {
        matches!((l.atom1, l.atom2), (AtomLevel::Bp, AtomLevel::C) | (AtomLevel::C, AtomLevel::Bp))
            && l.phi == PhiSector::Vac
    })
}

pub fn label(a1: AtomLevel, a2: AtomLevel, g: GammaSector, p: PhiSector) -> BasisLabel {
    BasisLabel::new(a1, a2, g, p)
}
