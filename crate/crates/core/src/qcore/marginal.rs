use super::basis::{AtomLevel, BasisLabel, GammaSector, PhiSector};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::tolerance;

/// Tensor factor(s) kept by [`marginal_distribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// Both atoms jointly, keys `"atom1,atom2"`.
    Atoms,
    Atom1,
    Atom2,
    Gamma,
    Phi,
}

impl Sector {
    fn key(self, label: BasisLabel) -> String {
        match self {
            Sector::Atoms => format!("{},{}", label.atom1, label.atom2),
            Sector::Atom1 => label.atom1.to_string(),
            Sector::Atom2 => label.atom2.to_string(),
            Sector::Gamma => label.gamma.to_string(),
            Sector::Phi => label.phi.to_string(),
        }
    }

    fn keys(self) -> Vec<String> {
        match self {
            Sector::Atoms => {
                AtomLevel::ALL.iter().flat_map(|a| AtomLevel::ALL.iter().map(move |b| format!("{a},{b}"))).collect()
            }
            Sector::Atom1 | Sector::Atom2 => AtomLevel::ALL.iter().map(|l| l.to_string()).collect(),
            Sector::Gamma => GammaSector::ALL.iter().map(|l| l.to_string()).collect(),
            Sector::Phi => PhiSector::ALL.iter().map(|l| l.to_string()).collect(),
        }
    }
}

/// Probabilities over the labels of one sector, in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    pub sector: Sector,
    pub entries: Vec<(String, f64)>,
}

impl ProbabilityTable {
    /// Probability of `key`; unknown keys read as zero.
    pub fn get(&self, key: &str) -> f64 {
        self.entries.iter().find(|(k, _)| k == key).map_or(0.0, |(_, p)| *p)
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

/// Born-rule distribution of the kept sector, tracing out everything else.
pub fn marginal_distribution(s: &StateVector, keep: Sector) -> Result<ProbabilityTable> {
    let norm_sqr = s.norm_sqr();
    if (norm_sqr - 1.0).abs() > tolerance::PHYSICAL {
        return Err(Error::Precondition(format!("marginal of an unnormalized state (norm² = {norm_sqr})")));
    }
    let mut entries: Vec<(String, f64)> = keep.keys().into_iter().map(|k| (k, 0.0)).collect();
    for (label, amp) in s.iter() {
        let key = keep.key(label);
        let slot = entries.iter_mut().find(|(k, _)| *k == key).expect("every label maps to a sector key");
        slot.1 += amp.norm_sqr();
    }
    Ok(ProbabilityTable { sector: keep, entries })
}
