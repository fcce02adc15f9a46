use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Internal level of one atom: ground `c`, excited `a`, `b` and `bp` (b′).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomLevel {
    A,
    B,
    Bp,
    C,
}

/// γ-photon sector: no photon, or one photon in orthonormal mode `g1` / `g2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaSector {
    None,
    G1,
    G2,
}

/// φ-photon sector: vacuum, bright / dark collective modes, or the late photon φ′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhiSector {
    Vac,
    Bright,
    Dark,
    Late,
}

macro_rules! sector_enum {
    ($ty:ident, $n:expr, [$($var:ident => $name:literal),+ $(,)?]) => {
        impl $ty {
            pub const COUNT: usize = $n;
            pub const ALL: [$ty; $n] = [$($ty::$var),+];

            pub fn index(self) -> usize {
                self as usize
            }

            pub fn from_index(i: usize) -> Option<Self> {
                Self::ALL.get(i).copied()
            }

            pub fn name(self) -> &'static str {
                match self {
                    $($ty::$var => $name),+
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($ty::$var),)+
                    other => Err(Error::Structural(format!(
                        concat!("unknown ", stringify!($ty), " label {:?}"),
                        other
                    ))),
                }
            }
        }
    };
}

sector_enum!(AtomLevel, 4, [A => "a", B => "b", Bp => "bp", C => "c"]);
sector_enum!(GammaSector, 3, [None => "none", G1 => "g1", G2 => "g2"]);
sector_enum!(PhiSector, 4, [Vac => "vac", Bright => "bright", Dark => "dark", Late => "late"]);

/// Total dimension of the product basis atom1 ⊗ atom2 ⊗ γ ⊗ φ.
pub const DIM: usize = AtomLevel::COUNT * AtomLevel::COUNT * GammaSector::COUNT * PhiSector::COUNT;

/// Number of atomic pair states.
pub const ATOM_PAIRS: usize = AtomLevel::COUNT * AtomLevel::COUNT;

/// One vector of the product basis.
///
/// Labels enumerate in row-major order (atom1 slowest, φ fastest) and print as
/// `atom1,atom2,gamma,phi`, e.g. `bp,c,g1,vac`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub atom1: AtomLevel,
    pub atom2: AtomLevel,
    pub gamma: GammaSector,
    pub phi: PhiSector,
}

impl BasisLabel {
    pub const fn new(atom1: AtomLevel, atom2: AtomLevel, gamma: GammaSector, phi: PhiSector) -> Self {
        BasisLabel { atom1, atom2, gamma, phi }
    }

    pub fn index(self) -> usize {
        ((self.atom1.index() * AtomLevel::COUNT + self.atom2.index()) * GammaSector::COUNT + self.gamma.index())
            * PhiSector::COUNT
            + self.phi.index()
    }

    pub fn from_index(i: usize) -> Option<Self> {
        if i >= DIM {
            return None;
        }
        let phi = i % PhiSector::COUNT;
        let rest = i / PhiSector::COUNT;
        let gamma = rest % GammaSector::COUNT;
        let pair = rest / GammaSector::COUNT;
        Some(BasisLabel {
            atom1: AtomLevel::ALL[pair / AtomLevel::COUNT],
            atom2: AtomLevel::ALL[pair % AtomLevel::COUNT],
            gamma: GammaSector::ALL[gamma],
            phi: PhiSector::ALL[phi],
        })
    }

    /// All labels in enumeration order.
    pub fn all() -> impl Iterator<Item = BasisLabel> {
        (0..DIM).map(|i| BasisLabel::from_index(i).expect("index within DIM"))
    }

    /// Index of the atomic pair `(atom1, atom2)` in `0..16`.
    pub fn atom_pair_index(self) -> usize {
        self.atom1.index() * AtomLevel::COUNT + self.atom2.index()
    }

    /// True if either atom sits in `level`.
    pub fn has_atom_level(self, level: AtomLevel) -> bool {
        self.atom1 == level || self.atom2 == level
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.atom1, self.atom2, self.gamma, self.phi)
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Structural(format!("basis label {s:?} must have four comma-separated fields")));
        }
        Ok(BasisLabel {
            atom1: parts[0].parse()?,
            atom2: parts[1].parse()?,
            gamma: parts[2].parse()?,
            phi: parts[3].parse()?,
        })
    }
}
