use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::basis::{AtomLevel, BasisLabel, GammaSector, PhiSector, ATOM_PAIRS, DIM};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients over one tensor factor of the product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorKet<const N: usize>([Complex64; N]);

/// Atomic pair ket over the 16 states `(atom1, atom2)`.
pub type AtomKet = SectorKet<ATOM_PAIRS>;
/// γ-sector ket over `none, g1, g2`.
pub type GammaKet = SectorKet<{ GammaSector::COUNT }>;
/// φ-sector ket over `vac, bright, dark, late`.
pub type PhiKet = SectorKet<{ PhiSector::COUNT }>;

impl<const N: usize> SectorKet<N> {
    pub fn zero() -> Self {
        SectorKet([ZERO; N])
    }

    pub fn from_coefficients(coefficients: [Complex64; N]) -> Self {
        SectorKet(coefficients)
    }

    pub fn coefficients(&self) -> &[Complex64; N] {
        &self.0
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn scale(mut self, factor: Complex64) -> Self {
        self.0.iter_mut().for_each(|c| *c *= factor);
        self
    }
}

impl<const N: usize> Add for SectorKet<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        self
    }
}

impl<const N: usize> Sub for SectorKet<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a -= b);
        self
    }
}

impl<const N: usize> Mul<f64> for SectorKet<N> {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl AtomKet {
    pub fn pair(atom1: AtomLevel, atom2: AtomLevel) -> Self {
        let mut ket = Self::zero();
        ket.0[atom1.index() * AtomLevel::COUNT + atom2.index()] = Complex64::new(1.0, 0.0);
        ket
    }

    /// Symmetric single excitation `(|b′c⟩ + |cb′⟩)/√2`.
    pub fn psi_plus() -> Self {
        (Self::pair(AtomLevel::Bp, AtomLevel::C) + Self::pair(AtomLevel::C, AtomLevel::Bp))
            * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Antisymmetric single excitation `(|b′c⟩ − |cb′⟩)/√2`.
    pub fn psi_minus() -> Self {
        (Self::pair(AtomLevel::Bp, AtomLevel::C) - Self::pair(AtomLevel::C, AtomLevel::Bp))
            * std::f64::consts::FRAC_1_SQRT_2
    }
}

impl GammaKet {
    pub fn basis(gamma: GammaSector) -> Self {
        let mut ket = Self::zero();
        ket.0[gamma.index()] = Complex64::new(1.0, 0.0);
        ket
    }
}

impl PhiKet {
    pub fn basis(phi: PhiSector) -> Self {
        let mut ket = Self::zero();
        ket.0[phi.index()] = Complex64::new(1.0, 0.0);
        ket
    }
}

/// Dense amplitudes over the 192-dimensional product basis.
///
/// Every `StateVector` has exactly [`DIM`] amplitudes; the only way to build
/// one from raw data ([`StateVector::from_amplitudes`] or JSON) checks this, so
/// binary operations never see a dimension mismatch.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero() -> Self {
        StateVector { amplitudes: vec![ZERO; DIM] }
    }

    pub fn basis(label: BasisLabel) -> Self {
        let mut s = Self::zero();
        s.amplitudes[label.index()] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != DIM {
            return Err(Error::Structural(format!("state has {} amplitudes, basis has {DIM}", amplitudes.len())));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisLabel, Complex64)>,
    {
        let mut s = Self::zero();
        for (label, amp) in terms {
            s.amplitudes[label.index()] += amp;
        }
        s
    }

    /// Product state `atoms ⊗ gamma ⊗ phi`.
    pub fn tensor(atoms: &AtomKet, gamma: &GammaKet, phi: &PhiKet) -> Self {
        let mut s = Self::zero();
        for (i, amp) in s.amplitudes.iter_mut().enumerate() {
            let label = BasisLabel::from_index(i).expect("index within DIM");
            *amp = atoms.0[label.atom_pair_index()] * gamma.0[label.gamma.index()] * phi.0[label.phi.index()];
        }
        s
    }

    pub fn amplitude(&self, label: BasisLabel) -> Complex64 {
        self.amplitudes[label.index()]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn with_amplitude(mut self, label: BasisLabel, amp: Complex64) -> Self {
        self.amplitudes[label.index()] = amp;
        self
    }

    /// Labels and amplitudes, in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, Complex64)> + '_ {
        self.amplitudes.iter().enumerate().map(|(i, &a)| (BasisLabel::from_index(i).expect("index within DIM"), a))
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Precondition(format!("cannot normalize a state of norm {norm}")));
        }
        Ok(self.clone() * (1.0 / norm))
    }

    pub fn scale(mut self, factor: Complex64) -> Self {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
        self
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, factor: Complex64, other: &StateVector) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
    }

    /// Keeps amplitudes whose label satisfies `keep`, zeroes the rest.
    pub fn restricted<F: Fn(BasisLabel) -> bool>(&self, keep: F) -> StateVector {
        let mut out = self.clone();
        for (i, amp) in out.amplitudes.iter_mut().enumerate() {
            if !keep(BasisLabel::from_index(i).expect("index within DIM")) {
                *amp = ZERO;
            }
        }
        out
    }

    /// Squared weight carried by labels satisfying `pred`.
    pub fn weight_where<F: Fn(BasisLabel) -> bool>(&self, pred: F) -> f64 {
        self.iter().filter(|(l, _)| pred(*l)).map(|(_, a)| a.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `⟨u|v⟩ = Σ conj(uᵢ) vᵢ`.
pub fn inner_product(u: &StateVector, v: &StateVector) -> Complex64 {
    u.inner(v)
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (label, amp) in self.iter().filter(|(_, a)| *a != ZERO) {
            map.entry(&label.to_string(), &amp);
        }
        map.finish()
    }
}

impl Add for StateVector {
    type Output = StateVector;

    fn add(mut self, rhs: StateVector) -> StateVector {
        self.amplitudes.iter_mut().zip(&rhs.amplitudes).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for StateVector {
    type Output = StateVector;

    fn sub(mut self, rhs: StateVector) -> StateVector {
        self.amplitudes.iter_mut().zip(&rhs.amplitudes).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Neg for StateVector {
    type Output = StateVector;

    fn neg(self) -> StateVector {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for StateVector {
    type Output = StateVector;

    fn mul(self, rhs: f64) -> StateVector {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Mul<Complex64> for StateVector {
    type Output = StateVector;

    fn mul(self, rhs: Complex64) -> StateVector {
        self.scale(rhs)
    }
}

// JSON form: {"b,c,g1,vac": [re, im], ...}, nonzero entries in basis order.
impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let nonzero: Vec<_> = self.iter().filter(|(_, a)| *a != ZERO).collect();
        let mut map = serializer.serialize_map(Some(nonzero.len()))?;
        for (label, amp) in nonzero {
            map.serialize_entry(&label.to_string(), &[amp.re, amp.im])?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct StateVisitor;

        impl<'de> Visitor<'de> for StateVisitor {
            type Value = StateVector;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from basis labels to [re, im] pairs")
            }

            fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> std::result::Result<StateVector, M::Error> {
                let mut entries = BTreeMap::new();
                while let Some((key, [re, im])) = access.next_entry::<String, [f64; 2]>()? {
                    let label: BasisLabel = key.parse().map_err(de::Error::custom)?;
                    if entries.insert(label, Complex64::new(re, im)).is_some() {
                        return Err(de::Error::custom(format!("duplicate label {key}")));
                    }
                }
                Ok(StateVector::from_terms(entries))
            }
        }

        deserializer.deserialize_map(StateVisitor)
    }
}
