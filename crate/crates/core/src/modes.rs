//! Non-orthogonal photon modes.
//!
//! The single-photon states emitted from the two atom positions overlap by
//! `s = ⟨mode₁|mode₂⟩`. For isotropic point emitters the overlap is the
//! spatial-coherence kernel `sin(kd)/(kd)`: close to one when the wavelength
//! is much larger than the separation, small and oscillating when it is much
//! smaller. A [`ModeDictionary`] keeps the Gram matrix of named modes together
//! with an orthonormal embedding, so that modes can be written into the
//! orthonormal sector labels of [`crate::qcore`].

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

/// `sin(kd)/(kd)` with `k = 2π/wavelength`; exactly 1 at `separation = 0`.
pub fn overlap_isotropic(wavelength: f64, separation: f64) -> Result<f64> {
    if !(wavelength > 0.0) || !wavelength.is_finite() {
        return Err(Error::Parameter(format!("wavelength must be positive, got {wavelength}")));
    }
    if !(separation >= 0.0) || !separation.is_finite() {
        return Err(Error::Parameter(format!("separation must be non-negative, got {separation}")));
    }
    let x = std::f64::consts::TAU / wavelength * separation;
    if x == 0.0 {
        return Ok(1.0);
    }
    Ok(x.sin() / x)
}

/// Source of a mode overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OverlapModel {
    /// Isotropic point emitters at the given wavelength.
    IsotropicPointSource { wavelength: f64 },
    /// Geometry-free overlap, for controlled experiments.
    FixedValue(f64),
}

impl OverlapModel {
    pub fn overlap(&self, separation: f64) -> Result<f64> {
        match *self {
            OverlapModel::IsotropicPointSource { wavelength } => overlap_isotropic(wavelength, separation),
            OverlapModel::FixedValue(s) => check_signed_overlap(s).map(|_| s),
        }
    }
}

pub(crate) fn check_signed_overlap(s: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::Parameter(format!("overlap must lie in [-1, 1], got {s}")));
    }
    Ok(())
}

/// Orthonormal coordinates of a set of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    /// Column `j` holds the coordinates of mode `j`.
    pub matrix: DMatrix<Complex64>,
    /// Numerical rank of the Gram matrix.
    pub rank: usize,
    /// Set when some axis carries no mode weight (e.g. identical modes).
    pub rank_deficient: bool,
}

/// Symmetric (Löwdin) embedding `G^{1/2}`.
///
/// Columns of `G^{1/2}` have pairwise inner products `G`, and among all such
/// factorizations it is the one closest to the identity, so no mode is
/// privileged by ordering. For two modes with real overlap `s` the closed form
/// is `½[[p+m, p−m], [p−m, p+m]]` with `p = √(1+s)`, `m = √(1−s)`.
pub fn embed(gram: &DMatrix<Complex64>) -> Result<Embedding> {
    let n = gram.nrows();
    if gram.ncols() != n {
        return Err(Error::Structural(format!("Gram matrix is {}×{}", n, gram.ncols())));
    }
    for i in 0..n {
        if (gram[(i, i)] - Complex64::new(1.0, 0.0)).norm() > tolerance::ALGEBRAIC {
            return Err(Error::Parameter(format!("Gram diagonal must be 1, entry {i} is {}", gram[(i, i)])));
        }
        for j in 0..i {
            if (gram[(i, j)] - gram[(j, i)].conj()).norm() > tolerance::ALGEBRAIC {
                return Err(Error::Parameter(format!("Gram matrix is not Hermitian at ({i}, {j})")));
            }
        }
    }

    if n == 2 && gram[(0, 1)].im == 0.0 {
        let s = gram[(0, 1)].re;
        if 1.0 - s.abs() < -tolerance::PSD_SLACK {
            return Err(Error::Parameter(format!("Gram matrix with overlap {s} is not positive semidefinite")));
        }
        let p = (1.0 + s).max(0.0).sqrt();
        let m = (1.0 - s).max(0.0).sqrt();
        let diag = Complex64::new(0.5 * (p + m), 0.0);
        let off = Complex64::new(0.5 * (p - m), 0.0);
        let small = (1.0 - s.abs()).max(0.0);
        let rank_deficient = small <= tolerance::ALGEBRAIC;
        return Ok(Embedding {
            matrix: DMatrix::from_row_slice(2, 2, &[diag, off, off, diag]),
            rank: if rank_deficient { 1 } else { 2 },
            rank_deficient,
        });
    }

    let eigen = SymmetricEigen::new(gram.clone());
    if let Some(bad) = eigen.eigenvalues.iter().find(|&&l| l < -tolerance::PSD_SLACK) {
        return Err(Error::Parameter(format!("Gram matrix has negative eigenvalue {bad}")));
    }
    let roots = eigen.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let v = &eigen.eigenvectors;
    let matrix = v * DMatrix::from_diagonal(&roots) * v.adjoint();
    let rank = eigen.eigenvalues.iter().filter(|&&l| l > tolerance::ALGEBRAIC).count();
    Ok(Embedding { matrix, rank, rank_deficient: rank < n })
}

/// Norms of the unnormalized collective modes `mode₁ ± mode₂`:
/// `(√(2(1+s)), √(2(1−s)))`. The dark norm vanishes only at `s = 1`.
pub fn bright_dark_coefficients(s: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Parameter(format!("overlap must lie in [0, 1], got {s}")));
    }
    Ok(((2.0 * (1.0 + s)).sqrt(), (2.0 * (1.0 - s)).sqrt()))
}

/// Coordinates of two modes with real overlap `s ∈ [−1, 1]` on the
/// orthonormal collective axes `bright = (m₁+m₂)/√(2(1+s))` and
/// `dark = (m₁−m₂)/√(2(1−s))`.
///
/// Returns `[(bright₁, dark₁), (bright₂, dark₂)]`. This is the Löwdin
/// embedding rotated by the fixed Hadamard transform onto the symmetric and
/// antisymmetric axes.
pub fn collective_coordinates(s: f64) -> Result<[(f64, f64); 2]> {
    check_signed_overlap(s)?;
    let bright = (0.5 * (1.0 + s)).sqrt();
    let dark = (0.5 * (1.0 - s)).sqrt();
    Ok([(bright, dark), (bright, -dark)])
}

/// Named modes with their Gram matrix and orthonormal embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeDictionary {
    names: Vec<String>,
    gram: DMatrix<Complex64>,
    embedding: Embedding,
}

impl ModeDictionary {
    pub fn new(names: Vec<String>, gram: DMatrix<Complex64>) -> Result<Self> {
        if names.len() != gram.nrows() {
            return Err(Error::Structural(format!(
                "{} mode names for a {}×{} Gram matrix",
                names.len(),
                gram.nrows(),
                gram.ncols()
            )));
        }
        let embedding = embed(&gram)?;
        Ok(ModeDictionary { names, gram, embedding })
    }

    /// Two modes with real overlap `s ∈ [−1, 1]`.
    pub fn two_mode(first: &str, second: &str, s: f64) -> Result<Self> {
        check_signed_overlap(s)?;
        let one = Complex64::new(1.0, 0.0);
        let off = Complex64::new(s, 0.0);
        Self::new(vec![first.to_owned(), second.to_owned()], DMatrix::from_row_slice(2, 2, &[one, off, off, one]))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram(&self) -> &DMatrix<Complex64> {
        &self.gram
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Orthonormal coordinates of mode `i`.
    pub fn coordinates(&self, i: usize) -> Vec<Complex64> {
        self.embedding.matrix.column(i).iter().copied().collect()
    }

    /// Inner product of modes `i` and `j` recomputed from their coordinates.
    pub fn reconstructed_overlap(&self, i: usize, j: usize) -> Complex64 {
        let a = self.embedding.matrix.column(i);
        let b = self.embedding.matrix.column(j);
        a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
    }

    /// Largest entrywise gap between `Eᴴ·E` and the Gram matrix.
    pub fn reconstruction_error(&self) -> f64 {
        let e = &self.embedding.matrix;
        let rebuilt = e.adjoint() * e;
        (rebuilt - &self.gram).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
