use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use num_complex::Complex64;

use super::basis::{BasisLabel, DIM};
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::tolerance;

/// Matrix of pairwise inner products `G[i][j] = ⟨vᵢ|vⱼ⟩`.
pub fn gram_matrix(vectors: &[StateVector]) -> DMatrix<Complex64> {
    let n = vectors.len();
    DMatrix::from_fn(n, n, |i, j| vectors[i].inner(&vectors[j]))
}

/// A linear map given by the images of a set of independent input vectors.
///
/// Outside `span(inputs)` the map is the identity on an explicitly declared
/// set of *passthrough* basis labels, which must not overlap the support of
/// any input. Amplitude that is neither in the span nor on a passthrough label
/// is outside the map's domain and rejected by [`apply`](Self::apply).
#[derive(Debug, Clone)]
pub struct LinearMapSpec {
    label: String,
    inputs: Vec<StateVector>,
    outputs: Vec<StateVector>,
    passthrough: Vec<bool>,
    factor: Option<Cholesky<Complex64, Dyn>>,
}

impl LinearMapSpec {
    pub fn new<F>(
        label: impl Into<String>,
        inputs: Vec<StateVector>,
        outputs: Vec<StateVector>,
        passthrough: F,
    ) -> Result<Self>
    where
        F: Fn(BasisLabel) -> bool,
    {
        let label = label.into();
        if inputs.len() != outputs.len() {
            return Err(Error::Structural(format!(
                "map {label:?}: {} inputs but {} outputs",
                inputs.len(),
                outputs.len()
            )));
        }
        let passthrough: Vec<bool> = BasisLabel::all().map(&passthrough).collect();
        for (k, input) in inputs.iter().enumerate() {
            if let Some((l, _)) = input.iter().find(|(l, a)| passthrough[l.index()] && a.norm() != 0.0) {
                return Err(Error::Structural(format!(
                    "map {label:?}: input {k} has support on passthrough label {l}"
                )));
            }
        }
        let factor = if inputs.is_empty() {
            None
        } else {
            let gram = gram_matrix(&inputs);
            check_independent(&label, &gram)?;
            Some(Cholesky::new(gram).ok_or_else(|| {
                Error::Structural(format!("map {label:?}: input Gram matrix is not positive definite"))
            })?)
        };
        Ok(LinearMapSpec { label, inputs, outputs, passthrough, factor })
    }

    /// Identity on the whole basis.
    pub fn identity() -> Self {
        Self::new("identity", Vec::new(), Vec::new(), |_| true).expect("identity map is well formed")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn inputs(&self) -> &[StateVector] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[StateVector] {
        &self.outputs
    }

    pub fn is_passthrough(&self, label: BasisLabel) -> bool {
        self.passthrough[label.index()]
    }

    fn coordinates(&self, s: &StateVector) -> Vec<Complex64> {
        match &self.factor {
            None => Vec::new(),
            Some(factor) => {
                let rhs = DVector::from_iterator(self.inputs.len(), self.inputs.iter().map(|v| v.inner(s)));
                factor.solve(&rhs).iter().copied().collect()
            }
        }
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        let coords = self.coordinates(s);
        let mut image = s.restricted(|l| self.passthrough[l.index()]);
        let mut stray = s.restricted(|l| !self.passthrough[l.index()]);
        for ((c, input), output) in coords.iter().zip(&self.inputs).zip(&self.outputs) {
            stray.add_scaled(-c, input);
            image.add_scaled(*c, output);
        }
        let stray_norm = stray.norm();
        if stray_norm > tolerance::DOMAIN {
            let worst = stray
                .iter()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .map(|(l, _)| l.to_string())
                .unwrap_or_default();
            return Err(Error::Domain(format!(
                "map {:?}: amplitude {stray_norm:.3e} outside declared domain (largest on {worst})",
                self.label
            )));
        }
        Ok(image)
    }

    pub fn in_domain(&self, s: &StateVector) -> bool {
        self.apply(s).is_ok()
    }

    /// Same map restricted to `span(inputs)`, with no passthrough labels.
    pub fn restrict_to(&self, label: impl Into<String>, inputs: Vec<StateVector>) -> Result<LinearMapSpec> {
        let outputs = inputs.iter().map(|v| self.apply(v)).collect::<Result<Vec<_>>>()?;
        LinearMapSpec::new(label, inputs, outputs, |_| false)
    }

    /// `then ∘ self` on the domain of `self`.
    pub fn then(&self, then: &LinearMapSpec, label: impl Into<String>) -> Result<LinearMapSpec> {
        let outputs = self.outputs.iter().map(|v| then.apply(v)).collect::<Result<Vec<_>>>()?;
        LinearMapSpec::new(label, self.inputs.clone(), outputs, |l| {
            self.passthrough[l.index()] && then.passthrough[l.index()]
        })
    }

    /// Dense `DIM × DIM` matrix in the product basis: `O·G⁻¹·Iᴴ + P`, where
    /// `I`, `O` hold inputs and outputs as columns, `G` is the input Gram
    /// matrix and `P` projects onto the passthrough labels. It agrees with
    /// [`apply`](Self::apply) on the domain and annihilates its complement.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_fn(DIM, DIM, |i, j| {
            if i == j && self.passthrough[i] {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        if let Some(factor) = &self.factor {
            let n = self.inputs.len();
            let ins = DMatrix::from_fn(DIM, n, |r, c| self.inputs[c].amplitudes()[r]);
            let outs = DMatrix::from_fn(DIM, n, |r, c| self.outputs[c].amplitudes()[r]);
            let coords = factor.solve(&ins.adjoint());
            m += outs * coords;
        }
        m
    }
}

fn check_independent(label: &str, gram: &DMatrix<Complex64>) -> Result<()> {
    let eigen = SymmetricEigen::new(gram.clone());
    let max = eigen.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) || min / max < tolerance::INDEPENDENCE {
        return Err(Error::Structural(format!(
            "map {label:?}: input vectors are linearly dependent (eigenvalue ratio {:.3e})",
            min / max
        )));
    }
    Ok(())
}
