//! Density matrices over labeled registers: mixtures, partial trace, and the
//! entropy quantities used by the eavesdropping analysis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{PureState, TOL};

/// A validated density matrix (Hermitian, unit trace, positive semidefinite
/// up to numerical noise) over an ordered register of labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    labels: Vec<usize>,
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates and wraps a raw matrix.
    pub fn new(labels: Vec<usize>, mat: DMatrix<Complex64>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        let dim = 1usize << labels.len();
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: mat.nrows().max(mat.ncols()),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                if (mat[(i, j)] - mat[(j, i)].conj()).norm() > TOL {
                    return Err(Error::NotHermitian);
                }
            }
        }
        let trace = mat.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let rho = DensityMatrix { labels, mat };
        let min = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -TOL {
            return Err(Error::NotPositive { min });
        }
        Ok(rho)
    }

    /// `|psi><psi|` with the same register labels as the state.
    pub fn from_pure(state: &PureState) -> Self {
        let amps = state.amplitudes();
        let dim = amps.len();
        let mat = DMatrix::from_fn(dim, dim, |i, j| amps[i] * amps[j].conj());
        DensityMatrix {
            labels: state.labels().to_vec(),
            mat,
        }
    }

    /// The maximally mixed state `I / 2^q` on the given labels.
    pub fn maximally_mixed(labels: Vec<usize>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(*l));
            }
        }
        let dim = 1usize << labels.len();
        let mat = DMatrix::from_diagonal_element(dim, dim, Complex64::new(1.0 / dim as f64, 0.0));
        Ok(DensityMatrix { labels, mat })
    }

    /// Probabilistic mixture of density matrices on the same register.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        validate_probabilities(parts.iter().map(|(p, _)| *p))?;
        let first = parts.first().ok_or(Error::BadProbabilities { sum: 0.0 })?;
        let dim = first.1.dim();
        let mut mat = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for (p, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: rho.dim(),
                });
            }
            if rho.labels != first.1.labels {
                return Err(Error::InvalidArgument(
                    "mixture parts must share one register".into(),
                ));
            }
            mat += rho.mat.scale(*p);
        }
        Ok(DensityMatrix {
            labels: first.1.labels.clone(),
            mat,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Traces out every qubit not in `keep`. Kept labels stay in register
    /// order; `keep` must be a nonempty subset of the register.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::BadKeepSet);
        }
        for l in keep {
            if !self.labels.contains(l) {
                return Err(Error::BadKeepSet);
            }
        }
        let q = self.labels.len();
        let kept_pos: Vec<usize> = (0..q).filter(|p| keep.contains(&self.labels[*p])).collect();
        let traced_pos: Vec<usize> = (0..q).filter(|p| !kept_pos.contains(p)).collect();
        let kq = kept_pos.len();
        let new_labels: Vec<usize> = kept_pos.iter().map(|&p| self.labels[p]).collect();

        // Rebuilds a full register index from kept bits and traced bits.
        let assemble = |kept_bits: usize, traced_bits: usize| -> usize {
            let mut idx = 0usize;
            for (rank, &p) in kept_pos.iter().enumerate() {
                let bit = (kept_bits >> (kq - 1 - rank)) & 1;
                idx |= bit << (q - 1 - p);
            }
            for (rank, &p) in traced_pos.iter().enumerate() {
                let bit = (traced_bits >> (traced_pos.len() - 1 - rank)) & 1;
                idx |= bit << (q - 1 - p);
            }
            idx
        };

        let dim = 1usize << kq;
        let mut mat = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..(1usize << traced_pos.len()) {
                    acc += self.mat[(assemble(i, t), assemble(j, t))];
                }
                mat[(i, j)] = acc;
            }
        }
        Ok(DensityMatrix {
            labels: new_labels,
            mat,
        })
    }

    /// Real eigenvalues of the (Hermitian) matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.mat
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    }

    /// Von Neumann entropy in bits: `-sum(lambda log2 lambda)` over the
    /// eigenvalues, with `0 log 0 = 0`. Eigenvalues in `[-TOL, 0)` are
    /// clipped to zero before taking logs.
    pub fn von_neumann_entropy(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .map(|l| if l < 0.0 { 0.0 } else { l })
            .filter(|l| *l > 0.0)
            .map(|l| -l * l.log2())
            .sum()
    }

    /// Entrywise comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.labels == other.labels
            && self.dim() == other.dim()
            && (&self.mat - &other.mat).iter().all(|d| d.norm() <= tol)
    }
}

/// Holevo quantity of an ensemble: `S(sum p_i rho_i) - sum p_i S(rho_i)`,
/// the upper bound on classical information extractable from the ensemble.
pub fn holevo(ensemble: &[(f64, DensityMatrix)]) -> Result<f64> {
    let mixed = DensityMatrix::mixture(ensemble)?;
    let avg_entropy: f64 = ensemble
        .iter()
        .map(|(p, rho)| p * rho.von_neumann_entropy())
        .sum();
    Ok(mixed.von_neumann_entropy() - avg_entropy)
}

fn validate_probabilities(probs: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    for p in probs {
        if p < -TOL || !p.is_finite() {
            return Err(Error::BadProbabilities { sum: p });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > TOL {
        return Err(Error::BadProbabilities { sum });
    }
    Ok(())
}
