//! Riemann matrices, the symplectic action, Minkowski/LLL reduction of the
//! imaginary part, full Siegel-domain reduction, and extraction of a Riemann
//! matrix from a principally polarized lattice.

pub mod basis;
pub mod fmat;
pub mod reduce;
pub mod sympl;

pub use basis::{period_matrix, symplectic_basis};
pub use fmat::FMat3;
pub use reduce::{is_minkowski_reduced, lll_reduce_imag, minkowski_reduce, satisfies_lovasz, siegel_reduce, ReductionVariant};
pub use sympl::{symplectic_act, SymplecticMatrix};

use mpnum::serialize::{complex_from_repr, complex_to_repr, ComplexRepr};
use mpnum::{BigComplex, BigFloat, BigInt, CMatrix, MpError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SiegelError {
    #[error("matrix is not symmetric at the working precision")]
    NotSymmetric,
    #[error("imaginary part is not positive definite")]
    NotPositiveDefinite,
    #[error("reduction could not certify its inequalities at the working precision")]
    PrecisionExhausted,
    #[error("alternating form is not principal (an elementary divisor exceeds 1)")]
    NotPrincipal,
    #[error("polarization is not positive (Im τ not positive definite); try negating E")]
    NotPositive,
    #[error(transparent)]
    Numeric(#[from] MpError),
    #[error("bad input: {0}")]
    BadInput(String),
}

/// A point of the Siegel upper half space ℋ₃: symmetric 3×3 complex τ with
/// positive definite imaginary part.
#[derive(Debug, Clone)]
pub struct RiemannMatrix {
    tau: CMatrix,
    pub prec: u32,
}

impl RiemannMatrix {
    /// Validates symmetry (‖τ−τᵀ‖∞ ≤ 2^(10−prec)·max(1,‖τ‖∞)) and positive
    /// definiteness of Im τ, then stores the exactly symmetrized matrix.
    pub fn new(tau: CMatrix, prec: u32) -> Result<Self, SiegelError> {
        assert_eq!((tau.rows, tau.cols), (3, 3));
        let asym = tau.sub(&tau.transpose(), prec).max_norm(prec);
        let scale = {
            let n = tau.max_norm(prec);
            if n < 1u32 {
                BigFloat::with_val(prec, 1)
            } else {
                n
            }
        };
        if asym > scale * mpnum::two_pow(10 - prec as i32) {
            return Err(SiegelError::NotSymmetric);
        }
        let half = BigComplex::with_val(prec, (0.5, 0.0));
        let sym = tau.add(&tau.transpose(), prec).scale(&half, prec);
        let rm = RiemannMatrix { tau: sym, prec };
        if !rm.imag().is_positive_definite(prec) {
            return Err(SiegelError::NotPositiveDefinite);
        }
        Ok(rm)
    }

    pub fn tau(&self) -> &CMatrix {
        &self.tau
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigComplex {
        &self.tau[(i, j)]
    }

    /// Y = Im τ as a real symmetric matrix.
    pub fn imag(&self) -> FMat3 {
        FMat3::from_fn(|i, j| BigFloat::with_val(self.prec, self.tau[(i, j)].imag()))
    }

    pub fn real(&self) -> FMat3 {
        FMat3::from_fn(|i, j| BigFloat::with_val(self.prec, self.tau[(i, j)].real()))
    }

    /// Re-rounds to a (possibly lower) precision.
    pub fn at_prec(&self, prec: u32) -> RiemannMatrix {
        let tau = CMatrix::from_fn(3, 3, |i, j| BigComplex::with_val(prec, &self.tau[(i, j)]));
        RiemannMatrix { tau, prec }
    }

    /// τ/2 (used to seed duplication) — stays in ℋ₃.
    pub fn halve(&self) -> RiemannMatrix {
        let half = BigComplex::with_val(self.prec, (0.5, 0.0));
        RiemannMatrix {
            tau: self.tau.scale(&half, self.prec),
            prec: self.prec,
        }
    }

    pub fn double(&self) -> RiemannMatrix {
        let two = BigComplex::with_val(self.prec, (2.0, 0.0));
        RiemannMatrix {
            tau: self.tau.scale(&two, self.prec),
            prec: self.prec,
        }
    }
}

/// A principally polarized lattice: 6 generators in ℂ³ (columns) plus an
/// integer alternating Gram matrix of determinant 1.
#[derive(Debug, Clone)]
pub struct PolarizedLattice {
    /// 3×6 complex matrix; column j is the j-th lattice generator.
    pub gens: CMatrix,
    /// 6×6 integer alternating form E(bᵢ, bⱼ).
    pub gram: Vec<Vec<BigInt>>,
    pub prec: u32,
}

impl PolarizedLattice {
    pub fn new(gens: CMatrix, gram: Vec<Vec<BigInt>>, prec: u32) -> Result<Self, SiegelError> {
        if (gens.rows, gens.cols) != (3, 6) || gram.len() != 6 || gram.iter().any(|r| r.len() != 6) {
            return Err(SiegelError::BadInput("lattice needs 3×6 gens and 6×6 gram".into()));
        }
        for i in 0..6 {
            if gram[i][i] != 0 {
                return Err(SiegelError::BadInput("gram diagonal must vanish".into()));
            }
            for j in 0..6 {
                if gram[i][j] != BigInt::from(-gram[j][i].clone()) {
                    return Err(SiegelError::BadInput("gram must be antisymmetric".into()));
                }
            }
        }
        Ok(PolarizedLattice { gens, gram, prec })
    }
}

// ---------- JSON file formats ----------

#[derive(Serialize, Deserialize)]
pub struct RiemannMatrixFile {
    pub tau: Vec<Vec<ComplexRepr>>,
    pub prec_bits: u32,
}

pub fn riemann_to_json(rm: &RiemannMatrix) -> RiemannMatrixFile {
    let digits = mpnum::bits_to_digits(rm.prec) as usize + 10;
    RiemannMatrixFile {
        tau: (0..3)
            .map(|i| (0..3).map(|j| complex_to_repr(rm.entry(i, j), digits)).collect())
            .collect(),
        prec_bits: rm.prec,
    }
}

pub fn riemann_from_json(f: &RiemannMatrixFile) -> Result<RiemannMatrix, SiegelError> {
    if f.tau.len() != 3 || f.tau.iter().any(|r| r.len() != 3) {
        return Err(SiegelError::BadInput("tau must be 3×3".into()));
    }
    let prec = f.prec_bits;
    let mut m = CMatrix::zero(3, 3, prec);
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = complex_from_repr(&f.tau[i][j], prec)?;
        }
    }
    RiemannMatrix::new(m, prec)
}

#[derive(Serialize, Deserialize)]
pub struct PolarizedLatticeFile {
    /// 3 rows × 6 columns of complex entries.
    pub gens: Vec<Vec<ComplexRepr>>,
    pub gram: Vec<Vec<i64>>,
    pub prec_bits: u32,
}

pub fn lattice_from_json(f: &PolarizedLatticeFile) -> Result<PolarizedLattice, SiegelError> {
    if f.gens.len() != 3 || f.gens.iter().any(|r| r.len() != 6) {
        return Err(SiegelError::BadInput("gens must be 3×6".into()));
    }
    let prec = f.prec_bits;
    let mut gens = CMatrix::zero(3, 6, prec);
    for i in 0..3 {
        for j in 0..6 {
            gens[(i, j)] = complex_from_repr(&f.gens[i][j], prec)?;
        }
    }
    let gram = f
        .gram
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    PolarizedLattice::new(gens, gram, prec)
}

pub fn lattice_to_json(lat: &PolarizedLattice) -> PolarizedLatticeFile {
    let digits = mpnum::bits_to_digits(lat.prec) as usize + 10;
    PolarizedLatticeFile {
        gens: (0..3)
            .map(|i| (0..6).map(|j| complex_to_repr(&lat.gens[(i, j)], digits)).collect())
            .collect(),
        gram: lat
            .gram
            .iter()
            .map(|row| row.iter().map(|v| v.to_i64().expect("gram entry fits i64")).collect())
            .collect(),
        prec_bits: lat.prec,
    }
}
