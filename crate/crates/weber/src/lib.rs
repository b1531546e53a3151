//! From Thetanullwerte to a plane quartic over ℂ: Weber moduli, the Aronhold
//! linear system, and the Riemann model, plus a numeric bitangency check.

pub mod bitangent;
pub mod reconstruct;

pub use bitangent::bitangency_defect;
pub use reconstruct::reconstruct_quartic;

use mpnum::matrix::CMatrix;
use mpnum::{cabs, two_pow, BigComplex, MpError};
use theta::ThetaVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeberError {
    #[error("a required theta constant vanishes (no smooth plane quartic model)")]
    DegenerateThetas,
    #[error("the Aronhold linear system is singular")]
    SingularSystem,
    #[error(transparent)]
    Numeric(#[from] MpError),
}

pub type Result<T> = std::result::Result<T, WeberError>;

/// The nine Weber moduli aᵢⱼ; row i is the coordinate index, column j the
/// Aronhold line index, so line ℓⱼ is a₁ⱼx₁ + a₂ⱼx₂ + a₃ⱼx₃ = 0.
#[derive(Debug, Clone)]
pub struct WeberModuli {
    pub a: CMatrix,
    pub prec: u32,
}

/// A ternary quartic over ℂ: 15 coefficients in the fixed degree-lexicographic
/// monomial order x⁴, x³y, x³z, x²y², x²yz, x²z², xy³, xy²z, xyz², xz³, y⁴,
/// y³z, y²z², yz³, z⁴.
#[derive(Debug, Clone)]
pub struct ComplexQuartic {
    pub coeffs: [BigComplex; 15],
    pub prec: u32,
}

/// Exponent triples of the 15 quartic monomials, in coefficient order.
pub const QUARTIC_MONOMIALS: [[u8; 3]; 15] = [
    [4, 0, 0],
    [3, 1, 0],
    [3, 0, 1],
    [2, 2, 0],
    [2, 1, 1],
    [2, 0, 2],
    [1, 3, 0],
    [1, 2, 1],
    [1, 1, 2],
    [1, 0, 3],
    [0, 4, 0],
    [0, 3, 1],
    [0, 2, 2],
    [0, 1, 3],
    [0, 0, 4],
];

/// Position of x^ex·y^ey·z^ez in the coefficient vector.
pub fn monomial_index(ex: u8, ey: u8, ez: u8) -> usize {
    QUARTIC_MONOMIALS
        .iter()
        .position(|m| *m == [ex, ey, ez])
        .expect("exponents sum to 4")
}

/// (numerator, numerator, denominator, denominator, phase) per modulus, in
/// the published line-major layout: TABLE[j][k] is coordinate k+1 of line
/// ℓ_{j+1}; phase 0 = +1, 1 = i, 2 = −1. Which axis of the published grid
/// enumerates the lines is pinned experimentally: with this orientation all
/// seven Aronhold lines of the reconstruction are bitangent to roundoff,
/// with the other one they are not.
const MODULI_TABLE: [[(usize, usize, usize, usize, u8); 3]; 3] = [
    [(33, 5, 40, 12, 1), (21, 49, 28, 56, 1), (7, 35, 14, 42, 1)],
    [(5, 54, 27, 40, 1), (49, 2, 47, 28, 1), (35, 16, 61, 14, 1)],
    [(54, 33, 12, 27, 2), (2, 21, 56, 47, 0), (16, 7, 42, 61, 0)],
];

/// The 18 distinct theta indices the moduli depend on.
pub const MODULI_THETA_INDICES: [usize; 18] = [
    2, 5, 7, 12, 14, 16, 21, 27, 28, 33, 35, 40, 42, 47, 49, 54, 56, 61,
];

/// Compute the Weber moduli from a full theta vector.
///
/// Any required theta below the zero threshold 2^(−prec/2) means the period
/// matrix does not belong to a smooth plane quartic (hyperelliptic or
/// decomposable), reported as `DegenerateThetas`.
pub fn weber_moduli(theta: &ThetaVector) -> Result<WeberModuli> {
    let prec = theta.prec;
    let wp = prec + 32;
    let floor = two_pow(-((prec / 2) as i32));
    for &idx in MODULI_THETA_INDICES.iter() {
        if cabs(theta.value(idx), wp) < floor {
            return Err(WeberError::DegenerateThetas);
        }
    }
    let mut a = CMatrix::zero(3, 3, wp);
    for i in 0..3 {
        for j in 0..3 {
            // The table is line-major, the matrix coordinate-major: a_ij is
            // coordinate i of line j, so read the transposed table slot.
            let (n1, n2, d1, d2, phase) = MODULI_TABLE[j][i];
            let num = BigComplex::with_val(wp, theta.value(n1) * theta.value(n2));
            let den = BigComplex::with_val(wp, theta.value(d1) * theta.value(d2));
            let mut q = BigComplex::with_val(wp, num / den);
            match phase {
                0 => {}
                1 => q = BigComplex::with_val(wp, &q * &BigComplex::with_val(wp, (0, 1))),
                _ => q = -q,
            }
            a[(i, j)] = q;
        }
    }
    Ok(WeberModuli { a, prec })
}
