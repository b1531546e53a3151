//! Precision-explicit arbitrary-precision scalars, small dense complex
//! matrices, and polynomial root finding (degree ≤ 6).
//!
//! Backed by GMP/MPFR/MPC via `rug`. Every operation that rounds takes its
//! output precision from an explicit argument or from its destination value;
//! there is no global precision state.

pub mod matrix;
pub mod roots;
pub mod serialize;

pub use matrix::{mat3_inverse, CMatrix};
pub use roots::poly_roots;
pub use rug;
pub use rug::{Complex as BigComplex, Float as BigFloat, Integer as BigInt, Rational as BigRational};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MpError {
    #[error("matrix is numerically singular (|det| below 2^(-prec/2) threshold)")]
    SingularMatrix,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("invalid input: {0}")]
    BadInput(String),
}

/// Bits needed to represent `digits` decimal digits, no safety margin.
pub fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) = 3.3219280948873623...
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32
}

pub fn bits_to_digits(bits: u32) -> u32 {
    ((bits as f64) / std::f64::consts::LOG2_10).floor() as u32
}

/// 2^e as a BigFloat (exact).
pub fn two_pow(e: i32) -> BigFloat {
    BigFloat::with_val(32, BigFloat::i_exp(1, e))
}

pub fn pi(prec: u32) -> BigFloat {
    BigFloat::with_val(prec, rug::float::Constant::Pi)
}

/// Complex value from f64 parts.
pub fn cplx(prec: u32, re: f64, im: f64) -> BigComplex {
    BigComplex::with_val(prec, (re, im))
}

/// Complex zero-argument constructor at precision.
pub fn czero(prec: u32) -> BigComplex {
    BigComplex::with_val(prec, (0, 0))
}

pub fn rat_to_float(q: &BigRational, prec: u32) -> BigFloat {
    BigFloat::with_val(prec, q)
}

/// Principal square root: Re(w) ≥ 0, and Im(w) ≥ 0 when Re(w) = 0.
/// Satisfies w² = z to relative error 2^(5−prec).
pub fn complex_sqrt(z: &BigComplex, prec: u32) -> BigComplex {
    let mut w = BigComplex::with_val(prec, z.sqrt_ref());
    // MPC already returns the principal branch; the tie on the branch cut
    // (pure imaginary result) can come out as -i·t from a signed zero.
    if w.real().is_zero() && w.imag().is_sign_negative() {
        w = -w;
    }
    if w.real().is_sign_negative() && w.real().is_zero() {
        // normalize -0.0 real part
        let (_, im) = w.into_real_imag();
        w = BigComplex::with_val(prec, (BigFloat::with_val(prec, 0), im));
    }
    w
}

/// |z| at explicit precision.
pub fn cabs(z: &BigComplex, prec: u32) -> BigFloat {
    BigFloat::with_val(prec, z.abs_ref())
}

/// Round a real to the nearest integer (ties away from zero, MPFR default).
pub fn round_to_int(x: &BigFloat) -> BigInt {
    x.to_integer_round(rug::float::Round::Nearest)
        .map(|(i, _)| i)
        .expect("finite float expected")
}
