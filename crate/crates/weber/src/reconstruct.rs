//! Riemann model of the quartic from an Aronhold system: solve the linear
//! system for u₁, u₂, u₃ and expand (x₁u₁ + x₂u₂ − x₃u₃)² − 4x₁u₁x₂u₂.

use crate::{monomial_index, ComplexQuartic, Result, WeberError, WeberModuli};
use mpnum::matrix::{mat3_inverse, CMatrix};
use mpnum::{cabs, two_pow, BigComplex, BigFloat};

/// Exponent triples of the 6 quadratic monomials x², xy, xz, y², yz, z².
const QUAD_MONOMIALS: [[u8; 3]; 6] = [
    [2, 0, 0],
    [1, 1, 0],
    [1, 0, 1],
    [0, 2, 0],
    [0, 1, 1],
    [0, 0, 2],
];

fn czero(prec: u32) -> BigComplex {
    BigComplex::with_val(prec, (0, 0))
}

/// Product of two linear forms (coefficients on x, y, z).
fn lin_mul(a: &[BigComplex; 3], b: &[BigComplex; 3], wp: u32) -> [BigComplex; 6] {
    let mut q: [BigComplex; 6] = std::array::from_fn(|_| czero(wp));
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u8; 3];
            e[i] += 1;
            e[j] += 1;
            let pos = QUAD_MONOMIALS.iter().position(|m| *m == e).unwrap();
            q[pos] += &a[i] * &b[j];
        }
    }
    q
}

/// Product of two quadratic forms, as a quartic coefficient vector.
fn quad_mul(a: &[BigComplex; 6], b: &[BigComplex; 6], wp: u32) -> [BigComplex; 15] {
    let mut out: [BigComplex; 15] = std::array::from_fn(|_| czero(wp));
    for i in 0..6 {
        for j in 0..6 {
            let e = [
                QUAD_MONOMIALS[i][0] + QUAD_MONOMIALS[j][0],
                QUAD_MONOMIALS[i][1] + QUAD_MONOMIALS[j][1],
                QUAD_MONOMIALS[i][2] + QUAD_MONOMIALS[j][2],
            ];
            out[monomial_index(e[0], e[1], e[2])] += &a[i] * &b[j];
        }
    }
    out
}

/// Reconstruct the quartic from Weber moduli.
///
/// The normalization constants of the general Aronhold reconstruction are 1
/// for moduli in the convention of `weber_moduli`, so the curve is directly
/// (x₁u₁ + x₂u₂ − x₃u₃)² − 4x₁u₁x₂u₂ with [u₁ u₂ u₃]ᵗ = M₁⁻¹M₂ [x₁ x₂ x₃]ᵗ.
/// Rows 2–3 of M₂ are the coefficient vectors of ℓ₁ and ℓ₂ (columns 1–2 of
/// the moduli matrix), and M₁ is the entrywise reciprocal of M₂ on those
/// two rows.
pub fn reconstruct_quartic(moduli: &WeberModuli) -> Result<ComplexQuartic> {
    let wp = moduli.prec + 32;
    let floor = two_pow(-((moduli.prec / 2) as i32));
    // Every coordinate of ℓ₁ and ℓ₂ gets inverted entrywise in M₁; guard
    // against zeros.
    for line in 0..2 {
        for coord in 0..3 {
            if cabs(&moduli.a[(coord, line)], wp) < floor {
                return Err(WeberError::SingularSystem);
            }
        }
    }
    let one = BigComplex::with_val(wp, (1, 0));
    let m2 = CMatrix::from_fn(3, 3, |i, j| {
        if i == 0 {
            one.clone()
        } else {
            BigComplex::with_val(wp, &moduli.a[(j, i - 1)])
        }
    });
    let m1 = CMatrix::from_fn(3, 3, |i, j| {
        if i == 0 {
            one.clone()
        } else {
            BigComplex::with_val(wp, moduli.a[(j, i - 1)].recip_ref())
        }
    });
    let m1_inv = mat3_inverse(&m1, wp).map_err(|_| WeberError::SingularSystem)?;
    mat3_inverse(&m2, wp).map_err(|_| WeberError::SingularSystem)?;
    let u = m1_inv.mul(&m2, wp);

    let basis = |k: usize| -> [BigComplex; 3] {
        std::array::from_fn(|i| {
            if i == k {
                BigComplex::with_val(wp, (1, 0))
            } else {
                czero(wp)
            }
        })
    };
    let u_row = |i: usize| -> [BigComplex; 3] {
        std::array::from_fn(|j| BigComplex::with_val(wp, &u[(i, j)]))
    };
    // The three quadratics x₁u₁, x₂u₂, x₃u₃.
    let xu: [[BigComplex; 6]; 3] = std::array::from_fn(|i| lin_mul(&basis(i), &u_row(i), wp));
    let mut s: [BigComplex; 6] = std::array::from_fn(|k| BigComplex::with_val(wp, &xu[0][k]));
    for k in 0..6 {
        s[k] += &xu[1][k];
        s[k] -= &xu[2][k];
    }
    let sq = quad_mul(&s, &s, wp);
    let cross = quad_mul(&xu[0], &xu[1], wp);
    let coeffs: [BigComplex; 15] = std::array::from_fn(|k| {
        let mut c = BigComplex::with_val(wp, &sq[k]);
        c -= BigComplex::with_val(wp, 4u32 * &cross[k]);
        c
    });
    let size = coeffs
        .iter()
        .map(|c| cabs(c, wp))
        .fold(BigFloat::with_val(wp, 0), |m, v| m.max(&v));
    if size < floor {
        return Err(WeberError::SingularSystem);
    }
    Ok(ComplexQuartic { coeffs, prec: moduli.prec })
}
