//! The τ-duplication formula and square-root sign resolution.

use crate::naive::theta_naive_all;
use crate::{Result, ThetaError, ThetaVector};
use mpnum::{cabs, complex_sqrt, two_pow, BigComplex, BigFloat};
use siegel::RiemannMatrix;

/// All 64 squared Thetanullwerte at 2τ from the 8 fundamental values at τ:
///
///   ϑ_{[a;b]}(0,2τ)² = (1/8) Σ_β (−1)^{4a·β} ϑ_{[0;b+β]}(0,τ) ϑ_{[0;β]}(0,τ)
///
/// where β runs over the 8 half-characteristics and b+β is taken mod 1
/// (index xor). The phase e^{−4iπ·ᵗaβ} is the sign (−1)^{popcount(A∧β)}.
pub fn duplication_all_squares(fund: &[BigComplex; 8]) -> [BigComplex; 64] {
    let wp = fund[0].prec().0;
    // prods[x][y] = ϑ_{[0;x]}·ϑ_{[0;y]} for x ≤ y.
    let mut prods: Vec<Vec<BigComplex>> = vec![Vec::new(); 8];
    for x in 0..8usize {
        for y in x..8usize {
            prods[x].push(BigComplex::with_val(wp, &fund[x] * &fund[y]));
        }
    }
    let prod = |x: usize, y: usize| -> &BigComplex {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        &prods[lo][hi - lo]
    };
    std::array::from_fn(|i| {
        let ah = i >> 3;
        let bb = i & 7;
        let mut acc = BigComplex::with_val(wp, (0, 0));
        for beta in 0..8usize {
            let term = prod(bb ^ beta, beta);
            if ((ah & beta).count_ones()) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc / 8u32
    })
}

/// Recover the 64 theta values from their squares, deciding each sign by a
/// low-precision naive evaluation at `tau`.
///
/// Entries whose root and hint both sit below the hint noise floor are the
/// vanishing odd characteristics and come back as exact zeros.
pub fn resolve_square_roots(
    squares: &[BigComplex; 64],
    tau: &RiemannMatrix,
    hint_prec: u32,
) -> Result<ThetaVector> {
    let wp = squares[0].prec().0;
    let hints = theta_naive_all(&tau.at_prec(hint_prec + 32), hint_prec)?;
    let mag = |z: &BigComplex| cabs(z, 64);
    let noise_floor = two_pow(-((hint_prec / 2) as i32));
    let mut values = Vec::with_capacity(64);
    for i in 0..64 {
        let w = complex_sqrt(&squares[i], wp);
        let h = &hints[i];
        if mag(&w) < noise_floor && mag(h) < noise_floor {
            values.push(BigComplex::with_val(wp, (0, 0)));
            continue;
        }
        let d_plus = cabs(&BigComplex::with_val(64, &w - h), 64);
        let d_minus = cabs(&BigComplex::with_val(64, &w + h), 64);
        let hint_err = {
            let one = BigFloat::with_val(64, 1);
            let m = mag(h).max(&one);
            two_pow(-(hint_prec as i32) + 16) * m
        };
        let gap = BigFloat::with_val(64, &d_plus - &d_minus).abs();
        if gap < hint_err {
            return Err(ThetaError::AmbiguousSign);
        }
        values.push(if d_plus < d_minus { w } else { -w });
    }
    Ok(ThetaVector::new(values, tau.clone(), wp))
}
