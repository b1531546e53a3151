//! Quasi-linear evaluation of all 64 Thetanullwerte: Newton's method on 𝔉
//! with precision doubling, seeded by the naive algorithm at 450 digits.
//!
//! Newton runs at h = τ/2, whose fundamental-theta quotients are the seven
//! unknowns; the final τ-duplication then lands exactly on τ. The Minkowski
//! certificate is scale-invariant, so h is reduced whenever τ is.

use crate::borchardt::{borchardt_mean, BorchardtMode};
use crate::duplication::{duplication_all_squares, resolve_square_roots};
use crate::feval::{f_eval, f_target};
use crate::naive::{check_reduced, fundamental_unchecked};
use crate::{Result, ThetaError, ThetaVector};
use mpnum::{cabs, complex_sqrt, digits_to_bits, two_pow, BigComplex, BigFloat};
use rayon::prelude::*;
use siegel::RiemannMatrix;

const HINT_BITS: u32 = 213;

/// All 64 values ϑ_i(0,τ) within 2^(−P_bits), for siegel-reduced τ.
pub fn theta_fast(tau: &RiemannMatrix, p_bits: u32) -> Result<ThetaVector> {
    check_reduced(tau)?;
    let p0 = digits_to_bits(450);
    let p_final = (p_bits + 40).max(p0);
    let h = tau.halve();

    // Seed: naive fundamental quotients at h, 450 digits.
    let h0 = h.at_prec(p0 + 64);
    let fund = fundamental_unchecked(h0.tau(), p0 + 32);
    let inv0sq = {
        let sq = BigComplex::with_val(p0 + 48, fund[0].square_ref());
        BigComplex::with_val(p0 + 48, sq.recip_ref())
    };
    let mut q: [BigComplex; 7] = std::array::from_fn(|k| {
        let sq = BigComplex::with_val(p0 + 48, fund[k + 1].square_ref());
        BigComplex::with_val(p0 + 48, sq * &inv0sq)
    });

    // Precision-doubling Newton levels; one update per level, then polish.
    let cap = 8 + (p_final / p0).next_power_of_two().trailing_zeros();
    let mut iters = 0u32;
    let mut level = p0;
    loop {
        level = (2 * level).min(p_final);
        let wp = level + 48;
        q = std::array::from_fn(|k| BigComplex::with_val(wp, &q[k]));
        let y = f_target(&h.at_prec(wp), wp);
        newton_update(&mut q, &y, &h, level)?;
        iters += 1;
        if iters > cap {
            return Err(ThetaError::NoConvergence);
        }
        if level >= p_final {
            let f = f_eval(&q, &h, level)?;
            let resid = (0..7)
                .map(|k| cabs(&BigComplex::with_val(64, &f[k] - &y[k]), 64))
                .fold(BigFloat::with_val(64, 0), |m, d| m.max(&d));
            if resid <= two_pow(-(p_bits as i32) - 16) {
                break;
            }
        }
    }

    // Assembly: ϑ₀(0,h)² from the homogeneity relation, fundamentals at h,
    // duplication to τ, and sign resolution of the 64 square roots.
    let wp = p_final + 32;
    let tuple0: [BigComplex; 8] = std::array::from_fn(|k| {
        if k == 0 {
            BigComplex::with_val(wp, (1, 0))
        } else {
            BigComplex::with_val(wp, &q[k - 1])
        }
    });
    let t0 = borchardt_mean(&tuple0, BorchardtMode::SignTracked { tau_hint: &h }, p_final)?;
    let th0sq = BigComplex::with_val(wp, t0.recip_ref());
    let hints = fundamental_unchecked(h.at_prec(HINT_BITS + 32).tau(), HINT_BITS);
    let fund_h: [BigComplex; 8] = std::array::from_fn(|k| {
        let sq = if k == 0 {
            th0sq.clone()
        } else {
            BigComplex::with_val(wp, &q[k - 1] * &th0sq)
        };
        let w = complex_sqrt(&sq, wp);
        let d_plus = cabs(&BigComplex::with_val(64, &w - &hints[k]), 64);
        let d_minus = cabs(&BigComplex::with_val(64, &w + &hints[k]), 64);
        if d_plus <= d_minus {
            w
        } else {
            -w
        }
    });
    let squares_tau = duplication_all_squares(&fund_h);
    let mut tv = resolve_square_roots(&squares_tau, tau, HINT_BITS)?;
    tv.prec = p_bits;
    Ok(tv)
}

/// One Newton update of q at the given level precision: central-difference
/// Jacobian over the 14 real coordinates, step 2^(−level/2).
fn newton_update(
    q: &mut [BigComplex; 7],
    y: &[BigComplex; 7],
    h: &RiemannMatrix,
    level: u32,
) -> Result<()> {
    let wp = level + 48;
    let delta = two_pow(-((level / 2) as i32));
    let f0 = f_eval(q, h, level)?;

    // Columns of the realified Jacobian: direction d = 2j (+δ on Re q_j) or
    // d = 2j+1 (+δ on Im q_j).
    let cols: Vec<[BigComplex; 7]> = (0..14usize)
        .into_par_iter()
        .map(|d| -> Result<[BigComplex; 7]> {
            let j = d / 2;
            let bump = |sign: i32| -> [BigComplex; 7] {
                let mut qq: [BigComplex; 7] = std::array::from_fn(|k| BigComplex::with_val(wp, &q[k]));
                let step = BigFloat::with_val(wp, &delta * sign);
                if d % 2 == 0 {
                    *qq[j].mut_real() += &step;
                } else {
                    *qq[j].mut_imag() += &step;
                }
                qq
            };
            let fp = f_eval(&bump(1), h, level)?;
            let fm = f_eval(&bump(-1), h, level)?;
            let two_delta = BigFloat::with_val(wp, &delta * 2u32);
            Ok(std::array::from_fn(|k| {
                let diff = BigComplex::with_val(wp, &fp[k] - &fm[k]);
                diff / &two_delta
            }))
        })
        .collect::<Result<Vec<_>>>()?;

    // Realify: row 2k = Re F_k, row 2k+1 = Im F_k.
    let mut jac = vec![vec![BigFloat::with_val(wp, 0); 14]; 14];
    for (d, col) in cols.iter().enumerate() {
        for k in 0..7 {
            jac[2 * k][d] = BigFloat::with_val(wp, col[k].real());
            jac[2 * k + 1][d] = BigFloat::with_val(wp, col[k].imag());
        }
    }
    let mut rhs = vec![BigFloat::with_val(wp, 0); 14];
    for k in 0..7 {
        let r = BigComplex::with_val(wp, &f0[k] - &y[k]);
        rhs[2 * k] = BigFloat::with_val(wp, r.real());
        rhs[2 * k + 1] = BigFloat::with_val(wp, r.imag());
    }
    let x = lu_solve(jac, rhs, wp)?;
    for j in 0..7 {
        *q[j].mut_real() -= &x[2 * j];
        *q[j].mut_imag() -= &x[2 * j + 1];
    }
    Ok(())
}

/// Solve a dense real system by LU with partial pivoting.
fn lu_solve(mut a: Vec<Vec<BigFloat>>, mut b: Vec<BigFloat>, wp: u32) -> Result<Vec<BigFloat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                let ai = BigFloat::with_val(64, a[i][col].abs_ref());
                let aj = BigFloat::with_val(64, a[j][col].abs_ref());
                ai.partial_cmp(&aj).expect("finite pivots")
            })
            .expect("nonempty range");
        if a[piv][col].is_zero() {
            return Err(ThetaError::NoConvergence);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = BigFloat::with_val(wp, &a[row][col] / &a[col][col]);
            for k in col..n {
                let t = BigFloat::with_val(wp, &factor * &a[col][k]);
                a[row][k] -= t;
            }
            let t = BigFloat::with_val(wp, &factor * &b[col]);
            b[row] -= t;
        }
    }
    let mut x = vec![BigFloat::with_val(wp, 0); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            let t = BigFloat::with_val(wp, &a[row][k] * &x[k]);
            acc -= t;
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}
