//! The genus-3 Borchardt mean.
//!
//! One step maps a tuple of eight "squares" through chosen square roots to
//! the next tuple; it is the a = 0 slice of the τ-duplication formula, e.g.
//! ϑ₁(0,2τ)² = (√ϑ₀²√ϑ₁² + √ϑ₂²√ϑ₃² + √ϑ₄²√ϑ₅² + √ϑ₆²√ϑ₇²)/4.
//! Iterating converges quadratically to a common limit once the square roots
//! are "good choices" (all in the right half-plane).

use crate::naive::fundamental_unchecked;
use crate::{Result, ThetaError};
use mpnum::{cabs, complex_sqrt, two_pow, BigComplex, BigFloat};
use siegel::RiemannMatrix;

/// How square roots are chosen inside `borchardt_mean`.
pub enum BorchardtMode<'a> {
    /// Principal square roots (Re ≥ 0) at every step.
    GoodChoice,
    /// Square roots matched to low-precision theta values along the
    /// 2^k·τ duplication trajectory. Assumes the input tuple is
    /// ϑ_{0..7}(0,τ)²/λ for τ near `tau_hint` (any fixed scale λ; only
    /// relative signs matter). Switches permanently to good choices once the
    /// iterates lie in Re > 0 for two consecutive steps.
    SignTracked { tau_hint: &'a RiemannMatrix },
}

/// One Borchardt step: output_b = (1/8)·Σ_β roots[b⊕β]·roots[β].
/// Precondition: roots[k]² = t[k]; the output depends on the roots alone,
/// `t` is accepted to make call sites state the pair explicitly.
pub fn borchardt_step(t: &[BigComplex; 8], roots: &[BigComplex; 8], prec: u32) -> [BigComplex; 8] {
    debug_assert!((0..8).all(|k| {
        let sq = BigComplex::with_val(prec, roots[k].square_ref());
        let diff = cabs(&BigComplex::with_val(prec, &sq - &t[k]), 64);
        let scale = cabs(&t[k], 64) + BigFloat::with_val(64, 1);
        diff <= two_pow(-(prec as i32) + 16) * scale
    }));
    let mut prods: Vec<Vec<BigComplex>> = vec![Vec::new(); 8];
    for x in 0..8usize {
        for y in x..8usize {
            prods[x].push(BigComplex::with_val(prec, &roots[x] * &roots[y]));
        }
    }
    let prod = |x: usize, y: usize| -> &BigComplex {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        &prods[lo][hi - lo]
    };
    std::array::from_fn(|b| {
        let mut acc = BigComplex::with_val(prec, (0, 0));
        for beta in 0..8usize {
            acc += prod(b ^ beta, beta);
        }
        acc / 8u32
    })
}

const HINT_BITS: u32 = 213; // 64 decimal digits

/// Iterate Borchardt steps until the eight entries agree, then return the
/// common limit, accurate to 2^(−P_bits)·max(1,|limit|).
pub fn borchardt_mean(t: &[BigComplex; 8], mode: BorchardtMode, p_bits: u32) -> Result<BigComplex> {
    let wp = p_bits + 48;
    let mut cur: [BigComplex; 8] = std::array::from_fn(|k| BigComplex::with_val(wp, &t[k]));
    let mut switched = matches!(mode, BorchardtMode::GoodChoice);
    // Hint state: fundamental thetas at 2^k·τ_hint, all divided by
    // ϑ₀(0,τ_hint) (the constant scale cancels in every product of two
    // roots, so only its sign convention matters, and not even that).
    let mut hint_state = match &mode {
        BorchardtMode::GoodChoice => None,
        BorchardtMode::SignTracked { tau_hint } => {
            let m = tau_hint.at_prec(HINT_BITS + 32);
            let f = fundamental_unchecked(m.tau(), HINT_BITS);
            let inv0 = BigComplex::with_val(HINT_BITS, f[0].recip_ref());
            let hints: [BigComplex; 8] =
                std::array::from_fn(|k| BigComplex::with_val(HINT_BITS, &f[k] * &inv0));
            Some((m.tau().clone(), inv0, hints))
        }
    };
    let tol = {
        let one = BigFloat::with_val(64, 1);
        let scale = cabs(&cur[0], 64).max(&one);
        two_pow(-(p_bits as i32) - 8) * scale
    };
    let cap = 64 + 2 * (32 - p_bits.leading_zeros());
    let mut consecutive_pos = 0u32;
    for _ in 0..cap {
        let maxdiff = (1..8)
            .map(|b| cabs(&BigComplex::with_val(64, &cur[b] - &cur[0]), 64))
            .fold(BigFloat::with_val(64, 0), |m, d| m.max(&d));
        if maxdiff <= tol {
            return Ok(cur[0].clone());
        }
        let roots: [BigComplex; 8] = std::array::from_fn(|b| {
            let w = complex_sqrt(&cur[b], wp);
            if switched {
                return w;
            }
            let (_, _, hints) = hint_state.as_ref().expect("hints exist until switched");
            let d_plus = cabs(&BigComplex::with_val(64, &w - &hints[b]), 64);
            let d_minus = cabs(&BigComplex::with_val(64, &w + &hints[b]), 64);
            if d_plus <= d_minus {
                w
            } else {
                -w
            }
        });
        cur = borchardt_step(&cur.clone(), &roots, wp);
        if !switched {
            if cur.iter().all(|z| z.real().is_sign_positive() && !z.real().is_zero()) {
                consecutive_pos += 1;
            } else {
                consecutive_pos = 0;
            }
            if consecutive_pos >= 2 {
                switched = true;
                hint_state = None;
            } else if let Some((tau_k, inv0, _)) = hint_state.take() {
                // Advance the hint trajectory to 2^{k+1}·τ, keeping the
                // constant 1/ϑ₀(0,τ) scale from level 0.
                let two = BigComplex::with_val(HINT_BITS + 32, 2);
                let doubled = tau_k.scale(&two, HINT_BITS + 32);
                let f = fundamental_unchecked(&doubled, HINT_BITS);
                let hints: [BigComplex; 8] =
                    std::array::from_fn(|k| BigComplex::with_val(HINT_BITS, &f[k] * &inv0));
                hint_state = Some((doubled, inv0, hints));
            }
        }
    }
    Err(ThetaError::NoConvergence)
}
