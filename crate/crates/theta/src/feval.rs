//! The ℂ⁷ → ℂ⁷ function 𝔉 inverted by Newton's method in `theta_fast`.
//!
//! Fed the true quotients ϑ_{1..7}(0,τ)²/ϑ₀(0,τ)², the steps below produce
//! (−iτ₁₁, −iτ₂₂, −iτ₃₃, τ₁₂²−τ₁₁τ₂₂, τ₁₃²−τ₁₁τ₃₃, τ₂₃²−τ₂₂τ₃₃, −i·det τ):
//! each r_k is a Borchardt mean of one symplectic permutation of the squared
//! Thetanullwerte at 2τ, hence equals the reciprocal of the corresponding
//! automorphy factor at 2τ; the final scalings convert those factors from 2τ
//! back to τ.

use crate::borchardt::{borchardt_mean, BorchardtMode};
use crate::duplication::duplication_all_squares;
use crate::naive::fundamental_unchecked;
use crate::Result;
use mpnum::{cabs, complex_sqrt, BigComplex};
use rayon::prelude::*;
use siegel::RiemannMatrix;

/// Index tuples fed to the seven Borchardt means (steps v–xi).
pub const F_INDEX_LISTS: [[usize; 8]; 7] = [
    [32, 33, 34, 35, 0, 1, 2, 3],
    [16, 17, 0, 1, 20, 21, 4, 5],
    [8, 0, 10, 2, 12, 4, 14, 6],
    [0, 1, 32, 33, 16, 17, 48, 49],
    [0, 32, 2, 34, 8, 40, 10, 42],
    [0, 16, 8, 24, 4, 20, 12, 28],
    [0, 8, 16, 24, 32, 40, 48, 56],
];

const F_DIVISORS: [u32; 7] = [2, 2, 2, 4, 4, 4, 8];

const HINT_BITS: u32 = 213;

/// Evaluate 𝔉 at the 7 quotients `q` (≈ ϑ_{1..7}²/ϑ₀² at some reduced τ near
/// `tau_hint`), to P_bits.
pub fn f_eval(q: &[BigComplex; 7], tau_hint: &RiemannMatrix, p_bits: u32) -> Result<[BigComplex; 7]> {
    let wp = p_bits + 64;
    // (i) t₀ = ℬ₃(1, q₁..₇), root signs tracked along the hint trajectory.
    let tuple0: [BigComplex; 8] = std::array::from_fn(|k| {
        if k == 0 {
            BigComplex::with_val(wp, (1, 0))
        } else {
            BigComplex::with_val(wp, &q[k - 1])
        }
    });
    let t0 = borchardt_mean(&tuple0, BorchardtMode::SignTracked { tau_hint }, p_bits + 32)?;
    // (ii) t_i = q_i/t₀; at the true quotients t₀ = 1/ϑ₀², so t_i = ϑ_i².
    let inv0 = BigComplex::with_val(wp, t0.recip_ref());
    let t: [BigComplex; 8] = std::array::from_fn(|k| {
        if k == 0 {
            inv0.clone()
        } else {
            BigComplex::with_val(wp, &q[k - 1] * &inv0)
        }
    });
    // (iii) t_i ← √t_i, choosing the root that matches ϑ_i(0,τ_hint).
    let hints = fundamental_unchecked(tau_hint.at_prec(HINT_BITS + 32).tau(), HINT_BITS);
    let roots: [BigComplex; 8] = std::array::from_fn(|k| {
        let w = complex_sqrt(&t[k], wp);
        let d_plus = cabs(&BigComplex::with_val(64, &w - &hints[k]), 64);
        let d_minus = cabs(&BigComplex::with_val(64, &w + &hints[k]), 64);
        if d_plus <= d_minus {
            w
        } else {
            -w
        }
    });
    // (iv) τ-duplication: 64 values of ϑ_i(0,2τ)².
    let squares = duplication_all_squares(&roots);
    // (v)–(xi) seven Borchardt means of permuted square tuples. For reduced τ
    // all the tuples and their limits stay in Re > 0, so good choices are the
    // theta-trajectory choices.
    let means: Vec<BigComplex> = F_INDEX_LISTS
        .par_iter()
        .map(|list| {
            let tuple: [BigComplex; 8] =
                std::array::from_fn(|j| BigComplex::with_val(wp, &squares[list[j]]));
            borchardt_mean(&tuple, BorchardtMode::GoodChoice, p_bits + 32)
        })
        .collect::<Result<Vec<_>>>()?;
    // (xii) scaled reciprocals: r_k = 1/(automorphy factor at 2τ). With the
    // index lists as published the diagonal entries come out in reverse order
    // (r₁ ↦ −2iτ₃₃, …, r₃ ↦ −2iτ₁₁, likewise for the 2×2 minors) and
    // 1/r₇ = +8i·det τ, so the assembly below permutes (0↔2), (3↔5) and
    // negates the last component to land on the `f_target` ordering. Pinned
    // experimentally against exact theta quotients on two unrelated τ.
    const SHUFFLE: [usize; 7] = [2, 1, 0, 5, 4, 3, 6];
    let mut out: [BigComplex; 7] = std::array::from_fn(|_| BigComplex::with_val(wp, (0, 0)));
    for k in 0..7 {
        let r = BigComplex::with_val(wp, means[SHUFFLE[k]].recip_ref());
        out[k] = r / F_DIVISORS[k];
    }
    out[6] = -out[6].clone();
    Ok(out)
}

/// The value 𝔉 takes at the true quotients of τ:
/// (−iτ₁₁, −iτ₂₂, −iτ₃₃, τ₁₂²−τ₁₁τ₂₂, τ₁₃²−τ₁₁τ₃₃, τ₂₃²−τ₂₂τ₃₃, −i·det τ).
pub fn f_target(tau: &RiemannMatrix, prec: u32) -> [BigComplex; 7] {
    let m = tau.tau();
    let neg_i = BigComplex::with_val(prec, (0, -1));
    let ent = |i: usize, j: usize| BigComplex::with_val(prec, &m[(i, j)]);
    let minor = |i: usize, j: usize| -> BigComplex {
        let sq = BigComplex::with_val(prec, m[(i, j)].square_ref());
        let pr = BigComplex::with_val(prec, &m[(i, i)] * &m[(j, j)]);
        sq - pr
    };
    let det = {
        let c0 = BigComplex::with_val(prec, &m[(1, 1)] * &m[(2, 2)])
            - BigComplex::with_val(prec, &m[(1, 2)] * &m[(2, 1)]);
        let c1 = BigComplex::with_val(prec, &m[(1, 0)] * &m[(2, 2)])
            - BigComplex::with_val(prec, &m[(1, 2)] * &m[(2, 0)]);
        let c2 = BigComplex::with_val(prec, &m[(1, 0)] * &m[(2, 1)])
            - BigComplex::with_val(prec, &m[(1, 1)] * &m[(2, 0)]);
        BigComplex::with_val(prec, &m[(0, 0)] * &c0) - BigComplex::with_val(prec, &m[(0, 1)] * &c1)
            + BigComplex::with_val(prec, &m[(0, 2)] * &c2)
    };
    [
        BigComplex::with_val(prec, &neg_i * &ent(0, 0)),
        BigComplex::with_val(prec, &neg_i * &ent(1, 1)),
        BigComplex::with_val(prec, &neg_i * &ent(2, 2)),
        minor(0, 1),
        minor(0, 2),
        minor(1, 2),
        BigComplex::with_val(prec, &neg_i * &det),
    ]
}
