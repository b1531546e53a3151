//! Certified naive evaluation of Thetanullwerte by truncated lattice sums.
//!
//! The truncated sum S_B runs over (m,n,p) ∈ [-B,B]³. Every term is produced
//! from its neighbour by a multiplicative recurrence in the six quantities
//! q_jk = e^{iπτ_jk}, so no exponential is evaluated inside the triple loop.
//! Terms are accumulated into eight buckets indexed by (m,n,p) mod 2; the
//! eight fundamental values (and, for the shifted classes, all 64) are then
//! signed combinations of the buckets.

use crate::{Result, ThetaError};
use mpnum::matrix::CMatrix;
use mpnum::{pi, rug, two_pow, BigComplex, BigFloat};
use rayon::prelude::*;
use siegel::{is_minkowski_reduced, FMat3, RiemannMatrix};

/// c = max(c₁, Y₁₁/100) where
/// c₁ = min(Y₁₁−Y₁₂−|Y₁₃|, Y₂₂−Y₂₁−Y₂₃, Y₃₃−Y₃₂−|Y₃₁|).
/// Valid as a sum-truncation constant only for Minkowski-reduced Y, where it
/// satisfies ᵗnYn ≥ c·ᵗnn for all real n, and c ≥ Y₁₁/100 ≥ 0.0085.
pub fn theta_c_constant(y: &FMat3, prec: u32) -> BigFloat {
    let e = &y.e;
    let m1 = BigFloat::with_val(prec, &e[0][0] - &e[0][1]) - BigFloat::with_val(prec, e[0][2].abs_ref());
    let m2 = BigFloat::with_val(prec, &e[1][1] - &e[1][0]) - &e[1][2];
    let m3 = BigFloat::with_val(prec, &e[2][2] - &e[2][1]) - BigFloat::with_val(prec, e[2][0].abs_ref());
    let c1 = m1.min(&m2).min(&m3);
    let floor = BigFloat::with_val(prec, &e[0][0] / 100u32);
    c1.max(&floor)
}

/// Truncation bound B = ⌈√((P·ln2 + 14.09)/(π·c))⌉ guaranteeing
/// |ϑ − S_B| ≤ exp(14.09 − πcB²) ≤ 2^(−P) over the box [-B,B]³.
pub fn truncation_bound(y: &FMat3, p_bits: u32) -> Result<u64> {
    if !is_minkowski_reduced(y, y.prec()) {
        return Err(ThetaError::NotReduced);
    }
    Ok(bound_unchecked(y, p_bits))
}

fn bound_unchecked(y: &FMat3, p_bits: u32) -> u64 {
    let prec = 96;
    let c = theta_c_constant(y, prec);
    let ln2 = BigFloat::with_val(prec, rug::float::Constant::Log2);
    let num = BigFloat::with_val(prec, &ln2 * p_bits) + BigFloat::with_val(prec, 14.09f64);
    let den = pi(prec) * &c;
    let b = (num / den).sqrt().ceil();
    b.to_integer().expect("finite bound").to_u64().expect("bound fits u64")
}

pub(crate) fn check_reduced(tau: &RiemannMatrix) -> Result<()> {
    let prec = tau.prec;
    if !is_minkowski_reduced(&tau.imag(), prec) {
        return Err(ThetaError::NotReduced);
    }
    // |Re τ_ij| ≤ 1/2, with slack for the rounding done by siegel_reduce.
    let re = tau.real();
    let lim = BigFloat::with_val(prec, 0.5f64) + two_pow(-20);
    for i in 0..3 {
        for j in 0..3 {
            if BigFloat::with_val(prec, re.e[i][j].abs_ref()) > lim {
                return Err(ThetaError::NotReduced);
            }
        }
    }
    Ok(())
}

/// ϑ_{[0;b]}(0,τ) for the eight fundamental characteristics b, each within
/// 2^(−P_bits) absolute. Requires Im τ Minkowski-reduced and |Re τ| ≤ 1/2.
pub fn theta_naive_fundamental(tau: &RiemannMatrix, p_bits: u32) -> Result<[BigComplex; 8]> {
    check_reduced(tau)?;
    Ok(fundamental_unchecked(tau.tau(), p_bits))
}

/// All 64 values ϑ_i(0,τ), each within 2^(−P_bits) absolute. Same engine run
/// once per a-class over the shifted lattice ℤ³ + a.
pub fn theta_naive_all(tau: &RiemannMatrix, p_bits: u32) -> Result<[BigComplex; 64]> {
    check_reduced(tau)?;
    Ok(all_unchecked(tau.tau(), p_bits))
}

/// Fundamental values without the reduction-certificate check; the truncation
/// constant c is still computed from Im τ, which the caller must know to be
/// Minkowski-reduced (the Re part is unconstrained: it only contributes
/// phases). Used internally on 2^k-scaled matrices, where the Minkowski
/// property is scale-invariant but Re may exceed 1/2.
pub(crate) fn fundamental_unchecked(tau: &CMatrix, p_bits: u32) -> [BigComplex; 8] {
    let y = imag_of(tau);
    let b = bound_unchecked(&y, p_bits + 8) as i64;
    let wp = p_bits + guard_bits(b);
    let sums = parity_sums(tau, [0, 0, 0], b, wp);
    std::array::from_fn(|bb| combine(&sums, bb, wp))
}

pub(crate) fn all_unchecked(tau: &CMatrix, p_bits: u32) -> [BigComplex; 64] {
    let y = imag_of(tau);
    let b = bound_unchecked(&y, p_bits + 8) as i64;
    let wp = p_bits + guard_bits(b + 1);
    let blocks: Vec<[BigComplex; 8]> = (0..8usize)
        .into_par_iter()
        .map(|ah| {
            let alpha = [(ah & 1) as u8, ((ah >> 1) & 1) as u8, ((ah >> 2) & 1) as u8];
            // +1 covers the half-unit shift of the lattice ℤ³ + a.
            let bg = if ah == 0 { b } else { b + 1 };
            let sums = parity_sums(tau, alpha, bg, wp);
            std::array::from_fn(|bb| {
                let v = combine(&sums, bb, wp);
                apply_quarter_phase(v, (ah & bb).count_ones() % 4)
            })
        })
        .collect();
    std::array::from_fn(|i| blocks[i >> 3][i & 7].clone())
}

fn imag_of(tau: &CMatrix) -> FMat3 {
    FMat3::from_fn(|i, j| BigFloat::with_val(tau.prec(), tau[(i, j)].imag()))
}

/// Extra working bits on top of the target: covers the ~(2B+2)³ rounding
/// accumulations and the O(B)-long multiplicative chains.
fn guard_bits(b: i64) -> u32 {
    let n = (2 * b + 3) as f64;
    3 * (n.log2().ceil() as u32) + 32
}

/// v · i^k for k ∈ 0..4, exactly.
fn apply_quarter_phase(v: BigComplex, k: u32) -> BigComplex {
    match k {
        0 => v,
        1 => {
            let (re, im) = v.into_real_imag();
            BigComplex::from((-im, re))
        }
        2 => -v,
        _ => {
            let (re, im) = v.into_real_imag();
            BigComplex::from((im, -re))
        }
    }
}

/// ϑ value for b-index `bb` from the eight parity sums: Σ_σ (−1)^{σ·b} s_σ.
fn combine(s: &[BigComplex; 8], bb: usize, wp: u32) -> BigComplex {
    let mut acc = BigComplex::with_val(wp, (0, 0));
    for (sigma, term) in s.iter().enumerate() {
        if ((sigma & bb).count_ones()) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Σ over k ∈ [-B,B]³ of e^{iπ(k+α/2)τᵗ(k+α/2)}, bucketed by k mod 2.
/// Buckets are indexed σ = (k₁ mod 2) + 2(k₂ mod 2) + 4(k₃ mod 2).
fn parity_sums(tau: &CMatrix, alpha: [u8; 3], b: i64, wp: u32) -> [BigComplex; 8] {
    let ipi = {
        let p = pi(wp);
        BigComplex::with_val(wp, (0, &p))
    };
    let q = |j: usize, k: usize| -> BigComplex {
        let z = BigComplex::with_val(wp, &ipi * &tau[(j, k)]);
        BigComplex::with_val(wp, z.exp_ref())
    };
    let q00 = q(0, 0);
    let q11 = q(1, 1);
    let q22 = q(2, 2);
    let q01 = q(0, 1);
    let q02 = q(0, 2);
    let q12 = q(1, 2);
    let inv = |z: &BigComplex| -> BigComplex {
        BigComplex::with_val(wp, z.recip_ref())
    };
    let r00 = inv(&q00);
    let r11 = inv(&q11);
    let r22 = inv(&q22);
    let r01 = inv(&q01);
    let r02 = inv(&q02);
    let r12 = inv(&q12);
    let sq = |z: &BigComplex| BigComplex::with_val(wp, z.square_ref());
    let q00s = sq(&q00);
    let q11s = sq(&q11);
    let q22s = sq(&q22);
    let q01s = sq(&q01);
    let q02s = sq(&q02);
    let q12s = sq(&q12);
    // Descending walks also gain q² per step (the r-exponents decrease),
    // so only the off-diagonal reciprocal squares are needed.
    let r01s = sq(&r01);
    let r02s = sq(&r02);
    let r12s = sq(&r12);
    let pow01 = |base: &BigComplex, e: u8| -> BigComplex {
        if e == 0 { BigComplex::with_val(wp, (1, 0)) } else { base.clone() }
    };
    let [a0, a1, a2] = alpha;

    // Base term e^{iπ(α/2)τᵗ(α/2)}; exact 1 when α = 0.
    let t000 = if alpha == [0, 0, 0] {
        BigComplex::with_val(wp, (1, 0))
    } else {
        let mut quad = BigComplex::with_val(wp, (0, 0));
        let af = [a0 as i32, a1 as i32, a2 as i32];
        for j in 0..3 {
            for k in 0..3 {
                if af[j] * af[k] != 0 {
                    quad += &tau[(j, k)];
                }
            }
        }
        quad /= 4u32;
        let z = BigComplex::with_val(wp, &ipi * &quad);
        BigComplex::with_val(wp, z.exp_ref())
    };

    let mut s: [BigComplex; 8] = std::array::from_fn(|_| BigComplex::with_val(wp, (0, 0)));
    let sigma = |m: i64, n: i64, p: i64| -> usize {
        ((m & 1) + 2 * (n & 1) + 4 * (p & 1)) as usize
    };

    // Innermost walk over p at fixed (m,n). `t0` is the term at (m,n,0);
    // `c` = q02^{2m+α0}·q12^{2n+α1} and `rc` its reciprocal.
    let inner_p = |s: &mut [BigComplex; 8], t0: &BigComplex, m: i64, n: i64, c: &BigComplex, rc: &BigComplex| {
        s[sigma(m, n, 0)] += t0;
        // p ascending: step factor q22^{2p+α2+1}·c, then gains q22².
        let mut t = t0.clone();
        let mut f = pow01(&q22, a2) * &q22;
        f *= c;
        for p in 1..=b {
            t *= &f;
            f *= &q22s;
            s[sigma(m, n, p)] += &t;
        }
        // p descending: step factor r22^{2p+α2−1}·rc at p, gains q22².
        let mut t = t0.clone();
        let mut g = pow01(&r22, a2) * &q22;
        g *= rc;
        for p in 1..=b {
            t *= &g;
            g *= &q22s;
            s[sigma(m, n, -p)] += &t;
        }
    };

    // Walk over n at fixed m. `tm` is the term at (m,0,0); c01/d01 are
    // q01^{±(2m+α0)} and c02/d02 are q02^{±(2m+α0)}.
    let inner_n = |s: &mut [BigComplex; 8],
                   tm: &BigComplex,
                   m: i64,
                   c01: &BigComplex,
                   d01: &BigComplex,
                   c02: &BigComplex,
                   d02: &BigComplex| {
        // n = 0 row.
        {
            let c = BigComplex::with_val(wp, c02 * &pow01(&q12, a1));
            let rc = BigComplex::with_val(wp, d02 * &pow01(&r12, a1));
            inner_p(s, tm, m, 0, &c, &rc);
        }
        // n ascending.
        let mut t = tm.clone();
        let mut f = pow01(&q11, a1) * &q11;
        f *= c01;
        f *= &pow01(&q12, a2);
        let mut c12 = pow01(&q12, a1);
        let mut d12 = pow01(&r12, a1);
        for n in 1..=b {
            t *= &f;
            f *= &q11s;
            c12 *= &q12s;
            d12 *= &r12s;
            let c = BigComplex::with_val(wp, c02 * &c12);
            let rc = BigComplex::with_val(wp, d02 * &d12);
            inner_p(s, &t, m, n, &c, &rc);
        }
        // n descending.
        let mut t = tm.clone();
        let mut g = pow01(&r11, a1) * &q11;
        g *= d01;
        g *= &pow01(&r12, a2);
        let mut c12 = pow01(&q12, a1);
        let mut d12 = pow01(&r12, a1);
        for n in 1..=b {
            t *= &g;
            g *= &q11s;
            c12 *= &r12s;
            d12 *= &q12s;
            let c = BigComplex::with_val(wp, c02 * &c12);
            let rc = BigComplex::with_val(wp, d02 * &d12);
            inner_p(s, &t, m, -n, &c, &rc);
        }
    };

    // Outer walk over m.
    {
        // m = 0 plane.
        let c01 = pow01(&q01, a0);
        let d01 = pow01(&r01, a0);
        let c02 = pow01(&q02, a0);
        let d02 = pow01(&r02, a0);
        inner_n(&mut s, &t000, 0, &c01, &d01, &c02, &d02);
        // m ascending.
        let mut t = t000.clone();
        let mut f = pow01(&q00, a0) * &q00;
        f *= &pow01(&q01, a1);
        f *= &pow01(&q02, a2);
        let mut c01 = pow01(&q01, a0);
        let mut d01 = pow01(&r01, a0);
        let mut c02 = pow01(&q02, a0);
        let mut d02 = pow01(&r02, a0);
        for m in 1..=b {
            t *= &f;
            f *= &q00s;
            c01 *= &q01s;
            d01 *= &r01s;
            c02 *= &q02s;
            d02 *= &r02s;
            inner_n(&mut s, &t, m, &c01, &d01, &c02, &d02);
        }
        // m descending.
        let mut t = t000.clone();
        let mut g = pow01(&r00, a0) * &q00;
        g *= &pow01(&r01, a1);
        g *= &pow01(&r02, a2);
        let mut c01 = pow01(&q01, a0);
        let mut d01 = pow01(&r01, a0);
        let mut c02 = pow01(&q02, a0);
        let mut d02 = pow01(&r02, a0);
        for m in 1..=b {
            t *= &g;
            g *= &q00s;
            c01 *= &r01s;
            d01 *= &q01s;
            c02 *= &r02s;
            d02 *= &q02s;
            inner_n(&mut s, &t, -m, &c01, &d01, &c02, &d02);
        }
    }
    s
}
