//! Numeric bitangency test: restrict the quartic to a line and measure how
//! far the resulting binary quartic is from a perfect square.

use crate::{ComplexQuartic, QUARTIC_MONOMIALS};
use mpnum::matrix::{mat3_inverse, CMatrix};
use mpnum::{cabs, complex_sqrt, BigComplex, BigFloat};

fn czero(prec: u32) -> BigComplex {
    BigComplex::with_val(prec, (0, 0))
}

/// Restrict the quartic to the projective line c₀x + c₁y + c₂z = 0 and return
/// the binary quartic b₀s⁴ + b₁s³t + … + b₄t⁴ in the two free coordinates.
fn restrict_to_line(q: &ComplexQuartic, line: &[BigComplex; 3], wp: u32) -> [BigComplex; 5] {
    let pivot = (0..3)
        .max_by(|&i, &j| cabs(&line[i], 64).partial_cmp(&cabs(&line[j], 64)).unwrap())
        .unwrap();
    assert!(!line[pivot].is_zero(), "line must be nonzero");
    let free: Vec<usize> = (0..3).filter(|&k| k != pivot).collect();
    // x_pivot = α·s + β·t on the line.
    let inv = BigComplex::with_val(wp, line[pivot].recip_ref());
    let alpha = -BigComplex::with_val(wp, &line[free[0]] * &inv);
    let beta = -BigComplex::with_val(wp, &line[free[1]] * &inv);
    // (α·s + β·t)^e for e = 0..4, as binary coefficient slices.
    let mut pow: Vec<Vec<BigComplex>> = vec![vec![BigComplex::with_val(wp, (1, 0))]];
    for e in 1..=4usize {
        let prev = &pow[e - 1];
        let mut cur = vec![czero(wp); e + 1];
        for (k, c) in prev.iter().enumerate() {
            cur[k] += &alpha * c;
            cur[k + 1] += &beta * c;
        }
        pow.push(cur);
    }
    let mut b: [BigComplex; 5] = std::array::from_fn(|_| czero(wp));
    for (pos, mono) in QUARTIC_MONOMIALS.iter().enumerate() {
        let ep = mono[pivot] as usize;
        let et = mono[free[1]] as usize;
        for (k, c) in pow[ep].iter().enumerate() {
            // slot = total degree of t; the s-degree is forced by homogeneity
            b[et + k] += BigComplex::with_val(wp, &q.coeffs[pos] * c);
        }
    }
    b
}

/// Coefficients of (αs² + βst + γt²)².
fn square_coeffs(p: &[BigComplex; 3], wp: u32) -> [BigComplex; 5] {
    let (a, bb, g) = (&p[0], &p[1], &p[2]);
    [
        BigComplex::with_val(wp, a.square_ref()),
        BigComplex::with_val(wp, 2u32 * BigComplex::with_val(wp, a * bb)),
        BigComplex::with_val(wp, bb.square_ref()) + BigComplex::with_val(wp, 2u32 * BigComplex::with_val(wp, a * g)),
        BigComplex::with_val(wp, 2u32 * BigComplex::with_val(wp, bb * g)),
        BigComplex::with_val(wp, g.square_ref()),
    ]
}

fn norm2(v: &[BigComplex], wp: u32) -> BigFloat {
    let mut acc = BigFloat::with_val(wp, 0);
    for c in v {
        acc += BigFloat::with_val(wp, c.real() * c.real());
        acc += BigFloat::with_val(wp, c.imag() * c.imag());
    }
    acc.sqrt()
}

/// One Gauss–Newton pass for min ‖b − square(p)‖₂ over p ∈ ℂ³; the residual is
/// holomorphic in p so the complex normal equations (JᴴJ)δ = Jᴴr apply.
fn refine(b: &[BigComplex; 5], p: &mut [BigComplex; 3], wp: u32) -> BigFloat {
    let mut best = {
        let sq = square_coeffs(p, wp);
        let r: Vec<BigComplex> = (0..5).map(|k| BigComplex::with_val(wp, &b[k] - &sq[k])).collect();
        norm2(&r, wp)
    };
    for _ in 0..48 {
        let sq = square_coeffs(p, wp);
        let r: [BigComplex; 5] = std::array::from_fn(|k| BigComplex::with_val(wp, &b[k] - &sq[k]));
        let two = BigComplex::with_val(wp, (2, 0));
        let zero = czero(wp);
        // J[k][m] = ∂(square_k)/∂p_m.
        let jac: [[BigComplex; 3]; 5] = [
            [BigComplex::with_val(wp, &two * &p[0]), zero.clone(), zero.clone()],
            [
                BigComplex::with_val(wp, &two * &p[1]),
                BigComplex::with_val(wp, &two * &p[0]),
                zero.clone(),
            ],
            [
                BigComplex::with_val(wp, &two * &p[2]),
                BigComplex::with_val(wp, &two * &p[1]),
                BigComplex::with_val(wp, &two * &p[0]),
            ],
            [
                zero.clone(),
                BigComplex::with_val(wp, &two * &p[2]),
                BigComplex::with_val(wp, &two * &p[1]),
            ],
            [zero.clone(), zero.clone(), BigComplex::with_val(wp, &two * &p[2])],
        ];
        let jhj = CMatrix::from_fn(3, 3, |m, n| {
            let mut acc = czero(wp);
            for k in 0..5 {
                let cj = BigComplex::with_val(wp, jac[k][m].conj_ref());
                acc += BigComplex::with_val(wp, &cj * &jac[k][n]);
            }
            acc
        });
        let jhr: [BigComplex; 3] = std::array::from_fn(|m| {
            let mut acc = czero(wp);
            for k in 0..5 {
                let cj = BigComplex::with_val(wp, jac[k][m].conj_ref());
                acc += BigComplex::with_val(wp, &cj * &r[k]);
            }
            acc
        });
        let inv = match mat3_inverse(&jhj, wp) {
            Ok(m) => m,
            Err(_) => break,
        };
        let delta: [BigComplex; 3] = std::array::from_fn(|m| {
            let mut acc = czero(wp);
            for n in 0..3 {
                acc += BigComplex::with_val(wp, &inv[(m, n)] * &jhr[n]);
            }
            acc
        });
        // Damped update: halve the step until the residual does not grow.
        let mut scale = BigFloat::with_val(wp, 1);
        let mut improved = false;
        for _ in 0..24 {
            let cand: [BigComplex; 3] = std::array::from_fn(|m| {
                BigComplex::with_val(wp, &p[m] + BigComplex::with_val(wp, &delta[m] * &scale))
            });
            let sq = square_coeffs(&cand, wp);
            let rc: Vec<BigComplex> =
                (0..5).map(|k| BigComplex::with_val(wp, &b[k] - &sq[k])).collect();
            let n = norm2(&rc, wp);
            if n < best {
                *p = cand;
                best = n;
                improved = true;
                break;
            }
            scale /= 2u32;
        }
        if !improved {
            break;
        }
    }
    best
}

/// Distance of the restriction of `q` to `line` from the nearest perfect
/// square of a binary quadratic, normalized by the size of the restriction.
///
/// A bitangent line yields a defect at roundoff level; a generic line yields
/// a defect bounded away from zero.
pub fn bitangency_defect(q: &ComplexQuartic, line: &[BigComplex; 3]) -> BigFloat {
    let wp = q.prec + 32;
    let b = restrict_to_line(q, line, wp);
    let bnorm = norm2(&b, wp);
    if bnorm.is_zero() {
        // The line is a component of the quartic; (0)² matches exactly.
        return BigFloat::with_val(wp, 0);
    }

    // Deterministic seeds: read (α,β,γ) off the ends of the coefficient
    // vector, falling back across the degenerate patterns, then polish.
    let tiny = {
        let mut t = BigFloat::with_val(wp, &bnorm);
        t /= BigFloat::with_val(wp, 1u64 << 40);
        t
    };
    let mut seeds: Vec<[BigComplex; 3]> = Vec::new();
    {
        let a0 = complex_sqrt(&b[0], wp);
        let betas: Vec<BigComplex> = if cabs(&a0, wp) > tiny {
            let d = BigComplex::with_val(wp, 2u32 * &a0);
            vec![BigComplex::with_val(wp, &b[1] / &d)]
        } else {
            let r = complex_sqrt(&b[2], wp);
            vec![r.clone(), -r]
        };
        for beta in betas {
            let gammas: Vec<BigComplex> = if cabs(&beta, wp) > tiny {
                let d = BigComplex::with_val(wp, 2u32 * &beta);
                vec![BigComplex::with_val(wp, &b[3] / &d)]
            } else {
                let r = complex_sqrt(&b[4], wp);
                vec![r.clone(), -r]
            };
            for gamma in gammas {
                seeds.push([a0.clone(), beta.clone(), gamma]);
            }
        }
    }
    {
        // Same from the t⁴ end, for restrictions with b₀ ≈ 0 but b₄ large.
        let g0 = complex_sqrt(&b[4], wp);
        if cabs(&g0, wp) > tiny {
            let d = BigComplex::with_val(wp, 2u32 * &g0);
            let beta = BigComplex::with_val(wp, &b[3] / &d);
            let alpha = if cabs(&beta, wp) > tiny {
                let d2 = BigComplex::with_val(wp, 2u32 * &beta);
                BigComplex::with_val(wp, &b[1] / &d2)
            } else {
                complex_sqrt(&b[0], wp)
            };
            seeds.push([alpha, beta, g0]);
        }
    }
    seeds.push([
        BigComplex::with_val(wp, (1, 0)),
        BigComplex::with_val(wp, (1, 0)),
        BigComplex::with_val(wp, (1, 0)),
    ]);

    let mut best: Option<BigFloat> = None;
    for mut p in seeds {
        let res = refine(&b, &mut p, wp);
        if best.as_ref().map_or(true, |cur| res < *cur) {
            best = Some(res);
        }
    }
    BigFloat::with_val(wp, best.unwrap() / &bnorm)
}
