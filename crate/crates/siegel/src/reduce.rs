//! Reduction of positive definite forms (Minkowski / LLL) and of Riemann
//! matrices to the Siegel domain.

use crate::fmat::FMat3;
use crate::sympl::{symplectic_act, SymplecticMatrix};
use crate::{RiemannMatrix, SiegelError};
use mpnum::{round_to_int, two_pow, BigComplex, BigFloat, BigInt, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionVariant {
    Minkowski,
    Lll,
}

pub type IMat3 = [[BigInt; 3]; 3];

pub fn imat3_identity() -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from((i == j) as i64)))
}

pub fn imat3_is_identity(u: &IMat3) -> bool {
    (0..3).all(|i| (0..3).all(|j| u[i][j] == (i == j) as i64))
}

pub fn imat3_mul(a: &IMat3, b: &IMat3) -> IMat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = BigInt::new();
            for k in 0..3 {
                acc += BigInt::from(&a[i][k] * &b[k][j]);
            }
            acc
        })
    })
}

fn from_cols(v1: &[i64; 3], v2: &[i64; 3], v3: &[i64; 3]) -> IMat3 {
    std::array::from_fn(|i| [BigInt::from(v1[i]), BigInt::from(v2[i]), BigInt::from(v3[i])])
}

impl FMat3 {
    /// ᵗU·Y·U with integer U.
    pub fn congruence_big(&self, u: &IMat3) -> FMat3 {
        let prec = self.prec();
        let uf: [[BigFloat; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| BigFloat::with_val(prec, &u[i][j])));
        FMat3::from_fn(|i, j| {
            let mut acc = BigFloat::with_val(prec, 0);
            for a in 0..3 {
                for b in 0..3 {
                    acc += BigFloat::with_val(prec, &self.e[a][b] * &uf[a][i]) * &uf[b][j];
                }
            }
            acc
        })
    }

    /// Bilinear form ᵗx·Y·y for small integer vectors.
    fn bilin(&self, x: &[i64; 3], y: &[i64; 3]) -> BigFloat {
        let prec = self.prec();
        let mut acc = BigFloat::with_val(prec, 0);
        for i in 0..3 {
            for j in 0..3 {
                if x[i] != 0 && y[j] != 0 {
                    acc += &self.e[i][j] * BigFloat::with_val(prec, x[i] * y[j]);
                }
            }
        }
        acc
    }
}

fn gcd2(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd2(gcd2(a, b), c)
}

/// Checks the Minkowski conditions with the finite ‖v‖∞ ≤ 3 certificate:
/// (a) ᵗvYv ≥ Y_jj whenever gcd(v_j, …, v₃) = 1, for j = 1, 2, 3;
/// (b) Y₁₂ ≥ 0 and Y₂₃ ≥ 0.
/// Inequalities carry a relative slack of 2^(−prec/2).
pub fn is_minkowski_reduced(y: &FMat3, prec: u32) -> bool {
    if !y.is_positive_definite(prec) {
        return false;
    }
    let tol = two_pow(-((prec / 2) as i32));
    for j in 0..3 {
        let yjj = &y.e[j][j];
        let floor = BigFloat::with_val(prec, yjj - BigFloat::with_val(prec, yjj * &tol));
        for v1 in -3i64..=3 {
            for v2 in -3i64..=3 {
                for v3 in -3i64..=3 {
                    let g = match j {
                        0 => gcd3(v1, v2, v3),
                        1 => gcd2(v2, v3),
                        _ => v3.abs(),
                    };
                    if g != 1 {
                        continue;
                    }
                    if y.quad(&[v1, v2, v3]) < floor {
                        return false;
                    }
                }
            }
        }
    }
    let s12 = BigFloat::with_val(prec, &y.e[0][1] + BigFloat::with_val(prec, &y.e[0][0] * &tol));
    let s23 = BigFloat::with_val(prec, &y.e[1][2] + BigFloat::with_val(prec, &y.e[1][1] * &tol));
    !s12.is_sign_negative() && !s23.is_sign_negative()
}

/// One greedy pass: picks successive columns minimizing the form subject to
/// the extendability conditions, searching the box ‖v‖∞ ≤ 3, then fixes signs
/// so that Y'₁₂ ≥ 0 and Y'₂₃ ≥ 0. Deterministic: ties prefer smaller ‖v‖₁,
/// then the lexicographically smallest sign-canonical vector.
fn greedy_pass(y: &FMat3, prec: u32) -> IMat3 {
    let tol = two_pow(-((prec / 2) as i32));
    let canon = |v: &[i64; 3]| -> [i64; 3] {
        let s = v.iter().find(|&&x| x != 0).map_or(1, |&x| x.signum());
        [v[0] * s, v[1] * s, v[2] * s]
    };
    let l1 = |v: &[i64; 3]| v.iter().map(|x| x.abs()).sum::<i64>();

    let pick = |accept: &dyn Fn(&[i64; 3]) -> bool| -> [i64; 3] {
        let mut best: Option<([i64; 3], BigFloat)> = None;
        for v1 in -3i64..=3 {
            for v2 in -3i64..=3 {
                for v3 in -3i64..=3 {
                    let v = [v1, v2, v3];
                    if (v1, v2, v3) == (0, 0, 0) || !accept(&v) {
                        continue;
                    }
                    let q = y.quad(&v);
                    let take = match &best {
                        None => true,
                        Some((b, qb)) => {
                            let margin = BigFloat::with_val(prec, qb * &tol);
                            if q < BigFloat::with_val(prec, qb - &margin) {
                                true
                            } else if q > BigFloat::with_val(prec, qb + &margin) {
                                false
                            } else {
                                (l1(&v), canon(&v)) < (l1(b), canon(b))
                            }
                        }
                    };
                    if take {
                        best = Some((v, q));
                    }
                }
            }
        }
        let (v, _) = best.expect("search box always contains a valid vector");
        canon(&v)
    };

    let v1 = pick(&|v| gcd3(v[0], v[1], v[2]) == 1);
    let v2 = pick(&|v| {
        let m1 = v1[1] * v[2] - v1[2] * v[1];
        let m2 = v1[2] * v[0] - v1[0] * v[2];
        let m3 = v1[0] * v[1] - v1[1] * v[0];
        gcd3(m1, m2, m3) == 1
    });
    let v3 = pick(&|v| {
        let det = v1[0] * (v2[1] * v[2] - v2[2] * v[1]) - v1[1] * (v2[0] * v[2] - v2[2] * v[0])
            + v1[2] * (v2[0] * v[1] - v2[1] * v[0]);
        det.abs() == 1
    });

    let mut v2 = v2;
    let mut v3 = v3;
    if y.bilin(&v1, &v2).is_sign_negative() {
        v2 = [-v2[0], -v2[1], -v2[2]];
    }
    if y.bilin(&v2, &v3).is_sign_negative() {
        v3 = [-v3[0], -v3[1], -v3[2]];
    }
    from_cols(&v1, &v2, &v3)
}

/// Minkowski reduction: Y' = ᵗU·Y·U satisfying conditions (a) (certified on
/// the box ‖v‖∞ ≤ 3) and (b). Preconditioned by LLL, then greedy passes until
/// the certificate holds.
pub fn minkowski_reduce(y: &FMat3, prec: u32) -> Result<(FMat3, IMat3), SiegelError> {
    if !y.is_positive_definite(prec) {
        return Err(SiegelError::NotPositiveDefinite);
    }
    if is_minkowski_reduced(y, prec) {
        return Ok((y.clone(), imat3_identity()));
    }
    let (mut ycur, mut utotal) = lll_reduce_imag(y, prec)?;
    for _ in 0..32 {
        if is_minkowski_reduced(&ycur, prec) {
            return Ok((ycur, utotal));
        }
        let upass = greedy_pass(&ycur, prec);
        let stalled = imat3_is_identity(&upass);
        ycur = ycur.congruence_big(&upass);
        utotal = imat3_mul(&utotal, &upass);
        if stalled {
            break;
        }
    }
    if is_minkowski_reduced(&ycur, prec) {
        Ok((ycur, utotal))
    } else {
        Err(SiegelError::PrecisionExhausted)
    }
}

/// LLL reduction of the positive definite form Y with δ = 0.99.
/// Returns (Y', U) with Y' = ᵗU·Y·U size-reduced and satisfying the Lovász
/// conditions, plus the sign normalization Y'₁₂, Y'₂₃ ≥ 0.
pub fn lll_reduce_imag(y: &FMat3, prec: u32) -> Result<(FMat3, IMat3), SiegelError> {
    if !y.is_positive_definite(prec) {
        return Err(SiegelError::NotPositiveDefinite);
    }
    let delta = BigFloat::with_val(prec, 99) / 100u32;
    let mut u = imat3_identity();

    // Gram–Schmidt data (μ, ‖b*‖²) of the current basis, from the form.
    let gso = |u: &IMat3| -> ([[BigFloat; 3]; 3], [BigFloat; 3]) {
        let g = y.congruence_big(u);
        let mut mu: [[BigFloat; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| BigFloat::with_val(prec, 0)));
        let mut bn: [BigFloat; 3] = std::array::from_fn(|_| BigFloat::with_val(prec, 0));
        bn[0] = g.e[0][0].clone();
        mu[1][0] = BigFloat::with_val(prec, &g.e[1][0] / &bn[0]);
        bn[1] = BigFloat::with_val(prec, &g.e[1][1] - BigFloat::with_val(prec, &mu[1][0] * &g.e[1][0]));
        mu[2][0] = BigFloat::with_val(prec, &g.e[2][0] / &bn[0]);
        let t = BigFloat::with_val(prec, &g.e[2][1] - BigFloat::with_val(prec, &mu[2][0] * &g.e[1][0]));
        mu[2][1] = BigFloat::with_val(prec, &t / &bn[1]);
        bn[2] = BigFloat::with_val(
            prec,
            &g.e[2][2]
                - BigFloat::with_val(
                    prec,
                    BigFloat::with_val(prec, &mu[2][0] * &g.e[2][0]) + BigFloat::with_val(prec, &mu[2][1] * &t),
                ),
        );
        (mu, bn)
    };

    let col_submul = |u: &mut IMat3, dst: usize, src: usize, r: &BigInt| {
        for row in u.iter_mut() {
            let d = BigInt::from(r * &row[src]);
            row[dst] -= d;
        }
    };

    let mut k = 1usize;
    let mut steps = 0u64;
    while k <= 2 {
        steps += 1;
        if steps > 10_000 {
            return Err(SiegelError::PrecisionExhausted);
        }
        for j in (0..k).rev() {
            let (mu, _) = gso(&u);
            let r = round_to_int(&mu[k][j]);
            if r != 0 {
                col_submul(&mut u, k, j, &r);
            }
        }
        let (mu, bn) = gso(&u);
        let rhs = BigFloat::with_val(
            prec,
            BigFloat::with_val(prec, &delta - BigFloat::with_val(prec, &mu[k][k - 1] * &mu[k][k - 1]))
                * &bn[k - 1],
        );
        if bn[k] >= rhs {
            k += 1;
        } else {
            for row in u.iter_mut() {
                row.swap(k, k - 1);
            }
            k = 1;
        }
    }

    // Sign normalization (|μ| and ‖b*‖ are unchanged by column negation).
    let mut ycur = y.congruence_big(&u);
    if ycur.e[0][1].is_sign_negative() {
        for row in u.iter_mut() {
            row[1] = BigInt::from(-row[1].clone());
        }
        ycur = y.congruence_big(&u);
    }
    if ycur.e[1][2].is_sign_negative() {
        for row in u.iter_mut() {
            row[2] = BigInt::from(-row[2].clone());
        }
        ycur = y.congruence_big(&u);
    }
    Ok((ycur, u))
}

/// Verifies size reduction and the pairwise Lovász conditions for Y in its
/// own basis (used by tests).
pub fn satisfies_lovasz(y: &FMat3, prec: u32) -> bool {
    let delta = BigFloat::with_val(prec, 99) / 100u32;
    let tol = two_pow(-((prec / 2) as i32));
    let half = BigFloat::with_val(prec, 0.5) + &tol;
    let b0 = y.e[0][0].clone();
    let mu10 = BigFloat::with_val(prec, &y.e[1][0] / &b0);
    let b1 = BigFloat::with_val(prec, &y.e[1][1] - BigFloat::with_val(prec, &mu10 * &y.e[1][0]));
    let mu20 = BigFloat::with_val(prec, &y.e[2][0] / &b0);
    let t = BigFloat::with_val(prec, &y.e[2][1] - BigFloat::with_val(prec, &mu20 * &y.e[1][0]));
    let mu21 = BigFloat::with_val(prec, &t / &b1);
    let b2 = BigFloat::with_val(
        prec,
        &y.e[2][2]
            - BigFloat::with_val(
                prec,
                BigFloat::with_val(prec, &mu20 * &y.e[2][0]) + BigFloat::with_val(prec, &mu21 * &t),
            ),
    );
    if mu10.clone().abs() > half || mu20.clone().abs() > half || mu21.clone().abs() > half {
        return false;
    }
    let rhs1 = BigFloat::with_val(
        prec,
        BigFloat::with_val(prec, &delta - BigFloat::with_val(prec, &mu10 * &mu10)) * &b0,
    );
    let lhs1 = BigFloat::with_val(prec, &b1 + BigFloat::with_val(prec, &b1 * &tol));
    if lhs1 < rhs1 {
        return false;
    }
    let rhs2 = BigFloat::with_val(
        prec,
        BigFloat::with_val(prec, &delta - BigFloat::with_val(prec, &mu21 * &mu21)) * &b1,
    );
    let lhs2 = BigFloat::with_val(prec, &b2 + BigFloat::with_val(prec, &b2 * &tol));
    lhs2 >= rhs2
}

fn congruence_tau(rm: &RiemannMatrix, u: &IMat3) -> Result<RiemannMatrix, SiegelError> {
    let prec = rm.prec;
    let uc = CMatrix::from_fn(3, 3, |i, j| BigComplex::with_val(prec, (BigInt::from(&u[i][j]), BigInt::new())));
    let ut = uc.transpose();
    let tau = ut.mul(rm.tau(), prec).mul(&uc, prec);
    RiemannMatrix::new(tau, prec)
}

/// Siegel reduction: alternates imaginary-part reduction, real-part
/// translation into [−1/2, 1/2], and the embedded inversion on the (1,1)
/// slot while |τ₁₁| < 0.99. Returns (τ', M) with τ' = M·τ.
pub fn siegel_reduce(
    rm: &RiemannMatrix,
    variant: ReductionVariant,
    prec: u32,
) -> Result<(RiemannMatrix, SymplecticMatrix), SiegelError> {
    let mut cur = rm.at_prec(prec);
    let mut m = SymplecticMatrix::identity();
    let threshold = BigFloat::with_val(prec, 99) / 100u32;
    let cap = 10u64 * u64::from(prec);
    let mut iters = 0u64;
    loop {
        iters += 1;
        if iters > cap {
            return Err(SiegelError::PrecisionExhausted);
        }
        // (1) reduce Im τ.
        let y = cur.imag();
        let (_, u) = match variant {
            ReductionVariant::Minkowski => minkowski_reduce(&y, prec)?,
            ReductionVariant::Lll => lll_reduce_imag(&y, prec)?,
        };
        if !imat3_is_identity(&u) {
            cur = congruence_tau(&cur, &u)?;
            let mut arr = [[0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    arr[i][j] = u[i][j].to_i64().ok_or(SiegelError::PrecisionExhausted)?;
                }
            }
            let n = SymplecticMatrix::from_gl3(&arr)?;
            m = n.mul(&m);
        }
        // (2) translate Re τ into [−1/2, 1/2].
        let re = cur.real();
        let t: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| -round_to_int(&re.e[i][j])).collect())
            .collect();
        if t.iter().any(|row| row.iter().any(|v| *v != 0)) {
            let n = SymplecticMatrix::translation_big(&t);
            cur = symplectic_act(&n, &cur)?;
            m = n.mul(&m);
        }
        // (3) invert the (1,1) slot while |τ₁₁| < 0.99.
        let abs11 = mpnum::cabs(cur.entry(0, 0), prec);
        if abs11 < threshold {
            let n = SymplecticMatrix::slot_inversion(0);
            cur = symplectic_act(&n, &cur)?;
            m = n.mul(&m);
        } else {
            return Ok((cur, m));
        }
    }
}
