//! Symplectic (Frobenius) basis extraction for integral alternating forms and
//! the period matrix of a principally polarized lattice.

use crate::{PolarizedLattice, RiemannMatrix, SiegelError};
use mpnum::{BigComplex, BigFloat, BigInt, CMatrix};

type IMat6 = Vec<Vec<BigInt>>;

fn pairing(g: &IMat6, w: &IMat6, i: usize, j: usize) -> BigInt {
    // E(wᵢ, wⱼ) = ᵗwᵢ · G · wⱼ with wᵢ the i-th column of w.
    let mut acc = BigInt::new();
    for a in 0..6 {
        if w[a][i] == 0 {
            continue;
        }
        for b in 0..6 {
            if w[b][j] == 0 {
                continue;
            }
            acc += BigInt::from(&g[a][b] * BigInt::from(&w[a][i] * &w[b][j]));
        }
    }
    acc
}

fn col_addmul(w: &mut IMat6, dst: usize, src: usize, q: &BigInt) {
    for row in w.iter_mut() {
        let d = BigInt::from(q * &row[src]);
        let cur = row[dst].clone();
        row[dst] = BigInt::from(cur + d);
    }
}

/// Finds U ∈ GL₆(ℤ) with ᵗU·G·U = Ω₃ = (0 I; −I 0) for a principal integral
/// alternating form G. Fails with NotPrincipal when an elementary divisor
/// exceeds 1.
pub fn symplectic_basis(gram: &IMat6) -> Result<IMat6, SiegelError> {
    let mut w: IMat6 = (0..6)
        .map(|i| (0..6).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut free: Vec<usize> = (0..6).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let mut guard = 0u32;
    while !free.is_empty() {
        guard += 1;
        if guard > 10_000 {
            return Err(SiegelError::PrecisionExhausted);
        }
        // Minimal nonzero pairing among free columns, normalized to e > 0.
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (ai, &i) in free.iter().enumerate() {
            for &j in &free[ai + 1..] {
                let e = pairing(gram, &w, i, j);
                if e == 0 {
                    continue;
                }
                let (u, v, e) = if e > 0 { (i, j, e) } else { (j, i, BigInt::from(-e)) };
                match &best {
                    Some((_, _, be)) if *be <= e => {}
                    _ => best = Some((u, v, e)),
                }
            }
        }
        let (u, v, e) = best.ok_or_else(|| SiegelError::BadInput("alternating form is degenerate".into()))?;

        // Euclidean step: a pairing not divisible by e yields a smaller one.
        let mut reduced = false;
        for &x in &free {
            if x == u || x == v {
                continue;
            }
            let eu = pairing(gram, &w, u, x);
            let (qu, ru) = eu.div_rem_euc(e.clone());
            if ru != 0 {
                // E(u, x − q·v) = E(u,x) − q·e = r.
                col_addmul(&mut w, x, v, &BigInt::from(-qu));
                reduced = true;
                break;
            }
            let ev = pairing(gram, &w, v, x);
            let (qv, rv) = ev.div_rem_euc(e.clone());
            if rv != 0 {
                // E(v, x + q·u) = E(v,x) − q·e = r.
                col_addmul(&mut w, x, u, &qv);
                reduced = true;
                break;
            }
        }
        if reduced {
            continue;
        }
        if e != 1 {
            // e must also divide the pairings among the remaining columns;
            // otherwise fold the offending column into u so the Euclidean
            // step above can shrink the minimum on the next round.
            let mut folded = false;
            'outer: for (ai, &x) in free.iter().enumerate() {
                if x == u || x == v {
                    continue;
                }
                for &yc in &free[ai + 1..] {
                    if yc == u || yc == v {
                        continue;
                    }
                    let exy = pairing(gram, &w, x, yc);
                    if !exy.is_divisible(&e) {
                        col_addmul(&mut w, u, x, &BigInt::from(1));
                        folded = true;
                        break 'outer;
                    }
                }
            }
            if folded {
                continue;
            }
            return Err(SiegelError::NotPrincipal);
        }
        // Clear the remaining free columns against (u, v).
        for &x in &free.clone() {
            if x == u || x == v {
                continue;
            }
            let evx = pairing(gram, &w, v, x);
            let eux = pairing(gram, &w, u, x);
            // x ← x + E(v,x)·u − E(u,x)·v kills both pairings (e = 1).
            col_addmul(&mut w, x, u, &evx);
            col_addmul(&mut w, x, v, &BigInt::from(-eux));
        }
        pairs.push((u, v));
        free.retain(|&x| x != u && x != v);
    }

    // Assemble (a₁ a₂ a₃ b₁ b₂ b₃) and verify ᵗU·G·U = Ω₃ exactly.
    let order: Vec<usize> = pairs.iter().map(|p| p.0).chain(pairs.iter().map(|p| p.1)).collect();
    let umat: IMat6 = (0..6)
        .map(|r| (0..6).map(|c| w[r][order[c]].clone()).collect())
        .collect();
    for i in 0..6 {
        for j in 0..6 {
            let want: i64 = if j == i + 3 {
                1
            } else if i == j + 3 {
                -1
            } else {
                0
            };
            if pairing(gram, &umat, i, j) != want {
                return Err(SiegelError::BadInput("symplectic basis verification failed".into()));
            }
        }
    }
    Ok(umat)
}

/// Computes the Riemann matrix of a principally polarized lattice: changes to
/// a symplectic basis, splits the generator matrix as (P₁ | P₂), and returns
/// τ = P₂⁻¹·P₁ after symmetry and positivity checks.
pub fn period_matrix(lat: &PolarizedLattice, prec: u32) -> Result<RiemannMatrix, SiegelError> {
    let u = symplectic_basis(&lat.gram)?;
    let uc = CMatrix::from_fn(6, 6, |i, j| BigComplex::with_val(prec, (BigInt::from(&u[i][j]), BigInt::new())));
    let p = lat.gens.mul(&uc, prec);
    let p1 = CMatrix::from_fn(3, 3, |i, j| p[(i, j)].clone());
    let p2 = CMatrix::from_fn(3, 3, |i, j| p[(i, j + 3)].clone());
    let p2inv = mpnum::matrix::mat3_inverse(&p2, prec)?;
    let tau = p2inv.mul(&p1, prec);

    let asym = tau.sub(&tau.transpose(), prec).max_norm(prec);
    let scale = {
        let n = tau.max_norm(prec);
        if n < 1u32 {
            BigFloat::with_val(prec, 1)
        } else {
            n
        }
    };
    if asym > scale * mpnum::two_pow(-((prec / 2) as i32)) {
        return Err(SiegelError::NotSymmetric);
    }
    let half = BigComplex::with_val(prec, (0.5, 0.0));
    let sym = tau.add(&tau.transpose(), prec).scale(&half, prec);
    match RiemannMatrix::new(sym, prec) {
        Ok(rm) => Ok(rm),
        Err(SiegelError::NotPositiveDefinite) => Err(SiegelError::NotPositive),
        Err(e) => Err(e),
    }
}
