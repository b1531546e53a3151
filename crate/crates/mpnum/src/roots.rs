//! Root finding for rational polynomials of degree ≤ 6: Aberth–Ehrlich at
//! modest precision, then per-root Newton refinement with precision doubling.

use crate::{cabs, rat_to_float, two_pow, BigComplex, BigFloat, BigRational, MpError};

/// Degree of a rational polynomial given low→high coefficients.
fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| *c != 0)
}

fn poly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| BigRational::from(c * BigRational::from(k as u32)))
        .collect()
}

/// Euclidean remainder over ℚ; inputs trimmed, deg(a) ≥ deg(b) not required.
fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = degree(b).expect("nonzero divisor");
    let mut r: Vec<BigRational> = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = BigRational::from(&r[dr] / &b[db]);
        for k in 0..=db {
            let t = BigRational::from(&q * &b[k]);
            r[dr - db + k] -= t;
        }
        r.truncate(dr); // leading coefficient now exactly zero
    }
    r
}

/// Degree of gcd(p, p'); 0 means squarefree.
fn gcd_with_derivative_degree(p: &[BigRational]) -> usize {
    let mut a = p.to_vec();
    let mut b = poly_derivative(p);
    loop {
        match degree(&b) {
            None => return degree(&a).unwrap_or(0),
            Some(0) => return 0,
            Some(_) => {
                let r = poly_rem(&a, &b);
                a = b;
                b = r;
            }
        }
    }
}

fn eval_horner(coeffs: &[BigComplex], z: &BigComplex, prec: u32) -> BigComplex {
    let mut acc = BigComplex::with_val(prec, (0, 0));
    for c in coeffs.iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

/// All deg(p) complex roots of a squarefree rational polynomial, degree ≤ 6.
///
/// Output order: real roots ascending, then conjugate pairs (w, w̄) with
/// Im w > 0, pairs sorted by (Re, Im). Each root r satisfies
/// |p(r)| ≤ 2^(20−prec)·max|pₖ|·max(1,|r|)^deg.
pub fn poly_roots(p: &[BigRational], prec: u32) -> Result<Vec<BigComplex>, MpError> {
    let deg = degree(p).ok_or_else(|| MpError::BadInput("zero polynomial".into()))?;
    if deg == 0 {
        return Ok(vec![]);
    }
    if deg > 6 {
        return Err(MpError::BadInput(format!("degree {deg} > 6 unsupported")));
    }
    if gcd_with_derivative_degree(p) > 0 {
        return Err(MpError::NotSquarefree);
    }

    let wp = prec + 96;

    // monic coefficients at the working precision
    let monic = |prec: u32| -> Vec<BigComplex> {
        let lead = &p[deg];
        (0..=deg)
            .map(|k| {
                let q = BigRational::from(&p[k] / lead);
                BigComplex::with_val(prec, (rat_to_float(&q, prec), BigFloat::new(prec)))
            })
            .collect()
    };

    // ---- stage 1: Aberth–Ehrlich at modest precision ----
    let lp: u32 = 192;
    let c = monic(lp);
    let dc: Vec<BigComplex> = (1..=deg)
        .map(|k| BigComplex::with_val(lp, &c[k] * k as u32))
        .collect();

    let mut radius = BigFloat::with_val(lp, 0);
    for k in 0..deg {
        let a = cabs(&c[k], lp);
        if a > radius {
            radius = a;
        }
    }
    radius += 1;

    let pi = crate::pi(lp);
    let mut zs: Vec<BigComplex> = (0..deg)
        .map(|k| {
            let theta = BigFloat::with_val(lp, 2 * k as u32) * &pi / deg as u32 + BigFloat::with_val(lp, 0.401f64);
            let dir = BigComplex::with_val(lp, (theta.clone().cos(), theta.sin()));
            dir * &radius
        })
        .collect();

    let stop = two_pow(-(lp as i32) + 24);
    for _iter in 0..400 {
        let mut moved = BigFloat::with_val(lp, 0);
        for k in 0..deg {
            let pz = eval_horner(&c, &zs[k], lp);
            let dpz = eval_horner(&dc, &zs[k], lp);
            if dpz.is_zero() {
                // nudge off a critical point
                zs[k] += BigComplex::with_val(lp, (1e-3, 1e-3));
                continue;
            }
            let newton = BigComplex::with_val(lp, &pz / &dpz);
            let mut sum = BigComplex::with_val(lp, (0, 0));
            for j in 0..deg {
                if j != k {
                    let d = BigComplex::with_val(lp, &zs[k] - &zs[j]);
                    if d.is_zero() {
                        continue;
                    }
                    sum += d.recip();
                }
            }
            let denom = BigComplex::with_val(lp, 1 - BigComplex::with_val(lp, &newton * &sum));
            let delta = if denom.is_zero() {
                newton
            } else {
                BigComplex::with_val(lp, &newton / &denom)
            };
            let step = cabs(&delta, lp);
            let rel = step / (cabs(&zs[k], lp) + 1u32);
            if rel > moved {
                moved = rel.clone();
            }
            zs[k] -= delta;
        }
        if moved < stop {
            break;
        }
    }

    // ---- stage 2: Newton refinement with precision doubling ----
    let full_c = monic(wp);
    let full_dc: Vec<BigComplex> = (1..=deg)
        .map(|k| BigComplex::with_val(wp, &full_c[k] * k as u32))
        .collect();
    for z in zs.iter_mut() {
        let mut cur = lp;
        while cur < wp {
            cur = (2 * cur).min(wp);
            let mut zz = BigComplex::with_val(cur, &*z);
            for _ in 0..4 {
                let pz = eval_horner(&full_c, &zz, cur);
                let dpz = eval_horner(&full_dc, &zz, cur);
                if dpz.is_zero() {
                    break;
                }
                let delta = BigComplex::with_val(cur, pz / dpz);
                let small = cabs(&delta, 64) < two_pow(-(cur as i32) + 8) * (cabs(&zz, 64) + 1u32);
                zz -= delta;
                if small {
                    break;
                }
            }
            *z = zz;
        }
    }

    // ---- conjugate pairing (coefficients are real) ----
    let tol = two_pow(-((wp / 2) as i32));
    let mut reals: Vec<BigFloat> = Vec::new();
    let mut upper: Vec<BigComplex> = Vec::new();
    let mut lower: Vec<BigComplex> = Vec::new();
    for z in zs {
        let scale = cabs(&z, wp) + 1u32;
        if BigFloat::with_val(wp, z.imag().clone().abs()) < BigFloat::with_val(wp, &tol * &scale) {
            reals.push(z.real().clone());
        } else if z.imag().is_sign_positive() {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    if upper.len() != lower.len() {
        return Err(MpError::BadInput(
            "conjugate pairing failed; raise the working precision".into(),
        ));
    }
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    upper.sort_by(|a, b| {
        (a.real().partial_cmp(b.real()).unwrap()).then(a.imag().partial_cmp(b.imag()).unwrap())
    });

    let mut out: Vec<BigComplex> = Vec::with_capacity(deg);
    for r in reals {
        out.push(BigComplex::with_val(prec, (r, BigFloat::new(prec))));
    }
    for u in upper {
        // average u with the conjugate of its nearest partner in `lower`
        let mut best = 0usize;
        let mut best_d = BigFloat::with_val(64, f64::INFINITY);
        for (i, l) in lower.iter().enumerate() {
            let cand = BigComplex::with_val(wp, l.conj_ref());
            let d = cabs(&BigComplex::with_val(wp, &u - &cand), 64);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        let partner = lower.remove(best);
        let w = BigComplex::with_val(wp, &u + BigComplex::with_val(wp, partner.conj_ref())) / 2u32;
        let w = BigComplex::with_val(prec, w);
        let wbar = BigComplex::with_val(prec, w.conj_ref());
        out.push(w);
        out.push(wbar);
    }
    Ok(out)
}
