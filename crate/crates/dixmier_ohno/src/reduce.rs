use crate::factor::factor_integer;
use crate::scalar::Scalar;
use crate::{DOTuple, DoError, WEIGHT_THIRDS};
use mpnum::BigFloat;
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::time::Duration;
use thiserror::Error;

/// Weight-normalize a tuple: entry of weight 3n is divided by I3^n, giving
/// a leading 1. Equal points of the weighted projective space produce
/// identical normalizations.
pub fn do_normalize<S: Scalar>(t: &DOTuple<S>) -> Result<[S; 13], DoError> {
    if t.v[0].is_zero() {
        return Err(DoError::LeadingInvariantZero);
    }
    Ok(std::array::from_fn(|k| {
        t.v[k].div(&t.v[0].pow_u(WEIGHT_THIRDS[k]))
    }))
}

/// Equality in the weighted projective space with weights (3,6,…,27).
///
/// When both tuples have I3 ≠ 0 this compares the normalizations entrywise
/// (`tol` is a relative tolerance, ignored by exact scalars). Otherwise it
/// falls back to the lowest-weight slot where either tuple is nonzero and
/// compares cross powers s_k^(w/g) t_p^(w_k/g) against t_k^(w/g) s_p^(w_k/g)
/// with g = gcd of the weights, which is the scale-free condition.
pub fn weighted_projective_equal<S: Scalar>(s: &DOTuple<S>, t: &DOTuple<S>, tol: f64) -> bool {
    if !s.v[0].is_zero() && !t.v[0].is_zero() {
        let (a, b) = (do_normalize(s).unwrap(), do_normalize(t).unwrap());
        return (0..13).all(|k| a[k].approx_eq(&b[k], tol));
    }
    let pivot = (0..13).find(|&k| !s.v[k].is_zero() || !t.v[k].is_zero());
    let Some(p) = pivot else {
        return true; // both identically zero
    };
    if s.v[p].is_zero() != t.v[p].is_zero() {
        return false;
    }
    let wp = WEIGHT_THIRDS[p];
    (0..13).all(|k| {
        let g = gcd_u32(WEIGHT_THIRDS[k], wp);
        let lhs = s.v[k].pow_u(wp / g).mul(&t.v[p].pow_u(WEIGHT_THIRDS[k] / g));
        let rhs = t.v[k].pow_u(wp / g).mul(&s.v[p].pow_u(WEIGHT_THIRDS[k] / g));
        lhs.approx_eq(&rhs, tol)
    })
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("rational recognition did not stabilize across precisions")]
    Unstable,
}

/// Best rational approximation of `x` with denominator at most
/// 10^max_den_digits, accepted only if recomputing from `x` truncated to
/// half its precision yields the same rational. `x` should carry at least
/// 2·max_den_digits + 20 decimal digits, else recognition reports Unstable.
pub fn rational_recognize(x: &BigFloat, max_den_digits: u32) -> Result<Rational, RecognizeError> {
    let full = cf_best(x, max_den_digits).ok_or(RecognizeError::Unstable)?;
    let half = BigFloat::with_val((x.prec() / 2).max(8), x);
    let check = cf_best(&half, max_den_digits).ok_or(RecognizeError::Unstable)?;
    if full == check {
        Ok(full)
    } else {
        Err(RecognizeError::Unstable)
    }
}

/// Last continued-fraction convergent of `x` with denominator within bound.
fn cf_best(x: &BigFloat, max_den_digits: u32) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let v = exact_value(x);
    let bound = Integer::from(10).pow(max_den_digits);
    let (mut num, mut den) = v.into_numer_denom();
    let (mut p1, mut p0) = (Integer::from(1), Integer::from(0));
    let (mut q1, mut q0) = (Integer::from(0), Integer::from(1));
    let mut best: Option<Rational> = None;
    while den != 0 {
        let (a, r) = num.div_rem_floor(den.clone());
        let p = Integer::from(&a * &p1) + &p0;
        let q = Integer::from(&a * &q1) + &q0;
        if q > bound {
            break;
        }
        best = Some(Rational::from((p.clone(), q.clone())));
        (p0, p1) = (p1, p);
        (q0, q1) = (q1, q);
        num = den;
        den = r;
    }
    best
}

/// The exact rational value of a finite float (mantissa times power of two).
fn exact_value(x: &BigFloat) -> Rational {
    let Some((m, e)) = x.to_integer_exp() else {
        return Rational::new();
    };
    let mut v = Rational::from(m);
    if e >= 0 {
        v *= Rational::from(Integer::from(1) << e as u32);
    } else {
        v /= Rational::from(Integer::from(1) << e.unsigned_abs());
    }
    v
}

/// Minimal integral representative of a rational tuple in the weighted
/// projective space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalDOTuple {
    pub v: [Integer; 13],
}

/// Clear denominators of the normalized tuple with λ = lcm of denominators
/// raised to the slot weights, then for every prime p divide the entry of
/// weight 3n by p^n as long as all thirteen entries permit it. The first
/// entry stays positive, and no further weighted division is possible at
/// any prime found by factoring λ (complete up to the factoring budget;
/// trial division alone already covers all primes below 10^6).
pub fn minimal_representative(t: &DOTuple<Rational>) -> Result<MinimalDOTuple, DoError> {
    let norm = do_normalize(t)?;
    let mut lambda = Integer::from(1);
    for e in &norm {
        lambda.lcm_mut(e.denom());
    }
    let mut v: [Integer; 13] = std::array::from_fn(|k| {
        let lam_pow = Rational::from(Integer::from(Pow::pow(&lambda, WEIGHT_THIRDS[k])));
        let scaled = &norm[k] * lam_pow;
        debug_assert_eq!(*scaled.denom(), 1);
        scaled.into_numer_denom().0
    });
    for piece in factor_integer(&lambda, Duration::from_secs(10)) {
        if !piece.prime {
            continue; // unfactored cofactor: no reduction at its primes
        }
        let p = piece.value;
        // e_p = min_k floor(v_p(entry_k) / n_k); zero entries do not bind.
        let ep = (0..13)
            .filter(|&k| v[k] != 0)
            .map(|k| {
                let mut m = v[k].clone();
                let vp = m.remove_factor_mut(&p);
                vp / WEIGHT_THIRDS[k]
            })
            .min()
            .unwrap_or(0);
        if ep == 0 {
            continue;
        }
        for k in 0..13 {
            let q = Integer::from(Pow::pow(&p, ep * WEIGHT_THIRDS[k]));
            v[k].div_exact_mut(&q);
        }
    }
    Ok(MinimalDOTuple { v })
}
