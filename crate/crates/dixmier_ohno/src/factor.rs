use crate::reduce::minimal_representative;
use crate::{exact_do, DoError, RationalQuartic};
use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::{Complete, Integer};
use std::time::{Duration, Instant};

/// One factor of a positive integer: `value^exp`, with `prime` false for a
/// cofactor the budgeted factorization could not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPiece {
    pub value: Integer,
    pub exp: u32,
    pub prime: bool,
}

/// Factored discriminant of a rational quartic: the I27 entry of the
/// minimal integral representative, split into sign, the valuations at the
/// calibration primes 2, 3, 5, 7, and the factored remaining part.
#[derive(Debug, Clone)]
pub struct DiscriminantReport {
    pub i27_min: Integer,
    pub negative: bool,
    pub small: [(u32, u32); 4],
    pub large: Vec<FactorPiece>,
}

pub fn discriminant_report(q: &RationalQuartic) -> Result<DiscriminantReport, DoError> {
    let t = exact_do(q);
    if t.v[12] == 0 {
        return Err(DoError::SingularCurve);
    }
    let min = minimal_representative(&t)?;
    let i27 = min.v[12].clone();
    let negative = i27 < 0;
    let mut rest = i27.clone().abs();
    let small = [2u32, 3, 5, 7].map(|p| {
        let v = rest.remove_factor_mut(&Integer::from(p));
        (p, v)
    });
    let large = factor_integer(&rest, Duration::from_secs(10));
    Ok(DiscriminantReport {
        i27_min: i27,
        negative,
        small,
        large,
    })
}

/// Factor |n|: trial division below 10^6, perfect-power reduction, a
/// probabilistic primality test, then Pollard rho within the time budget.
/// Whatever remains unsplit when the budget runs out is reported as a
/// composite piece, never guessed. Pieces come out in increasing order.
pub fn factor_integer(n: &Integer, budget: Duration) -> Vec<FactorPiece> {
    let deadline = Instant::now() + budget;
    let mut pieces: Vec<FactorPiece> = Vec::new();
    let mut rest = n.clone().abs();
    if rest <= 1 {
        return pieces;
    }
    let push = |value: Integer, exp: u32, prime: bool, pieces: &mut Vec<FactorPiece>| {
        if let Some(p) = pieces.iter_mut().find(|p| p.value == value) {
            p.exp += exp;
        } else {
            pieces.push(FactorPiece { value, exp, prime });
        }
    };
    // Trial division: 2, 3, then a 6k±1 wheel up to 10^6.
    for d in TrialDivisors::new() {
        if rest == 1 || rest < d as u64 * d as u64 {
            break;
        }
        if rest.is_divisible_u(d) {
            let v = rest.remove_factor_mut(&Integer::from(d));
            push(Integer::from(d), v, true, &mut pieces);
        }
    }
    if rest > 1 {
        let mut stack = vec![(rest, 1u32)];
        while let Some((m, mult)) = stack.pop() {
            if m == 1 {
                continue;
            }
            if m.is_probably_prime(40) != IsPrime::No {
                push(m, mult, true, &mut pieces);
                continue;
            }
            if let Some((root, k)) = perfect_power(&m) {
                stack.push((root, mult * k));
                continue;
            }
            match pollard_rho(&m, deadline) {
                Some(d) => {
                    let q = (&m / &d).complete();
                    stack.push((d, mult));
                    stack.push((q, mult));
                }
                None => push(m, mult, false, &mut pieces),
            }
        }
    }
    pieces.sort_by(|a, b| a.value.cmp(&b.value));
    pieces
}

/// Largest k ≥ 2 with m = r^k, if any.
fn perfect_power(m: &Integer) -> Option<(Integer, u32)> {
    if !m.is_perfect_power() {
        return None;
    }
    let bits = m.significant_bits();
    for k in (2..=bits).rev() {
        let r = m.clone().root(k);
        if (&r).pow(k).complete() == *m {
            return Some((r, k));
        }
    }
    None
}

/// Brent-variant Pollard rho; returns a nontrivial divisor of composite m.
fn pollard_rho(m: &Integer, deadline: Instant) -> Option<Integer> {
    for c in 1u32..64 {
        if Instant::now() >= deadline {
            return None;
        }
        if let Some(d) = rho_once(m, c, deadline) {
            return Some(d);
        }
    }
    None
}

fn rho_once(m: &Integer, c: u32, deadline: Instant) -> Option<Integer> {
    let cc = Integer::from(c);
    let step = |x: &Integer| -> Integer {
        let mut t = x.clone().square() + &cc;
        t %= m;
        t
    };
    let mut x = Integer::from(2);
    let mut y = x.clone();
    let mut acc = Integer::from(1);
    let mut count = 0u64;
    loop {
        x = step(&x);
        y = step(&step(&y));
        let diff = (&x - &y).complete().abs();
        if diff == 0 {
            return None; // cycle collapsed, retry with another c
        }
        acc *= diff;
        acc %= m;
        count += 1;
        if count % 128 == 0 {
            let g = acc.clone().gcd(m);
            if g > 1 {
                if g == *m {
                    return None;
                }
                return Some(g);
            }
            if Instant::now() >= deadline {
                return None;
            }
        }
        if count % 8192 == 0 && Instant::now() >= deadline {
            return None;
        }
    }
}

/// 2, 3, then the 6k±1 wheel, stopping at 10^6.
struct TrialDivisors {
    next: u32,
}

impl TrialDivisors {
    fn new() -> Self {
        TrialDivisors { next: 2 }
    }
}

impl Iterator for TrialDivisors {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        let d = self.next;
        if d > 1_000_000 {
            return None;
        }
        self.next = match d {
            2 => 3,
            3 => 5,
            _ if d % 6 == 5 => d + 2,
            _ => d + 4,
        };
        Some(d)
    }
}
