use crate::scalar::Scalar;
use rug::Rational;
use std::sync::OnceLock;

/// Per-slot calibration constants, as exact rationals in slot order.
///
/// The covariant constructions in `tower` fix each invariant only up to a
/// scalar; these constants tie the tuple to the normalization of the
/// published case-15 values, and the same thirteen constants must reconcile
/// every verification curve (the integration tests check all nineteen).
///
/// Provenance: I3 needs no constant (the raw slot already reproduces the
/// published 2^5·3·23). I6, I9 and I27 are pinned by the published case-15
/// normalized entries; each ratio came out supported on {2, 3} alone, which
/// is the expected shape for a pure rescaling (a mixed-up slot shows large
/// primes here). The nine unpinned slots carry no published anchor, so they
/// use the smallest constant making the slot an integer-valued polynomial
/// on integral quartics (the lcm of evaluation denominators, stable over a
/// large random sample); any choice consistent with the valuation bounds of
/// the reduction would do, and this one keeps the slots primitive.
const CONSTANT_STRS: [&str; 13] = [
    "1",                     // I3
    "1/256",                 // I6 = catalecticant / 2^8
    "41472",                 // I9: 2^9 3^4
    "1728",                  // J9: 2^6 3^3
    "432",                   // I12: 2^4 3^3
    "1492992",               // J12: 2^11 3^6
    "2579890176",            // I15: 2^17 3^9
    "2579890176",            // J15: 2^17 3^9
    "71663616",              // I18: 2^15 3^7
    "71663616",              // J18: 2^15 3^7
    "278628139008",          // I21: 2^19 3^12
    "41278242816",           // J21: 2^21 3^9
    "-7625597484987/512",    // I27 = -3^27/2^9 x Macaulay resultant of partials
];

/// The 13 calibration constants as rationals.
pub fn calibration_constants() -> &'static [Rational; 13] {
    static CACHE: OnceLock<[Rational; 13]> = OnceLock::new();
    CACHE.get_or_init(|| {
        CONSTANT_STRS.map(|s| s.parse::<Rational>().expect("valid rational literal"))
    })
}

/// Scale a raw invariant tuple into the calibrated normalization.
pub fn apply<S: Scalar>(raw: [S; 13]) -> [S; 13] {
    let c = calibration_constants();
    let mut it = raw.into_iter().enumerate().map(|(k, v)| {
        if c[k] == 1 {
            v
        } else {
            let f = v.from_rational_like(&c[k]);
            v.mul(&f)
        }
    });
    std::array::from_fn(|_| it.next().expect("13 slots"))
}
