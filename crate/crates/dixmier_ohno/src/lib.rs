//! Dixmier–Ohno invariants of plane quartics.
//!
//! The thirteen invariants (I3, I6, I9, J9, I12, J12, I15, J15, I18, J18,
//! I21, J21, I27) of a ternary quartic are evaluated by one generic engine
//! over two coefficient rings: exact rationals and high-precision complex
//! floats. A tuple is a point of the weighted projective space with weights
//! (3, 6, 9, 9, 12, 12, 15, 15, 18, 18, 21, 21, 27); normalization,
//! weighted-projective comparison, rational recognition and the minimal
//! integral representative live in [`reduce`], discriminant factoring in
//! [`factor`].

mod calibrate;
mod poly3;
mod resultant;
mod scalar;
mod tower;

pub mod factor;
pub mod reduce;

pub use calibrate::calibration_constants;
pub use factor::{discriminant_report, DiscriminantReport, FactorPiece};
pub use reduce::{
    do_normalize, minimal_representative, rational_recognize, weighted_projective_equal,
    MinimalDOTuple, RecognizeError,
};
pub use scalar::Scalar;

use mpnum::BigComplex;
use rug::Rational;
use thiserror::Error;
use weber::ComplexQuartic;

/// Weights of the invariant slots: entry k is homogeneous of this degree in
/// the quartic coefficients.
pub const WEIGHTS: [u32; 13] = [3, 6, 9, 9, 12, 12, 15, 15, 18, 18, 21, 21, 27];

/// weight/3 per slot: the power of I3 dividing each entry in `do_normalize`,
/// and the per-prime step size in the minimal-representative reduction.
pub const WEIGHT_THIRDS: [u32; 13] = [1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 9];

/// Plane quartic with exact rational coefficients, deg-lex monomial order
/// x⁴, x³y, x³z, x²y², x²yz, x²z², xy³, xy²z, xyz², xz³, y⁴, y³z, y²z², yz³,
/// z⁴ (the same order as [`weber::QUARTIC_MONOMIALS`]).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalQuartic {
    pub coeffs: [Rational; 15],
}

impl RationalQuartic {
    pub fn from_i64(c: [i64; 15]) -> Self {
        RationalQuartic {
            coeffs: c.map(Rational::from),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }
}

/// The 13 invariants as one tuple; scalar type is `rug::Rational` for exact
/// evaluation or [`mpnum::BigComplex`] for numeric evaluation.
#[derive(Debug, Clone)]
pub struct DOTuple<S> {
    pub v: [S; 13],
}

impl DOTuple<Rational> {
    /// Embed into complex floats at the given precision (for mixed
    /// exact-vs-numeric comparisons).
    pub fn to_complex(&self, prec: u32) -> DOTuple<BigComplex> {
        DOTuple {
            v: std::array::from_fn(|k| BigComplex::with_val(prec, &self.v[k])),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DoError {
    #[error("I3 vanishes: the weighted normalization pivot is zero")]
    LeadingInvariantZero,
    #[error("I27 vanishes: the quartic is singular")]
    SingularCurve,
}

/// Exact Dixmier–Ohno invariants of a rational quartic.
pub fn exact_do(q: &RationalQuartic) -> DOTuple<Rational> {
    assert!(!q.is_zero(), "zero quartic has no invariants");
    DOTuple {
        v: calibrate::apply(tower::raw_invariants(&q.coeffs)),
    }
}

/// Numeric Dixmier–Ohno invariants of a complex quartic: the same
/// polynomials as [`exact_do`], evaluated in ball-free floating complex
/// arithmetic at the quartic's precision.
pub fn numeric_do(q: &ComplexQuartic) -> DOTuple<BigComplex> {
    DOTuple {
        v: calibrate::apply(tower::raw_invariants(&q.coeffs)),
    }
}

#[cfg(test)]
mod calibration_scan {
    use crate::factor::factor_integer;
    use crate::poly3::Poly3;
    use crate::scalar::Scalar;
    use crate::tower::raw_invariants;
    use crate::{WEIGHTS, WEIGHT_THIRDS};
    use rug::{Integer, Rational};
    use std::time::Duration;

    const X15: [i64; 15] = [1, -1, 2, 0, 2, 2, 0, -2, 4, 0, 0, -1, 3, 2, 1];
    const NAMES: [&str; 13] = [
        "I3", "I6", "I9", "J9", "I12", "J12", "I15", "J15", "I18", "J18", "I21", "J21", "I27",
    ];

    fn q(v: [i64; 15]) -> [Rational; 15] {
        v.map(Rational::from)
    }

    fn show(x: &Rational) -> String {
        if *x == 0 {
            return "0".into();
        }
        let fmt_int = |n: &Integer| -> String {
            if *n == 1 {
                return "1".into();
            }
            factor_integer(n, Duration::from_secs(2))
                .iter()
                .map(|p| {
                    let tag = if p.prime { "" } else { "?" };
                    if p.exp == 1 {
                        format!("{}{tag}", p.value)
                    } else {
                        format!("{}{tag}^{}", p.value, p.exp)
                    }
                })
                .collect::<Vec<_>>()
                .join(" * ")
        };
        let sign = if *x < 0 { "-" } else { "" };
        let (n, d) = x.clone().abs().into_numer_denom();
        if d == 1 {
            format!("{sign}{}", fmt_int(&n))
        } else {
            format!("{sign}{} / {}", fmt_int(&n), fmt_int(&d))
        }
    }

    #[test]
    #[ignore]
    fn scan() {
        let f = q(X15);
        let raw = raw_invariants(&f);

        // Degree bookkeeping: raw_k(2f) = 2^w_k raw_k(f).
        let f2: [Rational; 15] = X15.map(|c| Rational::from(2 * c));
        let raw2 = raw_invariants(&f2);
        for k in 0..13 {
            let expect = &raw[k] * Rational::from(Integer::from(1) << WEIGHTS[k]);
            assert_eq!(raw2[k], expect, "homogeneity slot {}", NAMES[k]);
        }
        println!("homogeneity: ok");

        // Unimodular invariance of every raw slot.
        let a: [[Rational; 3]; 3] = [[1, 1, 0], [0, 1, 1], [0, 0, 1]].map(|r| r.map(Rational::from));
        let b: [[Rational; 3]; 3] = [[1, 0, 0], [1, 1, 0], [1, 1, 1]].map(|r| r.map(Rational::from));
        let g = Poly3::from_coeffs(4, f.to_vec())
            .compose_linear(&a)
            .compose_linear(&b);
        let coeffs: [Rational; 15] = g.c.clone().try_into().unwrap();
        let raw_g = raw_invariants(&coeffs);
        for k in 0..13 {
            assert_eq!(raw_g[k], raw[k], "SL3 invariance slot {}", NAMES[k]);
        }
        println!("unimodular invariance: ok");

        // Discriminant sanity.
        let mut fermat = [0i64; 15];
        (fermat[0], fermat[10], fermat[14]) = (1, 1, 1);
        println!("fermat I27 = {}", show(&raw_invariants(&q(fermat))[12]));
        let mut x4 = [0i64; 15];
        x4[0] = 1;
        println!("x^4 I27 = {}", raw_invariants(&q(x4))[12]);

        for k in 0..13 {
            println!("raw {:>3} = {}", NAMES[k], show(&raw[k]));
        }
        let norm: Vec<Rational> = (0..13)
            .map(|k| Rational::from(&raw[k] / raw[0].pow_u(WEIGHT_THIRDS[k])))
            .collect();
        for k in 0..13 {
            println!("norm {:>3} = {}", NAMES[k], show(&norm[k]));
        }

        let pin2: Rational = "3967/609408".parse().unwrap();
        let pin3 = Rational::from((
            Integer::from(16435048440i64),
            Integer::from(10764582912i64),
        ));
        let pin13: Rational = "346304226226660371/1980388294678257795596288"
            .parse()
            .unwrap();
        println!("c6            = {}", show(&Rational::from(&pin2 / &norm[1])));
        println!("c9 (I9 slot)  = {}", show(&Rational::from(&pin3 / &norm[2])));
        println!("c9 (J9 slot)  = {}", show(&Rational::from(&pin3 / &norm[3])));
        println!("c27           = {}", show(&Rational::from(&pin13 / &norm[12])));
    }

    struct Curve {
        name: &'static str,
        coeffs: [i64; 15],
        i27_neg: bool,
        i27_factors: &'static [(u64, u32)],
        model_neg: bool,
        model_num: &'static [(u64, u32)],
        model_den: &'static [(u64, u32)],
    }

    const CURVES: &[Curve] = &[
        Curve {
            name: "X1",
            coeffs: [
                -4169, -956, 7440, 55770, 43486, 42796, -38748, -30668, 79352, -162240, 6095,
                19886, -89869, -1079572, -6084,
            ],
            i27_neg: true,
            i27_factors: &[(2, 57), (3, 27), (5, 12), (7, 9), (37, 14), (15187, 14)],
            model_neg: false,
            model_num: &[(13, 18)],
            model_den: &[(2, 27), (3, 27)],
        },
        Curve {
            name: "X2",
            coeffs: [
                19, 80, -54, -24, -34, 77, -88, -28, 38, 516, 30, -36, -135, 452, 4,
            ],
            i27_neg: false,
            i27_factors: &[(2, 29), (3, 35), (7, 9), (701, 14)],
            model_neg: false,
            model_num: &[],
            model_den: &[(2, 27), (3, 27)],
        },
        Curve {
            name: "X3",
            coeffs: [
                -1210961, 5202144, 408700, -2479108, 1908050, 8367272, -4393072, -6944000,
                6772756, 10594064, 4978166, -8342100, 4611839, 14080572, -1387684,
            ],
            i27_neg: false,
            i27_factors: &[(2, 29), (3, 36), (5, 36), (7, 7), (233, 14), (356399, 14)],
            model_neg: true,
            model_num: &[(31, 18)],
            model_den: &[(2, 27), (3, 18)],
        },
        Curve {
            name: "X5",
            coeffs: [
                115, -766, -1336, 1205, 5178, 4040, 8216, 1322, -9484, 1144, -8094, 9032, 9669,
                -6292, -4706,
            ],
            i27_neg: false,
            i27_factors: &[(2, 29), (3, 51), (7, 7), (37, 14), (127, 14)],
            model_neg: false,
            model_num: &[(13, 18)],
            model_den: &[(2, 27), (3, 27)],
        },
        Curve {
            name: "X6",
            coeffs: [
                1444, -3134924, 5002016, 2321857, 2257732, 1585968, -3166884, 6283512, 1014570,
                -4791852, 3312514, -7211392, 19540084, -10746888, 4167513,
            ],
            i27_neg: false,
            i27_factors: &[
                (2, 29),
                (3, 51),
                (7, 7),
                (17, 12),
                (127, 14),
                (211, 14),
                (20707, 14),
            ],
            model_neg: false,
            model_num: &[(19, 18)],
            model_den: &[(2, 27), (3, 27)],
        },
        Curve {
            name: "X7",
            coeffs: [
                -133225, -68935944, 92175713, -21721369, 2990226, 86699691, 18547032, 37568944,
                108649086, -259362054, 35272208, 266781024, 140110856, -1192622568, 173418831,
            ],
            i27_neg: true,
            i27_factors: &[
                (2, 29),
                (3, 36),
                (5, 9),
                (7, 7),
                (71, 14),
                (83, 12),
                (17665559, 14),
            ],
            model_neg: false,
            model_num: &[(7, 18), (73, 18)],
            model_den: &[(2, 27), (3, 18)],
        },
        Curve {
            name: "X8",
            coeffs: [
                11, -8, -46, 216, 306, 1636, -144, 304, 15726, 7963, -428, 6840, -32779, -16901,
                106789,
            ],
            i27_neg: false,
            i27_factors: &[(2, 43), (3, 27), (7, 15), (499, 14)],
            model_neg: false,
            model_num: &[(7, 9), (19, 18)],
            model_den: &[(2, 27), (3, 27)],
        },
        Curve {
            name: "X9",
            coeffs: [
                96128, 232804, 5588, 51333, -37020, -5791396, -108416, -49056, -6947226, -214292,
                -5880, -581812, 2438436, 1944852, 87102093,
            ],
            i27_neg: true,
            i27_factors: &[
                (2, 42),
                (3, 18),
                (5, 12),
                (7, 14),
                (79, 14),
                (233, 14),
                (857, 14),
            ],
            model_neg: false,
            model_num: &[(13, 18)],
            model_den: &[(2, 27), (3, 18)],
        },
        Curve {
            name: "X10",
            coeffs: [
                348, -832, -4, 261, -132, -1680, 224, -168, 1986, 36, 8, -236, 404, 428, 1989,
            ],
            i27_neg: true,
            i27_factors: &[(2, 42), (3, 18), (7, 14), (41, 14), (71, 14)],
            model_neg: false,
            model_num: &[],
            model_den: &[(2, 27), (3, 18)],
        },
        Curve {
            name: "X11",
            coeffs: [
                245137, 3134444, -405198, 13885332, -4713906, -6576142, 25220768, -13466052,
                -40450004, 6168379, 16002624, -12848080, -51202207, 21339374, 44888767,
            ],
            i27_neg: true,
            i27_factors: &[(2, 72), (3, 18), (7, 14), (23, 14), (47, 14), (27527, 14)],
            model_neg: false,
            model_num: &[(31, 18)],
            model_den: &[(2, 27), (3, 18)],
        },
        Curve {
            name: "X12",
            coeffs: [
                -2283766, -40282205, 65256060, 86351004, -44980176, -98227040, 34948793,
                112406040, -10691928, -811765633, -46977843, 27242836, 210065028, -159829005,
                -57425706,
            ],
            i27_neg: false,
            i27_factors: &[
                (2, 5),
                (3, 18),
                (7, 14),
                (11, 9),
                (5711, 14),
                (73064203493, 14),
            ],
            model_neg: true,
            model_num: &[],
            model_den: &[(2, 45), (3, 18)],
        },
        Curve {
            name: "X13",
            coeffs: [
                13741849, -33952358, -12314654, -79058925, 321820356, -449435767, 24161786,
                58585032, 184173924, 202615424, 10642401, 150598482, 136602159, -6607170137,
                3720024064,
            ],
            i27_neg: false,
            i27_factors: &[(2, 20), (3, 18), (11, 9), (547, 14), (11827, 14), (189169, 14)],
            model_neg: false,
            model_num: &[(11, 18), (43, 18)],
            model_den: &[(2, 36), (3, 18)],
        },
        Curve {
            name: "X14",
            coeffs: [
                727950, -1982567, -1449460, 2619975, -7272852, 12943560, 1222070, -9541020,
                -10154664, 31717821, 3907465, 7463256, 4691252, 58884154, 10671882,
            ],
            i27_neg: false,
            i27_factors: &[
                (2, 5),
                (3, 18),
                (11, 19),
                (101, 14),
                (107, 14),
                (8378707, 14),
            ],
            model_neg: false,
            model_num: &[(19, 18)],
            model_den: &[(2, 45), (3, 18)],
        },
        Curve {
            name: "X15",
            coeffs: [1, -1, 2, 0, 2, 2, 0, -2, 4, 0, 0, -1, 3, 2, 1],
            i27_neg: false,
            i27_factors: &[(2, 5), (3, 27), (19, 7)],
            model_neg: false,
            model_num: &[],
            model_den: &[(2, 45), (3, 27)],
        },
        Curve {
            name: "X16",
            coeffs: [
                66648606,
                -10422787,
                -1171743077,
                272093232,
                894539212,
                1758438152,
                -239684773,
                -3355325973,
                21854285561,
                213880974126,
                731104019,
                -6282157788,
                -38790710054,
                288506848419,
                1153356733618,
            ],
            i27_neg: false,
            i27_factors: &[
                (2, 5),
                (3, 35),
                (19, 7),
                (37, 14),
                (79, 14),
                (13373064392147, 14),
            ],
            model_neg: false,
            model_num: &[(19, 18)],
            model_den: &[(2, 45), (3, 27)],
        },
        Curve {
            name: "X17",
            coeffs: [
                3717829, -1434896, 19525079, -23623031, 55253545, 168545160, 36024736, -64558785,
                379342822, -329255097, 42096963, 115245505, -817353798, 498157725, -34967215,
            ],
            i27_neg: false,
            i27_factors: &[(2, 20), (3, 77), (19, 7), (1229, 14), (3913841117, 14)],
            model_neg: false,
            model_num: &[],
            model_den: &[(2, 36), (3, 27)],
        },
        Curve {
            name: "X18",
            coeffs: [
                3278898472,
                35774613556,
                -172165788624,
                -42633841878,
                224611458828,
                362086824567,
                6739276447,
                195387780024,
                1153791743988,
                -3461357269578,
                -18110161476,
                -549025255626,
                -482663555556,
                15534718882176,
                -61875497274721,
            ],
            i27_neg: true,
            i27_factors: &[
                (2, 32),
                (19, 7),
                (101, 14),
                (251, 14),
                (7468843725186901, 14),
            ],
            model_neg: false,
            model_num: &[(13, 18)],
            model_den: &[(2, 36)],
        },
        Curve {
            name: "X19",
            coeffs: [
                -7, -2, 16, 7, -6, -8, 10, 14, 2, -15, 1, 10, 13, 17, 14,
            ],
            i27_neg: false,
            i27_factors: &[(2, 20), (3, 27), (11, 14), (43, 7)],
            model_neg: false,
            model_num: &[],
            model_den: &[(2, 36), (3, 27)],
        },
        Curve {
            name: "X20",
            coeffs: [
                42978499, 91609890, 226411413, -152950386, 225973290, 64073952, 26287800,
                11918208, -742181730, -464894250, -29463649, 198058830, -144994689, -208213515,
                85424183,
            ],
            i27_neg: false,
            i27_factors: &[(2, 5), (67, 7), (1439, 14), (2739021126001, 14)],
            model_neg: true,
            model_num: &[],
            model_den: &[(2, 45)],
        },
    ];

    fn prime_power_product(l: &[(u64, u32)]) -> Integer {
        use rug::ops::Pow;
        let mut acc = Integer::from(1);
        for &(p, e) in l {
            acc *= Integer::from(Integer::from(p).pow(e));
        }
        acc
    }

    #[test]
    #[ignore]
    fn curves_validation() {
        use crate::reduce::minimal_representative;
        use rug::ops::Pow;
        // Universal constant: the paper's disc relation for the case-15
        // model (exactly minimal) pins disc = I27 / (2^45 3^27).
        let kconst = Integer::from(Integer::from(2).pow(45u32)) * Integer::from(3).pow(27u32);
        for c in CURVES {
            let q = crate::RationalQuartic::from_i64(c.coeffs);
            let t = crate::exact_do(&q);
            let mut i27_min = Rational::from(prime_power_product(c.i27_factors));
            if c.i27_neg {
                i27_min = -i27_min;
            }
            let mut unit = Rational::from((
                prime_power_product(c.model_num),
                prime_power_product(c.model_den),
            ));
            if c.model_neg {
                unit = -unit;
            }
            let expect_model = Rational::from(&i27_min * &unit) * Rational::from(&kconst);
            let ok1 = t.v[12] == expect_model;
            let min = minimal_representative(&t).unwrap();
            let ok2 = min.v[12] == i27_min;
            println!(
                "{:>4}: I27(model) {} ; I27^min {}",
                c.name,
                if ok1 { "ok" } else { "MISMATCH" },
                if ok2 { "ok" } else { "MISMATCH" },
            );
            if !ok1 {
                println!("      got  {}", show(&t.v[12]));
                println!("      want {}", show(&expect_model));
            }
            if !ok2 {
                println!("      got  {}", show(&Rational::from(min.v[12].clone())));
                println!("      want {}", show(&i27_min));
            }
        }
    }

    fn val_p(x: &Rational, p: u32) -> i64 {
        assert!(!x.is_zero());
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        let pp = Integer::from(p);
        let a = num.remove_factor_mut(&pp) as i64;
        let b = den.remove_factor_mut(&pp) as i64;
        a - b
    }

    #[test]
    #[ignore]
    fn valuation_dump() {
        use crate::reduce::do_normalize;
        for c in CURVES {
            let q = crate::RationalQuartic::from_i64(c.coeffs);
            let t = crate::exact_do(&q);
            let norm = do_normalize(&t).unwrap();
            let i27 = Rational::from(prime_power_product(c.i27_factors));
            for p in [2u32, 3] {
                let mut vals = Vec::new();
                let mut m = i64::MAX;
                for k in 1..13 {
                    if norm[k].is_zero() {
                        vals.push((k, i64::MAX));
                        continue;
                    }
                    let v = val_p(&norm[k], p);
                    let n = crate::WEIGHT_THIRDS[k] as i64;
                    vals.push((k, v));
                    m = m.min(v.div_euclid(n));
                }
                m = m.min(0);
                let m_pub = (val_p(&norm[12], p) - val_p(&i27, p)) / 9;
                // smallest delta_k making floor((v+delta)/n) >= m_pub
                let needs: Vec<String> = vals
                    .iter()
                    .filter(|&&(k, v)| {
                        v != i64::MAX && crate::WEIGHT_THIRDS[k] as i64 * m_pub - v > 0
                    })
                    .map(|&(k, v)| {
                        format!("{}+{}", k, crate::WEIGHT_THIRDS[k] as i64 * m_pub - v)
                    })
                    .collect();
                println!(
                    "{:>4} p={}: m_mine={} m_pub={} need[{}] v={}",
                    c.name,
                    p,
                    m,
                    m_pub,
                    needs.join(" "),
                    vals.iter()
                        .map(|&(k, v)| format!("{}:{}", k, if v == i64::MAX { 999 } else { v }))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
        }
    }

    // Universal denominators of the raw slots over integral quartics: the
    // lcm of the evaluation denominators across a sample bounds the content
    // denominator of each invariant polynomial.
    #[test]
    #[ignore]
    fn denominators() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut lcms: [Integer; 13] = std::array::from_fn(|_| Integer::from(1));
        for _ in 0..80 {
            let c: [Rational; 15] =
                std::array::from_fn(|_| Rational::from(rng.random_range(-9i64..=9)));
            if c.iter().all(|x| *x == 0) {
                continue;
            }
            let raw = raw_invariants(&c);
            for k in 0..13 {
                lcms[k].lcm_mut(raw[k].denom());
            }
        }
        for k in 0..13 {
            println!(
                "denominator {:>3} = {}",
                NAMES[k],
                show(&Rational::from(lcms[k].clone()))
            );
        }
    }
}
