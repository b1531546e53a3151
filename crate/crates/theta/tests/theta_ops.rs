use mpnum::matrix::CMatrix;
use mpnum::{cabs, cplx, pi, two_pow, BigComplex, BigFloat};
use siegel::{FMat3, RiemannMatrix};
use theta::*;

const PREC: u32 = 333;

fn fmat(prec: u32, rows: [[f64; 3]; 3]) -> FMat3 {
    FMat3::from_fn(|i, j| BigFloat::with_val(prec, rows[i][j]))
}

/// τ from f64 real and imaginary parts.
fn rm(prec: u32, re: [[f64; 3]; 3], im: [[f64; 3]; 3]) -> RiemannMatrix {
    let m = CMatrix::from_fn(3, 3, |i, j| cplx(prec, re[i][j], im[i][j]));
    RiemannMatrix::new(m, prec).expect("valid riemann matrix")
}

fn zero_re() -> [[f64; 3]; 3] {
    [[0.0; 3]; 3]
}

/// A generic reduced test matrix: diagonal-dominant Im, small Re.
fn tau_generic(prec: u32) -> RiemannMatrix {
    rm(
        prec,
        [[0.12, 0.05, -0.08], [0.05, 0.21, 0.04], [-0.08, 0.04, -0.16]],
        [[1.1, 0.15, -0.1], [0.15, 1.4, 0.2], [-0.1, 0.2, 1.9]],
    )
}

fn tau_diag_perturbed(prec: u32) -> RiemannMatrix {
    rm(
        prec,
        [[0.1, 0.05, -0.04], [0.05, -0.2, 0.08], [-0.04, 0.08, 0.15]],
        [[1.0, 0.0, 0.0], [0.0, 1.1, 0.0], [0.0, 0.0, 1.3]],
    )
}

fn assert_small(x: &BigFloat, bound_exp: i32) {
    assert!(
        *x <= two_pow(bound_exp),
        "value {:e} exceeds 2^{}",
        x.to_f64(),
        bound_exp
    );
}

fn cdiff(a: &BigComplex, b: &BigComplex) -> BigFloat {
    cabs(&BigComplex::with_val(64, a - b), 64)
}

// ---------------------------------------------------------------- indexing

#[test]
fn characteristic_indexing_examples() {
    assert_eq!(theta_index([0, 0, 0], [0, 0, 0]), 0);
    assert_eq!(theta_index([0, 0, 0], [1, 0, 0]), 1);
    // ϑ₃₃ of the Weber moduli: 33 = 1 + 8·4, so b = (½,0,0), a = (0,0,½).
    assert_eq!(theta_index([0, 0, 1], [1, 0, 0]), 33);
    let c = index_to_char(33);
    assert_eq!(c.a, [0, 0, 1]);
    assert_eq!(c.b, [1, 0, 0]);
    assert!(c.is_even());
}

#[test]
fn characteristic_indexing_round_trip_and_parity_split() {
    let mut evens = 0;
    for i in 0..64 {
        let c = index_to_char(i);
        assert_eq!(c.index(), i);
        assert_eq!(c.is_even(), index_is_even(i));
        if c.is_even() {
            evens += 1;
        }
    }
    assert_eq!(evens, 36);
    // Fundamental characteristics (a = 0) are the indices 0..=7, all even.
    for i in 0..8 {
        assert_eq!(index_to_char(i).a, [0, 0, 0]);
        assert!(index_is_even(i));
    }
}

// ------------------------------------------------------------- truncation

#[test]
fn truncation_bound_identity_and_scaling() {
    let y = fmat(PREC, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    assert_eq!(truncation_bound(&y, 333).unwrap(), 9);
    // c = max(c1, Y11/100) = 1 here.
    let c = theta_c_constant(&y, 96);
    assert!((c.to_f64() - 1.0).abs() < 1e-20);
    // P quadrupled doubles B up to rounding.
    let b1 = truncation_bound(&y, 1000).unwrap();
    let b4 = truncation_bound(&y, 4000).unwrap();
    assert!(b4 <= 2 * b1 && b4 >= 2 * b1 - 2, "B(4P)={b4} vs 2B(P)={}", 2 * b1);
}

#[test]
fn truncation_bound_c_floor_on_reduced_forms() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let floor = BigFloat::with_val(64, 0.0085f64);
    for _ in 0..100 {
        // Random SPD form, then Minkowski-reduce it.
        let a: [[f64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-2.0..2.0)));
        let spd = FMat3::from_fn(|i, j| {
            let mut acc = BigFloat::with_val(PREC, 0);
            for k in 0..3 {
                acc += BigFloat::with_val(PREC, a[k][i] * a[k][j]);
            }
            acc + BigFloat::with_val(PREC, if i == j { 0.1 } else { 0.0 })
        });
        let (red, _) = siegel::minkowski_reduce(&spd, PREC).unwrap();
        let c = theta_c_constant(&red, 96);
        assert!(c >= floor, "c = {} below the universal floor", c.to_f64());
        truncation_bound(&red, 512).unwrap();
    }
}

#[test]
fn truncation_bound_rejects_unreduced() {
    // Violates Y11 <= Y22.
    let y = fmat(PREC, [[3.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 5.0]]);
    assert!(matches!(truncation_bound(&y, 256), Err(ThetaError::NotReduced)));
}

// ------------------------------------------------------------------ naive

/// Independent 1-dimensional oracle: Σ_n s^n e^{−π n² t} with s = ±1.
fn theta_1d(t: f64, alternating: bool, prec: u32) -> BigFloat {
    let tb = BigFloat::with_val(prec, t);
    let pi = pi(prec);
    let mut acc = BigFloat::with_val(prec, 1);
    for n in 1..200i64 {
        let e = BigFloat::with_val(prec, (-(n * n)) * &pi) * &tb;
        let term = e.exp();
        let two_term = BigFloat::with_val(prec, &term * 2u32);
        if alternating && n % 2 == 1 {
            acc -= two_term;
        } else {
            acc += two_term;
        }
    }
    acc
}

#[test]
fn naive_matches_1d_oracle_at_i_identity() {
    let tau = rm(PREC, zero_re(), [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    let fund = theta_naive_fundamental(&tau, PREC).unwrap();
    let t0 = theta_1d(1.0, false, PREC + 16);
    let cube = BigFloat::with_val(PREC + 16, t0.square_ref()) * &t0;
    // ϑ₀(i·I₃) = θ₁d(i)³ ≈ 1.2823631…
    assert!((cube.to_f64() - 1.2823631158594562).abs() < 1e-12);
    let diff = BigFloat::with_val(64, fund[0].real() - &cube).abs();
    assert_small(&diff, -(PREC as i32) + 8);
    assert_small(&BigFloat::with_val(64, fund[0].imag().abs_ref()), -(PREC as i32) + 8);
    // θ₁d(i) itself, spot value from the independent sum.
    assert!((t0.to_f64() - 1.08643481121).abs() < 1e-10);
}

#[test]
fn naive_factorizes_on_diagonal_matrices() {
    let ts = [1.0, 1.3, 1.7];
    let tau = rm(
        PREC,
        zero_re(),
        [[ts[0], 0.0, 0.0], [0.0, ts[1], 0.0], [0.0, 0.0, ts[2]]],
    );
    let fund = theta_naive_fundamental(&tau, PREC).unwrap();
    for bb in 0..8usize {
        let mut want = BigFloat::with_val(PREC + 16, 1);
        for (k, &t) in ts.iter().enumerate() {
            want *= theta_1d(t, (bb >> k) & 1 == 1, PREC + 16);
        }
        let diff = BigFloat::with_val(64, fund[bb].real() - &want).abs();
        assert_small(&diff, -(PREC as i32) + 8);
        assert_small(&BigFloat::with_val(64, fund[bb].imag().abs_ref()), -(PREC as i32) + 8);
    }
}

#[test]
fn naive_truncation_stability_under_refinement() {
    // |S_B − ϑ| ≤ 2^(−P) certified; S_B vs the much larger box at 4P agrees.
    for tau_f in [tau_generic, tau_diag_perturbed] {
        let coarse = theta_naive_fundamental(&tau_f(300), 256).unwrap();
        let fine = theta_naive_fundamental(&tau_f(1100), 1024).unwrap();
        for b in 0..8 {
            assert_small(&cdiff(&coarse[b], &fine[b]), -254);
        }
    }
}

#[test]
fn naive_rejects_unreduced_input() {
    // Im not Minkowski-reduced (decreasing diagonal).
    let bad = rm(PREC, zero_re(), [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.5]]);
    assert!(matches!(theta_naive_fundamental(&bad, 128), Err(ThetaError::NotReduced)));
    // Re too large.
    let bad2 = rm(
        PREC,
        [[0.9, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    );
    assert!(matches!(theta_naive_fundamental(&bad2, 128), Err(ThetaError::NotReduced)));
    assert!(matches!(theta_naive_all(&bad2, 128), Err(ThetaError::NotReduced)));
}

#[test]
fn naive_all64_parity_vanishing_and_block_consistency() {
    let tau = tau_generic(520);
    let all = theta_naive_all(&tau, 512).unwrap();
    let fund = theta_naive_fundamental(&tau, 512).unwrap();
    for i in 0..64 {
        if index_is_even(i) {
            assert!(
                cabs(&all[i], 64) > two_pow(-40),
                "even theta {i} unexpectedly tiny"
            );
        } else {
            assert_small(&cabs(&all[i], 64), -500);
        }
    }
    for b in 0..8 {
        assert_small(&cdiff(&all[b], &fund[b]), -500);
    }
}

// ------------------------------------------------------------ duplication

#[test]
fn duplication_consistent_with_direct_evaluation_all_64() {
    let p: u32 = 400;
    let tau = tau_generic(p + 60);
    let half = tau.halve();
    let fund_half = theta_naive_fundamental(&half, p + 40).unwrap();
    let squares = duplication_all_squares(&fund_half);
    let direct = theta_naive_all(&tau, p + 40).unwrap();
    for i in 0..64 {
        let want = BigComplex::with_val(p + 40, direct[i].square_ref());
        assert_small(&cdiff(&squares[i], &want), -(p as i32));
    }
}

#[test]
fn duplication_collapses_on_constant_input() {
    let x = cplx(PREC, 0.83, 0.21);
    let fund: [BigComplex; 8] = std::array::from_fn(|_| x.clone());
    let out = duplication_all_squares(&fund);
    let want = BigComplex::with_val(PREC, x.square_ref());
    assert_small(&cdiff(&out[0], &want), -(PREC as i32) + 8);
}

#[test]
fn duplication_odd_entries_vanish() {
    let tau = rm(400, zero_re(), [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    let fund_half = theta_naive_fundamental(&tau.halve(), 380).unwrap();
    let squares = duplication_all_squares(&fund_half);
    for i in 0..64 {
        if !index_is_even(i) {
            assert_small(&cabs(&squares[i], 64), -360);
        }
    }
}

// ------------------------------------------------------- sign resolution

#[test]
fn resolve_round_trips_naive_squares() {
    let p: u32 = 500;
    let tau = tau_generic(p);
    let direct = theta_naive_all(&tau, p).unwrap();
    let squares: [BigComplex; 64] =
        std::array::from_fn(|i| BigComplex::with_val(p + 16, direct[i].square_ref()));
    let tv = resolve_square_roots(&squares, &tau, 213).unwrap();
    for i in 0..64 {
        assert_small(&cdiff(&tv.values[i], &direct[i]), -(p as i32) + 20);
    }
    // Odd entries come back as exact zeros.
    for i in 0..64 {
        if !index_is_even(i) {
            assert!(tv.values[i].is_zero());
        }
    }
}

#[test]
fn resolve_flags_unusable_hints() {
    let p: u32 = 300;
    let tau = tau_generic(p);
    let direct = theta_naive_all(&tau, p).unwrap();
    let squares: [BigComplex; 64] =
        std::array::from_fn(|i| BigComplex::with_val(p, direct[i].square_ref()));
    // At 8 hint bits the separation test cannot beat the hint error bound.
    assert!(matches!(
        resolve_square_roots(&squares, &tau, 8),
        Err(ThetaError::AmbiguousSign)
    ));
}
