use crate::poly3::{adj3, det3, hessian, mono_exponents, quad_matrix, trace_prod, Poly3};
use crate::resultant::discriminant_resultant;
use crate::scalar::Scalar;

/// The two classical contravariants of a ternary quartic, of class 4
/// (degree 2 in the coefficients) and class 6 (degree 3).
///
/// Restrict f to the line with dual coordinates u, parametrized through the
/// spanning points (0, u3, -u2) and (-u3, 0, u1); the quadratic and cubic
/// invariants of the resulting binary quartic are class-8 and class-12
/// polynomials in u picking up the parametrization determinant u3 to the
/// 4th and 6th power, which divides out exactly as a monomial shift.
pub fn sigma_psi<S: Scalar>(f: &Poly3<S>) -> (Poly3<S>, Poly3<S>) {
    assert_eq!(f.deg, 4);
    let proto = f.proto();
    // g[r] = coefficient of s^(4-r) t^r of f(s*a + t*b), a quartic in u.
    let mut g: Vec<Poly3<S>> = (0..5).map(|_| Poly3::zero(4, proto)).collect();
    let binom = [[1i64, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 2, 1, 0, 0], [1, 3, 3, 1, 0], [1, 4, 6, 4, 1]];
    for (idx, c) in f.c.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, _j, k) = mono_exponents(4, idx);
        // x -> -u3 t, y -> u3 s, z -> -u2 s + u1 t:
        // c * (-1)^(i+k-r) C(k,r) u1^r u2^(k-r) u3^(4-k) s^(j+k-r) t^(i+r)
        for r in 0..=k {
            let sgn = if (i + k - r) % 2 == 1 { -1i64 } else { 1 };
            let coef = c.mul_i64(sgn * binom[k][r]);
            let m = crate::poly3::mono_index(4, r, k - r);
            let t_deg = i + r;
            g[t_deg].c[m] = g[t_deg].c[m].add(&coef);
        }
    }
    // Integral forms of the quadratic and cubic invariants of
    // a0 s^4 + a1 s^3 t + a2 s^2 t^2 + a3 s t^3 + a4 t^4.
    let s_big = g[0]
        .mul(&g[4])
        .scale(&proto.from_i64_like(12))
        .sub(&g[1].mul(&g[3]).scale(&proto.from_i64_like(3)))
        .add(&g[2].mul(&g[2]));
    let t_big = g[0].mul(&g[2]).mul(&g[4]).scale(&proto.from_i64_like(72))
        .sub(&g[0].mul(&g[3]).mul(&g[3]).scale(&proto.from_i64_like(27)))
        .sub(&g[1].mul(&g[1]).mul(&g[4]).scale(&proto.from_i64_like(27)))
        .add(&g[1].mul(&g[2]).mul(&g[3]).scale(&proto.from_i64_like(9)))
        .sub(&g[2].mul(&g[2]).mul(&g[2]).scale(&proto.from_i64_like(2)));
    (s_big.shift_div_z(4), t_big.shift_div_z(6))
}

pub struct CovariantTower<S: Scalar> {
    pub he: Poly3<S>,
    pub sigma: Poly3<S>,
    pub psi: Poly3<S>,
    pub rho: Poly3<S>,
    pub tau: Poly3<S>,
    pub xi: Poly3<S>,
    pub eta: Poly3<S>,
    pub nu: Poly3<S>,
}

pub fn covariant_tower<S: Scalar>(f: &Poly3<S>) -> CovariantTower<S> {
    let he = hessian(f).scale_div_i64(1728);
    let (sigma, psi) = sigma_psi(f);
    let rho = Poly3::diff_op(f, &psi).scale_div_i64(144);
    let tau = Poly3::diff_op(&rho, f).scale_div_i64(144);
    let xi = Poly3::diff_op(&sigma, &he).scale_div_i64(72);
    let eta = Poly3::diff_op(&xi, &sigma).scale_div_i64(12);
    let rho_he = Poly3::diff_op(&rho, &he);
    let nu = Poly3::diff_op(&eta, &rho_he).scale_div_i64(8);
    CovariantTower {
        he,
        sigma,
        psi,
        rho,
        tau,
        xi,
        eta,
        nu,
    }
}

fn scalar_of<S: Scalar>(p: &Poly3<S>) -> S {
    assert_eq!(p.deg, 0);
    p.c[0].clone()
}

/// Catalecticant: determinant of the 6x6 pairing of fourth partials over
/// the quadratic monomials; degree 6 in the coefficients.
fn catalecticant<S: Scalar>(f: &Poly3<S>) -> S {
    assert_eq!(f.deg, 4);
    let idx2: Vec<(usize, usize, usize)> = (0..6).map(|t| mono_exponents(2, t)).collect();
    let fact = [1i64, 1, 2, 6, 24];
    let m: Vec<Vec<S>> = idx2
        .iter()
        .map(|a| {
            idx2.iter()
                .map(|b| {
                    let (i, j, k) = (a.0 + b.0, a.1 + b.1, a.2 + b.2);
                    f.c[crate::poly3::mono_index(4, i, j)].mul_i64(fact[i] * fact[j] * fact[k])
                })
                .collect()
        })
        .collect();
    S::det_dense(m)
}

fn j11<S: Scalar>(cov: &Poly3<S>, con: &Poly3<S>) -> S {
    trace_prod(&quad_matrix(cov), &quad_matrix(con))
}

fn j22<S: Scalar>(cov: &Poly3<S>, con: &Poly3<S>) -> S {
    trace_prod(&adj3(&quad_matrix(cov)), &adj3(&quad_matrix(con)))
}

fn j30<S: Scalar>(cov: &Poly3<S>) -> S {
    det3(&quad_matrix(cov))
}

fn j03<S: Scalar>(con: &Poly3<S>) -> S {
    det3(&quad_matrix(con))
}

/// The 13 invariants in their internal normalization, slot order
/// (I3, I6, I9, J9, I12, J12, I15, J15, I18, J18, I21, J21, I27).
/// The published per-slot scaling is applied separately (see `calibrate`).
pub fn raw_invariants<S: Scalar>(coeffs: &[S; 15]) -> [S; 13] {
    let f = Poly3::from_coeffs(4, coeffs.to_vec());
    let t = covariant_tower(&f);
    let i3 = scalar_of(&Poly3::diff_op(&t.sigma, &f));
    let i6 = catalecticant(&f);
    let i9 = j11(&t.tau, &t.rho);
    let j9 = j11(&t.xi, &t.rho);
    let i12 = j03(&t.rho);
    let j12 = j11(&t.tau, &t.eta);
    let i15 = j30(&t.tau);
    let j15 = j30(&t.xi);
    let i18 = j22(&t.tau, &t.rho);
    let j18 = j22(&t.xi, &t.rho);
    let i21 = j03(&t.eta);
    let j21 = j11(&t.nu, &t.eta);
    let i27 = discriminant_resultant(&f);
    [i3, i6, i9, j9, i12, j12, i15, j15, i18, j18, i21, j21, i27]
}
