use crate::poly3::{mono_exponents, mono_index, n_monomials, Poly3};
use crate::scalar::Scalar;

/// Degree-27 discriminant of a ternary quartic: the Macaulay resultant of
/// its three partial derivatives (three ternary cubics).
///
/// At the critical degree 7 the Macaulay matrix is 36x36, one row per
/// degree-7 monomial m: the coefficient vector of (m/x^3)*f_x when x^3 | m,
/// else (m/y^3)*f_y when y^3 | m, else (m/z^3)*f_z. Its determinant equals
/// the resultant times the 9x9 minor taken on the monomials divisible by
/// two of x^3, y^3, z^3 (normalized so Res(x^3, y^3, z^3) = 1). The
/// resultant is invariant under unimodular substitutions, which gives a
/// retry path whenever the minor vanishes.
pub fn discriminant_resultant<S: Scalar>(f: &Poly3<S>) -> S {
    assert_eq!(f.deg, 4);
    let proto = f.proto().clone();
    let mut state = 0x9e3779b97f4a7c15u64;
    for attempt in 0..12 {
        let g = if attempt == 0 {
            f.clone()
        } else {
            f.compose_linear(&random_unimodular(&mut state, &proto))
        };
        if let Some(v) = try_resultant(&g) {
            return v;
        }
    }
    // The minor vanished for a dozen unrelated coordinate frames, which
    // only happens for heavily degenerate quartics; those are singular.
    proto.zero_like()
}

fn try_resultant<S: Scalar>(f: &Poly3<S>) -> Option<S> {
    let d: Vec<Poly3<S>> = (0..3).map(|a| f.deriv(a)).collect();
    let cols = n_monomials(7);
    let proto = f.proto();
    let mut m: Vec<Vec<S>> = Vec::with_capacity(cols);
    let mut minor_idx: Vec<usize> = Vec::new();
    for row in 0..cols {
        let (i, j, k) = mono_exponents(7, row);
        let (which, si, sj) = if i >= 3 {
            (0, i - 3, j)
        } else if j >= 3 {
            (1, i, j - 3)
        } else {
            (2, i, j)
        };
        if (i >= 3) as u8 + (j >= 3) as u8 + (k >= 3) as u8 >= 2 {
            minor_idx.push(row);
        }
        let mut r = vec![proto.zero_like(); cols];
        for (ci, c) in d[which].c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b, _) = mono_exponents(3, ci);
            r[mono_index(7, a + si, b + sj)] = c.clone();
        }
        m.push(r);
    }
    debug_assert_eq!(minor_idx.len(), 9);
    let m9: Vec<Vec<S>> = minor_idx
        .iter()
        .map(|&r| minor_idx.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let den = S::det_dense(m9);
    if den.is_zero() {
        return None;
    }
    let num = S::det_dense(m);
    Some(num.div(&den))
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Product of four elementary shears: determinant exactly 1, small entries.
fn random_unimodular<S: Scalar>(state: &mut u64, proto: &S) -> [[S; 3]; 3] {
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..4 {
        let r = xorshift(state);
        let i = (r % 3) as usize;
        let j = (i + 1 + ((r >> 8) % 2) as usize) % 3;
        let t = [-2i64, -1, 1, 2][((r >> 16) % 4) as usize];
        // u := u * E_ij(t), i.e. column j += t * column i.
        for row in 0..3 {
            u[row][j] += t * u[row][i];
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| proto.from_i64_like(u[i][j])))
}
