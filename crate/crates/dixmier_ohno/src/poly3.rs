use crate::scalar::Scalar;

/// Dense homogeneous polynomial in three variables, coefficients in `S`.
///
/// Monomials of degree d are ordered deg-lex with x > y > z, matching the
/// quartic coefficient order used across the workspace: for exponents
/// (i, j, k), i + j + k = d, the index is (d−i)(d−i+1)/2 + (d−i−j).
#[derive(Clone)]
pub struct Poly3<S> {
    pub deg: usize,
    pub c: Vec<S>,
}

pub fn n_monomials(deg: usize) -> usize {
    (deg + 1) * (deg + 2) / 2
}

pub fn mono_index(deg: usize, i: usize, j: usize) -> usize {
    let r = deg - i;
    r * (r + 1) / 2 + (r - j)
}

/// Exponents (i, j, k) of the monomial at `idx` in degree `deg`.
pub fn mono_exponents(deg: usize, idx: usize) -> (usize, usize, usize) {
    let mut r = 0usize;
    while (r + 1) * (r + 2) / 2 <= idx {
        r += 1;
    }
    let off = idx - r * (r + 1) / 2;
    let i = deg - r;
    let j = r - off;
    (i, j, deg - i - j)
}

impl<S: Scalar> Poly3<S> {
    pub fn zero(deg: usize, proto: &S) -> Self {
        Poly3 {
            deg,
            c: vec![proto.zero_like(); n_monomials(deg)],
        }
    }

    pub fn from_coeffs(deg: usize, c: Vec<S>) -> Self {
        assert_eq!(c.len(), n_monomials(deg));
        Poly3 { deg, c }
    }

    pub fn proto(&self) -> &S {
        &self.c[0]
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.deg, o.deg);
        Poly3 {
            deg: self.deg,
            c: self
                .c
                .iter()
                .zip(o.c.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.deg, o.deg);
        Poly3 {
            deg: self.deg,
            c: self
                .c
                .iter()
                .zip(o.c.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Poly3 {
            deg: self.deg,
            c: self.c.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn scale_div_i64(&self, n: i64) -> Self {
        Poly3 {
            deg: self.deg,
            c: self.c.iter().map(|a| a.div_i64(n)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let deg = self.deg + o.deg;
        let mut out = Poly3::zero(deg, self.proto());
        for (ia, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i1, j1, _k1) = mono_exponents(self.deg, ia);
            for (ib, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (i2, j2, _k2) = mono_exponents(o.deg, ib);
                let idx = mono_index(deg, i1 + i2, j1 + j2);
                out.c[idx] = out.c[idx].add(&a.mul(b));
            }
        }
        out
    }

    /// Partial derivative along axis 0 = x, 1 = y, 2 = z.
    pub fn deriv(&self, axis: usize) -> Self {
        assert!(self.deg >= 1);
        let deg = self.deg - 1;
        let mut out = Poly3::zero(deg, self.proto());
        for (idx, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i, j, k) = mono_exponents(self.deg, idx);
            let e = [i, j, k][axis];
            if e == 0 {
                continue;
            }
            let (ni, nj) = match axis {
                0 => (i - 1, j),
                1 => (i, j - 1),
                _ => (i, j),
            };
            let t = mono_index(deg, ni, nj);
            out.c[t] = out.c[t].add(&a.mul_i64(e as i64));
        }
        out
    }

    /// Apply the differential operator obtained from `op` by substituting
    /// each variable with the corresponding partial derivative; `op.deg`
    /// must not exceed `self.deg`.
    pub fn diff_op(op: &Self, target: &Self) -> Self {
        assert!(op.deg <= target.deg);
        let mut out = Poly3::zero(target.deg - op.deg, target.proto());
        for (idx, a) in op.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i, j, k) = mono_exponents(op.deg, idx);
            let mut d = target.clone();
            for _ in 0..i {
                d = d.deriv(0);
            }
            for _ in 0..j {
                d = d.deriv(1);
            }
            for _ in 0..k {
                d = d.deriv(2);
            }
            out = out.add(&d.scale(a));
        }
        out
    }

    /// Substitute x_i -> sum_j m[i][j] x_j.
    pub fn compose_linear(&self, m: &[[S; 3]; 3]) -> Self {
        let proto = self.proto();
        let lin: Vec<Poly3<S>> = (0..3)
            .map(|i| Poly3::from_coeffs(1, vec![m[i][0].clone(), m[i][1].clone(), m[i][2].clone()]))
            .collect();
        let mut out = Poly3::zero(self.deg, proto);
        for (idx, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (i, j, k) = mono_exponents(self.deg, idx);
            let mut term = Poly3::from_coeffs(0, vec![a.clone()]);
            for _ in 0..i {
                term = term.mul(&lin[0]);
            }
            for _ in 0..j {
                term = term.mul(&lin[1]);
            }
            for _ in 0..k {
                term = term.mul(&lin[2]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by z^e: shifts each monomial's z-exponent down by e.
    /// Monomials with z-exponent < e must be exactly zero in exact
    /// arithmetic; in floating arithmetic they are evaluation noise and are
    /// dropped.
    pub fn shift_div_z(&self, e: usize) -> Self {
        assert!(self.deg >= e);
        let deg = self.deg - e;
        let mut out = Poly3::zero(deg, self.proto());
        for (idx, a) in self.c.iter().enumerate() {
            let (i, j, k) = mono_exponents(self.deg, idx);
            if k < e {
                debug_assert!(!S::IS_EXACT || a.is_zero(), "inexact division by z^{e}");
                continue;
            }
            out.c[mono_index(deg, i, j)] = a.clone();
        }
        out
    }
}

/// 3x3 symmetric matrix of a quadratic form (degree-2 Poly3).
pub fn quad_matrix<S: Scalar>(q: &Poly3<S>) -> [[S; 3]; 3] {
    assert_eq!(q.deg, 2);
    let h = |idx: usize| q.c[idx].div_i64(2);
    [
        [q.c[0].clone(), h(1), h(2)],
        [h(1), q.c[3].clone(), h(4)],
        [h(2), h(4), q.c[5].clone()],
    ]
}

pub fn det3<S: Scalar>(m: &[[S; 3]; 3]) -> S {
    let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    t1.sub(&t2).add(&t3)
}

pub fn adj3<S: Scalar>(m: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    let co = |r1: usize, c1: usize, r2: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
    };
    // adj[i][j] = cofactor C[j][i]; for symmetric input the result is
    // symmetric, so the transpose is immaterial.
    [
        [co(1, 1, 2, 2), co(0, 2, 2, 1), co(0, 1, 1, 2)],
        [co(1, 2, 2, 0), co(0, 0, 2, 2), co(0, 2, 1, 0)],
        [co(1, 0, 2, 1), co(0, 1, 2, 0), co(0, 0, 1, 1)],
    ]
}

pub fn trace_prod<S: Scalar>(a: &[[S; 3]; 3], b: &[[S; 3]; 3]) -> S {
    let mut acc = a[0][0].zero_like();
    for i in 0..3 {
        for j in 0..3 {
            acc = acc.add(&a[i][j].mul(&b[j][i]));
        }
    }
    acc
}

/// Determinant of the 3x3 matrix of second partials.
pub fn hessian<S: Scalar>(f: &Poly3<S>) -> Poly3<S> {
    let d: Vec<Poly3<S>> = (0..3).map(|a| f.deriv(a)).collect();
    let h: Vec<Vec<Poly3<S>>> = (0..3)
        .map(|a| (0..3).map(|b| d[a].deriv(b)).collect())
        .collect();
    let m00 = h[1][1].mul(&h[2][2]).sub(&h[1][2].mul(&h[2][1]));
    let m01 = h[1][0].mul(&h[2][2]).sub(&h[1][2].mul(&h[2][0]));
    let m02 = h[1][0].mul(&h[2][1]).sub(&h[1][1].mul(&h[2][0]));
    h[0][0]
        .mul(&m00)
        .sub(&h[0][1].mul(&m01))
        .add(&h[0][2].mul(&m02))
}
