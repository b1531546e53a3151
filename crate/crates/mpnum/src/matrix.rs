//! Small dense complex matrices (nothing beyond 8×8 is ever needed here).

use crate::{cabs, czero, BigComplex, BigFloat, MpError};
use rug::ops::Pow;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigComplex>,
}

impl CMatrix {
    pub fn zero(rows: usize, cols: usize, prec: u32) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![czero(prec); rows * cols],
        }
    }

    pub fn identity(n: usize, prec: u32) -> Self {
        let mut m = Self::zero(n, n, prec);
        for i in 0..n {
            m[(i, i)] = BigComplex::with_val(prec, (1, 0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigComplex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Highest precision among entries; used as the default output precision.
    pub fn prec(&self) -> u32 {
        self.data
            .iter()
            .map(|z| z.prec().0.max(z.prec().1))
            .max()
            .unwrap_or(53)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &CMatrix, prec: u32) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        CMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = czero(prec);
            for k in 0..self.cols {
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }

    pub fn add(&self, other: &CMatrix, prec: u32) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigComplex::with_val(prec, &self[(i, j)] + &other[(i, j)])
        })
    }

    pub fn sub(&self, other: &CMatrix, prec: u32) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigComplex::with_val(prec, &self[(i, j)] - &other[(i, j)])
        })
    }

    pub fn scale(&self, s: &BigComplex, prec: u32) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigComplex::with_val(prec, &self[(i, j)] * s)
        })
    }

    /// Max-abs-entry norm ‖·‖∞ (entrywise).
    pub fn max_norm(&self, prec: u32) -> BigFloat {
        let mut best = BigFloat::with_val(prec, 0);
        for z in &self.data {
            let a = cabs(z, prec);
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Real part as a new matrix (imaginary parts zeroed).
    pub fn real_part(&self, prec: u32) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigComplex::with_val(prec, (self[(i, j)].real(), &BigFloat::with_val(prec, 0)))
        })
    }

    pub fn imag_part(&self, prec: u32) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            BigComplex::with_val(prec, (self[(i, j)].imag(), &BigFloat::with_val(prec, 0)))
        })
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = BigComplex;
    fn index(&self, (i, j): (usize, usize)) -> &BigComplex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigComplex {
        &mut self.data[i * self.cols + j]
    }
}

fn det3(m: &CMatrix, prec: u32) -> BigComplex {
    let t = |a: usize, b: usize, c: usize, d: usize| -> BigComplex {
        BigComplex::with_val(prec, &m[(a, b)] * &m[(c, d)])
    };
    let m00 = BigComplex::with_val(prec, t(1, 1, 2, 2) - t(1, 2, 2, 1));
    let m01 = BigComplex::with_val(prec, t(1, 0, 2, 2) - t(1, 2, 2, 0));
    let m02 = BigComplex::with_val(prec, t(1, 0, 2, 1) - t(1, 1, 2, 0));
    let mut det = BigComplex::with_val(prec, &m[(0, 0)] * &m00);
    det -= &m[(0, 1)] * &m01;
    det += &m[(0, 2)] * &m02;
    det
}

/// Inverse of a 3×3 complex matrix by the adjugate formula.
///
/// Errors with `SingularMatrix` when |det| ≤ 2^(−prec/2)·(scale)³ where
/// scale is the largest row ∞-norm, i.e. the determinant underflows
/// relative to the matrix size.
pub fn mat3_inverse(m: &CMatrix, prec: u32) -> Result<CMatrix, MpError> {
    assert_eq!((m.rows, m.cols), (3, 3), "mat3_inverse wants 3×3");
    let det = det3(m, prec);

    let mut scale = BigFloat::with_val(prec, 0);
    for i in 0..3 {
        let mut row = BigFloat::with_val(prec, 0);
        for j in 0..3 {
            row += cabs(&m[(i, j)], prec);
        }
        if row > scale {
            scale = row;
        }
    }
    let threshold = BigFloat::with_val(prec, scale.clone().pow(3u32)) * crate::two_pow(-((prec / 2) as i32));
    if cabs(&det, prec) <= threshold {
        return Err(MpError::SingularMatrix);
    }

    // adjugate / det
    let co = |r0: usize, c0: usize, r1: usize, c1: usize| -> BigComplex {
        let a = BigComplex::with_val(prec, &m[(r0, c0)] * &m[(r1, c1)]);
        let b = BigComplex::with_val(prec, &m[(r0, c1)] * &m[(r1, c0)]);
        BigComplex::with_val(prec, a - b)
    };
    let rows = [0usize, 1, 2];
    let mut inv = CMatrix::zero(3, 3, prec);
    for i in 0..3 {
        for j in 0..3 {
            let [r0, r1] = minor_of(rows, j);
            let [c0, c1] = minor_of(rows, i);
            let mut cof = co(r0, c0, r1, c1);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[(i, j)] = BigComplex::with_val(prec, cof / &det);
        }
    }
    Ok(inv)
}

fn minor_of(all: [usize; 3], skip: usize) -> [usize; 2] {
    let mut out = [0usize; 2];
    let mut k = 0;
    for v in all {
        if v != skip {
            out[k] = v;
            k += 1;
        }
    }
    out
}
