//! Integer symplectic matrices for the standard form Ω₃ = (0 I; −I 0) and
//! their action on ℋ₃.

use crate::{RiemannMatrix, SiegelError};
use mpnum::matrix::mat3_inverse;
use mpnum::{BigComplex, BigInt, CMatrix};

/// Element of Sp₆(ℤ) in block form (A B; C D), each block 3×3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    pub m: Vec<Vec<BigInt>>,
}

fn zero6() -> Vec<Vec<BigInt>> {
    (0..6).map(|_| (0..6).map(|_| BigInt::new()).collect()).collect()
}

impl SymplecticMatrix {
    pub fn identity() -> Self {
        let mut m = zero6();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = BigInt::from(1);
        }
        SymplecticMatrix { m }
    }

    /// Builds from i64 entries and checks ᵗM·Ω₃·M = Ω₃ exactly.
    pub fn from_blocks(a: [[i64; 3]; 3], b: [[i64; 3]; 3], c: [[i64; 3]; 3], d: [[i64; 3]; 3]) -> Result<Self, SiegelError> {
        let mut m = zero6();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = BigInt::from(a[i][j]);
                m[i][j + 3] = BigInt::from(b[i][j]);
                m[i + 3][j] = BigInt::from(c[i][j]);
                m[i + 3][j + 3] = BigInt::from(d[i][j]);
            }
        }
        let s = SymplecticMatrix { m };
        if !s.is_symplectic() {
            return Err(SiegelError::BadInput("matrix is not symplectic".into()));
        }
        Ok(s)
    }

    pub fn block(&self, br: usize, bc: usize) -> Vec<Vec<BigInt>> {
        (0..3)
            .map(|i| (0..3).map(|j| self.m[3 * br + i][3 * bc + j].clone()).collect())
            .collect()
    }

    /// ᵗM·Ω₃·M = Ω₃ with Ω₃ = (0 I; −I 0), checked in exact integers.
    pub fn is_symplectic(&self) -> bool {
        // (ᵗM Ω M)_{ij} = Σ_k m[k][i]·(Ω m)[k][j]; Ω m: rows 0..2 = rows 3..5 of m,
        // rows 3..5 = −rows 0..2 of m.
        for i in 0..6 {
            for j in 0..6 {
                let mut acc = BigInt::new();
                for k in 0..3 {
                    acc += BigInt::from(&self.m[k][i] * &self.m[k + 3][j]);
                    acc -= BigInt::from(&self.m[k + 3][i] * &self.m[k][j]);
                }
                let want: i64 = if j == i + 3 {
                    1
                } else if i == j + 3 {
                    -1
                } else {
                    0
                };
                if acc != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        let mut m = zero6();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = BigInt::new();
                for k in 0..6 {
                    acc += BigInt::from(&self.m[i][k] * &other.m[k][j]);
                }
                *cell = acc;
            }
        }
        SymplecticMatrix { m }
    }

    /// M⁻¹ = −Ω·ᵗM·Ω, exact in ℤ.
    pub fn inverse(&self) -> SymplecticMatrix {
        // Blocks of the inverse: ( ᵗD  −ᵗB ; −ᵗC  ᵗA ).
        let mut m = zero6();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.m[j + 3][i + 3].clone();
                m[i][j + 3] = BigInt::from(-self.m[j][i + 3].clone());
                m[i + 3][j] = BigInt::from(-self.m[j + 3][i].clone());
                m[i + 3][j + 3] = self.m[j][i].clone();
            }
        }
        SymplecticMatrix { m }
    }

    /// Embeds a GL₃(ℤ) change of basis U as diag(ᵗU, U⁻¹).
    pub fn from_gl3(u: &[[i64; 3]; 3]) -> Result<Self, SiegelError> {
        let det = u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1])
            - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0])
            + u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0]);
        if det != 1 && det != -1 {
            return Err(SiegelError::BadInput("basis change is not unimodular".into()));
        }
        // Integer inverse via adjugate / det.
        let adj = [
            [
                u[1][1] * u[2][2] - u[1][2] * u[2][1],
                u[0][2] * u[2][1] - u[0][1] * u[2][2],
                u[0][1] * u[1][2] - u[0][2] * u[1][1],
            ],
            [
                u[1][2] * u[2][0] - u[1][0] * u[2][2],
                u[0][0] * u[2][2] - u[0][2] * u[2][0],
                u[0][2] * u[1][0] - u[0][0] * u[1][2],
            ],
            [
                u[1][0] * u[2][1] - u[1][1] * u[2][0],
                u[0][1] * u[2][0] - u[0][0] * u[2][1],
                u[0][0] * u[1][1] - u[0][1] * u[1][0],
            ],
        ];
        let mut uinv = [[0i64; 3]; 3];
        let mut ut = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                uinv[i][j] = adj[i][j] * det; // det = ±1 so adj/det = adj·det
                ut[i][j] = u[j][i];
            }
        }
        SymplecticMatrix::from_blocks(ut, [[0; 3]; 3], [[0; 3]; 3], uinv)
    }

    /// Translation (I T; 0 I) by a symmetric integer matrix T.
    pub fn translation(t: &[[i64; 3]; 3]) -> Result<Self, SiegelError> {
        for i in 0..3 {
            for j in 0..3 {
                if t[i][j] != t[j][i] {
                    return Err(SiegelError::BadInput("translation block must be symmetric".into()));
                }
            }
        }
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        SymplecticMatrix::from_blocks(id, *t, [[0; 3]; 3], id)
    }

    /// Translation by a symmetric BigInt matrix.
    pub fn translation_big(t: &[Vec<BigInt>]) -> SymplecticMatrix {
        let mut m = zero6();
        for i in 0..3 {
            m[i][i] = BigInt::from(1);
            m[i + 3][i + 3] = BigInt::from(1);
            for j in 0..3 {
                m[i][j + 3] = t[i][j].clone();
            }
        }
        SymplecticMatrix { m }
    }

    /// The full inversion 𝔍 = (0 −I; I 0).
    pub fn inversion() -> Self {
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let nid = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]];
        SymplecticMatrix::from_blocks([[0; 3]; 3], nid, id, [[0; 3]; 3]).expect("J is symplectic")
    }

    /// Embedded SL₂ inversion acting on the (k,k) slot only.
    pub fn slot_inversion(k: usize) -> Self {
        let mut a = [[0i64; 3]; 3];
        let mut b = [[0i64; 3]; 3];
        let mut c = [[0i64; 3]; 3];
        let mut d = [[0i64; 3]; 3];
        for i in 0..3 {
            if i == k {
                b[i][i] = -1;
                c[i][i] = 1;
            } else {
                a[i][i] = 1;
                d[i][i] = 1;
            }
        }
        SymplecticMatrix::from_blocks(a, b, c, d).expect("slot inversion is symplectic")
    }

    fn block_to_cmatrix(&self, br: usize, bc: usize, prec: u32) -> CMatrix {
        CMatrix::from_fn(3, 3, |i, j| {
            BigComplex::with_val(prec, (BigInt::from(&self.m[3 * br + i][3 * bc + j]), BigInt::new()))
        })
    }
}

/// M·τ = (Aτ + B)(Cτ + D)⁻¹, exactly symmetrized.
pub fn symplectic_act(m: &SymplecticMatrix, rm: &RiemannMatrix) -> Result<RiemannMatrix, SiegelError> {
    let prec = rm.prec;
    let a = m.block_to_cmatrix(0, 0, prec);
    let b = m.block_to_cmatrix(0, 1, prec);
    let c = m.block_to_cmatrix(1, 0, prec);
    let d = m.block_to_cmatrix(1, 1, prec);
    let num = a.mul(rm.tau(), prec).add(&b, prec);
    let den = c.mul(rm.tau(), prec).add(&d, prec);
    let den_inv = mat3_inverse(&den, prec)?;
    let raw = num.mul(&den_inv, prec);
    RiemannMatrix::new(raw, prec)
}
