//! Small real symmetric 3×3 helper used by the reduction routines.

use mpnum::BigFloat;

#[derive(Debug, Clone)]
pub struct FMat3 {
    pub e: [[BigFloat; 3]; 3],
}

impl FMat3 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> BigFloat) -> Self {
        FMat3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero(prec: u32) -> Self {
        FMat3::from_fn(|_, _| BigFloat::with_val(prec, 0))
    }

    pub fn prec(&self) -> u32 {
        self.e[0][0].prec()
    }

    /// Quadratic form value ᵗv·Y·v for an integer vector v.
    pub fn quad(&self, v: &[i64; 3]) -> BigFloat {
        let prec = self.prec();
        let mut acc = BigFloat::with_val(prec, 0);
        for i in 0..3 {
            for j in 0..3 {
                if v[i] != 0 && v[j] != 0 {
                    acc += &self.e[i][j] * BigFloat::with_val(prec, v[i] * v[j]);
                }
            }
        }
        acc
    }

    /// ᵗU·Y·U for an integer matrix U (columns are the new basis vectors).
    pub fn congruence(&self, u: &[[i64; 3]; 3]) -> FMat3 {
        let prec = self.prec();
        FMat3::from_fn(|i, j| {
            let mut acc = BigFloat::with_val(prec, 0);
            for a in 0..3 {
                for b in 0..3 {
                    if u[a][i] != 0 && u[b][j] != 0 {
                        acc += &self.e[a][b] * BigFloat::with_val(prec, u[a][i] * u[b][j]);
                    }
                }
            }
            acc
        })
    }

    /// Leading principal minors; positive definite iff all three are > 0.
    pub fn leading_minors(&self) -> [BigFloat; 3] {
        let prec = self.prec();
        let m1 = self.e[0][0].clone();
        let m2 = BigFloat::with_val(prec, &self.e[0][0] * &self.e[1][1])
            - BigFloat::with_val(prec, &self.e[0][1] * &self.e[1][0]);
        let det = BigFloat::with_val(
            prec,
            &self.e[0][0]
                * BigFloat::with_val(
                    prec,
                    BigFloat::with_val(prec, &self.e[1][1] * &self.e[2][2])
                        - BigFloat::with_val(prec, &self.e[1][2] * &self.e[2][1]),
                ),
        ) - BigFloat::with_val(
            prec,
            &self.e[0][1]
                * BigFloat::with_val(
                    prec,
                    BigFloat::with_val(prec, &self.e[1][0] * &self.e[2][2])
                        - BigFloat::with_val(prec, &self.e[1][2] * &self.e[2][0]),
                ),
        ) + BigFloat::with_val(
            prec,
            &self.e[0][2]
                * BigFloat::with_val(
                    prec,
                    BigFloat::with_val(prec, &self.e[1][0] * &self.e[2][1])
                        - BigFloat::with_val(prec, &self.e[1][1] * &self.e[2][0]),
                ),
        );
        [m1, m2, det]
    }

    pub fn is_positive_definite(&self, prec: u32) -> bool {
        let _ = prec;
        self.leading_minors().iter().all(|m| m.is_sign_positive() && !m.is_zero())
    }
}
