use mpnum::BigComplex;
use rug::ops::NegAssign;
use rug::Rational;

/// Coefficient ring shared by the exact and the numeric invariant
/// evaluations. The same polynomial formulas run over `Rational` (exact)
/// and `BigComplex` (fixed binary precision carried inside each value).
pub trait Scalar: Clone {
    /// Whether arithmetic is exact (rationals) or rounded (floating complex).
    const IS_EXACT: bool;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }
    fn from_i64_like(&self, n: i64) -> Self;
    /// Embed an exact rational (calibration constants can exceed i64).
    fn from_rational_like(&self, q: &Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Field division; callers guard the divisor (exact zero test or a
    /// magnitude floor) before calling.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact zero test: literal zero, not "numerically small".
    fn is_zero(&self) -> bool;
    /// Logarithmic pivot score (bigger = better pivot); NEG_INFINITY for
    /// zero. Used only to order pivot candidates, never as a value.
    fn mag(&self) -> f64;
    /// Determinant of a square matrix, consumed row-major.
    fn det_dense(m: Vec<Vec<Self>>) -> Self;
    /// Equality up to relative tolerance; exact types ignore `tol`.
    fn approx_eq(&self, o: &Self, tol: f64) -> bool;
    fn pow_u(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    fn mul_i64(&self, n: i64) -> Self {
        self.mul(&self.from_i64_like(n))
    }
    fn div_i64(&self, n: i64) -> Self {
        self.div(&self.from_i64_like(n))
    }
}

impl Scalar for Rational {
    const IS_EXACT: bool = true;

    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::from(n)
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn div(&self, o: &Self) -> Self {
        Rational::from(self / o)
    }
    fn neg(&self) -> Self {
        let mut r = self.clone();
        r.neg_assign();
        r
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mag(&self) -> f64 {
        if Scalar::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        self.numer().significant_bits() as f64 - self.denom().significant_bits() as f64
    }
    fn det_dense(m: Vec<Vec<Self>>) -> Self {
        det_rational(m)
    }
    fn approx_eq(&self, o: &Self, _tol: f64) -> bool {
        self == o
    }
}

/// Exact determinant: clear each row's denominators, then fraction-free
/// Bareiss elimination over the integers.
fn det_rational(m: Vec<Vec<Rational>>) -> Rational {
    use rug::Integer;
    let n = m.len();
    if n == 0 {
        return Rational::from(1);
    }
    let mut scale = Integer::from(1);
    let mut a: Vec<Vec<Integer>> = Vec::with_capacity(n);
    for row in &m {
        let mut l = Integer::from(1);
        for e in row {
            l.lcm_mut(e.denom());
        }
        let r: Vec<Integer> = row
            .iter()
            .map(|e| {
                let q = Rational::from(e * &l);
                debug_assert_eq!(*q.denom(), 1);
                q.into_numer_denom().0
            })
            .collect();
        scale *= &l;
        a.push(r);
    }
    let mut sign = 1i64;
    let mut prev = Integer::from(1);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = Integer::from(&a[i][j] * &a[k][k]) - Integer::from(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev);
            }
            a[i][k] = Integer::new();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Rational::from((d * sign, scale))
}

impl Scalar for BigComplex {
    const IS_EXACT: bool = false;

    fn zero_like(&self) -> Self {
        BigComplex::new(self.prec().0)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigComplex::with_val(self.prec().0, (n, 0))
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        BigComplex::with_val(self.prec().0, q)
    }
    fn add(&self, o: &Self) -> Self {
        BigComplex::with_val(self.prec().0, self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        BigComplex::with_val(self.prec().0, self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        BigComplex::with_val(self.prec().0, self * o)
    }
    fn div(&self, o: &Self) -> Self {
        BigComplex::with_val(self.prec().0, self / o)
    }
    fn neg(&self) -> Self {
        BigComplex::with_val(self.prec().0, -self)
    }
    fn is_zero(&self) -> bool {
        self.real().is_zero() && self.imag().is_zero()
    }
    fn mag(&self) -> f64 {
        let e = |f: &mpnum::BigFloat| f.get_exp().map(|e| e as f64);
        match (e(self.real()), e(self.imag())) {
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => f64::NEG_INFINITY,
        }
    }
    fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        let prec = self.prec().0;
        let d = mpnum::cabs(&self.sub(o), prec);
        let mut scale = mpnum::cabs(self, prec);
        let sb = mpnum::cabs(o, prec);
        if sb > scale {
            scale = sb;
        }
        if scale.is_zero() {
            return true;
        }
        d <= scale * mpnum::BigFloat::with_val(prec, tol)
    }
    fn det_dense(mut m: Vec<Vec<Self>>) -> Self {
        let n = m.len();
        if n == 0 {
            return BigComplex::with_val(53, (1, 0));
        }
        let prec = m[0][0].prec().0;
        let mut det = BigComplex::with_val(prec, (1, 0));
        for k in 0..n {
            let (mut best, mut score) = (k, m[k][k].mag());
            for r in k + 1..n {
                let s = m[r][k].mag();
                if s > score {
                    best = r;
                    score = s;
                }
            }
            if score == f64::NEG_INFINITY {
                return BigComplex::new(prec);
            }
            if best != k {
                m.swap(k, best);
                det = BigComplex::with_val(prec, -det);
            }
            let piv = m[k][k].clone();
            det = BigComplex::with_val(prec, &det * &piv);
            for i in k + 1..n {
                if Scalar::is_zero(&m[i][k]) {
                    continue;
                }
                let fac = m[i][k].div(&piv);
                for j in k + 1..n {
                    m[i][j] = m[i][j].sub(&fac.mul(&m[k][j]));
                }
                m[i][k] = BigComplex::new(prec);
            }
        }
        det
    }
}
