//! The scalar field abstraction shared by the symbolic and numeric modes.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::RationalQ;
use crate::Error;

/// Exact field arithmetic needed by every algebra in the crate.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, Error>;

    fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.inv()?))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Scalar::add(self, other);
    }

    /// Integer power by repeated squaring; negative exponents invert.
    fn pow(&self, k: i64) -> Result<Self, Error> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }
}

impl Scalar for RationalQ {
    fn zero() -> Self {
        RationalQ::zero()
    }
    fn one() -> Self {
        RationalQ::one()
    }
    fn from_int(n: i64) -> Self {
        RationalQ::from_int(n)
    }
    fn is_zero(&self) -> bool {
        RationalQ::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RationalQ::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalQ::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalQ::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalQ::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalQ::neg(self)
    }
    fn inv(&self) -> Result<Self, Error> {
        RationalQ::inv(self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, Error> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

/// Which value `q` takes: the indeterminate itself, or an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    Symbolic,
    Numeric(BigRational),
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => write!(f, "symbolic"),
            QMode::Numeric(v) => write!(f, "num:{}", v),
        }
    }
}

const CACHED_POWERS: i64 = 96;

/// The value of `q` in a scalar field together with a table of its powers.
pub struct QContext<K: Scalar> {
    q: K,
    /// `powers[i] = q^(i - CACHED_POWERS)`
    powers: Vec<K>,
    mode: QMode,
}

impl<K: Scalar> fmt::Debug for QContext<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QContext({})", self.mode)
    }
}

impl<K: Scalar> QContext<K> {
    fn build(q: K, mode: QMode) -> Result<Arc<Self>, Error> {
        let qinv = q.inv()?;
        let n = CACHED_POWERS as usize;
        let mut powers = vec![K::one(); 2 * n + 1];
        for i in 1..=n {
            powers[n + i] = powers[n + i - 1].mul(&q);
            powers[n - i] = powers[n - i + 1].mul(&qinv);
        }
        Ok(Arc::new(QContext { q, powers, mode }))
    }

    pub fn q(&self) -> &K {
        &self.q
    }

    pub fn mode(&self) -> &QMode {
        &self.mode
    }

    pub fn q_pow(&self, k: i64) -> K {
        if k.abs() <= CACHED_POWERS {
            return self.powers[(k + CACHED_POWERS) as usize].clone();
        }
        self.q.pow(k).expect("q is invertible")
    }

    /// `prod_{j=1..n} (1 - q^(d*j))`.
    pub fn q_pochhammer(&self, d: i64, n: u32) -> Result<K, Error> {
        if d == 0 {
            return Err(Error::DegenerateBase);
        }
        let mut acc = K::one();
        for j in 1..=n as i64 {
            acc = acc.mul(&K::one().sub(&self.q_pow(d * j)));
        }
        Ok(acc)
    }
}

impl QContext<RationalQ> {
    pub fn symbolic() -> Arc<Self> {
        Self::build(RationalQ::q(), QMode::Symbolic).expect("q is a unit")
    }
}

impl QContext<BigRational> {
    /// Numeric mode; `q` must satisfy `q != 0` and `|q| != 1` so that no
    /// factor `1 - q^n` vanishes.
    pub fn numeric(q: BigRational) -> Result<Arc<Self>, Error> {
        if Zero::is_zero(&q) || One::is_one(&q.abs()) {
            return Err(Error::InvalidQ(q.to_string()));
        }
        Self::build(q.clone(), QMode::Numeric(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::poly::ZPoly;

    #[test]
    fn pochhammer_small_cases() {
        let ctx = QContext::symbolic();
        let expect = RationalQ::from_poly(ZPoly::from_i64s(&[1, -1]).mul(&ZPoly::from_i64s(&[1, 0, -1])));
        assert_eq!(ctx.q_pochhammer(1, 2).unwrap(), expect);
        assert!(ctx.q_pochhammer(1, 0).unwrap().is_one());
        // 1 - q^-2 = (q^2 - 1)/q^2
        let neg = ctx.q_pochhammer(-2, 1).unwrap();
        let direct = RationalQ::one().sub(&RationalQ::q_pow(-2));
        assert_eq!(neg, direct);
        assert!(matches!(ctx.q_pochhammer(0, 3), Err(Error::DegenerateBase)));
    }

    #[test]
    fn pochhammer_recursion() {
        let ctx = QContext::symbolic();
        for d in [-3i64, -1, 1, 2] {
            for n in 0..6u32 {
                let lhs = ctx.q_pochhammer(d, n + 1).unwrap();
                let rhs = ctx
                    .q_pochhammer(d, n)
                    .unwrap()
                    .mul(&RationalQ::one().sub(&ctx.q_pow(d * (n as i64 + 1))));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn numeric_mode_rejects_unit_circle() {
        let two = BigRational::from_integer(2.into());
        assert!(QContext::numeric(two.clone()).is_ok());
        assert!(QContext::numeric(BigRational::from_integer((-1).into())).is_err());
        assert!(QContext::numeric(<BigRational as Zero>::zero()).is_err());
        let ctx = QContext::numeric(two).unwrap();
        assert_eq!(ctx.q_pow(200), BigRational::from_integer(BigInt::from(2).pow(200)));
        assert_eq!(ctx.q_pow(-3), BigRational::new(1.into(), 8.into()));
    }
}
