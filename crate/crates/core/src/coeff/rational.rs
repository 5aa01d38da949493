//! Rational functions in `q` with integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::ZPoly;
use crate::Error;

/// An exact element of `Q(q)`, kept in lowest terms.
///
/// Invariants: the denominator is nonzero with positive leading coefficient,
/// numerator and denominator are coprime in `Z[q]` (including their integer
/// contents), and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalQ {
    num: ZPoly,
    den: ZPoly,
}

impl RationalQ {
    pub fn zero() -> Self {
        RationalQ {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RationalQ {
            num: ZPoly::constant(n),
            den: ZPoly::one(),
        }
    }

    /// The indeterminate itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = ZPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RationalQ {
                num: m,
                den: ZPoly::one(),
            }
        } else {
            RationalQ {
                num: ZPoly::one(),
                den: m,
            }
        }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RationalQ {
            num: p,
            den: ZPoly::one(),
        }
    }

    /// Builds `num / den` and reduces it.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        if den.leading().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        RationalQ { num, den }
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let bg = self.den.div_exact(&g).unwrap();
        let dg = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&dg).add(&other.num.mul(&bg));
        Self::reduced(num, self.den.mul(&dg))
    }

    pub fn neg(&self) -> Self {
        RationalQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalQ {
                num: self.num.mul(&other.num),
                den: ZPoly::one(),
            };
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        let mut num = a.mul(&c);
        let mut den = b.mul(&d);
        if den.leading().is_some_and(|x| x.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        RationalQ { num, den }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitutes a rational value for `q`; fails if the denominator vanishes.
    pub fn eval(&self, q: &num_rational::BigRational) -> Result<num_rational::BigRational, Error> {
        let ev = |p: &ZPoly| {
            let mut acc = num_rational::BigRational::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * q + num_rational::BigRational::from_integer(c.clone());
            }
            acc
        };
        let d = ev(&self.den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ev(&self.num) / d)
    }
}

impl Default for RationalQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
