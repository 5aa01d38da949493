//! Commuting parameters and the parameter-graded coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::scalar::Scalar;
use crate::Error;

pub const LAMBDA: usize = 0;
pub const MU: usize = 1;
pub const NU: usize = 2;
pub const ETA: usize = 3;
pub const TAU: usize = 4;

const NAMES: [&str; 5] = ["λ", "μ", "ν", "η", "τ"];

/// Exponents of the central parameters `λ, μ, ν, η, τ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Params(pub [i32; 5]);

impl Params {
    pub const ONE: Params = Params([0; 5]);

    pub fn single(slot: usize, exp: i32) -> Self {
        let mut p = [0; 5];
        p[slot] = exp;
        Params(p)
    }

    pub fn lambda(k: i32) -> Self {
        Self::single(LAMBDA, k)
    }

    pub fn tau(k: i32) -> Self {
        Self::single(TAU, k)
    }

    /// Grading degree: total exponent of `λ, μ, ν, τ`; `η` is ungraded.
    pub fn degree(&self) -> i64 {
        let p = &self.0;
        (p[LAMBDA] + p[MU] + p[NU] + p[TAU]) as i64
    }

    pub fn scale(&self, k: i32) -> Self {
        Params(self.0.map(|x| x * k))
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 5]
    }
}

impl Add for Params {
    type Output = Params;
    fn add(self, o: Params) -> Params {
        let mut p = self.0;
        for (a, b) in p.iter_mut().zip(o.0) {
            *a += b;
        }
        Params(p)
    }
}

impl Sub for Params {
    type Output = Params;
    fn sub(self, o: Params) -> Params {
        self + (-o)
    }
}

impl Neg for Params {
    type Output = Params;
    fn neg(self) -> Params {
        Params(self.0.map(|x| -x))
    }
}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (name, &e) in NAMES.iter().zip(self.0.iter()) {
            if e == 0 {
                continue;
            }
            if any {
                write!(f, "*")?;
            }
            any = true;
            if e == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, e)?;
            }
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A finite sum of parameter monomials with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedCoeff<K: Scalar> {
    terms: BTreeMap<Params, K>,
}

impl<K: Scalar> GradedCoeff<K> {
    pub fn zero() -> Self {
        GradedCoeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(K::one(), Params::ONE)
    }

    pub fn monomial(c: K, p: Params) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        GradedCoeff { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Params, &K)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, p: Params, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                v.add_assign(&c);
                if v.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.accumulate(*p, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GradedCoeff {
            terms: self.terms.iter().map(|(p, c)| (*p, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                out.accumulate(*p + *r, a.mul(b));
            }
        }
        out
    }

    /// The single term, if this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(Params, &K)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(p, c)| (*p, c))
        } else {
            None
        }
    }

    /// Inverse of a monomial; sums of several parameter monomials are not units.
    pub fn inv_monomial(&self) -> Result<Self, Error> {
        let (p, c) = self.as_monomial().ok_or(Error::NotInvertible)?;
        Ok(Self::monomial(c.inv()?, -p))
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(Params::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RationalQ;
    use proptest::prelude::*;

    fn arb_coeff() -> impl Strategy<Value = GradedCoeff<RationalQ>> {
        prop::collection::vec(((-2i32..3, -2i32..3, 0i32..2), -3i64..4), 0..4).prop_map(|ts| {
            let mut g = GradedCoeff::zero();
            for ((a, b, c), k) in ts {
                let t = GradedCoeff::monomial(RationalQ::from_int(k), Params([a, b, 0, c, 0]));
                g = g.add(&t);
            }
            g
        })
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_adds_degrees(a in arb_coeff(), b in arb_coeff()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            if let (Some((pa, _)), Some((pb, _))) = (a.as_monomial(), b.as_monomial()) {
                let prod = a.mul(&b);
                let (pp, _) = prod.as_monomial().unwrap();
                prop_assert_eq!(pp.degree(), pa.degree() + pb.degree());
            }
            for (p, _) in a.mul(&b).terms() {
                prop_assert!(a.terms().any(|(x, _)| b.terms().any(|(y, _)| *x + *y == *p)));
            }
        }
    }

    #[test]
    fn eta_is_ungraded() {
        assert_eq!(Params([1, 1, 0, 5, 2]).degree(), 4);
        assert_eq!(Params::single(ETA, -3).degree(), 0);
    }

    #[test]
    fn monomials_invert() {
        let m = GradedCoeff::monomial(RationalQ::from_int(3), Params::lambda(2));
        let inv = m.inv_monomial().unwrap();
        assert_eq!(m.mul(&inv), GradedCoeff::one());
        let two_terms = m.add(&GradedCoeff::one());
        assert!(two_terms.inv_monomial().is_err());
    }
}
