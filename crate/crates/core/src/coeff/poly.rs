//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and equality is structural.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exponent of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        ZPoly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(d) = other.coeffs.get(i) {
                c += d;
            }
            out.push(c);
        }
        ZPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division by an integer; the caller guarantees divisibility.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact quotient `self / d` in Z[q], or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * c;
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `d` (`lc(d)^(deg a - deg d + 1) * a mod d`).
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            let shifted = d.scale(&top).shift_up(rd - dd);
            rem = rem.scale(&lead).sub(&shifted);
        }
        rem
    }

    /// Greatest common divisor, normalized to be primitive times the gcd of
    /// the contents, with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let c = self.content().gcd(&other.content());
        let a = self.primitive();
        let b = other.primitive();
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return ZPoly::constant(c);
        }
        // powers of q are handled separately since they are the common case
        let v = a.valuation().unwrap().min(b.valuation().unwrap());
        let a = a.shift_down(a.valuation().unwrap());
        let b = b.shift_down(b.valuation().unwrap());
        let g = if a.degree() == Some(0) || b.degree() == Some(0) {
            ZPoly::one()
        } else if a == b {
            a
        } else {
            heuristic_gcd(&a, &b).unwrap_or_else(|| primitive_prs_gcd(&a, &b))
        };
        g.shift_up(v).scale(&c)
    }

    fn normalize_sign(&self) -> Self {
        if self.leading().is_some_and(|c| c.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// Heuristic gcd by evaluation at a large integer and balanced-digit
/// reconstruction; the candidate is accepted only after trial division.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let two = BigInt::from(2);
    let mut xi = two.clone() * a.max_norm().min(b.max_norm()) + BigInt::from(29);
    for _ in 0..6 {
        let ga = a.eval(&xi);
        let gb = b.eval(&xi);
        let gamma = ga.gcd(&gb);
        if !gamma.is_zero() {
            let cand = reconstruct(&gamma, &xi).primitive();
            if !cand.is_zero() && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        xi = (xi * BigInt::from(73794)) / BigInt::from(27011) + BigInt::one();
    }
    None
}

fn reconstruct(gamma: &BigInt, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut out = Vec::new();
    let mut g = gamma.clone();
    while !g.is_zero() {
        let mut digit = g.mod_floor(xi);
        if digit > half {
            digit -= xi;
        }
        g = (g - &digit) / xi;
        out.push(digit);
    }
    ZPoly::from_coeffs(out)
}

fn primitive_prs_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    while !y.is_zero() {
        let r = x.pseudo_rem(&y);
        x = y;
        y = r.primitive();
    }
    x.primitive()
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", abs)?,
                (_, true) => write!(f, "q^{}", k)?,
                (_, false) => write!(f, "{}*q^{}", abs, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn exact_division_of_cyclotomic_products() {
        // (1 - q^2) / (1 - q) = 1 + q
        assert_eq!(p(&[1, 0, -1]).div_exact(&p(&[1, -1])), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, -1]).div_exact(&p(&[2, 1])), None);
    }

    #[test]
    fn gcd_of_q_pochhammer_factors() {
        let a = p(&[1, -1]).mul(&p(&[1, 0, -1])).mul(&p(&[1, 0, 0, -1]));
        let b = p(&[1, 0, 0, 0, -1]).mul(&p(&[1, -1]));
        // gcd((1-q)(1-q^2)(1-q^3), (1-q^4)(1-q)) = (1-q)^2 (1+q)
        let g = a.gcd(&b);
        assert_eq!(g, p(&[1, -1]).mul(&p(&[1, 0, -1])).primitive());
    }

    #[test]
    fn gcd_handles_q_powers_and_content() {
        let a = p(&[0, 0, 6, 6]);
        let b = p(&[0, 4, -4]);
        assert_eq!(a.gcd(&b), p(&[0, 2]));
        assert_eq!(a.gcd(&ZPoly::zero()), a);
    }

    #[test]
    fn prs_and_heuristic_agree() {
        let f = p(&[3, -1, 4, 1, -5, 9]);
        let g = p(&[2, 6, -5, 3, 5]);
        let h = p(&[-7, 1, 1]);
        let a = f.mul(&h);
        let b = g.mul(&h);
        assert_eq!(primitive_prs_gcd(&a, &b), h.primitive());
        assert_eq!(a.gcd(&b), h.primitive());
    }
}
