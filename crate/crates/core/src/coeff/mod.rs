//! Exact scalars: rational functions in `q`, big rationals for numeric `q`,
//! and the commuting parameters that grade every series.

mod graded;
mod poly;
mod rational;
mod scalar;

pub use graded::{GradedCoeff, Params, ETA, LAMBDA, MU, NU, TAU};
pub use poly::ZPoly;
pub use rational::RationalQ;
pub use scalar::{QContext, QMode, Scalar};

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// One binary operation on rational functions of `q`.
pub fn rq_arith(a: &RationalQ, b: &RationalQ, op: ArithOp) -> Result<RationalQ, Error> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rq() -> impl Strategy<Value = RationalQ> {
        (
            prop::collection::vec(-4i64..5, 1..4),
            prop::collection::vec(-4i64..5, 1..4),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                RationalQ::new(ZPoly::from_i64s(&n), ZPoly::from_i64s(&d)).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn field_axioms(a in arb_rq(), b in arb_rq(), c in arb_rq()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), RationalQ::zero());
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            }
        }
    }

    #[test]
    fn rq_arith_examples() {
        let omq = RationalQ::from_poly(ZPoly::from_i64s(&[1, -1]));
        let inv = rq_arith(&RationalQ::one(), &omq, ArithOp::Div).unwrap();
        assert!(rq_arith(&inv, &omq, ArithOp::Mul).unwrap().is_one());
        let num = RationalQ::from_poly(ZPoly::from_i64s(&[1, 0, -1]));
        assert_eq!(
            rq_arith(&num, &omq, ArithOp::Div).unwrap(),
            RationalQ::from_poly(ZPoly::from_i64s(&[1, 1]))
        );
        // p = q^r with r = 2
        let p = RationalQ::q_pow(2);
        assert_eq!(
            rq_arith(&RationalQ::q(), &p, ArithOp::Mul).unwrap(),
            RationalQ::q_pow(3)
        );
        assert!(rq_arith(&num, &RationalQ::zero(), ArithOp::Div).is_err());
    }
}
