use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type BigRat = BigRational;

/// Builds `num/den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_checked_div(a: &BigRat, b: &BigRat) -> Result<BigRat> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn rat_arith(a: &BigRat, b: &BigRat, op: RatOp) -> Result<BigRat> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => return rat_checked_div(a, b),
    })
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn textbook_sums_and_reduction() {
        assert_eq!(
            rat_arith(&rat(1, 2), &rat(1, 3), RatOp::Add).unwrap(),
            rat(5, 6)
        );
        let half = rat(2, 4);
        assert_eq!(half.numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert!(rat(3, -6).denom() > &BigInt::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            rat_arith(&rat(1, 2), &BigRat::zero(), RatOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    fn arb_rat() -> impl Strategy<Value = BigRat> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let q = rat_arith(&a, &b, RatOp::Sub).unwrap();
            prop_assert_eq!(q + &b, a.clone());
        }
    }
}
