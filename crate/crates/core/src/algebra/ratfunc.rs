use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BigRat, Ring, UniPoly};
use crate::{Error, Result};

/// Reduced quotient of two univariate rational polynomials.
///
/// Invariants: the denominator is monic and coprime to the numerator. The
/// zero function is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Builds `num/den` and reduces it.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lead = den.leading();
        if !lead.is_zero() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone())
                .expect("monic denominator");
        }
        let g = self.den.gcd(&other.den);
        let left = other.den.div_exact(&g).expect("gcd divides");
        let right = self.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&left).add(&other.num.mul(&right));
        Self::new(num, self.den.mul(&left)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        Self {
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
        // cross-cancel before multiplying to keep degrees down
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::new(n1.mul(&n2), d1.mul(&d2)).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Value at `t = x`; errors if `x` is a root of the denominator.
    pub fn eval(&self, x: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Value at `t = 0` of the reduced function.
    pub fn eval_at_zero(&self) -> Result<BigRat> {
        let d = self.den.coeff(0);
        if d.is_zero() {
            return Err(Error::PoleAtZero);
        }
        Ok(self.num.coeff(0) / d)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

/// The field of univariate rational functions over the rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalFunctions;

impl Ring for RationalFunctions {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::one()
    }
    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.add(b)
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        a.neg()
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a.mul(b)
    }
    fn from_bigint(&self, n: &BigInt) -> RationalFunction {
        RationalFunction::constant(BigRat::from_integer(n.clone()))
    }
    fn inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        a.recip().ok()
    }
}
