//! Exact arithmetic substrate.
//!
//! Coefficient rings are context objects implementing [`Ring`]; sparse
//! Laurent polynomials and truncated series are generic over them. Most
//! rings are zero-sized ([`Integers`], [`Rationals`], [`OmegaPolys`]); the
//! residue ring [`ZMod`] carries its modulus.

mod laurent;
mod modular;
mod ratfunc;
mod rational;
mod series;
mod unipoly;

use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use laurent::{ExpVec, LaurentPoly};
pub use modular::ZMod;
pub use ratfunc::{RationalFunction, RationalFunctions};
pub use rational::{factorial, rat, rat_arith, rat_checked_div, BigRat, RatOp};
pub use series::ZSeries;
pub use unipoly::{OmegaPoly, UniPoly};

/// A commutative ring with identity, given as a context object.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Multiplicative inverse, or `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRat;

    fn zero(&self) -> BigRat {
        BigRat::zero()
    }
    fn one(&self) -> BigRat {
        BigRat::one()
    }
    fn is_zero(&self, a: &BigRat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a + b
    }
    fn add_assign(&self, a: &mut BigRat, b: &BigRat) {
        *a += b;
    }
    fn neg(&self, a: &BigRat) -> BigRat {
        -a
    }
    fn mul(&self, a: &BigRat, b: &BigRat) -> BigRat {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> BigRat {
        BigRat::from_integer(n.clone())
    }
    fn inv(&self, a: &BigRat) -> Option<BigRat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
}

/// Polynomials in the formal variable `ω` with rational coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OmegaPolys;

impl Ring for OmegaPolys {
    type Elem = OmegaPoly;

    fn zero(&self) -> OmegaPoly {
        UniPoly::zero()
    }
    fn one(&self) -> OmegaPoly {
        UniPoly::one()
    }
    fn is_zero(&self, a: &OmegaPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &OmegaPoly, b: &OmegaPoly) -> OmegaPoly {
        a.add(b)
    }
    fn add_assign(&self, a: &mut OmegaPoly, b: &OmegaPoly) {
        a.add_assign(b);
    }
    fn neg(&self, a: &OmegaPoly) -> OmegaPoly {
        a.neg()
    }
    fn mul(&self, a: &OmegaPoly, b: &OmegaPoly) -> OmegaPoly {
        a.mul(b)
    }
    fn from_bigint(&self, n: &BigInt) -> OmegaPoly {
        UniPoly::constant(BigRat::from_integer(n.clone()))
    }
    fn inv(&self, a: &OmegaPoly) -> Option<OmegaPoly> {
        match a.degree() {
            Some(0) => Some(UniPoly::constant(a.coeff(0).recip())),
            _ => None,
        }
    }
}
