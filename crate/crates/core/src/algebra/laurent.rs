use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Index};

use super::Ring;
use crate::{Error, Result};

/// Integer exponent vector of a Laurent monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVec(Vec<i32>);

impl ExpVec {
    pub fn zeros(arity: usize) -> Self {
        Self(alloc::vec![0; arity])
    }

    /// Unit vector `+e_plus - e_minus` (a ratio of two variables).
    pub fn ratio(arity: usize, plus: usize, minus: usize) -> Self {
        let mut v = Self::zeros(arity);
        v.0[plus] += 1;
        v.0[minus] -= 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn scaled(&self, m: i32) -> Self {
        Self(self.0.iter().map(|e| e * m).collect())
    }
}

impl From<Vec<i32>> for ExpVec {
    fn from(v: Vec<i32>) -> Self {
        Self(v)
    }
}

impl Index<usize> for ExpVec {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl Add for &ExpVec {
    type Output = ExpVec;
    fn add(self, rhs: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// Sparse Laurent polynomial with coefficients in `R`.
///
/// Terms are kept in a `BTreeMap` so iteration order is canonical; zero
/// coefficients are never stored.
#[derive(Clone, Debug)]
pub struct LaurentPoly<R: Ring> {
    ring: R,
    arity: usize,
    terms: BTreeMap<ExpVec, R::Elem>,
}

impl<R: Ring> PartialEq for LaurentPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.terms == other.terms
    }
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero(ring: R, arity: usize) -> Self {
        Self {
            ring,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R, arity: usize) -> Self {
        let one = ring.one();
        Self::monomial(ring, ExpVec::zeros(arity), one)
    }

    pub fn monomial(ring: R, exp: ExpVec, coeff: R::Elem) -> Self {
        let mut p = Self::zero(ring, exp.len());
        p.add_term(exp, coeff);
        p
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(
        ring: R,
        arity: usize,
        terms: impl IntoIterator<Item = (ExpVec, R::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring, arity);
        for (e, c) in terms {
            if e.len() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> R::Elem {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    fn add_term(&mut self, exp: ExpVec, coeff: R::Elem) {
        if self.ring.is_zero(&coeff) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                self.ring.add_assign(c, &coeff);
                if self.ring.is_zero(c) {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Exact product. When `keep` is given, product terms whose exponent
    /// vector fails it are dropped.
    pub fn mul(&self, other: &Self, keep: Option<&dyn Fn(&ExpVec) -> bool>) -> Result<Self> {
        self.check_arity(other)?;
        let mut acc: BTreeMap<ExpVec, R::Elem> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if keep.is_some_and(|k| !k(&e)) {
                    continue;
                }
                let c = self.ring.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(slot) => self.ring.add_assign(slot, &c),
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !self.ring.is_zero(c));
        Ok(Self {
            ring: self.ring.clone(),
            arity: self.arity,
            terms: acc,
        })
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&ExpVec, &R::Elem) -> bool) {
        self.terms.retain(|e, c| keep(e, c));
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Integers;
    use alloc::vec;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn lp(arity: usize, terms: &[(&[i32], i64)]) -> LaurentPoly<Integers> {
        LaurentPoly::from_terms(
            Integers,
            arity,
            terms
                .iter()
                .map(|(e, c)| (ExpVec::from(e.to_vec()), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn univariate_products() {
        let a = lp(1, &[(&[1], 1), (&[-1], 1)]);
        let sq = a.mul(&a, None).unwrap();
        assert_eq!(sq, lp(1, &[(&[2], 1), (&[0], 2), (&[-2], 1)]));
        assert!(a
            .mul(&LaurentPoly::zero(Integers, 1), None)
            .unwrap()
            .is_zero());
        let x = lp(1, &[(&[1], 1)]);
        let xinv = lp(1, &[(&[-1], 1)]);
        assert_eq!(x.mul(&xinv, None).unwrap(), LaurentPoly::one(Integers, 1));
    }

    #[test]
    fn pruning_drops_terms() {
        let a = lp(1, &[(&[1], 1), (&[-1], 1)]);
        let keep = |e: &ExpVec| e[0].abs() <= 1;
        let sq = a.mul(&a, Some(&keep)).unwrap();
        assert_eq!(sq, lp(1, &[(&[0], 2)]));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = lp(1, &[(&[1], 1)]);
        let b = lp(2, &[(&[1, 0], 1)]);
        assert_eq!(
            a.mul(&b, None),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = lp(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let b = lp(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        // (x - y)(x + y) = x^2 - y^2
        let p = a.mul(&b, None).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&ExpVec::from(vec![1, 1])), BigInt::from(0));
    }

    fn arb_lp() -> impl Strategy<Value = LaurentPoly<Integers>> {
        proptest::collection::vec(((-3i32..=3, -3i32..=3, -3i32..=3), -9i64..=9), 0..=20).prop_map(
            |ts| {
                LaurentPoly::from_terms(
                    Integers,
                    3,
                    ts.into_iter()
                        .map(|((a, b, c), k)| (ExpVec::from(vec![a, b, c]), BigInt::from(k))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn product_is_commutative_and_associative(a in arb_lp(), b in arb_lp(), c in arb_lp()) {
            let ab = a.mul(&b, None).unwrap();
            prop_assert_eq!(&ab, &b.mul(&a, None).unwrap());
            let left = ab.mul(&c, None).unwrap();
            let right = a.mul(&b.mul(&c, None).unwrap(), None).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
