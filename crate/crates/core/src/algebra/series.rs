use alloc::format;
use alloc::vec::Vec;

use super::Ring;
use crate::{Error, Result};

/// Power series in `z` truncated at an explicit cutoff degree.
///
/// Holds exactly `cutoff + 1` coefficients. Binary operations require equal
/// cutoffs; changing the cutoff goes through [`ZSeries::truncate`].
#[derive(Clone, Debug)]
pub struct ZSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for ZSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> ZSeries<R> {
    pub fn zero(ring: R, cutoff: usize) -> Self {
        let coeffs = (0..=cutoff).map(|_| ring.zero()).collect();
        Self { ring, coeffs }
    }

    pub fn one(ring: R, cutoff: usize) -> Self {
        let mut s = Self::zero(ring, cutoff);
        s.coeffs[0] = s.ring.one();
        s
    }

    /// Series with the given leading coefficients; missing degrees are zero
    /// and degrees above `cutoff` are dropped.
    pub fn from_coeffs(ring: R, coeffs: impl IntoIterator<Item = R::Elem>, cutoff: usize) -> Self {
        let mut s = Self::zero(ring, cutoff);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: R::Elem) {
        self.coeffs[i] = c;
    }

    pub fn truncate(&self, cutoff: usize) -> Self {
        Self::from_coeffs(self.ring.clone(), self.coeffs.iter().cloned(), cutoff)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_cutoff(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Self {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_cutoff(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Self {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_cutoff(other)?;
        let n = self.coeffs.len();
        let mut out = Self::zero(self.ring.clone(), n - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                let prod = self.ring.mul(a, b);
                self.ring.add_assign(&mut out.coeffs[i + j], &prod);
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse up to the cutoff; requires a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let r = &self.ring;
        let c0_inv = r
            .inv(&self.coeffs[0])
            .ok_or_else(|| Error::NonUnitConstant(format!("{:?}", self.coeffs[0])))?;
        let n = self.coeffs.len();
        let mut g = Vec::with_capacity(n);
        g.push(c0_inv.clone());
        for i in 1..n {
            let mut acc = r.zero();
            for j in 1..=i {
                let prod = r.mul(&self.coeffs[j], &g[i - j]);
                r.add_assign(&mut acc, &prod);
            }
            g.push(r.neg(&r.mul(&c0_inv, &acc)));
        }
        Ok(Self {
            ring: r.clone(),
            coeffs: g,
        })
    }

    /// Substitutes `z -> z^p`, keeping the cutoff.
    pub fn substitute_power(&self, p: usize) -> Self {
        assert!(p >= 1, "substitution power must be positive");
        let mut out = Self::zero(self.ring.clone(), self.cutoff());
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(p) {
                Some(j) if j <= self.cutoff() => out.coeffs[j] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// Lowest degree at which the two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>> {
        self.check_cutoff(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b))
    }

    fn check_cutoff(&self, other: &Self) -> Result<()> {
        if self.cutoff() != other.cutoff() {
            return Err(Error::InvalidArgument(format!(
                "series cutoff mismatch: {} vs {}",
                self.cutoff(),
                other.cutoff()
            )));
        }
        Ok(())
    }
}
