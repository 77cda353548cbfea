//! `p`-power truncations of the A-series and the Dwork congruences.
//!
//! `F(z) = Σ_d [S^d]_0 = Σ_m a_m z^m` and `F_s(z) = Σ_{d < p^s} [S^d]_0`.
//! The congruences
//!
//! ```text
//! F_{s+1}(z) / F_s(z^p) ≡ F_s(z) / F_{s-1}(z^p)   mod p^s
//! F(z) / F(z^p)         ≡ F_s(z) / F_{s-1}(z^p)   mod p^s
//! ```
//!
//! are checked as identities of power series over `Z/p^s` up to a cutoff.
//! All constant terms are 1, so the inverses exist.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{ZMod, ZSeries};
use crate::combinatorics::Shape;
use crate::superpotential::Superpotential;
use crate::{Error, Result};

/// Default cap on the largest `m` for which `a_m` is computed.
pub const DEFAULT_MAX_M: u32 = 64;

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|q| q * q <= p)
            .all(|q| !p.is_multiple_of(q))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

fn pow_checked(p: u64, s: u32) -> Result<u64> {
    p.checked_pow(s)
        .ok_or_else(|| Error::BudgetExceeded(format!("{p}^{s} does not fit in 64 bits")))
}

fn residue_ring(p: u64, s: u32) -> Result<ZMod> {
    let q = pow_checked(p, s)?;
    if q > u32::MAX as u64 {
        return Err(Error::BudgetExceeded(format!(
            "modulus {p}^{s} exceeds 2^32"
        )));
    }
    Ok(ZMod::new(q))
}

/// Largest `m` with `n·m <= p^s - 1`.
fn truncation_degree(shape: Shape, p: u64, s: u32) -> Result<u64> {
    Ok((pow_checked(p, s)? - 1) / shape.n() as u64)
}

fn a_coefficients(shape: Shape, max_m: u64, budget: u32) -> Result<Vec<BigInt>> {
    if max_m > budget as u64 {
        return Err(Error::BudgetExceeded(format!(
            "A-series limited to m <= {budget}, need m = {max_m}"
        )));
    }
    Ok(Superpotential::new(shape)
        .a_series(max_m as u32)
        .into_iter()
        .map(|r| r.a_m)
        .collect())
}

/// Integer coefficients of `F_s(z)`: `a_m` for every `m` with `n·m < p^s`.
pub fn truncation(shape: Shape, p: u64, s: u32, budget: u32) -> Result<Vec<BigInt>> {
    check_prime(p)?;
    a_coefficients(shape, truncation_degree(shape, p, s)?, budget)
}

/// `M(ξ) = Σ_d [S(x,1)^d]_0 ξ^d` up to `ξ^cutoff`.
pub fn xi_series(shape: Shape, cutoff: usize, budget: u32) -> Result<Vec<BigInt>> {
    let n = shape.n() as usize;
    let a = a_coefficients(shape, (cutoff / n) as u64, budget)?;
    Ok((0..=cutoff)
        .map(|d| {
            if d % n == 0 {
                a[d / n].clone()
            } else {
                BigInt::zero()
            }
        })
        .collect())
}

/// `M_s(ξ)`: the terms of [`xi_series`] with `d < p^s`.
pub fn xi_truncation(shape: Shape, p: u64, s: u32, budget: u32) -> Result<Vec<BigInt>> {
    let top = pow_checked(p, s)? - 1;
    xi_series(shape, top as usize, budget)
}

/// The integer series entering one congruence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceInputs {
    /// `F_{s+1}`
    pub next: Vec<BigInt>,
    /// `F_s`
    pub current: Vec<BigInt>,
    /// `F_{s-1}`
    pub previous: Vec<BigInt>,
    /// `a_0..a_cutoff`, standing in for `F`.
    pub full: Vec<BigInt>,
}

impl CongruenceInputs {
    pub fn compute(shape: Shape, p: u64, s: u32, cutoff: usize, budget: u32) -> Result<Self> {
        check_prime(p)?;
        if s == 0 {
            return Err(Error::InvalidArgument("s must be at least 1".into()));
        }
        residue_ring(p, s)?;
        let full = a_coefficients(shape, cutoff as u64, budget)?;
        let take = |level: u32| -> Result<Vec<BigInt>> {
            let top = truncation_degree(shape, p, level)?.min(cutoff as u64) as usize;
            Ok(full[..=top].to_vec())
        };
        Ok(Self {
            next: take(s + 1)?,
            current: take(s)?,
            previous: take(s - 1)?,
            full: full.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DworkReport {
    pub p: u64,
    pub s: u32,
    pub cutoff: usize,
    /// First degree where `F_{s+1}/F_s(z^p)` and `F_s/F_{s-1}(z^p)` differ.
    pub truncation_failure: Option<usize>,
    /// First degree where `F/F(z^p)` and `F_s/F_{s-1}(z^p)` differ.
    pub full_failure: Option<usize>,
}

impl DworkReport {
    pub fn pass(&self) -> bool {
        self.truncation_failure.is_none() && self.full_failure.is_none()
    }

    pub fn first_failure_degree(&self) -> Option<usize> {
        match (self.truncation_failure, self.full_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

fn mod_series(ring: ZMod, coeffs: &[BigInt], cutoff: usize) -> ZSeries<ZMod> {
    ZSeries::from_coeffs(ring, coeffs.iter().map(|c| ring.reduce(c)), cutoff)
}

/// `f(z) / g(z^q)` over `Z/p^s` up to the cutoff.
fn ratio(f: &ZSeries<ZMod>, g: &ZSeries<ZMod>, q: usize) -> Result<ZSeries<ZMod>> {
    f.mul(&g.substitute_power(q).inverse()?)
}

/// Runs both congruences on explicit inputs.
pub fn check_congruences(
    inputs: &CongruenceInputs,
    p: u64,
    s: u32,
    cutoff: usize,
) -> Result<DworkReport> {
    let ring = residue_ring(p, s)?;
    let series = |c: &[BigInt]| mod_series(ring, c, cutoff);
    let q = p as usize;
    let rhs = ratio(&series(&inputs.current), &series(&inputs.previous), q)?;
    let lhs = ratio(&series(&inputs.next), &series(&inputs.current), q)?;
    let full = ratio(&series(&inputs.full), &series(&inputs.full), q)?;
    Ok(DworkReport {
        p,
        s,
        cutoff,
        truncation_failure: lhs.first_difference(&rhs)?,
        full_failure: full.first_difference(&rhs)?,
    })
}

/// Verifies both congruences for `shape` modulo `p^s` up to `z^cutoff`.
pub fn dwork_ratio_check(shape: Shape, p: u64, s: u32, cutoff: usize) -> Result<DworkReport> {
    let inputs = CongruenceInputs::compute(shape, p, s, cutoff, DEFAULT_MAX_M)?;
    check_congruences(&inputs, p, s, cutoff)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub p: u64,
    pub s: u32,
    pub levels: u32,
    pub cutoff: usize,
    pub first_failure_degree: Option<usize>,
    /// Whether the remaining factor `F(z^{p^{levels+1}})` is 1 up to the
    /// cutoff, i.e. the finite product alone already matches.
    pub tail_trivial: bool,
}

impl FactorizationReport {
    pub fn pass(&self) -> bool {
        self.first_failure_degree.is_none()
    }
}

/// Checks `F(z) ≡ Π_{i=0}^{L} F_s(z^{p^i}) / F_{s-1}(z^{p^{i+1}}) · F(z^{p^{L+1}})`
/// modulo `p^s` up to `z^cutoff`. The last factor tends to 1 as `L` grows,
/// which gives the infinite product.
pub fn factorization_check(
    shape: Shape,
    p: u64,
    s: u32,
    levels: u32,
    cutoff: usize,
) -> Result<FactorizationReport> {
    let inputs = CongruenceInputs::compute(shape, p, s, cutoff, DEFAULT_MAX_M)?;
    let ring = residue_ring(p, s)?;
    let series = |c: &[BigInt]| mod_series(ring, c, cutoff);
    let (current, previous, full) = (
        series(&inputs.current),
        series(&inputs.previous),
        series(&inputs.full),
    );
    // p^i, saturated just above the cutoff (beyond that the substitution is 1)
    let power = |i: u32| -> usize {
        p.checked_pow(i)
            .map(|x| x.min(cutoff as u64 + 1) as usize)
            .unwrap_or(cutoff + 1)
    };
    let mut product = ZSeries::one(ring, cutoff);
    for i in 0..=levels {
        let num = current.substitute_power(power(i));
        let den = previous.substitute_power(power(i + 1));
        product = product.mul(&num)?.mul(&den.inverse()?)?;
    }
    let tail_power = power(levels + 1);
    product = product.mul(&full.substitute_power(tail_power))?;
    Ok(FactorizationReport {
        p,
        s,
        levels,
        cutoff,
        first_failure_degree: full.first_difference(&product)?,
        tail_trivial: tail_power > cutoff,
    })
}
