//! Combinatorial vertex coefficients `c_d(u, ħ)` of `T*Gr(k, n)` with `ε = 1`.
//!
//! `c_d` is a sum over compositions `d_1 + ... + d_k = d` of products of
//! Pochhammer symbols. Individual terms have poles at `u_i = u_j`, but the
//! sum is regular there. [`vertex_coeff_u0`] reaches `u = 0` along the line
//! `u_i = t·v_i`: the sum becomes a reduced rational function of `t`, which
//! is then evaluated at `t = 0`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use crate::algebra::{
    factorial, BigRat, RationalFunction, RationalFunctions, Rationals, Ring, UniPoly,
};
use crate::combinatorics::Shape;
use crate::{Error, Result};

/// Equivariant parameters `u_1..u_n` and `ω = ħ` (with `ε = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexParams {
    pub u: Vec<BigRat>,
    pub omega: BigRat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexBudget {
    pub max_k: u32,
    pub max_n: u32,
    pub max_d: u32,
}

impl Default for VertexBudget {
    fn default() -> Self {
        Self {
            max_k: 3,
            max_n: 6,
            max_d: 6,
        }
    }
}

impl VertexBudget {
    pub fn check(&self, shape: Shape, d: u32) -> Result<()> {
        if shape.k() > self.max_k || shape.n() > self.max_n || d > self.max_d {
            return Err(Error::BudgetExceeded(format!(
                "vertex coefficients limited to k <= {}, n <= {}, d <= {}; got k = {}, n = {}, d = {}",
                self.max_k,
                self.max_n,
                self.max_d,
                shape.k(),
                shape.n(),
                d
            )));
        }
        Ok(())
    }
}

/// Numerator and denominator of `(x)_d`, step 1, kept apart so callers can
/// defer the division.
fn pochhammer_parts<R: Ring>(ring: &R, x: &R::Elem, d: i64) -> Result<(R::Elem, R::Elem)> {
    let mut num = ring.one();
    let mut den = ring.one();
    if d >= 0 {
        for j in 0..d {
            num = ring.mul(&num, &ring.add(x, &ring.from_i64(j)));
        }
    } else {
        for j in 1..=-d {
            let f = ring.sub(x, &ring.from_i64(j));
            if ring.is_zero(&f) {
                return Err(Error::Singular(format!(
                    "Pochhammer factor (x - {j}) vanishes"
                )));
            }
            den = ring.mul(&den, &f);
        }
    }
    Ok((num, den))
}

/// Rising factorial `(x)_d = x(x+1)...(x+d-1)`, extended to `d < 0` by
/// `(x)_d = 1 / ((x-1)(x-2)...(x+d))`.
pub fn pochhammer<R: Ring>(ring: &R, x: &R::Elem, d: i64) -> Result<R::Elem> {
    let (num, den) = pochhammer_parts(ring, x, d)?;
    let inv = ring.inv(&den).ok_or_else(|| {
        Error::Singular(format!("Pochhammer symbol with d = {d} is not invertible"))
    })?;
    Ok(ring.mul(&num, &inv))
}

/// All `k`-tuples of nonnegative integers summing to `d`, in lexicographic order.
pub fn compositions(d: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(d: u32, k: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=d {
            prefix.push(a);
            go(d - a, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(d, k, &mut Vec::new(), &mut out);
    out
}

/// The composition sum for `c_d` over an arbitrary ring, with `u` and `ω`
/// already embedded in it.
fn vertex_sum<R: Ring>(
    ring: &R,
    k: usize,
    d: u32,
    u: &[R::Elem],
    omega: &R::Elem,
) -> Result<R::Elem> {
    let one = ring.one();
    let mut total = ring.zero();
    for ds in compositions(d, k) {
        let mut num = ring.one();
        let mut den = ring.one();
        let mut absorb = |x: &R::Elem, e: i64, upper: bool| -> Result<()> {
            let (pn, pd) = pochhammer_parts(ring, x, e)?;
            if ring.is_zero(if upper { &pd } else { &pn }) {
                return Err(Error::Singular(format!(
                    "Pochhammer factor with index {e} vanishes in a denominator position"
                )));
            }
            if upper {
                num = ring.mul(&num, &pn);
                den = ring.mul(&den, &pd);
            } else {
                num = ring.mul(&num, &pd);
                den = ring.mul(&den, &pn);
            }
            Ok(())
        };
        for i in 0..k {
            for j in 0..k {
                let e = ds[i] as i64 - ds[j] as i64;
                if e == 0 {
                    continue;
                }
                let diff = ring.sub(&u[j], &u[i]);
                absorb(&ring.add(&one, &diff), e, true)?;
                absorb(&ring.add(omega, &diff), e, false)?;
            }
        }
        for uj in u {
            for i in 0..k {
                let e = ds[i] as i64;
                if e == 0 {
                    continue;
                }
                let diff = ring.sub(uj, &u[i]);
                absorb(&ring.add(omega, &diff), e, true)?;
                absorb(&ring.add(&one, &diff), e, false)?;
            }
        }
        let inv = ring.inv(&den).ok_or_else(|| {
            Error::Singular(format!("composition {ds:?} has a vanishing denominator"))
        })?;
        ring.add_assign(&mut total, &ring.mul(&num, &inv));
    }
    Ok(total)
}

/// `c_d(u, ω)` at explicit rational parameters.
pub fn vertex_coeff_generic(shape: Shape, d: u32, params: &VertexParams) -> Result<BigRat> {
    if params.u.len() != shape.n() as usize {
        return Err(Error::InvalidArgument(format!(
            "expected {} equivariant parameters, got {}",
            shape.n(),
            params.u.len()
        )));
    }
    vertex_sum(&Rationals, shape.k() as usize, d, &params.u, &params.omega)
}

/// The sum for `c_d` as a reduced rational function of `t` on the line
/// `u_i = t·direction_i`, with `ω` fixed.
pub fn vertex_coeff_on_line(
    shape: Shape,
    d: u32,
    omega: &BigRat,
    direction: &[i64],
) -> Result<RationalFunction> {
    if direction.len() != shape.n() as usize {
        return Err(Error::InvalidArgument(format!(
            "direction needs {} entries, got {}",
            shape.n(),
            direction.len()
        )));
    }
    let mut sorted = direction.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(
            "direction entries must be distinct".into(),
        ));
    }
    let ring = RationalFunctions;
    let u: Vec<RationalFunction> = direction
        .iter()
        .map(|&v| {
            RationalFunction::from_poly(UniPoly::linear(
                BigRat::from_integer(0.into()),
                BigRat::from_integer(v.into()),
            ))
        })
        .collect();
    vertex_sum(
        &ring,
        shape.k() as usize,
        d,
        &u,
        &RationalFunction::constant(omega.clone()),
    )
}

/// `c_d` at `u = 0` along a given direction.
pub fn vertex_coeff_u0_with_direction(
    shape: Shape,
    d: u32,
    omega: &BigRat,
    direction: &[i64],
) -> Result<BigRat> {
    vertex_coeff_on_line(shape, d, omega, direction)?.eval_at_zero()
}

/// Fallback directions tried when `(1, 2, ..., n)` hits a pole at `t = 0`.
fn fallback_direction(n: usize, attempt: i64) -> Vec<i64> {
    (1..=n as i64).map(|i| i * i + attempt * i).collect()
}

const U0_RETRIES: i64 = 5;

/// `c_d(0, ω)`, the non-equivariant vertex coefficient at a rational `ω`.
pub fn vertex_coeff_u0(
    shape: Shape,
    d: u32,
    omega: &BigRat,
    budget: &VertexBudget,
) -> Result<BigRat> {
    budget.check(shape, d)?;
    let n = shape.n() as usize;
    let default: Vec<i64> = (1..=n as i64).collect();
    match vertex_coeff_u0_with_direction(shape, d, omega, &default) {
        Err(Error::PoleAtZero) => {}
        other => return other,
    }
    for attempt in 1..=U0_RETRIES {
        match vertex_coeff_u0_with_direction(shape, d, omega, &fallback_direction(n, attempt)) {
            Err(Error::PoleAtZero) => continue,
            other => return other,
        }
    }
    Err(Error::PoleAtZero)
}

/// `(a)_d (b)_d / ((c)_d d!)`, the `z^d` coefficient of `2F1(a, b; c; z)`.
pub fn hypergeometric_coeff(a: &BigRat, b: &BigRat, c: &BigRat, d: u32) -> Result<BigRat> {
    let r = Rationals;
    let d = d as i64;
    let den = pochhammer(&r, c, d)? * BigRat::from_integer(factorial(d as u64));
    let inv = r
        .inv(&den)
        .ok_or_else(|| Error::Singular(format!("(c)_{d} vanishes for c = {c}")))?;
    Ok(pochhammer(&r, a, d)? * pochhammer(&r, b, d)? * inv)
}

/// `((ω)_d / d!)^power`, the closed form of `c_d` for `T*P^{power-1}`.
pub fn projective_closed_form(omega: &BigRat, d: u32, power: u32) -> BigRat {
    let base = pochhammer(&Rationals, omega, d as i64).expect("d >= 0")
        / BigRat::from_integer(factorial(d as u64));
    let mut acc = BigRat::one();
    for _ in 0..power {
        acc *= &base;
    }
    acc
}
