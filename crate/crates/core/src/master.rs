//! Formal expansion of the phase-free master function `Φ̃`.
//!
//! Every factor of `Φ̃` has the form `(1 - r)^{βω}` with `r` a ratio of a
//! lighter variable over a heavier one (weights: `z1` is 0, `z2` is `n`, a
//! box carries its usual weight). On the integration torus each `|r| < 1`,
//! and the chosen branch is the binomial series. The vertex coefficient
//! `c_d(ω)` at `u = 0` is then the coefficient of `z1^d z2^{-d}` with all
//! box exponents zero in the product of these series.
//!
//! Grading: give `x^e` the depth `-Σ_v e_v·weight(v)`. Each ratio has depth
//! at least one, depths add under multiplication, and the target monomial
//! has depth exactly `n·d`. Truncating every product at depth `n·D` is
//! therefore exact for `c_0..c_D`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{factorial, BigRat, ExpVec, LaurentPoly, OmegaPoly, OmegaPolys, UniPoly};
use crate::combinatorics::{ColumnBox, FlowGraph, Shape, VertexId};
use crate::superpotential::Superpotential;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PhiFactorKind {
    /// `(1 - x_{i,a}/x_{i,b})^{2ω}` within a column.
    Delta,
    /// `(1 - r)^{-ω}` between boxes of consecutive columns.
    LBoxBox,
    /// `(1 - z1/x_{k,a})^{-ω}`.
    LZ1,
    /// `(1 - x_{n-k,a}/z2)^{-ω}`.
    LZ2,
}

/// One factor `(1 - num/den)^{exponent·ω}`; `num`, `den` are vertex slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFactor {
    pub kind: PhiFactorKind,
    pub num: usize,
    pub den: usize,
    pub exponent: i64,
    pub depth: u32,
}

impl PhiFactor {
    pub fn ratio(&self, arity: usize) -> ExpVec {
        ExpVec::ratio(arity, self.num, self.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MasterBudget {
    pub max_dim: usize,
    pub max_depth: u32,
}

impl Default for MasterBudget {
    fn default() -> Self {
        Self {
            max_dim: 4,
            max_depth: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MasterOptions {
    pub budget: MasterBudget,
    /// Dropping the within-column factors is only meaningful for limit
    /// experiments; the true `c_d` needs them.
    pub include_delta: bool,
}

impl Default for MasterOptions {
    fn default() -> Self {
        Self {
            budget: MasterBudget::default(),
            include_delta: true,
        }
    }
}

/// The factor list of `Φ̃`: within-column pairs, all pairs between
/// consecutive columns, and the `z1`/`z2` boundary pairs.
pub fn phi_factors(shape: Shape) -> Vec<PhiFactor> {
    let graph = FlowGraph::new(shape);
    let slot = |col: u32, row: u32| {
        shape
            .box_index(ColumnBox::new(col, row))
            .expect("valid box")
    };
    let w = |v: usize| graph.weight(v);
    let mut out = Vec::new();
    let mut push = |kind, a: usize, b: usize, exponent| {
        let (num, den) = if w(a) < w(b) { (a, b) } else { (b, a) };
        out.push(PhiFactor {
            kind,
            num,
            den,
            exponent,
            depth: w(den) - w(num),
        });
    };
    let (k, n) = (shape.k(), shape.n());
    for i in 1..n {
        let v = shape.column_height(i);
        for a in 1..=v {
            for b in a + 1..=v {
                push(PhiFactorKind::Delta, slot(i, a), slot(i, b), 2);
            }
        }
    }
    for i in 1..n - 1 {
        for a in 1..=shape.column_height(i) {
            for b in 1..=shape.column_height(i + 1) {
                push(PhiFactorKind::LBoxBox, slot(i, a), slot(i + 1, b), -1);
            }
        }
    }
    for a in 1..=k {
        push(PhiFactorKind::LZ1, graph.z1(), slot(k, a), -1);
    }
    for a in 1..=k {
        push(PhiFactorKind::LZ2, slot(n - k, a), graph.z2(), -1);
    }
    out
}

/// `binom(βω, m) = Π_{j<m} (βω - j) / m!` as a polynomial in `ω`.
pub fn omega_binomial(beta: i64, m: u32) -> OmegaPoly {
    let mut acc = UniPoly::one();
    for j in 0..m as i64 {
        acc = acc.mul(&UniPoly::linear(
            BigRat::from_integer((-j).into()),
            BigRat::from_integer(beta.into()),
        ));
    }
    acc.scale(&BigRat::new(One::one(), factorial(m as u64)))
}

/// Sparse multiseries with `ω`-polynomial coefficients, truncated by depth.
#[derive(Clone, Debug)]
pub struct GradedSeries {
    weights: Vec<i64>,
    depth_cutoff: u32,
    poly: LaurentPoly<OmegaPolys>,
}

impl GradedSeries {
    pub fn one(weights: Vec<i64>, depth_cutoff: u32) -> Self {
        let arity = weights.len();
        Self {
            weights,
            depth_cutoff,
            poly: LaurentPoly::one(OmegaPolys, arity),
        }
    }

    pub fn depth_of(&self, e: &ExpVec) -> i64 {
        -e.as_slice()
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| *x as i64 * w)
            .sum::<i64>()
    }

    /// Binomial expansion of `factor` up to the depth cutoff.
    pub fn from_factor(weights: Vec<i64>, depth_cutoff: u32, factor: &PhiFactor) -> Self {
        let arity = weights.len();
        let ratio = factor.ratio(arity);
        let max_m = depth_cutoff / factor.depth;
        let terms = (0..=max_m).map(|m| {
            let mut c = omega_binomial(factor.exponent, m);
            if m % 2 == 1 {
                c = c.neg();
            }
            (ratio.scaled(m as i32), c)
        });
        let poly = LaurentPoly::from_terms(OmegaPolys, arity, terms).expect("consistent arity");
        Self {
            weights,
            depth_cutoff,
            poly,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let cutoff = self.depth_cutoff as i64;
        let keep = |e: &ExpVec| self.depth_of(e) <= cutoff;
        Ok(Self {
            weights: self.weights.clone(),
            depth_cutoff: self.depth_cutoff,
            poly: self.poly.mul(&other.poly, Some(&keep))?,
        })
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &OmegaPoly)> {
        self.poly.terms()
    }
}

/// `c_0(ω), ..., c_D(ω)` for `T*Gr(k, n)` at `u = 0`, `ε = 1`.
pub fn phi_series(shape: Shape, max_d: u32) -> Result<Vec<OmegaPoly>> {
    phi_series_with(shape, max_d, &MasterOptions::default())
}

pub fn phi_series_with(shape: Shape, max_d: u32, opts: &MasterOptions) -> Result<Vec<OmegaPoly>> {
    let cutoff = shape.n() * max_d;
    if shape.dim() > opts.budget.max_dim || cutoff > opts.budget.max_depth {
        return Err(Error::BudgetExceeded(format!(
            "master expansion limited to k(n-k) <= {} and n*D <= {}; got k(n-k) = {}, n*D = {}",
            opts.budget.max_dim,
            opts.budget.max_depth,
            shape.dim(),
            cutoff
        )));
    }
    let graph = FlowGraph::new(shape);
    let weights: Vec<i64> = (0..graph.vertices().len())
        .map(|v| graph.weight(v) as i64)
        .collect();
    let mut factors: Vec<PhiFactor> = phi_factors(shape)
        .into_iter()
        .filter(|f| opts.include_delta || f.kind != PhiFactorKind::Delta)
        .collect();
    factors.sort_by_key(|f| f.depth);

    let mut acc = GradedSeries::one(weights.clone(), cutoff);
    for f in &factors {
        acc = acc.mul(&GradedSeries::from_factor(weights.clone(), cutoff, f))?;
    }

    let nb = shape.dim();
    let n = shape.n() as i64;
    let mut out = alloc::vec![UniPoly::zero(); max_d as usize + 1];
    for (e, c) in acc.terms() {
        if e.as_slice()[..nb].iter().any(|&x| x != 0) {
            continue;
        }
        let (z1, z2) = (e[nb], e[nb + 1]);
        if z1 != -z2 || z1 < 0 || acc.depth_of(e) != n * z1 as i64 {
            return Err(Error::InvalidArgument(format!(
                "box-constant term with z-exponents ({z1}, {z2}) breaks the depth law"
            )));
        }
        out[z1 as usize] = c.clone();
    }
    Ok(out)
}

/// Outcome of comparing `c_d(ω)` with the exponential-integral coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub d: u32,
    pub degree: Option<usize>,
    pub expected_degree: usize,
    pub degree_ok: bool,
    pub leading: BigRat,
    pub expected: BigRat,
}

impl LimitReport {
    pub fn pass(&self) -> bool {
        self.degree_ok && self.leading == self.expected
    }
}

/// As `ħ → ∞`, `c_d(ħ)·ħ^{-nd}` tends to `a_d / (nd)!`: equivalently
/// `deg_ω c_d = nd` with that leading coefficient.
pub fn hbar_limit_check(shape: Shape, d: u32) -> Result<LimitReport> {
    hbar_limit_check_with(shape, d, &MasterOptions::default())
}

pub fn hbar_limit_check_with(shape: Shape, d: u32, opts: &MasterOptions) -> Result<LimitReport> {
    let series = phi_series_with(shape, d, opts)?;
    let cd = &series[d as usize];
    let expected_degree = (shape.n() * d) as usize;
    let degree = cd.degree();
    let expected = Superpotential::new(shape).exp_series_coeff(d);
    let leading = if degree == Some(expected_degree) {
        cd.leading()
    } else {
        cd.coeff(expected_degree)
    };
    Ok(LimitReport {
        d,
        degree,
        expected_degree,
        degree_ok: degree == Some(expected_degree) || (degree.is_none() && expected.is_zero()),
        leading,
        expected,
    })
}

/// Which vertices a factor couples, for reports.
pub fn factor_vertices(shape: Shape, f: &PhiFactor) -> (VertexId, VertexId) {
    let g = FlowGraph::new(shape);
    (g.vertices()[f.num], g.vertices()[f.den])
}
