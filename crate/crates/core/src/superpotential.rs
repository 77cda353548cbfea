//! The Laurent superpotential `S(x, z) = Σ_e x_head(e) / x_tail(e)` and the
//! constant terms of its powers.
//!
//! Two independent engines compute `[S^d]_0`:
//!
//! * [`Superpotential::constant_term_pow_flows`] sums the multinomial
//!   `d! / Π n_e!` over integer flows on the graph. A monomial of `S^d`
//!   picks edge `e` exactly `n_e` times; its box exponents vanish iff the
//!   picks conserve at every box, i.e. they form a flow from `z2` to `z1`.
//! * [`Superpotential::constant_term_pow_direct`] multiplies out `S^d` as a
//!   sparse Laurent polynomial, pruning terms that can no longer return to
//!   zero exponents.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, BigRat, ExpVec, Integers, LaurentPoly};
use crate::combinatorics::{FlowGraph, Shape};
use crate::{Error, Result};

/// Default cap on `d` for the sparse-powering engine.
pub const DEFAULT_POWER_BUDGET: u32 = 12;

#[derive(Clone, Debug)]
pub struct Superpotential {
    shape: Shape,
    graph: FlowGraph,
    poly: LaurentPoly<Integers>,
}

/// `[S^d]_0 = coeff · z^m`; `m` is `None` when the constant term vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTerm {
    pub d: u32,
    pub m: Option<u32>,
    pub coeff: BigInt,
}

impl ConstantTerm {
    fn zero(d: u32) -> Self {
        Self {
            d,
            m: None,
            coeff: BigInt::zero(),
        }
    }
}

/// Nonnegative edge multiplicities conserving at every box.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flow {
    pub multiplicities: Vec<u64>,
    pub value: u64,
}

impl Flow {
    /// `(Σ n_e)! / Π n_e!`
    pub fn multinomial_weight(&self) -> BigInt {
        multinomial(&self.multiplicities)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASeriesRow {
    pub m: u32,
    pub a_m: BigInt,
}

/// `(Σ parts)! / Π parts!`, built as a product of binomials.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u64;
    for &p in parts {
        if p == 0 {
            continue;
        }
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

impl Superpotential {
    pub fn new(shape: Shape) -> Self {
        let graph = FlowGraph::new(shape);
        let arity = graph.vertices().len();
        let poly = LaurentPoly::from_terms(
            Integers,
            arity,
            graph
                .edges()
                .iter()
                .map(|e| (ExpVec::ratio(arity, e.head, e.tail), BigInt::one())),
        )
        .expect("edge exponents have graph arity");
        Self { shape, graph, poly }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn graph(&self) -> &FlowGraph {
        &self.graph
    }

    pub fn poly(&self) -> &LaurentPoly<Integers> {
        &self.poly
    }

    fn box_slots(&self) -> usize {
        self.shape.dim()
    }

    /// Constant term of `S^d` with the given budget on `d`, by sparse powering.
    ///
    /// After `j` of `d` factors, every slot can still move by at most `d - j`
    /// (each term of `S` changes each slot by at most one), so terms with a
    /// box exponent beyond that are dropped.
    pub fn constant_term_pow_direct(&self, d: u32, budget: u32) -> Result<ConstantTerm> {
        let power = self.power_pruned(d, budget)?;
        self.extract_constant(d, &power)
    }

    /// `S^d` restricted to terms that can still contribute to the constant
    /// term (after the last factor: exactly the box-constant terms).
    pub fn power_pruned(&self, d: u32, budget: u32) -> Result<LaurentPoly<Integers>> {
        if d > budget {
            return Err(Error::BudgetExceeded(alloc::format!(
                "sparse powering limited to d <= {budget}, got d = {d}"
            )));
        }
        let nb = self.box_slots();
        let mut power = LaurentPoly::one(Integers, self.poly.arity());
        for j in 1..=d {
            let slack = (d - j) as i32;
            let keep = move |e: &ExpVec| e.as_slice()[..nb].iter().all(|x| x.abs() <= slack);
            power = power.mul(&self.poly, Some(&keep))?;
        }
        Ok(power)
    }

    fn extract_constant(&self, d: u32, power: &LaurentPoly<Integers>) -> Result<ConstantTerm> {
        let nb = self.box_slots();
        let mut found: Option<ConstantTerm> = None;
        for (e, c) in power.terms() {
            if e.as_slice()[..nb].iter().any(|&x| x != 0) {
                continue;
            }
            let (z1, z2) = (e[nb], e[nb + 1]);
            if z1 != -z2 || z1 < 0 || (z1 as u32) * self.shape.n() != d || found.is_some() {
                return Err(Error::InvalidArgument(alloc::format!(
                    "constant term of S^{d} has unexpected z-exponents ({z1}, {z2})"
                )));
            }
            found = Some(ConstantTerm {
                d,
                m: Some(z1 as u32),
                coeff: c.clone(),
            });
        }
        Ok(found.unwrap_or_else(|| ConstantTerm::zero(d)))
    }

    /// Constant term of `S^d` as a sum over flows of value `d / n`.
    pub fn constant_term_pow_flows(&self, d: u32) -> ConstantTerm {
        let n = self.shape.n();
        if !d.is_multiple_of(n) {
            return ConstantTerm::zero(d);
        }
        let m = d / n;
        let mut total = BigInt::zero();
        self.for_each_flow(m as u64, |mult| total += multinomial(mult));
        if total.is_zero() {
            return ConstantTerm::zero(d);
        }
        ConstantTerm {
            d,
            m: Some(m),
            coeff: total,
        }
    }

    /// All flows of value `m`, sorted lexicographically by the multiplicity
    /// vector in canonical edge order.
    pub fn flows(&self, m: u64) -> Vec<Flow> {
        let mut out = Vec::new();
        self.for_each_flow(m, |mult| {
            out.push(Flow {
                multiplicities: mult.to_vec(),
                value: m,
            })
        });
        out.sort();
        out
    }

    /// Calls `f` with the multiplicity vector of every flow of value `m`.
    ///
    /// Boxes are visited by decreasing weight, so a box's inflow is final
    /// when it is reached; the inflow is then split over its out-edges in
    /// every possible way.
    pub fn for_each_flow(&self, m: u64, mut f: impl FnMut(&[u64])) {
        let g = &self.graph;
        let edges = g.edges();
        let mut mult = vec![0u64; edges.len()];
        let z2_edge = g.out_edges(g.z2()).next().expect("z2 has one out-edge");
        mult[z2_edge] = m;
        let plan: Vec<(Vec<usize>, Vec<usize>)> = g
            .topological_order()
            .into_iter()
            .filter(|&v| v < self.shape.dim())
            .map(|v| (g.in_edges(v).collect(), g.out_edges(v).collect()))
            .collect();
        walk(&plan, 0, &mut mult, &mut f);
    }

    /// `a_0, ..., a_{max_m}` with `a_m` the coefficient of `z^m` in
    /// `Σ_d [S^d]_0`.
    pub fn a_series(&self, max_m: u32) -> Vec<ASeriesRow> {
        (0..=max_m)
            .map(|m| ASeriesRow {
                m,
                a_m: self.constant_term_pow_flows(m * self.shape.n()).coeff,
            })
            .collect()
    }

    /// `a_m / (nm)!`, the `z^m` coefficient of the exponential integral
    /// with `ε = 1`.
    pub fn exp_series_coeff(&self, m: u32) -> BigRat {
        let a = self.constant_term_pow_flows(m * self.shape.n()).coeff;
        let nm = (m as u64) * (self.shape.n() as u64);
        BigRat::new(a, factorial(nm))
    }

    /// Checks conservation at boxes and the `z1`/`z2` edge values.
    pub fn is_valid_flow(&self, flow: &Flow) -> bool {
        let g = &self.graph;
        if flow.multiplicities.len() != g.edges().len() {
            return false;
        }
        let sum = |it: &mut dyn Iterator<Item = usize>| -> u64 {
            it.map(|e| flow.multiplicities[e]).sum()
        };
        let conserves =
            (0..self.shape.dim()).all(|v| sum(&mut g.in_edges(v)) == sum(&mut g.out_edges(v)));
        conserves
            && sum(&mut g.in_edges(g.z1())) == flow.value
            && sum(&mut g.out_edges(g.z2())) == flow.value
            && flow.multiplicities.iter().sum::<u64>() == flow.value * self.shape.n() as u64
    }
}

fn walk(
    plan: &[(Vec<usize>, Vec<usize>)],
    pos: usize,
    mult: &mut [u64],
    f: &mut impl FnMut(&[u64]),
) {
    let Some((ins, outs)) = plan.get(pos) else {
        f(mult);
        return;
    };
    let inflow: u64 = ins.iter().map(|&e| mult[e]).sum();
    split(plan, pos, outs, 0, inflow, mult, f);
}

fn split(
    plan: &[(Vec<usize>, Vec<usize>)],
    pos: usize,
    outs: &[usize],
    i: usize,
    remaining: u64,
    mult: &mut [u64],
    f: &mut impl FnMut(&[u64]),
) {
    if i + 1 == outs.len() {
        mult[outs[i]] = remaining;
        walk(plan, pos + 1, mult, f);
        mult[outs[i]] = 0;
        return;
    }
    for take in 0..=remaining {
        mult[outs[i]] = take;
        split(plan, pos, outs, i + 1, remaining - take, mult, f);
    }
    mult[outs[i]] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ColumnBox;

    fn sp(k: u32, n: u32) -> Superpotential {
        Superpotential::new(Shape::new(k, n).unwrap())
    }

    fn slot(s: &Superpotential, col: u32, row: u32) -> usize {
        s.shape().box_index(ColumnBox::new(col, row)).unwrap()
    }

    #[test]
    fn gr24_superpotential_terms() {
        let s = sp(2, 4);
        let a = s.poly().arity();
        let (z1, z2) = (a - 2, a - 1);
        let x = |c, r| slot(&s, c, r);
        let expected = [
            ExpVec::ratio(a, z1, x(2, 1)),
            ExpVec::ratio(a, x(2, 1), x(1, 1)),
            ExpVec::ratio(a, x(2, 1), x(3, 1)),
            ExpVec::ratio(a, x(3, 1), x(2, 2)),
            ExpVec::ratio(a, x(1, 1), x(2, 2)),
            ExpVec::ratio(a, x(2, 2), z2),
        ];
        assert_eq!(s.poly().len(), 6);
        for e in expected {
            assert_eq!(s.poly().coeff(&e), BigInt::one(), "{e:?}");
        }
    }

    #[test]
    fn projective_superpotential_is_a_chain() {
        let s = sp(1, 5);
        let a = s.poly().arity();
        assert_eq!(s.poly().len(), 5);
        assert_eq!(
            s.poly().coeff(&ExpVec::ratio(a, a - 2, slot(&s, 1, 1))),
            BigInt::one()
        );
        for i in 1..4 {
            assert_eq!(
                s.poly()
                    .coeff(&ExpVec::ratio(a, slot(&s, i, 1), slot(&s, i + 1, 1))),
                BigInt::one()
            );
        }
        assert_eq!(
            s.poly().coeff(&ExpVec::ratio(a, slot(&s, 4, 1), a - 1)),
            BigInt::one()
        );
    }

    #[test]
    fn term_count_matches_edges() {
        for (k, n) in [(1, 2), (1, 6), (2, 4), (2, 5), (2, 6), (3, 6), (3, 7)] {
            let s = sp(k, n);
            assert_eq!(s.poly().len(), 2 * s.shape().dim() + 2 - n as usize);
            for (e, _) in s.poly().terms() {
                assert_eq!(e.as_slice().iter().filter(|&&x| x == 1).count(), 1);
                assert_eq!(e.as_slice().iter().filter(|&&x| x == -1).count(), 1);
            }
        }
    }

    #[test]
    fn constant_terms_by_both_engines() {
        let s = sp(2, 4);
        let direct = s.constant_term_pow_direct(4, 12).unwrap();
        assert_eq!(
            direct,
            ConstantTerm {
                d: 4,
                m: Some(1),
                coeff: BigInt::from(48)
            }
        );
        assert_eq!(s.constant_term_pow_flows(8).coeff, BigInt::from(15120));
        assert_eq!(s.constant_term_pow_direct(0, 12).unwrap().m, Some(0));
        assert_eq!(
            s.constant_term_pow_direct(0, 12).unwrap().coeff,
            BigInt::one()
        );
        assert_eq!(s.constant_term_pow_flows(0).coeff, BigInt::one());
        assert_eq!(
            s.constant_term_pow_direct(6, 12).unwrap(),
            ConstantTerm::zero(6)
        );
        assert_eq!(sp(1, 3).constant_term_pow_flows(3).coeff, BigInt::from(6));
    }

    #[test]
    fn budget_is_enforced() {
        let s = sp(1, 2);
        assert!(matches!(
            s.constant_term_pow_direct(13, 12),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(s.constant_term_pow_direct(13, 13).is_ok());
    }

    #[test]
    fn gr24_flows_of_value_one_are_the_two_paths() {
        let s = sp(2, 4);
        let flows = s.flows(1);
        assert_eq!(flows.len(), 2);
        for f in &flows {
            assert!(s.is_valid_flow(f));
            assert_eq!(f.multinomial_weight(), BigInt::from(24));
        }
    }

    #[test]
    fn flows_conserve_and_sum_to_a_m() {
        for (k, n, m) in [(2, 4, 3), (2, 5, 2), (1, 4, 3), (3, 6, 1)] {
            let s = sp(k, n);
            let flows = s.flows(m);
            let mut total = BigInt::zero();
            for f in &flows {
                assert!(s.is_valid_flow(f));
                total += f.multinomial_weight();
            }
            assert_eq!(total, s.constant_term_pow_flows(m as u32 * n).coeff);
            let mut sorted = flows.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), flows.len());
        }
    }

    #[test]
    fn a_series_examples() {
        let rows = |k, n, mm| {
            sp(k, n)
                .a_series(mm)
                .into_iter()
                .map(|r| r.a_m)
                .collect::<Vec<_>>()
        };
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(rows(1, 2, 3), ints(&[1, 2, 6, 20]));
        assert_eq!(rows(2, 4, 2), ints(&[1, 48, 15120]));
        assert_eq!(rows(1, 4, 1)[1], BigInt::from(24));
    }

    #[test]
    fn exp_series_coefficients() {
        use crate::algebra::rat;
        let s = sp(2, 4);
        assert_eq!(s.exp_series_coeff(0), rat(1, 1));
        assert_eq!(s.exp_series_coeff(1), rat(2, 1));
        assert_eq!(s.exp_series_coeff(2), rat(24, 64));
        assert_eq!(sp(1, 3).exp_series_coeff(2), rat(1, 8));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1, 1]), BigInt::from(24));
        assert_eq!(multinomial(&[2, 2]), BigInt::from(6));
        assert_eq!(multinomial(&[0, 3, 0]), BigInt::one());
        assert_eq!(multinomial(&[]), BigInt::one());
    }
}
