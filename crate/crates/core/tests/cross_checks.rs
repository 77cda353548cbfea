use grlimit_core::algebra::{rat, BigRat};
use grlimit_core::combinatorics::{FlowGraph, Shape};
use grlimit_core::master::phi_series;
use grlimit_core::superpotential::Superpotential;
use grlimit_core::vertex::{vertex_coeff_u0, VertexBudget};
use num_bigint::BigInt;
use proptest::prelude::*;

fn shapes() -> impl Strategy<Value = Shape> {
    (1u32..=3, 0u32..=3).prop_filter_map("n >= 2k", |(k, extra)| Shape::new(k, 2 * k + extra).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flows_are_conservative(s in shapes(), m in 0u64..=2) {
        let sp = Superpotential::new(s);
        let flows = sp.flows(m);
        prop_assert!(flows.iter().all(|f| sp.is_valid_flow(f) && f.value == m));
        let total = flows.iter().fold(BigInt::from(0), |acc, f| acc + f.multinomial_weight());
        prop_assert_eq!(total, sp.constant_term_pow_flows(m as u32 * s.n()).coeff);
    }

    #[test]
    fn graph_counts(s in shapes()) {
        let g = FlowGraph::new(s);
        let (k, n) = (s.k() as usize, s.n() as usize);
        prop_assert_eq!(g.edges().len(), 2 * k * (n - k) - n + 2);
        prop_assert_eq!(g.vertices().len(), k * (n - k) + 2);
    }

    #[test]
    fn p2_integral_representation(num in -40i64..40, den in 2i64..9, d in 0u32..=2) {
        let w: BigRat = rat(num, den);
        prop_assume!(!w.is_integer());
        let s = Shape::new(1, 3).unwrap();
        let c = &phi_series(s, d).unwrap()[d as usize];
        prop_assert_eq!(c.eval(&w), vertex_coeff_u0(s, d, &w, &VertexBudget::default()).unwrap());
    }
}
