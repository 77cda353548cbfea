//! The acceptance suite behind `verify-all`.
//!
//! Every check compares library output with an independent closed form or
//! with a second engine. Random samples come from a seeded generator, one
//! stream per check, so results do not depend on scheduling.

use std::thread;
use std::time::{Duration, Instant};

use grlimit_core::algebra::BigRat;
use grlimit_core::combinatorics::Shape;
use grlimit_core::dwork::{
    check_congruences, dwork_ratio_check, factorization_check, CongruenceInputs, DEFAULT_MAX_M,
};
use grlimit_core::master::{hbar_limit_check, phi_series};
use grlimit_core::polytope::{
    exponent_points, interior_lattice_points, newton_polytope, rect_generators, reflexivity_check,
    DEFAULT_MAX_DIM,
};
use grlimit_core::superpotential::{Superpotential, DEFAULT_POWER_BUDGET};
use grlimit_core::vertex::{vertex_coeff_generic, vertex_coeff_u0, VertexBudget, VertexParams};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = fn(&mut StdRng) -> Result<String, String>;

const CHECKS: [(u32, &str, Check); 11] = [
    (1, "Gr(2,4) A-series closed form, both engines", gr24_series),
    (2, "P^{n-1} A-series closed form", projective_series),
    (3, "constant terms vanish unless n | d", vanishing),
    (4, "flow enumeration equals pruned powering", engines_agree),
    (5, "T*P^1 vertex coefficients", p1_vertex),
    (
        6,
        "integral representation matches vertex sum",
        integral_representation,
    ),
    (7, "hbar limit: degree and leading coefficient", hbar_limit),
    (8, "Dwork congruences and mutation", dwork),
    (9, "infinite factorization", factorization),
    (
        10,
        "Newton polytope reflexive with unique interior point",
        polytope,
    ),
    (11, "generic P^1 parameters match 2F1", generic_p1),
];

/// Runs the selected checks (all when `only` is `None`) on separate threads.
pub fn run_all(seed: u64, only: Option<&[u32]>) -> Vec<CheckResult> {
    let selected: Vec<_> = CHECKS
        .iter()
        .filter(|(id, _, _)| only.is_none_or(|ids| ids.contains(id)))
        .collect();
    thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&&(id, name, check)| {
                let handle = scope.spawn(move || {
                    let mut rng = StdRng::seed_from_u64(
                        seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                    );
                    let start = Instant::now();
                    let outcome = check(&mut rng);
                    let elapsed = start.elapsed();
                    let (pass, detail) = match outcome {
                        Ok(d) => (true, d),
                        Err(d) => (false, d),
                    };
                    CheckResult {
                        id,
                        name,
                        pass,
                        detail,
                        elapsed,
                    }
                });
                (id, name, handle)
            })
            .collect();
        handles
            .into_iter()
            .map(|(id, name, h)| {
                h.join().unwrap_or_else(|_| CheckResult {
                    id,
                    name,
                    pass: false,
                    detail: "check panicked".into(),
                    elapsed: Duration::ZERO,
                })
            })
            .collect()
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shape(k: u32, n: u32) -> Shape {
    Shape::new(k, n).expect("valid shape")
}

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(x)_d` for `d >= 0`.
fn rising(x: &BigRat, d: u32) -> BigRat {
    (0..d).fold(BigRat::one(), |acc, j| {
        acc * (x + BigRat::from_integer(j.into()))
    })
}

/// A rational with denominator >= 2 in lowest terms, so never an integer.
fn random_fraction(rng: &mut StdRng) -> BigRat {
    loop {
        let q = BigRat::new(
            rng.random_range(-60i64..=60).into(),
            rng.random_range(2i64..=15).into(),
        );
        if !q.is_integer() {
            return q;
        }
    }
}

fn gr24_closed(m: u64) -> BigInt {
    fact(2 * m) * fact(4 * m) / fact(m).pow(6)
}

fn projective_closed(n: u64, m: u64) -> BigInt {
    fact(n * m) / fact(m).pow(n as u32)
}

fn gr24_series(_: &mut StdRng) -> Result<String, String> {
    let sp = Superpotential::new(shape(2, 4));
    let rows = sp.a_series(5);
    for r in &rows {
        let want = gr24_closed(r.m as u64);
        ensure(r.a_m == want, || {
            format!("a_{} = {} but closed form gives {want}", r.m, r.a_m)
        })?;
        let direct = sp
            .constant_term_pow_direct(4 * r.m, 4 * r.m.max(1))
            .map_err(|e| e.to_string())?;
        ensure(direct.coeff == want, || {
            format!("direct powering gives {} for m = {}", direct.coeff, r.m)
        })?;
    }
    Ok(format!(
        "a_0..a_5 = {}",
        rows.iter()
            .map(|r| r.a_m.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn projective_series(_: &mut StdRng) -> Result<String, String> {
    for n in 2..=5u32 {
        for r in Superpotential::new(Shape::projective(n).expect("n >= 2")).a_series(4) {
            let want = projective_closed(n as u64, r.m as u64);
            ensure(r.a_m == want, || {
                format!("n = {n}: a_{} = {} but (nm)!/(m!)^n = {want}", r.m, r.a_m)
            })?;
        }
    }
    Ok("n = 2..5, m = 0..4".into())
}

const SMALL_SHAPES: [(u32, u32); 5] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 4)];

fn vanishing(_: &mut StdRng) -> Result<String, String> {
    let mut count = 0;
    for (k, n) in SMALL_SHAPES {
        let sp = Superpotential::new(shape(k, n));
        for d in (1..=12).filter(|d| d % n != 0) {
            let ct = sp
                .constant_term_pow_direct(d, DEFAULT_POWER_BUDGET)
                .map_err(|e| e.to_string())?;
            ensure(ct.coeff.is_zero(), || {
                format!("({k},{n}) d = {d}: constant term {}", ct.coeff)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} vanishing constant terms"))
}

fn engines_agree(_: &mut StdRng) -> Result<String, String> {
    let mut count = 0;
    for (k, n) in SMALL_SHAPES {
        let sp = Superpotential::new(shape(k, n));
        for d in 0..=12 {
            let flows = sp.constant_term_pow_flows(d);
            let direct = sp
                .constant_term_pow_direct(d, DEFAULT_POWER_BUDGET)
                .map_err(|e| e.to_string())?;
            ensure(flows.coeff == direct.coeff, || {
                format!(
                    "({k},{n}) d = {d}: flows {} vs direct {}",
                    flows.coeff, direct.coeff
                )
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (shape, d) pairs, 0 mismatches"))
}

fn p1_vertex(rng: &mut StdRng) -> Result<String, String> {
    let p1 = shape(1, 2);
    let series = phi_series(p1, 4).map_err(|e| e.to_string())?;
    for (d, c) in series.iter().enumerate() {
        let d = d as u32;
        // ((ω)_d / d!)^2 expanded: coefficients of Π(ω + j)
        let mut base = vec![BigRat::one()];
        for j in 0..d {
            let mut next = vec![BigRat::zero(); base.len() + 1];
            for (i, b) in base.iter().enumerate() {
                next[i + 1] += b;
                next[i] += b * BigRat::from_integer(j.into());
            }
            base = next;
        }
        let scale = BigRat::from_integer(fact(d as u64).pow(2));
        let mut want = vec![BigRat::zero(); 2 * base.len() - 1];
        for (i, a) in base.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                want[i + j] += a * b / &scale;
            }
        }
        while want.last().is_some_and(|x| x.is_zero()) {
            want.pop();
        }
        ensure(c.coeffs() == want.as_slice(), || format!("c_{d}(ω) = {c}"))?;
        for _ in 0..3 {
            let w = random_fraction(rng);
            let got =
                vertex_coeff_u0(p1, d, &w, &VertexBudget::default()).map_err(|e| e.to_string())?;
            let closed = (rising(&w, d) / BigRat::from_integer(fact(d as u64))).pow(2);
            ensure(got == closed, || {
                format!("d = {d}, ω = {w}: {got} vs {closed}")
            })?;
        }
    }
    Ok("d = 0..4, symbolic and at 3 random ω".into())
}

fn integral_representation(rng: &mut StdRng) -> Result<String, String> {
    let mut count = 0;
    for ((k, n), max_d) in [((1, 3), 3), ((2, 4), 2)] {
        let s = shape(k, n);
        let series = phi_series(s, max_d).map_err(|e| e.to_string())?;
        for d in 0..=max_d {
            for _ in 0..3 {
                let w = random_fraction(rng);
                let lhs = series[d as usize].eval(&w);
                let rhs = vertex_coeff_u0(s, d, &w, &VertexBudget::default())
                    .map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("({k},{n}) d = {d} ω = {w}: {lhs} vs {rhs}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} evaluations equal"))
}

fn hbar_limit(_: &mut StdRng) -> Result<String, String> {
    let mut count = 0;
    for ((k, n), max_d) in [((1, 2), 4), ((1, 3), 3), ((1, 4), 2), ((2, 4), 2)] {
        let closed = |m: u64| {
            if k == 2 {
                gr24_closed(m)
            } else {
                projective_closed(n as u64, m)
            }
        };
        for d in 0..=max_d {
            let r = hbar_limit_check(shape(k, n), d).map_err(|e| e.to_string())?;
            let scaled = &r.leading * BigRat::from_integer(fact((n * d) as u64));
            ensure(
                r.pass() && scaled == BigRat::from_integer(closed(d as u64)),
                || {
                    format!(
                        "({k},{n}) d = {d}: degree {:?}, leading {} vs {}",
                        r.degree, r.leading, r.expected
                    )
                },
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} coefficients"))
}

fn dwork(_: &mut StdRng) -> Result<String, String> {
    let mut count = 0;
    for (k, n) in [(1, 2), (1, 3), (2, 4)] {
        for p in [2u64, 3, 5] {
            for s in [1u32, 2] {
                let cutoff = p.pow(s).min(8) as usize;
                let r = dwork_ratio_check(shape(k, n), p, s, cutoff).map_err(|e| e.to_string())?;
                ensure(r.pass(), || {
                    format!(
                        "({k},{n}) p = {p} s = {s}: fails at {:?}",
                        r.first_failure_degree()
                    )
                })?;
                let mut inputs =
                    CongruenceInputs::compute(shape(k, n), p, s, cutoff, DEFAULT_MAX_M)
                        .map_err(|e| e.to_string())?;
                if inputs.current.len() < 2 {
                    inputs.current.resize(2, BigInt::zero());
                }
                inputs.current[1] += BigInt::from(p.pow(s - 1));
                let m = check_congruences(&inputs, p, s, cutoff).map_err(|e| e.to_string())?;
                ensure(!m.pass(), || {
                    format!("({k},{n}) p = {p} s = {s}: perturbed input still passes")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases pass, every perturbation detected"))
}

fn factorization(_: &mut StdRng) -> Result<String, String> {
    for (k, n) in [(1, 2), (1, 3)] {
        for levels in 0..=2 {
            let r = factorization_check(shape(k, n), 3, 1, levels, 6).map_err(|e| e.to_string())?;
            ensure(r.pass(), || {
                format!(
                    "({k},{n}) levels = {levels}: fails at {:?}",
                    r.first_failure_degree
                )
            })?;
        }
    }
    Ok("P^1, P^2 with p = 3, s = 1, levels 0..2".into())
}

fn polytope(_: &mut StdRng) -> Result<String, String> {
    for (k, n) in [(1, 2), (1, 3), (1, 4), (2, 4)] {
        let s = shape(k, n);
        ensure(exponent_points(s) == rect_generators(s), || {
            format!("({k},{n}): exponent points differ from generators")
        })?;
        let p = newton_polytope(s, DEFAULT_MAX_DIM).map_err(|e| e.to_string())?;
        let r = reflexivity_check(&p);
        ensure(r.reflexive, || {
            format!("({k},{n}): facet {:?} has rhs != 1", r.witness)
        })?;
        let interior = interior_lattice_points(&p).map_err(|e| e.to_string())?;
        ensure(interior == vec![vec![0; p.dim]], || {
            format!("({k},{n}): interior points {interior:?}")
        })?;
    }
    Ok("(1,2), (1,3), (1,4), (2,4)".into())
}

fn generic_p1(rng: &mut StdRng) -> Result<String, String> {
    let p1 = shape(1, 2);
    let one = BigRat::one();
    let mut count = 0;
    while count < 6 {
        let w = random_fraction(rng);
        let (u1, u2) = (random_fraction(rng), random_fraction(rng));
        let b = &w + &u2 - &u1;
        let c = &one + &u2 - &u1;
        if c.is_integer() && c <= BigRat::zero() {
            continue;
        }
        let params = VertexParams {
            u: vec![u1, u2],
            omega: w.clone(),
        };
        for d in 0..=5 {
            let got = vertex_coeff_generic(p1, d, &params).map_err(|e| e.to_string())?;
            let want = rising(&w, d) * rising(&b, d)
                / (rising(&c, d) * BigRat::from_integer(fact(d as u64)));
            ensure(got == want, || format!("d = {d}, ω = {w}: {got} vs {want}"))?;
        }
        count += 1;
    }
    Ok(format!("{count} parameter samples, d = 0..5"))
}
