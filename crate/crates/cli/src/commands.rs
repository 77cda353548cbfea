use std::io::Write;

use grlimit_core::algebra::{BigRat, LaurentPoly, Ring, UniPoly, ZMod, ZSeries};
use grlimit_core::combinatorics::{FlowGraph, Shape, VertexId};
use grlimit_core::dwork::{check_congruences, factorization_check, CongruenceInputs};
use grlimit_core::master::{hbar_limit_check_with, phi_series_with, MasterBudget, MasterOptions};
use grlimit_core::polytope::{
    exponent_points, interior_lattice_points, newton_polytope, rect_generators, reflexivity_check,
};
use grlimit_core::superpotential::Superpotential;
use grlimit_core::vertex::{vertex_coeff_generic, vertex_coeff_u0, VertexBudget, VertexParams};
use grlimit_core::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Engine, ShapeArgs};
use crate::cache::{cache_key, Cache};
use crate::checks;
use crate::output::Output;
use crate::CliError;

type Res<T> = Result<T, CliError>;

fn shape_of(a: ShapeArgs) -> Res<Shape> {
    Ok(Shape::new(a.k, a.n)?)
}

fn budget_error(msg: String) -> CliError {
    CliError::Core(Error::BudgetExceeded(msg))
}

fn poly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!(c.to_string())).collect())
}

/// `{"arity": n, "terms": [{"exp": [...], "coeff": "..."}]}`
pub fn laurent_json<R: Ring>(p: &LaurentPoly<R>, coeff: impl Fn(&R::Elem) -> String) -> Value {
    json!({
        "arity": p.arity(),
        "terms": p.terms().map(|(e, c)| json!({"exp": e.as_slice(), "coeff": coeff(c)})).collect::<Vec<_>>(),
    })
}

/// `{"modulus": q, "cutoff": N, "coeffs": ["c_0", ..., "c_N"]}`
pub fn zseries_json(s: &ZSeries<ZMod>) -> Value {
    json!({
        "modulus": s.ring().modulus(),
        "cutoff": s.cutoff(),
        "coeffs": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn graph_json(g: &FlowGraph) -> Value {
    let shape = g.shape();
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|v| match v {
            VertexId::Box(b) => json!({
                "type": "box",
                "col": b.col,
                "row": b.row,
                "weight": shape.weight(*b).expect("box of shape"),
            }),
            VertexId::Z1 => json!({"type": "z1"}),
            VertexId::Z2 => json!({"type": "z2"}),
        })
        .collect();
    let edges: Vec<Value> = g.edges().iter().map(|e| json!([e.tail, e.head])).collect();
    json!({"k": shape.k(), "n": shape.n(), "vertices": vertices, "edges": edges})
}

struct Ctx<'a> {
    cli: &'a Cli,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn cache(&self) -> Option<Cache> {
        if self.cli.no_cache {
            return None;
        }
        self.cli.cache_dir.as_ref().map(Cache::new)
    }

    fn cached(&mut self, key: String, compute: impl FnOnce() -> Res<Value>) -> Res<Value> {
        let Some(cache) = self.cache() else {
            return compute();
        };
        if let Some(hit) = cache.get(&key) {
            if self.cli.verify_cache {
                let fresh = compute()?;
                if serde_json::to_string(&fresh)? != serde_json::to_string(&hit.value)? {
                    return Err(CliError::CacheMismatch(key));
                }
            }
            return Ok(hit.value);
        }
        let value = compute()?;
        if let Err(e) = cache.put(&key, &value) {
            let _ = writeln!(
                self.err,
                "warning: cache write to {} failed: {e}",
                cache.dir().display()
            );
        }
        Ok(value)
    }

    fn master_options(&self) -> MasterOptions {
        MasterOptions {
            budget: MasterBudget {
                max_dim: self.cli.budgets.phi_max_dim as usize,
                max_depth: self.cli.budgets.phi_max_depth,
            },
            include_delta: true,
        }
    }

    fn vertex_budget(&self) -> VertexBudget {
        VertexBudget {
            max_k: self.cli.budgets.vertex_max_k,
            max_n: self.cli.budgets.vertex_max_n,
            max_d: self.cli.budgets.vertex_max_d,
        }
    }

    fn check_m(&self, m: u64) -> Res<()> {
        if m > self.cli.budgets.a_max_m as u64 {
            return Err(budget_error(format!(
                "flow enumeration limited to m <= {}, got m = {m}",
                self.cli.budgets.a_max_m
            )));
        }
        Ok(())
    }
}

pub fn execute(cli: &Cli, err: &mut dyn Write) -> Res<Output> {
    let mut ctx = Ctx { cli, err };
    match &cli.command {
        Command::ASeries { shape, max_m } => a_series(&mut ctx, shape_of(*shape)?, *max_m),
        Command::ConstantTerm {
            shape,
            d,
            engine,
            terms,
        } => constant_term(&ctx, shape_of(*shape)?, *d, *engine, *terms),
        Command::Vertex { shape, d, omega, u } => {
            vertex(&ctx, shape_of(*shape)?, *d, omega, u.as_deref())
        }
        Command::PhiSeries { shape, max_d } => phi_series(&mut ctx, shape_of(*shape)?, *max_d),
        Command::LimitCheck { shape, d } => limit_check(&ctx, shape_of(*shape)?, *d),
        Command::DworkCheck {
            shape,
            p,
            s,
            cutoff,
            levels,
        } => dwork_check(&ctx, shape_of(*shape)?, *p, *s, *cutoff, *levels),
        Command::PolytopeCheck { shape } => polytope_check(&ctx, shape_of(*shape)?),
        Command::Graph { shape } => {
            let g = FlowGraph::new(shape_of(*shape)?);
            let rows = g
                .edges()
                .iter()
                .map(|e| vec![e.tail.to_string(), e.head.to_string()])
                .collect();
            Ok(Output::new(graph_json(&g), &["tail", "head"], rows))
        }
        Command::VerifyAll { seed, only } => verify_all(*seed, only.as_deref()),
    }
}

fn a_series(ctx: &mut Ctx, shape: Shape, max_m: u32) -> Res<Output> {
    ctx.check_m(max_m as u64)?;
    let key = cache_key(
        "a-series",
        &[
            ("k", shape.k().to_string()),
            ("n", shape.n().to_string()),
            ("max_m", max_m.to_string()),
        ],
    );
    let value = ctx.cached(key, || {
        let rows: Vec<Value> = Superpotential::new(shape)
            .a_series(max_m)
            .into_iter()
            .map(|r| json!({"m": r.m, "a_m": r.a_m.to_string()}))
            .collect();
        Ok(json!({"k": shape.k(), "n": shape.n(), "rows": rows}))
    })?;
    let rows = value["rows"]
        .as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| {
                    vec![
                        r["m"].to_string(),
                        r["a_m"].as_str().unwrap_or_default().to_string(),
                    ]
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(Output::new(value, &["m", "a_m"], rows))
}

fn constant_term(ctx: &Ctx, shape: Shape, d: u32, engine: Engine, terms: bool) -> Res<Output> {
    let sp = Superpotential::new(shape);
    let mut engines = serde_json::Map::new();
    let mut values: Vec<BigInt> = Vec::new();
    let mut m = None;
    if matches!(engine, Engine::Flows | Engine::Both) {
        ctx.check_m((d / shape.n()) as u64)?;
        let ct = sp.constant_term_pow_flows(d);
        m = ct.m;
        engines.insert("flows".into(), json!(ct.coeff.to_string()));
        values.push(ct.coeff);
    }
    if matches!(engine, Engine::Direct | Engine::Both) {
        let ct = sp.constant_term_pow_direct(d, ctx.cli.budgets.power_budget)?;
        m = ct.m;
        engines.insert("direct".into(), json!(ct.coeff.to_string()));
        values.push(ct.coeff);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    let mut json = json!({
        "k": shape.k(),
        "n": shape.n(),
        "d": d,
        "m": m,
        "coeff": values[0].to_string(),
        "engines": engines,
        "agree": agree,
    });
    if terms {
        let power = sp.power_pruned(d, ctx.cli.budgets.power_budget)?;
        json["power"] = laurent_json(&power, |c| c.to_string());
    }
    let rows = vec![vec![
        d.to_string(),
        m.map(|m| m.to_string()).unwrap_or_default(),
        values[0].to_string(),
    ]];
    Ok(Output::new(json, &["d", "m", "coeff"], rows).with_pass(agree))
}

fn vertex(ctx: &Ctx, shape: Shape, d: u32, omega: &BigRat, u: Option<&[BigRat]>) -> Res<Output> {
    let budget = ctx.vertex_budget();
    let (value, json) = match u {
        None => {
            let v = vertex_coeff_u0(shape, d, omega, &budget)?;
            let j = json!({"d": d, "omega": omega.to_string(), "value": v.to_string()});
            (v, j)
        }
        Some(u) => {
            budget.check(shape, d)?;
            let params = VertexParams {
                u: u.to_vec(),
                omega: omega.clone(),
            };
            let v = vertex_coeff_generic(shape, d, &params)?;
            let j = json!({
                "d": d,
                "omega": omega.to_string(),
                "u": u.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "value": v.to_string(),
            });
            (v, j)
        }
    };
    let rows = vec![vec![d.to_string(), omega.to_string(), value.to_string()]];
    Ok(Output::new(json, &["d", "omega", "value"], rows))
}

fn phi_series(ctx: &mut Ctx, shape: Shape, max_d: u32) -> Res<Output> {
    let opts = ctx.master_options();
    let key = cache_key(
        "phi-series",
        &[
            ("k", shape.k().to_string()),
            ("n", shape.n().to_string()),
            ("max_d", max_d.to_string()),
        ],
    );
    // budgets are checked before the cache so limits behave the same either way
    if shape.dim() > opts.budget.max_dim || shape.n() * max_d > opts.budget.max_depth {
        phi_series_with(shape, max_d, &opts)?;
    }
    let value = ctx.cached(key, || {
        let series = phi_series_with(shape, max_d, &opts)?;
        let coeffs: Vec<Value> = series
            .iter()
            .enumerate()
            .map(|(d, p)| json!({"d": d, "degree": p.degree(), "coeffs": poly_json(p)}))
            .collect();
        Ok(json!({"k": shape.k(), "n": shape.n(), "max_d": max_d, "coefficients": coeffs}))
    })?;
    let mut rows = Vec::new();
    for entry in value["coefficients"].as_array().into_iter().flatten() {
        for (power, c) in entry["coeffs"].as_array().into_iter().flatten().enumerate() {
            rows.push(vec![
                entry["d"].to_string(),
                power.to_string(),
                c.as_str().unwrap_or_default().to_string(),
            ]);
        }
    }
    Ok(Output::new(value, &["d", "power", "coeff"], rows))
}

fn limit_check(ctx: &Ctx, shape: Shape, d: u32) -> Res<Output> {
    let r = hbar_limit_check_with(shape, d, &ctx.master_options())?;
    let json = json!({
        "degree_ok": r.degree_ok,
        "leading": r.leading.to_string(),
        "expected": r.expected.to_string(),
        "k": shape.k(),
        "n": shape.n(),
        "d": d,
        "degree": r.degree,
        "expected_degree": r.expected_degree,
        "pass": r.pass(),
    });
    let rows = vec![vec![
        d.to_string(),
        r.degree.map(|x| x.to_string()).unwrap_or_default(),
        r.expected_degree.to_string(),
        r.leading.to_string(),
        r.expected.to_string(),
        r.pass().to_string(),
    ]];
    Ok(Output::new(
        json,
        &[
            "d",
            "degree",
            "expected_degree",
            "leading",
            "expected",
            "pass",
        ],
        rows,
    )
    .with_pass(r.pass()))
}

fn dwork_check(
    ctx: &Ctx,
    shape: Shape,
    p: u64,
    s: u32,
    cutoff: usize,
    levels: Option<u32>,
) -> Res<Output> {
    if cutoff as u64 > ctx.cli.budgets.a_max_m as u64 {
        return Err(budget_error(format!(
            "cutoff {cutoff} needs a_m for m > {}",
            ctx.cli.budgets.a_max_m
        )));
    }
    let inputs = CongruenceInputs::compute(shape, p, s, cutoff, ctx.cli.budgets.a_max_m)?;
    let r = check_congruences(&inputs, p, s, cutoff)?;
    let mut pass = r.pass();
    let mut json = json!({
        "p": p,
        "s": s,
        "cutoff": cutoff,
        "pass": r.pass(),
        "first_failure_degree": r.first_failure_degree(),
        "truncation_failure": r.truncation_failure,
        "full_failure": r.full_failure,
    });
    if let Some(levels) = levels {
        let f = factorization_check(shape, p, s, levels, cutoff)?;
        pass &= f.pass();
        json["pass"] = json!(pass);
        json["factorization"] = json!({
            "levels": levels,
            "pass": f.pass(),
            "first_failure_degree": f.first_failure_degree,
            "tail_trivial": f.tail_trivial,
        });
    }
    let ring = ZMod::new(p.pow(s));
    let series =
        |c: &[BigInt]| ZSeries::from_coeffs(ring, c.iter().map(|x| ring.reduce(x)), cutoff);
    json["truncations"] = json!({
        "current": zseries_json(&series(&inputs.current)),
        "previous": zseries_json(&series(&inputs.previous)),
    });
    let rows = vec![vec![
        p.to_string(),
        s.to_string(),
        cutoff.to_string(),
        pass.to_string(),
        r.first_failure_degree()
            .map(|x| x.to_string())
            .unwrap_or_default(),
    ]];
    Ok(Output::new(
        json,
        &["p", "s", "cutoff", "pass", "first_failure_degree"],
        rows,
    )
    .with_pass(pass))
}

fn polytope_check(ctx: &Ctx, shape: Shape) -> Res<Output> {
    let poly = newton_polytope(shape, ctx.cli.budgets.polytope_max_dim as usize)?;
    let generators_match = exponent_points(shape) == rect_generators(shape);
    let refl = reflexivity_check(&poly);
    let interior = interior_lattice_points(&poly)?;
    let unique_origin = interior == vec![vec![0i64; poly.dim]];
    let pass = generators_match && refl.reflexive && unique_origin;
    let facet_json = |f: &grlimit_core::polytope::Facet| json!({"normal": f.normal, "rhs": f.rhs});
    let json = json!({
        "k": shape.k(),
        "n": shape.n(),
        "dim": poly.dim,
        "points": poly.points,
        "generators_match": generators_match,
        "facets": poly.facets.iter().map(facet_json).collect::<Vec<_>>(),
        "reflexive": refl.reflexive,
        "origin_interior": refl.origin_interior,
        "witness": refl.witness.as_ref().map(facet_json),
        "interior_points": interior,
        "unique_interior_origin": unique_origin,
        "pass": pass,
    });
    let rows = poly
        .facets
        .iter()
        .map(|f| {
            vec![
                f.normal
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                f.rhs.to_string(),
            ]
        })
        .collect();
    Ok(Output::new(json, &["normal", "rhs"], rows).with_pass(pass))
}

fn verify_all(seed: u64, only: Option<&[u32]>) -> Res<Output> {
    let results = checks::run_all(seed, only);
    let pass = results.iter().all(|r| r.pass);
    let json = json!({
        "seed": seed,
        "criteria": results
            .iter()
            .map(|r| json!({"id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail}))
            .collect::<Vec<_>>(),
        "pass": pass,
    });
    let rows = results
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                r.name.to_string(),
                r.pass.to_string(),
                r.detail.clone(),
            ]
        })
        .collect();
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{} {:>2} {} ({}; {} ms)\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail,
            r.elapsed.as_millis()
        ));
    }
    text.push_str(if pass {
        "all checks passed\n"
    } else {
        "some checks failed\n"
    });
    Ok(Output::new(json, &["id", "name", "pass", "detail"], rows)
        .with_pass(pass)
        .with_pretty(text))
}
