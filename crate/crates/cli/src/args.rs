use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grlimit_core::algebra::BigRat;
use num_bigint::BigInt;
use num_traits::Zero;

/// Parses `p/q` or an integer.
pub fn parse_rat(s: &str) -> Result<BigRat, String> {
    let bad = || format!("`{s}` is not a rational number p/q");
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(format!("`{s}` has a zero denominator"));
    }
    Ok(BigRat::new(num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Flows,
    Direct,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "grlimit",
    version,
    about = "Exact vertex functions, superpotential constant terms and Dwork congruences for T*Gr(k,n)"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Directory for cached A-series and ω-polynomials (disabled if unset).
    #[arg(long, global = true, env = "GRLIMIT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Recompute every cache hit and fail if it differs.
    #[arg(long, global = true)]
    pub verify_cache: bool,

    #[command(flatten)]
    pub budgets: Budgets,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Budgets {
    /// Largest d for direct Laurent powering.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    pub power_budget: u32,

    /// Largest m for flow enumeration of a_m.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub a_max_m: u32,

    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub vertex_max_k: u32,

    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub vertex_max_n: u32,

    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    pub vertex_max_d: u32,

    /// Largest k(n-k) for the master-function expansion.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub phi_max_dim: u64,

    /// Largest n*D for the master-function expansion.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub phi_max_depth: u32,

    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub polytope_max_dim: u64,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct ShapeArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a_0, ..., a_M of the A-series.
    ASeries {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        max_m: u32,
    },
    /// The constant term of S^d.
    ConstantTerm {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "both")]
        engine: Engine,
        /// Include the pruned power S^d (direct engine) as a Laurent polynomial.
        #[arg(long)]
        terms: bool,
    },
    /// Vertex coefficient c_d at u = 0, or at explicit generic parameters.
    Vertex {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        d: u32,
        /// Rational ω as p/q.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        omega: BigRat,
        /// Comma-separated equivariant parameters u_1..u_n.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rat)]
        u: Option<Vec<BigRat>>,
    },
    /// c_0(ω), ..., c_D(ω) from the master-function expansion.
    PhiSeries {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long = "max-d", visible_alias = "D")]
        max_d: u32,
    },
    /// Degree and leading coefficient of c_d against a_d/(nd)!.
    LimitCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        d: u32,
    },
    /// Dwork congruences modulo p^s up to z^cutoff.
    DworkCheck {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        cutoff: usize,
        /// Also check the product formula with this many levels.
        #[arg(long)]
        levels: Option<u32>,
    },
    /// Newton polytope facets, reflexivity and interior lattice points.
    PolytopeCheck {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// The flow graph as JSON.
    Graph {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Runs the full acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run only these criteria (comma-separated ids).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u32>>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("3/6").unwrap(), BigRat::new(1.into(), 2.into()));
        assert_eq!(parse_rat("-4").unwrap(), BigRat::from_integer((-4).into()));
        assert_eq!(
            parse_rat(" 2 / -3 ").unwrap(),
            BigRat::new((-2).into(), 3.into())
        );
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/2/3").is_err());
        assert!(parse_rat("").is_err());
    }
}
