//! The Newton polytope of `S(x, 1)`: exact facets, reflexivity and interior
//! lattice points.
//!
//! Coordinates use the rectangular basis `f_{r,c}`, indexed by
//! `(r-1)(n-k) + (c-1)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::combinatorics::{RectBox, Shape};
use crate::superpotential::Superpotential;
use crate::{Error, Result};

/// Largest dimension `k(n-k)` accepted by [`newton_polytope`] by default.
pub const DEFAULT_MAX_DIM: usize = 6;

/// Largest bounding box scanned by [`interior_lattice_points`].
pub const MAX_BOX_POINTS: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl Facet {
    pub fn value(&self, x: &[i64]) -> i64 {
        dot(&self.normal, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexivityReport {
    pub reflexive: bool,
    pub origin_interior: bool,
    /// A facet with `rhs != 1`, if any.
    pub witness: Option<Facet>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rect_index(shape: Shape, rb: RectBox) -> usize {
    ((rb.r - 1) * (shape.n() - shape.k()) + (rb.c - 1)) as usize
}

/// Exponent vectors of the monomials of `S(x, 1)` in the rectangular basis.
pub fn exponent_points(shape: Shape) -> Vec<Vec<i64>> {
    let boxes = shape.boxes();
    let slots: Vec<usize> = boxes
        .iter()
        .map(|&b| rect_index(shape, shape.rect_of_column(b).expect("box of shape")))
        .collect();
    let sp = Superpotential::new(shape);
    let mut out: Vec<Vec<i64>> = sp
        .poly()
        .terms()
        .map(|(e, _)| {
            let mut v = vec![0i64; shape.dim()];
            for (i, &slot) in slots.iter().enumerate() {
                v[slot] = e[i] as i64;
            }
            v
        })
        .collect();
    out.sort();
    out
}

/// The generators `f_{1,1}`, `f_{i,j+1} - f_{i-1,j+1}`, `-f_{k,n-k}` and
/// `f_{i,j+1} - f_{i,j}`, listed directly in the rectangular basis.
pub fn rect_generators(shape: Shape) -> Vec<Vec<i64>> {
    let (k, m) = (shape.k(), shape.n() - shape.k());
    let f = |r: u32, c: u32| rect_index(shape, RectBox { r, c });
    let unit = |slot: usize, sign: i64| {
        let mut v = vec![0i64; shape.dim()];
        v[slot] = sign;
        v
    };
    let diff = |plus: usize, minus: usize| {
        let mut v = unit(plus, 1);
        v[minus] = -1;
        v
    };
    let mut out = vec![unit(f(1, 1), 1), unit(f(k, m), -1)];
    for i in 2..=k {
        for j in 0..m {
            out.push(diff(f(i, j + 1), f(i - 1, j + 1)));
        }
    }
    for i in 1..=k {
        for j in 1..m {
            out.push(diff(f(i, j + 1), f(i, j)));
        }
    }
    out.sort();
    out
}

/// Determinant of a square integer matrix by fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if p != col {
            a.swap(p, col);
            sign = -sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[col][col];
    }
    sign * a[n - 1][n - 1]
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(p, rank);
        for r in rank + 1..a.len() {
            let (x, y) = (a[rank][col], a[r][col]);
            let pivot = a[rank].clone();
            for (v, p) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                *v = *v * x - p * y;
            }
            let g = a[r].iter().fold(0i128, |g, &v| g.gcd(&v));
            if g > 1 {
                a[r].iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Normal of the hyperplane through `base` and `others` (generalized cross
/// product of the difference vectors), or `None` if they are dependent.
fn hyperplane_normal(base: &[i64], others: &[&Vec<i64>]) -> Option<Vec<i64>> {
    let d = base.len();
    let rows: Vec<Vec<i128>> = others
        .iter()
        .map(|p| p.iter().zip(base).map(|(&x, &y)| (x - y) as i128).collect())
        .collect();
    let normal: Vec<i128> = (0..d)
        .map(|skip| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != skip)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let m = if d == 1 { 1 } else { det(minor) };
            if skip % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    let g = normal.iter().fold(0i128, |g, &v| g.gcd(&v));
    if g == 0 {
        return None;
    }
    Some(
        normal
            .iter()
            .map(|&v| i64::try_from(v / g).expect("normal fits in i64"))
            .collect(),
    )
}

fn combinations(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..r).collect();
    if r > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + n - r) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact convex hull of full-dimensional integer points.
///
/// Every `dim`-subset of points spanning a hyperplane is tested as a
/// candidate facet, which is fine for the small dimensions involved.
pub fn convex_hull(points: &[Vec<i64>]) -> Result<LatticePolytope> {
    let Some(first) = points.first() else {
        return Err(Error::Degenerate { rank: 0, dim: 0 });
    };
    let dim = first.len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidArgument(
            "points of different dimension".into(),
        ));
    }
    let mut pts: Vec<Vec<i64>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let diffs: Vec<Vec<i64>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(x, y)| x - y).collect())
        .collect();
    let r = rank(&diffs);
    if r < dim || dim == 0 {
        return Err(Error::Degenerate { rank: r, dim });
    }
    let mut facets = BTreeSet::new();
    combinations(pts.len(), dim, |idx| {
        let others: Vec<&Vec<i64>> = idx[1..].iter().map(|&i| &pts[i]).collect();
        let Some(mut normal) = hyperplane_normal(&pts[idx[0]], &others) else {
            return;
        };
        let mut rhs = dot(&normal, &pts[idx[0]]);
        let (mut above, mut below) = (false, false);
        for p in &pts {
            let v = dot(&normal, p);
            above |= v > rhs;
            below |= v < rhs;
        }
        if above && below {
            return;
        }
        if above {
            normal.iter_mut().for_each(|x| *x = -*x);
            rhs = -rhs;
        }
        facets.insert((normal, rhs));
    });
    Ok(LatticePolytope {
        dim,
        points: pts,
        facets: facets
            .into_iter()
            .map(|(normal, rhs)| Facet { normal, rhs })
            .collect(),
    })
}

/// `Δ(k, n)`, the hull of [`exponent_points`].
pub fn newton_polytope(shape: Shape, max_dim: usize) -> Result<LatticePolytope> {
    if shape.dim() > max_dim {
        return Err(Error::BudgetExceeded(format!(
            "polytope dimension {} exceeds {max_dim}",
            shape.dim()
        )));
    }
    convex_hull(&exponent_points(shape))
}

/// Reflexive iff the origin is interior and every facet reads `⟨a, x⟩ <= 1`.
pub fn reflexivity_check(p: &LatticePolytope) -> ReflexivityReport {
    let origin_interior = p.facets.iter().all(|f| f.rhs > 0);
    let witness = p
        .facets
        .iter()
        .find(|f| f.rhs <= 0)
        .or_else(|| p.facets.iter().find(|f| f.rhs != 1))
        .cloned();
    ReflexivityReport {
        reflexive: witness.is_none(),
        origin_interior,
        witness,
    }
}

/// Lattice points strictly inside every facet, scanning the bounding box.
pub fn interior_lattice_points(p: &LatticePolytope) -> Result<Vec<Vec<i64>>> {
    let lo: Vec<i64> = (0..p.dim)
        .map(|i| p.points.iter().map(|x| x[i]).min().unwrap_or(0))
        .collect();
    let hi: Vec<i64> = (0..p.dim)
        .map(|i| p.points.iter().map(|x| x[i]).max().unwrap_or(0))
        .collect();
    let size: u128 = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (b - a + 1) as u128)
        .product();
    if size > MAX_BOX_POINTS {
        return Err(Error::BudgetExceeded(format!(
            "bounding box has {size} points"
        )));
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if p.facets.iter().all(|f| f.value(&x) < f.rhs) {
            out.push(x.clone());
        }
        let Some(i) = (0..p.dim).rev().find(|&i| x[i] < hi[i]) else {
            return Ok(out);
        };
        x[i] += 1;
        x[i + 1..].copy_from_slice(&lo[i + 1..]);
    }
}
