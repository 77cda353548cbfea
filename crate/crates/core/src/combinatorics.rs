//! Shapes `(k, n)`, their boxes and weights, and the flow graph.
//!
//! Boxes are addressed canonically by [`ColumnBox`] `(col, row)` in the
//! rotated-rectangle picture: column `i` holds `v_i` boxes. The weight of a
//! box is `|i - k| + 2j - 1`; it runs from 1 at `(k, 1)` to `n - 1` at
//! `(n - k, k)`. [`RectBox`] is the same box seen in the upright
//! `k × (n - k)` rectangle.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    k: u32,
    n: u32,
}

impl Shape {
    /// Requires `n >= 2k >= 2`. Shapes with `n < 2k` are rejected rather than
    /// replaced by their dual.
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidShape {
                k,
                n,
                reason: "k must be positive".into(),
            });
        }
        if n < 2 * k {
            return Err(Error::InvalidShape {
                k,
                n,
                reason: format!(
                    "need n >= 2k; use the dual shape Gr({}, {}) instead",
                    n.saturating_sub(k),
                    n
                ),
            });
        }
        Ok(Self { k, n })
    }

    /// Projective space `P^{n-1}`, i.e. `k = 1`.
    pub fn projective(n: u32) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `k(n - k)`, the number of boxes.
    pub fn dim(&self) -> usize {
        (self.k * (self.n - self.k)) as usize
    }

    /// Height `v_i` of column `i`, for `1 <= i <= n - 1`.
    pub fn column_height(&self, i: u32) -> u32 {
        let (k, n) = (self.k, self.n);
        if i < k {
            i
        } else if i <= n - k {
            k
        } else {
            n - i
        }
    }

    /// `[v_1, ..., v_{n-1}]`.
    pub fn dimension_vector(&self) -> Vec<u32> {
        (1..self.n).map(|i| self.column_height(i)).collect()
    }

    pub fn contains(&self, b: ColumnBox) -> bool {
        b.col >= 1 && b.col < self.n && b.row >= 1 && b.row <= self.column_height(b.col)
    }

    /// All boxes, ordered by column then row. This order fixes the slot of
    /// each box in exponent vectors.
    pub fn boxes(&self) -> Vec<ColumnBox> {
        (1..self.n)
            .flat_map(|col| (1..=self.column_height(col)).map(move |row| ColumnBox { col, row }))
            .collect()
    }

    /// Slot of `b` in [`Shape::boxes`].
    pub fn box_index(&self, b: ColumnBox) -> Option<usize> {
        if !self.contains(b) {
            return None;
        }
        let before: u32 = (1..b.col).map(|i| self.column_height(i)).sum();
        Some((before + b.row - 1) as usize)
    }

    fn check_box(&self, b: ColumnBox) -> Result<()> {
        if self.contains(b) {
            Ok(())
        } else {
            Err(Error::InvalidBox {
                k: self.k,
                n: self.n,
                col: b.col,
                row: b.row,
            })
        }
    }

    /// `m_{i,j} = |i - k| + 2j - 1`.
    pub fn weight(&self, b: ColumnBox) -> Result<u32> {
        self.check_box(b)?;
        Ok(self.k.abs_diff(b.col) + 2 * b.row - 1)
    }

    pub fn vertex_weight(&self, v: VertexId) -> u32 {
        match v {
            VertexId::Z1 => 0,
            VertexId::Z2 => self.n,
            VertexId::Box(b) => self.k.abs_diff(b.col) + 2 * b.row - 1,
        }
    }

    /// The rectangle coordinates of a box: `col = n - k + r - c` and
    /// `weight = n + 1 - r - c`. Rect `(1,1)` is the top box `(n-k, k)` and
    /// rect `(k, n-k)` is the bottom box `(k, 1)`.
    pub fn rect_of_column(&self, b: ColumnBox) -> Result<RectBox> {
        let w = self.weight(b)?;
        let r = (b.col + self.k + 1 - w) / 2;
        let c = (2 * self.n + 1 - w - b.col - self.k) / 2;
        Ok(RectBox { r, c })
    }

    pub fn column_of_rect(&self, rb: RectBox) -> Result<ColumnBox> {
        let (k, n) = (self.k, self.n);
        if rb.r < 1 || rb.r > k || rb.c < 1 || rb.c > n - k {
            return Err(Error::InvalidArgument(format!(
                "rect box ({}, {}) outside the {}x{} rectangle",
                rb.r,
                rb.c,
                k,
                n - k
            )));
        }
        let col = n - k + rb.r - rb.c;
        let w = n + 1 - rb.r - rb.c;
        let row = (w + 1 - k.abs_diff(col)) / 2;
        Ok(ColumnBox { col, row })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnBox {
    pub col: u32,
    pub row: u32,
}

impl ColumnBox {
    pub const fn new(col: u32, row: u32) -> Self {
        Self { col, row }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectBox {
    pub r: u32,
    pub c: u32,
}

impl RectBox {
    pub const fn new(r: u32, c: u32) -> Self {
        Self { r, c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Z1,
    Z2,
    Box(ColumnBox),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

/// The oriented graph on the boxes plus `z1`, `z2`.
///
/// Vertex `i < dim` is the `i`-th box of [`Shape::boxes`]; vertex `dim` is
/// `z1` and `dim + 1` is `z2`, matching the slot layout of exponent vectors.
/// Each edge points from the larger weight to the smaller, weights differing
/// by exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowGraph {
    shape: Shape,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl FlowGraph {
    pub fn new(shape: Shape) -> Self {
        let mut vertices: Vec<VertexId> = shape.boxes().into_iter().map(VertexId::Box).collect();
        let dim = vertices.len();
        vertices.push(VertexId::Z1);
        vertices.push(VertexId::Z2);
        let w = |v: &VertexId| shape.vertex_weight(*v);

        let mut edges = Vec::new();
        for (ti, tv) in vertices[..dim].iter().enumerate() {
            for (hi, hv) in vertices[..dim].iter().enumerate() {
                let (VertexId::Box(t), VertexId::Box(h)) = (tv, hv) else {
                    unreachable!()
                };
                if t.col.abs_diff(h.col) == 1 && w(tv) == w(hv) + 1 {
                    edges.push(Edge { tail: ti, head: hi });
                }
            }
        }
        let bottom = shape
            .box_index(ColumnBox::new(shape.k, 1))
            .expect("bottom box");
        let top = shape
            .box_index(ColumnBox::new(shape.n - shape.k, shape.k))
            .expect("top box");
        edges.push(Edge {
            tail: bottom,
            head: dim,
        });
        edges.push(Edge {
            tail: dim + 1,
            head: top,
        });

        let key = |e: &Edge| {
            let col = |v: &VertexId| match v {
                VertexId::Box(b) => (b.col, b.row),
                _ => (0, 0),
            };
            let (tc, tr) = col(&vertices[e.tail]);
            (w(&vertices[e.tail]), tc, tr, col(&vertices[e.head]).0)
        };
        edges.sort_by_key(key);
        Self {
            shape,
            vertices,
            edges,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn z1(&self) -> usize {
        self.vertices.len() - 2
    }

    pub fn z2(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.shape.vertex_weight(self.vertices[v])
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        match v {
            VertexId::Z1 => Some(self.z1()),
            VertexId::Z2 => Some(self.z2()),
            VertexId::Box(b) => self.shape.box_index(b),
        }
    }

    /// Indices of edges leaving `v`, in canonical edge order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.tail == v)
            .map(|(i, _)| i)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.head == v)
            .map(|(i, _)| i)
    }

    /// Vertex indices sorted by decreasing weight (a topological order).
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(self.weight(v)), v));
        order
    }

    /// Number of directed paths from `z2` to `z1`.
    pub fn count_maximal_paths(&self) -> u64 {
        let mut paths = alloc::vec![0u64; self.vertices.len()];
        paths[self.z2()] = 1;
        for v in self.topological_order() {
            for e in self.out_edges(v) {
                paths[self.edges[e].head] += paths[v];
            }
        }
        paths[self.z1()]
    }

    /// Lengths of all maximal paths from `z2`; each must be `n`.
    pub fn maximal_path_lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![(self.z2(), 0usize)];
        while let Some((v, len)) = stack.pop() {
            let mut any = false;
            for e in self.out_edges(v) {
                any = true;
                stack.push((self.edges[e].head, len + 1));
            }
            if !any {
                out.push(len);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn shapes_up_to(nmax: u32) -> impl Iterator<Item = Shape> {
        (2..=nmax).flat_map(|n| (1..=n / 2).map(move |k| Shape::new(k, n).unwrap()))
    }

    #[test]
    fn dimension_vectors() {
        assert_eq!(Shape::new(2, 4).unwrap().dimension_vector(), vec![1, 2, 1]);
        assert_eq!(Shape::new(1, 2).unwrap().dimension_vector(), vec![1]);
        assert_eq!(
            Shape::new(4, 8).unwrap().dimension_vector(),
            vec![1, 2, 3, 4, 3, 2, 1]
        );
        assert_eq!(
            Shape::new(2, 6).unwrap().dimension_vector(),
            vec![1, 2, 2, 2, 1]
        );
    }

    #[test]
    fn invalid_shapes() {
        let err = Shape::new(3, 4).unwrap_err();
        assert!(matches!(&err, Error::InvalidShape { reason, .. } if reason.contains("Gr(1, 4)")));
        assert!(Shape::new(0, 4).is_err());
    }

    #[test]
    fn weights() {
        let s = Shape::new(2, 4).unwrap();
        assert_eq!(s.weight(ColumnBox::new(2, 1)).unwrap(), 1);
        assert_eq!(s.weight(ColumnBox::new(2, 2)).unwrap(), 3);
        assert_eq!(s.weight(ColumnBox::new(1, 1)).unwrap(), 2);
        assert!(matches!(
            s.weight(ColumnBox::new(1, 2)),
            Err(Error::InvalidBox { .. })
        ));
        assert!(s.weight(ColumnBox::new(4, 1)).is_err());
    }

    #[test]
    fn rect_bijection_examples() {
        let s = Shape::new(2, 4).unwrap();
        assert_eq!(
            s.rect_of_column(ColumnBox::new(2, 1)).unwrap(),
            RectBox::new(2, 2)
        );
        assert_eq!(
            s.rect_of_column(ColumnBox::new(2, 2)).unwrap(),
            RectBox::new(1, 1)
        );
        let p1 = Shape::new(1, 2).unwrap();
        assert_eq!(
            p1.rect_of_column(ColumnBox::new(1, 1)).unwrap(),
            RectBox::new(1, 1)
        );
        // P^3: the top box (3,1) is f_{1,1}
        let p3 = Shape::new(1, 4).unwrap();
        assert_eq!(
            p3.rect_of_column(ColumnBox::new(3, 1)).unwrap(),
            RectBox::new(1, 1)
        );
        assert_eq!(
            p3.rect_of_column(ColumnBox::new(1, 1)).unwrap(),
            RectBox::new(1, 3)
        );
    }

    #[test]
    fn box_counts_and_weight_extremes() {
        for s in shapes_up_to(12) {
            let boxes = s.boxes();
            assert_eq!(boxes.len(), s.dim());
            let ws: Vec<u32> = boxes.iter().map(|b| s.weight(*b).unwrap()).collect();
            assert_eq!(ws.iter().filter(|&&w| w == 1).count(), 1);
            assert_eq!(ws.iter().filter(|&&w| w == s.n() - 1).count(), 1);
            assert_eq!(s.weight(ColumnBox::new(s.k(), 1)).unwrap(), 1);
            assert_eq!(
                s.weight(ColumnBox::new(s.n() - s.k(), s.k())).unwrap(),
                s.n() - 1
            );
            for (i, b) in boxes.iter().enumerate() {
                assert_eq!(s.box_index(*b), Some(i));
            }
        }
    }

    #[test]
    fn rect_bijection_is_bijective_and_maps_adjacency_to_unit_steps() {
        for s in shapes_up_to(12) {
            let mut seen = alloc::collections::BTreeSet::new();
            for b in s.boxes() {
                let rb = s.rect_of_column(b).unwrap();
                assert!(rb.r >= 1 && rb.r <= s.k() && rb.c >= 1 && rb.c <= s.n() - s.k());
                assert_eq!(s.column_of_rect(rb).unwrap(), b);
                assert!(seen.insert(rb));
            }
            assert_eq!(seen.len(), s.dim());
            let g = FlowGraph::new(s);
            for e in g.edges() {
                if let (VertexId::Box(t), VertexId::Box(h)) =
                    (g.vertices()[e.tail], g.vertices()[e.head])
                {
                    let (a, b) = (s.rect_of_column(t).unwrap(), s.rect_of_column(h).unwrap());
                    assert_eq!(a.r.abs_diff(b.r) + a.c.abs_diff(b.c), 1);
                }
            }
        }
    }

    #[test]
    fn graph_invariants() {
        for s in shapes_up_to(12) {
            let g = FlowGraph::new(s);
            let expected = 2 * s.dim() + 2 - s.n() as usize;
            assert_eq!(g.edges().len(), expected, "{s:?}");
            for e in g.edges() {
                assert_eq!(g.weight(e.tail), g.weight(e.head) + 1);
            }
            assert_eq!(g.in_edges(g.z2()).count(), 0);
            assert_eq!(g.out_edges(g.z1()).count(), 0);
            for v in 0..s.dim() {
                assert!(g.in_edges(v).count() > 0 && g.out_edges(v).count() > 0);
            }
            if s.dim() <= 9 {
                assert!(g
                    .maximal_path_lengths()
                    .iter()
                    .all(|&l| l == s.n() as usize));
            }
        }
    }

    #[test]
    fn projective_graph_is_a_chain() {
        let s = Shape::projective(5).unwrap();
        let g = FlowGraph::new(s);
        assert_eq!(g.edges().len(), 5);
        assert_eq!(g.count_maximal_paths(), 1);
    }

    #[test]
    fn gr24_graph() {
        let g = FlowGraph::new(Shape::new(2, 4).unwrap());
        assert_eq!(g.edges().len(), 6);
        assert_eq!(g.count_maximal_paths(), 2);
        // canonical order starts with the z1 edge (tail weight 1) and ends with z2
        assert_eq!(g.edges()[0].head, g.z1());
        assert_eq!(g.edges()[5].tail, g.z2());
    }
}
