use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Avoid, CountableGraph, GraphError, Vertex};

/// The complement graph. A witness for `(A, B)` here is a base witness for
/// `(B, A)`.
#[derive(Clone)]
pub struct Complement {
    base: Arc<dyn CountableGraph>,
}

impl Complement {
    pub fn new(base: Arc<dyn CountableGraph>) -> Self {
        Complement { base }
    }
}

impl CountableGraph for Complement {
    fn name(&self) -> String {
        format!("complement:{}", self.base.name())
    }

    fn vertex(&self, n: usize) -> Vertex {
        self.base.vertex(n)
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        self.base.vertex_index(v)
    }

    fn has_vertex(&self, v: &Vertex) -> bool {
        self.base.has_vertex(v)
    }

    fn order(&self) -> Option<usize> {
        self.base.order()
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        x != y && !self.base.adjacent(x, y)
    }

    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, bound: Option<u64>) -> Result<Vertex, GraphError> {
        self.base.witness_avoiding(b, a, avoid, bound)
    }

    fn failure_bound(&self, constraints: usize) -> Option<f64> {
        self.base.failure_bound(constraints)
    }
}

/// The base graph with finitely many vertices removed. Witnesses are base
/// witnesses that avoid the removed vertices.
#[derive(Clone)]
pub struct DeleteVertices {
    base: Arc<dyn CountableGraph>,
    removed: BTreeSet<Vertex>,
    removed_indices: Vec<usize>,
}

impl DeleteVertices {
    pub fn new(base: Arc<dyn CountableGraph>, removed: impl IntoIterator<Item = Vertex>) -> Self {
        let removed: BTreeSet<Vertex> = removed.into_iter().filter(|v| base.has_vertex(v)).collect();
        let mut removed_indices: Vec<usize> = removed
            .iter()
            .map(|v| base.vertex_index(v).expect("finitely indexed vertex"))
            .collect();
        removed_indices.sort_unstable();
        DeleteVertices {
            base,
            removed,
            removed_indices,
        }
    }
}

impl CountableGraph for DeleteVertices {
    fn name(&self) -> String {
        let list: Vec<String> = self.removed.iter().map(|v| v.to_string()).collect();
        format!("delete:{}:{}", self.base.name(), list.join(","))
    }

    fn vertex(&self, n: usize) -> Vertex {
        let mut i = n;
        for &r in &self.removed_indices {
            if r <= i {
                i += 1;
            }
        }
        self.base.vertex(i)
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        if self.removed.contains(v) {
            return None;
        }
        let i = self.base.vertex_index(v)?;
        Some(i - self.removed_indices.iter().filter(|&&r| r < i).count())
    }

    fn has_vertex(&self, v: &Vertex) -> bool {
        self.base.has_vertex(v) && !self.removed.contains(v)
    }

    fn order(&self) -> Option<usize> {
        self.base.order().map(|n| n - self.removed.len())
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        self.base.adjacent(x, y)
    }

    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, bound: Option<u64>) -> Result<Vertex, GraphError> {
        self.base
            .witness_avoiding(a, b, &|v| self.removed.contains(v) || avoid(v), bound)
    }

    fn failure_bound(&self, constraints: usize) -> Option<f64> {
        self.base.failure_bound(constraints)
    }
}

/// The base graph with the adjacency of finitely many pairs flipped.
/// Witnesses are base witnesses outside the toggled pairs' endpoints, where
/// adjacency is unchanged.
#[derive(Clone)]
pub struct ToggleEdges {
    base: Arc<dyn CountableGraph>,
    pairs: BTreeSet<(Vertex, Vertex)>,
    touched: BTreeSet<Vertex>,
}

impl ToggleEdges {
    pub fn new(base: Arc<dyn CountableGraph>, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let pairs: BTreeSet<(Vertex, Vertex)> = pairs
            .into_iter()
            .filter(|(x, y)| x != y)
            .map(|(x, y)| if x < y { (x, y) } else { (y, x) })
            .collect();
        let touched = pairs.iter().flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
        ToggleEdges { base, pairs, touched }
    }
}

impl CountableGraph for ToggleEdges {
    fn name(&self) -> String {
        let list: Vec<String> = self.pairs.iter().map(|(x, y)| format!("{x}-{y}")).collect();
        format!("toggle:{}:{}", self.base.name(), list.join(","))
    }

    fn vertex(&self, n: usize) -> Vertex {
        self.base.vertex(n)
    }

    fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        self.base.vertex_index(v)
    }

    fn has_vertex(&self, v: &Vertex) -> bool {
        self.base.has_vertex(v)
    }

    fn order(&self) -> Option<usize> {
        self.base.order()
    }

    fn adjacent(&self, x: &Vertex, y: &Vertex) -> bool {
        let key = if x < y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
        self.base.adjacent(x, y) != self.pairs.contains(&key)
    }

    fn witness_avoiding(&self, a: &[Vertex], b: &[Vertex], avoid: Avoid<'_>, bound: Option<u64>) -> Result<Vertex, GraphError> {
        self.base
            .witness_avoiding(a, b, &|v| self.touched.contains(v) || avoid(v), bound)
    }

    fn failure_bound(&self, constraints: usize) -> Option<f64> {
        self.base.failure_bound(constraints)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{witness_violation, BitGraph};
    use super::*;

    fn v(n: u64) -> Vertex {
        Vertex::from(n)
    }

    fn bit() -> Arc<dyn CountableGraph> {
        Arc::new(BitGraph::new())
    }

    #[test]
    fn complement_swaps_adjacency() {
        let g = Complement::new(bit());
        assert!(!g.adjacent(&v(0), &v(1)));
        assert!(g.adjacent(&v(1), &v(4)));
        assert!(!g.adjacent(&v(2), &v(2)));
        let (a, b) = (vec![v(1)], vec![v(0)]);
        let w = g.witness(&a, &b).unwrap();
        assert_eq!(witness_violation(&g, &a, &b, &w), None);
    }

    #[test]
    fn delete_reindexes() {
        let g = DeleteVertices::new(bit(), [v(0), v(3)]);
        let first: Vec<Vertex> = (0..5).map(|i| g.vertex(i)).collect();
        assert_eq!(first, [v(1), v(2), v(4), v(5), v(6)]);
        for i in 0..50 {
            assert_eq!(g.vertex_index(&g.vertex(i)), Some(i));
        }
        assert_eq!(g.vertex_index(&v(3)), None);
        let w = g.witness(&[], &[]).unwrap();
        assert_eq!(w, v(1));
    }

    #[test]
    fn toggle_flips_only_listed_pairs() {
        let g = ToggleEdges::new(bit(), [(v(1), v(0))]);
        assert!(!g.adjacent(&v(0), &v(1)));
        assert!(g.adjacent(&v(0), &v(3)));
        assert_eq!(g.name(), "toggle:bit:0-1");
        let (a, b) = (vec![v(0)], vec![v(1)]);
        let w = g.witness(&a, &b).unwrap();
        assert_eq!(witness_violation(&g, &a, &b, &w), None);
    }
}
