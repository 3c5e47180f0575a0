use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{LeDiagram, Step};
use crate::labels::LabelSet;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Vertices order boundary nodes (by label) before dots (by row, then column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Boundary(usize),
    Dot(usize, usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Boundary(label) => write!(f, "b{label}"),
            Vertex::Dot(row, col) => write!(f, "d{row}.{col}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EdgeKind {
    Left,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeEdge {
    pub tail: VertexId,
    pub head: VertexId,
    pub kind: EdgeKind,
}

/// The planar DAG of a Le-diagram: boundary nodes plus one vertex per dot,
/// with LEFT edges along rows and DOWN edges along columns.
#[derive(Clone, Debug)]
pub struct LeGraph {
    n: usize,
    steps: Vec<Step>,
    basis: LabelSet,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, VertexId>,
    edges: Vec<LeEdge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl LeGraph {
    pub fn build(diagram: &LeDiagram) -> LeGraph {
        let n = diagram.n();
        let mut vertices: Vec<Vertex> = (1..=n).map(Vertex::Boundary).collect();
        vertices.extend(diagram.dots().iter().map(|&(i, j)| Vertex::Dot(i, j)));
        vertices.sort();
        let index: HashMap<Vertex, VertexId> =
            vertices.iter().enumerate().map(|(id, &v)| (v, id)).collect();

        let mut edges = Vec::new();
        let rows = diagram.rows();
        let cols = diagram.cols();
        for row in 1..=rows {
            // east to west: the V-node, then dots by decreasing column
            let mut chain = vec![Vertex::Boundary(diagram.row_label(row).expect("row label"))];
            chain.extend(
                diagram.dots().iter().rev().filter(|&&(i, _)| i == row).map(|&(i, j)| Vertex::Dot(i, j)),
            );
            for pair in chain.windows(2) {
                edges.push(LeEdge { tail: index[&pair[0]], head: index[&pair[1]], kind: EdgeKind::Left });
            }
        }
        for col in 1..=cols {
            // north to south: dots by increasing row, then the H-node
            let mut chain: Vec<Vertex> =
                diagram.dots().iter().filter(|&&(_, j)| j == col).map(|&(i, j)| Vertex::Dot(i, j)).collect();
            chain.push(Vertex::Boundary(diagram.col_label(col).expect("column label")));
            for pair in chain.windows(2) {
                edges.push(LeEdge { tail: index[&pair[0]], head: index[&pair[1]], kind: EdgeKind::Down });
            }
        }
        edges.sort_by_key(|e| (e.tail, e.head));

        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (id, edge) in edges.iter().enumerate() {
            out_edges[edge.tail].push(id);
            in_edges[edge.head].push(id);
        }
        for list in out_edges.iter_mut() {
            list.sort_by_key(|&e| edges[e].head);
        }
        for list in in_edges.iter_mut() {
            list.sort_by_key(|&e| edges[e].tail);
        }

        LeGraph {
            n,
            steps: diagram.steps().to_vec(),
            basis: diagram.boundary_basis(),
            vertices,
            index,
            edges,
            out_edges,
            in_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Labels of the V-nodes.
    pub fn boundary_basis(&self) -> LabelSet {
        self.basis
    }

    pub fn is_source_label(&self, label: usize) -> bool {
        self.basis.contains(label)
    }

    pub fn step(&self, label: usize) -> Step {
        self.steps[label - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> Vertex {
        self.vertices[id]
    }

    pub fn id_of(&self, vertex: Vertex) -> Option<VertexId> {
        self.index.get(&vertex).copied()
    }

    /// Vertex id of a boundary label. Panics on labels outside `1..=n`.
    pub fn boundary(&self, label: usize) -> VertexId {
        self.index[&Vertex::Boundary(label)]
    }

    pub fn label(&self, id: VertexId) -> Option<usize> {
        match self.vertices[id] {
            Vertex::Boundary(label) => Some(label),
            Vertex::Dot(..) => None,
        }
    }

    pub fn is_boundary(&self, id: VertexId) -> bool {
        matches!(self.vertices[id], Vertex::Boundary(_))
    }

    pub fn edges(&self) -> &[LeEdge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> LeEdge {
        self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Outgoing edges, ordered by head.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    /// Incoming edges, ordered by tail.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn find_edge(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        self.out_edges[tail].iter().copied().find(|&e| self.edges[e].head == head)
    }

    pub fn vertex_name(&self, id: VertexId) -> String {
        self.vertices[id].to_string()
    }

    pub fn edge_name(&self, id: EdgeId) -> String {
        let edge = self.edges[id];
        format!("{}->{}", self.vertices[edge.tail], self.vertices[edge.head])
    }

    /// Kahn's algorithm; `None` if there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indegree: Vec<usize> = self.in_edges.iter().map(Vec::len).collect();
        let mut queue: VecDeque<VertexId> = (0..self.vertices.len()).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &self.out_edges[v] {
                let head = self.edges[e].head;
                indegree[head] -= 1;
                if indegree[head] == 0 {
                    queue.push_back(head);
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lediagram::parse_diagram;

    fn example() -> LeGraph {
        parse_diagram(r#"{"n":7,"r":3,"steps":"HVVHVHH","dots":[[1,2],[2,1],[2,2],[2,3],[3,2]]}"#)
            .unwrap()
            .build_graph()
    }

    fn names(g: &LeGraph, kind: EdgeKind) -> Vec<String> {
        (0..g.edge_count()).filter(|&e| g.edge(e).kind == kind).map(|e| g.edge_name(e)).collect()
    }

    #[test]
    fn example_edges() {
        let g = example();
        assert_eq!(g.vertex_count(), 12);
        let mut left = names(&g, EdgeKind::Left);
        left.sort();
        assert_eq!(left, ["b2->d1.2", "b3->d2.3", "b5->d3.2", "d2.2->d2.1", "d2.3->d2.2"]);
        let mut down = names(&g, EdgeKind::Down);
        down.sort();
        assert_eq!(down, ["d1.2->d2.2", "d2.1->b7", "d2.2->d3.2", "d2.3->b4", "d3.2->b6"]);
        assert!(g.is_acyclic());
        assert!(g.out_edges(g.boundary(1)).is_empty() && g.in_edges(g.boundary(1)).is_empty());
    }

    #[test]
    fn empty_diagram_has_no_edges() {
        let g = LeDiagram::from_steps_str(2, "VHVH", []).unwrap().build_graph();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn full_rectangle_counts() {
        let d = LeDiagram::from_steps_str(2, "VVHH", [(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        let g = d.build_graph();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(names(&g, EdgeKind::Left).len(), 4);
        assert_eq!(names(&g, EdgeKind::Down).len(), 4);
    }

    #[test]
    fn degree_constraints_on_random_diagrams() {
        for seed in 0..400u64 {
            let n = 1 + (seed % 12) as usize;
            let r = (seed as usize / 12) % (n + 1);
            let d = LeDiagram::random(n, r, 0.5, seed).unwrap();
            let g = d.build_graph();
            assert!(g.is_acyclic());
            let mut v_labels = LabelSet::EMPTY;
            for (id, vertex) in g.vertices().iter().enumerate() {
                let outs = g.out_edges(id);
                match *vertex {
                    Vertex::Boundary(label) if g.is_source_label(label) => {
                        v_labels.insert(label);
                        assert!(g.in_edges(id).is_empty());
                        assert!(outs.len() <= 1);
                    }
                    Vertex::Boundary(_) => assert!(outs.is_empty()),
                    Vertex::Dot(row, col) => {
                        let downs = outs.iter().filter(|&&e| g.edge(e).kind == EdgeKind::Down).count();
                        let lefts = outs.iter().filter(|&&e| g.edge(e).kind == EdgeKind::Left).count();
                        assert_eq!(downs, 1);
                        let has_left_neighbour = (1..col).any(|j| d.has_dot(row, j));
                        assert_eq!(lefts == 1, has_left_neighbour);
                    }
                }
            }
            assert_eq!(v_labels, d.boundary_basis());
            for e in g.edges() {
                match (g.vertex(e.tail), g.vertex(e.head), e.kind) {
                    (Vertex::Dot(r1, _), Vertex::Dot(r2, _), EdgeKind::Left) => assert_eq!(r1, r2),
                    (Vertex::Dot(_, c1), Vertex::Dot(_, c2), EdgeKind::Down) => assert_eq!(c1, c2),
                    _ => {}
                }
            }
        }
    }
}
