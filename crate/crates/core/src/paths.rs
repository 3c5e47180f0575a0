//! Vertex-disjoint path families in a Le-graph, found by backtracking.

use crate::labels::LabelSet;
use crate::lediagram::{EdgeId, LeGraph, VertexId};

/// Paths from the sources `B \ I` (ascending label order) to the sinks
/// `I \ B`, pairwise vertex-disjoint. Each path is its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub basis: LabelSet,
    pub paths: Vec<Vec<VertexId>>,
}

/// Neighbour order used while backtracking. `LexLeast` returns the
/// lexicographically least family; `LexGreatest` explores heads in reverse
/// and gives a second, usually different, deterministic choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    LexLeast,
    LexGreatest,
}

impl PathFamily {
    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn edges(&self, g: &LeGraph) -> Vec<EdgeId> {
        self.paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| g.find_edge(w[0], w[1]).expect("path follows edges")))
            .collect()
    }

    pub fn render(&self, g: &LeGraph) -> Vec<String> {
        self.paths
            .iter()
            .map(|p| p.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(" -> "))
            .collect()
    }

    /// Checks every family invariant against `g`.
    pub fn is_valid(&self, g: &LeGraph) -> bool {
        let b = g.boundary_basis();
        let mut seen = vec![false; g.vertex_count()];
        let mut sources = LabelSet::EMPTY;
        let mut sinks = LabelSet::EMPTY;
        for path in &self.paths {
            let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
                return false;
            };
            if path.len() < 2 || path.windows(2).any(|w| g.find_edge(w[0], w[1]).is_none()) {
                return false;
            }
            for &v in path {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
            match (g.label(first), g.label(last)) {
                (Some(s), Some(t)) => {
                    sources.insert(s);
                    sinks.insert(t);
                }
                _ => return false,
            }
        }
        sources == b.difference(self.basis) && sinks == self.basis.difference(b)
    }
}

/// Backtracking search for a vertex-disjoint family representing `basis`.
/// `None` when no such family exists (including `|basis| != r`).
pub fn find_family(g: &LeGraph, basis: LabelSet, order: SearchOrder) -> Option<PathFamily> {
    let b = g.boundary_basis();
    if basis.len() != b.len() || basis.max_label().is_some_and(|m| m > g.n()) {
        return None;
    }
    let sources: Vec<usize> = b.difference(basis).to_vec();
    let sinks = basis.difference(b);
    let mut search = Search {
        g,
        sinks,
        order,
        used: vec![false; g.vertex_count()],
        paths: Vec::with_capacity(sources.len()),
    };
    let found = search.route(&sources);
    found.then_some(PathFamily { basis, paths: search.paths })
}

pub fn has_vertex_disjoint_family(g: &LeGraph, basis: LabelSet) -> bool {
    find_family(g, basis, SearchOrder::LexLeast).is_some()
}

struct Search<'a> {
    g: &'a LeGraph,
    sinks: LabelSet,
    order: SearchOrder,
    used: Vec<bool>,
    paths: Vec<Vec<VertexId>>,
}

impl Search<'_> {
    fn route(&mut self, sources: &[usize]) -> bool {
        let Some((&source, rest)) = sources.split_first() else {
            return true;
        };
        let start = self.g.boundary(source);
        self.used[start] = true;
        let mut path = vec![start];
        let found = self.extend(&mut path, rest);
        if !found {
            self.used[start] = false;
        }
        found
    }

    fn extend(&mut self, path: &mut Vec<VertexId>, rest: &[usize]) -> bool {
        let v = *path.last().expect("nonempty path");
        if path.len() > 1 {
            if let Some(label) = self.g.label(v) {
                if !self.sinks.contains(label) {
                    return false;
                }
                self.paths.push(path.clone());
                if self.route(rest) {
                    return true;
                }
                self.paths.pop();
                return false;
            }
        }
        let mut heads: Vec<VertexId> = self.g.out_edges(v).iter().map(|&e| self.g.edge(e).head).collect();
        if self.order == SearchOrder::LexGreatest {
            heads.reverse();
        }
        for head in heads {
            if self.used[head] {
                continue;
            }
            self.used[head] = true;
            path.push(head);
            if self.extend(path, rest) {
                return true;
            }
            path.pop();
            self.used[head] = false;
        }
        false
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

    #[test]
    fn families_for_example_bases() {
        let g = example();
        let fam = find_family(&g, LabelSet::from_labels([2, 6, 7]), SearchOrder::LexLeast).unwrap();
        assert_eq!(fam.render(&g), ["b3 -> d2.3 -> d2.2 -> d2.1 -> b7", "b5 -> d3.2 -> b6"]);
        assert!(fam.is_valid(&g));
        let fam = find_family(&g, LabelSet::from_labels([3, 5, 6]), SearchOrder::LexLeast).unwrap();
        assert_eq!(fam.render(&g), ["b2 -> d1.2 -> d2.2 -> d3.2 -> b6"]);
        let fam = find_family(&g, LabelSet::from_labels([2, 3, 5]), SearchOrder::LexLeast).unwrap();
        assert!(fam.is_empty());
        assert!(find_family(&g, LabelSet::from_labels([1, 2, 3]), SearchOrder::LexLeast).is_none());
        assert!(find_family(&g, LabelSet::from_labels([2, 3]), SearchOrder::LexLeast).is_none());
    }

    #[test]
    fn both_orders_give_valid_families() {
        let g = example();
        let basis = LabelSet::from_labels([4, 5, 7]);
        let least = find_family(&g, basis, SearchOrder::LexLeast).unwrap();
        let greatest = find_family(&g, basis, SearchOrder::LexGreatest).unwrap();
        assert!(least.is_valid(&g) && greatest.is_valid(&g));
    }
}
