//! Unit-capacity max-flow on a Le-graph with a super-source and super-sink.
//!
//! With unit vertex capacities (each dot split into an in/out pair) the flow
//! value counts vertex-disjoint paths; without them it counts edge-disjoint
//! walks, which may cross at a dot.

use crate::labels::LabelSet;
use crate::lediagram::LeGraph;

struct Arc {
    to: usize,
    cap: u8,
    rev: usize,
}

struct Network {
    adj: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network { adj: (0..nodes).map(|_| Vec::new()).collect() }
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc { to, cap: 1, rev: rev_from });
        self.adj[to].push(Arc { to: from, cap: 0, rev: rev_to });
    }

    fn augment(&mut self, v: usize, sink: usize, seen: &mut [bool]) -> bool {
        if v == sink {
            return true;
        }
        seen[v] = true;
        for i in 0..self.adj[v].len() {
            let (to, cap) = (self.adj[v][i].to, self.adj[v][i].cap);
            if cap == 0 || seen[to] {
                continue;
            }
            if self.augment(to, sink, seen) {
                let rev = self.adj[v][i].rev;
                self.adj[v][i].cap -= 1;
                self.adj[to][rev].cap += 1;
                return true;
            }
        }
        false
    }

    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut seen = vec![false; self.adj.len()];
            if !self.augment(source, sink, &mut seen) {
                break;
            }
            flow += 1;
        }
        flow
    }
}

fn disjoint_routes(g: &LeGraph, sources: LabelSet, sinks: LabelSet, split_vertices: bool) -> usize {
    let nodes = g.vertex_count();
    // vertex v enters at v and leaves at out(v)
    let out = |v: usize| if split_vertices { nodes + v } else { v };
    let base = if split_vertices { 2 * nodes } else { nodes };
    let (s, t) = (base, base + 1);
    let mut net = Network::new(base + 2);
    if split_vertices {
        for v in 0..nodes {
            net.add_arc(v, nodes + v);
        }
    }
    for label in sources {
        net.add_arc(s, g.boundary(label));
    }
    for label in sinks {
        net.add_arc(out(g.boundary(label)), t);
    }
    for e in g.edges() {
        net.add_arc(out(e.tail), e.head);
    }
    net.max_flow(s, t, sources.len())
}

/// Maximum number of pairwise vertex-disjoint paths from `sources` to `sinks`.
pub fn vertex_disjoint_paths(g: &LeGraph, sources: LabelSet, sinks: LabelSet) -> usize {
    disjoint_routes(g, sources, sinks, true)
}

/// Maximum number of pairwise edge-disjoint walks from `sources` to `sinks`,
/// each source and sink used at most once.
pub fn edge_disjoint_walks(g: &LeGraph, sources: LabelSet, sinks: LabelSet) -> usize {
    disjoint_routes(g, sources, sinks, false)
}
