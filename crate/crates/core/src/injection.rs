//! The marker-walk injection `P_ef x P^ef -> P^f_e x P^e_f`.
//!
//! A pair of bases is drawn as two families of vertex-disjoint paths, blue and
//! green, on the Le-graph. A marker starts at `f` and walks: blue against the
//! edge direction, green along it. On arrival it toggles colour if the vertex
//! touches both a blue and a green edge (the traversed edge still carrying its
//! old colour), then the traversed edge switches colour. The walk stops on the
//! boundary. The reverse walk is the same procedure with both directions
//! swapped and retraces the forward walk from `f`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::labels::LabelSet;
use crate::lediagram::{EdgeId, LeGraph, VertexId};
use crate::paths::{find_family, PathFamily, SearchOrder};
use crate::positroid::Positroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Green,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Green,
            Color::Green => Color::Blue,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Blue => "blue",
            Color::Green => "green",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InjectionError {
    #[error("e and f must differ (both are {0})")]
    SameLabel(usize),
    #[error("label {label} outside 1..={n}")]
    LabelRange { label: usize, n: usize },
    #[error("{0} is not a basis")]
    NotABasis(LabelSet),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no coloured edge at the start vertex b{0}")]
    NoColoredEdgeAtStart(usize),
    #[error("start vertex b{0} touches more than one coloured token")]
    AmbiguousStart(usize),
    #[error("marker stuck at {0}: no edge to follow")]
    Stuck(String),
    #[error("marker at {0} has more than one edge to follow")]
    AmbiguousMove(String),
    #[error("edge {0} would carry two tokens of one colour")]
    TokenOverflow(String),
    #[error("vertex {0} is unbalanced after the marker left it")]
    Unbalanced(String),
    #[error("marker entered e = {0}")]
    MarkerEnteredE(usize),
    #[error("marker returned to f = {0}")]
    MarkerReturnedToF(usize),
    #[error("walk exceeded the step guard of {0}")]
    StepGuard(usize),
    #[error("malformed colouring: {0}")]
    Malformed(String),
}

/// Per-edge token counts for both colours, plus the marker state while a walk
/// is running.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredConfig {
    blue: Vec<u8>,
    green: Vec<u8>,
    marker: Option<(VertexId, Color)>,
    last_edge: Option<EdgeId>,
}

impl ColoredConfig {
    pub fn empty(g: &LeGraph) -> Self {
        ColoredConfig {
            blue: vec![0; g.edge_count()],
            green: vec![0; g.edge_count()],
            marker: None,
            last_edge: None,
        }
    }

    /// Blue tokens on `blue`'s edges, green on `green`'s.
    pub fn from_families(g: &LeGraph, blue: &PathFamily, green: &PathFamily) -> Self {
        let mut config = ColoredConfig::empty(g);
        for e in blue.edges(g) {
            config.blue[e] += 1;
        }
        for e in green.edges(g) {
            config.green[e] += 1;
        }
        config
    }

    fn tokens(&self, color: Color) -> &[u8] {
        match color {
            Color::Blue => &self.blue,
            Color::Green => &self.green,
        }
    }

    fn tokens_mut(&mut self, color: Color) -> &mut Vec<u8> {
        match color {
            Color::Blue => &mut self.blue,
            Color::Green => &mut self.green,
        }
    }

    pub fn count(&self, edge: EdgeId, color: Color) -> u8 {
        self.tokens(color)[edge]
    }

    pub fn marker(&self) -> Option<(VertexId, Color)> {
        self.marker
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.last_edge
    }

    /// Edges carrying at least one token.
    pub fn colored_edges(&self) -> Vec<EdgeId> {
        (0..self.blue.len()).filter(|&e| self.blue[e] + self.green[e] > 0).collect()
    }

    pub fn doubly_colored_edges(&self) -> Vec<EdgeId> {
        (0..self.blue.len()).filter(|&e| self.blue[e] > 0 && self.green[e] > 0).collect()
    }

    /// Same tokens on every edge; marker state is ignored.
    pub fn same_coloring(&self, other: &ColoredConfig) -> bool {
        self.blue == other.blue && self.green == other.green
    }

    fn touches(&self, g: &LeGraph, v: VertexId, color: Color) -> bool {
        let tokens = self.tokens(color);
        g.in_edges(v).iter().chain(g.out_edges(v)).any(|&e| tokens[e] > 0)
    }

    fn flow_balance(&self, g: &LeGraph, v: VertexId, color: Color) -> (u32, u32) {
        let tokens = self.tokens(color);
        let inflow = g.in_edges(v).iter().map(|&e| tokens[e] as u32).sum();
        let outflow = g.out_edges(v).iter().map(|&e| tokens[e] as u32).sum();
        (inflow, outflow)
    }

    /// Edge names with their colours, for reports.
    pub fn describe(&self, g: &LeGraph) -> Vec<ColoredEdge> {
        self.colored_edges()
            .into_iter()
            .map(|e| {
                let mut colors = Vec::new();
                if self.blue[e] > 0 {
                    colors.push(Color::Blue);
                }
                if self.green[e] > 0 {
                    colors.push(Color::Green);
                }
                ColoredEdge { edge: g.edge_name(e), colors }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredEdge {
    pub edge: String,
    pub colors: Vec<Color>,
}

/// Basis read off one colour: with `S` the sources and `T` the sinks its
/// paths use, `(B \ S) ∪ T`. The marker must be absent.
pub fn basis_of_color(g: &LeGraph, config: &ColoredConfig, color: Color) -> Result<LabelSet, InjectionError> {
    if config.marker.is_some() {
        return Err(InjectionError::Malformed("marker still on the graph".into()));
    }
    let tokens = config.tokens(color);
    if let Some(e) = tokens.iter().position(|&t| t > 1) {
        return Err(InjectionError::TokenOverflow(g.edge_name(e)));
    }
    let b = g.boundary_basis();
    let mut sources = LabelSet::EMPTY;
    let mut sinks = LabelSet::EMPTY;
    for v in 0..g.vertex_count() {
        let (inflow, outflow) = config.flow_balance(g, v, color);
        match g.label(v) {
            Some(label) => {
                if inflow + outflow > 1 {
                    return Err(InjectionError::Malformed(format!("{color} degree at b{label}")));
                }
                if outflow == 1 {
                    sources.insert(label);
                }
                if inflow == 1 {
                    sinks.insert(label);
                }
            }
            None => {
                if inflow != outflow || inflow > 1 {
                    return Err(InjectionError::Malformed(format!(
                        "{color} tokens unbalanced at {}",
                        g.vertex_name(v)
                    )));
                }
            }
        }
    }
    Ok(b.difference(sources).union(sinks))
}

/// Marker traversal directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Blue against the flow, green with it.
    Forward,
    /// Green against the flow, blue with it.
    Reverse,
}

impl Direction {
    fn against_flow(self, color: Color) -> bool {
        matches!((self, color), (Direction::Forward, Color::Blue) | (Direction::Reverse, Color::Green))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub at: VertexId,
    /// Marker colour after arriving (and possibly toggling).
    pub marker: Color,
    pub via: Option<EdgeId>,
    pub toggled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStepOut {
    pub at: String,
    pub marker: Color,
    pub via: Option<String>,
    pub toggled: bool,
}

/// Marker positions; the first entry is the start at `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace(pub Vec<TraceStep>);

impl Trace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.0
    }

    /// Number of marker moves.
    pub fn moves(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn visits(&self, v: VertexId) -> bool {
        self.0.iter().any(|s| s.at == v)
    }

    pub fn render(&self, g: &LeGraph) -> Vec<TraceStepOut> {
        self.0
            .iter()
            .map(|s| TraceStepOut {
                at: g.vertex_name(s.at),
                marker: s.marker,
                via: s.via.map(|e| g.edge_name(e)),
                toggled: s.toggled,
            })
            .collect()
    }

    /// `b7 -> d2.1 -> d2.2[green] -> ...`, noting toggles.
    pub fn compact(&self, g: &LeGraph) -> String {
        self.0
            .iter()
            .map(|s| {
                let name = g.vertex_name(s.at);
                if s.toggled {
                    format!("{name}[{}]", s.marker)
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" -> ")
    }
}

/// Step limit for a walk on `g`.
pub fn step_guard(g: &LeGraph) -> usize {
    4 * g.edge_count()
}

/// Runs the marker procedure on `config` in place.
///
/// With `walk_checks`, entering `e` or coming back to `f` is an error; the
/// forward walk on valid input never does either.
fn walk(
    g: &LeGraph,
    config: &mut ColoredConfig,
    e: usize,
    f: usize,
    direction: Direction,
    walk_checks: bool,
) -> Result<Trace, InjectionError> {
    let start = g.boundary(f);
    let e_vertex = g.boundary(e);
    let incident: Vec<(EdgeId, Color)> = g
        .in_edges(start)
        .iter()
        .chain(g.out_edges(start))
        .flat_map(|&edge| {
            let mut v = Vec::new();
            for _ in 0..config.blue[edge] {
                v.push((edge, Color::Blue));
            }
            for _ in 0..config.green[edge] {
                v.push((edge, Color::Green));
            }
            v
        })
        .collect();
    let mut color = match incident.as_slice() {
        [] => return Err(InjectionError::NoColoredEdgeAtStart(f)),
        [(_, c)] => *c,
        _ => return Err(InjectionError::AmbiguousStart(f)),
    };

    let guard = step_guard(g);
    let mut at = start;
    let mut trace = vec![TraceStep { at, marker: color, via: None, toggled: false }];
    config.marker = Some((at, color));
    config.last_edge = None;

    loop {
        if trace.len() > guard {
            return Err(InjectionError::StepGuard(guard));
        }
        let against = direction.against_flow(color);
        let tokens = config.tokens(color);
        let pool = if against { g.in_edges(at) } else { g.out_edges(at) };
        let mut candidates: Vec<EdgeId> = pool.iter().copied().filter(|&edge| tokens[edge] > 0).collect();
        if candidates.len() > 1 {
            candidates.retain(|&edge| Some(edge) != config.last_edge);
        }
        let edge = match candidates.as_slice() {
            [] => return Err(InjectionError::Stuck(g.vertex_name(at))),
            [edge] => *edge,
            _ => return Err(InjectionError::AmbiguousMove(g.vertex_name(at))),
        };
        let next = if against { g.edge(edge).tail } else { g.edge(edge).head };

        if walk_checks {
            if next == e_vertex {
                return Err(InjectionError::MarkerEnteredE(e));
            }
            if next == start {
                return Err(InjectionError::MarkerReturnedToF(f));
            }
        }

        // toggle test sees the traversed edge with its old colour
        let toggled = config.touches(g, next, Color::Blue) && config.touches(g, next, Color::Green);

        config.tokens_mut(color)[edge] -= 1;
        let flipped = &mut config.tokens_mut(color.other())[edge];
        *flipped += 1;
        if *flipped > 1 {
            return Err(InjectionError::TokenOverflow(g.edge_name(edge)));
        }

        if !g.is_boundary(at) {
            for c in [Color::Blue, Color::Green] {
                let (inflow, outflow) = config.flow_balance(g, at, c);
                if inflow != outflow || inflow > 1 {
                    return Err(InjectionError::Unbalanced(g.vertex_name(at)));
                }
            }
        }

        if toggled {
            color = color.other();
        }
        at = next;
        config.marker = Some((at, color));
        config.last_edge = Some(edge);
        trace.push(TraceStep { at, marker: color, via: Some(edge), toggled });

        if g.is_boundary(at) {
            break;
        }
    }
    config.marker = None;
    config.last_edge = None;
    Ok(Trace(trace))
}

fn check_pair(g: &LeGraph, e: usize, f: usize) -> Result<(), InjectionError> {
    for label in [e, f] {
        if label == 0 || label > g.n() {
            return Err(InjectionError::LabelRange { label, n: g.n() });
        }
    }
    if e == f {
        return Err(InjectionError::SameLabel(e));
    }
    Ok(())
}

/// The lexicographically least vertex-disjoint family representing `basis`.
pub fn canonical_family(g: &LeGraph, basis: LabelSet) -> Result<PathFamily, InjectionError> {
    find_family(g, basis, SearchOrder::LexLeast).ok_or(InjectionError::NotABasis(basis))
}

pub fn initial_config(g: &LeGraph, b1: LabelSet, b2: LabelSet) -> Result<ColoredConfig, InjectionError> {
    Ok(ColoredConfig::from_families(g, &canonical_family(g, b1)?, &canonical_family(g, b2)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionOutcome {
    pub input: (LabelSet, LabelSet),
    pub output: (LabelSet, LabelSet),
    pub initial: ColoredConfig,
    pub config: ColoredConfig,
    pub trace: Trace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseOutcome {
    pub output: (LabelSet, LabelSet),
    pub config: ColoredConfig,
    pub trace: Trace,
    /// Whether the result lies in `P_ef x P^ef`.
    pub in_image: bool,
}

/// Runs the injection with families chosen by `order` (cached per basis).
pub struct Injector<'g> {
    g: &'g LeGraph,
    order: SearchOrder,
    families: HashMap<LabelSet, PathFamily>,
}

impl<'g> Injector<'g> {
    /// Precomputes a family for every basis of `p`.
    pub fn new(g: &'g LeGraph, p: &Positroid, order: SearchOrder) -> Result<Self, InjectionError> {
        let mut families = HashMap::with_capacity(p.len());
        for &b in p.bases() {
            let family = find_family(g, b, order).ok_or(InjectionError::NotABasis(b))?;
            families.insert(b, family);
        }
        Ok(Injector { g, order, families })
    }

    /// Families are looked up lazily.
    pub fn lazy(g: &'g LeGraph, order: SearchOrder) -> Self {
        Injector { g, order, families: HashMap::new() }
    }

    pub fn graph(&self) -> &LeGraph {
        self.g
    }

    fn family(&self, basis: LabelSet) -> Result<PathFamily, InjectionError> {
        match self.families.get(&basis) {
            Some(family) => Ok(family.clone()),
            None => find_family(self.g, basis, self.order).ok_or(InjectionError::NotABasis(basis)),
        }
    }

    pub fn config(&self, blue: LabelSet, green: LabelSet) -> Result<ColoredConfig, InjectionError> {
        let (fb, fg) = (self.family(blue)?, self.family(green)?);
        Ok(ColoredConfig::from_families(self.g, &fb, &fg))
    }

    pub fn run(&self, e: usize, f: usize, b1: LabelSet, b2: LabelSet) -> Result<InjectionOutcome, InjectionError> {
        check_pair(self.g, e, f)?;
        if !(b1.contains(e) && b1.contains(f)) {
            return Err(InjectionError::Precondition(format!("{b1} must contain e = {e} and f = {f}")));
        }
        if b2.contains(e) || b2.contains(f) {
            return Err(InjectionError::Precondition(format!("{b2} must avoid e = {e} and f = {f}")));
        }
        let initial = self.config(b1, b2)?;
        let mut config = initial.clone();
        let trace = walk(self.g, &mut config, e, f, Direction::Forward, true)?;
        let output = (basis_of_color(self.g, &config, Color::Blue)?, basis_of_color(self.g, &config, Color::Green)?);
        Ok(InjectionOutcome { input: (b1, b2), output, initial, config, trace })
    }

    /// Reverse walk on an arbitrary configuration.
    pub fn reverse(&self, e: usize, f: usize, config: &ColoredConfig) -> Result<ReverseOutcome, InjectionError> {
        check_pair(self.g, e, f)?;
        let mut config = config.clone();
        let trace = walk(self.g, &mut config, e, f, Direction::Reverse, false)?;
        let b1 = basis_of_color(self.g, &config, Color::Blue)?;
        let b2 = basis_of_color(self.g, &config, Color::Green)?;
        let in_image = b1.contains(e) && b1.contains(f) && !b2.contains(e) && !b2.contains(f);
        Ok(ReverseOutcome { output: (b1, b2), config, trace, in_image })
    }

    /// Reverse walk starting from the families of `(b1, b2)`.
    pub fn reverse_bases(&self, e: usize, f: usize, b1: LabelSet, b2: LabelSet) -> Result<ReverseOutcome, InjectionError> {
        let config = self.config(b1, b2)?;
        self.reverse(e, f, &config)
    }
}

/// Forward walk from canonical families of `(b1, b2)`.
pub fn run_injection(g: &LeGraph, e: usize, f: usize, b1: LabelSet, b2: LabelSet) -> Result<InjectionOutcome, InjectionError> {
    Injector::lazy(g, SearchOrder::LexLeast).run(e, f, b1, b2)
}

/// Reverse walk on `config`.
pub fn run_reverse(g: &LeGraph, e: usize, f: usize, config: &ColoredConfig) -> Result<ReverseOutcome, InjectionError> {
    Injector::lazy(g, SearchOrder::LexLeast).reverse(e, f, config)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// The walk itself raised an error.
    Walk(String),
    OutsideCodomain,
    /// Two inputs reached the same pair of bases.
    NotInjective,
    /// Two inputs reached the same final colouring.
    ConfigurationCollision,
    MultisetChanged,
    RoundTrip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectionFailure {
    pub input: (LabelSet, LabelSet),
    pub output: Option<(LabelSet, LabelSet)>,
    pub kind: FailureKind,
}

/// An input whose image changes when the families are chosen differently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceDifference {
    pub input: (LabelSet, LabelSet),
    pub canonical: (LabelSet, LabelSet),
    pub alternate: Option<(LabelSet, LabelSet)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub pair: (usize, usize),
    pub domain: usize,
    pub codomain: usize,
    pub distinct_images: usize,
    pub distinct_configurations: usize,
    pub max_moves: usize,
    pub step_guard: usize,
    pub failures: Vec<InjectionFailure>,
    /// Present only when the alternate family choice was compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choice_differences: Option<Vec<ChoiceDifference>>,
}

impl InjectionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn multiset_eq(a: (LabelSet, LabelSet), b: (LabelSet, LabelSet)) -> bool {
    a.0.union(a.1) == b.0.union(b.1) && a.0.intersection(a.1) == b.0.intersection(b.1)
}

/// Runs the injection on all of `P_ef x P^ef` and checks that every image
/// lies in `P^f_e x P^e_f`, images are pairwise distinct, the multiset union
/// of each pair is preserved, and the reverse walk recovers the input
/// colouring. With `compare_choice`, the images under reverse-lexicographic
/// families are compared too; differences are findings, not failures.
pub fn verify_injection(
    g: &LeGraph,
    p: &Positroid,
    e: usize,
    f: usize,
    compare_choice: bool,
) -> Result<InjectionReport, InjectionError> {
    let injector = Injector::new(g, p, SearchOrder::LexLeast)?;
    let alternate = if compare_choice { Some(Injector::new(g, p, SearchOrder::LexGreatest)?) } else { None };
    verify_with(&injector, alternate.as_ref(), p, e, f)
}

pub fn verify_with(
    injector: &Injector<'_>,
    alternate: Option<&Injector<'_>>,
    p: &Positroid,
    e: usize,
    f: usize,
) -> Result<InjectionReport, InjectionError> {
    let g = injector.graph();
    check_pair(g, e, f)?;
    let (se, sf) = (LabelSet::singleton(e), LabelSet::singleton(f));
    let ef = se.union(sf);
    let both = p.minor(ef, LabelSet::EMPTY).expect("disjoint");
    let neither = p.minor(LabelSet::EMPTY, ef).expect("disjoint");
    let codomain = p.minor(se, sf).expect("disjoint").len() * p.minor(sf, se).expect("disjoint").len();

    let mut report = InjectionReport {
        pair: (e, f),
        domain: both.len() * neither.len(),
        codomain,
        distinct_images: 0,
        distinct_configurations: 0,
        max_moves: 0,
        step_guard: step_guard(g),
        failures: Vec::new(),
        choice_differences: alternate.map(|_| Vec::new()),
    };
    let mut images: HashSet<(LabelSet, LabelSet)> = HashSet::new();
    let mut colorings: HashSet<(Vec<u8>, Vec<u8>)> = HashSet::new();

    for &b1 in &both {
        for &b2 in &neither {
            let input = (b1, b2);
            let outcome = match injector.run(e, f, b1, b2) {
                Ok(outcome) => outcome,
                Err(err) => {
                    report.failures.push(InjectionFailure { input, output: None, kind: FailureKind::Walk(err.to_string()) });
                    continue;
                }
            };
            let out = outcome.output;
            report.max_moves = report.max_moves.max(outcome.trace.moves());
            let mut fail = |kind| report.failures.push(InjectionFailure { input, output: Some(out), kind });

            let in_codomain = p.contains(out.0)
                && p.contains(out.1)
                && out.0.contains(e)
                && !out.0.contains(f)
                && out.1.contains(f)
                && !out.1.contains(e);
            if !in_codomain {
                fail(FailureKind::OutsideCodomain);
            }
            if !images.insert(out) {
                fail(FailureKind::NotInjective);
            }
            if !colorings.insert((outcome.config.blue.clone(), outcome.config.green.clone())) {
                fail(FailureKind::ConfigurationCollision);
            }
            if !multiset_eq(input, out) {
                fail(FailureKind::MultisetChanged);
            }
            match injector.reverse(e, f, &outcome.config) {
                Ok(back) if back.in_image && back.output == input && back.config.same_coloring(&outcome.initial) => {}
                _ => fail(FailureKind::RoundTrip),
            }

            if let (Some(alt), Some(diffs)) = (alternate, report.choice_differences.as_mut()) {
                let other = alt.run(e, f, b1, b2).ok().map(|o| o.output);
                if other != Some(out) {
                    diffs.push(ChoiceDifference { input, canonical: out, alternate: other });
                }
            }
        }
    }
    report.distinct_images = images.len();
    report.distinct_configurations = colorings.len();
    Ok(report)
}

/// [`verify_injection`] for every ordered pair `e != f`, in lexicographic
/// order of `(e, f)`.
pub fn verify_all_pairs(g: &LeGraph, p: &Positroid, compare_choice: bool) -> Result<Vec<InjectionReport>, InjectionError> {
    let injector = Injector::new(g, p, SearchOrder::LexLeast)?;
    let alternate = if compare_choice { Some(Injector::new(g, p, SearchOrder::LexGreatest)?) } else { None };
    let n = g.n();
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|e| (1..=n).filter(move |&f| f != e).map(move |f| (e, f))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pairs.par_iter().map(|&(e, f)| verify_with(&injector, alternate.as_ref(), p, e, f)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs.iter().map(|&(e, f)| verify_with(&injector, alternate.as_ref(), p, e, f)).collect()
    }
}
