//! Le-diagrams: a lattice path cutting out a Ferrers shape, plus a dot
//! filling closed under the Le-condition.
//!
//! Conventions: boundary steps are labelled `1..n` from the Northeast corner
//! to the Southwest corner. Row 1 is the top row of the shape and column 1 the
//! leftmost column. Row `i` belongs to the `i`-th vertical step and has width
//! equal to the number of horizontal steps after it.

mod graph;

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labels::{LabelSet, MAX_LABEL};

pub use graph::{EdgeId, EdgeKind, LeEdge, LeGraph, Vertex, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    V,
    H,
}

impl Step {
    fn from_char(c: char) -> Option<Step> {
        match c {
            'V' => Some(Step::V),
            'H' => Some(Step::H),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Step::V => 'V',
            Step::H => 'H',
        }
    }
}

/// A box of the Ferrers shape, `(row, col)`, both 1-indexed.
pub type Cell = (usize, usize);

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("shape error: {0}")]
    Shape(Violation),
    #[error("Le-violation at box ({row},{col})")]
    LeViolation { row: usize, col: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// A broken diagram invariant. Violations are data: [`LeDiagram::validate`]
/// collects all of them instead of stopping at the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LengthMismatch { n: usize, steps: usize },
    RankMismatch { r: usize, vertical: usize },
    DotOutsideShape { row: usize, col: usize },
    LeViolation { row: usize, col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { n, steps } => {
                write!(f, "steps has length {steps}, expected n = {n}")
            }
            Violation::RankMismatch { r, vertical } => {
                write!(f, "rank mismatch: r = {r} but steps has {vertical} V symbols")
            }
            Violation::DotOutsideShape { row, col } => {
                write!(f, "dot ({row},{col}) lies outside the shape")
            }
            Violation::LeViolation { row, col } => write!(f, "Le-violation at box ({row},{col})"),
        }
    }
}

/// On-disk form of a diagram.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    n: usize,
    r: usize,
    steps: String,
    dots: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeDiagram {
    n: usize,
    r: usize,
    steps: Vec<Step>,
    dots: BTreeSet<Cell>,
}

impl LeDiagram {
    /// Builds a diagram and rejects it unless every invariant holds.
    pub fn new(
        n: usize,
        r: usize,
        steps: Vec<Step>,
        dots: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, DiagramError> {
        let diagram = LeDiagram::unchecked(n, r, steps, dots)?;
        diagram.check()?;
        Ok(diagram)
    }

    /// Builds a structurally well-formed diagram without checking the shape
    /// or Le invariants; use [`LeDiagram::validate`] to inspect it.
    pub fn unchecked(
        n: usize,
        r: usize,
        steps: Vec<Step>,
        dots: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, DiagramError> {
        if n == 0 || n > MAX_LABEL {
            return Err(DiagramError::Syntax(format!("n must lie in 1..={MAX_LABEL}, got {n}")));
        }
        let mut set = BTreeSet::new();
        for (row, col) in dots {
            if row == 0 || col == 0 {
                return Err(DiagramError::Syntax(format!("dot ({row},{col}) is not 1-indexed")));
            }
            if !set.insert((row, col)) {
                return Err(DiagramError::Syntax(format!("duplicate dot ({row},{col})")));
            }
        }
        Ok(LeDiagram { n, r, steps, dots: set })
    }

    pub fn from_steps_str(
        r: usize,
        steps: &str,
        dots: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, DiagramError> {
        let steps = parse_steps(steps)?;
        LeDiagram::new(steps.len(), r, steps, dots)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn dots(&self) -> &BTreeSet<Cell> {
        &self.dots
    }

    pub fn has_dot(&self, row: usize, col: usize) -> bool {
        self.dots.contains(&(row, col))
    }

    pub fn steps_string(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    /// Number of rows, i.e. number of vertical steps.
    pub fn rows(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::V).count()
    }

    /// Number of columns, i.e. number of horizontal steps.
    pub fn cols(&self) -> usize {
        self.steps.len() - self.rows()
    }

    /// Row widths, top to bottom.
    pub fn widths(&self) -> Vec<usize> {
        let mut widths = Vec::new();
        let mut h_after = self.cols();
        for step in &self.steps {
            match step {
                Step::V => widths.push(h_after),
                Step::H => h_after -= 1,
            }
        }
        widths
    }

    pub fn in_shape(&self, row: usize, col: usize) -> bool {
        let widths = self.widths();
        row >= 1 && col >= 1 && row <= widths.len() && col <= widths[row - 1]
    }

    /// Every box of the shape, row-major.
    pub fn cells(&self) -> Vec<Cell> {
        self.widths()
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (1..=w).map(move |j| (i + 1, j)))
            .collect()
    }

    /// Labels of the vertical steps: the boundary basis.
    pub fn boundary_basis(&self) -> LabelSet {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::V)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Label of the vertical step closing row `row` on the east.
    pub fn row_label(&self, row: usize) -> Option<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Step::V)
            .nth(row.checked_sub(1)?)
            .map(|(i, _)| i + 1)
    }

    /// Label of the horizontal step closing column `col` on the south.
    pub fn col_label(&self, col: usize) -> Option<usize> {
        self.steps
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &s)| s == Step::H)
            .nth(col.checked_sub(1)?)
            .map(|(i, _)| i + 1)
    }

    /// Every broken invariant; empty iff the diagram is a valid Le-diagram.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.steps.len() != self.n {
            out.push(Violation::LengthMismatch { n: self.n, steps: self.steps.len() });
        }
        let vertical = self.rows();
        if vertical != self.r {
            out.push(Violation::RankMismatch { r: self.r, vertical });
        }
        for &(row, col) in &self.dots {
            if !self.in_shape(row, col) {
                out.push(Violation::DotOutsideShape { row, col });
            }
        }
        for (row, col) in self.cells() {
            if !self.has_dot(row, col) && self.forces_dot(&self.dots, row, col) {
                out.push(Violation::LeViolation { row, col });
            }
        }
        out
    }

    fn check(&self) -> Result<(), DiagramError> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(Violation::LeViolation { row, col }) => Err(DiagramError::LeViolation { row, col }),
            Some(v) => Err(DiagramError::Shape(v)),
        }
    }

    fn forces_dot(&self, dots: &BTreeSet<Cell>, row: usize, col: usize) -> bool {
        let left = (1..col).any(|j| dots.contains(&(row, j)));
        let above = (1..row).any(|i| dots.contains(&(i, col)));
        left && above
    }

    /// Smallest Le-closed filling containing the current dots.
    pub fn le_closure(&self) -> LeDiagram {
        let mut dots = self.dots.clone();
        let cells = self.cells();
        loop {
            let forced: Vec<Cell> = cells
                .iter()
                .copied()
                .filter(|&(i, j)| !dots.contains(&(i, j)) && self.forces_dot(&dots, i, j))
                .collect();
            if forced.is_empty() {
                break;
            }
            dots.extend(forced);
        }
        LeDiagram { dots, ..self.clone() }
    }

    /// Random diagram with a uniformly chosen lattice path and each box dotted
    /// with probability `density`, then closed under the Le-condition.
    /// Deterministic in `seed`.
    pub fn random(n: usize, r: usize, density: f64, seed: u64) -> Result<LeDiagram, DiagramError> {
        if n == 0 || n > MAX_LABEL || r > n {
            return Err(DiagramError::Parameters(format!("need 0 <= r <= n, 1 <= n <= {MAX_LABEL}")));
        }
        if !(0.0..=1.0).contains(&density) {
            return Err(DiagramError::Parameters(format!("density {density} outside [0,1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut steps = vec![Step::H; n];
        for i in index::sample(&mut rng, n, r) {
            steps[i] = Step::V;
        }
        let shape = LeDiagram { n, r, steps, dots: BTreeSet::new() };
        let dots: BTreeSet<Cell> =
            shape.cells().into_iter().filter(|_| rng.gen_bool(density)).collect();
        Ok(LeDiagram { dots, ..shape }.le_closure())
    }

    /// ASCII picture: `*` for a dot, `.` for an empty box, boundary labels on
    /// the right of each row and below each column.
    pub fn ascii(&self) -> String {
        let widths = self.widths();
        let cols = self.cols();
        let mut out = String::new();
        for (i, &w) in widths.iter().enumerate() {
            for j in 1..=cols {
                let c = if j > w {
                    ' '
                } else if self.has_dot(i + 1, j) {
                    '*'
                } else {
                    '.'
                };
                out.push(c);
                out.push(' ');
            }
            out.push_str(&format!("| {}\n", self.row_label(i + 1).unwrap_or(0)));
        }
        let labels: Vec<String> =
            (1..=cols).map(|j| self.col_label(j).unwrap_or(0).to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        let file = DiagramFile {
            n: self.n,
            r: self.r,
            steps: self.steps_string(),
            dots: self.dots.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&file).expect("diagram serializes")
    }

    pub fn build_graph(&self) -> LeGraph {
        LeGraph::build(self)
    }
}

fn parse_steps(text: &str) -> Result<Vec<Step>, DiagramError> {
    text.chars()
        .map(|c| {
            Step::from_char(c)
                .ok_or_else(|| DiagramError::Syntax(format!("invalid step character {c:?}")))
        })
        .collect()
}

/// Parses the JSON diagram format without enforcing the shape or Le
/// invariants.
pub fn parse_diagram_unchecked(text: &str) -> Result<LeDiagram, DiagramError> {
    let file: DiagramFile =
        serde_json::from_str(text).map_err(|e| DiagramError::Syntax(e.to_string()))?;
    let steps = parse_steps(&file.steps)?;
    LeDiagram::unchecked(file.n, file.r, steps, file.dots.iter().map(|&[i, j]| (i, j)))
}

/// Parses the JSON diagram format and checks every invariant.
pub fn parse_diagram(text: &str) -> Result<LeDiagram, DiagramError> {
    let diagram = parse_diagram_unchecked(text)?;
    diagram.check()?;
    Ok(diagram)
}
