//! Positroids as explicit basis lists read off a Le-graph, with minors and
//! basis enumerator polynomials.

mod flow;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labels::LabelSet;
use crate::lediagram::LeGraph;
use crate::poly::SparsePolynomial;
use crate::weights::{Rational, WeightVector};

pub use flow::{edge_disjoint_walks, vertex_disjoint_paths};

/// How `B \ I` must be joined to `I \ B` for `I` to count as a basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BasisRule {
    /// Pairwise vertex-disjoint paths; reproduces the positroid of the diagram.
    #[default]
    VertexDisjoint,
    /// Pairwise edge-disjoint walks. Strictly weaker: walks may cross at a dot,
    /// which can admit sets that are not bases (567 on the 7-element example).
    EdgeDisjoint,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PositroidError {
    #[error("expected a set of size {expected}, got {got}")]
    Size { expected: usize, got: usize },
    #[error("contracted set {contract} and deleted set {delete} overlap")]
    Overlap { contract: LabelSet, delete: LabelSet },
    #[error("label outside 1..={n}")]
    LabelRange { n: usize },
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("a positroid needs at least one basis")]
    NoBases,
}

/// Rank, ground size and the lexicographically sorted basis list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PositroidFile")]
pub struct Positroid {
    n: usize,
    r: usize,
    bases: Vec<LabelSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PositroidFile {
    n: usize,
    r: usize,
    bases: Vec<LabelSet>,
}

impl TryFrom<PositroidFile> for Positroid {
    type Error = PositroidError;

    fn try_from(file: PositroidFile) -> Result<Self, Self::Error> {
        Positroid::from_bases(file.n, file.r, file.bases)
    }
}

impl Positroid {
    /// Wraps an arbitrary nonempty collection of `r`-subsets of `{1..n}`.
    /// Whether it is a matroid at all is answered by [`Positroid::exchange_check`].
    pub fn from_bases(n: usize, r: usize, mut bases: Vec<LabelSet>) -> Result<Self, PositroidError> {
        if bases.is_empty() {
            return Err(PositroidError::NoBases);
        }
        let ground = LabelSet::full(n.min(crate::labels::MAX_LABEL));
        for b in &bases {
            if b.len() != r {
                return Err(PositroidError::Size { expected: r, got: b.len() });
            }
            if !b.is_subset(ground) {
                return Err(PositroidError::LabelRange { n });
            }
        }
        bases.sort();
        bases.dedup();
        Ok(Positroid { n, r, bases })
    }

    /// Every `r`-subset accepted by [`is_basis`], in lexicographic order.
    pub fn enumerate(g: &LeGraph) -> Positroid {
        Positroid::enumerate_with(g, BasisRule::VertexDisjoint)
    }

    /// Enumeration under an explicit rule. Only [`BasisRule::VertexDisjoint`]
    /// is guaranteed to produce a positroid.
    pub fn enumerate_with(g: &LeGraph, rule: BasisRule) -> Positroid {
        let candidates: Vec<LabelSet> = LabelSet::subsets_of_size(g.n(), g.rank()).collect();
        #[cfg(feature = "parallel")]
        let bases: Vec<LabelSet> = {
            use rayon::prelude::*;
            candidates.into_par_iter().filter(|&s| basis_test(g, s, rule)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let bases: Vec<LabelSet> = candidates.into_iter().filter(|&s| basis_test(g, s, rule)).collect();
        Positroid { n: g.n(), r: g.rank(), bases }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bases(&self) -> &[LabelSet] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, set: LabelSet) -> bool {
        self.bases.binary_search(&set).is_ok()
    }

    pub fn ground(&self) -> LabelSet {
        LabelSet::full(self.n)
    }

    fn check_pair(&self, contract: LabelSet, delete: LabelSet) -> Result<(), PositroidError> {
        if !contract.is_disjoint(delete) {
            return Err(PositroidError::Overlap { contract, delete });
        }
        if !contract.union(delete).is_subset(self.ground()) {
            return Err(PositroidError::LabelRange { n: self.n });
        }
        Ok(())
    }

    /// Bases containing `contract` and avoiding `delete`.
    pub fn minor(&self, contract: LabelSet, delete: LabelSet) -> Result<Vec<LabelSet>, PositroidError> {
        self.check_pair(contract, delete)?;
        Ok(self.minor_iter(contract, delete).collect())
    }

    fn minor_iter(&self, contract: LabelSet, delete: LabelSet) -> impl Iterator<Item = LabelSet> + '_ {
        self.bases.iter().copied().filter(move |b| contract.is_subset(*b) && b.is_disjoint(delete))
    }

    /// `sum x^B` over the minor; monomials keep all of `B`, including the
    /// contracted labels.
    pub fn enumerator_poly(
        &self,
        contract: LabelSet,
        delete: LabelSet,
    ) -> Result<SparsePolynomial, PositroidError> {
        self.check_pair(contract, delete)?;
        Ok(SparsePolynomial::from_sets(self.minor_iter(contract, delete)))
    }

    /// Exact value of the minor's enumerator polynomial at `w`.
    pub fn enumerator_eval(
        &self,
        w: &WeightVector,
        contract: LabelSet,
        delete: LabelSet,
    ) -> Result<Rational, PositroidError> {
        self.check_pair(contract, delete)?;
        self.check_weights(w)?;
        let scaled = w.scaled();
        let numer = self
            .minor_iter(contract, delete)
            .fold(BigInt::zero(), |acc, b| acc + scaled.monomial(b));
        Ok(Rational::new(numer, scaled.denominator(self.r)))
    }

    pub(crate) fn check_weights(&self, w: &WeightVector) -> Result<(), PositroidError> {
        if w.len() != self.n {
            return Err(PositroidError::WeightLength { expected: self.n, got: w.len() });
        }
        Ok(())
    }

    /// Brute-force basis exchange axiom: for all bases `A`, `B` and
    /// `a in A \ B` some `b in B \ A` makes `A - a + b` a basis.
    pub fn exchange_check(&self) -> bool {
        self.exchange_counterexample().is_none()
    }

    /// First `(A, B, a)` for which the exchange axiom fails.
    pub fn exchange_counterexample(&self) -> Option<(LabelSet, LabelSet, usize)> {
        for &a in &self.bases {
            for &b in &self.bases {
                for x in a.difference(b) {
                    let mut without = a;
                    without.remove(x);
                    let ok = b.difference(a).iter().any(|y| {
                        let mut candidate = without;
                        candidate.insert(y);
                        self.contains(candidate)
                    });
                    if !ok {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }
}

/// Whether `set` is a basis of the positroid of `g`: either the boundary
/// basis, or `B \ set` can be joined to `set \ B` by vertex-disjoint paths.
/// Decided by unit-capacity max-flow on the vertex-split graph.
pub fn is_basis(g: &LeGraph, set: LabelSet) -> Result<bool, PositroidError> {
    is_basis_with(g, set, BasisRule::VertexDisjoint)
}

pub fn is_basis_with(g: &LeGraph, set: LabelSet, rule: BasisRule) -> Result<bool, PositroidError> {
    if set.len() != g.rank() {
        return Err(PositroidError::Size { expected: g.rank(), got: set.len() });
    }
    if !set.is_subset(LabelSet::full(g.n())) {
        return Err(PositroidError::LabelRange { n: g.n() });
    }
    Ok(basis_test(g, set, rule))
}

fn basis_test(g: &LeGraph, set: LabelSet, rule: BasisRule) -> bool {
    let b = g.boundary_basis();
    let sources = b.difference(set);
    let sinks = set.difference(b);
    let routed = match rule {
        _ if sources.is_empty() => return true,
        BasisRule::VertexDisjoint => vertex_disjoint_paths(g, sources, sinks),
        BasisRule::EdgeDisjoint => edge_disjoint_walks(g, sources, sinks),
    };
    routed == sources.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lediagram::{parse_diagram, LeDiagram};
    use crate::weights::int;

    const EXAMPLE_BASES: [[usize; 3]; 13] = [
        [2, 3, 5], [2, 3, 6], [2, 4, 5], [2, 4, 6], [2, 5, 6], [2, 5, 7], [2, 6, 7],
        [3, 5, 6], [3, 5, 7], [3, 6, 7], [4, 5, 6], [4, 5, 7], [4, 6, 7],
    ];

    fn set(labels: &[usize]) -> LabelSet {
        LabelSet::from_labels(labels.iter().copied())
    }

    fn example() -> (LeGraph, Positroid) {
        let g = parse_diagram(r#"{"n":7,"r":3,"steps":"HVVHVHH","dots":[[1,2],[2,1],[2,2],[2,3],[3,2]]}"#)
            .unwrap()
            .build_graph();
        let p = Positroid::enumerate(&g);
        (g, p)
    }

    #[test]
    fn example_bases() {
        let (g, p) = example();
        let expected: Vec<LabelSet> = EXAMPLE_BASES.iter().map(|b| set(b)).collect();
        assert_eq!(p.bases(), expected.as_slice());
        assert_eq!(is_basis(&g, set(&[2, 5, 7])), Ok(true));
        assert_eq!(is_basis(&g, set(&[1, 2, 3])), Ok(false));
        assert_eq!(is_basis(&g, set(&[2, 3, 5])), Ok(true));
        assert_eq!(is_basis(&g, set(&[2, 3])), Err(PositroidError::Size { expected: 3, got: 2 }));
    }

    #[test]
    fn edge_disjoint_rule_admits_a_crossing() {
        // 2 -> d1.2 -> d2.2 -> d3.2 -> 6 and 3 -> d2.3 -> d2.2 -> d2.1 -> 7 share only d2.2
        let (g, p) = example();
        assert_eq!(is_basis(&g, set(&[5, 6, 7])), Ok(false));
        assert_eq!(is_basis_with(&g, set(&[5, 6, 7]), BasisRule::EdgeDisjoint), Ok(true));
        let loose = Positroid::enumerate_with(&g, BasisRule::EdgeDisjoint);
        assert_eq!(loose.len(), p.len() + 1);
    }

    #[test]
    fn edgeless_and_full_rectangle() {
        let g = LeDiagram::from_steps_str(2, "HVHV", []).unwrap().build_graph();
        assert_eq!(Positroid::enumerate(&g).bases(), &[set(&[2, 4])]);
        let full = LeDiagram::from_steps_str(2, "VVHH", [(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        let p = Positroid::enumerate(&full.build_graph());
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn minors() {
        let (_, p) = example();
        let m = p.minor(set(&[2]), set(&[7])).unwrap();
        let expected: Vec<LabelSet> =
            [[2, 3, 5], [2, 3, 6], [2, 4, 5], [2, 4, 6], [2, 5, 6]].iter().map(|b| set(b)).collect();
        assert_eq!(m, expected);
        assert_eq!(p.minor(LabelSet::EMPTY, LabelSet::EMPTY).unwrap().len(), 13);
        assert!(p.minor(set(&[1]), LabelSet::EMPTY).unwrap().is_empty());
        assert!(matches!(p.minor(set(&[2]), set(&[2, 7])), Err(PositroidError::Overlap { .. })));
    }

    #[test]
    fn enumerator_polynomials() {
        let (_, p) = example();
        assert_eq!(p.enumerator_poly(set(&[2, 7]), LabelSet::EMPTY).unwrap().to_string(), "x2x5x7 + x2x6x7");
        assert!(p.enumerator_poly(set(&[1]), LabelSet::EMPTY).unwrap().is_zero());
        let all = p.enumerator_poly(LabelSet::EMPTY, LabelSet::EMPTY).unwrap();
        assert_eq!(all.len(), 13);
        assert!(all.terms().all(|(_, c)| c == 1));
    }

    #[test]
    fn enumerator_values() {
        let (_, p) = example();
        let none = LabelSet::EMPTY;
        assert_eq!(p.enumerator_eval(&WeightVector::ones(7), none, none).unwrap(), int(13));
        assert_eq!(p.enumerator_eval(&WeightVector::zeros(7), none, none).unwrap(), int(0));
        // label 1 lies in no basis, so zeroing it changes nothing
        let w = WeightVector::from_integers(&[0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(p.enumerator_eval(&w, none, none).unwrap(), int(13));
        // zeroing 2 keeps 356, 357, 367, 456, 457, 467
        let w = WeightVector::from_integers(&[1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(p.enumerator_eval(&w, none, none).unwrap(), int(6));
        assert!(p.enumerator_eval(&WeightVector::ones(6), none, none).is_err());
    }

    #[test]
    fn exchange() {
        let (_, p) = example();
        assert!(p.exchange_check());
        let bad = Positroid::from_bases(4, 2, vec![set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert!(!bad.exchange_check());
        let single = Positroid::from_bases(4, 2, vec![set(&[1, 2])]).unwrap();
        assert!(single.exchange_check());
    }

    #[test]
    fn serialization() {
        let (_, p) = example();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with(r#"{"n":7,"r":3,"bases":[[2,3,5],[2,3,6]"#));
        let back: Positroid = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Positroid>(r#"{"n":4,"r":2,"bases":[[1]]}"#).is_err());
    }
}
