//! Sparse integer polynomials whose variables appear with exponent at most 2.
//!
//! Basis enumerator polynomials are multilinear (exponents 0/1); products of
//! two of them, as in the Rayleigh difference, reach exponent 2.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::labels::LabelSet;
use crate::weights::{Rational, WeightVector};

/// `x^single * (x^double)^2` with `single` and `double` disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    double: LabelSet,
    single: LabelSet,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { double: LabelSet::EMPTY, single: LabelSet::EMPTY };

    pub fn multilinear(set: LabelSet) -> Self {
        Monomial { double: LabelSet::EMPTY, single: set }
    }

    pub fn exponent(self, label: usize) -> u8 {
        if self.double.contains(label) {
            2
        } else if self.single.contains(label) {
            1
        } else {
            0
        }
    }

    pub fn support(self) -> LabelSet {
        self.single.union(self.double)
    }

    pub fn degree(self) -> usize {
        self.single.len() + 2 * self.double.len()
    }

    pub fn is_multilinear(self) -> bool {
        self.double.is_empty()
    }

    /// `None` when some exponent would exceed 2.
    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        if !self.double.is_disjoint(other.support()) || !other.double.is_disjoint(self.support()) {
            return None;
        }
        let overlap = self.single.intersection(other.single);
        Some(Monomial {
            double: self.double.union(other.double).union(overlap),
            single: self.single.union(other.single).difference(overlap),
        })
    }

    /// `d/dx_label`, as `(coefficient factor, monomial)`; `None` if the
    /// variable is absent.
    pub fn derivative(self, label: usize) -> Option<(i64, Monomial)> {
        match self.exponent(label) {
            0 => None,
            1 => {
                let mut single = self.single;
                single.remove(label);
                Some((1, Monomial { single, ..self }))
            }
            _ => {
                let mut double = self.double;
                double.remove(label);
                let mut single = self.single;
                single.insert(label);
                Some((2, Monomial { double, single }))
            }
        }
    }

    /// Exponent vector over `1..=n`.
    pub fn exponents(self, n: usize) -> Vec<u8> {
        (1..=n).map(|l| self.exponent(l)).collect()
    }

    fn display_key(self) -> Vec<u8> {
        let n = self.support().max_label().unwrap_or(0);
        let mut key: Vec<u8> = self.exponents(n).into_iter().map(|e| 2 - e).collect();
        key.resize(64, 2);
        key
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support().is_empty() {
            return f.write_str("1");
        }
        for label in self.support() {
            match self.exponent(label) {
                1 => write!(f, "x{label}")?,
                e => write!(f, "x{label}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Integer-coefficient polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        SparsePolynomial::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert(0) += c;
        }
        SparsePolynomial { terms: acc.into_iter().filter(|&(_, c)| c != 0).collect() }
    }

    /// `sum_{S in sets} x^S`.
    pub fn from_sets<I: IntoIterator<Item = LabelSet>>(sets: I) -> Self {
        SparsePolynomial::from_terms(sets.into_iter().map(|s| (Monomial::multilinear(s), 1)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, monomial: Monomial) -> i64 {
        self.terms.get(&monomial).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.is_multilinear())
    }

    pub fn min_coefficient(&self) -> Option<i64> {
        self.terms.values().copied().min()
    }

    /// Terms with a negative coefficient.
    pub fn negative_terms(&self) -> Vec<(Monomial, i64)> {
        self.terms().filter(|&(_, c)| c < 0).collect()
    }

    pub fn derivative(&self, label: usize) -> SparsePolynomial {
        SparsePolynomial::from_terms(
            self.terms().filter_map(|(m, c)| m.derivative(label).map(|(k, d)| (d, c * k))),
        )
    }

    /// Panics if a product monomial would need an exponent above 2.
    pub fn product(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut acc: HashMap<Monomial, i64> = HashMap::with_capacity(self.len() * other.len());
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let m = a.checked_mul(b).expect("product exponent exceeds 2");
                *acc.entry(m).or_insert(0) += ca * cb;
            }
        }
        SparsePolynomial { terms: acc.into_iter().filter(|&(_, c)| c != 0).collect() }
    }

    /// Exact value at `w`.
    pub fn eval(&self, w: &WeightVector) -> Rational {
        let scaled = w.scaled();
        // group by degree so every term shares the denominator L^degree
        let mut by_degree: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (m, c) in self.terms() {
            let value = m.support().iter().fold(BigInt::from(c), |acc, label| {
                let y = &scaled.numerators[label - 1];
                if m.exponent(label) == 2 {
                    acc * y * y
                } else {
                    acc * y
                }
            });
            *by_degree.entry(m.degree()).or_insert_with(BigInt::zero) += value;
        }
        by_degree.into_iter().fold(Rational::zero(), |acc, (degree, numer)| {
            acc + Rational::new(numer, scaled.denominator(degree))
        })
    }

    fn sorted_terms(&self) -> Vec<(Monomial, i64)> {
        let mut terms: Vec<(Monomial, i64)> = self.terms().collect();
        terms.sort_by_key(|(m, _)| (m.display_key(), *m));
        terms
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        SparsePolynomial::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial { terms: self.terms.iter().map(|(&m, &c)| (m, -c)).collect() }
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.product(rhs)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            if i == 0 {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            }
            if magnitude != 1 || m.support().is_empty() {
                write!(f, "{magnitude}")?;
            }
            if !m.support().is_empty() {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermOut {
    monomial: String,
    exponents: BTreeMap<String, u8>,
    coefficient: i64,
}

/// Serializes as a list of `{monomial, exponents, coefficient}` in display
/// order.
impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self.sorted_terms();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for (m, c) in terms {
            let exponents = m.support().iter().map(|l| (l.to_string(), m.exponent(l))).collect();
            seq.serialize_element(&TermOut { monomial: m.to_string(), exponents, coefficient: c })?;
        }
        seq.end()
    }
}
