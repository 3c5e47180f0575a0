//! Subsets of the ground set `{1..n}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set a [`LabelSet`] can address.
pub const MAX_LABEL: usize = 64;

/// A subset of `{1..=64}` stored as a bitmask (bit `i - 1` marks label `i`).
///
/// Ordering is lexicographic on the ascending label sequence, so `{2,3,5}`
/// sorts before `{2,4}` and `{2}` before `{2,3}`. Serializes as a sorted
/// array of labels.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn from_bits(bits: u64) -> Self {
        LabelSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Panics if a label is outside `1..=64`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        let mut set = LabelSet::EMPTY;
        for label in labels {
            set.insert(label);
        }
        set
    }

    /// Returns `None` if any label is outside `1..=64`.
    pub fn try_from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Option<Self> {
        let mut set = LabelSet::EMPTY;
        for label in labels {
            if label == 0 || label > MAX_LABEL {
                return None;
            }
            set.insert(label);
        }
        Some(set)
    }

    /// `{1..=n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_LABEL);
        if n == MAX_LABEL {
            LabelSet(u64::MAX)
        } else {
            LabelSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(label: usize) -> Self {
        LabelSet::from_labels([label])
    }

    pub fn insert(&mut self, label: usize) {
        assert!((1..=MAX_LABEL).contains(&label), "label {label} out of range");
        self.0 |= 1 << (label - 1);
    }

    pub fn remove(&mut self, label: usize) {
        if (1..=MAX_LABEL).contains(&label) {
            self.0 &= !(1 << (label - 1));
        }
    }

    pub fn contains(self, label: usize) -> bool {
        (1..=MAX_LABEL).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest label present, if any.
    pub fn max_label(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Labels in ascending order.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Parses a comma-separated label list such as `2,6,7`.
    pub fn parse_list(text: &str) -> Option<LabelSet> {
        let text = text.trim();
        if text.is_empty() {
            return Some(LabelSet::EMPTY);
        }
        let labels: Option<Vec<usize>> =
            text.split(',').map(|part| part.trim().parse().ok()).collect();
        LabelSet::try_from_labels(labels?)
    }

    /// All `k`-subsets of `{1..=n}` in lexicographic order.
    pub fn subsets_of_size(n: usize, k: usize) -> KSubsets {
        KSubsets::new(n, k)
    }
}

pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}

impl IntoIterator for LabelSet {
    type Item = usize;
    type IntoIter = Labels;

    fn into_iter(self) -> Labels {
        self.iter()
    }
}

impl FromIterator<usize> for LabelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        LabelSet::from_labels(iter)
    }
}

/// Lexicographic enumeration of fixed-size subsets.
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n && n <= MAX_LABEL).then(|| (1..=k).collect());
        KSubsets { n, current }
    }
}

impl Iterator for KSubsets {
    type Item = LabelSet;

    fn next(&mut self) -> Option<LabelSet> {
        let current = self.current.as_mut()?;
        let out = LabelSet::from_labels(current.iter().copied());
        let k = current.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if current[i] < self.n - (k - 1 - i) {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

impl Ord for LabelSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for LabelSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compact form used in logs and text reports: `235` when every label is a
/// single digit, `{2,3,10}` otherwise.
impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        if self.max_label().unwrap_or(0) <= 9 {
            for label in self.iter() {
                write!(f, "{label}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.iter().map(|l| l.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelSet({self})")
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for LabelSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        let len = labels.len();
        let set = LabelSet::try_from_labels(labels)
            .ok_or_else(|| serde::de::Error::custom("label out of range 1..=64"))?;
        if set.len() != len {
            return Err(serde::de::Error::custom("duplicate label"));
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> LabelSet {
        LabelSet::from_labels(labels.iter().copied())
    }

    #[test]
    fn lexicographic_order() {
        assert!(set(&[2, 3, 5]) < set(&[2, 3, 6]));
        assert!(set(&[2, 5, 7]) < set(&[2, 6, 7]));
        assert!(set(&[2]) < set(&[2, 3]));
        assert!(set(&[1, 9]) < set(&[2]));
    }

    #[test]
    fn k_subsets_are_lexicographic_and_complete() {
        let all: Vec<LabelSet> = LabelSet::subsets_of_size(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(LabelSet::subsets_of_size(4, 0).collect::<Vec<_>>(), vec![LabelSet::EMPTY]);
        assert_eq!(LabelSet::subsets_of_size(3, 3).count(), 1);
        assert_eq!(LabelSet::subsets_of_size(3, 4).count(), 0);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(set(&[2, 3, 5]).to_string(), "235");
        assert_eq!(set(&[2, 10]).to_string(), "{2,10}");
        assert_eq!(LabelSet::parse_list("2,6,7"), Some(set(&[2, 6, 7])));
        assert_eq!(LabelSet::parse_list(""), Some(LabelSet::EMPTY));
        assert_eq!(LabelSet::parse_list("0,1"), None);
        assert_eq!(LabelSet::parse_list("a"), None);
    }

    #[test]
    fn serde_rejects_duplicates() {
        assert!(serde_json::from_str::<LabelSet>("[1,1]").is_err());
        let s: LabelSet = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
    }
}
