use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::LinalgError;

/// Strictly increasing, nonempty set of 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self, LinalgError> {
        let bad = |reason| LinalgError::BadIndexSet { indices: indices.clone(), n, reason };
        if indices.is_empty() {
            return Err(bad("empty"));
        }
        if indices.iter().any(|&i| i == 0 || i > n) {
            return Err(bad("index out of range"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("indices must be strictly increasing"));
        }
        Ok(IndexSet(indices))
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub(crate) fn from_zero_based(idx: &[usize]) -> Self {
        IndexSet(idx.iter().map(|i| i + 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }

    /// Every nonempty subset of `{1..n}`, ordered by size and then lexicographically.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = IndexSet> {
        (1..=n).flat_map(move |k| (1..=n).combinations(k).map(IndexSet))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(IndexSet::new(vec![1, 2], 2).is_ok());
        assert!(IndexSet::new(vec![], 2).is_err());
        assert!(IndexSet::new(vec![0], 2).is_err());
        assert!(IndexSet::new(vec![3], 2).is_err());
        assert!(IndexSet::new(vec![2, 1], 2).is_err());
        assert!(IndexSet::new(vec![1, 1], 2).is_err());
    }

    #[test]
    fn enumeration_order() {
        let sets: Vec<String> = IndexSet::all_nonempty(3).map(|s| s.to_string()).collect();
        assert_eq!(
            sets,
            ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
        assert_eq!(IndexSet::all_nonempty(5).count(), 31);
    }
}
