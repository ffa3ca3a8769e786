use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest universe the packed bitset representation supports.
pub const MAX_ITEMS: usize = 64;

/// A subset of a universe, packed into a single machine word.
///
/// `ItemSet` does not carry its universe; callers keep the two together.
/// The `Ord` impl is the canonical order used everywhere: cardinality
/// first, then lexicographic on the ascending list of member indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ItemSet(u64);

/// Serialized as the ascending list of member indices.
impl Serialize for ItemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ItemSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= MAX_ITEMS) {
            return Err(serde::de::Error::custom(format!("item index {bad} out of range")));
        }
        Ok(ItemSet::from_indices(indices))
    }
}

impl ItemSet {
    pub const EMPTY: ItemSet = ItemSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ItemSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        if m >= 64 {
            ItemSet(u64::MAX)
        } else {
            ItemSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < 64);
        ItemSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(ItemSet::EMPTY, |s, i| s.with(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        ItemSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        ItemSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        ItemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ItemSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ItemSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        ItemSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn meets(self, other: Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Complement relative to a universe of `m` items.
    pub fn complement(self, m: usize) -> Self {
        ItemSet::full(m).difference(self)
    }

    /// Least member index, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, in increasing bit-pattern order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for ItemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // The smallest differing index belongs to `self`, so `self`
                // comes first lexicographically.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for ItemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ItemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ItemSet::from_indices(iter)
    }
}

impl IntoIterator for ItemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ItemSet;

    fn next(&mut self) -> Option<ItemSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(ItemSet(cur))
    }
}

/// An ordered list of distinct item labels.
///
/// Cloning is cheap; two universes are equal when their label lists are.
#[derive(Clone)]
pub struct Universe {
    labels: Arc<[String]>,
    index: Arc<HashMap<String, usize>>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if labels.len() > MAX_ITEMS {
            return Err(Error::UniverseOverflow { size: labels.len() });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel { label: l.clone() });
            }
        }
        Ok(Universe {
            labels: labels.into(),
            index: Arc::new(index),
        })
    }

    /// `prefix1, prefix2, .., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownItem {
            label: label.to_string(),
        })
    }

    pub fn full(&self) -> ItemSet {
        ItemSet::full(self.len())
    }

    pub fn complement(&self, s: ItemSet) -> ItemSet {
        s.complement(self.len())
    }

    pub fn set<I, S>(&self, labels: I) -> Result<ItemSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels
            .into_iter()
            .try_fold(ItemSet::EMPTY, |s, l| Ok(s.with(self.index_of(l.as_ref())?)))
    }

    /// Builds a set from 1-based positions, matching the `z1..zn` naming.
    pub fn set_1based(&self, positions: &[usize]) -> Result<ItemSet> {
        positions.iter().try_fold(ItemSet::EMPTY, |s, &p| {
            if p == 0 || p > self.len() {
                Err(Error::IndexOutOfRange {
                    index: p,
                    size: self.len(),
                })
            } else {
                Ok(s.with(p - 1))
            }
        })
    }

    pub fn check(&self, s: ItemSet) -> Result<()> {
        if s.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: 63 - s.difference(self.full()).bits().leading_zeros() as usize,
                size: self.len(),
            })
        }
    }

    pub fn set_labels(&self, s: ItemSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{z1,z2}` style rendering.
    pub fn fmt_set(&self, s: ItemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// `|a Δ b|`.
pub fn distance(a: ItemSet, b: ItemSet) -> usize {
    a.symmetric_difference(b).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ItemSet {
        ItemSet::from_indices(v.iter().copied())
    }

    #[test]
    fn canonical_order_is_size_then_lexicographic() {
        let mut v = vec![s(&[1, 2]), s(&[0, 3]), s(&[2]), s(&[]), s(&[0, 1]), s(&[0])];
        v.sort();
        assert_eq!(
            v,
            vec![s(&[]), s(&[0]), s(&[2]), s(&[0, 1]), s(&[0, 3]), s(&[1, 2])]
        );
    }

    #[test]
    fn canonical_order_matches_sorted_index_lists() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                let (x, y) = (ItemSet(a), ItemSet(b));
                let key = |t: ItemSet| (t.len(), t.iter().collect::<Vec<_>>());
                assert_eq!(x.cmp(&y), key(x).cmp(&key(y)), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn subsets_enumerates_all() {
        let m = s(&[1, 3, 4]);
        let subs: Vec<_> = m.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(m)));
        assert_eq!(ItemSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn distances() {
        assert_eq!(distance(s(&[1, 2]), s(&[1, 2])), 0);
        assert_eq!(distance(s(&[1, 2]), s(&[2, 3])), 2);
        assert_eq!(distance(s(&[1]), s(&[1, 3, 4, 5])), 3);
    }

    #[test]
    fn universe_rejects_bad_labels() {
        assert!(matches!(
            Universe::new(["a", "a"]),
            Err(Error::DuplicateLabel { .. })
        ));
        assert!(matches!(
            Universe::new(Vec::<String>::new()),
            Err(Error::EmptyUniverse)
        ));
        assert!(matches!(
            Universe::numbered("z", 65),
            Err(Error::UniverseOverflow { size: 65 })
        ));
        assert_eq!(Universe::numbered("z", 64).unwrap().full().len(), 64);
    }

    #[test]
    fn labels_round_trip() {
        let u = Universe::numbered("z", 4).unwrap();
        let a = u.set(["z3", "z1"]).unwrap();
        assert_eq!(a, s(&[0, 2]));
        assert_eq!(u.fmt_set(a), "{z1,z3}");
        assert_eq!(u.set_1based(&[1, 3]).unwrap(), a);
        assert!(u.set(["q"]).is_err());
    }
}
