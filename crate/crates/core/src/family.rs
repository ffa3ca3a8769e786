use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::set::{ItemSet, Universe};
use crate::structure::PreTopology;

/// A duplicate-free family of subsets of one universe, kept in canonical
/// order (see [`ItemSet`]'s `Ord`).
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Universe,
    members: Vec<ItemSet>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = ItemSet>>(universe: Universe, members: I) -> Result<Self> {
        let mut members: Vec<ItemSet> = members.into_iter().collect();
        for &s in &members {
            universe.check(s)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { universe, members })
    }

    pub fn empty(universe: Universe) -> Self {
        SetFamily {
            universe,
            members: Vec::new(),
        }
    }

    /// Builds a family from label lists.
    pub fn from_labels<S: AsRef<str>>(universe: Universe, members: &[Vec<S>]) -> Result<Self> {
        let sets = members
            .iter()
            .map(|m| universe.set(m.iter().map(AsRef::as_ref)))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(universe, sets)
    }

    /// Builds a family over `z1..zm` from 1-based positions.
    pub fn numbered(m: usize, members: &[&[usize]]) -> Result<Self> {
        let u = Universe::numbered("z", m)?;
        let sets = members
            .iter()
            .map(|p| u.set_1based(p))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(u, sets)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn members(&self) -> &[ItemSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ItemSet> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, s: ItemSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn union_all(&self) -> ItemSet {
        self.iter().fold(ItemSet::EMPTY, ItemSet::union)
    }

    /// Members containing item `z`.
    pub fn containing(&self, z: usize) -> impl Iterator<Item = ItemSet> + '_ {
        self.iter().filter(move |s| s.contains(z))
    }

    /// First pair `(a, b)` in canonical order whose union is missing.
    pub fn union_gap(&self) -> Option<(ItemSet, ItemSet)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if !self.contains(a.union(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_union_closed(&self) -> bool {
        self.union_gap().is_none()
    }

    /// Closed under binary intersection (the empty intersection is not
    /// considered).
    pub fn is_intersection_closed(&self) -> bool {
        self.intersection_gap().is_none()
    }

    pub fn intersection_gap(&self) -> Option<(ItemSet, ItemSet)> {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if !self.contains(a.intersection(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Members that are `⊆`-minimal.
    pub fn minimal_members(&self) -> Vec<ItemSet> {
        minimal_sets(&self.members)
    }

    pub fn fmt_members(&self) -> Vec<String> {
        self.iter().map(|s| self.universe.fmt_set(s)).collect()
    }

    pub(crate) fn from_sorted(universe: Universe, members: Vec<ItemSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { universe, members }
    }
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.fmt_members()).finish()
    }
}

/// `⊆`-minimal members of a slice, in input order, without duplicates.
pub fn minimal_sets(sets: &[ItemSet]) -> Vec<ItemSet> {
    let mut out: Vec<ItemSet> = Vec::new();
    for &s in sets {
        if out.contains(&s) {
            continue;
        }
        if !sets.iter().any(|&t| t.is_proper_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Every union of a subfamily of `sets`, including the empty union.
pub(crate) fn all_unions(sets: impl IntoIterator<Item = ItemSet>) -> Vec<ItemSet> {
    let mut seen: HashSet<u64> = HashSet::from([0]);
    let mut out = vec![ItemSet::EMPTY];
    for g in sets {
        if g.is_empty() {
            continue;
        }
        let snapshot = out.len();
        for i in 0..snapshot {
            let u = out[i].union(g);
            if seen.insert(u.bits()) {
                out.push(u);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Smallest union-closed family containing `base`, `∅` and `⋃base`.
///
/// Fails with [`Error::CoverError`] when `⋃base` is not the whole universe.
pub fn union_closure(base: &SetFamily) -> Result<PreTopology> {
    let u = base.universe().clone();
    let covered = base.union_all();
    if covered != u.full() {
        return Err(Error::CoverError {
            missing: u.fmt_set(u.complement(covered)),
        });
    }
    let states = all_unions(base.iter());
    Ok(PreTopology::from_closed_sorted(SetFamily::from_sorted(u, states)))
}

/// The union-irreducible nonempty states: the unique minimal pre-base.
pub fn irreducible_states(space: &PreTopology) -> SetFamily {
    SetFamily::from_sorted(space.universe().clone(), space.base().to_vec())
}

pub(crate) fn compute_irreducibles(states: &[ItemSet]) -> Vec<ItemSet> {
    states
        .iter()
        .copied()
        .filter(|&k| {
            !k.is_empty()
                && states
                    .iter()
                    .filter(|l| l.is_proper_subset(k))
                    .fold(ItemSet::EMPTY, |acc, &l| acc.union(l))
                    != k
        })
        .collect()
}

/// Point-wise pre-base test: every member is a state, and every state `W`
/// and point `z ∈ W` admit a member `H` with `z ∈ H ⊆ W`.
pub fn is_pre_base_for(candidate: &SetFamily, space: &PreTopology) -> bool {
    if candidate.universe() != space.universe() {
        return false;
    }
    if !candidate.iter().all(|h| space.is_open(h)) {
        return false;
    }
    space.states().iter().all(|&w| {
        let inside = candidate
            .iter()
            .filter(|h| h.is_subset(w))
            .fold(ItemSet::EMPTY, ItemSet::union);
        inside == w
    })
}
