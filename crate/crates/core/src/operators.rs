use serde::{Deserialize, Serialize};

use crate::set::ItemSet;
use crate::structure::PreTopology;

/// Inner and outer fringe of a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FringeReport {
    /// `{z ∈ w : w \ {z} is open}`
    pub inner: ItemSet,
    /// `{z ∉ w : w ∪ {z} is open}`
    pub outer: ItemSet,
    /// `inner ∪ outer`, the locally closed points.
    pub full: ItemSet,
}

/// Intersection of the closed supersets of `a`.
pub fn closure(space: &PreTopology, a: ItemSet) -> ItemSet {
    let avoid = space
        .states()
        .iter()
        .filter(|u| u.is_disjoint(a))
        .fold(ItemSet::EMPTY, |acc, &u| acc.union(u));
    space.universe().complement(avoid)
}

/// Points every neighbourhood of which meets `a`.
pub fn closure_pointwise(space: &PreTopology, a: ItemSet) -> ItemSet {
    space
        .full()
        .iter()
        .filter(|&z| space.neighbourhoods(z).all(|u| u.meets(a)))
        .collect()
}

pub fn interior(space: &PreTopology, a: ItemSet) -> ItemSet {
    space
        .states()
        .iter()
        .filter(|u| u.is_subset(a))
        .fold(ItemSet::EMPTY, |acc, &u| acc.union(u))
}

/// `closure(a) ∩ closure(Q \ a)`.
pub fn boundary(space: &PreTopology, a: ItemSet) -> ItemSet {
    closure(space, a).intersection(closure(space, space.universe().complement(a)))
}

/// Accumulation points of `a`.
pub fn derived_set(space: &PreTopology, a: ItemSet) -> ItemSet {
    space
        .full()
        .iter()
        .filter(|&z| {
            let rest = a.without(z);
            space.neighbourhoods(z).all(|u| u.meets(rest))
        })
        .collect()
}

pub fn is_dense(space: &PreTopology, d: ItemSet) -> bool {
    closure(space, d) == space.full()
}

/// Density via the minimal pre-base: `d` meets every base member.
pub fn is_dense_via_base(space: &PreTopology, d: ItemSet) -> bool {
    space.base().iter().all(|b| b.meets(d))
}

pub fn fringes(space: &PreTopology, w: ItemSet) -> FringeReport {
    let inner: ItemSet = w.iter().filter(|&z| space.is_open(w.without(z))).collect();
    let outer: ItemSet = space
        .universe()
        .complement(w)
        .iter()
        .filter(|&z| space.is_open(w.with(z)))
        .collect();
    FringeReport {
        inner,
        outer,
        full: inner.union(outer),
    }
}

/// Inner fringe of a state through closures: `t` is inner iff no
/// `q ∈ H \ {t}` lies in the closure of `Q \ (H \ {t})`.
pub fn inner_fringe_via_closure(space: &PreTopology, h: ItemSet) -> ItemSet {
    h.iter()
        .filter(|&t| {
            let rest = h.without(t);
            closure(space, space.universe().complement(rest)).is_disjoint(rest)
        })
        .collect()
}

/// Outer fringe of a state through derived sets: `t ∉ H` is outer iff
/// `t ∉ (Q \ H)^d`.
pub fn outer_fringe_via_derived(space: &PreTopology, h: ItemSet) -> ItemSet {
    let outside = space.universe().complement(h);
    let d = derived_set(space, outside);
    outside.difference(d)
}
