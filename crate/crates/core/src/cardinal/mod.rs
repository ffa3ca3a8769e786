//! Weight, density, cellularity and character, plus the primary-items
//! algorithms in [`primary`].

pub mod primary;

use crate::bounds::Bounds;
use crate::error::Result;
use crate::order::atoms_at;
use crate::set::ItemSet;
use crate::structure::PreTopology;

pub use primary::{
    greedy_primary_items, matrix_primary_items, MatrixSnapshot, MatrixState, PickStep, PrimaryItemsMethod,
    PrimaryItemsOutcome, PrimaryItemsRegistry, PrimaryItemsTrace, PruneStep,
};

/// Size of the minimal pre-base.
pub fn weight(space: &PreTopology) -> usize {
    space.base().len()
}

/// Minimum dense set: a least-cardinality hitting set of the minimal
/// pre-base, lexicographically least among the optima.
pub fn density_exact(space: &PreTopology) -> Result<(usize, ItemSet)> {
    density_exact_with(space, &Bounds::default())
}

pub fn density_exact_with(space: &PreTopology, bounds: &Bounds) -> Result<(usize, ItemSet)> {
    Bounds::guard("density universe", space.size(), bounds.density_items)?;
    let base = space.base();
    let q = space.full();
    let lower = disjoint_packing(base);
    let k = (lower..=space.size())
        .find(|&k| can_hit(base, q, k))
        .expect("the whole universe hits every member");
    // Fix members in increasing index order, keeping completion feasible
    // with strictly larger indices.
    let mut chosen = ItemSet::EMPTY;
    let mut floor = 0;
    for slot in 0..k {
        let left = k - slot - 1;
        let pick = (floor..space.size())
            .find(|&x| {
                let with = chosen.with(x);
                let unhit: Vec<ItemSet> = base.iter().copied().filter(|b| b.is_disjoint(with)).collect();
                let allowed = q.difference(ItemSet::full(x + 1));
                can_hit(&unhit, allowed, left)
            })
            .expect("feasible completion");
        chosen = chosen.with(pick);
        floor = pick + 1;
    }
    Ok((k, chosen))
}

/// Greedy lower bound: members picked pairwise disjoint need distinct hits.
fn disjoint_packing(sets: &[ItemSet]) -> usize {
    let mut sorted: Vec<ItemSet> = sets.to_vec();
    sorted.sort_by_key(|s| s.len());
    let mut used = ItemSet::EMPTY;
    let mut n = 0;
    for s in sorted {
        if s.is_disjoint(used) {
            used = used.union(s);
            n += 1;
        }
    }
    n
}

/// Whether at most `budget` items of `allowed` meet every set.
fn can_hit(sets: &[ItemSet], allowed: ItemSet, budget: usize) -> bool {
    let Some(&pivot) = sets.iter().min_by_key(|s| s.intersection(allowed).len()) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let options = pivot.intersection(allowed);
    let mut allowed = allowed;
    for e in options.iter() {
        let rest: Vec<ItemSet> = sets.iter().copied().filter(|s| !s.contains(e)).collect();
        if can_hit(&rest, allowed, budget - 1) {
            return true;
        }
        // Every solution using `e` has been explored.
        allowed = allowed.without(e);
    }
    false
}

/// Largest family of pairwise disjoint nonempty opens. Every nonempty open
/// contains a base member, so the search runs over the base.
pub fn cellularity(space: &PreTopology) -> Result<usize> {
    cellularity_with(space, &Bounds::default())
}

pub fn cellularity_with(space: &PreTopology, bounds: &Bounds) -> Result<usize> {
    Bounds::guard(
        "cellularity states",
        space.states().len(),
        bounds.cellularity_states,
    )?;
    let base = space.base().to_vec();
    let mut best = 0;
    max_disjoint(&base, 0, ItemSet::EMPTY, 0, &mut best);
    Ok(best)
}

fn max_disjoint(sets: &[ItemSet], from: usize, used: ItemSet, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    let rest: Vec<usize> = (from..sets.len())
        .filter(|&i| sets[i].is_disjoint(used))
        .collect();
    if count + rest.len() <= *best {
        return;
    }
    for (k, &i) in rest.iter().enumerate() {
        if count + rest.len() - k <= *best {
            return;
        }
        max_disjoint(sets, i + 1, used.union(sets[i]), count + 1, best);
    }
}

/// Number of minimal neighbourhoods of `z`.
pub fn character_at(space: &PreTopology, z: usize) -> usize {
    atoms_at(space, z).len()
}

/// Largest pointwise character.
pub fn character(space: &PreTopology) -> usize {
    (0..space.size())
        .map(|z| character_at(space, z))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::operators::is_dense;
    use crate::set::Universe;

    fn brute_density(space: &PreTopology) -> (usize, ItemSet) {
        let mut all: Vec<ItemSet> = space.full().subsets().filter(|&d| is_dense(space, d)).collect();
        all.sort();
        (all[0].len(), all[0])
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&fixtures::e1_tau()), 6);
        assert_eq!(
            weight(&PreTopology::indiscrete(Universe::numbered("z", 3).unwrap())),
            1
        );
        assert_eq!(weight(&fixtures::alg5()), 5);
    }

    #[test]
    fn densities() {
        let e1 = fixtures::e1_tau();
        assert_eq!(density_exact(&e1).unwrap(), (3, ItemSet::from_indices([0, 1, 2])));
        assert_eq!(
            density_exact(&fixtures::alg5()).unwrap(),
            (2, ItemSet::from_indices([0, 1]))
        );
        let ind = PreTopology::indiscrete(Universe::numbered("z", 3).unwrap());
        assert_eq!(density_exact(&ind).unwrap(), (1, ItemSet::singleton(0)));
        for (_, x) in fixtures::named() {
            assert_eq!(density_exact(&x).unwrap(), brute_density(&x));
        }
    }

    #[test]
    fn density_bound() {
        let big = PreTopology::indiscrete(Universe::numbered("z", 25).unwrap());
        assert!(density_exact(&big).is_err());
    }

    #[test]
    fn cellularities() {
        assert_eq!(cellularity(&fixtures::e1_tau()).unwrap(), 2);
        assert_eq!(
            cellularity(&PreTopology::indiscrete(Universe::numbered("z", 3).unwrap())).unwrap(),
            1
        );
        let p3 = PreTopology::discrete(Universe::numbered("z", 3).unwrap()).unwrap();
        assert_eq!(cellularity(&p3).unwrap(), 3);
    }

    #[test]
    fn characters() {
        let p3 = PreTopology::discrete(Universe::numbered("z", 3).unwrap()).unwrap();
        assert!((0..3).all(|z| character_at(&p3, z) == 1));
        assert_eq!(character_at(&fixtures::e1_tau(), 0), 3);
        let ch = fixtures::chain(4);
        assert!((0..4).all(|z| character_at(&ch, z) == 1));
        assert_eq!(character(&fixtures::e1_tau()), 3);
    }
}
