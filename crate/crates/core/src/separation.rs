use serde::{Deserialize, Serialize};

use crate::operators::{closure, fringes, interior};
use crate::set::ItemSet;
use crate::structure::PreTopology;

/// Evidence for each failed axiom; `None` where the axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitnesses {
    /// Points no open set tells apart.
    pub t0: Option<(usize, usize)>,
    /// `(x, y)` with every neighbourhood of `x` containing `y`.
    pub t1: Option<(usize, usize)>,
    /// Points without disjoint neighbourhoods.
    pub t2: Option<(usize, usize)>,
    /// A point and a closed set missing it that cannot be separated.
    pub regular: Option<(usize, ItemSet)>,
    /// Disjoint closed sets that cannot be separated.
    pub normal: Option<(ItemSet, ItemSet)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationProfile {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
    pub regular_property: bool,
    pub t3: bool,
    pub normal_property: bool,
    pub t4: bool,
    pub discriminative: bool,
    pub bi_discriminative: bool,
    pub completely_discriminative: bool,
    pub witnesses: SeparationWitnesses,
}

pub fn separation_profile(space: &PreTopology) -> SeparationProfile {
    let t0w = t0_witness(space);
    let t1w = t1_witness(space);
    let t2w = t2_witness(space);
    let regw = regular_witness(space);
    let norw = normal_witness(space);
    let t1 = t1w.is_none();
    SeparationProfile {
        t0: t0w.is_none(),
        t1,
        t2: t2w.is_none(),
        regular_property: regw.is_none(),
        t3: t1 && regw.is_none(),
        normal_property: norw.is_none(),
        t4: t1 && norw.is_none(),
        discriminative: is_discriminative(space),
        bi_discriminative: is_bi_discriminative(space),
        completely_discriminative: is_completely_discriminative(space),
        witnesses: SeparationWitnesses {
            t0: t0w,
            t1: t1w,
            t2: t2w,
            regular: regw,
            normal: norw,
        },
    }
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |x| (x + 1..m).map(move |y| (x, y)))
}

/// Distinct points with the same closure of their singletons.
fn t0_witness(space: &PreTopology) -> Option<(usize, usize)> {
    pairs(space.size()).find(|&(x, y)| {
        closure(space, ItemSet::singleton(x)).contains(y) && closure(space, ItemSet::singleton(y)).contains(x)
    })
}

/// `(x, y)` with `x` in the closure of `{y}`, i.e. `{y}` not closed.
fn t1_witness(space: &PreTopology) -> Option<(usize, usize)> {
    let m = space.size();
    (0..m)
        .flat_map(|x| (0..m).filter(move |&y| y != x).map(move |y| (x, y)))
        .find(|&(x, y)| closure(space, ItemSet::singleton(y)).contains(x))
}

fn t2_witness(space: &PreTopology) -> Option<(usize, usize)> {
    let base = space.base();
    pairs(space.size()).find(|&(x, y)| {
        !base
            .iter()
            .filter(|b| b.contains(x))
            .any(|&u| base.iter().filter(|b| b.contains(y)).any(|&v| u.is_disjoint(v)))
    })
}

/// `int(Q \ V)` for every open `V`, paired with `V`.
fn open_with_outer_interior(space: &PreTopology) -> Vec<(ItemSet, ItemSet)> {
    let u = space.universe();
    space
        .states()
        .iter()
        .map(|&v| (v, interior(space, u.complement(v))))
        .collect()
}

fn regular_witness(space: &PreTopology) -> Option<(usize, ItemSet)> {
    let u = space.universe();
    let table = open_with_outer_interior(space);
    let mut closed: Vec<ItemSet> = space.states().iter().map(|&s| u.complement(s)).collect();
    closed.sort_unstable();
    for a in closed {
        let reach = table
            .iter()
            .filter(|(v, _)| a.is_subset(*v))
            .fold(ItemSet::EMPTY, |acc, &(_, i)| acc.union(i));
        if let Some(x) = u.complement(a).difference(reach).first() {
            return Some((x, a));
        }
    }
    None
}

fn normal_witness(space: &PreTopology) -> Option<(ItemSet, ItemSet)> {
    let u = space.universe();
    let table = open_with_outer_interior(space);
    let mut closed: Vec<ItemSet> = space.states().iter().map(|&s| u.complement(s)).collect();
    closed.sort_unstable();
    for &c in &closed {
        for &d in &closed {
            if !c.is_disjoint(d) {
                continue;
            }
            let ok = table
                .iter()
                .any(|&(v, outer)| c.is_subset(v) && d.is_subset(outer));
            if !ok {
                return Some((c, d));
            }
        }
    }
    None
}

/// Rows of the item/state incidence matrix, one bit per state.
fn incidence(space: &PreTopology) -> Vec<Vec<u64>> {
    let n = space.states().len();
    let words = n.div_ceil(64);
    (0..space.size())
        .map(|z| {
            let mut row = vec![0u64; words];
            for (j, s) in space.states().iter().enumerate() {
                if s.contains(z) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect()
}

fn row_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Distinct items have distinct state systems `𝓗_t`.
pub fn is_discriminative(space: &PreTopology) -> bool {
    let rows = incidence(space);
    pairs(space.size()).all(|(x, y)| rows[x] != rows[y])
}

/// State systems of distinct items are `⊆`-incomparable.
pub fn is_bi_discriminative(space: &PreTopology) -> bool {
    let rows = incidence(space);
    pairs(space.size()).all(|(x, y)| !row_subset(&rows[x], &rows[y]) && !row_subset(&rows[y], &rows[x]))
}

/// Distinct items lie in disjoint states.
pub fn is_completely_discriminative(space: &PreTopology) -> bool {
    completely_discriminative_states(space.states(), space.size())
}

/// [`is_completely_discriminative`] for an arbitrary family over `m` items.
pub fn completely_discriminative_states(states: &[ItemSet], m: usize) -> bool {
    pairs(m).all(|(p, q)| {
        states
            .iter()
            .filter(|h| h.contains(p))
            .any(|&h| states.iter().filter(|l| l.contains(q)).any(|&l| h.is_disjoint(l)))
    })
}

/// `Q \ {t}` is a state for every `t`.
pub fn bi_discriminative_via_fringe(space: &PreTopology) -> bool {
    fringes(space, space.full()).inner == space.full()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn goldens() {
        let p = separation_profile(&fixtures::e0());
        assert!(p.t0 && !p.t1);
        assert_eq!(p.witnesses.t1, Some((1, 0)));

        let p = separation_profile(&fixtures::e1_tau());
        assert!(p.t2 && p.regular_property && p.normal_property && p.t4);

        let p = separation_profile(&fixtures::t2nr());
        assert!(p.t2 && !p.regular_property && !p.t3);

        let p = separation_profile(&fixtures::rnn());
        assert!(p.t3 && !p.normal_property && !p.t4);

        let p = separation_profile(&fixtures::remark6());
        assert!(!p.t0 && !p.discriminative);
        assert_eq!(p.witnesses.t0, Some((0, 2)));

        let p = separation_profile(&fixtures::t1c());
        assert!(p.t1 && !p.t2);
    }

    #[test]
    fn t2nr_regular_witness_is_a_real_failure() {
        let x = fixtures::t2nr();
        let (pt, a) = separation_profile(&x).witnesses.regular.unwrap();
        assert!(x.is_closed(a) && !a.contains(pt));
        // No open pair separates them.
        for &u in x.states().iter().filter(|u| u.contains(pt)) {
            for &v in x.states().iter().filter(|v| a.is_subset(**v)) {
                assert!(u.meets(v));
            }
        }
    }

    #[test]
    fn completely_discriminative_examples() {
        assert!(!is_completely_discriminative(&fixtures::cofinite5(2)));
        assert!(is_completely_discriminative(&fixtures::cofinite5(3)));
        let p = PreTopology::discrete(crate::set::Universe::numbered("z", 3).unwrap()).unwrap();
        assert!(is_completely_discriminative(&p));
    }

    #[test]
    fn fringe_route() {
        assert!(bi_discriminative_via_fringe(&fixtures::t1c()));
        assert!(!bi_discriminative_via_fringe(&fixtures::e0()));
        for (_, x) in fixtures::named() {
            let p = separation_profile(&x);
            assert_eq!(bi_discriminative_via_fringe(&x), p.t1);
            assert_eq!(p.t0, p.discriminative);
            assert_eq!(p.t1, p.bi_discriminative);
            assert_eq!(p.t2, p.completely_discriminative);
        }
    }
}
