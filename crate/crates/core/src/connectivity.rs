use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::operators::fringes;
use crate::set::{distance, ItemSet};
use crate::structure::PreTopology;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectedness {
    pub connected: bool,
    /// `(C, Q \ C)` for the least nonempty proper clopen `C`.
    pub separation: Option<(ItemSet, ItemSet)>,
    /// Every nonempty proper clopen set, in canonical order.
    pub clopens: Vec<ItemSet>,
}

pub fn connectedness(space: &PreTopology) -> Connectedness {
    let q = space.full();
    let clopens: Vec<ItemSet> = space
        .states()
        .iter()
        .copied()
        .filter(|&c| !c.is_empty() && c != q && space.is_closed(c))
        .collect();
    Connectedness {
        connected: clopens.is_empty(),
        separation: clopens.first().map(|&c| (c, q.difference(c))),
        clopens,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    /// Only consecutive members are known to meet.
    AdjacentIntersecting,
    /// Consecutive members meet and all others are disjoint.
    Simple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainWitness {
    pub covers_used: Vec<ItemSet>,
    pub endpoints: (usize, usize),
    pub kind: ChainKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainSearch {
    Chain(ChainWitness),
    NoChain,
}

fn check_cover(space: &PreTopology, cover: &SetFamily) -> Result<()> {
    if cover.universe() != space.universe() {
        return Err(Error::UniverseMismatch);
    }
    if let Some(bad) = cover.iter().find(|&s| !space.is_open(s)) {
        return Err(Error::NotACover {
            reason: format!("{} is not open", space.fmt_set(bad)),
        });
    }
    let missing = space.universe().complement(cover.union_all());
    if !missing.is_empty() {
        return Err(Error::NotACover {
            reason: format!("{} is not covered", space.fmt_set(missing)),
        });
    }
    Ok(())
}

/// Layered search: layer 0 holds the members through `x`, layer `n` the
/// unused members meeting layer `n - 1`. The chain is read back from the
/// first layer reaching `y`, always taking the least member in cover order.
pub fn find_simple_chain(space: &PreTopology, cover: &SetFamily, x: usize, y: usize) -> Result<ChainSearch> {
    check_cover(space, cover)?;
    for p in [x, y] {
        if p >= space.size() {
            return Err(Error::IndexOutOfRange {
                index: p,
                size: space.size(),
            });
        }
    }
    let members = cover.members();
    let mut layer_of: Vec<Option<usize>> = vec![None; members.len()];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let first: Vec<usize> = (0..members.len()).filter(|&i| members[i].contains(x)).collect();
    for &i in &first {
        layer_of[i] = Some(0);
    }
    layers.push(first);
    loop {
        let cur = layers.last().expect("layer");
        if let Some(&end) = cur.iter().find(|&&i| members[i].contains(y)) {
            let mut chain = vec![end];
            for k in (0..layers.len() - 1).rev() {
                let next = members[*chain.last().expect("chain")];
                let pick = layers[k]
                    .iter()
                    .copied()
                    .find(|&i| members[i].meets(next))
                    .expect("layered predecessor");
                chain.push(pick);
            }
            chain.reverse();
            let covers_used: Vec<ItemSet> = chain.iter().map(|&i| members[i]).collect();
            let kind = if is_simple_chain(&covers_used) {
                ChainKind::Simple
            } else {
                ChainKind::AdjacentIntersecting
            };
            return Ok(ChainSearch::Chain(ChainWitness {
                covers_used,
                endpoints: (x, y),
                kind,
            }));
        }
        let reach = cur.iter().fold(ItemSet::EMPTY, |acc, &i| acc.union(members[i]));
        let depth = layers.len();
        let next: Vec<usize> = (0..members.len())
            .filter(|&i| layer_of[i].is_none() && members[i].meets(reach))
            .collect();
        if next.is_empty() {
            return Ok(ChainSearch::NoChain);
        }
        for &i in &next {
            layer_of[i] = Some(depth);
        }
        layers.push(next);
    }
}

/// Consecutive members meet; members two or more apart are disjoint.
pub fn is_simple_chain(chain: &[ItemSet]) -> bool {
    (0..chain.len()).all(|i| {
        (i + 1..chain.len()).all(|j| {
            if j == i + 1 {
                chain[i].meets(chain[j])
            } else {
                chain[i].is_disjoint(chain[j])
            }
        })
    })
}

/// Every two points are chained by the cover.
pub fn cover_chains_all(space: &PreTopology, cover: &SetFamily) -> Result<bool> {
    check_cover(space, cover)?;
    // Chains exist between all points iff the intersection graph of the
    // cover is connected.
    let members = cover.members();
    if members.is_empty() {
        return Ok(true);
    }
    let mut seen = vec![false; members.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..members.len() {
            if !seen[j] && members[i].meets(members[j]) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(members.iter().zip(&seen).all(|(m, &s)| s || m.is_empty()))
}

/// Chain-connectedness tested over the two-member open covers, the minimal
/// pre-base and the family of all nonempty opens. A separation `(C, Q\C)`
/// is itself a two-member cover without chains, so the first family
/// already decides the question.
pub fn is_chain_connected(space: &PreTopology) -> bool {
    let u = space.universe();
    let q = space.full();
    let states = space.states();
    for (i, &a) in states.iter().enumerate() {
        for &b in &states[i..] {
            if a.union(b) != q {
                continue;
            }
            let cover =
                SetFamily::new(u.clone(), [a, b].into_iter().filter(|s| !s.is_empty())).expect("cover");
            if !cover_chains_all(space, &cover).expect("valid cover") {
                return false;
            }
        }
    }
    let base = SetFamily::new(u.clone(), space.base().iter().copied()).expect("base");
    let nonempty =
        SetFamily::new(u.clone(), states.iter().copied().filter(|s| !s.is_empty())).expect("opens");
    cover_chains_all(space, &base).expect("base cover")
        && cover_chains_all(space, &nonempty).expect("open cover")
}

/// Adjacency lists of the graph on `sets` joining members at distance `n`.
fn step_graph(sets: &[ItemSet], n: usize) -> Vec<Vec<usize>> {
    (0..sets.len())
        .map(|i| {
            (0..sets.len())
                .filter(|&j| j != i && distance(sets[i], sets[j]) == n)
                .collect()
        })
        .collect()
}

fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(i) = queue.pop_front() {
        let d = dist[i].expect("visited");
        for &j in &adj[i] {
            if dist[j].is_none() {
                dist[j] = Some(d + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}

/// Every two members are joined inside the family by one-element steps,
/// using exactly as many steps as their distance.
pub fn is_well_graded(family: &SetFamily) -> bool {
    let sets = family.members();
    let adj = step_graph(sets, 1);
    (0..sets.len()).all(|i| {
        let dist = bfs(&adj, i);
        (0..sets.len()).all(|j| dist[j] == Some(distance(sets[i], sets[j])))
    })
}

/// For `n = 1` this is decided by the fringe condition: every two distinct
/// opens `U`, `W` have `(U Δ W)` meeting the locally closed points of `U`.
/// Larger `n` uses [`tight_n_connected_by_search`].
pub fn is_tight_n_connected(space: &PreTopology, n: usize) -> bool {
    if n == 1 {
        tight1_fringe_condition(space)
    } else {
        tight_n_connected_by_search(space, n)
    }
}

/// `(U Δ W) ∩ U^LC ≠ ∅` for all distinct opens.
pub fn tight1_fringe_condition(space: &PreTopology) -> bool {
    let states = space.states();
    states.iter().all(|&u| {
        let lc = fringes(space, u).full;
        states
            .iter()
            .all(|&w| w == u || u.symmetric_difference(w).meets(lc))
    })
}

/// Opens `U`, `W` with `U^I ⊆ W` and `U^O ∩ W = ∅` coincide.
pub fn tight1_fringe_equality_condition(space: &PreTopology) -> bool {
    let states = space.states();
    states.iter().all(|&u| {
        let f = fringes(space, u);
        states
            .iter()
            .all(|&w| w == u || !(f.inner.is_subset(w) && f.outer.is_disjoint(w)))
    })
}

/// Walks of exactly `|V Δ W|` steps of size `n` between all distinct opens.
pub fn tight_n_connected_by_search(space: &PreTopology, n: usize) -> bool {
    if n == 0 {
        return space.states().len() <= 1;
    }
    let states = space.states();
    let adj = step_graph(states, n);
    (0..states.len()).all(|i| {
        let mut at: Vec<bool> = vec![false; states.len()];
        at[i] = true;
        let mut by_len: Vec<Vec<bool>> = vec![at.clone()];
        for _ in 0..space.size() {
            let mut next = vec![false; states.len()];
            for (v, &on) in at.iter().enumerate() {
                if on {
                    for &w in &adj[v] {
                        next[w] = true;
                    }
                }
            }
            by_len.push(next.clone());
            at = next;
        }
        (0..states.len())
            .filter(|&j| j != i)
            .all(|j| by_len[distance(states[i], states[j])][j])
    })
}

/// Walks of any length with steps of size `n`. Breadth-first search visits
/// each open once, well inside the `|states|²` length bound.
pub fn is_n_connected(space: &PreTopology, n: usize) -> bool {
    let states = space.states();
    if n == 0 {
        return states.len() <= 1;
    }
    let adj = step_graph(states, n);
    bfs(&adj, 0).iter().all(Option::is_some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn connectedness_goldens() {
        let x = fixtures::tight();
        let c = connectedness(&x);
        assert!(!c.connected);
        let s12 = x.universe().set_1based(&[1, 2]).unwrap();
        assert!(c.clopens.contains(&s12));
        assert_eq!(c.separation.unwrap().0, x.universe().set_1based(&[1]).unwrap());
        assert!(connectedness(&fixtures::conn()).connected);
        let ind = PreTopology::indiscrete(crate::set::Universe::numbered("z", 3).unwrap());
        assert!(connectedness(&ind).connected);
        assert!(connectedness(&fixtures::t1c()).connected);
    }

    #[test]
    fn tight_goldens() {
        let t = fixtures::tight();
        assert!(is_tight_n_connected(&t, 1));
        assert!(tight_n_connected_by_search(&t, 1));
        assert!(is_well_graded(t.family()));
        let c = fixtures::conn();
        assert!(!is_tight_n_connected(&c, 1));
        assert!(!tight_n_connected_by_search(&c, 1));
        assert!(!is_well_graded(c.family()));
        let p = PreTopology::discrete(crate::set::Universe::numbered("z", 2).unwrap()).unwrap();
        assert!(is_tight_n_connected(&p, 1));
        assert!(is_well_graded(fixtures::chain(3).family()));
    }

    #[test]
    fn chains() {
        let c = fixtures::conn();
        let base = SetFamily::new(c.universe().clone(), c.base().iter().copied()).unwrap();
        match find_simple_chain(&c, &base, 1, 4).unwrap() {
            ChainSearch::Chain(w) => {
                assert!(w.covers_used.len() <= 3);
                assert_eq!(w.kind, ChainKind::Simple);
                assert!(w.covers_used[0].contains(1));
                assert!(w.covers_used.last().unwrap().contains(4));
            }
            ChainSearch::NoChain => panic!("connected space"),
        }

        let t = fixtures::tight();
        let cover = SetFamily::numbered(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(find_simple_chain(&t, &cover, 0, 2).unwrap(), ChainSearch::NoChain);

        let whole = SetFamily::new(t.universe().clone(), [t.full()]).unwrap();
        match find_simple_chain(&t, &whole, 0, 3).unwrap() {
            ChainSearch::Chain(w) => assert_eq!(w.covers_used, vec![t.full()]),
            ChainSearch::NoChain => panic!(),
        }

        let bad = SetFamily::numbered(4, &[&[1, 2]]).unwrap();
        assert!(matches!(
            find_simple_chain(&t, &bad, 0, 1),
            Err(Error::NotACover { .. })
        ));
        let not_open = SetFamily::numbered(4, &[&[2], &[1, 3, 4]]).unwrap();
        assert!(matches!(
            find_simple_chain(&t, &not_open, 0, 1),
            Err(Error::NotACover { .. })
        ));
    }

    #[test]
    fn chain_connected_matches_fixtures() {
        for (_, x) in fixtures::named() {
            assert_eq!(is_chain_connected(&x), connectedness(&x).connected);
        }
    }
}
