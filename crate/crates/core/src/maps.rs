use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{all_unions, SetFamily};
use crate::order::class_label;
use crate::set::{ItemSet, Universe, MAX_ITEMS};
use crate::structure::PreTopology;

/// A total function between two universes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    domain: Universe,
    codomain: Universe,
    assignment: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: Universe, codomain: Universe, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.len() {
            let item = domain.labels().get(assignment.len()).cloned().unwrap_or_default();
            return Err(Error::IncompleteMap { item });
        }
        if let Some(&bad) = assignment.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: codomain.len(),
            });
        }
        Ok(PointMap {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(universe: Universe) -> Self {
        let assignment = (0..universe.len()).collect();
        PointMap {
            domain: universe.clone(),
            codomain: universe,
            assignment,
        }
    }

    /// The inclusion of the subspace carried by `y` (see [`subspace`]).
    pub fn inclusion(universe: &Universe, y: ItemSet) -> Result<Self> {
        let sub = sub_universe(universe, y)?;
        PointMap::new(sub, universe.clone(), y.iter().collect())
    }

    pub fn domain(&self) -> &Universe {
        &self.domain
    }

    pub fn codomain(&self) -> &Universe {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image(&self, s: ItemSet) -> ItemSet {
        s.iter().map(|x| self.assignment[x]).collect()
    }

    pub fn preimage(&self, s: ItemSet) -> ItemSet {
        (0..self.assignment.len())
            .filter(|&x| s.contains(self.assignment[x]))
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.domain.full()) == self.codomain.full()
    }

    pub fn is_injective(&self) -> bool {
        self.image(self.domain.full()).len() == self.domain.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<PointMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.codomain.len()];
        for (x, &y) in self.assignment.iter().enumerate() {
            inv[y] = x;
        }
        Some(PointMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            assignment: inv,
        })
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PointMap) -> Result<PointMap> {
        if self.codomain != then.domain {
            return Err(Error::UniverseMismatch);
        }
        Ok(PointMap {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            assignment: self.assignment.iter().map(|&y| then.assignment[y]).collect(),
        })
    }

    fn check(&self, x: &PreTopology, y: &PreTopology) -> Result<()> {
        if &self.domain != x.universe() || &self.codomain != y.universe() {
            Err(Error::UniverseMismatch)
        } else {
            Ok(())
        }
    }
}

/// First open of `y` (canonical order) whose preimage is not open in `x`.
pub fn pre_continuity_witness(f: &PointMap, x: &PreTopology, y: &PreTopology) -> Result<Option<ItemSet>> {
    f.check(x, y)?;
    Ok(y.states().iter().copied().find(|&w| !x.is_open(f.preimage(w))))
}

pub fn is_pre_continuous(f: &PointMap, x: &PreTopology, y: &PreTopology) -> Result<bool> {
    Ok(pre_continuity_witness(f, x, y)?.is_none())
}

/// Same test restricted to the minimal pre-base of `y`.
pub fn is_pre_continuous_via_base(f: &PointMap, x: &PreTopology, y: &PreTopology) -> Result<bool> {
    f.check(x, y)?;
    Ok(y.base().iter().all(|&b| x.is_open(f.preimage(b))))
}

/// Every open `U ∋ f(p)` has an open `V ∋ p` with `f(V) ⊆ U`.
pub fn is_pre_continuous_at(f: &PointMap, x: &PreTopology, y: &PreTopology, p: usize) -> Result<bool> {
    f.check(x, y)?;
    let fp = f.apply(p);
    Ok(y.neighbourhoods(fp)
        .all(|u| x.neighbourhoods(p).any(|v| f.image(v).is_subset(u))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapClassification {
    pub pre_continuous: bool,
    pub pre_open: bool,
    pub pre_closed: bool,
    /// `None` when the map is not surjective.
    pub pre_quotient: Option<bool>,
    pub pre_homeomorphism: bool,
}

pub fn classify_map(f: &PointMap, x: &PreTopology, y: &PreTopology) -> MapClassification {
    let continuous = is_pre_continuous(f, x, y).expect("map over the given universes");
    let xu = x.universe();
    let pre_open = x.states().iter().all(|&v| y.is_open(f.image(v)));
    let pre_closed = x.states().iter().all(|&v| y.is_closed(f.image(xu.complement(v))));
    let pre_quotient = f.is_surjective().then(|| {
        // With surjectivity, `W = f(f⁻¹(W))`, so the open sets with open
        // preimage are the images of saturated opens.
        continuous
            && x.states()
                .iter()
                .filter(|&&v| f.preimage(f.image(v)) == v)
                .all(|&v| y.is_open(f.image(v)))
    });
    let pre_homeomorphism = continuous
        && f.inverse()
            .map(|g| is_pre_continuous(&g, y, x).expect("inverse over swapped universes"))
            .unwrap_or(false);
    MapClassification {
        pre_continuous: continuous,
        pre_open,
        pre_closed,
        pre_quotient,
        pre_homeomorphism,
    }
}

/// Literal quotient test: every subset `W` of the codomain is open iff its
/// preimage is. Exponential in the codomain size.
pub fn is_pre_quotient_literal(f: &PointMap, x: &PreTopology, y: &PreTopology) -> Result<Option<bool>> {
    f.check(x, y)?;
    if !f.is_surjective() {
        return Ok(None);
    }
    Ok(Some(
        y.full()
            .subsets()
            .all(|w| y.is_open(w) == x.is_open(f.preimage(w))),
    ))
}

fn sub_universe(universe: &Universe, y: ItemSet) -> Result<Universe> {
    if y.is_empty() {
        return Err(Error::EmptySubspace);
    }
    universe.check(y)?;
    Universe::new(y.iter().map(|i| universe.label(i).to_string()))
}

/// Re-index a subset of `y` to the positions of `y`'s members.
pub fn compress(s: ItemSet, y: ItemSet) -> ItemSet {
    y.iter()
        .enumerate()
        .filter(|&(_, i)| s.contains(i))
        .map(|(k, _)| k)
        .collect()
}

/// Inverse of [`compress`].
pub fn expand(s: ItemSet, y: ItemSet) -> ItemSet {
    y.iter()
        .enumerate()
        .filter(|&(k, _)| s.contains(k))
        .map(|(_, i)| i)
        .collect()
}

/// The trace family `{O ∩ Y}` on the members of `y`, keeping their labels.
pub fn subspace(space: &PreTopology, y: ItemSet) -> Result<PreTopology> {
    let u = sub_universe(space.universe(), y)?;
    let traces = space.states().iter().map(|&o| compress(o.intersection(y), y));
    PreTopology::new(SetFamily::new(u, traces)?)
}

/// Finite product. Items are tuples `(a,b,..)` in lexicographic order with
/// the first factor most significant; the pre-base is every product of
/// factor opens.
pub fn product(xs: &[PreTopology]) -> Result<PreTopology> {
    if xs.is_empty() {
        return Err(Error::EmptyUniverse);
    }
    let total = xs
        .iter()
        .try_fold(1usize, |acc, x| acc.checked_mul(x.size()))
        .unwrap_or(usize::MAX);
    if total > MAX_ITEMS {
        return Err(Error::UniverseOverflow { size: total });
    }
    let tuples = tuples(xs);
    let labels = tuples.iter().map(|t| {
        let parts: Vec<&str> = t.iter().zip(xs).map(|(&i, x)| x.universe().label(i)).collect();
        format!("({})", parts.join(","))
    });
    let u = Universe::new(labels)?;
    let mut base: Vec<ItemSet> = vec![u.full()];
    // Products of one open per factor, built factor by factor.
    let mut partial: Vec<Vec<ItemSet>> = vec![Vec::new()];
    for x in xs {
        let mut next = Vec::new();
        for p in &partial {
            for &o in x.states() {
                if o.is_empty() {
                    continue;
                }
                let mut q = p.clone();
                q.push(o);
                next.push(q);
            }
        }
        partial = next;
    }
    for choice in partial {
        let set: ItemSet = tuples
            .iter()
            .enumerate()
            .filter(|(_, t)| t.iter().zip(&choice).all(|(&i, o)| o.contains(i)))
            .map(|(k, _)| k)
            .collect();
        base.push(set);
    }
    let states = all_unions(base);
    Ok(PreTopology::from_closed_sorted(SetFamily::from_sorted(u, states)))
}

/// Alias: with finitely many factors the box and product pre-topologies agree.
pub fn box_product(xs: &[PreTopology]) -> Result<PreTopology> {
    product(xs)
}

fn tuples(xs: &[PreTopology]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for x in xs {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..x.size()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Coordinate projection `π_k` from a product built by [`product`].
pub fn projection(xs: &[PreTopology], prod: &PreTopology, k: usize) -> Result<PointMap> {
    let assignment = tuples(xs).into_iter().map(|t| t[k]).collect();
    PointMap::new(prod.universe().clone(), xs[k].universe().clone(), assignment)
}

/// Map onto the classes of a partition, labelled `a+b`.
pub fn partition_map(universe: &Universe, classes: &[ItemSet]) -> Result<PointMap> {
    let mut seen = ItemSet::EMPTY;
    let mut assignment = vec![usize::MAX; universe.len()];
    for (c, &class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::NotAPartition {
                reason: "empty class".into(),
            });
        }
        universe.check(class)?;
        if class.meets(seen) {
            return Err(Error::NotAPartition {
                reason: format!("{} overlaps another class", universe.fmt_set(class)),
            });
        }
        seen = seen.union(class);
        for i in class.iter() {
            assignment[i] = c;
        }
    }
    if seen != universe.full() {
        return Err(Error::NotAPartition {
            reason: format!("{} is not covered", universe.fmt_set(universe.complement(seen))),
        });
    }
    let labels: Vec<String> = classes.iter().map(|&c| class_label(universe, c)).collect();
    PointMap::new(universe.clone(), Universe::new(labels)?, assignment)
}

/// Finest pre-topology on the classes making the projection pre-continuous:
/// images of the saturated opens.
pub fn quotient(space: &PreTopology, classes: &[ItemSet]) -> Result<PreTopology> {
    let f = partition_map(space.universe(), classes)?;
    let states = space
        .states()
        .iter()
        .filter(|&&v| f.preimage(f.image(v)) == v)
        .map(|&v| f.image(v));
    PreTopology::new(SetFamily::new(f.codomain().clone(), states)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildPreTopology {
    /// `⋃γ`.
    pub carrier: ItemSet,
    /// States with the same trace on `b` as `u`.
    pub class: SetFamily,
    /// `γ`, over the original universe.
    pub family: SetFamily,
}

impl ChildPreTopology {
    /// `γ` as a space on its carrier, or `None` when the carrier is empty.
    pub fn as_space(&self) -> Option<PreTopology> {
        if self.carrier.is_empty() {
            return None;
        }
        let u = sub_universe(self.family.universe(), self.carrier).ok()?;
        let sets = self.family.iter().map(|s| compress(s, self.carrier));
        PreTopology::new(SetFamily::new(u, sets).ok()?).ok()
    }
}

/// `γ = {T \ ⋂[U]_B : T ∈ [U]_B} ∪ {∅}` with `[U]_B` the states whose trace
/// on `b` equals that of `u`.
pub fn child_pretopology(space: &PreTopology, b: ItemSet, u: ItemSet) -> Result<ChildPreTopology> {
    space.universe().check(b)?;
    if !space.is_open(u) {
        return Err(Error::NotAState {
            set: space.fmt_set(u),
        });
    }
    let trace = u.intersection(b);
    let class: Vec<ItemSet> = space
        .states()
        .iter()
        .copied()
        .filter(|t| t.intersection(b) == trace)
        .collect();
    let core = class.iter().fold(space.full(), |acc, &t| acc.intersection(t));
    let gamma: Vec<ItemSet> = std::iter::once(ItemSet::EMPTY)
        .chain(class.iter().map(|&t| t.difference(core)))
        .collect();
    let uni = space.universe().clone();
    let family = SetFamily::new(uni.clone(), gamma)?;
    let carrier = family.union_all();
    debug_assert!(family.is_union_closed() && family.contains(carrier));
    Ok(ChildPreTopology {
        carrier,
        class: SetFamily::new(uni, class)?,
        family,
    })
}
