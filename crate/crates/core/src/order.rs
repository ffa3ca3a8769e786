use crate::error::{Error, Result};
use crate::family::{all_unions, minimal_sets, SetFamily};
use crate::maps::PointMap;
use crate::set::{ItemSet, Universe};
use crate::structure::{KnowledgeStructure, PreTopology};

/// A reflexive, transitive relation stored as down-set rows:
/// `down[y] = {x : x ⪯ y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiOrder {
    universe: Universe,
    down: Vec<ItemSet>,
}

impl QuasiOrder {
    /// Pairs `(x, y)` meaning `x ⪯ y`; reflexive pairs are implied.
    pub fn new(universe: Universe, pairs: &[(usize, usize)]) -> Result<Self> {
        let order = Self::from_pairs(universe, pairs)?;
        order.check_transitive()?;
        Ok(order)
    }

    /// Smallest quasi-order containing `pairs`.
    pub fn transitive_closure(universe: Universe, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut order = Self::from_pairs(universe, pairs)?;
        let m = order.universe.len();
        // Warshall on rows: if k ⪯ y then everything below k is below y.
        for k in 0..m {
            for y in 0..m {
                if order.down[y].contains(k) {
                    order.down[y] = order.down[y].union(order.down[k]);
                }
            }
        }
        Ok(order)
    }

    fn from_pairs(universe: Universe, pairs: &[(usize, usize)]) -> Result<Self> {
        let m = universe.len();
        let mut down: Vec<ItemSet> = (0..m).map(ItemSet::singleton).collect();
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= m {
                    return Err(Error::IndexOutOfRange { index: i, size: m });
                }
            }
            down[y] = down[y].with(x);
        }
        Ok(QuasiOrder { universe, down })
    }

    fn check_transitive(&self) -> Result<()> {
        let m = self.universe.len();
        for c in 0..m {
            for b in self.down[c].iter() {
                if let Some(a) = self.down[b].difference(self.down[c]).first() {
                    return Err(Error::NotTransitive {
                        a: self.universe.label(a).to_string(),
                        b: self.universe.label(b).to_string(),
                        c: self.universe.label(c).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// `]←, y]`.
    pub fn down_set(&self, y: usize) -> ItemSet {
        self.down[y]
    }

    /// Non-reflexive pairs `(x, y)` with `x ⪯ y`, ordered by `y` then `x`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.universe.len())
            .flat_map(|y| self.down[y].without(y).iter().map(move |x| (x, y)))
            .collect()
    }
}

/// The specialization order: `x ⪯ y` iff `x` lies in every state through `y`.
pub fn to_quasi_order(space: &PreTopology) -> Result<QuasiOrder> {
    if let Some((a, b)) = space.family().intersection_gap() {
        return Err(Error::NotQuasiOrdinal {
            left: space.fmt_set(a),
            right: space.fmt_set(b),
        });
    }
    let down = (0..space.size()).map(|y| neighbourhood_core(space, y)).collect();
    Ok(QuasiOrder {
        universe: space.universe().clone(),
        down,
    })
}

/// Union closure of the principal down-sets.
pub fn from_quasi_order(order: &QuasiOrder) -> PreTopology {
    let states = all_unions(order.down.iter().copied());
    PreTopology::from_closed_sorted(SetFamily::from_sorted(order.universe.clone(), states))
}

/// `⋂𝓗_t`.
fn neighbourhood_core(space: &PreTopology, t: usize) -> ItemSet {
    space.neighbourhoods(t).fold(space.full(), ItemSet::intersection)
}

/// The least state containing `t`, when there is one.
pub fn minimal_state(space: &PreTopology, t: usize) -> Option<ItemSet> {
    let core = neighbourhood_core(space, t);
    space.is_open(core).then_some(core)
}

/// Minimal states containing `t`.
pub fn atoms_at(space: &PreTopology, t: usize) -> SetFamily {
    let hs: Vec<ItemSet> = space.neighbourhoods(t).collect();
    SetFamily::new(space.universe().clone(), minimal_sets(&hs)).expect("states of the space")
}

/// Every state through `t` contains an atom at `t`, for all `t`.
pub fn is_granular(space: &PreTopology) -> bool {
    (0..space.size()).all(|t| {
        let atoms = atoms_at(space, t);
        space
            .neighbourhoods(t)
            .all(|l| atoms.iter().any(|h| h.is_subset(l)))
    })
}

/// Each nonempty state has an element whose removal leaves a state.
pub fn is_antimatroid(space: &PreTopology) -> bool {
    space
        .states()
        .iter()
        .filter(|h| !h.is_empty())
        .all(|&h| h.iter().any(|t| space.is_open(h.without(t))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Notions, ordered by least member.
    pub classes: Vec<ItemSet>,
    /// The reduced structure over class labels like `z1+z3`.
    pub reduced: KnowledgeStructure,
    /// Class index of every item.
    pub projection: Vec<usize>,
}

impl Reduction {
    pub fn reduced_space(&self) -> Result<PreTopology> {
        self.reduced.clone().into_space()
    }

    pub fn projection_map(&self, domain: &Universe) -> PointMap {
        PointMap::new(
            domain.clone(),
            self.reduced.universe().clone(),
            self.projection.clone(),
        )
        .expect("total projection")
    }
}

/// Label of a class: member labels joined by `+`.
pub fn class_label(universe: &Universe, class: ItemSet) -> String {
    class
        .iter()
        .map(|i| universe.label(i))
        .collect::<Vec<_>>()
        .join("+")
}

/// Quotient by notions: items with identical state systems are merged.
pub fn discriminative_reduction(structure: &KnowledgeStructure) -> Reduction {
    let u = structure.universe();
    let states = structure.states();
    let m = u.len();
    let signature = |t: usize| -> Vec<bool> { states.iter().map(|s| s.contains(t)).collect() };
    let sigs: Vec<Vec<bool>> = (0..m).map(signature).collect();
    let mut classes: Vec<ItemSet> = Vec::new();
    let mut projection = vec![0usize; m];
    for t in 0..m {
        match (0..classes.len()).find(|&c| sigs[classes[c].first().expect("nonempty")] == sigs[t]) {
            Some(c) => {
                classes[c] = classes[c].with(t);
                projection[t] = c;
            }
            None => {
                projection[t] = classes.len();
                classes.push(ItemSet::singleton(t));
            }
        }
    }
    let labels: Vec<String> = classes.iter().map(|&c| class_label(u, c)).collect();
    let cu = Universe::new(labels).expect("distinct class labels");
    let reduced_states = states
        .iter()
        .map(|s| s.iter().map(|t| projection[t]).collect::<ItemSet>());
    let family = SetFamily::new(cu, reduced_states).expect("class family");
    Reduction {
        classes,
        reduced: KnowledgeStructure::new(family).expect("image keeps ∅ and Q"),
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::maps::classify_map;
    use crate::separation::separation_profile;

    #[test]
    fn quasi_order_examples() {
        let u = Universe::numbered("z", 2).unwrap();
        let disc = PreTopology::discrete(u.clone()).unwrap();
        let o = to_quasi_order(&disc).unwrap();
        assert!(o.strict_pairs().is_empty());
        assert_eq!(from_quasi_order(&o), disc);

        let ch = fixtures::chain(3);
        let o = to_quasi_order(&ch).unwrap();
        assert_eq!(o.strict_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(from_quasi_order(&o), ch);

        assert!(matches!(
            to_quasi_order(&fixtures::e1_tau()),
            Err(Error::NotQuasiOrdinal { .. })
        ));

        let u3 = Universe::numbered("z", 3).unwrap();
        let v = QuasiOrder::new(u3.clone(), &[(0, 1), (0, 2)]).unwrap();
        let x = from_quasi_order(&v);
        let expected = SetFamily::numbered(3, &[&[], &[1], &[1, 2], &[1, 3], &[1, 2, 3]]).unwrap();
        assert_eq!(x.family(), &expected);
        assert!(matches!(
            QuasiOrder::new(u3.clone(), &[(0, 1), (1, 2)]),
            Err(Error::NotTransitive { .. })
        ));
        let c = QuasiOrder::transitive_closure(u3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.leq(0, 2));
    }

    #[test]
    fn minimal_states_and_atoms() {
        let ch = fixtures::chain(3);
        assert_eq!(minimal_state(&ch, 1), Some(ItemSet::full(2)));
        let e1 = fixtures::e1_tau();
        assert_eq!(minimal_state(&e1, 0), None);
        let atoms = atoms_at(&e1, 0);
        assert_eq!(atoms.len(), 3);
        assert!(atoms.iter().all(|a| a.len() == 2 && a.contains(0)));
        let disc = PreTopology::discrete(Universe::numbered("z", 3).unwrap()).unwrap();
        assert_eq!(minimal_state(&disc, 2), Some(ItemSet::singleton(2)));
        assert_eq!(atoms_at(&disc, 2).members(), &[ItemSet::singleton(2)]);
        for (_, x) in fixtures::named() {
            assert!(is_granular(&x));
        }
    }

    #[test]
    fn antimatroids() {
        assert!(is_antimatroid(&fixtures::chain(3)));
        assert!(!is_antimatroid(&fixtures::conn()));
        assert!(is_antimatroid(
            &PreTopology::discrete(Universe::numbered("z", 3).unwrap()).unwrap()
        ));
    }

    #[test]
    fn reduction_of_remark_family() {
        let x = fixtures::remark6();
        let r = discriminative_reduction(&x.as_structure());
        let u = x.universe();
        assert!(r.classes.contains(&u.set_1based(&[1, 3]).unwrap()));
        assert!(r.classes.contains(&u.set_1based(&[5, 6]).unwrap()));
        assert_eq!(r.classes.len(), 4);
        let reduced = r.reduced_space().unwrap();
        assert!(separation_profile(&reduced).t0);
        assert_eq!(reduced.universe().labels(), &["z1+z3", "z2", "z4", "z5+z6"]);
        let flags = classify_map(&r.projection_map(u), &x, &reduced);
        assert_eq!(flags.pre_quotient, Some(true));
    }

    #[test]
    fn reduction_edge_cases() {
        let e0 = fixtures::e0();
        let r = discriminative_reduction(&e0.as_structure());
        assert_eq!(r.classes.len(), 4);
        assert_eq!(r.reduced.states().len(), e0.states().len());
        let ind = PreTopology::indiscrete(Universe::numbered("z", 3).unwrap());
        let r = discriminative_reduction(&ind.as_structure());
        assert_eq!(r.classes, vec![ItemSet::full(3)]);
        assert_eq!(r.reduced.states().len(), 2);
        assert_eq!(r.reduced.universe().labels(), &["z1+z2+z3"]);
    }
}
