use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::family::{compute_irreducibles, is_pre_base_for, union_closure, SetFamily};
use crate::operators;
use crate::set::{ItemSet, Universe};

/// A family containing `∅` and the whole universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnowledgeStructure {
    family: SetFamily,
}

impl KnowledgeStructure {
    pub fn new(family: SetFamily) -> Result<Self> {
        let u = family.universe();
        if !family.contains(ItemSet::EMPTY) {
            return Err(Error::MissingEmptySet);
        }
        if !family.contains(u.full()) {
            return Err(Error::CoverError {
                missing: u.fmt_set(u.complement(family.union_all())),
            });
        }
        Ok(KnowledgeStructure { family })
    }

    pub fn universe(&self) -> &Universe {
        self.family.universe()
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn states(&self) -> &[ItemSet] {
        self.family.members()
    }

    pub fn is_space(&self) -> bool {
        self.family.is_union_closed()
    }

    pub fn into_space(self) -> Result<PreTopology> {
        PreTopology::new(self.family)
    }
}

/// A validated knowledge space: union closed, containing `∅` and `Q`.
///
/// Members are the open sets (states). The minimal pre-base is computed on
/// first use and cached.
#[derive(Clone)]
pub struct PreTopology {
    family: SetFamily,
    base: OnceLock<Vec<ItemSet>>,
}

impl PartialEq for PreTopology {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Eq for PreTopology {}

impl fmt::Debug for PreTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("PreTopology").field(&self.family).finish()
    }
}

impl PreTopology {
    pub fn new(family: SetFamily) -> Result<Self> {
        let ks = KnowledgeStructure::new(family)?;
        if let Some((a, b)) = ks.family.union_gap() {
            let u = ks.universe();
            return Err(Error::NotUnionClosed {
                left: u.fmt_set(a),
                right: u.fmt_set(b),
            });
        }
        Ok(Self::from_closed_sorted(ks.family))
    }

    pub(crate) fn from_closed_sorted(family: SetFamily) -> Self {
        PreTopology {
            family,
            base: OnceLock::new(),
        }
    }

    pub fn indiscrete(universe: Universe) -> Self {
        let full = universe.full();
        Self::from_closed_sorted(SetFamily::from_sorted(universe, vec![ItemSet::EMPTY, full]))
    }

    /// The powerset. Guarded by [`Bounds::subset_items`].
    pub fn discrete(universe: Universe) -> Result<Self> {
        Bounds::guard("discrete space", universe.len(), Bounds::default().subset_items)?;
        let mut all: Vec<ItemSet> = universe.full().subsets().collect();
        all.sort_unstable();
        Ok(Self::from_closed_sorted(SetFamily::from_sorted(universe, all)))
    }

    pub fn universe(&self) -> &Universe {
        self.family.universe()
    }

    pub fn size(&self) -> usize {
        self.universe().len()
    }

    pub fn full(&self) -> ItemSet {
        self.universe().full()
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn states(&self) -> &[ItemSet] {
        self.family.members()
    }

    pub fn is_open(&self, s: ItemSet) -> bool {
        self.family.contains(s)
    }

    pub fn is_closed(&self, s: ItemSet) -> bool {
        self.family.contains(self.universe().complement(s))
    }

    pub fn is_clopen(&self, s: ItemSet) -> bool {
        self.is_open(s) && self.is_closed(s)
    }

    /// States containing `z` (the family written `𝓗_z`).
    pub fn neighbourhoods(&self, z: usize) -> impl Iterator<Item = ItemSet> + '_ {
        self.family.containing(z)
    }

    /// Union-irreducible nonempty states, in canonical order.
    pub fn base(&self) -> &[ItemSet] {
        self.base.get_or_init(|| compute_irreducibles(self.states()))
    }

    pub fn as_structure(&self) -> KnowledgeStructure {
        KnowledgeStructure {
            family: self.family.clone(),
        }
    }

    pub fn fmt_set(&self, s: ItemSet) -> String {
        self.universe().fmt_set(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_knowledge_structure: bool,
    pub is_knowledge_space: bool,
    pub is_quasi_ordinal: bool,
    pub is_topology: bool,
}

/// Structure, space, quasi-ordinal and topology flags of an arbitrary family.
pub fn classify(family: &SetFamily) -> Classification {
    let full = family.universe().full();
    let structure = family.contains(ItemSet::EMPTY) && family.contains(full);
    let space = structure && family.is_union_closed();
    // Arbitrary intersections reduce to binary ones plus the empty
    // intersection, which is `Q` and already present.
    let intersections = family.is_intersection_closed();
    Classification {
        is_knowledge_structure: structure,
        is_knowledge_space: space,
        is_quasi_ordinal: space && intersections,
        is_topology: space && intersections,
    }
}

/// `{U : K ∩ U = ∅ ⇒ H ∩ U = ∅ for every pair (K, H)}`.
pub fn from_relation(universe: Universe, pairs: &[(ItemSet, ItemSet)]) -> Result<PreTopology> {
    from_relation_with(universe, pairs, &Bounds::default())
}

pub fn from_relation_with(
    universe: Universe,
    pairs: &[(ItemSet, ItemSet)],
    bounds: &Bounds,
) -> Result<PreTopology> {
    Bounds::guard("relation universe", universe.len(), bounds.subset_items)?;
    for &(k, h) in pairs {
        if k.is_empty() {
            return Err(Error::EmptyMemberError { side: "left" });
        }
        if h.is_empty() {
            return Err(Error::EmptyMemberError { side: "right" });
        }
        universe.check(k)?;
        universe.check(h)?;
    }
    let mut states: Vec<ItemSet> = universe
        .full()
        .subsets()
        .filter(|&u| pairs.iter().all(|&(k, h)| !k.is_disjoint(u) || h.is_disjoint(u)))
        .collect();
    states.sort_unstable();
    let t = PreTopology::new(SetFamily::from_sorted(universe, states));
    debug_assert!(t.is_ok());
    t
}

/// The four closure-operator axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureAxiom {
    /// `∅ᶜ = ∅`
    EmptyFixed,
    /// `B ⊆ Bᶜ`
    Extensive,
    /// `Bᶜᶜ = Bᶜ`
    Idempotent,
    /// `B ⊆ D ⇒ Bᶜ ⊆ Dᶜ`
    Monotone,
}

impl fmt::Display for ClosureAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureAxiom::EmptyFixed => "empty-fixed",
            ClosureAxiom::Extensive => "extensive",
            ClosureAxiom::Idempotent => "idempotent",
            ClosureAxiom::Monotone => "monotone",
        })
    }
}

/// A closure operator given extensionally, one value per subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOperatorTable {
    universe: Universe,
    values: Vec<ItemSet>,
}

impl ClosureOperatorTable {
    pub fn new<I>(universe: Universe, assignment: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ItemSet, ItemSet)>,
    {
        Self::new_with(universe, assignment, &Bounds::default())
    }

    pub fn new_with<I>(universe: Universe, assignment: I, bounds: &Bounds) -> Result<Self>
    where
        I: IntoIterator<Item = (ItemSet, ItemSet)>,
    {
        Bounds::guard("closure table universe", universe.len(), bounds.subset_items)?;
        let n = 1usize << universe.len();
        let mut values: Vec<Option<ItemSet>> = vec![None; n];
        for (of, is) in assignment {
            universe.check(of)?;
            universe.check(is)?;
            values[of.bits() as usize] = Some(is);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::IncompleteClosureTable {
                    missing: universe.fmt_set(ItemSet::from_bits(i as u64)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let table = ClosureOperatorTable { universe, values };
        table.validate()?;
        Ok(table)
    }

    pub fn from_fn(universe: Universe, f: impl Fn(ItemSet) -> ItemSet) -> Result<Self> {
        Bounds::guard(
            "closure table universe",
            universe.len(),
            Bounds::default().subset_items,
        )?;
        let pairs: Vec<_> = universe.full().subsets().map(|a| (a, f(a))).collect();
        Self::new(universe, pairs)
    }

    /// The closure map of a space.
    pub fn of_space(space: &PreTopology) -> Result<Self> {
        Self::from_fn(space.universe().clone(), |a| operators::closure(space, a))
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn apply(&self, a: ItemSet) -> ItemSet {
        self.values[a.bits() as usize]
    }

    pub fn entries(&self) -> impl Iterator<Item = (ItemSet, ItemSet)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (ItemSet::from_bits(i as u64), v))
    }

    fn validate(&self) -> Result<()> {
        let u = &self.universe;
        let violation = |axiom, witness: ItemSet| Error::AxiomViolation {
            axiom,
            witness: u.fmt_set(witness),
        };
        if !self.apply(ItemSet::EMPTY).is_empty() {
            return Err(violation(ClosureAxiom::EmptyFixed, ItemSet::EMPTY));
        }
        for (b, c) in self.entries() {
            if !b.is_subset(c) {
                return Err(violation(ClosureAxiom::Extensive, b));
            }
        }
        for (b, c) in self.entries() {
            if self.apply(c) != c {
                return Err(violation(ClosureAxiom::Idempotent, b));
            }
        }
        // Monotonicity along single-element extensions implies it for all
        // pairs `B ⊆ D` by chaining.
        for (b, c) in self.entries() {
            for i in u.complement(b).iter() {
                if !c.is_subset(self.apply(b.with(i))) {
                    return Err(violation(ClosureAxiom::Monotone, b));
                }
            }
        }
        Ok(())
    }
}

/// Opens are the complements of the fixed points.
pub fn from_closure_operator(table: &ClosureOperatorTable) -> Result<PreTopology> {
    let u = table.universe().clone();
    let mut states: Vec<ItemSet> = table
        .entries()
        .filter(|&(a, c)| a == c)
        .map(|(a, _)| u.complement(a))
        .collect();
    states.sort_unstable();
    let space = PreTopology::new(SetFamily::from_sorted(u, states))?;
    for (a, c) in table.entries() {
        let got = operators::closure(&space, a);
        if got != c {
            return Err(Error::AxiomViolation {
                axiom: ClosureAxiom::Idempotent,
                witness: space.fmt_set(a),
            });
        }
    }
    Ok(space)
}

/// Literal atom condition: no other member sits strictly between a point
/// and a member containing it.
pub fn is_atom_pre_base(candidate: &SetFamily, space: &PreTopology) -> Result<bool> {
    if !is_pre_base_for(candidate, space) {
        return Err(Error::NotAPreBase);
    }
    Ok(atom_condition(candidate.members()))
}

pub(crate) fn atom_condition(members: &[ItemSet]) -> bool {
    members.iter().all(|&b| {
        b.iter()
            .all(|z| !members.iter().any(|&p| p != b && p.contains(z) && p.is_subset(b)))
    })
}

/// Equality with the irreducible states.
pub fn is_minimal_pre_base(candidate: &SetFamily, space: &PreTopology) -> Result<bool> {
    if !is_pre_base_for(candidate, space) {
        return Err(Error::NotAPreBase);
    }
    Ok(candidate.members() == space.base())
}

/// The definition itself: no proper subfamily is a pre-base. Dropping one
/// member at a time is enough since generation is monotone.
pub fn is_minimal_pre_base_literal(candidate: &SetFamily, space: &PreTopology) -> Result<bool> {
    if !is_pre_base_for(candidate, space) {
        return Err(Error::NotAPreBase);
    }
    let members = candidate.members();
    Ok((0..members.len()).all(|skip| {
        let rest: Vec<ItemSet> = members
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &s)| s)
            .collect();
        let rest = SetFamily::from_sorted(candidate.universe().clone(), rest);
        !is_pre_base_for(&rest, space)
    }))
}

/// Union closure of `base`, re-exported next to the other constructors.
pub fn generate(base: &SetFamily) -> Result<PreTopology> {
    union_closure(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn numbered(m: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::numbered(m, sets).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            PreTopology::new(numbered(2, &[&[1, 2]])),
            Err(Error::MissingEmptySet)
        ));
        assert!(matches!(
            PreTopology::new(numbered(2, &[&[], &[1]])),
            Err(Error::CoverError { .. })
        ));
        assert!(matches!(
            PreTopology::new(numbered(3, &[&[], &[1], &[2], &[1, 2, 3]])),
            Err(Error::NotUnionClosed { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let ex4 = fixtures::ex4();
        let c = classify(ex4.family());
        assert!(c.is_knowledge_space && !c.is_topology);
        let c = classify(fixtures::e1_tau().family());
        assert!(c.is_knowledge_space && !c.is_quasi_ordinal);
        let p = PreTopology::discrete(Universe::numbered("z", 2).unwrap()).unwrap();
        let c = classify(p.family());
        assert!(c.is_knowledge_structure && c.is_knowledge_space && c.is_quasi_ordinal && c.is_topology);
        let c = classify(&numbered(3, &[&[], &[1], &[2], &[1, 2, 3]]));
        assert!(c.is_knowledge_structure && !c.is_knowledge_space);
    }

    #[test]
    fn relation_examples() {
        let u2 = Universe::numbered("z", 2).unwrap();
        let x = from_relation(u2.clone(), &[]).unwrap();
        assert_eq!(x.states().len(), 4);
        let one = |i| ItemSet::singleton(i);
        // Enumerate the 4 subsets by hand: {z2} misses K={z1} but meets H={z2}.
        let x = from_relation(u2.clone(), &[(one(0), one(1))]).unwrap();
        assert_eq!(x, PreTopology::new(numbered(2, &[&[], &[1], &[1, 2]])).unwrap());
        let u3 = Universe::numbered("z", 3).unwrap();
        let x = from_relation(u3, &[(one(0), one(1)), (one(1), one(0))]).unwrap();
        assert_eq!(
            x,
            PreTopology::new(numbered(3, &[&[], &[3], &[1, 2], &[1, 2, 3]])).unwrap()
        );
        assert!(matches!(
            from_relation(u2, &[(ItemSet::EMPTY, one(0))]),
            Err(Error::EmptyMemberError { .. })
        ));
    }

    #[test]
    fn closure_operator_examples() {
        let u = Universe::numbered("z", 3).unwrap();
        let id = ClosureOperatorTable::from_fn(u.clone(), |a| a).unwrap();
        assert_eq!(from_closure_operator(&id).unwrap().states().len(), 8);
        let full = u.full();
        let ind = ClosureOperatorTable::from_fn(u.clone(), |a| if a.is_empty() { a } else { full }).unwrap();
        assert_eq!(
            from_closure_operator(&ind).unwrap(),
            PreTopology::indiscrete(u.clone())
        );
        let e0 = fixtures::e0();
        let t = ClosureOperatorTable::of_space(&e0).unwrap();
        assert_eq!(from_closure_operator(&t).unwrap(), e0);
    }

    #[test]
    fn closure_operator_axiom_violations() {
        let u = Universe::numbered("z", 2).unwrap();
        let full = u.full();
        let err = ClosureOperatorTable::from_fn(u.clone(), |_| full).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: ClosureAxiom::EmptyFixed,
                ..
            }
        ));
        let err = ClosureOperatorTable::from_fn(u.clone(), |_| ItemSet::EMPTY).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: ClosureAxiom::Extensive,
                ..
            }
        ));
        // {z1} -> {z1,z2} but {z1,z2} is fine; break idempotence via {z1} -> {z1}∪? use 3 items
        let u3 = Universe::numbered("z", 3).unwrap();
        let s = |v: &[usize]| u3.set_1based(v).unwrap();
        let (a, ab, abc) = (s(&[1]), s(&[1, 2]), s(&[1, 2, 3]));
        let err = ClosureOperatorTable::from_fn(u3.clone(), |x| {
            if x == a {
                ab
            } else if x == ab {
                abc
            } else if x.is_empty() {
                x
            } else {
                abc
            }
        })
        .unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: ClosureAxiom::Idempotent,
                ..
            }
        ));
        // Monotonicity: {z1,z2} -> itself, {z1} -> {z1,z3}.
        let err = ClosureOperatorTable::from_fn(u3.clone(), |x| {
            if x == a {
                s(&[1, 3])
            } else if x == ab {
                ab
            } else if x.is_empty() || x == s(&[1, 3]) {
                x
            } else {
                abc
            }
        })
        .unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: ClosureAxiom::Monotone,
                ..
            }
        ));
        let partial = ClosureOperatorTable::new(u, [(ItemSet::EMPTY, ItemSet::EMPTY)]).unwrap_err();
        assert!(matches!(partial, Error::IncompleteClosureTable { .. }));
    }

    #[test]
    fn atom_pre_base_examples() {
        let u = Universe::numbered("z", 2).unwrap();
        let disc = PreTopology::discrete(u.clone()).unwrap();
        let singles = numbered(2, &[&[1], &[2]]);
        assert!(is_atom_pre_base(&singles, &disc).unwrap());

        let chain = PreTopology::new(numbered(2, &[&[], &[1], &[1, 2]])).unwrap();
        let b = numbered(2, &[&[1], &[1, 2]]);
        assert!(!is_atom_pre_base(&b, &chain).unwrap());
        assert!(is_minimal_pre_base(&b, &chain).unwrap());

        let alg = fixtures::alg5();
        let base = fixtures::alg5_base();
        assert!(!is_atom_pre_base(&base, &alg).unwrap());
        assert!(is_minimal_pre_base(&base, &alg).unwrap());
        assert!(is_minimal_pre_base_literal(&base, &alg).unwrap());

        let bad = numbered(2, &[&[1]]);
        assert_eq!(is_atom_pre_base(&bad, &chain), Err(Error::NotAPreBase));
    }

    #[test]
    fn minimal_pre_base_examples() {
        let e1 = fixtures::e1_tau();
        let b = crate::family::irreducible_states(&e1);
        assert!(is_minimal_pre_base(&b, &e1).unwrap());
        let e0 = fixtures::e0();
        let opens = SetFamily::new(
            e0.universe().clone(),
            e0.states().iter().copied().filter(|s| !s.is_empty()),
        )
        .unwrap();
        assert!(!is_minimal_pre_base(&opens, &e0).unwrap());
        assert!(!is_minimal_pre_base_literal(&opens, &e0).unwrap());
    }

    #[test]
    fn minimal_equals_literal_by_subfamily_search() {
        // Exhaustive: among all subfamilies of the nonempty states that
        // generate the space, the inclusion-minimal ones are exactly the base.
        for space in [
            fixtures::e0(),
            fixtures::tight(),
            fixtures::conn(),
            fixtures::alg5(),
        ] {
            let nonempty: Vec<ItemSet> = space.states().iter().copied().filter(|s| !s.is_empty()).collect();
            assert!(nonempty.len() <= 20);
            let mut minimal = Vec::new();
            for mask in 0u32..(1 << nonempty.len()) {
                let fam = SetFamily::new(
                    space.universe().clone(),
                    (0..nonempty.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| nonempty[i]),
                )
                .unwrap();
                if is_pre_base_for(&fam, &space) && is_minimal_pre_base_literal(&fam, &space).unwrap() {
                    minimal.push(fam);
                }
            }
            assert_eq!(minimal.len(), 1);
            assert_eq!(minimal[0].members(), space.base());
        }
    }
}
