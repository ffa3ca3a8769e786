//! The registered theorem checks.
//!
//! Each check names its subject domain, a one-line statement and whether
//! it is asserted (a violation is a failure) or only audited (violations
//! are counted and reported).

use serde::{Deserialize, Serialize};

use crate::cardinal::{cellularity, density_exact, greedy_primary_items, matrix_primary_items, weight};
use crate::connectivity::{
    connectedness, is_chain_connected, is_tight_n_connected, is_well_graded, tight1_fringe_condition,
    tight1_fringe_equality_condition, tight_n_connected_by_search,
};
use crate::error::{Error, Result};
use crate::family::{irreducible_states, union_closure, SetFamily};
use crate::maps::{
    child_pretopology, classify_map, is_pre_continuous, is_pre_quotient_literal, product, PointMap,
};
use crate::miner::{MapInstance, Subject};
use crate::operators::{
    boundary, closure, closure_pointwise, derived_set, fringes, inner_fringe_via_closure, interior, is_dense,
    outer_fringe_via_derived,
};
use crate::order::{
    atoms_at, discriminative_reduction, from_quasi_order, is_antimatroid, minimal_state, to_quasi_order,
    QuasiOrder,
};
use crate::separation::separation_profile;
use crate::set::ItemSet;
use crate::skills::{
    delineate, delineation_completely_discriminative_direct, is_completely_discriminative_delineation,
    is_delineated_space, problem_function, star_condition, star_condition_exhaustive, SkillMultimap,
};
use crate::structure::{
    from_closure_operator, is_atom_pre_base, is_minimal_pre_base, is_minimal_pre_base_literal,
    ClosureOperatorTable, PreTopology,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    Spaces,
    Pairs,
    QuasiOrders,
    SkillMaps,
    Maps,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Spaces => "spaces",
            Domain::Pairs => "pairs",
            Domain::QuasiOrders => "orders",
            Domain::SkillMaps => "skills",
            Domain::Maps => "maps",
        }
    }
}

/// Outcome of one check on one subject.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Finding {
    /// The subject met the hypotheses.
    pub applicable: bool,
    pub violation: Option<String>,
    pub bucket: Option<String>,
}

impl Finding {
    pub fn skip() -> Self {
        Finding::default()
    }

    pub fn holds() -> Self {
        Finding {
            applicable: true,
            ..Finding::default()
        }
    }

    pub fn violated(witness: impl Into<String>) -> Self {
        Finding {
            applicable: true,
            violation: Some(witness.into()),
            bucket: None,
        }
    }

    pub fn from_witness(witness: Option<String>) -> Self {
        Finding {
            applicable: true,
            violation: witness,
            bucket: None,
        }
    }

    pub fn with_bucket(mut self, bucket: impl Into<String>) -> Self {
        self.bucket = Some(bucket.into());
        self
    }
}

pub trait TheoremCheck: Send + Sync {
    fn id(&self) -> &'static str;
    fn statement(&self) -> &'static str;
    fn domain(&self) -> Domain;
    fn asserted(&self) -> bool {
        true
    }
    fn check(&self, subject: &Subject<'_>) -> Finding;
}

enum Runner {
    Space(fn(&PreTopology) -> Finding),
    Pair(fn(&PreTopology, &PreTopology) -> Finding),
    Order(fn(&QuasiOrder) -> Finding),
    Skills(fn(&SkillMultimap) -> Finding),
    Maps(fn(&MapInstance) -> Finding),
}

struct FnCheck {
    id: &'static str,
    statement: &'static str,
    asserted: bool,
    run: Runner,
}

impl TheoremCheck for FnCheck {
    fn id(&self) -> &'static str {
        self.id
    }

    fn statement(&self) -> &'static str {
        self.statement
    }

    fn domain(&self) -> Domain {
        match self.run {
            Runner::Space(_) => Domain::Spaces,
            Runner::Pair(_) => Domain::Pairs,
            Runner::Order(_) => Domain::QuasiOrders,
            Runner::Skills(_) => Domain::SkillMaps,
            Runner::Maps(_) => Domain::Maps,
        }
    }

    fn asserted(&self) -> bool {
        self.asserted
    }

    fn check(&self, subject: &Subject<'_>) -> Finding {
        match (&self.run, subject) {
            (Runner::Space(f), Subject::Space(x)) => f(x),
            (Runner::Pair(f), Subject::Pair(a, b)) => f(a, b),
            (Runner::Order(f), Subject::Order(q)) => f(q),
            (Runner::Skills(f), Subject::Skills(m)) => f(m),
            (Runner::Maps(f), Subject::Maps(i)) => f(i),
            _ => Finding::skip(),
        }
    }
}

/// Checks selectable by id, domain or mode.
pub struct CheckRegistry {
    checks: Vec<Box<dyn TheoremCheck>>,
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { checks: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = CheckRegistry::empty();
        for c in standard_checks() {
            r.register(Box::new(c));
        }
        r
    }

    /// Adds a check, replacing any with the same id.
    pub fn register(&mut self, check: Box<dyn TheoremCheck>) {
        self.checks.retain(|c| c.id() != check.id());
        self.checks.push(check);
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.id()).collect()
    }

    pub fn get(&self, id: &str) -> Result<&dyn TheoremCheck> {
        self.checks
            .iter()
            .find(|c| c.id() == id)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: "theorem",
                name: id.to_string(),
            })
    }

    /// `suite` is a comma-separated list of `all`, `asserted`, `audit`, a
    /// domain name (`spaces`, `pairs`, `orders`, `skills`, `maps`) or a
    /// check id. Registration order is kept and duplicates dropped.
    pub fn select(&self, suite: &str) -> Result<Vec<&dyn TheoremCheck>> {
        let mut keep = vec![false; self.checks.len()];
        for term in suite.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let hits: Vec<usize> = (0..self.checks.len())
                .filter(|&i| {
                    let c = &self.checks[i];
                    match term {
                        "all" => true,
                        "asserted" => c.asserted(),
                        "audit" => !c.asserted(),
                        t => c.domain().name() == t || c.id() == t,
                    }
                })
                .collect();
            if hits.is_empty() {
                return Err(Error::UnknownName {
                    kind: "suite",
                    name: term.to_string(),
                });
            }
            for i in hits {
                keep[i] = true;
            }
        }
        Ok((0..self.checks.len())
            .filter(|&i| keep[i])
            .map(|i| self.checks[i].as_ref())
            .collect())
    }
}

fn space(id: &'static str, statement: &'static str, f: fn(&PreTopology) -> Finding) -> FnCheck {
    FnCheck {
        id,
        statement,
        asserted: true,
        run: Runner::Space(f),
    }
}

fn audit_space(id: &'static str, statement: &'static str, f: fn(&PreTopology) -> Finding) -> FnCheck {
    FnCheck {
        asserted: false,
        ..space(id, statement, f)
    }
}

/// `(id, statement, check)` for one domain.
type Entry<T> = (&'static str, &'static str, fn(&T) -> Finding);

fn standard_checks() -> Vec<FnCheck> {
    let mut v = vec![
        space("closure-axioms", "closure fixes the empty set, is extensive, idempotent, monotone and superadditive", closure_axioms),
        space("closure-derived", "the closure of B is B together with its derived set", closure_derived),
        space("closure-routes", "closure by closed supersets equals the pointwise closure", closure_routes),
        space("boundary-laws", "the boundary is closure minus interior, is closed, and is shared with the complement", boundary_laws),
        space("interior-closure-duality", "the interior of A is the complement of the closure of its complement", interior_duality),
        space("t0-discriminative", "T0 holds iff the space is discriminative", t0_discriminative),
        space("t1-inner-fringe", "T1 holds iff the inner fringe of Q is Q iff the space is bi-discriminative", t1_inner_fringe),
        space("t2-completely-discriminative", "T2 holds iff the space is completely discriminative", t2_completely),
        space("separation-hierarchy", "T4 implies T3 implies T2 implies T1 implies T0", separation_hierarchy),
        space("chain-connected", "chain-connected iff connected", chain_connected),
        space("tight1-well-graded", "tight 1-connected iff the states are well graded", tight1_well_graded),
        space("tight1-equivalences", "the fringe condition, the fringe equality condition and the walk search agree", tight1_equivalences),
        space("weight-bound", "a T0 space has at most 2^w points", weight_bound),
        space("density-cellularity", "every dense set has at least c(Q) items", density_cellularity),
        space("fringe-characterizations", "inner fringe via closures and outer fringe via derived sets match the definitions", fringe_characterizations),
        space("minimal-pre-base", "the irreducible states form the minimal pre-base", minimal_pre_base),
        space("union-closure-idempotent", "union closure returns a space unchanged and the base regenerates it", union_closure_idempotent),
        space("closure-operator-round-trip", "the space generated by its own closure operator is the space", closure_operator_round_trip),
        space("locally-closed-uniqueness", "on T0 spaces, opens differing only in locally closed points of one of them are fixed by their fringes", locally_closed_uniqueness),
        space("regular-atoms", "in a regular space every state H at t has Q\\H open or is not an atom at t", regular_atoms),
        space("regular-outer-fringe-atoms", "in a regular space, for t in the outer fringe of K, Q\\(K+t) is open or K+t is not an atom at t", regular_outer_fringe_atoms),
        space("regular-granular-disconnected", "in a regular space every atom is clopen, so the space is disconnected once some atom is proper", regular_granular_disconnected),
        space("quasi-ordinal-round-trip", "an intersection-closed space is recovered from its specialization order", quasi_ordinal_round_trip),
        space("bi-discriminative-powerset", "a bi-discriminative quasi-ordinal space is the powerset", bi_discriminative_powerset),
        space("quasi-ordinal-regularity", "a quasi-ordinal space is regular iff every Q\\M(t) is open", quasi_ordinal_regularity),
        space("ordinal-antimatroid-tight", "a T0 quasi-ordinal space is an antimatroid and tight 1-connected", ordinal_antimatroid_tight),
        space("ordinal-connectivity", "a T0 quasi-ordinal space is connected iff the meeting graph of the M(t) is connected", ordinal_connectivity),
        space("reduction-t0", "the discriminative reduction is T0 and its projection is a pre-quotient", reduction_t0),
        space("density-exact-minimal", "the exact dense set is dense and no smaller dense set exists", density_exact_minimal),
        space("primary-items-dense", "greedy and matrix outputs are dense", primary_items_dense),
        space("block-disjointness", "items of maximal count have equal or disjoint block intersections", block_disjointness),
        space("dense-cover", "the base and the full state cover have subfamilies of at most c(Q) members with dense union", dense_cover),
        space("hausdorff-density-bound", "a T2 space whose least dense set D traces every closure has at most 2^(2^|D|) points", hausdorff_density_bound),
        space("child-pre-topology", "every child family is a pre-topology on its carrier", child_pre_topology),
        audit_space("atom-pre-base-of-minimal", "the minimal pre-base satisfies the literal atom condition", atom_pre_base_of_minimal),
        audit_space("greedy-optimality", "greedy and matrix outputs have d(Q) items", greedy_optimality),
        audit_space("closure-union-additivity", "the closure of a union is the union of the closures", closure_union_additivity),
        audit_space("boundary-union-subadditivity", "the boundary of a union lies in the union of the boundaries", boundary_union_subadditivity),
        FnCheck {
            id: "alexandroff-equality",
            statement: "two quasi-ordinal spaces coincide iff their minimal states are ordered alike",
            asserted: true,
            run: Runner::Pair(alexandroff_equality),
        },
        FnCheck {
            id: "quasi-order-round-trip",
            statement: "a quasi-order is recovered from its Alexandroff space, which is intersection closed",
            asserted: true,
            run: Runner::Order(quasi_order_round_trip),
        },
    ];
    let skills: [Entry<SkillMultimap>; 6] = [
        (
            "delineation-characterization",
            "the delineation is a space iff it is generated by p of the minimal competencies",
            delineation_characterization,
        ),
        (
            "star-implies-space",
            "the star condition makes the delineation a space",
            star_implies_space,
        ),
        (
            "star-literal",
            "the star condition agrees with its literal subfamily form",
            star_literal,
        ),
        (
            "problem-function-unions",
            "p of a union contains the union of the p's, with equality under the star condition",
            problem_function_unions,
        ),
        (
            "problem-function-monotone",
            "p is monotone",
            problem_function_monotone,
        ),
        (
            "completely-discriminative-delineation",
            "the refinement criterion decides complete discrimination of the delineation",
            completely_discriminative_delineation,
        ),
    ];
    v.extend(skills.into_iter().map(|(id, statement, f)| FnCheck {
        id,
        statement,
        asserted: true,
        run: Runner::Skills(f),
    }));
    let maps: [(bool, Entry<MapInstance>); 7] = [
        (
            true,
            (
                "composition-continuous",
                "composites of pre-continuous maps are pre-continuous",
                composition_continuous,
            ),
        ),
        (
            true,
            (
                "composition-quotient",
                "composites of pre-quotient maps are pre-quotient",
                composition_quotient,
            ),
        ),
        (
            true,
            (
                "quotient-criterion",
                "surjective pre-continuous maps that are pre-open or pre-closed are pre-quotient",
                quotient_criterion,
            ),
        ),
        (
            true,
            (
                "quotient-routes",
                "the saturated-open quotient test agrees with the literal one",
                quotient_routes,
            ),
        ),
        (
            true,
            (
                "product-of-maps",
                "a pre-continuous map into a product has pre-continuous coordinates",
                product_of_maps,
            ),
        ),
        (
            false,
            (
                "product-of-maps-converse",
                "pre-continuous coordinates give a pre-continuous map into the product",
                product_of_maps_converse,
            ),
        ),
        (
            true,
            (
                "partial-pasting",
                "closed pieces confining every closed preimage paste pre-continuous restrictions",
                partial_pasting,
            ),
        ),
    ];
    v.extend(maps.into_iter().map(|(asserted, (id, statement, f))| FnCheck {
        id,
        statement,
        asserted,
        run: Runner::Maps(f),
    }));
    v
}

fn fmt(x: &PreTopology, s: ItemSet) -> String {
    x.fmt_set(s)
}

fn all_subsets(x: &PreTopology) -> impl Iterator<Item = ItemSet> {
    x.full().subsets()
}

fn closure_axioms(x: &PreTopology) -> Finding {
    if !closure(x, ItemSet::EMPTY).is_empty() {
        return Finding::violated("closure of {} is not empty");
    }
    let table: Vec<(ItemSet, ItemSet)> = all_subsets(x).map(|a| (a, closure(x, a))).collect();
    let cl = |a: ItemSet| closure(x, a);
    for &(a, c) in &table {
        if !a.is_subset(c) {
            return Finding::violated(format!("not extensive at {}", fmt(x, a)));
        }
        if cl(c) != c {
            return Finding::violated(format!("not idempotent at {}", fmt(x, a)));
        }
        for z in x.universe().complement(a).iter() {
            if !c.is_subset(cl(a.with(z))) {
                return Finding::violated(format!(
                    "not monotone at {} + {}",
                    fmt(x, a),
                    x.universe().label(z)
                ));
            }
        }
    }
    for &(a, ca) in &table {
        for &(b, cb) in &table {
            if !ca.union(cb).is_subset(cl(a.union(b))) {
                return Finding::violated(format!("not superadditive at {}, {}", fmt(x, a), fmt(x, b)));
            }
        }
    }
    Finding::holds()
}

fn closure_derived(x: &PreTopology) -> Finding {
    Finding::from_witness(
        all_subsets(x)
            .find(|&b| closure(x, b) != b.union(derived_set(x, b)))
            .map(|b| fmt(x, b)),
    )
}

fn closure_routes(x: &PreTopology) -> Finding {
    Finding::from_witness(
        all_subsets(x)
            .find(|&b| closure(x, b) != closure_pointwise(x, b))
            .map(|b| fmt(x, b)),
    )
}

fn boundary_laws(x: &PreTopology) -> Finding {
    let u = x.universe();
    Finding::from_witness(
        all_subsets(x)
            .find(|&g| {
                let b = boundary(x, g);
                b != closure(x, g).difference(interior(x, g))
                    || b != boundary(x, u.complement(g))
                    || !x.is_closed(b)
            })
            .map(|g| fmt(x, g)),
    )
}

fn interior_duality(x: &PreTopology) -> Finding {
    let u = x.universe();
    Finding::from_witness(
        all_subsets(x)
            .find(|&a| interior(x, a) != u.complement(closure(x, u.complement(a))))
            .map(|a| fmt(x, a)),
    )
}

fn t0_discriminative(x: &PreTopology) -> Finding {
    let p = separation_profile(x);
    Finding::from_witness((p.t0 != p.discriminative).then(|| format!("t0 = {}", p.t0)))
}

fn t1_inner_fringe(x: &PreTopology) -> Finding {
    let p = separation_profile(x);
    let fringe = fringes(x, x.full()).inner == x.full();
    Finding::from_witness(
        (p.t1 != fringe || p.t1 != p.bi_discriminative)
            .then(|| format!("t1 = {}, fringe = {fringe}, bi = {}", p.t1, p.bi_discriminative)),
    )
}

fn t2_completely(x: &PreTopology) -> Finding {
    let p = separation_profile(x);
    Finding::from_witness((p.t2 != p.completely_discriminative).then(|| format!("t2 = {}", p.t2)))
}

fn separation_hierarchy(x: &PreTopology) -> Finding {
    let p = separation_profile(x);
    let chain = [
        ("t4", p.t4),
        ("t3", p.t3),
        ("t2", p.t2),
        ("t1", p.t1),
        ("t0", p.t0),
    ];
    Finding::from_witness(
        chain
            .windows(2)
            .find(|w| w[0].1 && !w[1].1)
            .map(|w| format!("{} without {}", w[0].0, w[1].0)),
    )
}

fn chain_connected(x: &PreTopology) -> Finding {
    let a = is_chain_connected(x);
    let b = connectedness(x).connected;
    Finding::from_witness((a != b).then(|| format!("chain-connected = {a}, connected = {b}")))
}

fn tight1_well_graded(x: &PreTopology) -> Finding {
    let a = is_tight_n_connected(x, 1);
    let b = is_well_graded(x.family());
    Finding::from_witness((a != b).then(|| format!("tight = {a}, well-graded = {b}"))).with_bucket(if a {
        "tight"
    } else {
        "not-tight"
    })
}

fn tight1_equivalences(x: &PreTopology) -> Finding {
    let a = tight1_fringe_condition(x);
    let b = tight1_fringe_equality_condition(x);
    let c = tight_n_connected_by_search(x, 1);
    Finding::from_witness((a != b || b != c).then(|| format!("fringe = {a}, equality = {b}, search = {c}")))
}

fn weight_bound(x: &PreTopology) -> Finding {
    if !separation_profile(x).t0 {
        return Finding::skip();
    }
    let w = weight(x);
    let ok = w >= 64 || x.size() as u128 <= 1u128 << w;
    Finding::from_witness((!ok).then(|| format!("|Q| = {}, w = {w}", x.size())))
}

fn density_cellularity(x: &PreTopology) -> Finding {
    match (density_exact(x), cellularity(x)) {
        (Ok((d, _)), Ok(c)) => Finding::from_witness((d < c).then(|| format!("d = {d}, c = {c}"))),
        _ => Finding::skip(),
    }
}

fn fringe_characterizations(x: &PreTopology) -> Finding {
    Finding::from_witness(
        x.states()
            .iter()
            .find(|&&h| {
                let f = fringes(x, h);
                f.inner != inner_fringe_via_closure(x, h) || f.outer != outer_fringe_via_derived(x, h)
            })
            .map(|&h| fmt(x, h)),
    )
}

fn minimal_pre_base(x: &PreTopology) -> Finding {
    let b = irreducible_states(x);
    let ok = is_minimal_pre_base(&b, x) == Ok(true) && is_minimal_pre_base_literal(&b, x) == Ok(true);
    Finding::from_witness((!ok).then(|| b.fmt_members().join(" ")))
}

fn union_closure_idempotent(x: &PreTopology) -> Finding {
    let again = union_closure(x.family()).ok();
    let from_base = union_closure(&irreducible_states(x)).ok();
    let ok = again.as_ref() == Some(x) && from_base.as_ref() == Some(x);
    Finding::from_witness((!ok).then(|| "closure changed the space".to_string()))
}

fn closure_operator_round_trip(x: &PreTopology) -> Finding {
    let back = ClosureOperatorTable::of_space(x).and_then(|t| from_closure_operator(&t));
    Finding::from_witness((back.as_ref() != Ok(x)).then(|| format!("{back:?}")))
}

fn locally_closed_uniqueness(x: &PreTopology) -> Finding {
    if !separation_profile(x).t0 {
        return Finding::skip();
    }
    let fr: Vec<_> = x.states().iter().map(|&v| fringes(x, v)).collect();
    let states = x.states();
    for i in 0..states.len() {
        for j in i + 1..states.len() {
            let d = states[i].symmetric_difference(states[j]);
            let premise = d.is_subset(fr[i].full) || d.is_subset(fr[j].full);
            if premise && fr[i].inner == fr[j].inner && fr[i].outer == fr[j].outer {
                return Finding::violated(format!("{} and {}", fmt(x, states[i]), fmt(x, states[j])));
            }
        }
    }
    Finding::holds()
}

fn regular_atoms(x: &PreTopology) -> Finding {
    if !separation_profile(x).regular_property {
        return Finding::skip();
    }
    let u = x.universe();
    for t in 0..x.size() {
        let atoms = atoms_at(x, t);
        if let Some(h) = x
            .neighbourhoods(t)
            .find(|&h| !x.is_open(u.complement(h)) && atoms.contains(h))
        {
            return Finding::violated(format!("{} at {}", fmt(x, h), u.label(t)));
        }
    }
    Finding::holds()
}

fn regular_outer_fringe_atoms(x: &PreTopology) -> Finding {
    if !separation_profile(x).regular_property {
        return Finding::skip();
    }
    let u = x.universe();
    for &k in x.states() {
        for t in fringes(x, k).outer.iter() {
            let kt = k.with(t);
            if !x.is_open(u.complement(kt)) && atoms_at(x, t).contains(kt) {
                return Finding::violated(format!("K = {}, t = {}", fmt(x, k), u.label(t)));
            }
        }
    }
    Finding::holds()
}

fn regular_granular_disconnected(x: &PreTopology) -> Finding {
    if !separation_profile(x).regular_property {
        return Finding::skip();
    }
    let q = x.full();
    let mut proper = false;
    for t in 0..x.size() {
        for h in atoms_at(x, t).iter() {
            if !x.is_clopen(h) {
                return Finding::violated(format!("atom {} is not clopen", fmt(x, h)));
            }
            proper |= h != q;
        }
    }
    if proper && connectedness(x).connected {
        return Finding::violated("connected despite a proper clopen atom");
    }
    Finding::holds().with_bucket(if proper { "proper-atom" } else { "only-atom-q" })
}

fn quasi_ordinal(x: &PreTopology) -> bool {
    x.family().is_intersection_closed()
}

fn quasi_ordinal_round_trip(x: &PreTopology) -> Finding {
    if !quasi_ordinal(x) {
        return Finding::skip();
    }
    let back = to_quasi_order(x).map(|q| from_quasi_order(&q));
    Finding::from_witness((back.as_ref() != Ok(x)).then(|| format!("{back:?}")))
}

fn bi_discriminative_powerset(x: &PreTopology) -> Finding {
    if !quasi_ordinal(x) || !separation_profile(x).bi_discriminative {
        return Finding::skip();
    }
    Finding::from_witness((x.states().len() != 1 << x.size()).then(|| format!("{} states", x.states().len())))
}

fn quasi_ordinal_regularity(x: &PreTopology) -> Finding {
    if !quasi_ordinal(x) {
        return Finding::skip();
    }
    let u = x.universe();
    let regular = separation_profile(x).regular_property;
    let via_m = (0..x.size()).all(|t| minimal_state(x, t).is_some_and(|m| x.is_open(u.complement(m))));
    Finding::from_witness((regular != via_m).then(|| format!("regular = {regular}, via M = {via_m}")))
}

fn ordinal(x: &PreTopology) -> bool {
    quasi_ordinal(x) && separation_profile(x).t0
}

fn ordinal_antimatroid_tight(x: &PreTopology) -> Finding {
    if !ordinal(x) {
        return Finding::skip();
    }
    let a = is_antimatroid(x);
    let t = is_tight_n_connected(x, 1);
    Finding::from_witness((!a || !t).then(|| format!("antimatroid = {a}, tight = {t}")))
}

fn ordinal_connectivity(x: &PreTopology) -> Finding {
    if !ordinal(x) {
        return Finding::skip();
    }
    let m: Vec<ItemSet> = (0..x.size())
        .map(|t| minimal_state(x, t).expect("quasi-ordinal"))
        .collect();
    let mut reached = ItemSet::singleton(0);
    let mut frontier = vec![0];
    while let Some(p) = frontier.pop() {
        for q in 0..x.size() {
            if !reached.contains(q) && m[p].meets(m[q]) {
                reached = reached.with(q);
                frontier.push(q);
            }
        }
    }
    let graph = reached == x.full();
    let connected = connectedness(x).connected;
    Finding::from_witness((graph != connected).then(|| format!("graph = {graph}, connected = {connected}")))
}

fn reduction_t0(x: &PreTopology) -> Finding {
    let r = discriminative_reduction(&x.as_structure());
    let Ok(reduced) = r.reduced_space() else {
        return Finding::violated("reduced structure is not a space");
    };
    let f = r.projection_map(x.universe());
    let t0 = separation_profile(&reduced).t0;
    let quotient = classify_map(&f, x, &reduced).pre_quotient;
    let literal = is_pre_quotient_literal(&f, x, &reduced).ok().flatten();
    let ok = t0 && quotient == Some(true) && literal == Some(true);
    Finding::from_witness((!ok).then(|| format!("t0 = {t0}, quotient = {quotient:?}, literal = {literal:?}")))
}

fn density_exact_minimal(x: &PreTopology) -> Finding {
    if x.size() > 8 {
        return Finding::skip();
    }
    let Ok((k, d)) = density_exact(x) else {
        return Finding::skip();
    };
    if !is_dense(x, d) || d.len() != k {
        return Finding::violated(format!("{} is not dense of size {k}", fmt(x, d)));
    }
    Finding::from_witness(
        all_subsets(x)
            .find(|&s| s.len() < k && is_dense(x, s))
            .map(|s| format!("{} is smaller", fmt(x, s))),
    )
}

fn base_family(x: &PreTopology) -> SetFamily {
    irreducible_states(x)
}

fn primary_items_dense(x: &PreTopology) -> Finding {
    let g = greedy_primary_items(x).result;
    if !is_dense(x, g) {
        return Finding::violated(format!("greedy {}", fmt(x, g)));
    }
    match matrix_primary_items(&base_family(x)) {
        Ok((m, _)) if is_dense(x, m) => Finding::holds(),
        Ok((m, _)) => Finding::violated(format!("matrix {}", fmt(x, m))),
        Err(e) => Finding::violated(format!("matrix failed: {e}")),
    }
}

fn block_disjointness(x: &PreTopology) -> Finding {
    let base = x.base();
    let blocks: Vec<Vec<ItemSet>> = (0..x.size())
        .map(|z| base.iter().copied().filter(|b| b.contains(z)).collect())
        .collect();
    let max = blocks.iter().map(Vec::len).max().unwrap_or(0);
    let cores: Vec<(usize, ItemSet)> = (0..x.size())
        .filter(|&z| blocks[z].len() == max)
        .map(|z| (z, blocks[z].iter().fold(x.full(), |a, &b| a.intersection(b))))
        .collect();
    for (i, &(r, a)) in cores.iter().enumerate() {
        for &(t, b) in &cores[i + 1..] {
            if a != b && a.meets(b) {
                let u = x.universe();
                return Finding::violated(format!("{} and {}", u.label(r), u.label(t)));
            }
        }
    }
    Finding::holds()
}

/// Some subfamily of at most `c` members has a dense union.
fn dense_subcover(x: &PreTopology, cover: &[ItemSet], c: usize) -> bool {
    fn go(x: &PreTopology, cover: &[ItemSet], from: usize, left: usize, acc: ItemSet) -> bool {
        if !acc.is_empty() && is_dense(x, acc) {
            return true;
        }
        left > 0 && (from..cover.len()).any(|i| go(x, cover, i + 1, left - 1, acc.union(cover[i])))
    }
    go(x, cover, 0, c, ItemSet::EMPTY)
}

fn dense_cover(x: &PreTopology) -> Finding {
    let Ok(c) = cellularity(x) else {
        return Finding::skip();
    };
    if !dense_subcover(x, x.base(), c) {
        return Finding::violated("base");
    }
    if x.states().len() <= 16 {
        let nonempty: Vec<ItemSet> = x.states().iter().copied().filter(|s| !s.is_empty()).collect();
        if !dense_subcover(x, &nonempty, c) {
            return Finding::violated("all nonempty states");
        }
    }
    Finding::holds()
}

fn hausdorff_density_bound(x: &PreTopology) -> Finding {
    if !separation_profile(x).t2 {
        return Finding::skip();
    }
    let Ok((k, d)) = density_exact(x) else {
        return Finding::skip();
    };
    let traced = x
        .states()
        .iter()
        .all(|&h| closure(x, h.intersection(d)) == closure(x, h));
    if !traced {
        return Finding::holds().with_bucket("hypothesis-not-met");
    }
    let ok = k >= 6 || (x.size() as u128) <= 1u128 << (1u32 << k);
    Finding::from_witness((!ok).then(|| format!("|Q| = {}, |D| = {k}", x.size())))
        .with_bucket("hypothesis-met")
}

fn child_pre_topology(x: &PreTopology) -> Finding {
    for b in all_subsets(x) {
        for &u in x.states() {
            match child_pretopology(x, b, u) {
                Ok(ch) if ch.family.is_union_closed() && ch.family.union_all() == ch.carrier => {}
                _ => return Finding::violated(format!("B = {}, U = {}", fmt(x, b), fmt(x, u))),
            }
        }
    }
    Finding::holds()
}

fn atom_pre_base_of_minimal(x: &PreTopology) -> Finding {
    let b = irreducible_states(x);
    match is_atom_pre_base(&b, x) {
        Ok(true) => Finding::holds(),
        Ok(false) => Finding::violated(format!("minimal pre-base {}", b.fmt_members().join(" "))),
        Err(e) => Finding::violated(e.to_string()),
    }
}

fn greedy_optimality(x: &PreTopology) -> Finding {
    let Ok((k, _)) = density_exact(x) else {
        return Finding::skip();
    };
    let g = greedy_primary_items(x).result.len();
    let m = match matrix_primary_items(&base_family(x)) {
        Ok((d, _)) => d.len(),
        Err(_) => return Finding::violated("matrix failed"),
    };
    let bucket = format!("greedy+{} matrix+{}", g - k, m - k);
    Finding::from_witness((g > k || m > k).then(|| format!("d = {k}, greedy = {g}, matrix = {m}")))
        .with_bucket(bucket)
}

fn closure_union_additivity(x: &PreTopology) -> Finding {
    for r in all_subsets(x) {
        for t in all_subsets(x) {
            if closure(x, r.union(t)) != closure(x, r).union(closure(x, t)) {
                return Finding::violated(format!("R = {}, T = {}", fmt(x, r), fmt(x, t)));
            }
        }
    }
    Finding::holds()
}

fn boundary_union_subadditivity(x: &PreTopology) -> Finding {
    for r in all_subsets(x) {
        for t in all_subsets(x) {
            if !boundary(x, r.union(t)).is_subset(boundary(x, r).union(boundary(x, t))) {
                return Finding::violated(format!("R = {}, T = {}", fmt(x, r), fmt(x, t)));
            }
        }
    }
    Finding::holds()
}

fn alexandroff_equality(a: &PreTopology, b: &PreTopology) -> Finding {
    if a.universe() != b.universe() || !quasi_ordinal(a) || !quasi_ordinal(b) {
        return Finding::skip();
    }
    let ma: Vec<ItemSet> = (0..a.size())
        .map(|t| minimal_state(a, t).expect("quasi-ordinal"))
        .collect();
    let mb: Vec<ItemSet> = (0..b.size())
        .map(|t| minimal_state(b, t).expect("quasi-ordinal"))
        .collect();
    let n = a.size();
    let alike = (0..n).all(|p| (0..n).all(|q| ma[p].is_subset(ma[q]) == mb[p].is_subset(mb[q])));
    let equal = a == b;
    Finding::from_witness((alike != equal).then(|| format!("equal = {equal}, alike = {alike}")))
}

fn quasi_order_round_trip(q: &QuasiOrder) -> Finding {
    let x = from_quasi_order(q);
    if !x.family().is_intersection_closed() {
        return Finding::violated("Alexandroff space is not intersection closed");
    }
    let back = to_quasi_order(&x);
    Finding::from_witness((back.as_ref() != Ok(q)).then(|| format!("{back:?}")))
}

fn delineation_characterization(m: &SkillMultimap) -> Finding {
    match is_delineated_space(m) {
        Ok(r) => Finding::from_witness((!r.agree).then(|| format!("{r:?}"))).with_bucket(if r.space {
            "space"
        } else {
            "not-space"
        }),
        Err(e) => Finding::violated(e.to_string()),
    }
}

fn star_implies_space(m: &SkillMultimap) -> Finding {
    if !star_condition(m) {
        return Finding::skip();
    }
    match delineate(m) {
        Ok(h) => {
            Finding::from_witness((!h.is_space()).then(|| "delineation is not union closed".to_string()))
        }
        Err(e) => Finding::violated(e.to_string()),
    }
}

fn star_literal(m: &SkillMultimap) -> Finding {
    match star_condition_exhaustive(m) {
        Ok(lit) => {
            let fast = star_condition(m);
            Finding::from_witness((lit != fast).then(|| format!("literal = {lit}, efficient = {fast}")))
        }
        Err(_) => Finding::skip(),
    }
}

fn problem_function_unions(m: &SkillMultimap) -> Finding {
    let pool = m.competency_pool();
    if pool.len() > 16 {
        return Finding::skip();
    }
    let star = star_condition(m);
    for mask in 1u64..1 << pool.len() {
        let fam = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]);
        let (union, images) = fam.fold((ItemSet::EMPTY, ItemSet::EMPTY), |(u, im), d| {
            (u.union(d), im.union(problem_function(m, d)))
        });
        let whole = problem_function(m, union);
        if !images.is_subset(whole) || (star && images != whole) {
            return Finding::violated(format!("union {}", m.skills().fmt_set(union)));
        }
    }
    Finding::holds()
}

fn problem_function_monotone(m: &SkillMultimap) -> Finding {
    let s = m.skills().full();
    Finding::from_witness(
        s.subsets()
            .find(|&r| {
                let p = problem_function(m, r);
                s.difference(r)
                    .iter()
                    .any(|k| !p.is_subset(problem_function(m, r.with(k))))
            })
            .map(|r| m.skills().fmt_set(r)),
    )
}

fn completely_discriminative_delineation(m: &SkillMultimap) -> Finding {
    match (
        is_completely_discriminative_delineation(m),
        delineation_completely_discriminative_direct(m),
    ) {
        (Ok(a), Ok(b)) => Finding::from_witness((a != b).then(|| format!("criterion = {a}, direct = {b}"))),
        _ => Finding::skip(),
    }
}

fn continuous(f: &PointMap, x: &PreTopology, y: &PreTopology) -> bool {
    is_pre_continuous(f, x, y).expect("instance maps match their spaces")
}

fn composition_continuous(i: &MapInstance) -> Finding {
    if !continuous(&i.f, &i.x, &i.y) || !continuous(&i.g, &i.y, &i.z) {
        return Finding::skip();
    }
    let gf = i.f.then(&i.g).expect("composable");
    Finding::from_witness((!continuous(&gf, &i.x, &i.z)).then(|| "g∘f is not pre-continuous".to_string()))
}

fn composition_quotient(i: &MapInstance) -> Finding {
    let qf = classify_map(&i.f, &i.x, &i.y).pre_quotient;
    let qg = classify_map(&i.g, &i.y, &i.z).pre_quotient;
    if qf != Some(true) || qg != Some(true) {
        return Finding::skip();
    }
    let gf = i.f.then(&i.g).expect("composable");
    let q = classify_map(&gf, &i.x, &i.z).pre_quotient;
    Finding::from_witness((q != Some(true)).then(|| format!("g∘f quotient = {q:?}")))
}

fn quotient_criterion(i: &MapInstance) -> Finding {
    let c = classify_map(&i.f, &i.x, &i.y);
    if !(i.f.is_surjective() && c.pre_continuous && (c.pre_open || c.pre_closed)) {
        return Finding::skip();
    }
    Finding::from_witness((c.pre_quotient != Some(true)).then(|| format!("{c:?}")))
}

fn quotient_routes(i: &MapInstance) -> Finding {
    let a = classify_map(&i.f, &i.x, &i.y).pre_quotient;
    let b = is_pre_quotient_literal(&i.f, &i.x, &i.y).expect("matching spaces");
    Finding::from_witness((a != b).then(|| format!("saturated = {a:?}, literal = {b:?}")))
}

/// `x -> (f(x), h(x))` into the product of the two codomains, with both
/// coordinate continuities.
fn pairing(i: &MapInstance) -> Option<(bool, bool)> {
    let prod = product(&[i.y.clone(), i.z.clone()]).ok()?;
    let nz = i.z.size();
    let assignment = (0..i.x.size())
        .map(|p| i.f.apply(p) * nz + i.h.apply(p))
        .collect();
    let k = PointMap::new(i.x.universe().clone(), prod.universe().clone(), assignment).expect("in range");
    let whole = continuous(&k, &i.x, &prod);
    let parts = continuous(&i.f, &i.x, &i.y) && continuous(&i.h, &i.x, &i.z);
    Some((whole, parts))
}

fn product_of_maps(i: &MapInstance) -> Finding {
    match pairing(i) {
        Some((true, parts)) => {
            Finding::from_witness((!parts).then(|| "coordinates not pre-continuous".to_string()))
        }
        _ => Finding::skip(),
    }
}

fn product_of_maps_converse(i: &MapInstance) -> Finding {
    match pairing(i) {
        Some((whole, true)) => Finding::from_witness((!whole).then(|| {
            let opens: Vec<String> = i.x.states().iter().map(|&s| fmt(&i.x, s)).collect();
            format!(
                "f = {:?}, h = {:?} on {}",
                i.f.assignment(),
                i.h.assignment(),
                opens.join(" ")
            )
        })),
        _ => Finding::skip(),
    }
}

/// `f|C` is pre-continuous on the subspace `C`.
fn restriction_continuous(f: &PointMap, x: &PreTopology, y: &PreTopology, c: ItemSet) -> bool {
    y.states().iter().all(|&w| {
        let pre = f.preimage(w).intersection(c);
        x.states().iter().any(|&o| o.intersection(c) == pre)
    })
}

fn partial_pasting(i: &MapInstance) -> Finding {
    let (x, y, f) = (&i.x, &i.y, &i.f);
    let xu = x.universe();
    let closed_x: Vec<ItemSet> = x.states().iter().map(|&s| xu.complement(s)).collect();
    let closed_y: Vec<ItemSet> = y.states().iter().map(|&s| y.universe().complement(s)).collect();
    let mut applicable = false;
    for &c in &closed_x {
        for &d in &closed_x {
            if c.union(d) != x.full() {
                continue;
            }
            let confined = closed_y.iter().all(|&fy| {
                let pre = f.preimage(fy);
                pre.is_subset(c) || pre.is_subset(d)
            });
            if !confined || !restriction_continuous(f, x, y, c) || !restriction_continuous(f, x, y, d) {
                continue;
            }
            applicable = true;
            if !continuous(f, x, y) {
                return Finding::violated(format!("C = {}, D = {}", fmt(x, c), fmt(x, d)));
            }
        }
    }
    if applicable {
        Finding::holds()
    } else {
        Finding::skip()
    }
}
