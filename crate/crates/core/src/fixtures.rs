//! Named example spaces used across the test-suite, the CLI fixtures and
//! the documentation. Items are labelled `z1..zn` unless noted otherwise.

use crate::error::Result;
use crate::family::{union_closure, SetFamily};
use crate::io;
use crate::maps::PointMap;
use crate::order::QuasiOrder;
use crate::set::{ItemSet, Universe};
use crate::skills::SkillMultimap;
use crate::structure::{ClosureOperatorTable, PreTopology};

fn space(m: usize, states: &[&[usize]]) -> PreTopology {
    PreTopology::new(SetFamily::numbered(m, states).expect("fixture family"))
        .expect("fixture is a knowledge space")
}

/// A T0 space that is not T1.
pub fn e0() -> PreTopology {
    space(
        4,
        &[
            &[],
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 2, 4],
            &[1, 2, 3, 4],
        ],
    )
}

/// `∅` together with every subset of `{z1..z4}` of size at least two.
pub fn e1_tau() -> PreTopology {
    let u = Universe::numbered("z", 4).expect("universe");
    let states = u.full().subsets().filter(|s| s.is_empty() || s.len() >= 2);
    PreTopology::new(SetFamily::new(u, states).expect("family")).expect("space")
}

pub fn e1_delta() -> PreTopology {
    space(
        4,
        &[
            &[],
            &[3],
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 2, 4],
            &[1, 2, 3, 4],
        ],
    )
}

/// Tight 1-connected but disconnected.
pub fn tight() -> PreTopology {
    space(
        4,
        &[
            &[],
            &[1],
            &[4],
            &[3, 4],
            &[1, 2],
            &[1, 4],
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 2, 4],
            &[2, 3, 4],
            &[1, 2, 3, 4],
        ],
    )
}

/// Connected but not tight 1-connected.
pub fn conn() -> PreTopology {
    space(
        5,
        &[
            &[],
            &[1],
            &[1, 2, 4],
            &[1, 2, 3],
            &[1, 3, 4],
            &[1, 2, 3, 4],
            &[1, 2, 3, 4, 5],
        ],
    )
}

/// T1, connected, not T2: `∅`, the four 3-sets and `Q`.
pub fn t1c() -> PreTopology {
    space(
        4,
        &[&[], &[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4], &[1, 2, 3, 4]],
    )
}

/// Hausdorff but not regular.
pub fn t2nr() -> PreTopology {
    space(
        4,
        &[
            &[],
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[2, 4],
            &[2, 3],
            &[1, 2, 4],
            &[1, 2, 3],
            &[1, 3, 4],
            &[2, 3, 4],
            &[1, 2, 3, 4],
        ],
    )
}

/// Generated by every pair `{y, z}` with `y ∈ {a1,a2,a3}`, `z ≠ y`, except
/// `{a1, a2}`. Regular but not normal.
pub fn rnn() -> PreTopology {
    let u = Universe::new(["a1", "a2", "a3", "b1", "b2"]).expect("universe");
    let mut base = Vec::new();
    for y in 0..3 {
        for z in 0..5 {
            if z != y && !(y < 2 && z < 2) {
                base.push(ItemSet::singleton(y).with(z));
            }
        }
    }
    union_closure(&SetFamily::new(u, base).expect("family")).expect("space")
}

/// `{z1}, {z2}, {z1,z3}, {z2,z3,z4}, {z1,z3,z4,z5}`.
pub fn alg5_base() -> SetFamily {
    SetFamily::numbered(5, &[&[1], &[2], &[1, 3], &[2, 3, 4], &[1, 3, 4, 5]]).expect("family")
}

pub fn alg5() -> PreTopology {
    union_closure(&alg5_base()).expect("space")
}

/// The six-point non-T0 family as originally listed.
/// It misses `{z1,z2,z3,z5,z6}` and so is not union closed.
pub fn remark6_listed() -> SetFamily {
    SetFamily::numbered(
        6,
        &[
            &[],
            &[4],
            &[5, 6],
            &[1, 3],
            &[1, 3, 4],
            &[4, 5, 6],
            &[1, 2, 3],
            &[1, 2, 3, 4],
            &[1, 3, 5, 6],
            &[1, 3, 4, 5, 6],
            &[1, 2, 3, 4, 5, 6],
        ],
    )
    .expect("family")
}

/// Union closure of [`remark6_listed`]: a non-T0 space whose notions are
/// `{z1,z3}` and `{z5,z6}`.
pub fn remark6() -> PreTopology {
    union_closure(&remark6_listed()).expect("space")
}

/// `{∅, {x,y}, {x,s}, {x,y,s}, Q}` on `{x,y,s,t}`: a knowledge space that is
/// not a topology.
pub fn ex4() -> PreTopology {
    let u = Universe::new(["x", "y", "s", "t"]).expect("universe");
    let fam = SetFamily::from_labels(
        u,
        &[
            vec![],
            vec!["x", "y"],
            vec!["x", "s"],
            vec!["x", "y", "s"],
            vec!["x", "y", "s", "t"],
        ],
    )
    .expect("family");
    PreTopology::new(fam).expect("space")
}

/// `∅` plus every subset of `{z1..z5}` missing at most `k` items.
pub fn cofinite5(k: usize) -> PreTopology {
    let u = Universe::numbered("z", 5).expect("universe");
    let states = u.full().subsets().filter(|s| s.is_empty() || 5 - s.len() <= k);
    PreTopology::new(SetFamily::new(u, states).expect("family")).expect("space")
}

/// The triangle `{z1,z2}, {z2,z3}, {z1,z3}` whose hitting sets are vertex
/// covers.
pub fn vertex_cover_base() -> SetFamily {
    SetFamily::numbered(3, &[&[1, 2], &[2, 3], &[1, 3]]).expect("family")
}

/// `{∅, {z1}, {z1,z2}, .., Q}` on `n` items.
pub fn chain(n: usize) -> PreTopology {
    let u = Universe::numbered("z", n).expect("universe");
    let states = (0..=n).map(ItemSet::full);
    PreTopology::new(SetFamily::new(u, states).expect("family")).expect("space")
}

/// Every named fixture with its file stem.
pub fn named() -> Vec<(&'static str, PreTopology)> {
    vec![
        ("e0", e0()),
        ("e1tau", e1_tau()),
        ("e1delta", e1_delta()),
        ("tight", tight()),
        ("conn", conn()),
        ("t1c", t1c()),
        ("t2nr", t2nr()),
        ("rnn", rnn()),
        ("alg5", alg5()),
        ("remark6", remark6()),
        ("ex4", ex4()),
    ]
}

/// Every file under `fixtures/` with its contents.
pub fn files() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = named()
        .into_iter()
        .map(|(stem, x)| (format!("{stem}.json"), io::write_space(&x).expect("write")))
        .collect();
    let push = |out: &mut Vec<(String, String)>, name: &str, text: Result<String>| {
        out.push((name.to_string(), text.expect("write")));
    };
    push(&mut out, "alg5-base.json", io::write_family(&alg5_base()));
    push(
        &mut out,
        "remark6-listed.json",
        io::write_family(&remark6_listed()),
    );
    push(
        &mut out,
        "vertex-cover.json",
        union_closure(&vertex_cover_base()).and_then(|x| io::write_space(&x)),
    );
    push(&mut out, "notcover.json", io::write_family(&not_a_cover()));
    push(
        &mut out,
        "e0-closure.json",
        ClosureOperatorTable::of_space(&e0()).and_then(|t| io::write_closure_table(&t)),
    );
    push(
        &mut out,
        "chain3-order.json",
        io::write_quasi_order(&chain3_order()),
    );
    push(
        &mut out,
        "skills-singletons.json",
        io::write_skill_map(&singleton_skills()),
    );
    push(
        &mut out,
        "skills-mixed.json",
        io::write_skill_map(&mixed_skills()),
    );
    push(
        &mut out,
        "e1-identity.json",
        io::write_point_map(&PointMap::identity(e1_tau().universe().clone())),
    );
    out.sort();
    out
}

/// A family on `{z1,z2,z3}` whose union misses `z3`.
pub fn not_a_cover() -> SetFamily {
    SetFamily::numbered(3, &[&[], &[1], &[1, 2]]).expect("family")
}

/// `z1 ⪯ z2 ⪯ z3`.
pub fn chain3_order() -> QuasiOrder {
    let u = Universe::numbered("z", 3).expect("universe");
    QuasiOrder::transitive_closure(u, &[(0, 1), (1, 2)]).expect("order")
}

/// Three items over skills `a,b,c`, every competency a singleton.
pub fn singleton_skills() -> SkillMultimap {
    let items = Universe::numbered("q", 3).expect("universe");
    let skills = Universe::new(["a", "b", "c"]).expect("universe");
    let s = ItemSet::singleton;
    SkillMultimap::new(
        items,
        skills,
        vec![vec![s(0), s(1)], vec![s(1)], vec![s(2), s(0)]],
    )
    .expect("skills")
}

/// Mixed single and two-skill competencies whose delineation is not union
/// closed.
pub fn mixed_skills() -> SkillMultimap {
    let items = Universe::numbered("q", 3).expect("universe");
    let skills = Universe::new(["a", "b", "c"]).expect("universe");
    let s = ItemSet::singleton;
    SkillMultimap::new(
        items,
        skills,
        vec![vec![s(0), s(1).with(2)], vec![s(1)], vec![s(2), s(0).with(1)]],
    )
    .expect("skills")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        assert_eq!(e0().states().len(), 8);
        assert_eq!(e1_tau().states().len(), 12);
        assert_eq!(e1_delta().states().len(), 9);
        assert_eq!(tight().states().len(), 11);
        assert_eq!(conn().states().len(), 7);
        assert_eq!(t1c().states().len(), 6);
        assert_eq!(t2nr().states().len(), 11);
        assert_eq!(rnn().states().len(), 25);
        assert_eq!(alg5().states().len(), 10);
        assert_eq!(remark6().states().len(), 12);
        assert_eq!(chain(3).states().len(), 4);
    }

    #[test]
    fn listed_remark_family_is_not_union_closed() {
        let listed = remark6_listed();
        let (a, b) = listed.union_gap().expect("gap");
        assert_eq!(listed.universe().fmt_set(a.union(b)), "{z1,z2,z3,z5,z6}");
    }
}
