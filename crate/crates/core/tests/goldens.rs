//! Worked examples with known answers.

use pretopo::cardinal::{density_exact, matrix_primary_items, weight, PrimaryItemsRegistry};
use pretopo::connectivity::{connectedness, is_tight_n_connected, is_well_graded};
use pretopo::fixtures;
use pretopo::maps::{is_pre_continuous, pre_continuity_witness, product, subspace, PointMap};
use pretopo::operators::{boundary, closure, interior};
use pretopo::separation::separation_profile;
use pretopo::skills::{delineate, SkillMultimap};
use pretopo::structure::is_atom_pre_base;
use pretopo::{irreducible_states, union_closure, Bounds, ItemSet, PreTopology, SetFamily, Universe};

fn set(x: &PreTopology, positions: &[usize]) -> ItemSet {
    x.universe().set_1based(positions).unwrap()
}

#[test]
fn e0_operators() {
    let x = fixtures::e0();
    let q = x.full();
    assert_eq!(closure(&x, set(&x, &[2, 3])), set(&x, &[2, 3]));
    assert_eq!(closure(&x, set(&x, &[2, 3, 4])), q);
    assert_eq!(boundary(&x, set(&x, &[2, 3])), set(&x, &[2, 3]));
    assert_eq!(boundary(&x, set(&x, &[2, 3, 4])), q);
    assert_eq!(interior(&x, set(&x, &[2, 3, 4])), ItemSet::EMPTY);
}

#[test]
fn e0_union_inequalities_are_strict() {
    let x = fixtures::e0();
    let (r, t) = (set(&x, &[2]), set(&x, &[3, 4]));
    let lhs = closure(&x, r.union(t));
    let rhs = closure(&x, r).union(closure(&x, t));
    assert!(rhs.is_proper_subset(lhs));
    let b = boundary(&x, r.union(t));
    let bs = boundary(&x, r).union(boundary(&x, t));
    assert!(!b.is_subset(bs));
}

#[test]
fn separation_examples() {
    let p = separation_profile(&fixtures::e0());
    assert!(p.t0 && !p.t1);
    assert!(separation_profile(&fixtures::e1_tau()).t2);
    let p = separation_profile(&fixtures::t2nr());
    assert!(p.t2 && !p.regular_property);
    let p = separation_profile(&fixtures::rnn());
    assert!(p.regular_property && !p.normal_property);
    assert!(!separation_profile(&fixtures::remark6()).t0);
    let t1c = fixtures::t1c();
    assert!(separation_profile(&t1c).t1);
    assert!(connectedness(&t1c).connected);
}

#[test]
fn tight_but_disconnected() {
    let x = fixtures::tight();
    let c = connectedness(&x);
    assert!(is_tight_n_connected(&x, 1));
    assert!(!c.connected);
    assert!(c.clopens.contains(&set(&x, &[1, 2])));
    let (a, b) = c.separation.unwrap();
    assert!(x.is_open(a) && x.is_open(b) && a.is_disjoint(b) && a.union(b) == x.full());
}

#[test]
fn connected_but_not_tight() {
    let x = fixtures::conn();
    assert!(connectedness(&x).connected);
    assert!(!is_tight_n_connected(&x, 1));
    assert!(!is_well_graded(x.family()));
}

#[test]
fn identity_e1_fails_continuity_but_pieces_pass() {
    let tau = fixtures::e1_tau();
    let delta = fixtures::e1_delta();
    let id = PointMap::identity(tau.universe().clone());
    assert_eq!(
        pre_continuity_witness(&id, &tau, &delta).unwrap(),
        Some(set(&tau, &[3]))
    );
    for piece in [&[1, 2][..], &[3, 4]] {
        let c = set(&tau, piece);
        assert!(tau.is_clopen(c));
        let xc = subspace(&tau, c).unwrap();
        let yc = subspace(&delta, c).unwrap();
        let idc = PointMap::identity(xc.universe().clone());
        assert!(is_pre_continuous(&idc, &xc, &yc).unwrap());
    }
}

#[test]
fn alg5_primary_items() {
    let x = fixtures::alg5();
    let d = set(&x, &[1, 2]);
    assert_eq!(density_exact(&x).unwrap(), (2, d));
    let registry = PrimaryItemsRegistry::default();
    for name in registry.names() {
        let out = registry.get(name).unwrap().run(&x, &Bounds::default()).unwrap();
        assert_eq!(out.items, d, "{name}");
    }
    let (got, st) = matrix_primary_items(&fixtures::alg5_base()).unwrap();
    assert_eq!(got, d);
    assert_eq!(st.blocks, vec![3, 1, 1]);
    assert_eq!(
        st.block_matrix(),
        vec![vec![1, 1, 1, 0, 0], vec![1, 0, 1, 1, 0], vec![0, 1, 0, 0, 1]]
    );
}

#[test]
fn vertex_cover_density() {
    let x = union_closure(&fixtures::vertex_cover_base()).unwrap();
    assert_eq!(density_exact(&x).unwrap().0, 2);
    assert_eq!(weight(&x), 3);
}

#[test]
fn atom_condition_fails_on_a_chain() {
    let x = fixtures::chain(2);
    let b = irreducible_states(&x);
    assert_eq!(b.len(), 2);
    assert!(!is_atom_pre_base(&b, &x).unwrap());
}

#[test]
fn whole_skill_set_as_only_competency() {
    let items = Universe::numbered("q", 3).unwrap();
    let skills = Universe::numbered("s", 2).unwrap();
    let all = skills.full();
    let m = SkillMultimap::new(items, skills, vec![vec![all]; 3]).unwrap();
    let h = delineate(&m).unwrap();
    assert_eq!(h.states(), &[ItemSet::EMPTY, ItemSet::full(3)]);
}

/// Every union of products of factor opens, closed by brute force.
fn product_oracle(a: &PreTopology, b: &PreTopology) -> Vec<ItemSet> {
    let nb = b.size();
    let mut states: Vec<ItemSet> = vec![ItemSet::EMPTY];
    for &va in a.states() {
        for &vb in b.states() {
            let s = ItemSet::from_indices(va.iter().flat_map(|i| vb.iter().map(move |j| i * nb + j)));
            states.push(s);
        }
    }
    loop {
        let mut grown = states.clone();
        for &s in &states {
            for &t in &states {
                grown.push(s.union(t));
            }
        }
        grown.sort();
        grown.dedup();
        if grown.len() == states.len() {
            return grown;
        }
        states = grown;
    }
}

#[test]
fn product_of_two_sierpinski_spaces() {
    let s = PreTopology::new(SetFamily::numbered(2, &[&[], &[1], &[1, 2]]).unwrap()).unwrap();
    let t = PreTopology::new(
        SetFamily::from_labels(
            Universe::new(["a", "b"]).unwrap(),
            &[vec![], vec!["a"], vec!["a", "b"]],
        )
        .unwrap(),
    )
    .unwrap();
    let p = product(&[s.clone(), t.clone()]).unwrap();
    assert_eq!(p.states(), product_oracle(&s, &t).as_slice());
    assert_eq!(p.states().len(), 6);
    assert_eq!(p.universe().labels(), &["(z1,a)", "(z1,b)", "(z2,a)", "(z2,b)"]);
}

#[test]
fn indiscrete_product() {
    let a = PreTopology::indiscrete(Universe::numbered("x", 2).unwrap());
    let b = PreTopology::indiscrete(Universe::numbered("y", 2).unwrap());
    let p = product(&[a, b]).unwrap();
    assert_eq!(p.states(), &[ItemSet::EMPTY, ItemSet::full(4)]);
}
