//! Enumeration of small spaces and automated theorem audits.
//!
//! [`enumerate_spaces`] lists every knowledge space on `n` points;
//! [`sample_spaces`] draws seeded random ones for larger `n`. Registered
//! [`TheoremCheck`]s run over these subjects and fold into
//! [`MinerReport`]s.

pub mod checks;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::family::{all_unions, SetFamily};
use crate::io;
use crate::maps::{self, PointMap};
use crate::order::QuasiOrder;
use crate::set::{ItemSet, Universe};
use crate::skills::SkillMultimap;
use crate::structure::PreTopology;

pub use checks::{CheckRegistry, Domain, Finding, TheoremCheck};

/// Largest `n` for which subsets of the universe fit in one presence word.
const PRESENCE_ITEMS: usize = 6;

/// Decisions made serially before the search fans out to workers.
const PREFIX_DEPTH: usize = 6;

/// Every union-closed family on `z1..zn` containing `∅` and `Q`, each once,
/// in canonical order (families compared member-wise).
pub fn enumerate_spaces(n: usize) -> Result<Vec<PreTopology>> {
    enumerate_spaces_with(n, &Bounds::default())
}

pub fn enumerate_spaces_with(n: usize, bounds: &Bounds) -> Result<Vec<PreTopology>> {
    Bounds::guard(
        "exhaustive enumeration",
        n,
        bounds.exhaustive_n.min(PRESENCE_ITEMS),
    )?;
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    let universe = Universe::numbered("z", n)?;
    let full = ItemSet::full(n);
    // Candidates by decreasing canonical order: when a set is considered,
    // all its proper supersets have been decided already.
    let mut candidates: Vec<ItemSet> = full.subsets().filter(|s| !s.is_empty() && *s != full).collect();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    let start = presence(ItemSet::EMPTY) | presence(full);
    let depth = PREFIX_DEPTH.min(candidates.len());
    let mut prefixes = vec![start];
    for &c in &candidates[..depth] {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                let mut next = vec![p];
                if admissible(p, c) {
                    next.push(p | presence(c));
                }
                next
            })
            .collect();
    }
    let rest = &candidates[depth..];
    let mut families: Vec<Vec<ItemSet>> = prefixes
        .par_iter()
        .map(|&p| {
            let mut out = Vec::new();
            extend(p, rest, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .map(members)
        .collect();
    families.par_sort_unstable();
    Ok(families
        .into_iter()
        .map(|f| PreTopology::from_closed_sorted(SetFamily::from_sorted(universe.clone(), f)))
        .collect())
}

fn presence(s: ItemSet) -> u64 {
    1u64 << s.bits()
}

/// Adding `c` keeps the family union closed against every decided member.
fn admissible(present: u64, c: ItemSet) -> bool {
    let mut rest = present;
    while rest != 0 {
        let g = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        let u = c.bits() | g;
        if u != c.bits() && present >> u & 1 == 0 {
            return false;
        }
    }
    true
}

fn extend(present: u64, rest: &[ItemSet], out: &mut Vec<u64>) {
    let Some((&c, tail)) = rest.split_first() else {
        out.push(present);
        return;
    };
    extend(present, tail, out);
    if admissible(present, c) {
        extend(present | presence(c), tail, out);
    }
}

fn members(present: u64) -> Vec<ItemSet> {
    let mut v: Vec<ItemSet> = (0..64)
        .filter(|&b| present >> b & 1 == 1)
        .map(|b| ItemSet::from_bits(b as u64))
        .collect();
    v.sort_unstable();
    v
}

/// `count` random spaces on `n` points: a random generator family is
/// drawn, topped up to cover `Q`, and union closed. Repeats are possible.
pub fn sample_spaces(n: usize, count: usize, seed: u64) -> Result<Vec<PreTopology>> {
    sample_spaces_with(n, count, seed, &Bounds::default())
}

pub fn sample_spaces_with(n: usize, count: usize, seed: u64, bounds: &Bounds) -> Result<Vec<PreTopology>> {
    Bounds::guard("sampled universe", n, bounds.sample_n)?;
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    let universe = Universe::numbered("z", n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| random_space(&mut rng, &universe)).collect())
}

pub fn random_space<R: Rng>(rng: &mut R, universe: &Universe) -> PreTopology {
    let n = universe.len();
    let full = universe.full();
    let k = rng.gen_range(1..=2 * n);
    let mut gens: Vec<ItemSet> = (0..k)
        .map(|_| ItemSet::from_bits(rng.gen_range(1..=full.bits())))
        .collect();
    let covered = gens.iter().fold(ItemSet::EMPTY, |a, &g| a.union(g));
    if covered != full {
        gens.push(full.difference(covered));
    }
    PreTopology::from_closed_sorted(SetFamily::from_sorted(universe.clone(), all_unions(gens)))
}

/// A random quasi-order on `z1..zn`: each ordered pair is drawn with a
/// random density, then transitively closed.
pub fn random_quasi_order<R: Rng>(rng: &mut R, n: usize) -> Result<QuasiOrder> {
    let universe = Universe::numbered("z", n)?;
    let p: f64 = rng.gen_range(0.0..0.6);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    QuasiOrder::transitive_closure(universe, &pairs)
}

/// `count` seeded quasi-orders with sizes uniform in `1..=max_n`.
pub fn sample_quasi_orders(max_n: usize, count: usize, seed: u64) -> Result<Vec<QuasiOrder>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_quasi_order(&mut rng, n)
        })
        .collect()
}

/// Every skill multimap with `|Q| ≤ max_items`, `|S| ≤ max_skills` and at
/// most `max_competencies` competencies per item.
pub fn enumerate_skill_maps(
    max_items: usize,
    max_skills: usize,
    max_competencies: usize,
) -> Result<Vec<SkillMultimap>> {
    let mut out = Vec::new();
    for ns in 1..=max_skills {
        let skills = Universe::numbered("s", ns)?;
        let nonempty: Vec<ItemSet> = {
            let mut v: Vec<ItemSet> = skills.full().subsets().filter(|s| !s.is_empty()).collect();
            v.sort_unstable();
            v
        };
        let mut choices: Vec<Vec<ItemSet>> = Vec::new();
        for k in 1..=max_competencies.min(nonempty.len()) {
            combinations(&nonempty, k, &mut Vec::new(), 0, &mut choices);
        }
        for nq in 1..=max_items {
            let items = Universe::numbered("q", nq)?;
            let mut idx = vec![0usize; nq];
            loop {
                let mu = idx.iter().map(|&i| choices[i].clone()).collect();
                out.push(SkillMultimap::new(items.clone(), skills.clone(), mu)?);
                let mut k = 0;
                while k < nq {
                    idx[k] += 1;
                    if idx[k] < choices.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == nq {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn combinations(
    pool: &[ItemSet],
    k: usize,
    cur: &mut Vec<ItemSet>,
    from: usize,
    out: &mut Vec<Vec<ItemSet>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        cur.push(pool[i]);
        combinations(pool, k, cur, i + 1, out);
        cur.pop();
    }
}

/// Two maps `f: X → Y`, `g: Y → Z` and a second map `h: X → Z`, for the
/// composition and product laws.
#[derive(Debug, Clone)]
pub struct MapInstance {
    pub x: PreTopology,
    pub y: PreTopology,
    pub z: PreTopology,
    pub f: PointMap,
    pub g: PointMap,
    pub h: PointMap,
}

/// Seeded map instances over the given spaces. Even instances use random
/// maps between random spaces, odd ones chain two quotient projections.
pub fn sample_map_instances(spaces: &[PreTopology], count: usize, seed: u64) -> Result<Vec<MapInstance>> {
    if spaces.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| spaces[rng.gen_range(0..spaces.len())].clone();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let x = pick(&mut rng);
        let instance = if k % 2 == 0 {
            let y = pick(&mut rng);
            let z = pick(&mut rng);
            let f = random_map(&mut rng, &x, &y)?;
            let g = random_map(&mut rng, &y, &z)?;
            let h = random_map(&mut rng, &x, &z)?;
            MapInstance { x, y, z, f, g, h }
        } else {
            // A chain of two quotient projections.
            let (y, f) = random_quotient(&mut rng, &x)?;
            let (z, g) = random_quotient(&mut rng, &y)?;
            let h = random_map(&mut rng, &x, &z)?;
            MapInstance { x, y, z, f, g, h }
        };
        out.push(instance);
    }
    Ok(out)
}

fn random_quotient(rng: &mut ChaCha8Rng, x: &PreTopology) -> Result<(PreTopology, PointMap)> {
    let n = x.size();
    let k = rng.gen_range(1..=n);
    let mut classes = vec![ItemSet::EMPTY; k];
    for (i, class) in classes.iter_mut().enumerate() {
        *class = class.with(i);
    }
    for i in k..n {
        let c = rng.gen_range(0..k);
        classes[c] = classes[c].with(i);
    }
    let f = maps::partition_map(x.universe(), &classes)?;
    let y = maps::quotient(x, &classes)?;
    Ok((y, f))
}

fn random_map(rng: &mut ChaCha8Rng, x: &PreTopology, y: &PreTopology) -> Result<PointMap> {
    let assignment = (0..x.size()).map(|_| rng.gen_range(0..y.size())).collect();
    PointMap::new(x.universe().clone(), y.universe().clone(), assignment)
}

/// What a check is applied to.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Space(&'a PreTopology),
    /// Two spaces on one universe.
    Pair(&'a PreTopology, &'a PreTopology),
    Order(&'a QuasiOrder),
    Skills(&'a SkillMultimap),
    Maps(&'a MapInstance),
}

impl Subject<'_> {
    pub fn domain(&self) -> Domain {
        match self {
            Subject::Space(_) => Domain::Spaces,
            Subject::Pair(..) => Domain::Pairs,
            Subject::Order(_) => Domain::QuasiOrders,
            Subject::Skills(_) => Domain::SkillMaps,
            Subject::Maps(_) => Domain::Maps,
        }
    }

    /// JSON form used in violation records.
    pub fn to_json(&self) -> Value {
        let v = |x: &PreTopology| serde_json::to_value(io::family_doc(x.family())).expect("doc");
        match self {
            Subject::Space(x) => v(x),
            Subject::Pair(a, b) => serde_json::json!({"left": v(a), "right": v(b)}),
            Subject::Order(q) => serde_json::to_value(io::quasi_order_doc(q)).expect("doc"),
            Subject::Skills(m) => serde_json::to_value(io::skill_map_doc(m)).expect("doc"),
            Subject::Maps(i) => serde_json::json!({
                "x": v(&i.x),
                "y": v(&i.y),
                "z": v(&i.z),
                "f": io::point_map_doc(&i.f).map,
                "g": io::point_map_doc(&i.g).map,
                "h": io::point_map_doc(&i.h).map,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    AuditOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub subject: Value,
    pub witness: String,
}

/// Largest number of violation records kept per report.
pub const MAX_RECORDED_VIOLATIONS: usize = 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinerReport {
    pub theorem: String,
    pub statement: String,
    pub asserted: bool,
    /// Subjects meeting the hypotheses.
    pub checked: usize,
    pub violation_count: usize,
    /// The first [`MAX_RECORDED_VIOLATIONS`] violations in subject order.
    pub violations: Vec<Violation>,
    pub status: Status,
    /// Counts of the buckets checks report, e.g. density gaps.
    pub distribution: BTreeMap<String, usize>,
}

/// Runs one check over subjects in parallel; results merge in subject order.
pub fn run_check(check: &dyn TheoremCheck, subjects: &[Subject<'_>]) -> MinerReport {
    let findings: Vec<(usize, Finding)> = subjects
        .par_iter()
        .enumerate()
        .filter(|(_, s)| s.domain() == check.domain())
        .map(|(i, s)| (i, check.check(s)))
        .collect();
    let mut checked = 0;
    let mut violation_count = 0;
    let mut violations = Vec::new();
    let mut distribution = BTreeMap::new();
    for (i, f) in findings {
        if !f.applicable {
            continue;
        }
        checked += 1;
        if let Some(b) = f.bucket {
            *distribution.entry(b).or_insert(0) += 1;
        }
        if let Some(w) = f.violation {
            violation_count += 1;
            if violations.len() < MAX_RECORDED_VIOLATIONS {
                violations.push(Violation {
                    subject: subjects[i].to_json(),
                    witness: w,
                });
            }
        }
    }
    let status = match (violation_count, check.asserted()) {
        (0, _) => Status::Holds,
        (_, true) => Status::Fails,
        (_, false) => Status::AuditOnly,
    };
    MinerReport {
        theorem: check.id().to_string(),
        statement: check.statement().to_string(),
        asserted: check.asserted(),
        checked,
        violation_count,
        violations,
        status,
        distribution,
    }
}

/// Subject ranges for [`audit`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MineOptions {
    pub n: usize,
    /// Sampled spaces when `n` exceeds the exhaustive bound.
    pub samples: usize,
    pub seed: u64,
    /// Random quasi-orders, sizes `1..=max(n, 1)`.
    pub quasi_orders: usize,
    /// Random map instances over the spaces.
    pub map_instances: usize,
    /// Skill maps enumerate `|Q|, |S| ≤ skill_range` with at most two
    /// competencies per item.
    pub skill_range: usize,
    pub bounds: Bounds,
}

impl MineOptions {
    pub fn new(n: usize) -> Self {
        MineOptions {
            n,
            samples: 10_000,
            seed: 0,
            quasi_orders: 1_000,
            map_instances: 2_000,
            skill_range: 3,
            bounds: Bounds::default(),
        }
    }
}

/// Exhaustive spaces when `n` is within the bound, seeded samples otherwise.
pub fn spaces_for(opts: &MineOptions) -> Result<Vec<PreTopology>> {
    if opts.n <= opts.bounds.exhaustive_n {
        enumerate_spaces_with(opts.n, &opts.bounds)
    } else {
        sample_spaces_with(opts.n, opts.samples, opts.seed, &opts.bounds)
    }
}

/// Runs the checks selected by `suite` (see [`CheckRegistry::select`]).
/// Subjects are only built for domains some selected check needs.
pub fn audit(suite: &str, opts: &MineOptions) -> Result<Vec<MinerReport>> {
    let registry = CheckRegistry::standard();
    let selected = registry.select(suite)?;
    let needs = |d: Domain| selected.iter().any(|c| c.domain() == d);

    let spaces = if needs(Domain::Spaces) || needs(Domain::Pairs) || needs(Domain::Maps) {
        spaces_for(opts)?
    } else {
        Vec::new()
    };
    let orders = if needs(Domain::QuasiOrders) {
        sample_quasi_orders(opts.n.max(1), opts.quasi_orders, opts.seed)?
    } else {
        Vec::new()
    };
    let skill_maps = if needs(Domain::SkillMaps) {
        enumerate_skill_maps(opts.skill_range, opts.skill_range, 2)?
    } else {
        Vec::new()
    };
    let instances = if needs(Domain::Maps) {
        let small: Vec<PreTopology> = spaces.iter().filter(|x| x.size() <= 4).cloned().collect();
        sample_map_instances(&small, opts.map_instances, opts.seed)?
    } else {
        Vec::new()
    };
    let qo: Vec<&PreTopology> = if needs(Domain::Pairs) {
        spaces
            .iter()
            .filter(|x| x.family().is_intersection_closed())
            .collect()
    } else {
        Vec::new()
    };

    let mut subjects: Vec<Subject<'_>> = Vec::new();
    subjects.extend(spaces.iter().map(Subject::Space));
    for a in &qo {
        subjects.extend(qo.iter().map(|b| Subject::Pair(a, b)));
    }
    subjects.extend(orders.iter().map(Subject::Order));
    subjects.extend(skill_maps.iter().map(Subject::Skills));
    subjects.extend(instances.iter().map(Subject::Maps));

    Ok(selected.iter().map(|c| run_check(*c, &subjects)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every family of subsets of `Q` that contains `∅` and `Q` and is
    /// union closed, by filtering all `2^(2^n)` families.
    fn filter_oracle(n: usize) -> Vec<Vec<ItemSet>> {
        let subsets: Vec<ItemSet> = ItemSet::full(n).subsets().collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << subsets.len() {
            let fam: Vec<ItemSet> = (0..subsets.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| subsets[i])
                .collect();
            if !fam.contains(&ItemSet::EMPTY) || !fam.contains(&ItemSet::full(n)) {
                continue;
            }
            if fam.iter().all(|a| fam.iter().all(|b| fam.contains(&a.union(*b)))) {
                let mut f = fam;
                f.sort();
                out.push(f);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_filter_oracle() {
        for n in 1..=3 {
            let got: Vec<Vec<ItemSet>> = enumerate_spaces(n)
                .unwrap()
                .iter()
                .map(|x| x.states().to_vec())
                .collect();
            assert_eq!(got, filter_oracle(n), "n = {n}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_spaces(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 4, 45, 2271]);
        let two: Vec<Vec<ItemSet>> = enumerate_spaces(2)
            .unwrap()
            .iter()
            .map(|x| x.states().to_vec())
            .collect();
        let (e, a, b, q) = (
            ItemSet::EMPTY,
            ItemSet::singleton(0),
            ItemSet::singleton(1),
            ItemSet::full(2),
        );
        assert_eq!(
            two,
            vec![vec![e, a, b, q], vec![e, a, q], vec![e, b, q], vec![e, q]]
        );
    }

    #[test]
    fn enumeration_is_duplicate_free_and_sorted() {
        let xs = enumerate_spaces(4).unwrap();
        assert!(xs.windows(2).all(|w| w[0].states() < w[1].states()));
        assert!(xs.iter().all(|x| x.family().is_union_closed()));
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(enumerate_spaces(5), Err(Error::BoundExceeded { .. })));
        let wide = Bounds {
            exhaustive_n: 7,
            ..Bounds::default()
        };
        assert!(enumerate_spaces_with(7, &wide).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_spaces(5, 50, 7).unwrap();
        let b = sample_spaces(5, 50, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.family().is_union_closed() && x.size() == 5));
        assert_ne!(a, sample_spaces(5, 50, 8).unwrap());
        assert!(sample_spaces(7, 1, 0).is_err());
    }

    #[test]
    fn skill_map_enumeration_size() {
        // One, three and seven nonempty skill sets give 1, 3 + 3 and 7 + 21
        // choices per item.
        let maps = enumerate_skill_maps(1, 3, 2).unwrap();
        assert_eq!(maps.len(), 1 + 6 + 28);
    }

    #[test]
    fn quasi_orders_are_seeded() {
        let a = sample_quasi_orders(6, 20, 3).unwrap();
        assert_eq!(a, sample_quasi_orders(6, 20, 3).unwrap());
    }
}
