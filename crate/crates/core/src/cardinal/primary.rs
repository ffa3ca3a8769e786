use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::cardinal::density_exact_with;
use crate::error::{Error, Result};
use crate::family::{union_closure, SetFamily};
use crate::operators::is_dense_via_base;
use crate::set::{ItemSet, Universe};
use crate::structure::PreTopology;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PickStep {
    pub item: usize,
    /// Base members consumed by this pick.
    pub block: Vec<ItemSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStep {
    pub item: usize,
    pub removed: bool,
    /// The candidate set after this decision.
    pub kept: ItemSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryItemsTrace {
    pub picked: Vec<PickStep>,
    pub pruned: Vec<PruneStep>,
    pub result: ItemSet,
}

/// Greedy max-coverage over the minimal pre-base followed by a prune pass.
///
/// Each step picks an item lying in the most unconsumed members (least
/// index on ties). When a single member is left, items outside every
/// consumed member are preferred. The prune pass then walks the picks in
/// order and drops `p_k` whenever the remaining picks still meet every
/// member containing `p_k`.
pub fn greedy_primary_items(space: &PreTopology) -> PrimaryItemsTrace {
    let base = space.base();
    let mut remaining: Vec<ItemSet> = base.to_vec();
    let mut consumed = ItemSet::EMPTY;
    let mut picked = Vec::new();
    while !remaining.is_empty() {
        let counts: Vec<usize> = (0..space.size())
            .map(|q| remaining.iter().filter(|b| b.contains(q)).count())
            .collect();
        let max = *counts.iter().max().expect("nonempty universe");
        let mut candidates: Vec<usize> = (0..space.size()).filter(|&q| counts[q] == max).collect();
        if remaining.len() == 1 {
            let fresh: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|&q| !consumed.contains(q))
                .collect();
            if !fresh.is_empty() {
                candidates = fresh;
            }
        }
        let p = candidates[0];
        let (block, rest): (Vec<ItemSet>, Vec<ItemSet>) = remaining.into_iter().partition(|b| b.contains(p));
        consumed = block.iter().fold(consumed, |acc, &b| acc.union(b));
        remaining = rest;
        picked.push(PickStep { item: p, block });
    }
    let a: ItemSet = picked.iter().map(|s| s.item).collect();
    let mut d = a;
    let mut pruned = Vec::new();
    for step in &picked {
        let p = step.item;
        let without = d.without(p);
        let removed = base.iter().filter(|b| b.contains(p)).all(|b| b.meets(without));
        if removed {
            d = without;
        }
        pruned.push(PruneStep {
            item: p,
            removed,
            kept: d,
        });
    }
    debug_assert!(is_dense_via_base(space, d));
    PrimaryItemsTrace {
        picked,
        pruned,
        result: d,
    }
}

/// Row and column order after a step of the matrix procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSnapshot {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// The item × base-member incidence array and its permutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixState {
    /// Item labels by original index.
    pub items: Vec<String>,
    /// Base members in their original order.
    pub base: Vec<ItemSet>,
    /// Current row order (original item indices).
    pub rows: Vec<usize>,
    /// Current column order (original base indices).
    pub cols: Vec<usize>,
    /// `t[i][j]` = 1 iff item `rows[i]` lies in member `cols[j]`.
    pub t: Vec<Vec<u8>>,
    /// Block sizes `n_1, .., n_N`.
    pub blocks: Vec<usize>,
    /// Orders after each step, starting with the initial array.
    pub history: Vec<MatrixSnapshot>,
    /// Items `p_{i_1}, .., p_{i_N}` in pick order.
    pub picked: Vec<usize>,
    /// Items deleted in the final pass.
    pub deleted: Vec<usize>,
}

impl MatrixState {
    fn new(universe: &Universe, base: &[ItemSet]) -> Self {
        let rows: Vec<usize> = (0..universe.len()).collect();
        let cols: Vec<usize> = (0..base.len()).collect();
        let mut s = MatrixState {
            items: universe.labels().to_vec(),
            base: base.to_vec(),
            rows: rows.clone(),
            cols: cols.clone(),
            t: Vec::new(),
            blocks: Vec::new(),
            history: vec![MatrixSnapshot { rows, cols }],
            picked: Vec::new(),
            deleted: Vec::new(),
        };
        s.refresh();
        s
    }

    fn refresh(&mut self) {
        self.t = self
            .rows
            .iter()
            .map(|&r| {
                self.cols
                    .iter()
                    .map(|&c| u8::from(self.base[c].contains(r)))
                    .collect()
            })
            .collect();
    }

    fn entry(&self, row_item: usize, col: usize) -> bool {
        self.base[col].contains(row_item)
    }

    /// Number of selected rows `N`.
    pub fn n_rows(&self) -> usize {
        self.blocks.len()
    }

    /// `M = Σ n_k`.
    pub fn n_cols(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// The leading `N × M` block sub-matrix.
    pub fn block_matrix(&self) -> Vec<Vec<u8>> {
        self.t[..self.n_rows()]
            .iter()
            .map(|r| r[..self.n_cols()].to_vec())
            .collect()
    }

    fn render_table(&self, rows: &[usize], cols: &[usize], out: &mut String) {
        let fmt_set = |s: ItemSet| -> String {
            let parts: Vec<&str> = s.iter().map(|i| self.items[i].as_str()).collect();
            format!("{{{}}}", parts.join(","))
        };
        let headers: Vec<String> = cols.iter().map(|&c| fmt_set(self.base[c])).collect();
        let label_w = rows.iter().map(|&r| self.items[r].len()).max().unwrap_or(0);
        let widths: Vec<usize> = headers.iter().map(String::len).collect();
        let _ = write!(out, "{:label_w$}", "");
        for h in &headers {
            let _ = write!(out, "  {h}");
        }
        out.push('\n');
        for &r in rows {
            let _ = write!(out, "{:<label_w$}", self.items[r]);
            for (k, &c) in cols.iter().enumerate() {
                let w = widths[k];
                let _ = write!(out, "  {:^w$}", u8::from(self.entry(r, c)));
            }
            out.push('\n');
        }
    }

    /// Initial array, final permuted array and final block sub-matrix.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let first = &self.history[0];
        self.render_table(&first.rows, &first.cols, &mut out);
        out.push_str("\n↓\n\n");
        self.render_table(&self.rows, &self.cols, &mut out);
        out.push_str("\n↓\n\n");
        self.render_table(&self.rows[..self.n_rows()], &self.cols, &mut out);
        out
    }
}

/// The matrix procedure on a minimal pre-base.
///
/// Step `k` takes, among rows `k..m`, one with the most ones in the
/// unconsumed columns and swaps it into row `k`; its unconsumed one-columns
/// move (keeping their order) to the front of the unconsumed block. Ties
/// go to the row whose newly covered members are largest in total, then
/// to the least item index; for single-column steps rows with zeros in all
/// consumed columns are preferred. The final pass deletes `p_{i_l}` unless
/// some column of its block has zeros in every later selected row, or its
/// row meets the block of an already deleted earlier pick.
pub fn matrix_primary_items(base: &SetFamily) -> Result<(ItemSet, MatrixState)> {
    let space = union_closure(base).map_err(|_| Error::NotMinimalPreBase)?;
    if space.base() != base.members() {
        return Err(Error::NotMinimalPreBase);
    }
    let universe = base.universe();
    let members = base.members();
    let m = universe.len();
    let n = members.len();
    let mut st = MatrixState::new(universe, members);
    let mut consumed = 0usize;
    let mut k = 0usize;
    while consumed < n {
        let open_cols: Vec<usize> = st.cols[consumed..].to_vec();
        let score = |item: usize| open_cols.iter().filter(|&&c| st.entry(item, c)).count();
        let max = (k..m).map(|i| score(st.rows[i])).max().expect("rows left");
        let mut cands: Vec<usize> = (k..m).filter(|&i| score(st.rows[i]) == max).collect();
        if max == 1 {
            let clean: Vec<usize> = cands
                .iter()
                .copied()
                .filter(|&i| st.cols[..consumed].iter().all(|&c| !st.entry(st.rows[i], c)))
                .collect();
            if !clean.is_empty() {
                cands = clean;
            }
        }
        let weight = |i: usize| -> usize {
            open_cols
                .iter()
                .filter(|&&c| st.entry(st.rows[i], c))
                .map(|&c| members[c].len())
                .sum()
        };
        let best_w = cands.iter().map(|&i| weight(i)).max().expect("candidate");
        let pick = cands
            .into_iter()
            .filter(|&i| weight(i) == best_w)
            .min_by_key(|&i| st.rows[i])
            .expect("candidate");
        st.rows.swap(k, pick);
        let item = st.rows[k];
        let (hit, miss): (Vec<usize>, Vec<usize>) = open_cols.iter().partition(|&&c| st.entry(item, c));
        let nk = hit.len();
        st.cols.truncate(consumed);
        st.cols.extend(hit);
        st.cols.extend(miss);
        st.blocks.push(nk);
        st.picked.push(item);
        consumed += nk;
        k += 1;
        st.history.push(MatrixSnapshot {
            rows: st.rows.clone(),
            cols: st.cols.clone(),
        });
    }
    st.refresh();

    let nrows = st.blocks.len();
    let bounds: Vec<(usize, usize)> = st
        .blocks
        .iter()
        .scan(0, |start, &len| {
            let r = (*start, *start + len);
            *start += len;
            Some(r)
        })
        .collect();
    let mut d: ItemSet = st.picked.iter().copied().collect();
    for l in 0..nrows {
        let (lo, hi) = bounds[l];
        let private_col = (lo..hi).any(|j| (l + 1..nrows).all(|i| st.t[i][j] == 0));
        if private_col {
            continue;
        }
        let needed = (0..l).any(|t| {
            let (a, b) = bounds[t];
            !d.contains(st.picked[t]) && (a..b).any(|j| st.t[l][j] == 1)
        });
        if !needed {
            d = d.without(st.picked[l]);
            st.deleted.push(st.picked[l]);
        }
    }
    debug_assert!(is_dense_via_base(&space, d));
    Ok((d, st))
}

/// Result of running a primary-items method.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryItemsOutcome {
    pub method: String,
    pub items: ItemSet,
    pub size: usize,
    pub trace: MethodTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MethodTrace {
    Greedy(PrimaryItemsTrace),
    Matrix(Box<MatrixState>),
    Exact,
}

/// A way of producing a dense set of items.
pub trait PrimaryItemsMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, space: &PreTopology, bounds: &Bounds) -> Result<PrimaryItemsOutcome>;
}

struct Greedy;
struct Matrix;
struct Exact;

impl PrimaryItemsMethod for Greedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn run(&self, space: &PreTopology, _: &Bounds) -> Result<PrimaryItemsOutcome> {
        let trace = greedy_primary_items(space);
        Ok(PrimaryItemsOutcome {
            method: self.name().into(),
            items: trace.result,
            size: trace.result.len(),
            trace: MethodTrace::Greedy(trace),
        })
    }
}

impl PrimaryItemsMethod for Matrix {
    fn name(&self) -> &'static str {
        "matrix"
    }

    fn run(&self, space: &PreTopology, _: &Bounds) -> Result<PrimaryItemsOutcome> {
        let base = SetFamily::new(space.universe().clone(), space.base().iter().copied())?;
        let (d, st) = matrix_primary_items(&base)?;
        Ok(PrimaryItemsOutcome {
            method: self.name().into(),
            items: d,
            size: d.len(),
            trace: MethodTrace::Matrix(Box::new(st)),
        })
    }
}

impl PrimaryItemsMethod for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn run(&self, space: &PreTopology, bounds: &Bounds) -> Result<PrimaryItemsOutcome> {
        let (k, d) = density_exact_with(space, bounds)?;
        Ok(PrimaryItemsOutcome {
            method: self.name().into(),
            items: d,
            size: k,
            trace: MethodTrace::Exact,
        })
    }
}

/// Methods selectable by name.
pub struct PrimaryItemsRegistry {
    methods: Vec<Box<dyn PrimaryItemsMethod>>,
}

impl Default for PrimaryItemsRegistry {
    fn default() -> Self {
        let mut r = PrimaryItemsRegistry { methods: Vec::new() };
        r.register(Box::new(Greedy));
        r.register(Box::new(Matrix));
        r.register(Box::new(Exact));
        r
    }
}

impl PrimaryItemsRegistry {
    /// Adds a method, replacing any with the same name.
    pub fn register(&mut self, method: Box<dyn PrimaryItemsMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn PrimaryItemsMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: "method",
                name: name.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn greedy_on_alg5() {
        let t = greedy_primary_items(&fixtures::alg5());
        assert_eq!(t.picked.iter().map(|s| s.item).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(t.picked[0].block.len(), 3);
        assert_eq!(t.result, ItemSet::from_indices([0, 1]));
        assert!(t.pruned.iter().all(|p| !p.removed));
    }

    #[test]
    fn greedy_examples() {
        let t = greedy_primary_items(&fixtures::e1_tau());
        assert_eq!(t.result.len(), 3);
        let disjoint = union_closure(&SetFamily::numbered(3, &[&[1], &[2], &[3]]).unwrap()).unwrap();
        assert_eq!(greedy_primary_items(&disjoint).result, ItemSet::full(3));
    }

    #[test]
    fn matrix_on_alg5() {
        let (d, st) = matrix_primary_items(&fixtures::alg5_base()).unwrap();
        assert_eq!(d, ItemSet::from_indices([0, 1]));
        assert_eq!(st.rows, vec![2, 0, 1, 3, 4]);
        // Columns: {z1,z3}, {z2,z3,z4}, {z1,z3,z4,z5}, {z1}, {z2}.
        assert_eq!(st.cols, vec![2, 3, 4, 0, 1]);
        assert_eq!(st.blocks, vec![3, 1, 1]);
        assert_eq!(
            st.t,
            vec![
                vec![1, 1, 1, 0, 0],
                vec![1, 0, 1, 1, 0],
                vec![0, 1, 0, 0, 1],
                vec![0, 1, 1, 0, 0],
                vec![0, 0, 1, 0, 0],
            ]
        );
        assert_eq!(st.block_matrix().len(), 3);
        assert_eq!(st.deleted, vec![2]);
    }

    #[test]
    fn matrix_examples() {
        let (d, _) = matrix_primary_items(&fixtures::vertex_cover_base()).unwrap();
        assert_eq!(d.len(), 2);
        let (d, _) = matrix_primary_items(&SetFamily::numbered(2, &[&[1, 2]]).unwrap()).unwrap();
        assert_eq!(d, ItemSet::singleton(0));
        let not_min = SetFamily::numbered(2, &[&[1], &[2], &[1, 2]]).unwrap();
        assert_eq!(
            matrix_primary_items(&not_min).unwrap_err(),
            Error::NotMinimalPreBase
        );
    }

    #[test]
    fn registry_lookup() {
        let r = PrimaryItemsRegistry::default();
        assert_eq!(r.names(), vec!["greedy", "matrix", "exact"]);
        let x = fixtures::alg5();
        for name in r.names() {
            let out = r.get(name).unwrap().run(&x, &Bounds::default()).unwrap();
            assert_eq!(out.items, ItemSet::from_indices([0, 1]));
        }
        assert!(r.get("nope").is_err());
    }
}
