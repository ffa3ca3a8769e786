use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::family::{all_unions, minimal_sets, SetFamily};
use crate::separation::completely_discriminative_states;
use crate::set::{ItemSet, Universe};
use crate::structure::KnowledgeStructure;

/// Items mapped to nonempty families of nonempty skill sets (competencies).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkillMultimap {
    items: Universe,
    skills: Universe,
    mu: Vec<Vec<ItemSet>>,
    mu_min: Vec<Vec<ItemSet>>,
}

impl SkillMultimap {
    pub fn new(items: Universe, skills: Universe, mu: Vec<Vec<ItemSet>>) -> Result<Self> {
        if mu.len() != items.len() {
            return Err(Error::InvalidSkillMap {
                reason: format!("{} items but {} competency lists", items.len(), mu.len()),
            });
        }
        let mut clean = Vec::with_capacity(mu.len());
        for (t, mut comps) in mu.into_iter().enumerate() {
            if comps.is_empty() {
                return Err(Error::InvalidSkillMap {
                    reason: format!("`{}` has no competency", items.label(t)),
                });
            }
            for &c in &comps {
                if c.is_empty() {
                    return Err(Error::InvalidSkillMap {
                        reason: format!("`{}` has an empty competency", items.label(t)),
                    });
                }
                skills.check(c)?;
            }
            comps.sort_unstable();
            comps.dedup();
            clean.push(comps);
        }
        let mu_min = clean.iter().map(|c| minimal_sets(c)).collect();
        Ok(SkillMultimap {
            items,
            skills,
            mu: clean,
            mu_min,
        })
    }

    pub fn items(&self) -> &Universe {
        &self.items
    }

    pub fn skills(&self) -> &Universe {
        &self.skills
    }

    /// `μ(t)` in canonical order.
    pub fn mu(&self, t: usize) -> &[ItemSet] {
        &self.mu[t]
    }

    /// `⊆`-minimal members of `μ(t)`.
    pub fn mu_min(&self, t: usize) -> &[ItemSet] {
        &self.mu_min[t]
    }

    /// Every `μ(t)` is already an antichain.
    pub fn is_skill_function(&self) -> bool {
        self.mu.iter().zip(&self.mu_min).all(|(a, b)| a.len() == b.len())
    }

    /// `⋃_t μ(t)`, deduplicated, in canonical order.
    pub fn competency_pool(&self) -> Vec<ItemSet> {
        let mut pool: Vec<ItemSet> = self.mu.iter().flatten().copied().collect();
        pool.sort_unstable();
        pool.dedup();
        pool
    }

    /// `⋃_t μ_M(t)`, deduplicated, in canonical order.
    pub fn minimal_pool(&self) -> Vec<ItemSet> {
        let mut pool: Vec<ItemSet> = self.mu_min.iter().flatten().copied().collect();
        pool.sort_unstable();
        pool.dedup();
        pool
    }
}

/// Items having a competency inside `r`.
pub fn problem_function(m: &SkillMultimap, r: ItemSet) -> ItemSet {
    (0..m.items.len())
        .filter(|&g| m.mu_min[g].iter().any(|c| c.is_subset(r)))
        .collect()
}

/// `{p(R) : R ⊆ S}`.
pub fn delineate(m: &SkillMultimap) -> Result<KnowledgeStructure> {
    delineate_with(m, &Bounds::default())
}

pub fn delineate_with(m: &SkillMultimap, bounds: &Bounds) -> Result<KnowledgeStructure> {
    let s = m.skills.len();
    if s > bounds.skills {
        return Err(Error::SkillBoundExceeded {
            size: s,
            bound: bounds.skills,
        });
    }
    let states: HashSet<u64> = (0u64..1 << s)
        .into_par_iter()
        .fold(HashSet::new, |mut acc, r| {
            acc.insert(problem_function(m, ItemSet::from_bits(r)).bits());
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let family = SetFamily::new(m.items.clone(), states.into_iter().map(ItemSet::from_bits))?;
    KnowledgeStructure::new(family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelineationReport {
    /// The delineated structure is union closed.
    pub space: bool,
    /// The structure equals the unions of `p(D)` over minimal competencies.
    pub via_characterization: bool,
    pub agree: bool,
}

pub fn is_delineated_space(m: &SkillMultimap) -> Result<DelineationReport> {
    is_delineated_space_with(m, &Bounds::default())
}

pub fn is_delineated_space_with(m: &SkillMultimap, bounds: &Bounds) -> Result<DelineationReport> {
    let h = delineate_with(m, bounds)?;
    let space = h.is_space();
    let generated = all_unions(m.minimal_pool().into_iter().map(|d| problem_function(m, d)));
    let via_characterization = generated.as_slice() == h.states();
    Ok(DelineationReport {
        space,
        via_characterization,
        agree: space == via_characterization,
    })
}

/// For each item `g` and minimal competency `C` of `g`, the competencies
/// containing no minimal competency of `g` do not jointly cover `C`.
/// Taking every such competency at once is the hardest case of the
/// subfamily condition, so this decides it without enumeration.
pub fn star_condition(m: &SkillMultimap) -> bool {
    let pool = m.competency_pool();
    (0..m.items.len()).all(|g| {
        let mins = m.mu_min(g);
        let cover = pool
            .iter()
            .filter(|d| !mins.iter().any(|c| c.is_subset(**d)))
            .fold(ItemSet::EMPTY, |acc, &d| acc.union(d));
        mins.iter().all(|c| !c.is_subset(cover))
    })
}

/// The subfamily condition enumerated literally over all subfamilies `𝓜`
/// of the competency pool. Guarded by [`Bounds::competency_pool`].
pub fn star_condition_exhaustive(m: &SkillMultimap) -> Result<bool> {
    star_condition_exhaustive_with(m, &Bounds::default())
}

pub fn star_condition_exhaustive_with(m: &SkillMultimap, bounds: &Bounds) -> Result<bool> {
    let pool = m.competency_pool();
    if pool.len() > bounds.competency_pool {
        return Err(Error::CombinatorialBoundExceeded {
            size: pool.len(),
            bound: bounds.competency_pool,
        });
    }
    Ok((0u64..1 << pool.len()).all(|mask| {
        let fam: Vec<ItemSet> = (0..pool.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pool[i])
            .collect();
        let union = fam.iter().fold(ItemSet::EMPTY, |a, &d| a.union(d));
        (0..m.items.len()).all(|g| {
            let mins = m.mu_min(g);
            let premise = mins
                .iter()
                .all(|c| fam.iter().all(|d| !c.difference(*d).is_empty()));
            !premise || mins.iter().all(|c| !c.difference(union).is_empty())
        })
    }))
}

/// `{c} ⋐ 𝓦`: some member of `𝓦` lies inside `c`.
pub fn refines(c: ItemSet, w: &[ItemSet]) -> bool {
    w.iter().any(|x| x.is_subset(c))
}

/// Every two items have minimal competencies `C_h`, `C_q` such that no
/// item's minimal competencies refine both.
pub fn is_completely_discriminative_delineation(m: &SkillMultimap) -> Result<bool> {
    let n = m.items.len();
    if m.skills.len() > Bounds::default().skills {
        return Err(Error::SkillBoundExceeded {
            size: m.skills.len(),
            bound: Bounds::default().skills,
        });
    }
    Ok((0..n).all(|h| {
        (h + 1..n).all(|q| {
            m.mu_min(h).iter().any(|&ch| {
                m.mu_min(q)
                    .iter()
                    .any(|&cq| (0..n).all(|g| !(refines(ch, m.mu_min(g)) && refines(cq, m.mu_min(g)))))
            })
        })
    }))
}

/// Direct check on the delineated structure.
pub fn delineation_completely_discriminative_direct(m: &SkillMultimap) -> Result<bool> {
    let h = delineate(m)?;
    Ok(completely_discriminative_states(h.states(), m.items.len()))
}
