//! JSON documents for families, closure tables, quasi-orders, skill maps
//! and point maps.
//!
//! Readers re-canonicalize what they load. Writers go through
//! [`to_json_string`], whose layout depends only on the value, so a load
//! followed by a write is byte-stable.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::maps::PointMap;
use crate::order::QuasiOrder;
use crate::set::{ItemSet, Universe};
use crate::skills::SkillMultimap;
use crate::structure::{ClosureOperatorTable, PreTopology};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub universe: Vec<String>,
    pub states: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureEntry {
    pub of: Vec<String>,
    pub is: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureDoc {
    pub universe: Vec<String>,
    pub closure: Vec<ClosureEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiOrderDoc {
    pub universe: Vec<String>,
    /// `[a, b]` means `a ⪯ b`; reflexive pairs may be omitted.
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkillMapDoc {
    pub items: Vec<String>,
    pub skills: Vec<String>,
    pub mu: Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointMapDoc {
    pub map: Map<String, Value>,
}

/// Parses JSON text, reporting syntax and shape errors with their position.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "line {}, column {}: {}",
            e.line(),
            e.column(),
            strip_position(&e)
        ))
    })
}

fn strip_position(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg,
    }
}

/// Deterministic layout: two-space indent for the top-level object, and
/// one line per element for arrays or objects holding compound values.
/// Everything deeper is written compactly.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn is_compound(v: &Value) -> bool {
    matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Object(map) if depth == 0 || (depth == 1 && map.values().any(is_compound)) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&compact(&Value::String(k.clone())));
                out.push_str(": ");
                write_value(x, depth + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push('}');
        }
        Value::Array(items) if depth <= 1 && items.iter().any(is_compound) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&compact(x));
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&close);
            out.push(']');
        }
        _ => out.push_str(&compact(v)),
    }
}

fn labelled(universe: &Universe, labels: &[String]) -> Result<ItemSet> {
    universe.set(labels)
}

fn sorted_labels(universe: &Universe, s: ItemSet) -> Vec<String> {
    universe.set_labels(s)
}

fn string_lists(v: &Value, what: &str) -> Result<Vec<Vec<String>>> {
    serde_json::from_value(v.clone())
        .map_err(|e| Error::Parse(format!("{what}: expected a list of label lists ({e})")))
}

pub fn family_doc(family: &SetFamily) -> FamilyDoc {
    let u = family.universe();
    FamilyDoc {
        universe: u.labels().to_vec(),
        states: family.iter().map(|s| sorted_labels(u, s)).collect(),
    }
}

pub fn family_from_doc(doc: &FamilyDoc) -> Result<SetFamily> {
    let u = Universe::new(doc.universe.iter())?;
    let states = doc
        .states
        .iter()
        .map(|s| labelled(&u, s))
        .collect::<Result<Vec<_>>>()?;
    SetFamily::new(u, states)
}

pub fn parse_family(text: &str) -> Result<SetFamily> {
    family_from_doc(&from_json(text)?)
}

pub fn parse_space(text: &str) -> Result<PreTopology> {
    PreTopology::new(parse_family(text)?)
}

pub fn write_family(family: &SetFamily) -> Result<String> {
    to_json_string(&family_doc(family))
}

pub fn write_space(space: &PreTopology) -> Result<String> {
    write_family(space.family())
}

pub fn parse_closure_table(text: &str) -> Result<ClosureOperatorTable> {
    let doc: ClosureDoc = from_json(text)?;
    let u = Universe::new(doc.universe.iter())?;
    let pairs = doc
        .closure
        .iter()
        .map(|e| Ok((labelled(&u, &e.of)?, labelled(&u, &e.is)?)))
        .collect::<Result<Vec<_>>>()?;
    ClosureOperatorTable::new(u, pairs)
}

pub fn write_closure_table(table: &ClosureOperatorTable) -> Result<String> {
    let u = table.universe();
    let mut entries: Vec<(ItemSet, ItemSet)> = table.entries().collect();
    entries.sort_by_key(|&(of, _)| of);
    let doc = ClosureDoc {
        universe: u.labels().to_vec(),
        closure: entries
            .into_iter()
            .map(|(of, is)| ClosureEntry {
                of: sorted_labels(u, of),
                is: sorted_labels(u, is),
            })
            .collect(),
    };
    to_json_string(&doc)
}

pub fn parse_quasi_order(text: &str) -> Result<QuasiOrder> {
    let doc: QuasiOrderDoc = from_json(text)?;
    let u = Universe::new(doc.universe.iter())?;
    let pairs = doc
        .leq
        .iter()
        .map(|(a, b)| Ok((u.index_of(a)?, u.index_of(b)?)))
        .collect::<Result<Vec<_>>>()?;
    QuasiOrder::new(u, &pairs)
}

pub fn write_quasi_order(order: &QuasiOrder) -> Result<String> {
    to_json_string(&quasi_order_doc(order))
}

pub fn quasi_order_doc(order: &QuasiOrder) -> QuasiOrderDoc {
    let u = order.universe();
    QuasiOrderDoc {
        universe: u.labels().to_vec(),
        leq: order
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| (u.label(a).to_string(), u.label(b).to_string()))
            .collect(),
    }
}

pub fn parse_skill_map(text: &str) -> Result<SkillMultimap> {
    let doc: SkillMapDoc = from_json(text)?;
    let items = Universe::new(doc.items.iter())?;
    let skills = Universe::new(doc.skills.iter())?;
    for key in doc.mu.keys() {
        items.index_of(key)?;
    }
    let mut mu = Vec::with_capacity(items.len());
    for label in items.labels() {
        let comps = match doc.mu.get(label) {
            Some(v) => string_lists(v, label)?,
            None => Vec::new(),
        };
        mu.push(
            comps
                .iter()
                .map(|c| labelled(&skills, c))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    SkillMultimap::new(items, skills, mu)
}

pub fn write_skill_map(m: &SkillMultimap) -> Result<String> {
    to_json_string(&skill_map_doc(m))
}

pub fn skill_map_doc(m: &SkillMultimap) -> SkillMapDoc {
    let mut mu = Map::new();
    for (t, label) in m.items().labels().iter().enumerate() {
        let comps: Vec<Vec<String>> = m.mu(t).iter().map(|&c| sorted_labels(m.skills(), c)).collect();
        mu.insert(
            label.clone(),
            serde_json::to_value(comps).expect("labels serialize"),
        );
    }
    SkillMapDoc {
        items: m.items().labels().to_vec(),
        skills: m.skills().labels().to_vec(),
        mu,
    }
}

pub fn parse_point_map(text: &str, domain: &Universe, codomain: &Universe) -> Result<PointMap> {
    let doc: PointMapDoc = from_json(text)?;
    for key in doc.map.keys() {
        domain.index_of(key)?;
    }
    let mut assignment = Vec::with_capacity(domain.len());
    for label in domain.labels() {
        let target = doc
            .map
            .get(label)
            .ok_or_else(|| Error::IncompleteMap { item: label.clone() })?;
        let target = target
            .as_str()
            .ok_or_else(|| Error::Parse(format!("image of `{label}` must be a label")))?;
        assignment.push(codomain.index_of(target)?);
    }
    PointMap::new(domain.clone(), codomain.clone(), assignment)
}

pub fn write_point_map(f: &PointMap) -> Result<String> {
    to_json_string(&point_map_doc(f))
}

pub fn point_map_doc(f: &PointMap) -> PointMapDoc {
    let mut map = Map::new();
    for (x, label) in f.domain().labels().iter().enumerate() {
        map.insert(
            label.clone(),
            Value::String(f.codomain().label(f.apply(x)).to_string()),
        );
    }
    PointMapDoc { map }
}
