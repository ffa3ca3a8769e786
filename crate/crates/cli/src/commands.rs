use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use thiserror::Error;

use pretopo::cardinal::primary::MethodTrace;
use pretopo::cardinal::{
    cellularity, character, density_exact_with, weight, MatrixState, PrimaryItemsRegistry, PrimaryItemsTrace,
};
use pretopo::connectivity::{
    connectedness, is_chain_connected, is_n_connected, is_tight_n_connected, is_well_graded,
};
use pretopo::io;
use pretopo::maps::{self, classify_map, pre_continuity_witness};
use pretopo::miner::{self, MineOptions, Status};
use pretopo::operators::{self, boundary, derived_set, fringes, interior};
use pretopo::order::{
    discriminative_reduction, from_quasi_order, is_antimatroid, is_granular, minimal_state, to_quasi_order,
};
use pretopo::separation::separation_profile;
use pretopo::skills::{
    delineate_with, is_completely_discriminative_delineation, is_delineated_space_with, star_condition,
};
use pretopo::structure::{classify, from_closure_operator, is_atom_pre_base};
use pretopo::{Bounds, Error, ItemSet, PreTopology, SetFamily, Universe};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", source.name())]
    Domain {
        #[from]
        source: Error,
    },
}

impl CliError {
    /// 2 for I/O and parse errors, 1 for domain errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. }
            | CliError::Domain {
                source: Error::Parse(_),
            } => 2,
            CliError::Domain { .. } => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Output of a command in both formats.
pub struct Report {
    pub json: Value,
    pub table: String,
}

impl Report {
    pub fn json_text(&self) -> String {
        io::to_json_string(&self.json).expect("reports serialize")
    }
}

pub fn bounds(bound: Option<usize>) -> Bounds {
    let mut b = Bounds::default();
    if let Some(n) = bound {
        b.exhaustive_n = n;
        b.sample_n = b.sample_n.max(n);
    }
    b
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_space(path: &Path) -> Result<PreTopology> {
    Ok(io::parse_space(&read(path)?)?)
}

fn labels(u: &Universe, s: ItemSet) -> Value {
    json!(u.set_labels(s))
}

fn sets(u: &Universe, ss: &[ItemSet]) -> Value {
    Value::Array(ss.iter().map(|&s| labels(u, s)).collect())
}

fn fmt_sets(u: &Universe, ss: &[ItemSet]) -> String {
    ss.iter().map(|&s| u.fmt_set(s)).collect::<Vec<_>>().join(" ")
}

fn parse_set(u: &Universe, text: &str) -> Result<ItemSet> {
    let parts = text.split(',').map(str::trim).filter(|s| !s.is_empty());
    Ok(u.set(parts)?)
}

fn bool_rows(rows: &[(&str, bool)]) -> String {
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

fn family_table(f: &SetFamily) -> String {
    let u = f.universe();
    let mut out = format!("universe: {}\n", u.labels().join(" "));
    let _ = writeln!(out, "states ({}):", f.len());
    for s in f.iter() {
        let _ = writeln!(out, "  {}", u.fmt_set(s));
    }
    out
}

fn family_report(f: &SetFamily) -> Report {
    Report {
        json: serde_json::to_value(io::family_doc(f)).expect("doc"),
        table: family_table(f),
    }
}

pub fn check(path: &Path, close: bool) -> Result<Report> {
    let family = io::parse_family(&read(path)?)?;
    if close {
        let space = pretopo::union_closure(&family)?;
        return Ok(family_report(space.family()));
    }
    let c = classify(&family);
    let space = PreTopology::new(family)?;
    let json = json!({
        "items": space.size(),
        "states": space.states().len(),
        "knowledge_structure": c.is_knowledge_structure,
        "knowledge_space": c.is_knowledge_space,
        "quasi_ordinal": c.is_quasi_ordinal,
        "topology": c.is_topology,
    });
    let table = format!("items: {}\nstates: {}\n", space.size(), space.states().len())
        + &bool_rows(&[
            ("knowledge structure", c.is_knowledge_structure),
            ("knowledge space", c.is_knowledge_space),
            ("quasi-ordinal", c.is_quasi_ordinal),
            ("topology", c.is_topology),
        ]);
    Ok(Report { json, table })
}

pub fn base(path: &Path) -> Result<Report> {
    let x = load_space(path)?;
    let u = x.universe();
    let b = pretopo::irreducible_states(&x);
    let atom = is_atom_pre_base(&b, &x)?;
    let json = json!({
        "base": sets(u, b.members()),
        "weight": weight(&x),
        "atom_pre_base": atom,
    });
    let table = format!(
        "minimal pre-base: {}\nweight: {}\nliteral atom condition: {atom}\n",
        fmt_sets(u, b.members()),
        weight(&x)
    );
    Ok(Report { json, table })
}

pub fn closure(path: &Path, set: Option<&str>) -> Result<Report> {
    let text = read(path)?;
    let doc: Value = io::from_json(&text)?;
    if doc.get("closure").is_some() {
        let table = io::parse_closure_table(&text)?;
        let space = from_closure_operator(&table)?;
        return Ok(family_report(space.family()));
    }
    let x = io::parse_space(&text)?;
    let u = x.universe();
    match set {
        Some(s) => {
            let a = parse_set(u, s)?;
            let (c, i, b, d) = (
                operators::closure(&x, a),
                interior(&x, a),
                boundary(&x, a),
                derived_set(&x, a),
            );
            let json = json!({
                "set": labels(u, a),
                "closure": labels(u, c),
                "interior": labels(u, i),
                "boundary": labels(u, b),
                "derived": labels(u, d),
            });
            let table = format!(
                "set:      {}\nclosure:  {}\ninterior: {}\nboundary: {}\nderived:  {}\n",
                u.fmt_set(a),
                u.fmt_set(c),
                u.fmt_set(i),
                u.fmt_set(b),
                u.fmt_set(d)
            );
            Ok(Report { json, table })
        }
        None => {
            let t = pretopo::structure::ClosureOperatorTable::of_space(&x)?;
            let text = io::write_closure_table(&t)?;
            let mut entries: Vec<(ItemSet, ItemSet)> = t.entries().collect();
            entries.sort_by_key(|&(a, _)| a);
            let table = entries
                .iter()
                .map(|&(a, c)| format!("{} -> {}\n", u.fmt_set(a), u.fmt_set(c)))
                .collect();
            Ok(Report {
                json: io::from_json(&text)?,
                table,
            })
        }
    }
}

pub fn fringe(path: &Path, set: Option<&str>) -> Result<Report> {
    let x = load_space(path)?;
    let u = x.universe();
    let targets: Vec<ItemSet> = match set {
        Some(s) => vec![parse_set(u, s)?],
        None => x.states().to_vec(),
    };
    let mut rows = Vec::new();
    let mut table = String::new();
    for h in targets {
        let f = fringes(&x, h);
        rows.push(json!({
            "set": labels(u, h),
            "inner": labels(u, f.inner),
            "outer": labels(u, f.outer),
            "locally_closed": labels(u, f.full),
        }));
        let _ = writeln!(
            table,
            "{}  inner {}  outer {}  locally closed {}",
            u.fmt_set(h),
            u.fmt_set(f.inner),
            u.fmt_set(f.outer),
            u.fmt_set(f.full)
        );
    }
    Ok(Report {
        json: Value::Array(rows),
        table,
    })
}

pub fn separation(path: &Path) -> Result<Report> {
    let x = load_space(path)?;
    let u = x.universe();
    let p = separation_profile(&x);
    let pair = |w: Option<(usize, usize)>| w.map(|(a, b)| json!([u.label(a), u.label(b)]));
    let w = &p.witnesses;
    let json = json!({
        "t0": p.t0,
        "t1": p.t1,
        "t2": p.t2,
        "regular": p.regular_property,
        "t3": p.t3,
        "normal": p.normal_property,
        "t4": p.t4,
        "discriminative": p.discriminative,
        "bi_discriminative": p.bi_discriminative,
        "completely_discriminative": p.completely_discriminative,
        "witnesses": {
            "t0": pair(w.t0),
            "t1": pair(w.t1),
            "t2": pair(w.t2),
            "regular": w.regular.map(|(t, a)| json!({"point": u.label(t), "closed": labels(u, a)})),
            "normal": w.normal.map(|(c, d)| json!([labels(u, c), labels(u, d)])),
        },
    });
    let mut table = bool_rows(&[
        ("t0", p.t0),
        ("t1", p.t1),
        ("t2", p.t2),
        ("regular", p.regular_property),
        ("t3", p.t3),
        ("normal", p.normal_property),
        ("t4", p.t4),
        ("discriminative", p.discriminative),
        ("bi-discriminative", p.bi_discriminative),
        ("completely discriminative", p.completely_discriminative),
    ]);
    if let Some((a, b)) = w.t0 {
        let _ = writeln!(
            table,
            "t0 fails: {} and {} share their open sets",
            u.label(a),
            u.label(b)
        );
    }
    if let Some((a, b)) = w.t1 {
        let _ = writeln!(
            table,
            "t1 fails: every open set through {} contains {}",
            u.label(a),
            u.label(b)
        );
    }
    if let Some((a, b)) = w.t2 {
        let _ = writeln!(
            table,
            "t2 fails: {} and {} have no disjoint neighbourhoods",
            u.label(a),
            u.label(b)
        );
    }
    if let Some((t, a)) = w.regular {
        let _ = writeln!(
            table,
            "regularity fails: {} and closed {}",
            u.label(t),
            u.fmt_set(a)
        );
    }
    if let Some((c, d)) = w.normal {
        let _ = writeln!(
            table,
            "normality fails: closed {} and {}",
            u.fmt_set(c),
            u.fmt_set(d)
        );
    }
    Ok(Report { json, table })
}

pub fn connectivity(path: &Path, n: usize) -> Result<Report> {
    let x = load_space(path)?;
    let u = x.universe();
    let c = connectedness(&x);
    let chain = is_chain_connected(&x);
    let graded = is_well_graded(x.family());
    let tight = is_tight_n_connected(&x, n);
    let plain = is_n_connected(&x, n);
    let json = json!({
        "connected": c.connected,
        "separation": c.separation.map(|(a, b)| json!([labels(u, a), labels(u, b)])),
        "clopens": sets(u, &c.clopens),
        "chain_connected": chain,
        "well_graded": graded,
        "n": n,
        "tight_n_connected": tight,
        "n_connected": plain,
    });
    let mut table = bool_rows(&[
        ("connected", c.connected),
        ("chain-connected", chain),
        ("well-graded", graded),
        (&format!("tight {n}-connected"), tight),
        (&format!("{n}-connected"), plain),
    ]);
    if let Some((a, b)) = c.separation {
        let _ = writeln!(table, "separation: {} | {}", u.fmt_set(a), u.fmt_set(b));
        let _ = writeln!(table, "clopens: {}", fmt_sets(u, &c.clopens));
    }
    Ok(Report { json, table })
}

pub fn reduce(path: &Path) -> Result<Report> {
    let family = io::parse_family(&read(path)?)?;
    let structure = pretopo::KnowledgeStructure::new(family)?;
    let u = structure.universe().clone();
    let r = discriminative_reduction(&structure);
    let reduced = r.reduced.family();
    let classes: Vec<String> = r
        .classes
        .iter()
        .map(|&c| pretopo::order::class_label(&u, c))
        .collect();
    let json = json!({
        "classes": classes,
        "reduced": io::family_doc(reduced),
    });
    let table = format!("notions: {}\n", classes.join(" ")) + &family_table(reduced);
    Ok(Report { json, table })
}

pub fn order(path: &Path) -> Result<Report> {
    let text = read(path)?;
    let doc: Value = io::from_json(&text)?;
    if doc.get("leq").is_some() {
        let q = io::parse_quasi_order(&text)?;
        return Ok(family_report(from_quasi_order(&q).family()));
    }
    let x = io::parse_space(&text)?;
    let u = x.universe();
    let q = to_quasi_order(&x)?;
    let minimal: Vec<Value> = (0..x.size())
        .map(|t| json!({"item": u.label(t), "minimal_state": labels(u, minimal_state(&x, t).expect("quasi-ordinal"))}))
        .collect();
    let antimatroid = is_antimatroid(&x);
    let granular = is_granular(&x);
    let json = json!({
        "order": io::quasi_order_doc(&q),
        "minimal_states": minimal,
        "antimatroid": antimatroid,
        "granular": granular,
    });
    let mut table = String::from("strict pairs (a below b):\n");
    for (a, b) in q.strict_pairs() {
        let _ = writeln!(table, "  {} < {}", u.label(a), u.label(b));
    }
    for t in 0..x.size() {
        let _ = writeln!(
            table,
            "M({}) = {}",
            u.label(t),
            u.fmt_set(minimal_state(&x, t).expect("quasi-ordinal"))
        );
    }
    table += &bool_rows(&[("antimatroid", antimatroid), ("granular", granular)]);
    Ok(Report { json, table })
}

pub fn delineate(path: &Path, bounds: &Bounds) -> Result<Report> {
    let m = io::parse_skill_map(&read(path)?)?;
    let h = delineate_with(&m, bounds)?;
    let r = is_delineated_space_with(&m, bounds)?;
    let star = star_condition(&m);
    let cd = is_completely_discriminative_delineation(&m)?;
    let json = json!({
        "structure": io::family_doc(h.family()),
        "space": r.space,
        "via_characterization": r.via_characterization,
        "agree": r.agree,
        "star_condition": star,
        "completely_discriminative": cd,
        "skill_function": m.is_skill_function(),
    });
    let table = family_table(h.family())
        + &bool_rows(&[
            ("knowledge space", r.space),
            ("generated by minimal competencies", r.via_characterization),
            ("star condition", star),
            ("completely discriminative", cd),
            ("skill function", m.is_skill_function()),
        ]);
    Ok(Report { json, table })
}

fn greedy_table(u: &Universe, t: &PrimaryItemsTrace) -> String {
    let mut out = String::new();
    for (k, p) in t.picked.iter().enumerate() {
        let _ = writeln!(
            out,
            "pick {}: {} covers {}",
            k + 1,
            u.label(p.item),
            fmt_sets(u, &p.block)
        );
    }
    for p in &t.pruned {
        let verb = if p.removed { "drop" } else { "keep" };
        let _ = writeln!(out, "{verb} {} -> {}", u.label(p.item), u.fmt_set(p.kept));
    }
    out
}

fn matrix_table(st: &MatrixState) -> String {
    format!("blocks: {:?}\n\n{}", st.blocks, st.render())
}

pub fn primary_items(path: &Path, method: &str, bounds: &Bounds) -> Result<Report> {
    let x = load_space(path)?;
    let u = x.universe();
    let registry = PrimaryItemsRegistry::default();
    let names: Vec<&str> = if method == "all" {
        registry.names()
    } else {
        vec![registry.get(method)?.name()]
    };
    let (d, exact) = density_exact_with(&x, bounds)
        .map(|(k, s)| (Some(k), Some(s)))
        .unwrap_or((None, None));
    let mut rows = Vec::new();
    let mut table = String::new();
    for name in names {
        let out = registry.get(name)?.run(&x, bounds)?;
        let mut row = json!({
            "method": out.method,
            "items": labels(u, out.items),
            "size": out.size,
        });
        let _ = writeln!(table, "{name}: D = {} (|D| = {})", u.fmt_set(out.items), out.size);
        match &out.trace {
            MethodTrace::Greedy(t) => {
                row["picked"] = json!(t.picked.iter().map(|p| u.label(p.item)).collect::<Vec<_>>());
                table += &greedy_table(u, t);
            }
            MethodTrace::Matrix(st) => {
                row["blocks"] = json!(st.blocks);
                row["rows"] = json!(st.rows.iter().map(|&r| u.label(r)).collect::<Vec<_>>());
                row["columns"] = sets(u, &st.cols.iter().map(|&c| st.base[c]).collect::<Vec<_>>());
                row["block_matrix"] = json!(st.block_matrix());
                row["deleted"] = json!(st.deleted.iter().map(|&r| u.label(r)).collect::<Vec<_>>());
                table += &matrix_table(st);
            }
            MethodTrace::Exact => {}
        }
        table.push('\n');
        rows.push(row);
    }
    let c = cellularity(&x).ok();
    let _ = writeln!(
        table,
        "d(Q) = {}  w(Q) = {}  c(Q) = {}  character = {}",
        d.map_or("?".into(), |k| k.to_string()),
        weight(&x),
        c.map_or("?".into(), |k| k.to_string()),
        character(&x)
    );
    let json = json!({
        "results": rows,
        "density": d,
        "exact": exact.map(|s| labels(u, s)),
        "weight": weight(&x),
        "cellularity": c,
        "character": character(&x),
    });
    Ok(Report { json, table })
}

pub fn map(map_path: &Path, domain: &Path, codomain: &Path) -> Result<Report> {
    let x = load_space(domain)?;
    let y = load_space(codomain)?;
    let f = io::parse_point_map(&read(map_path)?, x.universe(), y.universe())?;
    let c = classify_map(&f, &x, &y);
    let witness = pre_continuity_witness(&f, &x, &y)?;
    let yu = y.universe();
    let json = json!({
        "pre_continuous": c.pre_continuous,
        "pre_open": c.pre_open,
        "pre_closed": c.pre_closed,
        "pre_quotient": c.pre_quotient,
        "pre_homeomorphism": c.pre_homeomorphism,
        "witness": witness.map(|w| labels(yu, w)),
    });
    let mut table = bool_rows(&[
        ("pre-continuous", c.pre_continuous),
        ("pre-open", c.pre_open),
        ("pre-closed", c.pre_closed),
        ("pre-homeomorphism", c.pre_homeomorphism),
    ]);
    let _ = writeln!(
        table,
        "pre-quotient       {}",
        c.pre_quotient
            .map_or("n/a (not surjective)".into(), |b| b.to_string())
    );
    if let Some(w) = witness {
        let _ = writeln!(table, "open {} has a preimage that is not open", yu.fmt_set(w));
    }
    Ok(Report { json, table })
}

pub fn product(paths: &[PathBuf]) -> Result<Report> {
    let xs = paths.iter().map(|p| load_space(p)).collect::<Result<Vec<_>>>()?;
    let p = maps::product(&xs)?;
    Ok(family_report(p.family()))
}

pub fn mine(
    n: usize,
    suite: &str,
    seed: u64,
    samples: usize,
    out: Option<&Path>,
    bounds: &Bounds,
) -> Result<Report> {
    let mut opts = MineOptions::new(n);
    opts.seed = seed;
    opts.samples = samples;
    opts.bounds = *bounds;
    let reports = miner::audit(suite, &opts)?;
    let json = serde_json::to_value(&reports).expect("reports serialize");
    if let Some(path) = out {
        let text = io::to_json_string(&json)?;
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    let w = reports.iter().map(|r| r.theorem.len()).max().unwrap_or(0);
    let mut table = String::new();
    for r in &reports {
        let status = match r.status {
            Status::Holds => "holds",
            Status::Fails => "FAILS",
            Status::AuditOnly => "audit-only",
        };
        let _ = writeln!(
            table,
            "{:<w$}  {:<10}  checked {:>7}  violations {:>6}",
            r.theorem, status, r.checked, r.violation_count
        );
        if !r.distribution.is_empty() {
            let parts: Vec<String> = r.distribution.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let _ = writeln!(table, "{:<w$}  {}", "", parts.join(", "));
        }
        if let Some(v) = r.violations.first() {
            let _ = writeln!(table, "{:<w$}  first witness: {}", "", v.witness);
        }
    }
    Ok(Report { json, table })
}
