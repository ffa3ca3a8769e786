//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pretopo::cardinal::{density_exact, PrimaryItemsRegistry};
use pretopo::connectivity::{connectedness, is_tight_n_connected};
use pretopo::maps::{pre_continuity_witness, subspace, PointMap};
use pretopo::miner::checks::CheckRegistry;
use pretopo::miner::{self, run_check, MineOptions, MinerReport, Status, Subject};
use pretopo::operators::{boundary, closure};
use pretopo::separation::separation_profile;
use pretopo::skills::{delineate, SkillMultimap};
use pretopo::{fixtures, union_closure, Bounds, ItemSet, PreTopology, Universe};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn set(x: &PreTopology, positions: &[usize]) -> ItemSet {
    x.universe().set_1based(positions).expect("positions in range")
}

/// A rendered table: column headers and `(row label, cells)`.
type Table = (Vec<String>, Vec<(String, Vec<u8>)>);

fn parse_tables(text: &str) -> Vec<Table> {
    text.split('↓')
        .map(|chunk| {
            let mut lines = chunk.lines().map(str::trim).filter(|l| !l.is_empty());
            let header: Vec<String> = lines
                .next()
                .unwrap_or("")
                .split_whitespace()
                .map(String::from)
                .collect();
            let rows = lines
                .map_while(|l| {
                    let mut parts = l.split_whitespace();
                    let label = parts.next()?.to_string();
                    let cells: Option<Vec<u8>> = parts.map(|c| c.parse().ok()).collect();
                    Some((label, cells?))
                })
                .collect();
            (header, rows)
        })
        .collect()
}

fn table(header: &[&str], rows: &[(&str, [u8; 5])]) -> Table {
    (
        header.iter().map(|s| s.to_string()).collect(),
        rows.iter().map(|(l, c)| (l.to_string(), c.to_vec())).collect(),
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let x = fixtures::alg5();
    let d = set(&x, &[1, 2]);
    let (k, exact) = density_exact(&x).map_err(|e| e.to_string())?;
    ensure(k == 2 && exact == d, format!("d(Q) = {k}"))?;
    let registry = PrimaryItemsRegistry::default();
    for name in ["greedy", "matrix", "exact"] {
        let out = registry
            .get(name)
            .and_then(|m| m.run(&x, &Bounds::default()))
            .map_err(|e| e.to_string())?;
        ensure(
            out.items == d,
            format!("{name} returned {}", x.fmt_set(out.items)),
        )?;
    }

    let out = Command::new(env!("CARGO_BIN_EXE_pretopo"))
        .args(["primary-items", "--method", "matrix"])
        .arg(fixture("alg5.json"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "primary-items exited with an error")?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(text.contains("D = {z1,z2}"), "output lacks D = {z1,z2}")?;
    let start_of_tables = text.find("    {z1}").ok_or("no matrix in output")?;
    let tables = parse_tables(&text[start_of_tables..]);
    let initial = ["{z1}", "{z2}", "{z1,z3}", "{z2,z3,z4}", "{z1,z3,z4,z5}"];
    let permuted = ["{z1,z3}", "{z2,z3,z4}", "{z1,z3,z4,z5}", "{z1}", "{z2}"];
    let expected = vec![
        table(
            &initial,
            &[
                ("z1", [1, 0, 1, 0, 1]),
                ("z2", [0, 1, 0, 1, 0]),
                ("z3", [0, 0, 1, 1, 1]),
                ("z4", [0, 0, 0, 1, 1]),
                ("z5", [0, 0, 0, 0, 1]),
            ],
        ),
        table(
            &permuted,
            &[
                ("z3", [1, 1, 1, 0, 0]),
                ("z1", [1, 0, 1, 1, 0]),
                ("z2", [0, 1, 0, 0, 1]),
                ("z4", [0, 1, 1, 0, 0]),
                ("z5", [0, 0, 1, 0, 0]),
            ],
        ),
        table(
            &permuted,
            &[
                ("z3", [1, 1, 1, 0, 0]),
                ("z1", [1, 0, 1, 1, 0]),
                ("z2", [0, 1, 0, 0, 1]),
            ],
        ),
    ];
    ensure(tables == expected, format!("tables differ: {tables:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs_f64() < 1.0, format!("took {elapsed:?}"))?;
    Ok(format!(
        "D = {{z1,z2}} from all three methods, tables exact, {} ms",
        elapsed.as_millis()
    ))
}

fn criterion_2() -> Outcome {
    let x = fixtures::e0();
    let q = x.full();
    let (a, b) = (set(&x, &[2, 3]), set(&x, &[2, 3, 4]));
    ensure(closure(&x, a) == a, "closure {2,3}")?;
    ensure(closure(&x, b) == q, "closure {2,3,4}")?;
    ensure(boundary(&x, a) == a, "boundary {2,3}")?;
    ensure(boundary(&x, b) == q, "boundary {2,3,4}")?;
    let (r, t) = (set(&x, &[2]), set(&x, &[3, 4]));
    let cl_union = closure(&x, r.union(t));
    let union_cl = closure(&x, r).union(closure(&x, t));
    ensure(
        union_cl.is_proper_subset(cl_union),
        "closure of a union is not strictly larger",
    )?;
    let bd_union = boundary(&x, r.union(t));
    let union_bd = boundary(&x, r).union(boundary(&x, t));
    ensure(!bd_union.is_subset(union_bd), "boundary of a union is covered")?;
    Ok(format!(
        "cl({{2}} ∪ {{3,4}}) = {} ⊋ {}, ∂ = {} ⊄ {}",
        x.fmt_set(cl_union),
        x.fmt_set(union_cl),
        x.fmt_set(bd_union),
        x.fmt_set(union_bd)
    ))
}

fn criterion_3() -> Outcome {
    let e0 = separation_profile(&fixtures::e0());
    ensure(e0.t0 && !e0.t1, "E0 should be T0 and not T1")?;
    ensure(separation_profile(&fixtures::e1_tau()).t2, "E1τ should be T2")?;
    let t2nr = separation_profile(&fixtures::t2nr());
    ensure(
        t2nr.t2 && !t2nr.regular_property,
        "T2NR should be T2 and not regular",
    )?;
    let rnn = separation_profile(&fixtures::rnn());
    ensure(
        rnn.regular_property && !rnn.normal_property,
        "RNN should be regular and not normal",
    )?;
    ensure(
        !separation_profile(&fixtures::remark6()).t0,
        "six-point family should not be T0",
    )?;
    let t1c = fixtures::t1c();
    ensure(
        separation_profile(&t1c).t1 && connectedness(&t1c).connected,
        "T1C should be T1 and connected",
    )?;

    let out = Command::new(env!("CARGO_BIN_EXE_pretopo"))
        .args(["--format", "json", "separation"])
        .arg(fixture("e0.json"))
        .output()
        .map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["t0"] == true && v["t1"] == false, "CLI separation on e0")?;
    Ok("E0, E1τ, T2NR, RNN, six-point family, T1C".into())
}

fn criterion_4() -> Outcome {
    let tight = fixtures::tight();
    let c = connectedness(&tight);
    ensure(is_tight_n_connected(&tight, 1), "TIGHT is not tight 1-connected")?;
    ensure(!c.connected, "TIGHT is connected")?;
    ensure(
        c.clopens.contains(&set(&tight, &[1, 2])),
        "{1,2} is not a proper clopen of TIGHT",
    )?;
    let conn = fixtures::conn();
    ensure(connectedness(&conn).connected, "CONN is disconnected")?;
    ensure(!is_tight_n_connected(&conn, 1), "CONN is tight 1-connected")?;
    Ok(format!(
        "TIGHT clopens {}, CONN connected and not tight",
        c.clopens
            .iter()
            .map(|&s| tight.fmt_set(s))
            .collect::<Vec<_>>()
            .join(" ")
    ))
}

fn criterion_5() -> Outcome {
    let tau = fixtures::e1_tau();
    let delta = fixtures::e1_delta();
    let id = PointMap::identity(tau.universe().clone());
    let w = pre_continuity_witness(&id, &tau, &delta).map_err(|e| e.to_string())?;
    ensure(w == Some(set(&tau, &[3])), format!("witness {w:?}"))?;
    for piece in [&[1, 2][..], &[3, 4]] {
        let c = set(&tau, piece);
        let xc = subspace(&tau, c).map_err(|e| e.to_string())?;
        let yc = subspace(&delta, c).map_err(|e| e.to_string())?;
        let idc = PointMap::identity(xc.universe().clone());
        let wc = pre_continuity_witness(&idc, &xc, &yc).map_err(|e| e.to_string())?;
        ensure(wc.is_none(), format!("restriction to {} fails", tau.fmt_set(c)))?;
    }
    Ok("identity fails at {z3}, restrictions to {z1,z2} and {z3,z4} pass".into())
}

/// Runs `suite` and requires every report to hold with something checked.
fn all_hold(suite: &str, opts: &MineOptions) -> Result<(usize, Vec<MinerReport>), String> {
    let reports = miner::audit(suite, opts).map_err(|e| e.to_string())?;
    for r in &reports {
        ensure(
            r.checked > 0,
            format!("{} checked nothing at n = {}", r.theorem, opts.n),
        )?;
        ensure(
            r.status == Status::Holds,
            format!(
                "{} at n = {}: {} violations, first {:?}",
                r.theorem,
                opts.n,
                r.violation_count,
                r.violations.first().map(|v| &v.witness)
            ),
        )?;
    }
    let checked = reports.iter().map(|r| r.checked).sum();
    Ok((checked, reports))
}

const PROPERTY_SUITE: &str = "closure-axioms,closure-derived,boundary-laws,interior-closure-duality,\
t0-discriminative,t1-inner-fringe,chain-connected,tight1-well-graded,weight-bound,\
density-cellularity,fringe-characterizations";

fn criterion_6() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        total += all_hold(PROPERTY_SUITE, &MineOptions::new(n))?.0;
    }
    let mut opts = MineOptions::new(5);
    opts.samples = 10_000;
    opts.seed = 6;
    let (checked, reports) = all_hold(PROPERTY_SUITE, &opts)?;
    let sampled = reports.iter().map(|r| r.checked).max().unwrap_or(0);
    ensure(sampled >= 10_000, format!("only {sampled} spaces at n = 5"))?;
    total += checked;
    Ok(format!(
        "{} laws, {total} checks, exhaustive n ≤ 4, {sampled} sampled at n = 5",
        reports.len()
    ))
}

fn criterion_7() -> Outcome {
    let spaces = "quasi-ordinal-round-trip,alexandroff-equality,bi-discriminative-powerset,\
quasi-ordinal-regularity,ordinal-antimatroid-tight";
    let mut total = 0;
    for n in 1..=3 {
        total += all_hold(spaces, &MineOptions::new(n))?.0;
    }
    let mut opts = MineOptions::new(6);
    opts.quasi_orders = 1_000;
    opts.seed = 7;
    let (checked, reports) = all_hold("quasi-order-round-trip", &opts)?;
    ensure(reports[0].checked == 1_000, "expected 1000 quasi-orders")?;
    total += checked;
    Ok(format!(
        "{total} checks including 1000 quasi-orders on up to 6 items"
    ))
}

fn criterion_8() -> Outcome {
    let items = Universe::numbered("q", 3).map_err(|e| e.to_string())?;
    let skills = Universe::numbered("s", 3).map_err(|e| e.to_string())?;
    let all = skills.full();
    let m = SkillMultimap::new(items, skills, vec![vec![all]; 3]).map_err(|e| e.to_string())?;
    let h = delineate(&m).map_err(|e| e.to_string())?;
    ensure(
        h.states() == [ItemSet::EMPTY, ItemSet::full(3)],
        "μ(t) = {S} does not delineate {∅, Q}",
    )?;
    let opts = MineOptions::new(3);
    let (checked, reports) = all_hold(
        "delineation-characterization,star-implies-space,completely-discriminative-delineation",
        &opts,
    )?;
    Ok(format!(
        "{} multimaps, {checked} checks, zero disagreements",
        reports[0].checked
    ))
}

fn schema_valid(r: &MinerReport) -> Result<(), String> {
    let v = serde_json::to_value(r).map_err(|e| e.to_string())?;
    ensure(v["theorem"].is_string(), "theorem")?;
    ensure(v["checked"].is_u64(), "checked")?;
    ensure(v["violations"].is_array(), "violations")?;
    ensure(v["asserted"] == false, "audit checks are not asserted")?;
    let status = v["status"].as_str().unwrap_or("");
    ensure(
        ["holds", "audit-only"].contains(&status),
        format!("status {status}"),
    )?;
    ensure(
        (status == "audit-only") == (r.violation_count > 0),
        "status disagrees with the violation count",
    )?;
    let back: MinerReport = serde_json::from_value(v).map_err(|e| e.to_string())?;
    ensure(&back == r, "report does not round-trip")
}

fn criterion_9() -> Outcome {
    let reports =
        miner::audit("atom-pre-base-of-minimal", &MineOptions::new(2)).map_err(|e| e.to_string())?;
    let atom = &reports[0];
    schema_valid(atom)?;
    let witness = serde_json::json!({"universe": ["z1", "z2"], "states": [[], ["z1"], ["z1", "z2"]]});
    ensure(
        atom.violations.iter().any(|v| v.subject == witness),
        "{∅,{1},{1,2}} is not among the violations",
    )?;

    let mut gaps = Vec::new();
    for n in 1..=4 {
        let r = miner::audit("greedy-optimality", &MineOptions::new(n)).map_err(|e| e.to_string())?;
        schema_valid(&r[0])?;
        gaps.push(r.into_iter().next().expect("one report"));
    }
    let registry = CheckRegistry::standard();
    let check = registry.get("greedy-optimality").map_err(|e| e.to_string())?;
    let vc = union_closure(&fixtures::vertex_cover_base()).map_err(|e| e.to_string())?;
    let vc_report = run_check(check, &[Subject::Space(&vc)]);
    schema_valid(&vc_report)?;
    ensure(vc_report.checked == 1, "vertex cover not checked")?;
    let n4 = gaps.last().expect("n = 4 report");
    Ok(format!(
        "atom witness found ({} of {} at n = 2); greedy/matrix gaps at n = 4: {:?}; vertex cover: {:?}",
        atom.violation_count, atom.checked, n4.distribution, vc_report.distribution
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked primary-items example", criterion_1),
        ("operator goldens on E0", criterion_2),
        ("separation goldens", criterion_3),
        ("connectivity goldens", criterion_4),
        ("pre-continuity golden", criterion_5),
        ("exhaustive and sampled property suite", criterion_6),
        ("order suite", criterion_7),
        ("skills suite", criterion_8),
        ("audit-only reports", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of 9 passed in {:.1} s",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
