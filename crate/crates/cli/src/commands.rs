use std::fs;
use std::io::Write;

use anyhow::{bail, Context, Result};
use exfam::bounds::bound_report;
use exfam::constructions::{
    aak_family, powerset_family, thm3_family, thm3_part_size_for, tight_rank_family,
};
use exfam::extraction::{extract_tree, thm2_default_params, Extraction, ExtractionTree};
use exfam::format::{parse_family, serialize_family};
use exfam::search::{min_family_size, min_rank, SearchOptions};
use exfam::verifiers::check;
use exfam::{Condition, Family, SubsetMask, Verdict};
use serde_json::{json, Value};

use crate::args::{Cli, Command, FamilyArgs, FamilyName, Objective, VerifyCondition, YesNo};
use crate::Outcome;

/// Pair scans above this many ordered pairs need `--force`.
const PAIR_LIMIT: u128 = 10_000_000_000;

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Construct { family, out: path } => construct(family, path.as_deref(), json, out),
        Command::Verify {
            family,
            condition,
            force,
        } => verify(family, *condition, *force, json, out),
        Command::Count { family } => count(family, json, out),
        Command::Rank { family } => rank(family, json, out),
        Command::Search {
            n,
            condition,
            downward_closed,
            budget,
            objective,
        } => {
            let dc = *downward_closed == YesNo::Yes;
            search(*n, (*condition).into(), dc, *budget, *objective, json, out)
        }
        Command::Extract {
            family,
            branching,
            depth,
            default_params,
        } => extract(family, *branching, *depth, *default_params, json, out),
        Command::Bounds { n } => bounds(*n, json, out),
    }
}

fn load(args: &FamilyArgs) -> Result<Family> {
    fn given(name: &'static str, v: Option<usize>) -> Option<&'static str> {
        v.map(|_| name)
    }
    let all = [
        given("--s", args.s),
        given("--t", args.t),
        given("--k", args.k),
        given("--n", args.n),
    ];
    let reject = |allowed: &[&str], what: &str| -> Result<()> {
        for flag in all.iter().flatten() {
            if !allowed.contains(flag) {
                bail!("{flag} does not apply to {what}");
            }
        }
        Ok(())
    };
    let need = |name: &str, v: Option<usize>, what: &str| {
        v.with_context(|| format!("{what} needs {name}"))
    };

    if let Some(path) = &args.source.file {
        reject(&[], "--file")?;
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_family(&text).with_context(|| format!("parsing {}", path.display()));
    }
    let fam = match args.source.family.expect("clap enforces a source") {
        FamilyName::Aak => {
            reject(&["--s", "--t"], "aak")?;
            aak_family(need("--s", args.s, "aak")?, need("--t", args.t, "aak")?)?
        }
        FamilyName::Tight => {
            reject(&["--n"], "tight")?;
            tight_rank_family(need("--n", args.n, "tight")?)?
        }
        FamilyName::Thm3 => {
            reject(&["--n", "--k"], "thm3")?;
            let n = need("--n", args.n, "thm3")?;
            let k = match args.k {
                Some(k) => k,
                None => thm3_part_size_for(n)
                    .with_context(|| format!("no valid part size for n={n}"))?,
            };
            thm3_family(n, k)?
        }
        FamilyName::Powerset => {
            reject(&["--n"], "powerset")?;
            powerset_family(need("--n", args.n, "powerset")?)?
        }
    };
    Ok(fam)
}

fn elems(set: SubsetMask) -> Value {
    json!(set.elements().collect::<Vec<_>>())
}

fn emit(out: &mut dyn Write, json: bool, value: Value, text: &str) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn construct(
    args: &FamilyArgs,
    path: Option<&std::path::Path>,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let fam = load(args)?;
    let text = format!("# {}\n{}", fam.describe(), serialize_family(&fam)?);
    let members = fam.len()?;
    match path {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            let value = json!({ "family": fam.describe(), "n": fam.ground().size(), "members": members, "out": p.display().to_string() });
            emit(
                out,
                json,
                value,
                &format!("wrote {members} sets to {}\n", p.display()),
            )?;
        }
        None => {
            let value = json!({ "family": fam.describe(), "n": fam.ground().size(), "members": members, "text": text });
            emit(out, json, value, &text)?;
        }
    }
    Ok(Outcome::Ok)
}

fn condition_name(c: VerifyCondition) -> &'static str {
    match c {
        VerifyCondition::Atomic => "atomic",
        VerifyCondition::DownwardClosed => "downward-closed",
        VerifyCondition::Weak => "weak",
        VerifyCondition::Cond3 => "cond3",
        VerifyCondition::Ordered => "ordered",
        VerifyCondition::Strong => "strong",
        VerifyCondition::Both => "both",
        VerifyCondition::Matroid => "matroid",
    }
}

fn pair_condition(c: VerifyCondition) -> Option<Condition> {
    Some(match c {
        VerifyCondition::Weak => Condition::Weak,
        VerifyCondition::Cond3 => Condition::Cond3,
        VerifyCondition::Ordered => Condition::SizeOrdered,
        VerifyCondition::Strong => Condition::StrongOrdered,
        VerifyCondition::Both => Condition::Both,
        VerifyCondition::Matroid => Condition::MatroidLike,
        VerifyCondition::Atomic | VerifyCondition::DownwardClosed => return None,
    })
}

fn verify(
    args: &FamilyArgs,
    cond: VerifyCondition,
    force: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let fam = load(args)?;
    let name = condition_name(cond);
    // (A, B, detail) of the first failure
    let failure: Option<(Option<SubsetMask>, Option<SubsetMask>, String)> =
        match pair_condition(cond) {
            Some(c) => {
                let m = fam.len()? as u128;
                if m * m > PAIR_LIMIT && !force {
                    bail!(
                        "{m} members means {} pair checks; rerun with --force",
                        m * m
                    );
                }
                match check(&fam, c)? {
                    Verdict::Pass => None,
                    Verdict::Violation(w) => Some((Some(w.a), Some(w.b), w.detail)),
                }
            }
            None if cond == VerifyCondition::Atomic => fam
                .ground()
                .singletons()
                .find(|&x| !fam.contains(x))
                .map(|x| (None, None, format!("missing={x}"))),
            None => {
                let mut found = None;
                'outer: for a in fam.members()? {
                    for e in a.elements() {
                        let smaller = a.without(e);
                        if !fam.contains(smaller) {
                            found = Some((Some(a), None, format!("missing={smaller}")));
                            break 'outer;
                        }
                    }
                }
                found
            }
        };
    match failure {
        None => {
            emit(
                out,
                json,
                json!({ "condition": name, "result": "pass" }),
                &format!("PASS {name}\n"),
            )?;
            Ok(Outcome::Ok)
        }
        Some((a, b, detail)) => {
            let mut text = format!("VIOLATION {name}");
            if let Some(a) = a {
                text.push_str(&format!(" A={a}"));
            }
            if let Some(b) = b {
                text.push_str(&format!(" B={b}"));
            }
            text.push_str(&format!(" {detail}\n"));
            let value = json!({
                "condition": name,
                "result": "violation",
                "A": a.map(elems),
                "B": b.map(elems),
                "detail": detail,
            });
            emit(out, json, value, &text)?;
            Ok(Outcome::Violation)
        }
    }
}

fn count(args: &FamilyArgs, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let fam = load(args)?;
    let enumerated = fam.len()?;
    let formula = fam.size_formula();
    let mut text = format!("enumerated={enumerated}");
    if let Some(f) = &formula {
        text.push_str(&format!(" formula={f}"));
    }
    text.push('\n');
    let value =
        json!({ "enumerated": enumerated, "formula": formula.as_ref().map(|f| f.to_string()) });
    emit(out, json, value, &text)?;
    match formula {
        Some(f) if f != enumerated.into() => Ok(Outcome::Violation),
        _ => Ok(Outcome::Ok),
    }
}

fn rank(args: &FamilyArgs, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let fam = load(args)?;
    let r = exfam::rank(&fam)?;
    let formula = fam.rank_formula();
    let mut text = format!("rank={r}");
    if let Some(f) = formula {
        text.push_str(&format!(" formula={f}"));
    }
    text.push('\n');
    emit(out, json, json!({ "rank": r, "formula": formula }), &text)?;
    match formula {
        Some(f) if f != r => Ok(Outcome::Violation),
        _ => Ok(Outcome::Ok),
    }
}

fn search(
    n: usize,
    condition: Condition,
    downward_closed: bool,
    budget: u64,
    objective: Objective,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let (minimum, witness, nodes) = match objective {
        Objective::Size => {
            let opts = SearchOptions::new(condition)
                .downward_closed(downward_closed)
                .budget(budget);
            let r = min_family_size(n, &opts)?;
            (r.minimum, r.witness, r.nodes_explored)
        }
        Objective::Rank => {
            if !downward_closed {
                bail!("--objective rank searches downward-closed families only");
            }
            let r = min_rank(n, condition, budget)?;
            (r.min_rank, r.witness, r.nodes_explored)
        }
    };
    let key = match objective {
        Objective::Size => "minimum",
        Objective::Rank => "min_rank",
    };
    let file = serialize_family(&witness)?;
    let dc = if downward_closed { "yes" } else { "no" };
    let text = format!(
        "condition={condition} n={n} downward_closed={dc}\n{key}={minimum}\nnodes={nodes}\n{file}"
    );
    let value = json!({
        "condition": condition.to_string(),
        "n": n,
        "downward_closed": downward_closed,
        "objective": match objective {
            Objective::Size => "size",
            Objective::Rank => "rank",
        },
        key: minimum,
        "nodes": nodes,
        "witness": witness.members()?.into_iter().map(elems).collect::<Vec<_>>(),
    });
    emit(out, json, value, &text)?;
    Ok(Outcome::Ok)
}

fn tree_json(tree: &ExtractionTree) -> Value {
    let vertices: Vec<Value> = tree
        .vertices
        .iter()
        .map(|v| {
            json!({
                "level": v.level,
                "path": v.path,
                "member": elems(v.member),
                "level_set": v.level_set.map(elems),
            })
        })
        .collect();
    json!({ "result": "tree", "s": tree.s, "t": tree.t, "vertices": vertices })
}

fn extract(
    args: &FamilyArgs,
    branching: Option<usize>,
    depth: Option<usize>,
    default_params: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let fam = load(args)?;
    let (s, t) = if default_params {
        let p = thm2_default_params(fam.ground().size())?;
        if p.clamped() {
            eprintln!(
                "warning: default parameters clamped from s={} t={} to s={} t={}",
                p.raw_s, p.raw_t, p.s, p.t
            );
        }
        (p.s, p.t)
    } else {
        (
            branching.expect("clap requires --branching"),
            depth.expect("clap requires --depth"),
        )
    };
    match extract_tree(&fam, s, t)? {
        Extraction::Tree(tree) => {
            emit(out, json, tree_json(&tree), &tree.dump())?;
            Ok(Outcome::Ok)
        }
        Extraction::Failed(f) => {
            let value = json!({
                "result": "failure",
                "s": s,
                "t": t,
                "level": f.level,
                "path": f.path,
                "member": elems(f.member),
                "blocked": elems(f.blocked),
                "available": f.available.len(),
                "needed": f.needed,
            });
            emit(out, json, value, &format!("{f}\n"))?;
            Ok(Outcome::Violation)
        }
    }
}

fn bounds(n: usize, json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let report = bound_report(n)?;
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| json!({ "key": e.key, "value": e.value, "heuristic": e.heuristic }))
        .collect();
    emit(
        out,
        json,
        json!({ "n": report.n, "entries": entries }),
        &report.to_string(),
    )?;
    Ok(Outcome::Ok)
}
