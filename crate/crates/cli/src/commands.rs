use std::collections::BTreeSet;
use std::path::Path;

use hypercone::catalog::{bulk_census, builtin_rays, find_ray, inequality_set, is_realization, saturated_facets, RayEntry};
use hypercone::contraction::{describe_witness, RankStatus, Witness};
use hypercone::hypergraph::{min_cut_entropy, universal_reduction, ReductionOptions};
use hypercone::io::{graph_to_json, inequality_to_json, load_rays, map_to_json, parse_inequality_file, parse_map, read_graph, vector_to_json};
use hypercone::states::{build_state, verify_state_entropies, StateOptions};
use hypercone::{
    entropy_vector, find_builtin, parse_inequality, search_contraction, verify_contraction, ContractionMap,
    ContractionReport, Error, Hypergraph, Inequality, MinCutOptions, Rational, SearchOptions, SearchOutcome,
    Subsystem, VerifyOptions,
};
use serde_json::{json, Value};

use crate::run::{CliError, CliResult, Context, Outcome, Status};
use crate::{Command, RaysAction};

pub fn dispatch(ctx: &mut Context, command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Entropy { graph, subsystem } => entropy(ctx, graph, subsystem.as_deref()),
        Command::CheckIneq { ineq, graph } => check_ineq(ctx, ineq, graph),
        Command::VerifyMap { ineq, builtin, map, kmax, no_prune, n } => {
            verify_map(ctx, ineq, *builtin, map.as_deref(), *kmax, !*no_prune, *n)
        }
        Command::SearchMap { ineq, k_target, n, out } => search_map(ctx, ineq, *k_target, *n, out.as_deref()),
        Command::BatchAppendix { kmax_policy, rows } => batch_appendix(ctx, kmax_policy, rows.as_deref()),
        Command::BuildState { graph, dump, verify, explicit_two_edges, basis_search } => {
            let opts = StateOptions { explicit_two_edges: *explicit_two_edges, basis_search: *basis_search, ..Default::default() };
            build(ctx, graph, *dump, *verify, &opts)
        }
        Command::Reduce { graph, max_parties } => reduce(ctx, graph, *max_parties),
        Command::Rays { action } => rays(ctx, action),
        Command::Parse { expr, n } => parse(ctx, expr, *n),
    }
}

fn load_graph(ctx: &mut Context, path: &Path) -> CliResult<(Hypergraph, Vec<String>)> {
    let text = ctx.read(path)?;
    let loaded = read_graph(&text)?;
    let notes = loaded
        .merged
        .iter()
        .map(|(party, kept, others)| format!("note: party {party} boundary vertices {} merged into `{kept}`", others.join(", ")))
        .collect();
    Ok((loaded.graph, notes))
}

struct Resolved {
    name: String,
    ineq: Inequality,
    map: Option<ContractionMap>,
}

/// A built-in name, an inequality file, or an expression over `n` parties.
fn resolve_ineq(ctx: &mut Context, spec: &str, n: Option<usize>) -> CliResult<Resolved> {
    if let Some(e) = find_builtin(spec) {
        return Ok(Resolved { name: e.name.clone(), ineq: e.inequality.clone(), map: e.map.clone() });
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = ctx.read(path)?;
        return Ok(Resolved { name: spec.into(), ineq: parse_inequality_file(&text)?, map: None });
    }
    let n = n.ok_or_else(|| {
        CliError::Usage(format!("`{spec}` is neither a built-in nor a file; give --n to parse it as an expression"))
    })?;
    Ok(Resolved { name: spec.into(), ineq: parse_inequality(spec, n)?, map: None })
}

fn entropy(ctx: &mut Context, path: &Path, subsystem: Option<&str>) -> CliResult<Outcome> {
    let (g, mut text) = load_graph(ctx, path)?;
    let opts = MinCutOptions::default();
    let result = match subsystem {
        Some(label) => {
            let (sub, purifier) = Subsystem::parse_with_purifier(label, g.n())?;
            // purity: a subsystem with the purifier has its complement's entropy
            let sub = if purifier { sub.complement(g.n()) } else { sub };
            if sub.is_empty() {
                return Err(Error::Input("subsystem is empty or everything".into()).into());
            }
            let (value, cut) = min_cut_entropy(&g, sub, &opts)?;
            let names = cut.names(&g);
            text.push(format!("S({}) = {}", sub.label(g.n()), ctx.num(&value)));
            text.push(format!("minimal cut: {{{}}}", names.join(", ")));
            json!({"subsystem": sub.label(g.n()), "entropy": ctx.num(&value), "cut": names})
        }
        None => {
            let s = entropy_vector(&g, &opts)?;
            for (label, v) in s.labelled() {
                text.push(format!("S({label}) = {}", ctx.num(&v)));
            }
            let mut v = vector_to_json(&s);
            if ctx.global.float {
                v["values"] = json!(s.entries().iter().map(|r| ctx.num(r)).collect::<Vec<_>>());
            }
            v
        }
    };
    Ok(Outcome { status: Status::Pass, text, result, parameters: json!({"subsystem": subsystem}) })
}

fn check_ineq(ctx: &mut Context, spec: &str, path: &Path) -> CliResult<Outcome> {
    let (g, mut text) = load_graph(ctx, path)?;
    let r = resolve_ineq(ctx, spec, Some(g.n()))?;
    if r.ineq.n() > g.n() {
        return Err(CliError::Usage(format!("{} needs {} parties, the graph has {}", r.name, r.ineq.n(), g.n())));
    }
    let s = entropy_vector(&g, &MinCutOptions::default())?;
    let mut status = Status::Pass;
    let mut rows = Vec::new();
    for inst in r.ineq.instances_in(g.n())? {
        let v = inst.evaluate(&s)?;
        let verdict = match v.cmp(&Rational::default()) {
            std::cmp::Ordering::Less => {
                status = Status::Fail;
                "violated"
            }
            std::cmp::Ordering::Equal => "saturated",
            std::cmp::Ordering::Greater => "satisfied",
        };
        text.push(format!("{verdict}: Q·S = {}  [{inst}]", ctx.num(&v)));
        rows.push(json!({"inequality": inst.to_string(), "value": ctx.num(&v), "verdict": verdict}));
    }
    let violated = rows.iter().filter(|r| r["verdict"] == "violated").count();
    text.push(format!("{}: {} of {} instances violated", r.name, violated, rows.len()));
    Ok(Outcome { status, text, result: json!({"name": r.name, "instances": rows}), parameters: json!({}) })
}

fn witness_json(ctx: &Context, w: &Witness) -> Value {
    json!({
        "domain": w.domain.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "images": w.images.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "lhs": ctx.num(&w.lhs),
        "rhs": ctx.num(&w.rhs),
    })
}

fn status_str(s: RankStatus) -> &'static str {
    match s {
        RankStatus::Verified => "verified",
        RankStatus::Violated => "violated",
        RankStatus::BudgetExceeded => "budget-exceeded",
    }
}

fn report_json(ctx: &Context, report: &ContractionReport) -> Value {
    let ranks: Vec<Value> = report
        .ranks
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "status": status_str(r.status),
                "examined": r.examined,
                "pruned": r.pruned,
                "witness": r.witness.as_ref().map(|w| witness_json(ctx, w)),
            })
        })
        .collect();
    json!({"ranks": ranks, "beta_total": ctx.num(&report.beta_total), "fully_proved": report.fully_proved})
}

fn report_status(report: &ContractionReport) -> Status {
    report.ranks.iter().fold(Status::Pass, |acc, r| {
        acc.combine(match r.status {
            RankStatus::Verified => Status::Pass,
            RankStatus::Violated => Status::Fail,
            RankStatus::BudgetExceeded => Status::Budget,
        })
    })
}

fn verify_map(
    ctx: &mut Context,
    spec: &str,
    builtin: bool,
    map_path: Option<&Path>,
    kmax: usize,
    prune: bool,
    n: Option<usize>,
) -> CliResult<Outcome> {
    let r = resolve_ineq(ctx, spec, n)?;
    let map = match (builtin, map_path) {
        (_, Some(p)) => {
            let text = ctx.read(p)?;
            parse_map(&text)?
        }
        (true, None) | (false, None) => r
            .map
            .clone()
            .ok_or_else(|| CliError::Usage(format!("{} has no built-in map; pass --map", r.name)))?,
    };
    let mut opts = VerifyOptions { k_max: kmax, prune, ..Default::default() };
    if let Some(b) = ctx.global.budget {
        opts.budget = b;
    }
    let parameters = json!({"kmax": kmax, "prune": prune, "budget": opts.budget});
    let report = match verify_contraction(&map, &r.ineq, &opts) {
        Ok(report) => report,
        Err(e @ Error::MapInvalid { .. }) => {
            return Ok(Outcome {
                status: Status::Fail,
                text: vec![format!("FAIL: {e}")],
                result: json!({"name": r.name, "error": e.to_string()}),
                parameters,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = vec![format!("{}: {}", r.name, r.ineq)];
    for rank in &report.ranks {
        let mut line = format!("k={} {} (examined {}, pruned {})", rank.k, status_str(rank.status), rank.examined, rank.pruned);
        if let Some(w) = &rank.witness {
            line.push_str(&format!("; witness {}", describe_witness(w)));
        }
        text.push(line);
    }
    let status = report_status(&report);
    text.push(match status {
        Status::Pass if report.fully_proved => {
            format!("PASS through k={}; fully proved (k_max >= beta_T = {})", kmax, ctx.num(&report.beta_total))
        }
        Status::Pass => format!("PASS through k={kmax}"),
        Status::Fail => format!("FAIL at k={}", report.first_violation().map_or(0, |r| r.k)),
        Status::Budget => format!("BUDGET EXCEEDED after k={}", report.verified_through()),
    });
    let result = json!({"name": r.name, "inequality": r.ineq.to_string(), "report": report_json(ctx, &report)});
    Ok(Outcome { status, text, result, parameters })
}

fn search_map(ctx: &mut Context, spec: &str, k_target: usize, n: Option<usize>, out: Option<&Path>) -> CliResult<Outcome> {
    let r = resolve_ineq(ctx, spec, n)?;
    let mut opts = SearchOptions { k_target, ..Default::default() };
    if let Some(b) = ctx.global.budget {
        opts.budget = b;
    }
    let parameters = json!({"k_target": k_target, "budget": opts.budget});
    let outcome = search_contraction(&r.ineq, &opts)?;
    let (status, text, result) = match outcome {
        SearchOutcome::Found { map, report } => {
            let m = map_to_json(&map);
            if let Some(path) = out {
                std::fs::write(path, m.to_string() + "\n").map_err(|source| CliError::Write { path: path.into(), source })?;
            }
            let text = vec![
                format!("found a map valid through k={k_target} (re-verified)"),
                format!("f10 = {}", m["f10"]),
            ];
            (Status::Pass, text, json!({"outcome": "found", "map": m, "report": report_json(ctx, &report)}))
        }
        SearchOutcome::Unsatisfiable { k, witness } => (
            Status::Fail,
            vec![format!("unsatisfiable: occurrence vectors violate rank {k}: {}", describe_witness(&witness))],
            json!({"outcome": "unsatisfiable", "k": k, "witness": witness_json(ctx, &witness)}),
        ),
        SearchOutcome::Exhausted { nodes } => (
            Status::Fail,
            vec![format!("no map exists through k={k_target} ({nodes} nodes searched)")],
            json!({"outcome": "exhausted", "nodes": nodes}),
        ),
        SearchOutcome::BudgetExceeded { nodes } => (
            Status::Budget,
            vec![format!("budget exceeded after {nodes} nodes")],
            json!({"outcome": "budget-exceeded", "nodes": nodes}),
        ),
    };
    Ok(Outcome { status, text, result, parameters })
}

fn parse_rows(spec: &str) -> CliResult<BTreeSet<usize>> {
    let bad = || CliError::Usage(format!("bad row list `{spec}`"));
    let mut out = BTreeSet::new();
    for part in spec.split(',') {
        let (a, b) = part.split_once('-').unwrap_or((part, part));
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b > 24 || a > b {
            return Err(bad());
        }
        out.extend(a..=b);
    }
    Ok(out)
}

fn batch_appendix(ctx: &mut Context, policy: &str, rows: Option<&str>) -> CliResult<Outcome> {
    let fixed = match policy {
        "table5" => None,
        p => Some(
            p.strip_prefix("fixed:")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 2)
                .ok_or_else(|| CliError::Usage(format!("unknown k-max policy `{p}`; use table5 or fixed:K")))?,
        ),
    };
    let selected = rows.map(parse_rows).transpose()?;
    let mut budget = VerifyOptions::default().budget;
    if let Some(b) = ctx.global.budget {
        budget = b;
    }
    let entries: Vec<_> = hypercone::builtin_library().iter().filter(|e| e.table.is_some()).collect();
    let mut text = vec![format!(
        "{:<4} {:>2} {:>2} {:>3} {:>3}  {:<10} {:>7} {:>8}  {}",
        "row", "L", "R", "aT", "bT", "metadata", "table-k", "verified", "status"
    )];
    let mut json_rows = Vec::new();
    let mut status = Status::Pass;
    let mut mismatched = Vec::new();
    for (idx, e) in entries.iter().enumerate() {
        let row = idx + 1;
        if selected.as_ref().is_some_and(|s| !s.contains(&row)) {
            continue;
        }
        let t = e.table.expect("filtered on table rows");
        let i = &e.inequality;
        let (l, r) = (i.l(), i.r());
        let (at, bt) = (i.alpha_total(), i.beta_total());
        let totals_match = at == Rational::from_integer(t.alpha_t.into()) && bt == Rational::from_integer(t.beta_t.into());
        let metadata = if (l, r) == (t.l, t.r) && totals_match {
            "match"
        } else if (l, r) == (t.r, t.l) && totals_match {
            "transposed"
        } else {
            "mismatch"
        };
        if metadata != "match" {
            mismatched.push(e.name.clone());
        }
        // ranks that must verify, and the rank attempted
        let (required, attempt) = match fixed {
            Some(k) => (k, k),
            None if l <= 7 => (t.checked_k, t.checked_k),
            None => (4, t.checked_k),
        };
        let opts = VerifyOptions { k_max: attempt, budget, prune: true };
        let map = e.map.as_ref().expect("appendix rows carry maps");
        let report = verify_contraction(map, i, &opts)?;
        let through = report.verified_through();
        let row_status = if report.first_violation().is_some() {
            Status::Fail
        } else if through >= required {
            Status::Pass
        } else {
            Status::Budget
        };
        let label = match (row_status, through >= attempt) {
            (Status::Fail, _) => format!("violated at k={}", report.first_violation().map_or(0, |r| r.k)),
            (Status::Budget, _) => format!("budget exceeded at k={}", through + 1),
            (_, true) => "verified".to_string(),
            (_, false) => format!("verified; stretch k={} budget exceeded", through + 1),
        };
        status = status.combine(row_status);
        text.push(format!(
            "{:<4} {:>2} {:>2} {:>3} {:>3}  {:<10} {:>7} {:>8}  {}",
            e.name,
            l,
            r,
            ctx.num(&at),
            ctx.num(&bt),
            metadata,
            t.checked_k,
            through,
            label
        ));
        json_rows.push(json!({
            "name": e.name,
            "computed": {"L": l, "R": r, "alpha_T": ctx.num(&at), "beta_T": ctx.num(&bt)},
            "published": {"L": t.l, "R": t.r, "alpha_T": t.alpha_t, "beta_T": t.beta_t, "checked_k": t.checked_k},
            "metadata": metadata,
            "required_k": required,
            "attempted_k": attempt,
            "verified_through": through,
            "status": label,
            "report": report_json(ctx, &report),
        }));
    }
    if !mismatched.is_empty() {
        status = Status::Fail;
        text.push(format!("published (L, R, aT, bT) differ for: {}", mismatched.join(", ")));
    }
    let parameters = json!({"kmax_policy": policy, "rows": rows, "budget": budget});
    Ok(Outcome { status, text, result: json!({"rows": json_rows, "metadata_mismatches": mismatched}), parameters })
}

fn build(ctx: &mut Context, path: &Path, dump: bool, verify: bool, opts: &StateOptions) -> CliResult<Outcome> {
    let (g, mut text) = load_graph(ctx, path)?;
    let state = build_state(&g, opts)?;
    let labels = state.party_labels();
    text.push(format!(
        "D={} parties {} legs [{}]; {} amplitudes, {} nonzero, N={}",
        state.d,
        labels.join(" "),
        state.legs.iter().map(|l| l.len().to_string()).collect::<Vec<_>>().join(" "),
        state.tensor.data.len(),
        state.tensor.nonzero(),
        state.tensor.norm
    ));
    let mut result = json!({
        "d": state.d,
        "parties": labels,
        "legs": state.legs,
        "amplitudes": state.tensor.data.len(),
        "nonzero": state.tensor.nonzero(),
        "norm": state.tensor.norm.to_string(),
        "scale": ctx.num(&state.scale),
    });
    if dump {
        let lines = state.dump();
        text.extend(lines.iter().cloned());
        result["dump"] = json!(lines);
    }
    let mut status = Status::Pass;
    if verify {
        let report = verify_state_entropies(&g, opts)?;
        let mut rows = Vec::new();
        for e in &report.entries {
            let state_value = match &e.entropy.exact {
                Some(v) => ctx.num(v),
                None => format!("{:.6}", e.entropy.value),
            };
            let label = e.entropy.subsystem.label(report.n);
            text.push(format!(
                "S({label}): state {state_value} (rank {}{}), cut {}{}",
                e.entropy.rank,
                if e.entropy.flat { ", flat" } else { ", not flat" },
                ctx.num(&e.expected),
                if e.matches { "" } else { "  MISMATCH" }
            ));
            rows.push(json!({
                "subsystem": label,
                "state": state_value,
                "rank": e.entropy.rank,
                "flat": e.entropy.flat,
                "cut": ctx.num(&e.expected),
                "match": e.matches,
            }));
        }
        text.push(format!("{}/{} subsystems match", report.matched(), report.entries.len()));
        text.push(if report.all_flat { "all spectra flat".into() } else { "some spectra are not flat".into() });
        if let Some(fix) = &report.basis_fix {
            text.push(format!("local basis change after {} attempts: {:?}", report.basis_attempts, fix));
        }
        if !report.all_match() {
            status = Status::Fail;
        }
        result["verify"] = json!({
            "entries": rows,
            "matched": report.matched(),
            "total": report.entries.len(),
            "all_flat": report.all_flat,
            "basis_attempts": report.basis_attempts,
        });
    }
    let parameters = json!({"dump": dump, "verify": verify, "explicit_two_edges": opts.explicit_two_edges, "basis_search": opts.basis_search});
    Ok(Outcome { status, text, result, parameters })
}

fn reduce(ctx: &mut Context, path: &Path, max_parties: usize) -> CliResult<Outcome> {
    let (g, mut text) = load_graph(ctx, path)?;
    let opts = ReductionOptions { max_parties, ..Default::default() };
    let reduced = universal_reduction(&g, &opts)?;
    let before = entropy_vector(&g, &opts.min_cut)?;
    let after = entropy_vector(&reduced, &opts.min_cut)?;
    let preserved = before == after;
    let graph_json = graph_to_json(&reduced);
    text.push(serde_json::to_string_pretty(&graph_json).expect("serializable"));
    text.push(if preserved { "entropies preserved".into() } else { "entropies CHANGED".into() });
    let status = if preserved { Status::Pass } else { Status::Fail };
    Ok(Outcome {
        status,
        text,
        result: json!({"graph": graph_json, "entropies_preserved": preserved}),
        parameters: json!({"max_parties": max_parties}),
    })
}

fn ray_json(ctx: &Context, r: &RayEntry) -> Value {
    json!({
        "name": r.name,
        "n": r.n,
        "bulk_vertices": r.bulk_count(),
        "provenance": r.provenance,
        "expected": r.expected.as_ref().map(|v| v.entries().iter().map(|x| ctx.num(x)).collect::<Vec<_>>()),
        "graph": graph_to_json(&r.hypergraph),
    })
}

fn rays(ctx: &mut Context, action: &RaysAction) -> CliResult<Outcome> {
    match action {
        RaysAction::List => {
            let mut text = Vec::new();
            let mut list = Vec::new();
            for r in builtin_rays() {
                let v = r.expected.as_ref().map_or(String::new(), |v| {
                    v.entries().iter().map(|x| ctx.num(x)).collect::<Vec<_>>().join(",")
                });
                text.push(format!("{:<8} n={} bulk={}  ({})  {}", r.name, r.n, r.bulk_count(), v, r.provenance));
                list.push(ray_json(ctx, r));
            }
            Ok(Outcome { status: Status::Pass, text, result: json!({"rays": list}), parameters: json!({}) })
        }
        RaysAction::Check { name, against, file } => {
            let ray = match file {
                Some(path) => {
                    let text = ctx.read(path)?;
                    load_rays(&text)?
                        .into_iter()
                        .find(|r| r.name.eq_ignore_ascii_case(name))
                        .ok_or_else(|| CliError::Usage(format!("no ray `{name}` in {}", path.display())))?
                }
                None => find_ray(name).cloned().ok_or_else(|| CliError::Usage(format!("unknown ray `{name}`")))?,
            };
            let s = match &ray.expected {
                Some(v) => v.clone(),
                None => entropy_vector(&ray.hypergraph, &MinCutOptions::default())?,
            };
            let set = inequality_set(against, ray.n)?;
            let facets = saturated_facets(&s, &set)?;
            let mut text = Vec::new();
            let mut status = Status::Pass;
            for f in &facets {
                if f.status == hypercone::Saturation::Violated {
                    status = Status::Fail;
                }
                text.push(format!("{} {}: Q·S = {}", f.name, f.status.as_str(), ctx.num(&f.value)));
            }
            let count = |st| facets.iter().filter(|f| f.status == st).count();
            text.push(format!(
                "{}: {} saturated, {} strict, {} violated",
                ray.name,
                count(hypercone::Saturation::Saturated),
                count(hypercone::Saturation::Strict),
                count(hypercone::Saturation::Violated)
            ));
            let rows: Vec<Value> = facets
                .iter()
                .map(|f| json!({"name": f.name, "value": ctx.num(&f.value), "status": f.status.as_str()}))
                .collect();
            Ok(Outcome {
                status,
                text,
                result: json!({"ray": ray.name, "against": against, "facets": rows}),
                parameters: json!({"against": against}),
            })
        }
        RaysAction::Load { file } => {
            let content = ctx.read(file)?;
            let rays = load_rays(&content)?;
            let mut text = Vec::new();
            let mut rows = Vec::new();
            let mut status = Status::Pass;
            for r in &rays {
                let scale = match &r.expected {
                    Some(v) if !v.is_zero() => is_realization(&r.hypergraph, v)?,
                    _ => None,
                };
                if scale.is_none() {
                    status = Status::Fail;
                }
                let scale_text = scale.as_ref().map(|c| ctx.num(c));
                text.push(format!(
                    "{:<12} n={} bulk={} {}",
                    r.name,
                    r.n,
                    r.bulk_count(),
                    scale_text.as_ref().map_or("NOT a realization".to_string(), |c| format!("realizes with scale {c}"))
                ));
                rows.push(json!({"name": r.name, "bulk_vertices": r.bulk_count(), "scale": scale_text}));
            }
            let census = bulk_census(&rays);
            text.push(format!(
                "bulk-vertex census: {}",
                census.iter().map(|(b, c)| format!("{b}: {c}")).collect::<Vec<_>>().join(", ")
            ));
            let census_json: Vec<Value> = census.iter().map(|(b, c)| json!({"bulk": b, "count": c})).collect();
            Ok(Outcome {
                status,
                text,
                result: json!({"rays": rows, "census": census_json}),
                parameters: json!({}),
            })
        }
    }
}

fn parse(_ctx: &mut Context, expr: &str, n: usize) -> CliResult<Outcome> {
    let ineq = parse_inequality(expr, n)?;
    let occ = ineq.occurrence_vectors()?;
    let labels = hypercone::subsystem::party_labels(n);
    let mut text = vec![
        ineq.to_string(),
        format!(
            "L={} R={} alpha_T={} beta_T={}",
            ineq.l(),
            ineq.r(),
            hypercone::rational::format_rational(&ineq.alpha_total()),
            hypercone::rational::format_rational(&ineq.beta_total())
        ),
    ];
    let q: Vec<String> = ineq.to_q().entries().iter().map(hypercone::rational::format_rational).collect();
    text.push(format!("Q = {{{}}}", q.join(",")));
    let mut occurrence = Vec::new();
    for (p, label) in labels.iter().enumerate() {
        text.push(format!("x^{label} = {}  y^{label} = {}", occ.lhs[p], occ.rhs[p]));
        occurrence.push(json!({"party": label, "x": occ.lhs[p].to_string(), "y": occ.rhs[p].to_string()}));
    }
    let mut result = inequality_to_json(&ineq);
    result["L"] = json!(ineq.l());
    result["R"] = json!(ineq.r());
    result["occurrence_vectors"] = json!(occurrence);
    Ok(Outcome { status: Status::Pass, text, result, parameters: json!({"n": n}) })
}
