use std::fs;
use std::path::Path;

use altpath_core::json::{
    graph_from_json, graph_or_matrix_from_json, matching_to_json, matrix_from_json, matrix_to_json,
    simple_graph_from_json, simple_graph_to_json, spec_from_name, spec_to_json,
};
use altpath_core::pathinv::gf2_parity_inverse_with;
use altpath_core::pattern::{find_isomorphic, CoronaPair, Pendant, FAMILY_MAX_K};
use altpath_core::treegen::tree_biadjacency;
use altpath_core::verify::{replay, run_sweep, Check, Suite, SweepConfig, SweepReport};
use altpath_core::{
    certify_tree, check_theorem3, count_perfect_matchings, generate_family_fk, inverse_tree_graph, is_corona,
    outer_inverse_check, path_inverse_with, path_matrix, peel_unique_matching, BipartiteGraph, Error, Execution,
    Matching, Matrix, PathInverseOptions, RingSpec, RingValue,
};
use serde_json::{json, Value};

use crate::report::{CliError, CliResult, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Signed sums over alternating paths.
    Paths,
    /// Forward substitution.
    Oracle,
    Both,
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn dims(a: &Matrix) -> String {
    format!("{}x{} {} matrix", a.rows(), a.cols(), a.spec().kind_name())
}

fn graph_summary(g: &BipartiteGraph) -> String {
    format!("bipartite graph {}+{} vertices, {} edges", g.rows(), g.cols(), g.edge_count())
}

pub fn invert(file: &Path, method: Method, ring: Option<&str>, max_order: Option<usize>) -> CliResult<RunReport> {
    let mut doc = read_json(file)?;
    if let (Some(obj), Some(name)) = (doc.as_object_mut(), ring) {
        obj.insert("spec".into(), spec_to_json(spec_from_name(name)?));
    }
    let a = matrix_from_json(&doc)?;
    let opts = match max_order {
        Some(max_order) => PathInverseOptions { max_order, ..Default::default() },
        None => PathInverseOptions::default(),
    };
    let mut report = RunReport::new("invert", 0);
    report.instance = dims(&a);
    let paths = match method {
        Method::Oracle => None,
        _ => Some(path_inverse_with(&a, &opts)?),
    };
    let oracle = match method {
        Method::Paths => None,
        _ => Some(a.forward_substitution_inverse()?),
    };
    let mut results = json!({"method": format!("{method:?}").to_lowercase()});
    if let Some(b) = &paths {
        results["paths"] = matrix_to_json(b);
    }
    if let Some(b) = &oracle {
        results["oracle"] = matrix_to_json(b);
    }
    if let (Some(p), Some(o)) = (&paths, &oracle) {
        let identity = Matrix::identity(a.spec(), a.rows());
        let equal = p == o;
        results["equal"] = json!(equal);
        let mut checks = vec![
            Check::new("path_inverse.equals_forward_substitution", equal),
            Check::new("path_inverse.left_inverse", p.matmul(&a)? == identity),
            Check::new("path_inverse.right_inverse", a.matmul(p)? == identity),
        ];
        if a.spec() == RingSpec::Gf2 {
            let parity = gf2_parity_inverse_with(&a, &opts)?;
            checks.push(Check::new("gf2_parity.equals_forward_substitution", &parity == o));
        }
        report.push_checks(&checks);
    }
    report.results = results;
    Ok(report)
}

pub fn path_matrix_cmd(file: &Path) -> CliResult<RunReport> {
    let doc = graph_from_json(&read_json(file)?)?;
    let mm = doc.matching.ok_or_else(|| CliError::Input("path-matrix needs a \"matching\" field".into()))?;
    let a = doc.graph.to_matrix();
    let t = certify_tree(&a);
    let b = path_matrix(&t, &mm)?;
    let mut report = RunReport::new("path-matrix", 0);
    report.instance = format!("{}, matching of size {}", graph_summary(&doc.graph), mm.len());
    let mut checks = vec![Check::new("path_matrix.outer_inverse", outer_inverse_check(&a, &b)?)];
    if mm.is_perfect(&doc.graph) {
        let identity = Matrix::identity(a.spec(), a.rows());
        checks.push(Check::new(
            "path_matrix.perfect_matching_inverse",
            a.matmul(&b)? == identity && b.matmul(&a)? == identity,
        ));
    }
    report.push_checks(&checks);
    report.results = json!({
        "matching": matching_to_json(&mm),
        "path_matrix": matrix_to_json(&b),
    });
    Ok(report)
}

pub fn peel(file: &Path, exhaustive: bool) -> CliResult<RunReport> {
    let g = graph_or_matrix_from_json(&read_json(file)?)?.graph;
    let mut report = RunReport::new("peel", 0);
    report.instance = graph_summary(&g);
    let count = if exhaustive { Some(count_perfect_matchings(&g)?) } else { None };
    let mut results = json!({});
    let peeled = match peel_unique_matching(&g) {
        Ok(p) => {
            let permuted = p.permute(&g.to_matrix());
            report.push_checks(&[Check::new("peel.lower_triangular", permuted.is_lower_triangular()?)]);
            results["matching"] = matching_to_json(&p.matching);
            results["row_order"] = json!(one_based(&p.row_order));
            results["col_order"] = json!(one_based(&p.col_order));
            results["permuted"] = matrix_to_json(&permuted);
            true
        }
        Err(e @ Error::NoUniquePerfectMatching { .. }) if exhaustive => {
            results["diagnosis"] = json!(e.to_string());
            false
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(count) = count {
        results["perfect_matchings"] = json!(count);
        report.push_checks(&[Check::new("peel.agrees_with_enumeration", peeled == (count == 1))]);
    }
    report.results = results;
    Ok(report)
}

fn witness_json(witness: &Option<Vec<CoronaPair>>) -> Value {
    match witness {
        None => Value::Null,
        Some(pairs) => pairs
            .iter()
            .map(|p| {
                let side = match p.pendant {
                    Pendant::Row => "row",
                    Pendant::Col => "col",
                };
                json!({"row": p.row + 1, "col": p.col + 1, "pendant": side})
            })
            .collect(),
    }
}

fn pattern_results(a: &Matrix, report: &mut RunReport) -> CliResult<Value> {
    let t3 = check_theorem3(a)?;
    let mut results = json!({
        "nonnegative": t3.nonnegative,
        "lower_triangular": t3.lower_triangular,
        "contraction_bipartite": t3.contraction_bipartite,
        "applies": t3.applies,
        "pattern_preserved": t3.pattern_preserved,
        "corona": t3.corona,
    });
    if t3.lower_triangular {
        let g = BipartiteGraph::from_matrix(a);
        results["witness"] = witness_json(&is_corona(&g, &Matching::diagonal(&g)?)?.witness);
    }
    if let Some(holds) = t3.equivalence_holds() {
        report.push_checks(&[Check::new("corona.pattern_preserved_iff_corona", holds)]);
    }
    Ok(results)
}

pub fn corona_check(file: &Path) -> CliResult<RunReport> {
    let doc = read_json(file)?;
    let mut report = RunReport::new("corona-check", 0);
    if doc.get("entries").is_some() {
        let a = matrix_from_json(&doc)?;
        report.instance = dims(&a);
        report.results = pattern_results(&a, &mut report)?;
        return Ok(report);
    }
    let g = graph_from_json(&doc)?;
    report.instance = graph_summary(&g.graph);
    match g.matching {
        Some(mm) => {
            let d = is_corona(&g.graph, &mm)?;
            report.results = json!({"corona": d.is_corona, "witness": witness_json(&d.witness)});
        }
        None => {
            let p = peel_unique_matching(&g.graph)?;
            let a = p.permute(&g.graph.to_matrix());
            let mut results = pattern_results(&a, &mut report)?;
            results["row_order"] = json!(one_based(&p.row_order));
            results["col_order"] = json!(one_based(&p.col_order));
            report.results = results;
        }
    }
    Ok(report)
}

pub fn fk_gen(k: usize) -> CliResult<RunReport> {
    let family = generate_family_fk(k)?;
    let mut report = RunReport::new("fk-gen", 0);
    report.instance = format!("F_{k}: {} graphs on {} vertices", family.len(), 2 * k);
    report.results = json!({
        "k": k,
        "count": family.len(),
        "members": family.iter().map(simple_graph_to_json).collect::<Vec<_>>(),
    });
    Ok(report)
}

/// Matrix document, bipartite graph document, or a plain tree with unit
/// weights.
fn tree_matrix(doc: &Value) -> CliResult<Matrix> {
    if doc.get("entries").is_some() {
        Ok(matrix_from_json(doc)?)
    } else if doc.get("m").is_some() {
        Ok(graph_from_json(doc)?.graph.to_matrix())
    } else {
        let tree = simple_graph_from_json(doc)?;
        Ok(tree_biadjacency(&tree, RingSpec::Rational, || RingValue::one(RingSpec::Rational))?.matrix)
    }
}

pub fn tree_inverse(file: &Path) -> CliResult<RunReport> {
    let a = tree_matrix(&read_json(file)?)?;
    let inv = inverse_tree_graph(&a)?;
    let mut report = RunReport::new("tree-inverse", 0);
    report.instance = format!("tree on {} vertices", a.rows() + a.cols());
    let mut results = json!({"tree": matrix_to_json(&a), "inverse_graph": simple_graph_to_json(&inv)});
    let k = a.rows();
    if (1..=FAMILY_MAX_K).contains(&k) {
        let family = generate_family_fk(k)?;
        let hit = find_isomorphic(&family, &inv)?;
        results["family_size"] = json!(family.len());
        results["family_member"] = json!(hit.map(|i| i + 1));
        report.push_checks(&[Check::new("inverse_tree.graph_in_family", hit.is_some())]);
    }
    report.results = results;
    Ok(report)
}

pub struct SweepArgs<'a> {
    pub suite: Option<Suite>,
    pub max_n: Option<usize>,
    pub seed: u64,
    pub count: Option<usize>,
    pub ring: Option<&'a str>,
    pub replay: Option<&'a Path>,
    pub size_limit: Option<usize>,
    pub execution: Execution,
}

/// Default `max_n` of a sweep when the flag is omitted.
pub fn default_max_n(suite: Suite) -> usize {
    match suite {
        Suite::Thm21 => 8,
        Suite::Thm31 => 6,
        Suite::Thm41 | Suite::Thm42 | Suite::Fk => 10,
    }
}

pub fn sweep(args: &SweepArgs) -> CliResult<RunReport> {
    if let Some(path) = args.replay {
        return replay_cmd(path);
    }
    let suite = args.suite.ok_or_else(|| CliError::Input("sweep needs --suite or --replay".into()))?;
    let max_n = args.max_n.unwrap_or_else(|| default_max_n(suite));
    let count = args.count.unwrap_or(if suite.is_exhaustive() { 1 } else { 50 });
    let cfg = SweepConfig {
        ring: args.ring.map(spec_from_name).transpose()?,
        size_limit: args.size_limit,
        execution: args.execution,
        ..SweepConfig::new(suite, max_n, args.seed, count)
    };
    let sweep = run_sweep(&cfg)?;
    let mut report = RunReport::new("sweep", args.seed);
    report.instance = format!("{suite}: {} instances, max_n {max_n}", sweep.instances.len());
    report.checks = tally(&sweep);
    report.results = json!({
        "suite": suite.name(),
        "max_n": max_n,
        "count": count,
        "ring": cfg.ring.map(spec_to_json),
        "instances": sweep.instances.iter().map(|i| i.to_json()).collect::<Vec<_>>(),
        "aggregate": sweep.aggregate.iter().map(Check::to_json).collect::<Vec<_>>(),
        "failures": sweep
            .failures()
            .map(|i| json!({"index": i.index, "summary": i.summary, "instance": i.instance}))
            .collect::<Vec<_>>(),
    });
    Ok(report)
}

/// One entry per check name, in order of first appearance.
fn tally(sweep: &SweepReport) -> Vec<Value> {
    let mut names: Vec<(String, usize, usize, Option<String>)> = Vec::new();
    for c in sweep.instances.iter().flat_map(|i| &i.checks).chain(&sweep.aggregate) {
        let k = match names.iter().position(|n| n.0 == c.name) {
            Some(k) => k,
            None => {
                names.push((c.name.clone(), 0, 0, None));
                names.len() - 1
            }
        };
        let entry = &mut names[k];
        entry.1 += 1;
        if !c.passed {
            entry.2 += 1;
            if entry.3.is_none() {
                entry.3 = c.detail.clone();
            }
        }
    }
    names
        .into_iter()
        .map(|(name, runs, failed, detail)| {
            let mut v = json!({"name": name, "passed": failed == 0, "runs": runs, "failed": failed});
            if let Some(d) = detail {
                v["detail"] = json!(d);
            }
            v
        })
        .collect()
}

/// Accepts an instance document or a whole sweep report, in which case the
/// first failing instance is replayed.
fn replay_cmd(path: &Path) -> CliResult<RunReport> {
    let doc = read_json(path)?;
    let instance = match doc.pointer("/results/failures") {
        Some(failures) => failures
            .get(0)
            .and_then(|f| f.get("instance"))
            .cloned()
            .ok_or_else(|| CliError::Input("the report has no failing instance to replay".into()))?,
        None => doc,
    };
    let outcome = replay(&instance)?;
    let seed = instance.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let mut report = RunReport::new("sweep", seed);
    report.instance = outcome.summary.clone();
    report.push_checks(&outcome.checks);
    report.results = json!({"replayed": outcome.to_json(), "instance": instance});
    Ok(report)
}
