//! Property checks on single instances and seeded sweeps over many of them.
//!
//! Each suite turns a seed into a deterministic list of instances, checks
//! each one and reports the outcome per instance. Instance `i` draws from its
//! own ChaCha8 stream (`seed`, stream `i`), so instances can be checked in
//! parallel and any one of them can be regenerated or replayed alone.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use serde_json::{json, Value};

use crate::bigraph::{alternating_paths_from, peel_unique_matching, BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::json::{matching_to_json, matrix_from_json, matrix_to_json};
use crate::matrix::{Matrix, PatternMatrix};
use crate::par::{map_range, map_slice, Execution};
use crate::pathinv::{gf2_parity_inverse, path_inverse_with, PathInverseOptions, DEFAULT_MAX_ORDER};
use crate::pattern::{check_theorem3, find_isomorphic, generate_family_fk, inverse_tree_graph, FAMILY_MAX_K};
use crate::random::{
    positive_weighting, random_invertible, random_lower_triangular, random_positive_rational, InstanceRng,
};
use crate::ring::{RingSpec, RingValue};
use crate::treegen::{
    certify_tree, enumerate_matchings, induced_forest, nonisomorphic_trees, path_matrix, tree_biadjacency,
};

/// Positive weightings drawn per pattern when deciding the pattern of an
/// inverse.
pub const WEIGHTINGS_PER_PATTERN: usize = 20;

/// The generator for instance `index` of a sweep seeded with `seed`.
pub fn instance_rng(seed: u64, index: usize) -> InstanceRng {
    let mut rng = InstanceRng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

// ---------------------------------------------------------------------------
// Checks

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// What went wrong, for failed checks.
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check { name: name.to_string(), passed, detail: None }
    }

    pub fn with_detail(name: &str, passed: bool, detail: Option<String>) -> Self {
        Check { name: name.to_string(), passed, detail: if passed { None } else { detail } }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "passed": self.passed});
        if let Some(d) = &self.detail {
            v["detail"] = json!(d);
        }
        v
    }
}

// ---------------------------------------------------------------------------
// Triangular inverses

/// Path inverse against forward substitution and both identity products;
/// for GF(2) with unit diagonal also the parity rule.
pub fn check_triangular_inverse(a: &Matrix, execution: Execution) -> Result<Vec<Check>> {
    let opts = PathInverseOptions { max_order: a.rows().max(DEFAULT_MAX_ORDER), execution };
    let paths = path_inverse_with(a, &opts)?;
    let oracle = a.forward_substitution_inverse()?;
    let id = Matrix::identity(a.spec(), a.rows());
    let mut checks = vec![
        Check::new("path_inverse.equals_forward_substitution", paths == oracle),
        Check::new("path_inverse.left_inverse", paths.matmul(a)? == id),
        Check::new("path_inverse.right_inverse", a.matmul(&paths)? == id),
    ];
    if a.spec() == RingSpec::Gf2 {
        checks.push(Check::new("gf2_parity.equals_forward_substitution", gf2_parity_inverse(a)? == oracle));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Pattern preservation

/// Every unit lower triangular 0/1 pattern of order `n`, in binary order of
/// the strictly lower entries (row by row).
pub fn lower_triangular_patterns(n: usize) -> impl Iterator<Item = PatternMatrix> {
    let below: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let total = 1u64 << below.len();
    (0..total).map(move |mask| {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        for (k, &(i, j)) in below.iter().enumerate() {
            if mask >> k & 1 == 1 {
                bits[i * n + j] = true;
            }
        }
        PatternMatrix::new(n, n, bits).expect("square bits")
    })
}

/// For a given matching, whether all alternating paths between the same
/// pair `(C_i, R_j)` have the same length mod 4.
pub fn alternating_lengths_coherent(g: &BipartiteGraph, mm: &Matching) -> bool {
    (0..g.cols()).all(|c| {
        let mut residue: BTreeMap<usize, usize> = BTreeMap::new();
        alternating_paths_from(g, mm, c)
            .iter()
            .all(|p| *residue.entry(p.end_row()).or_insert(p.len() % 4) == p.len() % 4)
    })
}

/// Pattern of the alternating-path relation: `(i, j)` is set when some
/// alternating path joins `C_i` to `R_j`.
pub fn path_pattern(g: &BipartiteGraph, mm: &Matching) -> PatternMatrix {
    let (rows, cols) = (g.rows(), g.cols());
    let mut bits = vec![false; cols * rows];
    for c in 0..cols {
        for p in alternating_paths_from(g, mm, c) {
            bits[c * rows + p.end_row()] = true;
        }
    }
    PatternMatrix::new(cols, rows, bits).expect("sized")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternOutcome {
    /// The hypotheses (positive weights, lower triangular, `G/M` bipartite) hold.
    pub applies: bool,
    pub corona: bool,
    /// Pattern of `A^-1`: the union over all weightings (only the first when
    /// the hypotheses fail).
    pub inverse_pattern: PatternMatrix,
    pub checks: Vec<Check>,
}

/// Checks the pattern-preservation characterisation on several weightings
/// of one lower triangular pattern. All weightings must share a pattern.
pub fn check_pattern_weightings(weightings: &[Matrix]) -> Result<PatternOutcome> {
    let first = weightings.first().ok_or_else(|| Error::InvalidValue("no weightings given".into()))?;
    let pattern = first.pattern();
    if weightings.iter().any(|w| w.pattern() != pattern) {
        return Err(Error::InvalidValue("weightings do not share a pattern".into()));
    }
    // Every hypothesis but nonnegativity depends on the pattern alone.
    let report = check_theorem3(first)?;
    let nonnegative =
        weightings.iter().all(|w| w.iter_rows().flatten().all(|v| !v.as_rational().is_none_or(|r| r.is_negative())));
    let applies = report.applies && nonnegative;
    let corona = report.corona.unwrap_or(false);

    let draws = if applies { weightings } else { &weightings[..1] };
    let inverses: Vec<PatternMatrix> =
        draws.iter().map(|w| w.forward_substitution_inverse().map(|b| b.pattern())).collect::<Result<_>>()?;
    let mut union = inverses[0].clone();
    for p in &inverses[1..] {
        union = union.union(p)?;
    }
    let mut checks = Vec::new();
    if applies {
        let preserved = union == pattern;
        checks.push(Check::with_detail(
            "corona.pattern_preserved_iff_corona",
            preserved == corona,
            Some(format!("pattern preserved: {preserved}, corona: {corona}")),
        ));
        if corona {
            checks.push(Check::new("corona.preserves_every_weighting", inverses.iter().all(|p| *p == pattern)));
        }
        let g = BipartiteGraph::from_matrix(first);
        let mm = Matching::diagonal(&g)?;
        checks.push(Check::new("corona.alternating_lengths_agree_mod4", alternating_lengths_coherent(&g, &mm)));
        let reachable = path_pattern(&g, &mm);
        checks.push(Check::new("corona.no_cancellation", inverses.iter().all(|p| *p == reachable)));
    }
    Ok(PatternOutcome { applies, corona, inverse_pattern: union, checks })
}

// ---------------------------------------------------------------------------
// Path matrices of trees

/// Which matching pairs [`check_tree_identities`] runs through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairScope {
    /// Only pairs with `M2 ⊆ M1`.
    Nested,
    /// Every pair.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOutcome {
    pub matchings: usize,
    /// Unordered pairs checked, each in both orders.
    pub pairs: u64,
    /// Pairs whose products differ from the path matrix of the intersection.
    pub failed_pairs: u64,
    pub nested_pairs: u64,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct PairTally {
    pairs: u64,
    failed: u64,
    nested: u64,
    nested_failed: u64,
    first: Option<String>,
    first_nested: Option<String>,
}

/// Runs the path-matrix identities on one weighted tree over every matching:
/// each `B` is an outer inverse of `A`, equals the padded inverse of its
/// induced forest, and is a two-sided inverse when the matching is perfect;
/// for pairs in `scope`, `B1 A B2 = B2 A B1 = B(M1 ∩ M2)`, which is `B2` when
/// `M2 ⊆ M1`.
pub fn check_tree_identities(a: &Matrix, scope: PairScope, execution: Execution) -> Result<TreeOutcome> {
    let t = certify_tree(a);
    if !t.certified_tree {
        return Err(Error::NotATree);
    }
    let (m, n) = (a.rows(), a.cols());
    let matchings = enumerate_matchings(&t.graph)?;
    let edge_bit: HashMap<(usize, usize), u32> =
        t.graph.edges().enumerate().map(|(k, (r, c, _))| ((r, c), k as u32)).collect();
    let masks: Vec<u64> =
        matchings.iter().map(|mm| mm.pairs().iter().fold(0u64, |acc, p| acc | 1 << edge_bit[p])).collect();
    let by_mask: HashMap<u64, usize> = masks.iter().enumerate().map(|(k, &mask)| (mask, k)).collect();

    let bs: Vec<Matrix> =
        map_slice(execution, &matchings, |mm| path_matrix(&t, mm)).into_iter().collect::<Result<_>>()?;
    let bas: Vec<Matrix> = map_slice(execution, &bs, |b| b.matmul(a)).into_iter().collect::<Result<_>>()?;

    let show = |k: usize| matching_to_json(&matchings[k]).to_string();
    let first_failure = |bad: Vec<Option<String>>| bad.into_iter().flatten().next();

    let outer = first_failure(map_range(execution, matchings.len(), |k| match bas[k].matmul(&bs[k]) {
        Ok(bab) if bab == bs[k] => None,
        _ => Some(format!("BAB != B for matching {}", show(k))),
    }));

    let block = first_failure(map_range(execution, matchings.len(), |k| {
        let ok = induced_forest(&t, &matchings[k]).and_then(|f| {
            let inv = f.matrix.forward_substitution_inverse()?;
            Ok(inv.embed_into(n, m, &f.cols, &f.rows)? == bs[k])
        });
        (!matches!(ok, Ok(true))).then(|| format!("B is not the padded forest inverse for matching {}", show(k)))
    }));

    let perfect = first_failure(map_range(execution, matchings.len(), |k| {
        if m != n || matchings[k].len() != m {
            return None;
        }
        let id = Matrix::identity(a.spec(), m);
        let ok = bas[k] == id && a.matmul(&bs[k]).map(|ab| ab == id).unwrap_or(false);
        (!ok).then(|| format!("B is not a two-sided inverse for perfect matching {}", show(k)))
    }));

    let rows: Vec<PairTally> = map_range(execution, matchings.len(), |k| {
        let mut tally = PairTally::default();
        for l in k..matchings.len() {
            let meet = masks[k] & masks[l];
            let nested = meet == masks[l] || meet == masks[k];
            if scope == PairScope::Nested && !nested {
                continue;
            }
            let target = &bs[by_mask[&meet]];
            let ok = matches!(bas[k].matmul(&bs[l]), Ok(p) if p == *target)
                && matches!(bas[l].matmul(&bs[k]), Ok(q) if q == *target);
            let detail = || format!("M1 = {}, M2 = {}", show(k), show(l));
            tally.pairs += 1;
            if !ok {
                tally.failed += 1;
                tally.first.get_or_insert_with(detail);
            }
            if nested {
                tally.nested += 1;
                if !ok {
                    tally.nested_failed += 1;
                    tally.first_nested.get_or_insert_with(detail);
                }
            }
        }
        tally
    });
    let mut total = PairTally::default();
    for t in rows {
        total.pairs += t.pairs;
        total.failed += t.failed;
        total.nested += t.nested;
        total.nested_failed += t.nested_failed;
        total.first = total.first.or(t.first);
        total.first_nested = total.first_nested.or(t.first_nested);
    }

    let mut checks = vec![
        Check::with_detail("path_matrix.outer_inverse", outer.is_none(), outer),
        Check::with_detail("path_matrix.padded_forest_inverse", block.is_none(), block),
        Check::with_detail("path_matrix.perfect_matching_inverse", perfect.is_none(), perfect),
        Check::with_detail(
            "path_matrix.nested_products_equal_smaller",
            total.nested_failed == 0,
            total
                .first_nested
                .map(|d| format!("{} of {} nested pairs fail, first {d}", total.nested_failed, total.nested)),
        ),
    ];
    if scope == PairScope::All {
        checks.push(Check::with_detail(
            "path_matrix.products_equal_intersection",
            total.failed == 0,
            total.first.map(|d| format!("{} of {} pairs fail, first {d}", total.failed, total.pairs)),
        ));
    }
    let (pairs, failed_pairs, nested_pairs) = (total.pairs, total.failed, total.nested);
    Ok(TreeOutcome { matchings: matchings.len(), pairs, failed_pairs, nested_pairs, checks })
}

/// A weight generator for tree edges: positive rationals, or units of the
/// other rings.
pub fn tree_weight(rng: &mut InstanceRng, spec: RingSpec) -> RingValue {
    match spec {
        RingSpec::Rational => RingValue::Rational(random_positive_rational(rng)),
        _ => random_invertible(rng, spec),
    }
}

// ---------------------------------------------------------------------------
// Inverses of trees

/// The graph of `A^-1` for a tree with a perfect matching lies in the family
/// for `k = (m + n) / 2`.
pub fn check_tree_inverse_family(a: &Matrix, family: &[SimpleGraph]) -> Result<(Check, Option<usize>)> {
    let inv = inverse_tree_graph(a)?;
    let hit = find_isomorphic(family, &inv)?;
    Ok((Check::new("inverse_tree.graph_in_family", hit.is_some()), hit))
}

fn has_perfect_matching(tree: &SimpleGraph) -> bool {
    let n = tree.vertex_count();
    n.is_multiple_of(2)
        && tree_biadjacency(tree, RingSpec::Rational, || RingValue::one(RingSpec::Rational))
            .map(|l| peel_unique_matching(&BipartiteGraph::from_matrix(&l.matrix)).is_ok())
            .unwrap_or(false)
}

/// The trees with a perfect matching on `2k` vertices.
pub fn trees_with_perfect_matching(k: usize) -> Vec<SimpleGraph> {
    nonisomorphic_trees(2 * k).into_iter().filter(has_perfect_matching).collect()
}

// ---------------------------------------------------------------------------
// Sweeps

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Path inverse against forward substitution on random triangular matrices.
    Thm21,
    /// Pattern preservation against the corona test on random patterns.
    Thm31,
    /// Nested matching pairs on every small tree.
    Thm41,
    /// All matching pairs on every small tree.
    Thm42,
    /// Inverse graphs of trees against the generated family.
    Fk,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Thm21, Suite::Thm31, Suite::Thm41, Suite::Thm42, Suite::Fk];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm21 => "thm21",
            Suite::Thm31 => "thm31",
            Suite::Thm41 => "thm41",
            Suite::Thm42 => "thm42",
            Suite::Fk => "fk",
        }
    }

    /// Largest `max_n` accepted without an explicit override.
    pub fn default_limit(self) -> usize {
        match self {
            Suite::Thm21 => DEFAULT_MAX_ORDER,
            Suite::Thm31 => 8,
            Suite::Thm41 => 14,
            Suite::Thm42 => 12,
            Suite::Fk => 2 * FAMILY_MAX_K,
        }
    }

    /// Tree suites go through every tree; `count` is the number of weightings
    /// per tree. The others draw `count` random instances.
    pub fn is_exhaustive(self) -> bool {
        matches!(self, Suite::Thm41 | Suite::Thm42 | Suite::Fk)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite \"{s}\"")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub suite: Suite,
    pub max_n: usize,
    pub seed: u64,
    pub count: usize,
    /// Ring for the random matrices of `thm21` (cycled through all three when
    /// `None`) and for the tree weights (positive rationals when `None`).
    pub ring: Option<RingSpec>,
    /// Replaces the suite's size limit.
    pub size_limit: Option<usize>,
    pub execution: Execution,
}

impl SweepConfig {
    pub fn new(suite: Suite, max_n: usize, seed: u64, count: usize) -> Self {
        SweepConfig { suite, max_n, seed, count, ring: None, size_limit: None, execution: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceOutcome {
    pub index: usize,
    pub summary: String,
    /// Everything needed to re-run the instance; see [`replay`].
    pub instance: Value,
    pub checks: Vec<Check>,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "summary": self.summary,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub suite: Suite,
    pub seed: u64,
    pub instances: Vec<InstanceOutcome>,
    /// Checks about the sweep as a whole rather than one instance.
    pub aggregate: Vec<Check>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(InstanceOutcome::passed) && self.aggregate.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceOutcome> {
        self.instances.iter().filter(|i| !i.passed())
    }

    pub fn check_count(&self) -> usize {
        self.instances.iter().map(|i| i.checks.len()).sum::<usize>() + self.aggregate.len()
    }
}

/// Runs a suite. Instances come back in index order whatever the execution
/// mode.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let limit = cfg.size_limit.unwrap_or_else(|| cfg.suite.default_limit());
    if cfg.max_n > limit {
        return Err(Error::SizeGuard { size: cfg.max_n, limit });
    }
    if cfg.max_n == 0 {
        return Err(Error::InvalidValue("max-n must be positive".into()));
    }
    match cfg.suite {
        Suite::Thm21 => sweep_random(cfg, generate_triangular),
        Suite::Thm31 => sweep_random(cfg, generate_pattern),
        Suite::Thm41 | Suite::Thm42 => sweep_trees(cfg),
        Suite::Fk => sweep_family(cfg),
    }
}

fn instance_doc(suite: Suite, seed: u64, index: usize, matrices: &[Matrix]) -> Value {
    json!({
        "suite": suite.name(),
        "seed": seed,
        "index": index,
        "matrices": matrices.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

fn sweep_random(cfg: &SweepConfig, generate: fn(&SweepConfig, usize) -> Vec<Matrix>) -> Result<SweepReport> {
    let instances = map_range(cfg.execution, cfg.count, |index| {
        let matrices = generate(cfg, index);
        let doc = instance_doc(cfg.suite, cfg.seed, index, &matrices);
        check_instance(cfg.suite, index, doc, &matrices, cfg.execution, None)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { suite: cfg.suite, seed: cfg.seed, instances, aggregate: Vec::new() })
}

const THM21_RINGS: [RingSpec; 3] = [
    RingSpec::Rational,
    RingSpec::Gf2,
    RingSpec::Block(match std::num::NonZeroUsize::new(2) {
        Some(d) => d,
        None => unreachable!(),
    }),
];
const DENSITIES: [f64; 3] = [0.2, 0.5, 1.0];

fn generate_triangular(cfg: &SweepConfig, index: usize) -> Vec<Matrix> {
    let mut rng = instance_rng(cfg.seed, index);
    let spec = cfg.ring.unwrap_or(THM21_RINGS[index % THM21_RINGS.len()]);
    let n = rng.gen_range(1..=cfg.max_n);
    let density = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    vec![random_lower_triangular(&mut rng, spec, n, density)]
}

fn generate_pattern(cfg: &SweepConfig, index: usize) -> Vec<Matrix> {
    let mut rng = instance_rng(cfg.seed, index);
    let n = rng.gen_range(1..=cfg.max_n);
    let density = DENSITIES[rng.gen_range(0..DENSITIES.len())];
    let pattern = random_lower_triangular(&mut rng, RingSpec::Gf2, n, density).pattern();
    (0..WEIGHTINGS_PER_PATTERN).map(|_| positive_weighting(&mut rng, &pattern)).collect()
}

fn tree_instances(cfg: &SweepConfig, trees: &[SimpleGraph]) -> Result<Vec<(usize, Matrix)>> {
    let spec = cfg.ring.unwrap_or(RingSpec::Rational);
    let mut out = Vec::with_capacity(trees.len() * cfg.count);
    for (t, tree) in trees.iter().enumerate() {
        for w in 0..cfg.count {
            let index = t * cfg.count + w;
            let mut rng = instance_rng(cfg.seed, index);
            let layout = tree_biadjacency(tree, spec, || tree_weight(&mut rng, spec))?;
            out.push((index, layout.matrix));
        }
    }
    Ok(out)
}

fn sweep_trees(cfg: &SweepConfig) -> Result<SweepReport> {
    let trees: Vec<SimpleGraph> = (1..=cfg.max_n).flat_map(nonisomorphic_trees).collect();
    let instances = tree_instances(cfg, &trees)?;
    let outcomes = map_slice(cfg.execution, &instances, |(index, a)| {
        let doc = instance_doc(cfg.suite, cfg.seed, *index, std::slice::from_ref(a));
        check_instance(cfg.suite, *index, doc, std::slice::from_ref(a), cfg.execution, None)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { suite: cfg.suite, seed: cfg.seed, instances: outcomes, aggregate: Vec::new() })
}

fn sweep_family(cfg: &SweepConfig) -> Result<SweepReport> {
    let ks: Vec<usize> = (1..=cfg.max_n / 2).collect();
    let families: BTreeMap<usize, Vec<SimpleGraph>> =
        ks.iter().map(|&k| generate_family_fk(k).map(|f| (k, f))).collect::<Result<_>>()?;
    let trees: Vec<SimpleGraph> = ks.iter().flat_map(|&k| trees_with_perfect_matching(k)).collect();
    let instances = tree_instances(cfg, &trees)?;
    let outcomes = map_slice(cfg.execution, &instances, |(index, a)| {
        let doc = instance_doc(cfg.suite, cfg.seed, *index, std::slice::from_ref(a));
        check_instance(cfg.suite, *index, doc, std::slice::from_ref(a), cfg.execution, Some(&families))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut aggregate = Vec::new();
    for &k in &ks {
        let family = &families[&k];
        let mut hit = vec![false; family.len()];
        for (outcome, (_, a)) in outcomes.iter().zip(&instances) {
            if a.rows() + a.cols() == 2 * k {
                if let Some(i) = outcome.instance.get("family_member").and_then(Value::as_u64) {
                    hit[i as usize] = true;
                }
            }
        }
        let missing: Vec<usize> = (0..family.len()).filter(|&i| !hit[i]).map(|i| i + 1).collect();
        aggregate.push(Check::with_detail(
            &format!("inverse_tree.every_member_attained.k{k}"),
            missing.is_empty(),
            Some(format!("members never attained: {missing:?}")),
        ));
    }
    Ok(SweepReport { suite: cfg.suite, seed: cfg.seed, instances: outcomes, aggregate })
}

fn check_instance(
    suite: Suite,
    index: usize,
    mut doc: Value,
    matrices: &[Matrix],
    execution: Execution,
    families: Option<&BTreeMap<usize, Vec<SimpleGraph>>>,
) -> Result<InstanceOutcome> {
    let a = matrices.first().ok_or_else(|| Error::Parse("instance has no matrices".into()))?;
    let (summary, checks) = match suite {
        Suite::Thm21 => {
            let density = if a.rows() < 2 {
                1.0
            } else {
                let below = (0..a.rows()).map(|i| (0..i).filter(|&j| !a.get(i, j).is_zero()).count()).sum::<usize>();
                below as f64 / (a.rows() * (a.rows() - 1) / 2) as f64
            };
            (
                format!("{} {}x{} lower triangular, fill {:.2}", a.spec(), a.rows(), a.cols(), density),
                check_triangular_inverse(a, execution)?,
            )
        }
        Suite::Thm31 => {
            let out = check_pattern_weightings(matrices)?;
            let status = if out.applies { "hypotheses hold" } else { "hypotheses fail, nothing to check" };
            (format!("{}x{} pattern, {} weightings, {status}", a.rows(), a.cols(), matrices.len()), out.checks)
        }
        Suite::Thm41 | Suite::Thm42 => {
            let scope = if suite == Suite::Thm41 { PairScope::Nested } else { PairScope::All };
            let out = check_tree_identities(a, scope, execution)?;
            (
                format!(
                    "tree on {} vertices ({}x{}), {} matchings, {} pairs",
                    a.rows() + a.cols(),
                    a.rows(),
                    a.cols(),
                    out.matchings,
                    out.pairs
                ),
                out.checks,
            )
        }
        Suite::Fk => {
            let k = (a.rows() + a.cols()) / 2;
            let owned;
            let family = match families.and_then(|f| f.get(&k)) {
                Some(f) => f,
                None => {
                    owned = generate_family_fk(k)?;
                    &owned
                }
            };
            let (check, hit) = check_tree_inverse_family(a, family)?;
            if let Some(i) = hit {
                doc["family_member"] = json!(i);
            }
            let found = hit.map_or("none".to_string(), |i| format!("member {}", i + 1));
            (format!("tree on {} vertices, inverse graph matches {found} of {}", 2 * k, family.len()), vec![check])
        }
    };
    Ok(InstanceOutcome { index, summary, instance: doc, checks })
}

/// Re-runs a serialized instance (the `instance` field of an outcome).
pub fn replay(doc: &Value) -> Result<InstanceOutcome> {
    let suite: Suite = doc
        .get("suite")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("replay document needs a \"suite\"".into()))?
        .parse()?;
    let index = doc.get("index").and_then(Value::as_u64).unwrap_or(0) as usize;
    let matrices = doc
        .get("matrices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("replay document needs \"matrices\"".into()))?
        .iter()
        .map(matrix_from_json)
        .collect::<Result<Vec<_>>>()?;
    let mut clean = doc.clone();
    if let Some(obj) = clean.as_object_mut() {
        obj.remove("family_member");
    }
    check_instance(suite, index, clean, &matrices, Execution::default(), None)
}
