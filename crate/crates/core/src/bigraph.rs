//! The weighted bipartite graph `G(A)` of a matrix, matchings on it, and
//! alternating paths.
//!
//! Row vertices are `R_0..R_{m-1}` and column vertices `C_0..C_{n-1}`; there
//! is an edge `R_i - C_j` of weight `a_ij` for every nonzero entry. An
//! alternating path runs from a column vertex to a row vertex, starts and
//! ends with a matching edge, and alternates matching and non-matching edges
//! in between, so its length is odd.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::Matrix;
use crate::ring::{RingSpec, RingValue};

/// Perfect-matching enumeration is only attempted up to this order.
pub const EXHAUSTIVE_MATCHING_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    spec: RingSpec,
    rows: usize,
    cols: usize,
    /// Sorted by column.
    row_adj: Vec<Vec<(usize, RingValue)>>,
    /// Sorted by row.
    col_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Graph with the given weighted edges `(row, col, weight)`.
    pub fn new(
        spec: RingSpec,
        rows: usize,
        cols: usize,
        edges: impl IntoIterator<Item = (usize, usize, RingValue)>,
    ) -> Result<Self> {
        let mut row_adj: Vec<Vec<(usize, RingValue)>> = vec![Vec::new(); rows];
        let mut col_adj = vec![Vec::new(); cols];
        for (i, j, w) in edges {
            if i >= rows || j >= cols {
                return Err(Error::InvalidGraph(format!("edge (R{}, C{}) out of range", i + 1, j + 1)));
            }
            if w.spec() != spec {
                return Err(Error::SpecMismatch { left: spec, right: w.spec() });
            }
            if w.is_zero() {
                return Err(Error::InvalidGraph(format!("edge (R{}, C{}) has zero weight", i + 1, j + 1)));
            }
            if row_adj[i].iter().any(|(c, _)| *c == j) {
                return Err(Error::InvalidGraph(format!("duplicate edge (R{}, C{})", i + 1, j + 1)));
            }
            row_adj[i].push((j, w));
            col_adj[j].push(i);
        }
        for r in &mut row_adj {
            r.sort_by_key(|(c, _)| *c);
        }
        for c in &mut col_adj {
            c.sort_unstable();
        }
        Ok(BipartiteGraph { spec, rows, cols, row_adj, col_adj })
    }

    /// `G(A)`: one edge per nonzero entry.
    pub fn from_matrix(a: &Matrix) -> Self {
        let mut row_adj = vec![Vec::new(); a.rows()];
        let mut col_adj = vec![Vec::new(); a.cols()];
        for (i, row) in a.iter_rows().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    row_adj[i].push((j, v.clone()));
                    col_adj[j].push(i);
                }
            }
        }
        BipartiteGraph { spec: a.spec(), rows: a.rows(), cols: a.cols(), row_adj, col_adj }
    }

    /// Biadjacency matrix; inverse of [`from_matrix`](Self::from_matrix).
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.spec, self.rows, self.cols);
        for (i, j, w) in self.edges() {
            m.set(i, j, w.clone()).expect("edge weights share the graph spec");
        }
        m
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn edge_count(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    /// Edges in (row, col) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &RingValue)> + '_ {
        self.row_adj.iter().enumerate().flat_map(|(i, adj)| adj.iter().map(move |(j, w)| (i, *j, w)))
    }

    pub fn weight(&self, row: usize, col: usize) -> Option<&RingValue> {
        let adj = self.row_adj.get(row)?;
        adj.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &adj[k].1)
    }

    pub fn has_edge(&self, row: usize, col: usize) -> bool {
        self.weight(row, col).is_some()
    }

    pub fn row_neighbors(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_adj[row].iter().map(|(c, _)| *c)
    }

    pub fn col_neighbors(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        self.col_adj[col].iter().copied()
    }

    pub fn row_degree(&self, row: usize) -> usize {
        self.row_adj[row].len()
    }

    pub fn col_degree(&self, col: usize) -> usize {
        self.col_adj[col].len()
    }

    /// Vertex index of `R_i` in [`to_simple_graph`](Self::to_simple_graph).
    pub fn row_vertex(&self, row: usize) -> usize {
        row
    }

    /// Vertex index of `C_j` in [`to_simple_graph`](Self::to_simple_graph).
    pub fn col_vertex(&self, col: usize) -> usize {
        self.rows + col
    }

    /// Unweighted graph with rows first, then columns.
    pub fn to_simple_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.rows + self.cols, self.edges().map(|(i, j, _)| (i, self.rows + j)))
            .expect("bipartite edges are simple")
    }

    pub(crate) fn row_adjacency(&self, row: usize) -> &[(usize, RingValue)] {
        &self.row_adj[row]
    }
}

// ---------------------------------------------------------------------------
// Matchings

/// A set of vertex-disjoint `(row, col)` edges of some graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    /// Sorted by row.
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Validates that every pair is an edge of `g` and that pairs are disjoint.
    pub fn new(g: &BipartiteGraph, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for &(r, c) in &pairs {
            if !g.has_edge(r, c) {
                return Err(Error::InvalidMatching(format!("(R{}, C{}) is not an edge", r + 1, c + 1)));
            }
            if !rows.insert(r) || !cols.insert(c) {
                return Err(Error::InvalidMatching(format!("(R{}, C{}) shares an endpoint", r + 1, c + 1)));
            }
        }
        Ok(Matching { pairs })
    }

    /// `{(R_i, C_i)}` for a square graph with a full diagonal.
    pub fn diagonal(g: &BipartiteGraph) -> Result<Self> {
        if g.rows() != g.cols() {
            return Err(Error::NotBalanced { rows: g.rows(), cols: g.cols() });
        }
        Matching::new(g, (0..g.rows()).map(|i| (i, i)))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.pairs.binary_search(&(row, col)).is_ok()
    }

    pub fn row_mate(&self, row: usize) -> Option<usize> {
        self.pairs.iter().find(|(r, _)| *r == row).map(|(_, c)| *c)
    }

    pub fn col_mate(&self, col: usize) -> Option<usize> {
        self.pairs.iter().find(|(_, c)| *c == col).map(|(r, _)| *r)
    }

    pub fn intersection(&self, other: &Matching) -> Matching {
        Matching { pairs: self.pairs.iter().filter(|p| other.pairs.binary_search(p).is_ok()).copied().collect() }
    }

    pub fn is_subset_of(&self, other: &Matching) -> bool {
        self.pairs.iter().all(|p| other.pairs.binary_search(p).is_ok())
    }

    pub fn is_perfect(&self, g: &BipartiteGraph) -> bool {
        g.rows() == g.cols() && self.len() == g.rows()
    }

    /// Checks every pair is still an edge of `g`.
    pub fn check_against(&self, g: &BipartiteGraph) -> Result<()> {
        match self.pairs.iter().find(|(r, c)| !g.has_edge(*r, *c)) {
            Some((r, c)) => Err(Error::InvalidMatching(format!("(R{}, C{}) is not an edge", r + 1, c + 1))),
            None => Ok(()),
        }
    }

    /// `col -> row` lookup table.
    fn col_mates(&self, cols: usize) -> Vec<Option<usize>> {
        let mut t = vec![None; cols];
        for &(r, c) in &self.pairs {
            t[c] = Some(r);
        }
        t
    }
}

/// Result of peeling: the unique perfect matching and vertex orders under
/// which the permuted matrix is lower triangular with the matching on the
/// diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeling {
    pub matching: Matching,
    /// `row_order[k]` is the original row placed at position `k`.
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
}

impl Peeling {
    /// `P[k][l] = a[row_order[k]][col_order[l]]`.
    pub fn permute(&self, a: &Matrix) -> Matrix {
        a.select(&self.row_order, &self.col_order)
    }
}

/// Finds the unique perfect matching by repeatedly matching a degree-1
/// vertex to its only neighbour.
///
/// A row of degree 1 is the next row from the top of the triangular form; a
/// column of degree 1 is the next column from the right. Fails when no
/// degree-1 vertex is left while vertices remain, which happens exactly when
/// the graph has zero or several perfect matchings.
pub fn peel_unique_matching(g: &BipartiteGraph) -> Result<Peeling> {
    let n = g.rows();
    if n != g.cols() {
        return Err(Error::NotBalanced { rows: n, cols: g.cols() });
    }
    let row_alive = vec![true; n];
    let col_alive = vec![true; n];
    let row_deg: Vec<usize> = (0..n).map(|r| g.row_degree(r)).collect();
    let col_deg: Vec<usize> = (0..n).map(|c| g.col_degree(c)).collect();
    let mut front: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut back: Vec<(usize, usize)> = Vec::new();

    struct Alive {
        row: Vec<bool>,
        col: Vec<bool>,
        row_deg: Vec<usize>,
        col_deg: Vec<usize>,
    }
    impl Alive {
        fn remove(&mut self, g: &BipartiteGraph, r: usize, c: usize) {
            self.row[r] = false;
            self.col[c] = false;
            for c2 in g.row_neighbors(r) {
                if self.col[c2] {
                    self.col_deg[c2] -= 1;
                }
            }
            for r2 in g.col_neighbors(c) {
                if self.row[r2] {
                    self.row_deg[r2] -= 1;
                }
            }
        }
    }
    let mut st = Alive { row: row_alive, col: col_alive, row_deg, col_deg };

    for remaining in (1..=n).rev() {
        if let Some(r) = (0..n).find(|&r| st.row[r] && st.row_deg[r] == 1) {
            let c = g.row_neighbors(r).find(|&c| st.col[c]).expect("degree 1");
            st.remove(g, r, c);
            front.push((r, c));
        } else if let Some(c) = (0..n).find(|&c| st.col[c] && st.col_deg[c] == 1) {
            let r = g.col_neighbors(c).find(|&r| st.row[r]).expect("degree 1");
            st.remove(g, r, c);
            back.push((r, c));
        } else {
            return Err(Error::NoUniquePerfectMatching { remaining });
        }
    }
    let order: Vec<(usize, usize)> = front.into_iter().chain(back.into_iter().rev()).collect();
    Ok(Peeling {
        matching: Matching::new(g, order.iter().copied())?,
        row_order: order.iter().map(|p| p.0).collect(),
        col_order: order.iter().map(|p| p.1).collect(),
    })
}

/// Number of perfect matchings, by backtracking over rows.
pub fn count_perfect_matchings(g: &BipartiteGraph) -> Result<u64> {
    let n = g.rows();
    if n != g.cols() {
        return Ok(0);
    }
    if n > EXHAUSTIVE_MATCHING_LIMIT {
        return Err(Error::SizeGuard { size: n, limit: EXHAUSTIVE_MATCHING_LIMIT });
    }
    fn go(g: &BipartiteGraph, row: usize, used: &mut [bool]) -> u64 {
        if row == g.rows() {
            return 1;
        }
        let mut total = 0;
        for c in g.row_neighbors(row) {
            if !used[c] {
                used[c] = true;
                total += go(g, row + 1, used);
                used[c] = false;
            }
        }
        total
    }
    Ok(go(g, 0, &mut vec![false; n]))
}

// ---------------------------------------------------------------------------
// Alternating paths

/// `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^((len - 1) / 2)` for an odd path length.
    pub fn of_length(len: usize) -> Sign {
        debug_assert!(len % 2 == 1, "alternating paths have odd length");
        if len % 4 == 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply(self, v: &RingValue) -> RingValue {
        match self {
            Sign::Plus => v.clone(),
            Sign::Minus => v.neg(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEdge {
    pub row: usize,
    pub col: usize,
    pub matched: bool,
    pub weight: RingValue,
}

/// Alternating path from a column vertex to a row vertex, edges in traversal
/// order. Edge `k` is traversed column-to-row when `k` is even and
/// row-to-column when `k` is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    edges: Vec<PathEdge>,
}

impl AlternatingPath {
    /// Checks the alternating-path invariants.
    pub fn new(edges: Vec<PathEdge>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidValue(format!("not an alternating path: {why}")));
        if edges.len().is_multiple_of(2) {
            return bad("even length");
        }
        for (k, e) in edges.iter().enumerate() {
            if e.matched != (k % 2 == 0) {
                return bad("edges do not alternate starting and ending with the matching");
            }
        }
        for w in edges.windows(2) {
            let shares = if w[0].matched { w[0].row == w[1].row } else { w[0].col == w[1].col };
            if !shares {
                return bad("consecutive edges are not incident");
            }
        }
        let rows: BTreeSet<usize> = edges.iter().map(|e| e.row).collect();
        let cols: BTreeSet<usize> = edges.iter().map(|e| e.col).collect();
        let k = edges.len().div_ceil(2);
        if rows.len() != k || cols.len() != k {
            return bad("repeated vertex");
        }
        Ok(AlternatingPath { edges })
    }

    pub fn edges(&self) -> &[PathEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start_col(&self) -> usize {
        self.edges[0].col
    }

    pub fn end_row(&self) -> usize {
        self.edges[self.edges.len() - 1].row
    }

    /// `C_start, R, C, ..., R_end`, as `(is_row, index)`.
    pub fn vertices(&self) -> Vec<(bool, usize)> {
        let mut v = vec![(false, self.start_col())];
        for (k, e) in self.edges.iter().enumerate() {
            v.push(if k % 2 == 0 { (true, e.row) } else { (false, e.col) });
        }
        v
    }

    /// `(-1)^((len - 1) / 2)`.
    pub fn sign(&self) -> Sign {
        Sign::of_length(self.len())
    }

    /// `w(e1)^-1 w(e2) w(e3)^-1 ... w(ek)^-1`, multiplied left to right from
    /// the column end.
    pub fn weight(&self) -> Result<RingValue> {
        let spec = self.edges[0].weight.spec();
        let mut acc = RingValue::one(spec);
        for e in &self.edges {
            let factor = if e.matched {
                e.weight.inv().map_err(|_| Error::EdgeNotInvertible { row: e.row, col: e.col })?
            } else {
                e.weight.clone()
            };
            acc = acc.mul(&factor)?;
        }
        Ok(acc)
    }

    /// `sign * weight`.
    pub fn signed_weight(&self) -> Result<RingValue> {
        Ok(self.sign().apply(&self.weight()?))
    }
}

/// All alternating paths starting at `C_from_col`, to any row, in
/// depth-first order with neighbours visited in increasing index order.
pub fn alternating_paths_from(g: &BipartiteGraph, mm: &Matching, from_col: usize) -> Vec<AlternatingPath> {
    let col_mate = mm.col_mates(g.cols());
    let mut out = Vec::new();
    if from_col >= g.cols() {
        return out;
    }
    let mut visited = vec![false; g.cols()];
    let mut stack = Vec::new();
    visited[from_col] = true;
    collect_paths(g, &col_mate, from_col, &mut visited, &mut stack, &mut out);
    out
}

fn collect_paths(
    g: &BipartiteGraph,
    col_mate: &[Option<usize>],
    col: usize,
    visited: &mut [bool],
    stack: &mut Vec<PathEdge>,
    out: &mut Vec<AlternatingPath>,
) {
    let Some(row) = col_mate[col] else { return };
    let weight = g.weight(row, col).expect("matching edges belong to the graph").clone();
    stack.push(PathEdge { row, col, matched: true, weight });
    out.push(AlternatingPath { edges: stack.clone() });
    for (next, w) in g.row_adjacency(row) {
        if *next == col || visited[*next] || col_mate[*next].is_none() {
            continue;
        }
        visited[*next] = true;
        stack.push(PathEdge { row, col: *next, matched: false, weight: w.clone() });
        collect_paths(g, col_mate, *next, visited, stack, out);
        stack.pop();
        visited[*next] = false;
    }
    stack.pop();
}

/// The alternating paths from `C_from_col` to `R_to_row`, in lexicographic
/// order of their vertex sequences.
pub fn enumerate_alternating_paths(
    g: &BipartiteGraph,
    mm: &Matching,
    from_col: usize,
    to_row: usize,
) -> Vec<AlternatingPath> {
    alternating_paths_from(g, mm, from_col).into_iter().filter(|p| p.end_row() == to_row).collect()
}

/// Depth-first walker that accumulates signed path weights (or path counts)
/// from one column vertex to every row vertex without materialising paths.
pub(crate) struct PathWalker<'g> {
    graph: &'g BipartiteGraph,
    col_mate: Vec<Option<usize>>,
    /// Inverse of the matched weight at each matched column.
    matched_inv: Vec<Option<RingValue>>,
}

impl<'g> PathWalker<'g> {
    pub(crate) fn new(graph: &'g BipartiteGraph, mm: &Matching) -> Result<Self> {
        mm.check_against(graph)?;
        let col_mate = mm.col_mates(graph.cols());
        let matched_inv = col_mate
            .iter()
            .enumerate()
            .map(|(c, r)| match r {
                Some(r) => graph
                    .weight(*r, c)
                    .expect("checked")
                    .inv()
                    .map(Some)
                    .map_err(|_| Error::EdgeNotInvertible { row: *r, col: c }),
                None => Ok(None),
            })
            .collect::<Result<_>>()?;
        Ok(PathWalker { graph, col_mate, matched_inv })
    }

    /// Counting needs no inverses.
    pub(crate) fn unweighted(graph: &'g BipartiteGraph, mm: &Matching) -> Result<Self> {
        mm.check_against(graph)?;
        Ok(PathWalker { graph, col_mate: mm.col_mates(graph.cols()), matched_inv: Vec::new() })
    }

    /// `sums[r] = sum over paths P from C_from to R_r of sign(P) w(P)`;
    /// `None` where no path reaches `R_r`.
    pub(crate) fn signed_sums_from(&self, from: usize) -> Result<Vec<Option<RingValue>>> {
        let mut sums = vec![None; self.graph.rows()];
        let mut visited = vec![false; self.graph.cols()];
        visited[from] = true;
        let one = RingValue::one(self.graph.spec());
        self.walk_sums(from, &one, Sign::Plus, &mut visited, &mut sums)?;
        Ok(sums)
    }

    fn walk_sums(
        &self,
        col: usize,
        prefix: &RingValue,
        sign: Sign,
        visited: &mut [bool],
        sums: &mut [Option<RingValue>],
    ) -> Result<()> {
        let (Some(row), Some(inv)) = (self.col_mate[col], &self.matched_inv[col]) else {
            return Ok(());
        };
        let here = prefix.mul(inv)?;
        let term = sign.apply(&here);
        match &mut sums[row] {
            Some(acc) => acc.add_assign(&term)?,
            slot @ None => *slot = Some(term),
        }
        for (next, w) in self.graph.row_adjacency(row) {
            if *next == col || visited[*next] || self.col_mate[*next].is_none() {
                continue;
            }
            visited[*next] = true;
            let step = here.mul(w)?;
            self.walk_sums(*next, &step, sign.flip(), visited, sums)?;
            visited[*next] = false;
        }
        Ok(())
    }

    /// `counts[r]` = number of alternating paths from `C_from` to `R_r`.
    pub(crate) fn counts_from(&self, from: usize) -> Vec<u64> {
        let mut counts = vec![0; self.graph.rows()];
        let mut visited = vec![false; self.graph.cols()];
        visited[from] = true;
        self.walk_counts(from, &mut visited, &mut counts);
        counts
    }

    fn walk_counts(&self, col: usize, visited: &mut [bool], counts: &mut [u64]) {
        let Some(row) = self.col_mate[col] else { return };
        counts[row] += 1;
        for (next, _) in self.graph.row_adjacency(row) {
            if *next == col || visited[*next] || self.col_mate[*next].is_none() {
                continue;
            }
            visited[*next] = true;
            self.walk_counts(*next, visited, counts);
            visited[*next] = false;
        }
    }
}

// ---------------------------------------------------------------------------
// Contraction

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractedVertex {
    /// A fused matching edge `(row, col)`.
    Matched(usize, usize),
    Row(usize),
    Col(usize),
}

/// `G / M`: every matching edge fused to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedGraph {
    pub graph: SimpleGraph,
    /// What each vertex of `graph` stands for.
    pub vertices: Vec<ContractedVertex>,
}

impl ContractedGraph {
    pub fn is_bipartite(&self) -> bool {
        self.graph.is_bipartite()
    }
}

/// Contracts the edges of `mm`. Vertices are numbered matched pairs first (in
/// matching order), then unmatched rows, then unmatched columns.
pub fn contract_matching(g: &BipartiteGraph, mm: &Matching) -> ContractedGraph {
    let mut vertices = Vec::new();
    let mut row_id = vec![usize::MAX; g.rows()];
    let mut col_id = vec![usize::MAX; g.cols()];
    for &(r, c) in mm.pairs() {
        row_id[r] = vertices.len();
        col_id[c] = vertices.len();
        vertices.push(ContractedVertex::Matched(r, c));
    }
    for (r, id) in row_id.iter_mut().enumerate() {
        if *id == usize::MAX {
            *id = vertices.len();
            vertices.push(ContractedVertex::Row(r));
        }
    }
    for (c, id) in col_id.iter_mut().enumerate() {
        if *id == usize::MAX {
            *id = vertices.len();
            vertices.push(ContractedVertex::Col(c));
        }
    }
    let mut graph = SimpleGraph::empty(vertices.len());
    for (r, c, _) in g.edges() {
        let (u, v) = (row_id[r], col_id[c]);
        if u != v {
            graph.add_edge(u, v).expect("ids in range");
        }
    }
    ContractedGraph { graph, vertices }
}

/// `G(A)` together with its diagonal matching, for a square matrix.
pub fn graph_with_diagonal(a: &Matrix) -> Result<(BipartiteGraph, Matching)> {
    let g = BipartiteGraph::from_matrix(a);
    let mm = Matching::diagonal(&g)?;
    Ok((g, mm))
}
