//! Path matrices of weighted trees.
//!
//! For an `m x n` matrix `A` whose graph `T = G(A)` is a tree and any
//! matching `M` of `T`, the path matrix `B` is the `n x m` matrix with
//! `b_ij` the signed weight of the alternating path from `C_i` to `R_j`
//! (zero when there is none). Two vertices of a tree are joined by at most
//! one path, so every entry is a single term.
//!
//! Path matrices are outer inverses (`BAB = B`), and for two matchings
//! `B1 A B2 = B2 A B1` is the path matrix of `M1 ∩ M2`. This module builds
//! them and also enumerates the small trees and matchings used to check those
//! identities exhaustively.

use std::collections::{HashSet, VecDeque};

use crate::bigraph::{peel_unique_matching, BipartiteGraph, Matching, PathWalker};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::Matrix;
use crate::ring::{RingSpec, RingValue};

/// Matchings are enumerated by include/exclude over edges; beyond this many
/// edges that is no longer desk-scale.
pub const MATCHING_ENUMERATION_EDGE_LIMIT: usize = 24;

/// A matrix together with its graph and whether that graph is a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeInstance {
    pub matrix: Matrix,
    pub graph: BipartiteGraph,
    pub certified_tree: bool,
}

/// Builds `G(a)` and checks that it is connected with `m + n - 1` edges.
pub fn certify_tree(a: &Matrix) -> TreeInstance {
    let graph = BipartiteGraph::from_matrix(a);
    let certified_tree = graph.to_simple_graph().is_tree();
    TreeInstance { matrix: a.clone(), graph, certified_tree }
}

impl TreeInstance {
    fn require_tree(&self) -> Result<()> {
        if self.certified_tree {
            Ok(())
        } else {
            Err(Error::NotATree)
        }
    }
}

/// The `n x m` path matrix of `t` with respect to `mm`.
pub fn path_matrix(t: &TreeInstance, mm: &Matching) -> Result<Matrix> {
    t.require_tree()?;
    let walker = PathWalker::new(&t.graph, mm)?;
    let (m, n) = (t.graph.rows(), t.graph.cols());
    let mut b = Matrix::zeros(t.graph.spec(), n, m);
    for i in 0..n {
        for (j, sum) in walker.signed_sums_from(i)?.into_iter().enumerate() {
            if let Some(sum) = sum {
                b.set(i, j, sum)?;
            }
        }
    }
    Ok(b)
}

/// The submatrix on the vertices saturated by a matching, ordered so that it
/// is lower triangular with the matching on its diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedForest {
    pub matrix: Matrix,
    /// `rows[k]` is the row of `A` placed at position `k`.
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub fn induced_forest(t: &TreeInstance, mm: &Matching) -> Result<InducedForest> {
    t.require_tree()?;
    mm.check_against(&t.graph)?;
    let rows: Vec<usize> = mm.pairs().iter().map(|p| p.0).collect();
    let cols: Vec<usize> = mm.pairs().iter().map(|p| p.1).collect();
    let sub = t.matrix.select(&rows, &cols);
    // A forest has at most one perfect matching, and mm is one of the
    // induced subgraph, so peeling finds exactly mm.
    let peel = peel_unique_matching(&BipartiteGraph::from_matrix(&sub))?;
    let rows: Vec<usize> = peel.row_order.iter().map(|&k| rows[k]).collect();
    let cols: Vec<usize> = peel.col_order.iter().map(|&k| cols[k]).collect();
    Ok(InducedForest { matrix: t.matrix.select(&rows, &cols), rows, cols })
}

/// `b a b == b`, exactly.
pub fn outer_inverse_check(a: &Matrix, b: &Matrix) -> Result<bool> {
    if b.cols() != a.rows() || a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "B is {}x{} but A is {}x{}; need B to be {}x{}",
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols(),
            a.cols(),
            a.rows()
        )));
    }
    Ok(b.matmul(a)?.matmul(b)? == *b)
}

/// Every matching of `g`, the empty one first, by include/exclude over edges
/// in (row, col) order.
pub fn enumerate_matchings(g: &BipartiteGraph) -> Result<Vec<Matching>> {
    let edges: Vec<(usize, usize)> = g.edges().map(|(r, c, _)| (r, c)).collect();
    if edges.len() > MATCHING_ENUMERATION_EDGE_LIMIT {
        return Err(Error::SizeGuard { size: edges.len(), limit: MATCHING_ENUMERATION_EDGE_LIMIT });
    }
    fn go(
        edges: &[(usize, usize)],
        k: usize,
        rows: &mut [bool],
        cols: &mut [bool],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == edges.len() {
            out.push(current.clone());
            return;
        }
        go(edges, k + 1, rows, cols, current, out);
        let (r, c) = edges[k];
        if !rows[r] && !cols[c] {
            rows[r] = true;
            cols[c] = true;
            current.push((r, c));
            go(edges, k + 1, rows, cols, current, out);
            current.pop();
            rows[r] = false;
            cols[c] = false;
        }
    }
    let mut out = Vec::new();
    go(&edges, 0, &mut vec![false; g.rows()], &mut vec![false; g.cols()], &mut Vec::new(), &mut out);
    out.into_iter().map(|pairs| Matching::new(g, pairs)).collect()
}

// ---------------------------------------------------------------------------
// Free trees

/// All trees on `vertices` vertices, one per isomorphism class.
///
/// Grown leaf by leaf from the trees one size smaller and deduplicated by a
/// centre-rooted canonical encoding.
pub fn nonisomorphic_trees(vertices: usize) -> Vec<SimpleGraph> {
    let mut layer = match vertices {
        0 => return Vec::new(),
        _ => vec![SimpleGraph::empty(1)],
    };
    for _ in 1..vertices {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &layer {
            for v in 0..t.vertex_count() {
                let mut grown = t.clone();
                let leaf = grown.add_vertex();
                grown.add_edge(v, leaf).expect("fresh leaf");
                if seen.insert(tree_canonical_form(&grown)) {
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    layer
}

/// All trees with between 1 and `max_vertices` vertices.
pub fn trees_up_to(max_vertices: usize) -> Vec<SimpleGraph> {
    (1..=max_vertices).flat_map(nonisomorphic_trees).collect()
}

/// Parenthesis encoding of a tree rooted at its centre (the smaller of the
/// two encodings for a bicentral tree). Equal iff the trees are isomorphic.
pub fn tree_canonical_form(t: &SimpleGraph) -> String {
    tree_centers(t).into_iter().map(|c| rooted_encoding(t, c, usize::MAX)).min().unwrap_or_default()
}

fn tree_centers(t: &SimpleGraph) -> Vec<usize> {
    let n = t.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut leaves: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let layer = leaves.len();
        remaining -= layer;
        for _ in 0..layer {
            let leaf = leaves.pop_front().expect("counted");
            for u in t.neighbors(leaf) {
                if degree[u] > 1 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        leaves.push_back(u);
                    }
                }
            }
        }
    }
    let mut c: Vec<usize> = leaves.into_iter().collect();
    c.sort_unstable();
    c
}

fn rooted_encoding(t: &SimpleGraph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = t.neighbors(v).filter(|&u| u != parent).map(|u| rooted_encoding(t, u, v)).collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// Biadjacency matrix of a tree: the colour class of vertex 0 becomes the
/// rows, the other class the columns, both in increasing vertex order.
/// `weight` is called once per edge, in the order of [`SimpleGraph::edges`].
pub fn tree_biadjacency(
    tree: &SimpleGraph,
    spec: RingSpec,
    mut weight: impl FnMut() -> RingValue,
) -> Result<TreeLayout> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let color = tree.two_coloring().expect("trees are bipartite");
    let rows: Vec<usize> = (0..tree.vertex_count()).filter(|&v| !color[v]).collect();
    let cols: Vec<usize> = (0..tree.vertex_count()).filter(|&v| color[v]).collect();
    let mut index = vec![0; tree.vertex_count()];
    for (k, &v) in rows.iter().enumerate() {
        index[v] = k;
    }
    for (k, &v) in cols.iter().enumerate() {
        index[v] = k;
    }
    let mut matrix = Matrix::zeros(spec, rows.len(), cols.len());
    for (u, v) in tree.edges() {
        let (r, c) = if color[u] { (v, u) } else { (u, v) };
        let w = weight();
        if w.is_zero() {
            return Err(Error::InvalidValue("tree edge weights must be nonzero".into()));
        }
        matrix.set(index[r], index[c], w)?;
    }
    Ok(TreeLayout { matrix, row_vertices: rows, col_vertices: cols })
}

/// A tree laid out as a biadjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLayout {
    pub matrix: Matrix,
    /// Tree vertex of each matrix row.
    pub row_vertices: Vec<usize>,
    pub col_vertices: Vec<usize>,
}
