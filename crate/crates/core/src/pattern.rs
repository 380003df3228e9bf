//! Zero-nonzero patterns: the corona characterisation of triangular matrices
//! whose inverse keeps their pattern, and the family of graphs that occur as
//! inverses of trees.

use crate::bigraph::{contract_matching, peel_unique_matching, BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, PatternMatrix};
use crate::ring::RingSpec;
use crate::treegen::{certify_tree, path_matrix};

pub use crate::graph::SimpleGraph;

/// [`is_isomorphic`] refuses graphs larger than this.
pub const ISOMORPHISM_MAX_VERTICES: usize = 14;
/// [`generate_family_fk`] refuses `k` larger than this.
pub const FAMILY_MAX_K: usize = 6;

// ---------------------------------------------------------------------------
// Corona

/// Which endpoint of a matched edge is the pendant vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pendant {
    Row,
    Col,
}

/// One matched edge of a corona: `(row, col)` with its pendant side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoronaPair {
    pub row: usize,
    pub col: usize,
    pub pendant: Pendant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoronaDecision {
    pub is_corona: bool,
    /// Present when `is_corona`; one entry per matched edge.
    pub witness: Option<Vec<CoronaPair>>,
}

/// Whether `g` is the corona of a bipartite graph with `mm` as the corona
/// edges: every matched edge must have an endpoint of degree one. The other
/// endpoints then span the base graph.
pub fn is_corona(g: &BipartiteGraph, mm: &Matching) -> Result<CoronaDecision> {
    mm.check_against(g)?;
    if !mm.is_perfect(g) {
        return Err(Error::NoPerfectMatching);
    }
    let mut witness = Vec::with_capacity(mm.len());
    for &(row, col) in mm.pairs() {
        let pendant = if g.row_degree(row) == 1 {
            Pendant::Row
        } else if g.col_degree(col) == 1 {
            Pendant::Col
        } else {
            return Ok(CoronaDecision { is_corona: false, witness: None });
        };
        witness.push(CoronaPair { row, col, pendant });
    }
    Ok(CoronaDecision { is_corona: true, witness: Some(witness) })
}

/// Outcome of checking the pattern-preservation characterisation on one
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPreservation {
    pub nonnegative: bool,
    pub lower_triangular: bool,
    /// `G/M` is bipartite; `None` when the matrix is not lower triangular.
    pub contraction_bipartite: Option<bool>,
    /// All hypotheses hold.
    pub applies: bool,
    /// `pattern(A) == pattern(A^-1)`; `None` when not lower triangular.
    pub pattern_preserved: Option<bool>,
    pub corona: Option<bool>,
}

impl PatternPreservation {
    /// `Some(pattern_preserved == corona)` when the hypotheses hold.
    pub fn equivalence_holds(&self) -> Option<bool> {
        if !self.applies {
            return None;
        }
        Some(self.pattern_preserved? == self.corona?)
    }
}

/// For a rational square matrix: do the hypotheses (nonnegative, lower
/// triangular, `G/M` bipartite) hold, and if so does `A^-1` keep the pattern
/// of `A` exactly when `G(A)` is a corona?
pub fn check_theorem3(a: &Matrix) -> Result<PatternPreservation> {
    if a.spec() != RingSpec::Rational {
        return Err(Error::SpecMismatch { left: RingSpec::Rational, right: a.spec() });
    }
    let lower_triangular = a.is_lower_triangular()?;
    let nonnegative = a.iter_rows().flatten().all(|v| !v.as_rational().expect("rational spec").is_negative());
    if !lower_triangular {
        return Ok(PatternPreservation {
            nonnegative,
            lower_triangular,
            contraction_bipartite: None,
            applies: false,
            pattern_preserved: None,
            corona: None,
        });
    }
    let inverse = a.forward_substitution_inverse()?;
    let g = BipartiteGraph::from_matrix(a);
    let mm = Matching::diagonal(&g)?;
    let bipartite = contract_matching(&g, &mm).is_bipartite();
    Ok(PatternPreservation {
        nonnegative,
        lower_triangular,
        contraction_bipartite: Some(bipartite),
        applies: nonnegative && bipartite,
        pattern_preserved: Some(a.pattern() == inverse.pattern()),
        corona: Some(is_corona(&g, &mm)?.is_corona),
    })
}

/// Equality of patterns, for callers that already hold both.
pub fn same_pattern(a: &PatternMatrix, b: &PatternMatrix) -> bool {
    a == b
}

// ---------------------------------------------------------------------------
// Inverses of trees

/// The graph of the inverse of a nonsingular weighted tree.
///
/// `a` is the biadjacency matrix of the tree. Vertices `0..m` are the rows and
/// `m..m+n` the columns, as in [`BipartiteGraph::to_simple_graph`]; there is
/// an edge `C_i - R_j` wherever `(A^-1)_ij` is nonzero.
pub fn inverse_tree_graph(a: &Matrix) -> Result<SimpleGraph> {
    let t = certify_tree(a);
    if !t.certified_tree {
        return Err(Error::NotATree);
    }
    if a.rows() != a.cols() {
        return Err(Error::NoPerfectMatching);
    }
    let peel = peel_unique_matching(&t.graph).map_err(|_| Error::NoPerfectMatching)?;
    let inverse = path_matrix(&t, &peel.matching)?;
    let m = a.rows();
    let mut g = SimpleGraph::empty(m + a.cols());
    for (i, row) in inverse.iter_rows().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                g.add_edge(m + i, j)?;
            }
        }
    }
    Ok(g)
}

/// The graphs on `2k` vertices that arise as inverses of trees, one per
/// isomorphism class. Starts from `{P_2}`; each step picks a vertex `u`, adds
/// `u'` adjacent to every neighbour of `u`, and hangs a pendant vertex on `u'`.
pub fn generate_family_fk(k: usize) -> Result<Vec<SimpleGraph>> {
    if k == 0 {
        return Err(Error::InvalidValue("k must be positive".into()));
    }
    if k > FAMILY_MAX_K {
        return Err(Error::SizeGuard { size: k, limit: FAMILY_MAX_K });
    }
    let mut family = vec![SimpleGraph::from_edges(2, [(0, 1)])?];
    for _ in 1..k {
        let mut next: Vec<SimpleGraph> = Vec::new();
        for h in &family {
            for u in 0..h.vertex_count() {
                let g = expand_vertex(h, u);
                if !contains_isomorphic(&next, &g)? {
                    next.push(g);
                }
            }
        }
        family = next;
    }
    Ok(family)
}

fn expand_vertex(h: &SimpleGraph, u: usize) -> SimpleGraph {
    let mut g = h.clone();
    let twin = g.add_vertex();
    let pendant = g.add_vertex();
    for x in h.neighbors(u) {
        g.add_edge(twin, x).expect("in range");
    }
    g.add_edge(twin, pendant).expect("in range");
    g
}

fn contains_isomorphic(family: &[SimpleGraph], g: &SimpleGraph) -> Result<bool> {
    for h in family {
        if is_isomorphic(h, g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Index of the first member of `family` isomorphic to `g`.
pub fn find_isomorphic(family: &[SimpleGraph], g: &SimpleGraph) -> Result<Option<usize>> {
    for (i, h) in family.iter().enumerate() {
        if is_isomorphic(h, g)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Isomorphism

/// Exact isomorphism test by backtracking. Candidate images must agree on
/// degree and on the sorted degrees of their neighbours, and every partial
/// map is checked edge by edge against the vertices already placed.
pub fn is_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> Result<bool> {
    for x in [g, h] {
        if x.vertex_count() > ISOMORPHISM_MAX_VERTICES {
            return Err(Error::SizeGuard { size: x.vertex_count(), limit: ISOMORPHISM_MAX_VERTICES });
        }
    }
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return Ok(false);
    }
    let sig_g = signatures(g);
    let sig_h = signatures(h);
    {
        let (mut a, mut b) = (sig_g.clone(), sig_h.clone());
        a.sort();
        b.sort();
        if a != b {
            return Ok(false);
        }
    }
    let adj_g = masks(g);
    let adj_h = masks(h);

    // Place vertices so each one is, where possible, adjacent to something
    // already placed; that makes the edge checks bite early.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u32;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed & (1 << v) == 0)
            .max_by_key(|&v| ((adj_g[v] & placed).count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex exists");
        placed |= 1 << next;
        order.push(next);
    }

    let mut image = vec![usize::MAX; n];
    Ok(extend(0, &order, &sig_g, &sig_h, &adj_g, &adj_h, &mut image, 0))
}

type Signature = (usize, Vec<usize>);

fn signatures(g: &SimpleGraph) -> Vec<Signature> {
    (0..g.vertex_count())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

fn masks(g: &SimpleGraph) -> Vec<u32> {
    (0..g.vertex_count()).map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u))).collect()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    sig_g: &[Signature],
    sig_h: &[Signature],
    adj_g: &[u32],
    adj_h: &[u32],
    image: &mut [usize],
    used: u32,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..sig_h.len() {
        if used & (1 << w) != 0 || sig_g[v] != sig_h[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let gu = adj_g[v] & (1 << u) != 0;
            let hu = adj_h[w] & (1 << image[u]) != 0;
            gu == hu
        });
        if !consistent {
            continue;
        }
        image[v] = w;
        if extend(depth + 1, order, sig_g, sig_h, adj_g, adj_h, image, used | (1 << w)) {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}
