//! Signed simple graphs on dense vertex ids.
//!
//! A [`SignedGraph`] is an undirected simple graph whose edges carry a sign
//! in `{+1, -1}`. Values are immutable once built; every constructor checks
//! the simple-graph invariants (no loops, no parallel edges, ids in range).

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sign of an edge, stored as the integer `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(i8)]
pub enum Sign {
    #[serde(rename = "-")]
    Neg = -1,
    #[serde(rename = "+")]
    Pos = 1,
}

impl Sign {
    pub fn value(self) -> i8 {
        self as i8
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Pos
    }

    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    /// Product of a sequence of signs; the empty product is `+`.
    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Pos, |acc, s| acc * s)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Neg
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {u} in edge ({u}, {u}, {sign})")]
    SelfLoop { u: usize, sign: Sign },
    #[error("duplicate edge ({u}, {v}, {sign})")]
    DuplicateEdge { u: usize, v: usize, sign: Sign },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate vertex {0} in vertex list")]
    DuplicateVertex(usize),
    #[error("join needs 1 <= k <= {n} target vertices, got {k}")]
    JoinArity { k: usize, n: usize },
    #[error("join got {targets} targets but {signs} signs")]
    JoinSignCount { targets: usize, signs: usize },
    #[error("switching function has {got} entries, graph has {n} vertices")]
    SwitchingSize { got: usize, n: usize },
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertiaTriple {
    pub i_plus: usize,
    pub i_minus: usize,
    pub nullity: usize,
}

impl InertiaTriple {
    pub fn new(i_plus: usize, i_minus: usize, nullity: usize) -> Self {
        InertiaTriple {
            i_plus,
            i_minus,
            nullity,
        }
    }

    pub fn order(&self) -> usize {
        self.i_plus + self.i_minus + self.nullity
    }
}

impl fmt::Display for InertiaTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i_plus, self.i_minus, self.nullity)
    }
}

/// A vertex labelling `θ: V -> {+, -}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SwitchingFunction {
    pub signs: Vec<Sign>,
}

impl SwitchingFunction {
    pub fn identity(n: usize) -> Self {
        SwitchingFunction {
            signs: vec![Sign::Pos; n],
        }
    }

    pub fn new(signs: Vec<Sign>) -> Self {
        SwitchingFunction { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Vertices mapped to `-`.
    pub fn negative_set(&self) -> Vec<usize> {
        (0..self.signs.len()).filter(|&v| self.signs[v] == Sign::Neg).collect()
    }
}

/// Undirected simple signed graph with vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, Sign)>>,
}

/// Result of [`SignedGraph::induced_subgraph`]: the subgraph and, for every
/// new vertex id, the vertex of the parent graph it came from.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: SignedGraph,
    pub old_of_new: Vec<usize>,
}

impl InducedSubgraph {
    pub fn new_of_old(&self, old: usize) -> Option<usize> {
        self.old_of_new.iter().position(|&o| o == old)
    }
}

impl SignedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        SignedGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edge_list<I>(n: usize, triples: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for (u, v, sign) in triples {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { u, sign });
            }
            if adj[u].iter().any(|&(w, _)| w == v) {
                return Err(GraphError::DuplicateEdge { u, v, sign });
            }
            adj[u].push((v, sign));
            adj[v].push((u, sign));
            edges.push(Edge {
                u: u.min(v),
                v: u.max(v),
                sign,
            });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        edges.sort_unstable();
        Ok(SignedGraph { n, edges, adj })
    }

    /// All-positive graph from an unsigned edge list.
    pub fn from_unsigned<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edge_list(n, pairs.into_iter().map(|(u, v)| (u, v, Sign::Pos)))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triples(&self) -> Vec<(usize, usize, Sign)> {
        self.edges.iter().map(|e| (e.u, e.v, e.sign)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn signed_neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.sign(u, v).is_some()
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn pendant_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Cycle-space dimension `m - n + c`.
    pub fn cyclomatic_number(&self) -> usize {
        self.size() + self.components().len() - self.n
    }

    pub fn is_all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.sign == Sign::Pos)
    }

    /// Same underlying graph with every edge positive.
    pub fn underlying(&self) -> SignedGraph {
        self.with_signs(|_| Sign::Pos)
    }

    /// Same underlying graph with every sign recomputed by `f`.
    pub fn with_signs<F: FnMut(&Edge) -> Sign>(&self, mut f: F) -> SignedGraph {
        let triples: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, f(e))).collect();
        SignedGraph::from_edge_list(self.n, triples).expect("same underlying graph")
    }

    /// Graph with the given edge signs flipped (edges absent from `self` are ignored).
    pub fn with_flipped(&self, flip: &[(usize, usize)]) -> SignedGraph {
        self.with_signs(|e| {
            if flip.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (e.u, e.v)) {
                -e.sign
            } else {
                e.sign
            }
        })
    }

    /// `Γ[S]`, relabelled densely in the order the vertices appear in `s`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let mut new_of_old = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if new_of_old[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            new_of_old[v] = i;
        }
        let triples = self.edges.iter().filter_map(|e| {
            let (a, b) = (new_of_old[e.u], new_of_old[e.v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b, e.sign))
        });
        let graph = SignedGraph::from_edge_list(s.len(), triples)?;
        Ok(InducedSubgraph {
            graph,
            old_of_new: s.to_vec(),
        })
    }

    /// Graph with the listed vertices removed (remaining vertices keep their relative order).
    pub fn remove_vertices(&self, drop: &[usize]) -> InducedSubgraph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !drop.contains(v)).collect();
        self.induced_subgraph(&keep).expect("kept vertices are in range")
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SignedGraph {
        assert_eq!(perm.len(), self.n);
        SignedGraph::from_edge_list(self.n, self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.sign)))
            .expect("permutation preserves simplicity")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &SignedGraph) -> SignedGraph {
        let off = self.n;
        let triples = self
            .triples()
            .into_iter()
            .chain(other.edges.iter().map(|e| (e.u + off, e.v + off, e.sign)));
        SignedGraph::from_edge_list(self.n + other.n, triples).expect("disjoint union is simple")
    }

    /// Adds a new vertex adjacent to each `(w, sign)` in `links`; the new vertex gets id `n`.
    pub fn add_vertex(&self, links: &[(usize, Sign)]) -> Result<SignedGraph, GraphError> {
        let v = self.n;
        let triples = self.triples().into_iter().chain(links.iter().map(|&(w, s)| (v, w, s)));
        SignedGraph::from_edge_list(self.n + 1, triples)
    }

    /// Adds `count` pendant vertices hanging off `at`, all with the given sign.
    pub fn add_pendants(&self, at: usize, count: usize, sign: Sign) -> SignedGraph {
        let mut g = self.clone();
        for _ in 0..count {
            g = g.add_vertex(&[(at, sign)]).expect("pendant attachment is simple");
        }
        g
    }

    /// Sum of degrees; always `2 * size()`.
    pub fn degree_sum(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum()
    }
}

/// `G₁(u) ⊙ᵏ G₂`: the disjoint union of `g1` and `g2` plus the edges from `u`
/// to each of `targets` (vertex ids of `g2`) with the matching `signs`.
/// Vertices of `g2` are shifted by `g1.order()` in the result.
pub fn k_join(
    g1: &SignedGraph,
    u: usize,
    g2: &SignedGraph,
    targets: &[usize],
    signs: &[Sign],
) -> Result<SignedGraph, GraphError> {
    let k = targets.len();
    if k == 0 || k > g2.order() {
        return Err(GraphError::JoinArity { k, n: g2.order() });
    }
    if signs.len() != k {
        return Err(GraphError::JoinSignCount {
            targets: k,
            signs: signs.len(),
        });
    }
    if u >= g1.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: u,
            n: g1.order(),
        });
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= g2.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: t,
                n: g2.order(),
            });
        }
        if targets[..i].contains(&t) {
            return Err(GraphError::DuplicateVertex(t));
        }
    }
    let off = g1.order();
    let union = g1.disjoint_union(g2);
    let triples = union
        .triples()
        .into_iter()
        .chain(targets.iter().zip(signs).map(|(&t, &s)| (u, t + off, s)));
    SignedGraph::from_edge_list(union.order(), triples)
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}{}", e.u, e.sign, e.v)?;
        }
        write!(f, "]")
    }
}
