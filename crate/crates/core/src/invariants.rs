//! Structural invariants: girth and shortest cycles, balance and switching,
//! distance layers around a cycle, fans, canonical unicyclic recognition and
//! pendant reduction.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sgraph::{GraphError, InducedSubgraph, Sign, SignedGraph, SwitchingFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex list {0:?} is not a cycle of the graph")]
    NotACycle(Vec<usize>),
    #[error("graph is not connected unicyclic (n = {n}, m = {m}, connected = {connected})")]
    NotUnicyclic { n: usize, m: usize, connected: bool },
    #[error("vertex {0} lies on the cycle")]
    VertexOnCycle(usize),
    #[error("fans of length {0} are not supported (only 1 and 2)")]
    UnsupportedFanLength(usize),
}

/// A cycle given by its vertex sequence, plus the product of its edge signs.
/// Normalised to start at its smallest vertex and to continue towards the
/// smaller of that vertex's two cycle neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub sign: Sign,
}

impl CycleWitness {
    /// Checks adjacency along `vertices` and normalises the rotation/reflection.
    pub fn from_vertices(g: &SignedGraph, vertices: &[usize]) -> Result<Self, InvariantError> {
        let k = vertices.len();
        let bad = || InvariantError::NotACycle(vertices.to_vec());
        if k < 3 || vertices.iter().any(|&v| v >= g.order()) {
            return Err(bad());
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(bad());
        }
        let mut sign = Sign::Pos;
        for i in 0..k {
            sign *= g.sign(vertices[i], vertices[(i + 1) % k]).ok_or_else(bad)?;
        }
        Ok(CycleWitness {
            vertices: normalise_cycle(vertices),
            sign,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Cycle edges as `(min, max)` pairs in cycle order.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Position of `v` along the cycle.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Distance along the cycle between two of its vertices.
    pub fn cycle_distance(&self, a: usize, b: usize) -> Option<usize> {
        let (pa, pb) = (self.position(a)?, self.position(b)?);
        let d = pa.abs_diff(pb);
        Some(d.min(self.len() - d))
    }
}

fn normalise_cycle(vs: &[usize]) -> Vec<usize> {
    let k = vs.len();
    let start = (0..k).min_by_key(|&i| vs[i]).unwrap_or(0);
    let next = vs[(start + 1) % k];
    let prev = vs[(start + k - 1) % k];
    if next <= prev {
        (0..k).map(|i| vs[(start + i) % k]).collect()
    } else {
        (0..k).map(|i| vs[(start + k - i) % k]).collect()
    }
}

/// Girth of the underlying graph (`None` for forests) and every shortest
/// cycle, each listed once up to rotation and reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthInfo {
    pub girth: Option<usize>,
    pub cycles: Vec<CycleWitness>,
}

fn bfs_distances(g: &SignedGraph, sources: &[usize], blocked: &[bool]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap_or(0);
        for w in g.neighbors(v) {
            if dist[w].is_none() && !blocked[w] {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of a shortest cycle, by BFS from every vertex.
pub fn girth(g: &SignedGraph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[v] + 1 >= b {
                    break;
                }
            }
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

pub fn girth_and_cycles(g: &SignedGraph) -> GirthInfo {
    let Some(len) = girth(g) else {
        return GirthInfo {
            girth: None,
            cycles: Vec::new(),
        };
    };
    let n = g.order();
    let mut cycles = Vec::new();
    for s in 0..n {
        // cycles whose smallest vertex is s; search restricted to vertices > s
        let blocked: Vec<bool> = (0..n).map(|v| v < s).collect();
        let dist = bfs_distances(g, &[s], &blocked);
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        extend_cycle(g, s, len, &dist, &blocked, &mut path, &mut on_path, &mut cycles);
    }
    cycles.sort();
    GirthInfo {
        girth: Some(len),
        cycles,
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle(
    g: &SignedGraph,
    s: usize,
    len: usize,
    dist: &[Option<usize>],
    blocked: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<CycleWitness>,
) {
    let v = *path.last().expect("path starts at s");
    if path.len() == len {
        if g.has_edge(v, s) && path[1] < v {
            let sign = Sign::product((0..len).map(|i| g.sign(path[i], path[(i + 1) % len]).expect("cycle edge")));
            out.push(CycleWitness {
                vertices: path.clone(),
                sign,
            });
        }
        return;
    }
    for w in g.neighbors(v) {
        if blocked[w] || on_path[w] {
            continue;
        }
        match dist[w] {
            Some(d) if path.len() + d <= len => {}
            _ => continue,
        }
        path.push(w);
        on_path[w] = true;
        extend_cycle(g, s, len, dist, blocked, path, on_path, out);
        on_path[w] = false;
        path.pop();
    }
}

/// Outcome of the balance test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// Switching by this function makes every edge positive.
    Balanced(SwitchingFunction),
    /// A cycle whose sign product is negative.
    Unbalanced(CycleWitness),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }
}

/// Spanning-forest potentials: returns `θ` making every forest edge positive
/// plus the BFS parent of each vertex. Roots are the smallest vertex of each
/// component; `skip` removes one edge from consideration.
fn tree_potentials(g: &SignedGraph, skip: Option<(usize, usize)>) -> (Vec<Sign>, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let mut theta = vec![Sign::Pos; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let skipped = |a: usize, b: usize| skip.is_some_and(|(x, y)| (a.min(b), a.max(b)) == (x.min(y), x.max(y)));
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            for &(w, s) in g.signed_neighbors(v) {
                if seen[w] || skipped(v, w) {
                    continue;
                }
                seen[w] = true;
                theta[w] = theta[v] * s;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    (theta, parent, depth)
}

fn tree_path_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Balance via spanning-tree potentials (BFS from vertex 0, then from the
/// smallest unvisited vertex of each further component).
pub fn balance(g: &SignedGraph) -> Balance {
    let (theta, parent, depth) = tree_potentials(g, None);
    for e in g.edges() {
        if theta[e.u] * e.sign * theta[e.v] == Sign::Neg {
            let cyc = tree_path_cycle(&parent, &depth, e.u, e.v);
            let witness = CycleWitness::from_vertices(g, &cyc).expect("tree path plus co-tree edge is a cycle");
            return Balance::Unbalanced(witness);
        }
    }
    Balance::Balanced(SwitchingFunction::new(theta))
}

pub fn is_balanced(g: &SignedGraph) -> bool {
    balance(g).is_balanced()
}

/// `Γ^θ`: `σ^θ(xy) = θ(x) σ(xy) θ(y)`.
pub fn apply_switching(g: &SignedGraph, theta: &SwitchingFunction) -> Result<SignedGraph, GraphError> {
    if theta.len() != g.order() {
        return Err(GraphError::SwitchingSize {
            got: theta.len(),
            n: g.order(),
        });
    }
    Ok(g.with_signs(|e| theta.signs[e.u] * e.sign * theta.signs[e.v]))
}

/// Two signed graphs on the same underlying graph are switching equivalent
/// iff the product signature `σ₁σ₂` is balanced.
pub fn switching_equivalent(a: &SignedGraph, b: &SignedGraph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut triples = Vec::with_capacity(a.size());
    for e in a.edges() {
        match b.sign(e.u, e.v) {
            Some(s) => triples.push((e.u, e.v, e.sign * s)),
            None => return false,
        }
    }
    let product = SignedGraph::from_edge_list(a.order(), triples).expect("same edge set");
    is_balanced(&product)
}

pub fn is_unicyclic(g: &SignedGraph) -> bool {
    g.order() > 0 && g.size() == g.order() && g.is_connected()
}

/// The cycle of a connected unicyclic graph, in cycle order.
pub fn unique_cycle(g: &SignedGraph) -> Result<CycleWitness, InvariantError> {
    if !is_unicyclic(g) {
        return Err(InvariantError::NotUnicyclic {
            n: g.order(),
            m: g.size(),
            connected: g.is_connected(),
        });
    }
    // strip leaves until only the cycle remains
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let start = (0..n).find(|&v| !removed[v]).expect("unicyclic graph has a cycle");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .find(|&w| !removed[w] && w != prev && (order.len() < 2 || w != order[order.len() - 2]))
            .expect("cycle vertex has two cycle neighbours");
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    CycleWitness::from_vertices(g, &order)
}

/// Switching-equivalent copy of a connected unicyclic graph that is all
/// positive (balanced case) or has a single negative edge, namely the
/// lexicographically smallest cycle edge (unbalanced case).
pub fn unicyclic_normal_form(g: &SignedGraph) -> Result<SignedGraph, InvariantError> {
    let cycle = unique_cycle(g)?;
    if cycle.sign == Sign::Pos {
        let (theta, _, _) = tree_potentials(g, None);
        return Ok(apply_switching(g, &SwitchingFunction::new(theta))?);
    }
    let first = *cycle.edge_pairs().iter().min().expect("cycle has edges");
    let (theta, _, _) = tree_potentials(g, Some(first));
    Ok(apply_switching(g, &SwitchingFunction::new(theta))?)
}

/// Vertices grouped by their distance to a fixed cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceLayers {
    pub base: CycleWitness,
    /// `layers[&r]` is `N_r`, for `r >= 1`; empty layers are omitted.
    pub layers: BTreeMap<usize, Vec<usize>>,
    /// Vertices in other components (empty for connected graphs).
    pub unreachable: Vec<usize>,
}

impl DistanceLayers {
    pub fn layer(&self, r: usize) -> &[usize] {
        self.layers.get(&r).map_or(&[], |v| v.as_slice())
    }

    pub fn depth(&self) -> usize {
        self.layers.keys().next_back().copied().unwrap_or(0)
    }

    pub fn distance(&self, v: usize) -> Option<usize> {
        if self.base.contains(v) {
            return Some(0);
        }
        self.layers.iter().find(|(_, vs)| vs.contains(&v)).map(|(&r, _)| r)
    }
}

pub fn distance_layers(g: &SignedGraph, c: &CycleWitness) -> Result<DistanceLayers, InvariantError> {
    let base = CycleWitness::from_vertices(g, &c.vertices)?;
    let blocked = vec![false; g.order()];
    let dist = bfs_distances(g, &base.vertices, &blocked);
    let mut layers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut unreachable = Vec::new();
    for (v, d) in dist.iter().enumerate() {
        match d {
            Some(0) => {}
            Some(r) => layers.entry(*r).or_default().push(v),
            None => unreachable.push(v),
        }
    }
    Ok(DistanceLayers {
        base,
        layers,
        unreachable,
    })
}

/// Largest fan from `x` to a cycle, with the bound `⌊g/k⌋ + 2l >= g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub length: usize,
    /// Size of the largest fan of this length (0 if none).
    pub k: usize,
    /// One fan realising `k`: each path from `x` to its terminal.
    pub paths: Vec<Vec<usize>>,
    /// `⌊g/k⌋ + 2l`, or `None` when `k = 0`.
    pub lhs: Option<usize>,
    pub cycle_length: usize,
    /// `false` means a structural violation: `c` cannot be a shortest cycle.
    pub bound_holds: bool,
}

pub fn fan_bound_check(g: &SignedGraph, c: &CycleWitness, x: usize, l: usize) -> Result<FanReport, InvariantError> {
    let c = CycleWitness::from_vertices(g, &c.vertices)?;
    if x >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: x,
            n: g.order(),
        }
        .into());
    }
    if c.contains(x) {
        return Err(InvariantError::VertexOnCycle(x));
    }
    let paths: Vec<Vec<usize>> = match l {
        1 => g.neighbors(x).filter(|&y| c.contains(y)).map(|y| vec![x, y]).collect(),
        2 => {
            // bipartite matching: middle vertices (off the cycle) to terminals
            let mids: Vec<usize> = g.neighbors(x).filter(|&m| !c.contains(m)).collect();
            let opts: Vec<Vec<usize>> = mids
                .iter()
                .map(|&m| g.neighbors(m).filter(|&y| c.contains(y)).collect())
                .collect();
            let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
            for i in 0..mids.len() {
                let mut seen = vec![false; g.order()];
                augment(i, &opts, &mut owner, &mut seen);
            }
            owner.iter().map(|(&y, &i)| vec![x, mids[i], y]).collect()
        }
        _ => return Err(InvariantError::UnsupportedFanLength(l)),
    };
    let k = paths.len();
    let len = c.len();
    let lhs = (k > 0).then(|| len / k + 2 * l);
    Ok(FanReport {
        length: l,
        k,
        paths,
        lhs,
        cycle_length: len,
        bound_holds: lhs.is_none_or(|v| v >= len),
    })
}

fn augment(i: usize, opts: &[Vec<usize>], owner: &mut BTreeMap<usize, usize>, seen: &mut [bool]) -> bool {
    for &y in &opts[i] {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        let free = match owner.get(&y) {
            None => true,
            Some(&j) => augment(j, opts, owner, seen),
        };
        if free {
            owner.insert(y, i);
            return true;
        }
    }
    false
}

/// Detour statistics for a shortest cycle: shortest paths between two
/// distinct cycle vertices whose interior avoids the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetourReport {
    pub cycle_length: usize,
    /// Shortest detour length `t`, if any detour exists.
    pub min_detour: Option<usize>,
    /// `t >= ⌈g/2⌉` for every detour.
    pub ceil_bound_holds: bool,
    /// `⌊g/2⌋ + t >= g` for every detour.
    pub floor_bound_holds: bool,
    /// Off-cycle vertices with two or more cycle neighbours.
    pub multi_attached: Vec<usize>,
}

pub fn detour_report(g: &SignedGraph, c: &CycleWitness) -> Result<DetourReport, InvariantError> {
    let c = CycleWitness::from_vertices(g, &c.vertices)?;
    let n = g.order();
    let on_cycle: Vec<bool> = (0..n).map(|v| c.contains(v)).collect();
    let mut min_detour: Option<usize> = None;
    for &y in &c.vertices {
        // BFS from y through off-cycle vertices only
        let mut dist = vec![usize::MAX; n];
        dist[y] = 0;
        let mut queue = VecDeque::from([y]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if on_cycle[w] {
                    if w != y && dist[v] >= 1 && v != y {
                        let t = dist[v] + 1;
                        min_detour = Some(min_detour.map_or(t, |m| m.min(t)));
                    }
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let len = c.len();
    let multi_attached = (0..n)
        .filter(|&v| !on_cycle[v] && g.neighbors(v).filter(|&w| on_cycle[w]).count() >= 2)
        .collect();
    Ok(DetourReport {
        cycle_length: len,
        min_detour,
        ceil_bound_holds: min_detour.is_none_or(|t| t >= len.div_ceil(2)),
        floor_bound_holds: min_detour.is_none_or(|t| len / 2 + t >= len),
        multi_attached,
    })
}

/// Attached pendant stars of a canonical unicyclic graph and the cycle
/// segments left after deleting them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDecomposition {
    pub girth: usize,
    pub cycle: Vec<usize>,
    pub cycle_sign: Sign,
    /// `(major vertex, its pendant neighbours)` in cycle order.
    pub stars: Vec<(usize, Vec<usize>)>,
    /// Orders of the cycle paths between consecutive major vertices; a zero
    /// means two adjacent major vertices. `segments[i]` follows `stars[i]`.
    pub segments: Vec<usize>,
}

impl StarDecomposition {
    pub fn k(&self) -> usize {
        self.stars.len()
    }

    pub fn is_pure_cycle(&self) -> bool {
        self.stars.is_empty()
    }

    pub fn even_segments(&self) -> usize {
        self.segments.iter().filter(|&&l| l % 2 == 0).count()
    }

    /// `g = k + Σ lᵢ` (holds whenever `k >= 1`).
    pub fn identity_holds(&self) -> bool {
        self.is_pure_cycle() || self.girth == self.k() + self.segments.iter().sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalRejection {
    #[error("graph is not connected unicyclic")]
    NotUnicyclic,
    #[error("N_{r} is nonempty: {vertices:?}")]
    FarLayer { r: usize, vertices: Vec<usize> },
    #[error("N_1 is not independent: edge ({0}, {1})")]
    N1NotIndependent(usize, usize),
    #[error("vertex {0} of N_1 has several cycle neighbours")]
    MultiAttached(usize),
}

pub fn canonical_unicyclic_check(g: &SignedGraph) -> Result<StarDecomposition, CanonicalRejection> {
    let cycle = unique_cycle(g).map_err(|_| CanonicalRejection::NotUnicyclic)?;
    let layers = distance_layers(g, &cycle).map_err(|_| CanonicalRejection::NotUnicyclic)?;
    if let Some((&r, vs)) = layers.layers.iter().find(|(&r, _)| r >= 2) {
        return Err(CanonicalRejection::FarLayer {
            r,
            vertices: vs.clone(),
        });
    }
    let n1 = layers.layer(1);
    for &a in n1 {
        for &b in n1 {
            if a < b && g.has_edge(a, b) {
                return Err(CanonicalRejection::N1NotIndependent(a, b));
            }
        }
        if g.neighbors(a).filter(|&w| cycle.contains(w)).count() != 1 {
            return Err(CanonicalRejection::MultiAttached(a));
        }
    }
    let len = cycle.len();
    let pendants_of = |y: usize| -> Vec<usize> { g.neighbors(y).filter(|w| n1.contains(w)).collect() };
    let major_pos: Vec<usize> = (0..len)
        .filter(|&i| !pendants_of(cycle.vertices[i]).is_empty())
        .collect();
    let stars: Vec<(usize, Vec<usize>)> = major_pos
        .iter()
        .map(|&i| (cycle.vertices[i], pendants_of(cycle.vertices[i])))
        .collect();
    let k = major_pos.len();
    let segments = (0..k)
        .map(|i| {
            let (a, b) = (major_pos[i], major_pos[(i + 1) % k]);
            if k == 1 {
                len - 1
            } else {
                (b + len - a) % len - 1
            }
        })
        .collect();
    Ok(StarDecomposition {
        girth: len,
        cycle: cycle.vertices,
        cycle_sign: cycle.sign,
        stars,
        segments,
    })
}

/// Result of repeated pendant deletion.
#[derive(Clone, Debug)]
pub struct PendantReduction {
    pub reduced: InducedSubgraph,
    /// Number of (pendant, neighbour) pairs deleted.
    pub count: usize,
}

/// Deletes the smallest pendant vertex together with its neighbour until no
/// pendant vertex remains. `i₋` and `i₊` each drop by exactly `count`.
pub fn pendant_reduce(g: &SignedGraph) -> PendantReduction {
    let n = g.order();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut count = 0;
    while let Some(u) = (0..n).find(|&v| alive[v] && deg[v] == 1) {
        let w = g
            .neighbors(u)
            .find(|&w| alive[w])
            .expect("pendant has a live neighbour");
        for dead in [u, w] {
            alive[dead] = false;
            for x in g.neighbors(dead) {
                if alive[x] {
                    deg[x] -= 1;
                }
            }
        }
        count += 1;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    PendantReduction {
        reduced: g.induced_subgraph(&keep).expect("kept vertices are in range"),
        count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inertia::inertia;
    use Sign::{Neg, Pos};

    fn cycle_with(n: usize, negs: &[usize]) -> SignedGraph {
        SignedGraph::from_edge_list(
            n,
            (0..n).map(|i| (i, (i + 1) % n, if negs.contains(&i) { Neg } else { Pos })),
        )
        .unwrap()
    }

    fn theta_445() -> SignedGraph {
        // C6 0..5 plus outer path 0-6-7-8-3 (5 vertices between antipodes)
        let mut e: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.extend([(0, 6), (6, 7), (7, 8), (8, 3)]);
        SignedGraph::from_unsigned(9, e).unwrap()
    }

    #[test]
    fn girth_examples() {
        let c7 = cycle_with(7, &[2, 4]);
        let info = girth_and_cycles(&c7);
        assert_eq!(info.girth, Some(7));
        assert_eq!(info.cycles.len(), 1);
        assert_eq!(info.cycles[0].sign, Pos);

        let t = theta_445();
        let info = girth_and_cycles(&t);
        assert_eq!(info.girth, Some(6));
        assert_eq!(info.cycles.len(), 1);
        assert_eq!(info.cycles[0].vertices, vec![0, 1, 2, 3, 4, 5]);

        let tree = SignedGraph::from_unsigned(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(girth_and_cycles(&tree).girth, None);

        let k4 = SignedGraph::from_unsigned(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let info = girth_and_cycles(&k4);
        assert_eq!(info.girth, Some(3));
        assert_eq!(info.cycles.len(), 4);
    }

    #[test]
    fn balance_examples() {
        let pos = SignedGraph::from_unsigned(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(balance(&pos), Balance::Balanced(SwitchingFunction::identity(4)));

        let c5 = cycle_with(5, &[3]);
        match balance(&c5) {
            Balance::Unbalanced(w) => {
                assert_eq!(w.len(), 5);
                assert_eq!(w.sign, Neg);
            }
            other => panic!("expected witness, got {other:?}"),
        }

        let tree = SignedGraph::from_edge_list(4, [(0, 1, Neg), (1, 2, Pos), (1, 3, Neg)]).unwrap();
        let Balance::Balanced(theta) = balance(&tree) else {
            panic!("trees are balanced")
        };
        assert!(apply_switching(&tree, &theta).unwrap().is_all_positive());
    }

    #[test]
    fn switching_examples() {
        let c6 = cycle_with(6, &[1, 4]);
        assert_eq!(apply_switching(&c6, &SwitchingFunction::identity(6)).unwrap(), c6);
        let p2 = SignedGraph::from_edge_list(2, [(0, 1, Neg)]).unwrap();
        let flipped = apply_switching(&p2, &SwitchingFunction::new(vec![Pos, Neg])).unwrap();
        assert_eq!(flipped.triples(), vec![(0, 1, Pos)]);
        assert!(apply_switching(&p2, &SwitchingFunction::identity(3)).is_err());
        assert!(switching_equivalent(&c6, &cycle_with(6, &[])));
        assert!(!switching_equivalent(&cycle_with(6, &[0]), &cycle_with(6, &[])));
    }

    #[test]
    fn unicyclic_normal_forms() {
        let g = cycle_with(6, &[0, 2, 4]);
        let nf = unicyclic_normal_form(&g).unwrap();
        let negs: Vec<_> = nf.edges().iter().filter(|e| e.sign == Neg).collect();
        assert_eq!(negs.len(), 1);
        assert_eq!((negs[0].u, negs[0].v), (0, 1));
        assert!(switching_equivalent(&g, &nf));

        let g = cycle_with(4, &[0, 3]);
        assert!(unicyclic_normal_form(&g).unwrap().is_all_positive());

        let mut e = vec![(0, 1, Neg), (1, 2, Pos), (2, 0, Neg)];
        e.push((2, 3, Neg));
        let bal = SignedGraph::from_edge_list(4, e).unwrap();
        assert!(unicyclic_normal_form(&bal).unwrap().is_all_positive());

        assert!(unicyclic_normal_form(&theta_445()).is_err());
    }

    #[test]
    fn layers() {
        let g = cycle_with(6, &[]).add_pendants(0, 1, Pos);
        let c = girth_and_cycles(&g).cycles[0].clone();
        let l = distance_layers(&g, &c).unwrap();
        assert_eq!(l.layer(1), &[6]);
        assert!(l.layer(2).is_empty());

        let c6 = cycle_with(6, &[]);
        let l = distance_layers(&c6, &girth_and_cycles(&c6).cycles[0]).unwrap();
        assert!(l.layers.is_empty());

        let bogus = CycleWitness {
            vertices: vec![0, 2, 4],
            sign: Pos,
        };
        assert!(distance_layers(&c6, &bogus).is_err());
    }

    #[test]
    fn fans() {
        let g = cycle_with(6, &[]).add_pendants(2, 1, Pos);
        let c = girth_and_cycles(&g).cycles[0].clone();
        let r = fan_bound_check(&g, &c, 6, 1).unwrap();
        assert_eq!(r.k, 1);
        assert!(r.bound_holds);
        assert!(fan_bound_check(&g, &c, 6, 3).is_err());
        assert!(fan_bound_check(&g, &c, 2, 1).is_err());

        // four length-2 paths from one vertex to a 6-cycle
        let mut e: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        for (m, y) in [(6, 0), (7, 1), (8, 2), (9, 3)] {
            e.push((m, y));
            e.push((10, m));
        }
        let h = SignedGraph::from_unsigned(11, e).unwrap();
        let c = CycleWitness::from_vertices(&h, &[0, 1, 2, 3, 4, 5]).unwrap();
        let r = fan_bound_check(&h, &c, 10, 2).unwrap();
        assert_eq!(r.k, 4);
        assert!(!r.bound_holds);
        assert!(girth(&h).unwrap() <= 5);
    }

    #[test]
    fn canonical_examples() {
        let one = cycle_with(6, &[]).add_pendants(0, 1, Pos);
        let d = canonical_unicyclic_check(&one).unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(d.segments, vec![5]);
        assert!(d.identity_holds());

        let two = cycle_with(6, &[]).add_pendants(0, 1, Pos).add_pendants(3, 1, Pos);
        let d = canonical_unicyclic_check(&two).unwrap();
        assert_eq!(d.segments, vec![2, 2]);

        let adj = cycle_with(6, &[]).add_pendants(0, 1, Pos).add_pendants(1, 2, Pos);
        let d = canonical_unicyclic_check(&adj).unwrap();
        assert_eq!(d.segments, vec![0, 4]);
        assert!(d.identity_holds());

        let deep = cycle_with(6, &[]).add_pendants(0, 1, Pos).add_pendants(6, 1, Pos);
        assert!(matches!(
            canonical_unicyclic_check(&deep),
            Err(CanonicalRejection::FarLayer { r: 2, .. })
        ));
        assert_eq!(
            canonical_unicyclic_check(&theta_445()),
            Err(CanonicalRejection::NotUnicyclic)
        );
    }

    #[test]
    fn pendant_reductions() {
        let p5 = SignedGraph::from_unsigned(5, (1..5).map(|i| (i - 1, i))).unwrap();
        let r = pendant_reduce(&p5);
        assert_eq!(r.count, 2);
        assert_eq!(r.reduced.graph.order(), 1);
        assert_eq!(inertia(&p5).i_minus, 2 + inertia(&r.reduced.graph).i_minus);

        let star = SignedGraph::from_unsigned(5, (1..5).map(|i| (0, i))).unwrap();
        let r = pendant_reduce(&star);
        assert_eq!(r.count, 1);
        assert_eq!(r.reduced.graph.order(), 3);
        assert_eq!(r.reduced.graph.size(), 0);

        let r = pendant_reduce(&cycle_with(6, &[]));
        assert_eq!(r.count, 0);
    }

    #[test]
    fn detours() {
        let t = theta_445();
        let c = girth_and_cycles(&t).cycles[0].clone();
        let r = detour_report(&t, &c).unwrap();
        assert_eq!(r.min_detour, Some(4));
        assert!(r.ceil_bound_holds && r.floor_bound_holds);
        assert!(r.multi_attached.is_empty());
    }
}
