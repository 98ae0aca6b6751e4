//! Isomorphism machinery for small graphs: canonical labelling of the
//! underlying graph by individualization-refinement, coloured isomorphism
//! search by backtracking, and automorphisms up to swaps of pendant twins.

use crate::sgraph::{InducedSubgraph, SignedGraph};

/// Largest order accepted by [`canonical_form`] (rows are `u64` bitsets).
pub const MAX_CANONICAL_ORDER: usize = 64;

/// Canonical labelling of the underlying graph. `order[i]` is the original
/// vertex placed at position `i`; `key` is the relabelled adjacency, one
/// bitset row per vertex. Two graphs are isomorphic iff their keys agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: Vec<u64>,
    pub order: Vec<usize>,
}

fn adjacency_rows(g: &SignedGraph) -> Vec<u64> {
    (0..g.order())
        .map(|v| g.neighbors(v).fold(0u64, |acc, w| acc | (1 << w)))
        .collect()
}

fn refine(rows: &[u64], cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for s in 0..cells.len() {
            let mask = cells[s].iter().fold(0u64, |acc, &v| acc | (1 << v));
            for c in 0..cells.len() {
                if cells[c].len() < 2 {
                    continue;
                }
                let count = |v: usize| (rows[v] & mask).count_ones();
                let first = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cells[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        parts.push(Vec::new());
                        last = Some(k);
                    }
                    parts.last_mut().expect("part pushed").push(v);
                }
                cells.splice(c..=c, parts);
                continue 'outer;
            }
        }
        return;
    }
}

fn mutual_twins(rows: &[u64], cell: &[usize]) -> bool {
    let u = cell[0];
    cell[1..].iter().all(|&v| rows[u] & !(1 << v) == rows[v] & !(1 << u))
}

fn relabelled_key(rows: &[u64], order: &[usize]) -> Vec<u64> {
    let mut pos = vec![0usize; rows.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut bits = rows[v];
            let mut out = 0u64;
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out |= 1 << pos[w];
            }
            out
        })
        .collect()
}

fn search(rows: &[u64], mut cells: Vec<Vec<usize>>, best: &mut Option<CanonicalForm>) {
    refine(rows, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let key = relabelled_key(rows, &order);
        if best.as_ref().is_none_or(|b| key < b.key) {
            *best = Some(CanonicalForm { key, order });
        }
        return;
    };
    let cell = cells[target].clone();
    // swapping mutual twins is an automorphism fixing the partition
    let tries = if mutual_twins(rows, &cell) { 1 } else { cell.len() };
    for &v in &cell[..tries] {
        let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
        let mut next = cells.clone();
        next.splice(target..=target, [vec![v], rest]);
        search(rows, next, best);
    }
}

/// Canonical labelling of the underlying (unsigned) graph.
///
/// # Panics
/// If the order exceeds [`MAX_CANONICAL_ORDER`].
pub fn canonical_form(g: &SignedGraph) -> CanonicalForm {
    let n = g.order();
    assert!(n <= MAX_CANONICAL_ORDER, "canonical_form supports at most 64 vertices");
    if n == 0 {
        return CanonicalForm {
            key: Vec::new(),
            order: Vec::new(),
        };
    }
    let rows = adjacency_rows(g);
    let mut best = None;
    search(&rows, vec![(0..n).collect()], &mut best);
    best.expect("search reaches at least one leaf")
}

/// The underlying graph relabelled into canonical order, all edges positive.
pub fn canonical_graph(g: &SignedGraph) -> SignedGraph {
    let form = canonical_form(g);
    let n = g.order();
    let mut edges = Vec::new();
    for (i, row) in form.key.iter().enumerate() {
        for j in (i + 1)..n {
            if row >> j & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    SignedGraph::from_unsigned(n, edges).expect("canonical key describes a simple graph")
}

/// Visits every isomorphism `p → t` of underlying graphs that preserves the
/// vertex colours. The callback receives `map[p_vertex] = t_vertex` and
/// returns `true` to stop the search.
pub fn for_each_isomorphism<F>(p: &SignedGraph, pc: &[usize], t: &SignedGraph, tc: &[usize], mut f: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let n = p.order();
    if n != t.order() || p.size() != t.size() || pc.len() != n || tc.len() != n {
        return;
    }
    let profile = |g: &SignedGraph, c: &[usize]| {
        let mut v: Vec<(usize, usize)> = (0..g.order()).map(|x| (g.degree(x), c[x])).collect();
        v.sort_unstable();
        v
    };
    if profile(p, pc) != profile(t, tc) {
        return;
    }
    // BFS order over the pattern, each component rooted at a max-degree vertex
    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![None; n];
    let mut seen = vec![false; n];
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| !seen[v])
            .max_by_key(|&v| (p.degree(v), std::cmp::Reverse(v)))
            .expect("unseen vertex remains");
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in p.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    anchor[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(p, pc, t, tc, &order, &anchor, 0, &mut map, &mut used, &mut f);
}

#[allow(clippy::too_many_arguments)]
fn extend<F>(
    p: &SignedGraph,
    pc: &[usize],
    t: &SignedGraph,
    tc: &[usize],
    order: &[usize],
    anchor: &[Option<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    f: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if depth == order.len() {
        return f(map);
    }
    let u = order[depth];
    let candidates: Vec<usize> = match anchor[u] {
        Some(a) => t.neighbors(map[a]).collect(),
        None => (0..t.order()).collect(),
    };
    for c in candidates {
        if used[c] || t.degree(c) != p.degree(u) || tc[c] != pc[u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&z| p.has_edge(u, z) == t.has_edge(c, map[z]));
        if !consistent {
            continue;
        }
        map[u] = c;
        used[c] = true;
        let stop = extend(p, pc, t, tc, order, anchor, depth + 1, map, used, f);
        used[c] = false;
        map[u] = usize::MAX;
        if stop {
            return true;
        }
    }
    false
}

/// All isomorphisms of underlying graphs (uncoloured).
pub fn isomorphisms(p: &SignedGraph, t: &SignedGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(p, &vec![0; p.order()], t, &vec![0; t.order()], |m| {
        out.push(m.to_vec());
        false
    });
    out
}

pub fn are_isomorphic(p: &SignedGraph, t: &SignedGraph) -> bool {
    let mut found = false;
    for_each_isomorphism(p, &vec![0; p.order()], t, &vec![0; t.order()], |_| {
        found = true;
        true
    });
    found
}

/// A graph with its pendant vertices removed, remembering how many pendants
/// each remaining vertex carried.
#[derive(Clone, Debug)]
pub struct LeafProfile {
    pub core: InducedSubgraph,
    /// Pendant count per core vertex (core indexing).
    pub leaf_count: Vec<usize>,
    /// Pendant vertices per core vertex (original ids, ascending).
    pub leaves: Vec<Vec<usize>>,
}

/// Strips every degree-one vertex whose neighbour has degree at least two.
/// A lone edge is left untouched.
pub fn leaf_profile(g: &SignedGraph) -> LeafProfile {
    let n = g.order();
    let is_leaf: Vec<bool> = (0..n)
        .map(|v| g.degree(v) == 1 && g.neighbors(v).all(|w| g.degree(w) >= 2))
        .collect();
    let keep: Vec<usize> = (0..n).filter(|&v| !is_leaf[v]).collect();
    let core = g.induced_subgraph(&keep).expect("kept vertices in range");
    let leaves: Vec<Vec<usize>> = keep
        .iter()
        .map(|&v| g.neighbors(v).filter(|&w| is_leaf[w]).collect())
        .collect();
    LeafProfile {
        leaf_count: leaves.iter().map(Vec::len).collect(),
        core,
        leaves,
    }
}

/// Automorphisms of the underlying graph, one per coset of the group
/// generated by swaps of pendant vertices sharing a neighbour. Those swaps
/// fix every cycle, so this set acts on the cycle space exactly like the full
/// group. Each permutation maps `v` to `perm[v]`; the identity comes first.
pub fn automorphisms_mod_pendant_twins(g: &SignedGraph) -> Vec<Vec<usize>> {
    let prof = leaf_profile(g);
    let core = &prof.core.graph;
    let mut out = Vec::new();
    for_each_isomorphism(core, &prof.leaf_count, core, &prof.leaf_count, |m| {
        let mut perm = vec![usize::MAX; g.order()];
        for (i, &j) in m.iter().enumerate() {
            perm[prof.core.old_of_new[i]] = prof.core.old_of_new[j];
            for (a, b) in prof.leaves[i].iter().zip(&prof.leaves[j]) {
                perm[*a] = *b;
            }
        }
        out.push(perm);
        false
    });
    if g.order() > 0 && out.is_empty() {
        // only possible for a lone edge, which leaf stripping leaves intact
        out.push((0..g.order()).collect());
    }
    out.sort();
    let id: Vec<usize> = (0..g.order()).collect();
    if let Some(pos) = out.iter().position(|p| *p == id) {
        let idp = out.remove(pos);
        out.insert(0, idp);
    }
    out
}
