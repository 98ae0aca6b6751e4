//! Exhaustive small-scale ground truth.
//!
//! Underlying graphs are grown one vertex at a time: every connected graph
//! with girth at least `g` arises from a smaller one (delete a non-cut
//! vertex) by adding a vertex whose neighbours are pairwise at distance at
//! least `g - 2`. Each level is deduplicated by canonical form and sorted, so
//! output never depends on the worker count.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::target_index;
use crate::families::{build_unicyclic, Reading};
use crate::inertia::negative_inertia;
use crate::invariants::girth;
use crate::iso::{automorphisms_mod_pendant_twins, canonical_form};
use crate::predicates::{hypothesis_check, thm31_predicate, thm32_classify, thm33_classify, FamilyTag, Theorem};
use crate::sgraph::{Sign, SignedGraph};

/// Largest order the enumerator accepts.
pub const MAX_ORDER: usize = 12;
/// Largest girth-free order: below girth 4 the graph counts explode.
pub const MAX_ORDER_SMALL_GIRTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("bound exceeded: {0}")]
    Bounds(String),
}

/// Order and signed edge list of a mismatching instance.
type InstanceKey = (usize, Vec<(usize, usize, Sign)>);

fn check_bounds(n_max: usize, girth_min: usize, girth_max: usize) -> Result<(), EnumerationError> {
    if n_max > MAX_ORDER {
        return Err(EnumerationError::Bounds(format!("n_max {n_max} exceeds {MAX_ORDER}")));
    }
    if girth_min < 3 || girth_max < girth_min {
        return Err(EnumerationError::Bounds(format!(
            "girth range {girth_min}..={girth_max} is empty or below 3"
        )));
    }
    if girth_min < 4 && n_max > MAX_ORDER_SMALL_GIRTH {
        return Err(EnumerationError::Bounds(format!(
            "girth 3 enumeration limited to n <= {MAX_ORDER_SMALL_GIRTH}"
        )));
    }
    Ok(())
}

fn distance_matrix(g: &SignedGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for w in g.neighbors(v) {
                    if d[w] == usize::MAX {
                        d[w] = d[v] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

/// Children of `g` obtained by adding one vertex joined to an admissible set.
fn extensions(g: &SignedGraph, girth_min: usize, cyclomatic_max: Option<usize>) -> Vec<SignedGraph> {
    let n = g.order();
    let dist = distance_matrix(g);
    let min_gap = girth_min.saturating_sub(2);
    let beta = g.cyclomatic_number();
    let max_links = cyclomatic_max.map_or(n, |c| (c - beta.min(c)) + 1);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: usize,
        n: usize,
        dist: &[Vec<usize>],
        min_gap: usize,
        max_links: usize,
        chosen: &mut Vec<usize>,
        g: &SignedGraph,
        out: &mut Vec<SignedGraph>,
    ) {
        if v == n {
            if !chosen.is_empty() {
                let links: Vec<(usize, Sign)> = chosen.iter().map(|&u| (u, Sign::Pos)).collect();
                out.push(g.add_vertex(&links).expect("links in range"));
            }
            return;
        }
        rec(v + 1, n, dist, min_gap, max_links, chosen, g, out);
        if chosen.len() < max_links && chosen.iter().all(|&u| dist[u][v] >= min_gap) {
            chosen.push(v);
            rec(v + 1, n, dist, min_gap, max_links, chosen, g, out);
            chosen.pop();
        }
    }
    rec(0, n, &dist, min_gap, max_links, &mut chosen, g, &mut out);
    out
}

fn dedup_level(graphs: Vec<SignedGraph>) -> Vec<SignedGraph> {
    let mut keyed: Vec<(Vec<u64>, SignedGraph)> = graphs.into_par_iter().map(|g| (canonical_form(&g).key, g)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut seen = HashSet::new();
    keyed
        .into_iter()
        .filter(|(k, _)| seen.insert(k.clone()))
        .map(|(k, g)| {
            // canonical relabelling keeps the representative deterministic
            let form_order = canonical_form(&g).order;
            let mut perm = vec![0; g.order()];
            for (pos, &v) in form_order.iter().enumerate() {
                perm[v] = pos;
            }
            debug_assert_eq!(canonical_form(&g.permuted(&perm)).key, k);
            g.permuted(&perm)
        })
        .collect()
}

/// Every connected graph with `n <= n_max` and girth in
/// `girth_min..=girth_max`, once per isomorphism class, all edges positive.
/// `cyclomatic_max` optionally bounds the cycle-space dimension.
pub fn enumerate_underlying(
    n_max: usize,
    girth_min: usize,
    girth_max: usize,
    cyclomatic_max: Option<usize>,
) -> Result<Vec<SignedGraph>, EnumerationError> {
    check_bounds(n_max, girth_min, girth_max)?;
    let mut level = vec![SignedGraph::empty(1)];
    let mut out = Vec::new();
    for _ in 1..n_max {
        let children: Vec<SignedGraph> = level
            .par_iter()
            .flat_map_iter(|g| extensions(g, girth_min, cyclomatic_max))
            .collect();
        level = dedup_level(children);
        out.extend(
            level
                .iter()
                .filter(|g| girth(g).is_some_and(|x| x <= girth_max))
                .cloned(),
        );
    }
    Ok(out)
}

/// Parent pointers of a BFS spanning tree from vertex 0.
fn bfs_tree(g: &SignedGraph) -> Vec<Option<usize>> {
    let n = g.order();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    if n == 0 {
        return parent;
    }
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(v) = q.pop_front() {
        for w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                q.push_back(w);
            }
        }
    }
    parent
}

/// Co-tree signs after switching every tree edge positive.
fn cotree_vector(g: &SignedGraph, parent: &[Option<usize>], cotree: &[(usize, usize)]) -> u64 {
    let n = g.order();
    let mut theta = vec![None; n];
    theta[0] = Some(Sign::Pos);
    fn resolve(v: usize, parent: &[Option<usize>], g: &SignedGraph, theta: &mut [Option<Sign>]) -> Sign {
        if let Some(s) = theta[v] {
            return s;
        }
        let p = parent[v].expect("non-root has parent");
        let s = resolve(p, parent, g, theta) * g.sign(p, v).expect("tree edge");
        theta[v] = Some(s);
        s
    }
    let mut bits = 0u64;
    for (i, &(u, v)) in cotree.iter().enumerate() {
        let s =
            resolve(u, parent, g, &mut theta) * g.sign(u, v).expect("co-tree edge") * resolve(v, parent, g, &mut theta);
        if s == Sign::Neg {
            bits |= 1 << i;
        }
    }
    bits
}

/// One signed graph per switching class of `g`, modulo automorphisms of
/// the underlying graph. Tree edges of a BFS spanning tree are positive;
/// the representative uses the smallest co-tree sign vector in its orbit.
pub fn enumerate_switching_classes(g: &SignedGraph) -> Vec<SignedGraph> {
    let parent = bfs_tree(g);
    let is_tree = |u: usize, v: usize| parent[v] == Some(u) || parent[u] == Some(v);
    let cotree: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !is_tree(e.u, e.v))
        .map(|e| (e.u, e.v))
        .collect();
    let beta = cotree.len();
    assert!(beta < 64, "cycle space too large");
    let auts = automorphisms_mod_pendant_twins(g);
    let build = |bits: u64| {
        g.with_signs(|e| match cotree.iter().position(|&(u, v)| (u, v) == (e.u, e.v)) {
            Some(i) if bits >> i & 1 == 1 => Sign::Neg,
            _ => Sign::Pos,
        })
    };
    (0u64..1 << beta)
        .filter_map(|bits| {
            let h = build(bits);
            let minimal = auts
                .iter()
                .all(|p| cotree_vector(&h.permuted(p), &parent, &cotree) >= bits);
            minimal.then_some(h)
        })
        .collect()
}

/// Bound on the order of enumerated graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderBound {
    Absolute(usize),
    /// `n <= girth + k`.
    AboveGirth(usize),
}

impl OrderBound {
    pub fn for_girth(self, g: usize) -> usize {
        match self {
            OrderBound::Absolute(n) => n,
            OrderBound::AboveGirth(k) => g + k,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub girth_min: usize,
    pub girth_max: usize,
    pub n_max: OrderBound,
    pub cyclomatic_max: Option<usize>,
    /// Largest pendant count per star (canonical unicyclic instances).
    pub multiplicity_max: usize,
}

impl Constraints {
    pub fn new(girth_min: usize, girth_max: usize, n_max: OrderBound) -> Self {
        Constraints {
            girth_min,
            girth_max,
            n_max,
            cyclomatic_max: None,
            multiplicity_max: 3,
        }
    }
}

/// A canonical unicyclic instance: pendant counts per cycle position.
#[derive(Clone, Debug)]
pub struct UnicyclicInstance {
    pub girth: usize,
    pub multiplicities: Vec<usize>,
    pub balanced: bool,
    pub graph: SignedGraph,
}

fn dihedral_min(m: &[usize]) -> Vec<usize> {
    let g = m.len();
    let mut best = m.to_vec();
    for r in 0..g {
        let rot: Vec<usize> = (0..g).map(|i| m[(i + r) % g]).collect();
        let refl: Vec<usize> = (0..g).map(|i| m[(r + g - i) % g]).collect();
        best = best.min(rot).min(refl);
    }
    best
}

/// Every canonical unicyclic graph on a `girth`-cycle with at least one
/// star, per-star pendant count at most `multiplicity_max`, order at most
/// `n_max`, in both balance classes, once per dihedral symmetry class.
/// Adjacent star centres are included.
pub fn canonical_unicyclic_instances(girth: usize, n_max: usize, multiplicity_max: usize) -> Vec<UnicyclicInstance> {
    let budget = n_max.saturating_sub(girth);
    let mut vectors = Vec::new();
    let mut cur = vec![0usize; girth];
    fn rec(i: usize, left: usize, mmax: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if cur.iter().any(|&x| x > 0) && dihedral_min(cur) == *cur {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=mmax.min(left) {
            cur[i] = m;
            rec(i + 1, left - m, mmax, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, budget, multiplicity_max, &mut cur, &mut vectors);
    vectors.sort();
    let mut out = Vec::new();
    for m in vectors {
        let placements: Vec<(usize, usize)> = m
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, &c)| (p, c))
            .collect();
        for balanced in [true, false] {
            out.push(UnicyclicInstance {
                girth,
                multiplicities: m.clone(),
                balanced,
                graph: build_unicyclic(girth, &placements, balanced).expect("positions on cycle"),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCount {
    pub girth: usize,
    pub i_minus: usize,
    pub count: usize,
}

/// A disagreement between a predicate and the exact inertia index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub edges: Vec<(usize, usize, Sign)>,
    pub i_minus: usize,
    pub target: usize,
    pub predicate: bool,
    pub tag: Option<FamilyTag>,
    pub reading: Option<Reading>,
}

impl Counterexample {
    pub fn graph(&self) -> SignedGraph {
        SignedGraph::from_edge_list(self.n, self.edges.iter().copied()).expect("recorded from a valid graph")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingOutcome {
    pub reading: Reading,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub theorem: Theorem,
    pub constraints: Constraints,
    pub underlying_graphs: usize,
    pub signed_graphs: usize,
    /// Signed graphs satisfying the theorem's hypotheses.
    pub hypothesis_graphs: usize,
    /// Hypothesis graphs per (girth, i₋).
    pub cells: Vec<CellCount>,
    /// Hypothesis graphs per classifier tag (`none` when untagged).
    pub tags: BTreeMap<String, usize>,
    /// Per reading, only for the theorem whose classifier depends on it.
    pub readings: Vec<ReadingOutcome>,
    pub selected_reading: Option<Reading>,
    /// Instances on which the two readings give different verdicts.
    pub discriminating_instances: usize,
    /// The reading that is right on every discriminating instance, when
    /// there is at least one such instance and exactly one reading qualifies.
    pub preferred_reading: Option<Reading>,
    /// Mismatches under the selected reading, or under every reading when
    /// none is consistent. Empty means the biconditional holds in range.
    pub counterexamples: Vec<Counterexample>,
    /// Mismatches under readings that were not selected.
    pub rejected_reading_mismatches: Vec<Counterexample>,
    pub confirmed: bool,
    /// Wall-clock time; excluded from deterministic output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

struct Outcome {
    girth: usize,
    i_minus: usize,
    tag: Option<FamilyTag>,
    mismatches: Vec<Counterexample>,
}

fn counterexample(
    g: &SignedGraph,
    i_minus: usize,
    target: usize,
    predicate: bool,
    tag: Option<FamilyTag>,
    reading: Option<Reading>,
) -> Counterexample {
    Counterexample {
        n: g.order(),
        edges: g.triples(),
        i_minus,
        target,
        predicate,
        tag,
        reading,
    }
}

fn evaluate(g: &SignedGraph, theorem: Theorem) -> Option<Outcome> {
    let h = hypothesis_check(g, theorem).ok()?;
    if !h.satisfied {
        return None;
    }
    match theorem {
        Theorem::CanonicalUnicyclic => {
            let v = thm31_predicate(g).ok()?;
            let i = negative_inertia(g);
            let target = target_index(v.decomposition.girth);
            let mismatches = if v.holds != (i == target) {
                vec![counterexample(g, i, target, v.holds, None, None)]
            } else {
                vec![]
            };
            Some(Outcome {
                girth: v.decomposition.girth,
                i_minus: i,
                tag: None,
                mismatches,
            })
        }
        Theorem::FarVertex => {
            let c = thm32_classify(g).ok()?;
            let mismatches = if c.consistent() {
                vec![]
            } else {
                vec![counterexample(g, c.i_minus, c.target, c.tag.is_some(), c.tag, None)]
            };
            Some(Outcome {
                girth: h.girth?,
                i_minus: c.i_minus,
                tag: c.tag,
                mismatches,
            })
        }
        Theorem::NearVertices => {
            let mut tag = None;
            let mut i_minus = 0;
            let mut mismatches = vec![];
            for reading in Reading::BOTH {
                let c = thm33_classify(g, reading).ok()?;
                i_minus = c.i_minus;
                if reading == Reading::Proof {
                    tag = c.tag;
                }
                if !c.consistent() {
                    mismatches.push(counterexample(
                        g,
                        c.i_minus,
                        c.target,
                        c.tag.is_some(),
                        c.tag,
                        Some(reading),
                    ));
                }
            }
            Some(Outcome {
                girth: h.girth?,
                i_minus,
                tag,
                mismatches,
            })
        }
    }
}

/// Checks one theorem's biconditional on every instance in range.
///
/// For the canonical unicyclic theorem the instances come from
/// [`canonical_unicyclic_instances`]; otherwise from
/// [`enumerate_underlying`] and [`enumerate_switching_classes`].
pub fn verify_theorem(theorem: Theorem, constraints: &Constraints) -> Result<EnumerationReport, EnumerationError> {
    let start = Instant::now();
    let (gmin, gmax) = (constraints.girth_min, constraints.girth_max);
    let n_top = (gmin..=gmax).map(|g| constraints.n_max.for_girth(g)).max().unwrap_or(0);
    let (underlying, signed): (usize, Vec<SignedGraph>) = match theorem {
        Theorem::CanonicalUnicyclic => {
            if gmin < 3 || gmax < gmin {
                return Err(EnumerationError::Bounds("empty girth range".into()));
            }
            if n_top > 24 {
                return Err(EnumerationError::Bounds(format!(
                    "n_max {n_top} exceeds 24 for unicyclic instances"
                )));
            }
            let inst: Vec<SignedGraph> = (gmin..=gmax)
                .flat_map(|g| {
                    canonical_unicyclic_instances(g, constraints.n_max.for_girth(g), constraints.multiplicity_max)
                })
                .map(|i| i.graph)
                .collect();
            (inst.len() / 2, inst)
        }
        _ => {
            let base = enumerate_underlying(n_top, gmin, gmax, constraints.cyclomatic_max)?;
            let base: Vec<SignedGraph> = base
                .into_iter()
                .filter(|g| girth(g).is_some_and(|x| g.order() <= constraints.n_max.for_girth(x)))
                .collect();
            let signed: Vec<SignedGraph> = base.par_iter().flat_map_iter(enumerate_switching_classes).collect();
            (base.len(), signed)
        }
    };
    let outcomes: Vec<Option<Outcome>> = signed.par_iter().map(|g| evaluate(g, theorem)).collect();

    let mut cells: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut tags: BTreeMap<String, usize> = BTreeMap::new();
    let mut all_mismatches = Vec::new();
    let mut hypothesis_graphs = 0;
    for o in outcomes.into_iter().flatten() {
        hypothesis_graphs += 1;
        *cells.entry((o.girth, o.i_minus)).or_default() += 1;
        if theorem != Theorem::CanonicalUnicyclic {
            let key = o.tag.map_or_else(|| "none".to_string(), |t| t.to_string());
            *tags.entry(key).or_default() += 1;
        }
        all_mismatches.extend(o.mismatches);
    }

    let mut per_instance: BTreeMap<InstanceKey, Vec<Reading>> = BTreeMap::new();
    for c in &all_mismatches {
        if let Some(r) = c.reading {
            per_instance.entry((c.n, c.edges.clone())).or_default().push(r);
        }
    }
    let lone: Vec<Reading> = per_instance.values().filter(|v| v.len() == 1).map(|v| v[0]).collect();
    let discriminating_instances = lone.len();
    let preferred_reading = if discriminating_instances == 0 {
        None
    } else {
        let good: Vec<Reading> = Reading::BOTH.into_iter().filter(|r| !lone.contains(r)).collect();
        (good.len() == 1).then(|| good[0])
    };
    let (readings, selected_reading, counterexamples, rejected) = if theorem == Theorem::NearVertices {
        let readings: Vec<ReadingOutcome> = Reading::BOTH
            .iter()
            .map(|&r| ReadingOutcome {
                reading: r,
                mismatches: all_mismatches.iter().filter(|c| c.reading == Some(r)).count(),
            })
            .collect();
        let clean: Vec<Reading> = readings
            .iter()
            .filter(|r| r.mismatches == 0)
            .map(|r| r.reading)
            .collect();
        let selected = (clean.len() == 1).then(|| clean[0]);
        match selected {
            Some(s) => {
                let rejected = all_mismatches.into_iter().filter(|c| c.reading != Some(s)).collect();
                (readings, Some(s), vec![], rejected)
            }
            None => (readings, None, all_mismatches, vec![]),
        }
    } else {
        (vec![], None, all_mismatches, vec![])
    };
    let confirmed = counterexamples.is_empty() && (theorem != Theorem::NearVertices || selected_reading.is_some());
    Ok(EnumerationReport {
        theorem,
        constraints: constraints.clone(),
        underlying_graphs: underlying,
        signed_graphs: signed.len(),
        hypothesis_graphs,
        cells: cells
            .into_iter()
            .map(|((girth, i_minus), count)| CellCount { girth, i_minus, count })
            .collect(),
        tags,
        readings,
        selected_reading,
        discriminating_instances,
        preferred_reading,
        counterexamples,
        rejected_reading_mismatches: rejected,
        confirmed,
        elapsed_ms: Some(start.elapsed().as_millis()),
    })
}
