//! Decision procedures: hypothesis checks, the canonical unicyclic
//! predicates, and structural classifiers for the attachment families.
//!
//! Classification strips pendant vertices, matches the remaining core
//! against each family template up to isomorphism, reads pendant counts off
//! the matched sites and, for families with a fixed sign class, compares the
//! pulled-back signature up to switching. The exact inertia index is always
//! computed alongside so callers can compare the two verdicts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::target_index;
use crate::families::{side_condition, template, Family, Reading, SignRule};
use crate::inertia::negative_inertia;
use crate::invariants::{
    canonical_unicyclic_check, distance_layers, girth, girth_and_cycles, is_balanced, switching_equivalent,
    CanonicalRejection, CycleWitness, StarDecomposition,
};
use crate::iso::{for_each_isomorphism, leaf_profile};
use crate::sgraph::{Sign, SignedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("not canonical unicyclic: {0}")]
    NotCanonical(CanonicalRejection),
    #[error("pure cycle: use the cycle formula")]
    PureCycle,
    #[error("hypotheses not satisfied: {0}")]
    Hypotheses(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// Canonical unicyclic graphs.
    #[serde(rename = "3.1")]
    CanonicalUnicyclic,
    /// Some vertex at distance 3 from a balanced shortest cycle.
    #[serde(rename = "3.2")]
    FarVertex,
    /// Every vertex within distance 2 of a balanced shortest cycle.
    #[serde(rename = "3.3")]
    NearVertices,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::CanonicalUnicyclic, Theorem::FarVertex, Theorem::NearVertices];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::CanonicalUnicyclic => "3.1",
            Theorem::FarVertex => "3.2",
            Theorem::NearVertices => "3.3",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3.1" => Ok(Theorem::CanonicalUnicyclic),
            "3.2" => Ok(Theorem::FarVertex),
            "3.3" => Ok(Theorem::NearVertices),
            _ => Err(format!("unknown theorem '{s}' (expected 3.1, 3.2 or 3.3)")),
        }
    }
}

/// Every hypothesis evaluated, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub girth: Option<usize>,
    pub girth_mod4: Option<usize>,
    pub triangle_free: bool,
    /// A balanced shortest cycle, if any.
    pub balanced_cycle: Option<Vec<usize>>,
    pub canonical_unicyclic: bool,
    /// A balanced shortest cycle with a vertex at distance 3.
    pub far_witness: Option<Vec<usize>>,
    /// A balanced shortest cycle with every vertex within distance 2.
    pub near_witness: Option<Vec<usize>>,
    pub satisfied: bool,
    /// First failed hypothesis, for diagnostics.
    pub failure: Option<String>,
}

pub fn hypothesis_check(g: &SignedGraph, theorem: Theorem) -> Result<HypothesisReport, PredicateError> {
    if !g.is_connected() {
        return Err(PredicateError::Disconnected);
    }
    let info = girth_and_cycles(g);
    let gi = info.girth;
    let balanced: Vec<&CycleWitness> = info.cycles.iter().filter(|c| c.sign == Sign::Pos).collect();
    let canonical = canonical_unicyclic_check(g).is_ok();
    let mut far_witness = None;
    let mut near_witness = None;
    for c in &balanced {
        let layers = distance_layers(g, c).expect("shortest cycle of a connected graph");
        if layers.layer(3).is_empty() {
            near_witness.get_or_insert_with(|| c.vertices.clone());
        } else {
            far_witness.get_or_insert_with(|| c.vertices.clone());
        }
    }
    let mut failure = None;
    let mut fail = |msg: String| {
        failure.get_or_insert(msg);
    };
    match theorem {
        Theorem::CanonicalUnicyclic => match canonical_unicyclic_check(g) {
            Ok(d) if d.is_pure_cycle() => fail("pure cycle".into()),
            Ok(_) => {}
            Err(e) => fail(format!("not canonical unicyclic: {e}")),
        },
        Theorem::FarVertex | Theorem::NearVertices => {
            match gi {
                None => fail("acyclic".into()),
                Some(x) if x < 4 => fail("contains a triangle".into()),
                Some(x) if !matches!(x % 4, 2 | 3) => fail(format!("girth {x} is {} mod 4", x % 4)),
                _ => {}
            }
            if balanced.is_empty() {
                fail("no balanced shortest cycle".into());
            }
            if canonical {
                fail("canonical unicyclic".into());
            }
            if theorem == Theorem::FarVertex && far_witness.is_none() {
                fail("no balanced shortest cycle has a vertex at distance 3".into());
            }
            if theorem == Theorem::NearVertices && near_witness.is_none() {
                fail("no balanced shortest cycle keeps every vertex within distance 2".into());
            }
        }
    }
    Ok(HypothesisReport {
        theorem,
        girth: gi,
        girth_mod4: gi.map(|x| x % 4),
        triangle_free: gi.is_none_or(|x| x >= 4),
        balanced_cycle: balanced.first().map(|c| c.vertices.clone()),
        canonical_unicyclic: canonical,
        far_witness,
        near_witness,
        satisfied: failure.is_none(),
        failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnicyclicVerdict {
    pub holds: bool,
    pub decomposition: StarDecomposition,
}

/// Canonical unicyclic with stars: `i₋ = ⌈g/2⌉ + 1` iff exactly three cycle
/// segments have even order (odd girth) or exactly two (even girth).
pub fn thm31_predicate(g: &SignedGraph) -> Result<UnicyclicVerdict, PredicateError> {
    let d = canonical_unicyclic_check(g).map_err(PredicateError::NotCanonical)?;
    if d.is_pure_cycle() {
        return Err(PredicateError::PureCycle);
    }
    let wanted = if d.girth % 2 == 1 { 3 } else { 2 };
    Ok(UnicyclicVerdict {
        holds: d.even_segments() == wanted,
        decomposition: d,
    })
}

/// Canonical unicyclic graph or pure cycle with `i₋ = ⌈g/2⌉`.
pub fn thm11_predicate(g: &SignedGraph) -> Result<bool, PredicateError> {
    let d = canonical_unicyclic_check(g).map_err(PredicateError::NotCanonical)?;
    let r = d.girth % 4;
    if d.is_pure_cycle() {
        return Ok(match d.cycle_sign {
            Sign::Pos => matches!(r, 2 | 3),
            Sign::Neg => matches!(r, 0 | 1),
        });
    }
    let wanted = d.girth % 2;
    Ok(d.even_segments() == wanted)
}

/// Result tag of a classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilyTag {
    Family(Family),
    /// Star whose centre is joined to one pendant vertex of the base.
    JoinAtPendant,
    /// Star whose centre is joined to base vertices including a cycle vertex.
    JoinAtCycle,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Family(x) => write!(f, "{x}"),
            FamilyTag::JoinAtPendant => f.write_str("join-at-pendant"),
            FamilyTag::JoinAtCycle => f.write_str("join-at-cycle"),
        }
    }
}

impl From<FamilyTag> for String {
    fn from(t: FamilyTag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for FamilyTag {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        match s.as_str() {
            "join-at-pendant" => Ok(FamilyTag::JoinAtPendant),
            "join-at-cycle" => Ok(FamilyTag::JoinAtCycle),
            other => Family::ALL
                .into_iter()
                .find(|f| f.to_string() == other)
                .map(FamilyTag::Family)
                .ok_or_else(|| format!("unknown family tag '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub theorem: Theorem,
    pub tag: Option<FamilyTag>,
    /// Matched parameters: pendant counts by site letter, `t` for stars,
    /// `k` for the number of join edges.
    pub parameters: BTreeMap<String, usize>,
    pub i_minus: usize,
    pub target: usize,
}

impl Classification {
    /// The classifier verdict agrees with the exact inertia index.
    pub fn consistent(&self) -> bool {
        self.tag.is_some() == (self.i_minus == self.target)
    }
}

fn families_for(theorem: Theorem, reading: Reading) -> Vec<Family> {
    Family::ALL
        .into_iter()
        .filter(|&f| match theorem {
            Theorem::FarVertex => f.has_far_star(),
            Theorem::NearVertices => !f.has_far_star() && reading.includes(f),
            Theorem::CanonicalUnicyclic => false,
        })
        .collect()
}

/// Matches `g` against one family template, returning the parameters.
pub fn match_family(g: &SignedGraph, f: Family, reading: Reading) -> Option<BTreeMap<String, usize>> {
    let tpl = template(f);
    let prof = leaf_profile(g);
    let core = &prof.core.graph;
    if core.order() != tpl.core.order() || core.size() != tpl.core.size() {
        return None;
    }
    let zeros = vec![0usize; core.order()];
    let mut found = None;
    for_each_isomorphism(&tpl.core, &zeros, core, &zeros, |m| {
        let count = |tv: usize| prof.leaf_count[m[tv]];
        let mut params = BTreeMap::new();
        let mut sited = vec![false; tpl.core.order()];
        for &(letter, v) in &tpl.sites {
            sited[v] = true;
            params.insert(letter.to_string(), count(v));
        }
        if let Some(x) = tpl.star_site {
            sited[x] = true;
            if count(x) == 0 {
                return false;
            }
            params.insert("t".into(), count(x));
        }
        if (0..tpl.core.order()).any(|v| !sited[v] && count(v) > 0) {
            return false;
        }
        let nonzero: Vec<char> = tpl
            .sites
            .iter()
            .filter(|&&(_, v)| count(v) > 0)
            .map(|&(l, _)| l)
            .collect();
        if side_condition(f, reading, &nonzero).is_err() {
            return false;
        }
        if tpl.sign_rule == SignRule::Class {
            let pulled = tpl
                .core
                .with_signs(|e| core.sign(m[e.u], m[e.v]).expect("isomorphism preserves edges"));
            if !switching_equivalent(&pulled, &tpl.core) {
                return false;
            }
        }
        found = Some(params);
        true
    });
    found
}

fn leaf_neighbours(g: &SignedGraph, v: usize) -> Vec<usize> {
    g.neighbors(v).filter(|&w| g.degree(w) == 1).collect()
}

/// Splits `g` into the star at `centre` (with its pendant neighbours) and
/// the rest, provided the centre carries at least one pendant.
fn split_star(g: &SignedGraph, centre: usize) -> Option<(usize, Vec<usize>, SignedGraph, Vec<usize>)> {
    let leaves = leaf_neighbours(g, centre);
    if leaves.is_empty() {
        return None;
    }
    let mut drop = leaves.clone();
    drop.push(centre);
    let rest = g.remove_vertices(&drop);
    let joins: Vec<usize> = g
        .neighbors(centre)
        .filter(|w| !leaves.contains(w))
        .map(|w| rest.new_of_old(w).expect("kept vertex"))
        .collect();
    if joins.is_empty() {
        return None;
    }
    Some((leaves.len(), leaves, rest.graph, joins))
}

/// A base accepted by both join families: canonical unicyclic (or a pure
/// cycle), balanced, girth 2 or 3 mod 4, `i₋ = ⌈g/2⌉`.
fn valid_join_base(base: &SignedGraph) -> Option<StarDecomposition> {
    let d = canonical_unicyclic_check(base).ok()?;
    if !matches!(d.girth % 4, 2 | 3) || d.cycle_sign != Sign::Pos || !is_balanced(base) {
        return None;
    }
    thm11_predicate(base).ok()?.then_some(d)
}

fn match_join_at_pendant(g: &SignedGraph) -> Option<BTreeMap<String, usize>> {
    (0..g.order()).find_map(|x| {
        let (t, _, base, joins) = split_star(g, x)?;
        if joins.len() != 1 || base.degree(joins[0]) != 1 {
            return None;
        }
        let d = valid_join_base(&base)?;
        if d.is_pure_cycle() {
            return None;
        }
        Some(BTreeMap::from([("t".to_string(), t), ("k".to_string(), 1)]))
    })
}

fn match_join_at_cycle(g: &SignedGraph) -> Option<BTreeMap<String, usize>> {
    let gg = girth(g)?;
    (0..g.order()).find_map(|x| {
        let (t, _, base, joins) = split_star(g, x)?;
        let d = valid_join_base(&base)?;
        if d.girth != gg || !joins.iter().any(|v| d.cycle.contains(v)) {
            return None;
        }
        Some(BTreeMap::from([("t".to_string(), t), ("k".to_string(), joins.len())]))
    })
}

fn classify_with(g: &SignedGraph, theorem: Theorem, reading: Reading) -> Result<Classification, PredicateError> {
    let h = hypothesis_check(g, theorem)?;
    if let Some(why) = h.failure {
        return Err(PredicateError::Hypotheses(why));
    }
    let gi = h.girth.expect("hypotheses imply a cycle");
    let mut tag = None;
    let mut parameters = BTreeMap::new();
    for f in families_for(theorem, reading) {
        if let Some(p) = match_family(g, f, reading) {
            tag = Some(FamilyTag::Family(f));
            parameters = p;
            break;
        }
    }
    if tag.is_none() {
        let join = match theorem {
            Theorem::FarVertex => match_join_at_pendant(g).map(|p| (FamilyTag::JoinAtPendant, p)),
            _ => match_join_at_cycle(g).map(|p| (FamilyTag::JoinAtCycle, p)),
        };
        if let Some((t, p)) = join {
            tag = Some(t);
            parameters = p;
        }
    }
    Ok(Classification {
        theorem,
        tag,
        parameters,
        i_minus: negative_inertia(g),
        target: target_index(gi),
    })
}

/// Classifier for graphs with a vertex at distance 3 from a balanced
/// shortest cycle.
pub fn thm32_classify(g: &SignedGraph) -> Result<Classification, PredicateError> {
    classify_with(g, Theorem::FarVertex, Reading::Proof)
}

/// Classifier for graphs whose vertices all lie within distance 2 of a
/// balanced shortest cycle. `reading` controls the `Gamma8` side condition
/// and whether `Gamma10`/`Gamma11` are recognised.
pub fn thm33_classify(g: &SignedGraph, reading: Reading) -> Result<Classification, PredicateError> {
    classify_with(g, Theorem::NearVertices, reading)
}
