//! Generators for the graph families: cycles, paths, stars, theta graphs,
//! canonical unicyclic graphs, the eleven attachment families built on small
//! cores, and star joins onto canonical unicyclic graphs.
//!
//! Theta graph convention: `B(a, b, c)` has two branch vertices joined by
//! three internally disjoint paths with `a`, `b` and `c` vertices (branch
//! vertices included), so it has `a + b + c - 4` vertices. The `a` and `b`
//! paths form the base cycle; the `c` path is the outer path.
//!
//! Vertex layout: `y1 = 0` and `y2 = 1` are the branch vertices, then the
//! interior of the `b` path starting next to `y2`, then the interior of the
//! `a` path starting next to `y2`, then the outer interior labelled from
//! both ends alternately (`x1` next to `y1`, `x2` next to `y2`, `x1'`, `x2'`,
//! ...). `B(6,6,6)` lists its second arc starting next to `y1` instead, as in
//! its printed adjacency matrix.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::target_index;
use crate::inertia::negative_inertia;
use crate::invariants::{canonical_unicyclic_check, girth, is_balanced, unique_cycle};
use crate::predicates::thm11_predicate;
use crate::sgraph::{k_join, GraphError, Sign, SignedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid size: {0}")]
    Size(String),
    #[error("invalid theta spec: {0}")]
    Theta(String),
    #[error("placement collision at cycle position {0}")]
    PlacementCollision(usize),
    #[error("adjacent star positions {0} and {1} leave an empty segment")]
    AdjacentMajors(usize, usize),
    #[error("side condition violated: {0}")]
    SideCondition(&'static str),
    #[error("unknown parameter '{0}' for this family")]
    UnknownParameter(char),
    #[error("family requires at least one pendant at x' (t >= 1)")]
    MissingStar,
    #[error("base graph is not a valid joining target: {0}")]
    JoinBase(String),
    #[error("join attachment rejected: {0}")]
    JoinAttachment(String),
    #[error("generated graph has i- = {got}, expected {expected}")]
    OracleMismatch { got: usize, expected: usize },
}

/// Balanced cycles are all positive; unbalanced ones carry one negative
/// edge, on `(0, 1)`.
pub fn gen_cycle(n: usize, balanced: bool) -> Result<SignedGraph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::Size(format!("cycle needs n >= 3, got {n}")));
    }
    let neg = if balanced { Sign::Pos } else { Sign::Neg };
    let edges = (0..n).map(|i| (i, (i + 1) % n, if i == 0 { neg } else { Sign::Pos }));
    Ok(SignedGraph::from_edge_list(n, edges)?)
}

/// Path `0 - 1 - ... - (n-1)`; `signs[i]` is the sign of edge `(i, i+1)`.
pub fn gen_path(n: usize, signs: &[Sign]) -> Result<SignedGraph, FamilyError> {
    if n == 0 {
        return Err(FamilyError::Size("path needs n >= 1".into()));
    }
    if signs.len() != n - 1 {
        return Err(FamilyError::Size(format!(
            "path of order {n} needs {} signs, got {}",
            n - 1,
            signs.len()
        )));
    }
    Ok(SignedGraph::from_edge_list(
        n,
        (1..n).map(|i| (i - 1, i, signs[i - 1])),
    )?)
}

/// `K_{1,t}` with centre 0, all edges positive.
pub fn gen_star(t: usize) -> Result<SignedGraph, FamilyError> {
    if t == 0 {
        return Err(FamilyError::Size("star needs t >= 1".into()));
    }
    Ok(SignedGraph::from_unsigned(t + 1, (1..=t).map(|i| (0, i)))?)
}

/// A signed theta graph `B(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Edge signs: the `a` path from `y1`, then the `b` path from `y1`, then
    /// the outer path from `y1`.
    pub signs: Vec<Sign>,
}

/// Sign class of a theta graph whose base cycle is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaClass {
    /// All edges positive.
    Positive,
    /// Base cycle positive, both cycles through the outer path negative
    /// (outer edge at `y1` negated).
    Negative,
}

impl ThetaSpec {
    pub fn edge_count(a: usize, b: usize, c: usize) -> usize {
        a + b + c - 3
    }

    pub fn positive(a: usize, b: usize, c: usize) -> Self {
        Self::with_outer(a, b, c, vec![Sign::Pos; c.saturating_sub(1)])
    }

    pub fn class(a: usize, b: usize, c: usize, class: ThetaClass) -> Self {
        let mut outer = vec![Sign::Pos; c.saturating_sub(1)];
        if class == ThetaClass::Negative && !outer.is_empty() {
            outer[0] = Sign::Neg;
        }
        Self::with_outer(a, b, c, outer)
    }

    /// Base cycle positive, outer path signs as given (from `y1`).
    pub fn with_outer(a: usize, b: usize, c: usize, outer: Vec<Sign>) -> Self {
        let mut signs = vec![Sign::Pos; a.saturating_sub(1) + b.saturating_sub(1)];
        signs.extend(outer);
        ThetaSpec { a, b, c, signs }
    }

    pub fn order(&self) -> usize {
        self.a + self.b + self.c - 4
    }

    pub fn cycle_lengths(&self) -> [usize; 3] {
        let (a, b, c) = (self.a - 1, self.b - 1, self.c - 1);
        [a + b, a + c, b + c]
    }

    pub fn girth(&self) -> usize {
        *self.cycle_lengths().iter().min().expect("three cycles")
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let (a, b, c) = (self.a, self.b, self.c);
        if a < 2 || b < 2 || c < 2 {
            return Err(FamilyError::Theta(format!(
                "path orders must be >= 2, got ({a},{b},{c})"
            )));
        }
        if [a, b, c].iter().filter(|&&x| x == 2).count() > 1 {
            return Err(FamilyError::Theta("at most one path may be a single edge".into()));
        }
        if self.signs.len() != Self::edge_count(a, b, c) {
            return Err(FamilyError::Theta(format!(
                "expected {} edge signs, got {}",
                Self::edge_count(a, b, c),
                self.signs.len()
            )));
        }
        Ok(())
    }
}

/// Vertex sequences (branch to branch, both from `y1`) of the three paths.
fn theta_paths(a: usize, b: usize, c: usize) -> [Vec<usize>; 3] {
    let mut next = 2;
    let mut take = |k: usize| {
        let ids: Vec<usize> = (next..next + k).collect();
        next += k;
        ids
    };
    let b_int = take(b - 2); // from y2's side
    let a_int = take(a - 2);
    let printed_ten_cycle = (a, b, c) == (6, 6, 6);
    let mut b_path = vec![0];
    b_path.extend(b_int.iter().rev());
    b_path.push(1);
    let mut a_path = vec![0];
    if printed_ten_cycle {
        a_path.extend(a_int.iter());
    } else {
        a_path.extend(a_int.iter().rev());
    }
    a_path.push(1);
    // outer interior: alternate labels from both ends
    let inner = c - 2;
    let ids = take(inner);
    let mut slots = vec![0usize; inner];
    let (mut lo, mut hi) = (0usize, inner);
    for (k, &id) in ids.iter().enumerate() {
        if k % 2 == 0 {
            slots[lo] = id;
            lo += 1;
        } else {
            hi -= 1;
            slots[hi] = id;
        }
    }
    let mut c_path = vec![0];
    c_path.extend(slots);
    c_path.push(1);
    [a_path, b_path, c_path]
}

pub fn gen_theta(s: &ThetaSpec) -> Result<SignedGraph, FamilyError> {
    s.validate()?;
    let paths = theta_paths(s.a, s.b, s.c);
    let mut triples = Vec::new();
    let mut signs = s.signs.iter();
    for p in &paths {
        for w in p.windows(2) {
            triples.push((w[0], w[1], *signs.next().expect("validated sign count")));
        }
    }
    Ok(SignedGraph::from_edge_list(s.order(), triples)?)
}

/// The base cycle (`a` path then `b` path back) in vertex order.
pub fn theta_base_cycle(a: usize, b: usize, c: usize) -> Vec<usize> {
    let [ap, bp, _] = theta_paths(a, b, c);
    let mut cyc = ap;
    cyc.pop();
    cyc.extend(bp.iter().rev().take(bp.len() - 1));
    cyc
}

/// The outer interior vertices, ordered from `y1` to `y2`.
pub fn theta_outer_path(a: usize, b: usize, c: usize) -> Vec<usize> {
    let [_, _, cp] = theta_paths(a, b, c);
    cp[1..cp.len() - 1].to_vec()
}

/// Core with a 3-fan of length 2 onto a 6-cycle, in the printed order
/// `y1..y6, x1, x2, x3, x'`. `free` holds the signs of
/// `y1x1, y2x2, y3x3, x1x', x2x', x3x'`.
pub fn gen_fan_core(free: [Sign; 6]) -> SignedGraph {
    let cycle = [(0, 3), (0, 4), (1, 4), (1, 5), (2, 3), (2, 5)];
    let rest = [(0, 6), (1, 7), (2, 8), (6, 9), (7, 9), (8, 9)];
    let triples = cycle
        .iter()
        .map(|&(u, v)| (u, v, Sign::Pos))
        .chain(rest.iter().zip(free).map(|(&(u, v), s)| (u, v, s)));
    SignedGraph::from_edge_list(10, triples).expect("fixed layout")
}

/// The fan core plus a pendant at a non-terminal cycle vertex, in the
/// printed order `y1..y6, x1, x2, x3, x, x'`. `free` holds the signs of
/// `y1x1, y2x2, y3x3, y4x, x1x', x2x', x3x'`.
pub fn gen_fan_core_with_stray(free: [Sign; 7]) -> SignedGraph {
    let cycle = [(0, 3), (0, 5), (1, 3), (1, 4), (2, 4), (2, 5)];
    let rest = [(0, 6), (1, 7), (2, 8), (3, 9), (6, 10), (7, 10), (8, 10)];
    let triples = cycle
        .iter()
        .map(|&(u, v)| (u, v, Sign::Pos))
        .chain(rest.iter().zip(free).map(|(&(u, v), s)| (u, v, s)));
    SignedGraph::from_edge_list(11, triples).expect("fixed layout")
}

/// Canonical unicyclic graph on a `girth`-cycle `0..girth` with
/// `placements[i] = (cycle position, pendant count)`. Adjacent positions
/// are rejected because they leave an empty segment.
pub fn gen_canonical_unicyclic(
    girth: usize,
    placements: &[(usize, usize)],
    balanced: bool,
) -> Result<SignedGraph, FamilyError> {
    let mut seen = vec![false; girth.max(3)];
    for &(p, count) in placements {
        if p >= girth {
            return Err(FamilyError::Size(format!("position {p} outside the {girth}-cycle")));
        }
        if count == 0 {
            return Err(FamilyError::Size(format!("star at position {p} has no pendants")));
        }
        if seen[p] {
            return Err(FamilyError::PlacementCollision(p));
        }
        seen[p] = true;
    }
    for &(p, _) in placements {
        let q = (p + 1) % girth;
        if placements.len() > 1 && seen[q] {
            return Err(FamilyError::AdjacentMajors(p, q));
        }
    }
    build_unicyclic(girth, placements, balanced)
}

/// Like [`gen_canonical_unicyclic`] but allows adjacent star centres.
pub fn build_unicyclic(
    girth: usize,
    placements: &[(usize, usize)],
    balanced: bool,
) -> Result<SignedGraph, FamilyError> {
    let mut g = gen_cycle(girth, balanced)?;
    for &(p, count) in placements {
        if p >= girth {
            return Err(FamilyError::Size(format!("position {p} outside the {girth}-cycle")));
        }
        g = g.add_pendants(p, count, Sign::Pos);
    }
    Ok(g)
}

/// The attachment families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Gamma1,
    Gamma2,
    Gamma3,
    /// `(B(4,4,5), -)`: base 6-cycle positive, both 7-cycles negative.
    Theta445Neg,
    Gamma5,
    Gamma6,
    Gamma7,
    Gamma8,
    Gamma9,
    Gamma10,
    Gamma11,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Gamma1,
        Family::Gamma2,
        Family::Gamma3,
        Family::Theta445Neg,
        Family::Gamma5,
        Family::Gamma6,
        Family::Gamma7,
        Family::Gamma8,
        Family::Gamma9,
        Family::Gamma10,
        Family::Gamma11,
    ];

    pub fn from_index(i: usize) -> Option<Family> {
        match i {
            1 => Some(Family::Gamma1),
            2 => Some(Family::Gamma2),
            3 => Some(Family::Gamma3),
            5 => Some(Family::Gamma5),
            6 => Some(Family::Gamma6),
            7 => Some(Family::Gamma7),
            8 => Some(Family::Gamma8),
            9 => Some(Family::Gamma9),
            10 => Some(Family::Gamma10),
            11 => Some(Family::Gamma11),
            _ => None,
        }
    }

    /// Families whose base has vertices at distance 3 from the base cycle.
    pub fn has_far_star(self) -> bool {
        matches!(self, Family::Gamma1 | Family::Gamma2 | Family::Gamma3)
    }

    pub fn girth(self) -> usize {
        match self {
            Family::Gamma3 | Family::Gamma8 | Family::Gamma9 | Family::Gamma10 | Family::Gamma11 => 7,
            _ => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gamma1 => "gamma1",
            Family::Gamma2 => "gamma2",
            Family::Gamma3 => "gamma3",
            Family::Theta445Neg => "theta445-neg",
            Family::Gamma5 => "gamma5",
            Family::Gamma6 => "gamma6",
            Family::Gamma7 => "gamma7",
            Family::Gamma8 => "gamma8",
            Family::Gamma9 => "gamma9",
            Family::Gamma10 => "gamma10",
            Family::Gamma11 => "gamma11",
        };
        f.write_str(s)
    }
}

/// Which of the two printed versions of the side conditions to apply. They
/// differ for `Gamma8`, and only the longer version lists `Gamma10` and
/// `Gamma11` among the characterised graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    Statement,
    Proof,
}

impl Reading {
    pub const BOTH: [Reading; 2] = [Reading::Statement, Reading::Proof];

    pub fn includes(self, f: Family) -> bool {
        self == Reading::Proof || !matches!(f, Family::Gamma10 | Family::Gamma11)
    }
}

/// Whether a family fixes the switching class of its core.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// Any signature works (validated by oracle over all classes).
    Any,
    /// Must be switching equivalent to the template's signature.
    Class,
}

/// A family as a core graph with pendant sites.
#[derive(Clone, Debug)]
pub struct FamilyTemplate {
    pub family: Family,
    pub core: SignedGraph,
    pub base_cycle: Vec<usize>,
    /// `(parameter letter, core vertex)` in letter order.
    pub sites: Vec<(char, usize)>,
    /// Core vertex that must carry `t >= 1` pendants.
    pub star_site: Option<usize>,
    pub sign_rule: SignRule,
}

impl FamilyTemplate {
    pub fn site_of(&self, letter: char) -> Option<usize> {
        self.sites.iter().find(|(l, _)| *l == letter).map(|&(_, v)| v)
    }

    pub fn girth(&self) -> usize {
        self.base_cycle.len()
    }
}

fn theta_core(a: usize, b: usize, c: usize, class: ThetaClass) -> (SignedGraph, Vec<usize>) {
    let g = gen_theta(&ThetaSpec::class(a, b, c, class)).expect("fixed theta spec");
    (g, theta_base_cycle(a, b, c))
}

pub fn template(f: Family) -> FamilyTemplate {
    use ThetaClass::{Negative, Positive};
    let fan = || (gen_fan_core([Sign::Pos; 6]), vec![0, 3, 2, 5, 1, 4]);
    let (core, base_cycle, sites, star_site, sign_rule): (_, _, Vec<(char, usize)>, _, _) = match f {
        Family::Gamma1 => {
            let (g, c) = fan();
            (g, c, vec![('a', 0), ('b', 1), ('c', 2)], Some(9), SignRule::Any)
        }
        Family::Gamma5 => {
            let (g, c) = fan();
            (g, c, vec![('a', 0), ('b', 1), ('c', 2)], None, SignRule::Any)
        }
        Family::Gamma2 => {
            let (g, c) = theta_core(5, 3, 5, Positive);
            (g, c, vec![('a', 0), ('b', 1), ('c', 4)], Some(8), SignRule::Any)
        }
        Family::Gamma3 => {
            let (g, c) = theta_core(5, 4, 5, Positive);
            let s = vec![('a', 0), ('b', 1), ('c', 5), ('d', 2), ('e', 3)];
            (g, c, s, Some(9), SignRule::Any)
        }
        Family::Theta445Neg => {
            let (g, c) = theta_core(4, 4, 5, Negative);
            (g, c, vec![], None, SignRule::Class)
        }
        Family::Gamma6 => {
            let (g, c) = theta_core(5, 3, 5, Positive);
            (
                g,
                c,
                vec![('a', 0), ('b', 1), ('c', 4), ('d', 2)],
                None,
                SignRule::Class,
            )
        }
        Family::Gamma7 => {
            let (g, c) = theta_core(5, 3, 5, Negative);
            let s = vec![('a', 0), ('b', 1), ('c', 4), ('d', 3), ('e', 5)];
            (g, c, s, None, SignRule::Class)
        }
        Family::Gamma8 => {
            let (g, c) = theta_core(5, 4, 5, Positive);
            let s = vec![('a', 0), ('b', 1), ('c', 5), ('d', 2), ('e', 3)];
            (g, c, s, None, SignRule::Class)
        }
        Family::Gamma9 => {
            let (g, c) = theta_core(5, 4, 5, Negative);
            let s = vec![('a', 0), ('b', 1), ('c', 5), ('d', 2), ('e', 3), ('f', 4), ('g', 6)];
            (g, c, s, None, SignRule::Class)
        }
        Family::Gamma10 => {
            let (g, c) = theta_core(5, 4, 6, Positive);
            (g, c, vec![('a', 4), ('b', 6)], None, SignRule::Class)
        }
        Family::Gamma11 => {
            let (g, c) = theta_core(6, 3, 6, Negative);
            (g, c, vec![('a', 2)], None, SignRule::Class)
        }
    };
    FamilyTemplate {
        family: f,
        core,
        base_cycle,
        sites,
        star_site,
        sign_rule,
    }
}

/// Checks a family's side condition on the set of nonzero parameters.
pub fn side_condition(f: Family, reading: Reading, nonzero: &[char]) -> Result<(), FamilyError> {
    let has = |c: char| nonzero.contains(&c);
    let abc = has('a') || has('b') || has('c');
    let n = nonzero.len();
    match f {
        Family::Gamma3 if has('d') && has('e') => Err(FamilyError::SideCondition("d, e cannot both be non-zero")),
        Family::Gamma6 if abc && has('d') => Err(FamilyError::SideCondition(
            "d must be zero if any one of a, b, c is non-zero",
        )),
        Family::Gamma7 if abc && (has('d') || has('e')) => Err(FamilyError::SideCondition(
            "if a, b, c are not all zero then d = e = 0",
        )),
        Family::Gamma8 => match reading {
            Reading::Statement if n > 3 || (abc && (has('d') || has('e'))) => Err(FamilyError::SideCondition(
                "at most three of a, b, c, d and e are non-zero, and a, b, c are all zero whenever one of d, e is non-zero",
            )),
            Reading::Proof if n > 4 || (abc && has('d') && has('e')) => Err(FamilyError::SideCondition(
                "at most four of them are non-zero, and a, b, c are all zero whenever d and e are both non-zero",
            )),
            _ => Ok(()),
        },
        Family::Gamma9 => {
            let in_abc = nonzero.iter().all(|c| "abc".contains(*c));
            let ok = match n {
                0 | 1 => true,
                2 => {
                    let pair: String = nonzero.iter().collect();
                    in_abc || ["ad", "ae", "bd", "be", "fg"].contains(&pair.as_str())
                }
                3 => in_abc,
                _ => false,
            };
            if ok {
                Ok(())
            } else {
                Err(FamilyError::SideCondition(
                    "at most three of them are non-zero, namely a, b, c; if exactly two are non-zero they are two of a, b, c or one of ae, ad, be, bd, fg",
                ))
            }
        }
        _ => Ok(()),
    }
}

/// Parameters of an attachment family member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// Pendant counts by site letter; absent letters are zero.
    pub counts: BTreeMap<char, usize>,
    /// Pendants at `x'` (families with a far star only).
    pub t: usize,
}

impl FamilyParams {
    pub fn nonzero(&self) -> Vec<char> {
        self.counts.iter().filter(|(_, &v)| v > 0).map(|(&k, _)| k).collect()
    }
}

/// Builds a member of an attachment family and checks that its negative
/// inertia index is `⌈g/2⌉ + 1`.
pub fn gen_gamma(f: Family, params: &FamilyParams, reading: Reading) -> Result<SignedGraph, FamilyError> {
    let tpl = template(f);
    for &letter in params.counts.keys() {
        if tpl.site_of(letter).is_none() {
            return Err(FamilyError::UnknownParameter(letter));
        }
    }
    match tpl.star_site {
        Some(_) if params.t == 0 => return Err(FamilyError::MissingStar),
        None if params.t > 0 => return Err(FamilyError::UnknownParameter('t')),
        _ => {}
    }
    side_condition(f, reading, &params.nonzero())?;
    let mut g = tpl.core.clone();
    for &(letter, v) in &tpl.sites {
        let count = params.counts.get(&letter).copied().unwrap_or(0);
        g = g.add_pendants(v, count, Sign::Pos);
    }
    if let Some(x) = tpl.star_site {
        g = g.add_pendants(x, params.t, Sign::Pos);
    }
    let expected = target_index(tpl.girth());
    let got = negative_inertia(&g);
    if got != expected {
        return Err(FamilyError::OracleMismatch { got, expected });
    }
    Ok(g)
}

/// The two star-join families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JoinKind {
    /// Star centre joined to exactly one pendant vertex of the base.
    AtPendant,
    /// Star centre joined to `k >= 1` base vertices, at least one on its cycle.
    AtCycle,
}

/// `K_{1,t}(centre) ⊙ᵏ base`. The star occupies vertices `0..=t` (centre
/// 0); base vertex `v` becomes `v + t + 1`. Validates the base, the
/// attachment and the resulting negative inertia index.
pub fn gen_kjoin_family(
    kind: JoinKind,
    t: usize,
    base: &SignedGraph,
    targets: &[usize],
) -> Result<SignedGraph, FamilyError> {
    let star = gen_star(t)?;
    let decomposition =
        canonical_unicyclic_check(base).map_err(|e| FamilyError::JoinBase(format!("not canonical unicyclic: {e}")))?;
    let g0 = decomposition.girth;
    if !matches!(g0 % 4, 2 | 3) {
        return Err(FamilyError::JoinBase(format!("girth {g0} is not 2 or 3 mod 4")));
    }
    if !is_balanced(base) {
        return Err(FamilyError::JoinBase("cycle is unbalanced".into()));
    }
    if !thm11_predicate(base).map_err(|e| FamilyError::JoinBase(e.to_string()))? {
        return Err(FamilyError::JoinBase(format!("i- is not ⌈{g0}/2⌉")));
    }
    let cycle = unique_cycle(base).map_err(|e| FamilyError::JoinBase(e.to_string()))?;
    match kind {
        JoinKind::AtPendant => {
            if decomposition.is_pure_cycle() {
                return Err(FamilyError::JoinBase("base must have attached stars".into()));
            }
            if targets.len() != 1 {
                return Err(FamilyError::JoinAttachment("exactly one target required".into()));
            }
            if targets[0] >= base.order() || base.degree(targets[0]) != 1 {
                return Err(FamilyError::JoinAttachment(format!(
                    "vertex {} is not a pendant vertex",
                    targets[0]
                )));
            }
        }
        JoinKind::AtCycle => {
            if targets.is_empty() || !targets.iter().any(|&v| cycle.contains(v)) {
                return Err(FamilyError::JoinAttachment(
                    "at least one target must lie on the cycle".into(),
                ));
            }
        }
    }
    let g = k_join(&star, 0, base, targets, &vec![Sign::Pos; targets.len()])?;
    if girth(&g) != Some(g0) {
        return Err(FamilyError::JoinAttachment("join creates a shorter cycle".into()));
    }
    let expected = target_index(g0);
    let got = negative_inertia(&g);
    if got != expected {
        return Err(FamilyError::OracleMismatch { got, expected });
    }
    Ok(g)
}

/// Cycle vertices where one added pendant keeps `i₋` at `target`, ascending.
pub fn discover_attachments(base: &SignedGraph, cycle: &[usize], target: usize) -> Vec<usize> {
    let mut out: Vec<usize> = cycle
        .iter()
        .copied()
        .filter(|&v| negative_inertia(&base.add_pendants(v, 1, Sign::Pos)) == target)
        .collect();
    out.sort_unstable();
    out
}

/// Every subset of `sites` (as index sets) whose pendant attachment keeps
/// `i₋` at `target`. One pendant per site suffices: further pendants at the
/// same vertex do not change `i₋`.
pub fn admissible_supports(base: &SignedGraph, sites: &[usize], target: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << sites.len()) {
        let chosen: Vec<usize> = (0..sites.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut g = base.clone();
        for &i in &chosen {
            g = g.add_pendants(sites[i], 1, Sign::Pos);
        }
        if negative_inertia(&g) == target {
            out.push(chosen);
        }
    }
    out.sort();
    out
}

/// Serializable description of any generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    Cycle {
        n: usize,
        balanced: bool,
    },
    Path {
        n: usize,
    },
    Star {
        t: usize,
    },
    Theta(ThetaSpec),
    CanonicalUnicyclic {
        girth: usize,
        placements: Vec<(usize, usize)>,
        balanced: bool,
    },
    Gamma {
        family: Family,
        params: FamilyParams,
        reading: Reading,
    },
    KJoin {
        join: JoinKind,
        t: usize,
        base: Box<FamilySpec>,
        targets: Vec<usize>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<SignedGraph, FamilyError> {
        match self {
            FamilySpec::Cycle { n, balanced } => gen_cycle(*n, *balanced),
            FamilySpec::Path { n } => gen_path(*n, &vec![Sign::Pos; n.saturating_sub(1)]),
            FamilySpec::Star { t } => gen_star(*t),
            FamilySpec::Theta(s) => gen_theta(s),
            FamilySpec::CanonicalUnicyclic {
                girth,
                placements,
                balanced,
            } => gen_canonical_unicyclic(*girth, placements, *balanced),
            FamilySpec::Gamma {
                family,
                params,
                reading,
            } => gen_gamma(*family, params, *reading),
            FamilySpec::KJoin { join, t, base, targets } => gen_kjoin_family(*join, *t, &base.build()?, targets),
        }
    }
}
