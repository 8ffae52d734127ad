//! Module predicates, closures, and strong modules.
//!
//! Both hypergraphs and tournaments implement [`ModularStructure`]. Everything
//! else here is generic over it.
//!
//! The workhorse is [`ModularStructure::module_closure`], the smallest module
//! containing a given set. For both structures it is a polynomial fixpoint:
//! a violation of the module condition always forces a specific set of
//! outside vertices into every module containing the current set.

use crate::decomposition::partition::ModularPartition;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Induced};
use crate::tournament::Tournament;
use crate::vertex_set::VertexSet;

/// Default bound on the order for exhaustive subset scans.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 20;

/// Hard ceiling for exhaustive subset scans, whatever the configuration.
pub const MAX_BRUTE_FORCE_BOUND: usize = 30;

/// Limits for operations that scan all `2^n` vertex subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub brute_force_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_force_bound: DEFAULT_BRUTE_FORCE_BOUND,
        }
    }
}

impl Limits {
    pub fn check(&self, order: usize) -> Result<()> {
        let bound = self.brute_force_bound.min(MAX_BRUTE_FORCE_BOUND);
        if order > bound {
            Err(Error::Capacity { order, bound })
        } else {
            Ok(())
        }
    }
}

/// A structure on `{0, .., n-1}` with a notion of module whose modules form
/// a (weakly) partitive family.
pub trait ModularStructure: Sized + Clone {
    /// Label attached to internal nodes of the decomposition tree.
    type Label: Copy + Eq + std::fmt::Debug;

    fn order(&self) -> usize;

    fn is_module(&self, m: VertexSet) -> bool;

    /// Smallest module containing `s`.
    fn module_closure(&self, s: VertexSet) -> VertexSet;

    /// When the quotient by the maximal strong modules is degenerate (not
    /// prime), the partition into those modules. `None` when it is prime.
    fn degenerate_partition(&self) -> Option<Vec<VertexSet>>;

    fn induced_structure(&self, w: VertexSet) -> Result<Induced<Self>>;

    /// Quotient by a modular partition; vertex `i` is `partition.blocks()[i]`.
    fn quotient(&self, partition: &ModularPartition) -> Result<Self>;

    /// Classifies a quotient by the maximal strong modules.
    fn classify_quotient(quotient: &Self) -> Self::Label;
}

// ---------------------------------------------------------------------------
// Hypergraphs

/// First edge witnessing that `m` is not a module of `h`.
pub fn module_violation(h: &Hypergraph, m: VertexSet) -> Option<VertexSet> {
    h.edges().iter().copied().find(|&e| edge_violates(h, e, m))
}

#[inline]
fn edge_violates(h: &Hypergraph, e: VertexSet, m: VertexSet) -> bool {
    let inside = e.intersection(m);
    if inside.is_empty() || e.is_subset(m) {
        return false;
    }
    if inside.len() != 1 {
        return true;
    }
    let rest = e.difference(inside);
    m.difference(inside).iter().any(|n| !h.contains_edge(rest.with(n)))
}

/// Module predicate for hypergraphs: every edge meeting both `m` and its
/// complement meets `m` in a single vertex, freely swappable within `m`.
pub fn is_module(h: &Hypergraph, m: VertexSet) -> bool {
    module_violation(h, m).is_none()
}

/// The classical hypergraph module: equal-size sets agreeing outside `m`
/// (and not contained in it) are edges together or not at all.
///
/// Every module is a usual module; the converse fails in general.
pub fn is_usual_module(h: &Hypergraph, m: VertexSet) -> bool {
    let members = m.to_vec();
    h.edges().iter().all(|&e| {
        let inside = e.intersection(m);
        if inside.is_empty() || e.is_subset(m) {
            return true;
        }
        let outside = e.difference(m);
        let k = inside.len();
        subsets_of_size(members.len(), k).all(|pick| {
            let replacement: VertexSet = pick.iter().map(|i| members[i]).collect();
            h.contains_edge(outside.union(replacement))
        })
    })
}

/// All `k`-subsets of `{0, .., n-1}` in Gosper order.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let first: Option<u64> = match k {
        0 => Some(0),
        _ if k > n => None,
        64 => Some(u64::MAX),
        _ => Some((1u64 << k) - 1),
    };
    std::iter::successors(first, move |&x| {
        if x == 0 || x == limit {
            return None;
        }
        let c = x & x.wrapping_neg();
        let (r, overflow) = x.overflowing_add(c);
        if overflow {
            return None;
        }
        let next = (((r ^ x) >> 2) / c) | r;
        (next & !limit == 0).then_some(next)
    })
    .map(VertexSet::from_bits)
}

/// Vertex sets of the connected components (edge-overlap reachability),
/// ordered by smallest vertex. Isolated vertices are singleton components.
pub fn components(h: &Hypergraph) -> Vec<VertexSet> {
    let n = h.order();
    let mut reach = vec![VertexSet::EMPTY; n];
    for &e in h.edges() {
        for v in e {
            reach[v] = reach[v].union(e);
        }
    }
    components_from_adjacency(&reach)
}

fn components_from_adjacency(adj: &[VertexSet]) -> Vec<VertexSet> {
    let mut seen = VertexSet::EMPTY;
    let mut out = Vec::new();
    for v in 0..adj.len() {
        if seen.contains(v) {
            continue;
        }
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(adj[u]);
            }
            frontier = next.difference(comp);
            comp = comp.union(next);
        }
        seen = seen.union(comp);
        out.push(comp);
    }
    out
}

/// Components of the hypergraph obtained by toggling every 2-subset
/// (2-edges removed, missing pairs added). It has the same modules.
fn pair_complement_components(h: &Hypergraph) -> Vec<VertexSet> {
    let n = h.order();
    let all = VertexSet::full(n);
    let mut adj: Vec<VertexSet> = (0..n).map(|v| all.without(v)).collect();
    for &e in h.edges().iter().filter(|e| e.len() == 2) {
        let (a, b) = (e.first().unwrap(), e.last().unwrap());
        adj[a].remove(b);
        adj[b].remove(a);
    }
    // Larger edges go second: a pair inside one must not cut it apart.
    for &e in h.edges().iter().filter(|e| e.len() > 2) {
        for v in e {
            adj[v] = adj[v].union(e.without(v));
        }
    }
    components_from_adjacency(&adj)
}

impl ModularStructure for Hypergraph {
    type Label = HyperLabel;

    fn order(&self) -> usize {
        Hypergraph::order(self)
    }

    fn is_module(&self, m: VertexSet) -> bool {
        is_module(self, m)
    }

    fn module_closure(&self, s: VertexSet) -> VertexSet {
        // An edge that violates the condition for the current set must lie
        // entirely inside any module containing that set.
        let mut m = s;
        loop {
            let mut grown = m;
            for &e in self.edges() {
                if edge_violates(self, e, m) {
                    grown = grown.union(e);
                }
            }
            if grown == m {
                return m;
            }
            m = grown;
        }
    }

    fn degenerate_partition(&self) -> Option<Vec<VertexSet>> {
        let comps = components(self);
        if comps.len() >= 2 {
            return Some(comps);
        }
        let co = pair_complement_components(self);
        (co.len() >= 2).then_some(co)
    }

    fn induced_structure(&self, w: VertexSet) -> Result<Induced<Self>> {
        self.induced(w)
    }

    fn quotient(&self, partition: &ModularPartition) -> Result<Self> {
        quotient(self, partition)
    }

    fn classify_quotient(q: &Self) -> HyperLabel {
        if q.is_edgeless() {
            HyperLabel::Empty
        } else if q.is_complete_graph() {
            HyperLabel::Complete
        } else {
            assert!(
                is_prime(q),
                "quotient by the maximal strong modules is neither empty, complete nor prime"
            );
            HyperLabel::Prime
        }
    }
}

/// Quotient `H/P`: a set of blocks is an edge iff it has at least two blocks
/// and is exactly the set of blocks met by some edge of `H`.
pub fn quotient(h: &Hypergraph, p: &ModularPartition) -> Result<Hypergraph> {
    p.validate_for(h)?;
    let edges: Vec<VertexSet> = h
        .edges()
        .iter()
        .map(|&e| p.blocks_meeting(e))
        .filter(|b| b.len() >= 2)
        .collect();
    Hypergraph::new(p.len(), edges)
}

// ---------------------------------------------------------------------------
// Tournaments

/// Interval condition: no outside vertex `v` with `x -> v -> y` for
/// `x, y` in `m`.
pub fn is_tournament_module(t: &Tournament, m: VertexSet) -> bool {
    t.vertices()
        .difference(m)
        .iter()
        .all(|v| m.is_subset(t.out_neighbors(v)) || m.is_subset(t.in_neighbors(v)))
}

/// Strongly connected components, ordered by smallest vertex.
pub fn strong_components(t: &Tournament) -> Vec<VertexSet> {
    let n = t.order();
    let closure = |step: &dyn Fn(usize) -> VertexSet, v: usize| {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(step(u));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    };
    let mut assigned = VertexSet::EMPTY;
    let mut out = Vec::new();
    for v in 0..n {
        if assigned.contains(v) {
            continue;
        }
        let fwd = closure(&|u| t.out_neighbors(u), v);
        let bwd = closure(&|u| t.in_neighbors(u), v);
        let scc = fwd.intersection(bwd);
        assigned = assigned.union(scc);
        out.push(scc);
    }
    out
}

impl ModularStructure for Tournament {
    type Label = TournamentLabel;

    fn order(&self) -> usize {
        Tournament::order(self)
    }

    fn is_module(&self, m: VertexSet) -> bool {
        is_tournament_module(self, m)
    }

    fn module_closure(&self, s: VertexSet) -> VertexSet {
        let mut m = s;
        loop {
            let forced: VertexSet = self
                .vertices()
                .difference(m)
                .iter()
                .filter(|&v| {
                    !m.is_disjoint(self.in_neighbors(v)) && !m.is_disjoint(self.out_neighbors(v))
                })
                .collect();
            if forced.is_empty() {
                return m;
            }
            m = m.union(forced);
        }
    }

    fn degenerate_partition(&self) -> Option<Vec<VertexSet>> {
        let comps = strong_components(self);
        (comps.len() >= 2).then_some(comps)
    }

    fn induced_structure(&self, w: VertexSet) -> Result<Induced<Self>> {
        self.induced(w)
    }

    fn quotient(&self, partition: &ModularPartition) -> Result<Self> {
        tournament_quotient(self, partition)
    }

    fn classify_quotient(q: &Self) -> TournamentLabel {
        if q.is_linear_order() {
            TournamentLabel::Linear
        } else {
            assert!(
                is_prime(q),
                "quotient by the maximal strong modules is neither linear nor prime"
            );
            TournamentLabel::Prime
        }
    }
}

/// Quotient `T/P`, oriented by any representative pair.
pub fn tournament_quotient(t: &Tournament, p: &ModularPartition) -> Result<Tournament> {
    p.validate_for(t)?;
    let reps: Vec<usize> = p.blocks().iter().map(|b| b.first().unwrap()).collect();
    Tournament::from_fn(p.len(), |i, j| t.has_arc(reps[i], reps[j]))
}

// ---------------------------------------------------------------------------
// Labels

/// Class of an internal node of a hypergraph decomposition tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HyperLabel {
    /// The quotient is prime (△).
    Prime,
    /// The quotient is edgeless (◯).
    Empty,
    /// The quotient is a complete graph (●).
    Complete,
}

impl HyperLabel {
    pub fn symbol(self) -> &'static str {
        match self {
            HyperLabel::Prime => "△",
            HyperLabel::Empty => "◯",
            HyperLabel::Complete => "●",
        }
    }
}

/// Class of an internal node of a tournament decomposition tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TournamentLabel {
    Linear,
    Prime,
}

impl TournamentLabel {
    pub fn name(self) -> &'static str {
        match self {
            TournamentLabel::Linear => "linear",
            TournamentLabel::Prime => "prime",
        }
    }
}

// ---------------------------------------------------------------------------
// Generic operations

/// Every module, by exhaustive scan. Includes the trivial ones.
pub fn enumerate_modules<S: ModularStructure>(s: &S, limits: Limits) -> Result<Vec<VertexSet>> {
    let n = s.order();
    limits.check(n)?;
    let mut out: Vec<VertexSet> = (0u64..1 << n)
        .map(VertexSet::from_bits)
        .filter(|&m| s.is_module(m))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Every usual module of a hypergraph, by exhaustive scan.
pub fn enumerate_usual_modules(h: &Hypergraph, limits: Limits) -> Result<Vec<VertexSet>> {
    let n = h.order();
    limits.check(n)?;
    let mut out: Vec<VertexSet> = (0u64..1 << n)
        .map(VertexSet::from_bits)
        .filter(|&m| is_usual_module(h, m))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Table of `module_closure({a, b})`, row-major over `a, b`.
pub(crate) struct PairClosures {
    n: usize,
    table: Vec<VertexSet>,
}

impl PairClosures {
    pub(crate) fn new<S: ModularStructure>(s: &S) -> Self {
        let n = s.order();
        let mut table = vec![VertexSet::EMPTY; n * n];
        for a in 0..n {
            table[a * n + a] = VertexSet::singleton(a);
            for b in a + 1..n {
                let c = s.module_closure(VertexSet::singleton(a).with(b));
                table[a * n + b] = c;
                table[b * n + a] = c;
            }
        }
        PairClosures { n, table }
    }

    #[inline]
    pub(crate) fn get(&self, a: usize, b: usize) -> VertexSet {
        self.table[a * self.n + b]
    }

    /// A module `m` overlaps no module iff for every `a` in `m` and `b`
    /// outside it, the closure of `{a, b}` contains `m`: an overlapping
    /// module through `a` and `b` would contain that closure.
    pub(crate) fn is_strong(&self, m: VertexSet) -> bool {
        let outside = VertexSet::full(self.n).difference(m);
        m.iter().all(|a| outside.iter().all(|b| m.is_subset(self.get(a, b))))
    }
}

/// A module that overlaps no other module.
pub fn is_strong_module<S: ModularStructure>(s: &S, m: VertexSet) -> bool {
    if !m.within(s.order()) || !s.is_module(m) {
        return false;
    }
    let n = s.order();
    let outside = VertexSet::full(n).difference(m);
    m.iter().all(|a| {
        outside
            .iter()
            .all(|b| m.is_subset(s.module_closure(VertexSet::singleton(a).with(b))))
    })
}

/// All strong modules, including the empty set.
pub fn strong_modules<S: ModularStructure>(s: &S, limits: Limits) -> Result<Vec<VertexSet>> {
    let modules = enumerate_modules(s, limits)?;
    let pairs = PairClosures::new(s);
    Ok(modules.into_iter().filter(|&m| pairs.is_strong(m)).collect())
}

/// Order at least 3 and every module trivial.
pub fn is_prime<S: ModularStructure>(s: &S) -> bool {
    let n = s.order();
    if n < 3 {
        return false;
    }
    let all = VertexSet::full(n);
    // A nontrivial module contains some pair whose closure it contains.
    (0..n).all(|a| (a + 1..n).all(|b| s.module_closure(VertexSet::singleton(a).with(b)) == all))
}

/// The maximal proper strong modules, as blocks ordered by smallest vertex.
pub(crate) fn maximal_proper_strong_blocks<S: ModularStructure>(s: &S) -> Vec<VertexSet> {
    let n = s.order();
    debug_assert!(n >= 2);
    if let Some(parts) = s.degenerate_partition() {
        return parts;
    }
    // Prime quotient: two vertices share a block iff their closure is proper.
    let all = VertexSet::full(n);
    let mut assigned = VertexSet::EMPTY;
    let mut blocks = Vec::new();
    for a in 0..n {
        if assigned.contains(a) {
            continue;
        }
        let block: VertexSet = (0..n)
            .filter(|&b| b == a || s.module_closure(VertexSet::singleton(a).with(b)) != all)
            .collect();
        assigned = assigned.union(block);
        blocks.push(block);
    }
    blocks
}

/// `Π(S)`: the maximal proper strong modules, as a modular partition.
pub fn maximal_proper_strong_modules<S: ModularStructure>(s: &S) -> Result<ModularPartition> {
    if s.order() < 2 {
        return Err(Error::Precondition(format!(
            "the maximal proper strong modules need at least two vertices, got {}",
            s.order()
        )));
    }
    ModularPartition::new(s, maximal_proper_strong_blocks(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn fan_hypergraph() -> Hypergraph {
        Hypergraph::from_lists(5, &[[0, 1, 2], [0, 1, 3], [0, 1, 4]]).unwrap()
    }

    fn two_edge() -> Hypergraph {
        Hypergraph::from_lists(4, &[[0, 1, 2], [0, 1, 3]]).unwrap()
    }

    #[test]
    fn module_predicate_examples() {
        let h = fan_hypergraph();
        assert!(!is_module(&h, set(&[0, 1])));
        assert_eq!(module_violation(&h, set(&[0, 1])), Some(set(&[0, 1, 2])));
        assert!(is_module(&h, h.vertices()));
        assert!(is_module(&two_edge(), set(&[2, 3])));
    }

    #[test]
    fn usual_module_examples() {
        let h = fan_hypergraph();
        assert!(is_usual_module(&h, set(&[0, 1])));
        assert!(is_usual_module(&h, set(&[3])));
        let single = Hypergraph::from_lists(4, &[[0, 1, 2]]).unwrap();
        assert!(!is_usual_module(&single, set(&[2, 3])));
        let usual = enumerate_usual_modules(&h, Limits::default()).unwrap();
        let modules = enumerate_modules(&h, Limits::default()).unwrap();
        assert!(modules.iter().all(|m| usual.contains(m)));
        assert!(usual.contains(&set(&[0, 1])) && !modules.contains(&set(&[0, 1])));
    }

    #[test]
    fn pair_inside_a_larger_edge() {
        let h = Hypergraph::from_lists(3, &[vec![0, 1, 2], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(is_prime(&h));
        assert_eq!(maximal_proper_strong_blocks(&h), vec![set(&[0]), set(&[1]), set(&[2])]);
    }

    #[test]
    fn gosper_subsets() {
        let subs: Vec<Vec<usize>> = subsets_of_size(4, 2).map(|s| s.to_vec()).collect();
        assert_eq!(subs.len(), 6);
        assert_eq!(subs[0], vec![0, 1]);
        assert_eq!(subsets_of_size(3, 0).count(), 1);
        assert_eq!(subsets_of_size(3, 3).count(), 1);
        assert_eq!(subsets_of_size(2, 3).count(), 0);
        assert_eq!(subsets_of_size(64, 1).count(), 64);
    }

    #[test]
    fn enumerate_examples() {
        let empty = Hypergraph::empty(3);
        assert_eq!(enumerate_modules(&empty, Limits::default()).unwrap().len(), 8);
        let single = Hypergraph::from_lists(3, &[[0, 1, 2]]).unwrap();
        let mods = enumerate_modules(&single, Limits::default()).unwrap();
        assert_eq!(
            mods,
            vec![set(&[]), set(&[0]), set(&[0, 1, 2]), set(&[1]), set(&[2])]
        );
        let big = Hypergraph::empty(21);
        assert_eq!(
            enumerate_modules(&big, Limits::default()),
            Err(Error::Capacity {
                order: 21,
                bound: 20
            })
        );
    }

    #[test]
    fn strong_module_examples() {
        let empty = Hypergraph::empty(3);
        let strong = strong_modules(&empty, Limits::default()).unwrap();
        assert_eq!(strong, vec![set(&[]), set(&[0]), set(&[0, 1, 2]), set(&[1]), set(&[2])]);
        assert!(is_module(&empty, set(&[0, 1])));
        assert!(!is_strong_module(&empty, set(&[0, 1])));
        assert!(is_strong_module(&two_edge(), set(&[2, 3])));
    }

    #[test]
    fn closures() {
        let h = two_edge();
        assert_eq!(h.module_closure(set(&[2, 3])), set(&[2, 3]));
        assert_eq!(h.module_closure(set(&[0, 2])), set(&[0, 1, 2, 3]));
        let l3 = Tournament::linear_order(3).unwrap();
        assert_eq!(l3.module_closure(set(&[0, 2])), set(&[0, 1, 2]));
        assert_eq!(l3.module_closure(set(&[1, 2])), set(&[1, 2]));
    }

    #[test]
    fn pi_examples() {
        let p = maximal_proper_strong_modules(&Hypergraph::empty(4)).unwrap();
        assert_eq!(p.blocks().len(), 4);
        let p = maximal_proper_strong_modules(&two_edge()).unwrap();
        assert_eq!(p.blocks(), &[set(&[0]), set(&[1]), set(&[2, 3])]);
        let single = Hypergraph::from_lists(3, &[[0, 1, 2]]).unwrap();
        assert_eq!(maximal_proper_strong_modules(&single).unwrap().len(), 3);
        assert!(maximal_proper_strong_modules(&Hypergraph::empty(1)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let h = two_edge();
        let p = maximal_proper_strong_modules(&h).unwrap();
        let q = quotient(&h, &p).unwrap();
        assert_eq!(q.edges(), &[set(&[0, 1, 2])]);

        let singletons = ModularPartition::new(&h, (0..4).map(VertexSet::singleton).collect()).unwrap();
        assert_eq!(quotient(&h, &singletons).unwrap(), h);

        let e = Hypergraph::empty(4);
        let p = ModularPartition::new(&e, vec![set(&[0, 1]), set(&[2, 3])]).unwrap();
        assert!(quotient(&e, &p).unwrap().is_edgeless());
    }

    #[test]
    fn components_examples() {
        let c: Vec<_> = components(&Hypergraph::empty(3));
        assert_eq!(c, vec![set(&[0]), set(&[1]), set(&[2])]);
        let h = Hypergraph::from_lists(4, &[[0, 1, 2]]).unwrap();
        assert_eq!(components(&h), vec![set(&[0, 1, 2]), set(&[3])]);
        let h = Hypergraph::from_lists(6, &[[0, 1, 2], [2, 3, 4]]).unwrap();
        assert_eq!(components(&h), vec![set(&[0, 1, 2, 3, 4]), set(&[5])]);
    }

    #[test]
    fn tournament_modules() {
        let l3 = Tournament::linear_order(3).unwrap();
        let mods = enumerate_modules(&l3, Limits::default()).unwrap();
        assert_eq!(
            mods,
            vec![set(&[]), set(&[0]), set(&[0, 1]), set(&[0, 1, 2]), set(&[1]), set(&[1, 2]), set(&[2])]
        );
        let c3 = Tournament::three_cycle();
        assert_eq!(enumerate_modules(&c3, Limits::default()).unwrap().len(), 5);
        assert!(is_prime(&c3));
        assert!(!is_prime(&l3));
        assert_eq!(strong_components(&l3).len(), 3);
        assert_eq!(strong_components(&c3), vec![set(&[0, 1, 2])]);
    }

    #[test]
    fn prime_needs_three_vertices() {
        assert!(!is_prime(&Hypergraph::empty(2)));
        assert!(!is_prime(&Hypergraph::from_lists(2, &[[0, 1]]).unwrap()));
        assert!(is_prime(&Hypergraph::from_lists(3, &[[0, 1, 2]]).unwrap()));
    }
}
