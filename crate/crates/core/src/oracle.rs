//! Exhaustive ground truth for tests and cross-checks.
//!
//! Nothing here goes through the decomposition tree or the realization
//! pipeline: tournaments are enumerated by counter, modules are checked
//! straight from their definitions, and strong modules by pairwise overlap.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::{enumerate_modules, Limits, ModularStructure};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tournament::Tournament;
use crate::vertex_set::VertexSet;

/// Largest order for exhaustive tournament scans.
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The tournament whose `k`-th unordered pair (in `(i, j)`, `i < j`
/// lexicographic order) is oriented `i -> j` iff bit `k` of `code` is set.
pub fn tournament_from_code(n: usize, code: u64) -> Tournament {
    let mut bit = 0;
    Tournament::from_fn(n, |_, _| {
        let b = code >> bit & 1 == 1;
        bit += 1;
        b
    })
    .expect("order within range")
}

/// All `2^(n(n-1)/2)` tournaments on `n` vertices.
pub fn all_tournaments(n: usize) -> Result<impl Iterator<Item = Tournament>> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::Capacity {
            order: n,
            bound: MAX_EXHAUSTIVE_ORDER,
        });
    }
    Ok((0u64..1 << pair_count(n)).map(move |code| tournament_from_code(n, code)))
}

/// Every tournament whose 3-cycle structure is `h`.
pub fn brute_force_realizations(h: &Hypergraph) -> Result<Vec<Tournament>> {
    let n = h.order();
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::Capacity {
            order: n,
            bound: MAX_EXHAUSTIVE_ORDER,
        });
    }
    if !h.is_3_uniform() {
        return Ok(Vec::new());
    }
    let total = 1u64 << pair_count(n);
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(16) as u64;
    if total < 4096 || workers == 1 {
        return Ok(scan(h, 0..total));
    }
    let chunk = total.div_ceil(workers);
    let mut found = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = w * chunk..((w + 1) * chunk).min(total);
                scope.spawn(move || scan(h, range))
            })
            .collect();
        for handle in handles {
            found.extend(handle.join().expect("scan worker panicked"));
        }
    });
    Ok(found)
}

fn scan(h: &Hypergraph, codes: std::ops::Range<u64>) -> Vec<Tournament> {
    let n = h.order();
    codes
        .map(|code| tournament_from_code(n, code))
        .filter(|t| per_triple_matches(t, h))
        .collect()
}

/// Compares triple by triple, with early exit.
fn per_triple_matches(t: &Tournament, h: &Hypergraph) -> bool {
    let n = t.order();
    let mut cycles = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let cyclic = t.is_three_cycle(a, b, c);
                if cyclic != h.contains_edge(VertexSet::from_iter([a, b, c])) {
                    return false;
                }
                cycles += cyclic as usize;
            }
        }
    }
    cycles == h.edge_count()
}

/// The module condition read literally off the definition, on vertex lists.
pub fn naive_is_module(h: &Hypergraph, m: &[usize]) -> bool {
    let in_m = |v: usize| m.contains(&v);
    h.edges().iter().all(|e| {
        let e = e.to_vec();
        let inside: Vec<usize> = e.iter().copied().filter(|&v| in_m(v)).collect();
        let meets_outside = e.iter().any(|&v| !in_m(v));
        if inside.is_empty() || !meets_outside {
            return true;
        }
        if inside.len() != 1 {
            return false;
        }
        let mid = inside[0];
        m.iter().all(|&n| {
            let mut f: Vec<usize> = e.iter().copied().filter(|&v| v != mid).collect();
            f.push(n);
            h.contains_edge(f.into_iter().collect())
        })
    })
}

/// Tournament module condition read literally: no `x -> v -> y` with
/// `x, y` inside and `v` outside.
pub fn naive_is_tournament_module(t: &Tournament, m: &[usize]) -> bool {
    (0..t.order()).filter(|v| !m.contains(v)).all(|v| {
        !m.iter()
            .any(|&x| m.iter().any(|&y| t.has_arc(x, v) && t.has_arc(v, y)))
    })
}

/// Strong modules by comparing every module against every other.
pub fn strong_by_overlap(modules: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = modules
        .iter()
        .copied()
        .filter(|&m| modules.iter().all(|&n| !m.overlaps(n)))
        .collect();
    out.sort_unstable();
    out
}

/// Searches all vertex permutations for an isomorphism `a -> b`.
pub fn brute_force_isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..a.order()).collect();
    loop {
        if a.relabel(&perm).map(|r| r == *b).unwrap_or(false) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

/// Lexicographic successor; `false` after the last permutation.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Axiom reports

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    /// Named sets that make up the counterexample.
    pub witnesses: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub check: String,
    pub seed: Option<u64>,
    /// Number of instances examined.
    pub instances: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, axiom: &str, witnesses: &[(&str, VertexSet)]) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            witnesses: witnesses
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_vec()))
                .collect(),
        });
    }
}

/// Which closure laws a family must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Closed under intersection, and under union and symmetric difference
    /// of overlapping pairs.
    Partitive,
    /// Closed under intersection, union of intersecting pairs, and `N \ M`
    /// whenever `M \ N` is nonempty.
    WeaklyPartitive,
}

/// Checks the family laws for `family` as a family of subsets of `ground`.
/// Both kinds also check the difference law, which modules of hypergraphs
/// satisfy as well.
pub fn check_family(
    family: &[VertexSet],
    ground: VertexSet,
    kind: FamilyKind,
    report: &mut AxiomReport,
) {
    let members: HashSet<VertexSet> = family.iter().copied().collect();
    let has = |s: VertexSet| members.contains(&s);
    report.instances += 1;
    if !has(VertexSet::EMPTY) {
        report.push("trivial: empty set", &[]);
    }
    if !has(ground) {
        report.push("trivial: ground set", &[("ground", ground)]);
    }
    for v in ground {
        if !has(VertexSet::singleton(v)) {
            report.push("trivial: singleton", &[("singleton", VertexSet::singleton(v))]);
        }
    }
    for &m in family {
        for &n in family {
            report.instances += 1;
            let w = [("M", m), ("N", n)];
            if !has(m.intersection(n)) {
                report.push("intersection", &w);
            }
            if !m.difference(n).is_empty() && !has(n.difference(m)) {
                report.push("difference", &w);
            }
            match kind {
                FamilyKind::Partitive => {
                    if m.overlaps(n) {
                        if !has(m.union(n)) {
                            report.push("overlapping union", &w);
                        }
                        if !has(m.symmetric_difference(n)) {
                            report.push("overlapping symmetric difference", &w);
                        }
                    }
                }
                FamilyKind::WeaklyPartitive => {
                    if !m.is_disjoint(n) && !has(m.union(n)) {
                        report.push("intersecting union", &w);
                    }
                }
            }
        }
    }
}

/// The modules of a hypergraph form a partitive family.
pub fn check_partitive(h: &Hypergraph) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        check: "partitive".into(),
        seed: None,
        instances: 0,
        violations: Vec::new(),
    };
    let modules = enumerate_modules(h, Limits::default())?;
    check_family(&modules, h.vertices(), FamilyKind::Partitive, &mut report);
    Ok(report)
}

/// The modules of a tournament form a weakly partitive family.
pub fn check_weakly_partitive(t: &Tournament) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        check: "weakly partitive".into(),
        seed: None,
        instances: 0,
        violations: Vec::new(),
    };
    let modules = enumerate_modules(t, Limits::default())?;
    check_family(&modules, t.vertices(), FamilyKind::WeaklyPartitive, &mut report);
    Ok(report)
}

/// Modules of the substructure induced by `w`, in host labels, memoized.
struct ModuleCache<'a, S: ModularStructure> {
    host: &'a S,
    cache: HashMap<VertexSet, Vec<VertexSet>>,
}

impl<'a, S: ModularStructure> ModuleCache<'a, S> {
    fn get(&mut self, w: VertexSet) -> Result<&Vec<VertexSet>> {
        if !self.cache.contains_key(&w) {
            let induced = self.host.induced_structure(w)?;
            let local = enumerate_modules(&induced.structure, Limits::default())?;
            let host = local.into_iter().map(|m| induced.map.to_host_set(m)).collect();
            self.cache.insert(w, host);
        }
        Ok(&self.cache[&w])
    }

    fn contains(&mut self, w: VertexSet, m: VertexSet) -> Result<bool> {
        Ok(self.get(w)?.binary_search(&m).is_ok())
    }
}

fn random_subset(rng: &mut ChaCha8Rng, of: VertexSet) -> VertexSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Samples `(W, W', M, M')` with `W ⊆ W'`, `M` a module of `S[W]` and `M'`
/// a module of `S[W']`, and checks the modular covering axioms on each.
///
/// Half of the samples draw `W` among the modules of `S[W']`, so the
/// hypothesis of the inheritance axiom is exercised. The family axiom is
/// checked once for every distinct `W` and `W'` drawn.
pub fn check_covering_axioms<S: ModularStructure>(
    s: &S,
    samples: usize,
    seed: u64,
    kind: FamilyKind,
) -> Result<AxiomReport> {
    Limits::default().check(s.order())?;
    let mut report = AxiomReport {
        check: "modular covering".into(),
        seed: Some(seed),
        instances: 0,
        violations: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modules = ModuleCache {
        host: s,
        cache: HashMap::new(),
    };
    let mut family_checked = HashSet::new();
    let all = VertexSet::full(s.order());

    for _ in 0..samples {
        let w_outer = random_subset(&mut rng, all);
        let w = if rng.gen_bool(0.5) {
            *modules.get(w_outer)?.choose(&mut rng).expect("the empty set is a module")
        } else {
            random_subset(&mut rng, w_outer)
        };
        let m_outer = *modules.get(w_outer)?.choose(&mut rng).expect("nonempty family");
        let m = *modules.get(w)?.choose(&mut rng).expect("nonempty family");
        report.instances += 1;
        let witnesses = [("W", w), ("W'", w_outer), ("M", m), ("M'", m_outer)];

        for ground in [w, w_outer] {
            if family_checked.insert(ground) {
                let family = modules.get(ground)?.clone();
                let mut sub = AxiomReport {
                    check: String::new(),
                    seed: None,
                    instances: 0,
                    violations: Vec::new(),
                };
                check_family(&family, ground, kind, &mut sub);
                for v in sub.violations {
                    report.violations.push(Violation {
                        axiom: format!("family: {}", v.axiom),
                        witnesses: v
                            .witnesses
                            .into_iter()
                            .chain([("W".to_string(), ground.to_vec())])
                            .collect(),
                    });
                }
            }
        }

        // Restriction: an outer module meets W in an inner module.
        if !modules.contains(w, m_outer.intersection(w))? {
            report.push("restriction", &witnesses);
        }

        // Inheritance: inside a module W of S[W'], the modules of S[W] are the
        // modules of S[W'] contained in W.
        if modules.contains(w_outer, w)? {
            let inner: Vec<VertexSet> = modules.get(w)?.clone();
            let outer_inside: Vec<VertexSet> = modules
                .get(w_outer)?
                .iter()
                .copied()
                .filter(|x| x.is_subset(w))
                .collect();
            if inner != outer_inside {
                report.push("inheritance", &witnesses);
            }
        }

        let joined = w.union(m_outer);
        // Disjoint extension: M stays a module of S[W ∪ M'].
        if m.is_disjoint(m_outer) && !m_outer.is_disjoint(w) && !modules.contains(joined, m)? {
            report.push("disjoint extension", &witnesses);
        }
        // Intersecting union: M ∪ M' is a module of S[W ∪ M'].
        if !m.is_disjoint(m_outer) && !modules.contains(joined, m.union(m_outer))? {
            report.push("intersecting union", &witnesses);
        }
    }
    Ok(report)
}

/// A random hypergraph on `n` vertices built from `edge_attempts` uniform
/// draws, each with a size from `sizes`. Duplicates collapse.
pub fn random_hypergraph(
    rng: &mut impl Rng,
    n: usize,
    sizes: std::ops::RangeInclusive<usize>,
    edge_attempts: usize,
) -> Hypergraph {
    let mut edges = Vec::new();
    for _ in 0..edge_attempts {
        let k = rng.gen_range(sizes.clone());
        if k > n || k < 2 {
            continue;
        }
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        edges.push(vs[..k].iter().collect::<VertexSet>());
    }
    Hypergraph::new(n, edges).expect("edges are in range")
}

/// A uniformly random tournament on `n` vertices.
pub fn random_tournament(rng: &mut impl Rng, n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.gen_bool(0.5)).expect("order within range")
}
