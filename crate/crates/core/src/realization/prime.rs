use serde::Serialize;

use crate::decomposition::is_prime;
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};
use crate::hypergraph::Hypergraph;
use crate::realization::isomorphism::hypergraph_isomorphism;
use crate::realization::{NonRealizabilityWitness, Outcome, WitnessStage};
use crate::tournament::{CriticalKind, Tournament};
use crate::vertex_set::VertexSet;

/// Why a one-vertex extension is impossible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum FailReason {
    /// A component of `G_x` is not bipartite; `a` and `b` are adjacent and
    /// got the same colour.
    OddCycle { a: usize, b: usize },
    /// `minus` and `plus` are adjacent in `G_x` but `plus -> minus` in
    /// `T_x`, or non-adjacent with `minus -> plus`.
    #[serde(rename = "E0-violation")]
    E0Violation { minus: usize, plus: usize },
    #[serde(rename = "Y-overlap")]
    YOverlap { vertex: usize },
    #[serde(rename = "Y-not-covering")]
    YNotCovering { vertex: usize },
    /// The arc `from -> to` is required but `to -> from` holds.
    #[serde(rename = "M2-arc-violation")]
    M2ArcViolation { from: usize, to: usize },
}

impl FailReason {
    pub fn name(self) -> &'static str {
        match self {
            FailReason::OddCycle { .. } => "odd-cycle",
            FailReason::E0Violation { .. } => "E0-violation",
            FailReason::YOverlap { .. } => "Y-overlap",
            FailReason::YNotCovering { .. } => "Y-not-covering",
            FailReason::M2ArcViolation { .. } => "M2-arc-violation",
        }
    }

    /// The bipartition condition or the closure condition.
    pub fn stage(self) -> WitnessStage {
        match self {
            FailReason::OddCycle { .. } | FailReason::E0Violation { .. } => {
                WitnessStage::ExtensionM1
            }
            _ => WitnessStage::ExtensionM2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Fail(FailReason),
}

/// Everything computed while extending a realization of `H - x` to `H`.
///
/// All sets use the labels of `H`. `g_x` has the same vertex count as `H`,
/// with `x` isolated; `i_x` does not contain `x`. Sets that were not reached
/// before a failure are left empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificate {
    pub x: usize,
    pub g_x: Graph,
    pub i_x: VertexSet,
    pub x_minus: VertexSet,
    pub x_plus: VertexSet,
    pub y_minus: VertexSet,
    pub y_plus: VertexSet,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Realized {
        tournament: Tournament,
        certificate: ExtensionCertificate,
    },
    Failed(ExtensionCertificate),
}

/// Tries to extend `t_x`, a realization of `H - x`, to a realization `T` of
/// `H` with `T - x = t_x`.
///
/// `t_x` uses the labels of `H - x`: vertex `v` of `H` is `v` when `v < x`
/// and `v - 1` otherwise. When `H` and `H - x` are prime, failure means
/// `H` is not realizable, and a success is the only realization agreeing
/// with `t_x` off `x`.
pub fn extend_realization(h: &Hypergraph, x: usize, t_x: &Tournament) -> Result<Extension> {
    let n = h.order();
    if !h.is_3_uniform() {
        return Err(Error::NotThreeUniform);
    }
    let minus_x = h.delete_vertex(x)?;
    if t_x.order() + 1 != n {
        return Err(Error::Precondition(format!(
            "T_x has {} vertices but H - x has {}",
            t_x.order(),
            n - 1
        )));
    }
    if t_x.c3_structure() != minus_x.structure {
        return Err(Error::Precondition("T_x does not realize H - x".into()));
    }
    let local = |v: usize| if v < x { v } else { v - 1 };
    let lifted = Tournament::from_fn(n, |i, j| {
        i == x || j == x || t_x.has_arc(local(i), local(j))
    })?;

    let mut g_x = Graph::new(n)?;
    for e in h.incident(x) {
        let pair = e.without(x).to_vec();
        g_x.add_edge(pair[0], pair[1])?;
    }
    let mut cert = ExtensionCertificate {
        x,
        i_x: g_x.isolated().without(x),
        g_x,
        x_minus: VertexSet::EMPTY,
        x_plus: VertexSet::EMPTY,
        y_minus: VertexSet::EMPTY,
        y_plus: VertexSet::EMPTY,
        verdict: Verdict::Ok,
    };
    match check(&mut cert, &lifted) {
        Some(reason) => {
            cert.verdict = Verdict::Fail(reason);
            Ok(Extension::Failed(cert))
        }
        None => {
            let to_x = cert.x_plus.union(cert.y_plus);
            let tournament = Tournament::from_fn(n, |i, j| {
                if i == x {
                    !to_x.contains(j)
                } else if j == x {
                    to_x.contains(i)
                } else {
                    lifted.has_arc(i, j)
                }
            })?;
            assert!(tournament.c3_structure() == *h, "extension must realize H");
            Ok(Extension::Realized {
                tournament,
                certificate: cert,
            })
        }
    }
}

fn check(cert: &mut ExtensionCertificate, t: &Tournament) -> Option<FailReason> {
    let g = &cert.g_x;
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let a = comp.first().unwrap();
        let (same, other) = match g.two_color(a) {
            Coloring::Bipartite(s, o) => (s, o),
            Coloring::OddCycle(a, b) => return Some(FailReason::OddCycle { a, b }),
        };
        let b = g.neighbors(a).first().unwrap();
        let (minus, plus) = if t.has_arc(a, b) { (same, other) } else { (other, same) };
        cert.x_minus = cert.x_minus.union(minus);
        cert.x_plus = cert.x_plus.union(plus);
    }
    for m in cert.x_minus {
        for p in cert.x_plus {
            if g.has_edge(m, p) != t.has_arc(m, p) {
                return Some(FailReason::E0Violation { minus: m, plus: p });
            }
        }
    }

    cert.y_minus = closure(cert.x_minus, cert.i_x, |v| t.out_neighbors(v));
    cert.y_plus = closure(cert.x_plus, cert.i_x, |v| t.in_neighbors(v));
    if let Some(vertex) = cert.y_minus.intersection(cert.y_plus).first() {
        return Some(FailReason::YOverlap { vertex });
    }
    if let Some(vertex) = cert.i_x.difference(cert.y_minus.union(cert.y_plus)).first() {
        return Some(FailReason::YNotCovering { vertex });
    }
    let required = [
        (cert.y_plus, cert.x_minus),
        (cert.x_plus, cert.y_minus),
        (cert.y_plus, cert.y_minus),
    ];
    for (sources, targets) in required {
        for from in sources {
            if let Some(to) = targets.difference(t.out_neighbors(from)).first() {
                return Some(FailReason::M2ArcViolation { from, to });
            }
        }
    }
    None
}

/// Vertices of `within` reachable from `seeds` by steps inside `within`.
fn closure(seeds: VertexSet, within: VertexSet, step: impl Fn(usize) -> VertexSet) -> VertexSet {
    let mut reached = VertexSet::EMPTY;
    let mut frontier = seeds;
    while !frontier.is_empty() {
        let next = frontier
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(step(v)))
            .intersection(within)
            .difference(reached);
        reached = reached.union(next);
        frontier = next;
    }
    reached
}

/// Realizes a prime 3-uniform hypergraph, or certifies that it cannot be
/// realized.
pub fn realize_prime(h: &Hypergraph) -> Result<Outcome> {
    if !h.is_3_uniform() {
        return Err(Error::NotThreeUniform);
    }
    if !is_prime(h) {
        return Err(Error::Precondition("the hypergraph is not prime".into()));
    }
    Ok(prime_unchecked(h))
}

pub(crate) fn prime_unchecked(h: &Hypergraph) -> Outcome {
    let n = h.order();
    if n == 3 {
        return Outcome::Realized(Tournament::three_cycle());
    }
    for x in 0..n {
        let minus_x = h.delete_vertex(x).expect("x is a vertex");
        if !is_prime(&minus_x.structure) {
            continue;
        }
        return match prime_unchecked(&minus_x.structure) {
            Outcome::Realized(t_x) => match extend_realization(h, x, &t_x)
                .expect("preconditions hold by construction")
            {
                Extension::Realized { tournament, .. } => Outcome::Realized(tournament),
                Extension::Failed(cert) => {
                    let Verdict::Fail(reason) = cert.verdict else {
                        unreachable!("failed extensions carry a reason")
                    };
                    Outcome::NotRealizable(NonRealizabilityWitness {
                        witness: h.vertices(),
                        stage: reason.stage(),
                    })
                }
            },
            Outcome::NotRealizable(w) => Outcome::NotRealizable(NonRealizabilityWitness {
                witness: minus_x.map.to_host_set(w.witness),
                stage: w.stage,
            }),
        };
    }
    critical_unchecked(h)
}

/// Realizes a critical 3-uniform hypergraph: prime, with every
/// vertex-deleted subhypergraph decomposable.
pub fn realize_critical(h: &Hypergraph) -> Result<Outcome> {
    if !h.is_3_uniform() {
        return Err(Error::NotThreeUniform);
    }
    if h.order() < 5 || !is_prime(h) {
        return Err(Error::Precondition(
            "a critical hypergraph is prime with at least five vertices".into(),
        ));
    }
    if let Some(x) = (0..h.order()).find(|&x| is_prime(&h.delete_vertex(x).unwrap().structure)) {
        return Err(Error::Precondition(format!(
            "the hypergraph is not critical: H - {x} is prime"
        )));
    }
    Ok(critical_unchecked(h))
}

fn critical_unchecked(h: &Hypergraph) -> Outcome {
    let n = h.order();
    let mismatch = Outcome::NotRealizable(NonRealizabilityWitness {
        witness: h.vertices(),
        stage: WitnessStage::CriticalMismatch,
    });
    if n < 5 || n.is_multiple_of(2) {
        return mismatch;
    }
    for kind in CriticalKind::ALL {
        let generator = Tournament::critical(kind, n).expect("odd order of at least 5");
        if let Some(phi) = hypergraph_isomorphism(&generator.c3_structure(), h) {
            return Outcome::Realized(generator.relabel(&phi).expect("phi is a bijection"));
        }
    }
    mismatch
}
