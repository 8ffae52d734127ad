//! Tournaments, their duals, linear orders, and the critical families.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{check_permutation, check_within, Hypergraph, IndexMap, Induced};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A complete antisymmetric orientation on `{0, .., n-1}`.
///
/// Stored as out-neighbourhoods; `out[v]` never contains `v`, and for
/// `u != v` exactly one of `out[u] ∋ v`, `out[v] ∋ u` holds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    out: Vec<VertexSet>,
}

/// The three families of critical tournaments of odd order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    /// Reverse every arc between an even and an odd vertex.
    T,
    /// Reverse every arc between two even vertices.
    U,
    /// Reverse every arc between the last vertex and the even vertices.
    W,
}

impl CriticalKind {
    pub const ALL: [CriticalKind; 3] = [CriticalKind::T, CriticalKind::U, CriticalKind::W];
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CriticalKind::T => "T",
            CriticalKind::U => "U",
            CriticalKind::W => "W",
        };
        f.write_str(s)
    }
}

impl Tournament {
    /// Builds the tournament where, for `i < j`, the arc is `i -> j` iff
    /// `forward(i, j)`.
    pub fn from_fn(order: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if order > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                order,
                max: MAX_VERTICES,
            });
        }
        let mut out = vec![VertexSet::EMPTY; order];
        for i in 0..order {
            for j in i + 1..order {
                if forward(i, j) {
                    out[i].insert(j);
                } else {
                    out[j].insert(i);
                }
            }
        }
        Ok(Tournament { out })
    }

    /// Builds a tournament from its arc list, which must contain exactly one
    /// ordered pair per unordered pair.
    pub fn from_arcs(order: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if order > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                order,
                max: MAX_VERTICES,
            });
        }
        let mut out = vec![VertexSet::EMPTY; order];
        for &(u, v) in arcs {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::InvalidTournament(format!("self-loop at {u}")));
            }
            if out[u].contains(v) || out[v].contains(u) {
                return Err(Error::InvalidTournament(format!(
                    "pair {{{u},{v}}} is oriented more than once"
                )));
            }
            out[u].insert(v);
        }
        for u in 0..order {
            for v in u + 1..order {
                if !out[u].contains(v) && !out[v].contains(u) {
                    return Err(Error::InvalidTournament(format!(
                        "pair {{{u},{v}}} has no arc"
                    )));
                }
            }
        }
        Ok(Tournament { out })
    }

    /// `L_n`: the arc `p -> q` for every `p < q`.
    pub fn linear_order(order: usize) -> Result<Self> {
        Self::from_fn(order, |_, _| true)
    }

    /// The linear order listing `sequence` from smallest to largest.
    pub fn from_ranking(sequence: &[usize]) -> Result<Self> {
        check_permutation(sequence, sequence.len())?;
        let mut rank = vec![0; sequence.len()];
        for (r, &v) in sequence.iter().enumerate() {
            rank[v] = r;
        }
        Self::from_fn(sequence.len(), |i, j| rank[i] < rank[j])
    }

    /// The 3-cycle `0 -> 1 -> 2 -> 0`.
    pub fn three_cycle() -> Self {
        Self::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).expect("valid 3-cycle")
    }

    /// A member of one of the critical families, obtained from `L_n` by
    /// reversing the arcs selected by `kind`. `n` must be odd and at least 5.
    pub fn critical(kind: CriticalKind, order: usize) -> Result<Self> {
        if order < 5 || order.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "critical family {kind} needs an odd order of at least 5, got {order}"
            )));
        }
        let last = order - 1;
        Self::from_fn(order, |i, j| {
            let reversed = match kind {
                CriticalKind::T => i % 2 != j % 2,
                CriticalKind::U => i % 2 == 0 && j % 2 == 0,
                CriticalKind::W => j == last && i % 2 == 0,
            };
            !reversed
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        self.out[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        self.vertices().without(v).difference(self.out[v])
    }

    /// All arcs, ordered by tail then head.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
            .collect()
    }

    /// Reverses every arc.
    pub fn dual(&self) -> Tournament {
        let all = self.vertices();
        let out = self
            .out
            .iter()
            .enumerate()
            .map(|(v, s)| all.without(v).difference(*s))
            .collect();
        Tournament { out }
    }

    /// `{u, v, w}` induces a directed 3-cycle.
    #[inline]
    pub fn is_three_cycle(&self, u: usize, v: usize, w: usize) -> bool {
        let a = self.has_arc(u, v);
        a == self.has_arc(v, w) && a == self.has_arc(w, u)
    }

    /// The 3-uniform hypergraph of triples inducing a 3-cycle.
    pub fn c3_structure(&self) -> Hypergraph {
        let n = self.order();
        let mut edges = Vec::new();
        for u in 0..n {
            let above_u = VertexSet::full(n).difference(VertexSet::full(u + 1));
            // Every 3-cycle with smallest member u reads u -> v -> w -> u for
            // exactly one choice of v.
            for v in self.out[u].intersection(above_u) {
                for w in self.out[v].difference(self.out[u]).intersection(above_u) {
                    edges.push(VertexSet::singleton(u).with(v).with(w));
                }
            }
        }
        Hypergraph::new(n, edges).expect("triples are valid edges")
    }

    /// No induced 3-cycle.
    pub fn is_linear_order(&self) -> bool {
        // A tournament is transitive iff its score sequence is 0, 1, .., n-1.
        let mut scores: Vec<usize> = self.out.iter().map(|s| s.len()).collect();
        scores.sort_unstable();
        scores.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// The subtournament induced by `w`, re-indexed to `0..|w|`.
    pub fn induced(&self, w: VertexSet) -> Result<Induced<Tournament>> {
        check_within(w, self.order())?;
        let map = IndexMap::new(w);
        let out = map
            .host_labels()
            .iter()
            .map(|&v| map.to_local(self.out[v]))
            .collect();
        Ok(Induced {
            structure: Tournament { out },
            map,
        })
    }

    /// `T - x`.
    pub fn delete_vertex(&self, x: usize) -> Result<Induced<Tournament>> {
        if x >= self.order() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                order: self.order(),
            });
        }
        self.induced(self.vertices().without(x))
    }

    /// Image under the vertex bijection `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tournament> {
        check_permutation(perm, self.order())?;
        let mut out = vec![VertexSet::EMPTY; self.order()];
        for (u, s) in self.out.iter().enumerate() {
            out[perm[u]] = s.map(|v| perm[v]);
        }
        Ok(Tournament { out })
    }

    /// Reverses the orientation of every pair `{v, w}` with `w` in `flip`.
    pub fn flip_arcs_at(&self, v: usize, flip: VertexSet) -> Tournament {
        let mut out = self.out.clone();
        for w in flip.without(v) {
            if out[v].contains(w) {
                out[v].remove(w);
                out[w].insert(v);
            } else {
                out[w].remove(v);
                out[v].insert(w);
            }
        }
        Tournament { out }
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tournament")
            .field("order", &self.order())
            .field("arcs", &self.arcs())
            .finish()
    }
}
