//! Finite hypergraphs on dense vertex indices.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A hypergraph on `{0, .., n-1}` whose edges all have at least two vertices.
///
/// Edges are deduplicated and kept in lexicographic order; equality is set
/// equality of edges on the same vertex count.
#[derive(Clone)]
pub struct Hypergraph {
    order: usize,
    edges: Vec<VertexSet>,
    index: HashSet<VertexSet>,
}

impl Hypergraph {
    pub fn new(order: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if order > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                order,
                max: MAX_VERTICES,
            });
        }
        let full = VertexSet::full(order);
        let mut index = HashSet::new();
        for e in edges {
            if !e.is_subset(full) {
                let vertex = e.difference(full).first().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex, order });
            }
            if e.len() < 2 {
                return Err(Error::EdgeTooSmall { edge: e });
            }
            index.insert(e);
        }
        Ok(Self::from_index(order, index))
    }

    fn from_index(order: usize, index: HashSet<VertexSet>) -> Self {
        let mut edges: Vec<VertexSet> = index.iter().copied().collect();
        edges.sort_unstable();
        Hypergraph {
            order,
            edges,
            index,
        }
    }

    /// Builds a hypergraph from explicit vertex lists.
    pub fn from_lists<E: AsRef<[usize]>>(order: usize, edges: &[E]) -> Result<Self> {
        let mut sets = Vec::with_capacity(edges.len());
        for e in edges {
            let e = e.as_ref();
            if let Some(&v) = e.iter().find(|&&v| v >= order.min(MAX_VERTICES)) {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
            sets.push(e.iter().collect::<VertexSet>());
        }
        Self::new(order, sets)
    }

    pub fn empty(order: usize) -> Self {
        assert!(order <= MAX_VERTICES);
        Self::from_index(order, HashSet::new())
    }

    /// All `k`-subsets of the vertex set.
    pub fn complete_uniform(order: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition(format!(
                "uniform edges need at least two vertices, got k={k}"
            )));
        }
        if order > 24 {
            return Err(Error::Capacity { order, bound: 24 });
        }
        let edges = (0u64..1 << order)
            .map(VertexSet::from_bits)
            .filter(|s| s.len() == k);
        Self::new(order, edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    #[inline]
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.index.contains(&e)
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn is_3_uniform(&self) -> bool {
        self.is_uniform(3)
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges are exactly the 2-subsets of the vertex set.
    pub fn is_complete_graph(&self) -> bool {
        let n = self.order;
        self.is_uniform(2) && self.edges.len() == n * n.saturating_sub(1) / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Edges containing `v`.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = VertexSet> + '_ {
        self.edges.iter().copied().filter(move |e| e.contains(v))
    }

    /// Same vertex labels, keeping only the edges inside `w`.
    ///
    /// The modules of the induced subhypergraph on `w` are exactly the
    /// modules of this restriction that are subsets of `w`.
    pub fn restricted(&self, w: VertexSet) -> Hypergraph {
        let index = self.index.iter().copied().filter(|e| e.is_subset(w)).collect();
        Self::from_index(self.order, index)
    }

    /// The subhypergraph induced by `w`, re-indexed to `0..|w|`.
    pub fn induced(&self, w: VertexSet) -> Result<Induced<Hypergraph>> {
        check_within(w, self.order)?;
        let map = IndexMap::new(w);
        let index = self
            .edges
            .iter()
            .filter(|e| e.is_subset(w))
            .map(|&e| map.to_local(e))
            .collect();
        Ok(Induced {
            structure: Self::from_index(w.len(), index),
            map,
        })
    }

    /// `H - x`.
    pub fn delete_vertex(&self, x: usize) -> Result<Induced<Hypergraph>> {
        if x >= self.order {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                order: self.order,
            });
        }
        self.induced(self.vertices().without(x))
    }

    /// Image under the vertex bijection `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        check_permutation(perm, self.order)?;
        let index = self.edges.iter().map(|e| e.map(|v| perm[v])).collect();
        Ok(Self::from_index(self.order, index))
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("order", &self.order)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Translation between a host structure's labels and the dense labels of an
/// induced substructure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    domain: VertexSet,
    host: Vec<usize>,
}

impl IndexMap {
    pub fn new(domain: VertexSet) -> Self {
        IndexMap {
            domain,
            host: domain.to_vec(),
        }
    }

    /// Host vertices, in increasing order; position = local label.
    pub fn domain(&self) -> VertexSet {
        self.domain
    }

    #[inline]
    pub fn to_host(&self, local: usize) -> usize {
        self.host[local]
    }

    #[inline]
    pub fn to_host_set(&self, local: VertexSet) -> VertexSet {
        local.map(|v| self.host[v])
    }

    /// Local label of a host vertex of the domain.
    #[inline]
    pub fn to_local_vertex(&self, host: usize) -> Option<usize> {
        if self.domain.contains(host) {
            Some((self.domain.bits() & ((1u64 << host) - 1)).count_ones() as usize)
        } else {
            None
        }
    }

    /// Local image of the part of `host` inside the domain.
    pub fn to_local(&self, host: VertexSet) -> VertexSet {
        host.intersection(self.domain)
            .iter()
            .filter_map(|v| self.to_local_vertex(v))
            .collect()
    }

    pub fn host_labels(&self) -> &[usize] {
        &self.host
    }
}

/// An induced substructure together with its index map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced<T> {
    pub structure: T,
    pub map: IndexMap,
}

pub(crate) fn check_within(w: VertexSet, order: usize) -> Result<()> {
    if w.within(order) {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange {
            vertex: w.difference(VertexSet::full(order)).first().unwrap_or(0),
            order,
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], order: usize) -> Result<()> {
    if perm.len() != order {
        return Err(Error::Precondition(format!(
            "permutation has length {} but order is {order}",
            perm.len()
        )));
    }
    let image: VertexSet = perm.iter().filter(|&&v| v < order).collect();
    if image != VertexSet::full(order) {
        return Err(Error::Precondition("map is not a permutation".into()));
    }
    Ok(())
}
