//! Simple undirected graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

/// Outcome of 2-colouring one connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// The two colour classes; `sides.0` contains the start vertex.
    Bipartite(VertexSet, VertexSet),
    /// An odd closed walk was found through these two same-coloured
    /// adjacent vertices.
    OddCycle(usize, usize),
}

impl Graph {
    pub fn new(order: usize) -> Result<Self> {
        if order > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                order,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; order],
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let order = self.order();
        for w in [u, v] {
            if w >= order {
                return Err(Error::VertexOutOfRange { vertex: w, order });
            }
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, s) in self.adj.iter().enumerate() {
            for v in s.iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertices without neighbours.
    pub fn isolated(&self) -> VertexSet {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_empty())
            .map(|(v, _)| v)
            .collect()
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.order() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier {
                    next = next.union(self.adj[u]);
                }
                frontier = next.difference(comp);
                comp = comp.union(next);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Breadth-first 2-colouring of the component containing `start`.
    pub fn two_color(&self, start: usize) -> Coloring {
        let mut color: Vec<Option<bool>> = vec![None; self.order()];
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let c = color[u].expect("queued vertices are coloured");
            for v in self.adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!c);
                        queue.push_back(v);
                    }
                    Some(d) if d == c => return Coloring::OddCycle(u, v),
                    Some(_) => {}
                }
            }
        }
        let side = |want: bool| {
            color
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == Some(want))
                .map(|(v, _)| v)
                .collect()
        };
        Coloring::Bipartite(side(false), side(true))
    }
}
