use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// Finds `phi` with `phi(E(h1)) = E(h2)`, as the vector `v -> phi[v]`.
///
/// Backtracks over the vertices of `h1` by descending degree. A candidate
/// image must match the degree, the pair degrees towards every mapped
/// vertex, and edge membership of every triple closed with two mapped
/// vertices. Both inputs are expected to be 3-uniform.
pub fn hypergraph_isomorphism(h1: &Hypergraph, h2: &Hypergraph) -> Option<Vec<usize>> {
    let n = h1.order();
    if n != h2.order() || h1.edge_count() != h2.edge_count() {
        return None;
    }
    let a = Invariants::new(h1);
    let b = Invariants::new(h2);
    let mut da = a.degree.clone();
    let mut db = b.degree.clone();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(a.degree[v]), v));
    let mut search = Search {
        h1,
        h2,
        a: &a,
        b: &b,
        order,
        phi: vec![usize::MAX; n],
        used: VertexSet::EMPTY,
    };
    if search.extend(0) {
        Some(search.phi)
    } else {
        None
    }
}

struct Invariants {
    degree: Vec<usize>,
    pair: Vec<Vec<usize>>,
}

impl Invariants {
    fn new(h: &Hypergraph) -> Self {
        let n = h.order();
        let mut degree = vec![0; n];
        let mut pair = vec![vec![0; n]; n];
        for e in h.edges() {
            let vs = e.to_vec();
            for (i, &u) in vs.iter().enumerate() {
                degree[u] += 1;
                for &w in &vs[i + 1..] {
                    pair[u][w] += 1;
                    pair[w][u] += 1;
                }
            }
        }
        Invariants { degree, pair }
    }
}

struct Search<'a> {
    h1: &'a Hypergraph,
    h2: &'a Hypergraph,
    a: &'a Invariants,
    b: &'a Invariants,
    order: Vec<usize>,
    phi: Vec<usize>,
    used: VertexSet,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.h2.order() {
            if self.used.contains(w) || !self.consistent(depth, v, w) {
                continue;
            }
            self.phi[v] = w;
            self.used.insert(w);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.remove(w);
            self.phi[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        if self.a.degree[v] != self.b.degree[w] {
            return false;
        }
        let mapped = &self.order[..depth];
        for (i, &u) in mapped.iter().enumerate() {
            let pu = self.phi[u];
            if self.a.pair[u][v] != self.b.pair[pu][w] {
                return false;
            }
            for &u2 in &mapped[i + 1..] {
                let left = VertexSet::from_iter([u, u2, v]);
                let right = VertexSet::from_iter([pu, self.phi[u2], w]);
                if self.h1.contains_edge(left) != self.h2.contains_edge(right) {
                    return false;
                }
            }
        }
        true
    }
}
