//! The modular decomposition tree and its DOT/JSON exports.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::decomposition::modules::{
    maximal_proper_strong_blocks, HyperLabel, ModularStructure, TournamentLabel,
};
use crate::decomposition::partition::ModularPartition;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, IndexMap};
use crate::tournament::Tournament;
use crate::vertex_set::VertexSet;

pub type NodeId = usize;

/// Text used for a label in exports.
pub trait LabelText {
    fn text(&self) -> &'static str;
}

impl LabelText for HyperLabel {
    fn text(&self) -> &'static str {
        self.symbol()
    }
}

impl LabelText for TournamentLabel {
    fn text(&self) -> &'static str {
        self.name()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode<L> {
    /// The strong module at this node, in host labels.
    pub module: VertexSet,
    /// `None` exactly for leaves.
    pub label: Option<L>,
    /// Ordered by smallest contained vertex.
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
}

impl<L> TreeNode<L> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// The nonempty strong modules ordered by inclusion. Node `0` is the root;
/// nodes are stored in preorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree<L> {
    order: usize,
    nodes: Vec<TreeNode<L>>,
}

impl<L: Copy + Eq + std::fmt::Debug> DecompositionTree<L> {
    /// Builds the tree top-down: each node `X` gets the maximal proper strong
    /// modules of the substructure induced by `X` as children. Strong modules
    /// of a strong module's substructure are exactly the strong modules of
    /// the host lying inside it, so this yields every strong module.
    pub fn build<S: ModularStructure<Label = L>>(s: &S) -> Result<Self> {
        let order = s.order();
        if order == 0 {
            return Err(Error::Precondition(
                "decomposition needs at least one vertex".into(),
            ));
        }
        let mut tree = DecompositionTree {
            order,
            nodes: Vec::new(),
        };
        tree.grow(s, VertexSet::full(order), None)?;
        Ok(tree)
    }

    fn grow<S: ModularStructure<Label = L>>(
        &mut self,
        host: &S,
        module: VertexSet,
        parent: Option<NodeId>,
    ) -> Result<NodeId> {
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            module,
            label: None,
            children: Vec::new(),
            parent,
        });
        if module.len() == 1 {
            return Ok(id);
        }
        let (label, blocks) = split(host, module)?;
        self.nodes[id].label = Some(label);
        for block in blocks {
            let child = self.grow(host, block, Some(id))?;
            self.nodes[id].children.push(child);
        }
        Ok(id)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node(&self, id: NodeId) -> &TreeNode<L> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode<L>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn module(&self, id: NodeId) -> VertexSet {
        self.nodes[id].module
    }

    pub fn label(&self, id: NodeId) -> Option<L> {
        self.nodes[id].label
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    /// Child modules of `id`, in order.
    pub fn child_modules(&self, id: NodeId) -> Vec<VertexSet> {
        self.nodes[id]
            .children
            .iter()
            .map(|&c| self.nodes[c].module)
            .collect()
    }

    /// Nodes with at least two vertices, in preorder.
    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(move |&id| !self.nodes[id].is_leaf())
    }

    /// Every node's module.
    pub fn modules(&self) -> Vec<VertexSet> {
        self.nodes.iter().map(|n| n.module).collect()
    }

    /// The lowest node whose module contains `s`.
    pub fn lowest_containing(&self, s: VertexSet) -> Option<NodeId> {
        if s.is_empty() || !s.within(self.order) {
            return None;
        }
        let mut id = self.root();
        'descend: loop {
            for &c in &self.nodes[id].children {
                if s.is_subset(self.nodes[c].module) {
                    id = c;
                    continue 'descend;
                }
            }
            return Some(id);
        }
    }

    /// The subtree rooted at `id`, in host labels.
    pub fn subtree(&self, id: NodeId) -> DecompositionTree<L> {
        let mut out = DecompositionTree {
            order: self.order,
            nodes: Vec::new(),
        };
        self.copy_into(&mut out, id, None);
        out
    }

    fn copy_into(&self, out: &mut DecompositionTree<L>, id: NodeId, parent: Option<NodeId>) {
        let new_id = out.nodes.len();
        out.nodes.push(TreeNode {
            module: self.nodes[id].module,
            label: self.nodes[id].label,
            children: Vec::new(),
            parent,
        });
        for &c in &self.nodes[id].children {
            let child = out.nodes.len();
            out.nodes[new_id].children.push(child);
            self.copy_into(out, c, Some(new_id));
        }
    }

    /// Relabels a tree of an induced substructure into host labels.
    pub fn to_host(&self, map: &IndexMap, host_order: usize) -> DecompositionTree<L> {
        DecompositionTree {
            order: host_order,
            nodes: self
                .nodes
                .iter()
                .map(|n| TreeNode {
                    module: map.to_host_set(n.module),
                    label: n.label,
                    children: n.children.clone(),
                    parent: n.parent,
                })
                .collect(),
        }
    }
}

impl<L: Copy + Eq + std::fmt::Debug + LabelText> DecompositionTree<L> {
    /// Graphviz rendering; internal nodes show their label and module.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph decomposition {\n  node [shape=box];\n");
        for (id, node) in self.nodes.iter().enumerate() {
            let members = node
                .module
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            match node.label {
                Some(l) => {
                    writeln!(s, "  n{id} [label=\"{} {{{members}}}\"];", l.text()).unwrap()
                }
                None => writeln!(s, "  n{id} [label=\"{members}\", shape=ellipse];").unwrap(),
            }
        }
        for (id, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                writeln!(s, "  n{id} -> n{c};").unwrap();
            }
        }
        s.push_str("}\n");
        s
    }

    /// Nested `{module, label, children}` objects; leaves have a null label.
    pub fn to_json(&self) -> Value {
        self.node_json(self.root())
    }

    fn node_json(&self, id: NodeId) -> Value {
        let node = &self.nodes[id];
        json!({
            "module": node.module.to_vec(),
            "label": node.label.map(|l| l.text()),
            "children": node.children.iter().map(|&c| self.node_json(c)).collect::<Vec<_>>(),
        })
    }
}

/// Label and child blocks (host labels) for a node with at least two
/// vertices.
fn split<S: ModularStructure>(host: &S, module: VertexSet) -> Result<(S::Label, Vec<VertexSet>)> {
    let induced = host.induced_structure(module)?;
    let local = maximal_proper_strong_blocks(&induced.structure);
    let partition = ModularPartition::new(&induced.structure, local)?;
    let quotient = induced.structure.quotient(&partition)?;
    let label = S::classify_quotient(&quotient);
    let blocks = partition
        .blocks()
        .iter()
        .map(|&b| induced.map.to_host_set(b))
        .collect();
    Ok((label, blocks))
}

/// The quotient of the substructure at `id` by its children; vertex `i` of
/// the result is child `i`.
pub fn node_quotient<S: ModularStructure>(
    s: &S,
    tree: &DecompositionTree<S::Label>,
    id: NodeId,
) -> Result<S> {
    let module = tree.module(id);
    let induced = s.induced_structure(module)?;
    let blocks = tree
        .child_modules(id)
        .into_iter()
        .map(|b| induced.map.to_local(b))
        .collect();
    let partition = ModularPartition::new(&induced.structure, blocks)?;
    induced.structure.quotient(&partition)
}

/// Decomposition tree of a hypergraph, labelled △/◯/●.
pub fn decomposition_tree(h: &Hypergraph) -> Result<DecompositionTree<HyperLabel>> {
    DecompositionTree::build(h)
}

/// Decomposition tree of a tournament, labelled linear/prime.
pub fn tournament_decomposition_tree(t: &Tournament) -> Result<DecompositionTree<TournamentLabel>> {
    DecompositionTree::build(t)
}

/// Intersection of the strong modules containing `s`: the lowest tree node
/// containing it.
pub fn smallest_strong_module_containing<S: ModularStructure>(
    structure: &S,
    s: VertexSet,
) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::Precondition("the set must be nonempty".into()));
    }
    if !s.within(structure.order()) {
        return Err(Error::VertexOutOfRange {
            vertex: s.difference(VertexSet::full(structure.order())).first().unwrap(),
            order: structure.order(),
        });
    }
    let tree = DecompositionTree::build(structure)?;
    Ok(tree.module(tree.lowest_containing(s).expect("nonempty subset of the root")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn single_edge_is_prime_root() {
        let h = Hypergraph::from_lists(3, &[[0, 1, 2]]).unwrap();
        let t = decomposition_tree(&h).unwrap();
        assert_eq!(t.label(t.root()), Some(HyperLabel::Prime));
        assert_eq!(t.children(t.root()).len(), 3);
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn empty_is_empty_root() {
        let t = decomposition_tree(&Hypergraph::empty(3)).unwrap();
        assert_eq!(t.label(t.root()), Some(HyperLabel::Empty));
        assert_eq!(t.children(t.root()).len(), 3);
    }

    #[test]
    fn single_vertex_is_a_leaf() {
        let t = decomposition_tree(&Hypergraph::empty(1)).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.node(0).is_leaf());
        assert!(decomposition_tree(&Hypergraph::empty(0)).is_err());
    }

    #[test]
    fn blown_up_three_cycle() {
        // C3 with vertex 2 replaced by the 2-element linear order 2 -> 3.
        let t = Tournament::from_arcs(4, &[(0, 1), (1, 2), (1, 3), (2, 0), (3, 0), (2, 3)]).unwrap();
        let h = t.c3_structure();
        assert_eq!(h.edges(), &[set(&[0, 1, 2]), set(&[0, 1, 3])]);
        let tree = decomposition_tree(&h).unwrap();
        assert_eq!(tree.label(0), Some(HyperLabel::Prime));
        assert_eq!(tree.child_modules(0), vec![set(&[0]), set(&[1]), set(&[2, 3])]);
        let pair = tree.lowest_containing(set(&[2, 3])).unwrap();
        assert_eq!(tree.module(pair), set(&[2, 3]));
        assert_eq!(tree.label(pair), Some(HyperLabel::Empty));

        let tt = tournament_decomposition_tree(&t).unwrap();
        assert_eq!(tt.modules(), tree.modules());
        assert_eq!(tt.label(0), Some(TournamentLabel::Prime));
        assert_eq!(tt.label(pair), Some(TournamentLabel::Linear));
    }

    #[test]
    fn complete_graph_label() {
        let k3 = Hypergraph::complete_uniform(3, 2).unwrap();
        let t = decomposition_tree(&k3).unwrap();
        assert_eq!(t.label(0), Some(HyperLabel::Complete));
        assert_eq!(t.children(0).len(), 3);
    }

    #[test]
    fn smallest_strong_module() {
        let h = Hypergraph::from_lists(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(smallest_strong_module_containing(&h, set(&[2, 3])).unwrap(), set(&[2, 3]));
        assert_eq!(smallest_strong_module_containing(&h, set(&[1])).unwrap(), set(&[1]));
        assert_eq!(smallest_strong_module_containing(&h, set(&[0, 3])).unwrap(), h.vertices());
        assert!(smallest_strong_module_containing(&h, VertexSet::EMPTY).is_err());
    }

    #[test]
    fn exports() {
        let h = Hypergraph::from_lists(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let tree = decomposition_tree(&h).unwrap();
        let dot = tree.to_dot();
        assert!(dot.contains("n0 [label=\"△ {0,1,2,3}\"];"));
        assert!(dot.contains("[label=\"◯ {2,3}\"];"));
        assert!(dot.contains("n0 -> n1;"));
        let json = tree.to_json();
        assert_eq!(json["label"], "△");
        assert_eq!(json["children"][2]["module"], serde_json::json!([2, 3]));
        assert_eq!(json["children"][0]["label"], Value::Null);
    }

    #[test]
    fn subtree_and_relabel() {
        let h = Hypergraph::from_lists(4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        let tree = decomposition_tree(&h).unwrap();
        let pair = tree.lowest_containing(set(&[2, 3])).unwrap();
        let sub = tree.subtree(pair);
        let induced = h.induced(set(&[2, 3])).unwrap();
        let direct = decomposition_tree(&induced.structure)
            .unwrap()
            .to_host(&induced.map, 4);
        assert_eq!(sub, direct);
    }
}
