//! Realizability of 3-uniform hypergraphs by tournaments.
//!
//! A realization is assembled node by node on the decomposition tree: each
//! △ node gets a realization of its prime quotient (or the dual of it), each
//! ◯ node a linear order of its children. Every realization arises from
//! exactly one such choice.

mod isomorphism;
mod prime;

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::decomposition::{decomposition_tree, node_quotient, DecompositionTree, HyperLabel, NodeId};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::oracle::next_permutation;
use crate::tournament::Tournament;
use crate::vertex_set::VertexSet;

pub use isomorphism::hypergraph_isomorphism;
pub use prime::{
    extend_realization, realize_critical, realize_prime, Extension, ExtensionCertificate,
    FailReason, Verdict,
};

/// Where non-realizability was detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessStage {
    /// A critical hypergraph matching none of the critical families.
    CriticalMismatch,
    /// No bipartition of the link graph is compatible with `T_x`.
    ExtensionM1,
    /// The isolated vertices of the link graph cannot be placed.
    ExtensionM2,
    /// A frame of at most three vertices; unused for 3-uniform input.
    Base,
}

impl WitnessStage {
    pub fn name(self) -> &'static str {
        match self {
            WitnessStage::CriticalMismatch => "critical-mismatch",
            WitnessStage::ExtensionM1 => "extension-M1",
            WitnessStage::ExtensionM2 => "extension-M2",
            WitnessStage::Base => "base",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            WitnessStage::CriticalMismatch,
            WitnessStage::ExtensionM1,
            WitnessStage::ExtensionM2,
            WitnessStage::Base,
        ]
        .into_iter()
        .find(|st| st.name() == s)
    }
}

/// A vertex set `W` with `H[W]` prime and not realizable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonRealizabilityWitness {
    pub witness: VertexSet,
    pub stage: WitnessStage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Realized(Tournament),
    NotRealizable(NonRealizabilityWitness),
}

impl Outcome {
    pub fn tournament(&self) -> Option<&Tournament> {
        match self {
            Outcome::Realized(t) => Some(t),
            Outcome::NotRealizable(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&NonRealizabilityWitness> {
        match self {
            Outcome::Realized(_) => None,
            Outcome::NotRealizable(w) => Some(w),
        }
    }

    pub fn is_realized(&self) -> bool {
        matches!(self, Outcome::Realized(_))
    }
}

/// What an internal node contributes to a realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeRealization {
    /// A realization of the prime quotient; vertex `i` is child `i`.
    Prime(Tournament),
    /// A ◯ node with this many children.
    Linear(usize),
}

/// The decomposition tree of a realizable hypergraph together with one
/// realization of every prime quotient.
#[derive(Clone, Debug)]
pub struct RealizationFrame {
    tree: DecompositionTree<HyperLabel>,
    nodes: BTreeMap<NodeId, NodeRealization>,
}

/// One entry per internal node of the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeChoice {
    /// Use the stored prime realization, or its dual.
    Prime { dual: bool },
    /// Child indices from bottom to top of the linear order.
    Linear(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationChoice {
    pub entries: BTreeMap<NodeId, NodeChoice>,
}

fn check_input(h: &Hypergraph) -> Result<()> {
    if !h.is_3_uniform() {
        return Err(Error::NotThreeUniform);
    }
    if h.order() == 0 {
        return Err(Error::Precondition("the hypergraph has no vertices".into()));
    }
    Ok(())
}

impl RealizationFrame {
    /// Decomposes `h` and realizes every prime quotient. The error side of
    /// the inner result is the first witness met in preorder.
    pub fn build(h: &Hypergraph) -> Result<Result<Self, NonRealizabilityWitness>> {
        check_input(h)?;
        let tree = decomposition_tree(h)?;
        let mut nodes = BTreeMap::new();
        for id in tree.internal_nodes() {
            let children = tree.child_modules(id);
            let entry = match tree.label(id).expect("internal nodes are labelled") {
                HyperLabel::Empty => NodeRealization::Linear(children.len()),
                HyperLabel::Prime => match prime::prime_unchecked(&node_quotient(h, &tree, id)?) {
                    Outcome::Realized(t) => NodeRealization::Prime(t),
                    Outcome::NotRealizable(w) => {
                        // The smallest vertices of the children induce a copy
                        // of the quotient.
                        let transverse: Vec<usize> =
                            children.iter().map(|c| c.first().unwrap()).collect();
                        return Ok(Err(NonRealizabilityWitness {
                            witness: w.witness.map(|i| transverse[i]),
                            stage: w.stage,
                        }));
                    }
                },
                HyperLabel::Complete => {
                    return Err(Error::Precondition(
                        "complete-graph quotient in a 3-uniform decomposition".into(),
                    ))
                }
            };
            nodes.insert(id, entry);
        }
        Ok(Ok(RealizationFrame { tree, nodes }))
    }

    pub fn tree(&self) -> &DecompositionTree<HyperLabel> {
        &self.tree
    }

    pub fn node(&self, id: NodeId) -> Option<&NodeRealization> {
        self.nodes.get(&id)
    }

    /// Identity orders and stored prime realizations.
    pub fn default_choice(&self) -> RealizationChoice {
        RealizationChoice {
            entries: self
                .nodes
                .iter()
                .map(|(&id, node)| (id, initial_choice(node)))
                .collect(),
        }
    }

    /// `2^(#△) × ∏ (children of ◯)!`.
    pub fn count(&self) -> BigUint {
        self.nodes
            .values()
            .fold(BigUint::from(1u32), |acc, node| match node {
                NodeRealization::Prime(_) => acc * 2u32,
                NodeRealization::Linear(k) => (2..=*k as u32).fold(acc, |a, i| a * i),
            })
    }

    /// The tournament selected by `choice`: each pair is oriented at the
    /// lowest node containing both, between their child blocks.
    pub fn assemble(&self, choice: &RealizationChoice) -> Result<Tournament> {
        if choice.entries.len() != self.nodes.len() {
            return Err(Error::Precondition(format!(
                "the choice has {} entries for {} internal nodes",
                choice.entries.len(),
                self.nodes.len()
            )));
        }
        let n = self.tree.order();
        let mut out = vec![VertexSet::EMPTY; n];
        for (&id, node) in &self.nodes {
            let entry = choice.entries.get(&id).ok_or_else(|| {
                Error::Precondition(format!("the choice has no entry for node {id}"))
            })?;
            let children = self.tree.child_modules(id);
            let beats: Box<dyn Fn(usize, usize) -> bool> = match (node, entry) {
                (NodeRealization::Prime(t), NodeChoice::Prime { dual }) => {
                    let dual = *dual;
                    Box::new(move |i, j| t.has_arc(i, j) != dual)
                }
                (NodeRealization::Linear(k), NodeChoice::Linear(seq)) => {
                    if seq.len() != *k || seq.iter().collect::<VertexSet>() != VertexSet::full(*k) {
                        return Err(Error::Precondition(format!(
                            "node {id} needs a permutation of its {k} children"
                        )));
                    }
                    let mut rank = vec![0; *k];
                    for (r, &c) in seq.iter().enumerate() {
                        rank[c] = r;
                    }
                    Box::new(move |i, j| rank[i] < rank[j])
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "the choice for node {id} does not match its label"
                    )))
                }
            };
            for (i, &ci) in children.iter().enumerate() {
                for (j, &cj) in children.iter().enumerate() {
                    if i != j && beats(i, j) {
                        for v in ci {
                            out[v] = out[v].union(cj);
                        }
                    }
                }
            }
        }
        Tournament::from_fn(n, |u, v| out[u].contains(v))
    }

    /// All realizations, in mixed-radix order of their choices.
    pub fn into_realizations(self) -> Realizations {
        let ids: Vec<NodeId> = self.nodes.keys().copied().collect();
        let digits = self.nodes.values().map(initial_choice).collect();
        Realizations {
            frame: Some(self),
            ids,
            digits: Some(digits),
        }
    }
}

fn initial_choice(node: &NodeRealization) -> NodeChoice {
    match node {
        NodeRealization::Prime(_) => NodeChoice::Prime { dual: false },
        NodeRealization::Linear(k) => NodeChoice::Linear((0..*k).collect()),
    }
}

/// Streams every realization exactly once.
pub struct Realizations {
    frame: Option<RealizationFrame>,
    ids: Vec<NodeId>,
    digits: Option<Vec<NodeChoice>>,
}

impl Iterator for Realizations {
    type Item = Tournament;

    fn next(&mut self) -> Option<Tournament> {
        let frame = self.frame.as_ref()?;
        let digits = self.digits.as_mut()?;
        let choice = RealizationChoice {
            entries: self.ids.iter().copied().zip(digits.iter().cloned()).collect(),
        };
        let t = frame.assemble(&choice).expect("odometer states are valid");
        // Advance the last digit, carrying leftwards.
        let mut done = true;
        for d in digits.iter_mut().rev() {
            let carried = match d {
                NodeChoice::Prime { dual } => {
                    *dual = !*dual;
                    !*dual
                }
                NodeChoice::Linear(seq) => !next_permutation(seq),
            };
            if !carried {
                done = false;
                break;
            }
        }
        if done {
            self.digits = None;
        }
        Some(t)
    }
}

/// One realization of `h`, or a witness that none exists.
pub fn realize(h: &Hypergraph) -> Result<Outcome> {
    Ok(match RealizationFrame::build(h)? {
        Ok(frame) => {
            let t = frame.assemble(&frame.default_choice())?;
            assert!(t.c3_structure() == *h, "assembled tournament must realize H");
            Outcome::Realized(t)
        }
        Err(w) => Outcome::NotRealizable(w),
    })
}

/// Number of realizations of `h`; zero when `h` is not realizable.
pub fn count_realizations(h: &Hypergraph) -> Result<BigUint> {
    Ok(match RealizationFrame::build(h)? {
        Ok(frame) => frame.count(),
        Err(_) => BigUint::ZERO,
    })
}

/// Streams every realization of `h` exactly once; empty when `h` is not
/// realizable.
pub fn enumerate_realizations(h: &Hypergraph) -> Result<Realizations> {
    Ok(match RealizationFrame::build(h)? {
        Ok(frame) => frame.into_realizations(),
        Err(_) => Realizations {
            frame: None,
            ids: Vec::new(),
            digits: None,
        },
    })
}

/// Applies `choice` to the tree of `frame`.
pub fn choice_to_tournament(frame: &RealizationFrame, choice: &RealizationChoice) -> Result<Tournament> {
    frame.assemble(choice)
}
