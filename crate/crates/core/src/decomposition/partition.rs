use crate::decomposition::modules::ModularStructure;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A partition of the vertex set into modules.
///
/// Blocks are nonempty, pairwise disjoint, cover `{0, .., n-1}`, and are
/// kept ordered by smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPartition {
    order: usize,
    blocks: Vec<VertexSet>,
    block_of: Vec<usize>,
}

impl ModularPartition {
    /// Checks that `blocks` partition the vertices of `s` into modules.
    pub fn new<S: ModularStructure>(s: &S, mut blocks: Vec<VertexSet>) -> Result<Self> {
        let order = s.order();
        blocks.sort_unstable_by_key(|b| b.first());
        let mut covered = VertexSet::EMPTY;
        let mut block_of = vec![usize::MAX; order];
        for (i, &b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !b.within(order) {
                return Err(Error::InvalidPartition(format!(
                    "block {b} leaves the vertex range 0..{order}"
                )));
            }
            if !b.is_disjoint(covered) {
                return Err(Error::InvalidPartition(format!(
                    "block {b} overlaps an earlier block"
                )));
            }
            covered = covered.union(b);
            for v in b {
                block_of[v] = i;
            }
        }
        if covered != VertexSet::full(order) {
            return Err(Error::InvalidPartition(format!(
                "blocks miss vertices {}",
                VertexSet::full(order).difference(covered)
            )));
        }
        let p = ModularPartition {
            order,
            blocks,
            block_of,
        };
        p.validate_for(s)?;
        Ok(p)
    }

    /// Checks that every block is a module of `s`.
    pub fn validate_for<S: ModularStructure>(&self, s: &S) -> Result<()> {
        if s.order() != self.order {
            return Err(Error::InvalidPartition(format!(
                "partition of {} vertices used with a structure of order {}",
                self.order,
                s.order()
            )));
        }
        match self.blocks.iter().find(|&&b| !s.is_module(b)) {
            Some(b) => Err(Error::InvalidPartition(format!("block {b} is not a module"))),
            None => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// `W/P`: indices of the blocks meeting `w`.
    pub fn blocks_meeting(&self, w: VertexSet) -> VertexSet {
        w.iter().map(|v| self.block_of[v]).collect()
    }

    /// `∪Q`: union of the blocks with the given indices.
    pub fn union_of(&self, indices: VertexSet) -> VertexSet {
        indices
            .iter()
            .fold(VertexSet::EMPTY, |acc, i| acc.union(self.blocks[i]))
    }

    /// One vertex per block: the smallest.
    pub fn transverse(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.first().unwrap()).collect()
    }
}
