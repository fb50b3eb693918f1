//! Partitions of a named finite carrier.
//!
//! Blocks are kept in canonical form: ordered by their least member, with
//! `block_of` giving each point's block index. Two partitions of the same
//! carrier are equal exactly when they induce the same equivalence relation.

use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    carrier: Vec<String>,
    block_of: Vec<usize>,
    blocks: Vec<PointSet>,
}

impl Partition {
    /// Builds a partition from explicit blocks, which must be disjoint,
    /// nonempty, and cover the carrier.
    pub fn from_blocks(carrier: Vec<String>, blocks: Vec<PointSet>) -> Result<Self> {
        let n = carrier.len();
        let full = PointSet::full(n);
        let mut seen = PointSet::default();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !b.is_subset(full) {
                return Err(Error::InvalidPartition(
                    "block mentions a point outside the carrier".into(),
                ));
            }
            if seen.intersects(*b) {
                return Err(Error::InvalidPartition("blocks overlap".into()));
            }
            seen = seen | *b;
        }
        if seen != full {
            return Err(Error::InvalidPartition(
                "blocks do not cover the carrier".into(),
            ));
        }
        Ok(Self::from_valid_blocks(carrier, blocks))
    }

    /// Canonicalizes blocks known to be disjoint, nonempty, and covering.
    fn from_valid_blocks(carrier: Vec<String>, mut blocks: Vec<PointSet>) -> Self {
        blocks.sort_by_key(|b| b.iter().next().unwrap());
        let mut block_of = vec![0usize; carrier.len()];
        for (bi, b) in blocks.iter().enumerate() {
            for x in b.iter() {
                block_of[x] = bi;
            }
        }
        Partition {
            carrier,
            block_of,
            blocks,
        }
    }

    /// Builds a partition from a block-index assignment (any labeling).
    pub fn from_assignment(carrier: Vec<String>, assignment: &[usize]) -> Result<Self> {
        if assignment.len() != carrier.len() {
            return Err(Error::InvalidPartition(
                "assignment length differs from carrier size".into(),
            ));
        }
        let mut blocks: Vec<PointSet> = Vec::new();
        let mut labels: Vec<usize> = Vec::new();
        for (x, &label) in assignment.iter().enumerate() {
            match labels.iter().position(|&l| l == label) {
                Some(bi) => blocks[bi].insert(x),
                None => {
                    labels.push(label);
                    blocks.push(PointSet::singleton(x));
                }
            }
        }
        Ok(Self::from_valid_blocks(carrier, blocks))
    }

    /// The discrete partition: every point its own block.
    pub fn identity(carrier: Vec<String>) -> Self {
        let n = carrier.len();
        Self::from_valid_blocks(carrier, (0..n).map(PointSet::singleton).collect())
    }

    /// The one-block partition.
    pub fn total(carrier: Vec<String>) -> Self {
        let n = carrier.len();
        Self::from_valid_blocks(carrier, vec![PointSet::full(n)])
    }

    /// Smallest partition identifying every listed pair (equivalence closure
    /// of the pair set, via union-find).
    pub fn from_pairs(carrier: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.len();
        let mut uf = UnionFind::new(n);
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::InvalidPartition(
                    "pair mentions a point outside the carrier".into(),
                ));
            }
            uf.unite(x, y);
        }
        Ok(Self::from_union_find(carrier, &mut uf))
    }

    pub(crate) fn from_union_find(carrier: Vec<String>, uf: &mut UnionFind) -> Self {
        let n = carrier.len();
        let assignment: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        Self::from_assignment(carrier, &assignment).unwrap()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_assignment(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.carrier.len()
    }

    /// True when every block of `self` sits inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.carrier, other.carrier);
        self.blocks
            .iter()
            .all(|b| b.is_subset(other.blocks[other.block_of[b.iter().next().unwrap()]]))
    }

    /// Coarsest common refinement: blocks are the pairwise intersections.
    /// As pair sets this is the intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.carrier, other.carrier);
        let k = other.len();
        let assignment: Vec<usize> = (0..self.carrier.len())
            .map(|x| self.block_of[x] * k + other.block_of[x])
            .collect();
        Self::from_assignment(self.carrier.clone(), &assignment).unwrap()
    }

    /// The partition after merging the blocks containing `x` and `y`.
    pub fn merge(&self, x: usize, y: usize) -> Partition {
        let (bx, by) = (self.block_of[x], self.block_of[y]);
        if bx == by {
            return self.clone();
        }
        let mut blocks = Vec::with_capacity(self.blocks.len() - 1);
        for (bi, b) in self.blocks.iter().enumerate() {
            if bi == bx {
                blocks.push(*b | self.blocks[by]);
            } else if bi != by {
                blocks.push(*b);
            }
        }
        Self::from_valid_blocks(self.carrier.clone(), blocks)
    }

    /// Every partition of the carrier, in restricted-growth-string order.
    /// Bell(7) = 877, so this stays tiny at the sizes the crate supports.
    pub fn all(carrier: &[String]) -> Vec<Partition> {
        let n = carrier.len();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut rgs = vec![0usize; n];
        loop {
            out.push(Self::from_assignment(carrier.to_vec(), &rgs).unwrap());
            // Advance the restricted growth string: rgs[i] <= max(rgs[..i]) + 1.
            let mut i = n;
            loop {
                if i == 1 {
                    return out;
                }
                i -= 1;
                let cap = rgs[..i].iter().copied().max().unwrap() + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for slot in rgs.iter_mut().skip(i + 1) {
                        *slot = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Block names in canonical form, e.g. `{a,b}`.
    pub fn block_names(&self) -> Vec<String> {
        self.blocks
            .iter()
            .map(|b| {
                let members: Vec<&str> =
                    b.iter().map(|x| self.carrier[x].as_str()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect()
    }

    /// The relation { (x,y) : same block } as row masks.
    pub fn pair_rows(&self) -> Vec<PointSet> {
        (0..self.carrier.len())
            .map(|x| self.blocks[self.block_of[x]])
            .collect()
    }
}

/// Plain union-find with path halving; used for equivalence and congruence
/// closures.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    pub fn unite(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // Attach the larger root to the smaller so representatives stay
        // deterministic regardless of call order.
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}
