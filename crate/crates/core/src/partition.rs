//! Equivalence relations on `0..n`, stored as canonical block labels.
//!
//! Every point is labelled with the least point of its block, so two
//! partitions are equal exactly when their label vectors are equal.

use std::fmt;

use serde::{Serialize, Serializer};

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if least[r] == usize::MAX {
                least[r] = x;
            }
            labels[x] = least[r];
        }
        Partition { labels }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// The identity relation (all singletons).
    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
        }
    }

    /// The universal relation (one block).
    pub fn universal(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    /// Groups points by an arbitrary key.
    pub fn from_key<K: Eq + std::hash::Hash, F: FnMut(usize) -> K>(n: usize, mut key: F) -> Self {
        let mut first = std::collections::HashMap::new();
        let labels = (0..n).map(|x| *first.entry(key(x)).or_insert(x)).collect();
        Partition { labels }
    }

    /// Builds from explicit blocks; they must cover `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> crate::Result<Self> {
        let mut seen = vec![false; n];
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for &x in block {
                if x >= n || seen[x] {
                    return Err(crate::Error::Parse(format!(
                        "point {x} is out of range or repeated"
                    )));
                }
                seen[x] = true;
                uf.union(block[0], x);
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(crate::Error::Parse(format!(
                "point {x} is not covered by any block"
            )));
        }
        Ok(uf.into_partition())
    }

    /// Builds from any relation that is known to be an equivalence by
    /// taking least related points as labels. Returns `None` if the relation
    /// is not an equivalence.
    pub fn from_equivalence<F: FnMut(usize, usize) -> bool>(
        n: usize,
        mut related: F,
    ) -> Option<Self> {
        let mut labels = vec![usize::MAX; n];
        for x in 0..n {
            if labels[x] != usize::MAX {
                continue;
            }
            for y in x..n {
                if related(x, y) {
                    if labels[y] != usize::MAX {
                        return None;
                    }
                    labels[y] = x;
                }
            }
            if labels[x] != x {
                return None;
            }
        }
        let p = Partition { labels };
        for x in 0..n {
            for y in 0..n {
                if related(x, y) != p.related(x, y) {
                    return None;
                }
            }
        }
        Some(p)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn label(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(x, &l)| x == l)
            .count()
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_universal(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// Blocks in order of their least point, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in self.labels.iter().enumerate() {
            if x == l {
                index[x] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[l]].push(x);
        }
        blocks
    }

    /// The index of each point's block in [`Partition::blocks`] order.
    pub fn block_indices(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.len()];
        let mut next = 0;
        for x in 0..self.len() {
            let l = self.labels[x];
            if index[l] == usize::MAX {
                index[l] = next;
                next += 1;
            }
            index[x] = index[l];
        }
        index
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.len()).all(|x| other.related(x, self.labels[x]))
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            uf.union(x, self.labels[x]);
            uf.union(x, other.labels[x]);
        }
        uf.into_partition()
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        Partition::from_key(self.len(), |x| (self.labels[x], other.labels[x]))
    }

    /// Canonical sort key: coarser partitions last, ties broken by labels.
    pub fn sort_key(&self) -> (std::cmp::Reverse<usize>, &[usize]) {
        (std::cmp::Reverse(self.block_count()), &self.labels)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.blocks()).finish()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_labels() {
        let p = Partition::from_blocks(5, &[vec![4, 1], vec![0], vec![3, 2]]).unwrap();
        assert_eq!(p.labels(), &[0, 1, 2, 2, 1]);
        assert_eq!(p.blocks(), vec![vec![0], vec![1, 4], vec![2, 3]]);
        assert_eq!(p.block_indices(), vec![0, 1, 2, 2, 1]);
        assert_eq!(p.block_count(), 3);
    }

    #[test]
    fn from_blocks_rejects_gaps_and_repeats() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn non_transitive_relation_is_rejected() {
        let rel = |x: usize, y: usize| x.abs_diff(y) <= 1;
        assert!(Partition::from_equivalence(3, rel).is_none());
        assert!(Partition::from_equivalence(4, |x, y| x % 2 == y % 2).is_some());
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..n, n).prop_map(move |keys| Partition::from_key(n, |x| keys[x]))
    }

    proptest! {
        #[test]
        fn join_and_meet_bound(a in arb_partition(8), b in arb_partition(8)) {
            let j = a.join(&b);
            let m = a.meet(&b);
            prop_assert!(a.refines(&j) && b.refines(&j));
            prop_assert!(m.refines(&a) && m.refines(&b));
            prop_assert_eq!(Partition::from_blocks(8, &a.blocks()).unwrap(), a.clone());
            prop_assert!(Partition::discrete(8).refines(&m));
            prop_assert!(j.refines(&Partition::universal(8)));
        }
    }
}
