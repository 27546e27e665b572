use std::fmt;

use serde::{Serialize, Serializer};

use crate::semigroup::Element;

/// A set of elements of a semigroup of known order, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    order: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        Subset {
            order,
            words: vec![0; order.div_ceil(64)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Subset::empty(order);
        for x in 0..order {
            s.insert(x);
        }
        s
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(order: usize, elements: I) -> Self {
        let mut s = Subset::empty(order);
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        x < self.order && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Returns `true` if `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: Element) -> bool {
        assert!(
            x < self.order,
            "element {x} out of range for order {}",
            self.order
        );
        let fresh = !self.contains(x);
        self.words[x / 64] |= 1 << (x % 64);
        fresh
    }

    pub fn remove(&mut self, x: Element) {
        if x < self.order {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            order: self.order,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            order: self.order,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
