//! Reflexive symmetric relations and the tolerance axioms.

use serde::{Deserialize, Serialize, Serializer};

use crate::partition::Partition;
use crate::semigroup::{Element, InverseSemigroup};
use crate::subset::Subset;

/// A binary relation on a semigroup stored as one bitset row per element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tolerance {
    rows: Vec<Subset>,
}

/// How a relation fails the tolerance axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceViolation {
    NotReflexive(Element),
    NotSymmetric(Element, Element),
    /// `a ~ b` and `c ~ d` but not `ac ~ bd`.
    Product {
        a: Element,
        b: Element,
        c: Element,
        d: Element,
    },
    /// `a ~ b` but not `a⁻¹ ~ b⁻¹`.
    Inversion(Element, Element),
}

impl Tolerance {
    pub fn from_fn<F: FnMut(Element, Element) -> bool>(order: usize, mut related: F) -> Self {
        let rows = (0..order)
            .map(|a| Subset::from_elements(order, (0..order).filter(|&b| related(a, b))))
            .collect();
        Tolerance { rows }
    }

    pub fn from_partition(p: &Partition) -> Self {
        Tolerance::from_fn(p.len(), |a, b| p.related(a, b))
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn contains(&self, a: Element, b: Element) -> bool {
        self.rows[a].contains(b)
    }

    pub fn row(&self, a: Element) -> &Subset {
        &self.rows[a]
    }

    /// Pairs `(a, b)` with `a ≤ b`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(Element, Element)> {
        (0..self.order())
            .flat_map(|a| {
                self.rows[a]
                    .iter()
                    .filter(move |&b| b >= a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(Subset::len).sum()
    }

    pub fn is_universal(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.order())
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(a, r)| r.len() == 1 && r.contains(a))
    }

    pub fn intersect(&self, p: &Partition) -> Tolerance {
        Tolerance::from_fn(self.order(), |a, b| p.related(a, b) && self.contains(a, b))
    }

    pub fn is_subset(&self, other: &Tolerance) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(b))
    }

    /// The least pair on which the relation and the partition disagree.
    pub fn difference_from(&self, p: &Partition) -> Option<(Element, Element)> {
        (0..self.order())
            .flat_map(|a| (0..self.order()).map(move |b| (a, b)))
            .find(|&(a, b)| self.contains(a, b) != p.related(a, b))
    }

    pub fn matches(&self, p: &Partition) -> bool {
        self.difference_from(p).is_none()
    }

    pub fn violation(&self, s: &InverseSemigroup) -> Option<ToleranceViolation> {
        let n = self.order();
        if let Some(a) = (0..n).find(|&a| !self.contains(a, a)) {
            return Some(ToleranceViolation::NotReflexive(a));
        }
        for a in 0..n {
            for b in self.rows[a].iter() {
                if !self.contains(b, a) {
                    return Some(ToleranceViolation::NotSymmetric(a, b));
                }
                if !self.contains(s.inv(a), s.inv(b)) {
                    return Some(ToleranceViolation::Inversion(a, b));
                }
            }
        }
        for a in 0..n {
            for b in self.rows[a].iter() {
                for c in 0..n {
                    for d in self.rows[c].iter() {
                        if !self.contains(s.mul(a, c), s.mul(b, d)) {
                            return Some(ToleranceViolation::Product { a, b, c, d });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_tolerance(&self, s: &InverseSemigroup) -> bool {
        self.violation(s).is_none()
    }
}

impl std::fmt::Debug for Tolerance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Wire format `{"pairs": [[i, j], ...]}` with `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsFile {
    pub pairs: Vec<[Element; 2]>,
}

impl Serialize for Tolerance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PairsFile {
            pairs: self.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
        .serialize(serializer)
    }
}

impl PairsFile {
    pub fn to_tolerance(&self, order: usize) -> crate::Result<Tolerance> {
        let mut rows = vec![Subset::empty(order); order];
        for &[a, b] in &self.pairs {
            if a >= order || b >= order {
                return Err(crate::Error::Parse(format!("pair ({a}, {b}) out of range")));
            }
            rows[a].insert(b);
            rows[b].insert(a);
        }
        Ok(Tolerance { rows })
    }
}
