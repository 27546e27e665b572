//! Partial bijections of a finite point set and the inverse semigroups they
//! generate inside the symmetric inverse monoid.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::DEFAULT_ORDER_CAP;
use crate::semigroup::{CayleyTable, Element, InverseSemigroup};

pub const MAX_SYMMETRIC_DEGREE: usize = 4;

/// An injective partial map on `0..degree`. Maps compose left to right:
/// `f.then(g)` applies `f` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    image: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn new(image: Vec<Option<usize>>) -> Result<Self> {
        let degree = image.len();
        let mut preimage = vec![None; degree];
        for (point, target) in image.iter().enumerate() {
            if let Some(t) = *target {
                if t >= degree {
                    return Err(Error::ImageOutOfRange {
                        point,
                        image: t,
                        degree,
                    });
                }
                if let Some(other) = preimage[t] {
                    return Err(Error::NotInjective(other, point));
                }
                preimage[t] = Some(point);
            }
        }
        Ok(PartialBijection { image })
    }

    pub fn identity(degree: usize) -> Self {
        PartialBijection {
            image: (0..degree).map(Some).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        PartialBijection {
            image: vec![None; degree],
        }
    }

    /// A total permutation from its image list.
    pub fn permutation(image: &[usize]) -> Result<Self> {
        Self::new(image.iter().copied().map(Some).collect())
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    pub fn apply(&self, point: usize) -> Option<usize> {
        self.image.get(point).copied().flatten()
    }

    pub fn rank(&self) -> usize {
        self.image.iter().flatten().count()
    }

    pub fn then(&self, next: &PartialBijection) -> PartialBijection {
        PartialBijection {
            image: self
                .image
                .iter()
                .map(|x| x.and_then(|y| next.apply(y)))
                .collect(),
        }
    }

    pub fn inverse(&self) -> PartialBijection {
        let mut image = vec![None; self.degree()];
        for (point, target) in self.image.iter().enumerate() {
            if let Some(t) = *target {
                image[t] = Some(point);
            }
        }
        PartialBijection { image }
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match x {
                Some(y) => write!(f, "{y}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}

/// An inverse semigroup together with a faithful representation by partial
/// bijections: element `i` is `embedding[i]`.
#[derive(Debug, Clone)]
pub struct Generated {
    pub semigroup: InverseSemigroup,
    pub embedding: Vec<PartialBijection>,
}

pub fn close_partial_bijections(gens: &[PartialBijection]) -> Result<Generated> {
    close_partial_bijections_capped(gens, DEFAULT_ORDER_CAP)
}

/// Closes the generators under composition and inversion.
///
/// Elements are numbered breadth-first by word length over the generators
/// and their inverses; each length level is sorted by image array.
pub fn close_partial_bijections_capped(gens: &[PartialBijection], cap: usize) -> Result<Generated> {
    let first = gens.first().ok_or(Error::EmptyGeneratorSet)?;
    let degree = first.degree();
    if let Some((index, g)) = gens.iter().enumerate().find(|(_, g)| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            index,
            expected: degree,
            found: g.degree(),
        });
    }

    let mut letters: Vec<PartialBijection> =
        gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    letters.sort();
    letters.dedup();

    let mut index: HashMap<PartialBijection, Element> = HashMap::new();
    let mut elements: Vec<PartialBijection> = Vec::new();
    let mut level = letters.clone();
    while !level.is_empty() {
        for x in &level {
            index.insert(x.clone(), elements.len());
            elements.push(x.clone());
        }
        if elements.len() > cap {
            return Err(Error::OrderTooLarge {
                order: elements.len(),
                cap,
            });
        }
        let mut next: Vec<PartialBijection> = level
            .iter()
            .flat_map(|x| letters.iter().map(move |a| x.then(a)))
            .filter(|y| !index.contains_key(y))
            .collect();
        next.sort();
        next.dedup();
        level = next;
    }

    let order = elements.len();
    let table = CayleyTable::from_fn(order, |a, b| index[&elements[a].then(&elements[b])])?;
    let semigroup = InverseSemigroup::from_cayley_table_capped(table, cap)?;
    Ok(Generated {
        semigroup,
        embedding: elements,
    })
}

/// Every injective partial map on `0..degree`, in lexicographic order.
pub fn all_partial_bijections(degree: usize) -> Vec<PartialBijection> {
    fn extend(
        point: usize,
        degree: usize,
        used: &mut Vec<bool>,
        image: &mut Vec<Option<usize>>,
        out: &mut Vec<PartialBijection>,
    ) {
        if point == degree {
            out.push(PartialBijection {
                image: image.clone(),
            });
            return;
        }
        image.push(None);
        extend(point + 1, degree, used, image, out);
        image.pop();
        for t in 0..degree {
            if !used[t] {
                used[t] = true;
                image.push(Some(t));
                extend(point + 1, degree, used, image, out);
                image.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(
        0,
        degree,
        &mut vec![false; degree],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// The symmetric inverse monoid on `degree` points.
pub fn symmetric_inverse_monoid(degree: usize) -> Result<Generated> {
    if degree > MAX_SYMMETRIC_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: MAX_SYMMETRIC_DEGREE,
        });
    }
    close_partial_bijections(&all_partial_bijections(degree))
}

/// Wire format for generator lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Vec<Option<usize>>>,
}

impl GeneratorFile {
    pub fn from_generators(degree: usize, gens: &[PartialBijection]) -> Self {
        GeneratorFile {
            degree,
            generators: gens.iter().map(|g| g.image.clone()).collect(),
        }
    }

    pub fn generators(&self) -> Result<Vec<PartialBijection>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(index, img)| {
                if img.len() != self.degree {
                    return Err(Error::DegreeMismatch {
                        index,
                        expected: self.degree,
                        found: img.len(),
                    });
                }
                PartialBijection::new(img.clone())
            })
            .collect()
    }
}
