//! Inverse-semigroup terms in normal form: words over signed variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{Element, InverseSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub inverted: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            inverted: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            inverted: true,
        }
    }
}

/// A nonempty word `x_{i1}^{±1} ⋯ x_{ik}^{±1}` over `arity` variables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TermFile", into = "TermFile")]
pub struct Term {
    arity: usize,
    word: Vec<Literal>,
}

impl Term {
    pub fn new(arity: usize, word: Vec<Literal>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidTerm("empty word".into()));
        }
        if let Some(l) = word.iter().find(|l| l.var >= arity) {
            return Err(Error::InvalidTerm(format!(
                "variable {} out of range for arity {arity}",
                l.var
            )));
        }
        Ok(Term { arity, word })
    }

    /// Positive word over the given variable indices.
    pub fn positive(arity: usize, vars: &[usize]) -> Result<Self> {
        Term::new(arity, vars.iter().map(|&v| Literal::pos(v)).collect())
    }

    /// `ℓ(x, y) = x y`.
    pub fn left() -> Self {
        Term {
            arity: 2,
            word: vec![Literal::pos(0), Literal::pos(1)],
        }
    }

    /// `m(x, y, z) = y x z`.
    pub fn middle() -> Self {
        Term {
            arity: 3,
            word: vec![Literal::pos(1), Literal::pos(0), Literal::pos(2)],
        }
    }

    /// `r(x, y) = y x`.
    pub fn right() -> Self {
        Term {
            arity: 2,
            word: vec![Literal::pos(1), Literal::pos(0)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn word(&self) -> &[Literal] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn occurrences(&self, var: usize) -> usize {
        self.word.iter().filter(|l| l.var == var).count()
    }

    /// Concatenation; the arity is the larger of the two.
    pub fn concat(&self, other: &Term) -> Term {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Term {
            arity: self.arity.max(other.arity),
            word,
        }
    }

    pub fn eval(&self, s: &InverseSemigroup, assignment: &[Element]) -> Result<Element> {
        if assignment.len() != self.arity {
            return Err(Error::ArityMismatch {
                arity: self.arity,
                given: assignment.len(),
            });
        }
        Ok(self.eval_unchecked(s, assignment))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, s: &InverseSemigroup, assignment: &[Element]) -> Element {
        let value = |l: &Literal| {
            let x = assignment[l.var];
            if l.inverted {
                s.inv(x)
            } else {
                x
            }
        };
        let mut it = self.word.iter();
        let first = value(it.next().expect("nonempty word"));
        it.fold(first, |acc, l| s.mul(acc, value(l)))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.var)?;
            if l.inverted {
                write!(f, "⁻¹")?;
            }
        }
        Ok(())
    }
}

/// Wire format `{"arity": n, "word": [[var, exp], ...]}` with `exp ∈ {1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub arity: usize,
    pub word: Vec<(usize, i8)>,
}

impl TryFrom<TermFile> for Term {
    type Error = Error;

    fn try_from(file: TermFile) -> Result<Self> {
        let word = file
            .word
            .iter()
            .map(|&(var, exp)| match exp {
                1 => Ok(Literal::pos(var)),
                -1 => Ok(Literal::neg(var)),
                _ => Err(Error::InvalidTerm(format!("exponent {exp} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Term::new(file.arity, word)
    }
}

impl From<Term> for TermFile {
    fn from(t: Term) -> Self {
        TermFile {
            arity: t.arity,
            word: t
                .word
                .iter()
                .map(|l| (l.var, if l.inverted { -1 } else { 1 }))
                .collect(),
        }
    }
}
