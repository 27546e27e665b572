use thiserror::Error;

use crate::semigroup::Element;

/// Everything that can go wrong while building or analysing a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cayley table is empty")]
    EmptyTable,
    #[error("Cayley table row {row} has length {len}, expected {order}")]
    RaggedTable {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry ({a}, {b}) = {value} is out of range for order {order}")]
    EntryOutOfRange {
        a: Element,
        b: Element,
        value: usize,
        order: usize,
    },
    #[error("order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("not associative: ({0} {1}) {2} != {0} ({1} {2})")]
    NotAssociative(Element, Element, Element),
    #[error("element {0} has no inverse (not regular)")]
    NotRegular(Element),
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDoNotCommute(Element, Element),
    #[error("element {element} has two inverses {first} and {second}")]
    InverseNotUnique {
        element: Element,
        first: Element,
        second: Element,
    },

    #[error("empty generator set")]
    EmptyGeneratorSet,
    #[error("generator {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("partial map is not injective: points {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("image {image} of point {point} is out of range for degree {degree}")]
    ImageOutOfRange {
        point: usize,
        image: usize,
        degree: usize,
    },
    #[error("degree {degree} exceeds the maximum of {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("not a group: {idempotents} idempotents")]
    NotAGroup { idempotents: usize },
    #[error("not a semilattice: element {0} is not idempotent or elements do not commute")]
    NotASemilattice(Element),
    #[error("expected {expected} component groups, got {found}")]
    ComponentCountMismatch { expected: usize, found: usize },
    #[error("link {from} -> {to} does not go down the semilattice order")]
    LinkAgainstOrder { from: Element, to: Element },
    #[error("link {from} -> {to} is not a homomorphism")]
    LinkNotHomomorphism { from: Element, to: Element },
    #[error("no link path from {from} to {to}")]
    MissingLink { from: Element, to: Element },
    #[error("links are not functorial: two paths from {from} to {to} disagree")]
    LinksNotFunctorial { from: Element, to: Element },

    #[error("not a congruence pair: {0}")]
    InvalidPair(String),
    #[error("not a normal inverse subsemigroup: {0}")]
    NotNormal(String),
    #[error("relation is not a congruence: {0}")]
    NotACongruence(String),
    #[error("carrier mismatch: expected {expected} points, got {found}")]
    CarrierMismatch { expected: usize, found: usize },

    #[error("term has arity {arity} but {given} values were supplied")]
    ArityMismatch { arity: usize, given: usize },
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("iteration budget exceeded in {what}: needs {needed}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("Mal'cev level {level} exceeds the maximum of {max}")]
    LevelTooLarge { level: usize, max: usize },
    #[error("word length bound {0} is below 3")]
    WordLengthTooSmall(usize),

    #[error("characterization mismatch: {0}")]
    CharacterizationMismatch(String),
    #[error("theorem mismatch: {0}")]
    TheoremMismatch(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
