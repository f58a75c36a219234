use thiserror::Error;

/// Errors raised while building or checking semigroup structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SgError {
    #[error("table is not associative at triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("table entry out of range at ({row}, {col}): {value} (order {order})")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("subset is not an ideal: product of {x} and {y} is {product}, outside the subset")]
    NotAnIdeal { x: usize, y: usize, product: usize },
    #[error("structure semigroup is not a group")]
    NotAGroup,
    #[error("sandwich matrix has an all-zero {0}")]
    DegenerateSandwich(&'static str),
    #[error("seed set is empty")]
    EmptySeed,
    #[error("subset is not a subsemigroup: {x} * {y} = {product} escapes")]
    NotSubsemigroup { x: usize, y: usize, product: usize },
    #[error("relation is not a {expected} (fails {check} at ({i}, {j}))")]
    NotKind {
        expected: &'static str,
        check: &'static str,
        i: usize,
        j: usize,
    },
    #[error("relation universe {got} does not match semigroup order {want}")]
    UniverseMismatch { got: usize, want: usize },
    #[error("preorder on side {side} is not {side}-compatible: witness ({a}, {b}, {c})")]
    NotCompatible {
        side: &'static str,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("preorder on side {side} is not contained in the starred preorder: witness ({a}, {b})")]
    NotContainedInStarred { side: &'static str, a: usize, b: usize },
    #[error("classes do not partition the universe (element {0})")]
    NotAPartition(usize),
    #[error("class {0} is empty")]
    EmptyClass(usize),
    #[error("decomposition incompatible: {a} * {b} = {product} escapes the allowed down-set")]
    Incompatible { a: usize, b: usize, product: usize },
    #[error("preorder does not satisfy ab <= a and ab <= b: witness ({a}, {b})")]
    NotCompatiblePreorder { a: usize, b: usize },
    #[error("slice order universe mismatch at poset index {0}")]
    SliceMismatch(usize),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("semigroup is not abundant")]
    NotAbundant,
    #[error("search budget exhausted: {0}")]
    Exhausted(String),
    #[error("isomorphism search cap exceeded: order {0} above hard cap {1}")]
    IsoCapExceeded(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, SgError>;
